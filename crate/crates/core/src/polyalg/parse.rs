//! Recursive-descent parser for the polynomial text format.
//!
//! ```text
//! poly     := term (("+"|"-") term)* ;
//! term     := coeff ("*" factor)* | factor ("*" factor)* ;
//! factor   := var ("^" nat)? ;
//! var      := "x" nat | "z" ;
//! coeff    := "(" rational ("+"|"-") rational? "i"? ")" | rational | "i" ;
//! rational := int ("/" nat)? ;
//! ```
//!
//! Whitespace is insignificant. The parser is slightly more permissive than
//! the grammar: a leading sign is accepted, parenthesised coefficients may
//! be a bare rational (`(3/2)`) or purely imaginary (`(-2i)`), and factors
//! and coefficients may be multiplied in any order.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::multipoly::{Monomial, MultiPoly};
use super::scalar::GaussScalar;
use super::unipoly::UniPoly;
use super::PolyError;

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(BigInt),
    X,
    Z,
    I,
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    End,
}

fn lex(text: &str) -> Result<Vec<(Tok, usize)>, PolyError> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let b = bytes[i];
        if b.is_ascii_whitespace() {
            i += 1;
            continue;
        }
        if b.is_ascii_digit() {
            let start = i;
            while i < bytes.len() && bytes[i].is_ascii_digit() {
                i += 1;
            }
            let n: BigInt = text[start..i].parse().expect("digits");
            out.push((Tok::Num(n), start));
            continue;
        }
        let t = match b {
            b'x' => Tok::X,
            b'z' => Tok::Z,
            b'i' => Tok::I,
            b'+' => Tok::Plus,
            b'-' => Tok::Minus,
            b'*' => Tok::Star,
            b'/' => Tok::Slash,
            b'^' => Tok::Caret,
            b'(' => Tok::LParen,
            b')' => Tok::RParen,
            _ => {
                let ch = text[i..].chars().next().unwrap_or('?');
                return Err(PolyError::Syntax {
                    offset: i,
                    message: format!("unexpected character '{ch}'"),
                });
            }
        };
        out.push((t, i));
        i += 1;
    }
    out.push((Tok::End, bytes.len()));
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Var {
    X(usize),
    Z,
}

struct Term {
    coeff: GaussScalar,
    factors: Vec<(Var, u32, usize)>,
}

struct Parser {
    toks: Vec<(Tok, usize)>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].0
    }

    fn offset(&self) -> usize {
        self.toks[self.pos].1
    }

    fn bump(&mut self) -> (Tok, usize) {
        let t = self.toks[self.pos].clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn err<T>(&self, message: impl Into<String>) -> Result<T, PolyError> {
        Err(PolyError::Syntax {
            offset: self.offset(),
            message: message.into(),
        })
    }

    fn poly(&mut self) -> Result<Vec<Term>, PolyError> {
        let mut terms = Vec::new();
        let mut negate = match self.peek() {
            Tok::Minus => {
                self.bump();
                true
            }
            Tok::Plus => {
                self.bump();
                false
            }
            _ => false,
        };
        loop {
            let mut t = self.term()?;
            if negate {
                t.coeff = -t.coeff;
            }
            terms.push(t);
            negate = match self.peek() {
                Tok::Plus => false,
                Tok::Minus => true,
                Tok::End => break,
                _ => return self.err("expected '+', '-' or end of input"),
            };
            self.bump();
        }
        Ok(terms)
    }

    fn term(&mut self) -> Result<Term, PolyError> {
        let mut t = Term {
            coeff: GaussScalar::one(),
            factors: Vec::new(),
        };
        self.item(&mut t)?;
        while *self.peek() == Tok::Star {
            self.bump();
            self.item(&mut t)?;
        }
        Ok(t)
    }

    fn item(&mut self, t: &mut Term) -> Result<(), PolyError> {
        match self.peek().clone() {
            Tok::X | Tok::Z => {
                let (v, off) = self.var()?;
                let e = if *self.peek() == Tok::Caret {
                    self.bump();
                    self.nat_u32()?
                } else {
                    1
                };
                t.factors.push((v, e, off));
            }
            Tok::LParen => {
                self.bump();
                let c = self.paren_coeff()?;
                if *self.peek() != Tok::RParen {
                    return self.err("expected ')'");
                }
                self.bump();
                t.coeff = &t.coeff * &c;
            }
            Tok::Num(_) => {
                let r = self.rational()?;
                let c = if *self.peek() == Tok::I {
                    self.bump();
                    GaussScalar::new(BigRational::zero(), r)
                } else {
                    GaussScalar::from_rational(r)
                };
                t.coeff = &t.coeff * &c;
            }
            Tok::I => {
                self.bump();
                t.coeff = &t.coeff * &GaussScalar::i();
            }
            _ => return self.err("expected a coefficient or a variable"),
        }
        Ok(())
    }

    fn var(&mut self) -> Result<(Var, usize), PolyError> {
        let (tok, off) = self.bump();
        match tok {
            Tok::Z => Ok((Var::Z, off)),
            Tok::X => match self.peek().clone() {
                Tok::Num(n) => {
                    self.bump();
                    let idx = usize::try_from(&n).map_err(|_| PolyError::VariableOutOfRange {
                        offset: off,
                        index: usize::MAX,
                        n_vars: 0,
                    })?;
                    Ok((Var::X(idx), off))
                }
                _ => self.err("expected variable index after 'x'"),
            },
            _ => unreachable!("var called on non-variable token"),
        }
    }

    fn nat_u32(&mut self) -> Result<u32, PolyError> {
        match self.peek().clone() {
            Tok::Num(n) => {
                let off = self.offset();
                self.bump();
                u32::try_from(&n).map_err(|_| PolyError::Syntax {
                    offset: off,
                    message: "exponent too large".into(),
                })
            }
            _ => self.err("expected a natural number"),
        }
    }

    fn rational(&mut self) -> Result<BigRational, PolyError> {
        let Tok::Num(n) = self.peek().clone() else {
            return self.err("expected a number");
        };
        self.bump();
        if *self.peek() == Tok::Slash {
            self.bump();
            let off = self.offset();
            let Tok::Num(d) = self.peek().clone() else {
                return self.err("expected a denominator");
            };
            self.bump();
            if d.is_zero() {
                return Err(PolyError::ZeroDenominator { offset: off });
            }
            Ok(BigRational::new(n, d))
        } else {
            Ok(BigRational::from_integer(n))
        }
    }

    /// One signed piece inside parentheses: `[±] rational [i]` or `[±] i`.
    fn paren_piece(&mut self, allow_unsigned: bool) -> Result<Option<(GaussScalar, bool)>, PolyError> {
        let neg = match self.peek() {
            Tok::Minus => {
                self.bump();
                true
            }
            Tok::Plus => {
                self.bump();
                false
            }
            _ if allow_unsigned => false,
            _ => return Ok(None),
        };
        let (mag, imag) = match self.peek() {
            Tok::Num(_) => {
                let r = self.rational()?;
                if *self.peek() == Tok::I {
                    self.bump();
                    (r, true)
                } else {
                    (r, false)
                }
            }
            Tok::I => {
                self.bump();
                (BigRational::one(), true)
            }
            _ => return self.err("expected a number or 'i'"),
        };
        let mag = if neg { -mag } else { mag };
        let v = if imag {
            GaussScalar::new(BigRational::zero(), mag)
        } else {
            GaussScalar::from_rational(mag)
        };
        Ok(Some((v, imag)))
    }

    fn paren_coeff(&mut self) -> Result<GaussScalar, PolyError> {
        let (first, first_imag) = self.paren_piece(true)?.expect("unsigned piece allowed");
        if first_imag {
            return Ok(first);
        }
        match self.paren_piece(false)? {
            None => Ok(first),
            Some((second, true)) => Ok(&first + &second),
            Some((_, false)) => self.err("second part of a complex coefficient must end in 'i'"),
        }
    }
}

fn parse_terms(text: &str) -> Result<Vec<Term>, PolyError> {
    let toks = lex(text)?;
    let mut p = Parser { toks, pos: 0 };
    p.poly()
}

/// Parses a polynomial in `x0..x{n_vars-1}`.
pub fn parse_poly(text: &str, n_vars: usize) -> Result<MultiPoly, PolyError> {
    let terms = parse_terms(text)?;
    let mut out = MultiPoly::zero(n_vars);
    for t in terms {
        let mut e = vec![0u32; n_vars];
        for (v, exp, off) in t.factors {
            match v {
                Var::X(i) if i < n_vars => e[i] += exp,
                Var::X(i) => {
                    return Err(PolyError::VariableOutOfRange {
                        offset: off,
                        index: i,
                        n_vars,
                    })
                }
                Var::Z => {
                    return Err(PolyError::Syntax {
                        offset: off,
                        message: "'z' is reserved for curve components".into(),
                    })
                }
            }
        }
        out = &out + &MultiPoly::monomial(t.coeff, Monomial(e));
    }
    Ok(out)
}

/// Parses a univariate polynomial in `z`.
pub fn parse_unipoly(text: &str) -> Result<UniPoly, PolyError> {
    let terms = parse_terms(text)?;
    let mut out = UniPoly::zero();
    for t in terms {
        let mut deg = 0usize;
        for (v, exp, off) in t.factors {
            match v {
                Var::Z => deg += exp as usize,
                Var::X(_) => {
                    return Err(PolyError::Syntax {
                        offset: off,
                        message: "curve components are polynomials in 'z'".into(),
                    })
                }
            }
        }
        out = &out + &UniPoly::monomial(t.coeff, deg);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn conic_generator() {
        let p = parse_poly("x0*x2 - x1^2", 3).unwrap();
        assert_eq!(p.n_terms(), 2);
        assert_eq!(p.homogeneous_degree(), Some(2));
    }

    #[test]
    fn zero_polynomial() {
        assert!(parse_poly("0", 3).unwrap().is_zero());
        assert!(parse_poly("x0 - x0", 3).unwrap().is_zero());
    }

    #[test]
    fn complex_coefficients() {
        let p = parse_poly("(3/2)*x0^2 + i*x1*x2", 3).unwrap();
        assert_eq!(p.n_terms(), 2);
        assert_eq!(p.coeff(&Monomial(vec![2, 0, 0])), GaussScalar::from_ratio(3, 2));
        assert_eq!(p.coeff(&Monomial(vec![0, 1, 1])), GaussScalar::i());
        let q = parse_poly("(1/2-3i)*x0 + (-i)*x1 + (2i)*x2", 3).unwrap();
        assert_eq!(
            q.coeff(&Monomial(vec![1, 0, 0])),
            GaussScalar::new(BigRational::new(1.into(), 2.into()), BigRational::from_integer((-3).into()))
        );
        assert_eq!(q.coeff(&Monomial(vec![0, 1, 0])), -GaussScalar::i());
    }

    #[test]
    fn error_offsets() {
        match parse_poly("x0 + * x1", 2) {
            Err(PolyError::Syntax { offset, .. }) => assert_eq!(offset, 5),
            other => panic!("{other:?}"),
        }
        match parse_poly("x0 + x3", 3) {
            Err(PolyError::VariableOutOfRange { offset, index, .. }) => {
                assert_eq!((offset, index), (5, 3))
            }
            other => panic!("{other:?}"),
        }
        match parse_poly("(1/0)*x0", 2) {
            Err(PolyError::ZeroDenominator { offset }) => assert_eq!(offset, 3),
            other => panic!("{other:?}"),
        }
        assert!(matches!(parse_poly("x0 $ x1", 2), Err(PolyError::Syntax { offset: 3, .. })));
        assert!(parse_poly("z", 2).is_err());
        assert!(parse_unipoly("x0").is_err());
    }

    #[test]
    fn univariate() {
        assert_eq!(parse_unipoly("z^3 - z^2").unwrap(), UniPoly::from_ints(&[0, 0, -1, 1]));
        assert_eq!(parse_unipoly("-1 + 2*z").unwrap(), UniPoly::from_ints(&[-1, 2]));
    }

    fn arb_scalar() -> impl Strategy<Value = GaussScalar> {
        (-20i64..20, 1i64..6, -20i64..20, 1i64..6).prop_map(|(a, b, c, d)| {
            GaussScalar::new(
                BigRational::new(a.into(), b.into()),
                BigRational::new(c.into(), d.into()),
            )
        })
    }

    fn arb_poly() -> impl Strategy<Value = MultiPoly> {
        prop::collection::vec((prop::collection::vec(0u32..4, 3), arb_scalar()), 0..6)
            .prop_map(|ts| MultiPoly::from_terms(3, ts.into_iter().map(|(e, c)| (Monomial(e), c))))
    }

    proptest! {
        #[test]
        fn printer_round_trips(p in arb_poly()) {
            let text = p.to_text();
            prop_assert_eq!(parse_poly(&text, 3).unwrap(), p);
        }

        #[test]
        fn unipoly_printer_round_trips(cs in prop::collection::vec(arb_scalar(), 0..7)) {
            let p = UniPoly::from_coeffs(cs);
            prop_assert_eq!(parse_unipoly(&p.to_text()).unwrap(), p);
        }
    }
}
