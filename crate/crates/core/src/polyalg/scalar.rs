//! Gaussian rationals `a + b·i` with `a, b ∈ Q`.

use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Exact element of `Q(i)`.
///
/// Both parts are `BigRational`, which keeps denominators positive and in
/// lowest terms, so structural equality is mathematical equality.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct GaussScalar {
    pub re: BigRational,
    pub im: BigRational,
}

impl GaussScalar {
    pub fn new(re: BigRational, im: BigRational) -> Self {
        GaussScalar { re, im }
    }

    pub fn from_rational(re: BigRational) -> Self {
        GaussScalar {
            re,
            im: BigRational::zero(),
        }
    }

    pub fn from_int(v: i64) -> Self {
        Self::from_rational(BigRational::from_integer(BigInt::from(v)))
    }

    pub fn from_ratio(num: i64, den: i64) -> Self {
        Self::from_rational(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    pub fn from_parts(re: i64, im: i64) -> Self {
        GaussScalar {
            re: BigRational::from_integer(BigInt::from(re)),
            im: BigRational::from_integer(BigInt::from(im)),
        }
    }

    /// The imaginary unit.
    pub fn i() -> Self {
        Self::from_parts(0, 1)
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        GaussScalar {
            re: self.re.clone(),
            im: -self.im.clone(),
        }
    }

    /// `|z|²`, exact.
    pub fn norm_sqr(&self) -> BigRational {
        &self.re * &self.re + &self.im * &self.im
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let n = self.norm_sqr();
        Some(GaussScalar {
            re: &self.re / &n,
            im: -(&self.im / &n),
        })
    }

    pub fn to_complex(&self) -> Complex64 {
        Complex64::new(rat_to_f64(&self.re), rat_to_f64(&self.im))
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = GaussScalar::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// True when the value prints without surrounding parentheses in a
    /// product, i.e. a plain rational or a bare imaginary unit multiple.
    fn is_atomic(&self) -> bool {
        self.im.is_zero() || (self.re.is_zero() && self.im.is_one())
    }

    /// Formats the scalar as a coefficient that the polynomial parser accepts
    /// in front of `*`.
    pub(crate) fn fmt_coefficient(&self) -> String {
        if self.is_atomic() {
            if self.im.is_zero() {
                let s = fmt_rational(&self.re);
                if self.re.denom().is_one() {
                    s
                } else {
                    format!("({s})")
                }
            } else {
                "i".to_string()
            }
        } else {
            format!("({self})")
        }
    }
}

/// Lossy conversion of an exact rational to `f64`, tolerant of huge
/// numerators and denominators.
pub fn rat_to_f64(r: &BigRational) -> f64 {
    if let (Some(n), Some(d)) = (r.numer().to_f64(), r.denom().to_f64()) {
        if n.is_finite() && d.is_finite() && d != 0.0 {
            return n / d;
        }
    }
    // Scale down both parts to fit in f64 range.
    let nb = r.numer().bits() as i64;
    let db = r.denom().bits() as i64;
    let shift_n = (nb - 900).max(0) as usize;
    let shift_d = (db - 900).max(0) as usize;
    let n = (r.numer() >> shift_n).to_f64().unwrap_or(0.0);
    let d = (r.denom() >> shift_d).to_f64().unwrap_or(1.0);
    n / d * 2f64.powi(shift_n as i32 - shift_d as i32)
}

/// Exact rendering `p` or `p/q`.
pub fn fmt_rational(r: &BigRational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Exact rational from a finite `f64` (every finite double is a dyadic rational).
pub fn rat_from_f64(x: f64) -> Option<BigRational> {
    BigRational::from_float(x)
}

impl Zero for GaussScalar {
    fn zero() -> Self {
        GaussScalar {
            re: BigRational::zero(),
            im: BigRational::zero(),
        }
    }
    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }
}

impl One for GaussScalar {
    fn one() -> Self {
        GaussScalar {
            re: BigRational::one(),
            im: BigRational::zero(),
        }
    }
}

impl fmt::Display for GaussScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.re.is_zero(), self.im.is_zero()) {
            (_, true) => write!(f, "{}", fmt_rational(&self.re)),
            (true, false) => {
                if self.im.is_one() {
                    write!(f, "i")
                } else if (-&self.im).is_one() {
                    write!(f, "-i")
                } else {
                    write!(f, "{}i", fmt_rational(&self.im))
                }
            }
            (false, false) => {
                let sign = if self.im.is_negative() { '-' } else { '+' };
                let mag = self.im.abs();
                if mag.is_one() {
                    write!(f, "{}{}i", fmt_rational(&self.re), sign)
                } else {
                    write!(f, "{}{}{}i", fmt_rational(&self.re), sign, fmt_rational(&mag))
                }
            }
        }
    }
}

impl fmt::Debug for GaussScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl From<i64> for GaussScalar {
    fn from(v: i64) -> Self {
        GaussScalar::from_int(v)
    }
}

impl From<BigRational> for GaussScalar {
    fn from(v: BigRational) -> Self {
        GaussScalar::from_rational(v)
    }
}

impl<'a> Add<&'a GaussScalar> for &'a GaussScalar {
    type Output = GaussScalar;
    fn add(self, o: &GaussScalar) -> GaussScalar {
        GaussScalar {
            re: &self.re + &o.re,
            im: &self.im + &o.im,
        }
    }
}

impl<'a> Sub<&'a GaussScalar> for &'a GaussScalar {
    type Output = GaussScalar;
    fn sub(self, o: &GaussScalar) -> GaussScalar {
        GaussScalar {
            re: &self.re - &o.re,
            im: &self.im - &o.im,
        }
    }
}

impl<'a> Mul<&'a GaussScalar> for &'a GaussScalar {
    type Output = GaussScalar;
    fn mul(self, o: &GaussScalar) -> GaussScalar {
        if self.im.is_zero() && o.im.is_zero() {
            return GaussScalar::from_rational(&self.re * &o.re);
        }
        GaussScalar {
            re: &self.re * &o.re - &self.im * &o.im,
            im: &self.re * &o.im + &self.im * &o.re,
        }
    }
}

impl<'a> Div<&'a GaussScalar> for &'a GaussScalar {
    type Output = GaussScalar;
    /// Panics on division by zero, like the rational types it wraps.
    fn div(self, o: &GaussScalar) -> GaussScalar {
        if o.im.is_zero() {
            return GaussScalar {
                re: &self.re / &o.re,
                im: &self.im / &o.re,
            };
        }
        self * &o.inv().expect("division by zero")
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<GaussScalar> for GaussScalar {
            type Output = GaussScalar;
            fn $m(self, o: GaussScalar) -> GaussScalar {
                (&self).$m(&o)
            }
        }
        impl<'a> $tr<&'a GaussScalar> for GaussScalar {
            type Output = GaussScalar;
            fn $m(self, o: &GaussScalar) -> GaussScalar {
                (&self).$m(o)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
forward_owned!(Div, div);

impl Neg for GaussScalar {
    type Output = GaussScalar;
    fn neg(self) -> GaussScalar {
        GaussScalar {
            re: -self.re,
            im: -self.im,
        }
    }
}

impl Neg for &GaussScalar {
    type Output = GaussScalar;
    fn neg(self) -> GaussScalar {
        GaussScalar {
            re: -&self.re,
            im: -&self.im,
        }
    }
}

impl AddAssign<&GaussScalar> for GaussScalar {
    fn add_assign(&mut self, o: &GaussScalar) {
        self.re += &o.re;
        self.im += &o.im;
    }
}

impl SubAssign<&GaussScalar> for GaussScalar {
    fn sub_assign(&mut self, o: &GaussScalar) {
        self.re -= &o.re;
        self.im -= &o.im;
    }
}

impl MulAssign<&GaussScalar> for GaussScalar {
    fn mul_assign(&mut self, o: &GaussScalar) {
        *self = &*self * o;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn field_operations() {
        let a = GaussScalar::from_parts(1, 2);
        let b = GaussScalar::from_parts(3, -1);
        assert_eq!(&a * &b, GaussScalar::from_parts(5, 5));
        assert_eq!(&(&a / &b) * &b, a);
        assert_eq!(GaussScalar::i().pow(2), GaussScalar::from_int(-1));
        assert!(GaussScalar::zero().inv().is_none());
    }

    #[test]
    fn display_forms() {
        assert_eq!(GaussScalar::from_ratio(3, 2).to_string(), "3/2");
        assert_eq!(GaussScalar::i().to_string(), "i");
        assert_eq!(GaussScalar::from_parts(1, -1).to_string(), "1-i");
        assert_eq!(GaussScalar::from_parts(0, -3).to_string(), "-3i");
        assert_eq!(GaussScalar::from_ratio(3, 2).fmt_coefficient(), "(3/2)");
        assert_eq!(GaussScalar::from_parts(2, 1).fmt_coefficient(), "(2+i)");
    }

    #[test]
    fn lowest_terms() {
        assert_eq!(GaussScalar::from_ratio(2, 4), GaussScalar::from_ratio(-1, -2));
        assert_eq!(fmt_rational(&BigRational::new(6.into(), (-4).into())), "-3/2");
    }

    #[test]
    fn huge_rational_to_float() {
        let big = BigRational::new(BigInt::from(10).pow(400), BigInt::from(10).pow(399));
        assert!((rat_to_f64(&big) - 10.0).abs() < 1e-12);
    }
}
