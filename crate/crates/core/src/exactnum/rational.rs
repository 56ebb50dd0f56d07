use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::ParseError;

/// Arbitrary-precision exact fraction in lowest terms with a positive denominator.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Rational(BigRational);

impl Rational {
    pub fn new(numerator: impl Into<BigInt>, denominator: impl Into<BigInt>) -> Self {
        let den = denominator.into();
        assert!(!den.is_zero(), "rational with zero denominator");
        Rational(BigRational::new(numerator.into(), den))
    }

    pub fn from_integer(n: impl Into<BigInt>) -> Self {
        Rational(BigRational::from_integer(n.into()))
    }

    pub fn zero() -> Self {
        Rational(BigRational::zero())
    }

    pub fn one() -> Self {
        Rational(BigRational::one())
    }

    pub fn numerator(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denominator(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    /// Representative of `self mod 1` in `[0, 1)`.
    pub fn fract_positive(&self) -> Rational {
        let (num, den) = (self.0.numer(), self.0.denom());
        Rational(BigRational::new(num.mod_floor(den), den.clone()))
    }

    /// Whether `self - other` is an integer.
    pub fn congruent_mod_one(&self, other: &Rational) -> bool {
        (self - other).is_integer()
    }

    pub fn recip(&self) -> Rational {
        assert!(!self.is_zero(), "reciprocal of zero");
        Rational(self.0.recip())
    }

    pub fn to_f64(&self) -> f64 {
        self.0.to_f64().unwrap_or(f64::NAN)
    }

    pub(crate) fn from_big(r: BigRational) -> Self {
        Rational(r)
    }

    /// Always-explicit `p/q` form, including `/1` for integers.
    pub fn to_fraction_string(&self) -> String {
        format!("{}/{}", self.0.numer(), self.0.denom())
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_integer() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl FromStr for Rational {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || ParseError::Rational(s.to_string());
        let (num, den) = match s.split_once('/') {
            Some((n, d)) => (n.trim(), d.trim()),
            None => (s.trim(), "1"),
        };
        let num: BigInt = num.parse().map_err(|_| bad())?;
        let den: BigInt = den.parse().map_err(|_| bad())?;
        if den.is_zero() {
            return Err(bad());
        }
        Ok(Rational(BigRational::new(num, den)))
    }
}

macro_rules! from_int {
    ($($t:ty),*) => {$(
        impl From<$t> for Rational {
            fn from(n: $t) -> Self {
                Rational::from_integer(n)
            }
        }
    )*};
}
from_int!(i32, i64, u32, u64, usize);

impl From<BigInt> for Rational {
    fn from(n: BigInt) -> Self {
        Rational::from_integer(n)
    }
}

macro_rules! binop {
    ($tr:ident, $f:ident) => {
        impl $tr<&Rational> for &Rational {
            type Output = Rational;
            fn $f(self, rhs: &Rational) -> Rational {
                Rational((&self.0).$f(&rhs.0))
            }
        }
        impl $tr<Rational> for Rational {
            type Output = Rational;
            fn $f(self, rhs: Rational) -> Rational {
                Rational(self.0.$f(rhs.0))
            }
        }
        impl $tr<&Rational> for Rational {
            type Output = Rational;
            fn $f(self, rhs: &Rational) -> Rational {
                Rational(self.0.$f(&rhs.0))
            }
        }
    };
}
binop!(Add, add);
binop!(Sub, sub);
binop!(Mul, mul);
binop!(Div, div);

impl AddAssign<&Rational> for Rational {
    fn add_assign(&mut self, rhs: &Rational) {
        self.0 += &rhs.0;
    }
}

impl SubAssign<&Rational> for Rational {
    fn sub_assign(&mut self, rhs: &Rational) {
        self.0 -= &rhs.0;
    }
}

impl Neg for Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-self.0)
    }
}

impl Neg for &Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-&self.0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_form() {
        let r = Rational::new(6, -4);
        assert_eq!(r.numerator(), &BigInt::from(-3));
        assert_eq!(r.denominator(), &BigInt::from(2));
        assert_eq!(r, Rational::new(-3, 2));
    }

    #[test]
    fn fract_positive_wraps_negatives() {
        assert_eq!(Rational::new(-1, 5).fract_positive(), Rational::new(4, 5));
        assert_eq!(Rational::new(7, 3).fract_positive(), Rational::new(1, 3));
        assert_eq!(Rational::from(3).fract_positive(), Rational::zero());
    }

    #[test]
    fn parse_and_print() {
        let r: Rational = "-10/4".parse().unwrap();
        assert_eq!(r.to_fraction_string(), "-5/2");
        assert_eq!(Rational::from(2).to_fraction_string(), "2/1");
        assert_eq!("7".parse::<Rational>().unwrap(), Rational::from(7));
        assert!("1/0".parse::<Rational>().is_err());
        assert!("x/2".parse::<Rational>().is_err());
    }

    #[test]
    fn congruence() {
        assert!(Rational::new(1, 2).congruent_mod_one(&Rational::new(-1, 2)));
        assert!(!Rational::new(1, 4).congruent_mod_one(&Rational::new(3, 4)));
    }
}
