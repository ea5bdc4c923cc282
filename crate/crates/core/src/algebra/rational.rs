//! Arbitrary-precision rationals with an inline fast path for machine integers.
//!
//! Almost every coefficient that shows up in q-series work is a small integer,
//! so the common case stays in an `i64` and only spills into `BigRational` on
//! overflow or when a genuine fraction appears.

use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

#[derive(Clone, Debug)]
enum Repr {
    Small(i64),
    // Invariant: never an integer that fits in i64.
    Big(Box<BigRational>),
}

/// An exact rational number in lowest terms with positive denominator.
#[derive(Clone, Debug)]
pub struct ExactRational(Repr);

impl ExactRational {
    pub fn from_i64(v: i64) -> Self {
        ExactRational(Repr::Small(v))
    }

    pub fn new(num: i64, den: i64) -> Self {
        assert!(den != 0, "zero denominator");
        Self::from_big(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    pub fn from_big(r: BigRational) -> Self {
        if r.is_integer() {
            if let Some(v) = r.numer().to_i64() {
                return ExactRational(Repr::Small(v));
            }
        }
        ExactRational(Repr::Big(Box::new(r)))
    }

    pub fn from_bigint(v: BigInt) -> Self {
        match v.to_i64() {
            Some(s) => ExactRational(Repr::Small(s)),
            None => ExactRational(Repr::Big(Box::new(BigRational::from_integer(v)))),
        }
    }

    pub fn to_big(&self) -> BigRational {
        match &self.0 {
            Repr::Small(v) => BigRational::from_integer(BigInt::from(*v)),
            Repr::Big(b) => (**b).clone(),
        }
    }

    pub fn numer(&self) -> BigInt {
        match &self.0 {
            Repr::Small(v) => BigInt::from(*v),
            Repr::Big(b) => b.numer().clone(),
        }
    }

    pub fn denom(&self) -> BigInt {
        match &self.0 {
            Repr::Small(_) => BigInt::one(),
            Repr::Big(b) => b.denom().clone(),
        }
    }

    pub fn is_integer(&self) -> bool {
        matches!(self.0, Repr::Small(_))
    }

    pub fn as_i64(&self) -> Option<i64> {
        match self.0 {
            Repr::Small(v) => Some(v),
            Repr::Big(_) => None,
        }
    }

    pub fn is_negative(&self) -> bool {
        match &self.0 {
            Repr::Small(v) => *v < 0,
            Repr::Big(b) => b.is_negative(),
        }
    }

    pub fn abs(&self) -> Self {
        if self.is_negative() {
            -self
        } else {
            self.clone()
        }
    }

    pub fn recip(&self) -> Self {
        assert!(!self.is_zero(), "reciprocal of zero");
        match &self.0 {
            Repr::Small(1) => Self::one(),
            Repr::Small(-1) => Self::from_i64(-1),
            _ => Self::from_big(self.to_big().recip()),
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    pub fn factorial(n: u64) -> Self {
        let mut acc = BigInt::one();
        for k in 2..=n {
            acc *= BigInt::from(k);
        }
        Self::from_bigint(acc)
    }
}

impl Zero for ExactRational {
    fn zero() -> Self {
        ExactRational(Repr::Small(0))
    }
    fn is_zero(&self) -> bool {
        matches!(self.0, Repr::Small(0))
    }
}

impl One for ExactRational {
    fn one() -> Self {
        ExactRational(Repr::Small(1))
    }
}

impl From<i64> for ExactRational {
    fn from(v: i64) -> Self {
        Self::from_i64(v)
    }
}

impl From<BigInt> for ExactRational {
    fn from(v: BigInt) -> Self {
        Self::from_bigint(v)
    }
}

impl PartialEq for ExactRational {
    fn eq(&self, other: &Self) -> bool {
        match (&self.0, &other.0) {
            (Repr::Small(a), Repr::Small(b)) => a == b,
            (Repr::Big(a), Repr::Big(b)) => a == b,
            _ => false,
        }
    }
}

impl Eq for ExactRational {}

impl Hash for ExactRational {
    fn hash<H: Hasher>(&self, state: &mut H) {
        match &self.0 {
            Repr::Small(v) => {
                0u8.hash(state);
                v.hash(state);
            }
            Repr::Big(b) => {
                1u8.hash(state);
                b.hash(state);
            }
        }
    }
}

impl Ord for ExactRational {
    fn cmp(&self, other: &Self) -> Ordering {
        match (&self.0, &other.0) {
            (Repr::Small(a), Repr::Small(b)) => a.cmp(b),
            _ => self.to_big().cmp(&other.to_big()),
        }
    }
}

impl PartialOrd for ExactRational {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl<'a> Add<&'a ExactRational> for &'a ExactRational {
    type Output = ExactRational;
    fn add(self, rhs: &ExactRational) -> ExactRational {
        if let (Repr::Small(a), Repr::Small(b)) = (&self.0, &rhs.0) {
            if let Some(s) = a.checked_add(*b) {
                return ExactRational(Repr::Small(s));
            }
        }
        ExactRational::from_big(self.to_big() + rhs.to_big())
    }
}

impl<'a> Sub<&'a ExactRational> for &'a ExactRational {
    type Output = ExactRational;
    fn sub(self, rhs: &ExactRational) -> ExactRational {
        if let (Repr::Small(a), Repr::Small(b)) = (&self.0, &rhs.0) {
            if let Some(s) = a.checked_sub(*b) {
                return ExactRational(Repr::Small(s));
            }
        }
        ExactRational::from_big(self.to_big() - rhs.to_big())
    }
}

impl<'a> Mul<&'a ExactRational> for &'a ExactRational {
    type Output = ExactRational;
    fn mul(self, rhs: &ExactRational) -> ExactRational {
        if let (Repr::Small(a), Repr::Small(b)) = (&self.0, &rhs.0) {
            if let Some(s) = a.checked_mul(*b) {
                return ExactRational(Repr::Small(s));
            }
        }
        ExactRational::from_big(self.to_big() * rhs.to_big())
    }
}

impl<'a> Div<&'a ExactRational> for &'a ExactRational {
    type Output = ExactRational;
    fn div(self, rhs: &ExactRational) -> ExactRational {
        assert!(!rhs.is_zero(), "division by zero");
        if let (Repr::Small(a), Repr::Small(b)) = (&self.0, &rhs.0) {
            if *b != 0 && a.is_multiple_of(b) {
                if let Some(s) = a.checked_div(*b) {
                    return ExactRational(Repr::Small(s));
                }
            }
        }
        ExactRational::from_big(self.to_big() / rhs.to_big())
    }
}

impl Neg for &ExactRational {
    type Output = ExactRational;
    fn neg(self) -> ExactRational {
        match &self.0 {
            Repr::Small(v) => match v.checked_neg() {
                Some(n) => ExactRational(Repr::Small(n)),
                None => ExactRational::from_big(-self.to_big()),
            },
            Repr::Big(b) => ExactRational::from_big(-(**b).clone()),
        }
    }
}

impl Neg for ExactRational {
    type Output = ExactRational;
    fn neg(self) -> ExactRational {
        -&self
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<ExactRational> for ExactRational {
            type Output = ExactRational;
            fn $m(self, rhs: ExactRational) -> ExactRational {
                (&self).$m(&rhs)
            }
        }
        impl<'a> $tr<&'a ExactRational> for ExactRational {
            type Output = ExactRational;
            fn $m(self, rhs: &ExactRational) -> ExactRational {
                (&self).$m(rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
forward_owned!(Div, div);

impl AddAssign<&ExactRational> for ExactRational {
    fn add_assign(&mut self, rhs: &ExactRational) {
        if let (Repr::Small(a), Repr::Small(b)) = (&mut self.0, &rhs.0) {
            if let Some(s) = a.checked_add(*b) {
                *a = s;
                return;
            }
        }
        *self = &*self + rhs;
    }
}

impl SubAssign<&ExactRational> for ExactRational {
    fn sub_assign(&mut self, rhs: &ExactRational) {
        *self = &*self - rhs;
    }
}

impl MulAssign<&ExactRational> for ExactRational {
    fn mul_assign(&mut self, rhs: &ExactRational) {
        *self = &*self * rhs;
    }
}

impl fmt::Display for ExactRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.0 {
            Repr::Small(v) => write!(f, "{v}"),
            Repr::Big(b) => {
                if b.is_integer() {
                    write!(f, "{}", b.numer())
                } else {
                    write!(f, "{}/{}", b.numer(), b.denom())
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_path_overflows_into_big() {
        let big = ExactRational::from_i64(i64::MAX);
        let sum = &big + &ExactRational::one();
        assert!(!sum.is_integer());
        assert_eq!(sum.numer(), BigInt::from(i64::MAX) + 1);
        let back = &sum - &ExactRational::one();
        assert_eq!(back, big);
        assert!(back.is_integer());
    }

    #[test]
    fn fractions_reduce() {
        let a = ExactRational::new(6, -4);
        assert_eq!(a.to_string(), "-3/2");
        let b = &a * &ExactRational::new(-2, 3);
        assert_eq!(b, ExactRational::one());
        assert_eq!((&ExactRational::from_i64(3) / &ExactRational::from_i64(6)).to_string(), "1/2");
    }

    #[test]
    fn ordering_mixes_reprs() {
        let half = ExactRational::new(1, 2);
        assert!(half > ExactRational::zero());
        assert!(half < ExactRational::one());
        assert_eq!(ExactRational::factorial(5), ExactRational::from_i64(120));
    }
}
