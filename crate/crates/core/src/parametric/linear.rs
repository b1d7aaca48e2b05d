use std::cmp::Ordering;
use std::fmt::Debug;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_rational::Ratio;

/// Field the search parameter lives in: exact rationals or `f64`.
pub trait Scalar:
    Clone
    + PartialOrd
    + Debug
    + Send
    + Sync
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
{
    fn zero() -> Self;
    fn from_int(x: i64) -> Self;
    fn to_f64(&self) -> f64;

    fn sign(&self) -> Ordering {
        self.partial_cmp(&Self::zero()).expect("no NaN")
    }

    fn midpoint(&self, other: &Self) -> Self {
        (self.clone() + other.clone()) / Self::from_int(2)
    }
}

pub type Rational = Ratio<i128>;

impl Scalar for Rational {
    fn zero() -> Self {
        Ratio::from_integer(0)
    }

    fn from_int(x: i64) -> Self {
        Ratio::from_integer(x as i128)
    }

    fn to_f64(&self) -> f64 {
        *self.numer() as f64 / *self.denom() as f64
    }
}

impl Scalar for f64 {
    fn zero() -> Self {
        0.0
    }

    fn from_int(x: i64) -> Self {
        x as f64
    }

    fn to_f64(&self) -> f64 {
        *self
    }
}

/// The affine function `lambda -> b - lambda * a`.
#[derive(Clone, Debug, PartialEq)]
pub struct LinearValue<T> {
    pub a: T,
    pub b: T,
}

impl<T: Scalar> LinearValue<T> {
    pub fn new(a: T, b: T) -> Self {
        LinearValue { a, b }
    }

    pub fn constant(b: T) -> Self {
        LinearValue { a: T::zero(), b }
    }

    pub fn at(&self, lambda: &T) -> T {
        self.b.clone() - lambda.clone() * self.a.clone()
    }

    /// Where the function crosses zero, unless it is constant.
    pub fn root(&self) -> Option<T> {
        if self.a.sign() == Ordering::Equal {
            None
        } else {
            Some(self.b.clone() / self.a.clone())
        }
    }

    /// Sign on the open interval `(lo, hi)`, valid when no root lies
    /// strictly inside it.
    pub fn sign_between(&self, lo: &T, hi: &T) -> Ordering {
        if self.a.sign() == Ordering::Equal {
            return self.b.sign();
        }
        // At most one endpoint is a root, so the sum has the interior sign.
        (self.at(lo) + self.at(hi)).sign()
    }
}

impl<T: Scalar> Add for &LinearValue<T> {
    type Output = LinearValue<T>;

    fn add(self, rhs: Self) -> LinearValue<T> {
        LinearValue {
            a: self.a.clone() + rhs.a.clone(),
            b: self.b.clone() + rhs.b.clone(),
        }
    }
}

impl<T: Scalar> Sub for &LinearValue<T> {
    type Output = LinearValue<T>;

    fn sub(self, rhs: Self) -> LinearValue<T> {
        LinearValue {
            a: self.a.clone() - rhs.a.clone(),
            b: self.b.clone() - rhs.b.clone(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(p: i128, q: i128) -> Rational {
        Ratio::new(p, q)
    }

    #[test]
    fn arithmetic_is_componentwise() {
        let x = LinearValue::new(r(1, 1), r(3, 1));
        let y = LinearValue::new(r(2, 1), r(-1, 2));
        assert_eq!(&x + &y, LinearValue::new(r(3, 1), r(5, 2)));
        assert_eq!(&(&x + &y) - &y, x);
    }

    #[test]
    fn root_and_signs() {
        // 3 - 2 lambda crosses zero at 3/2
        let f = LinearValue::new(r(2, 1), r(3, 1));
        assert_eq!(f.root(), Some(r(3, 2)));
        assert_eq!(f.sign_between(&r(0, 1), &r(3, 2)), Ordering::Greater);
        assert_eq!(f.sign_between(&r(3, 2), &r(5, 1)), Ordering::Less);
        let c = LinearValue::constant(r(0, 1));
        assert_eq!(c.sign_between(&r(0, 1), &r(1, 1)), Ordering::Equal);
    }

    #[test]
    fn float_evaluation() {
        let f = LinearValue::new(1.0, 2.0);
        assert_eq!(f.at(&0.5), 1.5);
        assert_eq!(f.root(), Some(2.0));
    }
}
