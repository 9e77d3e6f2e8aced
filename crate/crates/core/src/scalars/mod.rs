//! Exact scalars: arbitrary-precision rationals and the rational quaternions.

mod quaternion;
mod rational;

use std::fmt::Debug;
use std::ops::{Add, Mul, Neg, Sub};

pub use quaternion::{Quaternion, Unit};
pub use rational::{parse_rational, rat, to_pq_string, Rational};

/// The operations the polynomial layer needs from a (possibly noncommutative) field.
pub trait DivisionRing:
    Clone
    + PartialEq
    + Debug
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    /// `None` exactly when `self` is zero.
    fn inverse(&self) -> Option<Self>;

    fn pow(&self, exp: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..exp {
            acc = acc * self.clone();
        }
        acc
    }
}

impl DivisionRing for Rational {
    fn zero() -> Self {
        num_traits::Zero::zero()
    }

    fn one() -> Self {
        num_traits::One::one()
    }

    fn is_zero(&self) -> bool {
        num_traits::Zero::is_zero(self)
    }

    fn inverse(&self) -> Option<Self> {
        if num_traits::Zero::is_zero(self) {
            None
        } else {
            Some(self.recip())
        }
    }
}

impl DivisionRing for Quaternion {
    fn zero() -> Self {
        Quaternion::zero()
    }

    fn one() -> Self {
        Quaternion::one()
    }

    fn is_zero(&self) -> bool {
        Quaternion::is_zero(self)
    }

    fn inverse(&self) -> Option<Self> {
        self.inv().ok()
    }
}

/// Draws a quaternion with numerators in `-10..=10` and denominators in `1..=5`.
pub fn random_quaternion<G: rand::Rng + ?Sized>(rng: &mut G) -> Quaternion {
    let mut c = || rat(rng.gen_range(-10..=10), rng.gen_range(1..=5));
    Quaternion::new(c(), c(), c(), c())
}
