//! Scalar abstraction shared by the floating-point and exact-rational engines.
//!
//! Every frame-coefficient recursion in this crate is a polynomial in the
//! squared curvatures, so the same code runs on `f64` for numerics and on
//! `num_rational` types for zero-tolerance classification work.

use std::ops::{Neg, Sub};

use num_traits::{One, Zero};

/// Ring operations required by the frame-coefficient recursions.
pub trait Scalar:
    Clone + PartialEq + Zero + One + Neg<Output = Self> + Sub<Output = Self>
{
}

impl<T> Scalar for T where
    T: Clone + PartialEq + Zero + One + Neg<Output = T> + Sub<Output = T>
{
}

/// Small non-negative integer as a scalar (orders `r`, exponents).
pub fn from_usize<S: Scalar>(k: usize) -> S {
    let mut acc = S::zero();
    for _ in 0..k {
        acc = acc + S::one();
    }
    acc
}

/// `x^k` by repeated multiplication; exponents here are tiny.
pub fn pow<S: Scalar>(x: &S, k: usize) -> S {
    let mut acc = S::one();
    for _ in 0..k {
        acc = acc * x.clone();
    }
    acc
}

#[cfg(test)]
mod tests {
    use num_rational::Rational64;

    use super::*;

    #[test]
    fn small_integers_and_powers() {
        assert_eq!(from_usize::<f64>(4), 4.0);
        let half = Rational64::new(1, 2);
        assert_eq!(pow(&half, 3), Rational64::new(1, 8));
        assert_eq!(pow(&half, 0), Rational64::new(1, 1));
    }
}
