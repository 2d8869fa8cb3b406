//! Scalar abstraction and two-direction first-order jets.
//!
//! Sampled checks need exact derivatives of rational maps (Gauss
//! decompositions, moment maps) at rational points. `Jet2` is the ring
//! ℚ[ε₁,ε₂]/(ε₁²,ε₂²): evaluating a map on `x + ε₁u + ε₂v` yields the value,
//! both directional derivatives and the mixed second derivative, all exactly.

use crate::rational::{one, zero, Rat};
use num::traits::Zero;

/// Common interface for the scalars we evaluate over: exact rationals and
/// their jet extensions. Division is partial (`inv` fails on non-units).
pub trait Scalar: Clone + PartialEq + std::fmt::Debug {
    fn zero() -> Self;
    fn one() -> Self;
    fn from_rat(r: &Rat) -> Self;
    fn add(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }
    fn mul(&self, o: &Self) -> Self;
    fn neg(&self) -> Self;
    fn inv(&self) -> Option<Self>;
    fn is_zero(&self) -> bool;
}

impl Scalar for Rat {
    fn zero() -> Self {
        zero()
    }
    fn one() -> Self {
        one()
    }
    fn from_rat(r: &Rat) -> Self {
        r.clone()
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn neg(&self) -> Self {
        -self
    }
    fn inv(&self) -> Option<Self> {
        if Zero::is_zero(self) {
            None
        } else {
            Some(self.recip())
        }
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
}

/// `a + b ε₁ + c ε₂ + d ε₁ε₂` with ε₁² = ε₂² = 0.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Jet2 {
    pub val: Rat,
    pub d1: Rat,
    pub d2: Rat,
    pub d12: Rat,
}

impl Jet2 {
    pub fn constant(val: Rat) -> Self {
        Jet2 {
            val,
            d1: zero(),
            d2: zero(),
            d12: zero(),
        }
    }

    /// Value with independent perturbations in both jet directions.
    pub fn seeded(val: Rat, d1: Rat, d2: Rat) -> Self {
        Jet2 {
            val,
            d1,
            d2,
            d12: zero(),
        }
    }
}

impl Scalar for Jet2 {
    fn zero() -> Self {
        Jet2::constant(zero())
    }
    fn one() -> Self {
        Jet2::constant(one())
    }
    fn from_rat(r: &Rat) -> Self {
        Jet2::constant(r.clone())
    }
    fn add(&self, o: &Self) -> Self {
        Jet2 {
            val: &self.val + &o.val,
            d1: &self.d1 + &o.d1,
            d2: &self.d2 + &o.d2,
            d12: &self.d12 + &o.d12,
        }
    }
    fn mul(&self, o: &Self) -> Self {
        Jet2 {
            val: &self.val * &o.val,
            d1: &self.val * &o.d1 + &self.d1 * &o.val,
            d2: &self.val * &o.d2 + &self.d2 * &o.val,
            d12: &self.val * &o.d12 + &self.d12 * &o.val + &self.d1 * &o.d2 + &self.d2 * &o.d1,
        }
    }
    fn neg(&self) -> Self {
        Jet2 {
            val: -&self.val,
            d1: -&self.d1,
            d2: -&self.d2,
            d12: -&self.d12,
        }
    }
    fn inv(&self) -> Option<Self> {
        if Zero::is_zero(&self.val) {
            return None;
        }
        // (a(1+u))^{-1} = a^{-1}(1 - u + u^2) with u nilpotent of order 3.
        let ai = self.val.recip();
        let u1 = &self.d1 * &ai;
        let u2 = &self.d2 * &ai;
        let u12 = &self.d12 * &ai;
        // u = u1 ε₁ + u2 ε₂ + u12 ε₁ε₂; u² = 2 u1 u2 ε₁ε₂.
        let sq = &u1 * &u2 + &u2 * &u1;
        Some(Jet2 {
            val: ai.clone(),
            d1: -(&u1 * &ai),
            d2: -(&u2 * &ai),
            d12: (&sq - &u12) * &ai,
        })
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(&self.val)
            && Zero::is_zero(&self.d1)
            && Zero::is_zero(&self.d2)
            && Zero::is_zero(&self.d12)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, rat};

    #[test]
    fn jet_inverse() {
        let x = Jet2 {
            val: int(2),
            d1: int(3),
            d2: int(5),
            d12: int(7),
        };
        let y = x.inv().unwrap();
        let p = x.mul(&y);
        assert_eq!(p, Jet2::one());
    }

    #[test]
    fn jet_derivative_of_square() {
        // f(t) = t^2 at t=3 in direction 1: f' = 6.
        let t = Jet2::seeded(int(3), int(1), int(0));
        let sq = t.mul(&t);
        assert_eq!(sq.val, int(9));
        assert_eq!(sq.d1, int(6));
        assert_eq!(sq.d12, int(0));
        let _ = rat(1, 2);
    }

    #[test]
    fn jet_mixed_partial() {
        // f(x,y) = x*y: mixed second partial is 1.
        let x = Jet2::seeded(int(4), int(1), int(0));
        let y = Jet2::seeded(int(5), int(0), int(1));
        let p = x.mul(&y);
        assert_eq!(p.d12, int(1));
    }
}
