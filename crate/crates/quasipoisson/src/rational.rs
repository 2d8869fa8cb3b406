//! The scalar type: arbitrary-precision rationals.
//!
//! `Rat` is the only scalar used anywhere in the crate. `num::BigRational`
//! keeps values in lowest terms with a positive denominator, so equality is
//! plain structural equality.

use num::bigint::BigInt;
use num::rational::BigRational;
use num::traits::{One, Signed, Zero};

pub type Rat = BigRational;

/// `p/q` as an exact rational. Panics on `q == 0`.
pub fn rat(p: i64, q: i64) -> Rat {
    BigRational::new(BigInt::from(p), BigInt::from(q))
}

/// Integer as a rational.
pub fn int(p: i64) -> Rat {
    BigRational::from_integer(BigInt::from(p))
}

pub fn zero() -> Rat {
    BigRational::zero()
}

pub fn one() -> Rat {
    BigRational::one()
}

/// Canonical string form: `p` for integers, `p/q` otherwise, `-` up front.
pub fn fmt_rat(r: &Rat) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Parse `"p"` or `"p/q"`. Used by the JSON input schemas.
pub fn parse_rat(s: &str) -> Option<Rat> {
    let s = s.trim();
    match s.split_once('/') {
        None => s.parse::<BigInt>().ok().map(BigRational::from_integer),
        Some((p, q)) => {
            let p = p.trim().parse::<BigInt>().ok()?;
            let q = q.trim().parse::<BigInt>().ok()?;
            if q.is_zero() {
                None
            } else {
                Some(BigRational::new(p, q))
            }
        }
    }
}

/// True if the coefficient should be rendered without a leading `+`.
pub fn is_negative(r: &Rat) -> bool {
    r.is_negative()
}
