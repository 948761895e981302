//! Exact arbitrary-precision rationals.
//!
//! Every number in this crate is a `Rat`. `BigRational` already maintains the
//! invariants we need (lowest terms, positive denominator, exact arithmetic),
//! so this module only adds constructors and the `p/q` string form used by the
//! cache file and the CLI.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub type Rat = BigRational;

/// `n/d` from machine integers. Panics on `d == 0`.
pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

pub fn rat_int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

pub fn rat_zero() -> Rat {
    Rat::zero()
}

pub fn rat_one() -> Rat {
    Rat::one()
}

/// Renders in the cache format: `p/q`, or just `p` when `q == 1`.
pub fn rat_to_string(r: &Rat) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Parses `p`, `p/q`, or `-p/q`. Whitespace is not accepted.
pub fn rat_from_str(s: &str) -> Option<Rat> {
    match s.split_once('/') {
        None => s.parse::<BigInt>().ok().map(Rat::from_integer),
        Some((p, q)) => {
            let p = p.parse::<BigInt>().ok()?;
            let q = q.parse::<BigInt>().ok()?;
            if q.is_zero() {
                return None;
            }
            Some(Rat::new(p, q))
        }
    }
}

/// Exact binomial coefficient as a `Rat`.
pub fn binomial(n: u64, k: u64) -> Rat {
    if k > n {
        return Rat::zero();
    }
    Rat::from_integer(num_integer::binomial(BigInt::from(n), BigInt::from(k)))
}

/// `(-1)^k`.
pub fn sign_pow(k: i64) -> Rat {
    if k % 2 == 0 {
        Rat::one()
    } else {
        -Rat::one()
    }
}

pub fn is_negative(r: &Rat) -> bool {
    r.is_negative()
}
