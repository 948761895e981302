//! Closed-form dimension, rank, monodromy, and Euler-characteristic formulas
//! for the admissible-cover spaces A(n1,n2) and the gerbe mapping spaces.

use crate::rat::{rat, rat_int, Rat};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GeomError {
    #[error("A({0},{1}) is empty: n1 + 2 n2 must be 0 mod 3")]
    EmptySpace(u32, u32),
}

/// A(n1,n2) is non-empty iff the total monodromy vanishes: n1 + 2 n2 = 0 mod 3.
pub fn space_nonempty(n1: u32, n2: u32) -> bool {
    (n1 + 2 * n2).is_multiple_of(3)
}

/// dim A(n1,n2) = n1 + n2 - 3. Negative values mean "no integrals live here".
pub fn space_dim(n1: u32, n2: u32) -> Result<i64, GeomError> {
    if !space_nonempty(n1, n2) {
        return Err(GeomError::EmptySpace(n1, n2));
    }
    Ok(n1 as i64 + n2 as i64 - 3)
}

/// rank E_omega = (n1 + 2 n2)/3 - 1.
pub fn rank_e_omega(n1: u32, n2: u32) -> Result<i64, GeomError> {
    if !space_nonempty(n1, n2) {
        return Err(GeomError::EmptySpace(n1, n2));
    }
    Ok((n1 as i64 + 2 * n2 as i64) / 3 - 1)
}

/// The degree-1 mapping space G_i(k,l) is non-empty iff k - l = i mod 3.
pub fn gerbe_space_nonempty(i: u8, k: u32, l: u32) -> bool {
    debug_assert!(i <= 1);
    (k as i64 - l as i64).rem_euclid(3) == i as i64
}

/// Line bundles whose pullback Euler characteristics we need.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GerbeBundle {
    /// O(n) tensor L_omega on the trivial gerbe G_0.
    TwistedOnG0 { n: i64 },
    /// O(n + 1/3) on the nontrivial gerbe G_1.
    ThirdOnG1 { n: i64 },
}

/// chi of the pullback of `bundle` along a map in G_i(k,l).
///
/// Used as a rank sanity check on locus templates: when R^0 vanishes,
/// rk R^1 = -chi.
pub fn euler_char(bundle: GerbeBundle, k: u32, l: u32) -> Rat {
    let age = rat(k as i64 + 2 * l as i64, 3);
    match bundle {
        GerbeBundle::TwistedOnG0 { n } => rat_int(n + 1) - age,
        GerbeBundle::ThirdOnG1 { n } => rat_int(n) + rat(4, 3) - age,
    }
}
