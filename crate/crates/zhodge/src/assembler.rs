//! Translation between Hodge integrals and equivariant invariants.
//!
//! For n2 <= 2 every surviving lambda-partition carries a lambda-top factor,
//! so the invariant is assembled from the solver's committed classes:
//!
//!   <w^n1 wb^n2> = (-1)^{n1+n2-3} sum_{i+j+k = n1+n2-3}
//!                    t1^{r-i} t2^{r-j} t3^{r-k} (lam_i lam_j lam_k)
//!
//! Conversely any computed invariant (any n2) is read back multiset by
//! multiset: the sorted exponent triple (r-i, r-j, r-k) determines {i,j,k},
//! and the monomial-symmetric-class convention makes the round trip exact
//! with no extra multiplicity factors.

use crate::hodge::{Flavor, HodgeStore};
use crate::invariants::InvariantStore;
use crate::rat::{sign_pow, Rat};
use crate::solver::value_of;
use crate::sympoly::SymPoly3;
use num_traits::Zero;
use std::collections::BTreeMap;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum AssembleError {
    #[error("missing Hodge value for A({n1},{n2}) drops ({i},{j})")]
    MissingHodgeValue { n1: u32, n2: u32, i: u32, j: u32 },
    #[error("invariant <w^{n1} wb^{n2}> is not available")]
    MissingInvariant { n1: u32, n2: u32 },
    #[error("exponent class {0:?} appears twice while inverting")]
    AmbiguousMonomial([i64; 3]),
}

/// Sorted lambda-index multisets {i,j,k} with i+j+k = dim, each <= r.
fn partitions(dim: i64, r: i64) -> Vec<[i64; 3]> {
    let mut out = Vec::new();
    for i in 0..=r {
        for j in i..=r {
            let k = dim - i - j;
            if k >= j && k <= r {
                out.push([i, j, k]);
            }
        }
    }
    out
}

/// The boxed translation: Hodge classes -> equivariant invariant, n2 <= 2.
pub fn invariant_from_hodge(
    store: &HodgeStore,
    n1: u32,
    n2: u32,
) -> Result<SymPoly3, AssembleError> {
    assert!(n2 <= 2, "higher omega-bar counts come from WDVV");
    assert!(crate::geometry::space_nonempty(n1, n2));
    let dim = crate::geometry::space_dim(n1, n2).unwrap();
    let r = crate::geometry::rank_e_omega(n1, n2).unwrap();
    assert!(dim >= 0);
    let sign = sign_pow(dim);
    let mut out = SymPoly3::zero();
    for part in partitions(dim, r) {
        // With n2 <= 2 the drops sum to n2, so the largest index is r: the
        // partition is {r, r-a, r-b}; its value is a committed class.
        let (a, b) = ((r - part[1]) as u32, (r - part[0]) as u32);
        debug_assert_eq!(part[2], r);
        let val = value_of(store, n1, n2, a.min(b), a.max(b), Flavor::None).ok_or(
            AssembleError::MissingHodgeValue {
                n1,
                n2,
                i: a.min(b),
                j: a.max(b),
            },
        )?;
        if val.is_zero() {
            continue;
        }
        out.add_class([r - part[0], r - part[1], r - part[2]], &sign * &val);
    }
    Ok(out)
}

/// Inverts the boxed formula: every three-part integral lam_i lam_j lam_k on
/// A(n1,n2), from the stored invariant. Works for any n2.
pub fn hodge_from_invariant(
    inv: &InvariantStore,
    n1: u32,
    n2: u32,
) -> Result<BTreeMap<[i64; 3], Rat>, AssembleError> {
    assert!(crate::geometry::space_nonempty(n1, n2));
    let dim = crate::geometry::space_dim(n1, n2).unwrap();
    let r = crate::geometry::rank_e_omega(n1, n2).unwrap();
    assert!(dim >= 0);
    let value = inv
        .get_primary(n1, n2)
        .ok_or(AssembleError::MissingInvariant { n1, n2 })?;
    let sign = sign_pow(dim);
    let mut classes: BTreeMap<[i64; 3], Rat> = BTreeMap::new();
    for (e, c) in value.classes() {
        classes.insert(*e, c / &sign);
    }
    let mut out = BTreeMap::new();
    for part in partitions(dim, r) {
        // the exponent triple sorted descending: (r - part[0], ...) since
        // part is ascending
        let expts = [r - part[0], r - part[1], r - part[2]];
        if out.contains_key(&part) {
            return Err(AssembleError::AmbiguousMonomial(expts));
        }
        let coeff = classes.remove(&expts).unwrap_or_else(Rat::zero);
        out.insert(part, coeff);
    }
    debug_assert!(
        classes.is_empty(),
        "invariant carries exponents outside the partition range: {classes:?}"
    );
    Ok(out)
}

/// Exact specialization at a torus point.
pub fn specialize(p: &SymPoly3, t: &[Rat; 3]) -> Rat {
    p.specialize(t)
}

/// Verifies the three translation identities between the potential and the
/// L-series, coefficient by coefficient up to total order `max_order`:
///
/// ```text
/// F(0,x,0)      = -L(-x,0;0,0)
/// F_x2(0,x,0)   = (t1+t2+t3) L_yu(-x,0;0,0)
/// F_x2x2(0,x,0) = -[(t1^2+t2^2+t3^2)/2 L_yyuu + (t1t2+t1t3+t2t3) L_yyuv](-x,0;0,0)
/// ```
///
/// The sign and the x -> -x are forced by the Euler-class expansion; the
/// series side reads single Hodge coefficients, the potential side reads
/// assembled invariants. Returns mismatch descriptions; empty means pass.
pub fn lf_crosscheck(
    store: &HodgeStore,
    inv: &InvariantStore,
    max_order: u32,
) -> Vec<String> {
    let mut bad = Vec::new();
    let mut check = |m: u32, n2: u32, lhs: Option<SymPoly3>, rhs: Option<SymPoly3>| {
        match (lhs, rhs) {
            (Some(l), Some(r)) => {
                if l != r {
                    bad.push(format!(
                        "identity at n2 = {n2}, x-order {m}: potential {l} vs series {r}"
                    ));
                }
            }
            _ => bad.push(format!("identity at n2 = {n2}, x-order {m}: missing data")),
        }
    };
    for m in 3..=max_order {
        // identity 1: <w^m> against H(m,0,0,0)
        if crate::geometry::space_nonempty(m, 0) {
            let series = value_of(store, m, 0, 0, 0, Flavor::None)
                .map(|h| SymPoly3::constant(-sign_pow(m as i64) * h));
            check(m, 0, inv.get_primary(m, 0), series);
        }
        // identity 2: <w^m wb> against (t1+t2+t3) H(m,1,(0,1))
        if m < max_order && crate::geometry::space_nonempty(m, 1) {
            let series = value_of(store, m, 1, 0, 1, Flavor::None).map(|h| {
                let mut e1 = SymPoly3::zero();
                e1.add_class([1, 0, 0], sign_pow(m as i64) * h);
                e1
            });
            check(m, 1, inv.get_primary(m, 1), series);
        }
        // identity 3: <w^m wb^2> against the two quadratic weights
        if m + 2 <= max_order && crate::geometry::space_nonempty(m, 2) {
            let h20 = value_of(store, m, 2, 0, 2, Flavor::None);
            let h11 = value_of(store, m, 2, 1, 1, Flavor::None);
            let series = match (h20, h11) {
                (Some(a), Some(b)) => {
                    let s = -sign_pow(m as i64);
                    let mut p = SymPoly3::zero();
                    p.add_class([2, 0, 0], &s * &a);
                    p.add_class([1, 1, 0], &s * &b);
                    Some(p)
                }
                _ => None,
            };
            check(m, 2, inv.get_primary(m, 2), series);
        }
    }
    bad
}

/// Round-trip audit: reassembling the inverted classes reproduces the stored
/// invariant, and every multiset respects the degree bounds.
pub fn round_trip_ok(
    store: &HodgeStore,
    inv: &InvariantStore,
    n1: u32,
    n2: u32,
) -> Result<bool, AssembleError> {
    let classes = hodge_from_invariant(inv, n1, n2)?;
    let dim = crate::geometry::space_dim(n1, n2).unwrap();
    let r = crate::geometry::rank_e_omega(n1, n2).unwrap();
    for part in classes.keys() {
        if part[0] + part[1] + part[2] != dim || part[2] > r {
            return Ok(false);
        }
    }
    if n2 <= 2 {
        // classes of the form {r, r-a, r-b} must match the committed store
        for (part, val) in &classes {
            if part[2] == r {
                let (a, b) = ((r - part[1]) as u32, (r - part[0]) as u32);
                let stored = value_of(store, n1, n2, a.min(b), a.max(b), Flavor::None);
                if stored != Some(val.clone()) {
                    return Ok(false);
                }
            } else if !val.is_zero() {
                return Ok(false);
            }
        }
        let reassembled = invariant_from_hodge(store, n1, n2)?;
        return Ok(Some(reassembled) == inv.get_primary(n1, n2));
    }
    Ok(true)
}

/// Assembles every n2 <= 2 invariant with total insertions <= n_max into the
/// invariant store.
pub fn assemble_seeds(
    store: &HodgeStore,
    inv: &mut InvariantStore,
    n_max: u32,
) -> Result<(), crate::invariants::InvariantError> {
    for total in 3..=n_max {
        for n2 in 0..=2u32 {
            let n1 = total - n2;
            if !crate::geometry::space_nonempty(n1, n2) {
                continue;
            }
            let value = invariant_from_hodge(store, n1, n2).unwrap_or_else(|e| {
                panic!("assembling <w^{n1} wb^{n2}>: {e}");
            });
            inv.put(crate::invariants::InvKey::primary(n1, n2), value)?;
        }
    }
    Ok(())
}
