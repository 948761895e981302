//! The invariant store and the associativity (WDVV) recursion.
//!
//! With the reduced potential F(x1,x2) = sum <w^n1 wb^n2> x1^n1/n1! x2^n2/n2!,
//! associativity reads
//!
//!   F111 F222 - F112 F122 = (t1 t2 t3) / 9,
//!
//! the right side being (t1 t2 t3) F012^2 with F012 = <1 w wb> = 1/3 (all
//! longer fundamental-class invariants vanish). The coefficient equation at
//! (n1, n2) has exactly two top-weight terms,
//! (t1 t2 t3) <w^{n1+3} wb^{n2}> and <w^{n1} wb^{n2+3}>, so within each total
//! insertion count the equations form a banded full-rank-minus-one system:
//! one seed with n2 <= 2 per total determines the whole chain.

use crate::rat::{binomial, rat, rat_int};
use crate::sympoly::SymPoly3;
use std::collections::BTreeMap;
use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub struct InvKey {
    pub n0: u32,
    pub n1: u32,
    pub n2: u32,
}

impl InvKey {
    pub fn primary(n1: u32, n2: u32) -> Self {
        InvKey { n0: 0, n1, n2 }
    }

    pub fn total(&self) -> u32 {
        self.n0 + self.n1 + self.n2
    }

    pub fn describe(&self) -> String {
        format!("<1^{} w^{} wb^{}>", self.n0, self.n1, self.n2)
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum InvariantError {
    #[error("conflicting value for {key}: stored {stored}, new {new}")]
    ConflictingValue {
        key: String,
        stored: String,
        new: String,
    },
    #[error("missing seed invariant {0}")]
    MissingSeed(String),
    #[error("invariant {key} is not homogeneous of degree n2 = {n2}")]
    Inhomogeneous { key: String, n2: u32 },
    #[error("fundamental-class insertions only occur in the three-point seeds: {0}")]
    BadFundamentalClass(String),
}

#[derive(Debug, Clone, Default)]
pub struct InvariantStore {
    map: BTreeMap<InvKey, SymPoly3>,
}

impl InvariantStore {
    pub fn new() -> Self {
        InvariantStore::default()
    }

    /// The four three-pointed seeds. <1^3> is the one Laurent value; it never
    /// enters WDVV. Errs on conflict with already-stored values.
    pub fn seed_three_point(&mut self) -> Result<(), InvariantError> {
        let mut one3 = SymPoly3::zero();
        one3.add_class([-1, -1, -1], rat(1, 3));
        self.put(InvKey { n0: 3, n1: 0, n2: 0 }, one3)?;
        self.put(
            InvKey { n0: 1, n1: 1, n2: 1 },
            SymPoly3::constant(rat(1, 3)),
        )?;
        self.put(InvKey::primary(3, 0), SymPoly3::constant(rat(1, 3)))?;
        let mut wb3 = SymPoly3::zero();
        wb3.add_class([1, 1, 1], rat(1, 3));
        self.put(InvKey::primary(0, 3), wb3)
    }

    /// Monodromy-empty or 1-insertion-killed invariants are identically zero.
    pub fn known_zero(key: &InvKey) -> bool {
        if key.n0 > 0 {
            // nonzero only for the three-pointed seeds
            return key.total() != 3;
        }
        !(key.n1 + 2 * key.n2).is_multiple_of(3) || key.total() < 3
    }

    /// The value if determined: a stored value, a structural zero, or None.
    pub fn get(&self, key: &InvKey) -> Option<SymPoly3> {
        if let Some(v) = self.map.get(key) {
            return Some(v.clone());
        }
        if Self::known_zero(key) {
            return Some(SymPoly3::zero());
        }
        None
    }

    pub fn get_primary(&self, n1: u32, n2: u32) -> Option<SymPoly3> {
        self.get(&InvKey::primary(n1, n2))
    }

    pub fn put(&mut self, key: InvKey, value: SymPoly3) -> Result<(), InvariantError> {
        if key.n0 > 0 && key.total() != 3 {
            return Err(InvariantError::BadFundamentalClass(key.describe()));
        }
        if key.n0 == 0 && Self::known_zero(&key) && !value.is_zero() {
            return Err(InvariantError::ConflictingValue {
                key: key.describe(),
                stored: "0 (structural)".into(),
                new: value.to_string(),
            });
        }
        if key.n0 == 0 {
            // homogeneity of degree n2, asserted on every commit
            if !value.is_zero() && value.homogeneous_degree() != Some(key.n2 as i64) {
                return Err(InvariantError::Inhomogeneous {
                    key: key.describe(),
                    n2: key.n2,
                });
            }
        }
        if let Some(old) = self.map.get(&key) {
            if *old != value {
                return Err(InvariantError::ConflictingValue {
                    key: key.describe(),
                    stored: old.to_string(),
                    new: value.to_string(),
                });
            }
            return Ok(());
        }
        self.map.insert(key, value);
        Ok(())
    }

    pub fn iter(&self) -> impl Iterator<Item = (&InvKey, &SymPoly3)> {
        self.map.iter()
    }

    pub fn len(&self) -> usize {
        self.map.len()
    }

    pub fn is_empty(&self) -> bool {
        self.map.is_empty()
    }
}

/// The WDVV coefficient equation at (n1, n2), as
/// `sum_of_terms - delta_{(0,0)} (t1 t2 t3)/9`, evaluated over `store`.
/// Returns None if any needed invariant is missing.
pub fn wdvv_residual(store: &InvariantStore, n1: u32, n2: u32) -> Option<SymPoly3> {
    let mut acc = SymPoly3::zero();
    let term = |a1: u32, a2: u32| store.get_primary(a1, a2);
    for a in 0..=n1 {
        for b in 0..=n2 {
            let w = binomial(n1 as u64, a as u64) * binomial(n2 as u64, b as u64);
            let f111 = term(a + 3, b)?;
            let f222 = term(n1 - a, n2 - b + 3)?;
            let f112 = term(a + 2, b + 1)?;
            let f122 = term(n1 - a + 1, n2 - b + 2)?;
            acc = acc.add(&f111.mul(&f222).sub(&f112.mul(&f122)).scale(&w));
        }
    }
    if (n1, n2) == (0, 0) {
        let mut rhs = SymPoly3::zero();
        rhs.add_class([1, 1, 1], rat(1, 9));
        acc = acc.sub(&rhs);
    }
    Some(acc)
}

/// Propagates the invariants to every (n1, n2) with n1 + n2 <= n_max, from the
/// n2 <= 2 seeds, ascending n2 along each total-insertion chain.
pub fn propagate(store: &mut InvariantStore, n_max: u32) -> Result<(), InvariantError> {
    for total in 4..=n_max {
        // the chain's residue: n2 = -total mod 3
        let start = ((-(total as i64)).rem_euclid(3)) as u32;
        let mut n2 = start;
        while n2 + 3 <= total {
            let n1 = total - n2 - 3;
            // site (n1, n2): solve for <w^n1 wb^{n2+3}>; the chain predecessor
            // <w^{n1+3} wb^{n2}> must already be present (assembler seed or
            // earlier chain step)
            if store.get_primary(n1 + 3, n2).is_none() {
                return Err(InvariantError::MissingSeed(
                    InvKey::primary(n1 + 3, n2).describe(),
                ));
            }
            // All terms except the (a,b) = (0,0) product (1/3) X are known:
            // the (a,b) = (n1,n2) term is prev * <wb^3>, the chain link.
            let mut rhs = SymPoly3::zero();
            for a in 0..=n1 {
                for b in 0..=n2 {
                    let w = binomial(n1 as u64, a as u64) * binomial(n2 as u64, b as u64);
                    let f112 = known(store, a + 2, b + 1, (n1, n2))?;
                    let f122 = known(store, n1 - a + 1, n2 - b + 2, (n1, n2))?;
                    rhs = rhs.sub(&f112.mul(&f122).scale(&w));
                    if (a, b) == (0, 0) {
                        continue; // (1/3) X, the target slot
                    }
                    let f111 = known(store, a + 3, b, (n1, n2))?;
                    let f222 = known(store, n1 - a, n2 - b + 3, (n1, n2))?;
                    rhs = rhs.add(&f111.mul(&f222).scale(&w));
                }
            }
            let mut delta = SymPoly3::zero();
            if (n1, n2) == (0, 0) {
                delta.add_class([1, 1, 1], rat(1, 9));
            }
            // (1/3) X + rhs - delta = 0
            let x = delta.sub(&rhs).scale(&rat_int(3));
            store.put(InvKey::primary(n1, n2 + 3), x)?;
            n2 += 3;
        }
    }
    Ok(())
}

fn known(
    store: &InvariantStore,
    n1: u32,
    n2: u32,
    site: (u32, u32),
) -> Result<SymPoly3, InvariantError> {
    store.get_primary(n1, n2).ok_or_else(|| {
        InvariantError::MissingSeed(format!(
            "{} needed at WDVV site ({}, {})",
            InvKey::primary(n1, n2).describe(),
            site.0,
            site.1
        ))
    })
}

/// Checks every WDVV coefficient equation whose terms are all available:
/// returns the nonzero residual sites.
pub fn wdvv_failures(store: &InvariantStore, n_max: u32) -> Vec<(u32, u32, SymPoly3)> {
    let mut out = Vec::new();
    for n1 in 0..=n_max {
        for n2 in 0..=n_max.saturating_sub(n1) {
            if let Some(res) = wdvv_residual(store, n1, n2) {
                if !res.is_zero() {
                    out.push((n1, n2, res));
                }
            }
        }
    }
    out
}
