//! Canonical keying, zero-normalization, memoization, and unknown-id issue for
//! Z3-Hodge integrals.
//!
//! A key names the integral of `lam_r lam_{r-i} lam_{r-j} psi^l` over A(n1,n2),
//! where `r = rank E_omega`, the drops satisfy `0 <= i <= j`, and the psi power
//! `l = i + j - n2` sits at a point of the key's flavor. The degree identity
//! `3r - i - j + l = dim` then holds automatically; `canonicalize` checks it
//! anyway.

use crate::affine::UnknownId;
use crate::geometry::{rank_e_omega, space_dim, space_nonempty};
use crate::rat::Rat;
use std::collections::BTreeMap;
use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Flavor {
    /// psi power zero; no flavor needed.
    None,
    /// psi at an omega-point.
    Omega,
    /// psi at an omega-bar-point.
    OmegaBar,
}

impl Flavor {
    pub fn tag(self) -> &'static str {
        match self {
            Flavor::None => "none",
            Flavor::Omega => "w",
            Flavor::OmegaBar => "wb",
        }
    }

    pub fn from_tag(s: &str) -> Option<Flavor> {
        match s {
            "none" => Some(Flavor::None),
            "w" => Some(Flavor::Omega),
            "wb" => Some(Flavor::OmegaBar),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct HodgeKey {
    pub n1: u32,
    pub n2: u32,
    /// Sorted lambda-index drops, i <= j.
    pub i: u32,
    pub j: u32,
    pub flavor: Flavor,
}

impl HodgeKey {
    /// psi power l = i + j - n2, stored implicitly.
    pub fn psi_power(&self) -> i64 {
        self.i as i64 + self.j as i64 - self.n2 as i64
    }

    /// Induction level: A(3k+3,0), A(3k+1,1), A(3k-1,2) all sit at level k.
    pub fn level(&self) -> u32 {
        match self.n2 {
            0 => (self.n1 - 3) / 3,
            1 => (self.n1 - 1) / 3,
            2 => (self.n1 + 1) / 3,
            _ => 0,
        }
    }

    pub fn describe(&self) -> String {
        format!(
            "A({},{}) drops ({},{}) psi^{} {}",
            self.n1,
            self.n2,
            self.i,
            self.j,
            self.psi_power().max(0),
            self.flavor.tag()
        )
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Canon {
    Zero,
    Key(HodgeKey),
}

/// Zero-normalizes a raw key: sorts the drops, kills monodromy violations,
/// out-of-range drops, negative psi powers, and negative-dimension spaces, and
/// forgets the flavor when the psi power is zero.
///
/// The one special entry is A(0,3) with drops (0,0): the dimension-zero
/// fundamental-class integral that seeds the omega-bar side. It does not fit
/// the lambda-top shape and only the seed/assembler path reads it.
pub fn canonicalize(n1: u32, n2: u32, i: u32, j: u32, flavor: Flavor) -> Canon {
    if !space_nonempty(n1, n2) {
        return Canon::Zero;
    }
    if (n1, n2, i, j) == (0, 3, 0, 0) {
        return Canon::Key(HodgeKey {
            n1,
            n2,
            i,
            j,
            flavor: Flavor::None,
        });
    }
    let dim = space_dim(n1, n2).unwrap();
    if dim < 0 {
        return Canon::Zero;
    }
    let r = rank_e_omega(n1, n2).unwrap();
    let (i, j) = if i <= j { (i, j) } else { (j, i) };
    if i as i64 > r || j as i64 > r {
        return Canon::Zero;
    }
    let ell = i as i64 + j as i64 - n2 as i64;
    if ell < 0 {
        return Canon::Zero;
    }
    debug_assert_eq!(3 * r - i as i64 - j as i64 + ell, dim, "degree identity");
    let flavor = if ell == 0 {
        Flavor::None
    } else {
        match flavor {
            // a flavorless raw key with positive psi power names no class
            Flavor::None => return Canon::Zero,
            // psi needs a point of its flavor to sit at
            Flavor::Omega if n1 == 0 => return Canon::Zero,
            Flavor::OmegaBar if n2 == 0 => return Canon::Zero,
            f => f,
        }
    };
    Canon::Key(HodgeKey { n1, n2, i, j, flavor })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum HodgeVal {
    Known(Rat),
    Unknown(UnknownId),
    Zero,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum StoreError {
    #[error("conflicting value for {key}: stored {stored}, new {new}")]
    ConflictingValue {
        key: String,
        stored: String,
        new: String,
    },
    #[error("unregistered key {0}")]
    Unregistered(String),
}

#[derive(Debug, Clone, Default)]
pub struct HodgeStore {
    entries: BTreeMap<HodgeKey, (UnknownId, Option<Rat>)>,
    by_id: BTreeMap<UnknownId, HodgeKey>,
    next_id: UnknownId,
}

impl HodgeStore {
    pub fn new() -> Self {
        HodgeStore::default()
    }

    /// Installs the three-pointed Hodge seeds. Errs if the store already
    /// holds a conflicting value (a tampered cache, for example).
    pub fn seed_three_point(&mut self) -> Result<(), StoreError> {
        let a30 = match canonicalize(3, 0, 0, 0, Flavor::None) {
            Canon::Key(k) => k,
            Canon::Zero => unreachable!(),
        };
        let a03 = match canonicalize(0, 3, 0, 0, Flavor::None) {
            Canon::Key(k) => k,
            Canon::Zero => unreachable!(),
        };
        self.put(a30, crate::rat::rat(1, 3))?;
        self.put(a03, crate::rat::rat(1, 3))
    }

    /// Issues (or returns) the unknown id for a canonical key.
    pub fn register(&mut self, key: HodgeKey) -> UnknownId {
        if let Some((id, _)) = self.entries.get(&key) {
            return *id;
        }
        let id = self.next_id;
        self.next_id += 1;
        self.entries.insert(key, (id, None));
        self.by_id.insert(id, key);
        id
    }

    pub fn get(&self, key: HodgeKey) -> Option<HodgeVal> {
        self.entries.get(&key).map(|(id, v)| match v {
            Some(r) => HodgeVal::Known(r.clone()),
            None => HodgeVal::Unknown(*id),
        })
    }

    /// Canonicalizes and looks up; Zero keys never hit the map.
    pub fn get_raw(&self, n1: u32, n2: u32, i: u32, j: u32, flavor: Flavor) -> Option<HodgeVal> {
        match canonicalize(n1, n2, i, j, flavor) {
            Canon::Zero => Some(HodgeVal::Zero),
            Canon::Key(k) => self.get(k),
        }
    }

    pub fn key_of(&self, id: UnknownId) -> Option<HodgeKey> {
        self.by_id.get(&id).copied()
    }

    /// Stores an exact value. Disagreement with a stored value is a primary
    /// correctness tripwire, never papered over.
    pub fn put(&mut self, key: HodgeKey, value: Rat) -> Result<(), StoreError> {
        let id = self.register(key);
        let entry = self.entries.get_mut(&key).unwrap();
        if let Some(old) = &entry.1 {
            if *old != value {
                return Err(StoreError::ConflictingValue {
                    key: key.describe(),
                    stored: crate::rat::rat_to_string(old),
                    new: crate::rat::rat_to_string(&value),
                });
            }
            return Ok(());
        }
        entry.1 = Some(value);
        let _ = id;
        Ok(())
    }

    pub fn put_by_id(&mut self, id: UnknownId, value: Rat) -> Result<(), StoreError> {
        let key = self
            .key_of(id)
            .ok_or_else(|| StoreError::Unregistered(format!("id {id}")))?;
        self.put(key, value)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&HodgeKey, Option<&Rat>)> {
        self.entries.iter().map(|(k, (_, v))| (k, v.as_ref()))
    }

    pub fn known_len(&self) -> usize {
        self.entries.values().filter(|(_, v)| v.is_some()).count()
    }

    /// All registered-but-unvalued ids at the given level.
    pub fn open_ids_at_level(&self, level: u32) -> Vec<UnknownId> {
        self.entries
            .iter()
            .filter(|(k, (_, v))| v.is_none() && k.n2 <= 2 && k.level() == level)
            .map(|(_, (id, _))| *id)
            .collect()
    }

    /// A copy in which the given keys are registered but carry no value
    /// (turned back into unknowns); id numbering is rebuilt.
    pub fn with_unknowns(&self, stripped: &std::collections::BTreeSet<HodgeKey>) -> HodgeStore {
        let mut out = HodgeStore::new();
        for (key, val) in self.iter() {
            match val {
                Some(v) if !stripped.contains(key) => {
                    out.put(*key, v.clone()).expect("fresh store");
                }
                _ => {
                    out.register(*key);
                }
            }
        }
        for key in stripped {
            out.register(*key);
        }
        out
    }

    /// Exact equality of the known contents, ignoring id numbering.
    pub fn same_values(&self, other: &HodgeStore) -> bool {
        let a: Vec<_> = self
            .iter()
            .filter_map(|(k, v)| v.map(|r| (*k, r.clone())))
            .collect();
        let b: Vec<_> = other
            .iter()
            .filter_map(|(k, v)| v.map(|r| (*k, r.clone())))
            .collect();
        a == b
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::rat;

    #[test]
    fn canonicalize_examples() {
        // (4,1,0,0): psi power -1
        assert_eq!(canonicalize(4, 1, 0, 0, Flavor::None), Canon::Zero);
        // (6,0,2,0): drop 2 exceeds rank 1
        assert_eq!(canonicalize(6, 0, 2, 0, Flavor::Omega), Canon::Zero);
        // (6,0,1,1) keeps its flavor (psi power 2)
        let kw = canonicalize(6, 0, 1, 1, Flavor::Omega);
        assert!(matches!(kw, Canon::Key(k) if k.flavor == Flavor::Omega && k.psi_power() == 2));
        // psi_omega-bar on a space without omega-bar points is the zero class
        assert_eq!(canonicalize(6, 0, 1, 1, Flavor::OmegaBar), Canon::Zero);
        // (4,1,1,0) with psi power 0 forgets the flavor and sorts drops
        let k = canonicalize(4, 1, 1, 0, Flavor::Omega);
        let k2 = canonicalize(4, 1, 0, 1, Flavor::OmegaBar);
        assert_eq!(k, k2);
        assert!(matches!(k, Canon::Key(h) if h.flavor == Flavor::None && (h.i, h.j) == (0, 1)));
        // monodromy violation
        assert_eq!(canonicalize(1, 0, 0, 0, Flavor::None), Canon::Zero);
        // negative dimension
        assert_eq!(canonicalize(1, 1, 0, 0, Flavor::None), Canon::Zero);
    }

    #[test]
    fn canonicalize_idempotent() {
        for n1 in 0..10 {
            for n2 in 0..3 {
                for i in 0..4 {
                    for j in 0..4 {
                        for f in [Flavor::Omega, Flavor::OmegaBar] {
                            if let Canon::Key(k) = canonicalize(n1, n2, i, j, f) {
                                assert_eq!(
                                    canonicalize(k.n1, k.n2, k.i, k.j, k.flavor),
                                    Canon::Key(k)
                                );
                            }
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn seeds_and_conflicts() {
        let mut store = HodgeStore::new();
        store.seed_three_point().unwrap();
        assert_eq!(
            store.get_raw(3, 0, 0, 0, Flavor::None),
            Some(HodgeVal::Known(rat(1, 3)))
        );
        assert_eq!(
            store.get_raw(0, 3, 0, 0, Flavor::None),
            Some(HodgeVal::Known(rat(1, 3)))
        );
        // zero-normalized keys never hit the store
        assert_eq!(
            store.get_raw(4, 1, 0, 0, Flavor::None),
            Some(HodgeVal::Zero)
        );
        let k = match canonicalize(3, 0, 0, 0, Flavor::None) {
            Canon::Key(k) => k,
            _ => unreachable!(),
        };
        assert!(store.put(k, rat(1, 3)).is_ok());
        assert!(matches!(
            store.put(k, rat(1, 4)),
            Err(StoreError::ConflictingValue { .. })
        ));
    }

    #[test]
    fn levels() {
        let k = |n1, n2, i, j, f| match canonicalize(n1, n2, i, j, f) {
            Canon::Key(k) => k,
            _ => panic!(),
        };
        assert_eq!(k(6, 0, 0, 0, Flavor::None).level(), 1);
        assert_eq!(k(4, 1, 0, 1, Flavor::None).level(), 1);
        assert_eq!(k(2, 2, 1, 1, Flavor::None).level(), 1);
        assert_eq!(k(24, 0, 0, 0, Flavor::None).level(), 7);
    }
}
