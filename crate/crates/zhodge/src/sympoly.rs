//! Symmetric polynomials in the three torus weights t1, t2, t3.
//!
//! A value is a sum of monomial-symmetric classes: the class of a sorted
//! exponent triple (a >= b >= c) stands for the sum of the *distinct*
//! permutations of t1^a t2^b t3^c, times its coefficient. Equality is map
//! equality, so symmetry is guaranteed by construction. Exponents may be
//! negative only for the stored Laurent seed 1/(3 t1 t2 t3); arithmetic stays
//! polynomial.

use crate::rat::{rat_to_string, Rat};
use num_traits::Zero;
use std::collections::BTreeMap;
use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct SymPoly3 {
    terms: BTreeMap<[i64; 3], Rat>,
}

fn sort_desc(mut e: [i64; 3]) -> [i64; 3] {
    e.sort_unstable_by(|a, b| b.cmp(a));
    e
}

/// Distinct permutations of a sorted triple.
fn distinct_perms(e: [i64; 3]) -> Vec<[i64; 3]> {
    let mut perms = vec![
        [e[0], e[1], e[2]],
        [e[0], e[2], e[1]],
        [e[1], e[0], e[2]],
        [e[1], e[2], e[0]],
        [e[2], e[0], e[1]],
        [e[2], e[1], e[0]],
    ];
    perms.sort_unstable();
    perms.dedup();
    perms
}

impl SymPoly3 {
    pub fn zero() -> Self {
        SymPoly3::default()
    }

    pub fn constant(c: Rat) -> Self {
        let mut p = SymPoly3::zero();
        p.add_class([0, 0, 0], c);
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Adds `coeff` times the monomial-symmetric class of `expts`.
    pub fn add_class(&mut self, expts: [i64; 3], coeff: Rat) {
        if coeff.is_zero() {
            return;
        }
        let key = sort_desc(expts);
        let entry = self.terms.entry(key).or_insert_with(Rat::zero);
        *entry += coeff;
        if entry.is_zero() {
            self.terms.remove(&key);
        }
    }

    pub fn classes(&self) -> impl Iterator<Item = (&[i64; 3], &Rat)> {
        self.terms.iter()
    }

    pub fn add(&self, other: &SymPoly3) -> SymPoly3 {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_class(*e, c.clone());
        }
        out
    }

    pub fn neg(&self) -> SymPoly3 {
        let mut out = SymPoly3::zero();
        for (e, c) in &self.terms {
            out.terms.insert(*e, -c.clone());
        }
        out
    }

    pub fn sub(&self, other: &SymPoly3) -> SymPoly3 {
        self.add(&other.neg())
    }

    pub fn scale(&self, r: &Rat) -> SymPoly3 {
        if r.is_zero() {
            return SymPoly3::zero();
        }
        let mut out = SymPoly3::zero();
        for (e, c) in &self.terms {
            out.terms.insert(*e, c * r);
        }
        out
    }

    /// Product via full monomial expansion; the result is re-symmetrized, and
    /// closure is checked (every expanded coefficient must reassemble into
    /// whole classes).
    pub fn mul(&self, other: &SymPoly3) -> SymPoly3 {
        let mut full: BTreeMap<[i64; 3], Rat> = BTreeMap::new();
        for (e1, c1) in &self.terms {
            for p1 in distinct_perms(*e1) {
                for (e2, c2) in &other.terms {
                    for p2 in distinct_perms(*e2) {
                        let key = [p1[0] + p2[0], p1[1] + p2[1], p1[2] + p2[2]];
                        let entry = full.entry(key).or_insert_with(Rat::zero);
                        *entry += c1 * c2;
                        if entry.is_zero() {
                            full.remove(&key);
                        }
                    }
                }
            }
        }
        let mut out = SymPoly3::zero();
        while let Some((&e, _)) = full.iter().next() {
            let sorted = sort_desc(e);
            let c = full
                .get(&sorted)
                .cloned()
                .expect("symmetric product has a sorted representative");
            for p in distinct_perms(sorted) {
                let got = full.remove(&p).unwrap_or_else(Rat::zero);
                assert_eq!(got, c, "product is not symmetric");
            }
            out.terms.insert(sorted, c);
        }
        out
    }

    /// Exact evaluation at (t1, t2, t3).
    pub fn specialize(&self, t: &[Rat; 3]) -> Rat {
        let mut acc = Rat::zero();
        for (e, c) in &self.terms {
            for p in distinct_perms(*e) {
                let mut term = c.clone();
                for (idx, &pw) in p.iter().enumerate() {
                    term *= pow_i(&t[idx], pw);
                }
                acc += term;
            }
        }
        acc
    }

    /// Total degree if homogeneous, None otherwise (or for the zero poly).
    pub fn homogeneous_degree(&self) -> Option<i64> {
        let mut deg = None;
        for e in self.terms.keys() {
            let d = e[0] + e[1] + e[2];
            match deg {
                None => deg = Some(d),
                Some(prev) if prev == d => {}
                _ => return None,
            }
        }
        deg
    }

    pub fn has_negative_exponents(&self) -> bool {
        self.terms.keys().any(|e| e.iter().any(|&x| x < 0))
    }
}

fn pow_i(b: &Rat, e: i64) -> Rat {
    assert!(e >= 0 || !b.is_zero());
    b.pow(e as i32)
}

impl fmt::Display for SymPoly3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "{}*m[{},{},{}]", rat_to_string(c), e[0], e[1], e[2])?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::{rat, rat_int};

    #[test]
    fn e1_squared() {
        // (t1+t2+t3)^2 = m[2,0,0] + 2 m[1,1,0]
        let mut e1 = SymPoly3::zero();
        e1.add_class([1, 0, 0], rat_int(1));
        let sq = e1.mul(&e1);
        let mut want = SymPoly3::zero();
        want.add_class([2, 0, 0], rat_int(1));
        want.add_class([1, 1, 0], rat_int(2));
        assert_eq!(sq, want);
    }

    #[test]
    fn specialize_at_ones() {
        // t1 t2 t3 / 3 at (1,1,1) -> 1/3
        let mut p = SymPoly3::zero();
        p.add_class([1, 1, 1], rat(1, 3));
        let ones = [rat_int(1), rat_int(1), rat_int(1)];
        assert_eq!(p.specialize(&ones), rat(1, 3));
        // (t1+t2+t3)/27 at ones -> 1/9
        let mut q = SymPoly3::zero();
        q.add_class([1, 0, 0], rat(1, 27));
        assert_eq!(q.specialize(&ones), rat(1, 9));
        // degree-0 polynomial unchanged
        let c = SymPoly3::constant(rat(5, 7));
        assert_eq!(c.specialize(&ones), rat(5, 7));
    }

    #[test]
    fn homogeneity() {
        let mut p = SymPoly3::zero();
        p.add_class([2, 1, 0], rat_int(4));
        p.add_class([1, 1, 1], rat_int(-1));
        assert_eq!(p.homogeneous_degree(), Some(3));
        p.add_class([1, 0, 0], rat_int(1));
        assert_eq!(p.homogeneous_degree(), None);
    }
}
