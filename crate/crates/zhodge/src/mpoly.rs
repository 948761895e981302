//! Sparse multivariate polynomials over the fixed alphabet {t1, t2, t3, u, v, al}.
//!
//! The alphabet is closed: substitution maps variables to polynomials in the
//! same six variables and never introduces new ones. No zero coefficient is
//! ever stored.

use crate::rat::{rat_one, Rat};
use num_traits::Zero;
use std::collections::BTreeMap;
use std::fmt;

pub const NVARS: usize = 6;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Var {
    T1 = 0,
    T2 = 1,
    T3 = 2,
    U = 3,
    V = 4,
    Al = 5,
}

impl Var {
    pub fn name(self) -> &'static str {
        ["t1", "t2", "t3", "u", "v", "al"][self as usize]
    }
}

pub type Expt = [u16; NVARS];

/// Sparse polynomial: exponent vector -> nonzero coefficient.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct MPoly {
    terms: BTreeMap<Expt, Rat>,
}

impl MPoly {
    pub fn zero() -> Self {
        MPoly::default()
    }

    pub fn constant(c: Rat) -> Self {
        let mut p = MPoly::zero();
        if !c.is_zero() {
            p.terms.insert([0; NVARS], c);
        }
        p
    }

    pub fn one() -> Self {
        MPoly::constant(rat_one())
    }

    pub fn var(v: Var) -> Self {
        let mut e = [0u16; NVARS];
        e[v as usize] = 1;
        let mut p = MPoly::zero();
        p.terms.insert(e, rat_one());
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// The constant term.
    pub fn constant_term(&self) -> Rat {
        self.terms.get(&[0; NVARS]).cloned().unwrap_or_else(Rat::zero)
    }

    /// True iff the polynomial is a constant (possibly zero).
    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|e| e.iter().all(|&x| x == 0))
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Expt, &Rat)> {
        self.terms.iter()
    }

    /// True iff only the listed variables occur.
    pub fn uses_only(&self, allowed: &[Var]) -> bool {
        let mask: Vec<usize> = allowed.iter().map(|v| *v as usize).collect();
        self.terms
            .keys()
            .all(|e| e.iter().enumerate().all(|(i, &x)| x == 0 || mask.contains(&i)))
    }

    pub fn add_term(&mut self, e: Expt, c: Rat) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&e) {
            Some(old) => {
                *old += c;
                if old.is_zero() {
                    self.terms.remove(&e);
                }
            }
            None => {
                self.terms.insert(e, c);
            }
        }
    }

    pub fn add(&self, other: &MPoly) -> MPoly {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(*e, c.clone());
        }
        out
    }

    pub fn neg(&self) -> MPoly {
        let mut out = MPoly::zero();
        for (e, c) in &self.terms {
            out.terms.insert(*e, -c.clone());
        }
        out
    }

    pub fn sub(&self, other: &MPoly) -> MPoly {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &Rat) -> MPoly {
        if c.is_zero() {
            return MPoly::zero();
        }
        let mut out = MPoly::zero();
        for (e, coeff) in &self.terms {
            out.terms.insert(*e, coeff * c);
        }
        out
    }

    pub fn mul(&self, other: &MPoly) -> MPoly {
        let mut out = MPoly::zero();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                let mut e = *e1;
                for i in 0..NVARS {
                    e[i] += e2[i];
                }
                out.add_term(e, c1 * c2);
            }
        }
        out
    }

    pub fn pow(&self, n: u32) -> MPoly {
        let mut out = MPoly::one();
        for _ in 0..n {
            out = out.mul(self);
        }
        out
    }

    /// Exact simultaneous substitution. Variables absent from `bindings` are
    /// left alone.
    pub fn substitute(&self, bindings: &[(Var, MPoly)]) -> MPoly {
        let mut out = MPoly::zero();
        for (e, c) in &self.terms {
            let mut term = MPoly::constant(c.clone());
            for i in 0..NVARS {
                if e[i] == 0 {
                    continue;
                }
                let image = bindings.iter().find(|(v, _)| *v as usize == i);
                let factor = match image {
                    Some((_, p)) => p.pow(e[i] as u32),
                    None => {
                        let mut m = [0u16; NVARS];
                        m[i] = e[i];
                        let mut p = MPoly::zero();
                        p.terms.insert(m, rat_one());
                        p
                    }
                };
                term = term.mul(&factor);
            }
            out = out.add(&term);
        }
        out
    }

    /// Coefficient of `var^power`, as a polynomial in the remaining variables.
    pub fn coeff_of(&self, var: Var, power: u16) -> MPoly {
        let i = var as usize;
        let mut out = MPoly::zero();
        for (e, c) in &self.terms {
            if e[i] == power {
                let mut e2 = *e;
                e2[i] = 0;
                out.add_term(e2, c.clone());
            }
        }
        out
    }

    pub fn degree_in(&self, var: Var) -> u16 {
        let i = var as usize;
        self.terms.keys().map(|e| e[i]).max().unwrap_or(0)
    }

    /// Evaluates at a full point, one value per variable.
    pub fn eval(&self, vals: &[Rat; NVARS]) -> Rat {
        let mut acc = Rat::zero();
        for (e, c) in &self.terms {
            let mut term = c.clone();
            for i in 0..NVARS {
                for _ in 0..e[i] {
                    term *= vals[i].clone();
                }
            }
            acc += term;
        }
        acc
    }
}

impl fmt::Display for MPoly {
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
            write!(f, "{}", c)?;
            for i in 0..NVARS {
                if e[i] > 0 {
                    let name = ["t1", "t2", "t3", "u", "v", "al"][i];
                    if e[i] == 1 {
                        write!(f, "*{}", name)?;
                    } else {
                        write!(f, "*{}^{}", name, e[i])?;
                    }
                }
            }
        }
        Ok(())
    }
}
