//! Affine-linear expressions in opaque unknown ids, and the exact linear solver.
//!
//! An `AffineExpr` is `constant + sum(coeff_i * x_i)` where each coefficient is
//! an `MPoly` and the ids come from the Hodge store. Any operation that would
//! multiply two unknown-bearing expressions is an error, never a silent
//! degree-2 term.

use crate::mpoly::MPoly;
use crate::rat::Rat;
use num_traits::Zero;
use std::collections::{BTreeMap, BTreeSet};
use thiserror::Error;

pub type UnknownId = u32;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ArithError {
    #[error("nonlinear product: both factors carry unknowns (ids {0} and {1})")]
    NonlinearProduct(UnknownId, UnknownId),
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SolveError {
    #[error("rank-deficient system: unknown id {0} is not determined")]
    RankDeficient(UnknownId),
    #[error("inconsistent system: nonzero residual {residual} in equation {eq_index}")]
    Inconsistent { eq_index: usize, residual: String },
    #[error("non-constant coefficient on unknown id {0}; split by monomial before solving")]
    NonConstantCoeff(UnknownId),
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct AffineExpr {
    pub constant: MPoly,
    pub terms: BTreeMap<UnknownId, MPoly>,
}

impl AffineExpr {
    pub fn zero() -> Self {
        AffineExpr::default()
    }

    pub fn constant(p: MPoly) -> Self {
        AffineExpr {
            constant: p,
            terms: BTreeMap::new(),
        }
    }

    pub fn from_rat(r: Rat) -> Self {
        AffineExpr::constant(MPoly::constant(r))
    }

    pub fn unknown(id: UnknownId) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(id, MPoly::one());
        AffineExpr {
            constant: MPoly::zero(),
            terms,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.constant.is_zero() && self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn has_unknowns(&self) -> bool {
        !self.terms.is_empty()
    }

    pub fn unknown_ids(&self) -> impl Iterator<Item = UnknownId> + '_ {
        self.terms.keys().copied()
    }

    fn insert_term(&mut self, id: UnknownId, c: MPoly) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&id) {
            Some(old) => {
                *old = old.add(&c);
                if old.is_zero() {
                    self.terms.remove(&id);
                }
            }
            None => {
                self.terms.insert(id, c);
            }
        }
    }

    pub fn add(&self, other: &AffineExpr) -> AffineExpr {
        let mut out = self.clone();
        out.constant = out.constant.add(&other.constant);
        for (id, c) in &other.terms {
            out.insert_term(*id, c.clone());
        }
        out
    }

    pub fn neg(&self) -> AffineExpr {
        AffineExpr {
            constant: self.constant.neg(),
            terms: self.terms.iter().map(|(id, c)| (*id, c.neg())).collect(),
        }
    }

    pub fn sub(&self, other: &AffineExpr) -> AffineExpr {
        self.add(&other.neg())
    }

    pub fn scale_poly(&self, p: &MPoly) -> AffineExpr {
        if p.is_zero() {
            return AffineExpr::zero();
        }
        let mut out = AffineExpr::zero();
        out.constant = self.constant.mul(p);
        for (id, c) in &self.terms {
            out.insert_term(*id, c.mul(p));
        }
        out
    }

    pub fn scale(&self, r: &Rat) -> AffineExpr {
        self.scale_poly(&MPoly::constant(r.clone()))
    }

    /// Product with the linearity guard.
    pub fn mul(&self, other: &AffineExpr) -> Result<AffineExpr, ArithError> {
        if self.has_unknowns() && other.has_unknowns() {
            let a = *self.terms.keys().next().unwrap();
            let b = *other.terms.keys().next().unwrap();
            return Err(ArithError::NonlinearProduct(a, b));
        }
        if other.has_unknowns() {
            return other.mul(self);
        }
        Ok(self.scale_poly(&other.constant))
    }

    /// Extracts the coefficient of `var^power` across constant and terms.
    pub fn coeff_of(&self, var: crate::mpoly::Var, power: u16) -> AffineExpr {
        let mut out = AffineExpr::zero();
        out.constant = self.constant.coeff_of(var, power);
        for (id, c) in &self.terms {
            out.insert_term(*id, c.coeff_of(var, power));
        }
        out
    }

    pub fn degree_in(&self, var: crate::mpoly::Var) -> u16 {
        let mut d = self.constant.degree_in(var);
        for c in self.terms.values() {
            d = d.max(c.degree_in(var));
        }
        d
    }

    /// Substitutes known values for unknowns; ids absent from `vals` stay.
    pub fn substitute_values(&self, vals: &BTreeMap<UnknownId, MPoly>) -> AffineExpr {
        let mut out = AffineExpr::constant(self.constant.clone());
        for (id, c) in &self.terms {
            match vals.get(id) {
                Some(v) => out.constant = out.constant.add(&c.mul(v)),
                None => out.insert_term(*id, c.clone()),
            }
        }
        out
    }
}

/// Exact Gaussian elimination over the rationals.
///
/// Each equation is `expr == 0`. Unknown coefficients must be constants (the
/// relation pipeline splits by u/v/al monomial before solving); the constant
/// part may be any polynomial. Returns the unique assignment on `unknowns`,
/// checking surplus equations for consistency.
pub fn affine_solve(
    eqs: &[AffineExpr],
    unknowns: &BTreeSet<UnknownId>,
) -> Result<BTreeMap<UnknownId, MPoly>, SolveError> {
    // Rows: coefficient map (Rat per unknown) plus polynomial RHS (-constant).
    struct Row {
        coeffs: BTreeMap<UnknownId, Rat>,
        rhs: MPoly,
        origin: usize,
    }

    let mut rows: Vec<Row> = Vec::with_capacity(eqs.len());
    for (idx, eq) in eqs.iter().enumerate() {
        let mut coeffs = BTreeMap::new();
        for (id, c) in &eq.terms {
            if !unknowns.contains(id) {
                return Err(SolveError::RankDeficient(*id));
            }
            if !c.is_constant() {
                return Err(SolveError::NonConstantCoeff(*id));
            }
            let r = c.constant_term();
            if !r.is_zero() {
                coeffs.insert(*id, r);
            }
        }
        rows.push(Row {
            coeffs,
            rhs: eq.constant.neg(),
            origin: idx,
        });
    }

    let order: Vec<UnknownId> = unknowns.iter().copied().collect();
    let mut solution: BTreeMap<UnknownId, MPoly> = BTreeMap::new();
    let mut eliminated: Vec<(UnknownId, BTreeMap<UnknownId, Rat>, MPoly)> = Vec::new();

    let mut active: Vec<Row> = rows;
    for &x in &order {
        // Pick a pivot row containing x.
        let pos = active.iter().position(|r| r.coeffs.contains_key(&x));
        let Some(pos) = pos else {
            return Err(SolveError::RankDeficient(x));
        };
        let pivot = active.swap_remove(pos);
        let pc = pivot.coeffs[&x].clone();
        // Normalize: x = (rhs - sum other coeffs * ids) / pc
        let mut rest: BTreeMap<UnknownId, Rat> = pivot.coeffs.clone();
        rest.remove(&x);
        for v in rest.values_mut() {
            *v = &*v / &pc;
        }
        let rhs = pivot.rhs.scale(&(Rat::from_integer(1.into()) / &pc));
        // Eliminate x from remaining rows.
        for row in active.iter_mut() {
            if let Some(cx) = row.coeffs.remove(&x) {
                for (id, c) in &rest {
                    let delta = -(&cx * c);
                    let entry = row.coeffs.entry(*id).or_insert_with(Rat::zero);
                    *entry += delta;
                    if entry.is_zero() {
                        row.coeffs.remove(id);
                    }
                }
                row.rhs = row.rhs.sub(&rhs.scale(&cx));
            }
        }
        eliminated.push((x, rest, rhs));
    }

    // Surplus rows must now be 0 == rhs with empty coefficient maps.
    for row in &active {
        if !row.coeffs.is_empty() || !row.rhs.is_zero() {
            if row.coeffs.is_empty() {
                return Err(SolveError::Inconsistent {
                    eq_index: row.origin,
                    residual: format!("{}", row.rhs.neg()),
                });
            }
            // Leftover coefficients on unknowns mean some unknown escaped the
            // elimination order, which cannot happen: every id was processed.
            unreachable!("row with live coefficients after elimination");
        }
    }

    // Back-substitution in reverse elimination order.
    for (x, rest, rhs) in eliminated.into_iter().rev() {
        let mut value = rhs;
        for (id, c) in &rest {
            let v = solution
                .get(id)
                .expect("back-substitution order broken")
                .clone();
            value = value.sub(&v.scale(c));
        }
        solution.insert(x, value);
    }

    Ok(solution)
}

/// Residual of `expr` under an assignment; must be zero for solved systems.
pub fn residual(expr: &AffineExpr, vals: &BTreeMap<UnknownId, MPoly>) -> MPoly {
    let out = expr.substitute_values(vals);
    assert!(
        out.is_constant(),
        "residual still contains unknowns: {:?}",
        out.terms.keys().collect::<Vec<_>>()
    );
    out.constant
}
