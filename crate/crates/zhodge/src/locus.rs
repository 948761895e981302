//! Table-driven fixed-locus evaluator.
//!
//! The templates transcribe the fixed-locus contribution tables of the five
//! auxiliary localization integrals (two on the trivial gerbe, two on the
//! nontrivial gerbe, and the psi-removal worked example). Each row is
//! `count * 3^(N-1) * edge * V_0 * V_inf`, where a vertex factor is either a
//! constant (degenerate vertex) or
//! `sign * (product of lambda / Chern-polynomial factors) / (hbar (hbar -+ psi))`
//! over an admissible-cover space. Chern-polynomial arguments are torus
//! weights in units of hbar: Lam_r(w) = sum_s lam_s (w hbar)^{r-s}.
//!
//! Expansion keeps, per cover factor, exactly the terms of cohomological
//! degree equal to that factor's dimension; every surviving term of a template
//! must then carry one and the same hbar degree (HbarDegreeMismatch otherwise),
//! after which hbar is set to 1.

use crate::affine::AffineExpr;
use crate::hodge::{Flavor, HodgeVal};
use crate::lfun::KeySource;
use crate::mpoly::{MPoly, Var};
use crate::rat::{binomial, rat_from_str, rat_int, Rat};
use num_traits::Zero;
use serde::Deserialize;
use std::collections::BTreeMap;
use thiserror::Error;

pub const TEMPLATES_JSON: &str = include_str!("../data/locus_templates.json");

#[derive(Debug, Error)]
pub enum LocusError {
    #[error("template data: {0}")]
    Data(String),
    #[error("hbar degree mismatch in template {template} row {row}: {a} vs {b}")]
    HbarDegreeMismatch {
        template: String,
        row: String,
        a: i64,
        b: i64,
    },
    #[error("template {0} produced a nonlinear product")]
    Nonlinear(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RelationKind {
    /// The auxiliary integral vanishes for dimension reasons: total sum = 0.
    SumZero,
    /// The integral is linearization-independent: every alpha^d coefficient
    /// with d >= 1 vanishes.
    AlphaCoeffs,
}

/// Linear form a*k + b*k1 + c.
#[derive(Debug, Clone, Copy, Deserialize)]
pub struct Lin(pub i64, pub i64, pub i64);

impl Lin {
    fn eval(&self, k: i64, k1: i64) -> i64 {
        self.0 * k + self.1 * k1 + self.2
    }
}

#[derive(Debug, Clone, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Count {
    One,
    Linear(Lin),
    Binom { top: Lin, bot: Lin },
}

#[derive(Debug, Clone, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Factor {
    /// lambda_top.
    Top,
    /// lambda_{top-d} with a fixed drop.
    Drop(u32),
    /// Chern polynomial with argument c0 + c_alpha * alpha (in hbar units).
    Lam { c0: String, c_alpha: String },
}

#[derive(Debug, Clone, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Vertex {
    Point {
        value: String,
        hbar: i64,
    },
    Cover {
        n1: Lin,
        n2: u32,
        sign_rank: bool,
        factors: Vec<Factor>,
        psi: String,
        denom_neg: bool,
    },
}

fn default_mult() -> u32 {
    1
}

#[derive(Debug, Clone, Deserialize)]
pub struct Row {
    pub name: String,
    /// Inclusive k1 range; rows without a range are evaluated once at k1 = 0.
    pub k1_range: Option<(Lin, Lin)>,
    pub count: Count,
    /// Distribution multiplicity for fixed-drop integrands: the number of
    /// ways the dropped integrand factors split across the node to realize
    /// this row's per-side classes.
    #[serde(default = "default_mult")]
    pub mult: u32,
    pub nodes: u32,
    pub edge_c0: String,
    pub edge_c_alpha: String,
    pub edge_hbar: i64,
    pub v0: Vertex,
    pub vinf: Vertex,
}

#[derive(Debug, Clone, Deserialize)]
pub struct LocusTemplate {
    pub id: String,
    pub relation: RelationKind,
    pub rows: Vec<Row>,
}

#[derive(Debug, Clone, Deserialize)]
pub struct TemplateFile {
    pub version: u32,
    pub templates: Vec<LocusTemplate>,
}

pub fn load_templates() -> Result<Vec<LocusTemplate>, LocusError> {
    let file: TemplateFile =
        serde_json::from_str(TEMPLATES_JSON).map_err(|e| LocusError::Data(e.to_string()))?;
    if file.version != 1 {
        return Err(LocusError::Data(format!(
            "unsupported template version {}",
            file.version
        )));
    }
    Ok(file.templates)
}

pub fn template(id: &str) -> LocusTemplate {
    load_templates()
        .expect("embedded templates parse")
        .into_iter()
        .find(|t| t.id == id)
        .unwrap_or_else(|| panic!("no template {id}"))
}

fn parse_rat(s: &str) -> Result<Rat, LocusError> {
    rat_from_str(s).ok_or_else(|| LocusError::Data(format!("bad rational {s:?}")))
}

/// alpha-polynomial c0 + c_alpha * alpha as an MPoly.
fn alpha_poly(c0: &str, c_alpha: &str) -> Result<MPoly, LocusError> {
    let mut p = MPoly::constant(parse_rat(c0)?);
    let ca = parse_rat(c_alpha)?;
    if !ca.is_zero() {
        p = p.add(&MPoly::var(Var::Al).scale(&ca));
    }
    Ok(p)
}

/// A vertex factor: affine expression (alpha-polynomial coefficients) with a
/// single hbar degree.
struct VertexValue {
    expr: AffineExpr,
    hbar: i64,
}

fn eval_vertex(
    src: &mut dyn KeySource,
    v: &Vertex,
    k: i64,
    k1: i64,
    is_v0: bool,
    tpl: &str,
    row: &str,
) -> Result<Option<VertexValue>, LocusError> {
    match v {
        Vertex::Point { value, hbar } => Ok(Some(VertexValue {
            expr: AffineExpr::from_rat(parse_rat(value)?),
            hbar: *hbar,
        })),
        Vertex::Cover {
            n1,
            n2,
            sign_rank,
            factors,
            psi,
            denom_neg,
        } => {
            let n1v = n1.eval(k, k1);
            if n1v < 0 {
                return Err(LocusError::Data(format!("{tpl}/{row}: n1 = {n1v}")));
            }
            let (n1v, n2v) = (n1v as u32, *n2);
            // The degenerate single-point vertex: A(1,1) contributes +-1/3
            // with one inverse hbar (the table note's convention, which is
            // the unique hbar-homogeneous reading).
            if (n1v, n2v) == (1, 1) {
                let val = if is_v0 { rat_int(1) / rat_int(3) } else { -rat_int(1) / rat_int(3) };
                return Ok(Some(VertexValue {
                    expr: AffineExpr::from_rat(val),
                    hbar: -1,
                }));
            }
            if !crate::geometry::space_nonempty(n1v, n2v) {
                return Err(LocusError::Data(format!(
                    "{tpl}/{row}: empty space A({n1v},{n2v})"
                )));
            }
            let dim = crate::geometry::space_dim(n1v, n2v).unwrap();
            if dim < 0 {
                return Ok(None);
            }
            let r = crate::geometry::rank_e_omega(n1v, n2v).unwrap() as u32;
            let flavor = Flavor::from_tag(psi)
                .filter(|f| *f != Flavor::None)
                .ok_or_else(|| LocusError::Data(format!("{tpl}/{row}: bad psi {psi:?}")))?;
            // Numerator factors: one Top anchor plus two drop choices.
            let mut anchored: Vec<Vec<(u32, MPoly)>> = Vec::new();
            let mut top_seen = false;
            for f in factors {
                match f {
                    Factor::Top => {
                        if !top_seen {
                            top_seen = true;
                        } else {
                            anchored.push(vec![(0, MPoly::one())]);
                        }
                    }
                    Factor::Drop(d) => anchored.push(vec![(*d, MPoly::one())]),
                    Factor::Lam { c0, c_alpha } => {
                        let arg = alpha_poly(c0, c_alpha)?;
                        let mut choices = Vec::new();
                        for d in 0..=r {
                            choices.push((d, arg.pow(d)));
                        }
                        anchored.push(choices);
                    }
                }
            }
            if !top_seen || anchored.len() != 2 {
                return Err(LocusError::Data(format!(
                    "{tpl}/{row}: vertex numerator must have a lambda-top anchor and two factors"
                )));
            }
            let mut acc = AffineExpr::zero();
            let mut hbar: Option<i64> = None;
            for (d1, c1) in &anchored[0] {
                for (d2, c2) in &anchored[1] {
                    let a = *d1 as i64 + *d2 as i64 - n2v as i64;
                    if a < 0 {
                        continue;
                    }
                    // lambda-psi degree = 3r - d1 - d2 + a = dim by the degree
                    // identity, so every psi power lands exactly once.
                    let val = src.lookup(n1v, n2v, *d1, *d2, flavor);
                    if matches!(val, HodgeVal::Zero) {
                        continue;
                    }
                    let mut coeff = c1.mul(c2);
                    if *sign_rank && r % 2 == 1 {
                        coeff = coeff.neg();
                    }
                    if *denom_neg && a % 2 == 1 {
                        coeff = coeff.neg();
                    }
                    let term = match val {
                        HodgeVal::Known(rv) => AffineExpr::constant(coeff.scale(&rv)),
                        HodgeVal::Unknown(id) => AffineExpr {
                            constant: MPoly::zero(),
                            terms: [(id, coeff)].into_iter().collect(),
                        },
                        HodgeVal::Zero => unreachable!(),
                    };
                    // hbar: + (d1 + d2) from the Lam arguments' weights,
                    // - a - 2 from the denominator expansion. Drop factors
                    // carry no weight power, so their terms differ; track and
                    // enforce uniformity.
                    let lam_pow = lam_weight_power(&anchored[0], *d1)
                        + lam_weight_power(&anchored[1], *d2);
                    let h = lam_pow - a - 2;
                    match hbar {
                        None => hbar = Some(h),
                        Some(prev) if prev == h => {}
                        Some(prev) => {
                            return Err(LocusError::HbarDegreeMismatch {
                                template: tpl.to_string(),
                                row: row.to_string(),
                                a: prev,
                                b: h,
                            })
                        }
                    }
                    acc = acc.add(&term);
                }
            }
            match hbar {
                None => Ok(None),
                Some(h) => Ok(Some(VertexValue { expr: acc, hbar: h })),
            }
        }
    }
}

// A Lam choice list has more than one entry; its terms carry weight^d. Fixed
// factors (Top / Drop) have exactly one entry and no weight power.
fn lam_weight_power(choices: &[(u32, MPoly)], d: u32) -> i64 {
    if choices.len() > 1 {
        d as i64
    } else {
        0
    }
}

/// Evaluates the full fixed-locus sum of a template at level k: a polynomial
/// in alpha over Hodge unknowns, hbar already normalized away after the
/// uniformity check.
pub fn evaluate_fixed_locus_sum(
    src: &mut dyn KeySource,
    tpl: &LocusTemplate,
    k: u32,
) -> Result<AffineExpr, LocusError> {
    let k = k as i64;
    let mut by_hbar: BTreeMap<i64, AffineExpr> = BTreeMap::new();
    for row in &tpl.rows {
        let (lo, hi) = match &row.k1_range {
            None => (0, 0),
            Some((lo, hi)) => (lo.eval(k, 0), hi.eval(k, 0)),
        };
        for k1 in lo..=hi {
            let count = match &row.count {
                Count::One => rat_int(1),
                Count::Linear(l) => rat_int(l.eval(k, k1)),
                Count::Binom { top, bot } => {
                    let t = top.eval(k, k1);
                    let b = bot.eval(k, k1);
                    if t < 0 || b < 0 {
                        Rat::zero()
                    } else {
                        binomial(t as u64, b as u64)
                    }
                }
            };
            if count.is_zero() {
                continue;
            }
            let count = count * rat_int(row.mult as i64);
            let gluing = rat_int(3).pow((row.nodes - 1) as i32);
            let edge = alpha_poly(&row.edge_c0, &row.edge_c_alpha)?;
            let Some(v0) = eval_vertex(src, &row.v0, k, k1, true, &tpl.id, &row.name)? else {
                continue;
            };
            let Some(vinf) = eval_vertex(src, &row.vinf, k, k1, false, &tpl.id, &row.name)?
            else {
                continue;
            };
            let prod = v0
                .expr
                .mul(&vinf.expr)
                .map_err(|_| LocusError::Nonlinear(tpl.id.clone()))?;
            let scaled = prod.scale_poly(&edge.scale(&(count * gluing)));
            if scaled.is_zero() {
                continue;
            }
            let h = row.edge_hbar + v0.hbar + vinf.hbar;
            let slot = by_hbar.entry(h).or_insert_with(AffineExpr::zero);
            *slot = slot.add(&scaled);
        }
    }
    by_hbar.retain(|_, e| !e.is_zero());
    if by_hbar.len() > 1 {
        let mut keys = by_hbar.keys();
        let a = *keys.next().unwrap();
        let b = *keys.next().unwrap();
        return Err(LocusError::HbarDegreeMismatch {
            template: tpl.id.clone(),
            row: "<total>".into(),
            a,
            b,
        });
    }
    Ok(by_hbar.into_values().next().unwrap_or_else(AffineExpr::zero))
}

/// The relations a template yields at level k: the whole sum for
/// dimension-vanishing integrals, the alpha^d (d >= 1) coefficients for
/// linearization-independent ones.
pub fn template_relations(
    src: &mut dyn KeySource,
    tpl: &LocusTemplate,
    k: u32,
) -> Result<Vec<(u32, AffineExpr)>, LocusError> {
    let sum = evaluate_fixed_locus_sum(src, tpl, k)?;
    match tpl.relation {
        RelationKind::SumZero => {
            debug_assert_eq!(sum.degree_in(Var::Al), 0, "{} carries alpha", tpl.id);
            Ok(vec![(0, sum)])
        }
        RelationKind::AlphaCoeffs => {
            let deg = sum.degree_in(Var::Al);
            let mut out = Vec::new();
            for d in 1..=deg {
                let piece = sum.coeff_of(Var::Al, d);
                if !piece.is_zero() {
                    out.push((d as u32, piece));
                }
            }
            Ok(out)
        }
    }
}
