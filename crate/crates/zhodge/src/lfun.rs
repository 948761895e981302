//! Generating-function series for Z3-Hodge integrals.
//!
//! `L^flavor(x, y; u, v) = sum H(m,n,i,j) x^m/m! y^n/n! u^i v^j` where
//! `H(m,n,i,j)` is the integral of `lam_r lam_{r-i} lam_{r-j} psi^{i+j-n}` over
//! A(m,n) with psi at a point of the series flavor. The relation PDEs only use
//! the y-coefficients n = 0, 1, 2, so we build, per (flavor, n, dx), the
//! x-series of the n-th y-coefficient after dx derivatives in x.
//!
//! On top of the honest Hodge coefficients the series carry one structural
//! seed: coefficient 1/3 at (m,n) = (1,1), (i,j) = (0,0). It encodes the
//! degenerate fixed-locus vertex (a single marked twisted point sitting on the
//! main component) that the localization sums produce; without it the PDEs do
//! not reproduce the printed fixed-locus tables. The A(1,1) store entry itself
//! stays Zero: the seed lives only here.

use crate::affine::AffineExpr;
use crate::egf::EgfSeries;
use crate::hodge::{canonicalize, Canon, Flavor, HodgeStore, HodgeVal};
use crate::mpoly::{MPoly, Var};
use crate::rat::rat;

/// Store view used while building series. The registering view issues unknown
/// ids on first touch (single-threaded discovery); the frozen view requires
/// every touched key to be registered already (parallel re-extraction).
pub trait KeySource {
    fn lookup(&mut self, n1: u32, n2: u32, i: u32, j: u32, flavor: Flavor) -> HodgeVal;
}

pub struct Registering<'a>(pub &'a mut HodgeStore);

impl KeySource for Registering<'_> {
    fn lookup(&mut self, n1: u32, n2: u32, i: u32, j: u32, flavor: Flavor) -> HodgeVal {
        match canonicalize(n1, n2, i, j, flavor) {
            Canon::Zero => HodgeVal::Zero,
            Canon::Key(key) => match self.0.get(key) {
                Some(v) => v,
                None => HodgeVal::Unknown(self.0.register(key)),
            },
        }
    }
}

pub struct Frozen<'a>(pub &'a HodgeStore);

impl KeySource for Frozen<'_> {
    fn lookup(&mut self, n1: u32, n2: u32, i: u32, j: u32, flavor: Flavor) -> HodgeVal {
        match canonicalize(n1, n2, i, j, flavor) {
            Canon::Zero => HodgeVal::Zero,
            Canon::Key(key) => self
                .0
                .get(key)
                .unwrap_or_else(|| panic!("unregistered key {}", key.describe())),
        }
    }
}

fn hv_to_expr(v: HodgeVal) -> AffineExpr {
    match v {
        HodgeVal::Zero => AffineExpr::zero(),
        HodgeVal::Known(r) => AffineExpr::from_rat(r),
        HodgeVal::Unknown(id) => AffineExpr::unknown(id),
    }
}

/// The x-series (an EGF) of `d^dx/dx^dx d^n/dy^n L^flavor |_{y=0}` up to
/// x-order `order`. Coefficients are polynomials in u, v over unknowns.
pub fn l_factor(
    src: &mut dyn KeySource,
    flavor: Flavor,
    n: u32,
    dx: u32,
    order: usize,
) -> EgfSeries {
    assert!(n <= 2, "the relations use at most second y-derivatives");
    let mut coeffs = Vec::with_capacity(order + 1);
    for p in 0..=order {
        let m = p as u32 + dx;
        let mut acc = AffineExpr::zero();
        // Degenerate-vertex seed at (m,n) = (1,1).
        if (m, n) == (1, 1) {
            acc = acc.add(&AffineExpr::from_rat(rat(1, 3)));
        }
        if (m + 2 * n).is_multiple_of(3) && m + n >= 3 {
            let r = crate::geometry::rank_e_omega(m, n).unwrap();
            if r >= 0 {
                for i in 0..=(r as u32) {
                    for j in 0..=(r as u32) {
                        let val = src.lookup(m, n, i, j, flavor);
                        if matches!(val, HodgeVal::Zero) {
                            continue;
                        }
                        let mut mono = MPoly::one();
                        if i > 0 {
                            mono = mono.mul(&MPoly::var(Var::U).pow(i));
                        }
                        if j > 0 {
                            mono = mono.mul(&MPoly::var(Var::V).pow(j));
                        }
                        acc = acc.add(&hv_to_expr(val).scale_poly(&mono));
                    }
                }
            }
        }
        coeffs.push(acc);
    }
    EgfSeries::from_coeffs(coeffs)
}

/// Substitutes values (polynomials) for u and v in every coefficient.
pub fn eval_uv(series: &EgfSeries, u: &MPoly, v: &MPoly) -> EgfSeries {
    let bind = [(Var::U, u.clone()), (Var::V, v.clone())];
    EgfSeries::from_coeffs(
        series
            .coeffs
            .iter()
            .map(|c| AffineExpr {
                constant: c.constant.substitute(&bind),
                terms: c
                    .terms
                    .iter()
                    .map(|(id, p)| (*id, p.substitute(&bind)))
                    .filter(|(_, p)| !p.is_zero())
                    .collect(),
            })
            .collect(),
    )
}

/// The public `build_L` of the store: the plain (dx = 0) series family for
/// n = 0, 1, 2.
pub fn build_l(store: &mut HodgeStore, flavor: Flavor, order: usize) -> [EgfSeries; 3] {
    let mut src = Registering(store);
    [
        l_factor(&mut src, flavor, 0, 0, order),
        l_factor(&mut src, flavor, 1, 0, order),
        l_factor(&mut src, flavor, 2, 0, order),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::rat;

    #[test]
    fn seeded_coefficients() {
        let mut store = HodgeStore::new();
        store.seed_three_point().unwrap();
        let [l0, l1, _l2] = build_l(&mut store, Flavor::Omega, 4);
        // x^3/3! u^0 v^0 coefficient of L^omega at y-order 0 is 1/3
        assert_eq!(
            l0.coeff(3).constant.coeff_of(Var::U, 0).coeff_of(Var::V, 0),
            MPoly::constant(rat(1, 3))
        );
        // the degenerate seed sits at x^1 in the y-derivative
        assert_eq!(l1.coeff(1).constant.constant_term(), rat(1, 3));
        // and nowhere in the y-order-0 series
        assert_eq!(l0.coeff(1).constant.constant_term(), rat(0, 1));
    }

    #[test]
    fn unknown_registration() {
        let mut store = HodgeStore::new();
        store.seed_three_point().unwrap();
        let mut src = Registering(&mut store);
        // the x-order 4 coefficient of L^omega-bar_y touches A(4,1)
        let s = l_factor(&mut src, Flavor::OmegaBar, 1, 0, 4);
        assert!(s.coeff(4).has_unknowns());
    }

    /// Once level one is solved, the x^4/4! y u^1 v^0 coefficient of
    /// L^omega-bar is the A(4,1) integral 1/27.
    #[test]
    fn solved_coefficient_lookup() {
        let mut store = HodgeStore::new();
        store.seed_three_point().unwrap();
        crate::solver::solve_level(&mut store, 1, 1).unwrap();
        let [_l0, l1, _l2] = build_l(&mut store, Flavor::OmegaBar, 4);
        let c = l1.coeff(4).constant.coeff_of(Var::U, 1).coeff_of(Var::V, 0);
        assert_eq!(c, MPoly::constant(rat(1, 27)));
    }
}
