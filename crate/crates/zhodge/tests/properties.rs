//! Property tests for the arithmetic layer: ring axioms, the EGF product law
//! against a brute-force convolution, substitution as a ring map, and solver
//! residuals.

use proptest::prelude::*;
use std::collections::BTreeSet;
use zhodge::affine::{affine_solve, AffineExpr};
use zhodge::egf::EgfSeries;
use zhodge::mpoly::{MPoly, Var};
use zhodge::rat::{binomial, rat, rat_int, Rat};

fn small_rat() -> impl Strategy<Value = Rat> {
    (-6i64..=6, 1i64..=4).prop_map(|(n, d)| rat(n, d))
}

/// Sparse polynomials in t1, u, v with small exponents.
fn small_poly() -> impl Strategy<Value = MPoly> {
    proptest::collection::vec(((0u16..3, 0u16..3, 0u16..3), small_rat()), 0..5).prop_map(|terms| {
        let mut p = MPoly::zero();
        for ((a, b, c), q) in terms {
            let mut e = [0u16; 6];
            e[Var::T1 as usize] = a;
            e[Var::U as usize] = b;
            e[Var::V as usize] = c;
            p.add_term(e, q);
        }
        p
    })
}

proptest! {
    #[test]
    fn mul_is_associative(f in small_poly(), g in small_poly(), h in small_poly()) {
        prop_assert_eq!(f.mul(&g).mul(&h), f.mul(&g.mul(&h)));
    }

    #[test]
    fn mul_distributes(f in small_poly(), g in small_poly(), h in small_poly()) {
        prop_assert_eq!(f.mul(&g.add(&h)), f.mul(&g).add(&f.mul(&h)));
    }

    /// Substitution commutes with the ring operations (it is a ring map).
    #[test]
    fn substitute_is_ring_map(f in small_poly(), g in small_poly(), s in small_poly()) {
        let bind = [(Var::U, s)];
        prop_assert_eq!(
            f.mul(&g).substitute(&bind),
            f.substitute(&bind).mul(&g.substitute(&bind))
        );
        prop_assert_eq!(
            f.add(&g).substitute(&bind),
            f.substitute(&bind).add(&g.substitute(&bind))
        );
    }

    /// EGF product law against a brute-force double loop, orders <= 10.
    #[test]
    fn egf_matches_brute_force(
        fs in proptest::collection::vec(small_rat(), 11),
        gs in proptest::collection::vec(small_rat(), 11),
    ) {
        let f = EgfSeries::from_coeffs(fs.iter().cloned().map(AffineExpr::from_rat).collect());
        let g = EgfSeries::from_coeffs(gs.iter().cloned().map(AffineExpr::from_rat).collect());
        let prod = f.mul(&g, 10).unwrap();
        for m in 0..=10usize {
            let mut want = rat_int(0);
            for a in 0..=m {
                want += binomial(m as u64, a as u64) * &fs[a] * &gs[m - a];
            }
            prop_assert_eq!(prod.coeff(m).constant.constant_term(), want);
        }
    }

    /// Solving a random invertible triangular-ish system and substituting back
    /// yields identically zero residuals.
    #[test]
    fn solve_residuals_vanish(
        vals in proptest::collection::vec(small_rat(), 3),
        mix in proptest::collection::vec(small_rat(), 3),
    ) {
        // x0 = vals[0]; x1 + mix0 x0 = vals1; x2 + mix1 x1 + mix2 x0 = vals2
        let x = |i: u32| AffineExpr::unknown(i);
        let c = |r: &Rat| AffineExpr::from_rat(r.clone());
        let eqs = vec![
            x(0).sub(&c(&vals[0])),
            x(1).add(&x(0).scale(&mix[0])).sub(&c(&vals[1])),
            x(2).add(&x(1).scale(&mix[1])).add(&x(0).scale(&mix[2])).sub(&c(&vals[2])),
        ];
        let unknowns: BTreeSet<u32> = [0, 1, 2].into();
        let sol = affine_solve(&eqs, &unknowns).unwrap();
        for eq in &eqs {
            prop_assert!(zhodge::affine::residual(eq, &sol).is_zero());
        }
    }
}

/// Canonicalization is idempotent over a wide raw-key grid.
#[test]
fn canonicalize_idempotent_grid() {
    use zhodge::hodge::{canonicalize, Canon, Flavor};
    for n1 in 0..18u32 {
        for n2 in 0..4u32 {
            for i in 0..6u32 {
                for j in 0..6u32 {
                    for f in [Flavor::None, Flavor::Omega, Flavor::OmegaBar] {
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

mod sympoly_props {
    use proptest::prelude::*;
    use zhodge::rat::{rat, Rat};
    use zhodge::sympoly::SymPoly3;

    fn small_rat() -> impl Strategy<Value = Rat> {
        (-5i64..=5, 1i64..=3).prop_map(|(n, d)| rat(n, d))
    }

    fn small_sym() -> impl Strategy<Value = SymPoly3> {
        proptest::collection::vec(((0i64..3, 0i64..3, 0i64..3), small_rat()), 0..4).prop_map(
            |terms| {
                let mut p = SymPoly3::zero();
                for ((a, b, c), q) in terms {
                    p.add_class([a, b, c], q);
                }
                p
            },
        )
    }

    proptest! {
        #[test]
        fn mul_associative_and_commutative(
            f in small_sym(), g in small_sym(), h in small_sym()
        ) {
            prop_assert_eq!(f.mul(&g), g.mul(&f));
            prop_assert_eq!(f.mul(&g).mul(&h), f.mul(&g.mul(&h)));
        }

        /// specialize is a ring map and blind to permutations of the point.
        #[test]
        fn specialize_is_symmetric_ring_map(f in small_sym(), g in small_sym()) {
            let p = [rat(2, 1), rat(-3, 2), rat(5, 3)];
            let q = [p[2].clone(), p[0].clone(), p[1].clone()];
            prop_assert_eq!(f.specialize(&p).clone() * g.specialize(&p),
                            f.mul(&g).specialize(&p));
            prop_assert_eq!(f.specialize(&p), f.specialize(&q));
        }
    }
}
