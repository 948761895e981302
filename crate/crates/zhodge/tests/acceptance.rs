//! Acceptance suite: one test per criterion, each printing a PASS line with
//! its tolerance (always exact — zero tolerance, exact rationals).
//!
//! Shared heavy state (the N=24 computation) is built once per criterion that
//! needs it; the whole suite stays far under the five-minute budget.

use std::sync::OnceLock;
use zhodge::engine::Engine;
use zhodge::hodge::Flavor;
use zhodge::rat::{rat, rat_from_str, rat_int, rat_to_string, Rat};
use zhodge::solver::value_of;

fn ones() -> [Rat; 3] {
    [rat_int(1), rat_int(1), rat_int(1)]
}

fn engine24() -> &'static Engine {
    static ENGINE: OnceLock<Engine> = OnceLock::new();
    ENGINE.get_or_init(|| {
        let mut e = Engine::new(1);
        e.compute(24).expect("compute to 24 insertions");
        e
    })
}

/// Criterion 1: the non-equivariant column of the reference table through
/// <w^24>, via the real CLI (compute then verify), exactly and in time.
#[test]
fn criterion_1_golden_bold_column_via_cli() {
    let started = std::time::Instant::now();
    let dir = std::env::temp_dir().join(format!("zhodge-accept-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let cache = dir.join("cache.json");
    let bin = env!("CARGO_BIN_EXE_zhodge");

    let out = std::process::Command::new(bin)
        .args(["compute", "--max-insertions", "24", "--cache"])
        .arg(&cache)
        .output()
        .expect("run compute");
    assert!(out.status.success(), "compute failed: {:?}", out);

    let out = std::process::Command::new(bin)
        .args(["verify", "--cache"])
        .arg(&cache)
        .output()
        .expect("run verify");
    assert!(
        out.status.success(),
        "verify failed:\n{}",
        String::from_utf8_lossy(&out.stdout)
    );

    // Re-read the cache and pin the bold values independently.
    let file = zhodge::cache::load(&cache).unwrap();
    let engine = Engine::from_cache_file(&file, 1).unwrap();
    let bold = [
        (3u32, "1/3"),
        (6, "-1/27"),
        (9, "1/9"),
        (12, "-1093/729"),
        (15, "119401/2187"),
        (18, "-27428707/6561"),
        (21, "102777653467/177147"),
        (24, "-210755831694887/1594323"),
    ];
    for (n, want) in bold {
        let got = engine.inv.get_primary(n, 0).unwrap().specialize(&ones());
        assert_eq!(got, rat_from_str(want).unwrap(), "<w^{n}>");
    }
    let elapsed = started.elapsed();
    assert!(
        elapsed.as_secs() < 300,
        "must finish well under five minutes, took {elapsed:?}"
    );
    std::fs::remove_dir_all(&dir).ok();
    println!(
        "PASS criterion 1: all 8 non-equivariant values match exactly via the CLI ({elapsed:?})"
    );
}

/// Criterion 2: the full printed grid through 12 insertions, exactly.
#[test]
fn criterion_2_full_grid_through_12() {
    let engine = engine24();
    let mut checked = 0;
    for e in zhodge::golden::entries() {
        if e.n1 + e.n2 > 12 {
            continue;
        }
        let got = engine
            .inv
            .get_primary(e.n1, e.n2)
            .unwrap()
            .specialize(&ones());
        assert_eq!(
            got,
            e.value,
            "<w^{} wb^{}> = {} but the table prints {}",
            e.n1,
            e.n2,
            rat_to_string(&got),
            rat_to_string(&e.value)
        );
        checked += 1;
    }
    assert_eq!(checked, 29, "the table prints 29 entries through row 12");
    println!("PASS criterion 2: all {checked} printed entries through 12 insertions match exactly");
}

/// Criterion 3: the three-point seeds are stored symbolically and satisfy the
/// smallest associativity identity as polynomials.
#[test]
fn criterion_3_seed_identities() {
    use zhodge::invariants::InvKey;
    use zhodge::sympoly::SymPoly3;
    let mut engine = Engine::new(1);
    engine.compute(3).unwrap();

    let w3 = engine.inv.get_primary(3, 0).unwrap();
    assert_eq!(w3, SymPoly3::constant(rat(1, 3)));

    let wb3 = engine.inv.get_primary(0, 3).unwrap();
    let mut want = SymPoly3::zero();
    want.add_class([1, 1, 1], rat(1, 3));
    assert_eq!(wb3, want, "<wb^3> = t1 t2 t3 / 3 symbolically");

    let one_w_wb = engine
        .inv
        .get(&InvKey { n0: 1, n1: 1, n2: 1 })
        .unwrap();
    assert_eq!(one_w_wb, SymPoly3::constant(rat(1, 3)));

    let one3 = engine
        .inv
        .get(&InvKey { n0: 3, n1: 0, n2: 0 })
        .unwrap();
    let mut laurent = SymPoly3::zero();
    laurent.add_class([-1, -1, -1], rat(1, 3));
    assert_eq!(one3, laurent, "<1^3> = 1/(3 t1 t2 t3) symbolically");

    // <w^3><wb^3> = t1 t2 t3 <1 w wb>^2 as a polynomial identity.
    let mut t123 = SymPoly3::zero();
    t123.add_class([1, 1, 1], rat_int(1));
    assert_eq!(w3.mul(&wb3), t123.mul(&one_w_wb.mul(&one_w_wb)));
    println!("PASS criterion 3: seeds stored symbolically; the smallest WDVV identity holds");
}

/// Criterion 4: for k <= 4, the transcribed relations 1, 2, 5 plus the
/// locus-sum reconstructions of relations 3 and 4 agree exactly with the PDE
/// solutions: every alternate relation has zero residual on the PDE-solved
/// store, and the alternate system (the hand-ordered solve) determines
/// the same principal values.
#[test]
fn criterion_4_relation_source_agreement() {
    use zhodge::lfun::Registering;
    use zhodge::locus::{load_templates, template_relations};
    use zhodge::transcribed::{relation_1, relation_2, relation_5};

    let engine = engine24();
    for k in 1..=4u32 {
        // residual agreement for every alternate source
        let mut work = engine.hodge.clone();
        let mut src = Registering(&mut work);
        for (name, rel) in [
            ("relation-1", relation_1(&mut src, k)),
            ("relation-2", relation_2(&mut src, k)),
            ("relation-5", relation_5(&mut src, k)),
        ] {
            assert!(
                rel.is_constant() && rel.constant.is_zero(),
                "transcribed {name} at k={k} residual: {:?}",
                rel
            );
        }
        for tpl in load_templates().unwrap() {
            let rels = template_relations(&mut src, &tpl, k).unwrap();
            for (d, rel) in rels {
                assert!(
                    rel.is_constant() && rel.constant.is_zero(),
                    "template {} k={k} alpha^{d} residual: {:?}",
                    tpl.id,
                    rel
                );
            }
        }

        // the alternate system solves to the same principal values
        let alt = zhodge::solver::alternate_principal_values(&engine.hodge, k).unwrap();
        assert!(!alt.is_empty());
        for (key, value) in alt {
            let want = value_of(&engine.hodge, key.n1, key.n2, key.i, key.j, key.flavor)
                .expect("pde path solved this key");
            assert_eq!(value, want, "{} differs between sources", key.describe());
        }
    }
    println!(
        "PASS criterion 4: transcribed {{1,2,5}} + locus {{3,4}} reproduce the PDE solutions exactly for k <= 4"
    );
}

/// Criterion 5: alpha-independence. For the two linearization-dependent
/// templates all alpha coefficients of degree >= 1 vanish exactly after
/// substituting the solved values, k <= 4. The level-k values are first
/// stripped so that the coefficients are genuinely nontrivial affine
/// expressions before the substitution.
#[test]
fn criterion_5_alpha_independence() {
    use zhodge::lfun::Registering;
    use zhodge::locus::{template, template_relations};
    let engine = engine24();
    let mut nontrivial = 0;
    let mut total = 0;
    for k in 1..=4u32 {
        let level_keys: std::collections::BTreeSet<_> = engine
            .hodge
            .iter()
            .filter(|(key, _)| key.n2 <= 2 && key.level() == k)
            .map(|(key, _)| *key)
            .collect();
        let mut stripped = engine.hodge.with_unknowns(&level_keys);
        for tpl_id in ["i3k1", "j3k-1"] {
            let tpl = template(tpl_id);
            let mut src = Registering(&mut stripped);
            let rels = template_relations(&mut src, &tpl, k).unwrap();
            for (d, rel) in rels {
                total += 1;
                if rel.has_unknowns() {
                    nontrivial += 1;
                }
                // substitute the solved values for the stripped unknowns
                let mut subst = std::collections::BTreeMap::new();
                for id in rel.unknown_ids() {
                    let key = stripped.key_of(id).unwrap();
                    let v = value_of(&engine.hodge, key.n1, key.n2, key.i, key.j, key.flavor)
                        .unwrap();
                    subst.insert(id, zhodge::mpoly::MPoly::constant(v));
                }
                let res = rel.substitute_values(&subst);
                assert!(
                    res.is_constant() && res.constant.is_zero(),
                    "{tpl_id} k={k} alpha^{d}: residual {:?}",
                    res
                );
            }
        }
        // rebuild src borrow per k
    }
    assert!(nontrivial > 0, "the suite must exercise nontrivial coefficients");
    println!(
        "PASS criterion 5: {total} alpha coefficients of degree >= 1 vanish exactly after substitution ({nontrivial} nontrivial, k <= 4)"
    );
}

/// Criterion 6: the PDE residual suite. All nine PDEs (WDVV plus the eight
/// localization/psi-removal relations) have identically zero residual to
/// x-order 24 over the full dimension-valid u,v range. The psi-removal PDEs
/// are not identities on the dimension-degenerate diagonal i+j = 0/1/2 (the
/// printed 1/9 of removal (a) is the first of those auxiliary-integral
/// values), so that diagonal carries no equations and is excluded.
#[test]
fn criterion_6_pde_residual_suite() {
    let order = 24usize;
    let mut engine = Engine::new(1);
    // x-order 24 touches level-8 spaces
    engine.solve_through_levels((order as u32).div_ceil(3)).unwrap();
    engine.compute(24).unwrap();

    let failures = zhodge::pde::residual_failures(&engine.hodge, order);
    assert!(
        failures.is_empty(),
        "nonzero residuals: {:?}",
        failures
            .iter()
            .map(|(id, p, i, j, r)| format!("{} x^{p} u^{i} v^{j}: {}", id.name(), r))
            .collect::<Vec<_>>()
    );

    let wdvv_bad = zhodge::invariants::wdvv_failures(&engine.inv, 24);
    assert!(wdvv_bad.is_empty(), "WDVV residuals: {wdvv_bad:?}");
    println!(
        "PASS criterion 6: all nine PDEs have identically zero residual to x-order {order} (full dimension-valid u,v range)"
    );
}

/// Criterion 7: structural properties through 15 insertions: homogeneity,
/// torus-permutation symmetry, Hodge/invariant round trips, hbar-homogeneity
/// of the locus sums, and determinism across thread counts.
#[test]
fn criterion_7_structural_suite() {
    let mut one_thread = Engine::new(1);
    one_thread.compute(15).unwrap();
    let mut four_threads = Engine::new(4);
    four_threads.compute(15).unwrap();

    // determinism across thread counts: byte-identical caches
    let a = serde_json::to_string(&one_thread.to_cache_file()).unwrap();
    let b = serde_json::to_string(&four_threads.to_cache_file()).unwrap();
    assert_eq!(a, b, "thread count must not change a single byte");

    // homogeneity + symmetry (symmetry probed at an asymmetric point)
    let p = [rat(2, 1), rat(3, 1), rat(5, 1)];
    let perms: [[usize; 3]; 6] = [
        [0, 1, 2],
        [0, 2, 1],
        [1, 0, 2],
        [1, 2, 0],
        [2, 0, 1],
        [2, 1, 0],
    ];
    for (key, value) in one_thread.inv.iter() {
        if key.n0 > 0 {
            continue;
        }
        if !value.is_zero() {
            assert_eq!(
                value.homogeneous_degree(),
                Some(key.n2 as i64),
                "{}",
                key.describe()
            );
        }
        let base = value.specialize(&p);
        for perm in perms {
            let q = [p[perm[0]].clone(), p[perm[1]].clone(), p[perm[2]].clone()];
            assert_eq!(value.specialize(&q), base, "{} symmetry", key.describe());
        }
    }

    // round trips for every computed invariant
    for (key, _) in one_thread.inv.iter() {
        if key.n0 > 0 {
            continue;
        }
        assert!(
            zhodge::assembler::round_trip_ok(&one_thread.hodge, &one_thread.inv, key.n1, key.n2)
                .unwrap(),
            "round trip {}",
            key.describe()
        );
    }

    // hbar-homogeneity of every locus template (the evaluator rejects any
    // mixed-degree sum)
    let mut work = one_thread.hodge.clone();
    for tpl in zhodge::locus::load_templates().unwrap() {
        for k in 1..=4 {
            let mut src = zhodge::lfun::Registering(&mut work);
            zhodge::locus::evaluate_fixed_locus_sum(&mut src, &tpl, k)
                .unwrap_or_else(|e| panic!("template {} k={k}: {e}", tpl.id));
        }
    }
    println!("PASS criterion 7: homogeneity, symmetry, round trips, hbar-homogeneity, thread determinism (N <= 15)");
}

/// Criterion 8: the level-one micro-oracles, each through at least two
/// independent relation paths with exact agreement.
///
/// Note on the last value: a literal reading of the displayed form of
/// Relation 5 gives (lam1 psi_wb)_{A(4,1)} = 1/243, because that display
/// drops the binomial counts and the gluing factor of its own worked-example
/// table. Every consistent route (Relation 2 at k=1, the worked-example
/// table, psi-removal (b), Relation 3 at x^4) gives 1/9, and 1/243
/// contradicts the reference invariant table through exact linear algebra.
/// The PDE sources are authoritative here, so 1/9 is asserted.
#[test]
fn criterion_8_micro_oracles() {
    use zhodge::lfun::Registering;

    let engine = engine24();
    let store = &engine.hodge;
    let h = |n1, n2, i, j, fl| value_of(store, n1, n2, i, j, fl).unwrap();

    // Path A (PDE pipeline) values.
    let l1_cubed = h(6, 0, 0, 0, Flavor::None);
    let l1_sq_41 = h(4, 1, 0, 1, Flavor::None);
    let l1_22 = h(2, 2, 1, 1, Flavor::None);
    let l1_sq_psi_w = h(6, 0, 0, 1, Flavor::Omega);
    let l1_psi_wb = h(4, 1, 1, 1, Flavor::OmegaBar);

    // Path B: invert the printed invariants through the boxed formula.
    // <w^6> = -(lam1^3), <w^4 wb> = (t1+t2+t3)(lam1^2), <w^2 wb^2> = -e2 (lam1).
    assert_eq!(l1_cubed, rat(1, 27));
    assert_eq!(l1_cubed, -engine.inv.get_primary(6, 0).unwrap().specialize(&ones()));
    assert_eq!(l1_sq_41, rat(1, 27));
    assert_eq!(
        l1_sq_41,
        engine.inv.get_primary(4, 1).unwrap().specialize(&ones()) / rat_int(3)
    );
    assert_eq!(l1_22, rat(1, 9));
    assert_eq!(
        l1_22,
        -engine.inv.get_primary(2, 2).unwrap().specialize(&ones()) / rat_int(3)
    );

    // Path B for the descendants: the transcribed recursions at k = 1.
    // Relation 1: 3(lam1^3) = 2(lam1^2 psi_w) - 5(lam1^2)_{A(4,1)}.
    let from_r1 = (l1_cubed.clone() * rat_int(3) + l1_sq_41.clone() * rat_int(5)) / rat_int(2);
    assert_eq!(l1_sq_psi_w, rat(4, 27));
    assert_eq!(l1_sq_psi_w, from_r1, "relation 1 route for (lam1^2 psi_w)");

    // Relation 2: (lam1 psi_wb) = 3 (lam1^2); worked-example table:
    // (lam1 psi_wb) = (lam1)_{A(2,2)}.
    let from_r2 = l1_sq_41.clone() * rat_int(3);
    assert_eq!(l1_psi_wb, from_r2, "relation 2 route for (lam1 psi_wb)");
    assert_eq!(l1_psi_wb, l1_22, "worked-example-table route for (lam1 psi_wb)");
    assert_eq!(l1_psi_wb, rat(1, 9));

    // And the table-driven evaluator reproduces the worked-example relation
    // as an exact residual zero.
    let mut work = engine.hodge.clone();
    let tpl = zhodge::locus::template("psi_example");
    let mut src = Registering(&mut work);
    let rels = zhodge::locus::template_relations(&mut src, &tpl, 1).unwrap();
    assert!(rels.iter().all(|(_, r)| r.is_constant() && r.constant.is_zero()));

    println!(
        "PASS criterion 8: micro-oracles agree across independent routes \
         (1/27, 1/27, 1/9, 4/27; (lam1 psi_wb) = 1/9 by four consistent routes; \
         the display-literal 1/243 is inconsistent with the reference table)"
    );
}
