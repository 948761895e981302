//! The batch engine: seeds, level-by-level Hodge solving, assembly,
//! WDVV propagation, verification, and export.

use crate::assembler::{assemble_seeds, lf_crosscheck, round_trip_ok};
use crate::cache::{self, CacheError, CacheFile};
use crate::golden;
use crate::hodge::HodgeStore;
use crate::invariants::{propagate, wdvv_failures, InvariantError, InvariantStore};
use crate::locus::{template, template_relations, LocusError};
use crate::lfun::Registering;
use crate::pde::residual_failures;
use crate::rat::{rat_int, rat_to_string, Rat};
use crate::solver::{needed_level, solve_through, SolverError};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum EngineError {
    #[error(transparent)]
    Solver(#[from] SolverError),
    #[error(transparent)]
    Invariant(#[from] InvariantError),
    #[error(transparent)]
    Cache(#[from] CacheError),
    #[error(transparent)]
    Locus(#[from] LocusError),
}

pub struct Engine {
    pub hodge: HodgeStore,
    pub inv: InvariantStore,
    pub solved_level: u32,
    pub max_insertions: u32,
    pub threads: usize,
}

impl Engine {
    pub fn new(threads: usize) -> Self {
        let mut hodge = HodgeStore::new();
        hodge.seed_three_point().expect("fresh store");
        let mut inv = InvariantStore::new();
        inv.seed_three_point().expect("fresh store");
        Engine {
            hodge,
            inv,
            solved_level: 0,
            max_insertions: 3,
            threads: threads.max(1),
        }
    }

    pub fn from_cache_file(file: &CacheFile, threads: usize) -> Result<Self, EngineError> {
        let (mut hodge, mut inv) = cache::from_cache(file)?;
        hodge
            .seed_three_point()
            .map_err(SolverError::Store)?;
        inv.seed_three_point()?;
        Ok(Engine {
            hodge,
            inv,
            solved_level: file.solved_level,
            max_insertions: file.max_insertions.max(3),
            threads: threads.max(1),
        })
    }

    pub fn to_cache_file(&self) -> CacheFile {
        cache::to_cache(&self.hodge, &self.inv, self.max_insertions, self.solved_level)
    }

    /// Solves Hodge levels up to `k` (no-op if already there).
    pub fn ensure_levels(&mut self, k: u32) -> Result<(), EngineError> {
        if k > self.solved_level {
            for level in (self.solved_level + 1)..=k {
                crate::solver::solve_level(&mut self.hodge, level, self.threads)?;
            }
            self.solved_level = k;
        }
        Ok(())
    }

    /// Computes every equivariant invariant with at most `n_max` insertions:
    /// seeds, the Hodge induction, assembly of the n2 <= 2 seeds, and the
    /// WDVV propagation. Idempotent over an existing store.
    pub fn compute(&mut self, n_max: u32) -> Result<(), EngineError> {
        let n_max = n_max.max(3);
        self.ensure_levels(needed_level(n_max))?;
        assemble_seeds(&self.hodge, &mut self.inv, n_max)?;
        propagate(&mut self.inv, n_max)?;
        self.max_insertions = self.max_insertions.max(n_max);
        Ok(())
    }

    pub fn solve_through_levels(&mut self, k: u32) -> Result<(), EngineError> {
        if self.solved_level == 0 {
            solve_through(&mut self.hodge, k, self.threads)?;
            self.solved_level = k;
            Ok(())
        } else {
            self.ensure_levels(k)
        }
    }

    /// The full verification suite over the current stores.
    pub fn verify(&self) -> VerifyReport {
        let mut report = VerifyReport::default();
        let ones = [rat_int(1), rat_int(1), rat_int(1)];

        if self.inv.len() <= 4 && self.max_insertions <= 3 {
            report.push(
                "store",
                true,
                "cache holds only the three-point seeds; checks are vacuous".into(),
            );
        }

        // Golden table.
        let mut golden_checked = 0;
        let mut golden_bad = Vec::new();
        for e in golden::entries() {
            if e.n1 + e.n2 > self.max_insertions {
                continue;
            }
            match self.inv.get_primary(e.n1, e.n2) {
                Some(v) => {
                    golden_checked += 1;
                    let got = v.specialize(&ones);
                    if got != e.value {
                        golden_bad.push(format!(
                            "<w^{} wb^{}> = {} but the table prints {}",
                            e.n1,
                            e.n2,
                            rat_to_string(&got),
                            rat_to_string(&e.value)
                        ));
                    }
                }
                None => golden_bad.push(format!("<w^{} wb^{}> missing", e.n1, e.n2)),
            }
        }
        report.push(
            "golden-table",
            golden_bad.is_empty(),
            if golden_bad.is_empty() {
                format!("{golden_checked} printed entries match exactly")
            } else {
                golden_bad.join("; ")
            },
        );

        // Seed identities.
        let seeds_ok = self
            .inv
            .get(&crate::invariants::InvKey { n0: 3, n1: 0, n2: 0 })
            .is_some_and(|v| v.has_negative_exponents())
            && crate::invariants::wdvv_residual(&self.inv, 0, 0)
                .map(|r| r.is_zero())
                .unwrap_or(false);
        report.push(
            "seed-identities",
            seeds_ok,
            "three-point seeds stored symbolically; smallest WDVV equation holds".into(),
        );

        // WDVV residuals over the whole computed grid.
        let wdvv_bad = wdvv_failures(&self.inv, self.max_insertions);
        report.push(
            "wdvv-residuals",
            wdvv_bad.is_empty(),
            match wdvv_bad.first() {
                None => format!("all coefficient equations to {} insertions", self.max_insertions),
                Some((n1, n2, r)) => format!("site ({n1},{n2}): residual {r}"),
            },
        );

        // Homogeneity and symmetry (symmetry is structural; homogeneity is
        // re-checked here against the stored data).
        let mut homo_bad = Vec::new();
        for (k, v) in self.inv.iter() {
            if k.n0 == 0 && !v.is_zero() && v.homogeneous_degree() != Some(k.n2 as i64) {
                homo_bad.push(k.describe());
            }
        }
        report.push(
            "homogeneity",
            homo_bad.is_empty(),
            if homo_bad.is_empty() {
                "every invariant is homogeneous of degree n2".into()
            } else {
                homo_bad.join(", ")
            },
        );

        // PDE residuals to the order supported by the solved levels.
        if self.solved_level > 0 {
            let order = (3 * self.solved_level) as usize;
            let pde_bad = residual_failures(&self.hodge, order);
            report.push(
                "pde-residuals",
                pde_bad.is_empty(),
                match pde_bad.first() {
                    None => format!("all eight relation PDEs vanish to x-order {order}"),
                    Some((id, p, i, j, r)) => format!(
                        "{} at x^{p} u^{i} v^{j}: {}",
                        id.name(),
                        rat_to_string(r)
                    ),
                },
            );

            // Alpha-independence of the linearization-dependent templates.
            let mut alpha_bad = Vec::new();
            let mut work = self.hodge.clone();
            for tpl_id in ["i3k1", "j3k-1"] {
                let tpl = template(tpl_id);
                for k in 1..=self.solved_level {
                    let mut src = Registering(&mut work);
                    match template_relations(&mut src, &tpl, k) {
                        Ok(rels) => {
                            for (d, rel) in rels {
                                if !rel.is_constant() || !rel.constant.is_zero() {
                                    alpha_bad
                                        .push(format!("{tpl_id} k={k} alpha^{d}: {:?}", rel));
                                }
                            }
                        }
                        Err(e) => alpha_bad.push(format!("{tpl_id} k={k}: {e}")),
                    }
                }
            }
            report.push(
                "alpha-independence",
                alpha_bad.is_empty(),
                if alpha_bad.is_empty() {
                    format!(
                        "all alpha coefficients vanish for k <= {}",
                        self.solved_level
                    )
                } else {
                    alpha_bad.join("; ")
                },
            );
        }

        // Round trips between the Hodge store and assembled invariants.
        let mut rt_bad = Vec::new();
        for (k, _) in self.inv.iter() {
            if k.n0 > 0 {
                continue;
            }
            match round_trip_ok(&self.hodge, &self.inv, k.n1, k.n2) {
                Ok(true) => {}
                Ok(false) => rt_bad.push(k.describe()),
                Err(e) => rt_bad.push(format!("{}: {e}", k.describe())),
            }
        }
        report.push(
            "hodge-invariant-round-trip",
            rt_bad.is_empty(),
            if rt_bad.is_empty() {
                "inversion reproduces every committed class".into()
            } else {
                rt_bad.join(", ")
            },
        );

        // The potential / L-series translation identities.
        let lf_bad = lf_crosscheck(&self.hodge, &self.inv, self.max_insertions);
        report.push(
            "lf-translation",
            lf_bad.is_empty(),
            if lf_bad.is_empty() {
                "all three identities hold coefficient by coefficient".into()
            } else {
                lf_bad.join("; ")
            },
        );

        report
    }

    /// All primary invariants ordered by (total, n2).
    pub fn ordered_invariants(&self) -> Vec<(u32, u32, crate::sympoly::SymPoly3)> {
        let mut list: Vec<_> = self
            .inv
            .iter()
            .filter(|(k, _)| k.n0 == 0)
            .map(|(k, v)| (k.n1 + k.n2, k.n2, k.n1, v.clone()))
            .collect();
        list.sort_by_key(|(total, n2, _, _)| (*total, *n2));
        list.into_iter()
            .map(|(_, n2, n1, v)| (n1, n2, v))
            .collect()
    }

    /// Table-layout CSV at a torus point: rows = totals, columns = floor(n2/3).
    pub fn export_csv(&self, t: &[Rat; 3]) -> String {
        let mut max_col = 0;
        for (n1, n2, _) in self.ordered_invariants() {
            let _ = n1;
            max_col = max_col.max(n2 / 3);
        }
        let mut out = String::from("total");
        for c in 0..=max_col {
            out.push_str(&format!(",col{c}"));
        }
        out.push('\n');
        for total in 3..=self.max_insertions {
            let mut row = format!("{total}");
            let mut any = false;
            for c in 0..=max_col {
                row.push(',');
                let n2 = golden::slot_n2(total, c);
                if n2 > total {
                    continue;
                }
                let n1 = total - n2;
                if let Some(v) = self.inv.get_primary(n1, n2) {
                    if n1 + n2 >= 3 {
                        row.push_str(&rat_to_string(&v.specialize(t)));
                        any = true;
                    }
                }
            }
            if any {
                out.push_str(&row);
                out.push('\n');
            }
        }
        out
    }

    /// JSON export: the cache document itself (round-trips through the
    /// loader), or specialized values when a torus point is given.
    pub fn export_json(&self, t: Option<&[Rat; 3]>) -> String {
        match t {
            None => serde_json::to_string_pretty(&self.to_cache_file()).unwrap() + "\n",
            Some(t) => {
                let rows: Vec<serde_json::Value> = self
                    .ordered_invariants()
                    .into_iter()
                    .map(|(n1, n2, v)| {
                        serde_json::json!({
                            "n1": n1,
                            "n2": n2,
                            "value": rat_to_string(&v.specialize(t)),
                        })
                    })
                    .collect();
                serde_json::to_string_pretty(&serde_json::json!({
                    "t": t.iter().map(rat_to_string).collect::<Vec<_>>(),
                    "invariants": rows,
                }))
                .unwrap()
                    + "\n"
            }
        }
    }
}

#[derive(Default)]
pub struct VerifyReport {
    pub lines: Vec<(String, bool, String)>,
}

impl VerifyReport {
    fn push(&mut self, name: &str, ok: bool, detail: String) {
        self.lines.push((name.to_string(), ok, detail));
    }

    pub fn ok(&self) -> bool {
        self.lines.iter().all(|(_, ok, _)| *ok)
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        for (name, ok, detail) in &self.lines {
            out.push_str(&format!(
                "{} {name}: {detail}\n",
                if *ok { "PASS" } else { "FAIL" }
            ));
        }
        out
    }
}
