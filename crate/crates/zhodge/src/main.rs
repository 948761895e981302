//! Command-line front end.
//!
//! Exit codes: 0 ok, 1 mismatch or inconsistency, 2 usage error.

use clap::{Parser, Subcommand};
use std::path::PathBuf;
use std::process::ExitCode;
use zhodge::engine::Engine;
use zhodge::rat::{rat_from_str, rat_int, rat_to_string, Rat};

const CACHE_DIR_ENV: &str = "ZHODGE_CACHE_DIR";
const DEFAULT_CACHE: &str = "zhodge-cache.json";

#[derive(Parser)]
#[command(
    name = "zhodge",
    about = "Exact equivariant Gromov-Witten invariants of [C^3/Z_3] and the Z3-Hodge integrals behind them"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute all invariants with at most N insertions and write the cache.
    Compute {
        #[arg(long = "max-insertions", short = 'n')]
        max_insertions: u32,
        #[arg(long)]
        cache: Option<PathBuf>,
        #[arg(long, default_value_t = 1)]
        threads: usize,
    },
    /// Check a cache against the embedded reference table and the full
    /// property suite.
    Verify {
        #[arg(long)]
        cache: Option<PathBuf>,
    },
    /// Print the three-part Z3-Hodge integrals of one space A(n1,n2).
    Hodge {
        /// n1,n2
        #[arg(long)]
        space: String,
        /// Optional triple of lambda indices i,j,k; prints all when absent.
        #[arg(long)]
        lambda: Option<String>,
        #[arg(long)]
        cache: Option<PathBuf>,
    },
    /// Export the computed invariants.
    Export {
        #[arg(long, value_parser = ["csv", "json"])]
        format: String,
        /// Torus point t1,t2,t3 for exact specialization.
        #[arg(long)]
        t: Option<String>,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        cache: Option<PathBuf>,
    },
    /// Run the PDE residual suite to a given x-order.
    PdeCheck {
        #[arg(long, default_value_t = 12)]
        order: u32,
        #[arg(long, default_value_t = 1)]
        threads: usize,
    },
}

fn cache_path(arg: Option<PathBuf>) -> PathBuf {
    match arg {
        Some(p) => p,
        None => match std::env::var_os(CACHE_DIR_ENV) {
            Some(dir) => PathBuf::from(dir).join(DEFAULT_CACHE),
            None => PathBuf::from(DEFAULT_CACHE),
        },
    }
}

fn parse_triple(s: &str) -> Result<[Rat; 3], String> {
    let parts: Vec<_> = s.split(',').collect();
    if parts.len() != 3 {
        return Err(format!("expected three comma-separated values, got {s:?}"));
    }
    let mut out = [rat_int(1), rat_int(1), rat_int(1)];
    for (slot, p) in out.iter_mut().zip(parts) {
        *slot = rat_from_str(p.trim()).ok_or_else(|| format!("bad rational {p:?}"))?;
    }
    Ok(out)
}

fn parse_pair(s: &str) -> Result<(u32, u32), String> {
    let parts: Vec<_> = s.split(',').collect();
    if parts.len() != 2 {
        return Err(format!("expected n1,n2, got {s:?}"));
    }
    let a = parts[0].trim().parse().map_err(|e| format!("{e}"))?;
    let b = parts[1].trim().parse().map_err(|e| format!("{e}"))?;
    Ok((a, b))
}

fn load_engine(path: &std::path::Path, threads: usize) -> Result<Engine, String> {
    if path.exists() {
        let file = zhodge::cache::load(path).map_err(|e| e.to_string())?;
        Engine::from_cache_file(&file, threads).map_err(|e| e.to_string())
    } else {
        Ok(Engine::new(threads))
    }
}

fn run() -> Result<(), (u8, String)> {
    let cli = Cli::parse();
    match cli.command {
        Command::Compute {
            max_insertions,
            cache,
            threads,
        } => {
            if max_insertions < 3 {
                return Err((2, "--max-insertions must be at least 3".into()));
            }
            let path = cache_path(cache);
            let mut engine = load_engine(&path, threads).map_err(|e| (1, e))?;
            engine.compute(max_insertions).map_err(|e| (1, e.to_string()))?;
            zhodge::cache::save(&path, &engine.to_cache_file())
                .map_err(|e| (1, e.to_string()))?;
            println!(
                "computed {} invariants (levels 1..={}) -> {}",
                engine.inv.len(),
                engine.solved_level,
                path.display()
            );
            Ok(())
        }
        Command::Verify { cache } => {
            let path = cache_path(cache);
            if !path.exists() {
                println!("warning: no cache at {}; nothing to verify", path.display());
                return Ok(());
            }
            let file = zhodge::cache::load(&path).map_err(|e| (1, e.to_string()))?;
            let engine = Engine::from_cache_file(&file, 1).map_err(|e| (1, e.to_string()))?;
            let report = engine.verify();
            print!("{}", report.render());
            if report.ok() {
                Ok(())
            } else {
                Err((1, "verification failed".into()))
            }
        }
        Command::Hodge {
            space,
            lambda,
            cache,
        } => {
            let (n1, n2) = parse_pair(&space).map_err(|e| (2, e))?;
            if !zhodge::geometry::space_nonempty(n1, n2) {
                return Err((2, format!("A({n1},{n2}) is empty (monodromy)")));
            }
            if (n1 as i64) + (n2 as i64) < 3 {
                return Err((2, format!("A({n1},{n2}) carries no integrals")));
            }
            let path = cache_path(cache);
            let mut engine = load_engine(&path, 1).map_err(|e| (1, e))?;
            if engine.inv.get_primary(n1, n2).is_none() {
                engine.compute(n1 + n2).map_err(|e| (1, e.to_string()))?;
            }
            let classes = zhodge::assembler::hodge_from_invariant(&engine.inv, n1, n2)
                .map_err(|e| (1, e.to_string()))?;
            let wanted: Option<Vec<u32>> = match lambda {
                None => None,
                Some(s) => {
                    let parts: Result<Vec<u32>, _> =
                        s.split(',').map(|p| p.trim().parse()).collect();
                    Some(parts.map_err(|e| (2, format!("bad --lambda: {e}")))?)
                }
            };
            for (part, value) in classes {
                if let Some(w) = &wanted {
                    let mut ww = w.clone();
                    ww.sort_unstable();
                    if ww.iter().map(|x| *x as i64).collect::<Vec<_>>() != part.to_vec() {
                        continue;
                    }
                }
                println!(
                    "A({n1},{n2}) lam_{} lam_{} lam_{} = {}",
                    part[0],
                    part[1],
                    part[2],
                    rat_to_string(&value)
                );
            }
            Ok(())
        }
        Command::Export {
            format,
            t,
            out,
            cache,
        } => {
            let path = cache_path(cache);
            if !path.exists() {
                return Err((1, format!("no cache at {}", path.display())));
            }
            let file = zhodge::cache::load(&path).map_err(|e| (1, e.to_string()))?;
            let engine = Engine::from_cache_file(&file, 1).map_err(|e| (1, e.to_string()))?;
            let t = match t {
                None => None,
                Some(s) => Some(parse_triple(&s).map_err(|e| (2, e))?),
            };
            let text = match format.as_str() {
                "csv" => {
                    let ones = [rat_int(1), rat_int(1), rat_int(1)];
                    engine.export_csv(t.as_ref().unwrap_or(&ones))
                }
                "json" => engine.export_json(t.as_ref()),
                _ => unreachable!("clap restricts the formats"),
            };
            match out {
                Some(p) => std::fs::write(&p, text).map_err(|e| (1, e.to_string()))?,
                None => print!("{text}"),
            }
            Ok(())
        }
        Command::PdeCheck { order, threads } => {
            let mut engine = Engine::new(threads);
            // x-order M touches levels up to floor((M+2)/3) = ceil(M/3)
            let level = order.div_ceil(3);
            engine
                .solve_through_levels(level)
                .map_err(|e| (1, e.to_string()))?;
            engine
                .compute(order.max(3))
                .map_err(|e| (1, e.to_string()))?;
            let bad = zhodge::pde::residual_failures(&engine.hodge, order as usize);
            for id in zhodge::pde::ALL_PDES {
                let fails: Vec<_> = bad.iter().filter(|(b, ..)| *b == id).collect();
                if fails.is_empty() {
                    println!("PASS {}: residual 0 to x-order {order}", id.name());
                } else {
                    println!("FAIL {}: {} nonzero coefficients", id.name(), fails.len());
                }
            }
            let wdvv_bad =
                zhodge::invariants::wdvv_failures(&engine.inv, engine.max_insertions);
            if wdvv_bad.is_empty() {
                println!(
                    "PASS wdvv: residual 0 over all sites to {} insertions",
                    engine.max_insertions
                );
            } else {
                println!("FAIL wdvv: {} nonzero sites", wdvv_bad.len());
            }
            if bad.is_empty() && wdvv_bad.is_empty() {
                Ok(())
            } else {
                Err((1, "pde-check failed".into()))
            }
        }
    }
}

fn main() -> ExitCode {
    match run() {
        Ok(()) => ExitCode::SUCCESS,
        Err((code, msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(code)
        }
    }
}
