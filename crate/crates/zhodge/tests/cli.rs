//! End-to-end checks of the command-line surface: compute/verify round trip,
//! export formats, the hodge query, tamper detection, and exit codes.

use std::path::PathBuf;
use std::process::Command;

fn bin() -> &'static str {
    env!("CARGO_BIN_EXE_zhodge")
}

fn tmpdir(tag: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("zhodge-cli-{tag}-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir
}

#[test]
fn compute_verify_export_cycle() {
    let dir = tmpdir("cycle");
    let cache = dir.join("cache.json");

    let out = Command::new(bin())
        .args(["compute", "--max-insertions", "9", "--cache"])
        .arg(&cache)
        .output()
        .unwrap();
    assert!(out.status.success());

    // idempotent recompute over the existing cache
    let out = Command::new(bin())
        .args(["compute", "--max-insertions", "9", "--cache"])
        .arg(&cache)
        .output()
        .unwrap();
    assert!(out.status.success());

    let out = Command::new(bin())
        .args(["verify", "--cache"])
        .arg(&cache)
        .output()
        .unwrap();
    assert!(out.status.success());
    let text = String::from_utf8_lossy(&out.stdout).to_string();
    assert!(text.contains("PASS golden-table"), "{text}");

    // compute -> export -> import -> verify is a fixed point
    let export = dir.join("export.json");
    let out = Command::new(bin())
        .args(["export", "--format", "json", "--cache"])
        .arg(&cache)
        .arg("--out")
        .arg(&export)
        .output()
        .unwrap();
    assert!(out.status.success());
    let original = std::fs::read_to_string(&cache).unwrap();
    let exported = std::fs::read_to_string(&export).unwrap();
    assert_eq!(original, exported, "json export is the cache document");
    let out = Command::new(bin())
        .args(["verify", "--cache"])
        .arg(&export)
        .output()
        .unwrap();
    assert!(out.status.success());

    // csv at t = 1 reproduces the table layout
    let out = Command::new(bin())
        .args(["export", "--format", "csv", "--t", "1,1,1", "--cache"])
        .arg(&cache)
        .output()
        .unwrap();
    assert!(out.status.success());
    let csv = String::from_utf8_lossy(&out.stdout).to_string();
    let row9: Vec<&str> = csv
        .lines()
        .find(|l| l.starts_with("9,"))
        .expect("row 9 present")
        .split(',')
        .collect();
    assert_eq!(&row9[1..5], &["1/9", "398/243", "1274/243", "686/81"]);

    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn hodge_query() {
    let dir = tmpdir("hodge");
    let cache = dir.join("cache.json");
    let out = Command::new(bin())
        .args(["compute", "--max-insertions", "6", "--cache"])
        .arg(&cache)
        .output()
        .unwrap();
    assert!(out.status.success());

    let out = Command::new(bin())
        .args(["hodge", "--space", "6,0", "--cache"])
        .arg(&cache)
        .output()
        .unwrap();
    assert!(out.status.success());
    let text = String::from_utf8_lossy(&out.stdout).to_string();
    assert!(text.contains("lam_1 lam_1 lam_1 = 1/27"), "{text}");

    // a specific lambda triple on a space with omega-bar points
    let out = Command::new(bin())
        .args(["hodge", "--space", "2,2", "--lambda", "0,0,1", "--cache"])
        .arg(&cache)
        .output()
        .unwrap();
    assert!(out.status.success());
    let text = String::from_utf8_lossy(&out.stdout).to_string();
    assert!(text.trim().ends_with("= 1/9"), "{text}");

    std::fs::remove_dir_all(&dir).ok();
}

/// A cache with one value nudged by 1/10^6 must fail verification with the
/// offending key named.
#[test]
fn tampered_cache_fails() {
    let dir = tmpdir("tamper");
    let cache = dir.join("cache.json");
    let out = Command::new(bin())
        .args(["compute", "--max-insertions", "6", "--cache"])
        .arg(&cache)
        .output()
        .unwrap();
    assert!(out.status.success());

    let mut file = zhodge::cache::load(&cache).unwrap();
    let slot = file
        .invariants
        .iter_mut()
        .find(|e| e.n0 == 0 && e.n1 == 6 && e.n2 == 0)
        .expect("<w^6> cached");
    let old = zhodge::rat::rat_from_str(&slot.poly[0].c).unwrap();
    slot.poly[0].c =
        zhodge::rat::rat_to_string(&(old + zhodge::rat::rat(1, 1_000_000)));
    zhodge::cache::save(&cache, &file).unwrap();

    let out = Command::new(bin())
        .args(["verify", "--cache"])
        .arg(&cache)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1), "exit code 1 on mismatch");
    let text = String::from_utf8_lossy(&out.stdout).to_string();
    assert!(
        text.contains("w^6"),
        "failure must name the perturbed key: {text}"
    );
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn missing_cache_verify_is_vacuous() {
    let dir = tmpdir("vacuous");
    let out = Command::new(bin())
        .args(["verify", "--cache"])
        .arg(dir.join("absent.json"))
        .output()
        .unwrap();
    assert!(out.status.success());
    let text = String::from_utf8_lossy(&out.stdout).to_string();
    assert!(text.contains("warning"), "{text}");
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn usage_errors_exit_2() {
    let out = Command::new(bin())
        .args(["compute", "--max-insertions", "2"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));

    let out = Command::new(bin())
        .args(["hodge", "--space", "1,0"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn pde_check_runs() {
    let out = Command::new(bin())
        .args(["pde-check", "--order", "8"])
        .output()
        .unwrap();
    assert!(out.status.success());
    let text = String::from_utf8_lossy(&out.stdout).to_string();
    assert!(text.contains("PASS psi-removal-d"), "{text}");
    assert!(text.contains("PASS wdvv"), "{text}");
}

/// The cache-dir environment override is honored.
#[test]
fn cache_dir_env() {
    let dir = tmpdir("envdir");
    let out = Command::new(bin())
        .args(["compute", "--max-insertions", "4"])
        .env("ZHODGE_CACHE_DIR", &dir)
        .output()
        .unwrap();
    assert!(out.status.success());
    assert!(dir.join("zhodge-cache.json").exists());
    std::fs::remove_dir_all(&dir).ok();
}

/// The smallest computation: a three-insertion cache holds exactly the four
/// seed invariants.
#[test]
fn minimal_cache_holds_seeds() {
    let dir = tmpdir("seeds");
    let cache = dir.join("cache.json");
    let out = Command::new(bin())
        .args(["compute", "--max-insertions", "3", "--cache"])
        .arg(&cache)
        .output()
        .unwrap();
    assert!(out.status.success());
    let file = zhodge::cache::load(&cache).unwrap();
    assert_eq!(file.invariants.len(), 4);
    assert_eq!(file.solved_level, 0);
    // the omega-bar seed space answers hodge queries too
    let out = Command::new(bin())
        .args(["hodge", "--space", "0,3", "--cache"])
        .arg(&cache)
        .output()
        .unwrap();
    assert!(out.status.success());
    let text = String::from_utf8_lossy(&out.stdout).to_string();
    assert!(text.contains("lam_0 lam_0 lam_0 = 1/3"), "{text}");
    std::fs::remove_dir_all(&dir).ok();
}

/// Specialized JSON export and thread-count determinism of the cache bytes.
#[test]
fn specialized_export_and_threads() {
    let dir = tmpdir("spec-export");
    let one = dir.join("one.json");
    let four = dir.join("four.json");
    for (cache, threads) in [(&one, "1"), (&four, "4")] {
        let out = Command::new(bin())
            .args(["compute", "--max-insertions", "10", "--threads", threads, "--cache"])
            .arg(cache)
            .output()
            .unwrap();
        assert!(out.status.success());
    }
    assert_eq!(
        std::fs::read_to_string(&one).unwrap(),
        std::fs::read_to_string(&four).unwrap(),
        "caches must be byte-identical for every thread count"
    );

    let out = Command::new(bin())
        .args(["export", "--format", "json", "--t", "1,1,1", "--cache"])
        .arg(&one)
        .output()
        .unwrap();
    assert!(out.status.success());
    let parsed: serde_json::Value =
        serde_json::from_slice(&out.stdout).expect("specialized export is json");
    let rows = parsed["invariants"].as_array().unwrap();
    let w6 = rows
        .iter()
        .find(|r| r["n1"] == 6 && r["n2"] == 0)
        .expect("<w^6> exported");
    assert_eq!(w6["value"], "-1/27");
    std::fs::remove_dir_all(&dir).ok();
}
