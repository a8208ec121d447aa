use std::fs;
use std::process::Command;

use clap::Parser;
use cli::{run, Cache, Mode, OutputFormat, RunConfig};
use serde_json::Value;
use sha2::{Digest, Sha256};

fn json_run(cfg: &RunConfig) -> Value {
    let mut cfg = cfg.clone();
    cfg.output = OutputFormat::Json;
    let out = run(&cfg).unwrap();
    assert!(out.passed, "{}", out.output);
    serde_json::from_str(&out.output).unwrap()
}

fn gradings(ranks: &Value) -> Vec<(i64, i64, i64)> {
    ranks
        .as_array()
        .unwrap()
        .iter()
        .map(|r| {
            (
                r["h"].as_i64().unwrap(),
                r["q"].as_i64().unwrap(),
                r["rank"].as_i64().unwrap(),
            )
        })
        .collect()
}

#[test]
fn flags_parse() {
    let cfg = RunConfig::try_parse_from([
        "skh-cli",
        "--strands",
        "3",
        "--braid",
        "S2 s1",
        "--mode",
        "pages",
        "--output",
        "json",
        "--max-pages",
        "5",
        "--jobs",
        "2",
        "--dump-level",
        "doubled",
        "--route",
        "free",
    ])
    .unwrap();
    assert_eq!(cfg.strands, 3);
    assert_eq!(cfg.braids, vec!["S2 s1"]);
    assert_eq!(cfg.mode, Mode::Pages);
    assert_eq!(cfg.max_pages, Some(5));
    assert!(RunConfig::try_parse_from(["skh-cli", "--mode", "bogus"]).is_err());
}

#[test]
fn hopf_pages_report() {
    let j = json_run(&RunConfig::new(2, "s1", Mode::Pages));
    assert_eq!(j["schema"], 1);
    assert_eq!(j["e0_generators"], 34);
    let e1 = &j["pages"][1];
    assert_eq!(e1["r"], 1);
    assert_eq!(gradings(&e1["ranks"]), vec![(0, 2, 1), (1, 4, 1), (2, 4, 1), (2, 6, 1)]);
    assert_eq!(j["stable_page"], 3);
    assert_eq!(j["pages"][2]["differential"][0][0], "(u|y10|t|1)");
    assert_eq!(j["pages"][2]["differential"][0][1], "(t|y10|t|w10)");
    assert_eq!(j["decat"]["congruent"], true);
    assert_eq!(j["skh_sigma"]["total_rank"], 2);
}

#[test]
fn empty_braid_gives_algebra_homology() {
    let j = json_run(&RunConfig::new(2, "", Mode::Skh));
    let ring = std::sync::Arc::new(quiver::KoszulPair::new(1).unwrap());
    let bar = hochschild::bar_hochschild(&bimodule::identity(&ring), None).unwrap();
    let expected: Vec<(i64, i64, i64)> = bar
        .ranks
        .iter()
        .map(|(b, &c)| (b.h as i64, b.q as i64, c as i64))
        .collect();
    assert_eq!(gradings(&j["ranks"]), expected);
}

#[test]
fn pi_formal_certificate() {
    let mut cfg = RunConfig::new(2, "", Mode::PiFormal);
    cfg.n = Some(2);
    let out = run(&cfg).unwrap();
    assert!(out.passed);
    assert!(out.output.contains("terminates at 0"), "{}", out.output);
    let j = json_run(&cfg);
    assert_eq!(j["terminated"], true);
    assert_eq!(j["steps"].as_array().unwrap().len(), 3);
}

#[test]
fn dump_lists_generators_and_differential() {
    let mut cfg = RunConfig::new(2, "s1", Mode::Dump);
    cfg.dump_level = cli::DumpLevel::Doubled;
    let j = json_run(&cfg);
    let gens = j["doubled"]["generators"].as_array().unwrap();
    assert_eq!(gens.len(), 34);
    let tau_of = |l: &str| gens.iter().find(|g| g["label"] == l).unwrap()["tau"].clone();
    assert_eq!(tau_of("(e1|w10|t|1)"), "(t|1|e1|w10)");
    cfg.dump_level = cli::DumpLevel::Algebra;
    let j = json_run(&cfg);
    assert_eq!(j["a"].as_array().unwrap().len(), 4);
}

#[test]
fn output_is_deterministic_and_batches_keep_order() {
    let mut cfg = RunConfig::new(3, "s1 S2", Mode::Pages);
    cfg.braids.push("s2 s2".into());
    cfg.braids.push("".into());
    cfg.output = OutputFormat::Json;
    let first = run(&cfg).unwrap().output;
    assert_eq!(run(&cfg).unwrap().output, first);
    cfg.jobs = 3;
    assert_eq!(run(&cfg).unwrap().output, first);
    let j: Value = serde_json::from_str(&first).unwrap();
    let braids: Vec<&str> = j["results"]
        .as_array()
        .unwrap()
        .iter()
        .map(|r| r["braid"].as_str().unwrap())
        .collect();
    assert_eq!(braids, vec!["s1 S2", "s2 s2", ""]);
}

#[test]
fn cache_is_transparent_and_survives_corruption() {
    let dir = tempfile::tempdir().unwrap();
    let mut plain = RunConfig::new(2, "s1 s1", Mode::Pages);
    plain.output = OutputFormat::Json;
    let fresh = run(&plain).unwrap();
    let mut cached = plain.clone();
    cached.cache_dir = Some(dir.path().to_path_buf());
    let miss = run(&cached).unwrap();
    let hit = run(&cached).unwrap();
    assert_eq!(miss.output, fresh.output);
    assert_eq!(hit.output, fresh.output);
    assert!(hit.warnings.is_empty());

    let cache = Cache::new(dir.path()).unwrap();
    let entry = cache.path("tate|free|2|s1 s1");
    assert!(entry.exists());
    let text = fs::read_to_string(&entry).unwrap();
    fs::write(&entry, text.replacen("[[", "[[9,", 1)).unwrap();
    let repaired = run(&cached).unwrap();
    assert_eq!(repaired.output, fresh.output);
    assert_eq!(repaired.warnings.len(), 1, "{:?}", repaired.warnings);
    assert!(repaired.warnings[0].contains("corrupt"));
    assert!(run(&cached).unwrap().warnings.is_empty());

    fs::write(&entry, "garbage").unwrap();
    assert_eq!(run(&cached).unwrap().output, fresh.output);

    // A well-formed entry whose complex no longer squares to zero.
    let text = fs::read_to_string(&entry).unwrap();
    let mut payload: Value = serde_json::from_str(text.split_once('\n').unwrap().1).unwrap();
    let images = payload["images"].as_array_mut().unwrap();
    let g = images.iter().position(|im| im.as_array().unwrap().is_empty()).unwrap();
    images[g] = serde_json::json!([g]);
    let payload = serde_json::to_string(&payload).unwrap();
    let digest: String = Sha256::digest(payload.as_bytes())
        .iter()
        .map(|b| format!("{b:02x}"))
        .collect();
    fs::write(&entry, format!("{digest}\n{payload}")).unwrap();
    let repaired = run(&cached).unwrap();
    assert_eq!(repaired.output, fresh.output);
    assert_eq!(repaired.warnings.len(), 1, "{:?}", repaired.warnings);
}

#[test]
fn binary_exit_status_and_cache_env() {
    let bin = env!("CARGO_BIN_EXE_skh-cli");
    let ok = Command::new(bin)
        .args(["--strands", "2", "--braid", "s1 s1"])
        .output()
        .unwrap();
    assert!(ok.status.success());
    assert!(String::from_utf8_lossy(&ok.stdout).contains("q^2 + t^1 q^4 + t^2 q^4 + t^2 q^6"));

    let bad = Command::new(bin)
        .args(["--strands", "2", "--braid", "s9"])
        .output()
        .unwrap();
    assert_eq!(bad.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&bad.stderr).contains("s9"));

    let dir = tempfile::tempdir().unwrap();
    let run_env = || {
        Command::new(bin)
            .args(["--braid", "s1", "--mode", "pages", "--output", "json"])
            .env("SKH_CACHE_DIR", dir.path())
            .output()
            .unwrap()
    };
    let a = run_env();
    assert!(a.status.success());
    assert!(fs::read_dir(dir.path()).unwrap().count() >= 2);
    assert_eq!(run_env().stdout, a.stdout);
}
