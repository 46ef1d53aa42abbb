use std::process::Command;

use lambda_qhr::cli::{dump, parse_cutoff, parse_level, CliError, DumpFormat, DumpWhat, REPORT_DIR_ENV};
use lambda_qhr::reduction::{write_atomic, Mode};

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_lambda-qhr"));
    c.env_remove(REPORT_DIR_ENV);
    c
}

fn run(args: &[&str]) -> (i32, String, String) {
    let out = bin().args(args).output().unwrap();
    (
        out.status.code().unwrap(),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

#[test]
fn cutoffs_and_levels() {
    assert_eq!(parse_cutoff("4").unwrap(), 8);
    assert_eq!(parse_cutoff("4.5").unwrap(), 9);
    assert_eq!(parse_cutoff("9/2").unwrap(), 9);
    assert_eq!(parse_cutoff("3.0").unwrap(), 6);
    for bad in ["4.25", "-1", "x", "1/3"] {
        assert!(matches!(parse_cutoff(bad), Err(CliError::Usage(_))), "{bad}");
    }
    assert!(parse_level("1/3").is_ok());
    let e = parse_level("-1/2").unwrap_err();
    assert_eq!(e.exit_code(), 2);
    assert_eq!(parse_level("one").unwrap_err().exit_code(), 2);
}

#[test]
fn dumps() {
    let sc = dump(DumpWhat::StructureConstants, DumpFormat::Text, Mode::Full).unwrap();
    assert!(sc.contains("(e_{122}|f_{122}) = 1/4"), "{sc}");
    let t = dump(DumpWhat::Targets, DumpFormat::Text, Mode::Free).unwrap();
    assert!(t.contains("[G_λ U] = (∂+4λ)W"), "{t}");
    let g = dump(DumpWhat::Generators, DumpFormat::Text, Mode::Free).unwrap();
    assert!(g.contains("printed G = "));
    let m = dump(DumpWhat::StructureConstants, DumpFormat::Machine, Mode::Full).unwrap();
    assert_eq!(m, dump(DumpWhat::StructureConstants, DumpFormat::Machine, Mode::Full).unwrap());
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["--help"]).0, 0);
    assert_eq!(run(&["verify", "nonsense"]).0, 2);
    assert_eq!(run(&["verify", "sw32", "--at-k", "-1/2"]).0, 2);
    assert_eq!(run(&["verify", "screening", "--mode", "full"]).0, 2);
    assert_eq!(run(&["verify", "liealg", "--at-k", "1"]).0, 2);
    let (code, out, _) = run(&["verify", "liealg"]);
    assert_eq!(code, 0, "{out}");
    let (code, out, _) = run(&["verify", "formulas"]);
    assert_eq!(code, 1, "{out}");
    assert!(out.contains("FAIL"));
}

#[test]
fn numeric_level_header() {
    let (code, out, _) = run(&["verify", "sw32", "--at-k", "1/3"]);
    assert_eq!(code, 0, "{out}");
    assert!(out.contains("k = 1/3, c = 12"), "{out}");
    assert!(out.contains("33/33") || !out.contains("FAIL"));
}

#[test]
fn config_and_report_dir() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("cfg.toml");
    std::fs::write(&cfg, "mode = \"free\"\nreport_dir = \"reports\"\n").unwrap();
    let reports = dir.path().join("reports");
    std::fs::create_dir(&reports).unwrap();
    let cfg_s = cfg.to_str().unwrap();

    let mut c = bin();
    c.current_dir(dir.path()).args(["--config", cfg_s, "verify", "sw32", "--format", "json"]);
    assert_eq!(c.status().unwrap().code(), Some(0));
    let first = std::fs::read(reports.join("sw32-free.json")).unwrap();
    let v: serde_json::Value = serde_json::from_slice(&first).unwrap();
    let entries = v["entries"].as_array().unwrap();
    assert!(!entries.is_empty() && entries.iter().all(|e| e["pass"] == true));

    let mut c = bin();
    c.current_dir(dir.path()).args(["--config", cfg_s, "verify", "sw32", "--format", "json"]);
    assert_eq!(c.status().unwrap().code(), Some(0));
    assert_eq!(first, std::fs::read(reports.join("sw32-free.json")).unwrap());

    let env_dir = dir.path().join("env");
    std::fs::create_dir(&env_dir).unwrap();
    let mut c = bin();
    c.current_dir(dir.path())
        .env(REPORT_DIR_ENV, &env_dir)
        .args(["--config", cfg_s, "verify", "liealg"]);
    assert_eq!(c.status().unwrap().code(), Some(0));
    assert!(env_dir.join("liealg-free.txt").exists());

    let explicit = dir.path().join("x.txt");
    let mut c = bin();
    c.env(REPORT_DIR_ENV, &env_dir)
        .args(["verify", "liealg", "--report", explicit.to_str().unwrap()]);
    assert_eq!(c.status().unwrap().code(), Some(0));
    assert!(explicit.exists());

    std::fs::write(&cfg, "colour = \"blue\"\n").unwrap();
    assert_eq!(run(&["--config", cfg_s, "verify", "liealg"]).0, 2);
    std::fs::write(&cfg, "cutoff = 4.25\n").unwrap();
    assert_eq!(run(&["--config", cfg_s, "verify", "liealg"]).0, 2);
    let missing = dir.path().join("missing.toml");
    assert_eq!(run(&["--config", missing.to_str().unwrap(), "verify", "liealg"]).0, 2);
}

#[test]
fn atomic_write_replaces() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("r.json");
    write_atomic(&p, "{\"a\":1}").unwrap();
    write_atomic(&p, "{\"a\":2}").unwrap();
    assert_eq!(std::fs::read_to_string(&p).unwrap(), "{\"a\":2}");
    let names: Vec<_> = std::fs::read_dir(dir.path()).unwrap().map(|e| e.unwrap().file_name()).collect();
    assert_eq!(names.len(), 1);
    assert!(write_atomic(&dir.path().join("no/such/dir.json"), "x").is_err());
}
