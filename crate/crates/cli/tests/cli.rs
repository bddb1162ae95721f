use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

use invtopos_core::action::ActionOptions;
use invtopos_core::json::{
    load_action, load_bundle, load_functor, load_semigroup, load_sheaf_action, to_pretty, ActionJson, BundleJson,
    FunctorJson, SemigroupJson, SheafActionJson,
};
use invtopos_core::semigroup::ValidateOptions;

fn invtopos(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_invtopos"))
        .args(args)
        .env_remove("INVTOPOS_SEED")
        .output()
        .expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

fn stdout_json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).unwrap_or_else(|e| panic!("stdout is not JSON ({e}): {}", String::from_utf8_lossy(&o.stdout)))
}

fn fixtures() -> (TempDir, PathBuf) {
    let dir = TempDir::new().unwrap();
    let path = dir.path().to_path_buf();
    let o = invtopos(&["fixture", "--all", "--out-dir", path.to_str().unwrap()]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    (dir, path)
}

fn arg(p: &Path) -> &str {
    p.to_str().unwrap()
}

/// Run and save stdout, returning the saved path.
fn save(dir: &Path, name: &str, args: &[&str]) -> PathBuf {
    let o = invtopos(args);
    assert_eq!(code(&o), 0, "{args:?}: {}", String::from_utf8_lossy(&o.stderr));
    let path = dir.join(name);
    std::fs::write(&path, &o.stdout).unwrap();
    path
}

fn text(path: &Path) -> String {
    std::fs::read_to_string(path).unwrap().trim_end().to_string()
}

#[test]
fn fixtures_reparse_to_the_same_bytes() {
    let (_guard, dir) = fixtures();
    for name in ["Z3", "SL3", "CH2", "CH3", "B2", "I2", "SL3+1"] {
        let p = dir.join(format!("{name}.json"));
        let s = load_semigroup(&p, ValidateOptions::default()).unwrap();
        assert_eq!(to_pretty(&SemigroupJson::from_semigroup(&s)), text(&p), "{name}");
        assert_eq!(code(&invtopos(&["validate", arg(&p)])), 0);
    }
    for name in ["ex33-action", "b2-natural-action", "i2-natural-action", "2z3-action"] {
        let p = dir.join(format!("{name}.json"));
        let a = load_action(&p, ActionOptions::default()).unwrap();
        assert_eq!(to_pretty(&ActionJson::from_action(&a)), text(&p), "{name}");
    }
    for name in ["bundle-z3-sierpinski", "bundle-b2-collapse-sierpinski", "bundle-z3-twisted-sierpinski"] {
        let p = dir.join(format!("{name}.json"));
        assert_eq!(to_pretty(&BundleJson::from_bundle(&load_bundle(&p).unwrap())), text(&p), "{name}");
    }
    let p = dir.join("sheaf-swapped-b2.json");
    assert_eq!(to_pretty(&SheafActionJson::from_sheaf_action(&load_sheaf_action(&p).unwrap())), text(&p));
}

#[test]
fn i2_fixture_has_seven_elements() {
    let o = invtopos(&["fixture", "I2"]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout_json(&o)["elements"].as_array().unwrap().len(), 7);
}

#[test]
fn emitted_json_parses_back() {
    let (_guard, dir) = fixtures();
    let phi = save(&dir, "phi.json", &["equiv", "phi", arg(&dir.join("ex33-action.json"))]);
    let f = load_functor(&phi, None).unwrap();
    assert_eq!(to_pretty(&FunctorJson::from_functor(&f)), text(&phi));

    let psi = save(&dir, "psi.json", &["equiv", "psi", arg(&phi)]);
    let a = load_action(&psi, ActionOptions::default()).unwrap();
    assert_eq!(a.len(), 3);
    assert_eq!(to_pretty(&ActionJson::from_action(&a)), text(&psi));

    let tau = save(&dir, "tau.json", &["bundle", "tau", arg(&dir.join("bundle-z3-twisted-sierpinski.json"))]);
    let sa = load_sheaf_action(&tau).unwrap();
    assert_eq!(to_pretty(&SheafActionJson::from_sheaf_action(&sa)), text(&tau));

    let rho = save(&dir, "rho.json", &["bundle", "rho", arg(&tau)]);
    let b = load_bundle(&rho).unwrap();
    assert_eq!(to_pretty(&BundleJson::from_bundle(&b)), text(&rho));
    assert_eq!(code(&invtopos(&["bundle", "check", arg(&rho)])), 0);
}

#[test]
fn input_errors_exit_2() {
    let dir = TempDir::new().unwrap();
    let o = invtopos(&["validate", arg(&dir.path().join("missing.json"))]);
    assert_eq!(code(&o), 2);
    assert!(String::from_utf8_lossy(&o.stderr).contains("missing.json"));

    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, "{\"elements\": [").unwrap();
    assert_eq!(code(&invtopos(&["analyze", arg(&bad)])), 2);

    std::fs::write(&bad, r#"{"elements": ["a"], "table": [["b"]]}"#).unwrap();
    assert_eq!(code(&invtopos(&["logan", arg(&bad)])), 2);

    assert_eq!(code(&invtopos(&["fixture", "no-such-fixture"])), 2);
}

#[test]
fn non_associative_table_fails_validation() {
    let dir = TempDir::new().unwrap();
    let p = dir.path().join("s.json");
    std::fs::write(&p, r#"{"elements": ["0", "1"], "table": [["1", "0"], ["0", "0"]]}"#).unwrap();
    let o = invtopos(&["validate", arg(&p)]);
    assert_eq!(code(&o), 1);
    assert_eq!(stdout_json(&o)["valid"], false);
}

#[test]
fn non_strict_action_is_reported_with_witnesses() {
    let (_guard, dir) = fixtures();
    let p = dir.join("ex33-action.json");
    let o = invtopos(&["action", "check", arg(&p)]);
    assert_eq!(code(&o), 0);
    let r = stdout_json(&o);
    assert_eq!(r["properties"]["strict"]["holds"], false);
    assert_eq!(r["properties"]["connected"]["witness"]["point"], "2");

    let o = invtopos(&["action", "check", arg(&p), "--properties", "strict,connected"]);
    assert_eq!(code(&o), 1);
    assert_eq!(stdout_json(&o)["failing"], serde_json::json!(["strict", "connected"]));

    let o = invtopos(&["action", "check", arg(&dir.join("z3-regular-action.json")), "--properties", "strict,torsor"]);
    assert_eq!(code(&o), 0);
}

#[test]
fn meet_action_of_a_chain_is_rejected() {
    let (_guard, dir) = fixtures();
    let o = invtopos(&["action", "check", arg(&dir.join("ch3-meet-action.json"))]);
    assert_eq!(code(&o), 1);
    assert!(stdout_json(&o)["error"].as_str().unwrap().contains("injectively"));
}

#[test]
fn functor_classification() {
    let (_guard, dir) = fixtures();
    let phi = save(&dir, "phi.json", &["equiv", "phi", arg(&dir.join("2z3-action.json"))]);
    let o = invtopos(&["functor", "classify", arg(&dir.join("Z3.json")), arg(&phi)]);
    assert_eq!(code(&o), 0);
    let r = stdout_json(&o);
    assert_eq!(r["torsion_free"]["holds"], true);
    assert_eq!(r["filtered"]["holds"], false);
    assert_eq!(r["filtered"]["witness"]["kind"], "no_span");
    assert_eq!(code(&invtopos(&["flatness-spotcheck", arg(&phi)])), 1);

    let regular = save(&dir, "regular.json", &["equiv", "phi", arg(&dir.join("z3-regular-action.json"))]);
    assert_eq!(code(&invtopos(&["flatness-spotcheck", arg(&regular)])), 0);
    let o = invtopos(&["tensor", arg(&regular), arg(&regular)]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout_json(&o)["size"], 3);
}

#[test]
fn cosets_filters_and_torsors() {
    let (_guard, dir) = fixtures();
    let h = dir.join("h.json");
    std::fs::write(&h, r#"{"members": ["1"]}"#).unwrap();
    let o = invtopos(&["cosets", arg(&dir.join("Z3.json")), "--subsemigroup", arg(&h)]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout_json(&o)["cosets"].as_array().unwrap().len(), 3);

    std::fs::write(&h, r#"["1", "a"]"#).unwrap();
    assert_eq!(code(&invtopos(&["cosets", arg(&dir.join("Z3.json")), "--subsemigroup", arg(&h)])), 2);

    let o = invtopos(&["filters", arg(&dir.join("SL3.json")), "--in-e"]);
    assert_eq!(stdout_json(&o)["in_e"].as_array().unwrap().len(), 3);
    let o = invtopos(&["filters", arg(&dir.join("B2.json"))]);
    let r = stdout_json(&o);
    assert_eq!(r["in_e"].as_array().unwrap().len(), 3);
    assert_eq!(r["domains_are_filters"], true);

    for s in ["Z3", "B2", "I2"] {
        let o = invtopos(&["torsor-check", arg(&dir.join(format!("{s}.json")))]);
        assert_eq!(code(&o), 0, "{s}");
        assert_eq!(stdout_json(&o)["mismatches"], 0);
    }
    assert_eq!(code(&invtopos(&["schein", arg(&dir.join("z3-point-action.json"))])), 0);
    assert_eq!(code(&invtopos(&["schein", arg(&dir.join("ex33-action.json"))])), 1);
}

#[test]
fn logan_counts_and_dot() {
    let (_guard, dir) = fixtures();
    let dot = dir.join("l.dot");
    let o = invtopos(&["logan", arg(&dir.join("SL3.json")), "--dot", arg(&dot)]);
    assert_eq!(code(&o), 0);
    let r = stdout_json(&o);
    assert_eq!((r["object_count"].as_u64(), r["arrow_count"].as_u64()), (Some(3), Some(5)));
    let d = std::fs::read_to_string(dot).unwrap();
    assert!(d.starts_with("digraph") && d.contains("(e,g)"));
}

#[test]
fn bundle_directory_round_trip() {
    let dir = TempDir::new().unwrap();
    let names = ["bundle-z3-point", "bundle-b2-sierpinski", "bundle-z3-twisted-sierpinski", "bundle-b2-discrete2"];
    let mut args = vec!["fixture", "--out-dir", arg(dir.path())];
    args.extend(names);
    assert_eq!(code(&invtopos(&args)), 0);
    let o = invtopos(&["bundle", "roundtrip", arg(dir.path())]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stdout));
    assert_eq!(stdout_json(&o)["results"].as_array().unwrap().len(), names.len());

    assert_eq!(code(&invtopos(&["fixture", "sheaf-swapped-b2", "--out-dir", arg(dir.path())])), 0);
    assert_eq!(code(&invtopos(&["bundle", "roundtrip", arg(dir.path())])), 1);
    let o = invtopos(&["bundle", "rho", arg(&dir.path().join("sheaf-swapped-b2.json"))]);
    assert_eq!(code(&o), 1);
    assert_eq!(stdout_json(&o)["universal"], false);
}

#[test]
fn seed_comes_from_the_environment() {
    let (_guard, dir) = fixtures();
    let b2 = dir.join("B2.json");
    let run = |env: Option<&str>, extra: &[&str]| {
        let mut c = Command::new(env!("CARGO_BIN_EXE_invtopos"));
        c.args(["equiv", "roundtrip", arg(&b2), "--random", "20"]).args(extra).env_remove("INVTOPOS_SEED");
        if let Some(v) = env {
            c.env("INVTOPOS_SEED", v);
        }
        c.output().unwrap()
    };
    let a = run(Some("11"), &[]);
    assert_eq!(code(&a), 0);
    assert_eq!(stdout_json(&a)["seed"], 11);
    assert_eq!(a.stdout, run(None, &["--seed", "11"]).stdout);
    assert_eq!(stdout_json(&run(None, &[]))["seed"], 7);
}

#[test]
fn suite_passes_and_is_reproducible() {
    let o = invtopos(&["suite", "--fixtures-only"]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let r = stdout_json(&o);
    assert_eq!(r["passed"], true);
    assert_eq!(r["criteria"].as_array().unwrap().len(), 12);

    let args = ["suite", "--seed", "5", "--random", "4"];
    let (a, b) = (invtopos(&args), invtopos(&args));
    assert_eq!(code(&a), 0, "{}", String::from_utf8_lossy(&a.stderr));
    assert_eq!(a.stdout, b.stdout);
    let mut command = vec!["invtopos"];
    command.extend(args);
    assert_eq!(stdout_json(&a)["command"], serde_json::json!(command));
}
