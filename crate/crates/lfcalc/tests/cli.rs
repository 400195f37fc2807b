use std::io::Write;
use std::process::{Command, Output};

const CATALOG: &str = concat!(env!("CARGO_MANIFEST_DIR"), "/../../scenarios/catalog.scen");

fn lfcalc(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_lfcalc")).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

#[test]
fn export_reproduces_the_shipped_catalog() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("out.scen");
    let o = lfcalc(&["export", path.to_str().unwrap()]);
    assert!(o.status.success(), "{}", stderr(&o));
    assert_eq!(std::fs::read_to_string(path).unwrap(), std::fs::read_to_string(CATALOG).unwrap());
}

#[test]
fn verify_exit_codes() {
    let ok = lfcalc(&["verify", CATALOG, "-s", "M19", "-s", "Z(1)"]);
    assert_eq!(ok.status.code(), Some(0), "{}", stdout(&ok));
    assert!(stdout(&ok).contains("2 passed, 0 failed"));

    let red = lfcalc(&["verify", CATALOG, "-s", "X1"]);
    assert_eq!(red.status.code(), Some(1));
    assert!(stdout(&red).contains("h1: expected 0, computed Z/3"));

    let missing = lfcalc(&["verify", CATALOG, "-s", "nope"]);
    assert_eq!(missing.status.code(), Some(2));
    assert!(stderr(&missing).contains("no scenario named `nope`"));
}

#[test]
fn parse_errors_carry_a_position() {
    let mut f = tempfile::NamedTempFile::new().unwrap();
    writeln!(f, "{{\"scenarios\": [\n  {{\"name\": 3}}\n]}}").unwrap();
    let o = lfcalc(&["verify", f.path().to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("line 2 column"), "{}", stderr(&o));

    let o = lfcalc(&["verify", "/definitely/not/here.scen"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn report_json_has_the_documented_keys() {
    let o = lfcalc(&["report", CATALOG, "-s", "M16"]);
    assert!(o.status.success(), "{}", stderr(&o));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let mut keys: Vec<&str> = v.as_object().unwrap().keys().map(String::as_str).collect();
    keys.sort();
    assert_eq!(keys, ["b1", "b2minus", "b2plus", "c1sq", "caveats", "e", "h1", "label", "minimality", "sigma"]);
    assert_eq!(v["e"], 21);
    assert_eq!(v["sigma"], -13);
    assert_eq!(v["label"], "3 CP2 # 16 CP2bar");
}

#[test]
fn report_table_and_pi1() {
    let o = lfcalc(&["report", CATALOG, "-s", "X", "--format", "table"]);
    assert!(o.status.success());
    assert!(stdout(&o).lines().any(|l| l.split_whitespace().collect::<Vec<_>>() == ["h1", "Z^2"]));

    let o = lfcalc(&["pi1", CATALOG, "-s", "Z(1)"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("H1           0"));
}

#[test]
fn parallel_verify_matches_serial() {
    let args = ["verify", CATALOG, "-s", "X", "-s", "M18", "-s", "X(1,2)", "-s", "Matsumoto(3)", "--format", "json"];
    let serial = lfcalc(&args);
    let mut par_args = args.to_vec();
    par_args.extend(["--jobs", "4"]);
    let parallel = lfcalc(&par_args);
    assert_eq!(stdout(&serial), stdout(&parallel));
}

#[test]
fn meyer_self_test_is_seeded() {
    let run = |seed: &str| {
        Command::new(env!("CARGO_BIN_EXE_lfcalc")).args(["meyer", "--self-test", "200"]).env("LF_SEED", seed).output().unwrap()
    };
    let a = run("7");
    assert!(a.status.success());
    assert_eq!(stdout(&a), stdout(&run("7")));
    assert!(stdout(&a).starts_with("seed 7: 200 triples, 0 identity, 0 cocycle, 0 bound violations"));
    assert_eq!(run("seven").status.code(), Some(2));
}
