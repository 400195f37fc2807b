use lefschetz::fixtures::{all_scenarios, build_scenario, scenario_names};
use lefschetz::fpgroups::AbelianGroup;
use lefschetz::scenario::{parse_scenarios, run_scenario, to_json, CheckStatus, RunOptions, RunReport};

fn run(name: &str) -> RunReport {
    run_scenario(&build_scenario(name).unwrap(), &RunOptions::default()).unwrap()
}

fn failing(r: &RunReport) -> Vec<&str> {
    r.checks.iter().filter(|c| c.mandatory && c.status == CheckStatus::Fail).map(|c| c.name.as_str()).collect()
}

#[test]
fn scenarios_other_than_the_x_family_pass() {
    for name in scenario_names() {
        if ["X1", "X2", "X3"].contains(&name.as_str()) {
            continue;
        }
        let r = run(&name);
        assert_eq!(r.status, CheckStatus::Pass, "{name}: {:?}", failing(&r));
        for must in ["homology_identity", "euler", "sigma_ledger", "sigma_meyer", "signature_agreement", "h1"] {
            if !name.starts_with("Z(") || !must.starts_with("sigma_") && must != "signature_agreement" {
                assert!(r.check(must).is_some(), "{name} has no {must} check");
            }
        }
    }
}

#[test]
fn x_family_h1_is_z3() {
    // Z^6 modulo alpha(L) + beta(L), L the span of the W classes, has
    // Smith divisors (1,1,1,1,1,3) by an independent SNF computation.
    for name in ["X1", "X2", "X3"] {
        let r = run(name);
        assert_eq!(failing(&r), ["h1"], "{name}");
        assert_eq!(r.pi1[0].h1, AbelianGroup { free_rank: 0, torsion: vec![3] });
        assert_eq!(r.check("pi1").unwrap().status, CheckStatus::Fail);
        assert_eq!(r.check("word_audit").unwrap().computed.as_deref(), Some("U4, U8"));
        let rep = r.report.as_ref().unwrap();
        assert_eq!((rep.b2plus, rep.b2minus), (3, rep.b2plus - rep.sigma));
        assert!(rep.label.is_none());
    }
}

#[test]
fn certified_labels() {
    let r = run("M19");
    assert_eq!(r.report.unwrap().label.as_deref(), Some("3 CP2 # 19 CP2bar"));
    for k in 1..=3 {
        let r = run(&format!("Z({k})"));
        let rep = r.report.unwrap();
        assert_eq!(rep.label, Some(format!("{} CP2 # {} CP2bar", 4 * k - 1, 4 * k + 5)));
        assert_eq!(rep.e, 6 + 8 * k);
    }
}

#[test]
fn coset_enumeration_closes_for_small_sums() {
    for k in 1..=2 {
        let r = run(&format!("X({k},{})", k + 1));
        assert_eq!(r.check("coset_enumeration").unwrap().status, CheckStatus::Pass);
    }
}

#[test]
fn reports_are_deterministic() {
    let a = serde_json::to_string(&run("M16")).unwrap();
    let b = serde_json::to_string(&run("M16")).unwrap();
    assert_eq!(a, b);
}

#[test]
fn shipped_scenario_file_matches_generator() {
    let path = concat!(env!("CARGO_MANIFEST_DIR"), "/../../scenarios/catalog.scen");
    let text = std::fs::read_to_string(path).unwrap();
    let all = all_scenarios();
    assert_eq!(text, to_json(&all));
    assert_eq!(parse_scenarios(&text).unwrap(), all);
}
