use crislat::report::ReportDocument;
use serde_json::Value;
use std::path::PathBuf;
use std::process::{Command, Output};

fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(name)
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_crislat")).args(args).output().expect("binary runs")
}

fn report(o: &Output) -> ReportDocument {
    serde_json::from_slice(&o.stdout).unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&o.stdout)))
}

fn stderr_json(o: &Output) -> Value {
    serde_json::from_slice(&o.stderr).unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&o.stderr)))
}

/// Exit status 0 exactly when every check passed, 1 otherwise.
fn exit_matches_checks(o: &Output, r: &ReportDocument) {
    let code = o.status.code().unwrap();
    assert_eq!(code == 0, r.failed().is_empty(), "exit {code}, failed {:?}", r.failed());
    if code != 0 {
        assert_eq!(code, 1);
        let d = stderr_json(o);
        assert_eq!(d["status"], "failed");
        assert_eq!(d["violated"].as_array().unwrap().len(), r.failed().len());
    }
}

#[test]
fn zeta_of_elliptic_curve() {
    let f = fixture("elliptic_f5.json");
    let o = run(&["zeta", "--spec", f.to_str().unwrap(), "--max-ext", "2"]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let z = report(&o).zeta.unwrap();
    assert_eq!(z.counts, vec![9, 27]);
    assert_eq!(z.numerator_text.as_deref(), Some("1 + 3T + 5T^2"));
    assert_eq!(z.newton_polygon, Some(vec![(0, 0), (1, 0), (2, 1)]));
}

#[test]
fn zeta_is_thread_independent() {
    let f = fixture("klein_quartic_f5.json");
    let a = run(&["zeta", "--spec", f.to_str().unwrap(), "--threads", "1"]);
    let b = run(&["zeta", "--spec", f.to_str().unwrap(), "--threads", "5"]);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let z = report(&a).zeta.unwrap();
    assert_eq!(z.counts.len(), 3);
    assert_eq!(z.numerator.unwrap().len(), 7);
}

#[test]
fn k_below_bound_is_rejected() {
    let f = fixture("golden_curve.json");
    let o = run(&["lattice-basis", "--spec", f.to_str().unwrap(), "--k", "11"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(o.stdout.is_empty());
    assert_eq!(stderr_json(&o)["kind"], "KBelowBound");
}

#[test]
fn lattice_basis_report_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("r.json");
    let f = fixture("elliptic_f5.json");
    let o = run(&["lattice-basis", "--spec", f.to_str().unwrap(), "--out", out.to_str().unwrap()]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    assert!(o.stdout.is_empty());
    let text = std::fs::read_to_string(&out).unwrap();
    let r: ReportDocument = serde_json::from_str(&text).unwrap();
    assert_eq!(r.to_json(), text);
    let hodge = r.hodge.as_ref().unwrap();
    let b = r.basis.as_ref().unwrap();
    assert_eq!(b.rank as u64, hodge.pair.iter().sum::<u64>());
    assert_eq!(b.to_basis().unwrap().rank(), b.rank);
    // the echo reproduces the run
    let echo = dir.path().join("echo.json");
    std::fs::write(&echo, r.input.as_ref().unwrap().to_json()).unwrap();
    let again = run(&["lattice-basis", "--spec", echo.to_str().unwrap()]);
    assert_eq!(again.stdout, text.as_bytes());
}

#[test]
fn precision_plans() {
    let f = fixture("golden_curve.json");
    let o = run(&["precision-plan", "--spec", f.to_str().unwrap()]);
    assert!(o.status.success());
    let r = report(&o);
    assert_eq!(r.plan.as_ref().unwrap().tau, 1);
    assert_eq!(r.hodge.as_ref().unwrap().polygon, vec![(0, 0), (15, 0), (36, 21)]);

    let f = fixture("golden_surface.json");
    let r = report(&run(&["precision-plan", "--spec", f.to_str().unwrap()]));
    assert_eq!(r.k.as_ref().unwrap().chosen, 53);
    assert_eq!(r.plan.as_ref().unwrap().tau, 2);

    let o = run(&["precision-plan", "--spec", f.to_str().unwrap(), "--q", "121"]);
    assert!(report(&o).plan.unwrap().p_power_only);
}

#[test]
fn genus_zero_plan_sits_on_the_floor() {
    let dir = tempfile::tempdir().unwrap();
    let spec = dir.path().join("conic.json");
    std::fs::write(&spec, r#"{"p":5,"n":1,"d":2,"terms":[[[2,0,0],1],[[0,2,0],1],[[0,0,2],1]]}"#).unwrap();
    let r = report(&run(&["precision-plan", "--spec", spec.to_str().unwrap()]));
    let plan = r.plan.unwrap();
    assert_eq!(plan.n_f, plan.floor);
}

#[test]
fn input_errors_exit_two() {
    let o = run(&["lattice-basis"]);
    assert_eq!(o.status.code(), Some(2));
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, "{ not json").unwrap();
    let o = run(&["zeta", "--spec", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert_eq!(stderr_json(&o)["status"], "error");
    let o = run(&["loss-harness", "--shape", "1,1"]);
    assert_eq!(o.status.code(), Some(2));
    assert_eq!(stderr_json(&o)["kind"], "InvalidShape");
}

#[test]
fn budget_is_enforced() {
    let f = fixture("golden_curve.json");
    let o = run(&["zeta", "--spec", f.to_str().unwrap(), "--max-ext", "2", "--budget", "100"]);
    assert_eq!(o.status.code(), Some(2));
    assert_eq!(stderr_json(&o)["kind"], "BudgetExceeded");
}

#[test]
fn loss_harness_is_deterministic() {
    let args = ["loss-harness", "--shape", "1,2,1|1,1", "--precision", "6", "--p", "3", "--trials", "40"];
    let a = run(&[&args[..], &["--threads", "1"]].concat());
    let b = run(&[&args[..], &["--threads", "3"]].concat());
    assert_eq!(a.stdout, b.stdout);
    let r = report(&a);
    assert_eq!(r.harness.len(), 1);
    assert_eq!(r.harness[0].trials, 40);
    exit_matches_checks(&a, &r);
}

#[test]
fn verify_examples_reports_every_check() {
    let o = run(&["verify-examples"]);
    let r = report(&o);
    exit_matches_checks(&o, &r);
    assert_eq!(r.examples.len(), 2);
    for (ex, rank) in r.examples.iter().zip([36, 34]) {
        assert_eq!(ex.rank, rank);
        assert_eq!(ex.divisors.as_ref().unwrap().len(), rank);
    }
    for name in ["curve: minimal k", "curve: tau and polygon", "surface: tau", "elliptic curve zeta"] {
        assert!(r.checks.iter().any(|c| c.name == name && c.pass), "{name}");
    }
}
