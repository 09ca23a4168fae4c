use std::process::Command;

use twolog::certificate::{BoundPath, CertificateRecord};
use twolog::cli::{run, ComparisonRecord, ReplayRecord, EXIT_ERROR, EXIT_OK, EXIT_REJECTED, EXIT_UNCERTIFIED};

fn twolog(args: &[&str]) -> (i32, String, String) {
    run(std::iter::once("twolog").chain(args.iter().copied()))
}

const ALPHA: [&str; 4] = ["--minpoly", "5,-6,5", "--root", "0.6,0.8"];

fn bound_args<'a>(b1: &'a str, b2: &'a str, extra: &[&'a str]) -> Vec<&'a str> {
    let mut v = vec!["bound"];
    v.extend(ALPHA);
    v.extend(["--b1", b1, "--b2", b2]);
    v.extend(extra);
    v
}

#[test]
fn unit_coefficients_give_a_liouville_json_certificate() {
    let (code, out, err) = twolog(&bound_args("1", "1", &["--format", "json"]));
    assert_eq!(code, EXIT_OK, "{err}");
    let rec = CertificateRecord::from_json(&out).unwrap();
    assert_eq!(rec.schema, "v1");
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["path"], "liouville");
    assert_eq!(v["status"], "verified");
    let lo: f64 = rec.bound.unwrap().lo.parse().unwrap();
    assert!((lo + 24052.0755).abs() < 1e-3, "{lo}");
}

#[test]
fn zero_is_not_unit_modulus() {
    let (code, out, err) = twolog(&["bound", "--minpoly", "0,1"]);
    assert_eq!(code, EXIT_REJECTED);
    assert!(out.is_empty());
    assert!(err.contains("not unit-modulus"), "{err}");
}

#[test]
fn paper_suite_reports_the_chain_discrepancies() {
    let (code, out, err) = twolog(&["replay", "--paper-suite", "--format", "json"]);
    let rec: ReplayRecord = serde_json::from_str(&out).unwrap();
    assert_eq!(rec.points.len(), 15);
    // the failing chain steps are reported and flagged, so the exit is 3
    assert_eq!(code, EXIT_UNCERTIFIED);
    assert!(!rec.all_verified);
    assert!(err.contains("kl_range"), "{err}");
    for p in &rec.points {
        for (name, c) in &p.checks {
            if !c.status.is_verified() {
                assert!(c.discrepancy, "{}: {name}", p.label);
            }
        }
        for name in ["f1_at_600", "epsilon_below_0.004", "theta1_above_0.004", "final_2.7704"] {
            assert!(p.checks[name].status.is_verified(), "{}: {name}", p.label);
        }
    }
}

#[test]
fn json_round_trip_is_byte_identical() {
    for args in [bound_args("1", "1", &["--format", "json"]), bound_args("1000000000", "1000000001", &["--format", "json"])] {
        let (code, out, _) = twolog(&args);
        assert_eq!(code, EXIT_OK);
        let again = CertificateRecord::from_json(&out).unwrap().to_json() + "\n";
        assert_eq!(again, out);
    }
    let (_, out, _) = twolog(&["replay", "--paper-suite", "--format", "json"]);
    let rec: ReplayRecord = serde_json::from_str(&out).unwrap();
    assert_eq!(serde_json::to_string_pretty(&rec).unwrap() + "\n", out);
}

#[test]
fn text_and_json_carry_the_same_numbers() {
    for (b1, b2) in [("1", "1"), ("1000000000", "1000000001")] {
        let (_, json, _) = twolog(&bound_args(b1, b2, &["--format", "json", "--digits", "20"]));
        let (_, text, _) = twolog(&bound_args(b1, b2, &["--digits", "20"]));
        let rec = CertificateRecord::from_json(&json).unwrap();
        assert_eq!(rec.to_text(), text);
        let bound = rec.bound.unwrap();
        assert!(text.contains(&format!("bound: [{}, {}]", bound.lo, bound.hi)));
        for (name, c) in rec.checks.iter().chain(&rec.replay) {
            assert!(text.contains(&format!("{name}: {} margin [{}, {}]", c.status, c.margin_lo, c.margin_hi)), "{name}");
        }
    }
}

#[test]
fn digits_control_endpoint_length() {
    let (_, short, _) = twolog(&bound_args("1", "1", &["--format", "json", "--digits", "6"]));
    let (_, long, _) = twolog(&bound_args("1", "1", &["--format", "json", "--digits", "30"]));
    let (s, l) = (CertificateRecord::from_json(&short).unwrap(), CertificateRecord::from_json(&long).unwrap());
    let (sb, lb) = (s.bound.unwrap(), l.bound.unwrap());
    assert!(sb.lo.len() < lb.lo.len());
    // the short enclosure contains the long one
    let f = |x: &str| x.parse::<f64>().unwrap();
    assert!(f(&sb.lo) <= f(&lb.lo) && f(&lb.hi) <= f(&sb.hi));
}

#[test]
fn precision_flag_and_environment() {
    let (_, out, _) = twolog(&bound_args("1", "1", &["--format", "json", "--precision-bits", "200"]));
    assert_eq!(CertificateRecord::from_json(&out).unwrap().precision_bits, 200);

    let bin = env!("CARGO_BIN_EXE_twolog");
    let o =
        Command::new(bin).args(bound_args("1", "1", &["--format", "json"])).env("TWOLOG_PRECISION_BITS", "192").output().unwrap();
    assert_eq!(o.status.code(), Some(EXIT_OK));
    let rec = CertificateRecord::from_json(std::str::from_utf8(&o.stdout).unwrap()).unwrap();
    assert_eq!(rec.precision_bits, 192);

    let o = Command::new(bin).args(bound_args("1", "1", &[])).env("TWOLOG_PRECISION_BITS", "4").output().unwrap();
    assert_eq!(o.status.code(), Some(EXIT_ERROR));
}

#[test]
fn binary_exit_codes_match_run() {
    let bin = env!("CARGO_BIN_EXE_twolog");
    let o = Command::new(bin).args(["bound", "--minpoly", "0,1"]).output().unwrap();
    assert_eq!(o.status.code(), Some(EXIT_REJECTED));
    assert!(String::from_utf8_lossy(&o.stderr).contains("not unit-modulus"));
}

#[test]
fn ambiguous_hint_lists_candidates() {
    let (code, _, err) = twolog(&["bound", "--minpoly", "5,-6,5", "--root", "0.6,0", "--b1", "1", "--b2", "1"]);
    assert_eq!(code, EXIT_REJECTED);
    assert!(err.contains("0.6") && err.lines().count() >= 1, "{err}");
}

#[test]
fn reducible_polynomial_is_rejected_unless_trusted() {
    let base = ["bound", "--minpoly", "-2,1,-2,1", "--root", "0,1", "--b1", "1", "--b2", "1"];
    let (code, _, err) = twolog(&base);
    assert_eq!(code, EXIT_REJECTED, "{err}");
    let mut trusted = base.to_vec();
    trusted.push("--trusted");
    // accepted as given, the cubic has the conjugate 2 off the unit circle
    let (code, _, err) = twolog(&trusted);
    assert_eq!(code, EXIT_REJECTED);
    assert!(!err.contains("reducible"), "{err}");
}

#[test]
fn parse_errors_exit_one() {
    assert_eq!(twolog(&["bound", "--minpoly", "5,x,5", "--root", "0.6,0.8", "--b1", "1", "--b2", "1"]).0, EXIT_ERROR);
    assert_eq!(twolog(&["bound", "--minpoly", "5,-6,5", "--root", "0.6,0.8", "--b1", "one", "--b2", "1"]).0, EXIT_ERROR);
    assert_eq!(twolog(&["frobnicate"]).0, EXIT_ERROR);
    assert_eq!(twolog(&["bound", "--minpoly", "5,-6,5", "--root", "0.6,0.8", "--b1", "1"]).0, EXIT_ERROR);
    assert_eq!(twolog(&["replay"]).0, EXIT_ERROR);
}

#[test]
fn nonpositive_coefficients_are_rejected() {
    assert_eq!(twolog(&bound_args("0", "1", &[])).0, EXIT_REJECTED);
    let (code, _, err) = twolog(&["bound", "--minpoly", "5,-6,5", "--root", "0.6,0.8", "--b1", "1", "--b2=-4"]);
    assert_eq!(code, EXIT_REJECTED, "{err}");
}

#[test]
fn arg_power_reports_b1() {
    let mut args = vec!["arg-power"];
    args.extend(ALPHA);
    args.extend(["--n", "1000000", "--format", "json"]);
    let (code, out, err) = twolog(&args);
    assert_eq!(code, EXIT_OK, "{err}");
    let rec = CertificateRecord::from_json(&out).unwrap();
    assert_eq!(rec.b1, "590334");
    assert_eq!(rec.b2, "1000000");
}

#[test]
fn arg_power_zero_b1_is_rejected() {
    let (code, _, err) = twolog(&["arg-power", "--minpoly", "101,-198,101", "--root", "0.98,0.198", "--n", "1"]);
    assert_eq!(code, EXIT_REJECTED);
    assert!(err.contains("b1"), "{err}");
}

#[test]
fn replay_single_instance() {
    let mut args = vec!["replay"];
    args.extend(ALPHA);
    args.extend(["--b1", "1000000000", "--b2", "1000000001", "--format", "json"]);
    let (code, out, _) = twolog(&args);
    let rec: ReplayRecord = serde_json::from_str(&out).unwrap();
    assert_eq!(rec.points.len(), 1);
    let checks = &rec.points[0].checks;
    assert!(checks["final_2.7704"].status.is_verified());
    assert_eq!(code, if rec.all_verified { EXIT_OK } else { EXIT_UNCERTIFIED });
}

#[test]
fn compare_lmn_shows_both_bounds() {
    let mut args = vec!["compare-lmn"];
    args.extend(ALPHA);
    args.extend(["--b1", "1000000000", "--b2", "1000000001", "--format", "json"]);
    let (code, out, err) = twolog(&args);
    assert_eq!(code, EXIT_OK, "{err}");
    let rec: ComparisonRecord = serde_json::from_str(&out).unwrap();
    let t2 = rec.theorem2.unwrap();
    assert_eq!(t2.path, BoundPath::Main);
    let h: f64 = rec.lmn.h.lo.parse().unwrap();
    assert!(h >= 17.0);
    assert!(rec.lmn.bound.hi.parse::<f64>().unwrap() < 0.0);

    args.pop();
    args.pop();
    let (_, text, _) = twolog(&args);
    assert!(text.contains("[theorem 2]") && text.contains("[lmn]"));
    assert!(text.contains(&format!("bound: [{}, {}]", rec.lmn.bound.lo, rec.lmn.bound.hi)));
}

#[test]
fn optimize_small_grid() {
    let mut args = vec!["optimize"];
    args.extend(ALPHA);
    args.extend([
        "--b1",
        "1000000000",
        "--b2",
        "1000000001",
        "--rho-grid",
        "16,18.1",
        "--mu-grid",
        "0.55,0.59",
        "--l-min",
        "17",
        "--l-max",
        "19",
        "--r1-max",
        "4",
        "--format",
        "json",
    ]);
    let (code, out, err) = twolog(&args);
    assert_eq!(code, EXIT_OK, "{err}");
    let rec = CertificateRecord::from_json(&out).unwrap();
    assert_eq!(rec.path, BoundPath::Optimizer);
    assert!(rec.checks["reverify_doubled_precision"].status.is_verified());
}

#[test]
fn optimize_with_no_candidate_exits_three() {
    let mut args = vec!["optimize"];
    args.extend(ALPHA);
    args.extend([
        "--b1",
        "1000000000000",
        "--b2",
        "1000000000000",
        "--rho-grid",
        "18.1",
        "--mu-grid",
        "0.59",
        "--l-min",
        "18",
        "--l-max",
        "18",
        "--r1-max",
        "3",
    ]);
    let (code, _, err) = twolog(&args);
    assert_eq!(code, EXIT_UNCERTIFIED);
    assert!(err.contains("closest misses"), "{err}");
}

#[test]
fn optimize_rejects_a_bad_grid() {
    let mut args = vec!["optimize"];
    args.extend(ALPHA);
    args.extend(["--b1", "3", "--b2", "5", "--mu-grid", "2"]);
    assert_eq!(twolog(&args).0, EXIT_ERROR);
}
