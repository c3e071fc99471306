use serde::de::DeserializeOwned;
use serde::Serialize;
use serde_json::Value;
use std::fs;
use std::path::Path;
use std::process::{Command, Output};
use tauberian_lab::acceptance::SuiteReport;
use tauberian_lab::asymptotics::AsymptoticExpansion;
use tauberian_lab::experiments::{AuditReport, FejerTable, PowerSeriesReport};
use tauberian_lab::gallery::Gallery;
use tauberian_lab::signal::{BoundaryClassification, SampledFunction, Verdict};
use tempfile::TempDir;

fn run(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_tauberian-lab"))
        .current_dir(dir)
        .args(args)
        .output()
        .expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

fn stdout_json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).expect("stdout is JSON")
}

fn error_of(o: &Output) -> (String, String) {
    let v: Value = serde_json::from_slice(&o.stderr).expect("stderr is JSON");
    (
        v["error"]["kind"].as_str().unwrap().to_string(),
        v["error"]["message"].as_str().unwrap().to_string(),
    )
}

/// Parse the file as `T` and check that re-emitting gives the same text.
fn round_trip<T: Serialize + DeserializeOwned + PartialEq + std::fmt::Debug>(path: &Path) -> T {
    let text = fs::read_to_string(path).unwrap();
    let v: T = serde_json::from_str(&text).unwrap();
    let again = serde_json::to_string_pretty(&v).unwrap() + "\n";
    assert_eq!(again, text, "{}", path.display());
    let back: T = serde_json::from_str(&again).unwrap();
    assert_eq!(back, v);
    v
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    fs::write(dir.join(name), text).unwrap();
    name.to_string()
}

#[test]
fn transfer_constant_gives_single_term_x() {
    let d = TempDir::new().unwrap();
    let input = write(d.path(), "a.json", r#"{"a": [1, 0]}"#);
    let o = run(d.path(), &["transfer", &input, "--json"]);
    assert_eq!(code(&o), 0);
    let e: AsymptoticExpansion = round_trip(&d.path().join("out/expansion.json"));
    assert_eq!(e.terms.len(), 1);
    let t = e.terms[0];
    assert_eq!((t.beta, t.logpow, t.freq, t.rate), (1.0, 0, 0.0, 0.0));
    assert_eq!(t.coeff.re, 1.0);
    assert_eq!(e.describe(), "1·x");
    assert_eq!(stdout_json(&o), serde_json::to_value(&e).unwrap());
    // samples of the main term are x itself
    let csv = fs::read_to_string(d.path().join("out/expansion.csv")).unwrap();
    for line in csv.lines().skip(1) {
        let v: Vec<f64> = line.split(',').map(|s| s.parse().unwrap()).collect();
        assert_eq!(v[1], v[0]);
        assert_eq!(v[2], 0.0);
    }
}

#[test]
fn transfer_empty_input_succeeds_with_empty_expansion() {
    let d = TempDir::new().unwrap();
    let input = write(d.path(), "e.json", "{}");
    let o = run(d.path(), &["transfer", &input]);
    assert_eq!(code(&o), 0);
    let e: AsymptoticExpansion = round_trip(&d.path().join("out/expansion.json"));
    assert!(e.terms.is_empty() && e.non_transfer.is_empty());
}

#[test]
fn transfer_worked_example_reports_double_poles_separately() {
    let d = TempDir::new().unwrap();
    let g = Gallery::builtin();
    let sp = g
        .get("linear_with_cosine")
        .unwrap()
        .singular_part
        .clone()
        .unwrap();
    let input = write(d.path(), "lwc.json", &serde_json::to_string(&sp).unwrap());
    let o = run(d.path(), &["transfer", &input]);
    assert_eq!(code(&o), 0);
    let e: AsymptoticExpansion = round_trip(&d.path().join("out/expansion.json"));
    assert_eq!(e.describe(), "1·x");
    assert_eq!(e.non_transfer.len(), 2);
    let text = String::from_utf8(o.stdout).unwrap();
    assert!(text.contains("non-transfer singular data"), "{text}");
}

#[test]
fn transfer_parse_error_has_path_line_and_column() {
    let d = TempDir::new().unwrap();
    let input = write(d.path(), "bad.json", "{\"a\": [1, 0],\n  \"b\": 2}");
    let o = run(d.path(), &["transfer", &input]);
    assert_eq!(code(&o), 2);
    let (kind, msg) = error_of(&o);
    assert_eq!(kind, "Parse");
    assert!(
        msg.contains("bad.json") && msg.contains("line 2 column"),
        "{msg}"
    );

    let input = write(d.path(), "trunc.json", "{\"a\": [1,");
    let (kind, msg) = error_of(&run(d.path(), &["transfer", &input]));
    assert_eq!(kind, "Parse");
    assert!(msg.contains("line 1 column"), "{msg}");
}

fn classify(dir: &Path, args: &[&str]) -> BoundaryClassification {
    let mut all = vec!["classify"];
    all.extend_from_slice(args);
    all.push("--json");
    let o = run(dir, &all);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let r: BoundaryClassification = round_trip(&dir.join("out/classification.json"));
    assert_eq!(
        serde_json::from_value::<BoundaryClassification>(stdout_json(&o)).unwrap(),
        r
    );
    r
}

#[test]
fn classify_reference_fixtures() {
    let d = TempDir::new().unwrap();
    let p = d.path();
    let tone = classify(p, &["tone_2", "--t0", "2", "--lambda", "1"]);
    assert_eq!(tone.verdict, Verdict::PseudomeasureOnly);
    let l1 = classify(p, &["inverse_square", "--t0", "0"]);
    assert_eq!(l1.verdict, Verdict::Pseudofunction);
    let ramp = classify(p, &["ramp", "--lambda", "0.25"]);
    assert_eq!(ramp.verdict, Verdict::Neither);
}

#[test]
fn classify_reads_csv_fixtures() {
    let d = TempDir::new().unwrap();
    let f = SampledFunction::from_real_fn(|x| 1.0 / (1.0 + x * x), 0.05, 600.0).unwrap();
    f.write_csv(fs::File::create(d.path().join("l1.csv")).unwrap())
        .unwrap();
    let r = classify(d.path(), &["l1.csv"]);
    assert_eq!(r.verdict, Verdict::Pseudofunction);
    let o = run(d.path(), &["classify", "l1.csv", "--dx", "0.1"]);
    assert_eq!(code(&o), 2);
}

#[test]
fn classify_short_grid_is_structured_error() {
    let d = TempDir::new().unwrap();
    let o = run(d.path(), &["classify", "ramp", "--xmax", "50"]);
    assert_eq!(code(&o), 2);
    let (kind, msg) = error_of(&o);
    assert_eq!(kind, "InsufficientWindows");
    assert!(msg.contains("need 256"), "{msg}");
    assert!(!d.path().join("out/classification.json").exists());
}

#[test]
fn svg_is_byte_identical_on_regeneration() {
    let a = TempDir::new().unwrap();
    let b = TempDir::new().unwrap();
    for d in [&a, &b] {
        assert_eq!(
            code(&run(
                d.path(),
                &["classify", "sine_1", "--t0", "1", "--lambda", "0.5"]
            )),
            0
        );
        assert_eq!(code(&run(d.path(), &["taubcheck", "damped_cosine"])), 0);
    }
    for f in [
        "classification.svg",
        "classification.csv",
        "psi.svg",
        "psi.csv",
        "taubcheck.json",
    ] {
        let x = fs::read(a.path().join("out").join(f)).unwrap();
        let y = fs::read(b.path().join("out").join(f)).unwrap();
        assert!(!x.is_empty());
        assert_eq!(x, y, "{f}");
    }
    let svg = fs::read_to_string(a.path().join("out/classification.svg")).unwrap();
    assert!(svg.starts_with("<svg") && svg.contains("<polyline"));
}

#[test]
fn outputs_leave_no_temporary_files() {
    let d = TempDir::new().unwrap();
    assert_eq!(code(&run(d.path(), &["constants", "--out", "res"])), 0);
    let mut names: Vec<String> = fs::read_dir(d.path().join("res"))
        .unwrap()
        .map(|e| e.unwrap().file_name().into_string().unwrap())
        .collect();
    names.sort();
    assert_eq!(names, ["constants.csv", "constants.json"]);
}

#[test]
fn constants_default_and_tight_tolerance() {
    let d = TempDir::new().unwrap();
    let o = run(d.path(), &["constants"]);
    assert_eq!(code(&o), 0);
    let text = String::from_utf8(o.stdout).unwrap();
    assert!(
        text.contains("2.689584") && text.contains("0.452008"),
        "{text}"
    );
    let t: FejerTable = round_trip(&d.path().join("out/constants.json"));
    for (got, want) in t.values().iter().zip([2.690, 0.452, 1.170, 0.905]) {
        assert!((got - want).abs() <= 0.005, "{got} vs {want}");
    }

    let o = run(
        d.path(),
        &["constants", "--tol", "1e-6", "--json", "--out", "tight"],
    );
    assert_eq!(code(&o), 0);
    let tight: FejerTable = serde_json::from_value(stdout_json(&o)).unwrap();
    assert_eq!(
        tight,
        round_trip::<FejerTable>(&d.path().join("tight/constants.json"))
    );
    for (v, w) in [tight.i1, tight.i2, tight.i3, tight.i4]
        .iter()
        .zip([t.i1, t.i2, t.i3, t.i4])
    {
        assert!(v.error_bound <= 1e-6);
        assert!((v.value - w.value).abs() <= v.error_bound + w.error_bound);
    }
    let csv = fs::read_to_string(d.path().join("tight/constants.csv")).unwrap();
    assert_eq!(csv.lines().count(), 5);

    let o = run(d.path(), &["constants", "--tol", "0"]);
    assert_eq!(code(&o), 2);
}

#[test]
fn suite_filter_and_injected_fault() {
    let d = TempDir::new().unwrap();
    let o = run(d.path(), &["suite", "--filter", "specfun"]);
    assert_eq!(code(&o), 0);
    let r: SuiteReport = round_trip(&d.path().join("out/suite.json"));
    assert_eq!(r.results.len(), 1);
    assert_eq!(r.results[0].id, 2);

    let o = run(
        d.path(),
        &["suite", "--filter", "specfun", "--inject-fault", "dj"],
    );
    assert_eq!(code(&o), 1);
    let text = String::from_utf8(o.stdout).unwrap();
    assert!(
        text.contains("[FAIL] criterion  2") && text.contains("omega="),
        "{text}"
    );

    let o = run(d.path(), &["suite", "--filter", "no_such_module"]);
    assert_eq!(code(&o), 2);
}

#[test]
fn suite_clean_run_passes() {
    let d = TempDir::new().unwrap();
    let o = run(d.path(), &["suite", "--json"]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stdout));
    let r: SuiteReport = serde_json::from_value(stdout_json(&o)).unwrap();
    assert!(r.passed);
    let ids: Vec<u32> = r.results.iter().map(|c| c.id).collect();
    assert_eq!(ids, (1..=10).collect::<Vec<_>>());
}

#[test]
fn audit_and_powerseries_round_trip() {
    let d = TempDir::new().unwrap();
    let o = run(d.path(), &["audit", "tone_2", "--e", "2", "--pole", "2"]);
    assert_eq!(code(&o), 0);
    let a: AuditReport = round_trip(&d.path().join("out/audit.json"));
    assert!(!a.hypothesis_ii && !a.hypothesis_iii && a.hypothesis_i);

    let mut csv = String::from("n,re,im\n");
    for n in 0..256 {
        csv.push_str(&format!("{n},{},0\n", 1.0 / (n as f64 + 1.0)));
    }
    let path = write(d.path(), "c.csv", &csv);
    let o = run(
        d.path(),
        &[
            "powerseries",
            &path,
            "--theta",
            "3.141592653589793",
            "--e-angle",
            "0",
        ],
    );
    assert_eq!(code(&o), 0);
    let p: PowerSeriesReport = round_trip(&d.path().join("out/powerseries.json"));
    let abel = p.convergence[0].averaged_partial_sum.re;
    assert!((abel - 2f64.ln()).abs() < 1e-2, "{abel}");
}

#[test]
fn wi_requires_wiener_ikehara_data() {
    let d = TempDir::new().unwrap();
    let jumps = write(d.path(), "s.csv", "x,mass\n0,1\n1,1\n");
    let input = write(d.path(), "sp.json", r#"{"a": [1, 0]}"#);
    let o = run(d.path(), &["wi", &input, "--stieltjes", &jumps]);
    assert_eq!(code(&o), 2);
    assert_eq!(error_of(&o).0, "MissingWienerIkehara");

    // S(x) = e^x: one simple pole at s = 1 with residue 1
    let mut csv = String::from("x,mass\n0,1\n");
    let dx = 0.01;
    for k in 1..=2000 {
        let x = k as f64 * dx;
        csv.push_str(&format!("{x},{}\n", x.exp() - (x - dx).exp()));
    }
    let jumps = write(d.path(), "exp.csv", &csv);
    let input = write(
        d.path(),
        "wi.json",
        r#"{"wi": {"alpha": 1.0, "r0": 1.0, "pairs": []}}"#,
    );
    let o = run(d.path(), &["wi", &input, "--stieltjes", &jumps, "--json"]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let v = stdout_json(&o);
    assert!(v["sup_deviation"].as_f64().unwrap() < 1e-9, "{v}");
}

#[test]
fn usage_errors_exit_two() {
    let d = TempDir::new().unwrap();
    let p = d.path();
    assert_eq!(code(&run(p, &["classify", "no_such_fixture"])), 2);
    assert_eq!(code(&run(p, &["classify", "ramp", "--tol", "1e-6"])), 2);
    assert_eq!(code(&run(p, &["classify", "ramp", "--lambda", "-1"])), 2);
    assert_eq!(code(&run(p, &["frobnicate"])), 2);
    assert_eq!(code(&run(p, &["transfer", "missing.json"])), 2);
    let (kind, _) = error_of(&run(p, &["classify", "no_such_fixture"]));
    assert_eq!(kind, "Usage");
}
