//! End-to-end runs of the binary. Golden files live in `tests/golden`;
//! set `UPDATE_GOLDEN=1` to rewrite them.

use std::path::PathBuf;
use std::process::{Command, Output};

use num_bigint::BigInt;
use serde_json::Value;
use splitgenus::bounds::BoundReport;
use splitgenus::exactnum::rational::int;
use splitgenus::lpsolve::{verify_certificate, Certificate};
use splitgenus::places::inequality_system;
use splitgenus::weil::{elliptic_classes, ClassSpec};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_splitgenus"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn root() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../..")
}

fn golden(name: &str, actual: &str) {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(name);
    if std::env::var_os("UPDATE_GOLDEN").is_some() {
        std::fs::write(&path, actual).unwrap();
    }
    let want = std::fs::read_to_string(&path).unwrap_or_else(|_| panic!("missing golden file {name}"));
    assert_eq!(actual, want, "output differs from {name}");
}

fn tmp(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("splitgenus-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

const F2: &str = "-2,-1,0,1,2";

#[test]
fn traces() {
    let o = run(&["traces", "--q", "2"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o), "-2 -1 0 1 2\n");
    let o = run(&["traces", "--q", "9", "--json"]);
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["format"], 1);
    assert_eq!(v["traces"].as_array().unwrap().len(), 13);
}

#[test]
fn bound_ilp_json() {
    let o = run(&["bound", "--q", "2", "--traces", F2, "--method", "ilp", "--degree", "8", "--json"]);
    assert!(o.status.success());
    let text = stdout(&o);
    golden("bound_ilp.json", &text);
    let v: Value = serde_json::from_str(&text).unwrap();
    assert_eq!(v["genus_cap"], 26);
    let reports: Vec<BoundReport> = serde_json::from_value(v["reports"].clone()).unwrap();
    assert_eq!(reports[0].genus_cap, BigInt::from(26));
    assert_eq!(serde_json::to_value(&reports).unwrap(), v["reports"]);
}

#[test]
fn bound_all_json() {
    let o = run(&["bound", "--q", "2", "--traces", F2, "--method", "all", "--json"]);
    assert!(o.status.success());
    let text = stdout(&o);
    golden("bound_all.json", &text);
    let v: Value = serde_json::from_str(&text).unwrap();
    let reports: Vec<BoundReport> = serde_json::from_value(v["reports"].clone()).unwrap();
    assert_eq!(reports.len(), 5);
    let ilp = reports.iter().find(|r| r.method.to_string() == "ilp").unwrap();
    assert!(reports.iter().all(|r| r.genus_cap >= ilp.genus_cap));
    assert_eq!(v["genus_cap"], 26);
    assert_eq!(v["best"], "ilp");
    assert_eq!(serde_json::to_value(&reports).unwrap(), v["reports"]);
}

#[test]
fn bound_text_outputs() {
    let o = run(&["bound", "--q", "2", "--traces", F2, "--method", "b1", "--approx"]);
    assert!(stdout(&o).starts_with("b1: g <= 408125  genus_cap 408125"), "{}", stdout(&o));
    let o = run(&["bound", "--q", "2", "--traces", "0", "--method", "b2"]);
    assert_eq!(stdout(&o), "b2: g < 85/8 + (15/2)*sqrt(2)  genus_cap 21  (r=2)\n");
    let o = run(&["bound", "--q", "2", "--traces", F2, "--method", "lemma"]);
    assert!(stdout(&o).starts_with("lemma_canonical: g <= 92088257/32  genus_cap 2877758"));
}

#[test]
fn custom_lemma_and_angles() {
    // T = x over the single angle pi/2 satisfies Re T = 0 < 1.
    let o = run(&["bound", "--q", "2", "--angles", "1/2", "--method", "lemma", "--t-coeffs", "1"]);
    assert_eq!(o.status.code(), Some(2), "{}", String::from_utf8_lossy(&o.stderr));
    // The angle 0 alone: T = x gives (sqrt 2 + 1/sqrt 2)/2.
    let o = run(&["bound", "--q", "2", "--angles", "0", "--method", "lemma", "--t-coeffs", "1", "--json"]);
    assert!(o.status.success());
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    let reports: Vec<BoundReport> = serde_json::from_value(v["reports"].clone()).unwrap();
    assert_eq!(reports[0].genus_cap, BigInt::from(1));
}

#[test]
fn problem_file_and_precedence() {
    let p = tmp("problem.json");
    std::fs::write(&p, r#"{"format":1,"q":2,"traces":[-2,-1,0,1,2],"D":8,"method":"lp"}"#).unwrap();
    let path = p.to_str().unwrap();
    let o = run(&["bound", "--problem", path]);
    assert_eq!(stdout(&o), "lp: g <= 26  genus_cap 26  (D=8)\n");
    // --degree overrides the file and leaves the system unbounded.
    let o = run(&["bound", "--problem", path, "--degree", "7"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("increase D"));
    let o = run(&["bound", "--problem", path, "--method", "ilp"]);
    assert_eq!(stdout(&o), "ilp: g <= 26  genus_cap 26  (D=8)\n");

    let classes = tmp("classes.json");
    let specs: Vec<ClassSpec> = elliptic_classes(2, &[-1, 1], true).unwrap().iter().map(ClassSpec::from).collect();
    std::fs::write(&classes, serde_json::to_string(&specs).unwrap()).unwrap();
    let o = run(&["bound", "--classes", classes.to_str().unwrap(), "--method", "ilp"]);
    assert_eq!(stdout(&o), "ilp: g <= 3  genus_cap 3  (D=4)\n");
}

#[test]
fn enumerate() {
    let o = run(&["enumerate", "--q", "2", "--traces", F2, "--degree", "8", "--genus", "26", "--jobs", "3"]);
    assert!(o.status.success());
    golden("enumerate_26.txt", &stdout(&o));
    let o = run(&["enumerate", "--q", "2", "--traces", F2, "--degree", "8", "--genus", "27"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o), "");
    let o = run(&["enumerate", "--q", "2", "--traces", "1", "--genus", "1"]);
    assert_eq!(stdout(&o), "E_{1}^1\n");
    let o = run(&["enumerate", "--q", "2", "--traces", F2, "--degree", "8", "--genus", "26", "--json"]);
    let text = stdout(&o);
    golden("enumerate_26.json", &text);
    let v: Value = serde_json::from_str(&text).unwrap();
    let specs: Vec<ClassSpec> = serde_json::from_value(v["classes"].clone()).unwrap();
    assert_eq!(serde_json::to_value(&specs).unwrap(), v["classes"]);
    assert_eq!(v["vectors"][2], serde_json::json!([6, 5, 5, 5, 5]));
}

#[test]
fn shipped_certificate() {
    let path = root().join("data/paper_cert.json");
    let classes = elliptic_classes(2, &[-2, -1, 0, 1, 2], true).unwrap();
    let sys = inequality_system(2, &classes, 8).unwrap();
    let y: Vec<_> = [0, 0, 39, 44, 0, 78, 0, 32].into_iter().map(int).collect();
    let cert = verify_certificate(&sys, &y).unwrap().with_system(&sys);
    let text = serde_json::to_string_pretty(&cert).unwrap() + "\n";
    if std::env::var_os("UPDATE_GOLDEN").is_some() {
        std::fs::write(&path, &text).unwrap();
    }
    let on_disk = std::fs::read_to_string(&path).unwrap();
    assert_eq!(serde_json::from_str::<Certificate>(&on_disk).unwrap(), cert);

    let o = run(&["verify-cert", path.to_str().unwrap()]);
    assert!(o.status.success());
    assert_eq!(stdout(&o), "valid, genus ≤ 26\n");
}

#[test]
fn verify_cert_paths() {
    // Emitted LP certificates verify.
    let out = tmp("lp_cert.json");
    let o =
        run(&["bound", "--q", "3", "--traces", "-2,-1,1,2", "--method", "lp", "--emit-cert", out.to_str().unwrap()]);
    assert!(o.status.success());
    let o = run(&["verify-cert", out.to_str().unwrap(), "--json"]);
    assert!(o.status.success());
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["valid"], true);
    assert_eq!(v["genus_cap"], 26);

    // A bare certificate needs the system from flags.
    let bare = tmp("bare.json");
    std::fs::write(
        &bare,
        r#"{"multipliers":["0","0","39","44","0","78","0","32"],"combined":["72","72","72","72","72"],
           "rhs":"1872","scale":"72","genus_cap":26}"#,
    )
    .unwrap();
    let b = bare.to_str().unwrap();
    assert_eq!(run(&["verify-cert", b]).status.code(), Some(1));
    let o = run(&["verify-cert", b, "--q", "2", "--traces", F2, "--degree", "8"]);
    assert_eq!(stdout(&o), "valid, genus ≤ 26\n");

    // A forged cap is rejected.
    let forged = tmp("forged.json");
    let text = std::fs::read_to_string(root().join("data/paper_cert.json")).unwrap();
    std::fs::write(&forged, text.replace("\"genus_cap\": 26", "\"genus_cap\": 25")).unwrap();
    let o = run(&["verify-cert", forged.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(3));

    // Negative multiplier.
    let neg = tmp("neg.json");
    std::fs::write(&neg, text.replacen("\"39\"", "\"-39\"", 1)).unwrap();
    assert_eq!(run(&["verify-cert", neg.to_str().unwrap()]).status.code(), Some(3));

    // Malformed JSON reports the position.
    let bad = tmp("bad.json");
    std::fs::write(&bad, "{\n  \"multipliers\": [\n").unwrap();
    let o = run(&["verify-cert", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("line"));
}

#[test]
fn x0_filter() {
    let o = run(&["x0-filter", "--genus", "26"]);
    assert_eq!(stdout(&o), "422\n");
    let o = run(&["x0-filter", "--genus", "26", "--json"]);
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["max_level"], 422);
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["--help"]).status.code(), Some(0));
    assert_eq!(run(&["frobnicate"]).status.code(), Some(1));
    assert_eq!(run(&["bound", "--traces", "0"]).status.code(), Some(1));
    assert_eq!(run(&["bound", "--q", "6", "--traces", "0"]).status.code(), Some(1));
    assert_eq!(run(&["bound", "--q", "2", "--traces", "3"]).status.code(), Some(1));
    // Over F_8 the trace 2 is not an elliptic trace unless the check is off.
    assert_eq!(run(&["bound", "--q", "8", "--traces", "2", "--method", "b2"]).status.code(), Some(1));
    let o = run(&["bound", "--q", "8", "--traces", "2", "--method", "b2", "--no-admissibility-check"]);
    assert!(o.status.success());
    assert_eq!(run(&["enumerate", "--q", "2", "--traces", "0"]).status.code(), Some(1));
}
