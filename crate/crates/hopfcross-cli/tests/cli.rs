use std::path::Path;
use std::process::{Command, Output};

use serde_json::{json, Value};
use tempfile::TempDir;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hopfcross"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

fn report(args: &[&str]) -> (i32, Value) {
    let mut a = args.to_vec();
    a.push("--json");
    let o = run(&a);
    let v = serde_json::from_slice(&o.stdout).unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&o.stderr)));
    (code(&o), v)
}

fn write(dir: &TempDir, name: &str, v: &Value) -> String {
    let p = dir.path().join(name);
    std::fs::write(&p, serde_json::to_string_pretty(v).unwrap()).unwrap();
    p.display().to_string()
}

fn emitted(dir: &TempDir, name: &str, field: &str) -> (String, Value) {
    let p = dir.path().join(format!("{name}.json"));
    let ps = p.display().to_string();
    let o = run(&["emit", "--builtin", name, "--field", field, "--output", &ps]);
    assert_eq!(code(&o), 0);
    let v = serde_json::from_str(&std::fs::read_to_string(Path::new(&ps)).unwrap()).unwrap();
    (ps, v)
}

fn minimal() -> Value {
    json!({
        "field": "q",
        "algebra": {"labels": ["1"], "mult": [[["1"]]]},
        "hopf": {"labels": ["1"], "mult": [[["1"]]], "comult": [[["1"]]], "counit": ["1"], "antipode": [["1"]]},
        "action": [[["1"]]],
        "cocycle": [[["1"]]]
    })
}

#[test]
fn minimal_file_is_the_ground_field() {
    let dir = TempDir::new().unwrap();
    let p = write(&dir, "k.json", &minimal());
    let (c, v) = report(&["homology", &p]);
    assert_eq!(c, 0);
    assert_eq!(v["body"]["dims"], json!([1, 0, 0, 0]));
    let (c, v) = report(&["verify", &p]);
    assert_eq!(c, 0);
    assert_eq!(v["body"]["dim_e"], json!(1));
}

#[test]
fn wrong_arity_names_the_tensor() {
    let dir = TempDir::new().unwrap();
    let mut v = emitted(&dir, "z2_trivial", "q").1;
    v["hopf"]["mult"][1] = json!([[ "0", "1" ]]);
    let p = write(&dir, "bad.json", &v);
    let o = run(&["homology", &p]);
    assert_eq!(code(&o), 2);
    let err = String::from_utf8_lossy(&o.stderr);
    assert!(err.contains("dimension mismatch in `hopf.mult[1]`"), "{err}");
}

#[test]
fn schema_errors_carry_the_field_path() {
    let dir = TempDir::new().unwrap();
    let mut v = minimal();
    v["hopf"]["counit"] = json!([true]);
    let p = write(&dir, "bad.json", &v);
    let o = run(&["verify", &p]);
    assert_eq!(code(&o), 2);
    let err = String::from_utf8_lossy(&o.stderr);
    assert!(err.contains("hopf.counit[0]") && err.contains("line"), "{err}");

    let mut v = minimal();
    v["cocycle"] = json!([[["1/0"]]]);
    let p = write(&dir, "zero.json", &v);
    let o = run(&["verify", &p]);
    assert_eq!(code(&o), 2);
    assert!(String::from_utf8_lossy(&o.stderr).contains("cocycle[0][0][0]"));
}

#[test]
fn emitted_files_reproduce_builtin_reports() {
    let dir = TempDir::new().unwrap();
    for (name, field) in [("sweedler_smash", "q"), ("z4_as_cocycle_extension", "fp:2"), ("s3_as_action_extension", "fp:3")] {
        let (p, _) = emitted(&dir, name, field);
        let (_, from_file) = report(&["cohomology", &p, "--cap", "3"]);
        let (_, from_builtin) = report(&["cohomology", "--builtin", name, "--field", field, "--cap", "3"]);
        assert_eq!(from_file["body"], from_builtin["body"], "{name}");
    }
}

#[test]
fn verify_sweedler_passes() {
    let (c, v) = report(&["verify", "--builtin", "sweedler_smash"]);
    assert_eq!(c, 0);
    assert_eq!(v["passed"], json!(true));
    assert_eq!(v["body"]["convolution_invertible"], json!(true));
}

#[test]
fn verify_reports_the_antipode_witness() {
    let dir = TempDir::new().unwrap();
    let mut v = emitted(&dir, "sweedler_smash", "q").1;
    // S(x) := +gx; the basis of H is 1, g, x, gx
    v["hopf"]["antipode"][2] = json!(["0", "0", "0", "1"]);
    let p = write(&dir, "bad.json", &v);
    let (c, r) = report(&["verify", &p]);
    assert_eq!(c, 1);
    let hopf = &r["body"]["sections"][1];
    assert_eq!(hopf["structure"], json!("hopf"));
    let ws: Vec<&Value> = hopf["violations"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|x| x["axiom"] == json!("antipode_left"))
        .map(|x| &x["witness"])
        .collect();
    assert!(ws.contains(&&json!([2])), "{ws:?}");
    // other commands refuse the data with the same exit code
    assert_eq!(code(&run(&["homology", &p])), 1);
}

#[test]
fn oracle_compare_on_z2_mod_2() {
    let (c, v) = report(&["oracle-compare", "--builtin", "z2_trivial", "--field", "fp:2", "--max-degree", "3"]);
    assert_eq!(c, 0);
    assert_eq!(v["cap"], json!(4));
    assert_eq!(v["trusted_through"], json!(3));
    for r in v["body"]["routes"].as_array().unwrap() {
        assert_eq!(r["small"], json!([2, 2, 2, 2]));
        assert_eq!(r["bar"], json!([2, 2, 2, 2]));
    }
}

#[test]
fn spectral_page_two_on_z2_mod_2() {
    let o = run(&["spectral", "--builtin", "z2_trivial", "--field", "fp:2", "--page", "2"]);
    assert_eq!(code(&o), 0);
    let text = String::from_utf8_lossy(&o.stdout);
    assert!(text.contains("E^2") && text.contains("convergence: pass"), "{text}");
    let (_, v) = report(&["spectral", "--builtin", "z2_trivial", "--field", "fp:2", "--page", "2"]);
    let dims: Vec<u64> = v["body"]["table"].as_array().unwrap().iter().map(|c| c["dim"].as_u64().unwrap()).collect();
    assert_eq!(dims, [2, 2, 2, 2]);
    assert_eq!(v["body"]["convergence"]["passed"], json!(true));
}

#[test]
fn field_override_changes_the_answer() {
    let dir = TempDir::new().unwrap();
    let (p, _) = emitted(&dir, "z2_trivial", "q");
    assert_eq!(report(&["homology", &p]).1["body"]["dims"], json!([2, 0, 0, 0]));
    assert_eq!(report(&["homology", &p, "--field", "fp:2"]).1["body"]["dims"], json!([2, 2, 2, 2]));
}

#[test]
fn tor_of_trivial_modules() {
    let (c, v) = report(&["tor", "--builtin", "z2_trivial", "--oracle"]);
    assert_eq!(c, 0);
    assert_eq!(v["body"]["dims"], json!([1, 0, 0, 0]));
    assert_eq!(v["body"]["oracle_agrees"], json!(true));
    let (_, v) = report(&["tor", "--builtin", "z2_trivial", "--field", "fp:2"]);
    assert_eq!(v["body"]["dims"], json!([1, 1, 1, 1]));
    // A ≠ k has no trivial module to default to
    assert_eq!(code(&run(&["tor", "--builtin", "sweedler_smash"])), 2);
}

#[test]
fn reports_are_byte_identical_and_written_to_output() {
    let dir = TempDir::new().unwrap();
    let out = dir.path().join("r.json").display().to_string();
    let args = ["e2-check", "--builtin", "sweedler_smash", "--field", "fp:3", "--cap", "3"];
    let a = run(&args);
    let mut with_out = args.to_vec();
    with_out.extend(["--output", &out, "--json"]);
    let b = run(&with_out);
    let c = run(&with_out);
    assert_eq!(code(&a), 0);
    assert_eq!(b.stdout, c.stdout);
    assert_eq!(std::fs::read(&out).unwrap(), b.stdout);
}

#[test]
fn large_caps_need_an_override() {
    let o = run(&["homology", "--builtin", "trivial", "--cap", "7"]);
    assert_eq!(code(&o), 2);
    assert!(String::from_utf8_lossy(&o.stderr).contains("warning"));
    assert_eq!(code(&run(&["homology", "--builtin", "trivial", "--cap", "7", "--allow-large-cap"])), 0);
}

#[test]
fn resolution_check_passes_on_the_gallery() {
    for name in ["z4_as_cocycle_extension", "klein_four", "sweedler_smash"] {
        let (c, v) = report(&["resolution-check", "--builtin", name, "--field", "fp:2", "--max-degree", "2"]);
        assert_eq!(c, 0, "{name}");
        assert!(v["body"]["checks"].as_array().unwrap().iter().all(|x| x["passed"] == json!(true)));
    }
}

#[test]
fn usage_errors_exit_with_two() {
    assert_eq!(code(&run(&["homology"])), 2);
    assert_eq!(code(&run(&["homology", "--builtin", "z2_trivial", "--field", "fp:4"])), 2);
    assert_eq!(code(&run(&["homology", "/nonexistent/problem.json"])), 2);
}
