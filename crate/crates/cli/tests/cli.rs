use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

fn data(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/data").join(name)
}

fn fleet_file(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../core/fleet").join(name)
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_resurgence")).args(args).output().unwrap()
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&out.stdout)))
}

fn path(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn report_three_points() {
    let out = run(&["report", path(&fleet_file("three_points_p2.scheme"))]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let v = json(&out);
    assert_eq!(v["alpha"], 2);
    assert_eq!(v["waldschmidt"], "3/2");
    assert_eq!(v["rho_hat"]["value"], "4/3");
    assert_eq!(v["rho_hat"]["certified"], true);
    assert_eq!(v["rho"]["exact"], "4/3");
    assert_eq!(v["rho_int"]["exact"], "1/1");
}

#[test]
fn report_vertices() {
    let out = run(&["report", path(&fleet_file("vertices_n2.scheme"))]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    for key in ["rho", "rho_int"] {
        assert_eq!(v[key]["exact"], "1/1");
    }
    assert_eq!(v["rho_hat"]["value"], "1/1");
    let mt3 = &v["checks"]["mt3"];
    for key in ["a_sdefect_zero", "b_rho_one", "c_rho_hat_one", "d_closure_is_symbolic"] {
        assert_eq!(mt3[key], true, "{key}");
    }
}

#[test]
fn report_is_deterministic() {
    let f = fleet_file("fat_points_122_p2.scheme");
    let a = run(&["report", path(&f)]);
    let b = run(&["--threads", "1", "report", path(&f)]);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn malformed_scheme_exits_2_with_line() {
    let out = run(&["report", path(&data("malformed.scheme"))]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("line 3"), "{err}");
    assert_eq!(run(&["report", "/nonexistent.scheme"]).status.code(), Some(2));
}

#[test]
fn contain_power_witness() {
    let f = fleet_file("three_points_p2.scheme");
    let out = run(&["contain", path(&f), "--m", "6", "--r", "5"]);
    assert_eq!(String::from_utf8_lossy(&out.stdout).trim(), r#"{"contained":false,"witness":"x0^3*x1^3*x2^3"}"#);
    let out = run(&["contain", path(&f), "--m", "4", "--r", "3"]);
    assert_eq!(String::from_utf8_lossy(&out.stdout).trim(), r#"{"contained":true}"#);
}

#[test]
fn contain_closure_matches_library() {
    use resurgence::engine::symbolic_in_closure;
    let f = fleet_file("three_points_p2.scheme");
    let z = resurgence::fatpoints::parse_scheme(&std::fs::read_to_string(&f).unwrap()).unwrap();
    for (m, r) in [(2, 2), (3, 2), (4, 3), (1, 2)] {
        let out = run(&["contain", path(&f), "--m", &m.to_string(), "--r", &r.to_string(), "--mode", "closure"]);
        let v = json(&out);
        let lib = symbolic_in_closure(&z, m, r).unwrap();
        assert_eq!(v["contained"], lib.holds(), "m={m} r={r}");
        if let Some(w) = lib.witness() {
            assert_eq!(v["witness"], w.monomial.to_string());
            assert!(w.verify(&z, &z.ideal().unwrap()).unwrap());
        }
    }
}

#[test]
fn contain_slack() {
    let f = fleet_file("three_points_p2.scheme");
    let v = json(&run(&["contain", path(&f), "--m", "2", "--r", "1", "--mode", "slack", "--k", "1"]));
    assert_eq!(v["contained"], true);
    let v = json(&run(&["contain", path(&f), "--m", "2", "--r", "1", "--mode", "slack", "--k", "2"]));
    assert_eq!(v["contained"], false);
}

#[test]
fn rho_int_of_cubes() {
    let v = json(&run(&["rho-int", path(&data("cubes.ideal"))]));
    assert_eq!(v["value"]["exact"], "2/1");
    assert_eq!(v["witness"]["monomial"], "x0^2*x1^2*x2^2");
}

#[test]
fn closure_and_symbolic() {
    let v = json(&run(&["closure", path(&data("cubes.ideal")), "--t", "1"]));
    assert_eq!(v["generators"].as_array().unwrap().len(), 10);
    let out = run(&["--format", "csv", "symbolic", path(&fleet_file("three_points_p2.scheme")), "--m", "2"]);
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.starts_with("vars: 3"));
    assert!(text.contains("x0*x1*x2"));
}

#[test]
fn denkert_and_window() {
    let f = fleet_file("three_points_p2.scheme");
    let v = json(&run(&["denkert", path(&f), "--a", "2", "--s", "2"]));
    assert_eq!((v["A"].clone(), v["B"].clone()), (Value::from(8), Value::from(6)));
    let v = json(&run(&["dd-window", path(&f)]));
    assert_eq!(v["window"]["rho"]["lo"], "4/3");
    assert_eq!(v["window"]["rho"]["hi_exclusive"], "17/12");
}

#[test]
fn criteria_conjectures_waldschmidt() {
    let f = fleet_file("three_points_p2.scheme");
    assert_eq!(json(&run(&["criteria", path(&f)]))["c_rho_hat_one"], false);
    let v = json(&run(&["conjectures", path(&f), "--r-max", "2", "--m-max", "3"]));
    assert_eq!(v["grifo"]["passed"], true);
    let v = json(&run(&["waldschmidt", path(&f), "--m-max", "4"]));
    assert_eq!(v["waldschmidt"], "3/2");
    assert_eq!(v["upper_bound"], "3/2");
}

#[test]
fn vertices_command() {
    let out = run(&["vertices", "--N", "2", "--m", "2", "--monomial", "x1^2*x2^2"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["factors"], serde_json::json!(["x1*x2", "x1*x2"]));
    let v = json(&run(&["vertices", "--N", "3", "--m", "3"]));
    assert_eq!(v["rows"].as_array().unwrap().len(), 3);
    let out = run(&["vertices", "--N", "2", "--m", "2", "--monomial", "x1*x2"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn points_p2_commands() {
    let f = data("collinear.p2");
    assert_eq!(json(&run(&["points-p2", "alpha", path(&f), "--m", "1"]))["alpha"], 1);
    assert_eq!(json(&run(&["points-p2", "regularity", path(&f)]))["regularity"], 5);
    assert_eq!(json(&run(&["points-p2", "order", path(&f), "--m", "3", "--d", "6"]))["order"], 3);
    assert_eq!(json(&run(&["points-p2", "--rational", "hilbert", path(&f), "--m", "1", "--d", "4"]))["dim"], 10);
    let out = run(&["--prime", "5", "points-p2", "hilbert", path(&f), "--m", "1", "--d", "6"]);
    assert_eq!(out.status.code(), Some(1));
    let v = json(&run(&["points-p2", "ex3"]));
    let alphas: Vec<u64> = v["alpha"].as_array().unwrap().iter().map(|a| a["alpha"].as_u64().unwrap()).collect();
    assert_eq!(alphas, [3, 5, 10]);
}

#[test]
fn fleet_csv() {
    let out = run(&["fleet", path(&fleet_file("acceptance.fleet"))]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    let mut rdr = csv_rows(&text);
    assert_eq!(rdr.len(), 7);
    let header = rdr.remove(0);
    let err_col = header.iter().position(|h| h == "error").unwrap();
    assert!(rdr.iter().all(|r| r[err_col].is_empty()));
    let again = run(&["fleet", path(&fleet_file("acceptance.fleet"))]);
    assert_eq!(text.as_bytes(), &again.stdout[..]);
}

#[test]
fn fleet_isolates_bad_rows() {
    let out = run(&["fleet", path(&data("mixed.fleet"))]);
    assert_eq!(out.status.code(), Some(0));
    let rows = csv_rows(&String::from_utf8(out.stdout).unwrap());
    assert_eq!(rows.len(), 4);
    let err_col = rows[0].iter().position(|h| h == "error").unwrap();
    let errors: Vec<bool> = rows[1..].iter().map(|r| !r[err_col].is_empty()).collect();
    assert_eq!(errors, [false, true, false]);
    let out = run(&["fleet", path(&data("empty.fleet"))]);
    assert_eq!(String::from_utf8(out.stdout).unwrap().lines().count(), 1);
}

#[test]
fn resource_cap_exits_4_with_partial_report() {
    let out = run(&["--set", "box_cap=5", "report", path(&fleet_file("three_points_p2.scheme"))]);
    assert_eq!(out.status.code(), Some(4));
    let v = json(&out);
    assert_eq!(v["resource_exhausted"], true);
    assert_eq!(v["rho_hat"]["value"], "4/3");
}

#[test]
fn bad_config_is_a_parse_error() {
    let out = run(&["--set", "nonsense=1", "report", path(&fleet_file("point_p3.scheme"))]);
    assert_eq!(out.status.code(), Some(2));
}

fn csv_rows(text: &str) -> Vec<Vec<String>> {
    csv::ReaderBuilder::new()
        .has_headers(false)
        .from_reader(text.as_bytes())
        .records()
        .map(|r| r.unwrap().iter().map(str::to_string).collect())
        .collect()
}
