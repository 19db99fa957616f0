use std::process::{Command, Output};

const BIN: &str = env!("CARGO_BIN_EXE_planar-atom");

fn run(args: &[&str]) -> Output {
    Command::new(BIN).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

/// Header-indexed rows of a CSV document (schema line skipped).
fn parse_csv(text: &str) -> (String, Vec<std::collections::HashMap<String, String>>) {
    let mut lines = text.lines();
    let schema = lines.next().unwrap().to_owned();
    let header: Vec<&str> = lines.next().unwrap().split(',').collect();
    let rows = lines
        .map(|l| header.iter().map(|h| h.to_string()).zip(l.split(',').map(str::to_owned)).collect())
        .collect();
    (schema, rows)
}

fn num(row: &std::collections::HashMap<String, String>, key: &str) -> f64 {
    row[key].parse().unwrap_or_else(|_| panic!("{key} = {:?}", row[key]))
}

#[test]
fn solve_hydrogen_ground_state() {
    let o = run(&["solve", "--atom", "pe", "--potential", "coulomb3d", "--ell", "0", "--nodes", "0"]);
    assert_eq!(o.status.code(), Some(0));
    let (schema, rows) = parse_csv(&stdout(&o));
    assert!(schema.starts_with("# schema=planar-atom/v1"));
    let e = num(&rows[0], "energy_ry");
    assert!((e + 0.99946).abs() < 1e-5, "{e}");
    assert_eq!(rows[0]["converged"], "true");
}

#[test]
fn solve_chern_simons_muonic() {
    let o = run(&["solve", "--atom", "pmu", "--potential", "chern-simons", "--lambda", "2e-6", "--points", "20001"]);
    assert_eq!(o.status.code(), Some(0));
    let (_, rows) = parse_csv(&stdout(&o));
    let e = num(&rows[0], "energy_ry");
    assert!((e + 3.07).abs() < 0.1, "{e}");
}

#[test]
fn photon_mass_in_ev_matches_ratio() {
    let by_ev = run(&["solve", "--atom", "pe", "--potential", "chern-simons", "--mgamma-ev", "10", "--points", "20001"]);
    let lambda = format!("{}", 10.0 / 510_998.95);
    let by_ratio = run(&["solve", "--atom", "pe", "--potential", "chern-simons", "--lambda", &lambda, "--points", "20001"]);
    assert_eq!(by_ev.status.code(), Some(0));
    assert_eq!(stdout(&by_ev), stdout(&by_ratio));
}

#[test]
fn usage_errors_exit_one() {
    let cases: [&[&str]; 7] = [
        &["solve", "--atom", "pe", "--potential", "chern-simons"],
        &["solve", "--atom", "pe", "--potential", "coulomb3d", "--lambda", "2e-5"],
        &["solve", "--atom", "xx", "--potential", "coulomb3d"],
        &["solve", "--atom", "pe", "--potential", "chern-simons", "--lambda", "2e-5", "--mgamma-ev", "10"],
        &["solve", "--atom", "pe", "--potential", "coulomb3d", "--points", "10"],
        &["solve", "--atom", "pe", "--potential", "coulomb3d", "--threads", "0"],
        &["table", "nonsense"],
    ];
    for args in cases {
        let o = run(args);
        assert_eq!(o.status.code(), Some(1), "{args:?}");
        assert!(o.stdout.is_empty());
        assert!(!o.stderr.is_empty());
    }
    let o = run(&["solve", "--atom", "pe", "--potential", "chern-simons"]);
    assert!(String::from_utf8_lossy(&o.stderr).contains("--lambda"));
}

#[test]
fn non_convergence_exits_two_and_still_writes() {
    // a box far too small for the state cannot meet the defect tolerance
    let o = run(&["solve", "--atom", "pe", "--potential", "coulomb3d", "--rho-max", "3", "--points", "1000", "--tol", "1e-30"]);
    assert_eq!(o.status.code(), Some(2));
    let (_, rows) = parse_csv(&stdout(&o));
    assert_eq!(rows[0]["converged"], "false");
}

#[test]
fn help_exits_zero() {
    let o = run(&["solve", "--help"]);
    assert_eq!(o.status.code(), Some(0));
    let help = stdout(&o);
    assert!(help.contains("--mgamma-ev"));
    assert!(help.contains("superconductors"));
}

#[test]
fn json_mirrors_csv_fields() {
    let args = ["solve", "--atom", "de", "--potential", "coulomb2d", "--points", "20001"];
    let csv = stdout(&run(&args));
    let json = stdout(&run(&[&args[..], &["--format", "json"]].concat()));
    let v: serde_json::Value = serde_json::from_str(&json).unwrap();
    assert_eq!(v["schema"], "planar-atom/v1");
    let (_, rows) = parse_csv(&csv);
    let obj = v["rows"][0].as_object().unwrap();
    assert_eq!(obj.len(), rows[0].len());
    for (k, text) in &rows[0] {
        match &obj[k] {
            serde_json::Value::Number(n) => assert_eq!(n.as_f64().unwrap(), text.parse::<f64>().unwrap(), "{k}"),
            serde_json::Value::String(s) => assert_eq!(s, text),
            serde_json::Value::Bool(b) => assert_eq!(b.to_string(), *text),
            serde_json::Value::Null => assert!(text.is_empty()),
            other => panic!("{k}: {other}"),
        }
    }
}

#[test]
fn output_flag_writes_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("k0.csv");
    let o = run(&["k0", "--x", "1", "--output", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
    let (_, rows) = parse_csv(&std::fs::read_to_string(&path).unwrap());
    assert!((num(&rows[0], "value") - 0.421024438241).abs() < 1e-12);
    assert_eq!(rows[0]["regime"], "series");

    let o = run(&["k0", "--x", "1", "--output", "/nonexistent-dir/k0.csv"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn k0_regimes_and_domain() {
    let (_, rows) = parse_csv(&stdout(&run(&["k0", "--x", "5"])));
    assert_eq!(rows[0]["regime"], "asymptotic");
    assert!((num(&rows[0], "value") / 0.003691098334042594 - 1.0).abs() < 1e-11);
    let (_, rows) = parse_csv(&stdout(&run(&["k0", "--x", "800"])));
    assert_eq!((rows[0]["value"].as_str(), rows[0]["underflow"].as_str()), ("0", "true"));
    assert_eq!(run(&["k0", "--x", "-1"]).status.code(), Some(1));
}

#[test]
fn scan_potential_values_and_orderings() {
    let (_, rows) = parse_csv(&stdout(&run(&[
        "scan-potential", "--atom", "pe", "--potential", "coulomb3d", "--from", "1", "--to", "2", "--samples", "2",
    ])));
    assert!((num(&rows[0], "u_eff") + 2.0).abs() < 1e-3);
    assert!((num(&rows[1], "u_eff") + 1.0).abs() < 1e-3);

    let (_, rows) = parse_csv(&stdout(&run(&[
        "scan-potential", "--atom", "pe", "--potential", "chern-simons", "--lambda", "2e-5", "--ell", "1",
    ])));
    assert_eq!(rows.len(), 400);
    assert!(rows.iter().all(|r| num(r, "u_eff") < num(r, "centrifugal")));

    let at = |lambda: &str| {
        let (_, rows) = parse_csv(&stdout(&run(&[
            "scan-potential", "--atom", "pe", "--potential", "chern-simons", "--lambda", lambda, "--from", "3", "--to", "4",
            "--samples", "2",
        ])));
        num(&rows[0], "u_eff")
    };
    assert!(at("2e-6") < at("2e-5") && at("2e-5") < at("2e-4"));

    let o = run(&["scan-potential", "--atom", "pe", "--potential", "coulomb3d", "--from", "2", "--to", "1"]);
    assert_eq!(o.status.code(), Some(1));
}

fn wavefunction(args: &[&str]) -> (String, Vec<(f64, f64, f64)>) {
    let o = run(&[&["wavefunction"], args].concat());
    assert_eq!(o.status.code(), Some(0));
    let (schema, rows) = parse_csv(&stdout(&o));
    (schema, rows.iter().map(|r| (num(r, "rho"), num(r, "r_bohr"), num(r, "u"))).collect())
}

fn peak(samples: &[(f64, f64, f64)]) -> (f64, f64, f64) {
    *samples.iter().max_by(|a, b| a.2.abs().total_cmp(&b.2.abs())).unwrap()
}

#[test]
fn wavefunction_shapes() {
    let (schema, planar) = wavefunction(&["--atom", "pe", "--potential", "coulomb2d", "--stride", "50"]);
    assert!(schema.contains("energy_ry=-3.99"));
    assert!(planar.iter().all(|s| s.2 >= 0.0));

    let (_, hydrogen) = wavefunction(&["--atom", "pe", "--potential", "coulomb3d", "--stride", "1"]);
    let zeta: f64 = 1836.15267343 / 1837.15267343;
    let (rho, _, _) = peak(&hydrogen);
    assert!((rho - 1.0 / zeta.sqrt()).abs() < 1e-3, "{rho}");

    let cs = |atom| wavefunction(&["--atom", atom, "--potential", "chern-simons", "--lambda", "2e-5", "--stride", "20"]).1;
    let (_, r_pe, _) = peak(&cs("pe"));
    let (_, r_pmu, _) = peak(&cs("pmu"));
    assert!(r_pmu < r_pe, "{r_pmu} vs {r_pe}");
}

#[test]
fn ell_states_table_carries_reference_values() {
    let (_, rows) = parse_csv(&stdout(&run(&["table", "ell-states", "--points", "20001"])));
    assert_eq!(rows.len(), 4);
    let last = &rows[3];
    assert_eq!((last["atom"].as_str(), last["ell"].as_str()), ("pmu", "2"));
    assert_eq!(num(last, "paper_value"), -2.783);
    assert!((num(last, "deviation") - (num(last, "energy_ry") + 2.783)).abs() < 1e-9);
}

#[test]
fn radii_table_carries_reference_values() {
    let (_, rows) = parse_csv(&stdout(&run(&["table", "radii", "--points", "20001", "--format", "csv"])));
    assert_eq!(rows.len(), 9);
    let row = rows
        .iter()
        .find(|r| r["atom"] == "pmu" && r["potential"] == "chern-simons")
        .unwrap();
    assert_eq!(num(row, "paper_value"), 0.188879);
    assert_eq!(row["lambda"], "2e-05");
}
