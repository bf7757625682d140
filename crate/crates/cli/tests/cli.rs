use std::f64::consts::PI;
use std::process::{Command, Output};

fn pizza(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_pizza"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn coeff_prints_exact_rows() {
    let o = pizza(&["coeff", "--m", "3", "--j-max", "2"]);
    assert!(o.status.success());
    let s = stdout(&o);
    assert!(s.contains(" 1/8 "));
    assert!(s.contains(" 3/128 "));

    let o = pizza(&["coeff", "--m", "5", "--j-max", "2", "--n", "5"]);
    assert!(stdout(&o).contains("-1/128"));

    let o = pizza(&["coeff", "--m", "6"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn inequity_methods_and_domain_errors() {
    let o = pizza(&["inequity", "--alpha", "0", "--a", "0.5", "--n", "3", "--method", "series"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("g = 0.0000000000000000e0"));

    let o = pizza(&["inequity", "--alpha", "0.3", "--a", "0.5", "--n", "4", "--method", "quadrature"]);
    assert!(o.status.success());
    let g: f64 = stdout(&o)
        .split_whitespace()
        .nth(3)
        .unwrap()
        .parse()
        .unwrap();
    assert!(g.abs() < 1e-10);

    let o = pizza(&["inequity", "--alpha", "0.3", "--a", "0.5", "--n", "4", "--method", "series"]);
    assert_eq!(o.status.code(), Some(2));

    let o = pizza(&["inequity", "--alpha", "0.3", "--a", "1.2", "--n", "3"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn degrees_flag_converts_alpha() {
    let deg = pizza(&["inequity", "--alpha", "30", "--degrees", "--a", "0.5", "--n", "3", "--method", "closed-form"]);
    let rad = pizza(&[
        "inequity",
        "--alpha",
        &(PI / 6.0).to_string(),
        "--a",
        "0.5",
        "--n",
        "3",
        "--method",
        "closed-form",
    ]);
    assert_eq!(stdout(&deg), stdout(&rad));
}

#[test]
fn extremum_and_bound_reports() {
    let o = pizza(&["extremum", "--a", "0.5", "--n", "3"]);
    assert!(o.status.success());
    let s = stdout(&o);
    assert!(s.contains("sign at argmax   = +1"));
    assert!(s.contains("M_a < bound:       PASS"));

    let o = pizza(&["bound", "--a", "0.5", "--n", "5"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("sign at argmax = -1"));

    let o = pizza(&["bound", "--a", "0.0", "--n", "3"]);
    assert_eq!(o.status.code(), Some(2));
    let o = pizza(&["extremum", "--a", "0.5", "--n", "1"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn sweep_writes_deterministic_csv() {
    let dir = tempfile::tempdir().unwrap();
    let first = dir.path().join("first.csv");
    let second = dir.path().join("second.csv");
    let args = |p: &std::path::Path| {
        vec![
            "sweep".to_string(),
            "--param".into(),
            "alpha".into(),
            "--start".into(),
            "0".into(),
            "--stop".into(),
            (2.0 * PI / 3.0).to_string(),
            "--steps".into(),
            "64".into(),
            "--a".into(),
            "0.5".into(),
            "--n".into(),
            "3".into(),
            "--out".into(),
            p.display().to_string(),
        ]
    };
    for p in [&first, &second] {
        let a = args(p);
        let o = pizza(&a.iter().map(String::as_str).collect::<Vec<_>>());
        assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    }
    let bytes = std::fs::read(&first).unwrap();
    assert_eq!(bytes, std::fs::read(&second).unwrap());

    let mut rdr = csv::Reader::from_reader(bytes.as_slice());
    assert_eq!(
        rdr.headers().unwrap().iter().collect::<Vec<_>>(),
        ["alpha", "a", "n", "g_series", "g_direct", "trunc_bound", "abs_diff", "bound_g"]
    );
    let rows: Vec<Vec<f64>> = rdr
        .records()
        .map(|r| r.unwrap().iter().map(|f| f.parse().unwrap()).collect())
        .collect();
    assert_eq!(rows.len(), 64);
    for r in &rows {
        assert!(r[6] <= r[5] + 1e-9);
        assert!(r[4].abs() < r[7]);
    }
}

#[test]
fn sweep_offset_needs_fixed_alpha() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("a.csv");
    let o = pizza(&[
        "sweep", "--param", "a", "--start", "0.05", "--stop", "0.95", "--n", "3", "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn verify_quick_passes() {
    let o = pizza(&["verify", "--level", "quick"]);
    assert!(o.status.success(), "{}", stdout(&o));
    let s = stdout(&o);
    for suite in ["coefficient agreement", "step coefficients", "oracle equivalence", "bounds", "symmetry", "pizza theorem"] {
        assert!(s.contains(suite), "missing {suite}");
    }
}
