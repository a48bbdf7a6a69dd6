use std::path::Path;
use std::process::{Command, Output};

use k3_periods::pipeline::synthetic::{synthetic_fixture, write_fixture_files, FixtureKind, FixturePaths};
use k3_periods::sample::fermat_quartic;

fn k3p(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_k3p")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn fixture(kind: FixtureKind, seed: u64, dir: &Path) -> (FixturePaths, String) {
    let fx = synthetic_fixture(kind, seed).unwrap();
    let paths = write_fixture_files(&fx, dir).unwrap();
    let gamma: Vec<String> = fx.gamma.0.iter().map(i64::to_string).collect();
    (paths, gamma.join(","))
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn smoothness_reports() {
    let dir = tempfile::tempdir().unwrap();
    let fermat = dir.path().join("fermat.json");
    std::fs::write(&fermat, fermat_quartic().to_json()).unwrap();
    let o = k3p(&["smoothness", s(&fermat)]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "SMOOTH (norm of Q12 = 1/4)\n");

    let cone = dir.path().join("cone.json");
    std::fs::write(&cone, r#"[{"e":[4,0,0,0],"c":"1"},{"e":[0,4,0,0],"c":"1"},{"e":[0,0,4,0],"c":"1"}]"#).unwrap();
    let o = k3p(&["smoothness", s(&cone)]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(stdout(&o), "SINGULAR\n");

    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, "[{\"e\":[4,0,0,0],\n \"c\":}]").unwrap();
    let o = k3p(&["smoothness", s(&bad)]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 2"));
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(k3p(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(k3p(&["mp-degree"]).status.code(), Some(2));
}

#[test]
fn hyperplane_class_needs_only_the_lattice() {
    let dir = tempfile::tempdir().unwrap();
    let lattice = dir.path().join("lattice.json");
    std::fs::write(&lattice, k3_periods::lattice::LatticeData::reference().to_json()).unwrap();
    let o = k3p(&["decide", "--gamma", "h", "--lattice", s(&lattice)]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("InPicard (hyperplane class)"));
    assert!(stdout(&o).contains("test_mode"));
}

#[test]
fn decide_on_synthetic_fixtures() {
    let dir = tempfile::tempdir().unwrap();
    let sep_dir = dir.path().join("sep");
    std::fs::create_dir(&sep_dir).unwrap();
    let (p, g) = fixture(FixtureKind::Separated, 5, &sep_dir);
    let args = ["decide", "--gamma", &g, "--lattice", s(&p.lattice), "--quartic", s(&p.quartic), "--periods", s(&p.periods)];
    let o = k3p(&args);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    assert!(stdout(&o).contains("NotInPicard"));

    let (p, g) = fixture(FixtureKind::Zero, 5, dir.path());
    let args = ["decide", "--gamma", &g, "--lattice", s(&p.lattice), "--quartic", s(&p.quartic), "--periods", s(&p.periods)];
    let o = k3p(&args);
    assert_eq!(o.status.code(), Some(1));
    let out = stdout(&o);
    assert!(out.contains("Inconclusive (required bits: log2"), "{out}");
    assert!(out.contains("1/epsilon"));
    assert!(out.contains("log2log2 = "));
    assert!(out.contains("test_mode   off") || out.contains("test_mode  off"));

    let mut test_args = args.to_vec();
    test_args.push("--test-mode");
    let o = k3p(&test_args);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("InPicard (pairing below epsilon)"));
    assert!(stdout(&o).contains("on"));

    let mut bad = args.to_vec();
    bad.extend(["--test-log2-c", "0.001"]);
    assert_eq!(k3p(&bad).status.code(), Some(2));
}

#[test]
fn constants_cache_is_reproducible_and_reusable() {
    let dir = tempfile::tempdir().unwrap();
    let (p, g) = fixture(FixtureKind::Zero, 6, dir.path());
    let cache = dir.path().join("constants.json");
    let args = [
        "constants", "--quartic", s(&p.quartic), "--lattice", s(&p.lattice), "--periods", s(&p.periods), "--out", s(&cache),
    ];
    let o1 = k3p(&args);
    assert_eq!(o1.status.code(), Some(0), "{}", String::from_utf8_lossy(&o1.stderr));
    let first = std::fs::read(&cache).unwrap();
    let o2 = k3p(&args);
    assert_eq!(o1.stdout, o2.stdout);
    assert_eq!(first, std::fs::read(&cache).unwrap());
    let text = String::from_utf8(first).unwrap();
    assert!(text.contains("\"precision\": 256"));
    assert!(text.contains("\"c_lemma\": \"down\""));
    assert!(stdout(&o1).contains("C_lemma (down)"));

    let o = k3p(&[
        "decide", "--gamma", &g, "--lattice", s(&p.lattice), "--quartic", s(&p.quartic), "--periods", s(&p.periods),
        "--constants", s(&cache),
    ]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("Inconclusive"));
}

#[test]
fn nl_bound_table() {
    let o = k3p(&["nl-bound", "--delta", "9"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines.len(), 2);
    assert!(lines[0].contains("log2_deg_ledger") && lines[0].contains("log2_deg_closed"));
    let cells: Vec<&str> = lines[1].split_whitespace().collect();
    assert_eq!(&cells[..4], &["9", "5", "3", "8"]);

    let o = k3p(&["nl-bound", "--from", "1", "--to", "20", "--format", "csv"]);
    let out = stdout(&o);
    assert!(out.starts_with("delta,d,g,r,N,"));
    let deltas: Vec<&str> = out.lines().skip(1).map(|l| l.split(',').next().unwrap()).collect();
    assert_eq!(deltas, ["1", "4", "8", "9", "12", "16", "17", "20"]);
    assert_eq!(o.stdout, k3p(&["nl-bound", "--from", "1", "--to", "20", "--format", "csv"]).stdout);
}

#[test]
fn mp_degree_value() {
    let o = k3p(&["mp-degree", "--delta", "9", "--format", "csv"]);
    assert_eq!(o.status.code(), Some(0));
    let expected = k3_periods::mp_series::mp_degree_upper(9, 64).unwrap();
    assert_eq!(stdout(&o), format!("delta,mp_degree\n9,{expected}\n"));
}

#[test]
fn liouville_files() {
    let dir = tempfile::tempdir().unwrap();
    let f = dir.path().join("chain.txt");
    std::fs::write(&f, "2\n4\n").unwrap();
    let o = k3p(&["liouville", s(&f)]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).starts_with("FAIL at index 0 (growth)"));

    let o = k3p(&["liouville", "--divisor-only", s(&f)]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "PASS\npartial_sum = 3/4\nu = 3\ntheta_k = 4\n");

    std::fs::write(&f, "# descriptor chain\n2\nlog2log2:1024\n").unwrap();
    let o = k3p(&["liouville", s(&f)]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("PASS [divisibility unchecked at 0]"));

    std::fs::write(&f, "2\nseven\n").unwrap();
    let o = k3p(&["liouville", s(&f)]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 2"));
}
