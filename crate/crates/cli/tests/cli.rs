use std::io::Write;
use std::process::{Command, Output, Stdio};

fn bimoore(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_bimoore"))
        .args(args)
        .env_remove("BIMOORE_WORK_LIMIT")
        .output()
        .expect("run bimoore")
}

fn piped(args: &[&str], input: &[u8]) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_bimoore"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("spawn bimoore");
    child.stdin.take().unwrap().write_all(input).unwrap();
    child.wait_with_output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

#[test]
fn bound_tables() {
    let o = bimoore(&["bounds", "--d", "3", "--max", "11"]);
    assert_eq!(code(&o), 0);
    let t = stdout(&o);
    for cell in ["21 (was 24)", "66 (was 69)", "80 (was 88)", "222", "114"] {
        assert!(t.contains(cell), "missing {cell} in\n{t}");
    }
    let t = stdout(&bimoore(&[
        "bounds", "--d", "6", "--max", "10", "--format", "csv",
    ]));
    assert!(t.starts_with("d,r,s,n1_max,n2_max,bound,regime,annotation\n"));
    assert!(t.contains("6,10,10,66430,66430,132860,even,"), "{t}");

    let t = stdout(&bimoore(&[
        "bounds", "--d", "4", "--max", "2", "--format", "csv",
    ]));
    let rows: Vec<&str> = t.lines().skip(1).collect();
    assert_eq!(rows, ["4,2,2,4,4,8,even,"]);
}

#[test]
fn bad_ranges_are_usage_errors() {
    assert_eq!(code(&bimoore(&["bounds", "--d", "3", "--max", "1"])), 2);
    assert_eq!(code(&bimoore(&["bounds", "--d", "1", "--max", "5"])), 2);
    assert_eq!(code(&bimoore(&["bounds", "--d", "3"])), 2);
    assert_eq!(code(&bimoore(&["construct", "no-such-graph"])), 2);
    assert_eq!(code(&bimoore(&["construct", "g-prime"])), 2);
    assert_eq!(code(&bimoore(&["construct", "subdivision"])), 2);
    assert_eq!(code(&bimoore(&["enumerate", "3", "4", "3"])), 2);
}

#[test]
fn construct_then_verify_g_prime() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("g.g6");
    let path = path.to_str().unwrap();
    assert_eq!(
        code(&bimoore(&["construct", "g-prime", "8", "--out", path])),
        0
    );
    let o = bimoore(&["verify", path, "--expect", "8", "3", "3"]);
    assert_eq!(code(&o), 0, "{}", stdout(&o));
    let t = stdout(&o);
    assert!(t.contains("22 vertices"));
    assert!(t.contains("defect: 0"));
    assert!(t.contains("girth cap 4: holds"));
}

#[test]
fn verify_reports_mismatch() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("heawood.g6");
    let path = path.to_str().unwrap();
    bimoore(&["construct", "heawood", "--out", path]);
    let o = bimoore(&["verify", path, "--expect", "4", "3", "3"]);
    assert_eq!(code(&o), 1);
    assert!(stdout(&o).contains("FAIL: degrees (3, 3), expected (4, 3)"));
    let o = bimoore(&["verify", path, "--expect", "3", "3", "3"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("defect: 0"));
}

#[test]
fn semi_double_of_tutte_coxeter_has_defect_54() {
    let g = bimoore(&["construct", "semi-double", "--of", "tutte-coxeter"]);
    let o = piped(&["verify", "-", "--expect", "6", "3", "4"], &g.stdout);
    assert_eq!(code(&o), 0, "{}", stdout(&o));
    let t = stdout(&o);
    assert!(t.contains("45 vertices"));
    assert!(t.contains("defect: 54"));
}

#[test]
fn semi_double_of_heawood_is_moore() {
    let g = bimoore(&["construct", "semi-double", "--of", "heawood", "--side", "2"]);
    let o = piped(&["verify", "-", "--expect", "6", "3", "3"], &g.stdout);
    assert_eq!(code(&o), 0, "{}", stdout(&o));
    let t = stdout(&o);
    assert!(t.contains("21 vertices"));
    assert!(t.contains("defect: 0"));
    assert!(t.contains("defect against plain bound 24: 3"));
}

#[test]
fn subdivision_pipeline() {
    let g = bimoore(&["construct", "subdivision", "--of", "k33"]);
    for check in ["subdivision", "identity"] {
        let o = piped(&["spectrum", "-", "--check", check], &g.stdout);
        assert_eq!(code(&o), 0);
        assert!(stdout(&o).contains("subdivision identity holds"));
    }
    let o = piped(&["verify", "-", "--expect", "3", "2", "4"], &g.stdout);
    assert_eq!(code(&o), 0, "{}", stdout(&o));
}

#[test]
fn ktuple_pipeline() {
    for extra in [&[][..], &["--swap-sides"][..]] {
        let mut args = vec!["construct", "k-tuple", "3", "--of", "c6"];
        args.extend_from_slice(extra);
        let g = bimoore(&args);
        let o = piped(&["spectrum", "-", "--check", "identity"], &g.stdout);
        assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
        assert!(stdout(&o).contains("k-tuple identity holds"));
    }
    let h = bimoore(&["construct", "heawood"]);
    let o = piped(
        &["spectrum", "-", "--check", "ktuple", "--k", "2", "--base"],
        &h.stdout,
    );
    assert_eq!(code(&o), 0);
    let o = piped(&["spectrum", "-", "--check", "identity"], &h.stdout);
    assert_eq!(code(&o), 2);
    let o = piped(
        &["spectrum", "-", "--check", "ktuple", "--k", "2"],
        &h.stdout,
    );
    assert_eq!(code(&o), 1);
}

#[test]
fn plain_spectrum() {
    let o = bimoore(&["construct", "heawood"]);
    let o = piped(&["spectrum", "-"], &o.stdout);
    let t = stdout(&o);
    assert!(t.contains("factored: (x - 3) (x + 3) (x^2 - 2)^6"), "{t}");
    assert!(t.contains("characteristic polynomial: x^14 - 21x^12"));
}

#[test]
fn every_format_is_readable() {
    for format in ["graph6", "biadjacency"] {
        let g = bimoore(&["construct", "projective-plane", "3", "--format", format]);
        let o = piped(&["verify", "-", "--expect", "4", "4", "3"], &g.stdout);
        assert_eq!(code(&o), 0, "{format}: {}", stdout(&o));
        let o = piped(&["spectrum", "-"], &g.stdout);
        assert!(stdout(&o).contains("(x - 4) (x + 4) (x^2 - 3)^12"));
    }
    let g6 = bimoore(&["construct", "tutte-coxeter"]);
    let mat = piped(&["export", "-", "--format", "biadjacency"], &g6.stdout);
    let back = piped(&["export", "-", "--format", "graph6"], &mat.stdout);
    assert_eq!(stdout(&back), stdout(&g6));
    let dot = piped(&["export", "-", "--format", "dot"], &g6.stdout);
    assert!(stdout(&dot).starts_with("graph G {"));
}

#[test]
fn parse_errors_exit_1() {
    let o = piped(&["verify", "-"], b"this is not a graph\n");
    assert_eq!(code(&o), 1);
    assert!(String::from_utf8_lossy(&o.stderr).contains("parse error"));
    assert_eq!(code(&bimoore(&["verify", "/no/such/file"])), 1);
}

#[test]
fn enumerate_prints_census_line() {
    let dir = tempfile::tempdir().unwrap();
    let emit = dir.path().to_str().unwrap();
    let o = bimoore(&["enumerate", "4", "3", "3", "--emit", emit]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("18 generated, 1 with diameter 3"));
    let file = dir.path().join("r4-s3-d3-n6x8.g6");
    let o = bimoore(&["verify", file.to_str().unwrap(), "--expect", "4", "3", "3"]);
    assert_eq!(code(&o), 0, "{}", stdout(&o));
    assert!(stdout(&o).contains("defect: 0"));
}

#[test]
fn enumerate_fixed_order_and_all() {
    let o = bimoore(&["enumerate", "3", "2", "5", "--n1", "6", "--n2", "9"]);
    assert!(
        stdout(&o).contains("6 generated, 1 with diameter 5"),
        "{}",
        stdout(&o)
    );
    let o = bimoore(&[
        "enumerate",
        "3",
        "2",
        "4",
        "--n1",
        "6",
        "--n2",
        "9",
        "--all",
    ]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("generated"));
}

#[test]
fn work_limit_gives_exit_3() {
    let o = bimoore(&[
        "enumerate",
        "6",
        "3",
        "3",
        "--n1",
        "7",
        "--n2",
        "14",
        "--limit",
        "100",
    ]);
    assert_eq!(code(&o), 3);
    assert!(stdout(&o).contains("INCOMPLETE"));
    let o = Command::new(env!("CARGO_BIN_EXE_bimoore"))
        .args(["enumerate", "6", "3", "3", "--n1", "7", "--n2", "14"])
        .env("BIMOORE_WORK_LIMIT", "100")
        .output()
        .unwrap();
    assert_eq!(code(&o), 3);
}

#[test]
fn checkpoint_resumes() {
    let dir = tempfile::tempdir().unwrap();
    let ck = dir.path().join("ck.txt");
    let ck = ck.to_str().unwrap();
    let args = [
        "enumerate",
        "5",
        "3",
        "3",
        "--n1",
        "6",
        "--n2",
        "10",
        "--checkpoint",
        ck,
    ];
    let first = bimoore(&args);
    assert_eq!(code(&first), 0);
    assert!(std::fs::read_to_string(ck)
        .unwrap()
        .starts_with("# bimoore checkpoint"));
    let second = bimoore(&args);
    assert_eq!(stdout(&first), stdout(&second));
    assert!(stdout(&second).contains("45 generated, 2 with diameter 3"));
}
