use std::process::Command;

const INSTANCE_A: &str = "4\n0 1 2 9\n1 0 4 8\n2 4 0 16\n9 8 16 0\n";

fn tspdp(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_tspdp"))
        .args(args)
        .output()
        .expect("binary runs");
    (
        out.status.code().expect("exited normally"),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

fn write_tmp(dir: &tempfile::TempDir, name: &str, text: &str) -> String {
    let p = dir.path().join(name);
    std::fs::write(&p, text).unwrap();
    p.to_str().unwrap().to_owned()
}

#[test]
fn solve_instance_a_with_path() {
    let dir = tempfile::tempdir().unwrap();
    let f = write_tmp(&dir, "instA.tspd", INSTANCE_A);
    assert_eq!(
        tspdp(&["solve", &f, "--path"]),
        (
            0,
            "length=14 states=5\npath=1,3,2,4\n".into(),
            String::new()
        )
    );
    assert_eq!(tspdp(&["solve", &f]).1, "length=14 states=5\n");
}

#[test]
fn solve_missing_file() {
    let (code, out, err) = tspdp(&["solve", "definitely/missing.tspd"]);
    assert_eq!(code, 2);
    assert!(out.is_empty());
    assert!(err.contains("missing.tspd"), "{err}");
}

#[test]
fn solve_malformed_file() {
    let dir = tempfile::tempdir().unwrap();
    for (name, text) in [
        ("asym", "2\n0 4\n5 0\n"),
        ("syntax", "2\n0 x\nx 0\n"),
        ("zero", "2\n0 0\n0 0\n"),
    ] {
        let f = write_tmp(&dir, name, text);
        assert_eq!(tspdp(&["solve", &f]).0, 2, "{name}");
    }
}

#[test]
fn size_cap_needs_force() {
    let dir = tempfile::tempdir().unwrap();
    let (_, text, _) = tspdp(&["gen", "--n", "25", "--seed", "1"]);
    let f = write_tmp(&dir, "big.tspd", &text);
    let (code, _, err) = tspdp(&["solve", &f]);
    assert_eq!(code, 3);
    assert!(err.contains("cap"), "{err}");

    // --force lifts the cap; a small instance is unaffected
    let (_, small, _) = tspdp(&["gen", "--n", "6", "--seed", "1"]);
    let f = write_tmp(&dir, "small.tspd", &small);
    assert_eq!(tspdp(&["solve", &f, "--force"]).0, 0);
}

#[test]
fn gen_round_trips_through_solve() {
    let dir = tempfile::tempdir().unwrap();
    let (code, text, _) = tspdp(&["gen", "--n", "9", "--seed", "7", "--max-dist", "50"]);
    assert_eq!(code, 0);
    let inst = tspdp::parse_instance(&text).unwrap();
    let f = write_tmp(&dir, "g.tspd", &text);
    let expected = tspdp::solve(&inst).unwrap();
    assert_eq!(
        tspdp(&["solve", &f, "--path"]).1,
        format!(
            "length={} states={}\npath={}\n",
            expected.length, expected.states_computed, expected.path
        )
    );
}

#[test]
fn verify_default_run() {
    let (code, out, _) = tspdp(&["verify", "--max-n", "8", "--count", "20", "--seed", "42"]);
    assert_eq!(code, 0);
    assert_eq!(
        out,
        "verify n=2..8 count=20 seed=42 checked=140 mismatches=0\n"
    );
}

#[test]
fn bench_writes_csv_file() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("scaling.csv");
    let (code, out, _) = tspdp(&[
        "bench",
        "--min-n",
        "4",
        "--max-n",
        "8",
        "--reps",
        "2",
        "--csv",
        p.to_str().unwrap(),
    ]);
    assert_eq!(code, 0);
    assert!(out.is_empty());

    let mut rdr = csv::Reader::from_path(&p).unwrap();
    assert_eq!(
        rdr.headers().unwrap(),
        vec!["n", "states", "time_ns", "optimum"]
    );
    let rows: Vec<Vec<u64>> = rdr
        .records()
        .map(|r| r.unwrap().iter().map(|f| f.parse().unwrap()).collect())
        .collect();
    assert_eq!(
        rows.iter().map(|r| r[0]).collect::<Vec<_>>(),
        [4, 5, 6, 7, 8]
    );
    for r in &rows {
        assert_eq!(r[1], tspdp::expected_state_count(r[0] as usize).unwrap());
        assert!(r[2] > 0);
        let inst = tspdp::generate_random(r[0] as usize, 100, 42 + r[0]).unwrap();
        assert_eq!(r[3], tspdp::solve(&inst).unwrap().length);
    }
}

#[test]
fn bench_bad_range() {
    assert_eq!(tspdp(&["bench", "--min-n", "9", "--max-n", "4"]).0, 2);
    assert_eq!(tspdp(&["bench", "--min-n", "4", "--max-n", "25"]).0, 3);
    assert_eq!(tspdp(&["bench", "--min-n", "4"]).0, 2);
}
