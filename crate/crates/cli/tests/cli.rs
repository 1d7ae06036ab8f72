use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn ksforge(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ksforge"))
        .args(args)
        .env("KSFORGE_THREADS", "2")
        .output()
        .unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().unwrap()
}

fn path(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn catalog_counts() {
    for (n, expected) in [
        ("1", "3 observables, 3 maximal sets, 0 ID3s, 0 ID4s"),
        ("2", "15 observables, 15 maximal sets, 15 ID3s, 0 ID4s"),
        ("3", "63 observables, 135 maximal sets, 315 ID3s, 945 ID4s"),
    ] {
        let o = ksforge(&["catalog", "-n", n]);
        assert_eq!(code(&o), 0);
        assert!(stdout(&o).contains(expected), "{n}: {}", stdout(&o));
    }
}

#[test]
fn verify_exit_codes() {
    let o = ksforge(&["verify", "--fixture", "pentagram"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("KS proof: yes"));

    let dir = tempfile::tempdir().unwrap();
    let positive = dir.path().join("positive.txt");
    fs::write(
        &positive,
        "qubits: 3\nZII, IZI, IIZ, ZZZ\nZII, IXI, IIX, ZXX\nXII, IZI, IIX, XZX\nXII, IXI, IIZ, XXZ\n",
    )
    .unwrap();
    assert_eq!(code(&ksforge(&["verify", path(&positive)])), 1);

    let bad = dir.path().join("bad.txt");
    fs::write(&bad, "qubits: 3\nZII, IZI, IIZ, -ZZZ\n").unwrap();
    let o = ksforge(&["verify", path(&bad)]);
    assert_eq!(code(&o), 2);
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 2"));

    let empty = dir.path().join("empty.txt");
    fs::write(&empty, "qubits: 3\n").unwrap();
    assert_eq!(code(&ksforge(&["verify", path(&empty)])), 2);
    assert_eq!(code(&ksforge(&["verify", "missing-file.txt"])), 2);
}

#[test]
fn verify_json_reports_assignment_check() {
    let o = ksforge(&["verify", "--fixture", "square2", "--format", "json", "--assignment", "--critical"]);
    assert_eq!(code(&o), 0);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["is_ks_proof"], true);
}

fn census_rows(csv: &str) -> Vec<Vec<String>> {
    let mut lines = csv.lines();
    assert_eq!(lines.next(), Some("type_PB,detailed_symbol,count,example_basis_indices"));
    lines.map(|l| l.split(',').map(String::from).collect()).collect()
}

#[test]
fn pentagram_and_square_censuses() {
    let rows = census_rows(&stdout(&ksforge(&["proofs", "--fixture", "pentagram"])));
    let counts: Vec<(&str, &str)> = rows.iter().map(|r| (r[0].as_str(), r[2].as_str())).collect();
    assert_eq!(counts, [("36-11", "320"), ("38-13", "640"), ("40-15", "64")]);

    let rows = census_rows(&stdout(&ksforge(&["proofs", "--fixture", "square3"])));
    let total: usize = rows.iter().map(|r| r[2].parse::<usize>().unwrap()).sum();
    assert_eq!(total, 512);
}

#[test]
fn kite_critical_census() {
    let o = ksforge(&["proofs", "--fixture", "kite", "--critical"]);
    assert_eq!(code(&o), 0);
    let rows = census_rows(&stdout(&o));
    assert_eq!(rows.len(), 33);
    let total: usize = rows.iter().map(|r| r[2].parse::<usize>().unwrap()).sum();
    assert_eq!(total, 33152);
}

#[test]
fn kernel_cap_exit_code() {
    let o = ksforge(&["proofs", "--fixture", "kite", "--max-kernel-dim", "10"]);
    assert_eq!(code(&o), 3);
}

#[test]
fn search_output_verifies() {
    let dir = tempfile::tempdir().unwrap();
    let o = ksforge(&[
        "search", "-n", "3", "--symbol", "10_2-4_3 2_4", "--pair-overlap", "4:2:opposite",
        "--critical", "--out-dir", path(dir.path()),
    ]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let found = dir.path().join("diagram-1.txt");
    let o = ksforge(&["verify", path(&found), "--critical"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("10_2-4_3 2_4"));
}

#[test]
fn search_for_impossible_symbol_is_negative() {
    let o = ksforge(&["search", "-n", "2", "--symbol", "3_2-2_3"]);
    assert_eq!(code(&o), 1);
    assert!(String::from_utf8_lossy(&o.stderr).contains("no such diagram exists"));
    let o = ksforge(&["search", "-n", "2", "--symbol", "not a symbol"]);
    assert_eq!(code(&o), 2);
}

#[test]
fn dot_output() {
    let text = stdout(&ksforge(&["dot", "--fixture", "square2"]));
    assert!(text.starts_with("graph"));
    assert_eq!(text.matches("penwidth=4").count(), 1);
    assert_eq!(text.matches("[label=").count(), 9);
}

#[test]
fn proof_files_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let o = ksforge(&["proofs", "--fixture", "square2", "--out-dir", path(dir.path())]);
    assert_eq!(code(&o), 0);
    let mut system = None;
    let mut proofs = None;
    for e in fs::read_dir(dir.path()).unwrap() {
        let p = e.unwrap().path();
        let name = p.file_name().unwrap().to_str().unwrap().to_string();
        if name.starts_with("system-") {
            system = Some(p);
        } else if name.starts_with("proofs-") {
            proofs = Some(p);
        }
    }
    let (system, proofs) = (system.unwrap(), proofs.unwrap());
    let o = ksforge(&["check-proofs", "--system", path(&system), "--proofs", path(&proofs)]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));

    let mut v: serde_json::Value = serde_json::from_str(&fs::read_to_string(&proofs).unwrap()).unwrap();
    v["proofs"][0] = serde_json::json!([1, 2, 3]);
    fs::write(&proofs, v.to_string()).unwrap();
    let o = ksforge(&["check-proofs", "--system", path(&system), "--proofs", path(&proofs)]);
    assert_ne!(code(&o), 0);
}

#[test]
fn outputs_are_byte_identical() {
    for args in [
        &["proofs", "--fixture", "square3"][..],
        &["catalog", "-n", "3"],
        &["search", "-n", "3", "--symbol", "11_2-6_3 1_4", "--max-diagrams", "2"],
    ] {
        assert_eq!(ksforge(args).stdout, ksforge(args).stdout, "{args:?}");
    }
}
