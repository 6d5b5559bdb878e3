use std::fs;

use frf_core::frf::snapshot::{self, LoadOptions, OnCorrupt, SnapshotError};
use frf_core::{enumerate, Fraction, IntInvariants, Kind};

fn t0_batch(max_den: i64) -> IntInvariants {
    let inv = IntInvariants::new();
    for a in enumerate(max_den, Fraction::ZERO, Fraction::new(1, 2).unwrap()).unwrap() {
        inv.t0(&a).unwrap();
    }
    inv
}

#[test]
fn reload_and_resave_is_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    let first = dir.path().join("a.jsonl");
    let second = dir.path().join("b.jsonl");

    let inv = t0_batch(60);
    let written = snapshot::save(&inv, &[Kind::T0], &first).unwrap();
    assert_eq!(written, inv.t0_memo().store().len());
    assert!(!dir.path().join("a.jsonl.tmp").exists());

    let fresh = IntInvariants::new();
    let report = snapshot::load_into(&fresh, &first, LoadOptions::default()).unwrap();
    assert_eq!(report.loaded, written);
    assert!(report.validated >= 1);
    snapshot::save(&fresh, &[Kind::T0], &second).unwrap();
    assert_eq!(fs::read(&first).unwrap(), fs::read(&second).unwrap());

    // Loaded values are served without recomputation and agree with it.
    let a = Fraction::new(17, 59).unwrap();
    assert_eq!(fresh.t0(&a).unwrap(), inv.t0(&a).unwrap());
}

#[test]
fn tampered_record_is_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("t0.jsonl");
    snapshot::save(&t0_batch(12), &[Kind::T0], &path).unwrap();

    let text = fs::read_to_string(&path).unwrap();
    let target = text.lines().position(|l| l.contains("\"2/7\"")).unwrap();
    let tampered: String = text
        .lines()
        .enumerate()
        .map(|(i, l)| if i == target { l.replacen("- 1\"", "+ 1\"", 1) } else { l.to_string() } + "\n")
        .collect();
    assert_ne!(tampered, text);
    fs::write(&path, tampered).unwrap();

    let opts = LoadOptions { sample_rate: 1.0, ..LoadOptions::default() };
    let err = snapshot::load_into(&IntInvariants::new(), &path, opts).unwrap_err();
    match err {
        SnapshotError::Mismatch { line, frac, kind } => {
            assert_eq!(line, target + 1);
            assert_eq!(frac, Fraction::new(2, 7).unwrap());
            assert_eq!(kind, Kind::T0);
        }
        other => panic!("unexpected error {other}"),
    }
}

#[test]
fn missing_and_empty_files_load_nothing() {
    let dir = tempfile::tempdir().unwrap();
    let missing = dir.path().join("none.jsonl");
    let report = snapshot::load_into(&IntInvariants::new(), &missing, LoadOptions::default()).unwrap();
    assert_eq!(report.loaded, 0);

    let empty = dir.path().join("empty.jsonl");
    fs::write(&empty, "").unwrap();
    let report = snapshot::load_into(&IntInvariants::new(), &empty, LoadOptions::default()).unwrap();
    assert_eq!((report.loaded, report.validated), (0, 0));
}

#[test]
fn skip_mode_keeps_good_lines() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("mixed.jsonl");
    fs::write(
        &path,
        "{\"frac\":\"1/3\",\"kind\":\"T0\",\"poly\":\"X - 1\"}\n{\"frac\":\"1/3\"\n",
    )
    .unwrap();

    let abort = snapshot::load_into(&IntInvariants::new(), &path, LoadOptions::default()).unwrap_err();
    assert!(matches!(abort, SnapshotError::Corrupt { line: 2, .. }), "{abort}");

    let inv = IntInvariants::new();
    let opts = LoadOptions { on_corrupt: OnCorrupt::Skip, ..LoadOptions::default() };
    let report = snapshot::load_into(&inv, &path, opts).unwrap();
    assert_eq!(report.loaded, 1);
    assert_eq!(report.skipped.len(), 1);
    assert_eq!(report.skipped[0].0, 2);
}
