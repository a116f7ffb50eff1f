//! The (4,2) tables against the hand-transcribed golden file.

use std::path::PathBuf;

use sopq::report::{audit_exceptions, diff_golden, form_of_key, matrix_cells, GoldenExceptions, GoldenFile, Table};
use sopq::so_pq::LinearForm;
use sopq::{ExactScalar, Signature};

fn golden_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("golden")
}

fn golden() -> GoldenFile {
    GoldenFile::load(&golden_dir().join("so42_tables.json")).unwrap()
}

fn exceptions() -> GoldenExceptions {
    GoldenExceptions::load(&golden_dir().join("so42_exceptions.json")).unwrap()
}

fn s42() -> Signature {
    Signature::new(4, 2).unwrap()
}

#[test]
fn fresh_tables_match_golden_with_exceptions() {
    let sig = s42();
    let diff = diff_golden(&sig, &matrix_cells(&sig), &golden(), &exceptions()).unwrap();
    assert!(diff.passed(), "{diff:#?}");
    assert_eq!(diff.exceptions_applied, vec!["Weights/-f1+f2".to_string()]);
}

#[test]
fn without_exceptions_only_the_typo_cell_differs() {
    let sig = s42();
    let diff = diff_golden(&sig, &matrix_cells(&sig), &golden(), &GoldenExceptions::default()).unwrap();
    assert!(!diff.passed());
    assert_eq!(diff.mismatched_cells(), vec![(Table::Weights, "-f1+f2".to_string())]);
    assert_eq!(diff.mismatches.len(), 1);
    let m = &diff.mismatches[0];
    assert_eq!((m.row, m.col), (4, 6));
    assert_eq!(m.expected, ExactScalar::from_int(1));
    assert_eq!(m.found, ExactScalar::from_int(-1));
}

#[test]
fn one_flipped_sign_fails_exactly_one_cell() {
    let sig = s42();
    let cells = matrix_cells(&sig);
    for target in 0..cells.len() {
        let mut cells = cells.clone();
        let g = &mut cells[target].generators[0];
        let (r, c, v) = g.nonzero_entries().map(|(r, c, v)| (r, c, v.clone())).next().unwrap();
        g.set(r, c, -v);
        let diff = diff_golden(&sig, &cells, &golden(), &exceptions()).unwrap();
        assert!(!diff.passed());
        assert_eq!(diff.mismatched_cells(), vec![(cells[target].table, cells[target].key.clone())]);
    }
}

#[test]
fn other_signature_fails_on_signature() {
    let sig = Signature::new(3, 2).unwrap();
    let diff = diff_golden(&sig, &matrix_cells(&sig), &golden(), &exceptions()).unwrap();
    assert!(!diff.signature_match());
    assert!(!diff.passed());
}

#[test]
fn every_cell_is_covered() {
    let sig = s42();
    let cells = matrix_cells(&sig);
    let g = golden();
    assert_eq!(cells.len(), 25);
    assert_eq!(g.cells.len(), cells.len());
    for (a, b) in cells.iter().zip(&g.cells) {
        assert_eq!((a.table, &a.key), (b.table, &b.key));
    }
}

#[test]
fn every_exception_is_justified_by_a_failed_check() {
    let audits = audit_exceptions(&s42(), &golden(), &exceptions()).unwrap();
    assert_eq!(audits.len(), exceptions().exceptions.len());
    for a in &audits {
        assert!(a.justified(), "{a:?}");
    }
    for e in &exceptions().exceptions {
        assert!(!e.justification.trim().is_empty());
    }
}

#[test]
fn an_unneeded_exception_is_not_justified() {
    // Replacing a correct cell with itself: the printed form passes every check.
    let g = golden();
    let cell = g.cells.iter().find(|c| c.key == "f1").unwrap();
    let bogus: GoldenExceptions = serde_json::from_value(serde_json::json!({
        "exceptions": [{
            "table": "roots", "key": "f1", "rows": cell.rows,
            "check": "membership", "justification": "none"
        }]
    }))
    .unwrap();
    let audits = audit_exceptions(&s42(), &g, &bogus).unwrap();
    assert!(!audits[0].justified());
}

#[test]
fn cell_keys_parse_to_forms() {
    assert_eq!(form_of_key("-f1+f2", 2).unwrap(), LinearForm::new(vec![-1, 1]));
    assert_eq!(form_of_key("2f2", 2).unwrap(), LinearForm::new(vec![0, 2]));
    assert_eq!(form_of_key("s0[3]", 2).unwrap(), LinearForm::zero(2));
    assert!(form_of_key("f3", 2).is_err());
}

#[test]
fn corrupt_golden_file_is_an_error() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.json");
    std::fs::write(&path, "{ not json").unwrap();
    assert!(GoldenFile::load(&path).is_err());
    assert!(GoldenFile::load(&dir.path().join("missing.json")).is_err());
}
