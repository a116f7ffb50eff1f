use serde_json::Value;
use sopq_web::{closure_json, diagram_json, vector_json};

fn parse(s: &str) -> Value {
    serde_json::from_str(s).unwrap()
}

fn total(points: &Value) -> u64 {
    points.as_array().unwrap().iter().map(|p| p["multiplicity"].as_u64().unwrap()).sum()
}

#[test]
fn diagram_for_so42() {
    let v = parse(&diagram_json(4, 2).unwrap());
    assert_eq!(total(&v["roots"]), 15);
    assert_eq!(total(&v["weights"]), 20);
    assert_eq!(v["verified"], true);
    assert_eq!(v["seeds"].as_array().unwrap().len(), 20);
    let double = v["weights"].as_array().unwrap().iter().find(|p| p["coeffs"] == serde_json::json!([2, 0])).unwrap();
    assert_eq!(double["multiplicity"], 1);
}

#[test]
fn diagram_rejects_bad_signatures() {
    assert!(diagram_json(1, 0).is_err());
    assert!(diagram_json(7, 6).is_err());
}

#[test]
fn weight_vector_matrix() {
    let v = parse(&vector_json(4, 2, "weight", "0,2", 1).unwrap());
    assert_eq!(v["eigen_identity"], true);
    let rows = v["rows"].as_array().unwrap();
    // S(2f_2) at x = 1: entries at (3,3), (6,3), (3,6), (6,6).
    assert_eq!(rows[2][2], "1");
    assert_eq!(rows[5][2], "1");
    assert_eq!(rows[2][5], "-1");
    assert_eq!(rows[5][5], "-1");
}

#[test]
fn root_vector_lookup_errors() {
    assert!(vector_json(4, 2, "root", "0,0", 3).is_ok());
    assert!(vector_json(4, 2, "root", "0,0", 4).is_err());
    assert!(vector_json(4, 2, "root", "2,0", 1).is_err());
    assert!(vector_json(4, 2, "root", "1", 1).is_err());
    assert!(vector_json(4, 2, "other", "1,0", 1).is_err());
    assert!(vector_json(3, 0, "root", "", 1).is_ok());
}

#[test]
fn closure_trace_reaches_s() {
    let v = parse(&closure_json(3, 2, 1).unwrap());
    assert_eq!(v["final_dim"], 14);
    assert_eq!(v["target_dim"], 14);
    assert!(closure_json(3, 2, 0).is_err());
    assert!(closure_json(3, 2, 15).is_err());
}
