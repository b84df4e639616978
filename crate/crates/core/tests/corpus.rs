use sphclosure::io::{self, emit_orbit_table, TableFormat};
use sphclosure::orbits::all_orbits;

#[test]
fn every_bundled_system_validates() {
    for e in io::corpus() {
        let report = e.system.validate();
        assert!(report.is_ok(), "{}: {report}", e.name);
    }
}

#[test]
fn golden_replay() {
    let failures: Vec<String> = io::corpus().iter().flat_map(io::replay).collect();
    assert!(failures.is_empty(), "{}", failures.join("\n"));
}

#[test]
fn so11_table_layout() {
    let e = io::corpus_entry("so11_model").unwrap();
    let t = all_orbits(&e.system, &e.divisor("d_alpha2").unwrap()).unwrap();
    let text = emit_orbit_table(&t, TableFormat::Table);
    assert!(text.starts_with(" Maximal Orbits"));
    assert!(text.contains("{2a2+2a3+2a4+2a5}"));
    assert_eq!(t.classes.len(), 6);
}

#[test]
fn serialize_is_a_fixed_point() {
    for e in io::corpus() {
        let once = io::serialize(&e);
        let again = io::serialize(&io::parse_input(once.as_bytes()).unwrap());
        assert_eq!(once, again, "{}", e.name);
    }
}

#[test]
fn orbit_tables_are_deterministic() {
    let e = io::corpus_entry("ex3").unwrap();
    let d = e.divisor("dplus_alpha1").unwrap();
    let a = emit_orbit_table(&all_orbits(&e.system, &d).unwrap(), TableFormat::Json);
    let b = emit_orbit_table(&all_orbits(&e.system, &d).unwrap(), TableFormat::Json);
    assert_eq!(a, b);
}

const TINY: &str = r#"{
  "rootsystem": [{"kind": "A", "rank": 1}],
  "sigma": [[1]],
  "colors": [
    {"id": "p", "kind": "a", "moved_by": [1], "pairing": [1], "mult": 2},
    {"id": "m", "kind": "KIND", "moved_by": [1], "pairing": [1]}
  ]
}"#;

#[test]
fn unknown_color_kind_names_the_field() {
    let err = io::parse_input(TINY.replace("KIND", "c").as_bytes()).unwrap_err();
    assert_eq!(err.to_string(), "colors[1].kind: unknown color kind \"c\" (expected \"a\", \"2a\" or \"b\")");
}

#[test]
fn inline_multiplicities_form_a_divisor() {
    let e = io::parse_input(TINY.replace("KIND", "a").as_bytes()).unwrap();
    let d = e.divisor(io::INLINE_DIVISOR).unwrap();
    assert_eq!(d.n(e.system.color_index("p").unwrap()), 2);
    assert_eq!(d.n(e.system.color_index("m").unwrap()), 0);
}

#[test]
fn invalid_pairings_are_reported() {
    let bad = TINY.replace("KIND", "a").replace(r#""pairing": [1]}"#, r#""pairing": [0]}"#);
    match io::parse_input(bad.as_bytes()) {
        Err(io::InputError::Invalid(report)) => assert!(!report.is_ok()),
        other => panic!("expected a validation failure, got {other:?}"),
    }
}

#[test]
fn malformed_json_has_a_location() {
    let err = io::parse_input(b"{\"rootsystem\": [}").unwrap_err();
    assert!(matches!(err, io::InputError::Json { line: 1, .. }), "{err}");
}

#[test]
fn empty_table_is_header_only() {
    let t = sphclosure::orbits::OrbitTable {
        records: vec![],
        classes: vec![],
        faithfulness: sphclosure::orbits::FaithfulnessReport {
            fd1_violation: None,
            fd2_violations: vec![],
            spherically_closed: true,
        },
    };
    let text = emit_orbit_table(&t, TableFormat::Table);
    assert_eq!(text.lines().count(), 1);
    assert!(text.contains("Sigma(delta_Z')"));
    assert_eq!(emit_orbit_table(&t, TableFormat::Json).trim(), "[]");
}

#[test]
fn json_records_have_the_documented_fields() {
    let e = io::corpus_entry("spin7_model").unwrap();
    let t = all_orbits(&e.system, &e.divisor("d_alpha2").unwrap()).unwrap();
    let v: serde_json::Value = serde_json::from_str(&emit_orbit_table(&t, TableFormat::Json)).unwrap();
    let recs = v.as_array().unwrap();
    assert_eq!(recs.len(), 4);
    for r in recs {
        let keys: Vec<&str> = r.as_object().unwrap().keys().map(String::as_str).collect();
        assert_eq!(keys, ["class_id", "doubling", "is_minimal", "sigma_w", "sigma_z", "sigma_zprime"]);
    }
}
