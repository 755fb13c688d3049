//! JSON documents: round trip, validation, and rejection of tampered files.

use reeb_complement::export::{from_json, to_json, validate, Document, JsonRational};
use reeb_complement::geom::rational::{int, ratio};
use reeb_complement::mesh::{BuiltinName, BuiltinSpec};
use reeb_complement::pipeline::{analyse, Input, RunConfig};
use reeb_complement::simplify::{ImportanceMeasure, Side, Simplification, SimplificationMode};

fn eq2_document() -> (Document, String) {
    let out = analyse(&RunConfig::new(Input::Builtin(BuiltinSpec { name: BuiltinName::Eq2, extent: int(3), resolution: 16 })))
        .unwrap();
    (out.document, out.json)
}

#[test]
fn round_trip_is_stable() {
    let (doc, json) = eq2_document();
    let back = from_json(&json).unwrap();
    assert_eq!(to_json(&back), json);
    let s = validate(&doc).unwrap();
    assert_eq!((s.rectangles, s.cells), (3, 6));
    assert_eq!(s.labelled, 6);
}

#[test]
fn simplified_document_records_cancellations() {
    let mut config = RunConfig::new(Input::Builtin(BuiltinSpec { name: BuiltinName::Eq2, extent: int(3), resolution: 16 }));
    config.simplify = Some((
        Simplification { measure: ImportanceMeasure::Persistence, threshold: int(2), mode: SimplificationMode::Consider },
        Side::Second,
    ));
    let out = analyse(&config).unwrap();
    let s = out.document.simplification.as_ref().unwrap();
    assert_eq!(s.cancellations.len(), 1);
    assert_eq!(s.cancellations[0].field, 2);
    assert_eq!(out.document.rectangles.len(), 1);
    validate(&out.document).unwrap();
}

#[test]
fn tampered_area_is_rejected() {
    let (mut doc, _) = eq2_document();
    doc.cells[0].area = JsonRational::from(&ratio(1, 3));
    let issues = validate(&doc).unwrap_err();
    assert!(issues.iter().any(|i| i.contains("area")), "{issues:?}");
}

#[test]
fn missing_cell_is_rejected() {
    let (mut doc, _) = eq2_document();
    doc.cells.pop();
    assert!(validate(&doc).is_err());
}

#[test]
fn unknown_label_is_rejected() {
    let (mut doc, _) = eq2_document();
    doc.cells[1].label = Some("OVERLAPPING".into());
    let issues = validate(&doc).unwrap_err();
    assert!(issues.iter().any(|i| i.contains("label")), "{issues:?}");
}

#[test]
fn unreduced_rational_is_rejected() {
    let (mut doc, _) = eq2_document();
    let r = &mut doc.rectangles[0].bounds.x[1];
    r.num = format!("{}0", r.num);
    r.den = format!("{}0", r.den);
    assert!(validate(&doc).is_err());
}

#[test]
fn sample_in_reeb_image_is_rejected() {
    let (mut doc, _) = eq2_document();
    // A vertex of the outer ring is on the cell boundary, never interior.
    doc.cells[0].sample = doc.cells[0].outer[0].clone();
    let issues = validate(&doc).unwrap_err();
    assert!(issues.iter().any(|i| i.contains("sample")), "{issues:?}");
}
