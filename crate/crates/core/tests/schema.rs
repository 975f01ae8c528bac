use lglab::schema::*;
use lglab::zoo::{build, catalog, ZooParams};

const SMALL: &str = r#"{
  "schema": 1,
  "name": "coin",
  "ontic_states": ["h", "t"],
  "preparations": {
    "fair": {"h": 0.5, "t": 0.5},
    "heads": {"h": 1.0}
  },
  "transformations": {
    "flip": {"rows": {"h": {"point": "t"}, "t": {"weights": {"h": 0.25, "t": 0.75}}}}
  },
  "measurements": {
    "look": {
      "outcomes": ["+1", "-1"],
      "response": {"h": {"+1": 1.0}, "t": {"-1": 1.0}},
      "update": {"+1": {"h": {"point": "h"}}, "-1": {"t": {"point": "t"}}}
    }
  },
  "quantity_classes": {"Q": ["look"]}
}"#;

fn invalid(text: &str) -> (String, Option<usize>) {
    match from_json(text) {
        Err(SchemaError::Invalid { path, line, .. }) => (path, line),
        other => panic!("expected a validation error, got {other:?}"),
    }
}

#[test]
fn hand_written_file_loads() {
    let b = from_json(SMALL).unwrap();
    assert_eq!(b.model.dim(), 2);
    let k = b.model.transformation("flip").unwrap();
    assert_eq!(k.prob(1, 1), 0.75);
    assert_eq!(b.class(None).unwrap().label(), "Q");
}

#[test]
fn every_zoo_model_round_trips_exactly() {
    let p = ZooParams { grid: 400, ..ZooParams::default() };
    for e in catalog() {
        let b = build(e.name, &p).unwrap();
        let text = to_json(&b);
        let back = from_json(&text).unwrap();
        assert_eq!(back, b, "{}", e.name);
        assert_eq!(to_json(&back), text, "{}", e.name);
    }
}

#[test]
fn document_records_the_version() {
    let doc = to_document(&from_json(SMALL).unwrap());
    assert_eq!(doc.schema, SCHEMA_VERSION);
    let text = SMALL.replace("\"schema\": 1", "\"schema\": 2");
    assert_eq!(invalid(&text), ("schema".into(), Some(2)));
}

#[test]
fn syntax_errors_carry_line_and_column() {
    let text = SMALL.replace("\"heads\": {\"h\": 1.0}", "\"heads\": {\"h\": 1.0,}");
    match from_json(&text) {
        Err(SchemaError::Parse { line, column, .. }) => {
            assert_eq!(line, 7);
            assert!(column > 0);
        }
        other => panic!("{other:?}"),
    }
    assert!(matches!(from_json("{\"schema\": 1, \"bogus\": 0}"), Err(SchemaError::Parse { .. })));
}

#[test]
fn malformed_rows_point_at_their_location() {
    let text = SMALL.replace("\"fair\": {\"h\": 0.5, \"t\": 0.5}", "\"fair\": {\"h\": 0.5, \"t\": 0.4}");
    assert_eq!(invalid(&text), ("preparations.fair".into(), Some(6)));

    let text = SMALL.replace("{\"h\": 0.25, \"t\": 0.75}", "{\"h\": 0.25, \"x\": 0.75}");
    assert_eq!(invalid(&text), ("transformations.flip.rows.t.x".into(), Some(10)));

    let text = SMALL.replace("{\"point\": \"t\"}", "{\"point\": \"z\"}");
    assert_eq!(invalid(&text), ("transformations.flip.rows.h".into(), Some(10)));

    let text = SMALL.replace("\"t\": {\"-1\": 1.0}", "\"t\": {\"-2\": 1.0}");
    let (path, line) = invalid(&text);
    assert_eq!(path, "measurements.look.response.t.-2");
    assert_eq!(line, Some(15));

    let err = from_json(&text).unwrap_err().to_string();
    assert!(err.starts_with("line 15: measurements.look.response.t.-2"), "{err}");
}

#[test]
fn missing_rows_are_reported() {
    let text = SMALL.replace(", \"t\": {\"weights\": {\"h\": 0.25, \"t\": 0.75}}", "");
    assert_eq!(invalid(&text).0, "transformations.flip.rows");
}

#[test]
fn references_are_checked() {
    let text = SMALL.replace("\"Q\": [\"look\"]", "\"Q\": [\"peek\"]");
    assert_eq!(invalid(&text).0, "quantity_classes.Q");

    let text = SMALL.replace(
        "\"quantity_classes\"",
        "\"protocols\": {\"p\": {\"preparation\": \"fair\", \"steps\": [{\"measurement\": \"peek\"}]}},\n  \"quantity_classes\"",
    );
    assert_eq!(invalid(&text).0, "protocols.p");
}

#[test]
fn locate_follows_nested_keys() {
    let text = "{\n \"a\": {\n  \"b\": 1\n },\n \"b\": 2\n}";
    assert_eq!(locate(text, &["a", "b"]), Some(3));
    assert_eq!(locate(text, &["b"]), Some(3));
    assert_eq!(locate(text, &["c"]), None);
}
