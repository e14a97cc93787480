mod common;

use common::{conjugate, models};
use corkscrew::cfk::{parse_complex_str, serialize_complex};
use corkscrew::io_cli::{bundled_complex, bundled_text, reference_complex, BUNDLED};
use corkscrew::Error;

#[test]
fn bundled_files_are_canonical() {
    for (name, _) in BUNDLED {
        let reference = reference_complex(name).unwrap();
        assert_eq!(bundled_text(name).unwrap(), serialize_complex(&reference), "{name}");
        let parsed = bundled_complex(name).unwrap();
        assert_eq!(serialize_complex(&parsed), bundled_text(name).unwrap());
        parsed.check_axioms().unwrap();
        parsed.complex().validate(true).unwrap();
    }
}

#[test]
fn round_trip_is_byte_identical() {
    for (i, x) in models().iter().enumerate() {
        for seed in 0..4 {
            let y = conjugate(x, seed * 31 + i as u64, 15);
            let text = serialize_complex(&y);
            let back = parse_complex_str(&text).unwrap();
            assert_eq!(serialize_complex(&back), text, "{}", y.name());
            assert_eq!(back.iota(), y.iota());
            assert_eq!(back.phi(), y.phi());
        }
    }
}

#[test]
fn missing_maps_are_filled_in() {
    let text = r#"{"name": "box", "generators": [
        {"id": "a", "gr": [0, 0]}, {"id": "b", "gr": [1, -1]},
        {"id": "c", "gr": [-1, 1]}, {"id": "d", "gr": [0, 0]}, {"id": "x", "gr": [0, 0]}],
      "differential": {"a": [["b", 1, 0], ["c", 0, 1]], "b": [["d", 0, 1]], "c": [["d", 1, 0]]}}"#;
    let x = parse_complex_str(text).unwrap();
    x.check_axioms().unwrap();
    assert!(x.is_iota_complex());
}

fn err(text: &str) -> Error {
    parse_complex_str(text).expect_err("should fail")
}

#[test]
fn parse_errors() {
    assert!(matches!(err(r#"{"name": "e", "generators": []}"#), Error::NoGenerators));
    assert!(matches!(
        err(r#"{"name": "e", "generators": [{"id": "x", "gr": [0, 0]}, {"id": "x", "gr": [0, 0]}]}"#),
        Error::DuplicateGenerator(id) if id == "x"
    ));
    assert!(matches!(
        err(r#"{"name": "e", "generators": [{"id": "x", "gr": [0, 0]}], "differential": {"x": [["y", 0, 0]]}}"#),
        Error::UnknownGenerator(id) if id == "y"
    ));
    match err("{\"name\": \"e\",\n  \"generators\": [{\"id\": 3}]}") {
        Error::Parse { line, column, .. } => {
            assert_eq!(line, 2);
            assert!(column > 0);
        }
        e => panic!("unexpected {e}"),
    }
    assert!(matches!(
        err(r#"{"name": "e", "generators": [{"id": "x", "gr": [0, 0]}], "extra": 1}"#),
        Error::Parse { .. }
    ));
    let bad_degree = r#"{"name": "e", "generators": [{"id": "a", "gr": [0, 0]}, {"id": "b", "gr": [0, 0]}],
        "differential": {"a": [["b", 1, 0]]}}"#;
    assert!(matches!(err(bad_degree), Error::BidegreeViolated { .. }));
    let not_s3 = r#"{"name": "e", "generators": [{"id": "a", "gr": [0, 0]}, {"id": "b", "gr": [1, -1]}],
        "differential": {"a": [["b", 1, 0]]}}"#;
    assert!(parse_complex_str(not_s3).is_err());
}

#[test]
fn map_entries_must_match_gradings() {
    let text = bundled_text("4_1").unwrap().replace(r#""b": [["c", 0, 0]]"#, r#""b": [["c", 1, 0]]"#);
    assert!(matches!(err(&text), Error::MapGrading { map, .. } if map == "iota"));
    let text = bundled_text("4_1").unwrap().replace(r#""b": [["b", 0, 0]]"#, r#""b": [["c", 0, 0]]"#);
    assert!(parse_complex_str(&text).is_err());
}
