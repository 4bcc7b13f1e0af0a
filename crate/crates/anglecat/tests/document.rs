use anglecat::builtin::{builtin_text, regenerate, NAMES};
use anglecat::document::{emit_document, parse_document, DocError};

#[test]
fn builtins_round_trip_byte_for_byte() {
    for name in NAMES {
        let text = builtin_text(name).unwrap();
        let doc = parse_document(text).unwrap();
        assert_eq!(emit_document(&doc), text, "{name}");
    }
}

#[test]
fn frozen_builtins_match_the_oracles() {
    for name in NAMES {
        assert_eq!(regenerate(name).unwrap(), builtin_text(name).unwrap(), "{name}");
    }
}

#[test]
fn presentation_round_trips_through_document() {
    for name in NAMES {
        let doc = parse_document(builtin_text(name).unwrap()).unwrap();
        let loaded = doc.load().unwrap();
        let back = anglecat::document::Document::from_parts(
            &loaded.pres,
            loaded.subcategory.clone(),
            &loaded.generators,
            loaded.n,
        );
        assert_eq!(back, doc);
    }
}

#[test]
fn truncated_file_reports_position() {
    let text = builtin_text("a3-cluster-2ct").unwrap();
    let cut = &text[..text.len() / 2];
    match parse_document(cut) {
        Err(DocError::Syntax { line, column, .. }) => {
            assert_eq!(line, cut.lines().count());
            assert!(column > 0);
        }
        other => panic!("{other:?}"),
    }
}

#[test]
fn unknown_field_is_rejected_with_position() {
    let text = builtin_text("stable-kx2").unwrap().replacen("\"field\": \"Q\",", "\"field\": \"Q\",\n  \"colour\": 3,", 1);
    match parse_document(&text) {
        Err(DocError::Syntax { line, msg, .. }) => {
            assert_eq!(line, 4);
            assert!(msg.contains("unknown field `colour`"), "{msg}");
        }
        other => panic!("{other:?}"),
    }
    let nested = builtin_text("stable-kx2").unwrap().replacen("\"value\":\"1\"}", "\"value\":\"1\",\"x\":0}", 1);
    assert!(matches!(parse_document(&nested), Err(DocError::Syntax { line: 10, .. })));
}

#[test]
fn version_and_field_are_checked() {
    let text = builtin_text("stable-kx2").unwrap();
    assert_eq!(parse_document(&text.replacen("\"anglecat\": 1", "\"anglecat\": 7", 1)), Err(DocError::Version(7)));
    assert!(matches!(parse_document(&text.replacen("\"Q\"", "\"F2\"", 1)), Err(DocError::Field(_))));
}

#[test]
fn integers_are_accepted_as_scalars() {
    let text = builtin_text("stable-kx2").unwrap().replace("\"value\":\"1\"", "\"value\":1");
    let doc = parse_document(&text).unwrap();
    assert_eq!(emit_document(&doc), builtin_text("stable-kx2").unwrap());
}

#[test]
fn out_of_range_indices_are_invariant_failures() {
    let text = builtin_text("stable-kx2").unwrap();
    let bad = text.replacen("{\"src\":0,\"mid\":0,\"dst\":0,\"f\":0", "{\"src\":0,\"mid\":0,\"dst\":0,\"f\":5", 1);
    assert!(matches!(parse_document(&bad).unwrap().presentation(), Err(DocError::Invalid(_))));
    let bad = text.replacen("\"subcategory\": [1]", "\"subcategory\": [9]", 1);
    assert!(matches!(parse_document(&bad).unwrap().load(), Err(DocError::Invalid(_))));
    let bad = text.replacen("[\"0\",\"1\"]", "[\"1\"]", 1);
    assert!(matches!(parse_document(&bad).unwrap().presentation(), Err(DocError::Invalid(_))));
}
