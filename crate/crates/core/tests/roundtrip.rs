use aiact_core::dsl::{parse, serialize};
use aiact_core::fixtures::{TSR_EXAMPLE, TSR_TR4_OPEN};
use aiact_testkit::{arb_document, arb_invalid_text, span_is_valid};
use proptest::prelude::*;

#[test]
fn fixtures_round_trip() {
    for src in [TSR_EXAMPLE, TSR_TR4_OPEN] {
        let first = parse(src, "tsr.csl").unwrap();
        let again = parse(&serialize(&first), "tsr.csl").unwrap();
        assert!(first.same_content(&again));
        assert_eq!(serialize(&first), serialize(&again));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn parse_serialize_parse_is_parse(doc in arb_document()) {
        let text = serialize(&doc);
        let first = parse(&text, "gen.csl").map_err(|e| TestCaseError::fail(format!("{e:?}\n{text}")))?;
        prop_assert!(first.same_content(&doc));
        let second = parse(&serialize(&first), "gen.csl").unwrap();
        prop_assert!(second.same_content(&first));
    }

    #[test]
    fn invalid_documents_report_positioned_errors(text in arb_invalid_text()) {
        let errors = parse(&text, "bad.csl").expect_err("garbage line must be rejected");
        prop_assert!(!errors.is_empty());
        for e in &errors {
            prop_assert!(span_is_valid(&text, &e.span), "{} in\n{}", e, text);
            prop_assert_eq!(&e.span.file, "bad.csl");
        }
    }

    #[test]
    fn arbitrary_input_never_panics(text in "\\PC{0,80}") {
        if let Err(errors) = parse(&text, "any.csl") {
            prop_assert!(!errors.is_empty());
            for e in &errors {
                prop_assert!(span_is_valid(&text, &e.span), "{} in {:?}", e, text);
            }
        }
    }
}
