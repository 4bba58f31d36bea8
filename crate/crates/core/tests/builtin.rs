use aiact_core::act_mapping::{builtin_mapping, validate_mapping, Article};
use aiact_core::quality_model::{builtin_extended_model, validate_model, AttributeId, DefinitionSource};

const SIZES: [(Article, usize); 7] = [
    (Article::A9, 3),
    (Article::A10, 13),
    (Article::A11, 1),
    (Article::A12, 8),
    (Article::A13, 6),
    (Article::A14, 10),
    (Article::A15, 9),
];

const DEFINED_TERMS: &[&str] = &[
    "Accountability",
    "Self-monitoring",
    "Interpretability",
    "Traceability",
    "Documentability",
    "Monitorability",
    "Human Oversight",
    "Ethical Integrity",
    "Availability",
    "Representativeness",
    "Independence",
    "Data Fairness",
    "Integrity",
    "Temporality",
];

#[test]
fn mapping_sizes_after_dedup() {
    let mapping = builtin_mapping();
    for (article, size) in SIZES {
        assert_eq!(mapping.attributes(article).map_or(0, |s| s.len()), size, "{article}");
    }
    let a11: Vec<&AttributeId> = mapping.attributes(Article::A11).unwrap().iter().collect();
    assert_eq!(a11, [&AttributeId::new("Traceability").unwrap()]);
}

#[test]
fn builtins_are_clean() {
    let model = builtin_extended_model();
    assert!(validate_model(&model).is_empty());
    assert!(validate_mapping(&builtin_mapping(), &model, true).is_empty());
}

#[test]
fn defined_terms_resolve() {
    let model = builtin_extended_model();
    for term in DEFINED_TERMS {
        assert!(model.find_attribute(term).is_ok(), "{term}");
    }
    let id = model.find_attribute("Explainability").unwrap();
    assert_eq!(
        model.sub_characteristic(&id).unwrap().source,
        DefinitionSource::PaperTableI
    );
}
