use std::collections::BTreeSet;

use aiact_core::act_mapping::{builtin_mapping, Article, Ratio};
use aiact_core::dsl::{merge, parse, SpecDocument};
use aiact_core::quality_model::{builtin_extended_model, AttributeId};
use proptest::prelude::*;

fn all_ids() -> Vec<AttributeId> {
    let model = builtin_extended_model();
    model.ids().cloned().collect()
}

fn arb_established() -> impl Strategy<Value = BTreeSet<AttributeId>> {
    prop::sample::subsequence(all_ids(), 0..=all_ids().len()).prop_map(|v| v.into_iter().collect())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(250))]

    #[test]
    fn coverage_is_bounded_and_monotone(small in arb_established(), extra in arb_established()) {
        let mapping = builtin_mapping();
        let large: BTreeSet<AttributeId> = small.union(&extra).cloned().collect();
        let lo = mapping.coverage(&small);
        let hi = mapping.coverage(&large);
        prop_assert_eq!(lo.len(), hi.len());
        for (a, b) in lo.iter().zip(&hi) {
            prop_assert_eq!(a.article, b.article);
            prop_assert!(Ratio::new(0, 1) <= a.ratio && a.ratio <= Ratio::new(1, 1));
            prop_assert!(a.ratio <= b.ratio);
            prop_assert!(a.established <= a.mapped);
            prop_assert_eq!(a.mapped - a.established, a.missing.len());
        }
    }
}

#[test]
fn inverse_lookup_is_consistent_for_every_pair() {
    let mapping = builtin_mapping();
    for attr in all_ids() {
        let articles = mapping.articles_for_attribute(&attr);
        for article in Article::ALL {
            let mapped = mapping.attributes(article).is_some_and(|s| s.contains(&attr));
            assert_eq!(mapped, articles.contains(&article), "{article} / {attr}");
        }
    }
}

#[test]
fn full_and_empty_coverage() {
    let mapping = builtin_mapping();
    let all: BTreeSet<AttributeId> = all_ids().into_iter().collect();
    assert!(mapping.coverage(&all).iter().all(|r| r.ratio.is_one()));
    assert!(mapping.coverage(&BTreeSet::new()).iter().all(|r| r.established == 0));
}

fn part(name: &str, tag: &str) -> SpecDocument {
    let src = format!(
        "spec \"{name}\" version 1\nstakeholder s{tag} role \"r\"\nrequirement R{tag} owner s{tag} status open"
    );
    parse(&src, &format!("{name}.csl")).unwrap()
}

#[test]
fn merge_is_associative() {
    let (a, b, c) = (part("a", "1"), part("b", "2"), part("c", "3"));
    let left = merge(&[merge(&[a.clone(), b.clone()]).unwrap(), c.clone()]).unwrap();
    let right = merge(&[a.clone(), merge(&[b.clone(), c.clone()]).unwrap()]).unwrap();
    let flat = merge(&[a, b, c]).unwrap();
    assert_eq!(left, right);
    assert_eq!(left, flat);
    assert_eq!(flat.requirements.len(), 3);
}

#[test]
fn merge_rejects_cross_file_duplicates() {
    let findings = merge(&[part("a", "1"), part("b", "1")]).unwrap_err();
    assert_eq!(findings.len(), 2);
    assert!(findings.iter().all(|f| f.spans.len() == 2));
}
