//! Replacement quality-model and article-mapping files.
//!
//! ```text
//! model_file   := ["model" STRING] (attribute | alias)*
//! attribute    := "attribute" IDENT [STRING] ["source" STRING] ["definition" STRING] "{" sub* "}"
//! sub          := "sub" IDENT [STRING] ["source" STRING] ["definition" STRING]
//! alias        := "alias" STRING "->" IDENT
//!
//! mapping_file := ["mapping" STRING] article*
//! article      := "article" IDENT STRING "maps" "[" IDENT {"," IDENT} "]"
//! ```
//!
//! Models are exactly two levels deep; a `{` after a `sub` is rejected.

use std::collections::BTreeMap;

use super::lexer::TokenKind;
use super::parser::{Cursor, PResult};
use super::{ParseError, SourceSpan};
use crate::act_mapping::{Article, MappingTable};
use crate::quality_model::{AttributeId, Characteristic, DefinitionSource, QualityModel, SubCharacteristic};

const MODEL_KEYWORDS: &[&str] = &["attribute", "alias"];
const MAPPING_KEYWORDS: &[&str] = &["article"];

fn attribute_id(cur: &mut Cursor<'_>, what: &str) -> PResult<AttributeId> {
    let span = cur.current_span();
    let name = cur.expect_ident(what)?;
    AttributeId::new(name).map_err(|e| ParseError::new(span, e.to_string()))
}

fn optional_header(cur: &mut Cursor<'_>, keyword: &str, default: &str) -> String {
    if !cur.is_word(keyword) {
        return default.to_string();
    }
    let from = cur.position();
    cur.advance();
    match cur.expect_string(&format!("{keyword} name string")) {
        Ok(name) => name,
        Err(e) => {
            cur.errors.push(e);
            let keywords = if keyword == "model" {
                MODEL_KEYWORDS
            } else {
                MAPPING_KEYWORDS
            };
            cur.sync_to(keywords, from);
            default.to_string()
        }
    }
}

struct Details {
    display: Option<String>,
    source: DefinitionSource,
    definition: String,
}

fn details(cur: &mut Cursor<'_>) -> PResult<Details> {
    let display = match cur.peek() {
        TokenKind::Str(_) => Some(cur.expect_string("display name")?),
        _ => None,
    };
    let mut source = DefinitionSource::Other;
    if cur.is_word("source") {
        cur.advance();
        let span = cur.current_span();
        let text = cur.expect_string("definition source string")?;
        source = DefinitionSource::parse(&text).ok_or_else(|| {
            let mut e = ParseError::new(span, format!("unknown definition source `{text}`"));
            e.expected = [
                "Paper-TableI",
                "ISO25059",
                "ISO25010",
                "ISO25012",
                "ISO8800-derived",
                "Other",
            ]
            .iter()
            .map(|s| s.to_string())
            .collect();
            e
        })?;
    }
    let mut definition = String::new();
    if cur.is_word("definition") {
        cur.advance();
        definition = cur.expect_string("definition string")?;
    }
    Ok(Details {
        display,
        source,
        definition,
    })
}

fn characteristic(cur: &mut Cursor<'_>) -> PResult<Characteristic> {
    cur.expect_keyword("attribute")?;
    let id = attribute_id(cur, "characteristic id")?;
    let d = details(cur)?;
    cur.expect_token(TokenKind::LBrace)?;
    let mut children = Vec::new();
    loop {
        match cur.peek() {
            TokenKind::RBrace => {
                cur.advance();
                break;
            }
            TokenKind::Word(w) if w == "sub" => {
                cur.advance();
                let sub_id = attribute_id(cur, "sub-characteristic id")?;
                let sd = details(cur)?;
                if *cur.peek() == TokenKind::LBrace {
                    return Err(cur.error_here(
                        format!("sub-characteristic `{sub_id}` cannot have children: quality models have exactly two levels"),
                        &["'sub'", "'}'"],
                    ));
                }
                children.push(SubCharacteristic {
                    display_name: sd.display.unwrap_or_else(|| sub_id.to_string()),
                    id: sub_id,
                    definition: sd.definition,
                    source: sd.source,
                });
            }
            other => {
                return Err(cur.error_here(
                    format!("expected 'sub' or '}}', found {}", other.describe()),
                    &["'sub'", "'}'"],
                ))
            }
        }
    }
    Ok(Characteristic {
        display_name: d.display.unwrap_or_else(|| id.to_string()),
        id,
        definition: d.definition,
        source: d.source,
        children,
    })
}

/// Parses a replacement quality model. Structural invariants (duplicate ids,
/// dangling aliases) are left to [`QualityModel::validate`].
pub fn parse_model(source: &str, file: &str) -> Result<QualityModel, Vec<ParseError>> {
    let mut cur = Cursor::new(source, file);
    let name = optional_header(&mut cur, "model", file);
    let mut characteristics = Vec::new();
    let mut aliases = BTreeMap::new();
    while !cur.at_eof() {
        let from = cur.position();
        let result = match cur.peek() {
            TokenKind::Word(w) if w == "attribute" => characteristic(&mut cur).map(|c| characteristics.push(c)),
            TokenKind::Word(w) if w == "alias" => (|| {
                cur.advance();
                let alias = cur.expect_string("alias text")?;
                cur.expect_token(TokenKind::Arrow)?;
                let target = attribute_id(&mut cur, "attribute id")?;
                aliases.insert(alias, target);
                Ok(())
            })(),
            other => Err(cur.error_here(
                format!("expected 'attribute' or 'alias', found {}", other.describe()),
                &["'attribute'", "'alias'"],
            )),
        };
        if let Err(e) = result {
            cur.errors.push(e);
            cur.sync_to(MODEL_KEYWORDS, from);
        }
    }
    let errors = cur.finish();
    if errors.is_empty() {
        Ok(QualityModel {
            name,
            characteristics,
            aliases,
        })
    } else {
        Err(errors)
    }
}

/// Parses a replacement article mapping. Attribute ids are not resolved here;
/// run [`MappingTable::validate`] against the active model.
pub fn parse_mapping(source: &str, file: &str) -> Result<MappingTable, Vec<ParseError>> {
    let mut cur = Cursor::new(source, file);
    optional_header(&mut cur, "mapping", file);
    let mut table = MappingTable::default();
    let mut seen: BTreeMap<Article, SourceSpan> = BTreeMap::new();
    while !cur.at_eof() {
        let from = cur.position();
        let result = (|| {
            cur.expect_keyword("article")?;
            let span = cur.current_span();
            let word = cur.expect_ident("article id (A9..A15)")?;
            let article = Article::parse(&word).ok_or_else(|| {
                let mut e = ParseError::new(span.clone(), format!("unknown article `{word}`"));
                e.expected = Article::ALL.iter().map(|a| a.to_string()).collect();
                e
            })?;
            let title = cur.expect_string("article title string")?;
            cur.expect_keyword("maps")?;
            let attrs = cur.bracket_list(|c| attribute_id(c, "attribute id"))?;
            if let Some(first) = seen.get(&article) {
                let mut e = ParseError::new(
                    span,
                    format!("duplicate article `{article}` (first declared at {first})"),
                );
                e.related.push(first.clone());
                return Err(e);
            }
            seen.insert(article, span);
            table.entries.insert(article, attrs.into_iter().collect());
            table.titles.insert(article, title);
            Ok(())
        })();
        if let Err(e) = result {
            cur.errors.push(e);
            cur.sync_to(MAPPING_KEYWORDS, from);
        }
    }
    let errors = cur.finish();
    if errors.is_empty() {
        Ok(table)
    } else {
        Err(errors)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::act_mapping::builtin_mapping;
    use crate::quality_model::builtin_extended_model;

    #[test]
    fn model_file_round_trip_to_struct() {
        let model = parse_model(
            r#"
            model "mini"
            attribute Transparency "Transparency" source "ISO25059" {
                sub Explainability source "Paper-TableI" definition "see ISO 22989"
                sub Traceability
            }
            attribute Safety { }
            alias "explicability" -> Explainability
            "#,
            "m.qm",
        )
        .unwrap();
        assert_eq!(model.name, "mini");
        assert_eq!(model.characteristics.len(), 2);
        assert_eq!(
            model.characteristics[0].children[0].source,
            DefinitionSource::PaperTableI
        );
        assert!(model.validate().is_empty());
        assert_eq!(
            model.find_attribute("Explicability").unwrap(),
            AttributeId::new("Explainability").unwrap()
        );
        assert_eq!(
            model.parent_of(&AttributeId::new("Traceability").unwrap()).unwrap(),
            AttributeId::new("Transparency").unwrap()
        );
    }

    #[test]
    fn model_depth_is_two() {
        let errors = parse_model("attribute A { sub B { sub C } }", "m.qm").unwrap_err();
        assert!(errors[0].message.contains("exactly two levels"));
    }

    #[test]
    fn model_defects_are_left_to_validation() {
        let model = parse_model(
            "attribute A { sub Traceability } attribute B { sub Traceability } alias \"foo\" -> Bar",
            "m.qm",
        )
        .unwrap();
        assert_eq!(model.validate().len(), 2);
    }

    #[test]
    fn model_bad_ids_and_sources() {
        let errors = parse_model("attribute lower { }\nattribute A source \"ISO9999\" { }", "m.qm").unwrap_err();
        assert_eq!(errors.len(), 2);
    }

    #[test]
    fn mapping_file() {
        let table = parse_mapping(
            "mapping \"custom\"\narticle A14 \"Human Oversight\" maps [Explainability, Explainability, Foo]\narticle a9 \"Risk\" maps [Testability]",
            "m.map",
        )
        .unwrap();
        assert_eq!(table.entries.len(), 2);
        assert_eq!(table.entries[&Article::A14].len(), 2);
        assert_eq!(table.title(Article::A9), "Risk");
        let findings = table.validate(&builtin_extended_model(), false);
        assert_eq!(findings.len(), 1);
        assert!(findings[0].message.contains("Foo"));
    }

    #[test]
    fn mapping_errors() {
        let errors = parse_mapping(
            "article A8 \"x\" maps [A]\narticle A9 \"x\" maps []\narticle A10 \"x\" maps [B]\narticle A10 \"y\" maps [C]",
            "m.map",
        )
        .unwrap_err();
        assert_eq!(errors.len(), 3, "{errors:?}");
        assert_eq!(errors[2].related.len(), 1);
    }

    #[test]
    fn builtin_mapping_serializes_to_equivalent_file() {
        let builtin = builtin_mapping();
        let text: String = builtin
            .entries
            .iter()
            .map(|(a, attrs)| {
                let names: Vec<&str> = attrs.iter().map(AttributeId::as_str).collect();
                format!("article {a} \"{}\" maps [{}]\n", a.title(), names.join(", "))
            })
            .collect();
        let parsed = parse_mapping(&text, "m.map").unwrap();
        assert_eq!(parsed.entries, builtin.entries);
    }
}
