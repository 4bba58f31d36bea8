use std::fmt::Write;

use super::ast::*;

pub fn escape_string(text: &str) -> String {
    let mut out = String::with_capacity(text.len() + 2);
    out.push('"');
    for c in text.chars() {
        match c {
            '"' => out.push_str("\\\""),
            '\\' => out.push_str("\\\\"),
            c => out.push(c),
        }
    }
    out.push('"');
    out
}

/// Canonical CSL text. Declarations are grouped by kind (stakeholders,
/// requirements, contracts, flows), each group in declaration order.
pub fn serialize(doc: &SpecDocument) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "spec {} version {}", escape_string(&doc.name), doc.version);

    if !doc.stakeholders.is_empty() {
        out.push('\n');
        for s in &doc.stakeholders {
            let _ = writeln!(out, "stakeholder {} role {}", s.id, escape_string(&s.role));
        }
    }
    if !doc.requirements.is_empty() {
        out.push('\n');
        for r in &doc.requirements {
            let _ = write!(out, "requirement {} owner {} status {}", r.id, r.owner, r.status);
            if let Some(text) = &r.text {
                let _ = write!(out, " text {}", escape_string(text));
            }
            out.push('\n');
        }
    }
    for c in &doc.contracts {
        out.push('\n');
        let _ = writeln!(out, "contract {} owner {} attribute {} {{", c.id, c.owner, c.attribute);
        for a in &c.assumptions {
            let _ = write!(out, "  assume {} {}", a.id, escape_string(&a.text));
            match &a.discharge {
                DischargeDecl::Pending => {}
                DischargeDecl::Accepted => out.push_str(" accepted"),
                DischargeDecl::By(refs) => {
                    let targets: Vec<String> = refs.iter().map(|r| r.target.to_string()).collect();
                    let _ = write!(out, " discharged_by [{}]", targets.join(", "));
                }
            }
            out.push('\n');
        }
        for g in &c.guarantees {
            let _ = writeln!(out, "  guarantee {} {}", g.id, escape_string(&g.text));
        }
        out.push_str("}\n");
    }
    if !doc.flows.is_empty() {
        out.push('\n');
        for f in &doc.flows {
            let _ = writeln!(out, "flow {} -> {} carries [{}]", f.from, f.to, f.carries.join(", "));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::super::parse;
    use super::*;

    #[test]
    fn header_only_document() {
        assert_eq!(serialize(&SpecDocument::new("x", 1)), "spec \"x\" version 1\n");
    }

    #[test]
    fn quotes_are_escaped() {
        let mut doc = SpecDocument::new("say \"hi\" \\ bye", 1);
        doc.stakeholders.push(StakeholderDecl {
            id: "s".into(),
            role: "the \"owner\"".into(),
            span: SourceSpan::default(),
        });
        let text = serialize(&doc);
        assert!(text.starts_with("spec \"say \\\"hi\\\" \\\\ bye\" version 1\n"));
        assert!(text.contains("role \"the \\\"owner\\\"\""));
        assert!(parse(&text, "t").unwrap().same_content(&doc));
    }

    #[test]
    fn normalizes_whitespace_and_comments() {
        let messy = "# header\nspec   \"m\"\n version 4  stakeholder a role \"r\"   requirement T owner a status open\ncontract C owner a attribute X{assume A \"t\" discharged_by[T,C.G]guarantee G \"g\"}flow a->a carries[T]";
        let text = serialize(&parse(messy, "m").unwrap());
        assert_eq!(
            text,
            "spec \"m\" version 4\n\nstakeholder a role \"r\"\n\nrequirement T owner a status open\n\ncontract C owner a attribute X {\n  assume A \"t\" discharged_by [T, C.G]\n  guarantee G \"g\"\n}\n\nflow a -> a carries [T]\n"
        );
    }
}
