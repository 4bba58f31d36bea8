use std::fmt::Write;

use aiact_core::verify::{TraceChain, VerificationReport};
use aiact_core::{CoverageRecord, Finding};

const NONE: &str = "(none)";

fn section(out: &mut String, title: &str, lines: &[String]) {
    if !out.is_empty() {
        out.push('\n');
    }
    out.push_str(title);
    out.push('\n');
    if lines.is_empty() {
        out.push_str(NONE);
        out.push('\n');
    }
    for line in lines {
        out.push_str(line);
        out.push('\n');
    }
}

/// `A14  Human Oversight  1/10  10.0%`
pub fn coverage_line(record: &CoverageRecord) -> String {
    let percent = if record.mapped == 0 {
        0.0
    } else {
        record.established as f64 * 100.0 / record.mapped as f64
    };
    format!(
        "{}  {}  {}/{}  {percent:.1}%",
        record.article, record.title, record.established, record.mapped
    )
}

pub fn render_findings(findings: &[Finding]) -> String {
    let mut out = String::new();
    section(
        &mut out,
        "FINDINGS",
        &findings.iter().map(Finding::to_string).collect::<Vec<_>>(),
    );
    out
}

pub fn render_coverage(coverage: &[CoverageRecord]) -> String {
    let mut out = String::new();
    section(
        &mut out,
        "COVERAGE (tool metric, not a legal measure)",
        &coverage.iter().map(coverage_line).collect::<Vec<_>>(),
    );
    out
}

fn tally<'a, V: 'a>(values: impl Iterator<Item = &'a V>, holds: impl Fn(&V) -> bool) -> (usize, usize) {
    values.fold(
        (0, 0),
        |(yes, no), v| if holds(v) { (yes + 1, no) } else { (yes, no + 1) },
    )
}

pub fn render_text(report: &VerificationReport) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "SPEC {} version {}", report.spec.name, report.spec.version);
    let _ = writeln!(
        out,
        "{} error(s), {} warning(s), {} info",
        report.error_count(),
        report.warning_count(),
        report.count(aiact_core::Severity::Info)
    );

    section(
        &mut out,
        "FINDINGS",
        &report.findings.iter().map(Finding::to_string).collect::<Vec<_>>(),
    );

    let state = &report.state;
    let mut lines = Vec::new();
    if !state.is_empty() {
        let (f, u) = tally(state.requirements.values(), |v| v.is_fulfilled());
        lines.push(format!("requirements: {} ({f} fulfilled, {u} unfulfilled)", f + u));
        let (f, u) = tally(state.assumptions.values(), |v| v.is_fulfilled());
        lines.push(format!("assumptions: {} ({f} fulfilled, {u} unfulfilled)", f + u));
        let (e, n) = tally(state.guarantees.values(), |v| v.is_established());
        lines.push(format!("guarantees: {} ({e} established, {n} not-established)", e + n));
        for (id, g) in &state.guarantees {
            lines.push(format!("  {id}: {}", g.as_str()));
        }
    }
    section(&mut out, "STATE", &lines);

    section(
        &mut out,
        "ESTABLISHED ATTRIBUTES",
        &report.established.iter().map(|a| a.to_string()).collect::<Vec<_>>(),
    );
    section(
        &mut out,
        "COVERAGE (tool metric, not a legal measure)",
        &report.coverage.iter().map(coverage_line).collect::<Vec<_>>(),
    );
    section(
        &mut out,
        "CYCLES",
        &report.cycles.iter().map(|c| c.render()).collect::<Vec<_>>(),
    );
    section(
        &mut out,
        "ACCEPTED",
        &report
            .accepted
            .iter()
            .map(|a| format!("{}: {}", a.id, a.text))
            .collect::<Vec<_>>(),
    );
    out
}

pub fn render_trace(query: &str, chains: &[TraceChain]) -> String {
    let mut out = String::new();
    section(
        &mut out,
        &format!("TRACE {query}"),
        &chains.iter().map(TraceChain::to_string).collect::<Vec<_>>(),
    );
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use aiact_core::verify::{Cycle, VerificationReport};

    #[test]
    fn empty_report_has_placeholders() {
        let text = render_text(&VerificationReport::default());
        for title in [
            "FINDINGS",
            "STATE",
            "ESTABLISHED ATTRIBUTES",
            "COVERAGE",
            "CYCLES",
            "ACCEPTED",
        ] {
            assert!(text.contains(title), "{title} missing");
        }
        assert_eq!(text.matches(NONE).count(), 6);
    }

    #[test]
    fn one_cycle_on_one_line() {
        let mut report = VerificationReport::default();
        report.cycles.push(Cycle {
            ids: vec!["X.A1".into(), "Y.G1".into(), "Y.A1".into(), "X.G1".into()],
            spans: Vec::new(),
        });
        let text = render_text(&report);
        assert!(text.contains("CYCLES\nX.A1 -> Y.G1 -> Y.A1 -> X.G1\n"), "{text}");
    }
}
