//! `aiact` command-line front end.
//!
//! Exit codes: 0 when nothing failed, 1 when verification failed, 2 for
//! parse and usage errors (no report is written in that case).

pub mod render;

use std::io::Write;
use std::path::{Path, PathBuf};

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use aiact_core::act_mapping::builtin_mapping;
use aiact_core::contracts::{flow_check, resolve};
use aiact_core::dsl::{merge, parse, parse_mapping, parse_model, ParseError, SpecDocument};
use aiact_core::finding::sort_findings;
use aiact_core::fixtures::{example, EXAMPLE_NAMES};
use aiact_core::quality_model::builtin_extended_model;
use aiact_core::verify::{trace, verify_with_context, TraceError, VerificationReport};
use aiact_core::{Finding, MappingTable, QualityModel, Severity};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "aiact",
    version,
    about = "Verify assume-guarantee contracts over an AI supply chain"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Parse and resolve the inputs, then print findings.
    Validate(InputArgs),
    /// Run full verification and print the report.
    Check(InputArgs),
    /// Print the per-article coverage table.
    Coverage(InputArgs),
    /// Print traceability chains for an article, attribute or requirement.
    Trace {
        #[command(flatten)]
        inputs: InputArgs,
        /// Article (A9..A15), attribute or requirement id.
        #[arg(long)]
        query: String,
    },
    /// Write a bundled example specification to standard output.
    Init {
        #[arg(long, value_parser = clap::builder::PossibleValuesParser::new(EXAMPLE_NAMES))]
        example: String,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum)]
pub enum Format {
    #[default]
    Text,
    Json,
}

#[derive(Debug, Args)]
pub struct InputArgs {
    /// CSL files to merge and verify.
    #[arg(required = true)]
    pub inputs: Vec<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Escalate warnings to errors.
    #[arg(long)]
    pub strict: bool,
    /// Replacement quality model file.
    #[arg(long)]
    pub model: Option<PathBuf>,
    /// Replacement article mapping file.
    #[arg(long)]
    pub mapping: Option<PathBuf>,
}

/// Reasons to stop with exit code 2.
struct Usage(Vec<String>);

impl From<String> for Usage {
    fn from(message: String) -> Self {
        Self(vec![message])
    }
}

fn read(path: &Path) -> Result<String, Usage> {
    std::fs::read_to_string(path).map_err(|e| Usage::from(format!("{}: {e}", path.display())))
}

fn parse_errors(errors: Vec<ParseError>) -> Usage {
    Usage(errors.iter().map(ParseError::to_string).collect())
}

struct Loaded {
    docs: Vec<SpecDocument>,
    model: QualityModel,
    mapping: MappingTable,
}

fn load(args: &InputArgs) -> Result<Loaded, Usage> {
    let model = match &args.model {
        None => builtin_extended_model(),
        Some(path) => {
            let model = parse_model(&read(path)?, &path.display().to_string()).map_err(parse_errors)?;
            let defects = model.validate();
            if !defects.is_empty() {
                return Err(Usage(
                    defects
                        .iter()
                        .map(|d| format!("{}: error: {d}", path.display()))
                        .collect(),
                ));
            }
            model
        }
    };
    let mapping = match &args.mapping {
        None => builtin_mapping(),
        Some(path) => parse_mapping(&read(path)?, &path.display().to_string()).map_err(parse_errors)?,
    };
    let mut docs = Vec::with_capacity(args.inputs.len());
    let mut errors = Vec::new();
    for path in &args.inputs {
        match parse(&read(path)?, &path.display().to_string()) {
            Ok(doc) => docs.push(doc),
            Err(e) => errors.extend(e),
        }
    }
    if !errors.is_empty() {
        return Err(parse_errors(errors));
    }
    Ok(Loaded { docs, model, mapping })
}

fn json_text<T: Serialize>(value: &T) -> String {
    let mut text = serde_json::to_string_pretty(value).expect("report serializes");
    text.push('\n');
    text
}

fn failed(findings: &[Finding], strict: bool) -> bool {
    findings
        .iter()
        .any(|f| f.severity == Severity::Error || (strict && f.severity == Severity::Warning))
}

/// Exit status for a completed verification.
pub fn report_exit_code(report: &VerificationReport, strict: bool) -> i32 {
    if failed(&report.findings, strict) || !report.all_established() {
        EXIT_FAILED
    } else {
        EXIT_OK
    }
}

/// Findings from parse + resolve + flow checks, without state computation.
pub fn validate_findings(docs: &[SpecDocument], model: &QualityModel, strict: bool) -> Vec<Finding> {
    let mut findings = match merge(docs) {
        Err(findings) => findings,
        Ok(doc) => match resolve(&doc, model, strict) {
            Err(findings) => findings,
            Ok(resolved) => {
                let mut findings = resolved.findings;
                findings.extend(flow_check(&resolved.graph, strict));
                findings
            }
        },
    };
    sort_findings(&mut findings);
    findings
}

fn execute(command: Command) -> Result<(String, i32), Usage> {
    match command {
        Command::Init { example: name } => {
            let text = example(&name).ok_or_else(|| Usage::from(format!("unknown example `{name}`")))?;
            Ok((text.to_string(), EXIT_OK))
        }
        Command::Validate(args) => {
            let loaded = load(&args)?;
            let findings = validate_findings(&loaded.docs, &loaded.model, args.strict);
            let code = if failed(&findings, args.strict) {
                EXIT_FAILED
            } else {
                EXIT_OK
            };
            let text = match args.format {
                Format::Text => render::render_findings(&findings),
                Format::Json => json_text(&json!({ "findings": findings })),
            };
            Ok((text, code))
        }
        Command::Check(args) => {
            let loaded = load(&args)?;
            let v = verify_with_context(&loaded.docs, &loaded.model, &loaded.mapping, args.strict);
            let text = match args.format {
                Format::Text => render::render_text(&v.report),
                Format::Json => json_text(&v.report),
            };
            Ok((text, report_exit_code(&v.report, args.strict)))
        }
        Command::Coverage(args) => {
            let loaded = load(&args)?;
            let v = verify_with_context(&loaded.docs, &loaded.model, &loaded.mapping, args.strict);
            let text = match args.format {
                Format::Text => render::render_coverage(&v.report.coverage),
                Format::Json => json_text(&json!({ "coverage": v.report.coverage })),
            };
            Ok((text, report_exit_code(&v.report, args.strict)))
        }
        Command::Trace { inputs: args, query } => {
            let loaded = load(&args)?;
            let v = verify_with_context(&loaded.docs, &loaded.model, &loaded.mapping, args.strict);
            match trace(&v, &query) {
                Ok(chains) => {
                    let text = match args.format {
                        Format::Text => render::render_trace(&query, &chains),
                        Format::Json => json_text(&json!({ "query": query, "chains": chains })),
                    };
                    Ok((text, EXIT_OK))
                }
                Err(e @ TraceError::UnknownQuery(_)) => Err(Usage::from(e.to_string())),
                Err(e @ TraceError::Unverified(_)) => {
                    let text = match args.format {
                        Format::Text => format!("{e}\n{}", render::render_findings(&v.report.findings)),
                        Format::Json => json_text(&json!({ "findings": v.report.findings })),
                    };
                    Ok((text, EXIT_FAILED))
                }
            }
        }
    }
}

/// Runs one invocation. `args` includes the program name.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = stdout.write_all(text.as_bytes());
                    EXIT_OK
                }
                _ => {
                    let _ = stderr.write_all(text.as_bytes());
                    EXIT_USAGE
                }
            };
        }
    };
    match execute(cli.command) {
        Ok((text, code)) => {
            let _ = stdout.write_all(text.as_bytes());
            code
        }
        Err(Usage(messages)) => {
            for m in messages {
                let _ = writeln!(stderr, "{m}");
            }
            EXIT_USAGE
        }
    }
}
