//! Command-line surface for the crosscap kernel.
//!
//! Exit codes are a stable contract: 0 on success, 1 when a verification
//! fails, 2 on usage or precondition errors (reported under the kernel's
//! kebab-case error names).

mod svg;

use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::str::FromStr;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crosscap_core::abelian::abelianize_catalog;
use crosscap_core::builders::{build_lemma_a1, build_normal_generation, build_theorem_main2};
use crosscap_core::catalog::Context;
use crosscap_core::certificate::{
    verify_certificate, Certificate, CertificateBundle, NormalGenerationCertificate,
    VerificationReport,
};
use crosscap_core::mapping::{CurveMappingTable, MappingGroup, MappingStatus};
use crosscap_core::surface::{FixtureTable, SurfaceSpec, MAX_GENUS};
use crosscap_core::{Error, Result};

/// Environment variable naming a default fixture file.
const FIXTURES_ENV: &str = "CROSSCAP_FIXTURES";

const EXIT_OK: u8 = 0;
const EXIT_VERIFICATION: u8 = 1;
const EXIT_USAGE: u8 = 2;

#[derive(Parser)]
#[command(
    name = "crosscap",
    version,
    about = "Certificate kernel for crosscap-transposition generating sets of mapping class \
             groups of nonorientable surfaces"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy)]
struct GenusRange {
    start: usize,
    end: usize,
}

impl FromStr for GenusRange {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        let parse = |t: &str| t.parse::<usize>().map_err(|_| format!("bad genus `{t}`"));
        let (start, end) = match s.split_once("..") {
            None => {
                let g = parse(s)?;
                (g, g)
            }
            Some((a, b)) => {
                let b = b.strip_prefix('=').unwrap_or(b);
                (parse(a)?, parse(b)?)
            }
        };
        if start > end {
            return Err(format!("empty genus range `{s}`"));
        }
        Ok(GenusRange { start, end })
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum CertKind {
    /// The expression of a1 over ten crosscap transpositions.
    LemmaA1,
    /// The full generating-set bundle.
    Theorem2,
    /// Normal generation by u1.
    NormalGen,
}

#[derive(Subcommand)]
enum Command {
    /// Relation-catalog commands.
    Relations {
        #[command(subcommand)]
        action: RelationsAction,
    },
    /// Build a certificate, verify it, and optionally write it to disk.
    Cert {
        #[arg(value_enum)]
        kind: CertKind,
        #[arg(long)]
        genus: usize,
        #[arg(long, default_value_t = 0)]
        boundary: usize,
        #[arg(short, long)]
        output: Option<PathBuf>,
        #[arg(long)]
        fixtures: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Replay a stored certificate or bundle file.
    Verify {
        path: PathBuf,
        #[arg(long)]
        fixtures: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Curve-mapping table commands.
    MappingTable {
        #[command(subcommand)]
        action: MappingAction,
    },
    /// Abelianization diagnosis of the relation catalog, or of a relator
    /// file (one word per line).
    Abelianize {
        #[arg(long)]
        genus: usize,
        #[arg(long)]
        fixtures: Option<PathBuf>,
        /// Replace the catalog relators with the words in this file.
        #[arg(long)]
        relators: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Render curves as a deterministic SVG diagram.
    Render {
        #[arg(long)]
        genus: usize,
        /// Curve names (beta, mu4, alpha3, ...) or literal index sets like '{1,3,5}'.
        #[arg(required = true)]
        curves: Vec<String>,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum RelationsAction {
    /// Verify every catalog instance's homology shadow over a genus range.
    Verify {
        #[arg(long)]
        genus: GenusRange,
        #[arg(long)]
        fixtures: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
}

#[derive(Subcommand)]
enum MappingAction {
    /// Check every table entry against the homology representation.
    Check {
        #[arg(long)]
        genus: usize,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
}

fn load_fixtures(arg: &Option<PathBuf>, genus: usize) -> Result<FixtureTable> {
    let from_env = std::env::var_os(FIXTURES_ENV).map(PathBuf::from);
    let path = arg.clone().or(from_env);
    match path {
        Some(p) => {
            let text = std::fs::read_to_string(&p)
                .map_err(|e| Error::InvalidFixture(format!("cannot read {}: {e}", p.display())))?;
            FixtureTable::parse(&text)
        }
        None => Ok(FixtureTable::builtin(genus)),
    }
}

fn context(genus: usize, fixtures: &Option<PathBuf>) -> Result<Context> {
    Context::with_fixtures(genus, load_fixtures(fixtures, genus)?)
}

fn write_output(path: &Path, content: &str) -> Result<()> {
    std::fs::write(path, content)
        .map_err(|e| Error::Parse(format!("cannot write {}: {e}", path.display())))
}

#[derive(Serialize)]
struct GenusReport {
    genus: usize,
    composition: &'static str,
    instances: usize,
    warnings: Vec<String>,
    failures: Vec<String>,
    /// Generator matrices as hex-packed row bitstrings, rows in order.
    assignments: std::collections::BTreeMap<String, Vec<String>>,
}

fn run_relations_verify(
    range: GenusRange,
    fixtures: &Option<PathBuf>,
    format: Format,
) -> Result<u8> {
    if range.start < 2 || range.end > MAX_GENUS {
        return Err(Error::UnsupportedGenus(format!(
            "genus range must lie within [2, {MAX_GENUS}]"
        )));
    }
    let mut reports = Vec::new();
    let mut all_ok = true;
    for genus in range.start..=range.end {
        let ctx = context(genus, fixtures)?;
        let catalog = ctx.catalog()?;
        let mut failures = Vec::new();
        for instance in &catalog.instances {
            let lhs = ctx.rep().evaluate(&instance.lhs)?;
            let rhs = ctx.rep().evaluate(&instance.rhs)?;
            if lhs != rhs {
                failures.push(format!("{} [{}]", instance.rule, instance.anchor));
            }
        }
        all_ok &= failures.is_empty();
        let assignments = match format {
            Format::Json => ctx
                .rep()
                .assignments()?
                .into_iter()
                .map(|(gen, m)| (gen.to_string(), m.to_hex_rows()))
                .collect(),
            Format::Text => Default::default(),
        };
        reports.push(GenusReport {
            genus,
            composition: crosscap_core::homology::COMPOSITION_CONVENTION,
            instances: catalog.instances.len(),
            warnings: catalog.warnings,
            failures,
            assignments,
        });
    }
    match format {
        Format::Json => println!("{}", serde_json::to_string_pretty(&reports).unwrap()),
        Format::Text => {
            for r in &reports {
                println!("genus {}: {} instances verified", r.genus, r.instances);
                for w in &r.warnings {
                    println!("  warning: {w}");
                }
                for f in &r.failures {
                    println!("  FAIL {f}");
                }
            }
            if all_ok {
                println!("all relation shadows hold");
            }
        }
    }
    Ok(if all_ok { EXIT_OK } else { EXIT_VERIFICATION })
}

fn print_report(report: &VerificationReport) {
    let verdict = match &report.verdict {
        crosscap_core::certificate::Verdict::Accepted => "accepted".to_string(),
        crosscap_core::certificate::Verdict::Rejected { step, reason } => match step {
            Some(k) => format!("rejected at step {k}: {reason}"),
            None => format!("rejected: {reason}"),
        },
    };
    println!("{}: {verdict}", report.name);
    println!(
        "  lengths: expression {}, target {}, steps {}",
        report.lengths.expression, report.lengths.target, report.lengths.steps
    );
    if !report.assumptions.is_empty() {
        println!("  assumptions:");
        for a in &report.assumptions {
            println!("    {} -- {}", a.tag, a.anchor);
        }
    }
}

fn run_cert(
    kind: CertKind,
    genus: usize,
    boundary: usize,
    output: &Option<PathBuf>,
    fixtures: &Option<PathBuf>,
    format: Format,
) -> Result<u8> {
    let ctx = context(genus, fixtures)?;
    let mut reports: Vec<VerificationReport> = Vec::new();
    let json = match kind {
        CertKind::LemmaA1 => {
            let cert = build_lemma_a1(&ctx, boundary)?;
            reports.push(verify_certificate(&ctx, &cert));
            cert.to_json()
        }
        CertKind::Theorem2 => {
            let bundle = build_theorem_main2(&ctx, boundary)?;
            for cert in &bundle.certificates {
                reports.push(verify_certificate(&ctx, cert));
            }
            if format == Format::Text {
                println!("bundle axioms:");
                for a in &bundle.axioms {
                    println!("  {} -- {}", a.tag, a.anchor);
                }
            }
            bundle.to_json()
        }
        CertKind::NormalGen => {
            let ng = build_normal_generation(&ctx)?;
            if format == Format::Text {
                println!(
                    "factors: {} conjugates of u1; structural pattern holds: {}",
                    ng.factors.len(),
                    ng.factors_match_pattern()
                );
            }
            reports.push(verify_certificate(&ctx, &ng.certificate));
            ng.to_json()
        }
    };
    // Land the file before any printing: a closed stdout must not lose it.
    if let Some(path) = output {
        write_output(path, &json)?;
    }
    let all_ok = reports.iter().all(|r| r.verdict.is_accepted());
    match format {
        Format::Json => println!("{}", serde_json::to_string_pretty(&reports).unwrap()),
        Format::Text => {
            for r in &reports {
                print_report(r);
            }
            if let Some(path) = output {
                println!("wrote certificate to {}", path.display());
            }
        }
    }
    Ok(if all_ok { EXIT_OK } else { EXIT_VERIFICATION })
}

fn run_verify(path: &Path, fixtures: &Option<PathBuf>, format: Format) -> Result<u8> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Parse(format!("cannot read {}: {e}", path.display())))?;
    let value: serde_json::Value = serde_json::from_str(&text)
        .map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
    let kind = value.get("kind").and_then(|k| k.as_str()).unwrap_or("");
    let mut reports = Vec::new();
    let mut structural_ok = true;
    match kind {
        "certificate" => {
            let cert = Certificate::from_json(&text)?;
            let ctx = context(cert.meta.genus, fixtures)?;
            reports.push(verify_certificate(&ctx, &cert));
        }
        "bundle" => {
            let bundle = CertificateBundle::from_json(&text)?;
            let ctx = context(bundle.genus, fixtures)?;
            for cert in &bundle.certificates {
                reports.push(verify_certificate(&ctx, cert));
            }
        }
        "normal-generation" => {
            let ng = NormalGenerationCertificate::from_json(&text)?;
            let ctx = context(ng.certificate.meta.genus, fixtures)?;
            structural_ok = ng.factors_match_pattern();
            if format == Format::Text {
                println!(
                    "factors: {} conjugates of the base; structural pattern holds: \
                     {structural_ok}",
                    ng.factors.len()
                );
            }
            reports.push(verify_certificate(&ctx, &ng.certificate));
        }
        other => {
            return Err(Error::Parse(format!(
                "{}: unknown certificate kind `{other}`",
                path.display()
            )))
        }
    }
    let all_ok = structural_ok && reports.iter().all(|r| r.verdict.is_accepted());
    match format {
        Format::Json => println!("{}", serde_json::to_string_pretty(&reports).unwrap()),
        Format::Text => {
            for r in &reports {
                print_report(r);
            }
        }
    }
    Ok(if all_ok { EXIT_OK } else { EXIT_VERIFICATION })
}

#[derive(Serialize)]
struct MappingReportEntry {
    f: String,
    source: String,
    target: String,
    group: MappingGroup,
    status: String,
    corrected: Option<String>,
    anchor: String,
}

fn run_mapping_check(genus: usize, format: Format) -> Result<u8> {
    let table = CurveMappingTable::canonical(genus)?;
    let entries: Vec<MappingReportEntry> = table
        .entries()
        .iter()
        .map(|e| MappingReportEntry {
            f: e.f.to_string(),
            source: e.source.to_string(),
            target: e.target.to_string(),
            group: e.group,
            status: match &e.status {
                MappingStatus::Pass => "pass".to_string(),
                MappingStatus::Flagged { .. } => "flagged".to_string(),
            },
            corrected: match &e.status {
                MappingStatus::Pass => None,
                MappingStatus::Flagged { corrected } => Some(corrected.to_string()),
            },
            anchor: e.anchor.clone(),
        })
        .collect();
    let (core_pass, core_flagged) = table.group_counts(MappingGroup::Core);
    let (support_pass, support_flagged) = table.group_counts(MappingGroup::Support);
    match format {
        Format::Json => {
            #[derive(Serialize)]
            struct MappingReport {
                genus: usize,
                core: (usize, usize),
                support: (usize, usize),
                entries: Vec<MappingReportEntry>,
            }
            let report = MappingReport {
                genus,
                core: (core_pass, core_flagged),
                support: (support_pass, support_flagged),
                entries,
            };
            println!("{}", serde_json::to_string_pretty(&report).unwrap());
        }
        Format::Text => {
            for e in &entries {
                let group = match e.group {
                    MappingGroup::Core => "core",
                    MappingGroup::Support => "support",
                };
                match &e.corrected {
                    None => println!("[pass]    {}: {} -> {} ({group})", e.f, e.source, e.target),
                    Some(c) => println!(
                        "[flagged] {}: {} -> {} ({group}) -- homology-consistent as {c}, the \
                         factors applied in written left-to-right order",
                        e.f, e.source, e.target
                    ),
                }
            }
            println!("core claims: {core_pass} pass, {core_flagged} flagged");
            println!("support entries: {support_pass} pass, {support_flagged} flagged");
        }
    }
    Ok(EXIT_OK)
}

fn run_abelianize(
    genus: usize,
    fixtures: &Option<PathBuf>,
    relators: &Option<PathBuf>,
    format: Format,
) -> Result<u8> {
    let ctx = context(genus, fixtures)?;
    let diag = match relators {
        Some(path) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| Error::Parse(format!("cannot read {}: {e}", path.display())))?;
            let words: Vec<crosscap_core::word::Word> = text
                .lines()
                .map(str::trim)
                .filter(|l| !l.is_empty() && !l.starts_with('#'))
                .map(crosscap_core::word::Word::parse)
                .collect::<Result<_>>()?;
            crosscap_core::abelian::diagnose_relator_words(&words, genus, ctx.macros())?
        }
        None => abelianize_catalog(&ctx)?.0,
    };
    match format {
        Format::Json => println!("{}", serde_json::to_string_pretty(&diag).unwrap()),
        Format::Text => {
            println!("alphabet: {}", diag.alphabet.join(" "));
            println!(
                "invariant factors: [{}]",
                diag.invariant_factors.iter().map(|d| d.to_string()).collect::<Vec<_>>().join(", ")
            );
            println!("free rank: {}", diag.free_rank);
            println!("cyclic: {}", diag.cyclic);
            println!("generated by u1: {}", diag.generated_by_u1);
        }
    }
    Ok(EXIT_OK)
}

fn run_render(genus: usize, curves: &[String], output: &Option<PathBuf>) -> Result<u8> {
    SurfaceSpec::new(genus, 0)?;
    let parsed: Vec<svg::RenderCurve> =
        curves.iter().map(|arg| svg::parse_curve_arg(arg, genus)).collect::<Result<_>>()?;
    let doc = svg::render(genus, &parsed, &svg::LayoutConfig::default());
    match output {
        Some(path) => write_output(path, &doc)?,
        None => print!("{doc}"),
    }
    Ok(EXIT_OK)
}

fn run(cli: Cli) -> Result<u8> {
    match &cli.command {
        Command::Relations { action } => match action {
            RelationsAction::Verify { genus, fixtures, format } => {
                run_relations_verify(*genus, fixtures, *format)
            }
        },
        Command::Cert { kind, genus, boundary, output, fixtures, format } => {
            run_cert(*kind, *genus, *boundary, output, fixtures, *format)
        }
        Command::Verify { path, fixtures, format } => run_verify(path, fixtures, *format),
        Command::MappingTable { action } => match action {
            MappingAction::Check { genus, format } => run_mapping_check(*genus, *format),
        },
        Command::Abelianize { genus, fixtures, relators, format } => {
            run_abelianize(*genus, fixtures, relators, *format)
        }
        Command::Render { genus, curves, output } => run_render(*genus, curves, output),
    }
}

fn main() -> ExitCode {
    // Die quietly when a downstream pipe closes early.
    #[cfg(unix)]
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(EXIT_USAGE)
        }
    }
}
