//! `ucc`: author, check, classify, render and catalogue use case cards.
//!
//! Exit codes: 0 success, 1 validation errors, 2 parse errors, 3 usage
//! error, 4 I/O error. With several input files the highest code wins.

mod output;

use std::fs;
use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use ucc_core::catalogue::{self, CatalogueError, Filter};
use ucc_core::json::to_canonical_string;
use ucc_core::model::{APPLICATION_AREAS, PRODUCT_TYPES, SDGS};
use ucc_core::render::{render_card_html, render_svg_document};
use ucc_core::risk::assess_unchecked;
use ucc_core::{explain, parse_card, validate, ParseDiagnostic, Tier, UseCaseCard};

use output::{Format, Painter};

const TEMPLATE: &str = include_str!("template.ucc");

#[derive(Parser)]
#[command(name = "ucc", version, about = "Use case cards for AI systems: validate, assess risk, render, catalogue")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Write a commented card skeleton to a new file
    Init { path: PathBuf },
    /// Check cards for parse errors and rule violations
    Validate {
        #[arg(required = true)]
        paths: Vec<PathBuf>,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        /// Treat warnings as errors
        #[arg(long)]
        strict: bool,
    },
    /// Report a card's risk tier and the rules that decided it
    Assess {
        path: PathBuf,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Draw the diagram (SVG) or the whole card (HTML)
    Render {
        path: PathBuf,
        /// Output file; standard output when absent
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = RenderFormat::Svg)]
        format: RenderFormat,
    },
    /// Index a directory of cards and print histograms
    Stats {
        root: PathBuf,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Index a directory of cards and list the valid ones matching all filters
    Query {
        root: PathBuf,
        #[command(flatten)]
        filter: FilterArgs,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Print vocabularies, a card or a catalogue as JSON
    Export {
        #[command(subcommand)]
        target: ExportTarget,
    },
}

#[derive(Args)]
struct FilterArgs {
    /// high, transparency or minimal
    #[arg(long)]
    tier: Option<Tier>,
    /// Area, or area/subarea, by slug or label
    #[arg(long)]
    area: Option<String>,
    /// Product type by slug or label
    #[arg(long)]
    product: Option<String>,
    /// Sustainable development goal number
    #[arg(long)]
    sdg: Option<u32>,
}

#[derive(Subcommand)]
enum ExportTarget {
    /// Product types, application areas or SDGs
    Vocab { which: Vocab },
    /// A card with its findings and assessment
    Card {
        path: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Every card below a directory
    Catalogue {
        root: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Vocab {
    Products,
    Areas,
    Sdgs,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum RenderFormat {
    Svg,
    Html,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
enum Status {
    Ok = 0,
    Invalid = 1,
    ParseError = 2,
    Usage = 3,
    Io = 4,
}

impl From<Status> for ExitCode {
    fn from(s: Status) -> Self {
        ExitCode::from(s as u8)
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { Status::Usage.into() } else { Status::Ok.into() };
        }
    };
    let painter = Painter::detect();
    let status = match cli.command {
        Command::Init { path } => cmd_init(&path),
        Command::Validate { paths, format, strict } => cmd_validate(&paths, format, strict, &painter),
        Command::Assess { path, format } => cmd_assess(&path, format),
        Command::Render { path, out, format } => cmd_render(&path, out.as_deref(), format),
        Command::Stats { root, format } => cmd_stats(&root, format),
        Command::Query { root, filter, format } => cmd_query(&root, filter, format),
        Command::Export { target } => cmd_export(target),
    };
    status.into()
}

fn io_failure(path: &Path, e: impl std::fmt::Display) -> Status {
    eprintln!("error: {}: {e}", path.display());
    Status::Io
}

fn write_output(out: Option<&Path>, text: &str) -> Status {
    match out {
        Some(path) => match fs::write(path, text) {
            Ok(()) => Status::Ok,
            Err(e) => io_failure(path, e),
        },
        None => {
            let mut stdout = std::io::stdout().lock();
            match stdout.write_all(text.as_bytes()).and_then(|()| stdout.flush()) {
                Ok(()) => Status::Ok,
                Err(e) => io_failure(Path::new("<stdout>"), e),
            }
        }
    }
}

enum Loaded {
    Card(Box<UseCaseCard>),
    Unparsable(Vec<ParseDiagnostic>),
}

fn load(path: &Path) -> Result<Loaded, Status> {
    let text = fs::read_to_string(path).map_err(|e| io_failure(path, e))?;
    Ok(match parse_card(&text) {
        Ok(card) => Loaded::Card(Box::new(card)),
        Err(diags) => Loaded::Unparsable(diags),
    })
}

/// Load a card that must parse and validate; problems go to stderr.
fn load_valid(path: &Path) -> Result<UseCaseCard, Status> {
    match load(path)? {
        Loaded::Unparsable(diags) => {
            for d in diags {
                eprintln!("{}:{d}", path.display());
            }
            Err(Status::ParseError)
        }
        Loaded::Card(card) => {
            let findings = validate(&card);
            if findings.has_errors() {
                for f in findings.errors() {
                    eprintln!("{}: {f}", path.display());
                }
                return Err(Status::Invalid);
            }
            Ok(*card)
        }
    }
}

fn cmd_init(path: &Path) -> Status {
    let file = fs::OpenOptions::new().write(true).create_new(true).open(path);
    match file.and_then(|mut f| f.write_all(TEMPLATE.as_bytes())) {
        Ok(()) => {
            eprintln!("wrote {}", path.display());
            Status::Ok
        }
        Err(e) => io_failure(path, e),
    }
}

fn cmd_validate(paths: &[PathBuf], format: Format, strict: bool, painter: &Painter) -> Status {
    let mut worst = Status::Ok;
    let mut text = String::new();
    let mut reports = Vec::new();
    for path in paths {
        let shown = path.display().to_string();
        let (status, report) = match load(path) {
            Err(status) => (status, serde_json::json!({"path": shown, "status": "io_error"})),
            Ok(Loaded::Unparsable(diags)) => {
                for d in &diags {
                    text.push_str(&format!("{shown}:{}\n", painter.parse_diagnostic(d)));
                }
                let report = serde_json::json!({"path": shown, "status": "parse_error", "parse_errors": diags, "findings": []});
                (Status::ParseError, report)
            }
            Ok(Loaded::Card(card)) => {
                let findings = validate(&card);
                for f in &findings.findings {
                    text.push_str(&format!("{shown}: {}\n", painter.finding(f)));
                }
                let failing = findings.has_errors() || (strict && findings.warnings().next().is_some());
                if findings.is_empty() {
                    text.push_str(&format!("{shown}: ok\n"));
                }
                let (status, label) = if failing { (Status::Invalid, "invalid") } else { (Status::Ok, "ok") };
                let report = serde_json::json!({"path": shown, "status": label, "parse_errors": [], "findings": findings});
                (status, report)
            }
        };
        worst = worst.max(status);
        reports.push(report);
    }
    let rendered = match format {
        Format::Text => text,
        Format::Json => to_canonical_string(&reports),
    };
    worst.max(write_output(None, &rendered))
}

fn cmd_assess(path: &Path, format: Format) -> Status {
    let card = match load_valid(path) {
        Ok(card) => card,
        Err(status) => return status,
    };
    let assessment = assess_unchecked(&card);
    let text = match format {
        Format::Text => format!("tier: {}\n{}", assessment.tier, explain(&assessment)),
        Format::Json => assessment.to_json(),
    };
    write_output(None, &text)
}

fn cmd_render(path: &Path, out: Option<&Path>, format: RenderFormat) -> Status {
    let card = match load_valid(path) {
        Ok(card) => card,
        Err(status) => return status,
    };
    let doc = match format {
        RenderFormat::Svg => render_svg_document(&card).expect("card was validated"),
        RenderFormat::Html => render_card_html(&card, &assess_unchecked(&card)),
    };
    write_output(out, &doc)
}

fn catalogue_failure(e: CatalogueError) -> Status {
    eprintln!("error: {e}");
    match e {
        CatalogueError::Io { .. } => Status::Io,
        CatalogueError::UnknownFilterValue { .. } => Status::Usage,
        CatalogueError::DuplicateCardId { .. } => Status::Invalid,
    }
}

fn cmd_stats(root: &Path, format: Format) -> Status {
    let cat = match catalogue::ingest(root) {
        Ok(c) => c,
        Err(e) => return catalogue_failure(e),
    };
    let report = catalogue::stats(&cat);
    let text = match format {
        Format::Json => report.to_json(),
        Format::Text => output::stats_text(&report),
    };
    write_output(None, &text)
}

fn cmd_query(root: &Path, filter: FilterArgs, format: Format) -> Status {
    let cat = match catalogue::ingest(root) {
        Ok(c) => c,
        Err(e) => return catalogue_failure(e),
    };
    let filter = Filter { tier: filter.tier, area: filter.area, product: filter.product, sdg: filter.sdg };
    let hits = match catalogue::query(&cat, &filter) {
        Ok(hits) => hits,
        Err(e) => return catalogue_failure(e),
    };
    let text = match format {
        Format::Json => to_canonical_string(&hits),
        Format::Text => output::query_text(&hits),
    };
    write_output(None, &text)
}

fn cmd_export(target: ExportTarget) -> Status {
    match target {
        ExportTarget::Vocab { which } => {
            let json = match which {
                Vocab::Products => to_canonical_string(&PRODUCT_TYPES[..]),
                Vocab::Areas => to_canonical_string(&APPLICATION_AREAS[..]),
                Vocab::Sdgs => to_canonical_string(&SDGS[..]),
            };
            write_output(None, &json)
        }
        ExportTarget::Card { path, out } => match load(&path) {
            Err(status) => status,
            Ok(Loaded::Unparsable(diags)) => {
                for d in diags {
                    eprintln!("{}:{d}", path.display());
                }
                Status::ParseError
            }
            Ok(Loaded::Card(card)) => {
                let status = if validate(&card).has_errors() { Status::Invalid } else { Status::Ok };
                status.max(write_output(out.as_deref(), &catalogue::export_card_json(&card)))
            }
        },
        ExportTarget::Catalogue { root, out } => match catalogue::scan(&root) {
            Ok(cat) => write_output(out.as_deref(), &catalogue::export_catalogue_json(&cat)),
            Err(e) => catalogue_failure(e),
        },
    }
}
