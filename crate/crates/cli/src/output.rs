use std::fmt::Write as _;
use std::io::IsTerminal;

use clap::ValueEnum;
use ucc_core::catalogue::{CatalogueEntry, StatsReport};
use ucc_core::validate::{Finding, Severity};
use ucc_core::{ParseDiagnostic, Tier};

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

/// ANSI colour for text diagnostics, only on a terminal and only when
/// `UCC_NO_COLOR=1` is not set.
pub struct Painter {
    color: bool,
}

const RED: &str = "\x1b[31m";
const YELLOW: &str = "\x1b[33m";
const RESET: &str = "\x1b[0m";

impl Painter {
    pub fn detect() -> Self {
        let disabled = std::env::var("UCC_NO_COLOR").is_ok_and(|v| v == "1");
        Painter { color: !disabled && std::io::stdout().is_terminal() }
    }

    fn paint(&self, colour: &str, s: &str) -> String {
        if self.color {
            format!("{colour}{s}{RESET}")
        } else {
            s.to_string()
        }
    }

    pub fn finding(&self, f: &Finding) -> String {
        let colour = match f.severity {
            Severity::Error => RED,
            Severity::Warning => YELLOW,
        };
        self.paint(colour, &f.to_string())
    }

    pub fn parse_diagnostic(&self, d: &ParseDiagnostic) -> String {
        self.paint(RED, &d.to_string())
    }
}

fn histogram(out: &mut String, title: &str, rows: &[(String, usize)]) {
    let _ = writeln!(out, "{title}:");
    if rows.is_empty() {
        let _ = writeln!(out, "  (none)");
        return;
    }
    let width = rows.iter().map(|(k, _)| k.chars().count()).max().unwrap_or(0);
    for (key, count) in rows {
        let _ = writeln!(out, "  {key:>width$}: {count}");
    }
}

pub fn stats_text(report: &StatsReport) -> String {
    let mut out = String::new();
    let tiers: Vec<(String, usize)> =
        Tier::ALL.iter().map(|t| (t.to_string(), report.per_tier.get(t).copied().unwrap_or(0))).collect();
    histogram(&mut out, "per tier", &tiers);
    let areas: Vec<_> = report.per_area.iter().map(|(k, v)| (k.clone(), *v)).collect();
    histogram(&mut out, "per area", &areas);
    let products: Vec<_> = report.per_product.iter().map(|(k, v)| (k.clone(), *v)).collect();
    histogram(&mut out, "per product", &products);
    let sdgs: Vec<_> = report.per_sdg.iter().map(|(k, v)| (k.to_string(), *v)).collect();
    histogram(&mut out, "per sdg", &sdgs);
    let _ = writeln!(out, "valid: {}", report.valid);
    let _ = writeln!(out, "invalid: {}", report.invalid);
    let _ = writeln!(out, "total: {}", report.total);
    out
}

pub fn query_text(entries: &[&CatalogueEntry]) -> String {
    let rows: Vec<[String; 3]> = entries
        .iter()
        .map(|e| {
            [
                e.path.clone(),
                e.id.clone().unwrap_or_default(),
                e.tier.map(|t| t.to_string()).unwrap_or_default(),
            ]
        })
        .collect();
    let w0 = rows.iter().map(|r| r[0].chars().count()).max().unwrap_or(0);
    let w1 = rows.iter().map(|r| r[1].chars().count()).max().unwrap_or(0);
    let mut out = String::new();
    for [path, id, tier] in rows {
        let _ = writeln!(out, "{path:<w0$}  {id:<w1$}  {tier}");
    }
    out
}
