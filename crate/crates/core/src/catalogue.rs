//! Corpus ingest, statistics, queries and JSON export.
//!
//! A catalogue is built from every `*.ucc` file below a root directory and
//! persisted as `ucc-index.json` at that root. Files that fail to parse or
//! validate stay in the catalogue with status `invalid` so a registry can
//! report them; they carry no derived fields and count in no histogram.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::io::Write as _;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use thiserror::Error;
use walkdir::WalkDir;

use crate::json::to_canonical_string;
use crate::model::{lookup_area, lookup_application_path, lookup_product_type, lookup_sdg_number, UseCaseCard};
use crate::parser::parse_card;
use crate::risk::{assess_unchecked, RiskAssessment, Tier};
use crate::validate::{validate, Diagnostics};

pub const INDEX_FILE: &str = "ucc-index.json";

#[derive(Debug, Error)]
pub enum CatalogueError {
    #[error("duplicate card id `{id}` in {first} and {second}")]
    DuplicateCardId { id: String, first: String, second: String },
    #[error("{}: {source}", path.display())]
    Io { path: PathBuf, source: std::io::Error },
    #[error("unknown {field} filter value `{value}`")]
    UnknownFilterValue { field: &'static str, value: String },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum EntryStatus {
    Valid,
    Invalid,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CatalogueEntry {
    /// Relative to the root, `/`-separated.
    pub path: String,
    pub status: EntryStatus,
    /// Present whenever the file parsed, even if it then failed validation.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub id: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub title: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tier: Option<Tier>,
    /// Resolved `area` or `area/subarea` slugs, in card order.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub areas: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub product: Option<String>,
    /// Distinct, ascending.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sdgs: Option<Vec<u32>>,
}

impl CatalogueEntry {
    fn from_source(path: String, text: &str) -> Self {
        let mut entry = CatalogueEntry {
            path,
            status: EntryStatus::Invalid,
            id: None,
            title: None,
            tier: None,
            areas: None,
            product: None,
            sdgs: None,
        };
        let Ok(card) = parse_card(text) else { return entry };
        entry.id = Some(card.id.clone());
        entry.title = Some(card.title.clone());
        if validate(&card).has_errors() {
            return entry;
        }
        entry.status = EntryStatus::Valid;
        entry.tier = Some(assess_unchecked(&card).tier);
        entry.areas = Some(
            card.application_entries
                .iter()
                .map(|a| a.resolve().map(|e| e.key()).unwrap_or_else(|_| a.to_string()))
                .collect(),
        );
        entry.product = Some(
            lookup_product_type(&card.product_type)
                .map(|p| p.slug.to_string())
                .unwrap_or_else(|_| card.product_type.clone()),
        );
        let sdgs: BTreeSet<u32> = card.intended_purpose.sdgs.iter().copied().collect();
        entry.sdgs = Some(sdgs.into_iter().collect());
        entry
    }

    pub fn is_valid(&self) -> bool {
        self.status == EntryStatus::Valid
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Catalogue {
    pub entries: Vec<CatalogueEntry>,
}

#[derive(Serialize)]
struct CatalogueDocument<'a> {
    entries: &'a [CatalogueEntry],
    total: usize,
}

impl Catalogue {
    pub fn valid_entries(&self) -> impl Iterator<Item = &CatalogueEntry> {
        self.entries.iter().filter(|e| e.is_valid())
    }

    pub fn to_json(&self) -> String {
        to_canonical_string(&CatalogueDocument { entries: &self.entries, total: self.entries.len() })
    }
}

fn io_err(path: &Path) -> impl FnOnce(std::io::Error) -> CatalogueError + '_ {
    move |source| CatalogueError::Io { path: path.to_path_buf(), source }
}

/// Build the catalogue for `root` without touching the index file.
pub fn scan(root: &Path) -> Result<Catalogue, CatalogueError> {
    if !root.is_dir() {
        return Err(CatalogueError::Io {
            path: root.to_path_buf(),
            source: std::io::Error::new(std::io::ErrorKind::NotFound, "not a readable directory"),
        });
    }
    let mut files = Vec::new();
    for item in WalkDir::new(root).follow_links(false) {
        let item = item.map_err(|e| {
            let path = e.path().unwrap_or(root).to_path_buf();
            CatalogueError::Io { path, source: e.into() }
        })?;
        let path = item.path();
        if item.file_type().is_file() && path.extension().is_some_and(|x| x == "ucc") {
            let rel = path.strip_prefix(root).unwrap_or(path);
            let rel: Vec<String> = rel.components().map(|c| c.as_os_str().to_string_lossy().into_owned()).collect();
            files.push((rel.join("/"), path.to_path_buf()));
        }
    }
    files.sort();

    let mut entries = Vec::with_capacity(files.len());
    let mut seen: HashMap<String, String> = HashMap::new();
    for (rel, abs) in files {
        let text = std::fs::read_to_string(&abs).map_err(io_err(&abs))?;
        let entry = CatalogueEntry::from_source(rel, &text);
        if let Some(id) = &entry.id {
            if let Some(first) = seen.get(id) {
                return Err(CatalogueError::DuplicateCardId {
                    id: id.clone(),
                    first: first.clone(),
                    second: entry.path.clone(),
                });
            }
            seen.insert(id.clone(), entry.path.clone());
        }
        entries.push(entry);
    }
    Ok(Catalogue { entries })
}

/// Scan `root` and write `ucc-index.json` there, replacing any previous
/// index atomically.
pub fn ingest(root: &Path) -> Result<Catalogue, CatalogueError> {
    let catalogue = scan(root)?;
    let index = root.join(INDEX_FILE);
    let mut tmp = tempfile::NamedTempFile::new_in(root).map_err(io_err(root))?;
    tmp.write_all(catalogue.to_json().as_bytes()).map_err(io_err(&index))?;
    tmp.persist(&index).map_err(|e| CatalogueError::Io { path: index.clone(), source: e.error })?;
    Ok(catalogue)
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct StatsReport {
    pub per_area: BTreeMap<String, usize>,
    pub per_product: BTreeMap<String, usize>,
    pub per_sdg: BTreeMap<u32, usize>,
    pub per_tier: BTreeMap<Tier, usize>,
    pub valid: usize,
    pub invalid: usize,
    pub total: usize,
}

impl StatsReport {
    pub fn to_json(&self) -> String {
        // Tier keys serialize as their lowercase names.
        to_canonical_string(self)
    }
}

/// Histograms over valid entries. Each card counts once per distinct area
/// entry, product and SDG. `per_tier` always lists all three tiers.
pub fn stats(catalogue: &Catalogue) -> StatsReport {
    let mut report = StatsReport::default();
    for tier in Tier::ALL {
        report.per_tier.insert(tier, 0);
    }
    for e in &catalogue.entries {
        report.total += 1;
        if !e.is_valid() {
            report.invalid += 1;
            continue;
        }
        report.valid += 1;
        if let Some(tier) = e.tier {
            *report.per_tier.entry(tier).or_default() += 1;
        }
        let areas: BTreeSet<&String> = e.areas.iter().flatten().collect();
        for a in areas {
            *report.per_area.entry(a.clone()).or_default() += 1;
        }
        if let Some(p) = &e.product {
            *report.per_product.entry(p.clone()).or_default() += 1;
        }
        for &s in e.sdgs.iter().flatten() {
            *report.per_sdg.entry(s).or_default() += 1;
        }
    }
    report
}

/// Conjunctive query over valid entries. Values may be slugs or labels;
/// an area without a subarea matches every entry in that area.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Filter {
    pub tier: Option<Tier>,
    pub area: Option<String>,
    pub product: Option<String>,
    pub sdg: Option<u32>,
}

enum AreaMatch {
    Area(&'static str),
    Entry(String),
}

pub fn query<'a>(catalogue: &'a Catalogue, filter: &Filter) -> Result<Vec<&'a CatalogueEntry>, CatalogueError> {
    let unknown = |field: &'static str, value: &str| CatalogueError::UnknownFilterValue { field, value: value.to_string() };
    let area = match &filter.area {
        None => None,
        Some(v) if v.contains('/') => {
            Some(AreaMatch::Entry(lookup_application_path(v).map_err(|_| unknown("area", v))?.key()))
        }
        Some(v) => Some(AreaMatch::Area(lookup_area(v).map_err(|_| unknown("area", v))?.slug)),
    };
    let product = match &filter.product {
        None => None,
        Some(v) => Some(lookup_product_type(v).map_err(|_| unknown("product", v))?.slug),
    };
    if let Some(n) = filter.sdg {
        lookup_sdg_number(n).map_err(|_| unknown("sdg", &n.to_string()))?;
    }

    Ok(catalogue
        .valid_entries()
        .filter(|e| filter.tier.is_none_or(|t| e.tier == Some(t)))
        .filter(|e| product.is_none_or(|p| e.product.as_deref() == Some(p)))
        .filter(|e| filter.sdg.is_none_or(|n| e.sdgs.iter().flatten().any(|&s| s == n)))
        .filter(|e| match &area {
            None => true,
            Some(AreaMatch::Entry(key)) => e.areas.iter().flatten().any(|a| a == key),
            Some(AreaMatch::Area(slug)) => {
                e.areas.iter().flatten().any(|a| a.split('/').next() == Some(*slug))
            }
        })
        .collect())
}

#[derive(Serialize)]
struct CardDocument<'a> {
    card: &'a UseCaseCard,
    diagnostics: &'a Diagnostics,
    assessment: Option<&'a RiskAssessment>,
}

/// A card with its validation findings and, when valid, its assessment.
pub fn export_card_json(card: &UseCaseCard) -> String {
    let diagnostics = validate(card);
    let assessment = (!diagnostics.has_errors()).then(|| assess_unchecked(card));
    to_canonical_string(&CardDocument { card, diagnostics: &diagnostics, assessment: assessment.as_ref() })
}

pub fn export_catalogue_json(catalogue: &Catalogue) -> String {
    catalogue.to_json()
}

/// Read a card back from JSON: either a bare card or a card export
/// document.
pub fn card_from_json(text: &str) -> Result<UseCaseCard, serde_json::Error> {
    let value: serde_json::Value = serde_json::from_str(text)?;
    match value.get("card") {
        Some(card) if value.get("diagnostics").is_some() => serde_json::from_value(card.clone()),
        _ => serde_json::from_value(value),
    }
}
