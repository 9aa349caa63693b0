//! The `.ucc` plain-text card format.
//!
//! ```text
//! [card]
//! id: scene-narrator
//! title: Scene narrator
//! ...
//! [purpose]
//! context_of_use: first line
//!   continuation line
//! sdg: 3
//! [actor person]
//! name: Person with visual impairment
//! kind: individual
//! [usecase describe-scene]
//! name: Describe scene
//! ai: yes
//! main: yes
//! [relation]
//! kind: association
//! source: person
//! target: describe-scene
//! [table]
//! product: other-software
//! ...
//! ```
//!
//! Lines starting with `#` are comments. A line indented by two spaces
//! continues the previous value; continuation lines are joined with `\n`.
//! Every value line is trimmed. Parse errors are collected rather than
//! reported fail-fast; referential problems (unknown slugs, dangling ids) are
//! left to the validator.

use std::collections::{BTreeSet, HashMap};
use std::fmt::{self, Write as _};

use chrono::NaiveDate;
use serde::Serialize;

use crate::model::{
    Actor, ActorKind, ApplicationRef, Extension, IntendedPurpose, Relation, RelationKind,
    Stakeholder, Step, TransparencyFlag, UseCaseCard, UseCaseNode,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct SourceLocation {
    pub line: u32,
    pub column: u32,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub enum ParseCode {
    /// Unknown section header.
    P001,
    /// Unknown key in section.
    P002,
    /// Duplicate key, section, or declared id.
    P003,
    /// Malformed value or line.
    P004,
    /// Unterminated section header.
    P005,
    /// Missing required key or section.
    P006,
}

impl ParseCode {
    pub fn as_str(self) -> &'static str {
        match self {
            ParseCode::P001 => "P001",
            ParseCode::P002 => "P002",
            ParseCode::P003 => "P003",
            ParseCode::P004 => "P004",
            ParseCode::P005 => "P005",
            ParseCode::P006 => "P006",
        }
    }
}

impl fmt::Display for ParseCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ParseDiagnostic {
    pub location: SourceLocation,
    pub code: ParseCode,
    pub message: String,
}

impl fmt::Display for ParseDiagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}:{}: {} {}",
            self.location.line, self.location.column, self.code, self.message
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum SectionKind {
    Card,
    Purpose,
    Table,
    Relation,
    Actor(String),
    UseCase(String),
}

impl SectionKind {
    fn keys(&self) -> &'static [(&'static str, KeyRule)] {
        use KeyRule::*;
        match self {
            SectionKind::Card => &[
                ("id", Required),
                ("title", Required),
                ("version", Required),
                ("date", Required),
                ("provider", Required),
            ],
            SectionKind::Purpose => {
                &[("context_of_use", Required), ("scope", Required), ("sdg", Repeated)]
            }
            SectionKind::Table => &[
                ("product", Required),
                ("safety_component", Required),
                ("area", Repeated),
                ("flag", Repeated),
                ("primary_actor", Required),
                ("stakeholder", Repeated),
                ("precondition", Repeated),
                ("step", Repeated),
                ("extension", Repeated),
                ("issue", Repeated),
            ],
            SectionKind::Relation => {
                &[("kind", Required), ("source", Required), ("target", Required)]
            }
            SectionKind::Actor(_) => &[("name", Required), ("kind", Required)],
            SectionKind::UseCase(_) => &[("name", Required), ("ai", Required), ("main", Optional)],
        }
    }

    fn header(&self) -> String {
        match self {
            SectionKind::Card => "[card]".into(),
            SectionKind::Purpose => "[purpose]".into(),
            SectionKind::Table => "[table]".into(),
            SectionKind::Relation => "[relation]".into(),
            SectionKind::Actor(id) => format!("[actor {id}]"),
            SectionKind::UseCase(id) => format!("[usecase {id}]"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum KeyRule {
    Required,
    Optional,
    Repeated,
}

#[derive(Debug)]
struct RawEntry {
    key: String,
    value: String,
    line: u32,
    value_column: u32,
}

#[derive(Debug)]
struct RawSection {
    kind: SectionKind,
    line: u32,
    entries: Vec<RawEntry>,
}

struct Diagnostics(Vec<ParseDiagnostic>);

impl Diagnostics {
    fn push(&mut self, line: u32, column: u32, code: ParseCode, message: impl Into<String>) {
        self.0.push(ParseDiagnostic {
            location: SourceLocation { line, column },
            code,
            message: message.into(),
        });
    }
}

fn is_identifier(s: &str) -> bool {
    !s.is_empty()
        && s.chars().all(|c| c.is_ascii_alphanumeric() || matches!(c, '-' | '_' | '.'))
}

fn column_of(line: &str, byte_offset: usize) -> u32 {
    line[..byte_offset].chars().count() as u32 + 1
}

/// Parse card text, collecting every diagnostic found.
pub fn parse_card(text: &str) -> Result<UseCaseCard, Vec<ParseDiagnostic>> {
    let text = text.strip_prefix('\u{feff}').unwrap_or(text);
    let mut diags = Diagnostics(Vec::new());
    let sections = scan(text, &mut diags);
    let card = build(&sections, &mut diags);
    if diags.0.is_empty() {
        Ok(card.expect("card is complete when no diagnostics were raised"))
    } else {
        let mut all = diags.0;
        all.sort_by_key(|d| (d.location, d.code));
        Err(all)
    }
}

/// Split the text into sections of raw `key: value` entries.
fn scan(text: &str, diags: &mut Diagnostics) -> Vec<RawSection> {
    let mut sections: Vec<RawSection> = Vec::new();
    // `None` while outside any section or inside a rejected one.
    let mut current: Option<usize> = None;
    let mut skipping = false;
    let mut singletons_seen: HashMap<&'static str, u32> = HashMap::new();
    let mut declared_ids: HashMap<String, u32> = HashMap::new();

    for (idx, raw_line) in text.split('\n').enumerate() {
        let line_no = idx as u32 + 1;
        let line = raw_line.strip_suffix('\r').unwrap_or(raw_line);
        if line.trim().is_empty() || line.starts_with('#') {
            continue;
        }

        if let Some(rest) = line.strip_prefix("  ") {
            if skipping {
                continue;
            }
            match current.and_then(|i| sections[i].entries.last_mut()) {
                Some(entry) => {
                    let piece = rest.trim();
                    if entry.value.is_empty() {
                        entry.value = piece.to_string();
                    } else {
                        entry.value.push('\n');
                        entry.value.push_str(piece);
                    }
                }
                None => diags.push(
                    line_no,
                    3,
                    ParseCode::P004,
                    "continuation line does not follow a key",
                ),
            }
            continue;
        }

        if line.starts_with(char::is_whitespace) {
            diags.push(
                line_no,
                1,
                ParseCode::P004,
                "unexpected indentation (continuation lines are indented by exactly two spaces)",
            );
            continue;
        }

        if line.starts_with('[') {
            current = None;
            skipping = true;
            let trimmed = line.trim_end();
            let Some(inner) = trimmed.strip_prefix('[').and_then(|s| s.strip_suffix(']')) else {
                diags.push(line_no, 1, ParseCode::P005, format!("unterminated section header `{trimmed}`"));
                continue;
            };
            let mut words = inner.split_whitespace();
            let name = words.next().unwrap_or("");
            let arg = words.next();
            let extra = words.next();
            let kind = match (name, arg) {
                ("card" | "purpose" | "table" | "relation", Some(_)) => {
                    diags.push(line_no, 1, ParseCode::P004, format!("section [{name}] takes no id"));
                    continue;
                }
                ("card", None) => SectionKind::Card,
                ("purpose", None) => SectionKind::Purpose,
                ("table", None) => SectionKind::Table,
                ("relation", None) => SectionKind::Relation,
                ("actor" | "usecase", None) => {
                    diags.push(line_no, 1, ParseCode::P004, format!("section [{name}] requires an id"));
                    continue;
                }
                ("actor", Some(id)) => SectionKind::Actor(id.to_string()),
                ("usecase", Some(id)) => SectionKind::UseCase(id.to_string()),
                _ => {
                    diags.push(line_no, 1, ParseCode::P001, format!("unknown section header `{trimmed}`"));
                    continue;
                }
            };
            if extra.is_some() {
                diags.push(line_no, 1, ParseCode::P004, format!("malformed section header `{trimmed}`"));
                continue;
            }
            match &kind {
                SectionKind::Actor(id) | SectionKind::UseCase(id) => {
                    if !is_identifier(id) {
                        let col = column_of(line, line.find(id.as_str()).unwrap_or(0));
                        diags.push(line_no, col, ParseCode::P004, format!("invalid id `{id}`"));
                        continue;
                    }
                    if let Some(first) = declared_ids.get(id) {
                        diags.push(
                            line_no,
                            1,
                            ParseCode::P003,
                            format!("id `{id}` already declared on line {first}"),
                        );
                        continue;
                    }
                    declared_ids.insert(id.clone(), line_no);
                }
                SectionKind::Card | SectionKind::Purpose | SectionKind::Table => {
                    let key = match kind {
                        SectionKind::Card => "card",
                        SectionKind::Purpose => "purpose",
                        _ => "table",
                    };
                    if let Some(first) = singletons_seen.get(key) {
                        diags.push(
                            line_no,
                            1,
                            ParseCode::P003,
                            format!("duplicate section [{key}] (first on line {first})"),
                        );
                        continue;
                    }
                    singletons_seen.insert(key, line_no);
                }
                SectionKind::Relation => {}
            }
            sections.push(RawSection { kind, line: line_no, entries: Vec::new() });
            current = Some(sections.len() - 1);
            skipping = false;
            continue;
        }

        if skipping {
            continue;
        }
        let Some(section) = current else {
            diags.push(line_no, 1, ParseCode::P004, "text outside of any section");
            continue;
        };
        let Some(colon) = line.find(':') else {
            diags.push(line_no, 1, ParseCode::P004, "expected `key: value`");
            continue;
        };
        let key = line[..colon].trim_end();
        let after = &line[colon + 1..];
        let leading = after.len() - after.trim_start().len();
        let value_offset = colon + 1 + leading;
        sections[section].entries.push(RawEntry {
            key: key.to_string(),
            value: after.trim().to_string(),
            line: line_no,
            value_column: column_of(line, value_offset),
        });
    }
    sections
}

/// Typed view of one section after key checking.
struct Fields<'a> {
    singles: HashMap<&'static str, &'a RawEntry>,
    repeated: HashMap<&'static str, Vec<&'a RawEntry>>,
}

impl<'a> Fields<'a> {
    fn collect(section: &'a RawSection, diags: &mut Diagnostics) -> Self {
        let rules = section.kind.keys();
        let mut singles: HashMap<&'static str, &'a RawEntry> = HashMap::new();
        let mut repeated: HashMap<&'static str, Vec<&'a RawEntry>> = HashMap::new();
        for entry in &section.entries {
            let Some((key, rule)) = rules.iter().find(|(k, _)| *k == entry.key) else {
                diags.push(
                    entry.line,
                    1,
                    ParseCode::P002,
                    format!("unknown key `{}` in {}", entry.key, section.kind.header()),
                );
                continue;
            };
            if *rule == KeyRule::Repeated {
                repeated.entry(key).or_default().push(entry);
            } else if let Some(first) = singles.get(key) {
                diags.push(
                    entry.line,
                    1,
                    ParseCode::P003,
                    format!("duplicate key `{key}` (first on line {})", first.line),
                );
            } else {
                singles.insert(key, entry);
            }
        }
        for (key, rule) in rules {
            if *rule == KeyRule::Required && !singles.contains_key(key) {
                diags.push(
                    section.line,
                    1,
                    ParseCode::P006,
                    format!("missing required key `{key}` in {}", section.kind.header()),
                );
            }
        }
        Fields { singles, repeated }
    }

    fn text(&self, key: &str, diags: &mut Diagnostics) -> Option<String> {
        let entry = self.singles.get(key)?;
        non_empty(entry, diags).map(str::to_string)
    }

    fn parsed<T>(
        &self,
        key: &str,
        diags: &mut Diagnostics,
        parse: impl Fn(&str) -> Result<T, String>,
    ) -> Option<T> {
        let entry = self.singles.get(key)?;
        parse_entry(entry, diags, parse)
    }

    fn list(&self, key: &str) -> &[&'a RawEntry] {
        self.repeated.get(key).map(Vec::as_slice).unwrap_or(&[])
    }
}

fn non_empty<'e>(entry: &'e RawEntry, diags: &mut Diagnostics) -> Option<&'e str> {
    if entry.value.is_empty() {
        diags.push(
            entry.line,
            entry.value_column,
            ParseCode::P004,
            format!("`{}` needs a value", entry.key),
        );
        None
    } else {
        Some(&entry.value)
    }
}

fn parse_entry<T>(
    entry: &RawEntry,
    diags: &mut Diagnostics,
    parse: impl Fn(&str) -> Result<T, String>,
) -> Option<T> {
    let value = non_empty(entry, diags)?;
    match parse(value) {
        Ok(v) => Some(v),
        Err(why) => {
            diags.push(
                entry.line,
                entry.value_column,
                ParseCode::P004,
                format!("malformed `{}` value `{}`: {why}", entry.key, first_line(value)),
            );
            None
        }
    }
}

fn first_line(s: &str) -> &str {
    s.lines().next().unwrap_or("")
}

fn parse_bool(s: &str) -> Result<bool, String> {
    match s {
        "yes" => Ok(true),
        "no" => Ok(false),
        _ => Err("expected `yes` or `no`".into()),
    }
}

fn parse_date(s: &str) -> Result<NaiveDate, String> {
    NaiveDate::parse_from_str(s, "%Y-%m-%d").map_err(|e| format!("expected YYYY-MM-DD ({e})"))
}

fn parse_index(s: &str) -> Result<u32, String> {
    match s.parse::<u32>() {
        Ok(n) if n >= 1 => Ok(n),
        _ => Err("expected a positive integer".into()),
    }
}

fn split_fields(s: &str, n: usize) -> Result<Vec<String>, String> {
    let parts: Vec<String> = s.splitn(n, '|').map(|p| p.trim().to_string()).collect();
    if parts.len() != n {
        return Err(format!("expected {n} fields separated by `|`"));
    }
    if parts.iter().any(String::is_empty) {
        return Err("fields separated by `|` must not be empty".into());
    }
    Ok(parts)
}

#[derive(Default)]
struct Partial {
    id: Option<String>,
    title: Option<String>,
    version: Option<String>,
    date: Option<NaiveDate>,
    provider: Option<String>,
    context_of_use: Option<String>,
    scope: Option<String>,
    sdgs: Vec<u32>,
    product_type: Option<String>,
    safety_component: Option<bool>,
    application_entries: Vec<ApplicationRef>,
    transparency_flags: BTreeSet<TransparencyFlag>,
    actors: Vec<Actor>,
    use_cases: Vec<UseCaseNode>,
    relations: Vec<Relation>,
    primary_actor: Option<String>,
    stakeholders: Vec<Stakeholder>,
    preconditions: Vec<String>,
    main_course: Vec<Step>,
    extensions: Vec<Extension>,
    open_issues: Vec<String>,
}

fn build(sections: &[RawSection], diags: &mut Diagnostics) -> Option<UseCaseCard> {
    let mut p = Partial::default();
    let mut seen = [false; 3];

    for section in sections {
        let f = Fields::collect(section, diags);
        match &section.kind {
            SectionKind::Card => {
                seen[0] = true;
                p.id = f.parsed("id", diags, |s| {
                    if is_identifier(s) {
                        Ok(s.to_string())
                    } else {
                        Err("ids use letters, digits, `-`, `_` and `.`".into())
                    }
                });
                p.title = f.text("title", diags);
                p.version = f.text("version", diags);
                p.date = f.parsed("date", diags, parse_date);
                p.provider = f.text("provider", diags);
            }
            SectionKind::Purpose => {
                seen[1] = true;
                p.context_of_use = f.text("context_of_use", diags);
                p.scope = f.text("scope", diags);
                p.sdgs = f
                    .list("sdg")
                    .iter()
                    .filter_map(|e| {
                        parse_entry(e, diags, |s| {
                            s.parse::<u32>().map_err(|_| "expected a goal number".to_string())
                        })
                    })
                    .collect();
            }
            SectionKind::Table => {
                seen[2] = true;
                p.product_type = f.text("product", diags);
                p.safety_component = f.parsed("safety_component", diags, parse_bool);
                p.application_entries = f
                    .list("area")
                    .iter()
                    .filter_map(|e| {
                        parse_entry(e, diags, |s| {
                            let r: ApplicationRef = s.parse().expect("infallible");
                            if r.area.is_empty() || r.subarea.as_deref() == Some("") {
                                Err("expected `area` or `area/subarea`".into())
                            } else {
                                Ok(r)
                            }
                        })
                    })
                    .collect();
                p.transparency_flags = f
                    .list("flag")
                    .iter()
                    .filter_map(|e| parse_entry(e, diags, str::parse::<TransparencyFlag>))
                    .collect();
                p.primary_actor = f.text("primary_actor", diags);
                p.stakeholders = f
                    .list("stakeholder")
                    .iter()
                    .filter_map(|e| {
                        parse_entry(e, diags, |s| {
                            let mut parts = split_fields(s, 2)?.into_iter();
                            Ok(Stakeholder {
                                party: parts.next().unwrap_or_default(),
                                interest: parts.next().unwrap_or_default(),
                            })
                        })
                    })
                    .collect();
                p.preconditions = texts(f.list("precondition"), diags);
                p.main_course = texts(f.list("step"), diags)
                    .into_iter()
                    .enumerate()
                    .map(|(i, text)| Step { index: i as u32 + 1, text })
                    .collect();
                p.extensions = f
                    .list("extension")
                    .iter()
                    .filter_map(|e| {
                        parse_entry(e, diags, |s| {
                            let mut parts = split_fields(s, 3)?.into_iter();
                            let step_ref = parse_index(&parts.next().unwrap_or_default())
                                .map_err(|_| "the first field must be a step number".to_string())?;
                            Ok(Extension {
                                step_ref,
                                condition: parts.next().unwrap_or_default(),
                                handling: parts.next().unwrap_or_default(),
                            })
                        })
                    })
                    .collect();
                p.open_issues = texts(f.list("issue"), diags);
            }
            SectionKind::Actor(id) => {
                let name = f.text("name", diags);
                let kind = f.parsed("kind", diags, str::parse::<ActorKind>);
                if let (Some(name), Some(kind)) = (name, kind) {
                    p.actors.push(Actor { id: id.clone(), name, kind });
                }
            }
            SectionKind::UseCase(id) => {
                let name = f.text("name", diags);
                let is_ai = f.parsed("ai", diags, parse_bool);
                let is_main = if f.singles.contains_key("main") {
                    f.parsed("main", diags, parse_bool)
                } else {
                    Some(false)
                };
                if let (Some(name), Some(is_ai), Some(is_main)) = (name, is_ai, is_main) {
                    p.use_cases.push(UseCaseNode { id: id.clone(), name, is_ai, is_main });
                }
            }
            SectionKind::Relation => {
                let kind = f.parsed("kind", diags, str::parse::<RelationKind>);
                let source = f.text("source", diags);
                let target = f.text("target", diags);
                if let (Some(kind), Some(source), Some(target)) = (kind, source, target) {
                    p.relations.push(Relation { kind, source, target });
                }
            }
        }
    }

    for (present, name) in seen.iter().zip(["card", "purpose", "table"]) {
        if !present {
            diags.push(1, 1, ParseCode::P006, format!("missing required section [{name}]"));
        }
    }

    Some(UseCaseCard {
        id: p.id?,
        title: p.title?,
        version: p.version?,
        date: p.date?,
        provider: p.provider?,
        intended_purpose: IntendedPurpose {
            context_of_use: p.context_of_use?,
            scope: p.scope?,
            sdgs: p.sdgs,
        },
        product_type: p.product_type?,
        safety_component: p.safety_component?,
        application_entries: p.application_entries,
        transparency_flags: p.transparency_flags,
        actors: p.actors,
        use_cases: p.use_cases,
        relations: p.relations,
        primary_actor: p.primary_actor?,
        stakeholders: p.stakeholders,
        preconditions: p.preconditions,
        main_course: p.main_course,
        extensions: p.extensions,
        open_issues: p.open_issues,
    })
}

fn texts(entries: &[&RawEntry], diags: &mut Diagnostics) -> Vec<String> {
    entries
        .iter()
        .filter_map(|e| non_empty(e, diags).map(str::to_string))
        .collect()
}

struct Writer(String);

impl Writer {
    fn header(&mut self, header: &str) {
        if !self.0.is_empty() {
            self.0.push('\n');
        }
        self.0.push_str(header);
        self.0.push('\n');
    }

    fn value(&mut self, key: &str, value: &str) {
        let mut lines = value.split('\n');
        let first = lines.next().unwrap_or("");
        if first.is_empty() {
            let _ = writeln!(self.0, "{key}:");
        } else {
            let _ = writeln!(self.0, "{key}: {first}");
        }
        for line in lines {
            let _ = writeln!(self.0, "  {line}");
        }
    }
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

/// Canonical text for a card: fixed section and key order, lists in
/// declaration order, LF line endings, one trailing newline.
pub fn serialize_card(card: &UseCaseCard) -> String {
    let mut w = Writer(String::new());

    w.header("[card]");
    w.value("id", &card.id);
    w.value("title", &card.title);
    w.value("version", &card.version);
    w.value("date", &card.date.format("%Y-%m-%d").to_string());
    w.value("provider", &card.provider);

    w.header("[purpose]");
    w.value("context_of_use", &card.intended_purpose.context_of_use);
    w.value("scope", &card.intended_purpose.scope);
    for sdg in &card.intended_purpose.sdgs {
        w.value("sdg", &sdg.to_string());
    }

    for actor in &card.actors {
        w.header(&format!("[actor {}]", actor.id));
        w.value("name", &actor.name);
        w.value("kind", actor.kind.as_str());
    }

    for uc in &card.use_cases {
        w.header(&format!("[usecase {}]", uc.id));
        w.value("name", &uc.name);
        w.value("ai", yes_no(uc.is_ai));
        if uc.is_main {
            w.value("main", "yes");
        }
    }

    for rel in &card.relations {
        w.header("[relation]");
        w.value("kind", rel.kind.as_str());
        w.value("source", &rel.source);
        w.value("target", &rel.target);
    }

    w.header("[table]");
    w.value("product", &card.product_type);
    w.value("safety_component", yes_no(card.safety_component));
    for entry in &card.application_entries {
        w.value("area", &entry.to_string());
    }
    for flag in &card.transparency_flags {
        w.value("flag", flag.as_str());
    }
    w.value("primary_actor", &card.primary_actor);
    for s in &card.stakeholders {
        w.value("stakeholder", &format!("{} | {}", s.party, s.interest));
    }
    for pre in &card.preconditions {
        w.value("precondition", pre);
    }
    for step in &card.main_course {
        w.value("step", &step.text);
    }
    for ext in &card.extensions {
        w.value("extension", &format!("{} | {} | {}", ext.step_ref, ext.condition, ext.handling));
    }
    for issue in &card.open_issues {
        w.value("issue", issue);
    }

    w.0
}

#[cfg(test)]
mod tests {
    use super::*;

    const MINIMAL: &str = include_str!("../tests/data/minimal.ucc");

    fn codes(text: &str) -> Vec<(u32, ParseCode)> {
        parse_card(text)
            .unwrap_err()
            .into_iter()
            .map(|d| (d.location.line, d.code))
            .collect()
    }

    #[test]
    fn minimal_card() {
        let card = parse_card(MINIMAL).unwrap();
        assert_eq!(card.actors.len(), 1);
        assert_eq!(card.use_cases.len(), 1);
        assert!(card.use_cases[0].is_main && card.use_cases[0].is_ai);
        assert_eq!(card.main_course[0].index, 1);
        assert_eq!(card.date, NaiveDate::from_ymd_opt(2023, 6, 1).unwrap());
    }

    #[test]
    fn minimal_card_is_canonical() {
        assert_eq!(serialize_card(&parse_card(MINIMAL).unwrap()), MINIMAL);
    }

    #[test]
    fn crlf_bom_and_comments() {
        let text = format!("\u{feff}# leading comment\n{}", MINIMAL.replace('\n', "\r\n"));
        assert_eq!(parse_card(&text).unwrap(), parse_card(MINIMAL).unwrap());
    }

    #[test]
    fn duplicate_title_reported_at_second_line() {
        let text = MINIMAL.replace("title: Minimal card\n", "title: Minimal card\ntitle: Again\n");
        let diags = parse_card(&text).unwrap_err();
        assert_eq!(diags.len(), 1);
        assert_eq!(diags[0].code, ParseCode::P003);
        assert_eq!(diags[0].location, SourceLocation { line: 4, column: 1 });
        assert!(text.lines().nth(3).unwrap().contains("title"));
    }

    #[test]
    fn continuation_lines_join_with_newline() {
        let text = MINIMAL.replace(
            "scope: Predict one thing.\n",
            "scope: Predict one thing\n  and then another.\n",
        );
        let card = parse_card(&text).unwrap();
        assert_eq!(card.intended_purpose.scope, "Predict one thing\nand then another.");
        assert_eq!(serialize_card(&card), text);
    }

    #[test]
    fn value_may_start_on_continuation_line() {
        let text = MINIMAL.replace("scope: Predict one thing.\n", "scope:\n  Predict one thing.\n");
        assert_eq!(parse_card(&text).unwrap(), parse_card(MINIMAL).unwrap());
    }

    #[test]
    fn each_code_is_reachable() {
        assert_eq!(codes(&MINIMAL.replace("[table]", "[tabel]")), {
            // The body of the unknown section is skipped, so the table is missing.
            let mut v = vec![(1, ParseCode::P006), (26, ParseCode::P001)];
            v.sort();
            v
        });
        assert_eq!(codes(&MINIMAL.replace("kind: individual", "kin: individual")), vec![
            (12, ParseCode::P006),
            (14, ParseCode::P002),
        ]);
        assert_eq!(codes(&MINIMAL.replace("ai: yes", "ai: maybe")), vec![(18, ParseCode::P004)]);
        assert_eq!(codes(&MINIMAL.replace("[relation]", "[relation")), vec![(21, ParseCode::P005)]);
        assert_eq!(codes(&MINIMAL.replace("version: 1.0\n", "")), vec![(1, ParseCode::P006)]);
    }

    #[test]
    fn malformed_values() {
        let cases = [
            ("date: 2023-06-01", "date: 2023-13-40"),
            ("kind: individual", "kind: robot"),
            ("kind: association", "kind: depends"),
            ("safety_component: no", "safety_component: false"),
            ("area: other", "area: other/"),
            ("step: The user asks for a prediction.", "step:"),
            ("id: minimal", "id: has spaces"),
        ];
        for (from, to) in cases {
            let text = MINIMAL.replace(from, to);
            let diags = parse_card(&text).unwrap_err();
            assert_eq!(diags.len(), 1, "{to}: {diags:?}");
            assert_eq!(diags[0].code, ParseCode::P004, "{to}");
            let line = text.lines().nth(diags[0].location.line as usize - 1).unwrap();
            assert_eq!(line, to);
        }
    }

    #[test]
    fn malformed_repeated_values() {
        let text = MINIMAL.replace(
            "issue: Predictions may be wrong.\n",
            "issue: Predictions may be wrong.\nextension: x | a | b\nextension: 1 | a\nstakeholder: only party\nflag: mind_reading\n",
        );
        let diags = parse_card(&text).unwrap_err();
        assert_eq!(diags.len(), 4);
        assert!(diags.iter().all(|d| d.code == ParseCode::P004));
        // Value column points past `key: `.
        assert_eq!(diags[0].location.column, 12);
    }

    #[test]
    fn extension_and_stakeholder_fields() {
        let text = MINIMAL.replace(
            "issue: Predictions may be wrong.\n",
            "extension: 1 | input is blurry | ask again | politely\nissue: x\n",
        )
        .replace("primary_actor: user\n", "primary_actor: user\nstakeholder: Users | accurate answers\n");
        let card = parse_card(&text).unwrap();
        assert_eq!(card.extensions[0].step_ref, 1);
        assert_eq!(card.extensions[0].handling, "ask again | politely");
        assert_eq!(card.stakeholders[0].party, "Users");
    }

    #[test]
    fn duplicate_ids_and_sections() {
        let text = format!("{MINIMAL}\n[actor predict]\nname: Clash\nkind: group\n\n[card]\nid: x\n");
        let c = codes(&text);
        assert_eq!(c.iter().filter(|(_, code)| *code == ParseCode::P003).count(), 2);
    }

    #[test]
    fn independent_errors_are_all_reported() {
        let text = MINIMAL
            .replace("kind: individual", "kind: robot")
            .replace("ai: yes", "ai: maybe")
            .replace("safety_component: no", "safety_component: perhaps");
        assert_eq!(parse_card(&text).unwrap_err().len(), 3);
    }

    #[test]
    fn stray_lines() {
        assert_eq!(codes(&format!("loose text\n{MINIMAL}")), vec![(1, ParseCode::P004)]);
        assert_eq!(codes(&format!("  orphan\n{MINIMAL}")), vec![(1, ParseCode::P004)]);
        assert_eq!(codes(&MINIMAL.replace("name: User", " name: User")), vec![
            (12, ParseCode::P006),
            (13, ParseCode::P004),
        ]);
        assert_eq!(codes(&MINIMAL.replace("name: User", "name User")), vec![
            (12, ParseCode::P006),
            (13, ParseCode::P004),
        ]);
    }

    #[test]
    fn empty_input() {
        assert_eq!(codes(""), vec![(1, ParseCode::P006), (1, ParseCode::P006), (1, ParseCode::P006)]);
    }

    #[test]
    fn main_no_is_accepted_and_omitted() {
        let text = MINIMAL.replace("ai: yes\nmain: yes", "ai: yes\nmain: no");
        let card = parse_card(&text).unwrap();
        assert!(!card.use_cases[0].is_main);
        assert!(!serialize_card(&card).contains("main:"));
    }
}
