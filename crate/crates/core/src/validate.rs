//! Semantic rules over a parsed card.
//!
//! | Rule | Severity | Check |
//! |------|----------|-------|
//! | V1 | error | primary actor is declared; exactly one main use case |
//! | V2 | error | at least one AI use case |
//! | V3 | error | relation endpoints resolve and have the right kinds |
//! | V4 | warning | context of use / scope longer than 100 words |
//! | V5 | error | product type, application areas and SDGs resolve |
//! | V6 | error | the main use case takes part in a relation |
//! | V7 | error | non-empty main course; extensions reference real steps |
//! | V8 | warning | actor never referenced by a relation |
//! | V9 | error | include/extend graph is acyclic |
//! | V10 | warning | no open issues (foreseeable misuses) documented |

use std::collections::{HashMap, VecDeque};
use std::fmt::{self, Write as _};

use serde::Serialize;

use crate::model::{
    lookup_product_type, lookup_sdg_number, RelationKind, UseCaseCard,
};

pub const MAX_RECOMMENDED_WORDS: usize = 100;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum RuleId {
    V1,
    V2,
    V3,
    V4,
    V5,
    V6,
    V7,
    V8,
    V9,
    V10,
}

impl fmt::Display for RuleId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Severity {
    Error,
    Warning,
}

impl fmt::Display for Severity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Severity::Error => "error",
            Severity::Warning => "warning",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Finding {
    pub rule: RuleId,
    pub severity: Severity,
    /// Entity id or field path the finding is about.
    pub subject: String,
    pub message: String,
}

impl fmt::Display for Finding {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {} {}: {}", self.rule, self.severity, self.subject, self.message)
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
#[serde(transparent)]
pub struct Diagnostics {
    pub findings: Vec<Finding>,
}

impl Diagnostics {
    pub fn has_errors(&self) -> bool {
        self.errors().next().is_some()
    }

    pub fn errors(&self) -> impl Iterator<Item = &Finding> {
        self.findings.iter().filter(|f| f.severity == Severity::Error)
    }

    pub fn warnings(&self) -> impl Iterator<Item = &Finding> {
        self.findings.iter().filter(|f| f.severity == Severity::Warning)
    }

    pub fn is_empty(&self) -> bool {
        self.findings.is_empty()
    }

    /// `RULE severity subject: message`, one per line.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for finding in &self.findings {
            let _ = writeln!(out, "{finding}");
        }
        out
    }

    pub fn to_json(&self) -> String {
        crate::json::to_canonical_string(self)
    }

    fn push(&mut self, rule: RuleId, severity: Severity, subject: impl Into<String>, message: String) {
        self.findings.push(Finding { rule, severity, subject: subject.into(), message });
    }
}

/// Number of maximal runs of non-whitespace characters.
pub fn word_count(text: &str) -> usize {
    text.split_whitespace().count()
}

/// Apply every rule to `card`. Findings are ordered by rule, then by the
/// declaration order of their subjects.
pub fn validate(card: &UseCaseCard) -> Diagnostics {
    use RuleId::*;
    use Severity::*;

    let mut d = Diagnostics::default();
    let is_actor = |id: &str| card.actor(id).is_some();
    let is_use_case = |id: &str| card.use_case(id).is_some();

    // V1
    if !is_actor(&card.primary_actor) {
        d.push(
            V1,
            Error,
            "table.primary_actor",
            format!("primary actor `{}` is not a declared actor", card.primary_actor),
        );
    }
    let mains: Vec<&str> = card.use_cases.iter().filter(|u| u.is_main).map(|u| u.id.as_str()).collect();
    match mains.len() {
        1 => {}
        0 => d.push(V1, Error, "use_cases", "no use case is marked `main: yes`".into()),
        _ => d.push(
            V1,
            Error,
            "use_cases",
            format!("exactly one main use case expected, found {}: {}", mains.len(), mains.join(", ")),
        ),
    }

    // V2
    if !card.use_cases.iter().any(|u| u.is_ai) {
        d.push(
            V2,
            Error,
            "use_cases",
            "no AI use case; a card documents an AI system only if at least one use case is AI".into(),
        );
    }

    // V3
    for (i, rel) in card.relations.iter().enumerate() {
        let subject = format!("relations[{i}]");
        let (src_ok, tgt_ok, expectation) = match rel.kind {
            RelationKind::Association => {
                let ok = (is_actor(&rel.source) && is_use_case(&rel.target))
                    || (is_use_case(&rel.source) && is_actor(&rel.target));
                (ok, ok, "one actor and one use case")
            }
            RelationKind::Include | RelationKind::Extend => {
                (is_use_case(&rel.source), is_use_case(&rel.target), "two use cases")
            }
            RelationKind::ActorGeneralization => {
                (is_actor(&rel.source), is_actor(&rel.target), "two actors")
            }
        };
        if !(src_ok && tgt_ok) {
            let dangling: Vec<&str> = [&rel.source, &rel.target]
                .into_iter()
                .filter(|id| !is_actor(id) && !is_use_case(id))
                .map(String::as_str)
                .collect();
            let detail = if dangling.is_empty() {
                String::new()
            } else {
                format!(" (undeclared: {})", dangling.join(", "))
            };
            d.push(
                V3,
                Error,
                subject,
                format!(
                    "{} `{}` -> `{}` must connect {expectation}{detail}",
                    rel.kind, rel.source, rel.target
                ),
            );
        } else if rel.kind != RelationKind::Association && rel.source == rel.target {
            d.push(V3, Error, subject, format!("{} relation connects `{}` to itself", rel.kind, rel.source));
        }
    }

    // V4
    for (field, text) in [
        ("purpose.context_of_use", &card.intended_purpose.context_of_use),
        ("purpose.scope", &card.intended_purpose.scope),
    ] {
        let words = word_count(text);
        if words > MAX_RECOMMENDED_WORDS {
            d.push(
                V4,
                Warning,
                field,
                format!("{words} words; at most {MAX_RECOMMENDED_WORDS} are recommended"),
            );
        }
    }

    // V5
    if let Err(e) = lookup_product_type(&card.product_type) {
        d.push(V5, Error, "table.product", e.to_string());
    }
    if card.application_entries.is_empty() {
        d.push(V5, Error, "table.area", "at least one application area is required".into());
    }
    for (i, entry) in card.application_entries.iter().enumerate() {
        if let Err(e) = entry.resolve() {
            d.push(V5, Error, format!("table.area[{i}]"), e.to_string());
        }
    }
    for (i, sdg) in card.intended_purpose.sdgs.iter().enumerate() {
        if let Err(e) = lookup_sdg_number(*sdg) {
            d.push(V5, Error, format!("purpose.sdg[{i}]"), e.to_string());
        }
    }

    // V6
    if let [main] = mains.as_slice() {
        let participates = card.relations.iter().any(|r| {
            r.kind != RelationKind::ActorGeneralization && (r.source == *main || r.target == *main)
        });
        if !participates {
            d.push(
                V6,
                Error,
                *main,
                "the main use case takes part in no association, include or extend relation".into(),
            );
        }
    }

    // V7
    if card.main_course.is_empty() {
        d.push(V7, Error, "table.main_course", "the main course has no steps".into());
    }
    let steps = card.main_course.len() as u32;
    for (i, ext) in card.extensions.iter().enumerate() {
        if ext.step_ref == 0 || ext.step_ref > steps {
            d.push(
                V7,
                Error,
                format!("table.extension[{i}]"),
                format!("extension refers to step {} but the main course has {steps} step(s)", ext.step_ref),
            );
        }
    }

    // V8
    for actor in &card.actors {
        let referenced = card.relations.iter().any(|r| r.source == actor.id || r.target == actor.id);
        if !referenced {
            d.push(V8, Warning, actor.id.as_str(), format!("actor `{}` takes part in no relation", actor.name));
        }
    }

    // V9
    let index: HashMap<&str, usize> =
        card.use_cases.iter().enumerate().map(|(i, u)| (u.id.as_str(), i)).collect();
    let edges: Vec<(usize, usize)> = card
        .relations
        .iter()
        .filter(|r| matches!(r.kind, RelationKind::Include | RelationKind::Extend))
        .filter_map(|r| Some((*index.get(r.source.as_str())?, *index.get(r.target.as_str())?)))
        .collect();
    for cycle in find_cycles(card.use_cases.len(), &edges) {
        let ids: Vec<&str> = cycle.iter().map(|&i| card.use_cases[i].id.as_str()).collect();
        let mut path = ids.join(" -> ");
        let _ = write!(path, " -> {}", ids[0]);
        d.push(V9, Error, ids[0], format!("include/extend cycle: {path}"));
    }

    // V10
    if card.open_issues.is_empty() {
        d.push(
            V10,
            Warning,
            "table.open_issues",
            "no open issues; document foreseeable misuses of the system".into(),
        );
    }

    d
}

/// One cycle per strongly connected component that contains a cycle,
/// ordered by the component's lowest node. Each cycle starts at that node
/// and lists the nodes of a shortest path back to it.
pub fn find_cycles(node_count: usize, edges: &[(usize, usize)]) -> Vec<Vec<usize>> {
    let mut adjacency = vec![Vec::new(); node_count];
    for &(from, to) in edges {
        adjacency[from].push(to);
    }
    for targets in &mut adjacency {
        targets.sort_unstable();
        targets.dedup();
    }

    let mut components = strongly_connected(&adjacency);
    components.retain(|c| c.len() > 1 || adjacency[c[0]].contains(&c[0]));
    for c in &mut components {
        c.sort_unstable();
    }
    components.sort();

    components
        .into_iter()
        .map(|component| {
            let start = component[0];
            if adjacency[start].contains(&start) {
                return vec![start];
            }
            let member = |n: usize| component.binary_search(&n).is_ok();
            // Breadth-first search for the shortest route back to `start`.
            let mut parent: HashMap<usize, usize> = HashMap::new();
            let mut queue = VecDeque::from([start]);
            let mut last = start;
            'search: while let Some(node) = queue.pop_front() {
                for &next in &adjacency[node] {
                    if !member(next) {
                        continue;
                    }
                    if next == start {
                        last = node;
                        break 'search;
                    }
                    if next != start && !parent.contains_key(&next) {
                        parent.insert(next, node);
                        queue.push_back(next);
                    }
                }
            }
            let mut path = vec![last];
            while let Some(&p) = parent.get(path.last().expect("non-empty")) {
                path.push(p);
            }
            path.reverse();
            path
        })
        .collect()
}

/// Tarjan's algorithm, iterative.
fn strongly_connected(adjacency: &[Vec<usize>]) -> Vec<Vec<usize>> {
    let n = adjacency.len();
    let mut index = vec![usize::MAX; n];
    let mut low = vec![0; n];
    let mut on_stack = vec![false; n];
    let mut stack = Vec::new();
    let mut next_index = 0;
    let mut components = Vec::new();

    for root in 0..n {
        if index[root] != usize::MAX {
            continue;
        }
        let mut work: Vec<(usize, usize)> = vec![(root, 0)];
        index[root] = next_index;
        low[root] = next_index;
        next_index += 1;
        stack.push(root);
        on_stack[root] = true;

        while let Some(&mut (node, ref mut child)) = work.last_mut() {
            if let Some(&next) = adjacency[node].get(*child) {
                *child += 1;
                if index[next] == usize::MAX {
                    index[next] = next_index;
                    low[next] = next_index;
                    next_index += 1;
                    stack.push(next);
                    on_stack[next] = true;
                    work.push((next, 0));
                } else if on_stack[next] {
                    low[node] = low[node].min(index[next]);
                }
            } else {
                work.pop();
                if let Some(&(parent, _)) = work.last() {
                    low[parent] = low[parent].min(low[node]);
                }
                if low[node] == index[node] {
                    let mut component = Vec::new();
                    loop {
                        let member = stack.pop().expect("node is on the stack");
                        on_stack[member] = false;
                        component.push(member);
                        if member == node {
                            break;
                        }
                    }
                    components.push(component);
                }
            }
        }
    }
    components
}
