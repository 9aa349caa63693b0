//! Independent reference implementations used by the property and
//! acceptance tests. They favour brute force over cleverness.

#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};

use ucc_core::model::{ApplicationRef, TransparencyFlag};
use ucc_core::risk::RiskRule;
use ucc_core::validate::find_cycles;
use ucc_core::{Tier, UseCaseCard};

/// Edge list for graph number `bits` over `n` nodes. Bit k stands for the
/// k-th ordered pair (i, j), row-major, skipping i == j unless
/// `self_loops`.
pub fn graph_from_bits(n: usize, bits: u64, self_loops: bool) -> Vec<(usize, usize)> {
    let mut edges = Vec::new();
    let mut k = 0;
    for i in 0..n {
        for j in 0..n {
            if i == j && !self_loops {
                continue;
            }
            if bits >> k & 1 == 1 {
                edges.push((i, j));
            }
            k += 1;
        }
    }
    edges
}

pub fn pair_count(n: usize, self_loops: bool) -> u32 {
    (if self_loops { n * n } else { n * (n - 1) }) as u32
}

fn masks(n: usize, edges: &[(usize, usize)]) -> Vec<u32> {
    let mut adj = vec![0u32; n];
    for &(a, b) in edges {
        adj[a] |= 1 << b;
    }
    adj
}

/// Enumerate every simple path from `start`; report the nodes reached and
/// the length of the shortest path that closes back on `start`.
fn explore(adj: &[u32], start: usize) -> (u32, Option<usize>) {
    fn walk(adj: &[u32], start: usize, node: usize, visited: u32, len: usize, reach: &mut u32, best: &mut Option<usize>) {
        for next in 0..adj.len() {
            if adj[node] >> next & 1 == 0 {
                continue;
            }
            if next == start {
                *best = Some(best.map_or(len, |b: usize| b.min(len)));
            }
            *reach |= 1 << next;
            if visited >> next & 1 == 0 {
                walk(adj, start, next, visited | 1 << next, len + 1, reach, best);
            }
        }
    }
    let mut reach = 0;
    let mut best = None;
    walk(adj, start, start, 1 << start, 1, &mut reach, &mut best);
    (reach, best)
}

/// Whether the digraph has any cycle, by path enumeration.
pub fn has_cycle(n: usize, edges: &[(usize, usize)]) -> bool {
    let adj = masks(n, edges);
    (0..n).any(|s| explore(&adj, s).1.is_some())
}

/// Check `find_cycles` against path enumeration: one cycle per group of
/// mutually reachable cyclic nodes, starting at the group's lowest node,
/// as short as the shortest cycle through that node, and made of real
/// edges.
pub fn check_find_cycles(n: usize, edges: &[(usize, usize)]) -> Result<(), String> {
    let adj = masks(n, edges);
    let info: Vec<(u32, Option<usize>)> = (0..n).map(|s| explore(&adj, s)).collect();
    let mut groups: Vec<Vec<usize>> = Vec::new();
    for s in (0..n).filter(|&s| info[s].1.is_some()) {
        if groups.iter().any(|g| g.contains(&s)) {
            continue;
        }
        let group: Vec<usize> =
            (0..n).filter(|&t| t == s || (info[s].0 >> t & 1 == 1 && info[t].0 >> s & 1 == 1)).collect();
        groups.push(group);
    }

    let found = find_cycles(n, edges);
    if found.len() != groups.len() {
        return Err(format!("{edges:?}: expected {} cycles, got {found:?}", groups.len()));
    }
    for (cycle, group) in found.iter().zip(&groups) {
        if cycle.first() != Some(&group[0]) {
            return Err(format!("{edges:?}: cycle {cycle:?} should start at {}", group[0]));
        }
        if Some(cycle.len()) != info[group[0]].1 {
            return Err(format!("{edges:?}: cycle {cycle:?} is not a shortest one ({:?})", info[group[0]].1));
        }
        let distinct: BTreeSet<_> = cycle.iter().collect();
        if distinct.len() != cycle.len() || !cycle.iter().all(|v| group.contains(v)) {
            return Err(format!("{edges:?}: cycle {cycle:?} leaves its group {group:?}"));
        }
        for k in 0..cycle.len() {
            let (a, b) = (cycle[k], cycle[(k + 1) % cycle.len()]);
            if adj[a] >> b & 1 == 0 {
                return Err(format!("{edges:?}: cycle {cycle:?} uses missing edge {a}->{b}"));
            }
        }
    }
    Ok(())
}

/// The four risk-relevant switches of a card and the tier and rules each
/// combination must produce, written out by hand.
/// (safety component, Annex II product, Annex III area, transparency flag)
pub type RiskSwitches = (bool, bool, bool, bool);

pub const RISK_TABLE: [(RiskSwitches, Tier, &[RiskRule]); 16] = {
    use RiskRule::*;
    use Tier::*;
    [
        ((false, false, false, false), Minimal, &[R5]),
        ((false, false, false, true), Transparency, &[R4]),
        ((false, false, true, false), High, &[R3]),
        ((false, false, true, true), High, &[R3, R4]),
        ((false, true, false, false), High, &[R2]),
        ((false, true, false, true), High, &[R2, R4]),
        ((false, true, true, false), High, &[R2, R3]),
        ((false, true, true, true), High, &[R2, R3, R4]),
        ((true, false, false, false), High, &[R1]),
        ((true, false, false, true), High, &[R1, R4]),
        ((true, false, true, false), High, &[R1, R3]),
        ((true, false, true, true), High, &[R1, R3, R4]),
        ((true, true, false, false), High, &[R1, R2]),
        ((true, true, false, true), High, &[R1, R2, R4]),
        ((true, true, true, false), High, &[R1, R2, R3]),
        ((true, true, true, true), High, &[R1, R2, R3, R4]),
    ]
};

/// Set the four switches on a base card that starts out minimal-risk.
pub fn risk_variant(base: &UseCaseCard, (safety, annex_ii, annex_iii, flag): RiskSwitches) -> UseCaseCard {
    let mut c = base.clone();
    c.safety_component = safety;
    c.product_type = if annex_ii { "medical-device" } else { "other-software" }.into();
    c.application_entries = vec![if annex_iii {
        ApplicationRef { area: "employment-workers-management-and-access-to-self-employment".into(), subarea: Some("recruitment-and-selection".into()) }
    } else {
        ApplicationRef { area: "entertainment-and-leisure".into(), subarea: None }
    }];
    c.transparency_flags.clear();
    if flag {
        c.transparency_flags.insert(TransparencyFlag::EmotionRecognition);
    }
    c
}

/// Histograms tallied straight from card text: the value of every
/// `product:` line, distinct `area:` values and distinct `sdg:` values per
/// file.
#[derive(Debug, Default, PartialEq, Eq)]
pub struct Tally {
    pub per_product: BTreeMap<String, usize>,
    pub per_area: BTreeMap<String, usize>,
    pub per_sdg: BTreeMap<u32, usize>,
}

pub fn tally<'a>(texts: impl IntoIterator<Item = &'a str>) -> Tally {
    let mut t = Tally::default();
    for text in texts {
        let values = |key: &str| -> BTreeSet<String> {
            text.lines().filter_map(|l| l.strip_prefix(key)).map(|v| v.trim().to_string()).collect()
        };
        for p in values("product:") {
            *t.per_product.entry(p).or_default() += 1;
        }
        for a in values("area:") {
            *t.per_area.entry(a).or_default() += 1;
        }
        for s in values("sdg:") {
            *t.per_sdg.entry(s.parse().unwrap()).or_default() += 1;
        }
    }
    t
}
