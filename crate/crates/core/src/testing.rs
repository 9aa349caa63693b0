//! Random card generators for property tests.
//!
//! [`random_card`] builds cards that pass validation with no errors and
//! whose text fields survive a serialize/parse round trip. [`corrupt`]
//! applies one mutation to card text that is guaranteed to produce at least
//! one parse diagnostic.

use std::collections::BTreeSet;

use chrono::NaiveDate;
use rand::seq::SliceRandom;
use rand::Rng;

use crate::model::{
    Actor, ActorKind, ApplicationRef, Extension, IntendedPurpose, Relation, RelationKind,
    Stakeholder, Step, TransparencyFlag, UseCaseCard, UseCaseNode, APPLICATION_AREAS,
    PRODUCT_TYPES,
};

const WORDS: &[&str] = &[
    "camera", "user", "scene", "model", "detects", "the", "and", "of", "a", "system", "risk",
    "person", "data", "privacy", "voice", "image", "school", "vehicle", "driver", "music", "café",
    "naïve", "señal", "<tag>", "A&B", "\"quoted\"", "it's", "50%", "x:y", "[note]", "#1", "→",
];

fn words<R: Rng>(rng: &mut R, lo: usize, hi: usize) -> String {
    let n = rng.gen_range(lo..=hi);
    let out: Vec<&str> = (0..n).map(|_| *WORDS.choose(rng).unwrap()).collect();
    out.join(" ")
}

/// One to three non-empty lines.
fn text<R: Rng>(rng: &mut R, max_words: usize) -> String {
    let lines = if rng.gen_bool(0.25) { rng.gen_range(2..=3) } else { 1 };
    (0..lines).map(|_| words(rng, 1, max_words)).collect::<Vec<_>>().join("\n")
}

/// Single line without the `|` field separator.
fn field<R: Rng>(rng: &mut R) -> String {
    words(rng, 1, 6)
}

fn ident<R: Rng>(rng: &mut R, prefix: &str, i: usize) -> String {
    let suffix = ["", "-x", "_y", ".z"].choose(rng).unwrap();
    format!("{prefix}{i}{suffix}")
}

pub fn random_card<R: Rng>(rng: &mut R) -> UseCaseCard {
    let n_actors = rng.gen_range(1..=4);
    let n_ucs = rng.gen_range(1..=8);
    let kinds = ActorKind::ALL;
    let actors: Vec<Actor> = (0..n_actors)
        .map(|i| Actor { id: ident(rng, "actor", i), name: field(rng), kind: *kinds.choose(rng).unwrap() })
        .collect();
    let main = rng.gen_range(0..n_ucs);
    let mut use_cases: Vec<UseCaseNode> = (0..n_ucs)
        .map(|i| UseCaseNode { id: ident(rng, "uc", i), name: field(rng), is_ai: rng.gen_bool(0.5), is_main: i == main })
        .collect();
    let forced_ai = rng.gen_range(0..n_ucs);
    use_cases[forced_ai].is_ai = true;

    let mut relations = Vec::new();
    // Every actor is associated with a use case, the primary one with main.
    let primary = rng.gen_range(0..n_actors);
    for (i, actor) in actors.iter().enumerate() {
        let uc = if i == primary { main } else { rng.gen_range(0..n_ucs) };
        let (source, target) = if rng.gen_bool(0.9) {
            (actor.id.clone(), use_cases[uc].id.clone())
        } else {
            (use_cases[uc].id.clone(), actor.id.clone())
        };
        relations.push(Relation { kind: RelationKind::Association, source, target });
    }
    // Include/extend only point forward in declaration order, so no cycles.
    for _ in 0..rng.gen_range(0..=n_ucs) {
        if n_ucs < 2 {
            break;
        }
        let a = rng.gen_range(0..n_ucs - 1);
        let b = rng.gen_range(a + 1..n_ucs);
        let kind = if rng.gen_bool(0.5) { RelationKind::Include } else { RelationKind::Extend };
        relations.push(Relation { kind, source: use_cases[a].id.clone(), target: use_cases[b].id.clone() });
    }
    if n_actors >= 2 && rng.gen_bool(0.5) {
        let a = rng.gen_range(0..n_actors);
        let b = (a + rng.gen_range(1..n_actors)) % n_actors;
        relations.push(Relation {
            kind: RelationKind::ActorGeneralization,
            source: actors[a].id.clone(),
            target: actors[b].id.clone(),
        });
    }
    relations.shuffle(rng);

    let product = PRODUCT_TYPES.choose(rng).unwrap();
    let product_type = if rng.gen_bool(0.8) { product.slug.to_string() } else { product.label.to_string() };
    let application_entries: Vec<ApplicationRef> = (0..rng.gen_range(1..=3))
        .map(|_| {
            let area = APPLICATION_AREAS.choose(rng).unwrap();
            ApplicationRef {
                area: area.slug.to_string(),
                subarea: area.subareas.choose(rng).map(|s| s.slug.to_string()),
            }
        })
        .collect();
    let transparency_flags: BTreeSet<TransparencyFlag> =
        TransparencyFlag::ALL.iter().copied().filter(|_| rng.gen_bool(0.2)).collect();

    let main_course: Vec<Step> = (1..=rng.gen_range(1..=6)).map(|i| Step { index: i, text: text(rng, 10) }).collect();
    let steps = main_course.len() as u32;
    let extensions = (0..rng.gen_range(0..=3))
        .map(|_| Extension { step_ref: rng.gen_range(1..=steps), condition: field(rng), handling: field(rng) })
        .collect();

    let card_no = rng.gen_range(0..1000);
    UseCaseCard {
        id: ident(rng, "card", card_no),
        title: words(rng, 1, 5),
        version: format!("{}.{}", rng.gen_range(0..5), rng.gen_range(0..10)),
        date: NaiveDate::from_ymd_opt(rng.gen_range(2000..2040), rng.gen_range(1..=12), rng.gen_range(1..=28)).unwrap(),
        provider: words(rng, 1, 4),
        intended_purpose: IntendedPurpose {
            context_of_use: text(rng, 20),
            scope: text(rng, 20),
            sdgs: (0..rng.gen_range(0..=3)).map(|_| rng.gen_range(1..=17)).collect(),
        },
        product_type,
        safety_component: rng.gen_bool(0.3),
        application_entries,
        transparency_flags,
        primary_actor: actors[primary].id.clone(),
        actors,
        use_cases,
        relations,
        stakeholders: (0..rng.gen_range(0..=3)).map(|_| Stakeholder { party: field(rng), interest: field(rng) }).collect(),
        preconditions: (0..rng.gen_range(0..=2)).map(|_| text(rng, 8)).collect(),
        main_course,
        extensions,
        open_issues: (0..rng.gen_range(0..=3)).map(|_| text(rng, 12)).collect(),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mutation {
    UnknownKey,
    DuplicateKey,
    DropRequiredKey,
    UnknownSection,
    UnterminatedHeader,
    StrayText,
    BadBoolean,
    Truncate,
    MissingColon,
}

impl Mutation {
    pub const ALL: [Mutation; 9] = [
        Mutation::UnknownKey,
        Mutation::DuplicateKey,
        Mutation::DropRequiredKey,
        Mutation::UnknownSection,
        Mutation::UnterminatedHeader,
        Mutation::StrayText,
        Mutation::BadBoolean,
        Mutation::Truncate,
        Mutation::MissingColon,
    ];
}

/// Apply a random [`Mutation`] to canonical card text.
pub fn corrupt<R: Rng>(rng: &mut R, text: &str) -> (Mutation, String) {
    let m = *Mutation::ALL.choose(rng).unwrap();
    (m, apply(rng, m, text))
}

fn header_positions(lines: &[&str]) -> Vec<usize> {
    lines.iter().enumerate().filter(|(_, l)| l.starts_with('[')).map(|(i, _)| i).collect()
}

pub fn apply<R: Rng>(rng: &mut R, m: Mutation, text: &str) -> String {
    let mut lines: Vec<String> = text.lines().map(str::to_string).collect();
    let borrowed: Vec<&str> = text.lines().collect();
    let headers = header_positions(&borrowed);
    let any_header = *headers.choose(rng).expect("card text has sections");
    match m {
        Mutation::UnknownKey => lines.insert(any_header + 1, "no_such_key: value".into()),
        Mutation::DuplicateKey => {
            let i = lines.iter().position(|l| l.starts_with("title:")).unwrap();
            lines.insert(i + 1, "title: again".into());
        }
        Mutation::DropRequiredKey => {
            let key = ["id:", "title:", "version:", "date:", "provider:", "scope:", "product:", "primary_actor:"]
                .choose(rng)
                .unwrap();
            let i = lines.iter().position(|l| l.starts_with(key)).unwrap();
            lines.remove(i);
            while lines.get(i).is_some_and(|l| l.starts_with("  ")) {
                lines.remove(i);
            }
        }
        Mutation::UnknownSection => lines.insert(any_header, "[mystery]".into()),
        Mutation::UnterminatedHeader => {
            let l = &mut lines[any_header];
            l.pop();
        }
        Mutation::StrayText => lines.insert(0, "stray words before any section".into()),
        Mutation::BadBoolean => {
            let i = lines.iter().position(|l| l.starts_with("safety_component:")).unwrap();
            lines[i] = "safety_component: maybe".into();
        }
        Mutation::Truncate => {
            let table = lines.iter().position(|l| l == "[table]").unwrap();
            let keep = rng.gen_range(0..table);
            lines.truncate(keep);
        }
        Mutation::MissingColon => lines.insert(any_header + 1, "no colon on this line".into()),
    }
    let mut out = lines.join("\n");
    out.push('\n');
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{parse_card, serialize_card, validate};
    use rand::SeedableRng;

    #[test]
    fn generated_cards_are_valid_and_round_trip() {
        let mut rng = rand::rngs::StdRng::seed_from_u64(7);
        for _ in 0..200 {
            let card = random_card(&mut rng);
            let d = validate(&card);
            assert!(!d.has_errors(), "{}", d.to_text());
            let text = serialize_card(&card);
            assert_eq!(parse_card(&text).unwrap(), card, "{text}");
        }
    }

    #[test]
    fn every_mutation_breaks_parsing() {
        let mut rng = rand::rngs::StdRng::seed_from_u64(11);
        for _ in 0..50 {
            let text = serialize_card(&random_card(&mut rng));
            for m in Mutation::ALL {
                let broken = apply(&mut rng, m, &text);
                assert!(parse_card(&broken).is_err(), "{m:?}\n{broken}");
            }
        }
    }
}
