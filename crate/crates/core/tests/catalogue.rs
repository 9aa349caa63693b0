mod common;

use std::path::Path;

use common::oracles::tally;
use common::{check_golden, fixture_text, fixtures_dir, FIXTURES};
use ucc_core::catalogue::{
    export_catalogue_json, ingest, query, scan, stats, CatalogueError, EntryStatus, Filter, INDEX_FILE,
};
use ucc_core::model::lookup_product_type;
use ucc_core::{assess, parse_card, validate, Tier};

fn copy_fixtures(dest: &Path) {
    for name in FIXTURES {
        std::fs::write(dest.join(format!("{name}.ucc")), fixture_text(name)).unwrap();
    }
}

#[test]
fn fixture_corpus() {
    let dir = tempfile::tempdir().unwrap();
    copy_fixtures(dir.path());
    let c = ingest(dir.path()).unwrap();
    assert_eq!(c.entries.len(), 5);
    assert!(c.entries.iter().all(|e| e.status == EntryStatus::Valid));
    let paths: Vec<_> = c.entries.iter().map(|e| e.path.as_str()).collect();
    let mut sorted = paths.clone();
    sorted.sort();
    assert_eq!(paths, sorted);

    let s = stats(&c);
    assert_eq!(s.per_tier[&Tier::High], 3);
    assert_eq!(s.per_tier[&Tier::Transparency] + s.per_tier[&Tier::Minimal], 2);
    assert_eq!(s.per_tier.values().sum::<usize>(), s.valid);
    assert_eq!((s.valid, s.invalid, s.total), (5, 0, 5));

    // Manual tally from the files themselves.
    let texts: Vec<String> = FIXTURES.iter().map(|n| fixture_text(n)).collect();
    let t = tally(texts.iter().map(String::as_str));
    assert_eq!(s.per_sdg, t.per_sdg);
    assert_eq!(s.per_area, t.per_area);
    assert_eq!(s.per_product, t.per_product);
    assert!(s.per_sdg[&3] >= 1 && s.per_sdg[&10] >= 1);

    check_golden("fixtures-catalogue.json", &export_catalogue_json(&c));
}

#[test]
fn entries_match_fresh_recomputation() {
    let c = scan(&fixtures_dir()).unwrap();
    for e in &c.entries {
        let text = std::fs::read_to_string(fixtures_dir().join(&e.path)).unwrap();
        let card = parse_card(&text).unwrap();
        assert!(!validate(&card).has_errors());
        assert_eq!(e.id.as_deref(), Some(card.id.as_str()));
        assert_eq!(e.tier, Some(assess(&card).unwrap().tier));
        assert_eq!(e.product.as_deref(), Some(lookup_product_type(&card.product_type).unwrap().slug));
        let areas: Vec<String> = card.application_entries.iter().map(|a| a.resolve().unwrap().key()).collect();
        assert_eq!(e.areas.as_ref(), Some(&areas));
    }
}

#[test]
fn ingest_is_idempotent() {
    let dir = tempfile::tempdir().unwrap();
    copy_fixtures(dir.path());
    ingest(dir.path()).unwrap();
    let first = std::fs::read(dir.path().join(INDEX_FILE)).unwrap();
    ingest(dir.path()).unwrap();
    let second = std::fs::read(dir.path().join(INDEX_FILE)).unwrap();
    assert_eq!(first, second);
}

#[test]
fn empty_directory() {
    let dir = tempfile::tempdir().unwrap();
    let c = ingest(dir.path()).unwrap();
    assert!(c.entries.is_empty());
    let index = std::fs::read_to_string(dir.path().join(INDEX_FILE)).unwrap();
    assert_eq!(index, "{\n  \"entries\": [],\n  \"total\": 0\n}\n");
    assert_eq!(stats(&c).total, 0);
}

#[test]
fn duplicate_ids_name_both_paths() {
    let dir = tempfile::tempdir().unwrap();
    copy_fixtures(dir.path());
    std::fs::create_dir(dir.path().join("more")).unwrap();
    std::fs::write(dir.path().join("more/copy.ucc"), fixture_text("smart-camera")).unwrap();
    match ingest(dir.path()) {
        Err(CatalogueError::DuplicateCardId { id, first, second }) => {
            assert_eq!(id, "smart-camera");
            assert_eq!((first.as_str(), second.as_str()), ("more/copy.ucc", "smart-camera.ucc"));
        }
        other => panic!("expected duplicate id error, got {other:?}"),
    }
    assert!(!dir.path().join(INDEX_FILE).exists());
}

#[test]
fn invalid_files_are_indexed_but_not_counted() {
    let dir = tempfile::tempdir().unwrap();
    copy_fixtures(dir.path());
    std::fs::write(dir.path().join("broken.ucc"), "[card]\nid: broken\nid: twice\n").unwrap();
    let no_ai = fixture_text("smart-camera").replace("id: smart-camera", "id: no-ai").replace("ai: yes", "ai: no");
    std::fs::write(dir.path().join("no-ai.ucc"), no_ai).unwrap();
    std::fs::write(dir.path().join("notes.txt"), "ignored").unwrap();
    let c = ingest(dir.path()).unwrap();
    assert_eq!(c.entries.len(), 7);
    let s = stats(&c);
    assert_eq!((s.valid, s.invalid, s.total), (5, 2, 7));
    assert_eq!(s.per_tier.values().sum::<usize>(), 5);
    let broken = c.entries.iter().find(|e| e.path == "broken.ucc").unwrap();
    assert_eq!(broken.status, EntryStatus::Invalid);
    assert!(broken.tier.is_none() && broken.areas.is_none());
    assert_eq!(query(&c, &Filter::default()).unwrap().len(), 5);
}

#[test]
fn queries() {
    let c = scan(&fixtures_dir()).unwrap();
    let ids = |f: Filter| -> Vec<String> {
        query(&c, &f).unwrap().iter().map(|e| e.id.clone().unwrap()).collect()
    };
    assert_eq!(ids(Filter::default()).len(), 5);
    assert_eq!(ids(Filter { tier: Some(Tier::High), ..Filter::default() }).len(), 3);
    assert_eq!(
        ids(Filter { area: Some("biometrics/remote-biometric-identification".into()), ..Filter::default() }),
        ["scene-narrator"]
    );
    assert_eq!(ids(Filter { area: Some("Biometrics".into()), ..Filter::default() }), ["scene-narrator"]);
    assert_eq!(ids(Filter { sdg: Some(4), ..Filter::default() }), ["student-proctoring"]);
    assert_eq!(
        ids(Filter { product: Some("Motor vehicles and their trailers".into()), ..Filter::default() }),
        ["driver-monitoring"]
    );

    // Conjunction equals successive filtering.
    let both = Filter { tier: Some(Tier::High), sdg: Some(3), ..Filter::default() };
    let high = query(&c, &Filter { tier: Some(Tier::High), ..Filter::default() }).unwrap();
    let then: Vec<_> = high.into_iter().filter(|e| e.sdgs.as_ref().unwrap().contains(&3)).collect();
    assert_eq!(query(&c, &both).unwrap(), then);
}
