use std::collections::BTreeMap;
use std::fmt::Write as _;

use super::escape_xml;
use super::layout::layout_unchecked;
use super::svg::render_svg;
use crate::model::{lookup_product_type, lookup_sdg_number, UseCaseCard};
use crate::risk::{RiskAssessment, Tier};

const EMPTY: &str = "—";

const CELL: &str = "border: 1px solid #999999; padding: 6px 8px; vertical-align: top; text-align: left;";
const HEAD: &str = "border: 1px solid #999999; padding: 6px 8px; vertical-align: top; text-align: left; \
background: #f3f3f3; width: 28%;";

fn badge_colour(tier: Tier) -> &'static str {
    match tier {
        Tier::High => "#f4cccc",
        Tier::Transparency => "#fff2cc",
        Tier::Minimal => "#d9ead3",
    }
}

/// Escape, keeping source line breaks.
fn text(s: &str) -> String {
    escape_xml(s).replace('\n', "<br>")
}

fn list(items: &[String], ordered: bool) -> String {
    if items.is_empty() {
        return EMPTY.to_string();
    }
    let tag = if ordered { "ol" } else { "ul" };
    let mut out = format!("<{tag} style=\"margin: 0; padding-left: 20px;\">");
    for item in items {
        let _ = write!(out, "<li>{item}</li>");
    }
    let _ = write!(out, "</{tag}>");
    out
}

fn row(out: &mut String, head: &str, cell: &str) {
    let _ = writeln!(out, "<tr><th style=\"{HEAD}\">{head}</th><td style=\"{CELL}\">{cell}</td></tr>");
}

fn section(out: &mut String, title: &str) {
    let _ = writeln!(
        out,
        "<tr><th colspan=\"2\" style=\"{CELL} background: #d9d9d9;\">{title}</th></tr>"
    );
}

fn badge(assessment: &RiskAssessment) -> String {
    let mut rules: Vec<String> = Vec::new();
    for t in &assessment.triggers {
        let r = t.rule.to_string();
        if !rules.contains(&r) {
            rules.push(r);
        }
    }
    format!(
        "<div class=\"risk-badge risk-{tier}\" style=\"display: inline-block; padding: 6px 12px; \
         border: 1px solid #666666; border-radius: 4px; background: {colour}; font-weight: bold;\">\
         Risk tier: {tier} ({rules})</div>",
        tier = assessment.tier,
        colour = badge_colour(assessment.tier),
        rules = rules.join(", ")
    )
}

/// The complete card as one self-contained HTML document: the table on the
/// left, the diagram on the right, and a risk badge above both.
pub fn render_card_html(card: &UseCaseCard, assessment: &RiskAssessment) -> String {
    let mut out = String::new();
    out.push_str("<!DOCTYPE html>\n<html lang=\"en\">\n<head>\n<meta charset=\"utf-8\">\n");
    let _ = writeln!(out, "<title>{}</title>", escape_xml(&card.title));
    out.push_str("</head>\n<body style=\"font-family: sans-serif; font-size: 14px; margin: 24px; color: #000000;\">\n");
    let _ = writeln!(out, "<h1 style=\"font-size: 22px; margin: 0 0 4px 0;\">{}</h1>", escape_xml(&card.title));
    let _ = writeln!(
        out,
        "<p style=\"margin: 0 0 12px 0; color: #444444;\">{} version {}, {}, {}</p>",
        escape_xml(&card.id),
        escape_xml(&card.version),
        card.date,
        escape_xml(&card.provider)
    );
    let _ = writeln!(out, "{}", badge(assessment));
    let mut triggers = Vec::new();
    for t in &assessment.triggers {
        triggers.push(format!("{} {} [{}]: {}", t.rule, escape_xml(&t.subject), escape_xml(t.legal_ref), escape_xml(t.sentence())));
    }
    let _ = writeln!(out, "<div class=\"risk-triggers\" style=\"margin: 8px 0;\">{}</div>", list(&triggers, false));
    let _ = writeln!(
        out,
        "<p class=\"manual-review\" style=\"margin: 0 0 16px 0; font-style: italic;\">{}</p>",
        escape_xml(assessment.manual_review_note)
    );

    out.push_str("<div style=\"display: flex; gap: 24px; align-items: flex-start;\">\n");
    out.push_str("<table class=\"card-table\" style=\"border-collapse: collapse; flex: 1 1 50%;\">\n");

    let main = card.main_use_case().map(|u| text(&u.name)).unwrap_or_else(|| EMPTY.into());
    row(&mut out, "Use case", &main);

    section(&mut out, "Intended purpose");
    row(&mut out, "Context of use", &text(&card.intended_purpose.context_of_use));
    row(&mut out, "Scope", &text(&card.intended_purpose.scope));
    let sdgs: Vec<String> = card
        .intended_purpose
        .sdgs
        .iter()
        .map(|&n| match lookup_sdg_number(n) {
            Ok(s) => format!("{}. {}", s.number, escape_xml(s.name)),
            Err(_) => n.to_string(),
        })
        .collect();
    row(&mut out, "Sustainable development goals", &list(&sdgs, false));

    section(&mut out, "Risk classification fields");
    let product = match lookup_product_type(&card.product_type) {
        Ok(p) => escape_xml(p.label),
        Err(_) => escape_xml(&card.product_type),
    };
    row(&mut out, "Type of product", &product);
    row(&mut out, "Safety component", if card.safety_component { "Yes" } else { "No" });
    // Group subareas under their area so the area label appears once.
    let mut areas: BTreeMap<usize, (String, Vec<String>)> = BTreeMap::new();
    for (i, entry) in card.application_entries.iter().enumerate() {
        match entry.resolve() {
            Ok(e) => {
                let slot = areas
                    .values_mut()
                    .find(|(label, _)| label == e.area.label)
                    .map(|(_, subs)| subs);
                let sub = e.subarea.map(|s| escape_xml(s.label));
                match slot {
                    Some(subs) => subs.extend(sub),
                    None => {
                        areas.insert(i, (e.area.label.to_string(), sub.into_iter().collect()));
                    }
                }
            }
            Err(_) => {
                areas.insert(i, (entry.to_string(), Vec::new()));
            }
        }
    }
    let area_items: Vec<String> = areas
        .into_values()
        .map(|(label, subs)| {
            if subs.is_empty() {
                escape_xml(&label)
            } else {
                format!("{}{}", escape_xml(&label), list(&subs, false))
            }
        })
        .collect();
    row(&mut out, "Application areas", &list(&area_items, false));
    let flags: Vec<String> = card.transparency_flags.iter().map(|f| f.as_str().replace('_', " ")).collect();
    row(&mut out, "Transparency obligations", &list(&flags, false));

    section(&mut out, "Actors");
    let primary = card.actor(&card.primary_actor).map(|a| text(&a.name)).unwrap_or_else(|| text(&card.primary_actor));
    row(&mut out, "Primary actor", &primary);
    let actors: Vec<String> = card
        .actors
        .iter()
        .map(|a| format!("{} ({})", text(&a.name), a.kind.as_str().replace('_', " ")))
        .collect();
    row(&mut out, "All actors", &list(&actors, false));
    let stakeholders: Vec<String> = card
        .stakeholders
        .iter()
        .map(|s| format!("<strong>{}</strong>: {}", text(&s.party), text(&s.interest)))
        .collect();
    row(&mut out, "Stakeholders and interests", &list(&stakeholders, false));

    section(&mut out, "Scenario");
    let pre: Vec<String> = card.preconditions.iter().map(|p| text(p)).collect();
    row(&mut out, "Preconditions", &list(&pre, false));
    let steps: Vec<String> = card.main_course.iter().map(|s| text(&s.text)).collect();
    row(&mut out, "Main course", &list(&steps, true));
    let mut seen: BTreeMap<u32, u8> = BTreeMap::new();
    let extensions: Vec<String> = card
        .extensions
        .iter()
        .map(|e| {
            let n = seen.entry(e.step_ref).or_insert(0);
            let letter = char::from(b'a' + *n % 26);
            *n += 1;
            format!("{}{}. {}: {}", e.step_ref, letter, text(&e.condition), text(&e.handling))
        })
        .collect();
    row(&mut out, "Extensions", &list(&extensions, false));
    let issues: Vec<String> = card.open_issues.iter().map(|i| text(i)).collect();
    row(&mut out, "Open issues and foreseeable misuses", &list(&issues, false));

    out.push_str("</table>\n");
    out.push_str("<div class=\"card-canvas\" style=\"flex: 1 1 50%; overflow-x: auto;\">\n");
    let svg = render_svg(&layout_unchecked(card), card);
    // Inline the SVG without its XML declaration.
    out.push_str(svg.split_once('\n').map_or(svg.as_str(), |(_, rest)| rest));
    out.push_str("</div>\n</div>\n</body>\n</html>\n");
    out
}
