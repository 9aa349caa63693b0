//! Risk-tier rule engine.
//!
//! Rules are evaluated in a fixed order and every rule that fires is
//! reported, so an assessment explains itself:
//!
//! * R1: the system is a safety component.
//! * R2: the product type is listed in Annex II.
//! * R3: an application entry is an Annex III subarea (one trigger per entry).
//! * R4: a transparency flag is declared (one trigger per flag).
//! * R5: nothing else fired.
//!
//! Any of R1–R3 makes the tier high. R4 makes it transparency only when no
//! high-risk rule fired; alongside a high tier it is informational. The
//! unacceptable tier is never produced: it has no checkable fields, so every
//! assessment carries a note asking for manual review.

use std::fmt::{self, Write as _};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::model::{lookup_product_type, UseCaseCard};
use crate::validate::{validate, Diagnostics};

pub const MANUAL_REVIEW_NOTE: &str = "Unacceptable-risk (prohibited) practices are not assessed \
automatically; review the intended purpose and foreseeable misuses manually.";

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Tier {
    Minimal,
    Transparency,
    High,
}

impl Tier {
    pub const ALL: [Tier; 3] = [Tier::High, Tier::Transparency, Tier::Minimal];

    pub fn as_str(self) -> &'static str {
        match self {
            Tier::High => "high",
            Tier::Transparency => "transparency",
            Tier::Minimal => "minimal",
        }
    }
}

impl fmt::Display for Tier {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl std::str::FromStr for Tier {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Tier::ALL
            .into_iter()
            .find(|t| t.as_str() == s)
            .ok_or_else(|| format!("unknown tier `{s}` (expected high, transparency or minimal)"))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum RiskRule {
    R1,
    R2,
    R3,
    R4,
    R5,
}

impl RiskRule {
    pub fn legal_ref(self) -> &'static str {
        match self {
            RiskRule::R1 => "Art. 3(14) / Annex II",
            RiskRule::R2 => "Art. 6 / Annex II",
            RiskRule::R3 => "Art. 6 / Annex III",
            RiskRule::R4 => "transparency obligations (tier 3)",
            RiskRule::R5 => "minimal risk (tier 4)",
        }
    }

    fn is_high(self) -> bool {
        matches!(self, RiskRule::R1 | RiskRule::R2 | RiskRule::R3)
    }
}

impl fmt::Display for RiskRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RiskTrigger {
    pub rule: RiskRule,
    pub subject: String,
    pub legal_ref: &'static str,
    #[serde(skip)]
    sentence: String,
}

impl RiskTrigger {
    fn new(rule: RiskRule, subject: impl Into<String>, sentence: String) -> Self {
        RiskTrigger { rule, subject: subject.into(), legal_ref: rule.legal_ref(), sentence }
    }

    pub fn sentence(&self) -> &str {
        &self.sentence
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RiskAssessment {
    pub tier: Tier,
    pub triggers: Vec<RiskTrigger>,
    pub manual_review_note: &'static str,
}

impl RiskAssessment {
    pub fn to_json(&self) -> String {
        crate::json::to_canonical_string(self)
    }

    pub fn rules(&self) -> Vec<RiskRule> {
        self.triggers.iter().map(|t| t.rule).collect()
    }
}

#[derive(Debug, Clone, Error)]
#[error("card has {} validation error(s); risk assessment needs a valid card", .0.errors().count())]
pub struct NotValidated(pub Diagnostics);

/// Classify a card. Fails when the card carries validation errors.
pub fn assess(card: &UseCaseCard) -> Result<RiskAssessment, NotValidated> {
    let diagnostics = validate(card);
    if diagnostics.has_errors() {
        return Err(NotValidated(diagnostics));
    }
    Ok(assess_unchecked(card))
}

/// The rule evaluation behind [`assess`], for cards already known to be
/// valid. Unresolvable vocabulary references simply do not fire.
pub fn assess_unchecked(card: &UseCaseCard) -> RiskAssessment {
    let mut triggers = Vec::new();

    if card.safety_component {
        triggers.push(RiskTrigger::new(
            RiskRule::R1,
            "table.safety_component",
            "the use case is a safety component of a product or system; high-risk".into(),
        ));
    }
    if let Ok(product) = lookup_product_type(&card.product_type) {
        if product.annex_ii {
            triggers.push(RiskTrigger::new(
                RiskRule::R2,
                product.slug,
                format!(
                    "product type \"{}\" might be subject to Union harmonisation legislation \
                     listed in Annex II; flagged as high-risk pending that analysis",
                    product.label
                ),
            ));
        }
    }
    for entry in card.application_entries.iter().filter_map(|e| e.resolve().ok()) {
        if entry.annex_iii() {
            triggers.push(RiskTrigger::new(
                RiskRule::R3,
                entry.key(),
                format!(
                    "application area \"{}\" is a high-risk area listed in Annex III",
                    entry.display_label()
                ),
            ));
        }
    }
    let high = triggers.iter().any(|t| t.rule.is_high());
    for flag in &card.transparency_flags {
        let sentence = if high {
            format!("declares `{flag}`; transparency obligations apply (informational, tier is already high)")
        } else {
            format!("declares `{flag}`; transparency obligations apply")
        };
        triggers.push(RiskTrigger::new(RiskRule::R4, flag.as_str(), sentence));
    }

    let tier = if high {
        Tier::High
    } else if !triggers.is_empty() {
        Tier::Transparency
    } else {
        triggers.push(RiskTrigger::new(
            RiskRule::R5,
            "card",
            "no high-risk or transparency rule applies; minimal risk".into(),
        ));
        Tier::Minimal
    };

    RiskAssessment { tier, triggers, manual_review_note: MANUAL_REVIEW_NOTE }
}

/// One line per trigger (`RULE subject [legal ref]: sentence`) followed by
/// the manual review note.
pub fn explain(assessment: &RiskAssessment) -> String {
    let mut out = String::new();
    for t in &assessment.triggers {
        let _ = writeln!(out, "{} {} [{}]: {}", t.rule, t.subject, t.legal_ref, t.sentence);
    }
    let _ = writeln!(out, "note: {}", assessment.manual_review_note);
    out
}
