//! Toolkit for AI use case cards: a UML use-case diagram plus the
//! descriptive table of its main use case, annotated with the fields that
//! decide the system's risk tier under the European AI Act.
//!
//! | Module | Contents |
//! |--------|----------|
//! | [`model`] | card types, product/area/SDG vocabularies and lookups |
//! | [`parser`] | `.ucc` text format: parse and canonical serialize |
//! | [`validate`] | semantic rules V1–V10 |
//! | [`risk`] | risk-tier rules R1–R5 with explanations |
//! | [`render`] | diagram layout, SVG and HTML output |
//! | [`catalogue`] | corpus ingest, statistics, queries, JSON export |

pub mod catalogue;
pub mod json;
pub mod model;
pub mod parser;
pub mod render;
pub mod risk;
pub mod validate;

#[cfg(feature = "testing")]
pub mod testing;

pub use model::UseCaseCard;
pub use parser::{parse_card, serialize_card, ParseDiagnostic};
pub use risk::{assess, explain, RiskAssessment, Tier};
pub use validate::{validate, Diagnostics};
