//! Domain types for use case cards.
//!
//! A card pairs a use-case diagram (actors, use cases, relations) with the
//! descriptive table of the main use case. Vocabulary references (product
//! type, application areas, SDGs) are stored as written in the source file
//! and resolved by the validator, so a card with an unknown slug still
//! parses.

pub mod vocab;

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use chrono::NaiveDate;
use serde::{Deserialize, Serialize};

pub use vocab::{
    lookup_application_path, lookup_application_subarea, lookup_area, lookup_product_type,
    lookup_sdg, lookup_sdg_number, ApplicationArea, ApplicationEntry, ApplicationSubarea,
    ProductType, Sdg, VocabError, APPLICATION_AREAS, PRODUCT_TYPES, SDGS,
};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct UseCaseCard {
    pub id: String,
    pub title: String,
    pub version: String,
    pub date: NaiveDate,
    pub provider: String,
    pub intended_purpose: IntendedPurpose,
    /// Product type slug or label.
    pub product_type: String,
    pub safety_component: bool,
    pub application_entries: Vec<ApplicationRef>,
    pub transparency_flags: BTreeSet<TransparencyFlag>,
    pub actors: Vec<Actor>,
    pub use_cases: Vec<UseCaseNode>,
    pub relations: Vec<Relation>,
    pub primary_actor: String,
    pub stakeholders: Vec<Stakeholder>,
    pub preconditions: Vec<String>,
    pub main_course: Vec<Step>,
    pub extensions: Vec<Extension>,
    pub open_issues: Vec<String>,
}

impl UseCaseCard {
    pub fn actor(&self, id: &str) -> Option<&Actor> {
        self.actors.iter().find(|a| a.id == id)
    }

    pub fn use_case(&self, id: &str) -> Option<&UseCaseNode> {
        self.use_cases.iter().find(|u| u.id == id)
    }

    /// The first use case flagged as main, if any.
    pub fn main_use_case(&self) -> Option<&UseCaseNode> {
        self.use_cases.iter().find(|u| u.is_main)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IntendedPurpose {
    pub context_of_use: String,
    pub scope: String,
    /// Goal numbers as declared, 1..=17 when valid.
    pub sdgs: Vec<u32>,
}

/// An application area reference as written: `area` or `area/subarea`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ApplicationRef {
    pub area: String,
    pub subarea: Option<String>,
}

impl ApplicationRef {
    pub fn resolve(&self) -> Result<ApplicationEntry, VocabError> {
        lookup_application_subarea(&self.area, self.subarea.as_deref())
    }
}

impl fmt::Display for ApplicationRef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.subarea {
            Some(sub) => write!(f, "{}/{}", self.area, sub),
            None => f.write_str(&self.area),
        }
    }
}

impl FromStr for ApplicationRef {
    type Err = std::convert::Infallible;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Ok(match s.split_once('/') {
            Some((area, sub)) => ApplicationRef {
                area: area.trim().to_string(),
                subarea: Some(sub.trim().to_string()),
            },
            None => ApplicationRef { area: s.trim().to_string(), subarea: None },
        })
    }
}

macro_rules! keyword_enum {
    ($(#[$meta:meta])* $name:ident { $($variant:ident => $text:literal),+ $(,)? }) => {
        $(#[$meta])*
        #[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
        #[serde(rename_all = "snake_case")]
        pub enum $name {
            $($variant),+
        }

        impl $name {
            pub const ALL: &'static [$name] = &[$($name::$variant),+];

            pub fn as_str(self) -> &'static str {
                match self {
                    $($name::$variant => $text),+
                }
            }
        }

        impl fmt::Display for $name {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str(self.as_str())
            }
        }

        impl FromStr for $name {
            type Err = String;

            fn from_str(s: &str) -> Result<Self, Self::Err> {
                match s {
                    $($text => Ok($name::$variant),)+
                    _ => Err(format!(
                        "expected one of {}",
                        [$($text),+].join(", ")
                    )),
                }
            }
        }
    };
}

keyword_enum! {
    /// Declared system behaviours that attract transparency obligations.
    TransparencyFlag {
        InteractsWithNaturalPersons => "interacts_with_natural_persons",
        EmotionRecognition => "emotion_recognition",
        BiometricCategorisation => "biometric_categorisation",
        GeneratesOrManipulatesContent => "generates_or_manipulates_content",
    }
}

keyword_enum! {
    ActorKind {
        Individual => "individual",
        Group => "group",
        ExternalSystem => "external_system",
        HardwareDevice => "hardware_device",
    }
}

keyword_enum! {
    RelationKind {
        Association => "association",
        Include => "include",
        Extend => "extend",
        ActorGeneralization => "actor_generalization",
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Actor {
    pub id: String,
    pub name: String,
    pub kind: ActorKind,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct UseCaseNode {
    pub id: String,
    pub name: String,
    pub is_ai: bool,
    pub is_main: bool,
}

/// A diagram edge. For `extend`, the source is the extending use case; for
/// `actor_generalization`, the source is the specialized actor.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Relation {
    pub kind: RelationKind,
    pub source: String,
    pub target: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Stakeholder {
    pub party: String,
    pub interest: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Step {
    /// 1-based position in the main course.
    pub index: u32,
    pub text: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Extension {
    pub step_ref: u32,
    pub condition: String,
    /// The failure protection applied when the condition holds.
    pub handling: String,
}
