//! Closed vocabularies: product types, application areas, sustainable
//! development goals.
//!
//! Entries are referenced from card files by slug. Slugs are lowercase,
//! ASCII-folded, hyphen-separated renderings of the label, except where a
//! shorter key is listed explicitly (the two "Other ..." product types and
//! every Annex III subarea, whose labels are full sentences).

use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ProductType {
    pub slug: &'static str,
    pub label: &'static str,
    pub annex_ii: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ApplicationSubarea {
    pub slug: &'static str,
    pub label: &'static str,
    pub annex_iii: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ApplicationArea {
    pub slug: &'static str,
    pub label: &'static str,
    pub subareas: &'static [ApplicationSubarea],
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Sdg {
    pub number: u8,
    pub name: &'static str,
}

/// A resolved application area reference.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ApplicationEntry {
    pub area: &'static ApplicationArea,
    pub subarea: Option<&'static ApplicationSubarea>,
}

impl ApplicationEntry {
    pub fn annex_iii(&self) -> bool {
        self.subarea.is_some_and(|s| s.annex_iii)
    }

    /// `area` or `area/subarea`, in slugs.
    pub fn key(&self) -> String {
        match self.subarea {
            Some(sub) => format!("{}/{}", self.area.slug, sub.slug),
            None => self.area.slug.to_string(),
        }
    }

    pub fn display_label(&self) -> String {
        match self.subarea {
            Some(sub) => format!("{}: {}", self.area.label, sub.label),
            None => self.area.label.to_string(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum VocabError {
    #[error("unknown product type `{key}`{}", suggest(.suggestions))]
    UnknownProductType { key: String, suggestions: Vec<&'static str> },
    #[error("unknown application area `{key}`{}", suggest(.suggestions))]
    UnknownArea { key: String, suggestions: Vec<&'static str> },
    #[error("application area `{area}` has subareas; one must be named")]
    MissingSubarea { area: &'static str },
    #[error("unknown subarea `{subarea}` in application area `{area}`")]
    UnknownSubarea { area: &'static str, subarea: String },
    #[error("unknown sustainable development goal `{key}`")]
    UnknownSdg { key: String },
}

fn suggest(labels: &[&'static str]) -> String {
    if labels.is_empty() {
        String::new()
    } else {
        let quoted: Vec<String> = labels.iter().map(|l| format!("\"{l}\"")).collect();
        format!(" (did you mean {}?)", quoted.join(", "))
    }
}

const fn product(slug: &'static str, label: &'static str, annex_ii: bool) -> ProductType {
    ProductType { slug, label, annex_ii }
}

pub static PRODUCT_TYPES: [ProductType; 20] = [
    product("machinery", "Machinery", true),
    product("toy", "Toy", true),
    product(
        "recreational-craft-or-personal-watercraft",
        "Recreational craft or personal watercraft",
        true,
    ),
    product("lift", "Lift", true),
    product(
        "equipment-and-protective-systems-for-use-in-potentially-explosive-atmospheres",
        "Equipment and protective systems for use in potentially explosive atmospheres",
        true,
    ),
    product("radio-equipment", "Radio equipment", true),
    product("pressure-equipment", "Pressure equipment", true),
    product("cableway-installation", "Cableway installation", true),
    product("personal-protective-equipment", "Personal protective equipment", true),
    product("appliances-burning-gaseous-fuels", "Appliances burning gaseous fuels", true),
    product("medical-device", "Medical device", true),
    product(
        "in-vitro-diagnostic-medical-device",
        "In vitro diagnostic medical device",
        true,
    ),
    product("civil-aviation", "Civil aviation", true),
    product(
        "2-or-3-wheel-vehicle-or-quadricycle",
        "2- or 3-wheel vehicle or quadricycle",
        true,
    ),
    product("agricultural-and-forestry-vehicle", "Agricultural and forestry vehicle", true),
    product("marine-equipment", "Marine equipment", true),
    product(
        "interoperability-of-the-rail-system",
        "Interoperability of the rail system",
        true,
    ),
    product("motor-vehicles-and-their-trailers", "Motor vehicles and their trailers", true),
    product("other-hardware", "Other hardware product/system", false),
    product("other-software", "Other software product/system", false),
];

const fn sub(slug: &'static str, label: &'static str) -> ApplicationSubarea {
    ApplicationSubarea { slug, label, annex_iii: true }
}

const fn area(
    slug: &'static str,
    label: &'static str,
    subareas: &'static [ApplicationSubarea],
) -> ApplicationArea {
    ApplicationArea { slug, label, subareas }
}

pub static APPLICATION_AREAS: [ApplicationArea; 20] = [
    area(
        "biometrics",
        "Biometrics",
        &[sub("remote-biometric-identification", "Remote biometric identification systems")],
    ),
    area(
        "critical-infrastructure",
        "Critical infrastructure",
        &[sub(
            "safety-components",
            "AI systems used as safety components in the management and operation of critical \
             digital infrastructure, road traffic and the supply of water, gas, heating and electricity",
        )],
    ),
    area(
        "education-and-vocational-training",
        "Education and vocational training",
        &[
            sub(
                "access-and-admission",
                "AI systems used to determine access, admission or to assign natural persons to \
                 educational and vocational training institutions or programmes",
            ),
            sub(
                "evaluate-learning-outcomes",
                "AI systems intended to be used to evaluate learning outcomes",
            ),
        ],
    ),
    area(
        "employment-workers-management-and-access-to-self-employment",
        "Employment, workers management and access to self-employment",
        &[
            sub(
                "recruitment-and-selection",
                "AI systems used for recruitment or selection of natural persons, notably to place \
                 targeted job advertisements, to analyse and filter job applications, and to \
                 evaluate candidates",
            ),
            sub(
                "work-relationship-decisions",
                "AI systems to make decisions on promotion and termination of work-related \
                 relationships, to allocate tasks or monitor and evaluate performance based on \
                 person's behavior, personal traits or characteristics",
            ),
        ],
    ),
    area(
        "access-to-essential-private-services-public-services-and-benefits",
        "Access to essential private services, public services and benefits",
        &[
            sub(
                "public-assistance-eligibility",
                "AI systems used by public authorities to evaluate the eligibility of natural \
                 persons for essential public assistance benefits and services, and to grant, \
                 reduce, revoke or reclaim such benefits and services",
            ),
            sub(
                "creditworthiness",
                "AI systems used to evaluate the creditworthiness of natural persons or establish \
                 their credit score",
            ),
            sub(
                "emergency-dispatch",
                "AI systems used to dispatch, or to establish priority in the dispatching of \
                 emergency first response services, including by firefighters and medical aid",
            ),
            sub(
                "life-and-health-insurance",
                "AI systems for risk assessment and pricing in the case of life and health insurance",
            ),
        ],
    ),
    area(
        "law-enforcement",
        "Law enforcement",
        &[
            sub(
                "offending-risk-assessment",
                "AI systems used by law enforcement to assess the risk of a natural person for \
                 offending or reoffending or the risk for a natural person to become a potential \
                 victim of criminal offences",
            ),
            sub(
                "polygraphs-and-emotion-detection",
                "AI systems used by law enforcement as polygraphs or to detect the emotional state \
                 of a natural person",
            ),
            sub(
                "evidence-reliability",
                "AI systems used by law enforcement to evaluate the reliability of evidence in the \
                 course of investigation or prosecution of criminal offences",
            ),
            sub(
                "offence-prediction",
                "AI systems used by law enforcement to predict the (re)occurrence of a criminal \
                 offence based on profiling of natural persons or to assess personality traits and \
                 characteristics or past criminal behaviour",
            ),
            sub(
                "profiling",
                "AI systems used by law enforcement to profile natural persons in the course of \
                 detection, investigation or prosecution of criminal offences",
            ),
        ],
    ),
    area(
        "migration-asylum-and-border-control-management",
        "Migration, asylum and border control management",
        &[
            sub(
                "polygraphs-and-emotion-detection",
                "AI systems used by public authorities as polygraphs or to detect the emotional \
                 state of a natural person",
            ),
            sub(
                "entry-risk-assessment",
                "AI systems used by public authorities to assess a risk (security risk, risk of \
                 irregular immigration, health risk) posed by a person who enters or has entered \
                 into the territory of a Member State",
            ),
            sub(
                "asylum-visa-and-residence-applications",
                "AI systems to assist public authorities to examine applications for asylum, visa \
                 and residence permits and associated complaints",
            ),
        ],
    ),
    area(
        "administration-of-justice-and-democratic-processes",
        "Administration of justice and democratic processes",
        &[sub(
            "judicial-interpretation",
            "AI systems used by a judicial authority to interpret facts or the law and to apply \
             the law to a concrete set of facts",
        )],
    ),
    area("entertainment-and-leisure", "Entertainment and leisure", &[]),
    area("marketing-and-retail", "Marketing and retail", &[]),
    area("culture-art-and-heritage", "Culture, art and heritage", &[]),
    area(
        "clinical-use-in-medicine-and-healthcare",
        "Clinical use in medicine and healthcare",
        &[],
    ),
    area("finances-and-banking", "Finances and banking", &[]),
    area("social-assistance", "Social assistance", &[]),
    area("video-surveillance-for-security", "Video-surveillance for security", &[]),
    area("transportation-and-mobility", "Transportation and mobility", &[]),
    area(
        "tourism-hospitality-and-restaurants",
        "Tourism, hospitality and restaurants",
        &[],
    ),
    area("industry-and-logistics", "Industry and logistics", &[]),
    area("politics", "Politics", &[]),
    area("other", "Other", &[]),
];

pub static SDGS: [Sdg; 17] = [
    Sdg { number: 1, name: "No poverty" },
    Sdg { number: 2, name: "Zero hunger" },
    Sdg { number: 3, name: "Good health and well-being" },
    Sdg { number: 4, name: "Quality education" },
    Sdg { number: 5, name: "Gender equality" },
    Sdg { number: 6, name: "Clean water and sanitation" },
    Sdg { number: 7, name: "Affordable and clean energy" },
    Sdg { number: 8, name: "Decent work and economic growth" },
    Sdg { number: 9, name: "Industry, innovation and infrastructure" },
    Sdg { number: 10, name: "Reduced inequalities" },
    Sdg { number: 11, name: "Sustainable cities and communities" },
    Sdg { number: 12, name: "Responsible consumption and production" },
    Sdg { number: 13, name: "Climate action" },
    Sdg { number: 14, name: "Life below water" },
    Sdg { number: 15, name: "Life on land" },
    Sdg { number: 16, name: "Peace, justice and strong institutions" },
    Sdg { number: 17, name: "Partnerships for the goals" },
];

/// Lowercase, ASCII-fold, and join alphanumeric runs with `-`.
pub fn slugify(label: &str) -> String {
    let mut out = String::with_capacity(label.len());
    let mut pending_dash = false;
    for c in label.chars().flat_map(fold_char) {
        if c.is_ascii_alphanumeric() {
            if pending_dash && !out.is_empty() {
                out.push('-');
            }
            pending_dash = false;
            out.push(c.to_ascii_lowercase());
        } else {
            pending_dash = true;
        }
    }
    out
}

fn fold_char(c: char) -> impl Iterator<Item = char> {
    let folded: &str = match c {
        'à' | 'á' | 'â' | 'ã' | 'ä' | 'å' | 'À' | 'Á' | 'Â' | 'Ã' | 'Ä' | 'Å' => "a",
        'è' | 'é' | 'ê' | 'ë' | 'È' | 'É' | 'Ê' | 'Ë' => "e",
        'ì' | 'í' | 'î' | 'ï' | 'Ì' | 'Í' | 'Î' | 'Ï' => "i",
        'ò' | 'ó' | 'ô' | 'õ' | 'ö' | 'Ò' | 'Ó' | 'Ô' | 'Õ' | 'Ö' => "o",
        'ù' | 'ú' | 'û' | 'ü' | 'Ù' | 'Ú' | 'Û' | 'Ü' => "u",
        'ñ' | 'Ñ' => "n",
        'ç' | 'Ç' => "c",
        'ß' => "ss",
        _ => "",
    };
    let keep = folded.is_empty().then_some(c);
    folded.chars().chain(keep)
}

fn normalize_label(s: &str) -> String {
    s.trim().trim_end_matches('.').trim().to_lowercase()
}

fn nearest(key: &str, candidates: impl Iterator<Item = (&'static str, &'static str)>) -> Vec<&'static str> {
    let needle = key.trim().to_lowercase();
    let mut scored: Vec<(usize, usize, &'static str)> = candidates
        .enumerate()
        .map(|(i, (slug, label))| {
            let d = strsim::levenshtein(&needle, &label.to_lowercase())
                .min(strsim::levenshtein(&needle, slug));
            (d, i, label)
        })
        .collect();
    scored.sort();
    scored.into_iter().take(3).map(|(_, _, label)| label).collect()
}

pub fn lookup_product_type(key: &str) -> Result<&'static ProductType, VocabError> {
    let wanted = normalize_label(key);
    PRODUCT_TYPES
        .iter()
        .find(|p| p.slug == key || (!wanted.is_empty() && p.label.to_lowercase() == wanted))
        .ok_or_else(|| VocabError::UnknownProductType {
            key: key.to_string(),
            suggestions: nearest(key, PRODUCT_TYPES.iter().map(|p| (p.slug, p.label))),
        })
}

pub fn lookup_area(key: &str) -> Result<&'static ApplicationArea, VocabError> {
    let wanted = normalize_label(key);
    APPLICATION_AREAS
        .iter()
        .find(|a| a.slug == key || (!wanted.is_empty() && a.label.to_lowercase() == wanted))
        .ok_or_else(|| VocabError::UnknownArea {
            key: key.to_string(),
            suggestions: nearest(key, APPLICATION_AREAS.iter().map(|a| (a.slug, a.label))),
        })
}

/// Resolve an `(area, subarea)` pair. Areas carrying Annex III subareas
/// require one; the remaining areas take none.
pub fn lookup_application_subarea(
    area_key: &str,
    subarea: Option<&str>,
) -> Result<ApplicationEntry, VocabError> {
    let area = lookup_area(area_key)?;
    match subarea {
        None if area.subareas.is_empty() => Ok(ApplicationEntry { area, subarea: None }),
        None => Err(VocabError::MissingSubarea { area: area.slug }),
        Some(key) => {
            let wanted = normalize_label(key);
            area.subareas
                .iter()
                .find(|s| s.slug == key || (!wanted.is_empty() && s.label.to_lowercase() == wanted))
                .map(|s| ApplicationEntry { area, subarea: Some(s) })
                .ok_or_else(|| VocabError::UnknownSubarea {
                    area: area.slug,
                    subarea: key.to_string(),
                })
        }
    }
}

/// Resolve `area` or `area/subarea`.
pub fn lookup_application_path(path: &str) -> Result<ApplicationEntry, VocabError> {
    match path.split_once('/') {
        Some((area, sub)) => lookup_application_subarea(area, Some(sub)),
        None => lookup_application_subarea(path, None),
    }
}

pub fn lookup_sdg_number(number: u32) -> Result<&'static Sdg, VocabError> {
    SDGS.iter()
        .find(|s| u32::from(s.number) == number)
        .ok_or_else(|| VocabError::UnknownSdg { key: number.to_string() })
}

/// Accepts a goal number (`"10"`) or its name, case-insensitively.
pub fn lookup_sdg(key: &str) -> Result<&'static Sdg, VocabError> {
    if let Ok(n) = key.trim().parse::<u32>() {
        return lookup_sdg_number(n);
    }
    let wanted = normalize_label(key);
    SDGS.iter()
        .find(|s| s.name.to_lowercase() == wanted)
        .ok_or_else(|| VocabError::UnknownSdg { key: key.to_string() })
}
