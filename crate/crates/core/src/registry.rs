//! Declarative descriptors for families, scientists and text strategies,
//! resolved by name.

use std::sync::Arc;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::family::{EqualityOracle, LanguageFamily};
use crate::fate::{TextStrategy, DEFAULT_PAUSE_DENSITY, DEFAULT_REPEAT_RATE, DEFAULT_WINDOW};
use crate::language::{LanguageError, LanguageRepr, BUILTIN_SPECIALS};
use crate::scientists::{self, ScientistError, SharedScientist, DEFAULT_INITIAL_CONFIDENCE};
use crate::universe::{Universe, UniverseError};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum RegistryError {
    #[error("unknown scientist {0:?}")]
    UnknownScientist(String),
    #[error("scientist {scientist:?} needs parameter {parameter:?}")]
    MissingParameter { scientist: String, parameter: &'static str },
    #[error("unknown universe {0:?}; expected \"naturals\" or \"words:<alphabet>\"")]
    UnknownUniverse(String),
    #[error("unknown text strategy {0:?}")]
    UnknownStrategy(String),
    #[error(transparent)]
    Language(#[from] LanguageError),
    #[error(transparent)]
    Universe(#[from] UniverseError),
    #[error(transparent)]
    Scientist(#[from] ScientistError),
}

/// Registered scientist names with a one-line description.
pub const SCIENTISTS: &[(&str, &str)] = &[
    ("dumb_visionary", "constant minimal index of `language`"),
    ("memorizer", "conjectures exactly the content seen so far"),
    ("enumeration", "first member of `class` consistent with the content"),
    ("ever_changing", "conjectures the length of the experience"),
    ("confidence_annotating", "`base` annotated with a confidence counter"),
    ("last_novel", "singleton of the last artefact that was novel when it appeared"),
    ("set_driven", "`base` run on the canonical experience of the content"),
];

/// Registered text strategy names.
pub const STRATEGIES: &[(&str, &str)] = &[
    ("canonical", "canonical enumeration, finite languages cycled"),
    ("padded(p)", "random pauses with density p in [0,1), default 0.25"),
    ("shuffled-window(w)", "canonical order permuted in blocks of w >= 1, default 4"),
    ("repetition-heavy(r)", "repeats of shown artefacts at rate r in [0,1), default 0.25"),
];

pub const UNIVERSES: &[(&str, &str)] =
    &[("naturals", "decimal numerals, rank n is n"), ("words:<alphabet>", "words over the alphabet in shortlex order")];

pub fn parse_universe(spec: &str) -> Result<Universe, RegistryError> {
    match spec.trim() {
        "naturals" => Ok(Universe::Naturals),
        s => match s.strip_prefix("words:") {
            Some(alpha) => Ok(Universe::words(alpha)?),
            None => Err(RegistryError::UnknownUniverse(spec.to_string())),
        },
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct FamilySpec {
    pub universe: String,
    /// Built-in names or set literals, in roster order.
    pub specials: Vec<String>,
    /// Pairs of special ids declared distinct.
    pub disjoint: Vec<[String; 2]>,
    /// Pairs of special ids declared equal.
    pub equal: Vec<[String; 2]>,
}

impl Default for FamilySpec {
    fn default() -> Self {
        FamilySpec {
            universe: "naturals".into(),
            specials: vec!["evens".into(), "odds".into()],
            disjoint: vec![["evens".into(), "odds".into()]],
            equal: vec![],
        }
    }
}

impl FamilySpec {
    pub fn build(&self) -> Result<LanguageFamily, RegistryError> {
        let universe = parse_universe(&self.universe)?;
        let specials = self
            .specials
            .iter()
            .map(|s| {
                let lang = LanguageRepr::parse(s, &universe)?;
                Ok(match lang.id() {
                    Some(_) => lang,
                    None => {
                        let id = lang.name(&universe);
                        lang.with_id(id)
                    }
                })
            })
            .collect::<Result<Vec<_>, RegistryError>>()?;
        let mut oracle = EqualityOracle::default();
        for [a, b] in &self.disjoint {
            oracle.declare_distinct(a, b);
        }
        for [a, b] in &self.equal {
            oracle.declare_equal(a, b);
        }
        Ok(LanguageFamily::new(universe, specials).with_oracle(oracle))
    }
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ScientistSpec {
    pub name: String,
    /// Target of a dumb visionary.
    pub language: Option<String>,
    /// Ordered class of an enumeration scientist.
    pub class: Option<Vec<String>>,
    pub initial_confidence: Option<u64>,
    /// Wrapped scientist for the combinators.
    pub base: Option<Box<ScientistSpec>>,
}

impl ScientistSpec {
    pub fn named(name: &str) -> Self {
        ScientistSpec { name: name.into(), ..Default::default() }
    }

    pub fn build(&self, family: &Arc<LanguageFamily>) -> Result<SharedScientist, RegistryError> {
        let missing = |parameter| RegistryError::MissingParameter { scientist: self.name.clone(), parameter };
        let universe = family.universe();
        Ok(match self.name.as_str() {
            "dumb_visionary" => {
                let lang = self.language.as_deref().ok_or_else(|| missing("language"))?;
                scientists::dumb_visionary(family, &LanguageRepr::parse(lang, universe)?)?
            }
            "memorizer" => scientists::memorizer(family),
            "enumeration" => {
                let class = self.class.as_ref().ok_or_else(|| missing("class"))?;
                let indices = class
                    .iter()
                    .map(|s| {
                        Ok(family.min_index_for(&LanguageRepr::parse(s, universe)?).map_err(ScientistError::from)?)
                    })
                    .collect::<Result<Vec<_>, RegistryError>>()?;
                scientists::enumeration_scientist(family, indices)?
            }
            "ever_changing" => scientists::ever_changing(family),
            "confidence_annotating" => {
                let base = self.base.as_deref().ok_or_else(|| missing("base"))?.build(family)?;
                let initial = self.initial_confidence.unwrap_or(DEFAULT_INITIAL_CONFIDENCE);
                scientists::confidence_annotating(base, initial)?
            }
            "last_novel" => scientists::last_novel(family),
            "set_driven" => {
                let base = self.base.as_deref().ok_or_else(|| missing("base"))?.build(family)?;
                scientists::set_driven_wrapper(base)
            }
            other => return Err(RegistryError::UnknownScientist(other.to_string())),
        })
    }
}

/// Parses a strategy label: `canonical`, `padded`, `padded(0.1)`,
/// `shuffled`, `shuffled-window(8)`, `repetition`, `repetition-heavy(0.5)`.
/// Parameters are range-checked when the fate is built.
pub fn parse_strategy(label: &str) -> Result<TextStrategy, RegistryError> {
    let bad = || RegistryError::UnknownStrategy(label.to_string());
    let label = label.trim();
    let (name, param) = match label.split_once('(') {
        Some((n, rest)) => (n.trim(), Some(rest.strip_suffix(')').ok_or_else(bad)?.trim())),
        None => (label, None),
    };
    let rate =
        |default: f64| -> Result<f64, RegistryError> { param.map_or(Ok(default), |p| p.parse().map_err(|_| bad())) };
    Ok(match name {
        "canonical" if param.is_none() => TextStrategy::Canonical,
        "padded" => TextStrategy::Padded { pause_density: rate(DEFAULT_PAUSE_DENSITY)? },
        "shuffled" | "shuffled-window" => {
            TextStrategy::ShuffledWindow { window: param.map_or(Ok(DEFAULT_WINDOW), |p| p.parse().map_err(|_| bad()))? }
        }
        "repetition" | "repetition-heavy" => TextStrategy::RepetitionHeavy { repeat_rate: rate(DEFAULT_REPEAT_RATE)? },
        _ => return Err(bad()),
    })
}

pub fn builtin_specials() -> &'static [&'static str] {
    BUILTIN_SPECIALS
}
