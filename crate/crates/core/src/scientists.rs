//! Scientists: total deterministic maps from experiences to hypotheses.
//!
//! Every scientist here is a pure function of the experience it is shown.
//! Scientists that look like they carry state (the confidence annotator, the
//! last-novel tracker) recompute it by replaying the experience from empty.

use std::fmt;
use std::sync::Arc;

use num_bigint::BigUint;
use thiserror::Error;

use crate::family::{pair, FamilyError, HypIndex, LanguageFamily};
use crate::language::LanguageRepr;
use crate::text::{content, InspiringSet};
use crate::universe::{Artefact, Datum};

pub const DEFAULT_INITIAL_CONFIDENCE: u64 = 3;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ScientistError {
    #[error(transparent)]
    Family(#[from] FamilyError),
    #[error("enumeration scientist needs a non-empty class")]
    EmptyClass,
    #[error("initial confidence must be at least 1")]
    ZeroConfidence,
    #[error("cannot annotate a scientist whose family is already annotated")]
    NestedAnnotation,
}

pub trait Scientist: Send + Sync {
    /// Stable name used in traces and tables.
    fn name(&self) -> String;

    /// The family the emitted indices are read in.
    fn family(&self) -> &Arc<LanguageFamily>;

    fn conjecture(&self, experience: &[Datum]) -> HypIndex;

    /// `W_{M(σ)}`.
    fn conjectured_language(&self, experience: &[Datum]) -> LanguageRepr {
        self.family().language_of(&self.conjecture(experience))
    }
}

pub type SharedScientist = Arc<dyn Scientist>;

impl fmt::Debug for dyn Scientist {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Scientist({})", self.name())
    }
}

/// Constantly outputs the minimum index of a fixed language.
pub struct DumbVisionary {
    family: Arc<LanguageFamily>,
    target: String,
    index: HypIndex,
}

impl DumbVisionary {
    pub fn index(&self) -> &HypIndex {
        &self.index
    }
}

impl Scientist for DumbVisionary {
    fn name(&self) -> String {
        format!("dumb_visionary({})", self.target)
    }

    fn family(&self) -> &Arc<LanguageFamily> {
        &self.family
    }

    fn conjecture(&self, _: &[Datum]) -> HypIndex {
        self.index.clone()
    }
}

pub fn dumb_visionary(
    family: &Arc<LanguageFamily>,
    language: &LanguageRepr,
) -> Result<SharedScientist, ScientistError> {
    let index = family.min_index_for(language)?;
    Ok(Arc::new(DumbVisionary { family: Arc::clone(family), target: language.name(family.universe()), index }))
}

/// Conjectures exactly the content seen so far.
pub struct Memorizer {
    family: Arc<LanguageFamily>,
}

impl Scientist for Memorizer {
    fn name(&self) -> String {
        "memorizer".into()
    }

    fn family(&self) -> &Arc<LanguageFamily> {
        &self.family
    }

    fn conjecture(&self, experience: &[Datum]) -> HypIndex {
        self.family.index_of_set(&content(experience))
    }
}

pub fn memorizer(family: &Arc<LanguageFamily>) -> SharedScientist {
    Arc::new(Memorizer { family: Arc::clone(family) })
}

/// Identification by enumeration: first class member consistent with the
/// content, falling back to the memorizer's conjecture.
pub struct EnumerationScientist {
    family: Arc<LanguageFamily>,
    class: Vec<(HypIndex, LanguageRepr)>,
}

impl Scientist for EnumerationScientist {
    fn name(&self) -> String {
        let names: Vec<String> = self.class.iter().map(|(p, _)| self.family.describe(p)).collect();
        format!("enumeration[{}]", names.join(";"))
    }

    fn family(&self) -> &Arc<LanguageFamily> {
        &self.family
    }

    fn conjecture(&self, experience: &[Datum]) -> HypIndex {
        let seen = content(experience);
        self.class
            .iter()
            .find(|(_, lang)| seen.iter().all(|a| lang.contains(a)))
            .map(|(p, _)| p.clone())
            .unwrap_or_else(|| self.family.index_of_set(&seen))
    }
}

pub fn enumeration_scientist(
    family: &Arc<LanguageFamily>,
    class: Vec<HypIndex>,
) -> Result<SharedScientist, ScientistError> {
    if class.is_empty() {
        return Err(ScientistError::EmptyClass);
    }
    let class = class
        .into_iter()
        .map(|p| {
            let lang = family.language_of(&p);
            (p, lang)
        })
        .collect();
    Ok(Arc::new(EnumerationScientist { family: Arc::clone(family), class }))
}

/// `M(σ) = |σ|`.
pub struct EverChanging {
    family: Arc<LanguageFamily>,
}

impl Scientist for EverChanging {
    fn name(&self) -> String {
        "ever_changing".into()
    }

    fn family(&self) -> &Arc<LanguageFamily> {
        &self.family
    }

    fn conjecture(&self, experience: &[Datum]) -> HypIndex {
        HypIndex::from(experience.len() as u64)
    }
}

pub fn ever_changing(family: &Arc<LanguageFamily>) -> SharedScientist {
    Arc::new(EverChanging { family: Arc::clone(family) })
}

/// State of the confidence annotator after consuming a prefix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConfidenceState {
    /// Base scientist's conjecture currently held.
    pub base: HypIndex,
    pub confidence: u64,
    /// Whether the base conjecture was replaced on this step.
    pub switched: bool,
}

/// Wraps a base scientist and annotates each conjecture with a confidence
/// counter and the step count. Confidence rises when an artefact is a member
/// of the held language and falls otherwise; at zero the base scientist is
/// consulted again and confidence resets.
pub struct ConfidenceAnnotating {
    family: Arc<LanguageFamily>,
    base: SharedScientist,
    initial: u64,
}

impl ConfidenceAnnotating {
    pub fn base(&self) -> &SharedScientist {
        &self.base
    }

    /// States after each prefix `σ[0..=i]`, preceded by the state on `()`.
    pub fn replay(&self, experience: &[Datum]) -> Vec<ConfidenceState> {
        let base_family = self.base.family();
        let mut held = self.base.conjecture(&[]);
        let mut lang = base_family.language_of(&held);
        let mut confidence = self.initial;
        let mut states = Vec::with_capacity(experience.len() + 1);
        states.push(ConfidenceState { base: held.clone(), confidence, switched: false });
        for (i, d) in experience.iter().enumerate() {
            let mut switched = false;
            if let Datum::Item(a) = d {
                if lang.contains(*a) {
                    confidence += 1;
                } else {
                    confidence -= 1;
                }
                if confidence == 0 {
                    let next = self.base.conjecture(&experience[..=i]);
                    switched = next != held;
                    held = next;
                    lang = base_family.language_of(&held);
                    confidence = self.initial;
                }
            }
            states.push(ConfidenceState { base: held.clone(), confidence, switched });
        }
        states
    }
}

impl Scientist for ConfidenceAnnotating {
    fn name(&self) -> String {
        format!("confidence_annotating({}, {})", self.base.name(), self.initial)
    }

    fn family(&self) -> &Arc<LanguageFamily> {
        &self.family
    }

    fn conjecture(&self, experience: &[Datum]) -> HypIndex {
        let state = self.replay(experience).pop().expect("replay is never empty");
        let note = pair(&BigUint::from(state.confidence), &BigUint::from(experience.len()));
        HypIndex::from(pair(state.base.value(), &note))
    }
}

pub fn confidence_annotating(
    base: SharedScientist,
    initial_confidence: u64,
) -> Result<Arc<ConfidenceAnnotating>, ScientistError> {
    if initial_confidence == 0 {
        return Err(ScientistError::ZeroConfidence);
    }
    if base.family().is_annotated() {
        return Err(ScientistError::NestedAnnotation);
    }
    Ok(Arc::new(ConfidenceAnnotating {
        family: Arc::new(base.family().annotated()),
        base,
        initial: initial_confidence,
    }))
}

/// Conjectures the singleton of the most recent artefact that was novel at
/// its own occurrence; `∅` before any artefact.
pub struct LastNovel {
    family: Arc<LanguageFamily>,
}

pub fn last_novel_artefact(experience: &[Datum]) -> Option<Artefact> {
    let mut seen = InspiringSet::new();
    let mut last = None;
    for a in experience.iter().filter_map(|d| d.artefact()) {
        if seen.insert(a) {
            last = Some(a);
        }
    }
    last
}

impl Scientist for LastNovel {
    fn name(&self) -> String {
        "last_novel".into()
    }

    fn family(&self) -> &Arc<LanguageFamily> {
        &self.family
    }

    fn conjecture(&self, experience: &[Datum]) -> HypIndex {
        let set: InspiringSet = last_novel_artefact(experience).into_iter().collect();
        self.family.index_of_set(&set)
    }
}

pub fn last_novel(family: &Arc<LanguageFamily>) -> SharedScientist {
    Arc::new(LastNovel { family: Arc::clone(family) })
}

/// Runs the base scientist on the canonical experience of the content, so
/// that only the inspiring set matters.
pub struct SetDriven {
    base: SharedScientist,
}

impl Scientist for SetDriven {
    fn name(&self) -> String {
        format!("set_driven({})", self.base.name())
    }

    fn family(&self) -> &Arc<LanguageFamily> {
        self.base.family()
    }

    fn conjecture(&self, experience: &[Datum]) -> HypIndex {
        self.base.conjecture(&content(experience).canonical_experience())
    }
}

pub fn set_driven_wrapper(base: SharedScientist) -> SharedScientist {
    Arc::new(SetDriven { base })
}
