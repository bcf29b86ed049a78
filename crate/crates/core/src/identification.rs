//! Finite-horizon convergence and identification.
//!
//! Limit notions cannot be decided in finite time, so every report here is
//! relative to a horizon `H`: the scientist is evaluated on `T[0], ..., T[H]`.
//! A run counts as *stabilized* when the conjecture is constant over the final
//! half of that window, i.e. the last change happens at a step `≤ H / 2`.
//! Stabilization at a horizon is evidence of convergence, not proof of it.

use std::collections::HashMap;
use std::fmt;
use std::io;

use rayon::prelude::*;
use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::family::{HypIndex, Semantic};
use crate::fate::{make_fate, Fate, FateError, TextStrategy};
use crate::language::LanguageRepr;
use crate::schemas::SemanticVerdict;
use crate::scientists::Scientist;
use crate::text::content;
use crate::universe::Datum;

#[derive(Debug, Error)]
pub enum IdentificationError {
    #[error("fate {0} does not declare its platonic language")]
    NoPlatonicLanguage(String),
    #[error(transparent)]
    Fate(#[from] FateError),
    #[error(transparent)]
    Csv(#[from] csv::Error),
    #[error(transparent)]
    Io(#[from] io::Error),
}

/// First step of the window over which a run must be constant to count as
/// stabilized.
pub fn stability_tail_start(horizon: u64) -> u64 {
    horizon / 2
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConvergenceReport {
    pub horizon: u64,
    /// `M(T[n])` for `n = 0..=horizon`.
    pub trace: Vec<HypIndex>,
    /// Largest step whose conjecture differs from the previous one.
    pub last_change_step: Option<u64>,
    pub change_count: u64,
    pub stabilized: bool,
    pub stabilized_index: Option<HypIndex>,
}

impl ConvergenceReport {
    fn from_trace(horizon: u64, trace: Vec<HypIndex>) -> Self {
        let changes: Vec<u64> =
            trace.windows(2).enumerate().filter(|(_, w)| w[0] != w[1]).map(|(i, _)| i as u64 + 1).collect();
        let last_change_step = changes.last().copied();
        let stabilized = last_change_step.unwrap_or(0) <= stability_tail_start(horizon);
        let stabilized_index = stabilized.then(|| trace.last().expect("non-empty trace").clone());
        ConvergenceReport {
            horizon,
            trace,
            last_change_step,
            change_count: changes.len() as u64,
            stabilized,
            stabilized_index,
        }
    }

    /// Step from which the conjecture has been constant.
    pub fn stable_since(&self) -> u64 {
        self.last_change_step.unwrap_or(0)
    }
}

/// Conjectures on every prefix `T[0..=len]`.
fn conjectures(m: &dyn Scientist, t: &Fate, len: u64) -> (Vec<Datum>, Vec<HypIndex>) {
    let data = t.prefix(len).into_items();
    let conj = (0..=data.len()).map(|n| m.conjecture(&data[..n])).collect();
    (data, conj)
}

pub fn converges_at(m: &dyn Scientist, t: &Fate, horizon: u64) -> ConvergenceReport {
    let (_, trace) = conjectures(m, t, horizon);
    ConvergenceReport::from_trace(horizon, trace)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum NotIdentifiedReason {
    NoStabilization,
    WrongLanguage,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum IdentificationVerdict {
    Identified,
    NotIdentified(NotIdentifiedReason),
    /// The comparison with the platonic language came back Unknown.
    Indeterminate,
}

impl IdentificationVerdict {
    pub fn is_identified(self) -> bool {
        self == IdentificationVerdict::Identified
    }
}

impl fmt::Display for IdentificationVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            IdentificationVerdict::Identified => "identified",
            IdentificationVerdict::NotIdentified(NotIdentifiedReason::NoStabilization) => {
                "not_identified(no-stabilization)"
            }
            IdentificationVerdict::NotIdentified(NotIdentifiedReason::WrongLanguage) => {
                "not_identified(wrong-language)"
            }
            IdentificationVerdict::Indeterminate => "indeterminate",
        })
    }
}

impl Serialize for IdentificationVerdict {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

fn platonic(t: &Fate) -> Result<&LanguageRepr, IdentificationError> {
    t.platonic().ok_or_else(|| IdentificationError::NoPlatonicLanguage(t.label().to_string()))
}

fn against_platonic(m: &dyn Scientist, p: &HypIndex, target: &LanguageRepr) -> Semantic {
    let fam = m.family();
    fam.compare(&fam.language_of(p), target)
}

/// Text identification at a horizon: syntactic stabilization on an index
/// whose language equals the fate's content.
pub fn identifies_text(
    m: &dyn Scientist,
    t: &Fate,
    horizon: u64,
) -> Result<(IdentificationVerdict, ConvergenceReport), IdentificationError> {
    let target = platonic(t)?;
    let report = converges_at(m, t, horizon);
    let verdict = match &report.stabilized_index {
        None => IdentificationVerdict::NotIdentified(NotIdentifiedReason::NoStabilization),
        Some(p) => match against_platonic(m, p, target) {
            Semantic::Equal => IdentificationVerdict::Identified,
            Semantic::NotEqual => IdentificationVerdict::NotIdentified(NotIdentifiedReason::WrongLanguage),
            Semantic::Unknown => IdentificationVerdict::Indeterminate,
        },
    };
    Ok((verdict, report))
}

/// Behaviourally correct identification at a horizon: from some step in the
/// first half of the window onward, every conjecture denotes the platonic
/// language, whatever the indices themselves do.
pub fn bc_converges_at(
    m: &dyn Scientist,
    t: &Fate,
    horizon: u64,
) -> Result<IdentificationVerdict, IdentificationError> {
    let target = platonic(t)?;
    let report = converges_at(m, t, horizon);
    let mut memo: HashMap<&HypIndex, Semantic> = HashMap::new();
    let semantic: Vec<Semantic> =
        report.trace.iter().map(|p| *memo.entry(p).or_insert_with(|| against_platonic(m, p, target))).collect();
    let tail = &semantic[stability_tail_start(horizon) as usize..];
    Ok(if tail.iter().all(|s| *s == Semantic::Equal) {
        IdentificationVerdict::Identified
    } else if tail.contains(&Semantic::NotEqual) {
        let reason =
            if report.stabilized { NotIdentifiedReason::WrongLanguage } else { NotIdentifiedReason::NoStabilization };
        IdentificationVerdict::NotIdentified(reason)
    } else {
        IdentificationVerdict::Indeterminate
    })
}

/// One cell of a class-identification experiment.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ExperimentRow {
    pub language: String,
    pub strategy: String,
    pub seed: u64,
    pub horizon: u64,
    pub verdict: IdentificationVerdict,
    pub last_change_step: Option<u64>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ClassSummary {
    /// Every cell identified.
    Identified {
        cells: usize,
    },
    /// The class is empty.
    Vacuous,
    NotIdentified {
        failures: usize,
        cells: usize,
    },
}

impl fmt::Display for ClassSummary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ClassSummary::Identified { cells } => {
                write!(f, "class identified at horizon: {cells}/{cells} cells identified")
            }
            ClassSummary::Vacuous => f.write_str("vacuously identifiable (empty class)"),
            ClassSummary::NotIdentified { failures, cells } => {
                write!(f, "class not identified at horizon: {failures}/{cells} cells failed")
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentTable {
    pub scientist: String,
    pub rows: Vec<ExperimentRow>,
}

impl ExperimentTable {
    pub fn summary(&self) -> ClassSummary {
        if self.rows.is_empty() {
            return ClassSummary::Vacuous;
        }
        let failures = self.rows.iter().filter(|r| !r.verdict.is_identified()).count();
        if failures == 0 {
            ClassSummary::Identified { cells: self.rows.len() }
        } else {
            ClassSummary::NotIdentified { failures, cells: self.rows.len() }
        }
    }

    pub fn identified_count(&self) -> usize {
        self.rows.iter().filter(|r| r.verdict.is_identified()).count()
    }

    pub fn write_csv<W: io::Write>(&self, out: W) -> Result<(), IdentificationError> {
        let mut w = csv::Writer::from_writer(out);
        if self.rows.is_empty() {
            w.write_record(["language", "strategy", "seed", "horizon", "verdict", "last_change_step"])?;
        }
        for row in &self.rows {
            w.serialize(row)?;
        }
        w.flush()?;
        Ok(())
    }
}

/// A finite class of named languages run against one scientist.
#[derive(Debug, Clone)]
pub struct ClassExperiment {
    pub languages: Vec<(String, LanguageRepr)>,
    pub strategies: Vec<TextStrategy>,
    pub seeds: Vec<u64>,
    pub horizon: u64,
}

/// Runs every (language, strategy, seed) cell. Cells are independent and run
/// in parallel; rows come back in coordinate order.
pub fn identify_class(m: &dyn Scientist, experiment: &ClassExperiment) -> Result<ExperimentTable, IdentificationError> {
    let cells: Vec<(usize, TextStrategy, u64)> = (0..experiment.languages.len())
        .flat_map(|l| {
            experiment.strategies.iter().flat_map(move |&s| experiment.seeds.iter().map(move |&seed| (l, s, seed)))
        })
        .collect();
    let rows = cells
        .into_par_iter()
        .map(|(l, strategy, seed)| {
            let (name, lang) = &experiment.languages[l];
            let fate = make_fate(lang, strategy, seed)?;
            let (verdict, report) = identifies_text(m, &fate, experiment.horizon)?;
            Ok(ExperimentRow {
                language: name.clone(),
                strategy: strategy.label(),
                seed,
                horizon: experiment.horizon,
                verdict,
                last_change_step: report.last_change_step,
            })
        })
        .collect::<Result<Vec<_>, IdentificationError>>()?;
    Ok(ExperimentTable { scientist: m.name(), rows })
}

/// Flags for one step of a fate, computed in the situation `(M, T[n])` with
/// candidate `T(n)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TraceStep {
    pub step: u64,
    pub datum: Datum,
    /// `M(T[n])`.
    pub hypothesis: HypIndex,
    /// Whether consuming `T(n)` changes the conjecture.
    pub hyp_changed: bool,
    /// Schema flags; `None` on pause steps.
    pub novel: Option<bool>,
    pub transformative: Option<bool>,
    pub semantically_transformative: Option<SemanticVerdict>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TransformationTrace {
    pub scientist: String,
    pub steps: Vec<TraceStep>,
}

/// Steps `0..=horizon` of a fate with their schema flags.
pub fn transformation_trace(m: &dyn Scientist, t: &Fate, horizon: u64) -> TransformationTrace {
    let (data, conj) = conjectures(m, t, horizon + 1);
    let fam = m.family();
    let steps = (0..=horizon as usize)
        .map(|n| {
            let datum = data[n];
            let changed = conj[n] != conj[n + 1];
            let (novel, transformative, semantic) = match datum {
                Datum::Pause => (None, None, None),
                Datum::Item(a) => {
                    let semantic = match fam.semantic_equals(&conj[n], &conj[n + 1]) {
                        Semantic::Equal => SemanticVerdict::Fails,
                        Semantic::NotEqual => SemanticVerdict::Holds,
                        Semantic::Unknown => SemanticVerdict::Indeterminate,
                    };
                    (Some(!content(&data[..n]).contains(a)), Some(changed), Some(semantic))
                }
            };
            TraceStep {
                step: n as u64,
                datum,
                hypothesis: conj[n].clone(),
                hyp_changed: changed,
                novel,
                transformative,
                semantically_transformative: semantic,
            }
        })
        .collect();
    TransformationTrace { scientist: m.name(), steps }
}
