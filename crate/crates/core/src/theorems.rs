//! Executable witnesses and property checks for the relationship between
//! novelty and transformativeness.
//!
//! * novelty does not imply transformativeness (constant scientists);
//! * transformativeness does not imply novelty (ever-changing scientists);
//! * for set-driven scientists, transformativeness implies novelty;
//! * the converse fails: `last_novel` satisfies the implication without
//!   being set-driven.
//!
//! These are checks on instances and samples, not proofs.

use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use thiserror::Error;

use crate::family::LanguageFamily;
use crate::language::LanguageRepr;
use crate::properties::{is_set_driven_sampled, SampleSpace, SetDrivenVerdict};
use crate::schemas::{novelty, transformativeness, Situation};
use crate::scientists::{self, SharedScientist, DEFAULT_INITIAL_CONFIDENCE};
use crate::text::{content, Experience, InspiringSet};
use crate::universe::{Artefact, Datum, Universe};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TheoremError {
    #[error("{check}: expected novel={expected_novel} transformative={expected_transformative}, got {witness:?}")]
    Witness { check: &'static str, expected_novel: bool, expected_transformative: bool, witness: SchemaWitness },
    #[error("transformative but not novel for set-driven {0:?}")]
    Counterexample(SchemaWitness),
    #[error("content sub-lemma {lemma} fails on σ={sigma:?}, τ={tau:?}")]
    SubLemma { lemma: &'static str, sigma: Vec<String>, tau: Vec<String> },
    #[error("last_novel unexpectedly passed the set-driven check")]
    NotRefuted,
}

fn render(e: &[Datum]) -> Vec<String> {
    e.iter().map(|&d| Universe::Naturals.render(d)).collect()
}

/// A situation, a candidate artefact, and both schema ratings.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SchemaWitness {
    pub scientist: String,
    pub experience: Vec<String>,
    pub artefact: String,
    pub novel: bool,
    pub transformative: bool,
}

pub fn schema_witness(m: &SharedScientist, experience: &Experience, a: Artefact) -> SchemaWitness {
    let s = Situation::new(Arc::clone(m), experience.clone());
    SchemaWitness {
        scientist: m.name(),
        experience: render(experience),
        artefact: Universe::Naturals.token(a),
        novel: novelty(a, &s),
        transformative: transformativeness(a, &s),
    }
}

fn expect(
    check: &'static str,
    witness: SchemaWitness,
    novel: bool,
    transformative: bool,
) -> Result<SchemaWitness, TheoremError> {
    if witness.novel == novel && witness.transformative == transformative {
        Ok(witness)
    } else {
        Err(TheoremError::Witness { check, expected_novel: novel, expected_transformative: transformative, witness })
    }
}

fn suite_family() -> Arc<LanguageFamily> {
    Arc::new(LanguageFamily::evens_odds())
}

/// Novel but not transformative for the given scientist.
pub fn novel_not_transformative(
    m: &SharedScientist,
    experience: &Experience,
    a: Artefact,
) -> Result<SchemaWitness, TheoremError> {
    expect("novelty without transformativeness", schema_witness(m, experience, a), true, false)
}

/// Transformative but not novel for the given scientist.
pub fn transformative_not_novel(
    m: &SharedScientist,
    experience: &Experience,
    a: Artefact,
) -> Result<SchemaWitness, TheoremError> {
    expect("transformativeness without novelty", schema_witness(m, experience, a), false, true)
}

/// `(DV(evens), (2,4))` with `a = 5`.
pub fn theorem1_witness() -> Result<SchemaWitness, TheoremError> {
    let dv = scientists::dumb_visionary(&suite_family(), &LanguageRepr::evens())
        .expect("evens is listed in the suite family");
    novel_not_transformative(&dv, &Experience::of(&[2, 4]), Artefact::from_rank(5))
}

/// `(ever_changing, (2,4))` with `a = 2`.
pub fn theorem2_witness() -> Result<SchemaWitness, TheoremError> {
    let m = scientists::ever_changing(&suite_family());
    transformative_not_novel(&m, &Experience::of(&[2, 4]), Artefact::from_rank(2))
}

/// Scientists that are set-driven by construction.
pub fn set_driven_roster(family: &Arc<LanguageFamily>) -> Vec<SharedScientist> {
    let u = family.universe();
    let dv = |s: &str| {
        scientists::dumb_visionary(family, &LanguageRepr::parse(s, u).expect("valid literal"))
            .expect("member of the family")
    };
    let class = ["{}", "{2}", "{2,4}", "evens"]
        .iter()
        .map(|s| family.min_index_for(&LanguageRepr::parse(s, u).expect("valid literal")).expect("member"))
        .collect();
    let bases: Vec<SharedScientist> = vec![
        scientists::memorizer(family),
        scientists::last_novel(family),
        scientists::ever_changing(family),
        scientists::confidence_annotating(scientists::memorizer(family), DEFAULT_INITIAL_CONFIDENCE)
            .expect("plain family"),
        scientists::enumeration_scientist(family, class).expect("non-empty class"),
        dv("evens"),
    ];
    let mut roster = vec![scientists::memorizer(family), dv("evens"), dv("odds"), dv("{2,4}")];
    roster.extend(bases.into_iter().map(scientists::set_driven_wrapper));
    roster
}

/// Every experience of length `≤ max_len` over `alphabet`.
pub fn all_experiences(alphabet: &[Datum], max_len: usize) -> Vec<Experience> {
    let mut out = vec![Experience::empty()];
    let mut frontier = vec![Experience::empty()];
    for _ in 0..max_len {
        frontier = frontier.iter().flat_map(|e| alphabet.iter().map(move |&d| e.then(d))).collect();
        out.extend(frontier.iter().cloned());
    }
    out
}

fn small_alphabet(ranks: u64) -> Vec<Datum> {
    std::iter::once(Datum::Pause).chain((0..ranks).map(|r| Datum::Item(Artefact::from_rank(r)))).collect()
}

/// Content sub-lemmas of the set-driven argument on one pair:
/// `I_σ − I_{σ⋄τ} = ∅` and `I_{σ⋄τ} − I_σ ⊆ I_τ`.
pub fn check_sub_lemmas(sigma: &[Datum], tau: &[Datum]) -> Result<(), TheoremError> {
    let joined = crate::text::concat(sigma, tau);
    let before = content(sigma);
    let after = content(&joined);
    let fail = |lemma| TheoremError::SubLemma { lemma, sigma: render(sigma), tau: render(tau) };
    if !before.difference(&after).is_empty() {
        return Err(fail("A"));
    }
    if !after.difference(&before).is_subset(&content(tau)) {
        return Err(fail("B"));
    }
    if let [Datum::Item(a)] = tau {
        let single: InspiringSet = [*a].into_iter().collect();
        if !after.difference(&before).is_subset(&single) {
            return Err(fail("B"));
        }
    }
    Ok(())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SubLemmaReport {
    pub trials: usize,
}

/// Sub-lemmas A and B on random `(σ, τ)` and `(σ, a)` pairs.
pub fn sub_lemmas(trials: usize, seed: u64) -> Result<SubLemmaReport, TheoremError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let space = SampleSpace::default();
    for _ in 0..trials {
        let sigma = space.experience(&mut rng);
        let tau = space.experience(&mut rng);
        check_sub_lemmas(&sigma, &tau)?;
        let a = space.artefact(&mut rng);
        check_sub_lemmas(&sigma, &[Datum::Item(a)])?;
    }
    Ok(SubLemmaReport { trials })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Theorem3Report {
    pub scientists: Vec<String>,
    pub exhaustive_cases: usize,
    pub sampled_cases: usize,
    pub sub_lemma_trials: usize,
}

fn condition2_holds(m: &SharedScientist, sigma: &Experience, a: Artefact) -> Result<(), SchemaWitness> {
    let s = Situation::new(Arc::clone(m), sigma.clone());
    if transformativeness(a, &s) && !novelty(a, &s) {
        Err(schema_witness(m, sigma, a))
    } else {
        Ok(())
    }
}

/// Exhaustive sweep of experiences up to `max_len` over `ranks` artefacts
/// plus the pause, against every candidate artefact of that universe.
pub fn condition2_sweep(m: &SharedScientist, ranks: u64, max_len: usize) -> Result<usize, SchemaWitness> {
    let mut cases = 0;
    for sigma in all_experiences(&small_alphabet(ranks), max_len) {
        for r in 0..ranks {
            condition2_holds(m, &sigma, Artefact::from_rank(r))?;
            cases += 1;
        }
    }
    Ok(cases)
}

/// Transformativeness implies novelty on the default set-driven roster.
pub fn theorem3_property(trials: usize, seed: u64) -> Result<Theorem3Report, TheoremError> {
    theorem3_property_over(&set_driven_roster(&suite_family()), trials, seed)
}

/// Same check over a caller-supplied roster of scientists claimed to be
/// set-driven: exhaustive over experiences of length ≤ 3 on a 3-element
/// universe, then `trials` random samples on ranks `0..8`.
pub fn theorem3_property_over(
    roster: &[SharedScientist],
    trials: usize,
    seed: u64,
) -> Result<Theorem3Report, TheoremError> {
    let mut exhaustive_cases = 0;
    for m in roster {
        exhaustive_cases += condition2_sweep(m, 3, 3).map_err(TheoremError::Counterexample)?;
    }
    for sigma in all_experiences(&small_alphabet(3), 3) {
        for tau in all_experiences(&small_alphabet(3), 1) {
            check_sub_lemmas(&sigma, &tau)?;
        }
    }

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let space = SampleSpace::default();
    let mut sampled_cases = 0;
    for _ in 0..trials {
        let sigma = space.experience(&mut rng);
        let seen: Vec<Artefact> = sigma.content().iter().collect();
        // half the candidates are repeats, which is where violations live
        let a = if !seen.is_empty() && rng.gen_bool(0.5) {
            seen[rng.gen_range(0..seen.len())]
        } else {
            space.artefact(&mut rng)
        };
        for m in roster {
            condition2_holds(m, &sigma, a).map_err(TheoremError::Counterexample)?;
            sampled_cases += 1;
        }
    }
    let sub = sub_lemmas(trials, seed ^ 0x5eed)?;
    Ok(Theorem3Report {
        scientists: roster.iter().map(|m| m.name()).collect(),
        exhaustive_cases,
        sampled_cases,
        sub_lemma_trials: sub.trials,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Condition2Witness {
    pub sweep_cases: usize,
    /// Equal-content pair found by the sampled set-driven check.
    pub sampled_pair: (Vec<String>, Vec<String>),
    /// Conjectures on `(2,4)` and `(4,2)`, described.
    pub explicit_pair: (String, String),
}

/// `last_novel` meets the implication (exhaustive sweep over experiences of
/// length ≤ 4 on ranks `0..3`) yet fails the set-driven check.
pub fn condition2_without_condition1_witness(trials: usize, seed: u64) -> Result<Condition2Witness, TheoremError> {
    let family = suite_family();
    let m = scientists::last_novel(&family);
    let sweep_cases = condition2_sweep(&m, 3, 4).map_err(TheoremError::Counterexample)?;
    let sampled_pair = match is_set_driven_sampled(&*m, trials.max(1), seed) {
        SetDrivenVerdict::Violated { first, second } => (render(&first), render(&second)),
        SetDrivenVerdict::PassedSampled { .. } => return Err(TheoremError::NotRefuted),
    };
    let p = m.conjecture(&Experience::of(&[2, 4]));
    let q = m.conjecture(&Experience::of(&[4, 2]));
    if p == q {
        return Err(TheoremError::NotRefuted);
    }
    Ok(Condition2Witness { sweep_cases, sampled_pair, explicit_pair: (family.describe(&p), family.describe(&q)) })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TheoremItem {
    pub name: String,
    pub passed: bool,
    pub detail: String,
    pub witness: serde_json::Value,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TheoremReport {
    pub seed: u64,
    pub trials: usize,
    pub items: Vec<TheoremItem>,
}

impl TheoremReport {
    pub fn passed_count(&self) -> usize {
        self.items.iter().filter(|i| i.passed).count()
    }

    pub fn all_passed(&self) -> bool {
        self.passed_count() == self.items.len()
    }
}

#[derive(Clone, Default)]
pub struct SuiteOptions {
    pub seed: u64,
    pub trials: usize,
    /// Added to the set-driven roster; lets a caller probe the property with
    /// scientists of its own.
    pub extra_set_driven: Vec<SharedScientist>,
}

fn item<T: Serialize>(name: &str, result: Result<T, TheoremError>, describe: impl Fn(&T) -> String) -> TheoremItem {
    match result {
        Ok(w) => TheoremItem {
            name: name.into(),
            passed: true,
            detail: describe(&w),
            witness: serde_json::to_value(&w).expect("witness serializes"),
        },
        Err(e) => TheoremItem {
            name: name.into(),
            passed: false,
            detail: e.to_string(),
            witness: match &e {
                TheoremError::Counterexample(w) | TheoremError::Witness { witness: w, .. } => {
                    serde_json::to_value(w).expect("witness serializes")
                }
                _ => serde_json::Value::Null,
            },
        },
    }
}

/// Runs the four checks in order.
pub fn run_theorem_suite(opts: &SuiteOptions) -> TheoremReport {
    let family = suite_family();
    let mut roster = set_driven_roster(&family);
    roster.extend(opts.extra_set_driven.iter().cloned());
    let show = |w: &SchemaWitness| {
        format!(
            "{} on ({}) with a={}: novel={} transformative={}",
            w.scientist,
            w.experience.join(","),
            w.artefact,
            u8::from(w.novel),
            u8::from(w.transformative)
        )
    };
    let items = vec![
        item("novelty-not-sufficient", theorem1_witness(), show),
        item("novelty-not-necessary", theorem2_witness(), show),
        item("set-driven-implies-novelty-necessary", theorem3_property_over(&roster, opts.trials, opts.seed), |r| {
            format!(
                "{} scientists, {} exhaustive + {} sampled cases, {} sub-lemma trials, 0 violations",
                r.scientists.len(),
                r.exhaustive_cases,
                r.sampled_cases,
                r.sub_lemma_trials
            )
        }),
        item("condition2-without-condition1", condition2_without_condition1_witness(opts.trials, opts.seed), |w| {
            format!(
                "last_novel: {} sweep cases, 0 violations; not set-driven: ({}) vs ({}); (2,4)->{} (4,2)->{}",
                w.sweep_cases,
                w.sampled_pair.0.join(","),
                w.sampled_pair.1.join(","),
                w.explicit_pair.0,
                w.explicit_pair.1
            )
        }),
    ];
    TheoremReport { seed: opts.seed, trials: opts.trials, items }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn witnesses_hold() {
        let w = theorem1_witness().unwrap();
        assert!(w.novel && !w.transformative);
        let w = theorem2_witness().unwrap();
        assert!(!w.novel && w.transformative);
    }

    #[test]
    fn theorem1_generalizes_over_constants_and_empty_experience() {
        let f = suite_family();
        let dv = scientists::dumb_visionary(&f, &LanguageRepr::odds()).unwrap();
        for a in [0, 7, 100] {
            novel_not_transformative(&dv, &Experience::of(&[2, 4]), Artefact::from_rank(a)).unwrap();
            novel_not_transformative(&dv, &Experience::empty(), Artefact::from_rank(a)).unwrap();
        }
    }

    #[test]
    fn theorem2_variants() {
        let f = suite_family();
        let m = scientists::ever_changing(&f);
        transformative_not_novel(&m, &Experience::of(&[5]), Artefact::from_rank(5)).unwrap();
        let c: SharedScientist = scientists::confidence_annotating(scientists::memorizer(&f), 3).unwrap();
        transformative_not_novel(&c, &Experience::of(&[2, 4]), Artefact::from_rank(2)).unwrap();
    }

    #[test]
    fn witness_failure_is_loud() {
        let f = suite_family();
        let m = scientists::memorizer(&f);
        let err = transformative_not_novel(&m, &Experience::of(&[2, 4]), Artefact::from_rank(4)).unwrap_err();
        assert!(matches!(err, TheoremError::Witness { .. }));
    }

    #[test]
    fn exhaustive_enumeration_size() {
        // 1 + 4 + 16 + 64 experiences over {#,0,1,2}
        assert_eq!(all_experiences(&small_alphabet(3), 3).len(), 85);
        assert_eq!(all_experiences(&small_alphabet(3), 4).len(), 341);
    }

    #[test]
    fn memorizer_instances() {
        let m = scientists::memorizer(&suite_family());
        let w = schema_witness(&m, &Experience::of(&[2, 4]), Artefact::from_rank(4));
        assert!(!w.transformative);
        let w = schema_witness(&m, &Experience::of(&[2, 4]), Artefact::from_rank(6));
        assert!(w.transformative && w.novel);
    }

    #[test]
    fn non_set_driven_scientist_is_caught() {
        let f = suite_family();
        let err = theorem3_property_over(&[scientists::ever_changing(&f)], 10, 1).unwrap_err();
        assert!(matches!(err, TheoremError::Counterexample(_)));
    }

    #[test]
    fn condition2_witness() {
        let w = condition2_without_condition1_witness(1000, 1).unwrap();
        assert_eq!(w.sweep_cases, 341 * 3);
        assert_eq!(w.explicit_pair, ("{4}".to_string(), "{2}".to_string()));
    }

    #[test]
    fn suite_passes_with_one_trial() {
        let r = run_theorem_suite(&SuiteOptions { seed: 0, trials: 1, ..Default::default() });
        assert_eq!(r.passed_count(), 4, "{r:#?}");
    }
}
