use std::sync::Arc;

use idlab_core::family::{pair, unpair, Semantic};
use idlab_core::fate::{evens_texts, make_fate, TextStrategy};
use idlab_core::identification::{bc_converges_at, converges_at, identifies_text, IdentificationVerdict};
use idlab_core::properties::{is_set_driven_sampled, SampleSpace};
use idlab_core::schemas::{novelty, semantic_transformativeness, transformativeness, SemanticVerdict, Situation};
use idlab_core::scientists::*;
use idlab_core::text::{concat, content, Experience, InspiringSet};
use idlab_core::theorems::{check_sub_lemmas, set_driven_roster};
use idlab_core::universe::{Artefact, Datum, Universe};
use idlab_core::{HypIndex, LanguageFamily, LanguageRepr};
use num_bigint::BigUint;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn fam() -> Arc<LanguageFamily> {
    Arc::new(LanguageFamily::evens_odds())
}

fn datum() -> impl Strategy<Value = Datum> {
    prop_oneof![
        1 => Just(Datum::Pause),
        4 => (0u64..10).prop_map(|r| Datum::Item(Artefact::from_rank(r))),
    ]
}

fn experience() -> impl Strategy<Value = Experience> {
    prop::collection::vec(datum(), 0..10).prop_map(Experience::new)
}

fn language() -> impl Strategy<Value = LanguageRepr> {
    prop_oneof![
        Just(LanguageRepr::evens()),
        Just(LanguageRepr::odds()),
        Just(LanguageRepr::all()),
        Just(LanguageRepr::primes()),
        Just(LanguageRepr::empty()),
        prop::collection::btree_set(0u64..12, 1..5)
            .prop_map(|s| LanguageRepr::finite(s.into_iter().map(Artefact::from_rank).collect())),
    ]
}

fn strategy() -> impl Strategy<Value = TextStrategy> {
    prop_oneof![
        Just(TextStrategy::Canonical),
        (0.0f64..0.9).prop_map(|p| TextStrategy::Padded { pause_density: p }),
        (1u64..6).prop_map(|w| TextStrategy::ShuffledWindow { window: w }),
        (0.0f64..0.9).prop_map(|r| TextStrategy::RepetitionHeavy { repeat_rate: r }),
    ]
}

fn builtins(f: &Arc<LanguageFamily>) -> Vec<SharedScientist> {
    let mut v = vec![
        memorizer(f),
        ever_changing(f),
        last_novel(f),
        dumb_visionary(f, &LanguageRepr::evens()).unwrap(),
        enumeration_scientist(f, vec![f.index_of_set(&InspiringSet::new()), HypIndex::from(0)]).unwrap(),
        confidence_annotating(memorizer(f), 3).unwrap(),
    ];
    v.push(set_driven_wrapper(last_novel(f)));
    v
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(512))]

    #[test]
    fn content_sub_lemmas(sigma in experience(), tau in experience()) {
        let joined = concat(&sigma, &tau);
        prop_assert!(content(&sigma).difference(&content(&joined)).is_empty());
        prop_assert!(content(&joined).difference(&content(&sigma)).is_subset(&content(&tau)));
        prop_assert_eq!(joined.len(), sigma.len() + tau.len());
        prop_assert_eq!(&joined[..sigma.len()], &sigma[..]);
        prop_assert!(check_sub_lemmas(&sigma, &tau).is_ok());
    }

    #[test]
    fn fates_are_deterministic_monotone_and_sound(
        lang in language(), strat in strategy(), seed in any::<u64>()
    ) {
        let t = make_fate(&lang, strat, seed).unwrap();
        let u = make_fate(&lang, strat, seed).unwrap();
        let p = t.prefix(60);
        prop_assert_eq!(&p, &u.prefix(60));
        for n in 0..60u64 {
            prop_assert!(content(&p[..n as usize]).is_subset(&content(&p[..n as usize + 1])));
            prop_assert_eq!(&t.prefix(n)[..], &p[..n as usize]);
        }
        for d in p.iter() {
            if let Datum::Item(a) = d {
                prop_assert!(lang.contains(*a));
            }
        }
    }

    #[test]
    fn fates_are_fair(lang in language(), strat in strategy(), seed in any::<u64>()) {
        let t = make_fate(&lang, strat, seed).unwrap();
        let k_max = match lang.finite_members() { Some(s) => s.len() as u64, None => 15 };
        for k in 0..k_max {
            let x = lang.enumerate(k).unwrap();
            prop_assert!(content(&t.prefix(strat.deadline(k))).contains(x));
        }
    }

    #[test]
    fn tail_languages_enumerate_members(code in 0u64..(1 << 14), extra in 0u64..3) {
        let f = fam();
        let p = HypIndex::from(code + extra);
        let lang = f.language_of(&p);
        for k in 0..20 {
            if let Some(x) = lang.enumerate(k) {
                prop_assert!(lang.contains(x));
            }
        }
    }

    #[test]
    fn semantic_equals_symmetric_and_transitive(a in 0u64..40, b in 0u64..40, c in 0u64..40) {
        let f = fam();
        let (a, b, c) = (HypIndex::from(a), HypIndex::from(b), HypIndex::from(c));
        prop_assert_eq!(f.semantic_equals(&a, &b), f.semantic_equals(&b, &a));
        prop_assert_eq!(f.semantic_equals(&a, &a), Semantic::Equal);
        if f.semantic_equals(&a, &b) == Semantic::Equal && f.semantic_equals(&b, &c) == Semantic::Equal {
            prop_assert_eq!(f.semantic_equals(&a, &c), Semantic::Equal);
        }
    }

    #[test]
    fn annotated_pairing_round_trips(a in any::<u64>(), b in any::<u64>()) {
        let (a, b) = (BigUint::from(a), BigUint::from(b));
        prop_assert_eq!(unpair(&pair(&a, &b)), (a, b));
    }

    #[test]
    fn builtins_are_deterministic(sigma in experience()) {
        let f = fam();
        for m in builtins(&f) {
            prop_assert_eq!(m.conjecture(&sigma), m.conjecture(&sigma.clone()));
        }
    }

    #[test]
    fn ever_changing_changes_on_every_extension(sigma in experience(), d in datum()) {
        let m = ever_changing(&fam());
        prop_assert_ne!(m.conjecture(&sigma), m.conjecture(&sigma.then(d)));
    }

    #[test]
    fn annotator_changes_syntactically_every_step(sigma in experience(), d in datum()) {
        let f = fam();
        let c = confidence_annotating(memorizer(&f), 3).unwrap();
        prop_assert_ne!(c.conjecture(&sigma), c.conjecture(&sigma.then(d)));
        let states = c.replay(&sigma);
        for w in states.windows(2) {
            if w[0].base != w[1].base {
                prop_assert!(w[1].switched);
                prop_assert_eq!(w[1].confidence, 3);
            }
        }
    }

    #[test]
    fn last_novel_meets_condition_two(sigma in experience(), r in 0u64..10) {
        let f = fam();
        let s = Situation::new(last_novel(&f), sigma);
        let a = Artefact::from_rank(r);
        if transformativeness(a, &s) {
            prop_assert!(novelty(a, &s));
        }
    }

    #[test]
    fn novelty_is_scientist_independent(sigma in experience(), r in 0u64..10) {
        let f = fam();
        let a = Artefact::from_rank(r);
        let flags: Vec<bool> = builtins(&f)
            .into_iter()
            .map(|m| novelty(a, &Situation::new(m, sigma.clone())))
            .collect();
        prop_assert!(flags.windows(2).all(|w| w[0] == w[1]));
        prop_assert_eq!(flags[0], !content(&sigma).contains(a));
    }

    #[test]
    fn equal_indices_force_semantic_zero(sigma in experience(), r in 0u64..10) {
        let f = fam();
        let a = Artefact::from_rank(r);
        for m in builtins(&f) {
            let s = Situation::new(m, sigma.clone());
            if !transformativeness(a, &s) {
                prop_assert_eq!(semantic_transformativeness(a, &s), SemanticVerdict::Fails);
            }
        }
    }

    #[test]
    fn set_driven_roster_meets_condition_two(sigma in experience(), r in 0u64..10) {
        let f = fam();
        let a = Artefact::from_rank(r);
        for m in set_driven_roster(&f) {
            let s = Situation::new(m, sigma.clone());
            if transformativeness(a, &s) {
                prop_assert!(novelty(a, &s));
            }
        }
    }

    #[test]
    fn horizon_monotonicity(lang in language(), strat in strategy(), seed in any::<u64>(), h in 1u64..30, extra in 0u64..30) {
        let f = fam();
        let t = make_fate(&lang, strat, seed).unwrap();
        for m in [memorizer(&f), last_novel(&f), set_driven_wrapper(ever_changing(&f))] {
            let r = converges_at(&*m, &t, h);
            let r2 = converges_at(&*m, &t, h + extra);
            prop_assert_eq!(&r2.trace[..=h as usize], &r.trace[..]);
            if r.stabilized {
                let c = r.last_change_step;
                prop_assert!(r2.last_change_step == c || r2.last_change_step.unwrap_or(0) > h);
            }
        }
    }

    #[test]
    fn text_identification_implies_bc(lang in language(), strat in strategy(), seed in any::<u64>()) {
        let f = fam();
        let t = make_fate(&lang, strat, seed).unwrap();
        for m in builtins(&f) {
            let (v, _) = identifies_text(&*m, &t, 40).unwrap();
            if v == IdentificationVerdict::Identified {
                prop_assert_eq!(bc_converges_at(&*m, &t, 40).unwrap(), IdentificationVerdict::Identified);
            }
        }
    }
}

#[test]
fn set_code_round_trips_below_2_pow_16() {
    for n in 0u64..(1 << 16) {
        let code = BigUint::from(n);
        let set = InspiringSet::from_set_code(&code);
        assert_eq!(set.set_code(), code);
        assert!(set.iter().all(|a| a.rank() < 16));
    }
}

#[test]
fn builtins_total_over_ten_thousand_experiences() {
    let f = fam();
    let ms = builtins(&f);
    let dv = dumb_visionary(&f, &LanguageRepr::evens()).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let space = SampleSpace::default();
    for _ in 0..10_000 {
        let e = space.experience(&mut rng);
        for m in &ms {
            assert_eq!(m.conjecture(&e), m.conjecture(&e));
        }
        assert_eq!(dv.conjecture(&e), HypIndex::from(0));
    }
}

#[test]
fn set_driven_wrapper_passes_for_every_base() {
    let f = fam();
    for base in builtins(&f) {
        let w = set_driven_wrapper(base);
        assert!(is_set_driven_sampled(&*w, 2000, 5).passed(), "{}", w.name());
    }
}

#[test]
fn memorizer_stabilizes_exactly_at_coverage() {
    // oracle: first n with content(T[n]) equal to the language, read off the
    // raw prefix without any scientist
    let f = fam();
    let m = memorizer(&f);
    let universe = Universe::Naturals;
    for lit in ["{2,4,6}", "{0}", "{1,3}", "{0,1,2,3}"] {
        let lang = LanguageRepr::parse(lit, &universe).unwrap();
        let target = lang.finite_members().unwrap().clone();
        for strat in
            [TextStrategy::Canonical, TextStrategy::padded(), TextStrategy::shuffled(), TextStrategy::repetition()]
        {
            for seed in 0..3 {
                let t = make_fate(&lang, strat, seed).unwrap();
                let p = t.prefix(64);
                let coverage = (0..=64).find(|&n| content(&p[..n]) == target).unwrap() as u64;
                let r = converges_at(&*m, &t, 64);
                assert_eq!(r.last_change_step, Some(coverage), "{lit} {strat} {seed}");
            }
        }
    }
}

#[test]
fn evens_texts_are_for_evens() {
    for t in evens_texts() {
        let p = t.prefix(200);
        for d in p.iter() {
            if let Datum::Item(a) = d {
                assert!(LanguageRepr::evens().contains(*a));
            }
        }
        // the first 10 evens all appear early
        let c = content(&p);
        for k in 0..10 {
            assert!(c.contains(LanguageRepr::evens().enumerate(k).unwrap()), "{}", t.label());
        }
    }
}
