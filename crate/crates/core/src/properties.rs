//! Sampled checks of scientist strategy constraints: set-drivenness and
//! consistency.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::scientists::Scientist;
use crate::text::{content, Experience};
use crate::universe::{Artefact, Datum};

/// Where random experiences are drawn from.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SampleSpace {
    /// Artefacts are drawn from ranks `0..ranks`.
    pub ranks: u64,
    pub max_len: usize,
    pub pause_probability: f64,
}

impl Default for SampleSpace {
    fn default() -> Self {
        SampleSpace { ranks: 8, max_len: 8, pause_probability: 0.2 }
    }
}

impl SampleSpace {
    pub fn experience(&self, rng: &mut impl Rng) -> Experience {
        let len = rng.gen_range(0..=self.max_len);
        (0..len).map(|_| self.datum(rng)).collect()
    }

    pub fn datum(&self, rng: &mut impl Rng) -> Datum {
        if rng.gen_bool(self.pause_probability) {
            Datum::Pause
        } else {
            Datum::Item(self.artefact(rng))
        }
    }

    pub fn artefact(&self, rng: &mut impl Rng) -> Artefact {
        Artefact::from_rank(rng.gen_range(0..self.ranks))
    }
}

/// Another experience with the same content: shuffled, with duplicates and
/// pauses inserted or removed.
pub fn content_preserving_variant(experience: &[Datum], rng: &mut impl Rng) -> Experience {
    let members: Vec<Artefact> = content(experience).iter().collect();
    let mut items: Vec<Datum> = members.iter().map(|&a| Datum::Item(a)).collect();
    let extra = rng.gen_range(0..=experience.len() + 1);
    for _ in 0..extra {
        if !members.is_empty() && rng.gen_bool(0.6) {
            items.push(Datum::Item(*members.choose(rng).expect("non-empty")));
        } else {
            items.push(Datum::Pause);
        }
    }
    items.shuffle(rng);
    Experience::new(items)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum SetDrivenVerdict {
    PassedSampled {
        trials: usize,
    },
    /// Two experiences with equal content but different conjectures.
    Violated {
        first: Vec<Datum>,
        second: Vec<Datum>,
    },
}

impl SetDrivenVerdict {
    pub fn passed(&self) -> bool {
        matches!(self, SetDrivenVerdict::PassedSampled { .. })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum ConsistencyVerdict {
    PassedSampled {
        trials: usize,
    },
    /// An artefact of the experience missing from the conjectured language.
    Violated {
        experience: Vec<Datum>,
        artefact: Artefact,
    },
}

impl ConsistencyVerdict {
    pub fn passed(&self) -> bool {
        matches!(self, ConsistencyVerdict::PassedSampled { .. })
    }
}

/// Greedily deletes positions while content stays equal and the conjectures
/// still differ.
fn shrink_pair(m: &dyn Scientist, mut a: Vec<Datum>, mut b: Vec<Datum>) -> (Vec<Datum>, Vec<Datum>) {
    let violates = |x: &[Datum], y: &[Datum]| content(x) == content(y) && m.conjecture(x) != m.conjecture(y);
    loop {
        let mut progressed = false;
        for side in 0..2 {
            let len = if side == 0 { a.len() } else { b.len() };
            for i in (0..len).rev() {
                let (mut x, mut y) = (a.clone(), b.clone());
                if side == 0 {
                    x.remove(i);
                } else {
                    y.remove(i);
                }
                if violates(&x, &y) {
                    a = x;
                    b = y;
                    progressed = true;
                    break;
                }
            }
        }
        if !progressed {
            // drop one artefact entirely from both sides
            for x in content(&a).iter() {
                let keep = |d: &Datum| *d != Datum::Item(x);
                let x_a: Vec<Datum> = a.iter().copied().filter(keep).collect();
                let x_b: Vec<Datum> = b.iter().copied().filter(keep).collect();
                if violates(&x_a, &x_b) {
                    a = x_a;
                    b = x_b;
                    progressed = true;
                    break;
                }
            }
        }
        if !progressed {
            return (a, b);
        }
    }
}

pub fn is_set_driven_sampled(m: &dyn Scientist, trials: usize, seed: u64) -> SetDrivenVerdict {
    is_set_driven_sampled_in(m, trials, seed, &SampleSpace::default())
}

pub fn is_set_driven_sampled_in(m: &dyn Scientist, trials: usize, seed: u64, space: &SampleSpace) -> SetDrivenVerdict {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..trials {
        let sigma = space.experience(&mut rng);
        let tau = content_preserving_variant(&sigma, &mut rng);
        if m.conjecture(&sigma) != m.conjecture(&tau) {
            let (first, second) = shrink_pair(m, sigma.into_items(), tau.into_items());
            return SetDrivenVerdict::Violated { first, second };
        }
    }
    SetDrivenVerdict::PassedSampled { trials }
}

/// First artefact of `experience` outside the conjectured language.
pub fn consistency_violation(m: &dyn Scientist, experience: &[Datum]) -> Option<Artefact> {
    let lang = m.conjectured_language(experience);
    content(experience).iter().find(|&a| !lang.contains(a))
}

pub fn is_consistent_sampled(m: &dyn Scientist, trials: usize, seed: u64) -> ConsistencyVerdict {
    is_consistent_sampled_in(m, trials, seed, &SampleSpace::default())
}

pub fn is_consistent_sampled_in(
    m: &dyn Scientist,
    trials: usize,
    seed: u64,
    space: &SampleSpace,
) -> ConsistencyVerdict {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..trials {
        let sigma = space.experience(&mut rng);
        if let Some(artefact) = consistency_violation(m, &sigma) {
            return ConsistencyVerdict::Violated { experience: sigma.into_items(), artefact };
        }
    }
    ConsistencyVerdict::PassedSampled { trials }
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::family::LanguageFamily;
    use crate::language::LanguageRepr;
    use crate::scientists::*;

    fn fam() -> Arc<LanguageFamily> {
        Arc::new(LanguageFamily::evens_odds())
    }

    #[test]
    fn variants_preserve_content() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let space = SampleSpace::default();
        for _ in 0..500 {
            let s = space.experience(&mut rng);
            let t = content_preserving_variant(&s, &mut rng);
            assert_eq!(s.content(), t.content());
        }
    }

    #[test]
    fn set_driven_verdicts() {
        let f = fam();
        assert!(is_set_driven_sampled(&*memorizer(&f), 1000, 7).passed());
        let dv = dumb_visionary(&f, &LanguageRepr::evens()).unwrap();
        assert!(is_set_driven_sampled(&*dv, 1000, 7).passed());
        match is_set_driven_sampled(&*last_novel(&f), 1000, 7) {
            SetDrivenVerdict::Violated { first, second } => {
                // shrunk to two distinct artefacts in both orders
                assert_eq!(first.len(), 2);
                assert_eq!(second.len(), 2);
                assert_eq!(first[0], second[1]);
                assert_eq!(first[1], second[0]);
            }
            v => panic!("expected a violation, got {v:?}"),
        }
    }

    #[test]
    fn consistency_verdicts() {
        let f = fam();
        assert!(is_consistent_sampled(&*memorizer(&f), 1000, 3).passed());
        let dv = dumb_visionary(&f, &LanguageRepr::evens()).unwrap();
        assert_eq!(consistency_violation(&*dv, &Experience::of(&[2, 3])), Some(Artefact::from_rank(3)));
        assert!(!is_consistent_sampled(&*dv, 1000, 3).passed());
    }
}
