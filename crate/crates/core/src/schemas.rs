//! Situations and the dichotomic rating schemas over artefacts.
//!
//! Schemas take an [`Artefact`], never a [`Datum`]: the pause cannot be
//! rated.
//!
//! [`Datum`]: crate::universe::Datum

use std::fmt;

use serde::{Serialize, Serializer};

use crate::family::{HypIndex, Semantic};
use crate::language::LanguageRepr;
use crate::scientists::SharedScientist;
use crate::text::Experience;
use crate::universe::{Artefact, Datum};

/// A scientist placed in an experience: `s = (M, σ)`.
#[derive(Clone)]
pub struct Situation {
    pub scientist: SharedScientist,
    pub experience: Experience,
}

impl fmt::Debug for Situation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Situation")
            .field("scientist", &self.scientist.name())
            .field("experience", &self.experience)
            .finish()
    }
}

impl Situation {
    pub fn new(scientist: SharedScientist, experience: Experience) -> Self {
        Situation { scientist, experience }
    }

    pub fn conjecture(&self) -> HypIndex {
        self.scientist.conjecture(&self.experience)
    }

    /// Conjecture on `σ ⋄ a`.
    pub fn conjecture_after(&self, a: Artefact) -> HypIndex {
        self.scientist.conjecture(&self.experience.then(a))
    }
}

/// Rating of the semantic schema, which may be undecidable.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SemanticVerdict {
    Holds,
    Fails,
    Indeterminate,
}

impl Serialize for SemanticVerdict {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            SemanticVerdict::Holds => s.serialize_u8(1),
            SemanticVerdict::Fails => s.serialize_u8(0),
            SemanticVerdict::Indeterminate => s.serialize_str("indeterminate"),
        }
    }
}

/// `H_s = W_{M(σ)}`.
pub fn hypothetical_space(s: &Situation) -> LanguageRepr {
    s.scientist.conjectured_language(&s.experience)
}

/// Novelty from the experience alone: `a ∉ I_σ`.
pub fn novelty_in(a: Artefact, experience: &[Datum]) -> bool {
    !experience.contains(&Datum::Item(a))
}

/// `V_N(a, s)`. Depends only on the experience, never on the scientist.
pub fn novelty(a: Artefact, s: &Situation) -> bool {
    novelty_in(a, &s.experience)
}

/// `V_Tr(a, s)`: `M(σ) ≠ M(σ ⋄ a)` as raw indices.
pub fn transformativeness(a: Artefact, s: &Situation) -> bool {
    s.conjecture() != s.conjecture_after(a)
}

/// `W_{M(σ)} ≠ W_{M(σ ⋄ a)}`, three-valued.
pub fn semantic_transformativeness(a: Artefact, s: &Situation) -> SemanticVerdict {
    let family = s.scientist.family();
    match family.semantic_equals(&s.conjecture(), &s.conjecture_after(a)) {
        Semantic::Equal => SemanticVerdict::Fails,
        Semantic::NotEqual => SemanticVerdict::Holds,
        Semantic::Unknown => SemanticVerdict::Indeterminate,
    }
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::family::LanguageFamily;
    use crate::scientists::*;
    use crate::text::InspiringSet;

    fn fam() -> Arc<LanguageFamily> {
        Arc::new(LanguageFamily::evens_odds())
    }

    fn a(r: u64) -> Artefact {
        Artefact::from_rank(r)
    }

    fn set(ranks: &[u64]) -> InspiringSet {
        ranks.iter().map(|&r| a(r)).collect()
    }

    #[test]
    fn hypothetical_space_examples() {
        let f = fam();
        let m = memorizer(&f);
        let s = Situation::new(m.clone(), Experience::of(&[2, 4]));
        assert_eq!(hypothetical_space(&s), LanguageRepr::finite(set(&[2, 4])));
        assert!(hypothetical_space(&Situation::new(m, Experience::empty())).is_empty_language());
        let dv = dumb_visionary(&f, &LanguageRepr::evens()).unwrap();
        assert_eq!(hypothetical_space(&Situation::new(dv, Experience::of(&[7]))), LanguageRepr::evens());
    }

    #[test]
    fn novelty_examples() {
        let m = memorizer(&fam());
        assert!(novelty(a(6), &Situation::new(m.clone(), Experience::of(&[2, 4]))));
        assert!(!novelty(a(4), &Situation::new(m.clone(), Experience::of(&[2, 4, 4]))));
        assert!(novelty(a(0), &Situation::new(m, Experience::from_ranks([None, None]))));
    }

    #[test]
    fn transformativeness_examples() {
        let f = fam();
        let dv = dumb_visionary(&f, &LanguageRepr::evens()).unwrap();
        let s = Situation::new(dv.clone(), Experience::of(&[2, 4]));
        assert!(!transformativeness(a(5), &s) && novelty(a(5), &s));
        assert_eq!(semantic_transformativeness(a(5), &s), SemanticVerdict::Fails);

        let s = Situation::new(ever_changing(&f), Experience::of(&[2, 4]));
        assert!(transformativeness(a(2), &s) && !novelty(a(2), &s));

        let s = Situation::new(memorizer(&f), Experience::of(&[2, 4]));
        assert!(!transformativeness(a(4), &s));
        let s = Situation::new(memorizer(&f), Experience::of(&[2]));
        assert_eq!(semantic_transformativeness(a(4), &s), SemanticVerdict::Holds);
    }

    #[test]
    fn annotation_is_syntactic_not_semantic() {
        let f = fam();
        let c = confidence_annotating(memorizer(&f), 3).unwrap();
        // after the switch at the third datum the held language is {2,4}
        let s = Situation::new(c, Experience::of(&[2, 4, 2]));
        assert!(transformativeness(a(4), &s));
        assert!(!novelty(a(4), &s));
        assert_eq!(semantic_transformativeness(a(4), &s), SemanticVerdict::Fails);
    }

    #[test]
    fn semantic_verdict_serializes_as_flag() {
        assert_eq!(serde_json::to_string(&SemanticVerdict::Holds).unwrap(), "1");
        assert_eq!(serde_json::to_string(&SemanticVerdict::Fails).unwrap(), "0");
        assert_eq!(serde_json::to_string(&SemanticVerdict::Indeterminate).unwrap(), "\"indeterminate\"");
    }
}
