//! Effectively indexed language families.
//!
//! A hypothesis (grammar) is a natural number interpreted inside a
//! [`LanguageFamily`]. Indices `0..k` name the `k` listed special languages;
//! index `k + n` names the finite set whose set-code is `n`, where
//! `code(S) = Σ_{u_i ∈ S} 2^i`. Every natural is therefore a valid index.
//!
//! An *annotated* family reads each index as a Cantor pair `(base, note)` and
//! ignores the note, so a scientist may append arbitrary comments to its
//! conjectures without changing the language they denote.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigUint;
use num_traits::{ToPrimitive, Zero};
use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::language::{Cardinality, LanguageRepr};
use crate::text::InspiringSet;
use crate::universe::{Artefact, Universe};

/// A grammar: a natural number read within some family.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct HypIndex(BigUint);

impl HypIndex {
    pub fn new(n: impl Into<BigUint>) -> Self {
        HypIndex(n.into())
    }

    pub fn value(&self) -> &BigUint {
        &self.0
    }

    pub fn to_u64(&self) -> Option<u64> {
        self.0.to_u64()
    }
}

impl From<u64> for HypIndex {
    fn from(n: u64) -> Self {
        HypIndex(BigUint::from(n))
    }
}

impl From<BigUint> for HypIndex {
    fn from(n: BigUint) -> Self {
        HypIndex(n)
    }
}

impl fmt::Display for HypIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.0, f)
    }
}

impl Serialize for HypIndex {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(&self.0)
    }
}

/// Cantor pairing, a bijection ℕ×ℕ → ℕ.
pub fn pair(a: &BigUint, b: &BigUint) -> BigUint {
    let s = a + b;
    (&s * (&s + 1u32)) / 2u32 + b
}

pub fn unpair(z: &BigUint) -> (BigUint, BigUint) {
    // w = floor((sqrt(8z + 1) - 1) / 2)
    let w = ((z * 8u32 + 1u32).sqrt() - 1u32) / 2u32;
    let t = (&w * (&w + 1u32)) / 2u32;
    let b = z - t;
    let a = w - &b;
    (a, b)
}

/// Outcome of a semantic comparison between two languages.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Semantic {
    Equal,
    NotEqual,
    Unknown,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FamilyError {
    #[error("language {0} is not a member of the family")]
    NotInFamily(String),
    #[error("membership of {0} is undecided: only Unknown comparisons remain")]
    Indeterminate(String),
}

/// Declared equalities and inequalities between special languages, keyed by
/// their identity ids.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct EqualityOracle {
    facts: BTreeMap<(String, String), bool>,
}

impl EqualityOracle {
    fn key(a: &str, b: &str) -> (String, String) {
        if a <= b {
            (a.to_string(), b.to_string())
        } else {
            (b.to_string(), a.to_string())
        }
    }

    pub fn declare_distinct(&mut self, a: &str, b: &str) {
        self.facts.insert(Self::key(a, b), false);
    }

    pub fn declare_equal(&mut self, a: &str, b: &str) {
        self.facts.insert(Self::key(a, b), true);
    }

    pub fn decide(&self, a: &str, b: &str) -> Option<bool> {
        self.facts.get(&Self::key(a, b)).copied()
    }

    pub fn is_empty(&self) -> bool {
        self.facts.is_empty()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LanguageFamily {
    universe: Universe,
    specials: Vec<LanguageRepr>,
    oracle: EqualityOracle,
    annotated: bool,
}

impl LanguageFamily {
    pub fn new(universe: Universe, specials: Vec<LanguageRepr>) -> Self {
        LanguageFamily { universe, specials, oracle: EqualityOracle::default(), annotated: false }
    }

    pub fn with_oracle(mut self, oracle: EqualityOracle) -> Self {
        self.oracle = oracle;
        self
    }

    /// Specials `[evens, odds]` over the naturals with the evens/odds
    /// disjointness fact installed.
    pub fn evens_odds() -> Self {
        let mut oracle = EqualityOracle::default();
        oracle.declare_distinct("evens", "odds");
        LanguageFamily::new(Universe::Naturals, vec![LanguageRepr::evens(), LanguageRepr::odds()]).with_oracle(oracle)
    }

    /// The same family read through the annotation pairing.
    pub fn annotated(&self) -> Self {
        LanguageFamily { annotated: true, ..self.clone() }
    }

    pub fn is_annotated(&self) -> bool {
        self.annotated
    }

    /// The family with annotation stripped.
    pub fn plain(&self) -> Self {
        LanguageFamily { annotated: false, ..self.clone() }
    }

    pub fn universe(&self) -> &Universe {
        &self.universe
    }

    pub fn specials(&self) -> &[LanguageRepr] {
        &self.specials
    }

    pub fn oracle(&self) -> &EqualityOracle {
        &self.oracle
    }

    fn special_count(&self) -> BigUint {
        BigUint::from(self.specials.len())
    }

    /// Strips the annotation (if any) to the plain roster index.
    pub fn base_index(&self, p: &HypIndex) -> BigUint {
        if self.annotated {
            unpair(&p.0).0
        } else {
            p.0.clone()
        }
    }

    /// Encodes a plain roster index in this family's index space.
    pub fn encode(&self, base: BigUint) -> HypIndex {
        if self.annotated {
            HypIndex(pair(&base, &BigUint::zero()))
        } else {
            HypIndex(base)
        }
    }

    /// Index of the finite-set tail entry for `set`.
    pub fn index_of_set(&self, set: &InspiringSet) -> HypIndex {
        self.encode(self.special_count() + set.set_code())
    }

    /// The decoded finite set when `p` falls in the finite-set tail.
    pub fn tail_set(&self, p: &HypIndex) -> Option<InspiringSet> {
        let base = self.base_index(p);
        let k = self.special_count();
        (base >= k).then(|| InspiringSet::from_set_code(&(base - k)))
    }

    pub fn language_of(&self, p: &HypIndex) -> LanguageRepr {
        let base = self.base_index(p);
        match base.to_usize() {
            Some(i) if i < self.specials.len() => self.specials[i].clone(),
            _ => LanguageRepr::finite(InspiringSet::from_set_code(&(base - self.special_count()))),
        }
    }

    /// Sound comparison of two language representations.
    pub fn compare(&self, a: &LanguageRepr, b: &LanguageRepr) -> Semantic {
        if let (Some(x), Some(y)) = (a.id(), b.id()) {
            if x == y {
                return Semantic::Equal;
            }
        }
        match (a.finite_members(), b.finite_members()) {
            (Some(x), Some(y)) => return decisive(x == y),
            (Some(_), None) | (None, Some(_)) => return Semantic::NotEqual,
            (None, None) => {}
        }
        match (a.id(), b.id()) {
            (Some(x), Some(y)) => match self.oracle.decide(x, y) {
                Some(eq) => decisive(eq),
                None => Semantic::Unknown,
            },
            _ => Semantic::Unknown,
        }
    }

    pub fn semantic_equals(&self, p: &HypIndex, q: &HypIndex) -> Semantic {
        if p == q {
            return Semantic::Equal;
        }
        self.compare(&self.language_of(p), &self.language_of(q))
    }

    /// Least index whose language is decisively equal to `target`.
    pub fn min_index_for(&self, target: &LanguageRepr) -> Result<HypIndex, FamilyError> {
        let mut blocked = false;
        for (i, special) in self.specials.iter().enumerate() {
            match self.compare(special, target) {
                Semantic::Equal => return Ok(self.encode(BigUint::from(i))),
                Semantic::Unknown => blocked |= separating_element(special, target, SEPARATION_DEPTH).is_none(),
                Semantic::NotEqual => {}
            }
        }
        let name = target.name(&self.universe);
        match (target.finite_members(), target.cardinality()) {
            (Some(set), _) => Ok(self.index_of_set(set)),
            (None, Cardinality::DeclaredInfinite | Cardinality::Finite(_)) if blocked => {
                Err(FamilyError::Indeterminate(name))
            }
            _ => Err(FamilyError::NotInFamily(name)),
        }
    }

    /// Human-readable rendering of an index: the raw natural, plus the set
    /// literal or special name it denotes.
    pub fn describe(&self, p: &HypIndex) -> String {
        match self.tail_set(p) {
            Some(s) => s.literal(&self.universe),
            None => self.language_of(p).name(&self.universe),
        }
    }
}

fn decisive(eq: bool) -> Semantic {
    if eq {
        Semantic::Equal
    } else {
        Semantic::NotEqual
    }
}

/// Enumeration depth used by [`LanguageFamily::min_index_for`] when looking
/// for an element that separates two undecided specials.
pub const SEPARATION_DEPTH: u64 = 256;

/// Some element enumerated (within `depth`) by one language and rejected by
/// the other. Finding one proves the languages differ.
pub fn separating_element(a: &LanguageRepr, b: &LanguageRepr, depth: u64) -> Option<Artefact> {
    let probe = |x: &LanguageRepr, y: &LanguageRepr| (0..depth).map_while(|k| x.enumerate(k)).find(|&e| !y.contains(e));
    probe(a, b).or_else(|| probe(b, a))
}
