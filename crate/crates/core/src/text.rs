//! Experiences (finite prefixes) and their inspiring sets.

use std::collections::BTreeSet;
use std::fmt;
use std::ops::Deref;

use num_bigint::BigUint;
use num_traits::Zero;

use crate::universe::{Artefact, Datum, Universe, UniverseError};

/// A finite ordered sequence of data, possibly containing pauses.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct Experience(Vec<Datum>);

impl Experience {
    pub fn new(items: Vec<Datum>) -> Self {
        Experience(items)
    }

    pub fn empty() -> Self {
        Experience(Vec::new())
    }

    /// Builds an experience from artefact ranks; `None` stands for a pause.
    pub fn from_ranks<I>(ranks: I) -> Self
    where
        I: IntoIterator<Item = Option<u64>>,
    {
        Experience(ranks.into_iter().map(|r| r.map_or(Datum::Pause, |r| Datum::Item(Artefact::from_rank(r)))).collect())
    }

    /// Shorthand for pause-free experiences.
    pub fn of(ranks: &[u64]) -> Self {
        Self::from_ranks(ranks.iter().map(|&r| Some(r)))
    }

    pub fn items(&self) -> &[Datum] {
        &self.0
    }

    pub fn into_items(self) -> Vec<Datum> {
        self.0
    }

    pub fn push(&mut self, d: Datum) {
        self.0.push(d);
    }

    /// `self ⋄ other`.
    pub fn concat(&self, other: &[Datum]) -> Experience {
        let mut items = Vec::with_capacity(self.0.len() + other.len());
        items.extend_from_slice(&self.0);
        items.extend_from_slice(other);
        Experience(items)
    }

    /// `self ⋄ d` for a single datum.
    pub fn then(&self, d: impl Into<Datum>) -> Experience {
        self.concat(&[d.into()])
    }

    pub fn content(&self) -> InspiringSet {
        content(&self.0)
    }

    pub fn to_json(&self, universe: &Universe) -> serde_json::Value {
        serde_json::Value::Array(self.0.iter().map(|&d| serde_json::Value::String(universe.render(d))).collect())
    }

    pub fn from_json(value: &serde_json::Value, universe: &Universe) -> Result<Self, TextError> {
        let arr = value.as_array().ok_or(TextError::NotAnArray)?;
        arr.iter()
            .map(|v| {
                let s = v.as_str().ok_or(TextError::NotAString)?;
                Ok(universe.datum(s)?)
            })
            .collect::<Result<Vec<_>, TextError>>()
            .map(Experience)
    }

    pub fn display<'a>(&'a self, universe: &'a Universe) -> impl fmt::Display + 'a {
        DisplaySeq(&self.0, universe)
    }
}

impl Deref for Experience {
    type Target = [Datum];

    fn deref(&self) -> &[Datum] {
        &self.0
    }
}

impl From<Vec<Datum>> for Experience {
    fn from(v: Vec<Datum>) -> Self {
        Experience(v)
    }
}

impl FromIterator<Datum> for Experience {
    fn from_iter<T: IntoIterator<Item = Datum>>(iter: T) -> Self {
        Experience(iter.into_iter().collect())
    }
}

#[derive(Debug, thiserror::Error)]
pub enum TextError {
    #[error("experience must be a JSON array")]
    NotAnArray,
    #[error("experience items must be strings")]
    NotAString,
    #[error(transparent)]
    Universe(#[from] UniverseError),
}

struct DisplaySeq<'a>(&'a [Datum], &'a Universe);

impl fmt::Display for DisplaySeq<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, d) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            f.write_str(&self.1.render(*d))?;
        }
        f.write_str(")")
    }
}

/// The unordered, pause-free content of an experience.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct InspiringSet(BTreeSet<Artefact>);

impl InspiringSet {
    pub fn new() -> Self {
        InspiringSet(BTreeSet::new())
    }

    pub fn contains(&self, a: Artefact) -> bool {
        self.0.contains(&a)
    }

    pub fn insert(&mut self, a: Artefact) -> bool {
        self.0.insert(a)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Members in ascending universe rank.
    pub fn iter(&self) -> impl Iterator<Item = Artefact> + '_ {
        self.0.iter().copied()
    }

    pub fn is_subset(&self, other: &InspiringSet) -> bool {
        self.0.is_subset(&other.0)
    }

    pub fn difference(&self, other: &InspiringSet) -> InspiringSet {
        InspiringSet(self.0.difference(&other.0).copied().collect())
    }

    /// The canonical experience listing each member once, by rank.
    pub fn canonical_experience(&self) -> Experience {
        self.0.iter().map(|&a| Datum::Item(a)).collect()
    }

    /// `Σ 2^rank` over the members; a bijection between finite sets and naturals.
    pub fn set_code(&self) -> BigUint {
        let mut code = BigUint::zero();
        for a in &self.0 {
            code.set_bit(a.rank(), true);
        }
        code
    }

    pub fn from_set_code(code: &BigUint) -> Self {
        InspiringSet((0..code.bits()).filter(|&i| code.bit(i)).map(Artefact::from_rank).collect())
    }

    /// Set literal such as `{2,4}`.
    pub fn literal(&self, universe: &Universe) -> String {
        let parts: Vec<String> = self.0.iter().map(|&a| universe.token(a)).collect();
        format!("{{{}}}", parts.join(","))
    }
}

impl FromIterator<Artefact> for InspiringSet {
    fn from_iter<T: IntoIterator<Item = Artefact>>(iter: T) -> Self {
        InspiringSet(iter.into_iter().collect())
    }
}

impl<'a> IntoIterator for &'a InspiringSet {
    type Item = &'a Artefact;
    type IntoIter = std::collections::btree_set::Iter<'a, Artefact>;

    fn into_iter(self) -> Self::IntoIter {
        self.0.iter()
    }
}

/// Artefacts occurring in `seq`, pauses dropped and duplicates collapsed.
pub fn content(seq: &[Datum]) -> InspiringSet {
    seq.iter().filter_map(|d| d.artefact()).collect()
}

pub fn concat(a: &[Datum], b: &[Datum]) -> Experience {
    let mut items = a.to_vec();
    items.extend_from_slice(b);
    Experience(items)
}
