//! Language representations with decidable membership and computable
//! enumeration.

use std::fmt;

use thiserror::Error;

use crate::text::InspiringSet;
use crate::universe::{Artefact, Universe, UniverseError};

/// Names of the built-in infinite languages, in registry order.
pub const BUILTIN_SPECIALS: &[&str] = &["evens", "odds", "all", "primes"];

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LanguageError {
    #[error("unknown language {0:?}; expected a built-in name or a set literal like {{2,4}}")]
    Unknown(String),
    #[error(transparent)]
    Universe(#[from] UniverseError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Cardinality {
    Finite(u64),
    DeclaredInfinite,
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Kind {
    Finite(InspiringSet),
    /// Positive even ranks: 2, 4, 6, ...
    Evens,
    /// Odd ranks: 1, 3, 5, ...
    Odds,
    All,
    Primes,
}

/// A language: membership predicate, canonical enumeration, cardinality tag
/// and an optional identity for declared special languages.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LanguageRepr {
    id: Option<String>,
    kind: Kind,
}

impl LanguageRepr {
    /// Anonymous finite language, as produced by the finite-set tail.
    pub fn finite(members: InspiringSet) -> Self {
        LanguageRepr { id: None, kind: Kind::Finite(members) }
    }

    pub fn empty() -> Self {
        Self::finite(InspiringSet::new())
    }

    pub fn evens() -> Self {
        LanguageRepr { id: Some("evens".into()), kind: Kind::Evens }
    }

    pub fn odds() -> Self {
        LanguageRepr { id: Some("odds".into()), kind: Kind::Odds }
    }

    pub fn all() -> Self {
        LanguageRepr { id: Some("all".into()), kind: Kind::All }
    }

    pub fn primes() -> Self {
        LanguageRepr { id: Some("primes".into()), kind: Kind::Primes }
    }

    /// Looks up a built-in special by name or parses a set literal.
    ///
    /// Set literals come back anonymous; call [`LanguageRepr::with_id`] to
    /// list one as a special.
    pub fn parse(spec: &str, universe: &Universe) -> Result<Self, LanguageError> {
        let s = spec.trim();
        match s {
            "evens" => return Ok(Self::evens()),
            "odds" => return Ok(Self::odds()),
            "all" => return Ok(Self::all()),
            "primes" => return Ok(Self::primes()),
            "empty" => return Ok(Self::empty()),
            _ => {}
        }
        let inner = s
            .strip_prefix('{')
            .and_then(|r| r.strip_suffix('}'))
            .ok_or_else(|| LanguageError::Unknown(spec.to_string()))?;
        let members = inner
            .split(',')
            .map(str::trim)
            .filter(|t| !t.is_empty())
            .map(|t| universe.artefact(t))
            .collect::<Result<InspiringSet, _>>()?;
        Ok(Self::finite(members))
    }

    pub fn with_id(mut self, id: impl Into<String>) -> Self {
        self.id = Some(id.into());
        self
    }

    pub fn id(&self) -> Option<&str> {
        self.id.as_deref()
    }

    pub fn contains(&self, a: Artefact) -> bool {
        let r = a.rank();
        match &self.kind {
            Kind::Finite(s) => s.contains(a),
            Kind::Evens => r > 0 && r.is_multiple_of(2),
            Kind::Odds => r % 2 == 1,
            Kind::All => true,
            Kind::Primes => is_prime(r),
        }
    }

    /// The k-th element in canonical (ascending rank) order.
    pub fn enumerate(&self, k: u64) -> Option<Artefact> {
        let rank = match &self.kind {
            Kind::Finite(s) => return s.iter().nth(usize::try_from(k).ok()?),
            Kind::Evens => k.checked_add(1)?.checked_mul(2)?,
            Kind::Odds => k.checked_mul(2)?.checked_add(1)?,
            Kind::All => k,
            Kind::Primes => nth_prime(k)?,
        };
        Some(Artefact::from_rank(rank))
    }

    pub fn cardinality(&self) -> Cardinality {
        match &self.kind {
            Kind::Finite(s) => Cardinality::Finite(s.len() as u64),
            _ => Cardinality::DeclaredInfinite,
        }
    }

    pub fn is_finite(&self) -> bool {
        matches!(self.kind, Kind::Finite(_))
    }

    pub fn finite_members(&self) -> Option<&InspiringSet> {
        match &self.kind {
            Kind::Finite(s) => Some(s),
            _ => None,
        }
    }

    pub fn is_empty_language(&self) -> bool {
        self.finite_members().is_some_and(InspiringSet::is_empty)
    }

    /// Identity if declared, otherwise the set literal.
    pub fn name(&self, universe: &Universe) -> String {
        match (&self.id, &self.kind) {
            (Some(id), _) => id.clone(),
            (None, Kind::Finite(s)) => s.literal(universe),
            (None, k) => format!("{k:?}").to_lowercase(),
        }
    }
}

impl fmt::Display for LanguageRepr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name(&Universe::Naturals))
    }
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d.saturating_mul(d) <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

fn nth_prime(k: u64) -> Option<u64> {
    let mut seen = 0;
    let mut n = 1u64;
    loop {
        n = n.checked_add(1)?;
        if is_prime(n) {
            if seen == k {
                return Some(n);
            }
            seen += 1;
        }
    }
}
