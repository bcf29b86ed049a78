//! Artefacts, the pause datum, and the universe that ranks them.
//!
//! Every artefact is identified by its rank in a fixed bijective enumeration
//! `u_0, u_1, ...` of the universe. The token (the surface string) is derived
//! from the rank through a [`Universe`], so two artefacts are equal iff their
//! ranks are equal iff their tokens are equal.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Token reserved for the pause datum in every serialized form.
pub const PAUSE_TOKEN: &str = "#";

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum UniverseError {
    #[error("token {0:?} is not a member of the universe")]
    UnknownToken(String),
    #[error("alphabet must be non-empty and free of duplicates and of '#'")]
    BadAlphabet,
    #[error("rank {0} is out of the representable range")]
    RankOverflow(String),
}

/// A sentence of the universe, stored as its universe rank.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Artefact(u64);

impl Artefact {
    pub const fn from_rank(rank: u64) -> Self {
        Artefact(rank)
    }

    pub const fn rank(self) -> u64 {
        self.0
    }
}

/// A single position of a text: an artefact or the pause `#`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Datum {
    Pause,
    Item(Artefact),
}

impl Datum {
    pub fn artefact(self) -> Option<Artefact> {
        match self {
            Datum::Pause => None,
            Datum::Item(a) => Some(a),
        }
    }

    pub fn is_pause(self) -> bool {
        matches!(self, Datum::Pause)
    }
}

impl From<Artefact> for Datum {
    fn from(a: Artefact) -> Self {
        Datum::Item(a)
    }
}

/// The countable set of sentences together with its rank enumeration.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
#[derive(Default)]
pub enum Universe {
    /// Decimal numerals of the naturals; rank n is the numeral for n.
    #[default]
    Naturals,
    /// Words over an alphabet in shortlex order; rank 0 is the empty word.
    Words { alphabet: Vec<char> },
}

impl Universe {
    pub fn words(alphabet: &str) -> Result<Self, UniverseError> {
        let chars: Vec<char> = alphabet.chars().collect();
        let mut sorted = chars.clone();
        sorted.sort_unstable();
        sorted.dedup();
        if chars.is_empty() || sorted.len() != chars.len() || chars.contains(&'#') {
            return Err(UniverseError::BadAlphabet);
        }
        Ok(Universe::Words { alphabet: chars })
    }

    pub fn name(&self) -> String {
        match self {
            Universe::Naturals => "naturals".to_string(),
            Universe::Words { alphabet } => {
                format!("words[{}]", alphabet.iter().collect::<String>())
            }
        }
    }

    pub fn token(&self, a: Artefact) -> String {
        match self {
            Universe::Naturals => a.rank().to_string(),
            Universe::Words { alphabet } => {
                // bijective base-k numeration
                let k = alphabet.len() as u64;
                let mut n = a.rank();
                let mut out = Vec::new();
                while n > 0 {
                    n -= 1;
                    out.push(alphabet[(n % k) as usize]);
                    n /= k;
                }
                out.iter().rev().collect()
            }
        }
    }

    pub fn artefact(&self, token: &str) -> Result<Artefact, UniverseError> {
        let unknown = || UniverseError::UnknownToken(token.to_string());
        match self {
            Universe::Naturals => {
                if token.is_empty()
                    || !token.bytes().all(|b| b.is_ascii_digit())
                    || (token.len() > 1 && token.starts_with('0'))
                {
                    return Err(unknown());
                }
                token
                    .parse::<u64>()
                    .map(Artefact::from_rank)
                    .map_err(|_| UniverseError::RankOverflow(token.to_string()))
            }
            Universe::Words { alphabet } => {
                let k = alphabet.len() as u64;
                let mut n: u64 = 0;
                for c in token.chars() {
                    let digit = alphabet.iter().position(|&x| x == c).ok_or_else(unknown)? as u64;
                    n = n
                        .checked_mul(k)
                        .and_then(|n| n.checked_add(digit + 1))
                        .ok_or_else(|| UniverseError::RankOverflow(token.to_string()))?;
                }
                Ok(Artefact::from_rank(n))
            }
        }
    }

    pub fn render(&self, d: Datum) -> String {
        match d {
            Datum::Pause => PAUSE_TOKEN.to_string(),
            Datum::Item(a) => self.token(a),
        }
    }

    pub fn datum(&self, token: &str) -> Result<Datum, UniverseError> {
        if token == PAUSE_TOKEN {
            Ok(Datum::Pause)
        } else {
            self.artefact(token).map(Datum::Item)
        }
    }
}

impl fmt::Display for Universe {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}
