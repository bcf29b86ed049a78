//! Fates (texts): total deterministic generators of infinite datum sequences.
//!
//! Randomized strategies are fair by construction. Each strategy has a
//! computable deadline `d(k)` and the k-th element of the source enumeration
//! is always emitted at some position `< d(k)`, whatever the RNG draws.

use std::fmt;
use std::sync::{Arc, Mutex};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::language::{Cardinality, LanguageRepr};
use crate::text::Experience;
use crate::universe::{Artefact, Datum, Universe};

pub const DEFAULT_PAUSE_DENSITY: f64 = 0.25;
pub const DEFAULT_WINDOW: u64 = 4;
pub const DEFAULT_REPEAT_RATE: f64 = 0.25;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum FateError {
    #[error("pause density {0} must lie in [0, 1)")]
    PauseDensity(f64),
    #[error("window size must be at least 1")]
    Window,
    #[error("repeat rate {0} must lie in [0, 1)")]
    RepeatRate(f64),
}

/// How a fate lists the members of its language.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum TextStrategy {
    /// The canonical enumeration; finite languages are cycled.
    Canonical,
    /// Canonical order with random pauses.
    Padded { pause_density: f64 },
    /// Canonical order permuted within consecutive blocks.
    ShuffledWindow { window: u64 },
    /// Canonical order interleaved with repeats of already-shown artefacts.
    RepetitionHeavy { repeat_rate: f64 },
}

impl TextStrategy {
    pub fn padded() -> Self {
        TextStrategy::Padded { pause_density: DEFAULT_PAUSE_DENSITY }
    }

    pub fn shuffled() -> Self {
        TextStrategy::ShuffledWindow { window: DEFAULT_WINDOW }
    }

    pub fn repetition() -> Self {
        TextStrategy::RepetitionHeavy { repeat_rate: DEFAULT_REPEAT_RATE }
    }

    pub fn validate(&self) -> Result<(), FateError> {
        match *self {
            TextStrategy::Canonical => Ok(()),
            TextStrategy::Padded { pause_density: p } if !(0.0..1.0).contains(&p) => Err(FateError::PauseDensity(p)),
            TextStrategy::ShuffledWindow { window: 0 } => Err(FateError::Window),
            TextStrategy::RepetitionHeavy { repeat_rate: r } if !(0.0..1.0).contains(&r) => {
                Err(FateError::RepeatRate(r))
            }
            _ => Ok(()),
        }
    }

    /// Stride between forced emissions for the stochastic strategies.
    fn stride(rate: f64) -> u64 {
        ((2.0 / (1.0 - rate)).ceil() as u64).max(2)
    }

    /// Position bound for the k-th source element: it is emitted at some
    /// index strictly below `deadline(k)`.
    pub fn deadline(&self, k: u64) -> u64 {
        match *self {
            TextStrategy::Canonical => k + 1,
            TextStrategy::Padded { pause_density: r } | TextStrategy::RepetitionHeavy { repeat_rate: r } => {
                (k + 1) * Self::stride(r)
            }
            TextStrategy::ShuffledWindow { window } => (k / window + 1) * window,
        }
    }

    /// Short label used in tables, e.g. `padded(0.25)`.
    pub fn label(&self) -> String {
        match *self {
            TextStrategy::Canonical => "canonical".into(),
            TextStrategy::Padded { pause_density } => format!("padded({pause_density})"),
            TextStrategy::ShuffledWindow { window } => format!("shuffled-window({window})"),
            TextStrategy::RepetitionHeavy { repeat_rate } => format!("repetition-heavy({repeat_rate})"),
        }
    }
}

impl fmt::Display for TextStrategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label())
    }
}

/// How a fate serializes: never as a materialized sequence.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FateDescriptor {
    pub language: String,
    pub strategy: TextStrategy,
    pub seed: u64,
}

/// Infinite source enumeration: the language's canonical order, cycled when
/// finite. `None` for the empty language.
fn source_element(lang: &LanguageRepr, k: u64) -> Option<Artefact> {
    match lang.cardinality() {
        Cardinality::Finite(0) => None,
        Cardinality::Finite(n) => lang.enumerate(k % n),
        Cardinality::DeclaredInfinite => lang.enumerate(k),
    }
}

struct Stream {
    lang: LanguageRepr,
    strategy: TextStrategy,
    rng: ChaCha8Rng,
    next_k: u64,
    shown: Vec<Artefact>,
    block: Vec<Artefact>,
    cache: Vec<Datum>,
}

impl Stream {
    fn emit_next(&mut self) -> Datum {
        match source_element(&self.lang, self.next_k) {
            Some(a) => {
                self.next_k += 1;
                if !self.shown.contains(&a) {
                    self.shown.push(a);
                }
                Datum::Item(a)
            }
            None => Datum::Pause,
        }
    }

    fn step(&mut self) -> Datum {
        if self.lang.is_empty_language() {
            return Datum::Pause;
        }
        let n = self.cache.len() as u64;
        let forced = n + 1 >= self.strategy.deadline(self.next_k);
        match self.strategy {
            TextStrategy::Canonical => self.emit_next(),
            TextStrategy::Padded { pause_density } => {
                if forced || self.rng.gen::<f64>() >= pause_density {
                    self.emit_next()
                } else {
                    Datum::Pause
                }
            }
            TextStrategy::RepetitionHeavy { repeat_rate } => {
                if !forced && !self.shown.is_empty() && self.rng.gen::<f64>() < repeat_rate {
                    let i = self.rng.gen_range(0..self.shown.len());
                    Datum::Item(self.shown[i])
                } else {
                    self.emit_next()
                }
            }
            TextStrategy::ShuffledWindow { window } => {
                if self.block.is_empty() {
                    let start = self.next_k;
                    let mut block: Vec<Artefact> =
                        (start..start + window).filter_map(|k| source_element(&self.lang, k)).collect();
                    self.next_k += window;
                    block.shuffle(&mut self.rng);
                    // popped from the back
                    block.reverse();
                    self.block = block;
                }
                self.block.pop().map_or(Datum::Pause, Datum::Item)
            }
        }
    }

    fn get(&mut self, n: u64) -> Datum {
        while self.cache.len() as u64 <= n {
            let d = self.step();
            self.cache.push(d);
        }
        self.cache[n as usize]
    }
}

type DatumFn = dyn Fn(u64) -> Datum + Send + Sync;

enum Source {
    Stream(Box<Mutex<Stream>>),
    Func(Box<DatumFn>),
}

struct FateInner {
    label: String,
    descriptor: Option<FateDescriptor>,
    platonic: Option<LanguageRepr>,
    source: Source,
}

/// A text: `ℕ → artefacts ∪ {#}`, optionally carrying the language it
/// exhaustively exemplifies.
#[derive(Clone)]
pub struct Fate(Arc<FateInner>);

impl fmt::Debug for Fate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Fate").field("label", &self.0.label).field("descriptor", &self.0.descriptor).finish()
    }
}

impl Fate {
    /// A fate defined by an explicit generator function. The function must be
    /// pure; `platonic` declares the content of the whole text.
    pub fn from_fn<F>(label: impl Into<String>, platonic: Option<LanguageRepr>, f: F) -> Self
    where
        F: Fn(u64) -> Datum + Send + Sync + 'static,
    {
        Fate(Arc::new(FateInner { label: label.into(), descriptor: None, platonic, source: Source::Func(Box::new(f)) }))
    }

    /// `T(n)`.
    pub fn at(&self, n: u64) -> Datum {
        match &self.0.source {
            Source::Func(f) => f(n),
            Source::Stream(s) => s.lock().expect("fate stream poisoned").get(n),
        }
    }

    /// `T[n]`: the first `n` data.
    pub fn prefix(&self, n: u64) -> Experience {
        match &self.0.source {
            Source::Func(f) => (0..n).map(f).collect(),
            Source::Stream(s) => {
                let mut s = s.lock().expect("fate stream poisoned");
                if n > 0 {
                    s.get(n - 1);
                }
                Experience::new(s.cache[..n as usize].to_vec())
            }
        }
    }

    pub fn platonic(&self) -> Option<&LanguageRepr> {
        self.0.platonic.as_ref()
    }

    pub fn descriptor(&self) -> Option<&FateDescriptor> {
        self.0.descriptor.as_ref()
    }

    pub fn label(&self) -> &str {
        &self.0.label
    }
}

/// Builds a fair text for `lang` under `strategy`, deterministic in `seed`.
pub fn make_fate(lang: &LanguageRepr, strategy: TextStrategy, seed: u64) -> Result<Fate, FateError> {
    strategy.validate()?;
    let name = lang.name(&Universe::Naturals);
    let stream = Stream {
        lang: lang.clone(),
        strategy,
        rng: ChaCha8Rng::seed_from_u64(seed),
        next_k: 0,
        shown: Vec::new(),
        block: Vec::new(),
        cache: Vec::new(),
    };
    Ok(Fate(Arc::new(FateInner {
        label: format!("{name}/{}/{seed}", strategy.label()),
        descriptor: Some(FateDescriptor { language: name, strategy, seed }),
        platonic: Some(lang.clone()),
        source: Source::Stream(Box::new(Mutex::new(stream))),
    })))
}

/// `2, 4, 6, 8, 10, ...`
pub fn evens_canonical() -> Fate {
    Fate::from_fn("evens/listed", Some(LanguageRepr::evens()), |n| Datum::Item(Artefact::from_rank(2 * (n + 1))))
}

/// `#, 2, #, 4, 4, #, 6, 6, 6, # ...`: the j-th even number is preceded by a
/// pause and repeated j times.
pub fn evens_paused_repeats() -> Fate {
    Fate::from_fn("evens/paused-repeats", Some(LanguageRepr::evens()), |n| {
        // block j (1-based) occupies 1 + j positions starting at (j-1)(j+2)/2
        let mut j = 1u64;
        let mut start = 0u64;
        loop {
            let len = j + 1;
            if n < start + len {
                return if n == start { Datum::Pause } else { Datum::Item(Artefact::from_rank(2 * j)) };
            }
            start += len;
            j += 1;
        }
    })
}

/// `#, 2, 6, 4, 10, 8, 14, 12, 18, ...`: after the opening pause and 2,
/// consecutive pairs of evens appear swapped.
pub fn evens_swapped_pairs() -> Fate {
    Fate::from_fn("evens/swapped-pairs", Some(LanguageRepr::evens()), |n| match n {
        0 => Datum::Pause,
        1 => Datum::Item(Artefact::from_rank(2)),
        _ => {
            let m = n - 2;
            let j = m / 2 + 1;
            let rank = if m % 2 == 0 { 4 * j + 2 } else { 4 * j };
            Datum::Item(Artefact::from_rank(rank))
        }
    })
}

/// The three listed texts for the even numbers.
pub fn evens_texts() -> Vec<Fate> {
    vec![evens_canonical(), evens_paused_repeats(), evens_swapped_pairs()]
}
