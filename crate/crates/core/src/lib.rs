//! A laboratory for Gold-style identification in the limit, read as a model
//! of creative agents.
//!
//! Languages are indices into effectively indexed families, texts are lazy
//! deterministic generators, and scientists are pure functions from finite
//! experiences to indices. On top of that sit the novelty and
//! transformativeness schemas, finite-horizon identification checks, and an
//! executable suite relating the two schemas.

pub mod family;
pub mod fate;
pub mod identification;
pub mod language;
pub mod properties;
pub mod registry;
pub mod schemas;
pub mod scientists;
pub mod text;
pub mod theorems;
pub mod universe;

pub use family::{HypIndex, LanguageFamily, Semantic};
pub use fate::{make_fate, Fate, TextStrategy};
pub use identification::{
    bc_converges_at, converges_at, identifies_text, identify_class, transformation_trace, IdentificationVerdict,
};
pub use language::LanguageRepr;
pub use schemas::{novelty, semantic_transformativeness, transformativeness, Situation};
pub use scientists::{Scientist, SharedScientist};
pub use text::{content, Experience, InspiringSet};
pub use universe::{Artefact, Datum, Universe};
