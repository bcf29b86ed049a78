//! Experiment configuration: one TOML document, with command-line flags
//! taking precedence over file values.

use std::path::Path;
use std::sync::Arc;

use clap::ValueEnum;
use idlab_core::registry::{parse_strategy, FamilySpec, RegistryError, ScientistSpec};
use idlab_core::text::InspiringSet;
use idlab_core::universe::Artefact;
use idlab_core::{LanguageFamily, LanguageRepr, TextStrategy};
use serde::Deserialize;

use crate::CliError;

pub const DEFAULT_HORIZON: u64 = 64;
pub const DEFAULT_TRIALS: usize = 10_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize, ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Jsonl,
    Csv,
    Pretty,
}

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct TextSpec {
    /// Built-in name or set literal.
    pub language: String,
    /// Strategy label, e.g. `padded(0.25)`.
    pub strategy: String,
}

impl Default for TextSpec {
    fn default() -> Self {
        TextSpec { language: "{2,4}".into(), strategy: "canonical".into() }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ClassSpec {
    /// Explicit members: built-in names or set literals.
    pub languages: Vec<String>,
    /// Adds every subset of the first `n` universe elements, by set-code.
    pub finite_over_first: Option<u32>,
    pub strategies: Option<Vec<String>>,
    pub seeds: Option<Vec<u64>>,
}

#[derive(Debug, Clone, Default, PartialEq, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct TheoremSpec {
    pub trials: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ExperimentConfig {
    pub seed: u64,
    pub horizon: u64,
    pub format: Option<Format>,
    pub family: FamilySpec,
    pub scientist: ScientistSpec,
    pub text: TextSpec,
    pub class: ClassSpec,
    pub theorems: TheoremSpec,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        ExperimentConfig {
            seed: 0,
            horizon: DEFAULT_HORIZON,
            format: None,
            family: FamilySpec::default(),
            scientist: ScientistSpec::named("memorizer"),
            text: TextSpec::default(),
            class: ClassSpec::default(),
            theorems: TheoremSpec::default(),
        }
    }
}

/// Everything a command needs, with names resolved.
pub struct Resolved {
    pub family: Arc<LanguageFamily>,
    pub config: ExperimentConfig,
}

impl ExperimentConfig {
    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path).map_err(|e| CliError::Config(format!("{}: {e}", path.display())))?;
        Self::from_toml(&text)
    }

    pub fn from_toml(text: &str) -> Result<Self, CliError> {
        toml::from_str(text).map_err(|e| CliError::Config(e.to_string()))
    }

    pub fn resolve(self) -> Result<Resolved, CliError> {
        if self.horizon == 0 {
            return Err(CliError::Config("horizon must be at least 1".into()));
        }
        let family = Arc::new(self.family.build().map_err(config_err)?);
        // fail early on unresolvable names
        self.scientist.build(&family).map_err(config_err)?;
        Ok(Resolved { family, config: self })
    }
}

pub fn config_err(e: impl std::fmt::Display) -> CliError {
    CliError::Config(e.to_string())
}

impl Resolved {
    pub fn text_language(&self) -> Result<LanguageRepr, CliError> {
        LanguageRepr::parse(&self.config.text.language, self.family.universe()).map_err(config_err)
    }

    pub fn text_strategy(&self) -> Result<TextStrategy, CliError> {
        let s = parse_strategy(&self.config.text.strategy).map_err(config_err)?;
        s.validate().map_err(config_err)?;
        Ok(s)
    }

    /// Named class members in declaration order: explicit languages first,
    /// then the finite subsets in set-code order.
    pub fn class_languages(&self) -> Result<Vec<(String, LanguageRepr)>, CliError> {
        let universe = self.family.universe();
        let mut out = Vec::new();
        for s in &self.config.class.languages {
            let lang = LanguageRepr::parse(s, universe).map_err(config_err)?;
            out.push((lang.name(universe), lang));
        }
        if let Some(n) = self.config.class.finite_over_first {
            if n > 16 {
                return Err(CliError::Config("finite_over_first is limited to 16".into()));
            }
            for code in 0u64..(1 << n) {
                let set: InspiringSet = (0..n as u64).filter(|i| code >> i & 1 == 1).map(Artefact::from_rank).collect();
                out.push((set.literal(universe), LanguageRepr::finite(set)));
            }
        }
        Ok(out)
    }

    pub fn class_strategies(&self) -> Result<Vec<TextStrategy>, CliError> {
        let labels = self
            .config
            .class
            .strategies
            .clone()
            .unwrap_or_else(|| vec!["canonical".into(), "padded(0.25)".into(), "shuffled-window(4)".into()]);
        labels
            .iter()
            .map(|l| {
                let s = parse_strategy(l).map_err(config_err)?;
                s.validate().map_err(config_err)?;
                Ok(s)
            })
            .collect()
    }

    pub fn class_seeds(&self) -> Vec<u64> {
        let seed = self.config.seed;
        self.config.class.seeds.clone().unwrap_or_else(|| vec![seed, seed.wrapping_add(1), seed.wrapping_add(2)])
    }

    pub fn trials(&self) -> usize {
        self.config.theorems.trials.unwrap_or(DEFAULT_TRIALS)
    }
}

/// Compact scientist syntax for the command line:
/// `memorizer`, `dumb_visionary(evens)`, `set_driven(last_novel)`,
/// `confidence_annotating(memorizer)`, `enumeration({};{2};evens)`.
pub fn parse_scientist(s: &str) -> Result<ScientistSpec, RegistryError> {
    let s = s.trim();
    let Some((name, rest)) = s.split_once('(') else {
        return Ok(ScientistSpec::named(s));
    };
    let arg = rest.strip_suffix(')').ok_or_else(|| RegistryError::UnknownScientist(s.to_string()))?.trim();
    let mut spec = ScientistSpec::named(name.trim());
    match spec.name.as_str() {
        "dumb_visionary" => spec.language = Some(arg.to_string()),
        "enumeration" => spec.class = Some(arg.split(';').map(|x| x.trim().to_string()).collect()),
        "set_driven" | "confidence_annotating" => spec.base = Some(Box::new(parse_scientist(arg)?)),
        _ => return Err(RegistryError::UnknownScientist(s.to_string())),
    }
    Ok(spec)
}
