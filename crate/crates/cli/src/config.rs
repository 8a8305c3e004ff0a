//! Job configuration: the JSON file, flag overrides and validation.

use std::path::PathBuf;

use coxeter_hecke::conjugacy::{default_search_cap, Twist};
use coxeter_hecke::hecke::{hecke_from_json, ClassValues, Specialization};
use coxeter_hecke::{CoxeterMatrix, CoxeterSystem, Element, GeneratorSet, HeckeElement, DEFAULT_NODE_BUDGET};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::error::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize, Serialize, clap::ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum Command {
    Classify,
    Orbit,
    ShiftGraph,
    ClassPoly,
    Centralizer,
    Verify,
    Decompose,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::Classify => "classify",
            Command::Orbit => "orbit",
            Command::ShiftGraph => "shift-graph",
            Command::ClassPoly => "class-poly",
            Command::Centralizer => "centralizer",
            Command::Verify => "verify",
            Command::Decompose => "decompose",
        }
    }

    fn emits_dot(self) -> bool {
        matches!(self, Command::Orbit | Command::ShiftGraph)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize, Serialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Dot,
    Both,
}

impl Format {
    pub fn json(self) -> bool {
        self != Format::Dot
    }

    pub fn dot(self) -> bool {
        self != Format::Json
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Deserialize, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Variant {
    #[default]
    Max,
    Min,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawCaps {
    pub length_cap: Option<usize>,
    pub node_budget: Option<usize>,
    pub search_cap: Option<usize>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawOutput {
    pub dir: Option<PathBuf>,
    pub format: Option<Format>,
}

/// The config file as written by the user.
#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawConfig {
    pub matrix: Vec<Vec<i64>>,
    #[serde(default)]
    pub generator_names: Option<Vec<String>>,
    #[serde(rename = "J", default)]
    pub j: Option<Vec<usize>>,
    pub command: Command,
    #[serde(default)]
    pub seeds: Vec<Vec<usize>>,
    #[serde(default)]
    pub caps: RawCaps,
    #[serde(default)]
    pub output: RawOutput,
    #[serde(default)]
    pub specialization: Option<Vec<ClassValues>>,
    #[serde(default)]
    pub element: Option<Value>,
    #[serde(default)]
    pub variant: Option<Variant>,
    #[serde(default)]
    pub twist: Option<Vec<(u8, u8)>>,
}

/// Command-line values that replace the corresponding config entries.
#[derive(Debug, Default)]
pub struct Overrides {
    pub out: Option<PathBuf>,
    pub format: Option<Format>,
    pub cap_length: Option<usize>,
    pub cap_nodes: Option<usize>,
    pub seeds: Vec<String>,
}

#[derive(Debug, Clone, Copy, Serialize)]
pub struct Caps {
    pub length_cap: usize,
    pub node_budget: usize,
    pub search_cap: usize,
}

/// A validated job.
pub struct Job {
    pub sys: CoxeterSystem,
    pub names: Option<Vec<String>>,
    pub j: GeneratorSet,
    pub command: Command,
    pub seeds: Vec<Element>,
    pub caps: Caps,
    pub out_dir: PathBuf,
    pub format: Format,
    pub specialization: Option<Specialization>,
    pub element: Option<HeckeElement>,
    pub variant: Variant,
    pub twist: Option<Twist>,
    /// The effective configuration, embedded in every artifact.
    pub echo: Value,
}

fn invalid(msg: impl Into<String>) -> CliError {
    CliError::Validation(msg.into())
}

pub fn parse_seed(s: &str) -> Result<Vec<usize>, CliError> {
    let s = s.trim();
    if s.is_empty() || s == "e" {
        return Ok(Vec::new());
    }
    s.split(',')
        .map(|t| t.trim().parse::<usize>().map_err(|_| invalid(format!("bad seed {s:?}: expected comma-separated indices"))))
        .collect()
}

fn positive(name: &str, v: Option<usize>, default: usize) -> Result<usize, CliError> {
    match v {
        Some(0) => Err(invalid(format!("{name} must be positive"))),
        Some(v) => Ok(v),
        None => Ok(default),
    }
}

impl Job {
    pub fn from_json(text: &str, ov: Overrides) -> Result<Job, CliError> {
        let raw: RawConfig = serde_json::from_str(text).map_err(|e| invalid(format!("config: {e}")))?;
        Job::build(raw, ov)
    }

    fn build(raw: RawConfig, ov: Overrides) -> Result<Job, CliError> {
        let matrix = CoxeterMatrix::new(raw.matrix.clone()).map_err(|e| invalid(e.to_string()))?;
        let sys = CoxeterSystem::new(matrix);
        let rank = sys.rank();

        if let Some(names) = &raw.generator_names {
            if names.len() != rank {
                return Err(invalid(format!("{} generator names for rank {rank}", names.len())));
            }
            let mut sorted = names.clone();
            sorted.sort();
            sorted.dedup();
            if sorted.len() != rank || names.iter().any(|n| n.trim().is_empty() || n.contains(char::is_whitespace)) {
                return Err(invalid("generator names must be distinct, non-empty and free of whitespace"));
            }
        }

        let j_indices = raw.j.clone().unwrap_or_else(|| (0..rank).collect());
        let j = sys.subset(&j_indices).map_err(|e| invalid(format!("J: {e}")))?;

        let seed_words: Vec<Vec<usize>> = if ov.seeds.is_empty() {
            raw.seeds.clone()
        } else {
            ov.seeds.iter().map(|s| parse_seed(s)).collect::<Result<_, _>>()?
        };
        let seeds = seed_words
            .iter()
            .map(|w| sys.normalize(w).map_err(|e| invalid(format!("seed {w:?}: {e}"))))
            .collect::<Result<Vec<_>, _>>()?;

        let caps = Caps {
            length_cap: positive("length cap", ov.cap_length.or(raw.caps.length_cap), 6)?,
            node_budget: positive("node budget", ov.cap_nodes.or(raw.caps.node_budget), DEFAULT_NODE_BUDGET)?,
            search_cap: positive("search cap", raw.caps.search_cap, default_search_cap(&sys, &j).max(1))?,
        };

        let command = raw.command;
        let format = ov.format.or(raw.output.format).unwrap_or(Format::Json);
        if format.dot() && !command.emits_dot() {
            return Err(invalid(format!("{} produces JSON only", command.name())));
        }
        if matches!(command, Command::Classify | Command::Orbit) && seeds.is_empty() {
            return Err(invalid(format!("{} needs at least one seed", command.name())));
        }
        let variant = raw.variant.unwrap_or_default();
        if raw.variant.is_some() && command != Command::ClassPoly {
            return Err(invalid("variant applies to class-poly only"));
        }
        if raw.element.is_some() && command != Command::Verify {
            return Err(invalid("element applies to verify only"));
        }

        let twist = match &raw.twist {
            None => None,
            Some(_) if command != Command::Orbit => return Err(invalid("twist applies to orbit only")),
            Some(pairs) => Some(Twist::new(&sys, &j, pairs).map_err(|e| invalid(e.to_string()))?),
        };

        let specialization = match &raw.specialization {
            None => None,
            Some(v) if v.len() != sys.n_classes() => {
                return Err(invalid(format!(
                    "specialization lists {} classes, system has {}",
                    v.len(),
                    sys.n_classes()
                )))
            }
            Some(v) => Some(Specialization::new(v.iter().map(ClassValues::to_pair).collect()).map_err(|e| invalid(e.to_string()))?),
        };

        let element = match &raw.element {
            None => None,
            Some(v) => Some(hecke_from_json(&sys, v).map_err(|e| invalid(format!("element: {e}")))?),
        };

        let echo = json!({
            "matrix": raw.matrix,
            "generator_names": raw.generator_names,
            "J": j.members(),
            "command": command.name(),
            "seeds": seeds.iter().map(Element::word).collect::<Vec<_>>(),
            "variant": (command == Command::ClassPoly).then_some(variant),
            "twist": raw.twist,
            "specialization": raw.specialization,
            "element": raw.element,
        });

        Ok(Job {
            sys,
            names: raw.generator_names,
            j,
            command,
            seeds,
            caps,
            out_dir: ov.out.or(raw.output.dir).unwrap_or_else(|| PathBuf::from("coxhecke-out")),
            format,
            specialization,
            element,
            variant,
            twist,
            echo,
        })
    }
}
