//! Flat `key = value` plan files.
//!
//! ```text
//! file    = { line }
//! line    = [ entry ] [ "#" { any } ] newline
//! entry   = key "=" value
//! key     = 1*( "a".."z" | "0".."9" | "_" | "." )
//! value   = item { "," item }
//! item    = 1*( any except "," and "#" )
//! ```
//!
//! Whitespace around keys, `=`, items and commas is ignored. Keys may appear
//! once. See the README for the key list.

use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use super::{AlgorithmSpec, ExperimentPlan, Family, InstanceSpec};
use crate::algorithms::{MioConfig, MosaConfig, WtsConfig};
use crate::problems::SutKind;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub struct ConfigError {
    /// 1-based line, or `None` for errors about the file as a whole.
    pub line: Option<usize>,
    pub message: String,
}

impl fmt::Display for ConfigError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.line {
            Some(line) => write!(f, "config line {line}: {}", self.message),
            None => write!(f, "config: {}", self.message),
        }
    }
}

fn at(line: usize, message: impl Into<String>) -> ConfigError {
    ConfigError {
        line: Some(line),
        message: message.into(),
    }
}

fn whole(message: impl Into<String>) -> ConfigError {
    ConfigError {
        line: None,
        message: message.into(),
    }
}

struct Entry<'a> {
    line: usize,
    key: &'a str,
    items: Vec<&'a str>,
}

impl Entry<'_> {
    fn single(&self) -> Result<&str, ConfigError> {
        match self.items.as_slice() {
            [one] => Ok(one),
            _ => Err(at(self.line, format!("{} takes a single value", self.key))),
        }
    }

    fn number<T: FromStr>(&self) -> Result<T, ConfigError> {
        let raw = self.single()?;
        raw.parse()
            .map_err(|_| at(self.line, format!("{}: cannot parse {raw:?}", self.key)))
    }

    fn flag(&self) -> Result<bool, ConfigError> {
        match self.single()? {
            "true" => Ok(true),
            "false" => Ok(false),
            other => Err(at(
                self.line,
                format!("{}: expected true or false, got {other:?}", self.key),
            )),
        }
    }

    fn list<T: FromStr>(&self) -> Result<Vec<T>, ConfigError> {
        self.items
            .iter()
            .map(|raw| {
                raw.parse()
                    .map_err(|_| at(self.line, format!("{}: cannot parse {raw:?}", self.key)))
            })
            .collect()
    }
}

fn tokenize(text: &str) -> Result<Vec<Entry<'_>>, ConfigError> {
    let mut entries = Vec::new();
    let mut seen = HashSet::new();
    for (index, raw) in text.lines().enumerate() {
        let line = index + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let Some((key, value)) = content.split_once('=') else {
            return Err(at(line, format!("expected key = value, got {content:?}")));
        };
        let key = key.trim();
        if key.is_empty()
            || !key
                .chars()
                .all(|c| c.is_ascii_lowercase() || c.is_ascii_digit() || c == '_' || c == '.')
        {
            return Err(at(line, format!("invalid key {key:?}")));
        }
        let items: Vec<&str> = value.split(',').map(str::trim).collect();
        if items.iter().any(|i| i.is_empty()) {
            return Err(at(line, format!("{key}: empty value")));
        }
        let canonical = if key == "z" { "params" } else { key };
        if !seen.insert(canonical) {
            return Err(at(line, format!("duplicate key {key}")));
        }
        entries.push(Entry { line, key, items });
    }
    Ok(entries)
}

/// Parses a plan file. Unknown keys, duplicates and malformed values are
/// errors carrying the offending line.
pub fn parse_config(text: &str) -> Result<ExperimentPlan, ConfigError> {
    let entries = tokenize(text)?;
    let mut name = String::from("custom");
    let mut family = None;
    let mut params: Option<Vec<usize>> = None;
    let mut suts: Option<(usize, Vec<SutKind>)> = None;
    let mut labels: Option<(usize, Vec<String>)> = None;
    let mut budget = None;
    let mut reps = None;
    let mut seed = None;
    let mut range = None;
    let mut mio = MioConfig::default();
    let mut mosa = MosaConfig::default();
    let mut wts = WtsConfig::default();

    for e in &entries {
        let s = &mut mio.schedule;
        match e.key {
            "name" => name = e.single()?.to_string(),
            "family" => {
                let raw = e.single()?;
                family = Some(
                    Family::parse(raw)
                        .ok_or_else(|| at(e.line, format!("unknown family {raw:?}")))?,
                );
            }
            "params" | "z" => params = Some(e.list()?),
            "suts" => {
                let kinds = e
                    .items
                    .iter()
                    .map(|raw| {
                        SutKind::parse(raw)
                            .ok_or_else(|| at(e.line, format!("unknown SUT {raw:?}")))
                    })
                    .collect::<Result<_, _>>()?;
                suts = Some((e.line, kinds));
            }
            "algorithms" => {
                labels = Some((e.line, e.items.iter().map(|s| s.to_string()).collect()))
            }
            "budget" => budget = Some(e.number()?),
            "reps" => reps = Some(e.number()?),
            "seed" => seed = Some(e.number()?),
            "range" => range = Some(e.number()?),
            "mio.focus_fraction" => s.focus_fraction = e.number()?,
            "mio.pr_start" => s.pr_start = e.number()?,
            "mio.pr_end" => s.pr_end = e.number()?,
            "mio.n_start" => s.n_start = e.number()?,
            "mio.n_end" => s.n_end = e.number()?,
            "mio.m_start" => s.m_start = e.number()?,
            "mio.m_end" => s.m_end = e.number()?,
            "mosa.population_size" => mosa.population_size = e.number()?,
            "mosa.tournament_size" => mosa.tournament_size = e.number()?,
            "mosa.crossover" => mosa.crossover = e.flag()?,
            "mosa.crossover_probability" => mosa.crossover_probability = e.number()?,
            "wts.population_size" => wts.population_size = e.number()?,
            "wts.max_suite_size" => wts.max_suite_size = e.number()?,
            "wts.crossover_probability" => wts.crossover_probability = e.number()?,
            "wts.tournament_size" => wts.tournament_size = e.number()?,
            "wts.add_weight" => wts.add_weight = e.number()?,
            "wts.remove_weight" => wts.remove_weight = e.number()?,
            "wts.modify_weight" => wts.modify_weight = e.number()?,
            "wts.elitism" => wts.elitism = e.number()?,
            other => return Err(at(e.line, format!("unknown key {other}"))),
        }
    }

    let family = family.ok_or_else(|| whole("missing key family"))?;
    let instances = match family {
        Family::Artificial(kind) => {
            if let Some((line, _)) = suts {
                return Err(at(line, "suts only applies to family = sut"));
            }
            let params = params.ok_or_else(|| whole("missing key params"))?;
            params
                .into_iter()
                .map(|param| InstanceSpec::Artificial { kind, param })
                .collect()
        }
        Family::Sut => {
            if params.is_some() {
                return Err(whole("params does not apply to family = sut"));
            }
            let kinds = suts.map_or_else(|| SutKind::ALL.to_vec(), |(_, k)| k);
            kinds.into_iter().map(InstanceSpec::Sut).collect()
        }
    };

    let (labels_line, labels) =
        labels.unwrap_or_else(|| (0, ["MIO", "MOSA", "WTS", "RAND"].map(String::from).to_vec()));
    let mut algorithms = Vec::with_capacity(labels.len());
    for label in &labels {
        let spec = AlgorithmSpec::parse(label)
            .ok_or_else(|| at(labels_line, format!("unknown algorithm {label:?}")))?;
        algorithms.push(match spec {
            AlgorithmSpec::Mio(c) => AlgorithmSpec::Mio(MioConfig {
                fds_enabled: c.fds_enabled,
                ..mio
            }),
            AlgorithmSpec::Mosa(_) => AlgorithmSpec::Mosa(mosa),
            AlgorithmSpec::Wts(_) => AlgorithmSpec::Wts(wts),
            AlgorithmSpec::Random => AlgorithmSpec::Random,
        });
    }

    let mut plan = ExperimentPlan::new(name, instances, algorithms);
    if let Some(b) = budget {
        plan.budget = b;
    }
    if let Some(r) = reps {
        plan.repetitions = r;
    }
    if let Some(s) = seed {
        plan.base_seed = s;
    }
    if let Some(r) = range {
        plan.range = r;
    }
    Ok(plan)
}
