use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use super::experiment::{ExperimentConfig, Heuristic};
use crate::datasets::{
    builtin_table1, generate, load_cost_matrix, load_strings, DatasetKind, DatasetSpec,
};
use crate::edit::{Alphabet, CostModel};
use crate::heuristic::StringSet;
use crate::{Error, Result};

/// Where a cost model comes from.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum CostSpec {
    Table1,
    /// Levenshtein costs over the dataset alphabet.
    Unit,
    /// Ring-distance substitutions over the dataset alphabet.
    Circular,
    /// Explicit `(|Σ|+1)²` matrix; the (ε, ε) entry is ignored.
    Matrix {
        alphabet: Alphabet,
        rows: Vec<Vec<f64>>,
    },
}

impl CostSpec {
    /// Builds the model over `alphabet`.
    pub fn build(&self, alphabet: &Alphabet) -> Result<CostModel> {
        let model = match self {
            CostSpec::Table1 => builtin_table1().1,
            CostSpec::Unit => return Ok(CostModel::unit(alphabet.clone())),
            CostSpec::Circular => return Ok(CostModel::circular(alphabet.clone())),
            CostSpec::Matrix { alphabet, rows } => CostModel::from_rows(alphabet.clone(), rows)?,
        };
        if model.alphabet() == alphabet {
            Ok(model)
        } else {
            model.reindexed(alphabet)
        }
    }

    pub fn from_model(model: &CostModel) -> Self {
        CostSpec::Matrix {
            alphabet: model.alphabet().clone(),
            rows: model.rows(),
        }
    }
}

/// Where the strings of an experiment come from.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "source", rename_all = "snake_case")]
pub enum DatasetSource {
    /// Repetition `r` uses the spec with `seed + r`.
    Generate { spec: DatasetSpec },
    /// A fixed set; repetitions draw different subsets.
    Strings {
        alphabet: Alphabet,
        strings: Vec<String>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        labels: Option<Vec<Option<String>>>,
    },
}

impl DatasetSource {
    pub fn from_set(set: &StringSet) -> Self {
        let labels: Vec<Option<String>> = set.members().iter().map(|m| m.label.clone()).collect();
        DatasetSource::Strings {
            alphabet: set.alphabet().clone(),
            strings: set
                .members()
                .iter()
                .map(|m| set.alphabet().decode(&m.seq))
                .collect(),
            labels: labels.iter().any(Option::is_some).then_some(labels),
        }
    }

    pub fn materialize(&self, repetition: usize) -> Result<StringSet> {
        match self {
            DatasetSource::Generate { spec } => {
                let mut spec = spec.clone();
                spec.seed = spec.seed.wrapping_add(repetition as u64);
                Ok(generate(&spec)?.set)
            }
            DatasetSource::Strings {
                alphabet,
                strings,
                labels,
            } => {
                let seqs = strings
                    .iter()
                    .map(|s| alphabet.encode(s))
                    .collect::<Result<Vec<_>>>()?;
                let labels = labels.clone().unwrap_or_else(|| vec![None; seqs.len()]);
                if labels.len() != seqs.len() {
                    return Err(Error::Input("labels and strings differ in length".into()));
                }
                StringSet::with_labels(alphabet.clone(), labels.into_iter().zip(seqs).collect())
            }
        }
    }

    /// Alphabet of the materialized sets.
    pub fn alphabet(&self) -> Result<Alphabet> {
        match self {
            DatasetSource::Generate { spec } => Alphabet::numbered(spec.alphabet_size),
            DatasetSource::Strings { alphabet, .. } => Ok(alphabet.clone()),
        }
    }
}

/// Self-contained experiment description, as sent to the service.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BenchRequest {
    pub dataset: DatasetSource,
    pub costs: CostSpec,
    pub experiment: ExperimentConfig,
}

/// Parsed `key=value` benchmark configuration file.
///
/// ```text
/// # dataset: either input=<file> or generator keys
/// dataset=perturbed_cluster
/// alphabet_size=8
/// count=80
/// mean_length=60
/// length_jitter=5
/// noise_rate=0.15
/// costs=circular            # table1 | unit | circular | <matrix file>
/// heuristics=repercussion,frequency_cost,frequency,sweep
/// set_sizes=20,40,80
/// repetitions=10
/// seed=42
/// out=results.csv
/// plots=plots/
/// ```
#[derive(Debug, Clone, PartialEq)]
pub struct BenchConfig {
    pub input: Option<PathBuf>,
    pub generator: DatasetSpec,
    pub costs: String,
    pub experiment: ExperimentConfig,
    pub out: Option<PathBuf>,
    pub plots: Option<PathBuf>,
}

impl BenchConfig {
    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path)?;
        let mut config = Self::parse(&text, path)?;
        // relative file references resolve against the config's directory
        let base = path.parent().unwrap_or(Path::new(""));
        let rebase = |p: &mut PathBuf| {
            if p.is_relative() {
                *p = base.join(&*p);
            }
        };
        config.input.as_mut().map(rebase);
        config.out.as_mut().map(rebase);
        config.plots.as_mut().map(rebase);
        if !matches!(config.costs.as_str(), "table1" | "unit" | "circular") {
            let mut p = PathBuf::from(&config.costs);
            rebase(&mut p);
            config.costs = p.to_string_lossy().into_owned();
        }
        Ok(config)
    }

    pub fn parse(text: &str, path: &Path) -> Result<Self> {
        let mut config = BenchConfig {
            input: None,
            generator: DatasetSpec {
                kind: DatasetKind::PerturbedCluster,
                alphabet_size: 8,
                count: 20,
                mean_length: 60,
                length_jitter: 0,
                noise_rate: 0.1,
                seed: 0,
            },
            costs: "unit".into(),
            experiment: ExperimentConfig::default(),
            out: None,
            plots: None,
        };
        let mut dataset_seed = None;
        for (i, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let err = |m: String| Error::parse(path, i + 1, m);
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| err(format!("expected key=value, found {line:?}")))?;
            let (key, value) = (key.trim(), value.trim());
            let num = |v: &str| {
                v.parse::<u64>()
                    .map_err(|_| err(format!("bad number {v:?} for {key}")))
            };
            match key {
                "input" => config.input = Some(PathBuf::from(value)),
                "costs" => config.costs = value.to_string(),
                "out" => config.out = Some(PathBuf::from(value)),
                "plots" => config.plots = Some(PathBuf::from(value)),
                "seed" => config.experiment.seed = num(value)?,
                "dataset_seed" => dataset_seed = Some(num(value)?),
                "repetitions" => config.experiment.repetitions = num(value)? as usize,
                "set_sizes" => {
                    config.experiment.set_sizes = value
                        .split(',')
                        .map(|v| num(v.trim()).map(|n| n as usize))
                        .collect::<Result<_>>()?
                }
                "heuristics" => {
                    config.experiment.heuristics = value
                        .split(',')
                        .map(|v| {
                            v.trim()
                                .parse::<Heuristic>()
                                .map_err(|e| err(e.to_string()))
                        })
                        .collect::<Result<_>>()?
                }
                "positive_only" => {
                    config.experiment.positive_only = parse_bool(value).map_err(err)?
                }
                "deletion_repercussion" => {
                    config.experiment.deletion_repercussion = parse_bool(value).map_err(err)?
                }
                "tie_seed" => config.experiment.tie_seed = Some(num(value)?),
                "max_iterations" => {
                    config.experiment.max_iterations = match value {
                        "" | "none" | "unbounded" => None,
                        v => Some(num(v)? as usize),
                    }
                }
                other => config
                    .generator
                    .set(other, value)
                    .map_err(|e| err(e.to_string()))?,
            }
        }
        // the dataset seed follows the experiment seed unless given explicitly
        config.generator.seed = dataset_seed.unwrap_or(config.experiment.seed);
        if config.input.is_none() {
            config.generator.validate()?;
        }
        config.experiment.validate()?;
        Ok(config)
    }

    /// Loads referenced files and produces a self-contained request.
    pub fn to_request(&self) -> Result<BenchRequest> {
        let dataset = match &self.input {
            Some(path) => DatasetSource::from_set(&load_strings(path)?),
            None => DatasetSource::Generate {
                spec: self.generator.clone(),
            },
        };
        let costs = match self.costs.as_str() {
            "table1" => CostSpec::Table1,
            "unit" => CostSpec::Unit,
            "circular" => CostSpec::Circular,
            path => CostSpec::from_model(&load_cost_matrix(path, Some(&dataset.alphabet()?))?),
        };
        Ok(BenchRequest {
            dataset,
            costs,
            experiment: self.experiment.clone(),
        })
    }
}

fn parse_bool(v: &str) -> std::result::Result<bool, String> {
    match v {
        "true" | "yes" | "1" | "on" => Ok(true),
        "false" | "no" | "0" | "off" => Ok(false),
        _ => Err(format!("bad boolean {v:?}")),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_full_config() {
        let text =
            "dataset=perturbed_cluster\nalphabet_size=8\ncount=40 # members\nmean_length=30\n\
                    noise_rate=0.15\ncosts=circular\nheuristics=repercussion,freqcost,sweep\n\
                    set_sizes=10,20\nrepetitions=3\nseed=5\nmax_iterations=7\nout=r.csv\n";
        let c = BenchConfig::parse(text, Path::new("b.conf")).unwrap();
        assert_eq!(c.generator.count, 40);
        assert_eq!(c.generator.seed, 5);
        assert_eq!(
            c.experiment.heuristics,
            vec![
                Heuristic::Repercussion,
                Heuristic::FrequencyCost,
                Heuristic::Sweep
            ]
        );
        assert_eq!(c.experiment.set_sizes, vec![10, 20]);
        assert_eq!(c.experiment.max_iterations, Some(7));
        assert_eq!(c.out, Some(PathBuf::from("r.csv")));
        let req = c.to_request().unwrap();
        assert_eq!(req.costs, CostSpec::Circular);
    }

    #[test]
    fn reports_bad_lines() {
        let err = BenchConfig::parse("seed=1\nrepetitions=x\n", Path::new("b.conf")).unwrap_err();
        assert!(matches!(err, Error::Parse { line: 2, .. }));
        assert!(BenchConfig::parse("nonsense\n", Path::new("b")).is_err());
        assert!(BenchConfig::parse("heuristics=magic\n", Path::new("b")).is_err());
        assert!(BenchConfig::parse("repetitions=0\n", Path::new("b")).is_err());
    }

    #[test]
    fn strings_source_round_trip() {
        let (a, _) = builtin_table1();
        let set = StringSet::from_strs(a, &["01", "4"]).unwrap();
        let src = DatasetSource::from_set(&set);
        assert_eq!(src.materialize(3).unwrap(), set);
    }

    #[test]
    fn cost_spec_reindexes() {
        let a = Alphabet::new("4210".chars()).unwrap();
        let m = CostSpec::Table1.build(&a).unwrap();
        assert_eq!(m.sub(0, 3), 4.0);
        let other = Alphabet::numbered(4).unwrap();
        assert!(CostSpec::Table1.build(&other).is_err());
    }
}
