use std::str::FromStr;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::edit::{Alphabet, Sym};
use crate::heuristic::{Member, StringSet};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DatasetKind {
    /// Independent uniform symbols.
    ProteinLike,
    /// First-order Markov walk over directions that mostly keeps or turns by one.
    ChaincodeLike,
    /// Noisy copies of one random center string.
    PerturbedCluster,
}

impl FromStr for DatasetKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "protein_like" | "protein" => Ok(DatasetKind::ProteinLike),
            "chaincode_like" | "chaincode" => Ok(DatasetKind::ChaincodeLike),
            "perturbed_cluster" | "cluster" => Ok(DatasetKind::PerturbedCluster),
            other => Err(Error::Input(format!("unknown dataset kind {other:?}"))),
        }
    }
}

/// Parameters of a synthetic dataset.
///
/// Generation uses ChaCha8 seeded with `seed` (`rand_chacha`), so identical
/// specs give identical datasets on every platform.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DatasetSpec {
    pub kind: DatasetKind,
    pub alphabet_size: usize,
    pub count: usize,
    pub mean_length: usize,
    #[serde(default)]
    pub length_jitter: usize,
    /// Per-position mutation probability (perturbed_cluster only).
    #[serde(default)]
    pub noise_rate: f64,
    #[serde(default)]
    pub seed: u64,
}

impl DatasetSpec {
    pub fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(Error::Input(format!("invalid dataset spec: {m}")));
        if self.count < 1 {
            return bad("count must be at least 1".into());
        }
        if self.mean_length < 1 {
            return bad("mean_length must be at least 1".into());
        }
        if self.alphabet_size < 2 {
            return bad("alphabet_size must be at least 2".into());
        }
        if !(0.0..=1.0).contains(&self.noise_rate) {
            return bad(format!("noise_rate {} outside [0, 1]", self.noise_rate));
        }
        Alphabet::numbered(self.alphabet_size).map(|_| ())
    }

    /// Parses `kind=...,alphabet_size=...,count=...` (missing keys take the
    /// defaults of a 20 × 60 perturbed cluster over 8 symbols).
    pub fn parse_kv(text: &str) -> Result<Self> {
        let mut spec = DatasetSpec {
            kind: DatasetKind::PerturbedCluster,
            alphabet_size: 8,
            count: 20,
            mean_length: 60,
            length_jitter: 0,
            noise_rate: 0.1,
            seed: 0,
        };
        for part in text.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            let (key, value) = part
                .split_once('=')
                .ok_or_else(|| Error::Input(format!("expected key=value, found {part:?}")))?;
            spec.set(key.trim(), value.trim())?;
        }
        spec.validate()?;
        Ok(spec)
    }

    /// Sets one field by name. Returns an error for unknown keys.
    pub fn set(&mut self, key: &str, value: &str) -> Result<()> {
        fn num<T: FromStr>(key: &str, v: &str) -> Result<T> {
            v.parse()
                .map_err(|_| Error::Input(format!("bad value {v:?} for {key}")))
        }
        match key {
            "kind" | "dataset" => self.kind = value.parse()?,
            "alphabet_size" | "alphabet" => self.alphabet_size = num(key, value)?,
            "count" => self.count = num(key, value)?,
            "mean_length" | "mean" => self.mean_length = num(key, value)?,
            "length_jitter" | "jitter" => self.length_jitter = num(key, value)?,
            "noise_rate" | "noise" => self.noise_rate = num(key, value)?,
            "seed" | "dataset_seed" => self.seed = num(key, value)?,
            other => return Err(Error::Input(format!("unknown dataset key {other:?}"))),
        }
        Ok(())
    }
}

/// A generated set, plus the planted center for perturbed clusters.
#[derive(Debug, Clone, PartialEq)]
pub struct Dataset {
    pub set: StringSet,
    pub center: Option<Vec<Sym>>,
}

pub fn gen_dataset(spec: &DatasetSpec) -> Result<StringSet> {
    generate(spec).map(|d| d.set)
}

pub fn generate(spec: &DatasetSpec) -> Result<Dataset> {
    spec.validate()?;
    let alphabet = Alphabet::numbered(spec.alphabet_size)?;
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let n = spec.alphabet_size as Sym;
    let (seqs, center) = match spec.kind {
        DatasetKind::ProteinLike => {
            let seqs = (0..spec.count)
                .map(|_| {
                    let len = draw_length(spec, &mut rng);
                    (0..len).map(|_| rng.gen_range(0..n)).collect()
                })
                .collect();
            (seqs, None)
        }
        DatasetKind::ChaincodeLike => {
            let seqs = (0..spec.count)
                .map(|_| {
                    let len = draw_length(spec, &mut rng);
                    contour_walk(len, n, &mut rng)
                })
                .collect();
            (seqs, None)
        }
        DatasetKind::PerturbedCluster => {
            let len = draw_length(spec, &mut rng);
            let center: Vec<Sym> = (0..len).map(|_| rng.gen_range(0..n)).collect();
            let seqs = (0..spec.count)
                .map(|_| mutate(&center, spec.noise_rate, n, &mut rng))
                .collect();
            (seqs, Some(center))
        }
    };
    Ok(Dataset {
        set: StringSet::new(alphabet, seqs)?,
        center,
    })
}

fn draw_length(spec: &DatasetSpec, rng: &mut ChaCha8Rng) -> usize {
    let lo = spec.mean_length.saturating_sub(spec.length_jitter).max(1);
    let hi = spec.mean_length + spec.length_jitter;
    rng.gen_range(lo..=hi)
}

fn contour_walk(len: usize, n: Sym, rng: &mut ChaCha8Rng) -> Vec<Sym> {
    let mut out = Vec::with_capacity(len);
    let mut dir = rng.gen_range(0..n);
    for _ in 0..len {
        out.push(dir);
        let r: f64 = rng.gen();
        dir = if r < 0.4 {
            dir
        } else if r < 0.65 {
            (dir + 1) % n
        } else if r < 0.9 {
            (dir + n - 1) % n
        } else {
            rng.gen_range(0..n)
        };
    }
    out
}

fn mutate(center: &[Sym], noise: f64, n: Sym, rng: &mut ChaCha8Rng) -> Vec<Sym> {
    let mut out = Vec::with_capacity(center.len() + 4);
    for &c in center {
        if rng.gen_bool(noise) {
            if rng.gen_bool(0.5) {
                // substitute by a different symbol
                let shift = rng.gen_range(1..n);
                out.push((c + shift) % n);
            }
        } else {
            out.push(c);
        }
        if rng.gen_bool(noise) {
            out.push(rng.gen_range(0..n));
        }
    }
    out
}

/// A labelled Freeman chain code over the eight directions `0..=7`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChainCodeRecord {
    pub label: String,
    pub code: Vec<Sym>,
}

impl ChainCodeRecord {
    pub fn new(label: impl Into<String>, code: Vec<Sym>) -> Result<Self> {
        if let Some(&bad) = code.iter().find(|&&d| d > 7) {
            return Err(Error::SymbolOutOfRange(bad, 8));
        }
        Ok(ChainCodeRecord {
            label: label.into(),
            code,
        })
    }
}

impl TryFrom<&Member> for ChainCodeRecord {
    type Error = Error;

    fn try_from(m: &Member) -> Result<Self> {
        let label = m.label.clone().unwrap_or_else(|| m.id.to_string());
        ChainCodeRecord::new(label, m.seq.clone())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec(kind: DatasetKind) -> DatasetSpec {
        DatasetSpec {
            kind,
            alphabet_size: 8,
            count: 30,
            mean_length: 40,
            length_jitter: 5,
            noise_rate: 0.1,
            seed: 3,
        }
    }

    #[test]
    fn deterministic() {
        for kind in [
            DatasetKind::ProteinLike,
            DatasetKind::ChaincodeLike,
            DatasetKind::PerturbedCluster,
        ] {
            assert_eq!(
                generate(&spec(kind)).unwrap(),
                generate(&spec(kind)).unwrap()
            );
        }
        let mut other = spec(DatasetKind::ProteinLike);
        other.seed = 4;
        assert_ne!(
            gen_dataset(&other).unwrap(),
            gen_dataset(&spec(DatasetKind::ProteinLike)).unwrap()
        );
    }

    #[test]
    fn protein_like_corpus_shape() {
        let s = DatasetSpec {
            kind: DatasetKind::ProteinLike,
            alphabet_size: 23,
            count: 720,
            mean_length: 500,
            length_jitter: 50,
            noise_rate: 0.0,
            seed: 17,
        };
        let set = gen_dataset(&s).unwrap();
        assert_eq!(set.len(), 720);
        assert!(set
            .members()
            .iter()
            .all(|m| (450..=550).contains(&m.seq.len())));
        let mean = set.members().iter().map(|m| m.seq.len()).sum::<usize>() as f64 / 720.0;
        assert!((450.0..=550.0).contains(&mean));
        assert!(set.members().iter().all(|m| m.seq.iter().all(|&c| c < 23)));
    }

    #[test]
    fn singleton_and_zero_noise() {
        let mut s = spec(DatasetKind::ChaincodeLike);
        s.count = 1;
        assert_eq!(gen_dataset(&s).unwrap().len(), 1);
        let mut c = spec(DatasetKind::PerturbedCluster);
        c.noise_rate = 0.0;
        let d = generate(&c).unwrap();
        let center = d.center.unwrap();
        assert!(d.set.members().iter().all(|m| m.seq == center));
    }

    #[test]
    fn chaincode_walk_is_smooth() {
        let set = gen_dataset(&spec(DatasetKind::ChaincodeLike)).unwrap();
        let (mut near, mut total) = (0, 0);
        for m in set.members() {
            for w in m.seq.windows(2) {
                let d = w[0].abs_diff(w[1]);
                total += 1;
                if d.min(8 - d) <= 1 {
                    near += 1;
                }
            }
            ChainCodeRecord::try_from(m).unwrap();
        }
        assert!(near as f64 / total as f64 > 0.85);
    }

    #[test]
    fn invalid_specs() {
        let mut s = spec(DatasetKind::ProteinLike);
        s.count = 0;
        assert!(gen_dataset(&s).is_err());
        let mut s = spec(DatasetKind::ProteinLike);
        s.alphabet_size = 1;
        assert!(gen_dataset(&s).is_err());
        let mut s = spec(DatasetKind::PerturbedCluster);
        s.noise_rate = 1.5;
        assert!(gen_dataset(&s).is_err());
        assert!(ChainCodeRecord::new("A", vec![0, 8]).is_err());
    }

    #[test]
    fn parse_kv_spec() {
        let s = DatasetSpec::parse_kv(
            "kind=protein_like,alphabet_size=23,count=5,mean_length=10,seed=9",
        )
        .unwrap();
        assert_eq!(s.kind, DatasetKind::ProteinLike);
        assert_eq!(
            (s.alphabet_size, s.count, s.mean_length, s.seed),
            (23, 5, 10, 9)
        );
        assert!(DatasetSpec::parse_kv("kind=unknown").is_err());
        assert!(DatasetSpec::parse_kv("colour=blue").is_err());
    }
}
