use serde::{Deserialize, Serialize};

use crate::edit::{distance::distance_unchecked, Alphabet, CostModel, Sym};
use crate::{Error, OpCounter, Result};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Member {
    pub id: usize,
    pub label: Option<String>,
    pub seq: Vec<Sym>,
}

/// Non-empty collection of strings over one alphabet. Member ids are their
/// insertion indices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StringSet {
    alphabet: Alphabet,
    members: Vec<Member>,
}

impl StringSet {
    pub fn new(alphabet: Alphabet, seqs: Vec<Vec<Sym>>) -> Result<Self> {
        Self::with_labels(alphabet, seqs.into_iter().map(|s| (None, s)).collect())
    }

    pub fn with_labels(
        alphabet: Alphabet,
        entries: Vec<(Option<String>, Vec<Sym>)>,
    ) -> Result<Self> {
        if entries.is_empty() {
            return Err(Error::EmptySet);
        }
        let members = entries
            .into_iter()
            .enumerate()
            .map(|(id, (label, seq))| {
                alphabet.check(&seq)?;
                Ok(Member { id, label, seq })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(StringSet { alphabet, members })
    }

    /// Parses each string through the alphabet.
    pub fn from_strs<S: AsRef<str>>(alphabet: Alphabet, strings: &[S]) -> Result<Self> {
        let seqs = strings
            .iter()
            .map(|s| alphabet.encode(s.as_ref()))
            .collect::<Result<Vec<_>>>()?;
        Self::new(alphabet, seqs)
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn members(&self) -> &[Member] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    /// A new set made of the members at `indices`, renumbered from 0.
    pub fn subset(&self, indices: &[usize]) -> Result<Self> {
        let entries = indices
            .iter()
            .map(|&i| {
                self.members
                    .get(i)
                    .map(|m| (m.label.clone(), m.seq.clone()))
                    .ok_or_else(|| Error::Input(format!("member index {i} out of range")))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::with_labels(self.alphabet.clone(), entries)
    }

    pub(crate) fn check_compatible(&self, model: &CostModel) -> Result<()> {
        if model.alphabet() != &self.alphabet {
            return Err(Error::Input(format!(
                "cost model alphabet {} differs from string set alphabet {}",
                model.alphabet(),
                self.alphabet
            )));
        }
        Ok(())
    }
}

/// Σ d(candidate, member) over the set.
pub fn sum_distances(
    candidate: &[Sym],
    set: &StringSet,
    model: &CostModel,
    counter: &OpCounter,
) -> Result<f64> {
    set.check_compatible(model)?;
    set.alphabet.check(candidate)?;
    Ok(sum_unchecked(candidate, set, model, counter))
}

pub(crate) fn sum_unchecked(
    candidate: &[Sym],
    set: &StringSet,
    model: &CostModel,
    counter: &OpCounter,
) -> f64 {
    set.members
        .iter()
        .map(|m| distance_unchecked(candidate, &m.seq, model, counter))
        .sum()
}

/// The member with the smallest sum of distances to the set, ties going to
/// the smallest id. Returns the member's index and string.
pub fn set_median(
    set: &StringSet,
    model: &CostModel,
    counter: &OpCounter,
) -> Result<(usize, Vec<Sym>)> {
    set.check_compatible(model)?;
    let n = set.len();
    let mut sums = vec![0.0; n];
    for i in 0..n {
        for j in i + 1..n {
            let d = distance_unchecked(&set.members[i].seq, &set.members[j].seq, model, counter);
            sums[i] += d;
            // d(j, i) equals d(i, j) only for symmetric costs.
            sums[j] += if model.is_metric() {
                d
            } else {
                distance_unchecked(&set.members[j].seq, &set.members[i].seq, model, counter)
            };
        }
    }
    let best = (0..n)
        .min_by(|&a, &b| sums[a].total_cmp(&sums[b]).then(a.cmp(&b)))
        .ok_or(Error::EmptySet)?;
    Ok((best, set.members[best].seq.clone()))
}
