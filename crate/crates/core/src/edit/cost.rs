use serde::{Deserialize, Serialize};

use super::{Alphabet, Sym, COST_TOLERANCE};
use crate::{Error, Result};

/// A property a cost matrix fails. Indices are matrix indices, ε being the
/// last one.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Violation {
    Negative {
        from: usize,
        to: usize,
    },
    NonZeroDiagonal {
        symbol: usize,
    },
    Asymmetric {
        a: usize,
        b: usize,
    },
    /// `cost[from][to] > cost[from][via] + cost[via][to]`.
    Triangle {
        from: usize,
        via: usize,
        to: usize,
    },
}

/// Checks a raw square matrix of dimension `alphabet_len + 1` for
/// non-negativity, a zero diagonal, symmetry and the triangle inequality.
///
/// The (ε, ε) entry is ignored and treated as zero.
pub fn validate_cost_matrix(alphabet_len: usize, rows: &[Vec<f64>]) -> Result<Vec<Violation>> {
    let dim = alphabet_len + 1;
    check_dimension(dim, rows)?;
    let eps = alphabet_len;
    let at = |i: usize, j: usize| {
        if i == eps && j == eps {
            0.0
        } else {
            rows[i][j]
        }
    };

    let mut out = Vec::new();
    for i in 0..dim {
        for j in 0..dim {
            if !(i == eps && j == eps) && at(i, j) < 0.0 {
                out.push(Violation::Negative { from: i, to: j });
            }
        }
    }
    for i in 0..alphabet_len {
        if at(i, i) != 0.0 {
            out.push(Violation::NonZeroDiagonal { symbol: i });
        }
    }
    for i in 0..dim {
        for j in i + 1..dim {
            if (at(i, j) - at(j, i)).abs() > COST_TOLERANCE {
                out.push(Violation::Asymmetric { a: i, b: j });
            }
        }
    }
    for from in 0..dim {
        for to in 0..dim {
            if from == to {
                continue;
            }
            for via in 0..dim {
                if via == from || via == to {
                    continue;
                }
                if at(from, to) > at(from, via) + at(via, to) + COST_TOLERANCE {
                    out.push(Violation::Triangle { from, via, to });
                }
            }
        }
    }
    Ok(out)
}

fn check_dimension(dim: usize, rows: &[Vec<f64>]) -> Result<()> {
    if let Some(bad) = rows.iter().find(|r| r.len() != dim) {
        return Err(Error::Dimension {
            expected: dim,
            rows: rows.len(),
            cols: bad.len(),
        });
    }
    if rows.len() != dim {
        return Err(Error::Dimension {
            expected: dim,
            rows: rows.len(),
            cols: rows.first().map_or(0, Vec::len),
        });
    }
    Ok(())
}

/// Edit costs ω over an alphabet extended with ε.
///
/// Entries are finite and non-negative and matches are free. Whether the
/// matrix is also a metric is recorded in [`CostModel::is_metric`].
#[derive(Debug, Clone, PartialEq)]
pub struct CostModel {
    alphabet: Alphabet,
    dim: usize,
    costs: Vec<f64>,
    metric_validated: bool,
}

impl CostModel {
    /// Builds a model from a `(|Σ|+1)²` matrix. The (ε, ε) entry is ignored.
    pub fn from_rows(alphabet: Alphabet, rows: &[Vec<f64>]) -> Result<Self> {
        let dim = alphabet.len() + 1;
        check_dimension(dim, rows)?;
        let eps = alphabet.epsilon();
        let mut costs = Vec::with_capacity(dim * dim);
        for (i, row) in rows.iter().enumerate() {
            for (j, &c) in row.iter().enumerate() {
                if i == eps && j == eps {
                    costs.push(0.0);
                    continue;
                }
                if !c.is_finite() || c < 0.0 {
                    return Err(Error::InvalidCosts(format!(
                        "cost[{i}][{j}] = {c} must be finite and non-negative"
                    )));
                }
                if i == j && c != 0.0 {
                    return Err(Error::InvalidCosts(format!(
                        "diagonal cost[{i}][{i}] = {c} must be 0"
                    )));
                }
                costs.push(c);
            }
        }
        let mut model = CostModel {
            alphabet,
            dim,
            costs,
            metric_validated: false,
        };
        model.metric_validated = model.violations().is_empty();
        Ok(model)
    }

    /// Levenshtein costs: every substitution, insertion and deletion costs 1.
    pub fn unit(alphabet: Alphabet) -> Self {
        let dim = alphabet.len() + 1;
        let rows: Vec<Vec<f64>> = (0..dim)
            .map(|i| (0..dim).map(|j| if i == j { 0.0 } else { 1.0 }).collect())
            .collect();
        CostModel::from_rows(alphabet, &rows).expect("unit costs are well formed")
    }

    /// Cyclic direction costs for chain-code-like alphabets: substituting `a`
    /// by `b` costs their distance around a ring of `n` symbols, and an
    /// insertion or deletion costs `ceil(floor(n / 2) / 2)`, the smallest
    /// integer that keeps the model metric.
    pub fn circular(alphabet: Alphabet) -> Self {
        let n = alphabet.len();
        let indel = ((n / 2) as f64 / 2.0).ceil().max(1.0);
        let dim = n + 1;
        let rows: Vec<Vec<f64>> = (0..dim)
            .map(|i| {
                (0..dim)
                    .map(|j| match (i == n, j == n) {
                        (true, true) => 0.0,
                        (true, false) | (false, true) => indel,
                        _ => {
                            let d = i.abs_diff(j);
                            d.min(n - d) as f64
                        }
                    })
                    .collect()
            })
            .collect();
        CostModel::from_rows(alphabet, &rows).expect("circular costs are well formed")
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    /// Whether symmetry and the triangle inequality were verified.
    pub fn is_metric(&self) -> bool {
        self.metric_validated
    }

    /// All violated properties; empty for a metric model.
    pub fn violations(&self) -> Vec<Violation> {
        validate_cost_matrix(self.alphabet.len(), &self.rows())
            .expect("dimension checked on construction")
    }

    /// ω(from → to); `None` stands for ε.
    #[inline]
    pub fn cost(&self, from: Option<Sym>, to: Option<Sym>) -> f64 {
        let eps = self.dim - 1;
        let i = from.map_or(eps, |c| c as usize);
        let j = to.map_or(eps, |c| c as usize);
        self.costs[i * self.dim + j]
    }

    #[inline]
    pub fn sub(&self, a: Sym, b: Sym) -> f64 {
        self.costs[a as usize * self.dim + b as usize]
    }

    #[inline]
    pub fn del(&self, a: Sym) -> f64 {
        self.costs[a as usize * self.dim + self.dim - 1]
    }

    #[inline]
    pub fn ins(&self, b: Sym) -> f64 {
        self.costs[(self.dim - 1) * self.dim + b as usize]
    }

    /// Full matrix, (ε, ε) reported as 0.
    pub fn rows(&self) -> Vec<Vec<f64>> {
        self.costs.chunks(self.dim).map(<[f64]>::to_vec).collect()
    }

    /// The same costs indexed by `target`, which must hold exactly this
    /// model's symbols (in any order).
    pub fn reindexed(&self, target: &Alphabet) -> Result<Self> {
        if let Some(c) = self
            .alphabet
            .symbols()
            .iter()
            .find(|c| target.code(**c).is_none())
        {
            return Err(Error::Input(format!(
                "symbol {c:?} is outside the alphabet {target}"
            )));
        }
        if self.alphabet.len() != target.len() {
            return Err(Error::Input(format!(
                "cost matrix does not cover the alphabet {target}"
            )));
        }
        let eps = self.alphabet.epsilon();
        let map: Vec<usize> = target
            .symbols()
            .iter()
            .map(|c| self.alphabet.code(*c).expect("checked above") as usize)
            .chain(std::iter::once(eps))
            .collect();
        let rows: Vec<Vec<f64>> = map
            .iter()
            .map(|&i| map.iter().map(|&j| self.costs[i * self.dim + j]).collect())
            .collect();
        CostModel::from_rows(target.clone(), &rows)
    }

    /// Every cost multiplied by `factor > 0`.
    pub fn scaled(&self, factor: f64) -> Result<Self> {
        if !(factor > 0.0 && factor.is_finite()) {
            return Err(Error::InvalidCosts(format!(
                "scale factor {factor} must be positive"
            )));
        }
        let rows: Vec<Vec<f64>> = self
            .rows()
            .into_iter()
            .map(|r| r.into_iter().map(|c| c * factor).collect())
            .collect();
        CostModel::from_rows(self.alphabet.clone(), &rows)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn unit_rows(n: usize) -> Vec<Vec<f64>> {
        (0..=n)
            .map(|i| (0..=n).map(|j| if i == j { 0.0 } else { 1.0 }).collect())
            .collect()
    }

    #[test]
    fn unit_costs_are_metric() {
        assert!(validate_cost_matrix(3, &unit_rows(3)).unwrap().is_empty());
        assert!(CostModel::unit(Alphabet::numbered(3).unwrap()).is_metric());
    }

    #[test]
    fn broken_triangle_is_reported() {
        let mut rows = unit_rows(3);
        rows[0][1] = 5.0;
        rows[0][2] = 1.0;
        rows[2][1] = 1.0;
        let report = validate_cost_matrix(3, &rows).unwrap();
        assert!(report.contains(&Violation::Triangle {
            from: 0,
            via: 2,
            to: 1
        }));
    }

    #[test]
    fn negative_and_diagonal_are_reported() {
        let mut rows = unit_rows(2);
        rows[0][1] = -1.0;
        rows[1][1] = 2.0;
        let report = validate_cost_matrix(2, &rows).unwrap();
        assert!(report.contains(&Violation::Negative { from: 0, to: 1 }));
        assert!(report.contains(&Violation::NonZeroDiagonal { symbol: 1 }));
        assert!(report.contains(&Violation::Asymmetric { a: 0, b: 1 }));
    }

    #[test]
    fn dimension_mismatch_is_structural() {
        let rows = unit_rows(2);
        assert!(matches!(
            validate_cost_matrix(3, &rows),
            Err(Error::Dimension { .. })
        ));
        let mut ragged = unit_rows(2);
        ragged[1].pop();
        assert!(matches!(
            validate_cost_matrix(2, &ragged),
            Err(Error::Dimension { .. })
        ));
        let a = Alphabet::numbered(3).unwrap();
        assert!(CostModel::from_rows(a, &rows).is_err());
    }

    #[test]
    fn circular_model() {
        let m = CostModel::circular(Alphabet::numbered(8).unwrap());
        assert!(m.is_metric());
        assert_eq!(m.sub(0, 7), 1.0);
        assert_eq!(m.sub(1, 5), 4.0);
        assert_eq!(m.del(3), 2.0);
        assert_eq!(m.ins(3), 2.0);
        let p = CostModel::circular(Alphabet::numbered(23).unwrap());
        assert!(p.is_metric());
        assert_eq!(p.ins(0), 6.0);
    }

    #[test]
    fn epsilon_diagonal_is_ignored() {
        let mut rows = unit_rows(2);
        rows[2][2] = f64::NAN;
        let m = CostModel::from_rows(Alphabet::numbered(2).unwrap(), &rows).unwrap();
        assert_eq!(m.cost(None, None), 0.0);
        assert_eq!(m.cost(Some(0), None), 1.0);
    }

    #[test]
    fn scaling_preserves_metric() {
        let m = CostModel::circular(Alphabet::numbered(8).unwrap());
        let s = m.scaled(2.5).unwrap();
        assert!(s.is_metric());
        assert_eq!(s.sub(0, 2), 5.0);
        assert!(m.scaled(0.0).is_err());
    }
}
