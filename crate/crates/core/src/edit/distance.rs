use super::{approx_eq, CostModel, EditOp, EditScript, Sym};
use crate::{OpCounter, Result};

/// Minimum total cost of transforming `s1` into `s2`.
pub fn distance(s1: &[Sym], s2: &[Sym], model: &CostModel) -> Result<f64> {
    distance_counted(s1, s2, model, &OpCounter::new())
}

/// [`distance`], recording the DP cells it evaluates in `counter`.
pub fn distance_counted(
    s1: &[Sym],
    s2: &[Sym],
    model: &CostModel,
    counter: &OpCounter,
) -> Result<f64> {
    model.alphabet().check(s1)?;
    model.alphabet().check(s2)?;
    Ok(distance_unchecked(s1, s2, model, counter))
}

/// Two-row dynamic program; callers guarantee both strings are over the
/// model's alphabet.
pub(crate) fn distance_unchecked(
    s1: &[Sym],
    s2: &[Sym],
    model: &CostModel,
    counter: &OpCounter,
) -> f64 {
    counter.add_distance(((s1.len() + 1) * (s2.len() + 1)) as u64);
    let mut prev: Vec<f64> = Vec::with_capacity(s2.len() + 1);
    prev.push(0.0);
    for &b in s2 {
        let last = *prev.last().unwrap();
        prev.push(last + model.ins(b));
    }
    let mut cur = vec![0.0; s2.len() + 1];
    for &a in s1 {
        cur[0] = prev[0] + model.del(a);
        let del_a = model.del(a);
        for (j, &b) in s2.iter().enumerate() {
            let diag = prev[j] + model.sub(a, b);
            let del = prev[j + 1] + del_a;
            let ins = cur[j] + model.ins(b);
            cur[j + 1] = diag.min(del).min(ins);
        }
        std::mem::swap(&mut prev, &mut cur);
    }
    prev[s2.len()]
}

/// Distance plus one optimal script, chosen by the canonical tie-break.
///
/// Walking back from the last cell, a tied cell prefers the diagonal
/// (substitution or match), then deletion, then insertion. Matches are not
/// recorded in the script.
pub fn distance_with_script(
    s1: &[Sym],
    s2: &[Sym],
    model: &CostModel,
) -> Result<(f64, EditScript)> {
    distance_with_script_counted(s1, s2, model, &OpCounter::new())
}

pub fn distance_with_script_counted(
    s1: &[Sym],
    s2: &[Sym],
    model: &CostModel,
    counter: &OpCounter,
) -> Result<(f64, EditScript)> {
    model.alphabet().check(s1)?;
    model.alphabet().check(s2)?;
    Ok(script_unchecked(s1, s2, model, counter))
}

pub(crate) fn script_unchecked(
    s1: &[Sym],
    s2: &[Sym],
    model: &CostModel,
    counter: &OpCounter,
) -> (f64, EditScript) {
    let (n, m) = (s1.len(), s2.len());
    let w = m + 1;
    counter.add_distance(((n + 1) * w) as u64);
    let mut dp = vec![0.0f64; (n + 1) * w];
    for j in 1..=m {
        dp[j] = dp[j - 1] + model.ins(s2[j - 1]);
    }
    for i in 1..=n {
        let a = s1[i - 1];
        dp[i * w] = dp[(i - 1) * w] + model.del(a);
        for j in 1..=m {
            let b = s2[j - 1];
            let diag = dp[(i - 1) * w + j - 1] + model.sub(a, b);
            let del = dp[(i - 1) * w + j] + model.del(a);
            let ins = dp[i * w + j - 1] + model.ins(b);
            dp[i * w + j] = diag.min(del).min(ins);
        }
    }

    let mut ops = Vec::new();
    let (mut i, mut j) = (n, m);
    while i > 0 || j > 0 {
        let here = dp[i * w + j];
        if i > 0
            && j > 0
            && approx_eq(
                dp[(i - 1) * w + j - 1] + model.sub(s1[i - 1], s2[j - 1]),
                here,
            )
        {
            if s1[i - 1] != s2[j - 1] {
                ops.push(EditOp::Substitution {
                    position: i - 1,
                    from: s1[i - 1],
                    to: s2[j - 1],
                });
            }
            i -= 1;
            j -= 1;
        } else if i > 0 && approx_eq(dp[(i - 1) * w + j] + model.del(s1[i - 1]), here) {
            ops.push(EditOp::Deletion {
                position: i - 1,
                from: s1[i - 1],
            });
            i -= 1;
        } else {
            debug_assert!(j > 0);
            ops.push(EditOp::Insertion {
                position: i,
                to: s2[j - 1],
            });
            j -= 1;
        }
    }
    ops.reverse();
    let total_cost = ops.iter().map(|op| op.cost(model)).sum();
    let script = EditScript {
        source: s1.to_vec(),
        target: s2.to_vec(),
        ops,
        total_cost,
    };
    (dp[n * w + m], script)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::edit::{apply_script, Alphabet};

    fn unit(n: usize) -> CostModel {
        CostModel::unit(Alphabet::numbered(n).unwrap())
    }

    #[test]
    fn kitten_sitting() {
        let a = Alphabet::new("eigknst".chars()).unwrap();
        let m = CostModel::unit(a.clone());
        let s1 = a.encode("kitten").unwrap();
        let s2 = a.encode("sitting").unwrap();
        assert_eq!(distance(&s1, &s2, &m).unwrap(), 3.0);
        let (d, script) = distance_with_script(&s1, &s2, &m).unwrap();
        assert_eq!(d, 3.0);
        assert_eq!(script.ops.len(), 3);
        assert_eq!(apply_script(&s1, &script).unwrap(), s2);
    }

    #[test]
    fn identical_strings_cost_nothing() {
        let m = unit(3);
        let s = [0, 2, 1, 1];
        let (d, script) = distance_with_script(&s, &s, &m).unwrap();
        assert_eq!(d, 0.0);
        assert!(script.is_empty());
    }

    #[test]
    fn empty_strings() {
        let m = unit(2);
        assert_eq!(distance(&[], &[0, 1, 1], &m).unwrap(), 3.0);
        assert_eq!(distance(&[1, 1], &[], &m).unwrap(), 2.0);
        let (_, script) = distance_with_script(&[], &[0, 1], &m).unwrap();
        assert_eq!(
            script.ops,
            vec![
                EditOp::Insertion { position: 0, to: 0 },
                EditOp::Insertion { position: 0, to: 1 }
            ]
        );
    }

    #[test]
    fn tie_prefers_substitution_then_deletion() {
        // Either 0 could be dropped; the walk back matches the last one first.
        let m = unit(2);
        let (_, s) = distance_with_script(&[0, 0], &[0], &m).unwrap();
        assert_eq!(
            s.ops,
            vec![EditOp::Deletion {
                position: 0,
                from: 0
            }]
        );
        let (_, s) = distance_with_script(&[0], &[0, 0], &m).unwrap();
        assert_eq!(s.ops, vec![EditOp::Insertion { position: 0, to: 0 }]);
    }

    #[test]
    fn counts_cells() {
        let m = unit(2);
        let c = OpCounter::new();
        distance_counted(&[0, 1, 1], &[1, 0], &m, &c).unwrap();
        assert_eq!(c.snapshot().dp_cells, 12);
        distance_with_script_counted(&[0], &[1, 0], &m, &c).unwrap();
        assert_eq!(c.snapshot().dp_cells, 18);
        assert_eq!(c.snapshot().distance_evals, 2);
    }

    #[test]
    fn rejects_out_of_alphabet_codes() {
        let m = unit(2);
        assert!(distance(&[0, 2], &[0], &m).is_err());
        assert!(distance_with_script(&[0], &[5], &m).is_err());
    }
}
