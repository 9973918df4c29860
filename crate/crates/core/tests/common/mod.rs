#![allow(dead_code)]

use median_core::edit::{Alphabet, CostModel, Sym};
use rand::Rng;

/// Random metric model: symmetric random weights closed under shortest
/// paths, so the triangle inequality holds by construction. With `integer`
/// every cost is a whole number and sums stay exact.
#[allow(clippy::needless_range_loop)]
pub fn random_metric(n: usize, rng: &mut impl Rng, integer: bool) -> CostModel {
    let k = n + 1;
    let mut w = vec![vec![0.0f64; k]; k];
    for i in 0..k {
        for j in i + 1..k {
            let c = if integer {
                rng.gen_range(1..=9) as f64
            } else {
                rng.gen_range(0.25..4.0)
            };
            w[i][j] = c;
            w[j][i] = c;
        }
    }
    for via in 0..k {
        for i in 0..k {
            for j in 0..k {
                let through = w[i][via] + w[via][j];
                if through < w[i][j] {
                    w[i][j] = through;
                }
            }
        }
    }
    let model = CostModel::from_rows(Alphabet::numbered(n).unwrap(), &w).unwrap();
    assert!(model.is_metric(), "{:?}", model.violations());
    model
}

pub fn random_word(n_symbols: usize, max_len: usize, rng: &mut impl Rng) -> Vec<Sym> {
    let len = rng.gen_range(0..=max_len);
    (0..len)
        .map(|_| rng.gen_range(0..n_symbols) as Sym)
        .collect()
}

/// Independent top-down recursion over suffixes, memoized.
pub fn oracle_distance(a: &[Sym], b: &[Sym], model: &CostModel) -> f64 {
    fn go(
        a: &[Sym],
        b: &[Sym],
        i: usize,
        j: usize,
        model: &CostModel,
        memo: &mut Vec<Vec<Option<f64>>>,
    ) -> f64 {
        if let Some(v) = memo[i][j] {
            return v;
        }
        let v = if i == a.len() {
            b[j..].iter().map(|&c| model.ins(c)).sum()
        } else if j == b.len() {
            a[i..].iter().map(|&c| model.del(c)).sum()
        } else {
            let sub = model.sub(a[i], b[j]) + go(a, b, i + 1, j + 1, model, memo);
            let del = model.del(a[i]) + go(a, b, i + 1, j, model, memo);
            let ins = model.ins(b[j]) + go(a, b, i, j + 1, model, memo);
            sub.min(del).min(ins)
        };
        memo[i][j] = Some(v);
        v
    }
    let mut memo = vec![vec![None; b.len() + 1]; a.len() + 1];
    go(a, b, 0, 0, model, &mut memo)
}
