mod common;

use common::{random_metric, random_word};
use median_core::datasets::{generate, DatasetKind, DatasetSpec};
use median_core::edit::{
    apply_op, apply_script, distance, distance_with_script, CostModel, EditOp, EditScript, Sym,
};
use median_core::heuristic::{
    collect_stats, hinarejos_sweep, lemma1_holds, refine, score, set_median, sum_distances,
    RefineConfig, ScoreOptions, Scorer, StringSet,
};
use median_core::OpCounter;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const SCORERS: [Scorer; 3] = [
    Scorer::Frequency,
    Scorer::FrequencyCost,
    Scorer::Repercussion,
];

fn random_set(
    n_symbols: usize,
    members: usize,
    max_len: usize,
    rng: &mut ChaCha8Rng,
    model: &CostModel,
) -> StringSet {
    let seqs = (0..members)
        .map(|_| random_word(n_symbols, max_len, rng))
        .collect();
    StringSet::new(model.alphabet().clone(), seqs).unwrap()
}

// Same-kind alternatives to `op` at its position.
fn alternatives(op: &EditOp, n_symbols: usize) -> Vec<EditOp> {
    (0..n_symbols as Sym)
        .filter(|&b| Some(b) != op.to() && Some(b) != op.from())
        .map(|b| EditOp::from_parts(op.kind(), op.position(), op.from(), Some(b)).unwrap())
        .collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn lemma1_never_increases_distance(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let n = rng.gen_range(2..6);
        let model = random_metric(n, &mut rng, false);
        let m = random_word(n, 7, &mut rng);
        let sy = random_word(n, 7, &mut rng);
        let d_before = distance(&m, &sy, &model).unwrap();
        let (_, script) = distance_with_script(&m, &sy, &model).unwrap();
        for other in script.ops.iter().filter(|o| !matches!(o, EditOp::Deletion { .. })) {
            for applied in alternatives(other, n) {
                if lemma1_holds(&applied, other, &model).unwrap() {
                    let d_after = distance(&apply_op(&m, &applied).unwrap(), &sy, &model).unwrap();
                    prop_assert!(d_after <= d_before + 1e-9, "{applied:?} vs {other:?}: {d_after} > {d_before}");
                }
            }
        }
    }

    #[test]
    fn proof_construction_script(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let n = rng.gen_range(2..6);
        let model = random_metric(n, &mut rng, true);
        let m = random_word(n, 7, &mut rng);
        let sy = random_word(n, 7, &mut rng);
        let (_, script) = distance_with_script(&m, &sy, &model).unwrap();
        for (k, other) in script.ops.iter().enumerate() {
            let EditOp::Substitution { position, from, to: c } = *other else { continue };
            for b in (0..n as Sym).filter(|&b| b != from && b != c) {
                let applied = EditOp::Substitution { position, from, to: b };
                let m_hat = apply_op(&m, &applied).unwrap();
                let mut ops = script.ops.clone();
                ops[k] = EditOp::Substitution { position, from: b, to: c };
                let swapped = EditScript {
                    source: m_hat.clone(),
                    target: sy.clone(),
                    total_cost: 0.0,
                    ops,
                };
                prop_assert_eq!(&apply_script(&m_hat, &swapped).unwrap(), &sy);
                let expected = script.cost(&model) - model.sub(from, c) + model.sub(b, c);
                prop_assert_eq!(swapped.cost(&model), expected);
            }
        }
    }

    #[test]
    fn supporters_gain_exactly_the_op_cost(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let n = rng.gen_range(2..5);
        let model = random_metric(n, &mut rng, true);
        let set = random_set(n, 5, 6, &mut rng, &model);
        let candidate = random_word(n, 6, &mut rng);
        let counter = OpCounter::new();
        let stats = collect_stats(&candidate, &set, &model, &counter).unwrap();
        for scorer in SCORERS {
            for s in score(scorer, &stats.stats, &model, ScoreOptions::default(), &counter) {
                let next = apply_op(&candidate, &s.op).unwrap();
                for &id in &s.supporters {
                    let d = distance(&next, &set.members()[id].seq, &model).unwrap();
                    prop_assert_eq!(d, stats.distances[id] - s.op.cost(&model));
                }
            }
        }
    }

    #[test]
    fn refine_is_monotone_and_locally_optimal(seed in any::<u64>(), scorer_ix in 0usize..3) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let n = rng.gen_range(2..5);
        let model = random_metric(n, &mut rng, true);
        let set = random_set(n, 5, 8, &mut rng, &model);
        let init = random_word(n, 8, &mut rng);
        let counter = OpCounter::new();
        let config = RefineConfig::with_scorer(SCORERS[scorer_ix]);
        let r = refine(&set, &init, &model, &config, &counter).unwrap();
        let sums = r.trace.sums();
        prop_assert!(sums.windows(2).all(|w| w[1] < w[0]));
        prop_assert_eq!(r.sum, *sums.last().unwrap());
        prop_assert_eq!(r.sum, sum_distances(&r.median, &set, &model, &OpCounter::new()).unwrap());
        prop_assert!(r.sum <= sum_distances(&init, &set, &model, &OpCounter::new()).unwrap());

        // nothing in the final queue improves the median
        let stats = collect_stats(&r.median, &set, &model, &OpCounter::new()).unwrap();
        for s in score(config.scorer, &stats.stats, &model, ScoreOptions::default(), &OpCounter::new()) {
            let next = apply_op(&r.median, &s.op).unwrap();
            prop_assert!(sum_distances(&next, &set, &model, &OpCounter::new()).unwrap() >= r.sum);
        }
    }

    #[test]
    fn sweep_never_worse_than_init(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let n = rng.gen_range(2..5);
        let model = random_metric(n, &mut rng, true);
        let set = random_set(n, 4, 6, &mut rng, &model);
        let init = random_word(n, 6, &mut rng);
        let r = hinarejos_sweep(&set, &init, &model, &OpCounter::new()).unwrap();
        prop_assert!(r.trace.sums().windows(2).all(|w| w[1] < w[0]));
        prop_assert!(r.sum <= sum_distances(&init, &set, &model, &OpCounter::new()).unwrap());
    }

    #[test]
    fn scaling_preserves_ranking(seed in any::<u64>(), lambda in prop::sample::select(vec![2.0, 3.0, 4.0, 8.0, 9.0])) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let n = rng.gen_range(2..6);
        let model = random_metric(n, &mut rng, true);
        let scaled = model.scaled(lambda).unwrap();
        let set = random_set(n, 6, 6, &mut rng, &model);
        let candidate = random_word(n, 6, &mut rng);
        let counter = OpCounter::new();
        let base = collect_stats(&candidate, &set, &model, &counter).unwrap();
        let big = collect_stats(&candidate, &set, &scaled, &counter).unwrap();
        let a = score(Scorer::Repercussion, &base.stats, &model, ScoreOptions::default(), &counter);
        let b = score(Scorer::Repercussion, &big.stats, &scaled, ScoreOptions::default(), &counter);
        prop_assert_eq!(a.len(), b.len());
        for (x, y) in a.iter().zip(&b) {
            prop_assert_eq!(x.op, y.op);
            prop_assert_eq!(x.total_score * lambda, y.total_score);
        }
    }
}

#[test]
fn planted_center_is_recovered() {
    for seed in 0..6 {
        let spec = DatasetSpec {
            kind: DatasetKind::PerturbedCluster,
            alphabet_size: 6,
            count: 15,
            mean_length: 25,
            length_jitter: 0,
            noise_rate: 0.05,
            seed,
        };
        let d = generate(&spec).unwrap();
        let model = CostModel::circular(d.set.alphabet().clone());
        let center = d.center.unwrap();
        let center_sum = sum_distances(&center, &d.set, &model, &OpCounter::new()).unwrap();
        let (_, init) = set_median(&d.set, &model, &OpCounter::new()).unwrap();
        for scorer in SCORERS {
            let r = refine(
                &d.set,
                &init,
                &model,
                &RefineConfig::with_scorer(scorer),
                &OpCounter::new(),
            )
            .unwrap();
            assert!(
                r.sum <= center_sum,
                "seed {seed} {scorer:?}: {} > {center_sum}",
                r.sum
            );
        }
    }
}

#[test]
fn set_median_beats_every_member() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let model = random_metric(3, &mut rng, true);
    let set = random_set(3, 9, 6, &mut rng, &model);
    let (ix, median) = set_median(&set, &model, &OpCounter::new()).unwrap();
    let best = sum_distances(&median, &set, &model, &OpCounter::new()).unwrap();
    assert_eq!(median, set.members()[ix].seq);
    for m in set.members() {
        let s = sum_distances(&m.seq, &set, &model, &OpCounter::new()).unwrap();
        assert!(best < s || (best == s && ix <= m.id));
    }
}
