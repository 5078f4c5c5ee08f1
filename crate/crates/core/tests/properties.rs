use proptest::prelude::*;
use setcross::distribution::t_poly_jr;
use setcross::exactnum::{rat_int, rational_to_f64};
use setcross::extremal::max_block;
use setcross::moments::{mean_block_linear, var_block_linear};
use setcross::sampling::{standardized_moments, PartitionSampler};
use setcross::{cr_circular, cr_linear, SetPartition, Statistic};

fn partition() -> impl Strategy<Value = SetPartition> {
    (1usize..=40).prop_flat_map(|n| proptest::collection::vec(0usize..8, n)).prop_map(|labels| {
        let mut blocks: Vec<Vec<usize>> = vec![Vec::new(); 8];
        for (i, l) in labels.into_iter().enumerate() {
            blocks[l].push(i + 1);
        }
        blocks.retain(|b| !b.is_empty());
        SetPartition::from_blocks(blocks).unwrap()
    })
}

fn relabel(p: &SetPartition, f: impl Fn(usize) -> usize) -> SetPartition {
    SetPartition::from_blocks(p.blocks().iter().map(|b| b.iter().map(|&e| f(e)).collect()).collect()).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn circular_is_rotation_invariant(p in partition(), shift in 0usize..40) {
        let n = p.n();
        let r = relabel(&p, |e| (e - 1 + shift) % n + 1);
        prop_assert_eq!(cr_circular(&r), cr_circular(&p));
    }

    #[test]
    fn both_are_reflection_invariant(p in partition()) {
        let n = p.n();
        let r = relabel(&p, |e| n + 1 - e);
        prop_assert_eq!(cr_linear(&r), cr_linear(&p));
        prop_assert_eq!(cr_circular(&r), cr_circular(&p));
    }

    #[test]
    fn sandwich_and_maxima(p in partition()) {
        let (n, k) = (p.n(), p.k());
        let (x, y) = (cr_linear(&p), cr_circular(&p));
        prop_assert!(x <= y);
        prop_assert!(y - x <= 2 * (k * (k - 1)) as u64);
        prop_assert!(x <= max_block(n, k, Statistic::Linear).unwrap());
        prop_assert!(y <= max_block(n, k, Statistic::Circular).unwrap());
    }

    #[test]
    fn text_round_trip(p in partition()) {
        let q: SetPartition = p.to_string().parse().unwrap();
        prop_assert_eq!(q, p);
    }

    #[test]
    fn closed_mean_matches_polynomial(n in 1usize..=40, k in 1usize..=40) {
        prop_assume!(k <= n);
        let poly = t_poly_jr(n, k).unwrap().poly;
        let mean = rat_int(poly.derivative_at_one(1)) / rat_int(poly.eval_one());
        prop_assert_eq!(mean_block_linear(n, k).unwrap(), mean);
    }

    #[test]
    fn sampler_respects_block_count(n in 1usize..=60, k in 1usize..=60, seed in any::<u64>(), index in 0u64..1000) {
        prop_assume!(k <= n);
        let s = PartitionSampler::new(n, Some(k)).unwrap();
        let p = s.sample_indexed(seed, index);
        prop_assert_eq!((p.n(), p.k()), (n, k));
        prop_assert!(p.check_invariants().is_ok());
        prop_assert_eq!(p, s.sample_indexed(seed, index));
    }
}

#[test]
fn sampled_moments_match_closed_forms() {
    let (n, k) = (200, 5);
    let mean = rational_to_f64(&mean_block_linear(n, k).unwrap());
    let var = rational_to_f64(&var_block_linear(n, k).unwrap());
    let s = PartitionSampler::new(n, Some(k)).unwrap();
    let values: Vec<f64> = s.samples(4242, 100_000).map(|p| cr_linear(&p) as f64).collect();
    let (m, v) = standardized_moments(&values, mean, var);
    assert!(m.abs() < 0.05, "standardized mean {m}");
    assert!((v - 1.0).abs() < 0.1, "standardized variance {v}");
}
