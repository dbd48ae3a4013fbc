use pcbench_core::bitstring::hamming_distance;
use pcbench_core::variation::{
    fast_norm_const, sample_fast_strength, sample_sbm_strength, FlipScratch, MutationOperator,
};
use pcbench_core::{BitString, RngStream};
use proptest::prelude::*;

/// Zero-truncated binomial pmf on `1..=n`, built from the term ratio
/// `P(k+1)/P(k) = (n-k)/(k+1) · p/(1-p)` in plain floating point.
fn binomial_oracle(n: usize, p: f64) -> Vec<f64> {
    let mut terms = vec![(1.0 - p).powi(n as i32)];
    for k in 0..n {
        let next = terms[k] * (n - k) as f64 / (k + 1) as f64 * p / (1.0 - p);
        terms.push(next);
    }
    let mass: f64 = terms[1..].iter().sum();
    terms[1..].iter().map(|t| t / mass).collect()
}

fn power_law_oracle(n: usize, beta: f64) -> Vec<f64> {
    let raw: Vec<f64> = (1..=n / 2).map(|i| (i as f64).powf(-beta)).collect();
    let c: f64 = raw.iter().sum();
    raw.iter().map(|r| r / c).collect()
}

fn total_variation(a: &[f64], b: &[f64]) -> f64 {
    let len = a.len().max(b.len());
    let at = |v: &[f64], i: usize| v.get(i).copied().unwrap_or(0.0);
    0.5 * (0..len).map(|i| (at(a, i) - at(b, i)).abs()).sum::<f64>()
}

fn empirical(draws: usize, max: usize, mut sample: impl FnMut() -> usize) -> Vec<f64> {
    let mut counts = vec![0usize; max];
    for _ in 0..draws {
        counts[sample() - 1] += 1;
    }
    counts.iter().map(|&c| c as f64 / draws as f64).collect()
}

#[test]
fn sbm_table_matches_binomial_oracle() {
    for &(n, p) in &[(1, 1.0), (2, 0.5), (10, 0.1), (64, 1.0 / 64.0), (100, 0.01), (100, 0.3), (500, 0.002)] {
        let op = MutationOperator::standard_bit(n, p).unwrap();
        let oracle = if n == 1 { vec![1.0] } else { binomial_oracle(n, p) };
        assert_eq!(op.pmf().len(), n);
        for (k, (a, b)) in op.pmf().iter().zip(&oracle).enumerate() {
            assert!((a - b).abs() <= 1e-12 + 1e-9 * b, "n={n} p={p} k={}: {a} vs {b}", k + 1);
        }
    }
}

#[test]
fn fast_table_matches_power_law_oracle() {
    for &n in &[2usize, 3, 10, 64, 100, 501] {
        let op = MutationOperator::fast(n, 1.5).unwrap();
        let oracle = power_law_oracle(n, 1.5);
        assert_eq!(op.pmf().len(), n / 2);
        for (a, b) in op.pmf().iter().zip(&oracle) {
            assert!((a - b).abs() <= 1e-12, "n={n}: {a} vs {b}");
        }
    }
}

#[test]
fn five_term_normalisation() {
    let explicit = 1.0 + 2f64.powf(-1.5) + 3f64.powf(-1.5) + 4f64.powf(-1.5) + 5f64.powf(-1.5);
    let c = fast_norm_const(5, 1.5);
    assert!(((c - explicit) / explicit).abs() < 1e-12);
    let op = MutationOperator::fast(10, 1.5).unwrap();
    assert!(((op.norm_const() - explicit) / explicit).abs() < 1e-12);
    assert!((op.pmf()[0] - 1.0 / explicit).abs() < 1e-12);
}

#[test]
fn empirical_sbm_close_to_oracle() {
    let mut rng = RngStream::from_seed(11);
    let oracle = binomial_oracle(100, 0.01);
    let emp = empirical(200_000, 100, || sample_sbm_strength(100, 0.01, &mut rng).unwrap());
    assert!(total_variation(&emp, &oracle) < 0.01);
}

#[test]
fn empirical_fast_close_to_oracle() {
    let mut rng = RngStream::from_seed(12);
    let oracle = power_law_oracle(100, 1.5);
    let emp = empirical(200_000, 50, || sample_fast_strength(100, 1.5, &mut rng).unwrap());
    assert!(total_variation(&emp, &oracle) < 0.01);
}

#[test]
fn fast_never_exceeds_half() {
    let mut rng = RngStream::from_seed(13);
    for _ in 0..50_000 {
        let l = sample_fast_strength(7, 1.5, &mut rng).unwrap();
        assert!((1..=3).contains(&l));
    }
}

#[test]
fn flip_positions_are_uniform() {
    // every position of a length-8 string is flipped with probability 3/8
    let mut rng = RngStream::from_seed(14);
    let mut scratch = FlipScratch::new(8);
    let mut hits = [0usize; 8];
    let trials = 80_000;
    for _ in 0..trials {
        for &i in scratch.choose(8, 3, &mut rng) {
            hits[i as usize] += 1;
        }
    }
    let expect = trials as f64 * 3.0 / 8.0;
    let sd = (trials as f64 * 3.0 / 8.0 * 5.0 / 8.0).sqrt();
    for h in hits {
        assert!((h as f64 - expect).abs() < 4.0 * sd, "{h} vs {expect}");
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn mutant_differs_in_exactly_l_bits(n in 1usize..300, seed in any::<u64>(), fast in any::<bool>()) {
        prop_assume!(!fast || n >= 2);
        let mut rng = RngStream::from_seed(seed);
        let op = if fast {
            MutationOperator::fast(n, 1.5).unwrap()
        } else {
            MutationOperator::standard_bit(n, 1.0 / n as f64).unwrap()
        };
        let parent = BitString::random(n, &mut rng).unwrap();
        let (child, l) = op.mutate(&parent, &mut rng);
        prop_assert!(l >= 1 && l <= op.max_strength());
        prop_assert_eq!(hamming_distance(&parent, &child).unwrap(), l);
    }
}
