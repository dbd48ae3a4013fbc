use pcbench_core::variation::{crossover, one_point_at, two_point_at, CrossoverOperator};
use pcbench_core::{BitString, RngStream};
use proptest::prelude::*;

fn bits(n: usize) -> impl Strategy<Value = BitString> {
    prop::collection::vec(any::<bool>(), n).prop_map(|v| BitString::from_bools(&v).unwrap())
}

fn parents() -> impl Strategy<Value = (BitString, BitString)> {
    (1usize..200).prop_flat_map(|n| (bits(n), bits(n)))
}

fn op() -> impl Strategy<Value = CrossoverOperator> {
    prop::sample::select(CrossoverOperator::ALL.to_vec())
}

/// Naive oracle: child bit `i` comes from `x` iff `from_x(i)`.
fn masked(x: &BitString, y: &BitString, from_x: impl Fn(usize) -> bool) -> BitString {
    let v: Vec<bool> = (0..x.len()).map(|i| if from_x(i) { x.get(i) } else { y.get(i) }).collect();
    BitString::from_bools(&v).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn child_bits_come_from_parents((x, y) in parents(), op in op(), seed in any::<u64>()) {
        let mut rng = RngStream::from_seed(seed);
        let z = crossover(&x, &y, op, &mut rng).unwrap();
        prop_assert_eq!(z.len(), x.len());
        for i in 0..x.len() {
            prop_assert!(z.get(i) == x.get(i) || z.get(i) == y.get(i));
        }
    }

    #[test]
    fn identical_parents_give_a_clone(x in (1usize..200).prop_flat_map(bits), op in op(), seed in any::<u64>()) {
        let mut rng = RngStream::from_seed(seed);
        prop_assert_eq!(crossover(&x, &x, op, &mut rng).unwrap(), x);
    }

    #[test]
    fn one_point_matches_oracle((x, y) in parents(), c in 0usize..220) {
        let c = c.min(x.len());
        prop_assert_eq!(one_point_at(&x, &y, c).unwrap(), masked(&x, &y, |i| i < c));
    }

    #[test]
    fn two_point_matches_oracle((x, y) in parents(), a in 0usize..220, b in 0usize..220) {
        let n = x.len();
        let (c1, c2) = (a.min(b).min(n), a.max(b).min(n));
        prop_assert_eq!(
            two_point_at(&x, &y, c1, c2).unwrap(),
            masked(&x, &y, |i| i < c1 || i >= c2)
        );
    }

    #[test]
    fn random_one_point_has_prefix_structure((x, y) in parents(), seed in any::<u64>()) {
        let mut rng = RngStream::from_seed(seed);
        let z = crossover(&x, &y, CrossoverOperator::OnePoint, &mut rng).unwrap();
        let ok = (1..=x.len()).any(|c| z == masked(&x, &y, |i| i < c));
        prop_assert!(ok);
    }
}

#[test]
fn fixed_cut_example() {
    let x = BitString::parse("0000").unwrap();
    let y = BitString::parse("1111").unwrap();
    assert_eq!(one_point_at(&x, &y, 2).unwrap().to_string(), "0011");
    assert_eq!(two_point_at(&x, &y, 1, 3).unwrap().to_string(), "0110");
}

#[test]
fn uniform_takes_each_parent_half_the_time() {
    let n = 130;
    let x = BitString::zeros(n).unwrap();
    let y = BitString::ones(n).unwrap();
    let mut rng = RngStream::from_seed(5);
    let trials = 20_000;
    let mut ones = vec![0usize; n];
    for _ in 0..trials {
        let z = crossover(&x, &y, CrossoverOperator::Uniform, &mut rng).unwrap();
        for (i, b) in z.iter().enumerate() {
            ones[i] += b as usize;
        }
    }
    let sd = (trials as f64 * 0.25).sqrt();
    for (i, &c) in ones.iter().enumerate() {
        assert!((c as f64 - trials as f64 / 2.0).abs() < 4.5 * sd, "position {i}: {c}");
    }
}

#[test]
fn two_point_cut_pairs_are_uniform() {
    // n = 4: the 6 pairs 1 <= c1 < c2 <= 4 are equally likely
    let x = BitString::zeros(4).unwrap();
    let y = BitString::ones(4).unwrap();
    let mut rng = RngStream::from_seed(9);
    let mut seen = std::collections::HashMap::new();
    let trials = 60_000;
    for _ in 0..trials {
        let z = crossover(&x, &y, CrossoverOperator::TwoPoint, &mut rng).unwrap();
        *seen.entry(z.to_string()).or_insert(0usize) += 1;
    }
    assert_eq!(seen.len(), 6, "{seen:?}");
    let expect = trials as f64 / 6.0;
    for (k, &c) in &seen {
        assert!((c as f64 - expect).abs() < 5.0 * (expect * 5.0 / 6.0).sqrt(), "{k}: {c}");
    }
}
