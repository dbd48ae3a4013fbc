use alloc::vec::Vec;

use rand::Rng;

use crate::bitstring::BitString;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CrossoverOperator {
    OnePoint,
    TwoPoint,
    Uniform,
}

impl CrossoverOperator {
    pub const ALL: [CrossoverOperator; 3] = [Self::OnePoint, Self::TwoPoint, Self::Uniform];

    pub fn label(&self) -> &'static str {
        match self {
            Self::OnePoint => "one-point",
            Self::TwoPoint => "two-point",
            Self::Uniform => "uniform",
        }
    }
}

/// Word mask with the first `c` positions set.
fn prefix_mask(words: usize, c: usize) -> Vec<u64> {
    (0..words)
        .map(|w| {
            let lo = w * 64;
            if c >= lo + 64 {
                u64::MAX
            } else if c <= lo {
                0
            } else {
                (1u64 << (c - lo)) - 1
            }
        })
        .collect()
}

fn check_lengths(x: &BitString, y: &BitString) -> Result<()> {
    if x.len() != y.len() {
        return Err(Error::LengthMismatch {
            left: x.len(),
            right: y.len(),
        });
    }
    Ok(())
}

/// Positions `0..c` from `x`, the rest from `y`. `c = n` clones `x`.
pub fn one_point_at(x: &BitString, y: &BitString, c: usize) -> Result<BitString> {
    check_lengths(x, y)?;
    let prefix = prefix_mask(x.words().len(), c.min(x.len()));
    let words = x
        .words()
        .iter()
        .zip(y.words())
        .zip(&prefix)
        .map(|((a, b), m)| (a & m) | (b & !m))
        .collect();
    Ok(BitString::from_words(words, x.len()))
}

/// Positions `0..c1` and `c2..n` from `x`, positions `c1..c2` from `y`.
pub fn two_point_at(x: &BitString, y: &BitString, c1: usize, c2: usize) -> Result<BitString> {
    check_lengths(x, y)?;
    let (c1, c2) = (c1.min(c2), c1.max(c2).min(x.len()));
    let w = x.words().len();
    let from_y: Vec<u64> = prefix_mask(w, c2)
        .into_iter()
        .zip(prefix_mask(w, c1))
        .map(|(hi, lo)| hi & !lo)
        .collect();
    let words = x
        .words()
        .iter()
        .zip(y.words())
        .zip(&from_y)
        .map(|((a, b), m)| (a & !m) | (b & m))
        .collect();
    Ok(BitString::from_words(words, x.len()))
}

/// Recombines `x` (first parent) and `y` (second parent).
///
/// * one-point: `c` uniform in `[1..n]`, then [`one_point_at`];
/// * two-point: two distinct points `c1 < c2` uniform in `[1..n]`, then
///   [`two_point_at`] (for `n = 1` the only choice is a clone of `x`);
/// * uniform: each position from `x` or `y` with probability 1/2.
pub fn crossover<R: Rng + ?Sized>(
    x: &BitString,
    y: &BitString,
    op: CrossoverOperator,
    rng: &mut R,
) -> Result<BitString> {
    check_lengths(x, y)?;
    let n = x.len();
    match op {
        CrossoverOperator::OnePoint => one_point_at(x, y, rng.gen_range(1..=n)),
        CrossoverOperator::TwoPoint => {
            if n < 2 {
                return Ok(x.clone());
            }
            let a = rng.gen_range(1..=n);
            let mut b = rng.gen_range(1..n);
            if b >= a {
                b += 1;
            }
            two_point_at(x, y, a.min(b), a.max(b))
        }
        CrossoverOperator::Uniform => {
            let words = x
                .words()
                .iter()
                .zip(y.words())
                .map(|(a, b)| {
                    let m = rng.next_u64();
                    (a & !m) | (b & m)
                })
                .collect();
            Ok(BitString::from_words(words, n))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::RngStream;
    use alloc::string::ToString;

    fn bs(s: &str) -> BitString {
        BitString::parse(s).unwrap()
    }

    #[test]
    fn one_point_example() {
        let z = one_point_at(&bs("0000"), &bs("1111"), 2).unwrap();
        assert_eq!(z.to_string(), "0011");
        assert_eq!(one_point_at(&bs("0000"), &bs("1111"), 4).unwrap().to_string(), "0000");
    }

    #[test]
    fn two_point_example() {
        let z = two_point_at(&bs("000000"), &bs("111111"), 1, 4).unwrap();
        assert_eq!(z.to_string(), "011100");
        let z = two_point_at(&bs("000000"), &bs("111111"), 2, 6).unwrap();
        assert_eq!(z.to_string(), "001111");
    }

    #[test]
    fn identical_parents_reproduce() {
        let mut rng = RngStream::from_seed(4);
        let x = BitString::random(77, &mut rng).unwrap();
        for op in CrossoverOperator::ALL {
            for _ in 0..50 {
                assert_eq!(crossover(&x, &x, op, &mut rng).unwrap(), x);
            }
        }
    }

    #[test]
    fn length_mismatch() {
        let mut rng = RngStream::from_seed(4);
        for op in CrossoverOperator::ALL {
            assert!(crossover(&bs("01"), &bs("010"), op, &mut rng).is_err());
        }
    }

    #[test]
    fn masks_across_word_boundary() {
        let x = BitString::zeros(130).unwrap();
        let y = BitString::ones(130).unwrap();
        let z = one_point_at(&x, &y, 70).unwrap();
        assert_eq!(z.count_ones(), 60);
        assert!(!z.get(69) && z.get(70));
        let z = two_point_at(&x, &y, 63, 129).unwrap();
        assert_eq!(z.count_ones(), 66);
        assert!(z.get(63) && !z.get(129) && !z.get(62));
    }

    #[test]
    fn single_position_two_point_clones_first_parent() {
        let mut rng = RngStream::from_seed(4);
        let z = crossover(&bs("0"), &bs("1"), CrossoverOperator::TwoPoint, &mut rng).unwrap();
        assert_eq!(z.to_string(), "0");
    }
}
