use crate::bitstring::BitString;
use crate::error::{Error, Result};

/// Sum of squared aperiodic autocorrelations of `s_i = 2x_i - 1`.
pub fn labs_energy(x: &BitString) -> u64 {
    let n = x.len();
    let s: alloc::vec::Vec<i64> = x.iter().map(|b| if b { 1 } else { -1 }).collect();
    (1..n)
        .map(|k| {
            let c: i64 = (0..n - k).map(|i| s[i] * s[i + k]).sum();
            (c * c) as u64
        })
        .sum()
}

/// Merit factor `n² / (2E)`. Only a single-position sequence has `E = 0`,
/// which is reported as [`Error::DegenerateLabs`].
pub fn labs(x: &BitString) -> Result<f64> {
    let e = labs_energy(x);
    if e == 0 {
        return Err(Error::DegenerateLabs);
    }
    let n = x.len() as f64;
    Ok(n * n / (2.0 * e as f64))
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec::Vec;

    #[test]
    fn two_bits() {
        let x = BitString::parse("10").unwrap();
        assert_eq!(labs_energy(&x), 1);
        assert_eq!(labs(&x).unwrap(), 2.0);
    }

    #[test]
    fn single_bit_is_degenerate() {
        assert_eq!(labs(&BitString::parse("1").unwrap()), Err(Error::DegenerateLabs));
    }

    #[test]
    fn complement_symmetry() {
        let a = labs(&BitString::parse("110").unwrap()).unwrap();
        let b = labs(&BitString::parse("001").unwrap()).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn barker_13_energy() {
        // Barker sequence of length 13: all off-peak autocorrelations are 0 or 1.
        let x = BitString::parse("1111100110101").unwrap();
        assert_eq!(labs_energy(&x), 6);
        let bits: Vec<bool> = x.iter().collect();
        assert_eq!(bits.len(), 13);
        assert!((labs(&x).unwrap() - 169.0 / 12.0).abs() < 1e-12);
    }
}
