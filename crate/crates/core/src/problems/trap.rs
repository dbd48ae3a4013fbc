use crate::bitstring::BitString;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TrapParams {
    /// Segment length.
    pub k: usize,
    /// Number of segments, `n / k`.
    pub m: usize,
}

impl TrapParams {
    pub fn new(n: usize, k: usize) -> Result<Self> {
        if k == 0 || n == 0 || n % k != 0 {
            return Err(Error::InvalidDimension {
                n,
                reason: "concatenated trap needs n to be a positive multiple of k",
            });
        }
        Ok(Self { k, m: n / k })
    }
}

/// Trap value of a segment of length `k` holding `u` ones.
pub fn trap(u: usize, k: usize) -> f64 {
    if u == k {
        1.0
    } else {
        (k - 1 - u) as f64 / k as f64
    }
}

pub fn concatenated_trap(x: &BitString, params: TrapParams) -> Result<f64> {
    if x.len() != params.k * params.m {
        return Err(Error::LengthMismatch {
            left: x.len(),
            right: params.k * params.m,
        });
    }
    let k = params.k;
    Ok((0..params.m)
        .map(|s| trap((s * k..(s + 1) * k).filter(|&i| x.get(i)).count(), k))
        .sum())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn segment_values() {
        let p = TrapParams::new(5, 5).unwrap();
        assert_eq!(concatenated_trap(&BitString::parse("11111").unwrap(), p).unwrap(), 1.0);
        assert_eq!(concatenated_trap(&BitString::parse("00000").unwrap(), p).unwrap(), 0.8);
        assert_eq!(concatenated_trap(&BitString::parse("11110").unwrap(), p).unwrap(), 0.0);
    }

    #[test]
    fn all_ones_is_segment_count() {
        let p = TrapParams::new(100, 5).unwrap();
        assert_eq!(concatenated_trap(&BitString::ones(100).unwrap(), p).unwrap(), 20.0);
        assert!(TrapParams::new(101, 5).is_err());
    }
}
