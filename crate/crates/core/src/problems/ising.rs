//! Ferromagnetic Ising models: the fitness is the number of lattice edges
//! whose endpoints agree. Each undirected edge is counted once, so the optima
//! are `n` (ring), `2n` (torus) and `3n` (triangular torus).

use crate::bitstring::BitString;
use crate::error::{Error, Result};

pub fn square_side(n: usize) -> Result<usize> {
    let side = libm::sqrt(n as f64) as usize;
    for s in side.saturating_sub(1)..=side + 1 {
        if s > 0 && s * s == n {
            return Ok(s);
        }
    }
    Err(Error::InvalidDimension {
        n,
        reason: "two-dimensional lattices need a perfect-square dimension",
    })
}

pub fn ising_ring(x: &BitString) -> usize {
    let n = x.len();
    (0..n).filter(|&i| x.get(i) == x.get((i + 1) % n)).count()
}

fn torus(x: &BitString, diagonal: bool) -> Result<usize> {
    let side = square_side(x.len())?;
    let at = |r: usize, c: usize| x.get((r % side) * side + c % side);
    let mut agree = 0;
    for r in 0..side {
        for c in 0..side {
            let v = at(r, c);
            agree += (v == at(r + 1, c)) as usize + (v == at(r, c + 1)) as usize;
            if diagonal {
                agree += (v == at(r + 1, c + 1)) as usize;
            }
        }
    }
    Ok(agree)
}

/// 4-neighbourhood on a `√n × √n` torus.
pub fn ising_torus(x: &BitString) -> Result<usize> {
    torus(x, false)
}

/// 6-neighbourhood (right, down, down-right diagonal) on a `√n × √n` torus.
pub fn ising_triangular(x: &BitString) -> Result<usize> {
    torus(x, true)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ring_extremes() {
        assert_eq!(ising_ring(&BitString::ones(100).unwrap()), 100);
        let alt = BitString::parse(&"10".repeat(50)).unwrap();
        assert_eq!(ising_ring(&alt), 0);
    }

    #[test]
    fn torus_optima() {
        let ones = BitString::ones(100).unwrap();
        assert_eq!(ising_torus(&ones).unwrap(), 200);
        assert_eq!(ising_triangular(&ones).unwrap(), 300);
        assert!(ising_torus(&BitString::ones(10).unwrap()).is_err());
    }

    #[test]
    fn checkerboard_torus() {
        // 4x4 checkerboard: every axis edge disagrees, every diagonal agrees.
        let x = BitString::parse("1010010110100101").unwrap();
        assert_eq!(ising_torus(&x).unwrap(), 0);
        assert_eq!(ising_triangular(&x).unwrap(), 16);
    }

    #[test]
    fn side_detection() {
        assert_eq!(square_side(1).unwrap(), 1);
        assert_eq!(square_side(144).unwrap(), 12);
        assert!(square_side(145).is_err());
    }
}
