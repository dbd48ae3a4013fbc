//! Maximum independent vertex set and N-queens with linear penalties.

use alloc::vec::Vec;

use crate::bitstring::BitString;
use crate::error::Result;
use crate::problems::ising::square_side;

/// Edge test of the independent-set graph on vertices `1..=size` (`size` even):
/// two paths `1..size/2` and `size/2+1..size`, plus the crossing edges
/// `i ~ i + size/2 + 1` (`i < size/2`) and `i ~ i + size/2 - 1` (`2 <= i <= size/2`).
/// Requires `i < j`.
pub fn mivs_edge(i: usize, j: usize, size: usize) -> bool {
    let half = size / 2;
    (i != half && j == i + 1)
        || (i < half && j == i + half + 1)
        || ((2..=half).contains(&i) && j == i + half - 1)
}

/// Penalty per violated edge; equals the even part of the dimension.
pub fn mivs_penalty(n: usize) -> usize {
    n - n % 2
}

/// `|S| - penalty · #edges inside S`, where `S` is the set of selected
/// vertices among the first even number of positions (an odd trailing
/// position is ignored).
pub fn mivs(x: &BitString) -> i64 {
    let size = mivs_penalty(x.len());
    let chosen: Vec<usize> = (0..size).filter(|&i| x.get(i)).map(|i| i + 1).collect();
    let mut violations = 0i64;
    for (a, &i) in chosen.iter().enumerate() {
        for &j in &chosen[a + 1..] {
            if mivs_edge(i, j, size) {
                violations += 1;
            }
        }
    }
    chosen.len() as i64 - size as i64 * violations
}

/// Number of queens minus `N` times the excess over one queen on every row,
/// column and diagonal of the `N × N` board (`n = N²`, row-major).
pub fn nqueens(x: &BitString) -> Result<i64> {
    let side = square_side(x.len())?;
    let q = |r: usize, c: usize| x.get(r * side + c) as i64;
    let excess = |count: i64| (count - 1).max(0);
    let mut penalty = 0i64;
    for r in 0..side {
        penalty += excess((0..side).map(|c| q(r, c)).sum());
    }
    for c in 0..side {
        penalty += excess((0..side).map(|r| q(r, c)).sum());
    }
    // diagonals c - r = d and anti-diagonals r + c = s
    for d in -(side as i64 - 1)..=(side as i64 - 1) {
        let count = (0..side)
            .filter_map(|r| {
                let c = r as i64 + d;
                (0..side as i64).contains(&c).then(|| q(r, c as usize))
            })
            .sum();
        penalty += excess(count);
    }
    for s in 0..=2 * (side - 1) {
        let count = (0..side)
            .filter_map(|r| s.checked_sub(r).filter(|&c| c < side).map(|c| q(r, c)))
            .sum();
        penalty += excess(count);
    }
    Ok(x.count_ones() as i64 - side as i64 * penalty)
}

/// Largest number of mutually non-attacking queens on an `N × N` board.
pub fn nqueens_optimum(side: usize) -> usize {
    match side {
        2 => 1,
        3 => 2,
        s => s,
    }
}
