//! Self-tests of the problem catalog.
//!
//! Two families of checks:
//! * exhaustive enumeration at small `n` against straight-line reference
//!   evaluators, confirming values and optima;
//! * every reference target at `n = 100` is attainable: it does not exceed
//!   the known optimum, or a concrete witness point reaches it.

use pcbench_core::problems::wmodel::dummy_positions;
use pcbench_core::{BitString, Problem, RngStream};
use rand::Rng;

use crate::catalog::Catalog;
use crate::error::Result;

#[derive(Debug, Clone, PartialEq)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

impl Check {
    fn new(name: impl Into<String>, passed: bool, detail: impl Into<String>) -> Self {
        Self {
            name: name.into(),
            passed,
            detail: detail.into(),
        }
    }
}

fn points(n: usize) -> impl Iterator<Item = Vec<bool>> {
    (0u64..1 << n).map(move |m| (0..n).map(|i| m >> i & 1 == 1).collect())
}

fn ones(v: &[bool]) -> usize {
    v.iter().filter(|&&b| b).count()
}

/// Compares `p` with `oracle` on all of `{0,1}^n` and checks the optimum.
fn exhaustive(label: &str, p: &Problem, oracle: impl Fn(&[bool]) -> f64, optimum: f64) -> Check {
    let n = p.dimension();
    let mut best = f64::NEG_INFINITY;
    for v in points(n) {
        let x = BitString::from_bools(&v).expect("n >= 1");
        let (f, o) = (p.evaluate(&x), oracle(&v));
        if (f - o).abs() > 1e-9 {
            return Check::new(label, false, format!("value {f} but reference {o} at {x}"));
        }
        best = best.max(f);
    }
    let declared = p.optimum();
    let passed = best == optimum && declared.is_none_or(|d| d == optimum);
    Check::new(
        label,
        passed,
        format!("n={n}: enumerated optimum {best}, expected {optimum}, declared {declared:?}"),
    )
}

fn small_instances(cat: &Catalog) -> Result<Vec<Check>> {
    let mut out = Vec::new();
    let n = 12;
    out.push(exhaustive("F1 exhaustive", &cat.build(1, n)?, |v| ones(v) as f64, n as f64));
    out.push(exhaustive(
        "F2 exhaustive",
        &cat.build(2, n)?,
        |v| v.iter().take_while(|&&b| b).count() as f64,
        n as f64,
    ));
    out.push(exhaustive(
        "F3 exhaustive",
        &cat.build(3, n)?,
        |v| v.iter().enumerate().filter(|(_, &b)| b).map(|(i, _)| (i + 1) as f64).sum(),
        (n * (n + 1) / 2) as f64,
    ));
    for id in [4, 5] {
        let entry = cat.entry(id).expect("catalog has F4 and F5");
        let m = entry.layers(n).dummy_m.expect("dummy layer");
        let pos = dummy_positions(n, m, entry.dummy_seed.unwrap_or(0));
        out.push(exhaustive(
            &format!("F{id} exhaustive"),
            &cat.build(id, n)?,
            |v| pos.iter().filter(|&&i| v[i]).count() as f64,
            m as f64,
        ));
    }
    out.push(exhaustive(
        "F19 exhaustive",
        &cat.build(19, n)?,
        |v| (0..v.len()).filter(|&i| v[i] == v[(i + 1) % v.len()]).count() as f64,
        n as f64,
    ));
    out.push(exhaustive(
        "F23 exhaustive (4x4 board)",
        &cat.build(23, 16)?,
        |v| {
            let queens: Vec<(i64, i64)> = (0..16).filter(|&i| v[i]).map(|i| ((i / 4) as i64, (i % 4) as i64)).collect();
            let line = |f: &dyn Fn(i64, i64) -> i64, key: i64| {
                (queens.iter().filter(|&&(r, c)| f(r, c) == key).count() as i64 - 1).max(0)
            };
            let mut penalty = 0;
            for k in -3..=6 {
                if (0..4).contains(&k) {
                    penalty += line(&|r, _| r, k) + line(&|_, c| c, k);
                }
                penalty += line(&|r, c| c - r, k) + line(&|r, c| r + c, k);
            }
            queens.len() as f64 - 4.0 * penalty as f64
        },
        4.0,
    ));
    let k = cat.entry(24).and_then(|e| e.trap_k).expect("trap record");
    out.push(exhaustive(
        "F24 exhaustive",
        &cat.build(24, 3 * k)?,
        |v| {
            v.chunks(k)
                .map(|s| match ones(s) {
                    u if u == k => 1.0,
                    u => (k - 1 - u) as f64 / k as f64,
                })
                .sum()
        },
        3.0,
    ));
    let all_ones = cat.build(24, 100)?.evaluate(&BitString::ones(100)?);
    out.push(Check::new(
        "F24 all-ones optimum",
        all_ones == (100 / k) as f64,
        format!("all-ones scores {all_ones} at n=100"),
    ));
    Ok(out)
}

/// Skew-symmetric start of the Legendre sequence modulo 101, rotated by 26;
/// its merit factor at length 100 is about 5.31.
pub fn labs_witness() -> BitString {
    let p = 101u64;
    let residue = |i: u64| i == 0 || (1..p).any(|y| y * y % p == i);
    let bits: Vec<bool> = (0..100).map(|k| residue((k + 26) % p)).collect();
    BitString::from_bools(&bits).expect("non-empty")
}

/// Both endpoints of every other column of the two paths.
pub fn mivs_witness(n: usize) -> BitString {
    let half = n / 2;
    let bits: Vec<bool> = (0..n).map(|i| i < 2 * half && (i % half) % 2 == 0).collect();
    BitString::from_bools(&bits).expect("non-empty")
}

/// Best point found by restarted first-improvement local search.
pub fn local_search_witness(p: &Problem, target: f64, restarts: usize, seed: u64) -> (BitString, f64) {
    let n = p.dimension();
    let mut rng = RngStream::from_seed(seed);
    let mut best: Option<(BitString, f64)> = None;
    for _ in 0..restarts {
        let mut x = BitString::random(n, &mut rng).expect("n >= 1");
        let mut fx = p.evaluate(&x);
        loop {
            let start = rng.gen_range(0..n);
            let mut improved = false;
            for k in 0..n {
                let i = (start + k) % n;
                x.flip(i);
                let f = p.evaluate(&x);
                if f > fx {
                    fx = f;
                    improved = true;
                } else {
                    x.flip(i);
                }
            }
            if !improved {
                break;
            }
        }
        if best.as_ref().is_none_or(|(_, b)| fx > *b) {
            best = Some((x, fx));
        }
        if fx >= target {
            break;
        }
    }
    best.expect("at least one restart")
}

fn reference_targets(cat: &Catalog) -> Result<Vec<Check>> {
    let mut out = Vec::new();
    for e in &cat.problem {
        let p = cat.build(e.id, 100)?;
        let t = e.target_n100;
        let (passed, detail) = if let Some(opt) = p.optimum() {
            (t <= opt, format!("target {t} <= optimum {opt}"))
        } else {
            let (witness, how) = match e.id {
                18 => (labs_witness(), "Legendre sequence"),
                22 => (mivs_witness(100), "alternating columns"),
                _ => (local_search_witness(&p, t, 200, 1).0, "local search"),
            };
            let f = p.evaluate(&witness);
            (t <= f, format!("target {t} <= {f} reached by {how}"))
        };
        out.push(Check::new(format!("F{} target attainable at n=100", e.id), passed, detail));
    }
    Ok(out)
}

/// Runs every catalog self-test.
pub fn run_validation(cat: &Catalog) -> Result<Vec<Check>> {
    let mut checks = small_instances(cat)?;
    checks.extend(reference_targets(cat)?);
    for (id, expected) in [(4, 50.0), (5, 90.0), (6, 33.0), (14, 100.0)] {
        let opt = cat.build(id, 100)?.optimum();
        checks.push(Check::new(
            format!("F{id} optimum at n=100"),
            opt == Some(expected),
            format!("optimum {opt:?}, expected {expected}"),
        ));
    }
    Ok(checks)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn witnesses_are_strong() {
        let cat = Catalog::builtin();
        assert!(cat.build(18, 100).unwrap().evaluate(&labs_witness()) > 5.3);
        assert_eq!(cat.build(22, 100).unwrap().evaluate(&mivs_witness(100)), 50.0);
    }
}
