//! Brute-force check of the Newton spectrum: graded pieces of the quotient of
//! the monomial module by the relations x_i∂_i F · x^u, where F is the
//! leading (ν = 1) part of the polynomial with random coefficients and the
//! product is taken in the Newton-graded ring. Linear algebra is done over
//! F_p with p = 2^61 − 1.

use super::spectrum::{classify, newton_polytope, SpectrumMode};
use crate::error::{Error, Result};
use crate::lattice::{Int, Rat};
use crate::polytope::NewtonLevel;
use num_traits::{One, ToPrimitive};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::collections::{BTreeMap, HashMap};

const P: u64 = (1 << 61) - 1;

fn mulmod(a: u64, b: u64) -> u64 {
    ((a as u128 * b as u128) % P as u128) as u64
}

fn powmod(mut a: u64, mut e: u64) -> u64 {
    let mut r = 1;
    while e > 0 {
        if e & 1 == 1 {
            r = mulmod(r, a);
        }
        a = mulmod(a, a);
        e >>= 1;
    }
    r
}

fn to_fp(x: &Int) -> u64 {
    let m = x % Int::from(P);
    let m = if m < Int::from(0) {
        m + Int::from(P)
    } else {
        m
    };
    m.to_u64().unwrap_or(0)
}

/// Rank of a dense matrix over F_p.
fn rank_mod_p(mut rows: Vec<Vec<u64>>, ncols: usize) -> usize {
    let mut rank = 0;
    for c in 0..ncols {
        let Some(pr) = (rank..rows.len()).find(|&r| rows[r][c] != 0) else {
            continue;
        };
        rows.swap(rank, pr);
        let inv = powmod(rows[rank][c], P - 2);
        for x in rows[rank].iter_mut() {
            *x = mulmod(*x, inv);
        }
        let pivot = rows[rank].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r == rank || row[c] == 0 {
                continue;
            }
            let f = row[c];
            for (x, p) in row.iter_mut().zip(&pivot) {
                *x = (*x + P - mulmod(f, *p)) % P;
            }
        }
        rank += 1;
    }
    rank
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OracleOptions {
    pub seed: u64,
    /// Highest Newton level included; defaults to rank + 1.
    pub truncation: Option<u32>,
    pub memory_budget_mb: u64,
}

impl Default for OracleOptions {
    fn default() -> Self {
        OracleOptions {
            seed: 1,
            truncation: None,
            memory_budget_mb: 256,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KoszulReport {
    pub levels: BTreeMap<Rat, u64>,
    pub total: u64,
    pub truncation: u32,
    pub seed: u64,
}

struct Setup {
    nl: NewtonLevel,
    mode: SpectrumMode,
    leading: Vec<(Vec<Int>, u64)>,
    rank: usize,
}

fn in_module(mode: SpectrumMode, m: &[Int]) -> bool {
    mode == SpectrumMode::Torus || m.iter().all(|x| *x >= Int::one())
}

/// Multipliers x^u for the i-th relation: u_j ≥ 1 for j ≠ i and u_i ≥ 0 in the affine case.
fn multiplier_ok(mode: SpectrumMode, u: &[Int], i: usize) -> bool {
    mode == SpectrumMode::Torus
        || u.iter()
            .enumerate()
            .all(|(j, x)| *x >= if j == i { Int::from(0) } else { Int::one() })
}

fn histogram(s: &Setup, t: u32, budget: u64) -> Result<BTreeMap<Rat, u64>> {
    let big = s.nl.polytope().dilate_int(t as i64);
    let cap = Rat::from_integer(Int::from(t));
    let mut by_level: BTreeMap<Rat, Vec<Vec<Int>>> = BTreeMap::new();
    let mut all: Vec<(Vec<Int>, Rat)> = Vec::new();
    for m in big.lattice_points() {
        let Some(v) = s.nl.nu_int(&m) else { continue };
        if v > cap {
            continue;
        }
        all.push((m.clone(), v.clone()));
        if in_module(s.mode, &m) {
            by_level.entry(v).or_default().push(m);
        }
    }
    let index: HashMap<&Vec<Int>, usize> = by_level
        .values()
        .flat_map(|ms| ms.iter().enumerate().map(|(i, m)| (m, i)))
        .collect();
    let mut rows_by_level: BTreeMap<Rat, Vec<Vec<u64>>> = BTreeMap::new();
    for (u, nu_u) in &all {
        let target = nu_u + Rat::one();
        let Some(cols) = by_level.get(&target) else {
            continue;
        };
        for i in 0..s.rank {
            if !multiplier_ok(s.mode, u, i) {
                continue;
            }
            let mut row = vec![0u64; cols.len()];
            let mut any = false;
            for (m, c) in &s.leading {
                let w = to_fp(&m[i]);
                if w == 0 {
                    continue;
                }
                let prod: Vec<Int> = m.iter().zip(u).map(|(a, b)| a + b).collect();
                if s.nl.nu_int(&prod).as_ref() != Some(&target) {
                    continue;
                }
                let col = index[&prod];
                row[col] = (row[col] + mulmod(*c, w)) % P;
                any = true;
            }
            if any {
                rows_by_level.entry(target.clone()).or_default().push(row);
            }
        }
    }
    let mut out = BTreeMap::new();
    for (l, ms) in &by_level {
        let rows = rows_by_level.remove(l).unwrap_or_default();
        let bytes = (rows.len() as u64)
            .saturating_mul(ms.len() as u64)
            .saturating_mul(8);
        if bytes > budget.saturating_mul(1 << 20) {
            return Err(Error::MemoryBudget(format!(
                "level {l} needs {bytes} bytes"
            )));
        }
        let r = rank_mod_p(rows, ms.len());
        let dim = (ms.len() - r) as u64;
        if dim > 0 {
            out.insert(l.clone(), dim);
        }
    }
    Ok(out)
}

pub fn koszul_oracle(support: &[Vec<i64>], opts: &OracleOptions) -> Result<KoszulReport> {
    let nl = NewtonLevel::new(newton_polytope(support)?)?;
    let mode = classify(&nl)?;
    let rank = nl.polytope().rank();
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let mut pts: Vec<Vec<Int>> = support
        .iter()
        .map(|v| v.iter().map(|&x| Int::from(x)).collect())
        .collect();
    pts.sort();
    pts.dedup();
    let leading: Vec<(Vec<Int>, u64)> = pts
        .into_iter()
        .filter(|m| nl.nu_int(m) == Some(Rat::one()))
        .map(|m| (m, rng.gen_range(1..P)))
        .collect();
    let t = opts.truncation.unwrap_or(rank as u32 + 1);
    if t == 0 {
        return Err(Error::Invalid("truncation must be at least 1".into()));
    }
    let setup = Setup {
        nl,
        mode,
        leading,
        rank,
    };
    let lo = histogram(&setup, t, opts.memory_budget_mb)?;
    let hi = histogram(&setup, t + 1, opts.memory_budget_mb)?;
    let (a, b): (u64, u64) = (lo.values().sum(), hi.values().sum());
    if a != b {
        return Err(Error::NoStabilization(format!(
            "dimension {a} at truncation {t}, {b} at {}",
            t + 1
        )));
    }
    Ok(KoszulReport {
        total: a,
        levels: lo,
        truncation: t,
        seed: opts.seed,
    })
}
