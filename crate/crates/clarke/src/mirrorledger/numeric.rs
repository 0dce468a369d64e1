//! Numeric evaluation of B-symbols over a P¹ base and the mirror comparison
//! Σ c·B^{λ,μ} = Σ c·B̌^{d+w−λ,μ}, w being the ledger weight.

use super::{rat_string, BLedger, BSymbol};
use crate::error::{Error, Result};
use crate::hodge::{curve_term, HodgeDiamond};
use crate::lattice::{Int, Rat};
use crate::nefclarke::{build_cover_spec, NefPartition};
use num_traits::Zero;
use serde::Serialize;
use std::collections::{BTreeMap, BTreeSet};

/// Diamond of a symbol over P¹ with deg E_i = degrees[i − 1]: the I⁻-summand
/// of the cover over the parts I⁻ ∪ I⁺, with local support along the I⁺
/// branch loci, shifted by (|I⁰| + |I⁻|)/2 plus the explicit shift.
pub fn evaluate_symbol(sym: &BSymbol, degrees: &[i64]) -> Result<HodgeDiamond> {
    if sym.labels() != (1..=degrees.len()).collect::<Vec<_>>() {
        return Err(Error::Invalid(format!(
            "{sym} does not cover the {} parts exactly",
            degrees.len()
        )));
    }
    let deg = |p: &Vec<usize>| p.iter().map(|&l| degrees[l - 1]).sum::<i64>();
    let local: Vec<i64> = sym.minus.iter().chain(&sym.plus).map(deg).collect();
    let i_set: Vec<usize> = (0..sym.minus.len()).collect();
    let m = sym.minus.len() as i64;
    Ok(curve_term(&local, &i_set)?
        .shift_degree(m)
        .shift(sym.zero.len() as i64 + m + sym.shift2))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MirrorCheckRow {
    pub lambda2: i64,
    pub mu2: i64,
    pub left: String,
    pub right: String,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MirrorCheckReport {
    pub d: usize,
    pub weight: i64,
    pub rows: Vec<MirrorCheckRow>,
    pub pass: bool,
}

fn evaluate(ledger: &BLedger, degrees: &[i64]) -> Result<BTreeMap<(i64, i64), Rat>> {
    let mut out: BTreeMap<(i64, i64), Rat> = BTreeMap::new();
    for (s, c) in ledger.terms() {
        for (key, n) in evaluate_symbol(s, degrees)?.entries() {
            *out.entry(key).or_insert_with(Rat::zero) += c * Rat::from_integer(Int::from(n));
        }
    }
    Ok(out)
}

pub fn numeric_mirror_check(
    ledger: &BLedger,
    np: &NefPartition,
    d: usize,
) -> Result<MirrorCheckReport> {
    if np.delta().rank() != d {
        return Err(Error::RankMismatch(d, np.delta().rank()));
    }
    let Some(weight) = ledger.weight()? else {
        return Ok(MirrorCheckReport {
            d,
            weight: 0,
            rows: vec![],
            pass: true,
        });
    };
    if d != 1 {
        return Err(Error::Unsupported(format!(
            "B-symbols over a base of dimension {d} are only available as Euler characteristics"
        )));
    }
    let degrees = build_cover_spec(np, &[])?.curve_degrees().expect("P¹ base");
    let dual_degrees = build_cover_spec(&np.dual()?, &[])?
        .curve_degrees()
        .expect("P¹ base");
    let left = evaluate(ledger, &degrees)?;
    let right = evaluate(ledger, &dual_degrees)?;
    let d2 = 2 * (d as i64 + weight);
    let mut keys: BTreeSet<(i64, i64)> = left.keys().copied().collect();
    keys.extend(right.keys().map(|(a, b)| (d2 - a, *b)));
    let zero = Rat::zero();
    let rows: Vec<MirrorCheckRow> = keys
        .into_iter()
        .map(|(a, b)| {
            let x = left.get(&(a, b)).unwrap_or(&zero);
            let y = right.get(&(d2 - a, b)).unwrap_or(&zero);
            MirrorCheckRow {
                lambda2: a,
                mu2: b,
                left: rat_string(x),
                right: rat_string(y),
                pass: x == y,
            }
        })
        .filter(|r| !(r.left == "0" && r.right == "0"))
        .collect();
    let pass = rows.iter().all(|r| r.pass);
    Ok(MirrorCheckReport {
        d,
        weight,
        rows,
        pass,
    })
}
