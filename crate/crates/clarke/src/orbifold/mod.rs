//! Box elements of stacky fans, twisted sectors and the age-shifted sum over
//! sectors, plus the entrywise check h^{λ,μ} = h^{d−λ,μ} between two sides
//! of a Clarke pair.

use crate::error::{Error, Result};
use crate::fan::{Fan, StackyFan};
use crate::hodge::{half, stratum_diamond, HodgeDiamond};
use crate::lattice::{parallelepiped_coefficients, rat, Int, Rat};
use crate::nefclarke::ClarkePair;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::Serialize;
use std::collections::BTreeMap;
use std::fmt;

/// g = Σ a_ρ β_ρ ρ with 0 < a_ρ < 1 over the rays of `cone`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoxElement {
    /// Ray indices of the minimal cone, sorted.
    pub cone: Vec<usize>,
    pub coefficients: Vec<Rat>,
    pub point: Vec<Int>,
    pub age: Rat,
}

impl BoxElement {
    pub fn key(&self) -> SectorKey {
        SectorKey::Twisted {
            cone: self.cone.clone(),
            point: self.point.clone(),
        }
    }

    /// 2ι when the age is a half-integer.
    pub fn age2(&self) -> Option<i64> {
        let a = &self.age * rat(2);
        a.is_integer().then(|| a.to_integer().to_i64()).flatten()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum SectorKey {
    Untwisted,
    Twisted { cone: Vec<usize>, point: Vec<Int> },
}

impl fmt::Display for SectorKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SectorKey::Untwisted => write!(f, "untwisted"),
            SectorKey::Twisted { cone, point } => {
                let p: Vec<String> = point.iter().map(|x| x.to_string()).collect();
                let c: Vec<String> = cone.iter().map(|x| x.to_string()).collect();
                write!(f, "cone[{}] g=({})", c.join(","), p.join(","))
            }
        }
    }
}

/// A component of the inertia stack: a box element (or none) and the closed
/// torus-orbit closure of its cone.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TwistedSector {
    pub key: SectorKey,
    pub box_element: Option<BoxElement>,
    pub cone: Vec<usize>,
    pub stratum_dim: usize,
}

/// All box elements, cone by cone in fan order, each sorted by coefficients.
pub fn box_elements(f: &StackyFan) -> Vec<BoxElement> {
    let ext = f.extended_rays();
    let mut out = Vec::new();
    for cone in f.fan().cones() {
        if cone.is_empty() {
            continue;
        }
        let gens: Vec<Vec<Int>> = cone.iter().map(|&i| ext[i].clone()).collect();
        for alpha in parallelepiped_coefficients(&gens) {
            if alpha.iter().any(|a| a.is_zero()) {
                continue;
            }
            let dim = gens[0].len();
            let point: Vec<Int> = (0..dim)
                .map(|t| {
                    let s = alpha.iter().zip(&gens).fold(Rat::zero(), |acc, (a, g)| {
                        acc + a * Rat::from_integer(g[t].clone())
                    });
                    debug_assert!(s.is_integer());
                    s.to_integer()
                })
                .collect();
            let age = alpha.iter().fold(Rat::zero(), |acc, a| acc + a);
            out.push(BoxElement {
                cone: cone.clone(),
                coefficients: alpha,
                point,
                age,
            });
        }
    }
    out
}

pub fn sectors(f: &StackyFan) -> Vec<TwistedSector> {
    let rank = f.fan().rank();
    let mut out = vec![TwistedSector {
        key: SectorKey::Untwisted,
        box_element: None,
        cone: vec![],
        stratum_dim: rank,
    }];
    for b in box_elements(f) {
        out.push(TwistedSector {
            key: b.key(),
            cone: b.cone.clone(),
            stratum_dim: rank - f.fan().cone_dim(&b.cone),
            box_element: Some(b),
        });
    }
    out
}

/// Diamonds of the twisted strata V(c), when their stars are complete.
pub fn twisted_stratum_diamonds(f: &StackyFan) -> Result<BTreeMap<SectorKey, HodgeDiamond>> {
    let fan: &Fan = f.fan();
    box_elements(f)
        .into_iter()
        .map(|b| Ok((b.key(), stratum_diamond(fan, &b.cone)?)))
        .collect()
}

/// Σ over sectors of the sector diamond shifted by the age.
pub fn orbifold_diamond(
    f: &StackyFan,
    sector_diamonds: &BTreeMap<SectorKey, HodgeDiamond>,
) -> Result<HodgeDiamond> {
    let mut out = HodgeDiamond::new();
    for s in sectors(f) {
        let d = sector_diamonds
            .get(&s.key)
            .ok_or_else(|| Error::MissingSector(s.key.to_string()))?;
        let shift = match &s.box_element {
            None => 0,
            Some(b) => b.age2().ok_or_else(|| {
                Error::Unsupported(format!("age {} is not a half-integer", b.age))
            })?,
        };
        out = out.direct_sum(&d.shift(shift));
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CdualRow {
    pub lambda2: i64,
    pub mu2: i64,
    pub left: u64,
    pub right: u64,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CdualReport {
    pub d: usize,
    pub pair_rank: usize,
    pub rows: Vec<CdualRow>,
    pub pass: bool,
}

impl CdualReport {
    pub fn failures(&self) -> Vec<&CdualRow> {
        self.rows.iter().filter(|r| !r.pass).collect()
    }

    pub fn to_table(&self) -> String {
        let mut s = format!(
            "{:>6} {:>6} {:>6} {:>6}  status\n",
            "lambda", "mu", "left", "right"
        );
        for r in &self.rows {
            s.push_str(&format!(
                "{:>6} {:>6} {:>6} {:>6}  {}\n",
                half(r.lambda2),
                half(r.mu2),
                r.left,
                r.right,
                if r.pass { "ok" } else { "FAIL" }
            ));
        }
        s.push_str(if self.pass { "PASS\n" } else { "FAIL\n" });
        s
    }
}

/// Compare left(λ, μ) with right(d − λ, μ) over the union of both supports.
pub fn verify_cdual(
    pair: &ClarkePair,
    left: &HodgeDiamond,
    right: &HodgeDiamond,
    d: usize,
) -> CdualReport {
    compare_cdual(left, right, d, pair.sigma.fan().rank())
}

/// The same comparison without a pair at hand.
pub fn compare_cdual(
    left: &HodgeDiamond,
    right: &HodgeDiamond,
    d: usize,
    pair_rank: usize,
) -> CdualReport {
    let d2 = 2 * d as i64;
    let (l, r) = (left.entries(), right.entries());
    let mut keys: Vec<(i64, i64)> = l.keys().copied().collect();
    keys.extend(r.keys().map(|(a, b)| (d2 - a, *b)));
    keys.sort();
    keys.dedup();
    let rows: Vec<CdualRow> = keys
        .into_iter()
        .map(|(a, b)| {
            let x = l.get(&(a, b)).copied().unwrap_or(0);
            let y = r.get(&(d2 - a, b)).copied().unwrap_or(0);
            CdualRow {
                lambda2: a,
                mu2: b,
                left: x,
                right: y,
                pass: x == y,
            }
        })
        .collect();
    let pass = rows.iter().all(|r| r.pass);
    CdualReport {
        d,
        pair_rank,
        rows,
        pass,
    }
}

/// Index of the sublattice spanned by linearly independent vectors inside
/// the saturation of their span.
pub fn sublattice_index(gens: &[Vec<Int>]) -> Int {
    let m =
        crate::lattice::IntMatrix::from_columns(gens, gens.first().map(|g| g.len()).unwrap_or(0));
    crate::lattice::smith_normal_form(&m)
        .diagonal()
        .iter()
        .fold(Int::from(1), |acc, x| acc * x.abs())
}
