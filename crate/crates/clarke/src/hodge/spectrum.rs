//! Newton spectrum of a nondegenerate Laurent polynomial or convenient
//! polynomial: the multiplicity of λ is the coefficient of t^λ in
//! (1 − t)^d Σ_m t^{ν(m)}, evaluated by a half-open cone decomposition.

use super::HodgeDiamond;
use crate::error::{Error, Result};
use crate::lattice::{parallelepiped_coefficients, rat, solve_q, Int, Rat};
use crate::polytope::triangulate::{boundary_faces, placing_triangulation};
use crate::polytope::{det_q, NewtonLevel, Polytope};
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::collections::BTreeMap;

/// Input to the spectrum engine.
#[derive(Debug, Clone)]
pub struct SpectrumRequest {
    pub newton: NewtonLevel,
}

impl SpectrumRequest {
    pub fn new(newton: NewtonLevel) -> Self {
        SpectrumRequest { newton }
    }

    /// Newton polytope conv(support ∪ {0}).
    pub fn from_support(support: &[Vec<i64>]) -> Result<Self> {
        let p = newton_polytope(support)?;
        Ok(Self::new(NewtonLevel::new(p)?))
    }

    pub fn rank(&self) -> usize {
        self.newton.polytope().rank()
    }
}

pub(crate) fn newton_polytope(support: &[Vec<i64>]) -> Result<Polytope> {
    let d = support
        .first()
        .map(|v| v.len())
        .ok_or_else(|| Error::Empty("support".into()))?;
    if support.iter().any(|v| v.len() != d) {
        return Err(Error::Invalid("support points of different ranks".into()));
    }
    let mut pts = support.to_vec();
    pts.push(vec![0; d]);
    Polytope::from_int_points(crate::lattice::LatticeTag::M, &pts)
}

/// How the monomials of the module are indexed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SpectrumMode {
    /// Origin interior: Laurent polynomial on the torus.
    Torus,
    /// Origin a vertex, polytope in the positive orthant meeting every axis.
    Affine,
}

pub fn classify(nl: &NewtonLevel) -> Result<SpectrumMode> {
    if nl.origin_interior() {
        return Ok(SpectrumMode::Torus);
    }
    let p = nl.polytope();
    let d = p.rank();
    let verts = p
        .integer_vertices()
        .ok_or_else(|| Error::Invalid("Newton polytope is not a lattice polytope".into()))?;
    let in_orthant = verts.iter().all(|v| v.iter().all(|x| !x.is_negative()));
    let convenient = (0..d).all(|i| {
        verts
            .iter()
            .any(|v| v[i].is_positive() && v.iter().enumerate().all(|(j, x)| j == i || x.is_zero()))
    });
    if in_orthant && convenient && nl.origin_is_vertex() {
        Ok(SpectrumMode::Affine)
    } else {
        Err(Error::Invalid("Newton support is not convenient".into()))
    }
}

/// Spectrum levels with multiplicities.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Spectrum {
    pub levels: BTreeMap<Rat, u64>,
    pub total: u64,
}

impl Spectrum {
    pub fn multiplicity(&self, l: &Rat) -> u64 {
        self.levels.get(l).copied().unwrap_or(0)
    }

    /// Place λ at (λ, λ) in degree `degree`; fails unless every level is a half-integer.
    pub fn to_diamond(&self, degree: i64) -> Result<HodgeDiamond> {
        let mut d = HodgeDiamond::new();
        for (l, c) in &self.levels {
            let twice = l * rat(2);
            if !twice.is_integer() {
                return Err(Error::Unsupported(format!(
                    "level {l} is not a half-integer"
                )));
            }
            let x = twice
                .to_integer()
                .to_i64()
                .ok_or_else(|| Error::Invalid("level out of range".into()))?;
            d.add_entry(degree, x, x, *c);
        }
        Ok(d)
    }
}

/// (1 − t)^r Σ_{m ∈ cone(Q)} t^{ν(m)} for a full-dimensional Q with 0 ∈ Q,
/// written as a sum over half-open fundamental parallelepipeds.
fn cone_series(q: &Polytope, xi_positive: bool) -> Result<BTreeMap<Rat, i64>> {
    let r = q.rank();
    let mut out = BTreeMap::new();
    if r == 0 {
        out.insert(Rat::zero(), 1);
        return Ok(out);
    }
    let ints = q.lattice_points();
    let pts: Vec<Vec<Rat>> = ints
        .iter()
        .map(|v| v.iter().map(|x| Rat::from_integer(x.clone())).collect())
        .collect();
    let simplices = placing_triangulation(&pts);
    let faces: Vec<Vec<usize>> = boundary_faces(&simplices)
        .into_iter()
        .filter(|f| !det_q(f.iter().map(|&i| pts[i].clone()).collect()).is_zero())
        .collect();
    // a direction generic for every cone, interior to the orthant when asked
    let mut chosen = None;
    for s in 2..200i64 {
        let xi: Vec<Rat> = (0..r)
            .map(|i| {
                let e = Rat::new(Int::one(), Int::from(s + 3).pow(i as u32 + 1));
                if xi_positive || i == 0 {
                    Rat::one() + e
                } else {
                    e * rat(if i % 2 == 0 { 1 } else { -1 })
                }
            })
            .collect();
        let mut coords = Vec::new();
        let mut ok = true;
        for f in &faces {
            let cols: Vec<Vec<Rat>> = (0..r)
                .map(|row| f.iter().map(|&i| pts[i][row].clone()).collect())
                .collect();
            let mu =
                solve_q(&cols, &xi).ok_or_else(|| Error::Consistency("singular cone".into()))?;
            if mu.iter().any(|m| m.is_zero()) {
                ok = false;
                break;
            }
            coords.push(mu);
        }
        if ok {
            chosen = Some(coords);
            break;
        }
    }
    let coords = chosen.ok_or_else(|| Error::Consistency("no generic direction found".into()))?;
    for (f, mu) in faces.iter().zip(coords) {
        let gens: Vec<Vec<Int>> = f.iter().map(|&i| ints[i].clone()).collect();
        for alpha in parallelepiped_coefficients(&gens) {
            let nu = alpha.iter().zip(&mu).fold(Rat::zero(), |acc, (a, m)| {
                acc + if m.is_negative() && a.is_zero() {
                    Rat::one()
                } else {
                    a.clone()
                }
            });
            *out.entry(nu).or_insert(0) += 1;
        }
    }
    Ok(out)
}

/// Face of an orthant polytope on the coordinate subspace of `idx`, in those coordinates.
fn coordinate_face(p: &Polytope, idx: &[usize]) -> Result<Polytope> {
    let verts = p
        .integer_vertices()
        .ok_or_else(|| Error::Invalid("not a lattice polytope".into()))?;
    let pts: Vec<Vec<i64>> = verts
        .iter()
        .filter(|v| {
            v.iter()
                .enumerate()
                .all(|(j, x)| idx.contains(&j) || x.is_zero())
        })
        .map(|v| idx.iter().map(|&j| v[j].to_i64().unwrap_or(0)).collect())
        .collect();
    Polytope::from_int_points(p.tag(), &pts)
}

pub fn newton_spectrum(req: &SpectrumRequest) -> Result<Spectrum> {
    let nl = &req.newton;
    let d = req.rank();
    let series = match classify(nl)? {
        SpectrumMode::Torus => cone_series(nl.polytope(), false)?,
        SpectrumMode::Affine => {
            let mut acc: BTreeMap<Rat, i64> = BTreeMap::new();
            for mask in 0u32..(1 << d) {
                let idx: Vec<usize> = (0..d).filter(|b| mask >> b & 1 == 1).collect();
                let sign = if (d - idx.len()) % 2 == 0 { 1 } else { -1 };
                let s = if idx.is_empty() {
                    BTreeMap::from([(Rat::zero(), 1)])
                } else {
                    cone_series(&coordinate_face(nl.polytope(), &idx)?, true)?
                };
                for (l, c) in s {
                    *acc.entry(l).or_insert(0) += sign * c;
                }
            }
            acc
        }
    };
    let mut levels = BTreeMap::new();
    for (l, c) in series {
        match c.signum() {
            0 => {}
            1 => {
                levels.insert(l, c as u64);
            }
            _ => {
                return Err(Error::Consistency(format!(
                    "negative multiplicity at level {l}"
                )))
            }
        }
    }
    let total = levels.values().sum();
    Ok(Spectrum { levels, total })
}
