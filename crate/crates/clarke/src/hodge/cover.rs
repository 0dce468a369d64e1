//! Coinvariant cohomology of branched covers and the assembly of LG diamonds
//! from the subset decomposition over I ⊆ J.

use super::classical::ToricSurface;
use super::HodgeDiamond;
use crate::error::{Error, Result};
use crate::lattice::Rat;
use crate::nefclarke::{CoverSpec, LGModel};
use num_traits::{One, Zero};

fn h0_p1(a: i64) -> u64 {
    (a + 1).max(0) as u64
}

fn h1_p1(a: i64) -> u64 {
    (-a - 1).max(0) as u64
}

/// Anti-invariant part of the double cover of P¹ with L = O(e), deg B = 2e:
/// h^q(Ω^p(log B) ⊗ L^{-1}) sits at (p, q) in degree p + q.
pub fn ev_coinvariant_curve(e: i64) -> Result<HodgeDiamond> {
    if e < 0 {
        return Err(Error::Invalid(format!("negative branch degree {}", 2 * e)));
    }
    Ok(HodgeDiamond::new()
        .with(0, 0, 0, h0_p1(-e))
        .with(1, 0, 2, h1_p1(-e))
        .with(1, 2, 0, h0_p1(e - 2))
        .with(2, 2, 2, h1_p1(e - 2)))
}

/// χ(Ω^p_X(log B) ⊗ L^{-1}) for p = 0, 1, 2 on a toric surface.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SurfaceChi {
    pub chi: [Rat; 3],
}

/// Euler characteristics for a branch divisor with snc components of the
/// given classes and a line bundle L with L² = O(B).
pub fn ev_surface_chi(s: &ToricSurface, l: &[Rat], components: &[Vec<Rat>]) -> SurfaceChi {
    let n = s.ray_count();
    let k = s.canonical();
    let zero = vec![Rat::zero(); n];
    let add = |a: &[Rat], b: &[Rat]| a.iter().zip(b).map(|(x, y)| x + y).collect::<Vec<Rat>>();
    let scale = |a: &[Rat], c: &Rat| a.iter().map(|x| x * c).collect::<Vec<Rat>>();
    let b = components.iter().fold(zero.clone(), |acc, c| add(&acc, c));
    let m = scale(l, &-Rat::one());
    // p = 0: L^{-1}
    let chi0 = s.hrr(1, &m, &Rat::zero());
    // p = 1: c(Ω¹(log B)) = c(Ω¹) Π (1 + B_j + B_j²)
    let mut c1 = add(&k, &b);
    let mut c2 = s.euler() + s.intersect(&k, &b);
    for (i, bi) in components.iter().enumerate() {
        c2 += s.intersect(bi, bi);
        for bj in &components[i + 1..] {
            c2 += s.intersect(bi, bj);
        }
    }
    c2 = &c2 + s.intersect(&c1, &m) + s.intersect(&m, &m);
    c1 = add(&c1, &scale(&m, &Rat::from_integer(2.into())));
    let chi1 = s.hrr(2, &c1, &c2);
    // p = 2: K + B − L
    let chi2 = s.hrr(1, &add(&add(&k, &b), &m), &Rat::zero());
    SurfaceChi {
        chi: [chi0, chi1, chi2],
    }
}

/// Result of the coinvariant calculator.
#[derive(Debug, Clone, PartialEq)]
pub enum EvData {
    Exact(HodgeDiamond),
    EulerCharacteristics(SurfaceChi),
}

/// Coinvariant part of H^*(X̂_I ∖ R_I) for the subset recorded in `spec`,
/// using L_I = Σ_{i∈I} E_i and B_I = Σ_{i∈I} (D_{i,gen} + E_i).
pub fn ev_coinvariant_diamond(spec: &CoverSpec) -> Result<EvData> {
    match spec.dim() {
        1 => {
            let degs = spec.curve_degrees().unwrap_or_default();
            let e: i64 = spec.subset.iter().map(|&i| degs[i]).sum();
            Ok(EvData::Exact(ev_coinvariant_curve(e)?))
        }
        2 => {
            let s = ToricSurface::new(&spec.base)?;
            let n = s.ray_count();
            let mut l = vec![Rat::zero(); n];
            let mut components = Vec::new();
            for &i in &spec.subset {
                let mut class = vec![Rat::zero(); n];
                for (r, c) in spec.divisors[i].iter().enumerate() {
                    if *c == 0 {
                        continue;
                    }
                    let d = s
                        .divisor(&spec.base.rays()[r])
                        .ok_or_else(|| Error::Consistency("ray lost".into()))?;
                    let cq = Rat::from_integer((*c).into());
                    for t in 0..n {
                        class[t] += &d[t] * &cq;
                    }
                    for _ in 0..*c {
                        components.push(d.clone());
                    }
                }
                for t in 0..n {
                    l[t] += &class[t];
                }
                components.push(class);
            }
            Ok(EvData::EulerCharacteristics(ev_surface_chi(
                &s,
                &l,
                &components,
            )))
        }
        d => Err(Error::Unsupported(format!(
            "coinvariant cohomology over a base of dimension {d}"
        ))),
    }
}

/// Unshifted summand of I in the decomposition over a P¹ base with
/// deg L_i = e_i: H^*_{Z^I}(X̂_I ∖ R_I)^{(I)}.
pub(crate) fn curve_term(degrees: &[i64], i_set: &[usize]) -> Result<HodgeDiamond> {
    let k = degrees.len();
    let ic: Vec<usize> = (0..k).filter(|i| !i_set.contains(i)).collect();
    match ic.len() {
        0 => ev_coinvariant_curve(degrees.iter().sum()),
        // Z^I is a free orbit over each of the 2e_i points of B_i
        1 => Ok(HodgeDiamond::new().with(2, 2, 2, 2 * degrees[ic[0]] as u64)),
        _ => Ok(HodgeDiamond::new()),
    }
}

pub fn subsets(j: &[usize]) -> Vec<Vec<usize>> {
    (0u64..1 << j.len())
        .map(|mask| {
            j.iter()
                .enumerate()
                .filter(|(b, _)| mask >> b & 1 == 1)
                .map(|(_, &x)| x)
                .collect()
        })
        .collect()
}

/// Summands of the decomposition for a P¹ base, shifted by degree |I| and
/// weight |I|/2.
pub fn lg_terms_curve(degrees: &[i64], j: &[usize]) -> Result<Vec<(Vec<usize>, HodgeDiamond)>> {
    if let Some(&bad) = j.iter().find(|&&i| i >= degrees.len()) {
        return Err(Error::Invalid(format!(
            "index {bad} outside 0..{}",
            degrees.len()
        )));
    }
    if degrees.iter().any(|&e| e < 0) {
        return Err(Error::Invalid("negative degree".into()));
    }
    subsets(j)
        .into_iter()
        .map(|i| {
            let s = i.len() as i64;
            Ok((i.clone(), curve_term(degrees, &i)?.shift_degree(s).shift(s)))
        })
        .collect()
}

pub fn lg_diamond_curve(degrees: &[i64], j: &[usize]) -> Result<HodgeDiamond> {
    Ok(lg_terms_curve(degrees, j)?
        .iter()
        .fold(HodgeDiamond::new(), |acc, (_, d)| acc.direct_sum(d)))
}

/// Diamond of H^*(𝕍_J, g_{2,J} + g_{1,J^c}). Only P¹ bases are evaluated.
pub fn lg_diamond(model: &LGModel) -> Result<HodgeDiamond> {
    match model.cover.curve_degrees() {
        Some(d) => lg_diamond_curve(&d, &model.j),
        None => Err(Error::Unsupported(format!(
            "LG diamonds over a base of dimension {} are only available at the level of Euler characteristics",
            model.cover.dim()
        ))),
    }
}
