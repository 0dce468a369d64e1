//! Regular triangulations with a height function certifying regularity.

use crate::error::{Error, Result};
use crate::lattice::{lp_feasible, rat_vec, Constraint, Int, LpOutcome, Rat, Relation};
use crate::polytope::hull::{affine_span, full_dim_hull};
use crate::polytope::triangulate::{barycentric, placing_triangulation};
use crate::polytope::{simplex_volume, Polytope};
use num_traits::{One, Signed, Zero};
use std::collections::BTreeMap;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Triangulation {
    points: Vec<Vec<Rat>>,
    simplices: Vec<Vec<usize>>,
    heights: Vec<Rat>,
    unimodular: bool,
}

impl Triangulation {
    /// Candidate points, sorted lexicographically.
    pub fn points(&self) -> &[Vec<Rat>] {
        &self.points
    }
    pub fn simplices(&self) -> &[Vec<usize>] {
        &self.simplices
    }
    pub fn heights(&self) -> &[Rat] {
        &self.heights
    }
    pub fn is_unimodular(&self) -> bool {
        self.unimodular
    }

    /// Cells of the lower hull of the lifted points.
    pub fn lower_hull_cells(&self) -> Vec<Vec<usize>> {
        lower_hull(&self.points, &self.heights)
    }

    /// Heights reproduce exactly the stored simplices.
    pub fn verify(&self) -> bool {
        self.lower_hull_cells() == self.simplices
    }
}

fn lower_hull(points: &[Vec<Rat>], heights: &[Rat]) -> Vec<Vec<usize>> {
    let lifted: Vec<Vec<Rat>> = points
        .iter()
        .zip(heights)
        .map(|(p, h)| {
            let mut x = p.clone();
            x.push(h.clone());
            x
        })
        .collect();
    if affine_span(&lifted).dim < lifted[0].len() {
        return vec![(0..lifted.len()).collect()];
    }
    let hull = full_dim_hull(&lifted);
    let mut cells: Vec<Vec<usize>> = hull
        .facets
        .iter()
        .filter(|(u, _)| u.last().unwrap().is_positive())
        .map(|(u, off)| {
            let u = rat_vec(u);
            (0..lifted.len())
                .filter(|&i| (crate::lattice::dot_q(&u, &lifted[i]) + off).is_zero())
                .collect()
        })
        .collect();
    cells.sort();
    cells
}

/// Triangulation of a full-dimensional polytope using all candidate points,
/// which must lie in `p` and include its vertices.
pub fn regular_triangulation(p: &Polytope, candidates: &[Vec<Int>]) -> Result<Triangulation> {
    if !p.is_full_dimensional() {
        return Err(Error::NotFullDimensional);
    }
    let mut points: Vec<Vec<Rat>> = candidates.iter().map(|c| rat_vec(c)).collect();
    points.sort();
    points.dedup();
    if let Some(c) = points.iter().find(|c| !p.contains(c)) {
        return Err(Error::Invalid(format!(
            "candidate {c:?} outside the polytope"
        )));
    }
    if let Some(v) = p.vertices().iter().find(|v| !points.contains(v)) {
        return Err(Error::Invalid(format!(
            "vertex {v:?} missing from candidates"
        )));
    }
    let simplices = placing_triangulation(&points);
    let heights = certify_heights(&points, &simplices)?;
    if lower_hull(&points, &heights) != simplices {
        return Err(Error::Consistency(
            "heights do not reproduce the triangulation".into(),
        ));
    }
    let unimodular = simplices
        .iter()
        .all(|s| simplex_volume(&points, s).is_one());
    Ok(Triangulation {
        points,
        simplices,
        heights,
        unimodular,
    })
}

/// Heights with h = 0 on the first simplex and a folding margin ≥ 1 across
/// every interior ridge.
fn certify_heights(points: &[Vec<Rat>], simplices: &[Vec<usize>]) -> Result<Vec<Rat>> {
    let n = points.len();
    let mut ridges: BTreeMap<Vec<usize>, Vec<usize>> = BTreeMap::new();
    for (si, s) in simplices.iter().enumerate() {
        for skip in 0..s.len() {
            let r: Vec<usize> = s
                .iter()
                .enumerate()
                .filter(|(i, _)| *i != skip)
                .map(|(_, &v)| v)
                .collect();
            ridges.entry(r).or_default().push(si);
        }
    }
    let mut cons = Vec::new();
    for &v in &simplices[0] {
        let mut e = vec![Rat::zero(); n];
        e[v] = Rat::one();
        cons.push(Constraint::new(e, Relation::Eq, Rat::zero()));
    }
    for (r, owners) in &ridges {
        if owners.len() != 2 {
            continue;
        }
        for (a, b) in [(owners[0], owners[1]), (owners[1], owners[0])] {
            let q = *simplices[b].iter().find(|v| !r.contains(v)).unwrap();
            let bc = barycentric(points, &simplices[a], &points[q]);
            let mut co = vec![Rat::zero(); n];
            co[q] += Rat::one();
            for (&v, l) in simplices[a].iter().zip(&bc) {
                co[v] -= l;
            }
            cons.push(Constraint::new(co, Relation::Ge, Rat::one()));
        }
    }
    match lp_feasible(n, &cons) {
        LpOutcome::Feasible(h) => Ok(h),
        LpOutcome::Infeasible(_) => Err(Error::Consistency(
            "placing triangulation admits no heights".into(),
        )),
    }
}
