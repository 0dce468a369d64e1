//! Cones, fans and stacky fans, with the fan constructors used for covers
//! and Landau–Ginzburg models.

mod properties;
mod triangulation;

pub use properties::{check_properties, Certificate, Property, PropertyRecord};
pub use triangulation::{regular_triangulation, Triangulation};

use crate::error::{Error, Result};
use crate::lattice::LatticeTag;
use crate::lattice::{
    lp_feasible, primitive_from_rat, primitive_int, rank_q, rat_vec, vec_gcd, Constraint, Int, Rat,
    Relation,
};
use crate::polytope::hull::affine_span;
use crate::polytope::{triangulate::placing_triangulation, Polytope};
use num_traits::{One, Zero};
use std::collections::{BTreeMap, BTreeSet};

fn is_primitive(v: &[Int]) -> bool {
    vec_gcd(v).is_one()
}

/// A strongly convex rational cone given by its minimal, sorted primitive rays.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Cone {
    rays: Vec<Vec<Int>>,
}

impl Cone {
    pub fn new(rays: &[Vec<Int>]) -> Result<Cone> {
        let rank = rays
            .first()
            .map(|r| r.len())
            .ok_or_else(|| Error::Empty("cone without rays".into()))?;
        let mut prim = Vec::new();
        for r in rays {
            if r.len() != rank {
                return Err(Error::RankMismatch(rank, r.len()));
            }
            if r.iter().all(|x| x.is_zero()) {
                return Err(Error::Invalid("zero ray".into()));
            }
            prim.push(primitive_int(r));
        }
        prim.sort();
        prim.dedup();
        if !pointed(&prim) {
            return Err(Error::Invalid("cone contains a line".into()));
        }
        let minimal: Vec<Vec<Int>> = (0..prim.len())
            .filter(|&i| {
                let others: Vec<Vec<Int>> = prim
                    .iter()
                    .enumerate()
                    .filter(|(j, _)| *j != i)
                    .map(|(_, r)| r.clone())
                    .collect();
                !cone_contains(&others, &rat_vec(&prim[i]))
            })
            .map(|i| prim[i].clone())
            .collect();
        Ok(Cone { rays: minimal })
    }

    pub fn rays(&self) -> &[Vec<Int>] {
        &self.rays
    }

    pub fn dim(&self) -> usize {
        let rows: Vec<Vec<Rat>> = self.rays.iter().map(|r| rat_vec(r)).collect();
        rank_q(&rows)
    }

    pub fn is_simplicial(&self) -> bool {
        self.dim() == self.rays.len()
    }

    pub fn contains(&self, x: &[Rat]) -> bool {
        cone_contains(&self.rays, x)
    }
}

/// Exists m with ⟨m, ρ⟩ ≥ 1 on all rays.
fn pointed(rays: &[Vec<Int>]) -> bool {
    if rays.is_empty() {
        return true;
    }
    let cons: Vec<Constraint> = rays
        .iter()
        .map(|r| Constraint::new(rat_vec(r), Relation::Ge, Rat::one()))
        .collect();
    lp_feasible(rays[0].len(), &cons).is_feasible()
}

/// Whether x is a nonnegative combination of `rays`.
pub fn cone_contains(rays: &[Vec<Int>], x: &[Rat]) -> bool {
    if rays.is_empty() {
        return x.iter().all(|c| c.is_zero());
    }
    let n = rays.len();
    let mut cons: Vec<Constraint> = (0..x.len())
        .map(|c| {
            Constraint::new(
                rays.iter()
                    .map(|r| Rat::from_integer(r[c].clone()))
                    .collect(),
                Relation::Eq,
                x[c].clone(),
            )
        })
        .collect();
    for j in 0..n {
        let mut e = vec![Rat::zero(); n];
        e[j] = Rat::one();
        cons.push(Constraint::new(e, Relation::Ge, Rat::zero()));
    }
    lp_feasible(n, &cons).is_feasible()
}

/// All faces (including the empty face and the cone itself) of the cone
/// spanned by `idx`, as sorted index subsets.
fn cone_faces(rays: &[Vec<Int>], idx: &[usize]) -> Vec<Vec<usize>> {
    let rows: Vec<Vec<Rat>> = idx.iter().map(|&i| rat_vec(&rays[i])).collect();
    if rank_q(&rows) == idx.len() {
        let mut out = Vec::new();
        for mask in 0u64..(1u64 << idx.len()) {
            out.push(
                idx.iter()
                    .enumerate()
                    .filter(|(b, _)| mask >> b & 1 == 1)
                    .map(|(_, &i)| i)
                    .collect(),
            );
        }
        return out;
    }
    let rank = rays[0].len();
    let mut pts = rows.clone();
    pts.push(vec![Rat::zero(); rank]);
    let q = Polytope::convex_hull(LatticeTag::N, &pts).expect("nonempty");
    let origin = q
        .vertices()
        .iter()
        .position(|v| v.iter().all(|x| x.is_zero()))
        .expect("origin is a vertex");
    let lookup: BTreeMap<&Vec<Rat>, usize> = rows.iter().zip(idx).map(|(r, &i)| (r, i)).collect();
    let mut out: Vec<Vec<usize>> = vec![vec![]];
    for f in q.faces() {
        if f.contains(&origin) {
            let mut s: Vec<usize> = f
                .iter()
                .filter(|&&v| v != origin)
                .map(|&v| lookup[&q.vertices()[v]])
                .collect();
            s.sort();
            if !s.is_empty() {
                out.push(s);
            }
        }
    }
    out
}

/// A fan with a global ray list. `cones` holds every cone (the empty cone
/// first), closed under faces; maximal cones are kept separately.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Fan {
    rank: usize,
    rays: Vec<Vec<Int>>,
    cones: Vec<Vec<usize>>,
    maximal: Vec<Vec<usize>>,
}

impl Fan {
    /// Build from maximal cones (given as ray-index sets).
    pub fn new(rank: usize, rays: Vec<Vec<Int>>, maximal: Vec<Vec<usize>>) -> Result<Fan> {
        for r in &rays {
            if r.len() != rank {
                return Err(Error::RankMismatch(rank, r.len()));
            }
            if !is_primitive(r) {
                return Err(Error::Invalid(format!("ray {r:?} is not primitive")));
            }
        }
        let mut all: BTreeSet<Vec<usize>> = BTreeSet::new();
        let mut given: Vec<Vec<usize>> = Vec::new();
        for c in maximal {
            let mut c = c;
            c.sort();
            c.dedup();
            if let Some(&bad) = c.iter().find(|&&i| i >= rays.len()) {
                return Err(Error::Invalid(format!("ray index {bad} out of range")));
            }
            let cr: Vec<Vec<Int>> = c.iter().map(|&i| rays[i].clone()).collect();
            if !pointed(&cr) {
                return Err(Error::Invalid(format!("cone {c:?} contains a line")));
            }
            for f in cone_faces(&rays, &c) {
                all.insert(f);
            }
            given.push(c);
        }
        given.sort();
        given.dedup();
        let maximal: Vec<Vec<usize>> = given
            .iter()
            .filter(|c| {
                !all.iter()
                    .any(|d| d.len() > c.len() && c.iter().all(|x| d.contains(x)))
            })
            .cloned()
            .collect();
        let mut cones: Vec<Vec<usize>> = all.into_iter().collect();
        cones.sort_by(|a, b| a.len().cmp(&b.len()).then(a.cmp(b)));
        Ok(Fan {
            rank,
            rays,
            cones,
            maximal,
        })
    }

    pub fn rank(&self) -> usize {
        self.rank
    }
    pub fn rays(&self) -> &[Vec<Int>] {
        &self.rays
    }
    pub fn cones(&self) -> &[Vec<usize>] {
        &self.cones
    }
    pub fn maximal_cones(&self) -> &[Vec<usize>] {
        &self.maximal
    }

    pub fn ray_rows(&self, cone: &[usize]) -> Vec<Vec<Rat>> {
        cone.iter().map(|&i| rat_vec(&self.rays[i])).collect()
    }

    pub fn cone_dim(&self, cone: &[usize]) -> usize {
        rank_q(&self.ray_rows(cone))
    }

    pub fn is_simplicial(&self) -> bool {
        self.maximal.iter().all(|c| self.cone_dim(c) == c.len())
    }

    /// Every maximal cone is full-dimensional.
    pub fn is_pure(&self) -> bool {
        self.maximal.iter().all(|c| self.cone_dim(c) == self.rank)
    }

    pub fn cone(&self, cone: &[usize]) -> Cone {
        Cone {
            rays: {
                let mut r: Vec<Vec<Int>> = cone.iter().map(|&i| self.rays[i].clone()).collect();
                r.sort();
                r
            },
        }
    }

    /// Codimension-one cones with the maximal cones (indices) containing them.
    pub fn walls(&self) -> Vec<(Vec<usize>, Vec<usize>)> {
        let mut out: BTreeMap<Vec<usize>, Vec<usize>> = BTreeMap::new();
        for (mi, m) in self.maximal.iter().enumerate() {
            if self.cone_dim(m) != self.rank {
                continue;
            }
            for f in cone_faces(&self.rays, m) {
                if f.len() < self.rank && self.cone_dim(&f) + 1 == self.rank {
                    out.entry(f).or_default().push(mi);
                }
            }
        }
        out.into_iter().collect()
    }

    /// Support is all of ℝ^rank.
    pub fn is_complete(&self) -> bool {
        !self.maximal.is_empty()
            && self.is_pure()
            && self.walls().iter().all(|(_, ms)| ms.len() == 2)
    }

    /// Index of the first maximal cone containing x.
    pub fn find_cone(&self, x: &[Rat]) -> Option<usize> {
        self.maximal.iter().position(|c| {
            let rays: Vec<Vec<Int>> = c.iter().map(|&i| self.rays[i].clone()).collect();
            cone_contains(&rays, x)
        })
    }

    pub fn ray_index(&self, r: &[Int]) -> Option<usize> {
        self.rays.iter().position(|x| x.as_slice() == r)
    }
}

/// A simplicial fan with a positive integer attached to each ray.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StackyFan {
    fan: Fan,
    beta: Vec<u64>,
}

impl StackyFan {
    pub fn new(fan: Fan, beta: Vec<u64>) -> Result<StackyFan> {
        if beta.len() != fan.rays.len() {
            return Err(Error::Invalid(format!(
                "{} rays but {} beta values",
                fan.rays.len(),
                beta.len()
            )));
        }
        if beta.iter().any(|&b| b == 0) {
            return Err(Error::Invalid("beta values must be positive".into()));
        }
        if !fan.is_simplicial() {
            return Err(Error::Invalid("stacky fans must be simplicial".into()));
        }
        Ok(StackyFan { fan, beta })
    }

    pub fn trivial(fan: Fan) -> Result<StackyFan> {
        let n = fan.rays.len();
        StackyFan::new(fan, vec![1; n])
    }

    pub fn fan(&self) -> &Fan {
        &self.fan
    }
    pub fn beta(&self) -> &[u64] {
        &self.beta
    }

    pub fn extended_ray(&self, i: usize) -> Vec<Int> {
        self.fan.rays[i]
            .iter()
            .map(|x| x * Int::from(self.beta[i]))
            .collect()
    }

    pub fn extended_rays(&self) -> Vec<Vec<Int>> {
        (0..self.fan.rays.len())
            .map(|i| self.extended_ray(i))
            .collect()
    }
}

/// Fan over the faces of a polytope with the origin in its interior.
pub fn spanning_fan(p: &Polytope) -> Result<Fan> {
    if !p.origin_interior() {
        return Err(Error::OriginNotInterior);
    }
    let rays: Vec<Vec<Int>> = p.vertices().iter().map(|v| primitive_from_rat(v)).collect();
    let maximal: Vec<Vec<usize>> = (0..p.facets().len()).map(|i| p.facet_vertices(i)).collect();
    Fan::new(p.rank(), rays, maximal)
}

/// Complete simplicial fan whose rays are the given points, which must lie on
/// the boundary of their hull with the origin inside. Facets are triangulated
/// with the placing rule, so this is available up to rank 3.
pub fn fan_from_boundary_points(points: &[Vec<Int>]) -> Result<Fan> {
    let mut pts: Vec<Vec<Int>> = points.to_vec();
    pts.sort();
    pts.dedup();
    let rank = pts
        .first()
        .map(|p| p.len())
        .ok_or_else(|| Error::Empty("no points".into()))?;
    if rank > 3 {
        return Err(Error::Unsupported(format!(
            "boundary triangulation in rank {rank}"
        )));
    }
    let q: Vec<Vec<Rat>> = pts.iter().map(|p| rat_vec(p)).collect();
    let hull = Polytope::convex_hull(LatticeTag::N, &q)?;
    if !hull.origin_interior() {
        return Err(Error::OriginNotInterior);
    }
    for (p, x) in pts.iter().zip(&q) {
        if hull.contains_relative_interior(x) {
            return Err(Error::Invalid(format!("point {p:?} is interior")));
        }
        if !is_primitive(p) {
            return Err(Error::Invalid(format!("point {p:?} is not primitive")));
        }
    }
    let mut maximal = Vec::new();
    for f in hull.facets() {
        let on: Vec<usize> = (0..q.len()).filter(|&i| f.value(&q[i]).is_zero()).collect();
        if rank == 1 {
            maximal.push(on);
            continue;
        }
        let local: Vec<Vec<Rat>> = on.iter().map(|&i| q[i].clone()).collect();
        let span = affine_span(&local);
        let proj: Vec<Vec<Rat>> = local
            .iter()
            .map(|p| span.pivots.iter().map(|&c| p[c].clone()).collect())
            .collect();
        for s in placing_triangulation(&proj) {
            maximal.push(s.iter().map(|&j| on[j]).collect());
        }
    }
    Fan::new(rank, pts, maximal)
}

/// Simplicial refinement of the spanning fan using every boundary lattice point.
pub fn refined_spanning_fan(p: &Polytope) -> Result<Fan> {
    if !p.origin_interior() {
        return Err(Error::OriginNotInterior);
    }
    if !p.is_lattice_polytope() {
        return Err(Error::Invalid(
            "refined spanning fan needs a lattice polytope".into(),
        ));
    }
    fan_from_boundary_points(&p.boundary_lattice_points())
}

/// Fan of the total space of ⊕_j O(−Σ_i a_{j,i} E_i) over `base`. Fiber rays
/// (0, e_j) come first, followed by the lifted base rays (ρ_i, a_{·,i}).
pub fn cayley_fan(base: &Fan, coeffs: &[Vec<i64>]) -> Result<Fan> {
    let k = coeffs.len();
    let n = base.rank;
    for a in coeffs {
        if a.len() != base.rays.len() {
            return Err(Error::Invalid(format!(
                "{} coefficients for {} rays",
                a.len(),
                base.rays.len()
            )));
        }
    }
    let mut rays = Vec::new();
    for j in 0..k {
        let mut r = vec![Int::zero(); n + k];
        r[n + j] = Int::one();
        rays.push(r);
    }
    for (i, rho) in base.rays.iter().enumerate() {
        let mut r = rho.clone();
        r.extend(coeffs.iter().map(|a| Int::from(a[i])));
        rays.push(r);
    }
    let maximal = base
        .maximal
        .iter()
        .map(|c| (0..k).chain(c.iter().map(|&i| i + k)).collect())
        .collect();
    Fan::new(n + k, rays, maximal)
}

/// The stacky fan with rays ρ × a_i e_i (ρ ∈ A_i), where a_i = 2 for i ∈ J and
/// 1 otherwise. The point 0 ∈ A_i gives the fiber ray e_i with β = a_i.
/// Nonzero points across all parts must be primitive and lie on the boundary
/// of their common hull.
pub fn sigma_family(a_parts: &[Vec<Vec<Int>>], j: &[usize]) -> Result<StackyFan> {
    let k = a_parts.len();
    if k == 0 {
        return Err(Error::Empty("no parts".into()));
    }
    if let Some(&bad) = j.iter().find(|&&i| i >= k) {
        return Err(Error::Invalid(format!("index {bad} outside 0..{k}")));
    }
    let mult: Vec<i64> = (0..k).map(|i| if j.contains(&i) { 2 } else { 1 }).collect();
    let mut owner: BTreeMap<Vec<Int>, usize> = BTreeMap::new();
    for (i, part) in a_parts.iter().enumerate() {
        for p in part {
            if p.iter().all(|x| x.is_zero()) {
                continue;
            }
            if let Some(prev) = owner.insert(p.clone(), i) {
                if prev != i {
                    return Err(Error::Invalid(format!("point {p:?} lies in two parts")));
                }
            }
        }
    }
    let base_pts: Vec<Vec<Int>> = owner.keys().cloned().collect();
    let base = fan_from_boundary_points(&base_pts)?;
    let coeffs: Vec<Vec<i64>> = (0..k)
        .map(|jj| {
            base.rays
                .iter()
                .map(|r| if owner[r] == jj { mult[jj] } else { 0 })
                .collect()
        })
        .collect();
    let fan = cayley_fan(&base, &coeffs)?;
    let mut beta: Vec<u64> = mult.iter().map(|&m| m as u64).collect();
    beta.extend(std::iter::repeat(1).take(base.rays.len()));
    StackyFan::new(fan, beta)
}
