//! Rational polytopes in a lattice with paired V- and H-representations.

pub(crate) mod hull;
pub(crate) mod triangulate;

use crate::error::{Error, Result};
use crate::lattice::{dot_q, int_vec, rank_q, rat, Int, LatticeTag, LatticeVector, Rat};
use hull::{affine_span, full_dim_hull};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use std::collections::{BTreeMap, BTreeSet};

/// Facet inequality ⟨x, normal⟩ ≥ −offset with a primitive integral normal.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Facet {
    pub normal: Vec<Int>,
    pub offset: Rat,
}

impl Facet {
    pub fn value(&self, x: &[Rat]) -> Rat {
        dot_q(&to_rat(&self.normal), x) + &self.offset
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Polytope {
    tag: LatticeTag,
    rank: usize,
    dim: usize,
    vertices: Vec<Vec<Rat>>,
    facets: Vec<Facet>,
    /// Affine span as equations ⟨x, a⟩ = c; empty when full-dimensional.
    equations: Vec<(Vec<Int>, Rat)>,
    name: Option<String>,
}

fn to_rat(v: &[Int]) -> Vec<Rat> {
    v.iter().map(|x| Rat::from_integer(x.clone())).collect()
}

impl Polytope {
    pub fn convex_hull(tag: LatticeTag, points: &[Vec<Rat>]) -> Result<Polytope> {
        if points.is_empty() {
            return Err(Error::Empty("convex hull of no points".into()));
        }
        let rank = points[0].len();
        if let Some(p) = points.iter().find(|p| p.len() != rank) {
            return Err(Error::RankMismatch(rank, p.len()));
        }
        let mut pts: Vec<Vec<Rat>> = points.to_vec();
        pts.sort();
        pts.dedup();
        let span = affine_span(&pts);
        let (vertices, facets) = if span.dim == 0 {
            (vec![pts[0].clone()], vec![])
        } else {
            let proj: Vec<Vec<Rat>> = pts
                .iter()
                .map(|p| span.pivots.iter().map(|&c| p[c].clone()).collect())
                .collect();
            let raw = full_dim_hull(&proj);
            let verts: Vec<Vec<Rat>> = raw.vertices.iter().map(|&i| pts[i].clone()).collect();
            let facets: Vec<Facet> = raw
                .facets
                .into_iter()
                .map(|(u, off)| {
                    let mut normal = vec![Int::zero(); rank];
                    for (j, &c) in span.pivots.iter().enumerate() {
                        normal[c] = u[j].clone();
                    }
                    Facet {
                        normal,
                        offset: off,
                    }
                })
                .collect();
            (verts, facets)
        };
        let mut vertices = vertices;
        vertices.sort();
        let mut facets = facets;
        facets.sort();
        Ok(Polytope {
            tag,
            rank,
            dim: span.dim,
            vertices,
            facets,
            equations: span.equations,
            name: None,
        })
    }

    pub fn from_int_points(tag: LatticeTag, points: &[Vec<i64>]) -> Result<Polytope> {
        let pts: Vec<Vec<Rat>> = points
            .iter()
            .map(|p| p.iter().map(|&x| rat(x)).collect())
            .collect();
        Self::convex_hull(tag, &pts)
    }

    pub fn from_lattice_vectors(points: &[LatticeVector]) -> Result<Polytope> {
        let tag = points
            .first()
            .ok_or_else(|| Error::Empty("no points".into()))?
            .tag;
        if let Some(p) = points.iter().find(|p| p.tag != tag) {
            return Err(Error::TagMismatch {
                expected: tag.to_string(),
                found: p.tag.to_string(),
            });
        }
        let pts: Vec<Vec<Rat>> = points.iter().map(|p| to_rat(&p.coords)).collect();
        Self::convex_hull(tag, &pts)
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = Some(name.into());
        self
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }
    pub fn tag(&self) -> LatticeTag {
        self.tag
    }
    pub fn rank(&self) -> usize {
        self.rank
    }
    pub fn dim(&self) -> usize {
        self.dim
    }
    pub fn vertices(&self) -> &[Vec<Rat>] {
        &self.vertices
    }
    pub fn facets(&self) -> &[Facet] {
        &self.facets
    }
    pub fn equations(&self) -> &[(Vec<Int>, Rat)] {
        &self.equations
    }
    pub fn is_full_dimensional(&self) -> bool {
        self.dim == self.rank
    }

    /// Same set, compared through canonical representations.
    pub fn same_set(&self, other: &Polytope) -> bool {
        self.tag == other.tag && self.vertices == other.vertices
    }

    pub fn is_lattice_polytope(&self) -> bool {
        self.vertices
            .iter()
            .all(|v| v.iter().all(|x| x.is_integer()))
    }

    /// Vertices as integer vectors when all are integral.
    pub fn integer_vertices(&self) -> Option<Vec<Vec<Int>>> {
        if !self.is_lattice_polytope() {
            return None;
        }
        Some(
            self.vertices
                .iter()
                .map(|v| v.iter().map(|x| x.to_integer()).collect())
                .collect(),
        )
    }

    pub fn contains(&self, x: &[Rat]) -> bool {
        self.equations
            .iter()
            .all(|(a, c)| dot_q(&to_rat(a), x) == *c)
            && self.facets.iter().all(|f| !f.value(x).is_negative())
    }

    pub fn contains_int(&self, x: &[Int]) -> bool {
        self.contains(&to_rat(x))
    }

    /// Relative interior membership.
    pub fn contains_relative_interior(&self, x: &[Rat]) -> bool {
        self.equations
            .iter()
            .all(|(a, c)| dot_q(&to_rat(a), x) == *c)
            && self.facets.iter().all(|f| f.value(x).is_positive())
    }

    pub fn origin_interior(&self) -> bool {
        self.is_full_dimensional() && self.facets.iter().all(|f| f.offset.is_positive())
    }

    /// Vertex indices lying on facet `i`.
    pub fn facet_vertices(&self, i: usize) -> Vec<usize> {
        let f = &self.facets[i];
        (0..self.vertices.len())
            .filter(|&v| f.value(&self.vertices[v]).is_zero())
            .collect()
    }

    /// All nonempty faces as sorted vertex-index sets, including the polytope itself.
    pub fn faces(&self) -> Vec<Vec<usize>> {
        let mut all: BTreeSet<Vec<usize>> = BTreeSet::new();
        let full: Vec<usize> = (0..self.vertices.len()).collect();
        let mut frontier: Vec<Vec<usize>> = (0..self.facets.len())
            .map(|i| self.facet_vertices(i))
            .collect();
        let facet_sets = frontier.clone();
        all.insert(full);
        while let Some(f) = frontier.pop() {
            if f.is_empty() || !all.insert(f.clone()) {
                continue;
            }
            for g in &facet_sets {
                let inter: Vec<usize> = f.iter().copied().filter(|x| g.contains(x)).collect();
                if !inter.is_empty() && inter.len() < f.len() && !all.contains(&inter) {
                    frontier.push(inter);
                }
            }
        }
        all.into_iter().collect()
    }

    /// Dimension of the face spanned by the given vertex indices.
    pub fn face_dim(&self, face: &[usize]) -> usize {
        if face.is_empty() {
            return 0;
        }
        let base = &self.vertices[face[0]];
        let rows: Vec<Vec<Rat>> = face[1..]
            .iter()
            .map(|&v| {
                self.vertices[v]
                    .iter()
                    .zip(base)
                    .map(|(a, b)| a - b)
                    .collect()
            })
            .collect();
        rank_q(&rows)
    }

    pub fn dilate(&self, k: &Rat) -> Result<Polytope> {
        let pts: Vec<Vec<Rat>> = self
            .vertices
            .iter()
            .map(|v| v.iter().map(|x| x * k).collect())
            .collect();
        Ok(Self::convex_hull(self.tag, &pts)?)
    }

    pub fn dilate_int(&self, k: i64) -> Polytope {
        self.dilate(&rat(k))
            .expect("dilation of a nonempty polytope")
    }

    /// All lattice points, in lexicographic order.
    pub fn lattice_points(&self) -> Vec<Vec<Int>> {
        let mut lo = Vec::with_capacity(self.rank);
        let mut hi = Vec::with_capacity(self.rank);
        for c in 0..self.rank {
            let min = self.vertices.iter().map(|v| &v[c]).min().unwrap();
            let max = self.vertices.iter().map(|v| &v[c]).max().unwrap();
            lo.push(min.ceil().to_integer());
            hi.push(max.floor().to_integer());
        }
        if lo.iter().zip(&hi).any(|(l, h)| l > h) {
            return vec![];
        }
        let mut out = Vec::new();
        let mut cur = lo.clone();
        loop {
            if self.contains_int(&cur) {
                out.push(cur.clone());
            }
            let mut c = self.rank;
            loop {
                if c == 0 {
                    return out;
                }
                c -= 1;
                if cur[c] < hi[c] {
                    cur[c] += 1;
                    for j in c + 1..self.rank {
                        cur[j] = lo[j].clone();
                    }
                    break;
                }
            }
        }
    }

    pub fn interior_lattice_points(&self) -> Vec<Vec<Int>> {
        self.lattice_points()
            .into_iter()
            .filter(|p| self.contains_relative_interior(&to_rat(p)))
            .collect()
    }

    pub fn boundary_lattice_points(&self) -> Vec<Vec<Int>> {
        self.lattice_points()
            .into_iter()
            .filter(|p| !self.contains_relative_interior(&to_rat(p)))
            .collect()
    }

    /// Normalized volume (rank! · Euclidean volume) of a full-dimensional polytope.
    pub fn normalized_volume(&self) -> Result<Rat> {
        if !self.is_full_dimensional() {
            return Err(Error::NotFullDimensional);
        }
        let simplices = triangulate::placing_triangulation(&self.vertices);
        let mut total = Rat::zero();
        for s in &simplices {
            total += simplex_volume(&self.vertices, s);
        }
        Ok(total)
    }

    /// Triangulation of the full-dimensional hull of `self` using all of `points`
    /// (which must lie in the polytope and contain its vertices).
    pub fn triangulate_points(&self, points: &[Vec<Rat>]) -> Result<Vec<Vec<usize>>> {
        if !self.is_full_dimensional() {
            return Err(Error::NotFullDimensional);
        }
        Ok(triangulate::placing_triangulation(points))
    }
}

/// |det| of the edge vectors of a simplex given by indices.
pub(crate) fn simplex_volume(points: &[Vec<Rat>], s: &[usize]) -> Rat {
    let base = &points[s[0]];
    let rows: Vec<Vec<Rat>> = s[1..]
        .iter()
        .map(|&v| points[v].iter().zip(base).map(|(a, b)| a - b).collect())
        .collect();
    det_q(rows).abs()
}

pub(crate) fn det_q(mut m: Vec<Vec<Rat>>) -> Rat {
    let n = m.len();
    let mut det = Rat::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&r| !m[r][c].is_zero()) else {
            return Rat::zero();
        };
        if p != c {
            m.swap(p, c);
            det = -det;
        }
        det *= m[c][c].clone();
        for r in c + 1..n {
            let f = &m[r][c] / &m[c][c];
            for j in c..n {
                let s = &f * &m[c][j];
                m[r][j] -= s;
            }
        }
    }
    det
}

/// Polytope {x : ⟨a, x⟩ ≥ c for every (a, c)}, by vertex enumeration over
/// rank-sized subsets of the inequalities.
pub fn from_inequalities(
    tag: LatticeTag,
    rank: usize,
    rows: &[(Vec<Rat>, Rat)],
) -> Result<Polytope> {
    if let Some((a, _)) = rows.iter().find(|(a, _)| a.len() != rank) {
        return Err(Error::RankMismatch(rank, a.len()));
    }
    let normals: Vec<Vec<Rat>> = rows.iter().map(|(a, _)| a.clone()).collect();
    if rank_q(&normals) < rank || !positively_spanning(&normals, rank) {
        return Err(Error::Invalid(
            "inequalities do not bound a polytope".into(),
        ));
    }
    let mut verts: BTreeSet<Vec<Rat>> = BTreeSet::new();
    let mut pick: Vec<usize> = (0..rank).collect();
    if rows.len() < rank {
        return Err(Error::Empty("too few inequalities".into()));
    }
    loop {
        let a: Vec<Vec<Rat>> = pick.iter().map(|&i| rows[i].0.clone()).collect();
        if rank_q(&a) == rank {
            let b: Vec<Rat> = pick.iter().map(|&i| rows[i].1.clone()).collect();
            if let Some(x) = crate::lattice::solve_q(&a, &b) {
                if rows.iter().all(|(r, c)| dot_q(r, &x) >= *c) {
                    verts.insert(x);
                }
            }
        }
        let mut i = rank;
        loop {
            if i == 0 {
                let pts: Vec<Vec<Rat>> = verts.into_iter().collect();
                if pts.is_empty() {
                    return Err(Error::Empty("inequalities are infeasible".into()));
                }
                return Polytope::convex_hull(tag, &pts);
            }
            i -= 1;
            if pick[i] < rows.len() - rank + i {
                pick[i] += 1;
                for j in i + 1..rank {
                    pick[j] = pick[j - 1] + 1;
                }
                break;
            }
        }
    }
}

/// The cone generated by `rows` is all of ℚ^rank.
fn positively_spanning(rows: &[Vec<Rat>], rank: usize) -> bool {
    use crate::lattice::{lp_feasible, Constraint, Relation};
    (0..rank).all(|j| {
        [Rat::one(), -Rat::one()].iter().all(|sgn| {
            let n = rows.len();
            let mut cons: Vec<Constraint> = (0..rank)
                .map(|c| {
                    let rhs = if c == j { sgn.clone() } else { Rat::zero() };
                    Constraint::new(
                        rows.iter().map(|r| r[c].clone()).collect(),
                        Relation::Eq,
                        rhs,
                    )
                })
                .collect();
            for i in 0..n {
                let mut e = vec![Rat::zero(); n];
                e[i] = Rat::one();
                cons.push(Constraint::new(e, Relation::Ge, Rat::zero()));
            }
            lp_feasible(n, &cons).is_feasible()
        })
    })
}

pub fn polar_dual(p: &Polytope) -> Result<Polytope> {
    if !p.origin_interior() {
        return Err(Error::OriginNotInterior);
    }
    let pts: Vec<Vec<Rat>> = p
        .facets
        .iter()
        .map(|f| {
            f.normal
                .iter()
                .map(|u| Rat::from_integer(u.clone()) / &f.offset)
                .collect()
        })
        .collect();
    Polytope::convex_hull(p.tag.dual(), &pts)
}

pub fn is_reflexive(p: &Polytope) -> Result<bool> {
    if !p.is_full_dimensional() || !p.origin_interior() {
        return Err(Error::OriginNotInterior);
    }
    Ok(p.is_lattice_polytope() && polar_dual(p)?.is_lattice_polytope())
}

pub fn minkowski_sum(a: &Polytope, b: &Polytope) -> Result<Polytope> {
    if a.tag != b.tag {
        return Err(Error::TagMismatch {
            expected: a.tag.to_string(),
            found: b.tag.to_string(),
        });
    }
    if a.rank != b.rank {
        return Err(Error::RankMismatch(a.rank, b.rank));
    }
    let mut pts = Vec::new();
    for u in &a.vertices {
        for v in &b.vertices {
            pts.push(u.iter().zip(v).map(|(x, y)| x + y).collect());
        }
    }
    Polytope::convex_hull(a.tag, &pts)
}

/// Conv(∪_i (scale_i · part_i) × e_i ∪ ∪_i 0 × (−e_i)) in rank + k.
pub fn cayley_polytope(parts: &[Polytope], scales: &[i64]) -> Result<Polytope> {
    if parts.len() != scales.len() {
        return Err(Error::Invalid(format!(
            "{} parts but {} scales",
            parts.len(),
            scales.len()
        )));
    }
    let first = parts
        .first()
        .ok_or_else(|| Error::Empty("no parts".into()))?;
    let (tag, rank, k) = (first.tag, first.rank, parts.len());
    let mut pts = Vec::new();
    for (i, (p, &s)) in parts.iter().zip(scales).enumerate() {
        if p.tag != tag {
            return Err(Error::TagMismatch {
                expected: tag.to_string(),
                found: p.tag.to_string(),
            });
        }
        if p.rank != rank {
            return Err(Error::RankMismatch(rank, p.rank));
        }
        if s <= 0 {
            return Err(Error::Invalid("scales must be positive".into()));
        }
        for v in &p.vertices {
            let mut x: Vec<Rat> = v.iter().map(|c| c * rat(s)).collect();
            x.extend((0..k).map(|j| if j == i { rat(1) } else { rat(0) }));
            pts.push(x);
        }
        let mut z = vec![rat(0); rank];
        z.extend((0..k).map(|j| if j == i { rat(-1) } else { rat(0) }));
        pts.push(z);
    }
    Polytope::convex_hull(tag, &pts)
}

/// The gauge function ν of a full-dimensional polytope containing the origin,
/// defined on the cone the polytope generates.
#[derive(Debug, Clone)]
pub struct NewtonLevel {
    polytope: Polytope,
    /// Facets away from the origin, as linear forms x ↦ −⟨x,u⟩/offset.
    far: Vec<Vec<Rat>>,
    /// Facets through the origin: ⟨x,u⟩ ≥ 0 on the domain.
    cone: Vec<Vec<Int>>,
}

impl NewtonLevel {
    pub fn new(polytope: Polytope) -> Result<NewtonLevel> {
        if !polytope.is_full_dimensional() {
            return Err(Error::NotFullDimensional);
        }
        let origin = vec![Rat::zero(); polytope.rank];
        if !polytope.contains(&origin) {
            return Err(Error::Invalid(
                "Newton level needs 0 in the polytope".into(),
            ));
        }
        let mut far = Vec::new();
        let mut cone = Vec::new();
        for f in &polytope.facets {
            if f.offset.is_zero() {
                cone.push(f.normal.clone());
            } else {
                far.push(
                    f.normal
                        .iter()
                        .map(|u| -Rat::from_integer(u.clone()) / &f.offset)
                        .collect(),
                );
            }
        }
        Ok(NewtonLevel {
            polytope,
            far,
            cone,
        })
    }

    pub fn polytope(&self) -> &Polytope {
        &self.polytope
    }

    pub fn origin_interior(&self) -> bool {
        self.cone.is_empty()
    }

    pub fn origin_is_vertex(&self) -> bool {
        let origin = vec![Rat::zero(); self.polytope.rank];
        self.polytope.vertices.contains(&origin)
    }

    /// ν(x), or None outside the cone over the polytope.
    pub fn nu(&self, x: &[Rat]) -> Option<Rat> {
        if self.cone.iter().any(|u| dot_q(&to_rat(u), x).is_negative()) {
            return None;
        }
        let v = self
            .far
            .iter()
            .map(|l| dot_q(l, x))
            .max()
            .unwrap_or_else(Rat::zero);
        Some(if v.is_negative() { Rat::zero() } else { v })
    }

    pub fn nu_int(&self, x: &[Int]) -> Option<Rat> {
        self.nu(&to_rat(x))
    }
}

/// Number of lattice points at each requested level λ with λ ≤ truncation.
pub fn nu_weighted_count(
    nl: &NewtonLevel,
    levels: &[Rat],
    truncation: Option<u32>,
) -> Result<BTreeMap<Rat, u64>> {
    let t = truncation.ok_or(Error::UnboundedRequest)?;
    if t == 0 {
        return Err(Error::Invalid("truncation must be at least 1".into()));
    }
    let big = nl.polytope.dilate_int(t as i64);
    let mut out: BTreeMap<Rat, u64> = levels.iter().map(|l| (l.clone(), 0)).collect();
    for p in big.lattice_points() {
        if let Some(v) = nl.nu_int(&p) {
            if let Some(c) = out.get_mut(&v) {
                *c += 1;
            }
        }
    }
    let cap = rat(t as i64);
    out.retain(|l, _| *l <= cap);
    Ok(out)
}

/// Number of lattice points on the boundary of a lattice polygon edge from a to b.
pub fn lattice_length(a: &[Int], b: &[Int]) -> Int {
    a.iter()
        .zip(b)
        .fold(Int::zero(), |g, (x, y)| g.gcd(&(x - y)))
}

pub fn int_point(v: &[i64]) -> Vec<Rat> {
    int_vec(v)
        .iter()
        .map(|x| Rat::from_integer(x.clone()))
        .collect()
}

#[cfg(test)]
mod tests;
