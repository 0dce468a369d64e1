//! Classical diamonds: smooth complete toric varieties, snc curves and local
//! cohomology with compact support in a smooth ambient of dimension ≤ 2.

use super::HodgeDiamond;
use crate::error::{Error, Result};
use crate::fan::Fan;
use crate::lattice::{det_int, Int, Rat};
use crate::polytope::{lattice_length, Polytope};
use num_integer::binomial;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Hodge diamond of the orbit closure V(c) of a cone in a simplicial fan,
/// from the f-vector of its star. The star must be complete.
pub fn stratum_diamond(f: &Fan, cone: &[usize]) -> Result<HodgeDiamond> {
    let mut c = cone.to_vec();
    c.sort();
    if !f.cones().contains(&c) {
        return Err(Error::Invalid(format!("{c:?} is not a cone of the fan")));
    }
    let contains = |t: &[usize]| c.iter().all(|i| t.contains(i));
    let dc = f.cone_dim(&c);
    let d = f.rank() - dc;
    let mut fv = vec![0i64; d + 1];
    for t in f.cones().iter().filter(|t| contains(t)) {
        let j = f.cone_dim(t) - dc;
        fv[j] += 1;
    }
    // completeness of the star: pure, and each codimension-one cone in exactly two maximal ones
    let max_star: Vec<&Vec<usize>> = f.maximal_cones().iter().filter(|m| contains(m)).collect();
    if max_star.iter().any(|m| f.cone_dim(m) != f.rank()) || max_star.is_empty() {
        return Err(Error::FanCheck("star of the cone is not complete".into()));
    }
    if d > 0 {
        for w in f
            .cones()
            .iter()
            .filter(|t| contains(t) && f.cone_dim(t) + 1 == f.rank())
        {
            let n = max_star
                .iter()
                .filter(|m| w.iter().all(|i| m.contains(i)))
                .count();
            if n != 2 {
                return Err(Error::FanCheck(format!(
                    "wall {w:?} lies in {n} maximal cones"
                )));
            }
        }
    }
    if !f.is_simplicial() {
        return Err(Error::FanCheck("fan is not simplicial".into()));
    }
    let mut out = HodgeDiamond::new();
    for p in 0..=d {
        let mut h: i64 = 0;
        for i in p..=d {
            let sign = if (i - p) % 2 == 0 { 1 } else { -1 };
            h += sign * binomial(i as i64, p as i64) * fv[d - i];
        }
        if h < 0 {
            return Err(Error::Consistency(format!("negative h-number {h}")));
        }
        out.add_entry(2 * p as i64, 2 * p as i64, 2 * p as i64, h as u64);
    }
    Ok(out)
}

/// Diamond of a smooth complete toric variety.
pub fn toric_diamond(f: &Fan) -> Result<HodgeDiamond> {
    if !f.is_complete() {
        return Err(Error::FanCheck("fan is not complete".into()));
    }
    for m in f.maximal_cones() {
        let rows: Vec<Vec<Int>> = m.iter().map(|&i| f.rays()[i].clone()).collect();
        if rows.len() != f.rank() || !det_int(&rows).abs().is_one() {
            return Err(Error::FanCheck(format!("cone {m:?} is not unimodular")));
        }
    }
    stratum_diamond(f, &[])
}

/// Topological data of a compact curve with simple normal crossings:
/// sum of the genera of the normalised components and the first Betti number
/// of the dual graph.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct CurveData {
    pub components: u64,
    pub connected: u64,
    pub genus: u64,
    pub loops: u64,
}

pub fn curve_diamond(c: &CurveData) -> HodgeDiamond {
    HodgeDiamond::new()
        .with(0, 0, 0, c.connected)
        .with(1, 2, 0, c.genus)
        .with(1, 0, 2, c.genus + c.loops)
        .with(2, 2, 2, c.components)
}

/// A compact support Z inside a smooth ambient.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Support {
    Empty,
    Points(u64),
    Curve(CurveData),
    Ambient,
}

/// H^*_Z(X) for compact Z in a smooth X of dimension `dim` ≤ 2. Uses
/// H^j_Z(X) ≅ H_{2d−j}(Z)(−d): an entry (a, b) of H^m(Z) lands at
/// (d − a, d − b) in degree 2d − m.
pub fn local_cohomology_diamond(
    ambient: &HodgeDiamond,
    dim: usize,
    z: &Support,
) -> Result<HodgeDiamond> {
    if dim > 2 {
        return Err(Error::Unsupported(format!(
            "local cohomology in dimension {dim}"
        )));
    }
    let hz = match z {
        Support::Empty => return Ok(HodgeDiamond::new()),
        Support::Ambient => return Ok(ambient.clone()),
        Support::Points(n) => HodgeDiamond::new().with(0, 0, 0, *n),
        Support::Curve(c) => {
            if dim != 2 {
                return Err(Error::Invalid(
                    "a curve support needs a surface ambient".into(),
                ));
            }
            curve_diamond(c)
        }
    };
    let d2 = 2 * dim as i64;
    let mut out = HodgeDiamond::new();
    for (m, entries) in hz.by_degree() {
        for ((a, b), c) in entries {
            out.add_entry(d2 - m, d2 - a, d2 - b, *c);
        }
    }
    Ok(out)
}

/// The closure in the toric surface of a generic curve in the torus with
/// Newton polygon `newton`. The genus of the normalisation is the number of
/// interior points; at a torus-fixed point the closure has one branch per
/// unit of lattice length of each edge whose inward normal lies in the open
/// two-dimensional cone, and r branches through one point add r − 1 loops.
pub fn toric_curve_data(f: &Fan, newton: &Polytope) -> Result<CurveData> {
    if f.rank() != 2 || newton.rank() != 2 || !newton.is_full_dimensional() {
        return Err(Error::Unsupported(
            "curve data needs a full-dimensional polygon in rank 2".into(),
        ));
    }
    if !f.is_complete() {
        return Err(Error::FanCheck("fan is not complete".into()));
    }
    let verts = newton
        .integer_vertices()
        .ok_or_else(|| Error::Invalid("Newton polygon is not a lattice polygon".into()))?;
    let mut edges = Vec::new();
    for (i, fc) in newton.facets().iter().enumerate() {
        let vs = newton.facet_vertices(i);
        let len = lattice_length(&verts[vs[0]], &verts[vs[1]]);
        edges.push((fc.normal.clone(), len));
    }
    let mut loops = Int::zero();
    for m in f.maximal_cones() {
        let (r1, r2) = (&f.rays()[m[0]], &f.rays()[m[1]]);
        let mut branches = Int::zero();
        for (n, len) in &edges {
            if open_cone_2d(r1, r2, n) {
                branches += len;
            }
        }
        if branches > Int::from(1) {
            loops += branches - Int::from(1);
        }
    }
    let genus = newton.interior_lattice_points().len() as u64;
    Ok(CurveData {
        components: 1,
        connected: 1,
        genus,
        loops: loops.to_u64().unwrap_or(u64::MAX),
    })
}

fn cross(a: &[Int], b: &[Int]) -> Int {
    &a[0] * &b[1] - &a[1] * &b[0]
}

/// n lies strictly inside the strictly convex cone spanned by r1, r2.
fn open_cone_2d(r1: &[Int], r2: &[Int], n: &[Int]) -> bool {
    let s = cross(r1, r2);
    let (a, b) = (cross(r1, n), cross(n, r2));
    if s.is_positive() {
        a.is_positive() && b.is_positive()
    } else {
        a.is_negative() && b.is_negative()
    }
}

/// Intersection theory on a smooth complete toric surface with rays in
/// cyclic order. Divisor classes are coefficient vectors on the toric divisors.
#[derive(Debug, Clone, PartialEq)]
pub struct ToricSurface {
    rays: Vec<Vec<Int>>,
    self_int: Vec<Int>,
}

impl ToricSurface {
    pub fn new(f: &Fan) -> Result<ToricSurface> {
        if f.rank() != 2 {
            return Err(Error::Unsupported("intersection form needs rank 2".into()));
        }
        toric_diamond(f)?;
        let mut rays = f.rays().to_vec();
        let angle = |v: &Vec<Int>| {
            let (x, y) = (v[0].to_f64().unwrap_or(0.0), v[1].to_f64().unwrap_or(0.0));
            y.atan2(x)
        };
        rays.sort_by(|a, b| {
            angle(a)
                .partial_cmp(&angle(b))
                .unwrap_or(std::cmp::Ordering::Equal)
        });
        let n = rays.len();
        let mut self_int = Vec::with_capacity(n);
        for i in 0..n {
            let (p, v, q) = (&rays[(i + n - 1) % n], &rays[i], &rays[(i + 1) % n]);
            // p + q = a v, and D_v² = −a
            let s: Vec<Int> = vec![&p[0] + &q[0], &p[1] + &q[1]];
            let a = if !v[0].is_zero() {
                &s[0] / &v[0]
            } else {
                &s[1] / &v[1]
            };
            self_int.push(-a);
        }
        Ok(ToricSurface { rays, self_int })
    }

    pub fn rays(&self) -> &[Vec<Int>] {
        &self.rays
    }

    pub fn ray_count(&self) -> usize {
        self.rays.len()
    }

    /// Class of the toric divisor for the given ray, in cyclic order.
    pub fn divisor(&self, ray: &[Int]) -> Option<Vec<Rat>> {
        let i = self.rays.iter().position(|r| r.as_slice() == ray)?;
        let mut v = vec![Rat::zero(); self.rays.len()];
        v[i] = Rat::one();
        Some(v)
    }

    pub fn canonical(&self) -> Vec<Rat> {
        vec![-Rat::one(); self.rays.len()]
    }

    pub fn intersect(&self, a: &[Rat], b: &[Rat]) -> Rat {
        let n = self.rays.len();
        let mut s = Rat::zero();
        for i in 0..n {
            let j = (i + 1) % n;
            s += &a[i] * &b[i] * Rat::from_integer(self.self_int[i].clone());
            s += &a[i] * &b[j] + &a[j] * &b[i];
        }
        s
    }

    /// c₂ of the tangent bundle: the number of fixed points.
    pub fn euler(&self) -> Rat {
        Rat::from_integer(Int::from(self.rays.len()))
    }

    /// χ of a bundle with given rank and Chern classes.
    pub fn hrr(&self, rank: i64, c1: &[Rat], c2: &Rat) -> Rat {
        let k = self.canonical();
        let c1mk: Vec<Rat> = c1.iter().zip(&k).map(|(a, b)| a - b).collect();
        Rat::from_integer(Int::from(rank))
            + self.intersect(c1, &c1mk) / Rat::from_integer(Int::from(2))
            - c2
    }
}
