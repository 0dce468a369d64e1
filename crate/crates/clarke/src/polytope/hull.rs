//! Exact convex hulls. Rank 1 and 2 are handled directly (a monotone-chain
//! wrap in the plane); rank ≥ 3 uses incremental beneath-beyond over a
//! simplicial boundary whose coplanar pieces are merged at the end.

use crate::lattice::{dot_q, nullspace_q, primitive_from_rat, rank_q, rref_q, Int, Rat};
use num_traits::{Signed, Zero};
use std::collections::{BTreeMap, HashMap};

/// Raw hull output in the coordinates it was computed in.
pub(crate) struct RawHull {
    /// Indices into the input (deduplicated, sorted) point list.
    pub vertices: Vec<usize>,
    /// (primitive normal, offset): ⟨x,u⟩ ≥ −offset.
    pub facets: Vec<(Vec<Int>, Rat)>,
}

fn sub(a: &[Rat], b: &[Rat]) -> Vec<Rat> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

fn to_rat(v: &[Int]) -> Vec<Rat> {
    v.iter().map(|x| Rat::from_integer(x.clone())).collect()
}

/// Hull of full-dimensional points in ℚ^k (k = point length).
pub(crate) fn full_dim_hull(points: &[Vec<Rat>]) -> RawHull {
    let k = points[0].len();
    match k {
        0 => RawHull {
            vertices: vec![0],
            facets: vec![],
        },
        1 => hull_1d(points),
        2 => hull_2d(points),
        _ => beneath_beyond(points),
    }
}

fn hull_1d(points: &[Vec<Rat>]) -> RawHull {
    let (mut lo, mut hi) = (0, 0);
    for (i, p) in points.iter().enumerate() {
        if p[0] < points[lo][0] {
            lo = i;
        }
        if p[0] > points[hi][0] {
            hi = i;
        }
    }
    let facets = vec![
        (vec![Int::from(1)], -points[lo][0].clone()),
        (vec![Int::from(-1)], points[hi][0].clone()),
    ];
    let mut vertices = vec![lo, hi];
    vertices.sort();
    RawHull { vertices, facets }
}

fn cross(o: &[Rat], a: &[Rat], b: &[Rat]) -> Rat {
    (&a[0] - &o[0]) * (&b[1] - &o[1]) - (&a[1] - &o[1]) * (&b[0] - &o[0])
}

fn hull_2d(points: &[Vec<Rat>]) -> RawHull {
    // points arrive sorted lexicographically
    let n = points.len();
    let mut lower: Vec<usize> = Vec::new();
    for i in 0..n {
        while lower.len() >= 2
            && !cross(
                &points[lower[lower.len() - 2]],
                &points[lower[lower.len() - 1]],
                &points[i],
            )
            .is_positive()
        {
            lower.pop();
        }
        lower.push(i);
    }
    let mut upper: Vec<usize> = Vec::new();
    for i in (0..n).rev() {
        while upper.len() >= 2
            && !cross(
                &points[upper[upper.len() - 2]],
                &points[upper[upper.len() - 1]],
                &points[i],
            )
            .is_positive()
        {
            upper.pop();
        }
        upper.push(i);
    }
    lower.pop();
    upper.pop();
    let ring: Vec<usize> = lower.into_iter().chain(upper).collect();
    let mut facets = Vec::new();
    for i in 0..ring.len() {
        let a = &points[ring[i]];
        let b = &points[ring[(i + 1) % ring.len()]];
        // counter-clockwise ring: interior lies to the left of a->b
        let dir = sub(b, a);
        let normal = vec![-dir[1].clone(), dir[0].clone()];
        let u = primitive_from_rat(&normal);
        let off = -dot_q(&to_rat(&u), a);
        facets.push((u, off));
    }
    let mut vertices = ring;
    vertices.sort();
    RawHull { vertices, facets }
}

struct SFacet {
    verts: Vec<usize>,
    normal: Vec<Rat>,
    off: Rat,
}

fn oriented_facet(points: &[Vec<Rat>], verts: Vec<usize>, inside: &[Rat]) -> SFacet {
    let base = &points[verts[0]];
    let rows: Vec<Vec<Rat>> = verts[1..].iter().map(|&v| sub(&points[v], base)).collect();
    let ns = nullspace_q(&rows, base.len());
    debug_assert_eq!(ns.len(), 1);
    let mut normal = ns.into_iter().next().unwrap();
    let mut off = dot_q(&normal, base);
    if dot_q(&normal, inside) < off {
        normal = normal.iter().map(|x| -x).collect();
        off = -off;
    }
    SFacet { verts, normal, off }
}

fn beneath_beyond(points: &[Vec<Rat>]) -> RawHull {
    let k = points[0].len();
    // initial simplex, greedy in lexicographic order
    let mut simplex = vec![0usize];
    let mut diffs: Vec<Vec<Rat>> = Vec::new();
    for i in 1..points.len() {
        if simplex.len() == k + 1 {
            break;
        }
        let mut trial = diffs.clone();
        trial.push(sub(&points[i], &points[0]));
        if rank_q(&trial) == trial.len() {
            diffs = trial;
            simplex.push(i);
        }
    }
    assert_eq!(
        simplex.len(),
        k + 1,
        "beneath-beyond needs full-dimensional input"
    );
    let mut inside = vec![Rat::zero(); k];
    for &v in &simplex {
        for (c, x) in inside.iter_mut().zip(&points[v]) {
            *c += x;
        }
    }
    let denom = Rat::from_integer(Int::from(k as i64 + 1));
    for c in inside.iter_mut() {
        *c = &*c / &denom;
    }
    let mut facets: Vec<SFacet> = (0..=k)
        .map(|skip| {
            let verts: Vec<usize> = simplex
                .iter()
                .enumerate()
                .filter(|(i, _)| *i != skip)
                .map(|(_, &v)| v)
                .collect();
            oriented_facet(points, verts, &inside)
        })
        .collect();
    for p in 0..points.len() {
        if simplex.contains(&p) {
            continue;
        }
        let visible: Vec<bool> = facets
            .iter()
            .map(|f| dot_q(&f.normal, &points[p]) < f.off)
            .collect();
        if !visible.iter().any(|&v| v) {
            continue;
        }
        let mut ridge_count: HashMap<Vec<usize>, usize> = HashMap::new();
        for (f, _) in facets.iter().zip(&visible).filter(|(_, &v)| v) {
            for skip in 0..f.verts.len() {
                let ridge: Vec<usize> = f
                    .verts
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| *i != skip)
                    .map(|(_, &v)| v)
                    .collect();
                *ridge_count.entry(ridge).or_insert(0) += 1;
            }
        }
        let mut horizon: Vec<Vec<usize>> = ridge_count
            .into_iter()
            .filter(|(_, c)| *c == 1)
            .map(|(r, _)| r)
            .collect();
        horizon.sort();
        let mut kept: Vec<SFacet> = facets
            .into_iter()
            .zip(visible)
            .filter(|(_, v)| !v)
            .map(|(f, _)| f)
            .collect();
        for ridge in horizon {
            let mut verts = ridge;
            verts.push(p);
            verts.sort();
            kept.push(oriented_facet(points, verts, &inside));
        }
        facets = kept;
    }
    // merge coplanar simplices into facets
    let mut grouped: BTreeMap<(Vec<Int>, Rat), Vec<usize>> = BTreeMap::new();
    for f in &facets {
        let u = primitive_from_rat(&f.normal);
        let off = -dot_q(&to_rat(&u), &points[f.verts[0]]);
        grouped
            .entry((u, off))
            .or_default()
            .extend(f.verts.iter().copied());
    }
    let facet_list: Vec<(Vec<Int>, Rat)> = grouped.keys().cloned().collect();
    let mut on_hull: Vec<usize> = grouped.values().flatten().copied().collect();
    on_hull.sort();
    on_hull.dedup();
    let vertices: Vec<usize> = on_hull
        .into_iter()
        .filter(|&v| {
            let normals: Vec<Vec<Rat>> = facet_list
                .iter()
                .filter(|(u, off)| dot_q(&to_rat(u), &points[v]) == -off.clone())
                .map(|(u, _)| to_rat(u))
                .collect();
            rank_q(&normals) == k
        })
        .collect();
    RawHull {
        vertices,
        facets: facet_list,
    }
}

/// Affine-span data of a point set: pivot coordinates giving an injective
/// projection and integral equations cutting out the span.
pub(crate) struct SpanInfo {
    pub dim: usize,
    pub pivots: Vec<usize>,
    pub equations: Vec<(Vec<Int>, Rat)>,
}

pub(crate) fn affine_span(points: &[Vec<Rat>]) -> SpanInfo {
    let n = points[0].len();
    let mut rows: Vec<Vec<Rat>> = points[1..].iter().map(|p| sub(p, &points[0])).collect();
    let ns = nullspace_q(&rows, n);
    let pivots = rref_q(&mut rows);
    let mut ns_rows = ns;
    rref_q(&mut ns_rows);
    let equations = ns_rows
        .into_iter()
        .filter(|r| r.iter().any(|x| !x.is_zero()))
        .map(|r| {
            let u = primitive_from_rat(&r);
            let c = dot_q(&to_rat(&u), &points[0]);
            (u, c)
        })
        .collect::<Vec<_>>();
    SpanInfo {
        dim: pivots.len(),
        pivots,
        equations,
    }
}
