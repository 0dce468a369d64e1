//! Placing triangulation with lexicographic insertion. Points outside the
//! current hull are joined to the visible boundary facets; points already
//! covered are pulled (stellar subdivision of every simplex containing them),
//! so every candidate ends up used.

use crate::lattice::{dot_q, nullspace_q, rank_q, solve_q, Rat};
use num_traits::{One, Signed};
use std::collections::BTreeMap;

fn sub(a: &[Rat], b: &[Rat]) -> Vec<Rat> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

/// Barycentric coordinates of `q` with respect to simplex `s`.
pub(crate) fn barycentric(points: &[Vec<Rat>], s: &[usize], q: &[Rat]) -> Vec<Rat> {
    let k = q.len();
    let mut a: Vec<Vec<Rat>> = (0..k)
        .map(|i| s.iter().map(|&v| points[v][i].clone()).collect())
        .collect();
    a.push(vec![Rat::one(); s.len()]);
    let mut b = q.to_vec();
    b.push(Rat::one());
    solve_q(&a, &b).expect("simplex is affinely independent")
}

/// Side of `x` relative to the hyperplane through the points `face`, signed so
/// that `reference` is positive. Zero means on the hyperplane.
fn side(points: &[Vec<Rat>], face: &[usize], reference: &[Rat], x: &[Rat]) -> Rat {
    let base = &points[face[0]];
    let rows: Vec<Vec<Rat>> = face[1..].iter().map(|&v| sub(&points[v], base)).collect();
    let normal = nullspace_q(&rows, base.len()).remove(0);
    let off = dot_q(&normal, base);
    let r = dot_q(&normal, reference) - &off;
    let v = dot_q(&normal, x) - off;
    if r.is_negative() {
        -v
    } else {
        v
    }
}

/// Triangulate full-dimensional `points` (in the order given). Returns sorted
/// simplices as sorted index lists.
pub(crate) fn placing_triangulation(points: &[Vec<Rat>]) -> Vec<Vec<usize>> {
    let k = points[0].len();
    if k == 0 {
        return vec![vec![0]];
    }
    let mut first = vec![0usize];
    let mut diffs: Vec<Vec<Rat>> = Vec::new();
    for i in 1..points.len() {
        if first.len() == k + 1 {
            break;
        }
        let mut trial = diffs.clone();
        trial.push(sub(&points[i], &points[0]));
        if rank_q(&trial) == trial.len() {
            diffs = trial;
            first.push(i);
        }
    }
    assert_eq!(
        first.len(),
        k + 1,
        "triangulation needs full-dimensional input"
    );
    let mut simplices: Vec<Vec<usize>> = vec![first.clone()];
    for q in 0..points.len() {
        if first.contains(&q) {
            continue;
        }
        if simplices
            .iter()
            .any(|s| s.iter().any(|&v| points[v] == points[q]))
        {
            continue;
        }
        // boundary facets with the vertex opposite to them
        let mut count: BTreeMap<Vec<usize>, (usize, usize)> = BTreeMap::new();
        for s in &simplices {
            for skip in 0..s.len() {
                let f: Vec<usize> = s
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| *i != skip)
                    .map(|(_, &v)| v)
                    .collect();
                let e = count.entry(f).or_insert((0, s[skip]));
                e.0 += 1;
            }
        }
        let mut visible = Vec::new();
        for (f, (c, opp)) in &count {
            if *c == 1 && side(points, f, &points[*opp], &points[q]).is_negative() {
                visible.push(f.clone());
            }
        }
        if !visible.is_empty() {
            for mut f in visible {
                f.push(q);
                f.sort();
                simplices.push(f);
            }
            continue;
        }
        let mut next = Vec::new();
        for s in simplices {
            let bc = barycentric(points, &s, &points[q]);
            if bc.iter().any(|x| x.is_negative()) {
                next.push(s);
                continue;
            }
            for (skip, l) in bc.iter().enumerate() {
                if l.is_positive() {
                    let mut f: Vec<usize> = s
                        .iter()
                        .enumerate()
                        .filter(|(i, _)| *i != skip)
                        .map(|(_, &v)| v)
                        .collect();
                    f.push(q);
                    f.sort();
                    next.push(f);
                }
            }
        }
        simplices = next;
    }
    simplices.sort();
    simplices
}

/// Facets of the triangulation lying on the boundary of the hull.
pub(crate) fn boundary_faces(simplices: &[Vec<usize>]) -> Vec<Vec<usize>> {
    let mut count: BTreeMap<Vec<usize>, usize> = BTreeMap::new();
    for s in simplices {
        for skip in 0..s.len() {
            let f: Vec<usize> = s
                .iter()
                .enumerate()
                .filter(|(i, _)| *i != skip)
                .map(|(_, &v)| v)
                .collect();
            *count.entry(f).or_insert(0) += 1;
        }
    }
    count
        .into_iter()
        .filter(|(_, c)| *c == 1)
        .map(|(f, _)| f)
        .collect()
}
