//! Built-in example data: the sixteen reflexive polygons up to GL₂(ℤ), the
//! nef partitions of the segment and the square with two parts.

use crate::error::{Error, Result};
use crate::lattice::LatticeTag;
use crate::nefclarke::{validate_nef_partition, NefPartition};
use crate::polytope::{is_reflexive, Polytope};
use num_traits::ToPrimitive;
use std::collections::BTreeMap;

fn ext_gcd(a: i64, b: i64) -> (i64, i64, i64) {
    if b == 0 {
        if a < 0 {
            (-a, -1, 0)
        } else {
            (a, 1, 0)
        }
    } else {
        let (g, x, y) = ext_gcd(b, a.rem_euclid(b));
        (g, y, x - a.div_euclid(b) * y)
    }
}

/// Row Hermite normal form of the 2 × m matrix whose columns are `cols`.
/// Requires rank 2.
fn hnf2(cols: &[[i64; 2]]) -> Vec<[i64; 2]> {
    let mut r0: Vec<i64> = cols.iter().map(|c| c[0]).collect();
    let mut r1: Vec<i64> = cols.iter().map(|c| c[1]).collect();
    let j = (0..cols.len())
        .find(|&j| r0[j] != 0 || r1[j] != 0)
        .expect("nonzero column");
    let (a, b) = (r0[j], r1[j]);
    let (g, s, t) = ext_gcd(a, b);
    let n0: Vec<i64> = r0.iter().zip(&r1).map(|(x, y)| s * x + t * y).collect();
    let n1: Vec<i64> = r0
        .iter()
        .zip(&r1)
        .map(|(x, y)| (-b / g) * x + (a / g) * y)
        .collect();
    r0 = n0;
    r1 = n1;
    let k = (j + 1..cols.len()).find(|&k| r1[k] != 0).expect("rank two");
    if r1[k] < 0 {
        r1.iter_mut().for_each(|x| *x = -*x);
    }
    let q = r0[k].div_euclid(r1[k]);
    r0.iter_mut().zip(&r1).for_each(|(x, y)| *x -= q * y);
    r0.into_iter().zip(r1).map(|(x, y)| [x, y]).collect()
}

fn half_plane(v: &[i64; 2]) -> u8 {
    if v[1] > 0 || (v[1] == 0 && v[0] > 0) {
        0
    } else {
        1
    }
}

/// Vertices of a polygon containing the origin in its interior, sorted
/// counterclockwise starting from the positive x-axis.
pub fn cyclic_vertices(p: &Polytope) -> Result<Vec<[i64; 2]>> {
    if p.rank() != 2 || !p.is_full_dimensional() {
        return Err(Error::Unsupported("cyclic order needs a polygon".into()));
    }
    if !p.origin_interior() {
        return Err(Error::OriginNotInterior);
    }
    let verts = p
        .integer_vertices()
        .ok_or_else(|| Error::Invalid("polygon is not a lattice polygon".into()))?;
    let mut vs: Vec<[i64; 2]> = verts
        .iter()
        .map(|v| {
            let x = v[0]
                .to_i64()
                .ok_or_else(|| Error::Invalid("coordinate too large".into()))?;
            let y = v[1]
                .to_i64()
                .ok_or_else(|| Error::Invalid("coordinate too large".into()))?;
            Ok([x, y])
        })
        .collect::<Result<_>>()?;
    vs.sort_by(|a, b| {
        half_plane(a).cmp(&half_plane(b)).then_with(|| {
            let c = a[0] * b[1] - a[1] * b[0];
            0.cmp(&c)
        })
    });
    Ok(vs)
}

/// A GL₂(ℤ)-invariant normal form of a lattice polygon with the origin in its
/// interior: the least row Hermite form over all cyclic labelings of the
/// vertices in either orientation.
pub fn polygon_normal_form(p: &Polytope) -> Result<Vec<[i64; 2]>> {
    let vs = cyclic_vertices(p)?;
    let m = vs.len();
    let mut best: Option<Vec<[i64; 2]>> = None;
    for start in 0..m {
        for dir in [1isize, -1] {
            let seq: Vec<[i64; 2]> = (0..m as isize)
                .map(|i| vs[(start as isize + dir * i).rem_euclid(m as isize) as usize])
                .collect();
            let h = hnf2(&seq);
            if best.as_ref().map_or(true, |b| h < *b) {
                best = Some(h);
            }
        }
    }
    Ok(best.expect("nonempty polygon"))
}

const MAXIMAL: [&[[i64; 2]]; 3] = [
    &[[-1, -1], [2, -1], [-1, 2]],
    &[[-1, -1], [1, -1], [1, 1], [-1, 1]],
    &[[-1, -1], [3, -1], [-1, 1]],
];

fn size_key(p: &Polytope) -> (i64, Vec<Vec<i64>>) {
    let vs: Vec<Vec<i64>> = p
        .integer_vertices()
        .expect("lattice polygon")
        .iter()
        .map(|v| v.iter().map(|x| x.to_i64().expect("small")).collect())
        .collect();
    let m = vs.iter().flatten().map(|x| x.abs()).max().unwrap_or(0);
    (m, vs)
}

/// The sixteen reflexive polygons in the lattice `N`, found as lattice
/// subpolygons of the three maximal ones and deduplicated up to GL₂(ℤ).
/// Named `R<b>.<i>` by boundary point count b, ordered by vertex count then
/// normal form.
pub fn reflexive_polygons() -> Vec<Polytope> {
    let mut classes: BTreeMap<Vec<[i64; 2]>, Polytope> = BTreeMap::new();
    for max in MAXIMAL {
        let big: Vec<Vec<i64>> = max.iter().map(|v| v.to_vec()).collect();
        let big = Polytope::from_int_points(LatticeTag::N, &big).expect("polygon");
        let pts: Vec<Vec<i64>> = big
            .boundary_lattice_points()
            .iter()
            .map(|v| v.iter().map(|x| x.to_i64().expect("small")).collect())
            .collect();
        for mask in 1u32..1 << pts.len() {
            if mask.count_ones() < 3 {
                continue;
            }
            let sub: Vec<Vec<i64>> = (0..pts.len())
                .filter(|i| mask >> i & 1 == 1)
                .map(|i| pts[i].clone())
                .collect();
            let Ok(p) = Polytope::from_int_points(LatticeTag::N, &sub) else {
                continue;
            };
            if !p.is_full_dimensional() || !p.origin_interior() {
                continue;
            }
            if p.interior_lattice_points().len() != 1 || !is_reflexive(&p).unwrap_or(false) {
                continue;
            }
            let nf = polygon_normal_form(&p).expect("polygon");
            match classes.get(&nf) {
                Some(q) if size_key(q) <= size_key(&p) => {}
                _ => {
                    classes.insert(nf, p);
                }
            }
        }
    }
    let mut list: Vec<(usize, usize, Vec<[i64; 2]>, Polytope)> = classes
        .into_iter()
        .map(|(nf, p)| (p.boundary_lattice_points().len(), p.vertices().len(), nf, p))
        .collect();
    list.sort_by(|a, b| (a.0, a.1, &a.2).cmp(&(b.0, b.1, &b.2)));
    let mut counter: BTreeMap<usize, usize> = BTreeMap::new();
    list.into_iter()
        .map(|(b, _, _, p)| {
            let i = counter.entry(b).or_insert(0);
            *i += 1;
            p.with_name(format!("R{b}.{i}"))
        })
        .collect()
}

/// Look up a reflexive polygon by its fixture name.
pub fn reflexive_polygon(name: &str) -> Result<Polytope> {
    reflexive_polygons()
        .into_iter()
        .find(|p| p.name() == Some(name))
        .ok_or_else(|| Error::Invalid(format!("no reflexive polygon named {name}")))
}

/// The segment [−1, 1] in N with its single-part nef partition.
pub fn segment_one_part() -> Result<NefPartition> {
    let delta = Polytope::from_int_points(LatticeTag::N, &[vec![-1], vec![1]])?;
    validate_nef_partition(&delta, &[vec![0, 1]])
}

/// The segment split into its two endpoints.
pub fn segment_two_parts() -> Result<NefPartition> {
    let delta = Polytope::from_int_points(LatticeTag::N, &[vec![-1], vec![1]])?;
    let parts = vertex_parts(&delta, &[vec![vec![-1]], vec![vec![1]]])?;
    validate_nef_partition(&delta, &parts)
}

/// The square conv(±e₁, ±e₂) split into {e₁, e₂} and {−e₁, −e₂}.
pub fn square_two_parts() -> Result<NefPartition> {
    let delta = Polytope::from_int_points(
        LatticeTag::N,
        &[vec![1, 0], vec![0, 1], vec![-1, 0], vec![0, -1]],
    )?;
    let parts = vertex_parts(
        &delta,
        &[vec![vec![1, 0], vec![0, 1]], vec![vec![-1, 0], vec![0, -1]]],
    )?;
    validate_nef_partition(&delta, &parts)
}

/// Convert parts given by vertex coordinates into vertex indices of `delta`.
pub fn vertex_parts(delta: &Polytope, parts: &[Vec<Vec<i64>>]) -> Result<Vec<Vec<usize>>> {
    let verts = delta
        .integer_vertices()
        .ok_or_else(|| Error::Invalid("nef partitions need a lattice polytope".into()))?;
    parts
        .iter()
        .map(|part| {
            part.iter()
                .map(|v| {
                    verts
                        .iter()
                        .position(|w| {
                            w.len() == v.len()
                                && w.iter().zip(v).all(|(a, b)| a.to_i64() == Some(*b))
                        })
                        .ok_or_else(|| Error::Invalid(format!("{v:?} is not a vertex")))
                })
                .collect()
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sixteen_classes_with_expected_boundary_counts() {
        let ps = reflexive_polygons();
        assert_eq!(ps.len(), 16);
        let mut counts: BTreeMap<usize, usize> = BTreeMap::new();
        for p in &ps {
            *counts.entry(p.boundary_lattice_points().len()).or_default() += 1;
        }
        let want: BTreeMap<usize, usize> = [(3, 1), (4, 3), (5, 2), (6, 4), (7, 2), (8, 3), (9, 1)]
            .into_iter()
            .collect();
        assert_eq!(counts, want);
    }

    #[test]
    fn boundary_points_of_polygon_and_dual_sum_to_twelve() {
        for p in reflexive_polygons() {
            let d = crate::polytope::polar_dual(&p).unwrap();
            let total = p.boundary_lattice_points().len() + d.boundary_lattice_points().len();
            assert_eq!(total, 12, "{:?}", p.name());
        }
    }

    #[test]
    fn normal_form_is_invariant_under_unimodular_maps() {
        let p = reflexive_polygon("R6.1").unwrap();
        let nf = polygon_normal_form(&p).unwrap();
        for m in [
            [[1i64, 1], [0, 1]],
            [[0, 1], [1, 0]],
            [[2, 1], [1, 1]],
            [[-1, 3], [0, 1]],
        ] {
            let img: Vec<Vec<i64>> = cyclic_vertices(&p)
                .unwrap()
                .iter()
                .map(|v| {
                    vec![
                        m[0][0] * v[0] + m[0][1] * v[1],
                        m[1][0] * v[0] + m[1][1] * v[1],
                    ]
                })
                .collect();
            let q = Polytope::from_int_points(LatticeTag::N, &img).unwrap();
            assert_eq!(polygon_normal_form(&q).unwrap(), nf);
        }
    }

    #[test]
    fn distinct_classes_have_distinct_forms() {
        let p = reflexive_polygon("R4.1").unwrap();
        let q = reflexive_polygon("R8.1").unwrap();
        assert_ne!(
            polygon_normal_form(&p).unwrap(),
            polygon_normal_form(&q).unwrap()
        );
    }

    #[test]
    fn built_in_nef_partitions_validate() {
        assert_eq!(segment_one_part().unwrap().k(), 1);
        assert_eq!(segment_two_parts().unwrap().k(), 2);
        assert_eq!(square_two_parts().unwrap().k(), 2);
    }
}
