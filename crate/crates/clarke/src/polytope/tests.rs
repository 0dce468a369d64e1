use super::*;
use crate::lattice::LatticeTag::{M, N};
use proptest::prelude::*;

fn poly(pts: &[[i64; 2]]) -> Polytope {
    let v: Vec<Vec<i64>> = pts.iter().map(|p| p.to_vec()).collect();
    Polytope::from_int_points(N, &v).unwrap()
}

fn cross() -> Polytope {
    poly(&[[1, 0], [0, 1], [-1, 0], [0, -1]])
}

#[test]
fn cross_lattice_points() {
    assert_eq!(cross().lattice_points().len(), 5);
    assert_eq!(cross().dilate_int(2).lattice_points().len(), 13);
}

#[test]
fn cross_polar_is_square() {
    let d = polar_dual(&cross()).unwrap();
    assert_eq!(d.tag(), M);
    assert_eq!(d.vertices().len(), 4);
    assert_eq!(d.lattice_points().len(), 9);
    assert!(is_reflexive(&cross()).unwrap());
}

#[test]
fn unit_square_is_not_centered() {
    let sq = poly(&[[0, 0], [1, 0], [0, 1], [1, 1]]);
    assert!(matches!(is_reflexive(&sq), Err(Error::OriginNotInterior)));
    assert!(polar_dual(&sq).is_err());
}

#[test]
fn big_triangle_not_reflexive() {
    let t = poly(&[[2, 0], [0, 2], [-2, -2]]);
    assert!(!is_reflexive(&t).unwrap());
}

#[test]
fn facets_sorted_primitive() {
    let sq = poly(&[[-1, -1], [1, -1], [-1, 1], [1, 1]]);
    let f = sq.facets();
    assert_eq!(f.len(), 4);
    let mut sorted = f.to_vec();
    sorted.sort();
    assert_eq!(f, &sorted[..]);
    for x in f {
        assert_eq!(x.offset, rat(1));
    }
}

#[test]
fn segment_in_plane_keeps_span() {
    let s = poly(&[[0, 0], [2, 2]]);
    assert_eq!(s.dim(), 1);
    assert_eq!(s.equations().len(), 1);
    assert_eq!(s.lattice_points().len(), 3);
    assert!(!s.contains(&int_point(&[1, 0])));
}

#[test]
fn cayley_of_segment() {
    let seg = Polytope::from_int_points(N, &[vec![-1], vec![1]]).unwrap();
    let c = cayley_polytope(&[seg], &[1]).unwrap();
    let expected = poly(&[[-1, 1], [1, 1], [0, -1]]);
    assert!(c.same_set(&expected));
}

#[test]
fn newton_level_counts() {
    for k in 1..5i64 {
        let seg = Polytope::from_int_points(N, &[vec![0], vec![k]]).unwrap();
        let nl = NewtonLevel::new(seg).unwrap();
        let levels: Vec<Rat> = (0..=k).map(|j| Rat::new(j.into(), k.into())).collect();
        let c = nu_weighted_count(&nl, &levels, Some(1)).unwrap();
        assert!(c.values().all(|&n| n == 1), "{c:?}");
    }
    let nl = NewtonLevel::new(cross()).unwrap();
    let c = nu_weighted_count(&nl, &[rat(1)], Some(1)).unwrap();
    assert_eq!(c[&rat(1)], 4);
    assert!(matches!(
        nu_weighted_count(&nl, &[rat(1)], None),
        Err(Error::UnboundedRequest)
    ));
}

#[test]
fn volumes() {
    assert_eq!(cross().normalized_volume().unwrap(), rat(4));
    let cube = Polytope::from_int_points(
        N,
        &[
            vec![0, 0, 0],
            vec![1, 0, 0],
            vec![0, 1, 0],
            vec![0, 0, 1],
            vec![1, 1, 0],
            vec![1, 0, 1],
            vec![0, 1, 1],
            vec![1, 1, 1],
        ],
    )
    .unwrap();
    assert_eq!(cube.facets().len(), 6);
    assert_eq!(cube.vertices().len(), 8);
    assert_eq!(cube.normalized_volume().unwrap(), rat(6));
    assert_eq!(cube.faces().len(), 1 + 6 + 12 + 8);
}

#[test]
fn octahedron_polar_is_cube() {
    let o = Polytope::from_int_points(
        N,
        &[
            vec![1, 0, 0],
            vec![-1, 0, 0],
            vec![0, 1, 0],
            vec![0, -1, 0],
            vec![0, 0, 1],
            vec![0, 0, -1],
        ],
    )
    .unwrap();
    assert_eq!(o.facets().len(), 8);
    let c = polar_dual(&o).unwrap();
    assert_eq!(c.vertices().len(), 8);
    assert!(is_reflexive(&o).unwrap());
    assert_eq!(c.lattice_points().len(), 27);
}

fn reflexive_subpolygon() -> impl Strategy<Value = Polytope> {
    // Subsets of the square [-1,1]^2 whose hull has the origin inside are reflexive.
    let pts: Vec<[i64; 2]> = vec![
        [-1, -1],
        [-1, 0],
        [-1, 1],
        [0, -1],
        [0, 1],
        [1, -1],
        [1, 0],
        [1, 1],
    ];
    proptest::collection::vec(any::<bool>(), 8).prop_filter_map("origin interior", move |mask| {
        let chosen: Vec<[i64; 2]> = pts
            .iter()
            .zip(&mask)
            .filter(|(_, &m)| m)
            .map(|(p, _)| *p)
            .collect();
        if chosen.len() < 3 {
            return None;
        }
        let p = poly(&chosen);
        p.origin_interior().then_some(p)
    })
}

fn small_polygon() -> impl Strategy<Value = Polytope> {
    proptest::collection::vec((-3i64..=3, -3i64..=3), 1..7).prop_map(|v| {
        let pts: Vec<[i64; 2]> = v.into_iter().map(|(a, b)| [a, b]).collect();
        poly(&pts)
    })
}

proptest! {
    #[test]
    fn twelve_theorem(p in reflexive_subpolygon()) {
        let d = polar_dual(&p).unwrap();
        prop_assert!(is_reflexive(&p).unwrap());
        prop_assert_eq!(p.boundary_lattice_points().len() + d.boundary_lattice_points().len(), 12);
    }

    #[test]
    fn polar_involution(p in reflexive_subpolygon()) {
        let dd = polar_dual(&polar_dual(&p).unwrap()).unwrap();
        prop_assert!(dd.same_set(&p));
    }

    #[test]
    fn minkowski_commutes_and_associates(a in small_polygon(), b in small_polygon(), c in small_polygon()) {
        let ab = minkowski_sum(&a, &b).unwrap();
        prop_assert!(ab.same_set(&minkowski_sum(&b, &a).unwrap()));
        let l = minkowski_sum(&ab, &c).unwrap();
        let r = minkowski_sum(&a, &minkowski_sum(&b, &c).unwrap()).unwrap();
        prop_assert!(l.same_set(&r));
    }

    #[test]
    fn dilation_points(p in small_polygon(), k in 1i64..4) {
        let big = p.dilate_int(k);
        for x in big.lattice_points() {
            let y: Vec<Rat> = x.iter().map(|c| Rat::new(c.clone(), k.into())).collect();
            prop_assert!(p.contains(&y));
        }
        prop_assert!(big.lattice_points().len() >= p.lattice_points().len());
    }

    #[test]
    fn pick_formula(p in small_polygon()) {
        prop_assume!(p.is_full_dimensional());
        let area2 = p.normalized_volume().unwrap();
        let i = p.interior_lattice_points().len() as i64;
        let b = p.boundary_lattice_points().len() as i64;
        prop_assert_eq!(area2, rat(2 * i + b - 2));
    }
}

#[test]
fn h_representation() {
    let rows: Vec<(Vec<Rat>, Rat)> = vec![
        (vec![rat(1), rat(0)], rat(-1)),
        (vec![rat(-1), rat(0)], rat(-1)),
        (vec![rat(0), rat(1)], rat(0)),
        (vec![rat(0), rat(-1)], rat(0)),
    ];
    let p = from_inequalities(M, 2, &rows).unwrap();
    assert!(p.same_set(&Polytope::from_int_points(M, &[vec![-1, 0], vec![1, 0]]).unwrap()));
    assert!(from_inequalities(M, 2, &rows[..3]).is_err());
}
