use clarke_mirror::fixtures::{reflexive_polygons, segment_one_part, square_two_parts};
use clarke_mirror::hodge::{lg_diamond, lg_diamond_curve, newton_spectrum, SpectrumRequest};
use clarke_mirror::io::{fixture_documents, fixtures_dir, load_polygons, NefDoc, PolytopeDoc};
use clarke_mirror::lattice::LatticeTag;
use clarke_mirror::nefclarke::build_lg_model;
use clarke_mirror::polytope::{is_reflexive, polar_dual, Polytope};
use proptest::prelude::*;

#[test]
fn bundled_fixtures_load() {
    let polys = load_polygons(&fixtures_dir()).unwrap();
    assert_eq!(polys.len(), 16);
    for p in &polys {
        assert!(is_reflexive(p).unwrap());
    }
    assert!(fixture_documents().unwrap().contains_key("square_k2.json"));
}

#[test]
fn nef_partition_round_trip_through_json() {
    let np = square_two_parts().unwrap();
    let doc = NefDoc::from_nef(Some("square"), &np).unwrap();
    let text = serde_json::to_string(&doc).unwrap();
    let back: NefDoc = serde_json::from_str(&text).unwrap();
    assert_eq!(back.to_nef().unwrap().k(), 2);
}

#[test]
fn segment_lg_model_matches_curve_formula() {
    let np = segment_one_part().unwrap();
    let m = build_lg_model(&np, &[0]).unwrap();
    assert_eq!(
        lg_diamond(&m).unwrap(),
        lg_diamond_curve(&[2], &[0]).unwrap()
    );
}

#[test]
fn reflexive_polygon_spectra_have_volume_total() {
    for p in reflexive_polygons() {
        let support: Vec<Vec<i64>> = p
            .integer_vertices()
            .unwrap()
            .iter()
            .map(|v| v.iter().map(|x| x.to_string().parse().unwrap()).collect())
            .collect();
        let s = newton_spectrum(&SpectrumRequest::from_support(&support).unwrap()).unwrap();
        let vol = p.normalized_volume().unwrap();
        assert_eq!(vol, num_rational::BigRational::from_integer(s.total.into()));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn polar_is_an_involution(mask in 7u32..512) {
        let pts: Vec<Vec<i64>> = [
            [-1, -1], [0, -1], [1, -1], [1, 0], [1, 1], [0, 1], [-1, 1], [-1, 0], [2, 1],
        ]
        .iter()
        .enumerate()
        .filter(|(i, _)| mask >> i & 1 == 1)
        .map(|(_, v)| v.to_vec())
        .collect();
        let Ok(p) = Polytope::from_int_points(LatticeTag::N, &pts) else {
            return Ok(());
        };
        prop_assume!(p.is_full_dimensional() && p.origin_interior());
        let back = polar_dual(&polar_dual(&p).unwrap()).unwrap();
        let a = PolytopeDoc::from_polytope(&p);
        let b = PolytopeDoc::from_polytope(&back);
        let key = |d: &PolytopeDoc| {
            let mut v: Vec<String> = d.vertices.iter().map(|x| format!("{x:?}")).collect();
            v.sort();
            v
        };
        prop_assert_eq!(key(&a), key(&b));
    }
}
