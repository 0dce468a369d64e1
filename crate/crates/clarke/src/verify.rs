//! Desk-scale duality checks on curves: anticanonical curves of reflexive
//! polygons, extremal transitions between nested reflexive polygons and the
//! double cover of the segment.

use crate::error::{Error, Result};
use crate::fan::refined_spanning_fan;
use crate::fixtures::{segment_one_part, segment_two_parts};
use crate::hodge::{
    curve_diamond, lg_diamond_curve, toric_curve_data, CurveData, DiamondDoc, HodgeDiamond,
};
use crate::lattice::{LatticeTag, Rat};
use crate::mirrorledger::{
    numeric_mirror_check, rat_string, BLedger, BSymbol, GeneratorSpec, MirrorCheckReport,
};
use crate::nefclarke::{p1_example_pair, validate_clarke, ClarkeCheck};
use crate::orbifold::{
    box_elements, orbifold_diamond, twisted_stratum_diamonds, verify_cdual, CdualReport, SectorKey,
};
use crate::polytope::{is_reflexive, polar_dual, Polytope};
use num_traits::{One, ToPrimitive};
use serde::{Deserialize, Serialize};
use std::collections::BTreeSet;

/// h^{p,q} = gr_F^p H^{p+q} of a curve, for p, q ∈ {0, 1}.
pub fn curve_hodge_numbers(d: &HodgeDiamond) -> [[u64; 2]; 2] {
    let mut h = [[0u64; 2]; 2];
    for (p, row) in h.iter_mut().enumerate() {
        for (q, v) in row.iter_mut().enumerate() {
            *v = d.get_in_degree((p + q) as i64, 2 * p as i64, 2 * q as i64);
        }
    }
    h
}

/// h^{p,q}(left) = h^{1−p,q}(right) for all p, q.
pub fn curve_mirror_holds(left: &[[u64; 2]; 2], right: &[[u64; 2]; 2]) -> bool {
    (0..2).all(|p| (0..2).all(|q| left[p][q] == right[1 - p][q]))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CurveSummary {
    pub genus: u64,
    pub loops: u64,
    pub hodge: [[u64; 2]; 2],
}

impl CurveSummary {
    fn from_data(c: &CurveData) -> CurveSummary {
        CurveSummary {
            genus: c.genus,
            loops: c.loops,
            hodge: curve_hodge_numbers(&curve_diamond(c)),
        }
    }
}

/// The closure of a generic curve with Newton polygon `newton` inside the
/// toric surface of the refined spanning fan of `fan_polygon`.
pub fn curve_in(fan_polygon: &Polytope, newton: &Polytope) -> Result<CurveSummary> {
    let f = refined_spanning_fan(fan_polygon)?;
    Ok(CurveSummary::from_data(&toric_curve_data(&f, newton)?))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TransitionCase {
    pub id: String,
    /// Δ̌_I, the larger polygon.
    pub outer: String,
    /// Vertices of Δ_II ⊆ Δ̌_I.
    pub inner: Vec<Vec<i64>>,
    /// X'_{Δ_II}: Newton polygon Δ_II in the surface of Δ_I = (Δ̌_I)°.
    pub x_ii: CurveSummary,
    /// X'_{Δ_I}: Newton polygon Δ_I in the surface of Δ_II.
    pub x_i: CurveSummary,
    pub pass: bool,
}

fn int_vertices(p: &Polytope) -> Vec<Vec<i64>> {
    let mut vs: Vec<Vec<i64>> = p
        .integer_vertices()
        .expect("lattice polygon")
        .iter()
        .map(|v| v.iter().map(|x| x.to_i64().expect("small")).collect())
        .collect();
    vs.sort();
    vs
}

/// Compare X'_{Δ_II} and X'_{Δ_I} for reflexive Δ_II ⊆ Δ̌_I.
pub fn transition_case(
    id: &str,
    outer_name: &str,
    delta_ii: &Polytope,
    delta_i_check: &Polytope,
) -> Result<TransitionCase> {
    if !is_reflexive(delta_ii)? || !is_reflexive(delta_i_check)? {
        return Err(Error::Invalid("transition data must be reflexive".into()));
    }
    if !delta_ii
        .vertices()
        .iter()
        .all(|v| delta_i_check.contains(v))
    {
        return Err(Error::Invalid("Δ_II is not contained in Δ̌_I".into()));
    }
    let delta_i = polar_dual(delta_i_check)?;
    let x_ii = curve_in(&delta_i, delta_ii)?;
    let x_i = curve_in(delta_ii, &delta_i)?;
    let pass = curve_mirror_holds(&x_ii.hodge, &x_i.hodge);
    Ok(TransitionCase {
        id: id.to_string(),
        outer: outer_name.to_string(),
        inner: int_vertices(delta_ii),
        x_ii,
        x_i,
        pass,
    })
}

/// Every proper reflexive lattice subpolygon Δ_II of each given polygon
/// Δ̌_I, in a fixed order.
pub fn transition_pairs(polygons: &[Polytope]) -> Vec<(String, Polytope, Polytope)> {
    let mut out = Vec::new();
    for outer in polygons {
        let name = outer.name().unwrap_or("?").to_string();
        let pts: Vec<Vec<i64>> = outer
            .boundary_lattice_points()
            .iter()
            .map(|v| v.iter().map(|x| x.to_i64().expect("small")).collect())
            .collect();
        let own = int_vertices(&outer);
        let mut seen: BTreeSet<Vec<Vec<i64>>> = BTreeSet::new();
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
            if !p.is_full_dimensional()
                || !p.origin_interior()
                || !is_reflexive(&p).unwrap_or(false)
            {
                continue;
            }
            let vs = int_vertices(&p);
            if vs == own || !seen.insert(vs) {
                continue;
            }
            out.push((name.clone(), outer.clone(), p));
        }
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TransitionReport {
    pub cases: Vec<TransitionCase>,
    pub passed: usize,
    pub failed: usize,
}

/// Run the transition check over the first `limit` pairs (all when None).
pub fn verify_transitions(polygons: &[Polytope], limit: Option<usize>) -> Result<TransitionReport> {
    let pairs = transition_pairs(polygons);
    let take = limit.unwrap_or(pairs.len()).min(pairs.len());
    let mut cases = Vec::with_capacity(take);
    for (i, (name, outer, inner)) in pairs.into_iter().take(take).enumerate() {
        cases.push(transition_case(
            &format!("T{:03}", i + 1),
            &name,
            &inner,
            &outer,
        )?);
    }
    let passed = cases.iter().filter(|c| c.pass).count();
    Ok(TransitionReport {
        failed: cases.len() - passed,
        passed,
        cases,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HllyCase {
    pub id: String,
    pub detail: String,
    pub left: [[u64; 2]; 2],
    pub right: [[u64; 2]; 2],
    pub pass: bool,
}

/// Anticanonical curve of a reflexive polygon Δ (Newton polygon Δ in the
/// surface of Δ°) against the one of Δ°.
pub fn hlly_polygon_case(p: &Polytope) -> Result<HllyCase> {
    if !is_reflexive(p)? {
        return Err(Error::Invalid("polygon is not reflexive".into()));
    }
    let dual = polar_dual(p)?;
    let left = curve_in(&dual, p)?;
    let right = curve_in(p, &dual)?;
    let name = p.name().unwrap_or("polygon").to_string();
    Ok(HllyCase {
        id: name.clone(),
        detail: format!(
            "genus {} loops {} | dual genus {} loops {}",
            left.genus, left.loops, right.genus, right.loops
        ),
        pass: curve_mirror_holds(&left.hodge, &right.hodge),
        left: left.hodge,
        right: right.hodge,
    })
}

/// The double cover of P¹ branched along the anticanonical divisor of the
/// segment, against its mirror, through the ledger B_{{1},∅,∅} + B_{∅,{1},∅}
/// evaluated on both sides.
pub fn hlly_segment_case() -> Result<HllyCase> {
    let np = segment_one_part()?;
    let mut ledger = BLedger::new();
    ledger.add_term(BSymbol::new(vec![vec![1]], vec![], vec![], 0)?, Rat::one());
    ledger.add_term(BSymbol::new(vec![], vec![vec![1]], vec![], 0)?, Rat::one());
    let report = numeric_mirror_check(&ledger, &np, 1)?;
    let degrees = crate::nefclarke::build_cover_spec(&np, &[])?
        .curve_degrees()
        .ok_or_else(|| Error::Unsupported("segment cover has no curve degrees".into()))?;
    let e: i64 = degrees.iter().sum();
    let p1 = HodgeDiamond::from_pure(&[(0, 0, 1), (2, 2, 1)]);
    let cover = p1.direct_sum(&crate::hodge::ev_coinvariant_curve(e)?);
    let left = curve_hodge_numbers(&cover);
    Ok(HllyCase {
        id: "segment".into(),
        detail: format!(
            "double cover of P1 branched in {} points; ledger check over {} rows",
            2 * e,
            report.rows.len()
        ),
        right: left,
        pass: report.pass && curve_mirror_holds(&left, &left),
        left,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HllyReport {
    pub cases: Vec<HllyCase>,
    pub pass: bool,
}

/// The given polygons, optionally followed by the segment case.
pub fn verify_hlly_curves(polygons: &[Polytope], with_segment: bool) -> Result<HllyReport> {
    let mut cases = Vec::new();
    for p in polygons {
        cases.push(hlly_polygon_case(p)?);
    }
    if with_segment {
        cases.push(hlly_segment_case()?);
    }
    let pass = cases.iter().all(|c| c.pass);
    Ok(HllyReport { cases, pass })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ToricMirrorCase {
    pub id: String,
    pub ledger: String,
    pub report: MirrorCheckReport,
}

/// The toric mirror ledger Σ_{I⁰ ⊔ I⁻ = [k]} B_{I⁻,I⁰,∅} evaluated on the
/// one- and two-part nef partitions of the segment.
pub fn verify_toric_mirror() -> Result<Vec<ToricMirrorCase>> {
    let cases = [
        ("segment k=1", segment_one_part()?, vec![vec![1]]),
        ("segment k=2", segment_two_parts()?, vec![vec![1], vec![2]]),
    ];
    let mut out = Vec::new();
    for (id, np, partition) in cases {
        let g = GeneratorSpec::toric(partition)?;
        let ledger = g.expand();
        out.push(ToricMirrorCase {
            id: id.to_string(),
            ledger: ledger.to_string(),
            report: numeric_mirror_check(&ledger, &np, 1)?,
        });
    }
    Ok(out)
}

/// The worked Clarke pair over P¹: the stacky side has one box element of
/// age 1/2 whose sector is P¹; the untwisted sectors are the LG models with
/// J = ∅ and J = {1}.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct P1CdualExample {
    pub box_ages: Vec<String>,
    pub left: DiamondDoc,
    pub right: DiamondDoc,
    pub report: CdualReport,
}

pub fn p1_cdual_example() -> Result<P1CdualExample> {
    let (l, p) = p1_example_pair()?;
    let ClarkeCheck::Valid(pair) = validate_clarke(&l, &p)? else {
        return Err(Error::Consistency(
            "the P1 pair is not a Clarke pair".into(),
        ));
    };
    let mut left_sectors = twisted_stratum_diamonds(&l)?;
    left_sectors.insert(SectorKey::Untwisted, lg_diamond_curve(&[2], &[])?);
    let left = orbifold_diamond(&l, &left_sectors)?;
    let mut right_sectors = twisted_stratum_diamonds(&p)?;
    right_sectors.insert(SectorKey::Untwisted, lg_diamond_curve(&[2], &[0])?);
    let right = orbifold_diamond(&p, &right_sectors)?;
    let report = verify_cdual(&pair, &left, &right, 2);
    Ok(P1CdualExample {
        box_ages: box_elements(&l)
            .iter()
            .map(|b| rat_string(&b.age))
            .collect(),
        left: left.to_doc(),
        right: right.to_doc(),
        report,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::reflexive_polygons;

    #[test]
    fn elliptic_numbers_are_self_mirror() {
        let e = CurveData {
            components: 1,
            connected: 1,
            genus: 1,
            loops: 0,
        };
        let h = curve_hodge_numbers(&curve_diamond(&e));
        assert_eq!(h, [[1, 1], [1, 1]]);
        assert!(curve_mirror_holds(&h, &h));
    }

    #[test]
    fn a_loop_breaks_the_symmetry() {
        let e = CurveData {
            components: 1,
            connected: 1,
            genus: 1,
            loops: 1,
        };
        let h = curve_hodge_numbers(&curve_diamond(&e));
        assert!(!curve_mirror_holds(&h, &h));
    }

    #[test]
    fn every_polygon_gives_an_elliptic_curve() {
        let r = verify_hlly_curves(&reflexive_polygons(), true).unwrap();
        assert_eq!(r.cases.len(), 17);
        for c in &r.cases {
            assert_eq!(c.left, [[1, 1], [1, 1]], "{}", c.id);
        }
        assert!(r.pass);
    }

    #[test]
    fn nested_pairs_satisfy_the_transition_relation() {
        let r = verify_transitions(&reflexive_polygons(), Some(12)).unwrap();
        assert_eq!(r.cases.len(), 12);
        assert_eq!(r.failed, 0);
        assert!(r
            .cases
            .iter()
            .all(|c| c.x_ii.loops == 0 && c.x_i.loops == 0));
    }

    #[test]
    fn toric_mirror_ledgers_pass_on_the_segment() {
        let cases = verify_toric_mirror().unwrap();
        assert_eq!(cases.len(), 2);
        assert!(cases.iter().all(|c| c.report.pass));
    }

    #[test]
    fn p1_example_passes() {
        let ex = p1_cdual_example().unwrap();
        assert_eq!(ex.box_ages, vec!["1/2"]);
        assert!(ex.report.pass);
    }

    #[test]
    fn containment_is_checked() {
        let small = crate::fixtures::reflexive_polygon("R3.1").unwrap();
        let big = crate::fixtures::reflexive_polygon("R9.1").unwrap();
        let e = transition_case("x", "R3.1", &big, &small).unwrap_err();
        assert!(e.is_input_error());
    }
}
