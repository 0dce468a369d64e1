use super::*;
use crate::lattice::LatticeTag;
use crate::nefclarke::validate_nef_partition;
use crate::polytope::Polytope;
use proptest::prelude::*;

fn r(x: i64) -> Rat {
    Rat::from_integer(Int::from(x))
}

fn sym(m: &[usize], z: &[usize], p: &[usize]) -> BSymbol {
    BSymbol::labeled(m, z, p).unwrap()
}

#[test]
fn contraction_examples() {
    let s = contraction(&sym(&[], &[1, 2], &[])).unwrap();
    assert_eq!(s.zero, vec![vec![1, 2]]);
    assert_eq!(s.shift2, 1);
    assert_eq!(s.to_string(), "B_{∅,{1+2},∅}(1/2)");
    let t = sym(&[2], &[1], &[3]);
    assert_eq!(contraction(&t).unwrap(), t);
    let u = contraction(&sym(&[3], &[1, 2, 4], &[])).unwrap();
    assert_eq!(u.to_string(), "B_{{3},{1+2+4},∅}(1)");
    assert_eq!(u.weight(), 4);
    assert!(contraction(&sym(&[1], &[], &[2])).is_err());
}

#[test]
fn symbol_validation() {
    assert!(BSymbol::labeled(&[1], &[1], &[]).is_err());
    assert!(BSymbol::labeled(&[0], &[], &[]).is_err());
    assert!(BSymbol::new(vec![vec![]], vec![], vec![], 0).is_err());
}

#[test]
fn grouped_sums_match_the_worked_lists() {
    let t20 = grouped_sum(2, 0).unwrap();
    assert_eq!(t20.to_string(), "2·B_{0,0,2} + B_{0,2,0} + B_{2,0,0}");
    let t30 = grouped_sum(3, 0).unwrap().expand();
    assert_eq!(t30.len(), 8);
    assert!(t30.terms().values().all(|c| *c == r(1)));
    // T(3,1) = Σ_{|J|=2} of the Clarke pair ledgers
    let t31 = grouped_sum(3, 1).unwrap().expand();
    let mut sum = BLedger::new();
    for j in [vec![2, 3], vec![1, 3], vec![1, 2]] {
        let g = GeneratorSpec::clarke(
            vec![vec![1], vec![2], vec![3]],
            j.iter().map(|&x| vec![x]).collect(),
        )
        .unwrap();
        sum = &sum + &g.expand();
    }
    assert_eq!(t31, sum);
    assert!(grouped_sum(3, 2).is_err());
}

#[test]
fn grouped_sum_is_the_sum_of_clarke_pairs() {
    for k in 2..=6usize {
        let labels: Vec<usize> = (1..=k).collect();
        let singles: Vec<Part> = labels.iter().map(|&x| vec![x]).collect();
        for p in 0..=k / 2 {
            let mut sum = BLedger::new();
            for mask in 0u32..1 << k {
                if mask.count_ones() as usize != k - p {
                    continue;
                }
                let j: Vec<Part> = (0..k)
                    .filter(|b| mask >> b & 1 == 1)
                    .map(|b| vec![b + 1])
                    .collect();
                sum = &sum + &GeneratorSpec::clarke(singles.clone(), j).unwrap().expand();
            }
            assert_eq!(grouped_sum(k, p).unwrap().expand(), sum, "T({k},{p})");
        }
    }
}

#[test]
fn binomial_identities_small() {
    let r2 = verify_binomial_identities(2).unwrap();
    assert!(r2.pass);
    assert_eq!(r2.rhs, "B_{0,2,0} - B_{1,1,0} + B_{2,0,0}");
    let (lhs, rhs) = binomial_identity_sides(3).unwrap();
    assert_eq!(lhs, rhs);
    assert_eq!(rhs.terms[&(3, 0, 0)], r(3));
    assert_eq!(rhs.terms[&(2, 1, 0)], r(-1));
    assert!(verify_binomial_identities(1).is_err());
}

#[test]
fn perturbed_identity_fails() {
    let (mut lhs, rhs) = binomial_identity_sides(4).unwrap();
    lhs.add((2, 2, 0), r(1));
    assert_ne!(lhs.expand(), rhs.expand());
}

#[test]
fn regroup_inverts_expand() {
    let g = grouped_sum(5, 2).unwrap();
    assert_eq!(GroupedLedger::regroup(5, &g.expand()), Some(g));
    let mut l = grouped_sum(3, 0).unwrap().expand();
    l.add_term(sym(&[1], &[2], &[3]), r(1));
    assert_eq!(GroupedLedger::regroup(3, &l), None);
}

#[test]
fn k2_difference_of_pairs() {
    let pi = vec![vec![1], vec![2]];
    let a = GeneratorSpec::clarke(pi.clone(), pi.clone())
        .unwrap()
        .expand();
    let b = GeneratorSpec::clarke(pi.clone(), vec![vec![1]])
        .unwrap()
        .expand();
    let mut expect = BLedger::new();
    expect.add_term(sym(&[], &[1, 2], &[]), r(1));
    expect.add_term(sym(&[1, 2], &[], &[]), r(1));
    expect.add_term(sym(&[2], &[1], &[]), r(-1));
    expect.add_term(sym(&[1], &[2], &[]), r(-1));
    assert_eq!(&a - &b, expect);
    // J = ∅ gives the same ledger as J = {1,2}
    assert_eq!(GeneratorSpec::clarke(pi, vec![]).unwrap().expand(), a);
}

#[test]
fn explicit_certificates_verify() {
    for n in 1..=3 {
        for c in explicit_certificates(n).unwrap() {
            c.verify().unwrap_or_else(|e| panic!("{}: {e}", c.name));
        }
    }
    let special = special_k3_certificate();
    special.verify().unwrap();
    assert_eq!(special.multiplier, 4);
    assert_eq!(
        special.target_ledger().unwrap().to_string(),
        "B_{{1},{2,3},∅} + B_{{2,3},{1},∅}"
    );
}

#[test]
fn broken_certificate_is_rejected() {
    let mut c = explicit_certificates(2).unwrap().remove(0);
    c.multiplier = 1;
    assert!(matches!(c.verify(), Err(Error::Derivation(_))));
    let mut c = explicit_certificates(3).unwrap().remove(0);
    c.terms[0].coefficient += 1;
    assert!(c.verify().is_err());
}

#[test]
fn span_search_agrees_with_explicit_cases() {
    for n in 1..=3 {
        let set = MirrorGeneratorSet::orbit_representatives(n);
        for a in (n + 1) / 2..=n {
            let c = span_certificate("t", n, &hdual_target(a, n - a), &set).unwrap();
            c.verify().unwrap();
        }
    }
}

#[test]
fn derive_up_to_four() {
    let d = derive_hdual(4).unwrap();
    let names: Vec<&str> = d.certificates.iter().map(|c| c.name.as_str()).collect();
    assert_eq!(d.certificates.len(), 1 + 2 + 3 + 3);
    assert!(names.contains(&"B_{4,0,0}+B_{0,4,0}"));
    assert!(names.contains(&"B_{2,2,0}+B_{2,2,0}"));
    assert!(names.contains(&"B_{{2,3},{1},∅}+B_{{1},{2,3},∅}"));
    for c in &d.certificates {
        assert!(c.multiplier > 0);
        let json = serde_json::to_string(c).unwrap();
        let back: Certificate = serde_json::from_str(&json).unwrap();
        back.verify().unwrap();
    }
    assert!(derive_hdual_bounded(4, 3).is_err());
}

#[test]
fn five_parts_leave_a_two_dimensional_span() {
    // the generators reach the toric sum and X − Y, but not Z alone
    let (x, y, z) = (hdual_target(5, 0), hdual_target(4, 1), hdual_target(3, 2));
    let set = MirrorGeneratorSet::orbit_representatives(5);
    let toric = &(&x + &y) + &z;
    assert!(span_certificate("t", 5, &toric, &set)
        .unwrap()
        .verify()
        .is_ok());
    assert!(span_certificate("x-y", 5, &(&x - &y), &set).is_ok());
    for t in [&x, &y, &z] {
        assert!(matches!(
            span_certificate("t", 5, t, &set),
            Err(Error::Derivation(_))
        ));
    }
    let attempts = hdual_attempts(5, DEFAULT_HDUAL_BOUND).unwrap();
    let failed: Vec<&str> = attempts
        .iter()
        .filter(|a| a.certificate.is_none())
        .map(|a| a.name.as_str())
        .collect();
    assert_eq!(
        failed,
        [
            "B_{3,2,0}+B_{2,3,0}",
            "B_{4,1,0}+B_{1,4,0}",
            "B_{5,0,0}+B_{0,5,0}"
        ]
    );
    assert!(matches!(derive_hdual(5), Err(Error::Derivation(_))));
}

#[test]
fn labeled_three_one_is_outside_the_labeled_span() {
    let set = MirrorGeneratorSet::all(4);
    let mut t = BLedger::single(sym(&[1, 2, 3], &[4], &[]));
    t.add_term(sym(&[4], &[1, 2, 3], &[]), r(1));
    assert!(matches!(
        labeled_span_certificate("t", 4, &t, &set),
        Err(Error::Derivation(_))
    ));
    let mut s3 = BLedger::single(sym(&[1, 2], &[3], &[]));
    s3.add_term(sym(&[3], &[1, 2], &[]), r(1));
    labeled_span_certificate("s", 3, &s3, &MirrorGeneratorSet::all(3))
        .unwrap()
        .verify()
        .unwrap();
}

#[test]
fn enlarging_generator_set_keeps_certificates() {
    let small = MirrorGeneratorSet::orbit_representatives(3);
    let big = MirrorGeneratorSet::all(3);
    assert!(big.generators.len() > small.generators.len());
    for set in [&small, &big] {
        span_certificate("t", 3, &hdual_target(2, 1), set)
            .unwrap()
            .verify()
            .unwrap();
    }
}

#[test]
fn non_target_is_not_derivable() {
    // a single labeled symbol is not relabeling invariant
    let set = MirrorGeneratorSet::orbit_representatives(2);
    assert!(span_certificate("t", 2, &BLedger::single(sym(&[1], &[2], &[])), &set).is_err());
    // B_{2,0,0} alone does not satisfy the relation in general
    let mut g = GroupedLedger::new(2);
    g.add((2, 0, 0), r(1));
    assert!(matches!(
        span_certificate("t", 2, &g.expand(), &set),
        Err(Error::Derivation(_))
    ));
}

#[test]
fn set_partition_counts() {
    let bell = [1usize, 1, 2, 5, 15, 52];
    for (n, b) in bell.iter().enumerate() {
        assert_eq!(set_partitions(&(1..=n).collect::<Vec<_>>()).len(), *b);
    }
}

fn segment_np(parts: &[Vec<usize>]) -> crate::nefclarke::NefPartition {
    let seg = Polytope::from_int_points(LatticeTag::N, &[vec![-1], vec![1]]).unwrap();
    validate_nef_partition(&seg, parts).unwrap()
}

#[test]
fn numeric_check_elliptic_segment() {
    let np = segment_np(&[vec![0, 1]]);
    let l = hdual_target(1, 0);
    let rep = numeric_mirror_check(&l, &np, 1).unwrap();
    assert!(rep.pass);
    assert_eq!(rep.weight, 1);
    assert_eq!(rep.rows.len(), 4);
    assert!(numeric_mirror_check(&BLedger::new(), &np, 1).unwrap().pass);
    assert!(matches!(
        numeric_mirror_check(&l, &np, 2),
        Err(Error::RankMismatch(..))
    ));
}

#[test]
fn numeric_check_two_parts() {
    let np = segment_np(&[vec![0], vec![1]]);
    for n in 1..=2 {
        for c in explicit_certificates(n).unwrap() {
            if n == 2 {
                let rep = numeric_mirror_check(&c.target_ledger().unwrap(), &np, 1).unwrap();
                assert!(rep.pass, "{}", c.name);
            }
        }
    }
    for j in [vec![], vec![vec![1]], vec![vec![1], vec![2]]] {
        let g = GeneratorSpec::clarke(vec![vec![1], vec![2]], j)
            .unwrap()
            .expand();
        assert!(numeric_mirror_check(&g, &np, 1).unwrap().pass);
    }
    // a single symbol is not self-mirror here
    let one = BLedger::single(sym(&[1, 2], &[], &[]));
    assert!(!numeric_mirror_check(&one, &np, 1).unwrap().pass);
}

#[test]
fn surface_base_is_unsupported() {
    let sq = Polytope::from_int_points(
        LatticeTag::N,
        &[vec![1, 0], vec![0, 1], vec![-1, 0], vec![0, -1]],
    )
    .unwrap();
    let np = validate_nef_partition(&sq, &[vec![0, 1], vec![2, 3]]).unwrap();
    assert!(matches!(
        numeric_mirror_check(&hdual_target(1, 1), &np, 2),
        Err(Error::Unsupported(_))
    ));
}

#[test]
fn ledger_json_round_trip() {
    let l = grouped_sum(4, 1).unwrap().expand().contracted();
    let doc = serde_json::to_string(&l.to_doc()).unwrap();
    let back: Vec<LedgerTermDoc> = serde_json::from_str(&doc).unwrap();
    assert_eq!(BLedger::from_doc(&back).unwrap(), l);
}

fn arb_ledger() -> impl Strategy<Value = BLedger> {
    proptest::collection::vec((0u32..81, -3i64..4, 0i64..3), 0..8).prop_map(|v| {
        let mut l = BLedger::new();
        for (code, c, sh) in v {
            let mut sets: [Vec<usize>; 3] = Default::default();
            let mut x = code;
            for label in 1..=4 {
                sets[(x % 3) as usize].push(label);
                x /= 3;
            }
            l.add_term(
                BSymbol::labeled(&sets[0], &sets[1], &sets[2])
                    .unwrap()
                    .shifted(sh),
                r(c),
            );
        }
        l
    })
}

proptest! {
    #[test]
    fn ledger_algebra(a in arb_ledger(), b in arb_ledger(), c in arb_ledger()) {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(a.contracted().contracted(), a.contracted());
        prop_assert_eq!((&a + &b).contracted(), &a.contracted() + &b.contracted());
        prop_assert!((&a - &a).is_empty());
    }

    #[test]
    fn contraction_preserves_weight(a in arb_ledger()) {
        for (s, _) in a.contracted().terms() {
            prop_assert!(s.zero.len() <= 1);
        }
        let w: Vec<i64> = a.terms().keys().map(|s| s.weight()).collect();
        let mut wc: Vec<i64> = a.contracted().terms().keys().map(|s| s.weight()).collect();
        wc.sort();
        for x in wc {
            prop_assert!(w.contains(&x));
        }
    }
}
