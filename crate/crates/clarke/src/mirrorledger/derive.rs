//! Certificates that B_{a,b,0} + B_{b,a,0} lies in the span of generator
//! ledgers. A certificate states multiplier · target = Σ c · generator, where a
//! generator may be shifted to the target weight and may be symmetrized (summed
//! over all relabelings of [n]). Checking a certificate only expands
//! generators from their definition and resolves contractions.

use super::generators::{GeneratorSpec, MirrorGeneratorSet};
use super::{BLedger, BSymbol, GroupedLedger, LedgerTermDoc, Part};
use crate::error::{Error, Result};
use crate::lattice::{rref_q, Int, Rat};
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

pub const DEFAULT_HDUAL_BOUND: usize = 8;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertificateTerm {
    pub coefficient: i64,
    pub generator: String,
    pub spec: GeneratorSpec,
    /// Twice the shift applied to the generator.
    pub shift2: i64,
    /// Sum the generator over all n! relabelings of [n].
    pub symmetrized: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    pub name: String,
    pub n: usize,
    pub multiplier: i64,
    pub target: Vec<LedgerTermDoc>,
    pub terms: Vec<CertificateTerm>,
    pub route: String,
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut p: Vec<usize> = (0..n).collect();
    let mut out = vec![p.clone()];
    loop {
        let Some(i) = (1..n).rev().find(|&i| p[i - 1] < p[i]) else {
            return out;
        };
        let j = (i..n)
            .rev()
            .find(|&j| p[j] > p[i - 1])
            .expect("successor exists");
        p.swap(i - 1, j);
        p[i..].reverse();
        out.push(p.clone());
    }
}

fn term(c: i64, spec: GeneratorSpec, n: usize, symmetrized: bool) -> CertificateTerm {
    let shift2 = n as i64 - spec.weight();
    CertificateTerm {
        coefficient: c,
        generator: spec.id(),
        spec,
        shift2,
        symmetrized,
    }
}

impl Certificate {
    pub fn target_ledger(&self) -> Result<BLedger> {
        BLedger::from_doc(&self.target)
    }

    /// Σ c · generator with shifts applied and contractions resolved.
    pub fn expand(&self) -> Result<BLedger> {
        let perms = if self.terms.iter().any(|t| t.symmetrized) {
            permutations(self.n)
        } else {
            vec![]
        };
        let mut out = BLedger::new();
        for t in &self.terms {
            if t.spec.id() != t.generator {
                return Err(Error::Consistency(format!(
                    "generator id {} does not match its spec",
                    t.generator
                )));
            }
            let mut images: BTreeMap<GeneratorSpec, i64> = BTreeMap::new();
            if t.symmetrized {
                for p in &perms {
                    *images
                        .entry(t.spec.relabeled(&|x| p[x - 1] + 1))
                        .or_insert(0) += 1;
                }
            } else {
                images.insert(t.spec.clone(), 1);
            }
            for (g, mult) in images {
                let c = Rat::from_integer(Int::from(t.coefficient * mult));
                out.add_ledger(&g.expand().shifted(t.shift2).contracted(), &c);
            }
        }
        Ok(out)
    }

    pub fn verify(&self) -> Result<()> {
        let lhs = self
            .target_ledger()?
            .contracted()
            .scaled(&Rat::from_integer(Int::from(self.multiplier)));
        let rhs = self.expand()?;
        if lhs != rhs {
            return Err(Error::Derivation(format!(
                "certificate for {} does not expand to its target: difference {}",
                self.name,
                &lhs - &rhs
            )));
        }
        Ok(())
    }
}

/// B_{a,b,0} + B_{b,a,0} over the singleton parts of [a+b], labeled.
pub fn hdual_target(a: usize, b: usize) -> BLedger {
    let mut g = GroupedLedger::new(a + b);
    g.add((a, b, 0), Rat::one());
    g.add((b, a, 0), Rat::one());
    g.expand()
}

fn singles(labels: &[usize]) -> Vec<Part> {
    labels.iter().map(|&x| vec![x]).collect()
}

fn clarke(n: usize, j: &[usize]) -> GeneratorSpec {
    GeneratorSpec::clarke(singles(&(1..=n).collect::<Vec<_>>()), singles(j)).expect("valid")
}

fn toric(n: usize) -> GeneratorSpec {
    GeneratorSpec::toric(singles(&(1..=n).collect::<Vec<_>>())).expect("valid")
}

fn explicit(
    name: String,
    n: usize,
    multiplier: i64,
    target: &BLedger,
    terms: Vec<(i64, GeneratorSpec)>,
) -> Certificate {
    Certificate {
        name,
        n,
        multiplier,
        target: target.to_doc(),
        terms: terms
            .into_iter()
            .map(|(c, g)| term(c, g, n, false))
            .collect(),
        route: "explicit combination".into(),
    }
}

/// The hand combinations for a + b ≤ 3. For two parts the difference of the
/// pairs with J = {1,2} and J = {1} is B_{∅,12,∅} − B_{2,1,∅} − B_{1,2,∅} +
/// B_{12,∅,∅}; adding or subtracting the toric ledger isolates both targets.
/// For three parts, 3·(J = [3]) minus the three pairs with |J| = 2 leaves
/// 3(B_{∅,123,∅} + B_{123,∅,∅}) − Σ(B_{jk,i,∅} + B_{i,jk,∅}).
pub fn explicit_certificates(n: usize) -> Result<Vec<Certificate>> {
    let name = |a: usize, b: usize| format!("B_{{{a},{b},0}}+B_{{{b},{a},0}}");
    Ok(match n {
        1 => vec![explicit(
            name(1, 0),
            1,
            1,
            &hdual_target(1, 0),
            vec![(1, toric(1))],
        )],
        2 => vec![
            explicit(
                name(2, 0),
                2,
                2,
                &hdual_target(2, 0),
                vec![
                    (1, clarke(2, &[1, 2])),
                    (-1, clarke(2, &[1])),
                    (1, toric(2)),
                ],
            ),
            explicit(
                name(1, 1),
                2,
                1,
                &hdual_target(1, 1),
                vec![
                    (1, toric(2)),
                    (-1, clarke(2, &[1, 2])),
                    (1, clarke(2, &[1])),
                ],
            ),
        ],
        3 => {
            let pairs = [vec![2, 3], vec![1, 3], vec![1, 2]];
            let mut t30 = vec![(3, clarke(3, &[1, 2, 3])), (1, toric(3))];
            t30.extend(pairs.iter().map(|j| (-1, clarke(3, j))));
            let mut t21 = vec![(-3, clarke(3, &[1, 2, 3])), (3, toric(3))];
            t21.extend(pairs.iter().map(|j| (1, clarke(3, j))));
            vec![
                explicit(name(3, 0), 3, 4, &hdual_target(3, 0), t30),
                explicit(name(2, 1), 3, 4, &hdual_target(2, 1), t21),
            ]
        }
        _ => {
            return Err(Error::Invalid(format!(
                "no explicit combinations for {n} parts"
            )))
        }
    })
}

/// B_{{i,j},{k},∅} + B_{{k},{i,j},∅} for {i,j} = {2,3}, k = 1: the pair with
/// J = {2,3} minus the middle terms recovered from the (3,0) combination.
pub fn special_k3_certificate() -> Certificate {
    let mut target = BLedger::single(BSymbol::labeled(&[2, 3], &[1], &[]).expect("valid"));
    target.add_term(
        BSymbol::labeled(&[1], &[2, 3], &[]).expect("valid"),
        Rat::one(),
    );
    let mut terms = vec![
        (4, clarke(3, &[2, 3])),
        (-1, clarke(3, &[1, 2, 3])),
        (1, toric(3)),
    ];
    terms.extend(
        [vec![2, 3], vec![1, 3], vec![1, 2]]
            .iter()
            .map(|j| (-1, clarke(3, j))),
    );
    explicit(
        "B_{{2,3},{1},∅}+B_{{1},{2,3},∅}".into(),
        3,
        4,
        &target,
        terms,
    )
}

type SymType = (usize, Vec<usize>, Vec<usize>);

fn sym_type(s: &BSymbol) -> SymType {
    let sizes = |ps: &[Part]| {
        let mut v: Vec<usize> = ps.iter().map(|p| p.len()).collect();
        v.sort();
        v
    };
    (
        s.zero.first().map(|p| p.len()).unwrap_or(0),
        sizes(&s.minus),
        sizes(&s.plus),
    )
}

fn factorial(n: usize) -> Int {
    (1..=n).fold(Int::one(), |acc, i| acc * Int::from(i))
}

/// Order of the stabilizer in S_n of a contracted symbol of the given type.
fn stabilizer(t: &SymType) -> Int {
    let mut s = factorial(t.0);
    for sizes in [&t.1, &t.2] {
        let mut mult: BTreeMap<usize, usize> = BTreeMap::new();
        for &x in sizes {
            s *= factorial(x);
            *mult.entry(x).or_insert(0) += 1;
        }
        for m in mult.values() {
            s *= factorial(*m);
        }
    }
    s
}

/// Find rational c with target = Σ c_g · Σ_σ σ(g) by exact elimination on
/// relabeling classes of symbols. The target must be invariant under
/// relabeling and contracted forms are compared.
pub fn span_certificate(
    name: &str,
    n: usize,
    target: &BLedger,
    set: &MirrorGeneratorSet,
) -> Result<Certificate> {
    let mut tvec: BTreeMap<SymType, Rat> = BTreeMap::new();
    let mut counts: BTreeMap<SymType, Int> = BTreeMap::new();
    for (s, c) in target.contracted().terms() {
        *counts.entry(sym_type(s)).or_insert_with(Int::zero) += 1;
        if s.weight() != n as i64 {
            return Err(Error::Invalid(format!(
                "target symbol {s} has weight {} ≠ {n}",
                s.weight()
            )));
        }
        match tvec.get(&sym_type(s)) {
            Some(x) if x != c => {
                return Err(Error::Invalid(
                    "target is not invariant under relabeling".into(),
                ))
            }
            _ => {
                tvec.insert(sym_type(s), c.clone());
            }
        }
    }
    if counts
        .iter()
        .any(|(t, c)| c * stabilizer(t) != factorial(n))
    {
        return Err(Error::Invalid(
            "target is not invariant under relabeling".into(),
        ));
    }
    let columns: Vec<BTreeMap<SymType, Rat>> = set
        .generators
        .iter()
        .map(|g| {
            let mut v: BTreeMap<SymType, Rat> = BTreeMap::new();
            for (s, c) in g
                .expand()
                .shifted(n as i64 - g.weight())
                .contracted()
                .terms()
            {
                let t = sym_type(s);
                let w = Rat::from_integer(stabilizer(&t)) * c;
                *v.entry(t).or_insert_with(Rat::zero) += w;
            }
            v
        })
        .collect();
    let mut types: Vec<SymType> = tvec.keys().cloned().collect();
    types.extend(columns.iter().flat_map(|v| v.keys().cloned()));
    types.sort();
    types.dedup();
    let ng = columns.len();
    let mut m: Vec<Vec<Rat>> = types
        .iter()
        .map(|t| {
            let mut row: Vec<Rat> = columns
                .iter()
                .map(|v| v.get(t).cloned().unwrap_or_else(Rat::zero))
                .collect();
            row.push(tvec.get(t).cloned().unwrap_or_else(Rat::zero));
            row
        })
        .collect();
    let pivots = rref_q(&mut m);
    if pivots.contains(&ng) {
        return Err(Error::Derivation(format!(
            "{name} is not in the span of {ng} generators on {n} labels"
        )));
    }
    let mut coeffs = vec![Rat::zero(); ng];
    for (r, &pc) in pivots.iter().enumerate() {
        coeffs[pc] = m[r][ng].clone();
    }
    finish(
        name,
        n,
        target,
        set,
        &coeffs,
        true,
        "span over symmetrized generators",
    )
}

/// Same search without symmetrization: rows are labeled contracted symbols
/// and columns the generators of `set` as given.
pub fn labeled_span_certificate(
    name: &str,
    n: usize,
    target: &BLedger,
    set: &MirrorGeneratorSet,
) -> Result<Certificate> {
    let columns: Vec<BLedger> = set
        .generators
        .iter()
        .map(|g| g.expand().shifted(n as i64 - g.weight()).contracted())
        .collect();
    let t = target.contracted();
    let mut rows: Vec<BSymbol> = t.terms().keys().cloned().collect();
    rows.extend(columns.iter().flat_map(|c| c.terms().keys().cloned()));
    rows.sort();
    rows.dedup();
    let ng = columns.len();
    let mut m: Vec<Vec<Rat>> = rows
        .iter()
        .map(|s| {
            let mut row: Vec<Rat> = columns.iter().map(|c| c.coefficient(s)).collect();
            row.push(t.coefficient(s));
            row
        })
        .collect();
    let pivots = rref_q(&mut m);
    if pivots.contains(&ng) {
        return Err(Error::Derivation(format!(
            "{name} is not in the span of {ng} labeled generators on {n} labels"
        )));
    }
    let mut coeffs = vec![Rat::zero(); ng];
    for (r, &pc) in pivots.iter().enumerate() {
        coeffs[pc] = m[r][ng].clone();
    }
    finish(
        name,
        n,
        target,
        set,
        &coeffs,
        false,
        "span over labeled generators",
    )
}

fn finish(
    name: &str,
    n: usize,
    target: &BLedger,
    set: &MirrorGeneratorSet,
    coeffs: &[Rat],
    symmetrized: bool,
    route: &str,
) -> Result<Certificate> {
    let lcm = coeffs.iter().fold(Int::one(), |acc, c| {
        num_integer::lcm(acc, c.denom().clone())
    });
    let to_i64 = |x: &Int| {
        x.to_i64()
            .ok_or_else(|| Error::Derivation("certificate coefficient overflow".into()))
    };
    let mut terms = Vec::new();
    for (g, c) in set.generators.iter().zip(coeffs) {
        if !c.is_zero() {
            let scaled = c * Rat::from_integer(lcm.clone());
            terms.push(term(
                to_i64(&scaled.to_integer())?,
                g.clone(),
                n,
                symmetrized,
            ));
        }
    }
    Ok(Certificate {
        name: name.into(),
        n,
        multiplier: to_i64(&lcm)?,
        target: target.to_doc(),
        terms,
        route: route.into(),
    })
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct HdualDerivation {
    pub k: usize,
    pub certificates: Vec<Certificate>,
}

/// Outcome for one target B_{a,b,0} + B_{b,a,0}.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct HdualAttempt {
    pub name: String,
    pub a: usize,
    pub b: usize,
    pub certificate: Option<Certificate>,
    pub error: Option<String>,
}

pub fn derive_hdual(k: usize) -> Result<HdualDerivation> {
    derive_hdual_bounded(k, DEFAULT_HDUAL_BOUND)
}

/// Certificates for B_{a,b,0} + B_{b,a,0} with 1 ≤ a + b ≤ k, each verified by
/// expansion. Fails on the first target that cannot be certified.
pub fn derive_hdual_bounded(k: usize, bound: usize) -> Result<HdualDerivation> {
    let mut certificates = Vec::new();
    for at in hdual_attempts(k, bound)? {
        match at.certificate {
            Some(c) => certificates.push(c),
            None => return Err(Error::Derivation(at.error.unwrap_or_default())),
        }
    }
    Ok(HdualDerivation { k, certificates })
}

/// Try every target with a + b ≤ k. Three or fewer parts use the explicit
/// combinations (plus the labeled three-part certificate); larger cases
/// search the span of symmetrized generators over all coarsenings, which
/// contains every ledger reachable from the induction hypothesis on fewer
/// parts. Errors other than a failed search abort.
pub fn hdual_attempts(k: usize, bound: usize) -> Result<Vec<HdualAttempt>> {
    if k > bound {
        return Err(Error::Invalid(format!(
            "k = {k} exceeds the derivation bound {bound}"
        )));
    }
    let mut out = Vec::new();
    let ok = |c: Certificate, a: usize, b: usize| -> Result<HdualAttempt> {
        c.verify()?;
        Ok(HdualAttempt {
            name: c.name.clone(),
            a,
            b,
            certificate: Some(c),
            error: None,
        })
    };
    for n in 1..=k {
        if n <= 3 {
            for c in explicit_certificates(n)? {
                let (a, b) = target_sizes(&c);
                out.push(ok(c, a, b)?);
            }
            if n == 3 {
                out.push(ok(special_k3_certificate(), 2, 1)?);
            }
            continue;
        }
        let set = MirrorGeneratorSet::orbit_representatives(n);
        for a in (n + 1) / 2..=n {
            let b = n - a;
            let name = format!("B_{{{a},{b},0}}+B_{{{b},{a},0}}");
            match span_certificate(&name, n, &hdual_target(a, b), &set) {
                Ok(c) => out.push(ok(c, a, b)?),
                Err(Error::Derivation(msg)) => out.push(HdualAttempt {
                    name,
                    a,
                    b,
                    certificate: None,
                    error: Some(msg),
                }),
                Err(e) => return Err(e),
            }
        }
    }
    Ok(out)
}

/// (a, b) with a ≥ b read off the first target symbol.
fn target_sizes(c: &Certificate) -> (usize, usize) {
    let s = &c.target[0].symbol;
    let (m, z) = (
        s.minus.iter().flatten().count(),
        s.zero.iter().flatten().count(),
    );
    (m.max(z), m.min(z))
}
