//! Formal ledgers of B-symbols, the linear currency in which mirror relations
//! are tracked. A symbol B_{I⁻,I⁰,I⁺}(α) sits over parts of a nef partition,
//! where a part may be a merged union of original parts, and carries an
//! explicit weight shift α. Labels are 1-based.

mod derive;
mod generators;
mod numeric;

pub use derive::{
    derive_hdual, derive_hdual_bounded, explicit_certificates, hdual_attempts, hdual_target,
    labeled_span_certificate, span_certificate, special_k3_certificate, Certificate,
    CertificateTerm, HdualAttempt, HdualDerivation, DEFAULT_HDUAL_BOUND,
};
pub use generators::{set_partitions, GeneratorKind, GeneratorSpec, MirrorGeneratorSet};
pub use numeric::{evaluate_symbol, numeric_mirror_check, MirrorCheckReport, MirrorCheckRow};

use crate::error::{Error, Result};
use crate::hodge::half;
use crate::lattice::{Int, Rat};
use num_integer::binomial;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use std::collections::btree_map::Entry;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

/// A part of a (possibly coarsened) nef partition: the sorted original labels
/// it merges.
pub type Part = Vec<usize>;

fn part_string(p: &Part) -> String {
    p.iter()
        .map(|x| x.to_string())
        .collect::<Vec<_>>()
        .join("+")
}

fn parts_string(ps: &[Part]) -> String {
    if ps.is_empty() {
        "∅".into()
    } else {
        format!(
            "{{{}}}",
            ps.iter().map(part_string).collect::<Vec<_>>().join(",")
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct BSymbol {
    pub minus: Vec<Part>,
    pub zero: Vec<Part>,
    pub plus: Vec<Part>,
    /// Twice the explicit shift α.
    pub shift2: i64,
}

fn normalize(mut ps: Vec<Part>) -> Result<Vec<Part>> {
    for p in ps.iter_mut() {
        if p.is_empty() {
            return Err(Error::Invalid("empty part in B-symbol".into()));
        }
        p.sort();
    }
    ps.sort();
    Ok(ps)
}

impl BSymbol {
    pub fn new(minus: Vec<Part>, zero: Vec<Part>, plus: Vec<Part>, shift2: i64) -> Result<BSymbol> {
        let s = BSymbol {
            minus: normalize(minus)?,
            zero: normalize(zero)?,
            plus: normalize(plus)?,
            shift2,
        };
        let mut seen = BTreeSet::new();
        for l in s.parts().flatten() {
            if *l == 0 || !seen.insert(*l) {
                return Err(Error::Invalid(format!(
                    "label {l} repeated or zero in B-symbol"
                )));
            }
        }
        Ok(s)
    }

    /// Symbol over singleton parts.
    pub fn labeled(minus: &[usize], zero: &[usize], plus: &[usize]) -> Result<BSymbol> {
        let single = |v: &[usize]| v.iter().map(|&x| vec![x]).collect::<Vec<Part>>();
        BSymbol::new(single(minus), single(zero), single(plus), 0)
    }

    pub fn parts(&self) -> impl Iterator<Item = &Part> {
        self.minus.iter().chain(&self.zero).chain(&self.plus)
    }

    pub fn part_count(&self) -> usize {
        self.minus.len() + self.zero.len() + self.plus.len()
    }

    /// Number of parts plus 2α. A ledger satisfies the mirror relation with
    /// index d + weight, and this is invariant under contraction.
    pub fn weight(&self) -> i64 {
        self.part_count() as i64 + self.shift2
    }

    pub fn labels(&self) -> Vec<usize> {
        let mut v: Vec<usize> = self.parts().flatten().copied().collect();
        v.sort();
        v
    }

    pub fn shifted(&self, alpha2: i64) -> BSymbol {
        BSymbol {
            shift2: self.shift2 + alpha2,
            ..self.clone()
        }
    }

    /// Apply a label map (must be injective on the labels used).
    pub fn relabeled(&self, f: &dyn Fn(usize) -> usize) -> BSymbol {
        let m = |ps: &[Part]| {
            ps.iter()
                .map(|p| p.iter().map(|&x| f(x)).collect())
                .collect::<Vec<Part>>()
        };
        BSymbol::new(m(&self.minus), m(&self.zero), m(&self.plus), self.shift2)
            .expect("injective relabeling")
    }

    /// (|I⁻|, |I⁰|, |I⁺|) counted in parts.
    pub fn grouped_type(&self) -> (usize, usize, usize) {
        (self.minus.len(), self.zero.len(), self.plus.len())
    }

    fn contracted_or_self(&self) -> BSymbol {
        if self.zero.len() <= 1 {
            self.clone()
        } else {
            contraction(self).expect("nonempty")
        }
    }
}

impl fmt::Display for BSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "B_{{{},{},{}}}",
            parts_string(&self.minus),
            parts_string(&self.zero),
            parts_string(&self.plus)
        )?;
        if self.shift2 != 0 {
            write!(f, "({})", half(self.shift2))?;
        }
        Ok(())
    }
}

/// Merge I⁰ into one part and raise the shift by (|I⁰| − 1)/2.
pub fn contraction(sym: &BSymbol) -> Result<BSymbol> {
    if sym.zero.is_empty() {
        return Err(Error::Invalid("contraction needs a nonempty I⁰".into()));
    }
    let mut merged: Part = sym.zero.iter().flatten().copied().collect();
    merged.sort();
    Ok(BSymbol {
        minus: sym.minus.clone(),
        zero: vec![merged],
        plus: sym.plus.clone(),
        shift2: sym.shift2 + sym.zero.len() as i64 - 1,
    })
}

pub(crate) fn rat_string(r: &Rat) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub(crate) fn parse_rat(s: &str) -> Result<Rat> {
    let bad = || Error::Parse(format!("bad rational {s:?}"));
    match s.split_once('/') {
        Some((a, b)) => {
            let d: Int = b.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            Ok(Rat::new(a.trim().parse().map_err(|_| bad())?, d))
        }
        None => Ok(Rat::from_integer(s.trim().parse().map_err(|_| bad())?)),
    }
}

/// A finite ℚ-combination of B-symbols. Zero coefficients are never stored,
/// so equality of ledgers is equality of formal sums.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct BLedger {
    terms: BTreeMap<BSymbol, Rat>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LedgerTermDoc {
    pub coefficient: String,
    pub symbol: BSymbol,
}

impl BLedger {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn single(sym: BSymbol) -> Self {
        let mut l = Self::new();
        l.add_term(sym, Rat::one());
        l
    }

    pub fn add_term(&mut self, sym: BSymbol, c: Rat) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(sym) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn add_ledger(&mut self, other: &BLedger, c: &Rat) {
        for (s, x) in &other.terms {
            self.add_term(s.clone(), x * c);
        }
    }

    pub fn terms(&self) -> &BTreeMap<BSymbol, Rat> {
        &self.terms
    }

    pub fn coefficient(&self, sym: &BSymbol) -> Rat {
        self.terms.get(sym).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn scaled(&self, c: &Rat) -> BLedger {
        let mut l = BLedger::new();
        l.add_ledger(self, c);
        l
    }

    pub fn shifted(&self, alpha2: i64) -> BLedger {
        BLedger {
            terms: self
                .terms
                .iter()
                .map(|(s, c)| (s.shifted(alpha2), c.clone()))
                .collect(),
        }
    }

    pub fn relabeled(&self, f: &dyn Fn(usize) -> usize) -> BLedger {
        let mut l = BLedger::new();
        for (s, c) in &self.terms {
            l.add_term(s.relabeled(f), c.clone());
        }
        l
    }

    /// Every symbol with |I⁰| ≥ 2 replaced by its contraction.
    pub fn contracted(&self) -> BLedger {
        let mut l = BLedger::new();
        for (s, c) in &self.terms {
            l.add_term(s.contracted_or_self(), c.clone());
        }
        l
    }

    /// Common weight of all symbols, `None` for the empty ledger.
    pub fn weight(&self) -> Result<Option<i64>> {
        let ws: BTreeSet<i64> = self.terms.keys().map(|s| s.weight()).collect();
        match ws.len() {
            0 => Ok(None),
            1 => Ok(ws.into_iter().next()),
            _ => Err(Error::Invalid(format!("ledger mixes weights {ws:?}"))),
        }
    }

    /// Multiply by the least positive integer making all coefficients integral.
    pub fn denominator_lcm(&self) -> Int {
        self.terms.values().fold(Int::one(), |acc, c| {
            num_integer::lcm(acc, c.denom().clone())
        })
    }

    pub fn to_doc(&self) -> Vec<LedgerTermDoc> {
        self.terms
            .iter()
            .map(|(s, c)| LedgerTermDoc {
                coefficient: rat_string(c),
                symbol: s.clone(),
            })
            .collect()
    }

    pub fn from_doc(doc: &[LedgerTermDoc]) -> Result<BLedger> {
        let mut l = BLedger::new();
        for t in doc {
            let s = &t.symbol;
            let s = BSymbol::new(s.minus.clone(), s.zero.clone(), s.plus.clone(), s.shift2)?;
            l.add_term(s, parse_rat(&t.coefficient)?);
        }
        Ok(l)
    }
}

impl fmt::Display for BLedger {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (s, c)) in self.terms.iter().enumerate() {
            match (i, c.is_negative()) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let a = c.abs();
            if !a.is_one() {
                write!(f, "{}·", rat_string(&a))?;
            }
            write!(f, "{s}")?;
        }
        Ok(())
    }
}

impl std::ops::Add for &BLedger {
    type Output = BLedger;
    fn add(self, rhs: &BLedger) -> BLedger {
        let mut l = self.clone();
        l.add_ledger(rhs, &Rat::one());
        l
    }
}

impl std::ops::Sub for &BLedger {
    type Output = BLedger;
    fn sub(self, rhs: &BLedger) -> BLedger {
        let mut l = self.clone();
        l.add_ledger(rhs, &-Rat::one());
        l
    }
}

impl std::ops::Neg for &BLedger {
    type Output = BLedger;
    fn neg(self) -> BLedger {
        self.scaled(&-Rat::one())
    }
}

/// Combination of grouped symbols B_{a,b,c} over the singleton parts of [k];
/// B_{a,b,c} is the sum of all labeled symbols with those sizes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupedLedger {
    pub k: usize,
    pub terms: BTreeMap<(usize, usize, usize), Rat>,
}

impl GroupedLedger {
    pub fn new(k: usize) -> Self {
        GroupedLedger {
            k,
            terms: BTreeMap::new(),
        }
    }

    pub fn add(&mut self, abc: (usize, usize, usize), c: Rat) {
        assert_eq!(
            abc.0 + abc.1 + abc.2,
            self.k,
            "grouped symbol sizes must add up to k"
        );
        let e = self.terms.entry(abc).or_insert_with(Rat::zero);
        *e += c;
        if e.is_zero() {
            self.terms.remove(&abc);
        }
    }

    pub fn add_grouped(&mut self, other: &GroupedLedger, c: &Rat) {
        for (abc, x) in &other.terms {
            self.add(*abc, x * c);
        }
    }

    /// Labeled expansion by enumerating all 3^k assignments of labels.
    pub fn expand(&self) -> BLedger {
        let k = self.k;
        let mut out = BLedger::new();
        if self.terms.is_empty() {
            return out;
        }
        let total = 3usize.pow(k as u32);
        for code in 0..total {
            let mut sets: [Vec<usize>; 3] = Default::default();
            let mut c = code;
            for label in 1..=k {
                sets[c % 3].push(label);
                c /= 3;
            }
            let abc = (sets[0].len(), sets[1].len(), sets[2].len());
            if let Some(x) = self.terms.get(&abc) {
                let s = BSymbol::labeled(&sets[0], &sets[1], &sets[2]).expect("disjoint");
                out.add_term(s, x.clone());
            }
        }
        out
    }

    /// Inverse of [`expand`]: succeeds when the ledger lives over the singleton
    /// parts of [k], is unshifted and is constant on each size class.
    pub fn regroup(k: usize, l: &BLedger) -> Option<GroupedLedger> {
        let mut g = GroupedLedger::new(k);
        let mut counts: BTreeMap<(usize, usize, usize), usize> = BTreeMap::new();
        for (s, c) in l.terms() {
            if s.shift2 != 0
                || s.parts().any(|p| p.len() != 1)
                || s.labels() != (1..=k).collect::<Vec<_>>()
            {
                return None;
            }
            let t = s.grouped_type();
            match g.terms.get(&t) {
                Some(x) if x != c => return None,
                Some(_) => {}
                None => {
                    g.terms.insert(t, c.clone());
                }
            }
            *counts.entry(t).or_insert(0) += 1;
        }
        for (t, n) in counts {
            let full: u64 = binomial(k as u64, t.0 as u64) * binomial((k - t.0) as u64, t.1 as u64);
            if n as u64 != full {
                return None;
            }
        }
        Some(g)
    }
}

impl fmt::Display for GroupedLedger {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, ((a, b, c), x)) in self.terms.iter().enumerate() {
            match (i, x.is_negative()) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            if !x.abs().is_one() {
                write!(f, "{}·", rat_string(&x.abs()))?;
            }
            write!(f, "B_{{{a},{b},{c}}}")?;
        }
        Ok(())
    }
}

/// T(k, p) = Σ_{n ≤ p} Σ_{i even, p−n ≤ i ≤ k−n} C(i, p−n)(B_{k−n−i,n,i} + B_{n,k−n−i,i}).
pub fn grouped_sum(k: usize, p: usize) -> Result<GroupedLedger> {
    if p > k / 2 {
        return Err(Error::Invalid(format!("T({k},{p}) needs p ≤ ⌊k/2⌋")));
    }
    let mut g = GroupedLedger::new(k);
    for n in 0..=p {
        let lo = p - n;
        for i in (0..=k - n).filter(|i| i % 2 == 0 && *i >= lo) {
            let c = Rat::from_integer(Int::from(binomial(i as u64, lo as u64)));
            g.add((k - n - i, n, i), c.clone());
            g.add((n, k - n - i, i), c);
        }
    }
    Ok(g)
}

#[derive(Debug, Clone, Serialize)]
pub struct BinomialReport {
    pub k: usize,
    pub even: bool,
    pub lhs: String,
    pub rhs: String,
    pub labeled_terms: usize,
    pub pass: bool,
}

/// Both sides of the alternating T-identity, compared after labeled expansion.
pub fn binomial_identity_sides(k: usize) -> Result<(GroupedLedger, GroupedLedger)> {
    if k < 2 {
        return Err(Error::Invalid("binomial identities need k ≥ 2".into()));
    }
    let sign = |p: usize| if p % 2 == 0 { Rat::one() } else { -Rat::one() };
    let mut lhs = GroupedLedger::new(k);
    let mut rhs = GroupedLedger::new(k);
    if k % 2 == 0 {
        let h = k / 2;
        for p in 0..=h {
            lhs.add_grouped(&grouped_sum(k, p)?, &sign(p));
        }
        lhs.add_grouped(
            &grouped_sum(k, h)?,
            &(-sign(h) / Rat::from_integer(Int::from(2))),
        );
        for a in 0..=k {
            rhs.add((k - a, a, 0), sign(a));
        }
    } else {
        for p in 0..=k / 2 {
            let w = Rat::from_integer(Int::from(k as i64 - 2 * p as i64));
            lhs.add_grouped(&grouped_sum(k, p)?, &(sign(p) * w));
        }
        for a in 0..=k / 2 {
            let w = sign(a) * Rat::from_integer(Int::from(k as i64 - 2 * a as i64));
            rhs.add((k - a, a, 0), w.clone());
            rhs.add((a, k - a, 0), w);
        }
    }
    Ok((lhs, rhs))
}

pub fn verify_binomial_identities(k: usize) -> Result<BinomialReport> {
    let (lhs, rhs) = binomial_identity_sides(k)?;
    let (el, er) = (lhs.expand(), rhs.expand());
    Ok(BinomialReport {
        k,
        even: k % 2 == 0,
        lhs: lhs.to_string(),
        rhs: rhs.to_string(),
        labeled_terms: el.len().max(er.len()),
        pass: el == er,
    })
}

#[cfg(test)]
mod tests;
