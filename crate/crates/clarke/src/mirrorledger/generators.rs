//! Ledgers known to satisfy the mirror relation before any derivation: the
//! Clarke pairs of a nef partition (restricted to even |I⁺|) and the toric
//! mirror ledger, over any coarsening of the parts.

use super::{parts_string, BLedger, BSymbol, Part};
use crate::error::{Error, Result};
use num_traits::One;
use serde::{Deserialize, Serialize};
use std::collections::BTreeSet;

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum GeneratorKind {
    /// The pair (Σ_{2A_J, A_{J^c}}, Σ_{Ǎ_J, 2Ǎ_{J^c}}) together with its swap:
    /// Σ_{I⁰ ⊆ J, I⁻ ⊆ J^c} B_{I⁻,I⁰,I⁺} + B_{I⁰,I⁻,I⁺} over even |I⁺|.
    ClarkePair { j: Vec<Part> },
    /// Σ_{I⁻ ⊔ I⁰ = all parts} B_{I⁻,I⁰,∅}.
    ToricMirror,
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct GeneratorSpec {
    pub partition: Vec<Part>,
    pub kind: GeneratorKind,
}

fn sorted_parts(mut ps: Vec<Part>) -> Vec<Part> {
    for p in ps.iter_mut() {
        p.sort();
    }
    ps.sort();
    ps
}

fn subsets_of(ps: &[Part]) -> impl Iterator<Item = (Vec<Part>, Vec<Part>)> + '_ {
    (0u64..1 << ps.len()).map(move |mask| {
        let (mut a, mut b) = (Vec::new(), Vec::new());
        for (i, p) in ps.iter().enumerate() {
            if mask >> i & 1 == 1 {
                a.push(p.clone());
            } else {
                b.push(p.clone());
            }
        }
        (a, b)
    })
}

impl GeneratorSpec {
    pub fn clarke(partition: Vec<Part>, j: Vec<Part>) -> Result<GeneratorSpec> {
        let g = GeneratorSpec {
            partition: sorted_parts(partition),
            kind: GeneratorKind::ClarkePair { j: sorted_parts(j) },
        };
        g.check()?;
        Ok(g)
    }

    pub fn toric(partition: Vec<Part>) -> Result<GeneratorSpec> {
        let g = GeneratorSpec {
            partition: sorted_parts(partition),
            kind: GeneratorKind::ToricMirror,
        };
        g.check()?;
        Ok(g)
    }

    fn check(&self) -> Result<()> {
        let mut seen = BTreeSet::new();
        for l in self.partition.iter().flatten() {
            if *l == 0 || !seen.insert(*l) {
                return Err(Error::Invalid(format!(
                    "label {l} repeated or zero in partition"
                )));
            }
        }
        if self.partition.iter().any(|p| p.is_empty()) {
            return Err(Error::Invalid("empty part".into()));
        }
        if let GeneratorKind::ClarkePair { j } = &self.kind {
            if let Some(p) = j.iter().find(|p| !self.partition.contains(p)) {
                return Err(Error::Invalid(format!("J part {p:?} not in the partition")));
            }
        }
        Ok(())
    }

    pub fn id(&self) -> String {
        match &self.kind {
            GeneratorKind::ClarkePair { j } => {
                format!(
                    "clarke[{}; J={}]",
                    parts_string(&self.partition),
                    parts_string(j)
                )
            }
            GeneratorKind::ToricMirror => format!("toric[{}]", parts_string(&self.partition)),
        }
    }

    pub fn provenance(&self) -> &'static str {
        let coarse = self.partition.iter().any(|p| p.len() > 1);
        match (&self.kind, coarse) {
            (GeneratorKind::ClarkePair { .. }, false) => "Clarke pair of the nef partition",
            (GeneratorKind::ClarkePair { .. }, true) => "Clarke pair of a coarsened nef partition",
            (GeneratorKind::ToricMirror, false) => "toric mirror theorem",
            (GeneratorKind::ToricMirror, true) => {
                "toric mirror theorem for a coarsened nef partition"
            }
        }
    }

    /// Weight of every symbol in the expansion (the number of parts).
    pub fn weight(&self) -> i64 {
        self.partition.len() as i64
    }

    pub fn labels(&self) -> Vec<usize> {
        let mut v: Vec<usize> = self.partition.iter().flatten().copied().collect();
        v.sort();
        v
    }

    /// The generator ledger, unshifted and uncontracted.
    pub fn expand(&self) -> BLedger {
        let mut l = BLedger::new();
        let one = crate::lattice::Rat::one();
        match &self.kind {
            GeneratorKind::ClarkePair { j } => {
                let jc: Vec<Part> = self
                    .partition
                    .iter()
                    .filter(|p| !j.contains(p))
                    .cloned()
                    .collect();
                for (zero, j_rest) in subsets_of(j) {
                    for (minus, jc_rest) in subsets_of(&jc) {
                        if (j_rest.len() + jc_rest.len()) % 2 != 0 {
                            continue;
                        }
                        let plus: Vec<Part> = j_rest.iter().chain(&jc_rest).cloned().collect();
                        let a = BSymbol::new(minus.clone(), zero.clone(), plus.clone(), 0)
                            .expect("disjoint parts");
                        let b = BSymbol::new(zero.clone(), minus.clone(), plus, 0)
                            .expect("disjoint parts");
                        l.add_term(a, one.clone());
                        l.add_term(b, one.clone());
                    }
                }
            }
            GeneratorKind::ToricMirror => {
                for (zero, minus) in subsets_of(&self.partition) {
                    l.add_term(
                        BSymbol::new(minus, zero, vec![], 0).expect("disjoint parts"),
                        one.clone(),
                    );
                }
            }
        }
        l
    }

    pub fn relabeled(&self, f: &dyn Fn(usize) -> usize) -> GeneratorSpec {
        let m = |ps: &[Part]| {
            sorted_parts(
                ps.iter()
                    .map(|p| p.iter().map(|&x| f(x)).collect())
                    .collect(),
            )
        };
        let kind = match &self.kind {
            GeneratorKind::ClarkePair { j } => GeneratorKind::ClarkePair { j: m(j) },
            GeneratorKind::ToricMirror => GeneratorKind::ToricMirror,
        };
        GeneratorSpec {
            partition: m(&self.partition),
            kind,
        }
    }
}

/// All set partitions of the given labels, blocks in increasing order.
pub fn set_partitions(labels: &[usize]) -> Vec<Vec<Part>> {
    let Some((&first, rest)) = labels.split_first() else {
        return vec![vec![]];
    };
    let mut out = Vec::new();
    for p in set_partitions(rest) {
        let mut q = p.clone();
        q.push(vec![first]);
        out.push(sorted_parts(q));
        for i in 0..p.len() {
            let mut q = p.clone();
            q[i].push(first);
            out.push(sorted_parts(q));
        }
    }
    out.sort();
    out
}

fn integer_partitions(n: usize, max: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for first in (1..=n.min(max)).rev() {
        for mut tail in integer_partitions(n - first, first) {
            tail.insert(0, first);
            out.push(tail);
        }
    }
    out
}

/// A finite collection of generators over the labels 1..=n.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MirrorGeneratorSet {
    pub n: usize,
    pub generators: Vec<GeneratorSpec>,
}

impl MirrorGeneratorSet {
    /// Every generator over every set partition of [n].
    pub fn all(n: usize) -> MirrorGeneratorSet {
        let labels: Vec<usize> = (1..=n).collect();
        let mut generators = Vec::new();
        for p in set_partitions(&labels) {
            for (j, _) in subsets_of(&p) {
                generators.push(GeneratorSpec::clarke(p.clone(), j).expect("valid"));
            }
            generators.push(GeneratorSpec::toric(p).expect("valid"));
        }
        MirrorGeneratorSet { n, generators }
    }

    /// One generator per relabeling class: a partition of [n] into consecutive
    /// blocks for each integer partition of n, and J chosen up to permuting
    /// blocks of equal size.
    pub fn orbit_representatives(n: usize) -> MirrorGeneratorSet {
        let mut generators = Vec::new();
        for shape in integer_partitions(n, n) {
            let mut blocks: Vec<Part> = Vec::new();
            let mut next = 1;
            for &s in &shape {
                blocks.push((next..next + s).collect());
                next += s;
            }
            // blocks of equal size are adjacent; choose how many of each class go into J
            let mut classes: Vec<Vec<Part>> = Vec::new();
            for b in &blocks {
                match classes.last_mut() {
                    Some(c) if c[0].len() == b.len() => c.push(b.clone()),
                    _ => classes.push(vec![b.clone()]),
                }
            }
            let mut choices: Vec<Vec<Part>> = vec![vec![]];
            for c in &classes {
                choices = choices
                    .into_iter()
                    .flat_map(|j| {
                        (0..=c.len())
                            .map(move |t| j.iter().cloned().chain(c[..t].iter().cloned()).collect())
                    })
                    .collect();
            }
            for j in choices {
                generators.push(GeneratorSpec::clarke(blocks.clone(), j).expect("valid"));
            }
            generators.push(GeneratorSpec::toric(blocks).expect("valid"));
        }
        MirrorGeneratorSet { n, generators }
    }
}
