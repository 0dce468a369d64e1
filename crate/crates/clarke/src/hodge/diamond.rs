//! Sparse Hodge diamonds with doubled indices, stored per cohomological degree.

use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::fmt::Write as _;

/// Entries keyed by (2λ, 2μ), where λ is the filtration index and μ the
/// complementary index; each entry also records its cohomological degree.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct HodgeDiamond {
    by_degree: BTreeMap<i64, BTreeMap<(i64, i64), u64>>,
}

/// Render a doubled index as a half-integer.
pub fn half(x2: i64) -> String {
    if x2 % 2 == 0 {
        format!("{}", x2 / 2)
    } else {
        format!("{x2}/2")
    }
}

impl HodgeDiamond {
    pub fn new() -> Self {
        Self::default()
    }

    /// The diamond of a point.
    pub fn point() -> Self {
        Self::new().with(0, 0, 0, 1)
    }

    pub fn add_entry(&mut self, degree: i64, l2: i64, m2: i64, count: u64) {
        if count == 0 {
            return;
        }
        *self
            .by_degree
            .entry(degree)
            .or_default()
            .entry((l2, m2))
            .or_insert(0) += count;
    }

    pub fn with(mut self, degree: i64, l2: i64, m2: i64, count: u64) -> Self {
        self.add_entry(degree, l2, m2, count);
        self
    }

    /// Entries (2λ, 2μ, count) placed in degree λ + μ.
    pub fn from_pure(entries: &[(i64, i64, u64)]) -> Self {
        let mut d = Self::new();
        for &(l2, m2, c) in entries {
            d.add_entry((l2 + m2).div_euclid(2), l2, m2, c);
        }
        d
    }

    pub fn get(&self, l2: i64, m2: i64) -> u64 {
        self.by_degree
            .values()
            .filter_map(|m| m.get(&(l2, m2)))
            .sum()
    }

    pub fn get_in_degree(&self, degree: i64, l2: i64, m2: i64) -> u64 {
        self.by_degree
            .get(&degree)
            .and_then(|m| m.get(&(l2, m2)))
            .copied()
            .unwrap_or(0)
    }

    /// Entries summed over degrees.
    pub fn entries(&self) -> BTreeMap<(i64, i64), u64> {
        let mut out = BTreeMap::new();
        for m in self.by_degree.values() {
            for (k, v) in m {
                *out.entry(*k).or_insert(0) += v;
            }
        }
        out
    }

    pub fn by_degree(&self) -> &BTreeMap<i64, BTreeMap<(i64, i64), u64>> {
        &self.by_degree
    }

    pub fn total(&self) -> u64 {
        self.by_degree.values().flat_map(|m| m.values()).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.total() == 0
    }

    /// Move every entry by (α, α); `alpha2` is 2α. Degrees are unchanged.
    pub fn shift(&self, alpha2: i64) -> Self {
        let mut d = Self::new();
        for (n, m) in &self.by_degree {
            for ((l, u), c) in m {
                d.add_entry(*n, l + alpha2, u + alpha2, *c);
            }
        }
        d
    }

    pub fn shift_degree(&self, k: i64) -> Self {
        Self {
            by_degree: self
                .by_degree
                .iter()
                .map(|(n, m)| (n + k, m.clone()))
                .collect(),
        }
    }

    pub fn direct_sum(&self, other: &Self) -> Self {
        let mut d = self.clone();
        for (n, m) in &other.by_degree {
            for ((l, u), c) in m {
                d.add_entry(*n, *l, *u, *c);
            }
        }
        d
    }

    /// Filtered tensor product: indices and degrees add.
    pub fn kunneth(&self, other: &Self) -> Self {
        let mut d = Self::new();
        for (n1, a) in &self.by_degree {
            for (n2, b) in &other.by_degree {
                for ((l1, u1), c1) in a {
                    for ((l2, u2), c2) in b {
                        d.add_entry(n1 + n2, l1 + l2, u1 + u2, c1 * c2);
                    }
                }
            }
        }
        d
    }

    /// (λ, μ) ↦ (d − λ, μ), placed in degree d − λ + μ.
    pub fn mirror(&self, d2: i64) -> Self {
        let mut out = Self::new();
        for ((l, u), c) in self.entries() {
            let (nl, nu) = (d2 - l, u);
            out.add_entry((nl + nu).div_euclid(2), nl, nu, c);
        }
        out
    }

    /// Entrywise comparison, degree by degree.
    pub fn is_entrywise_le(&self, other: &Self) -> bool {
        self.by_degree.iter().all(|(n, m)| {
            m.iter()
                .all(|((l, u), c)| *c <= other.get_in_degree(*n, *l, *u))
        })
    }

    /// dim gr^λ in a fixed degree, keyed by 2λ.
    pub fn gr_dims(&self, degree: i64) -> BTreeMap<i64, u64> {
        let mut out = BTreeMap::new();
        if let Some(m) = self.by_degree.get(&degree) {
            for ((l, _), c) in m {
                *out.entry(*l).or_insert(0) += c;
            }
        }
        out
    }

    /// Keys where the aggregated entries differ: (key, self, other).
    pub fn diff(&self, other: &Self) -> Vec<((i64, i64), u64, u64)> {
        let (a, b) = (self.entries(), other.entries());
        let keys: std::collections::BTreeSet<(i64, i64)> =
            a.keys().chain(b.keys()).copied().collect();
        keys.into_iter()
            .filter_map(|k| {
                let (x, y) = (
                    a.get(&k).copied().unwrap_or(0),
                    b.get(&k).copied().unwrap_or(0),
                );
                (x != y).then_some((k, x, y))
            })
            .collect()
    }

    /// Aligned text table, one line per (degree, λ, μ).
    pub fn to_table(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(
            s,
            "{:>6} {:>6} {:>6} {:>8}",
            "degree", "lambda", "mu", "dim"
        );
        for (n, m) in &self.by_degree {
            for ((l, u), c) in m {
                let _ = writeln!(s, "{:>6} {:>6} {:>6} {:>8}", n, half(*l), half(*u), c);
            }
        }
        s
    }

    pub fn to_doc(&self) -> DiamondDoc {
        let entries = self
            .entries()
            .into_iter()
            .map(|((l, u), c)| [l, u, c as i64])
            .collect();
        let by_degree = self
            .by_degree
            .iter()
            .map(|(n, m)| {
                (
                    n.to_string(),
                    m.iter().map(|((l, u), c)| [*l, *u, *c as i64]).collect(),
                )
            })
            .collect();
        DiamondDoc {
            entries,
            by_degree: Some(by_degree),
        }
    }

    pub fn from_doc(doc: &DiamondDoc) -> crate::Result<Self> {
        let mut d = Self::new();
        let bad = |e: &[i64; 3]| e[2] < 0;
        match &doc.by_degree {
            Some(bd) => {
                for (n, rows) in bd {
                    let n: i64 = n
                        .parse()
                        .map_err(|_| crate::Error::Parse(format!("degree key {n:?}")))?;
                    for e in rows {
                        if bad(e) {
                            return Err(crate::Error::Parse("negative count".into()));
                        }
                        d.add_entry(n, e[0], e[1], e[2] as u64);
                    }
                }
            }
            None => {
                for e in &doc.entries {
                    if bad(e) {
                        return Err(crate::Error::Parse("negative count".into()));
                    }
                    d.add_entry((e[0] + e[1]).div_euclid(2), e[0], e[1], e[2] as u64);
                }
            }
        }
        Ok(d)
    }
}

impl std::ops::Add for &HodgeDiamond {
    type Output = HodgeDiamond;
    fn add(self, rhs: &HodgeDiamond) -> HodgeDiamond {
        self.direct_sum(rhs)
    }
}

/// JSON form: entries as [2λ, 2μ, count], optionally split by degree.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiamondDoc {
    pub entries: Vec<[i64; 3]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub by_degree: Option<BTreeMap<String, Vec<[i64; 3]>>>,
}
