use super::{Int, Rat};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct IntMatrix {
    pub rows: usize,
    pub cols: usize,
    pub entries: Vec<Vec<Int>>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            entries: vec![vec![Int::zero(); cols]; rows],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.entries[i][i] = Int::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Int>>) -> Self {
        let r = rows.len();
        let c = rows.first().map(|x| x.len()).unwrap_or(0);
        assert!(rows.iter().all(|x| x.len() == c), "ragged matrix");
        IntMatrix {
            rows: r,
            cols: c,
            entries: rows,
        }
    }

    pub fn from_i64(rows: &[&[i64]]) -> Self {
        Self::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| Int::from(x)).collect())
                .collect(),
        )
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_columns(cols: &[Vec<Int>], dim: usize) -> Self {
        let mut m = Self::zeros(dim, cols.len());
        for (j, c) in cols.iter().enumerate() {
            for i in 0..dim {
                m.entries[i][j] = c[i].clone();
            }
        }
        m
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.rows);
        let mut out = IntMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                if self.entries[i][k].is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    out.entries[i][j] += &self.entries[i][k] * &other.entries[k][j];
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[Int]) -> Vec<Int> {
        self.entries
            .iter()
            .map(|r| r.iter().zip(v).map(|(a, b)| a * b).sum())
            .collect()
    }

    pub fn transpose(&self) -> IntMatrix {
        let mut t = IntMatrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.entries[j][i] = self.entries[i][j].clone();
            }
        }
        t
    }

    pub fn det(&self) -> Int {
        assert_eq!(self.rows, self.cols);
        super::det_int(&self.entries)
    }

    pub fn is_unimodular(&self) -> bool {
        self.rows == self.cols && self.det().abs().is_one()
    }

    pub fn is_diagonal(&self) -> bool {
        (0..self.rows).all(|i| (0..self.cols).all(|j| i == j || self.entries[i][j].is_zero()))
    }
}

/// `u · a · v = d` with `d` diagonal, nonnegative, and each diagonal entry
/// dividing the next.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Snf {
    pub u: IntMatrix,
    pub d: IntMatrix,
    pub v: IntMatrix,
}

impl Snf {
    pub fn diagonal(&self) -> Vec<Int> {
        (0..self.d.rows.min(self.d.cols))
            .map(|i| self.d.entries[i][i].clone())
            .collect()
    }

    pub fn rank(&self) -> usize {
        self.diagonal().iter().filter(|x| !x.is_zero()).count()
    }
}

fn swap_rows(m: &mut IntMatrix, a: usize, b: usize) {
    m.entries.swap(a, b);
}

fn swap_cols(m: &mut IntMatrix, a: usize, b: usize) {
    for r in m.entries.iter_mut() {
        r.swap(a, b);
    }
}

/// row[dst] += f * row[src]
fn add_row(m: &mut IntMatrix, dst: usize, src: usize, f: &Int) {
    if f.is_zero() {
        return;
    }
    let s = m.entries[src].clone();
    for (x, y) in m.entries[dst].iter_mut().zip(&s) {
        *x += f * y;
    }
}

fn add_col(m: &mut IntMatrix, dst: usize, src: usize, f: &Int) {
    if f.is_zero() {
        return;
    }
    for r in m.entries.iter_mut() {
        let y = r[src].clone();
        r[dst] += f * y;
    }
}

pub fn smith_normal_form(a: &IntMatrix) -> Snf {
    let (m, n) = (a.rows, a.cols);
    let mut d = a.clone();
    let mut u = IntMatrix::identity(m);
    let mut v = IntMatrix::identity(n);
    for t in 0..m.min(n) {
        // smallest nonzero entry of the trailing block becomes the pivot
        let mut best: Option<(usize, usize)> = None;
        for i in t..m {
            for j in t..n {
                if !d.entries[i][j].is_zero()
                    && best.map_or(true, |(bi, bj)| {
                        d.entries[i][j].abs() < d.entries[bi][bj].abs()
                    })
                {
                    best = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = best else { break };
        swap_rows(&mut d, t, pi);
        swap_rows(&mut u, t, pi);
        swap_cols(&mut d, t, pj);
        swap_cols(&mut v, t, pj);
        loop {
            let mut dirty = false;
            for i in t + 1..m {
                if d.entries[i][t].is_zero() {
                    continue;
                }
                let q = -d.entries[i][t].div_floor(&d.entries[t][t]);
                add_row(&mut d, i, t, &q);
                add_row(&mut u, i, t, &q);
                if !d.entries[i][t].is_zero() {
                    swap_rows(&mut d, t, i);
                    swap_rows(&mut u, t, i);
                    dirty = true;
                }
            }
            for j in t + 1..n {
                if d.entries[t][j].is_zero() {
                    continue;
                }
                let q = -d.entries[t][j].div_floor(&d.entries[t][t]);
                add_col(&mut d, j, t, &q);
                add_col(&mut v, j, t, &q);
                if !d.entries[t][j].is_zero() {
                    swap_cols(&mut d, t, j);
                    swap_cols(&mut v, t, j);
                    dirty = true;
                }
            }
            if dirty {
                continue;
            }
            // divisibility of the trailing block by the pivot
            let p = d.entries[t][t].clone();
            let bad = (t + 1..m).find(|&i| (t + 1..n).any(|j| !(&d.entries[i][j] % &p).is_zero()));
            match bad {
                Some(i) => {
                    let one = Int::one();
                    add_row(&mut d, t, i, &one);
                    add_row(&mut u, t, i, &one);
                }
                None => break,
            }
        }
        if d.entries[t][t].is_negative() {
            for x in d.entries[t].iter_mut() {
                *x = -x.clone();
            }
            for x in u.entries[t].iter_mut() {
                *x = -x.clone();
            }
        }
    }
    Snf { u, d, v }
}

/// An integral solution of `a · x = b`, if any.
pub fn solve_integer(a: &IntMatrix, b: &[Int]) -> Option<Vec<Int>> {
    let s = smith_normal_form(a);
    let ub = s.u.mul_vec(b);
    let mut y = vec![Int::zero(); a.cols];
    for i in 0..a.rows {
        let di = if i < a.cols {
            s.d.entries[i][i].clone()
        } else {
            Int::zero()
        };
        if di.is_zero() {
            if !ub[i].is_zero() {
                return None;
            }
        } else {
            let (q, r) = ub[i].div_rem(&di);
            if !r.is_zero() {
                return None;
            }
            y[i] = q;
        }
    }
    Some(s.v.mul_vec(&y))
}

/// Coefficient vectors `α ∈ [0,1)^k` of all lattice points `Σ α_j g_j` in the
/// half-open parallelepiped spanned by linearly independent generators `g_j`.
/// The lattice is the ambient integer lattice intersected with their span.
pub fn parallelepiped_coefficients(gens: &[Vec<Int>]) -> Vec<Vec<Rat>> {
    let k = gens.len();
    if k == 0 {
        return vec![vec![]];
    }
    let dim = gens[0].len();
    let g = IntMatrix::from_columns(gens, dim);
    let s = smith_normal_form(&g);
    let diag = s.diagonal();
    assert!(
        diag.iter().all(|x| !x.is_zero()),
        "generators must be linearly independent"
    );
    let mut out = Vec::new();
    let mut idx = vec![Int::zero(); k];
    loop {
        // beta_j = idx_j / d_j, alpha = frac(V beta)
        let beta: Vec<Rat> = (0..k)
            .map(|j| Rat::new(idx[j].clone(), diag[j].clone()))
            .collect();
        let alpha: Vec<Rat> = (0..k)
            .map(|i| {
                let x: Rat = (0..k).fold(Rat::zero(), |acc, j| {
                    acc + Rat::from_integer(s.v.entries[i][j].clone()) * &beta[j]
                });
                &x - Rat::from_integer(x.floor().to_integer())
            })
            .collect();
        out.push(alpha);
        let mut j = 0;
        loop {
            if j == k {
                out.sort();
                return out;
            }
            idx[j] += 1;
            if idx[j] < diag[j] {
                break;
            }
            idx[j] = Int::zero();
            j += 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::int_vec;
    use proptest::prelude::*;

    fn check(a: &IntMatrix) -> Snf {
        let s = smith_normal_form(a);
        assert_eq!(s.u.mul(a).mul(&s.v), s.d);
        assert!(s.u.is_unimodular());
        assert!(s.v.is_unimodular());
        assert!(s.d.is_diagonal());
        let diag = s.diagonal();
        for w in diag.windows(2) {
            assert!(!w[0].is_negative());
            if w[0].is_zero() {
                assert!(w[1].is_zero());
            } else {
                assert!((&w[1] % &w[0]).is_zero());
            }
        }
        s
    }

    #[test]
    fn snf_examples() {
        assert_eq!(check(&IntMatrix::identity(2)).d, IntMatrix::identity(2));
        assert_eq!(
            check(&IntMatrix::from_i64(&[&[2, 0], &[0, 2]])).diagonal(),
            int_vec(&[2, 2])
        );
        assert_eq!(
            check(&IntMatrix::from_i64(&[&[2, 1], &[0, 2]])).diagonal(),
            int_vec(&[1, 4])
        );
        assert_eq!(
            check(&IntMatrix::from_i64(&[
                &[2, 4, 4],
                &[-6, 6, 12],
                &[10, -4, -16]
            ]))
            .diagonal(),
            int_vec(&[2, 6, 12])
        );
        assert_eq!(
            check(&IntMatrix::from_i64(&[&[0, 0], &[0, 0], &[0, 3]])).diagonal(),
            int_vec(&[3, 0])
        );
    }

    #[test]
    fn integer_solutions() {
        let a = IntMatrix::from_i64(&[&[2, 0], &[0, 2]]);
        assert!(solve_integer(&a, &int_vec(&[1, 0])).is_none());
        assert_eq!(
            solve_integer(&a, &int_vec(&[2, 4])).unwrap(),
            int_vec(&[1, 2])
        );
        let a = IntMatrix::from_i64(&[&[1, 2]]);
        let x = solve_integer(&a, &int_vec(&[1])).unwrap();
        assert_eq!(a.mul_vec(&x), int_vec(&[1]));
    }

    #[test]
    fn parallelepiped_of_index_four() {
        let pts = parallelepiped_coefficients(&[int_vec(&[2, 0]), int_vec(&[0, 2])]);
        assert_eq!(pts.len(), 4);
        let pts = parallelepiped_coefficients(&[int_vec(&[0, 3])]);
        let third = Rat::new(1.into(), 3.into());
        assert_eq!(
            pts,
            vec![
                vec![Rat::zero()],
                vec![third.clone()],
                vec![third * Rat::from_integer(2.into())]
            ]
        );
    }

    proptest! {
        #[test]
        fn snf_random(entries in proptest::collection::vec(-6i64..6, 12), shape in 0usize..3) {
            let (r, c) = [(3, 4), (4, 3), (2, 6)][shape];
            let rows: Vec<Vec<Int>> = (0..r).map(|i| int_vec(&entries[i * c..(i + 1) * c])).collect();
            let a = IntMatrix::from_rows(rows);
            let s = check(&a);
            // idempotence
            let again = smith_normal_form(&s.d);
            prop_assert_eq!(again.d, s.d);
        }

        #[test]
        fn parallelepiped_count_is_index(entries in proptest::collection::vec(-4i64..5, 4)) {
            let g = vec![int_vec(&entries[0..2]), int_vec(&entries[2..4])];
            let det = crate::lattice::det_int(&[g[0].clone(), g[1].clone()]);
            prop_assume!(!det.is_zero());
            let pts = parallelepiped_coefficients(&g);
            prop_assert_eq!(Int::from(pts.len()), det.abs());
            for a in &pts {
                // the point is integral
                for i in 0..2 {
                    let x = &a[0] * Rat::from_integer(g[0][i].clone()) + &a[1] * Rat::from_integer(g[1][i].clone());
                    prop_assert!(x.is_integer());
                }
            }
        }
    }
}
