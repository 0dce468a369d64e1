//! Exact feasibility of systems of rational linear (in)equalities, by a dense
//! two-phase simplex with Bland's rule. Infeasible systems come back with a
//! Farkas/Motzkin multiplier vector that can be checked independently.

use super::{dot_q, Rat};
use num_traits::{One, Signed, Zero};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Relation {
    Le,
    Ge,
    Eq,
}

/// `coeffs · x  (relation)  rhs`, strict when `strict` is set (ignored for `Eq`).
#[derive(Debug, Clone, PartialEq)]
pub struct Constraint {
    pub coeffs: Vec<Rat>,
    pub relation: Relation,
    pub rhs: Rat,
    pub strict: bool,
}

impl Constraint {
    pub fn new(coeffs: Vec<Rat>, relation: Relation, rhs: Rat) -> Self {
        Constraint {
            coeffs,
            relation,
            rhs,
            strict: false,
        }
    }

    pub fn strict(coeffs: Vec<Rat>, relation: Relation, rhs: Rat) -> Self {
        Constraint {
            coeffs,
            relation,
            rhs,
            strict: true,
        }
    }

    pub fn holds(&self, x: &[Rat]) -> bool {
        let v = dot_q(&self.coeffs, x);
        match (self.relation, self.strict) {
            (Relation::Eq, _) => v == self.rhs,
            (Relation::Ge, false) => v >= self.rhs,
            (Relation::Ge, true) => v > self.rhs,
            (Relation::Le, false) => v <= self.rhs,
            (Relation::Le, true) => v < self.rhs,
        }
    }

    /// The constraint rewritten as `a · x ≥ b` (equalities keep their sign).
    fn as_ge(&self) -> (Vec<Rat>, Rat) {
        match self.relation {
            Relation::Le => (self.coeffs.iter().map(|c| -c).collect(), -self.rhs.clone()),
            _ => (self.coeffs.clone(), self.rhs.clone()),
        }
    }
}

/// Multipliers `y`, one per constraint in `≥` orientation. Valid when `y ≥ 0` on
/// inequalities, `Σ y_i a_i = 0`, and either `Σ y_i b_i > 0` or `Σ y_i b_i = 0`
/// with positive weight on some strict inequality.
#[derive(Debug, Clone, PartialEq)]
pub struct FarkasWitness {
    pub multipliers: Vec<Rat>,
}

impl FarkasWitness {
    pub fn verify(&self, constraints: &[Constraint], nvars: usize) -> bool {
        if self.multipliers.len() != constraints.len() {
            return false;
        }
        let mut combo = vec![Rat::zero(); nvars];
        let mut rhs = Rat::zero();
        let mut strict_weight = false;
        for (y, c) in self.multipliers.iter().zip(constraints) {
            if c.relation != Relation::Eq && y.is_negative() {
                return false;
            }
            let (a, b) = c.as_ge();
            for (s, ai) in combo.iter_mut().zip(&a) {
                *s += y * ai;
            }
            rhs += y * &b;
            if c.strict && c.relation != Relation::Eq && y.is_positive() {
                strict_weight = true;
            }
        }
        combo.iter().all(|x| x.is_zero()) && (rhs.is_positive() || (rhs.is_zero() && strict_weight))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum LpOutcome {
    Feasible(Vec<Rat>),
    Infeasible(FarkasWitness),
}

impl LpOutcome {
    pub fn is_feasible(&self) -> bool {
        matches!(self, LpOutcome::Feasible(_))
    }

    pub fn point(&self) -> Option<&[Rat]> {
        match self {
            LpOutcome::Feasible(x) => Some(x),
            LpOutcome::Infeasible(_) => None,
        }
    }
}

enum Simplex {
    Infeasible,
    Unbounded,
    Optimal(Vec<Rat>, Rat),
}

/// maximise c·y subject to A y = b, y ≥ 0.
fn simplex(a: &[Vec<Rat>], b: &[Rat], c: &[Rat]) -> Simplex {
    let m = a.len();
    let n = c.len();
    // tableau columns: n structural, m artificial, rhs
    let width = n + m + 1;
    let mut t: Vec<Vec<Rat>> = Vec::with_capacity(m);
    for i in 0..m {
        let neg = b[i].is_negative();
        let mut row = vec![Rat::zero(); width];
        for j in 0..n {
            row[j] = if neg {
                -a[i][j].clone()
            } else {
                a[i][j].clone()
            };
        }
        row[n + i] = Rat::one();
        row[n + m] = if neg { -b[i].clone() } else { b[i].clone() };
        t.push(row);
    }
    let mut basis: Vec<usize> = (n..n + m).collect();

    let mut phase1 = vec![Rat::zero(); n + m];
    for j in n..n + m {
        phase1[j] = -Rat::one();
    }
    if !run(&mut t, &mut basis, &phase1, n + m) {
        return Simplex::Unbounded;
    }
    let art_sum: Rat = basis
        .iter()
        .enumerate()
        .filter(|(_, &bj)| bj >= n)
        .map(|(i, _)| t[i][n + m].clone())
        .sum();
    if art_sum.is_positive() {
        return Simplex::Infeasible;
    }
    // drive remaining artificials out of the basis
    let mut i = 0;
    while i < t.len() {
        if basis[i] >= n {
            if let Some(j) = (0..n).find(|&j| !t[i][j].is_zero()) {
                pivot(&mut t, &mut basis, i, j);
            } else {
                t.remove(i);
                basis.remove(i);
                continue;
            }
        }
        i += 1;
    }
    let mut cost = c.to_vec();
    cost.extend(std::iter::repeat(Rat::zero()).take(m));
    if !run(&mut t, &mut basis, &cost, n) {
        return Simplex::Unbounded;
    }
    let mut y = vec![Rat::zero(); n];
    for (i, &bj) in basis.iter().enumerate() {
        if bj < n {
            y[bj] = t[i][n + m].clone();
        }
    }
    let val = dot_q(c, &y);
    Simplex::Optimal(y, val)
}

fn pivot(t: &mut [Vec<Rat>], basis: &mut [usize], r: usize, c: usize) {
    let inv = t[r][c].recip();
    for x in t[r].iter_mut() {
        *x = &*x * &inv;
    }
    let prow = t[r].clone();
    for (i, row) in t.iter_mut().enumerate() {
        if i == r || row[c].is_zero() {
            continue;
        }
        let f = row[c].clone();
        for (x, p) in row.iter_mut().zip(&prow) {
            if !p.is_zero() {
                *x -= &f * p;
            }
        }
    }
    basis[r] = c;
}

/// Bland's-rule primal simplex maximising `cost` with entering columns
/// restricted to `< ncols`. Returns false when unbounded.
fn run(t: &mut [Vec<Rat>], basis: &mut [usize], cost: &[Rat], ncols: usize) -> bool {
    let rhs = t.first().map(|r| r.len() - 1).unwrap_or(0);
    loop {
        // reduced cost of column j: c_j - c_B . column_j
        let entering = (0..ncols).find(|&j| {
            if basis.contains(&j) {
                return false;
            }
            let mut rc = cost[j].clone();
            for (i, &bj) in basis.iter().enumerate() {
                if !t[i][j].is_zero() && !cost[bj].is_zero() {
                    rc -= &cost[bj] * &t[i][j];
                }
            }
            rc.is_positive()
        });
        let Some(j) = entering else { return true };
        let mut leave: Option<(usize, Rat)> = None;
        for i in 0..t.len() {
            if t[i][j].is_positive() {
                let ratio = &t[i][rhs] / &t[i][j];
                let better = match &leave {
                    None => true,
                    Some((li, lr)) => ratio < *lr || (ratio == *lr && basis[i] < basis[*li]),
                };
                if better {
                    leave = Some((i, ratio));
                }
            }
        }
        let Some((r, _)) = leave else { return false };
        pivot(t, basis, r, j);
    }
}

/// Decide feasibility of a finite system over `nvars` free rational variables.
pub fn lp_feasible(nvars: usize, constraints: &[Constraint]) -> LpOutcome {
    for c in constraints {
        assert_eq!(c.coeffs.len(), nvars, "constraint width mismatch");
    }
    let has_strict = constraints
        .iter()
        .any(|c| c.strict && c.relation != Relation::Eq);
    // variables: p (n), q (n), one slack per inequality, then t, u when strict
    let n_ineq = constraints
        .iter()
        .filter(|c| c.relation != Relation::Eq)
        .count();
    let tcol = 2 * nvars + n_ineq;
    let ncols = tcol + if has_strict { 2 } else { 0 };
    let mut a = Vec::new();
    let mut b = Vec::new();
    let mut slack = 2 * nvars;
    for c in constraints {
        let (coef, rhs) = c.as_ge();
        let mut row = vec![Rat::zero(); ncols];
        for j in 0..nvars {
            row[j] = coef[j].clone();
            row[nvars + j] = -coef[j].clone();
        }
        if c.relation != Relation::Eq {
            row[slack] = -Rat::one();
            slack += 1;
            if c.strict {
                row[tcol] = -Rat::one();
            }
        }
        a.push(row);
        b.push(rhs);
    }
    let mut obj = vec![Rat::zero(); ncols];
    if has_strict {
        let mut row = vec![Rat::zero(); ncols];
        row[tcol] = Rat::one();
        row[tcol + 1] = Rat::one();
        a.push(row);
        b.push(Rat::one());
        obj[tcol] = Rat::one();
    } else {
        // minimal l1-norm point: deterministic and small
        for o in obj.iter_mut().take(2 * nvars) {
            *o = -Rat::one();
        }
    }
    match simplex(&a, &b, &obj) {
        Simplex::Optimal(y, val) if !has_strict || val.is_positive() => {
            let x: Vec<Rat> = (0..nvars).map(|j| &y[j] - &y[nvars + j]).collect();
            assert!(
                constraints.iter().all(|c| c.holds(&x)),
                "simplex returned an infeasible point"
            );
            LpOutcome::Feasible(x)
        }
        Simplex::Unbounded => unreachable!("bounded auxiliary program reported unbounded"),
        _ => {
            let w = farkas(nvars, constraints);
            assert!(
                w.verify(constraints, nvars),
                "Farkas witness failed verification"
            );
            LpOutcome::Infeasible(w)
        }
    }
}

fn farkas(nvars: usize, constraints: &[Constraint]) -> FarkasWitness {
    // variables: y_i >= 0 for inequalities, y+ and y- for equalities
    let mut cols: Vec<(usize, Rat)> = Vec::new();
    for (i, c) in constraints.iter().enumerate() {
        cols.push((i, Rat::one()));
        if c.relation == Relation::Eq {
            cols.push((i, -Rat::one()));
        }
    }
    let nv = cols.len();
    let ge: Vec<(Vec<Rat>, Rat)> = constraints.iter().map(|c| c.as_ge()).collect();
    let mut a: Vec<Vec<Rat>> = (0..nvars)
        .map(|j| cols.iter().map(|(i, s)| s * &ge[*i].0[j]).collect())
        .collect();
    let mut b = vec![Rat::zero(); nvars];
    a.push(vec![Rat::one(); nv]);
    b.push(Rat::one());
    let rhs_obj: Vec<Rat> = cols.iter().map(|(i, s)| s * &ge[*i].1).collect();
    let collect = |y: &[Rat]| {
        let mut mult = vec![Rat::zero(); constraints.len()];
        for ((i, s), v) in cols.iter().zip(y) {
            mult[*i] += s * v;
        }
        FarkasWitness { multipliers: mult }
    };
    if let Simplex::Optimal(y, val) = simplex(&a, &b, &rhs_obj) {
        if val.is_positive() {
            return collect(&y);
        }
    }
    a.push(rhs_obj);
    b.push(Rat::zero());
    let strict_obj: Vec<Rat> = cols
        .iter()
        .map(|(i, _)| {
            let c = &constraints[*i];
            if c.strict && c.relation != Relation::Eq {
                Rat::one()
            } else {
                Rat::zero()
            }
        })
        .collect();
    match simplex(&a, &b, &strict_obj) {
        Simplex::Optimal(y, _) => collect(&y),
        _ => unreachable!("alternative system must be solvable for an infeasible input"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::rat;
    use proptest::prelude::*;

    fn c1(a: i64, rel: Relation, b: i64) -> Constraint {
        Constraint::new(vec![rat(a)], rel, rat(b))
    }

    #[test]
    fn unit_interval_is_feasible() {
        let cs = vec![c1(1, Relation::Ge, 0), c1(1, Relation::Le, 1)];
        let out = lp_feasible(1, &cs);
        let x = out.point().unwrap();
        assert!(cs.iter().all(|c| c.holds(x)));
        assert_eq!(x[0], rat(0));
    }

    #[test]
    fn empty_interval_is_infeasible() {
        let cs = vec![c1(1, Relation::Ge, 1), c1(1, Relation::Le, 0)];
        match lp_feasible(1, &cs) {
            LpOutcome::Infeasible(w) => assert!(w.verify(&cs, 1)),
            _ => panic!("expected infeasible"),
        }
    }

    #[test]
    fn strict_inequalities() {
        // x > 0, x < 0 is infeasible even though x = 0 satisfies the closure
        let cs = vec![
            Constraint::strict(vec![rat(1)], Relation::Ge, rat(0)),
            Constraint::strict(vec![rat(1)], Relation::Le, rat(0)),
        ];
        assert!(!lp_feasible(1, &cs).is_feasible());
        let cs = vec![
            Constraint::strict(vec![rat(1)], Relation::Ge, rat(0)),
            c1(1, Relation::Le, 1),
        ];
        let x = lp_feasible(1, &cs).point().unwrap().to_vec();
        assert!(x[0] > rat(0));
    }

    #[test]
    fn square_triangulation_heights() {
        // unit square split along the diagonal (0,0)-(1,1): heights h00,h10,h01,h11.
        // Folding condition: the point (1,0) lies strictly above the plane through
        // the other triangle and vice versa; gauge fix h00 = h10 = h01 = 0.
        let h = |v: [i64; 4]| v.iter().map(|&x| rat(x)).collect::<Vec<_>>();
        let cs = vec![
            Constraint::new(h([1, 0, 0, 0]), Relation::Eq, rat(0)),
            Constraint::new(h([0, 1, 0, 0]), Relation::Eq, rat(0)),
            Constraint::new(h([0, 0, 1, 0]), Relation::Eq, rat(0)),
            // h10 + h01 > h00 + h11 makes (0,0)-(1,1) the lower diagonal
            Constraint::strict(h([-1, 1, 1, -1]), Relation::Ge, rat(0)),
        ];
        let x = lp_feasible(4, &cs).point().unwrap().to_vec();
        assert!(x[3] < rat(0));
    }

    #[test]
    fn equalities_and_free_variables() {
        let cs = vec![
            Constraint::new(vec![rat(1), rat(1)], Relation::Eq, rat(-3)),
            Constraint::new(vec![rat(1), rat(-1)], Relation::Ge, rat(5)),
        ];
        let x = lp_feasible(2, &cs).point().unwrap().to_vec();
        assert!(cs.iter().all(|c| c.holds(&x)));
    }

    proptest! {
        #[test]
        fn never_both(rows in proptest::collection::vec((proptest::collection::vec(-4i64..5, 3), -6i64..6, any::<bool>(), any::<bool>()), 1..7)) {
            let cs: Vec<Constraint> = rows.iter().map(|(a, b, le, strict)| Constraint {
                coeffs: a.iter().map(|&x| rat(x)).collect(),
                relation: if *le { Relation::Le } else { Relation::Ge },
                rhs: rat(*b),
                strict: *strict,
            }).collect();
            match lp_feasible(3, &cs) {
                LpOutcome::Feasible(x) => prop_assert!(cs.iter().all(|c| c.holds(&x))),
                LpOutcome::Infeasible(w) => prop_assert!(w.verify(&cs, 3)),
            }
        }
    }
}
