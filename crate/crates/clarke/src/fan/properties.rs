//! Property checks for stacky fans. Each verdict carries a certificate that
//! can be re-checked without repeating the search.

use super::StackyFan;
use crate::lattice::{
    dot_q, lp_feasible, nullspace_q, rat_vec, smith_normal_form, solve_integer, solve_q,
    Constraint, FarkasWitness, Int, IntMatrix, LpOutcome, Rat, Relation,
};
use num_traits::{One, Signed, Zero};

#[derive(Debug, Clone, PartialEq)]
pub enum Certificate {
    /// Rank of the ray matrix of each maximal cone.
    Ranks(Vec<usize>),
    /// Lattice index of the span of each maximal cone's rays.
    Indices(Vec<Int>),
    /// m_c per maximal cone with ⟨β_ρ ρ, m_c⟩ = 1 on its rays.
    Witnesses(Vec<Vec<Int>>),
    /// One linear function per maximal cone.
    LinearPieces(Vec<Vec<Rat>>),
    /// Each wall is shared by exactly two maximal cones.
    Walls(usize),
    Violation {
        cone: Vec<usize>,
        detail: String,
    },
    Farkas(FarkasWitness),
}

#[derive(Debug, Clone, PartialEq)]
pub struct Property {
    pub holds: bool,
    pub certificate: Certificate,
}

impl Property {
    fn yes(c: Certificate) -> Property {
        Property {
            holds: true,
            certificate: c,
        }
    }
    fn no(cone: &[usize], detail: impl Into<String>) -> Property {
        Property {
            holds: false,
            certificate: Certificate::Violation {
                cone: cone.to_vec(),
                detail: detail.into(),
            },
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct PropertyRecord {
    pub simplicial: Property,
    pub unimodular: Property,
    pub gorenstein: Property,
    pub quasiprojective: Property,
    pub convex: Property,
    pub complete: Property,
}

fn ext_rows(f: &StackyFan, cone: &[usize]) -> Vec<Vec<Rat>> {
    cone.iter().map(|&i| rat_vec(&f.extended_ray(i))).collect()
}

fn lattice_index(rows: &[Vec<Int>]) -> Int {
    let snf = smith_normal_form(&IntMatrix::from_rows(rows.to_vec()));
    snf.diagonal().iter().fold(Int::one(), |a, d| a * d)
}

pub fn check_properties(f: &StackyFan) -> PropertyRecord {
    PropertyRecord {
        simplicial: simplicial(f),
        unimodular: unimodular(f),
        gorenstein: gorenstein(f),
        quasiprojective: quasiprojective(f),
        convex: convex(f),
        complete: complete(f),
    }
}

fn simplicial(f: &StackyFan) -> Property {
    let fan = f.fan();
    let ranks: Vec<usize> = fan
        .maximal_cones()
        .iter()
        .map(|c| fan.cone_dim(c))
        .collect();
    for (c, r) in fan.maximal_cones().iter().zip(&ranks) {
        if *r != c.len() {
            return Property::no(c, format!("{} rays span rank {r}", c.len()));
        }
    }
    Property::yes(Certificate::Ranks(ranks))
}

/// Rays of each maximal cone extend to a lattice basis (coarse space smooth).
fn unimodular(f: &StackyFan) -> Property {
    let fan = f.fan();
    let mut idx = Vec::new();
    for c in fan.maximal_cones() {
        let rows: Vec<Vec<Int>> = c.iter().map(|&i| fan.rays()[i].clone()).collect();
        let ix = lattice_index(&rows);
        if !ix.is_one() {
            return Property::no(c, format!("index {ix}"));
        }
        idx.push(ix);
    }
    Property::yes(Certificate::Indices(idx))
}

fn gorenstein(f: &StackyFan) -> Property {
    let fan = f.fan();
    let mut wit = Vec::new();
    for c in fan.maximal_cones() {
        let rows: Vec<Vec<Int>> = c.iter().map(|&i| f.extended_ray(i)).collect();
        let a = IntMatrix::from_rows(rows);
        match solve_integer(&a, &vec![Int::one(); c.len()]) {
            Some(m) => wit.push(m),
            None => return Property::no(c, "no integral m_c"),
        }
    }
    Property::yes(Certificate::Witnesses(wit))
}

fn complete(f: &StackyFan) -> Property {
    let fan = f.fan();
    if fan.maximal_cones().is_empty() {
        return Property::no(&[], "no cones");
    }
    if let Some(c) = fan
        .maximal_cones()
        .iter()
        .find(|c| fan.cone_dim(c) != fan.rank())
    {
        return Property::no(c, "maximal cone is not full-dimensional");
    }
    let walls = fan.walls();
    for (w, ms) in &walls {
        if ms.len() != 2 {
            return Property::no(w, "boundary wall");
        }
    }
    Property::yes(Certificate::Walls(walls.len()))
}

/// Interior walls as (wall, σ, σ') with maximal-cone indices.
fn interior_walls(f: &StackyFan) -> Vec<(Vec<usize>, usize, usize)> {
    f.fan()
        .walls()
        .into_iter()
        .filter(|(_, ms)| ms.len() == 2)
        .map(|(w, ms)| (w, ms[0], ms[1]))
        .collect()
}

fn rays_outside(cone: &[usize], wall: &[usize]) -> Vec<usize> {
    cone.iter().copied().filter(|r| !wall.contains(r)).collect()
}

/// Strictly convex piecewise-linear function: m_σ per maximal cone, agreeing
/// on walls and with ⟨m_σ' − m_σ, ρ'⟩ ≥ 1 on rays across each wall.
fn quasiprojective(f: &StackyFan) -> Property {
    let fan = f.fan();
    let n = fan.rank();
    if let Some(c) = fan.maximal_cones().iter().find(|c| fan.cone_dim(c) != n) {
        return Property::no(c, "maximal cone is not full-dimensional");
    }
    let nm = fan.maximal_cones().len();
    let nvars = nm * n;
    let var = |s: usize, j: usize| s * n + j;
    let mut cons = Vec::new();
    for (w, a, b) in interior_walls(f) {
        for &r in &w {
            let rho = rat_vec(&fan.rays()[r]);
            let mut co = vec![Rat::zero(); nvars];
            for j in 0..n {
                co[var(a, j)] += &rho[j];
                co[var(b, j)] -= &rho[j];
            }
            cons.push(Constraint::new(co, Relation::Eq, Rat::zero()));
        }
        for (s, t) in [(a, b), (b, a)] {
            for r in rays_outside(&fan.maximal_cones()[t], &w) {
                let rho = rat_vec(&fan.rays()[r]);
                let mut co = vec![Rat::zero(); nvars];
                for j in 0..n {
                    co[var(t, j)] += &rho[j];
                    co[var(s, j)] -= &rho[j];
                }
                cons.push(Constraint::new(co, Relation::Ge, Rat::one()));
            }
        }
    }
    match lp_feasible(nvars, &cons) {
        LpOutcome::Feasible(x) => Property::yes(Certificate::LinearPieces(
            x.chunks(n).map(|c| c.to_vec()).collect(),
        )),
        LpOutcome::Infeasible(w) => Property {
            holds: false,
            certificate: Certificate::Farkas(w),
        },
    }
}

/// The function equal to 1 on every extended ray and linear on cones is
/// convex on a convex support.
fn convex(f: &StackyFan) -> Property {
    let fan = f.fan();
    let n = fan.rank();
    let mut pieces = Vec::new();
    for c in fan.maximal_cones() {
        if fan.cone_dim(c) != n {
            return Property::no(c, "maximal cone is not full-dimensional");
        }
        match solve_q(&ext_rows(f, c), &vec![Rat::one(); c.len()]) {
            Some(l) => pieces.push(l),
            None => return Property::no(c, "extended rays not on a common hyperplane"),
        }
    }
    let all: Vec<Vec<Rat>> = fan.rays().iter().map(|r| rat_vec(r)).collect();
    for (w, ms) in fan.walls() {
        if ms.len() != 1 {
            continue;
        }
        let rows: Vec<Vec<Rat>> = w.iter().map(|&i| all[i].clone()).collect();
        let u = nullspace_q(&rows, n).remove(0);
        let other = rays_outside(&fan.maximal_cones()[ms[0]], &w)[0];
        let sign = if dot_q(&u, &all[other]).is_negative() {
            -Rat::one()
        } else {
            Rat::one()
        };
        if all.iter().any(|r| (dot_q(&u, r) * &sign).is_negative()) {
            return Property::no(&w, "support is not convex across this boundary wall");
        }
    }
    for (w, a, b) in interior_walls(f) {
        for (s, t) in [(a, b), (b, a)] {
            for r in rays_outside(&fan.maximal_cones()[t], &w) {
                let v = dot_q(&pieces[s], &rat_vec(&f.extended_ray(r)));
                if v > Rat::one() {
                    return Property::no(
                        &w,
                        format!("piece of cone {s} is {v} on extended ray {r}"),
                    );
                }
            }
        }
    }
    Property::yes(Certificate::LinearPieces(pieces))
}

impl PropertyRecord {
    /// Re-check every positive certificate against the fan.
    pub fn verify(&self, f: &StackyFan) -> bool {
        let fan = f.fan();
        let max = fan.maximal_cones();
        let check =
            |p: &Property, ok: &dyn Fn(&Certificate) -> bool| !p.holds || ok(&p.certificate);
        let simplicial = check(&self.simplicial, &|c| match c {
            Certificate::Ranks(r) => {
                r.len() == max.len()
                    && max
                        .iter()
                        .zip(r)
                        .all(|(m, &k)| fan.cone_dim(m) == k && k == m.len())
            }
            _ => false,
        });
        let unimodular = check(&self.unimodular, &|c| match c {
            Certificate::Indices(ix) => max.iter().zip(ix).all(|(m, i)| {
                i.is_one()
                    && lattice_index(&m.iter().map(|&r| fan.rays()[r].clone()).collect::<Vec<_>>())
                        .is_one()
            }),
            _ => false,
        });
        let gorenstein = check(&self.gorenstein, &|c| match c {
            Certificate::Witnesses(ws) => {
                ws.len() == max.len()
                    && max.iter().zip(ws).all(|(m, w)| {
                        m.iter().all(|&r| {
                            f.extended_ray(r)
                                .iter()
                                .zip(w)
                                .map(|(a, b)| a * b)
                                .sum::<Int>()
                                .is_one()
                        })
                    })
            }
            _ => false,
        });
        let quasiprojective = check(&self.quasiprojective, &|c| match c {
            Certificate::LinearPieces(ps) => interior_walls(f).iter().all(|(w, a, b)| {
                w.iter().all(|&r| {
                    let rho = rat_vec(&fan.rays()[r]);
                    dot_q(&ps[*a], &rho) == dot_q(&ps[*b], &rho)
                }) && [(*a, *b), (*b, *a)].iter().all(|&(s, t)| {
                    rays_outside(&max[t], w).iter().all(|&r| {
                        let rho = rat_vec(&fan.rays()[r]);
                        dot_q(&ps[t], &rho) - dot_q(&ps[s], &rho) >= Rat::one()
                    })
                })
            }),
            _ => false,
        });
        let convex = check(&self.convex, &|c| match c {
            Certificate::LinearPieces(ps) => {
                max.iter().zip(ps).all(|(m, l)| {
                    m.iter()
                        .all(|&r| dot_q(l, &rat_vec(&f.extended_ray(r))).is_one())
                }) && interior_walls(f).iter().all(|(w, a, b)| {
                    [(*a, *b), (*b, *a)].iter().all(|&(s, t)| {
                        rays_outside(&max[t], w)
                            .iter()
                            .all(|&r| dot_q(&ps[s], &rat_vec(&f.extended_ray(r))) <= Rat::one())
                    })
                })
            }
            _ => false,
        });
        let complete = check(&self.complete, &|c| match c {
            Certificate::Walls(_) => fan.walls().iter().all(|(_, ms)| ms.len() == 2),
            _ => false,
        });
        simplicial && unimodular && gorenstein && quasiprojective && convex && complete
    }
}
