//! Nef partitions and their duals, Clarke dual pairs, and the cover and
//! Landau–Ginzburg data attached to a nef partition.

use crate::error::{Error, Result};
use crate::fan::{
    cayley_fan, check_properties, refined_spanning_fan, sigma_family, spanning_fan, Fan,
    PropertyRecord, StackyFan,
};
use crate::lattice::{dot_int, dot_q, rat_vec, solve_q, Int, LatticeTag, Rat};
use crate::polytope::{from_inequalities, is_reflexive, minkowski_sum, Polytope};
use num_traits::{One, Zero};

/// A nef partition of the vertices of a reflexive polytope, with one linear
/// function per maximal cone of the spanning fan and part.
#[derive(Debug, Clone, PartialEq)]
pub struct NefPartition {
    delta: Polytope,
    parts: Vec<Vec<usize>>,
    psi: Vec<Vec<Vec<Rat>>>,
    pieces: Vec<Polytope>,
}

impl NefPartition {
    pub fn delta(&self) -> &Polytope {
        &self.delta
    }
    /// Vertex-index sets S_i.
    pub fn parts(&self) -> &[Vec<usize>] {
        &self.parts
    }
    pub fn k(&self) -> usize {
        self.parts.len()
    }
    /// ψ_i on each maximal cone of the spanning fan (fan order).
    pub fn psi(&self) -> &[Vec<Vec<Rat>>] {
        &self.psi
    }
    /// Δ_i = Conv(0, S_i).
    pub fn pieces(&self) -> &[Polytope] {
        &self.pieces
    }

    /// ψ_i at a point of the support.
    pub fn psi_at(&self, i: usize, x: &[Rat]) -> Rat {
        let fan = spanning_fan(&self.delta).expect("validated");
        let c = fan.find_cone(x).expect("complete fan");
        dot_q(&self.psi[i][c], x)
    }

    /// Index of the part whose piece contains a nonzero lattice point of ∂Δ.
    pub fn part_of(&self, x: &[Int]) -> Option<usize> {
        let q = rat_vec(x);
        (0..self.k()).find(|&i| self.psi_at(i, &q).is_one())
    }

    /// The dual nef partition as a nef partition of Δ̌.
    pub fn dual(&self) -> Result<NefPartition> {
        let d = dual_nef_partition(self)?;
        let parts: Vec<Vec<usize>> = (0..self.k())
            .map(|i| {
                (0..d.dual.vertices().len())
                    .filter(|&v| d.parts[i].vertices().contains(&d.dual.vertices()[v]))
                    .collect()
            })
            .collect();
        validate_nef_partition(&d.dual, &parts)
    }
}

pub fn validate_nef_partition(delta: &Polytope, parts: &[Vec<usize>]) -> Result<NefPartition> {
    if !is_reflexive(delta)? {
        return Err(Error::Invalid(
            "nef partitions need a reflexive polytope".into(),
        ));
    }
    let nv = delta.vertices().len();
    let mut seen = vec![0usize; nv];
    for p in parts {
        if p.is_empty() {
            return Err(Error::Invalid("empty part".into()));
        }
        for &v in p {
            if v >= nv {
                return Err(Error::Invalid(format!("vertex index {v} out of range")));
            }
            seen[v] += 1;
        }
    }
    if seen.iter().any(|&c| c != 1) {
        return Err(Error::Invalid("parts do not partition the vertices".into()));
    }
    let fan = spanning_fan(delta)?;
    // spanning-fan rays are in vertex order
    let mut psi = Vec::new();
    for (i, part) in parts.iter().enumerate() {
        let mut per_cone = Vec::new();
        for c in fan.maximal_cones() {
            let rows: Vec<Vec<Rat>> = c.iter().map(|&v| delta.vertices()[v].clone()).collect();
            let rhs: Vec<Rat> = c
                .iter()
                .map(|v| {
                    if part.contains(v) {
                        Rat::one()
                    } else {
                        Rat::zero()
                    }
                })
                .collect();
            match solve_q(&rows, &rhs) {
                Some(l) => per_cone.push(l),
                None => {
                    return Err(Error::NotNef(format!(
                        "part {i} is not linear on cone {c:?}"
                    )))
                }
            }
        }
        for (w, ms) in fan.walls() {
            if ms.len() != 2 {
                continue;
            }
            for (s, t) in [(ms[0], ms[1]), (ms[1], ms[0])] {
                for &v in fan.maximal_cones()[t].iter().filter(|v| !w.contains(v)) {
                    let val = if part.contains(&v) {
                        Rat::one()
                    } else {
                        Rat::zero()
                    };
                    if dot_q(&per_cone[s], &delta.vertices()[v]) > val {
                        return Err(Error::NotNef(format!(
                            "part {i} fails convexity across the wall {w:?} between cones {:?} and {:?}",
                            fan.maximal_cones()[s],
                            fan.maximal_cones()[t]
                        )));
                    }
                }
            }
        }
        for x in delta.lattice_points() {
            let q = rat_vec(&x);
            let c = fan.find_cone(&q).expect("complete fan");
            if !dot_q(&per_cone[c], &q).is_integer() {
                return Err(Error::NotNef(format!("part {i} is not integral at {x:?}")));
            }
        }
        psi.push(per_cone);
    }
    let rank = delta.rank();
    let pieces = parts
        .iter()
        .map(|p| {
            let mut pts: Vec<Vec<Rat>> = p.iter().map(|&v| delta.vertices()[v].clone()).collect();
            pts.push(vec![Rat::zero(); rank]);
            Polytope::convex_hull(delta.tag(), &pts)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(NefPartition {
        delta: delta.clone(),
        parts: parts.to_vec(),
        psi,
        pieces,
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct DualNef {
    /// Δ̌_i.
    pub parts: Vec<Polytope>,
    /// Δ̌ = Conv(∪ Δ̌_i).
    pub dual: Polytope,
}

pub fn dual_nef_partition(np: &NefPartition) -> Result<DualNef> {
    let rank = np.delta.rank();
    let tag = np.delta.tag().dual();
    let mut parts = Vec::new();
    for i in 0..np.k() {
        let mut rows = Vec::new();
        for (j, piece) in np.pieces.iter().enumerate() {
            let c = if i == j { -Rat::one() } else { Rat::zero() };
            for v in piece.vertices() {
                if v.iter().all(|x| x.is_zero()) {
                    continue;
                }
                rows.push((v.clone(), c.clone()));
            }
        }
        parts.push(from_inequalities(tag, rank, &rows)?);
    }
    let all: Vec<Vec<Rat>> = parts.iter().flat_map(|p| p.vertices().to_vec()).collect();
    let dual = Polytope::convex_hull(tag, &all)?;
    let mut sum = parts[0].clone();
    for p in &parts[1..] {
        sum = minkowski_sum(&sum, p)?;
    }
    let polar = crate::polytope::polar_dual(&np.delta)?;
    if !sum.same_set(&polar) {
        return Err(Error::Consistency(
            "Minkowski sum of dual pieces differs from the polar".into(),
        ));
    }
    let mut sum = np.pieces[0].clone();
    for p in &np.pieces[1..] {
        sum = minkowski_sum(&sum, p)?;
    }
    if !sum.same_set(&crate::polytope::polar_dual(&dual)?) {
        return Err(Error::Consistency(
            "Minkowski sum of pieces differs from the polar of the dual".into(),
        ));
    }
    Ok(DualNef { parts, dual })
}

/// What breaks a Clarke pair.
#[derive(Debug, Clone, PartialEq)]
pub enum ClarkeViolation {
    /// Extended rays with negative pairing (index in σ, index in σ̌, value).
    Pairing {
        ray: usize,
        dual_ray: usize,
        value: Int,
    },
    /// Named property failing on one side; `dual_side` is true for σ̌.
    Property {
        dual_side: bool,
        property: &'static str,
        detail: String,
    },
}

#[derive(Debug, Clone, PartialEq)]
pub struct ClarkePair {
    pub sigma: StackyFan,
    pub sigma_check: StackyFan,
    pub sigma_properties: PropertyRecord,
    pub check_properties: PropertyRecord,
    /// Smallest pairing among extended rays (regularity witness).
    pub min_pairing: Int,
}

#[derive(Debug, Clone, PartialEq)]
pub enum ClarkeCheck {
    Valid(Box<ClarkePair>),
    Invalid(ClarkeViolation),
}

impl ClarkeCheck {
    pub fn is_valid(&self) -> bool {
        matches!(self, ClarkeCheck::Valid(_))
    }
}

/// Regularity is checked on extended-ray pairs only; by bilinearity this
/// covers the convex supports.
pub fn validate_clarke(sigma: &StackyFan, sigma_check: &StackyFan) -> Result<ClarkeCheck> {
    let (a, b) = (sigma.fan().rank(), sigma_check.fan().rank());
    if a != b {
        return Err(Error::RankMismatch(a, b));
    }
    let pa = check_properties(sigma);
    let pb = check_properties(sigma_check);
    for (dual_side, p) in [(false, &pa), (true, &pb)] {
        for (name, prop) in [
            ("simplicial", &p.simplicial),
            ("quasiprojective", &p.quasiprojective),
            ("convexity", &p.convex),
        ] {
            if !prop.holds {
                return Ok(ClarkeCheck::Invalid(ClarkeViolation::Property {
                    dual_side,
                    property: name,
                    detail: format!("{:?}", prop.certificate),
                }));
            }
        }
    }
    let ra = sigma.extended_rays();
    let rb = sigma_check.extended_rays();
    let mut min: Option<Int> = None;
    for (i, x) in ra.iter().enumerate() {
        for (j, y) in rb.iter().enumerate() {
            let v = dot_int(x, y);
            if v < Int::zero() {
                return Ok(ClarkeCheck::Invalid(ClarkeViolation::Pairing {
                    ray: i,
                    dual_ray: j,
                    value: v,
                }));
            }
            if min.as_ref().map_or(true, |m| v < *m) {
                min = Some(v);
            }
        }
    }
    Ok(ClarkeCheck::Valid(Box::new(ClarkePair {
        sigma: sigma.clone(),
        sigma_check: sigma_check.clone(),
        sigma_properties: pa,
        check_properties: pb,
        min_pairing: min.unwrap_or_else(Int::zero),
    })))
}

#[derive(Debug, Clone, PartialEq)]
pub struct TransitionPair {
    /// Fan of Tot(K) over the refined spanning fan of Δ_I.
    pub sigma_i: StackyFan,
    /// Same for Δ_II, in the dual lattice.
    pub sigma_ii: StackyFan,
    pub clarke: ClarkeCheck,
}

/// Anticanonical total-space fans for reflexive Δ_II ⊆ Δ̌_I.
pub fn extremal_transition_pair(
    delta_ii: &Polytope,
    delta_i_check: &Polytope,
) -> Result<TransitionPair> {
    if !is_reflexive(delta_ii)? || !is_reflexive(delta_i_check)? {
        return Err(Error::Invalid("transition data must be reflexive".into()));
    }
    if delta_ii.rank() != delta_i_check.rank() {
        return Err(Error::RankMismatch(delta_ii.rank(), delta_i_check.rank()));
    }
    if !delta_ii
        .vertices()
        .iter()
        .all(|v| delta_i_check.contains(v))
    {
        return Err(Error::Invalid("Δ_II is not contained in Δ̌_I".into()));
    }
    let delta_i = crate::polytope::polar_dual(delta_i_check)?;
    let tot_k = |p: &Polytope| -> Result<StackyFan> {
        let base = refined_spanning_fan(p)?;
        let ones = vec![1i64; base.rays().len()];
        let f = cayley_fan(&base, &[ones])?;
        StackyFan::trivial(f)
    };
    let sigma_i = tot_k(&delta_i)?;
    let sigma_ii = tot_k(delta_ii)?;
    for (name, s) in [("Σ_A_I", &sigma_i), ("Σ_A_II", &sigma_ii)] {
        let r = check_properties(s);
        if !r.unimodular.holds {
            return Err(Error::FanCheck(format!("{name} is not unimodular")));
        }
        if !r.gorenstein.holds {
            return Err(Error::FanCheck(format!("{name} is not Gorenstein")));
        }
    }
    let clarke = validate_clarke(&sigma_i, &sigma_ii)?;
    Ok(TransitionPair {
        sigma_i,
        sigma_ii,
        clarke,
    })
}

/// Combinatorial data of the covers X̂_I → T_Δ: the toric base, the divisors
/// E_{Δ_i} and the section polytopes Δ̌_i. Branch divisors are
/// B_i = {σ_{i,gen} σ_{i,tor} = 0} with σ_{i,tor} vanishing on E_{Δ_i}.
#[derive(Debug, Clone, PartialEq)]
pub struct CoverSpec {
    pub base: Fan,
    /// Coefficient of each base ray in E_{Δ_i}.
    pub divisors: Vec<Vec<i64>>,
    pub sections: Vec<Polytope>,
    pub subset: Vec<usize>,
}

impl CoverSpec {
    pub fn dim(&self) -> usize {
        self.base.rank()
    }

    /// deg E_{Δ_i} when the base is P¹.
    pub fn curve_degrees(&self) -> Option<Vec<i64>> {
        (self.dim() == 1).then(|| self.divisors.iter().map(|d| d.iter().sum()).collect())
    }
}

fn check_subset(s: &[usize], k: usize) -> Result<Vec<usize>> {
    let mut v = s.to_vec();
    v.sort();
    v.dedup();
    if let Some(&bad) = v.iter().find(|&&i| i >= k) {
        return Err(Error::Invalid(format!("index {bad} outside 0..{k}")));
    }
    Ok(v)
}

pub fn build_cover_spec(np: &NefPartition, subset: &[usize]) -> Result<CoverSpec> {
    let subset = check_subset(subset, np.k())?;
    let base = refined_spanning_fan(&np.delta)?;
    let mut divisors = vec![vec![0i64; base.rays().len()]; np.k()];
    for (r, rho) in base.rays().iter().enumerate() {
        let i = np
            .part_of(rho)
            .ok_or_else(|| Error::Consistency(format!("ray {rho:?} in no part")))?;
        divisors[i][r] = 1;
    }
    let sections = dual_nef_partition(np)?.parts;
    Ok(CoverSpec {
        base,
        divisors,
        sections,
        subset,
    })
}

/// One monomial of the potential: a point of M × ℤ^k.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PotentialTerm {
    pub point: Vec<Int>,
    pub part: usize,
    /// Belongs to g_{2,J} (fiber weight 2) rather than g_{1,J^c}.
    pub quadratic: bool,
    pub generic: bool,
}

/// (𝕍_J, g_{2,J} + g_{1,J^c}) with 𝕍_J = Tot(⊕_{i∈J} L_i^{-1} ⊕ ⊕_{i∉J} L_i^{-2}).
#[derive(Debug, Clone, PartialEq)]
pub struct LGModel {
    pub total_space: StackyFan,
    pub potential: Vec<PotentialTerm>,
    pub j: Vec<usize>,
    pub cover: CoverSpec,
}

impl LGModel {
    /// Every potential term pairs nonnegatively with every ray.
    pub fn is_regular(&self) -> bool {
        let rays = self.total_space.fan().rays();
        self.potential
            .iter()
            .all(|t| rays.iter().all(|r| dot_int(r, &t.point) >= Int::zero()))
    }
}

pub fn build_lg_model(np: &NefPartition, j: &[usize]) -> Result<LGModel> {
    let j = check_subset(j, np.k())?;
    let k = np.k();
    let jc: Vec<usize> = (0..k).filter(|i| !j.contains(i)).collect();
    let a_parts: Vec<Vec<Vec<Int>>> = np.pieces.iter().map(|p| p.lattice_points()).collect();
    let total_space = sigma_family(&a_parts, &jc)?;
    let cover = build_cover_spec(np, &j)?;
    let mut potential = Vec::new();
    for (i, sec) in cover.sections.iter().enumerate() {
        let quadratic = j.contains(&i);
        let w = if quadratic { 2 } else { 1 };
        for m in sec.lattice_points() {
            let mut point = m.clone();
            point.extend((0..k).map(|l| if l == i { Int::from(w) } else { Int::zero() }));
            potential.push(PotentialTerm {
                point,
                part: i,
                quadratic,
                generic: true,
            });
        }
    }
    let model = LGModel {
        total_space,
        potential,
        j,
        cover,
    };
    if !model.is_regular() {
        return Err(Error::Consistency(
            "potential is not regular on the total space".into(),
        ));
    }
    Ok(model)
}

/// The Clarke pair (Σ_{2A_J, A_{J^c}}, Σ_{Ǎ_J, 2Ǎ_{J^c}}) of a nef partition.
pub fn nef_clarke_pair(np: &NefPartition, j: &[usize]) -> Result<ClarkeCheck> {
    let j = check_subset(j, np.k())?;
    let jc: Vec<usize> = (0..np.k()).filter(|i| !j.contains(i)).collect();
    let a: Vec<Vec<Vec<Int>>> = np.pieces.iter().map(|p| p.lattice_points()).collect();
    let ac: Vec<Vec<Vec<Int>>> = dual_nef_partition(np)?
        .parts
        .iter()
        .map(|p| p.lattice_points())
        .collect();
    validate_clarke(&sigma_family(&a, &j)?, &sigma_family(&ac, &jc)?)
}

/// Tag check helper for inputs that must live in N.
pub fn expect_tag(p: &Polytope, tag: LatticeTag) -> Result<()> {
    if p.tag() != tag {
        return Err(Error::TagMismatch {
            expected: tag.to_string(),
            found: p.tag().to_string(),
        });
    }
    Ok(())
}


/// The pair over P¹ with L = O(E_1 + E_2): 𝚺_L has rays (±1, 2) and the fiber
/// ray (0, 1) with β = 2; 𝚺̌_P has rays (±1, 1) and (0, 1).
pub fn p1_example_pair() -> Result<(StackyFan, StackyFan)> {
    let seg = Polytope::from_int_points(LatticeTag::N, &[vec![-1], vec![1]])?;
    let p1 = spanning_fan(&seg)?;
    let l = cayley_fan(&p1, &[vec![2, 2]])?;
    let fiber = l
        .ray_index(&[Int::zero(), Int::one()])
        .ok_or_else(|| Error::Consistency("fiber ray".into()))?;
    let mut beta = vec![1; l.rays().len()];
    beta[fiber] = 2;
    let sigma_l = StackyFan::new(l, beta)?;
    let p = cayley_fan(&p1, &[vec![1, 1]])?;
    Ok((sigma_l, StackyFan::trivial(p)?))
}
