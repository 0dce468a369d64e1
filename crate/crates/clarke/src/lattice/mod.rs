//! Exact integer and rational linear algebra: lattice vectors, Smith normal
//! form, rational elimination and an exact simplex-based feasibility oracle.

mod linalg;
mod lp;
mod snf;

pub use linalg::{
    det_int, dot_q, int_vec, nullspace_q, primitive_from_rat, primitive_int, rank_q, rat, rat_vec,
    rref_q, solve_q, vec_gcd,
};
pub use lp::{lp_feasible, Constraint, FarkasWitness, LpOutcome, Relation};
pub use snf::{parallelepiped_coefficients, smith_normal_form, solve_integer, IntMatrix, Snf};

use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_rational::BigRational;
use serde::{Deserialize, Serialize};
use std::fmt;

pub type Int = BigInt;
pub type Rat = BigRational;

/// Which of the two dual lattices a vector lives in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum LatticeTag {
    N,
    M,
}

impl LatticeTag {
    pub fn dual(self) -> LatticeTag {
        match self {
            LatticeTag::N => LatticeTag::M,
            LatticeTag::M => LatticeTag::N,
        }
    }
}

impl fmt::Display for LatticeTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LatticeTag::N => write!(f, "N"),
            LatticeTag::M => write!(f, "M"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct LatticeVector {
    pub coords: Vec<Int>,
    pub tag: LatticeTag,
}

impl LatticeVector {
    pub fn new(coords: Vec<Int>, tag: LatticeTag) -> Self {
        LatticeVector { coords, tag }
    }

    pub fn from_i64(coords: &[i64], tag: LatticeTag) -> Self {
        LatticeVector {
            coords: int_vec(coords),
            tag,
        }
    }

    pub fn rank(&self) -> usize {
        self.coords.len()
    }

    pub fn scaled(&self, a: &Int) -> Self {
        LatticeVector {
            coords: self.coords.iter().map(|c| c * a).collect(),
            tag: self.tag,
        }
    }

    pub fn add(&self, other: &LatticeVector) -> Result<Self> {
        if self.tag != other.tag {
            return Err(tag_err(self.tag, other.tag));
        }
        if self.rank() != other.rank() {
            return Err(Error::RankMismatch(self.rank(), other.rank()));
        }
        Ok(LatticeVector {
            coords: self
                .coords
                .iter()
                .zip(&other.coords)
                .map(|(a, b)| a + b)
                .collect(),
            tag: self.tag,
        })
    }
}

fn tag_err(expected: LatticeTag, found: LatticeTag) -> Error {
    Error::TagMismatch {
        expected: expected.to_string(),
        found: found.to_string(),
    }
}

/// The natural pairing between N and M.
pub fn pair(n: &LatticeVector, m: &LatticeVector) -> Result<Int> {
    if n.tag != LatticeTag::N {
        return Err(tag_err(LatticeTag::N, n.tag));
    }
    if m.tag != LatticeTag::M {
        return Err(tag_err(LatticeTag::M, m.tag));
    }
    if n.rank() != m.rank() {
        return Err(Error::RankMismatch(n.rank(), m.rank()));
    }
    Ok(n.coords.iter().zip(&m.coords).map(|(a, b)| a * b).sum())
}

/// Plain integer dot product for untagged coordinate vectors.
pub fn dot_int(a: &[Int], b: &[Int]) -> Int {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}
