use crate::arith::{int, singularity_invariants, to_integer, Rational};
use crate::{Error, Result};

use super::{SingularityRecord, SurfacePair};

/// Numerical invariants of the minimal resolution `X` of the quotient.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SurfaceInvariants {
    pub g1: i64,
    pub g2: i64,
    pub k2: Rational,
    pub euler: Rational,
    pub chi: Rational,
    pub pg: i64,
    pub q: i64,
    pub h11: i64,
    pub moduli_dim: i64,
}

impl SurfaceInvariants {
    pub fn k2_int(&self) -> i64 {
        to_integer(&self.k2).expect("checked integral at construction")
    }

    pub fn euler_int(&self) -> i64 {
        to_integer(&self.euler).expect("checked integral at construction")
    }

    pub fn chi_int(&self) -> i64 {
        to_integer(&self.chi).expect("checked integral at construction")
    }
}

/// `(K^2, e, chi)` of the resolution.
pub fn chern_invariants(pair: &SurfacePair, sings: &[SingularityRecord]) -> Result<(Rational, Rational, Rational)> {
    let n = int(pair.order());
    let base = int((pair.first.genus - 1) * (pair.glued_second().genus - 1));
    let mut k2 = int(8) * &base / &n;
    let mut euler = int(4) * &base / &n;
    for s in sings {
        let inv = singularity_invariants(s.d, s.q)?;
        k2 += int(s.count) * inv.h;
        euler += int(s.count) * inv.e;
    }
    let chi = (&k2 + &euler) / int(12);
    for (name, value) in [("K^2", &k2), ("Euler number", &euler), ("chi", &chi)] {
        if !value.is_integer() {
            return Err(Error::Invariant(format!("{name} = {value} is not an integer")));
        }
    }
    Ok((k2, euler, chi))
}

/// `(p_g, q, h^{1,1})` of the resolution.
pub fn hodge_numbers(pair: &SurfacePair, sings: &[SingularityRecord]) -> Result<(i64, i64, i64)> {
    let first = &pair.first.profile;
    let second = &pair.glued_second().profile;
    let invariant_part: i64 = (1..pair.order()).map(|s| first.dim(s) * second.dim(s)).sum();
    let mut h11 = 2 * (1 + invariant_part);
    for s in sings {
        h11 += s.count * singularity_invariants(s.d, s.q)?.num_curves as i64;
    }
    Ok((pair.pg(), pair.irregularity(), h11))
}

/// Dimension `r1 + r2 - 6` of the family obtained by moving the branch points.
pub fn moduli_dimension(pair: &SurfacePair) -> Result<i64> {
    let r1 = pair.first.action.num_branch_points() as i64;
    let r2 = pair.second.action.num_branch_points() as i64;
    if r1 < 3 || r2 < 3 {
        return Err(Error::Invariant("each factor needs at least three branch points".into()));
    }
    Ok(r1 + r2 - 6)
}

impl SurfaceInvariants {
    pub fn compute(pair: &SurfacePair, sings: &[SingularityRecord]) -> Result<Self> {
        let (k2, euler, chi) = chern_invariants(pair, sings)?;
        let (pg, q, h11) = hodge_numbers(pair, sings)?;
        if euler != int(2 - 4 * q + 2 * pg + h11) {
            return Err(Error::Invariant(format!("Betti numbers disagree with e = {euler}")));
        }
        Ok(SurfaceInvariants {
            g1: pair.first.genus,
            g2: pair.glued_second().genus,
            k2,
            euler,
            chi,
            pg,
            q,
            h11,
            moduli_dim: moduli_dimension(pair)?,
        })
    }
}
