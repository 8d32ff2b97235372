use crate::arith::modular::units;
use crate::arith::{mod_inverse, modulo};
use crate::curves::{Curve, EigenspaceProfile};
use crate::{Error, Result};

/// Two curves with actions of the same group, glued along the diagonal
/// generator `g1 x g2^twist`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SurfacePair {
    pub first: Curve,
    pub second: Curve,
    pub twist: i64,
    glued: Curve,
}

/// `p_g = sum_s dim1(s) dim2(-s)` for the product quotient.
pub fn geometric_genus(first: &EigenspaceProfile, second: &EigenspaceProfile) -> i64 {
    (1..first.order()).map(|s| first.dim(s) * second.dim(-s)).sum()
}

impl SurfacePair {
    /// Builds the pair without checking the Hodge conditions.
    pub fn new(first: Curve, second: Curve, twist: i64) -> Result<Self> {
        if first.action.group() != second.action.group() {
            return Err(Error::GroupMismatch);
        }
        let n = first.order();
        let twist = modulo(twist, n);
        let glued = second.twisted(twist)?;
        Ok(SurfacePair { first, second, twist, glued })
    }

    /// The second curve with its generator replaced by the glued one.
    pub fn glued_second(&self) -> &Curve {
        &self.glued
    }

    pub fn order(&self) -> i64 {
        self.first.order()
    }

    pub fn pg(&self) -> i64 {
        geometric_genus(&self.first.profile, &self.glued.profile)
    }

    /// Irregularity: both quotient curves are rational so this always vanishes.
    pub fn irregularity(&self) -> i64 {
        self.first.profile.dim(0) + self.glued.profile.dim(0)
    }

    /// The same surface with the two factors exchanged.
    pub fn swapped(&self) -> Result<Self> {
        let inv = mod_inverse(self.twist, self.order())?;
        SurfacePair::new(self.second.clone(), self.first.clone(), inv)
    }
}

/// Every unit twist for which the quotient has `p_g = 1` and `q = 0`.
pub fn pair_admissible(first: &Curve, second: &Curve) -> Result<Vec<SurfacePair>> {
    if first.action.group() != second.action.group() {
        return Err(Error::GroupMismatch);
    }
    let n = first.order();
    let mut out = Vec::new();
    for t in units(n) {
        // At most one product of paired eigenspace dimensions may be non-zero.
        let paired = second.profile.twisted(t)?;
        let nonzero = (1..n).filter(|&s| first.profile.dim(s) * paired.dim(-s) != 0).count();
        if nonzero as i64 > 1 {
            continue;
        }
        let pair = SurfacePair::new(first.clone(), second.clone(), t)?;
        if pair.pg() == 1 && pair.irregularity() == 0 {
            out.push(pair);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curves::{dp_delta, CurveAction, GroupSpec};

    #[test]
    fn example_pairs_of_dp() {
        let d3 = Curve::new(dp_delta(3).unwrap()).unwrap();
        let first = SurfacePair::new(d3.clone(), d3.clone(), 1).unwrap();
        assert_eq!(first.pg(), 0);
        let second = SurfacePair::new(d3.clone(), d3.clone(), 2).unwrap();
        assert_eq!(second.pg(), 1);
        let ok = pair_admissible(&d3, &d3).unwrap();
        assert_eq!(ok.iter().map(|p| p.twist).collect::<Vec<_>>(), vec![2]);
    }

    #[test]
    fn table_row_pairs() {
        let g = GroupSpec::new(3, false).unwrap();
        let c = Curve::new(CurveAction::from_table_counts(g, &[0, 6]).unwrap()).unwrap();
        let d3 = Curve::new(dp_delta(3).unwrap()).unwrap();
        assert!(!pair_admissible(&c, &d3).unwrap().is_empty());
        let six = Curve::new(dp_delta(5).unwrap()).unwrap();
        assert_eq!(pair_admissible(&c, &six), Err(Error::GroupMismatch));
    }
}
