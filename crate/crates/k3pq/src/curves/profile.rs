use crate::arith::cyclotomic::geometric_inverse;
use crate::arith::{mod_inverse, modulo, rat, CyclotomicNumber, Rational};
use crate::{Error, Result};

use super::{is_admissible, CurveAction};

/// Dimensions of the eigenspaces of the generator on holomorphic 1-forms:
/// `dim(s)` is the multiplicity of the eigenvalue `exp(2 pi i s / n)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct EigenspaceProfile {
    order: i64,
    dims: Vec<i64>,
}

impl EigenspaceProfile {
    /// `dims[s - 1]` is the dimension for eigenvalue index `s = 1..n-1`.
    pub fn new(order: i64, dims: Vec<i64>) -> Result<Self> {
        if dims.len() as i64 != order - 1 || dims.iter().any(|&d| d < 0) {
            return Err(Error::Invariant(format!("profile of order {order} needs {} non-negative entries", order - 1)));
        }
        Ok(EigenspaceProfile { order, dims })
    }

    pub fn order(&self) -> i64 {
        self.order
    }

    /// Dimension for the eigenvalue index `s`, read modulo `n`. The invariant
    /// part is always zero because the quotient curve is rational.
    pub fn dim(&self, s: i64) -> i64 {
        let s = modulo(s, self.order);
        if s == 0 {
            0
        } else {
            self.dims[(s - 1) as usize]
        }
    }

    pub fn dims(&self) -> &[i64] {
        &self.dims
    }

    pub fn total(&self) -> i64 {
        self.dims.iter().sum()
    }

    /// Profile of the same action with generator `g^t`.
    pub fn twisted(&self, t: i64) -> Result<Self> {
        let inv = mod_inverse(t, self.order)?;
        let dims = (1..self.order).map(|s| self.dim(s * inv)).collect();
        Ok(EigenspaceProfile { order: self.order, dims })
    }

    /// Indices `s` whose eigenspace is exactly one-dimensional.
    pub fn unit_dimensional(&self) -> impl Iterator<Item = i64> + '_ {
        (1..self.order).filter(|&s| self.dim(s) == 1)
    }
}

/// Chevalley-Weil: `dim(s) = -1 + sum over base branch points of the
/// fractional part of s * xi / n`, `xi` the spherical exponent.
pub fn eigenspace_profile(action: &CurveAction) -> Result<EigenspaceProfile> {
    is_admissible(action)?;
    let n = action.group().order();
    let dims = (1..n)
        .map(|s| {
            let scaled: i64 = action
                .points()
                .iter()
                .map(|bp| {
                    let m = bp.stabilizer;
                    modulo(s * mod_inverse(bp.rotation, m).expect("unit rotation"), m) * (n / m)
                })
                .sum();
            if scaled % n != 0 {
                return Err(Error::Invariant(format!("non-integral eigenspace dimension at index {s}")));
            }
            Ok(scaled / n - 1)
        })
        .collect::<Result<Vec<_>>>()?;
    EigenspaceProfile::new(n, dims)
}

/// The Chevalley-Weil value as an unreduced rational, for branch data that
/// need not satisfy the monodromy condition.
pub fn chevalley_weil_value(action: &CurveAction, s: i64) -> Rational {
    let base: Rational = action
        .points()
        .iter()
        .map(|bp| {
            let m = bp.stabilizer;
            rat(modulo(s * mod_inverse(bp.rotation, m).expect("unit rotation"), m), m)
        })
        .sum();
    base - rat(1, 1)
}

/// Verifies the holomorphic Lefschetz formula for every non-trivial power
/// `g^k`, exactly in the cyclotomic field:
/// `1 - sum_s dim(s) z^(ks) = sum over fixed points of 1/(1 - local eigenvalue)`.
pub fn lefschetz_check(action: &CurveAction, profile: &EigenspaceProfile) -> bool {
    lefschetz_defects(action, profile).map(|d| d.is_empty()).unwrap_or(false)
}

/// Powers `k` at which the Lefschetz identity fails.
pub fn lefschetz_defects(action: &CurveAction, profile: &EigenspaceProfile) -> Result<Vec<i64>> {
    let group = action.group();
    let (p, n) = (group.prime(), group.order());
    if profile.order() != n {
        return Err(Error::GroupMismatch);
    }
    let root = |k: i64| CyclotomicNumber::root_of_unity(p, n, k);
    let mut failures = Vec::new();
    for k in 1..n {
        let mut lhs = CyclotomicNumber::one(p)?;
        for s in 1..n {
            let dim = profile.dim(s);
            if dim != 0 {
                lhs = lhs.sub(&root(k * s)?.scale(&rat(dim, 1)))?;
            }
        }
        let mut rhs = CyclotomicNumber::zero(p)?;
        for bp in action.points() {
            let orbit = n / bp.stabilizer;
            if k % orbit == 0 {
                let term = geometric_inverse(&root(bp.rotation * k)?)?;
                rhs = rhs.add(&term.scale(&rat(orbit, 1)))?;
            }
        }
        if lhs != rhs {
            failures.push(k);
        }
    }
    Ok(failures)
}

/// Genus of `C/H` where `H` is the subgroup of index `index` in the cyclic
/// group, i.e. `H` is generated by `g^index`. It is the total dimension of
/// the eigenspaces on which `g^index` acts trivially.
pub fn intermediate_quotient_genus(profile: &EigenspaceProfile, index: i64) -> Result<i64> {
    let n = profile.order();
    if index <= 0 || n % index != 0 {
        return Err(Error::Invariant(format!("{index} does not divide the group order {n}")));
    }
    Ok((1..n).filter(|s| (s * index) % n == 0).map(|s| profile.dim(s)).sum())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curves::{dp_delta, dp_tau, GroupSpec};

    #[test]
    fn table_anchor() {
        let g = GroupSpec::new(3, false).unwrap();
        let c = CurveAction::from_table_counts(g, &[0, 6]).unwrap();
        assert_eq!(eigenspace_profile(&c).unwrap().dims(), &[3, 1]);
    }

    #[test]
    fn dp_anchor() {
        for p in [3, 5, 7, 11, 13, 17, 19] {
            let prof = eigenspace_profile(&dp_delta(p).unwrap()).unwrap();
            for s in 1..p {
                assert_eq!(prof.dim(s), i64::from(s <= (p - 1) / 2), "p = {p}, s = {s}");
            }
        }
    }

    #[test]
    fn dp_tau_anchor() {
        // The only eigenvalue is -z_3 = exp(2 pi i 5/6).
        let prof = eigenspace_profile(&dp_tau(3).unwrap()).unwrap();
        assert_eq!(prof.dims(), &[0, 0, 0, 0, 1]);
        assert_eq!(intermediate_quotient_genus(&prof, 3).unwrap(), 0);
    }

    #[test]
    fn lefschetz_detects_perturbation() {
        let dp = dp_delta(5).unwrap();
        let prof = eigenspace_profile(&dp).unwrap();
        assert_eq!(prof.dims(), &[1, 1, 0, 0]);
        assert!(lefschetz_check(&dp, &prof));
        let bad = EigenspaceProfile::new(5, vec![1, 0, 1, 0]).unwrap();
        assert!(!lefschetz_check(&dp, &bad));
    }

    #[test]
    fn quotient_genus_by_index() {
        let prof = EigenspaceProfile::new(6, vec![9, 7, 5, 3, 1]).unwrap();
        assert_eq!(intermediate_quotient_genus(&prof, 1).unwrap(), 0);
        assert_eq!(intermediate_quotient_genus(&prof, 2).unwrap(), 5);
        assert_eq!(intermediate_quotient_genus(&prof, 3).unwrap(), 10);
        assert_eq!(intermediate_quotient_genus(&prof, 6).unwrap(), 25);
        assert!(intermediate_quotient_genus(&prof, 4).is_err());
    }

    #[test]
    fn twisting_profiles() {
        let prof = eigenspace_profile(&dp_delta(5).unwrap()).unwrap();
        let tw = eigenspace_profile(&dp_delta(5).unwrap().twisted(2).unwrap()).unwrap();
        assert_eq!(prof.twisted(2).unwrap(), tw);
    }
}
