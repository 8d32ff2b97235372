use std::collections::BTreeMap;

use thiserror::Error;

use crate::arith::modular::is_odd_prime;
use crate::arith::{gcd, mod_inverse, modulo};
use crate::{Error, Result};

/// The cyclic group `Z/n` with `n = p` or `n = 2p` for an odd prime `p <= 19`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroupSpec {
    prime: i64,
    doubled: bool,
}

impl GroupSpec {
    pub const MAX_PRIME: i64 = 19;

    pub fn new(prime: i64, doubled: bool) -> Result<Self> {
        if !is_odd_prime(prime) || prime > Self::MAX_PRIME {
            return Err(Error::InvalidGroup(format!("p = {prime} must be an odd prime between 3 and 19")));
        }
        Ok(GroupSpec { prime, doubled })
    }

    /// Interprets `order` as `p` or `2p`.
    pub fn from_order(order: i64) -> Result<Self> {
        if order % 2 == 0 { Self::new(order / 2, true) } else { Self::new(order, false) }
            .map_err(|_| Error::InvalidGroup(format!("order {order} is neither p nor 2p for an odd prime p <= 19")))
    }

    pub fn prime(self) -> i64 {
        self.prime
    }

    pub fn doubled(self) -> bool {
        self.doubled
    }

    pub fn order(self) -> i64 {
        if self.doubled {
            2 * self.prime
        } else {
            self.prime
        }
    }

    /// Stabilizer orders a point can have, i.e. the divisors `>= 2` of the order.
    pub fn stabilizer_orders(self) -> Vec<i64> {
        let n = self.order();
        (2..=n).filter(|m| n % m == 0).collect()
    }
}

/// A branch point of `C -> C/G`, recorded by the order `stabilizer` of the
/// stabilizer of a point above it and the exponent `rotation` such that the
/// generator `g^(n/stabilizer)` of that stabilizer acts near the point as
/// multiplication by `exp(2 pi i rotation / stabilizer)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BranchPoint {
    pub stabilizer: i64,
    pub rotation: i64,
}

impl BranchPoint {
    pub fn new(group: GroupSpec, stabilizer: i64, rotation: i64) -> Result<Self> {
        let n = group.order();
        if stabilizer < 2 || n % stabilizer != 0 {
            return Err(Error::MalformedBranch(format!("stabilizer order {stabilizer} does not divide {n}")));
        }
        if rotation <= 0 || rotation >= stabilizer || gcd(rotation, stabilizer) != 1 {
            return Err(Error::MalformedBranch(format!("rotation {rotation} is not a unit modulo {stabilizer}")));
        }
        Ok(BranchPoint { stabilizer, rotation })
    }

    /// The element of `Z/n` that is the image of the loop around the point.
    pub fn spherical_exponent(self, order: i64) -> i64 {
        let inv = mod_inverse(self.rotation, self.stabilizer).expect("rotation is a unit");
        modulo((order / self.stabilizer) * inv, order)
    }

    pub fn from_exponent(group: GroupSpec, exponent: i64) -> Result<Self> {
        let n = group.order();
        let xi = modulo(exponent, n);
        if xi == 0 {
            return Err(Error::MalformedBranch("spherical exponent 0 gives no branching".into()));
        }
        let cofactor = gcd(xi, n);
        let stabilizer = n / cofactor;
        let rotation = mod_inverse(xi / cofactor, stabilizer)?;
        BranchPoint::new(group, stabilizer, rotation)
    }

    /// Number of points of the curve lying over this branch point.
    pub fn ramification_count(self, order: i64) -> i64 {
        order / self.stabilizer
    }
}

/// A cyclic action on a curve with rational quotient, stored by its base
/// branch points in sorted order.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CurveAction {
    group: GroupSpec,
    points: Vec<BranchPoint>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Inadmissible {
    #[error("only {0} branch points; at least 3 are needed")]
    TooFewBranchPoints(usize),
    #[error("monodromy fails: exponents sum to {0} modulo the group order")]
    Monodromy(i64),
    #[error("the local monodromies generate a proper subgroup of index {0}")]
    Generation(i64),
    #[error("{count} ramification points of stabilizer order {stabilizer} do not form whole orbits")]
    OrbitMultiplicity { stabilizer: i64, count: i64 },
    #[error("non-integral Riemann-Hurwitz genus")]
    NonIntegralGenus,
}

impl CurveAction {
    pub fn new(group: GroupSpec, mut points: Vec<BranchPoint>) -> Result<Self> {
        for bp in &points {
            BranchPoint::new(group, bp.stabilizer, bp.rotation)?;
        }
        points.sort();
        Ok(CurveAction { group, points })
    }

    pub fn from_exponents(group: GroupSpec, exponents: &[i64]) -> Result<Self> {
        let points = exponents.iter().map(|&x| BranchPoint::from_exponent(group, x)).collect::<Result<_>>()?;
        CurveAction::new(group, points)
    }

    /// Builds an action from ramification-point counts `(m, theta, count)`:
    /// `count` points of the curve with stabilizer order `m` and rotation
    /// `theta`. Each base branch point accounts for `n/m` of them.
    pub fn from_ramification(group: GroupSpec, entries: &[(i64, i64, i64)]) -> Result<Self> {
        let n = group.order();
        let mut points = Vec::new();
        for &(m, theta, count) in entries {
            let bp = BranchPoint::new(group, m, theta)?;
            let orbit = bp.ramification_count(n);
            if count < 0 || count % orbit != 0 {
                return Err(Inadmissible::OrbitMultiplicity { stabilizer: m, count }.into());
            }
            points.extend(std::iter::repeat_n(bp, (count / orbit) as usize));
        }
        CurveAction::new(group, points)
    }

    /// Reads a table-style count vector. For `n = p` entry `i` (1-based)
    /// counts points with rotation `i`. For `n = 2p` the vector has `2p - 1`
    /// entries in three blocks: order-`2p` points on which the generator acts
    /// by `-z^i` (`i = 1..p-1`), order-`p` points with rotation `i`
    /// (`i = 1..p-1`), and finally order-2 points.
    pub fn from_table_counts(group: GroupSpec, counts: &[i64]) -> Result<Self> {
        let p = group.prime();
        let n = group.order();
        if counts.len() as i64 != n - 1 {
            return Err(Error::MalformedBranch(format!(
                "expected {} counts for order {n}, got {}",
                n - 1,
                counts.len()
            )));
        }
        let mut entries = Vec::new();
        if !group.doubled() {
            for (i, &c) in counts.iter().enumerate() {
                entries.push((p, i as i64 + 1, c));
            }
        } else {
            for i in 1..p {
                // -z^i = w^(p + 2i) for w a primitive 2p-th root with w^2 = z.
                entries.push((n, modulo(p + 2 * i, n), counts[(i - 1) as usize]));
                entries.push((p, i, counts[(p - 1 + i - 1) as usize]));
            }
            entries.push((2, 1, counts[(2 * p - 2) as usize]));
        }
        entries.retain(|e| e.2 != 0);
        CurveAction::from_ramification(group, &entries)
    }

    pub fn group(&self) -> GroupSpec {
        self.group
    }

    /// Base branch points, sorted.
    pub fn points(&self) -> &[BranchPoint] {
        &self.points
    }

    pub fn num_branch_points(&self) -> usize {
        self.points.len()
    }

    pub fn exponents(&self) -> Vec<i64> {
        let n = self.group.order();
        self.points.iter().map(|bp| bp.spherical_exponent(n)).collect()
    }

    /// Ramification-point multiset `(m, theta, count)` grouped by type.
    pub fn ramification(&self) -> Vec<(i64, i64, i64)> {
        let n = self.group.order();
        let mut grouped: BTreeMap<(i64, i64), i64> = BTreeMap::new();
        for bp in &self.points {
            *grouped.entry((bp.stabilizer, bp.rotation)).or_default() += bp.ramification_count(n);
        }
        grouped.into_iter().map(|((m, t), c)| (m, t, c)).collect()
    }

    /// The table-style count vector, inverse to [`CurveAction::from_table_counts`].
    pub fn table_counts(&self) -> Vec<i64> {
        let p = self.group.prime();
        let n = self.group.order();
        let mut out = vec![0; (n - 1) as usize];
        for (m, theta, count) in self.ramification() {
            let slot = if !self.group.doubled() {
                theta - 1
            } else if m == n {
                // theta = p + 2i mod 2p
                let i = modulo((theta - p) * mod_inverse(2, p).unwrap(), p);
                i - 1
            } else if m == p {
                p - 1 + theta - 1
            } else {
                2 * p - 2
            };
            out[slot as usize] += count;
        }
        out
    }

    /// Replaces the generator `g` by `g^t` for a unit `t`.
    pub fn twisted(&self, t: i64) -> Result<Self> {
        let n = self.group.order();
        if gcd(t, n) != 1 {
            return Err(Error::MalformedBranch(format!("twist {t} is not a unit modulo {n}")));
        }
        let points = self
            .points
            .iter()
            .map(|bp| BranchPoint { stabilizer: bp.stabilizer, rotation: modulo(bp.rotation * t, bp.stabilizer) })
            .collect();
        CurveAction::new(self.group, points)
    }
}

/// Riemann-Hurwitz genus: `2g - 2 = n(-2 + sum (1 - 1/m))`.
pub fn genus(action: &CurveAction) -> Result<i64> {
    let n = action.group.order();
    let twice: i64 = -2 * n + action.points.iter().map(|bp| n - n / bp.stabilizer).sum::<i64>() + 2;
    if twice % 2 != 0 || twice < 0 {
        return Err(Inadmissible::NonIntegralGenus.into());
    }
    Ok(twice / 2)
}

/// Checks the existence conditions for a cyclic cover with this branching.
pub fn is_admissible(action: &CurveAction) -> std::result::Result<(), Inadmissible> {
    let n = action.group.order();
    if action.points.len() < 3 {
        return Err(Inadmissible::TooFewBranchPoints(action.points.len()));
    }
    let exps = action.exponents();
    let total = modulo(exps.iter().sum(), n);
    if total != 0 {
        return Err(Inadmissible::Monodromy(total));
    }
    let generated = exps.iter().fold(n, |acc, &x| gcd(acc, x));
    if generated != 1 {
        return Err(Inadmissible::Generation(generated));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(p: i64) -> GroupSpec {
        GroupSpec::new(p, false).unwrap()
    }

    #[test]
    fn group_validation() {
        assert!(GroupSpec::new(3, false).is_ok());
        assert!(GroupSpec::new(19, true).is_ok());
        assert!(GroupSpec::new(23, false).is_err());
        assert!(GroupSpec::new(9, false).is_err());
        assert!(GroupSpec::new(2, false).is_err());
        assert_eq!(GroupSpec::from_order(10).unwrap(), GroupSpec::new(5, true).unwrap());
        assert!(GroupSpec::from_order(12).is_err());
        assert_eq!(GroupSpec::new(3, true).unwrap().stabilizer_orders(), vec![2, 3, 6]);
    }

    #[test]
    fn exponent_round_trip() {
        for n in [3, 5, 6, 10, 14, 19, 38] {
            let group = GroupSpec::from_order(n).unwrap();
            for xi in 1..n {
                let bp = BranchPoint::from_exponent(group, xi).unwrap();
                assert_eq!(bp.spherical_exponent(n), xi);
            }
        }
    }

    #[test]
    fn genus_examples() {
        let six = CurveAction::from_table_counts(g(3), &[0, 6]).unwrap();
        assert_eq!(genus(&six).unwrap(), 4);
        for p in [3, 5, 7, 11, 13, 17, 19] {
            let pts = vec![
                BranchPoint::new(g(p), p, p - 1).unwrap(),
                BranchPoint::new(g(p), p, p - 1).unwrap(),
                BranchPoint::new(g(p), p, (p + 1) / 2).unwrap(),
            ];
            let dp = CurveAction::new(g(p), pts).unwrap();
            assert_eq!(genus(&dp).unwrap(), (p - 1) / 2);
            assert!(is_admissible(&dp).is_ok());
        }
        let six = GroupSpec::new(3, true).unwrap();
        let c = CurveAction::from_ramification(six, &[(6, 1, 10), (3, 1, 2)]).unwrap();
        assert_eq!(genus(&c).unwrap(), 22);
    }

    #[test]
    fn admissibility() {
        let a = CurveAction::from_table_counts(g(3), &[0, 6]).unwrap();
        assert!(is_admissible(&a).is_ok());
        let b = CurveAction::from_table_counts(g(3), &[1, 0]).unwrap();
        assert_eq!(is_admissible(&b), Err(Inadmissible::TooFewBranchPoints(1)));
        let c = CurveAction::from_table_counts(g(5), &[1, 1, 1, 0]).unwrap();
        assert!(matches!(is_admissible(&c), Err(Inadmissible::Monodromy(_))));
        let six = GroupSpec::new(3, true).unwrap();
        let sub = CurveAction::from_exponents(six, &[2, 2, 2]).unwrap();
        assert_eq!(is_admissible(&sub), Err(Inadmissible::Generation(2)));
        let orbit = CurveAction::from_ramification(six, &[(3, 1, 3)]);
        assert!(matches!(orbit, Err(Error::Inadmissible(Inadmissible::OrbitMultiplicity { .. }))));
    }

    #[test]
    fn table_counts_round_trip() {
        let six = GroupSpec::new(3, true).unwrap();
        let counts = [1, 3, 0, 2, 0];
        let c = CurveAction::from_table_counts(six, &counts).unwrap();
        assert_eq!(c.table_counts(), counts);
        let seven = g(7);
        let counts = [0, 0, 0, 0, 1, 3];
        assert_eq!(CurveAction::from_table_counts(seven, &counts).unwrap().table_counts(), counts);
        assert!(CurveAction::from_table_counts(seven, &[1, 2]).is_err());
    }
}
