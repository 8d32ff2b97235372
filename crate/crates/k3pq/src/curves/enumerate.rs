use std::collections::BTreeSet;

use rayon::prelude::*;

use crate::arith::modular::units;
use crate::arith::{gcd, modulo};
use crate::{Error, Result};

use super::{Curve, CurveAction, GroupSpec};

/// How many base branch points the enumerated curves may have.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BranchCount {
    Exactly(usize),
    AtMost(usize),
}

impl BranchCount {
    fn range(self) -> (usize, usize) {
        match self {
            BranchCount::Exactly(r) => (r, r),
            BranchCount::AtMost(r) => (3, r),
        }
    }
}

/// Largest number of branch points a single curve may have in the
/// non-primitive doubled mode: the pair total is at most 25 and the partner
/// needs at least 3.
pub const DOUBLED_BRANCH_CAP: usize = 22;

/// Genus and branch-point bounds for curves with a one-dimensional eigenspace
/// whose eigenvalue has maximal order.
pub fn max_genus_bound(group: GroupSpec, primitive_only: bool) -> Result<(i64, usize)> {
    let p = group.prime();
    if !group.doubled() {
        return Ok(((p - 1) * (p - 1), (2 * p) as usize));
    }
    if !primitive_only {
        return Err(Error::Bound(format!(
            "no genus bound without the primitive-eigenvalue filter for order {}; supply an explicit branch-point cap of at most {DOUBLED_BRANCH_CAP}",
            group.order()
        )));
    }
    Ok(((2 * p - 1) * (2 * p - 1), (4 * p) as usize))
}

/// Canonical sorting key: the lexicographically least sorted exponent
/// multiset over all unit rescalings.
pub fn canonical_key(action: &CurveAction) -> Vec<i64> {
    canonical_exponents(action.group().order(), &action.exponents())
}

fn canonical_exponents(n: i64, exponents: &[i64]) -> Vec<i64> {
    units(n)
        .into_iter()
        .map(|t| {
            let mut v: Vec<i64> = exponents.iter().map(|&x| modulo(t * x, n)).collect();
            v.sort_unstable();
            v
        })
        .min()
        .expect("Z/n has units")
}

pub fn canonicalize(action: &CurveAction) -> CurveAction {
    CurveAction::from_exponents(action.group(), &canonical_key(action)).expect("rescaled exponents stay valid")
}

/// Units `t` such that twisting by `t` maps the action to itself up to
/// relabelling of the branch points.
pub fn stabilizer_twists(action: &CurveAction) -> Vec<i64> {
    let n = action.group().order();
    let mut base = action.exponents();
    base.sort_unstable();
    units(n)
        .into_iter()
        .filter(|&t| {
            let mut v: Vec<i64> = base.iter().map(|&x| modulo(t * x, n)).collect();
            v.sort_unstable();
            v == base
        })
        .collect()
}

struct Filter {
    n: i64,
    require_dim1: bool,
    /// Eigenvalue indices eligible for the one-dimensional condition.
    eligible: Vec<i64>,
}

impl Filter {
    /// `sums[s] = sum_j (s xi_j mod n)`, so that `dim(s) = sums[s]/n - 1`.
    fn accepts(&self, sums: &[i64]) -> bool {
        !self.require_dim1 || self.eligible.iter().any(|&s| sums[s as usize] == 2 * self.n)
    }

    fn still_possible(&self, sums: &[i64]) -> bool {
        !self.require_dim1 || self.eligible.iter().any(|&s| sums[s as usize] <= 2 * self.n)
    }
}

fn check_bounds(
    group: GroupSpec,
    count: BranchCount,
    require_dim1: bool,
    primitive_only: bool,
) -> Result<(usize, usize)> {
    let (lo, hi) = count.range();
    if lo < 3 || hi < lo {
        return Err(Error::Bound(format!("branch-point count must be at least 3, got {lo}..={hi}")));
    }
    let cap = if group.doubled() && !(primitive_only && require_dim1) {
        DOUBLED_BRANCH_CAP
    } else {
        max_genus_bound(group, true)?.1
    };
    if hi > cap {
        return Err(Error::Bound(format!(
            "at most {cap} branch points are possible for order {} in this mode, requested {hi}",
            group.order()
        )));
    }
    Ok((lo, hi))
}

/// All admissible actions with the requested number of branch points, up to
/// canonical equivalence, sorted by (branch-point count, canonical key).
///
/// With `require_dim1` only curves having a one-dimensional eigenspace are
/// kept; `primitive_only` additionally asks for that eigenvalue to have
/// order exactly `n`.
pub fn enumerate_curves(
    group: GroupSpec,
    count: BranchCount,
    require_dim1: bool,
    primitive_only: bool,
) -> Result<Vec<Curve>> {
    let (lo, hi) = check_bounds(group, count, require_dim1, primitive_only)?;
    let n = group.order();
    let eligible: Vec<i64> = if primitive_only { units(n) } else { (1..n).collect() };
    let filter = Filter { n, require_dim1, eligible };

    let raw: Vec<Vec<i64>> = if require_dim1 && (primitive_only || !group.doubled()) {
        // Twisting so that the one-dimensional eigenvalue is z itself, the
        // exponents become a partition of 2n into parts below n.
        let mut parts = Vec::new();
        let mut out = Vec::new();
        partitions(2 * n, n - 1, lo, hi, &mut parts, &mut out);
        out
    } else {
        (1..n)
            .into_par_iter()
            .flat_map_iter(|first| {
                let mut out = Vec::new();
                for r in lo..=hi {
                    let mut sums = vec![0i64; n as usize];
                    let mut seq = Vec::with_capacity(r);
                    extend(&filter, r, first, &mut seq, &mut sums, &mut out);
                }
                out
            })
            .collect()
    };

    let keys: BTreeSet<(usize, Vec<i64>)> = raw
        .par_iter()
        .filter(|xs| xs.iter().fold(n, |acc, &x| gcd(acc, x)) == 1 && modulo(xs.iter().sum(), n) == 0)
        .map(|xs| (xs.len(), canonical_exponents(n, xs)))
        .collect::<Vec<_>>()
        .into_iter()
        .collect();

    let curves: Vec<Curve> = keys
        .into_par_iter()
        .map(|(_, xs)| Curve::new(CurveAction::from_exponents(group, &xs)?))
        .collect::<Result<Vec<_>>>()?;
    Ok(curves.into_iter().filter(|c| !require_dim1 || filter.eligible.iter().any(|&s| c.profile.dim(s) == 1)).collect())
}

/// Multisets of integers in `1..=max_part` summing to `total`, with between
/// `lo` and `hi` parts, listed in non-increasing order.
fn partitions(total: i64, max_part: i64, lo: usize, hi: usize, parts: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
    if total == 0 {
        if parts.len() >= lo {
            out.push(parts.clone());
        }
        return;
    }
    if parts.len() >= hi {
        return;
    }
    for part in (1..=max_part.min(total)).rev() {
        parts.push(part);
        partitions(total - part, part, lo, hi, parts, out);
        parts.pop();
    }
}

/// Depth-first search over non-decreasing exponent sequences of length `r`
/// starting with `next`.
fn extend(filter: &Filter, r: usize, next: i64, seq: &mut Vec<i64>, sums: &mut [i64], out: &mut Vec<Vec<i64>>) {
    let n = filter.n;
    seq.push(next);
    for s in 1..n {
        sums[s as usize] += modulo(s * next, n);
    }
    if filter.still_possible(sums) {
        if seq.len() == r {
            if modulo(seq.iter().sum(), n) == 0 && filter.accepts(sums) {
                out.push(seq.clone());
            }
        } else {
            for x in next..n {
                extend(filter, r, x, seq, sums, out);
            }
        }
    }
    for s in 1..n {
        sums[s as usize] -= modulo(s * next, n);
    }
    seq.pop();
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curves::dp_delta;

    fn g(p: i64) -> GroupSpec {
        GroupSpec::new(p, false).unwrap()
    }

    #[test]
    fn bounds() {
        assert_eq!(max_genus_bound(g(3), false).unwrap(), (4, 6));
        assert_eq!(max_genus_bound(g(5), false).unwrap(), (16, 10));
        let six = GroupSpec::new(3, true).unwrap();
        assert_eq!(max_genus_bound(six, true).unwrap(), (25, 12));
        assert!(max_genus_bound(six, false).is_err());
        assert!(enumerate_curves(six, BranchCount::Exactly(99), true, false).is_err());
        assert!(enumerate_curves(g(3), BranchCount::Exactly(2), true, false).is_err());
        assert!(enumerate_curves(g(3), BranchCount::AtMost(7), true, false).is_err());
    }

    #[test]
    fn canonical_examples() {
        let d3 = CurveAction::from_exponents(g(3), &[2, 2, 2]).unwrap();
        assert_eq!(canonical_key(&d3), vec![1, 1, 1]);
        let a = CurveAction::from_exponents(g(5), &[4, 4, 2]).unwrap();
        let b = CurveAction::from_exponents(g(5), &[3, 3, 4]).unwrap();
        assert_eq!(canonicalize(&a), canonicalize(&b));
        assert_eq!(canonicalize(&canonicalize(&a)), canonicalize(&a));
    }

    #[test]
    fn p3_dim1_family() {
        let curves = enumerate_curves(g(3), BranchCount::AtMost(6), true, false).unwrap();
        let mut counts: Vec<Vec<i64>> = curves.iter().map(|c| c.action.table_counts()).collect();
        counts.sort();
        // Each class up to twist; compare with twist-closed table vectors.
        let expected = [[0, 6], [1, 4], [2, 2], [3, 0]];
        assert_eq!(curves.len(), 4);
        for e in expected {
            let c = CurveAction::from_table_counts(g(3), &e).unwrap();
            assert!(curves.iter().any(|k| canonicalize(&c) == k.action), "{e:?}");
        }
    }

    #[test]
    fn contains_dp() {
        for p in [3, 5, 7, 11, 13] {
            let curves = enumerate_curves(g(p), BranchCount::Exactly(3), true, false).unwrap();
            let dp = canonicalize(&dp_delta(p).unwrap());
            assert!(curves.iter().any(|c| c.action == dp));
        }
    }

    #[test]
    fn stabilizers() {
        let c = CurveAction::from_exponents(g(3), &[1, 1, 1]).unwrap();
        assert_eq!(stabilizer_twists(&c), vec![1]);
        let c = CurveAction::from_exponents(g(3), &[1, 1, 2, 2]).unwrap();
        assert_eq!(stabilizer_twists(&c), vec![1, 2]);
    }
}
