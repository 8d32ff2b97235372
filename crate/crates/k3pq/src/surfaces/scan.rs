use rayon::prelude::*;

use crate::arith::modular::units;
use crate::arith::{mod_inverse, modulo};
use crate::curves::{
    canonical_key, enumerate_curves, stabilizer_twists, BranchCount, Curve, GroupSpec, DOUBLED_BRANCH_CAP,
};
use crate::{Error, Result};

use super::{singularity_multiset, SingularityRecord, SurfaceInvariants, SurfacePair};

/// A pair with `p_g = 1` and `q = 0`, with all invariants of its resolution.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Candidate {
    pub pair: SurfacePair,
    pub singularities: Vec<SingularityRecord>,
    pub invariants: SurfaceInvariants,
}

/// Deterministic ordering key of a candidate.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CandidateKey {
    pub first: (usize, Vec<i64>),
    pub second: (usize, Vec<i64>),
    pub twist: i64,
}

impl Candidate {
    pub fn new(pair: SurfacePair) -> Result<Self> {
        let singularities = singularity_multiset(&pair)?;
        let invariants = SurfaceInvariants::compute(&pair, &singularities)?;
        Ok(Candidate { pair, singularities, invariants })
    }

    /// `chi = 2`, the necessary condition for a K3 minimal model once
    /// `p_g = 1` and `q = 0`.
    pub fn is_k3_candidate(&self) -> bool {
        self.invariants.chi_int() == 2
    }

    pub fn key(&self) -> CandidateKey {
        let a = &self.pair.first.action;
        let b = &self.pair.second.action;
        CandidateKey {
            first: (a.num_branch_points(), canonical_key(a)),
            second: (b.num_branch_points(), canonical_key(b)),
            twist: self.pair.twist,
        }
    }
}

/// Bit masks of the eigenvalue indices carrying non-zero and unit-dimensional
/// eigenspaces.
#[derive(Clone, Copy)]
struct Masks {
    support: u64,
    ones: u64,
}

fn masks(dim: impl Fn(i64) -> i64, n: i64) -> Masks {
    let mut m = Masks { support: 0, ones: 0 };
    for s in 1..n {
        let d = dim(s);
        if d != 0 {
            m.support |= 1 << s;
        }
        if d == 1 {
            m.ones |= 1 << s;
        }
    }
    m
}

struct Indexed<'a> {
    curve: &'a Curve,
    own: Masks,
    /// For the `i`-th unit `t`: masks of `s -> dim(-s/t)`, the partner
    /// eigenvalue paired with index `s` after twisting by `t`.
    paired: Vec<Masks>,
    stabilizer: Vec<i64>,
}

fn index<'a>(curves: &'a [Curve], unit_list: &[i64]) -> Result<Vec<Indexed<'a>>> {
    curves
        .iter()
        .map(|c| {
            let n = c.order();
            let paired = unit_list
                .iter()
                .map(|&t| {
                    let inv = mod_inverse(t, n)?;
                    Ok(masks(|s| c.profile.dim(-s * inv), n))
                })
                .collect::<Result<Vec<_>>>()?;
            Ok(Indexed {
                curve: c,
                own: masks(|s| c.profile.dim(s), n),
                paired,
                stabilizer: stabilizer_twists(&c.action),
            })
        })
        .collect()
}

/// Smallest twist equivalent to `t` when both factors may be relabelled and,
/// for identical factors, exchanged.
fn representative_twist(n: i64, t: i64, a: &Indexed, b: &Indexed, same: bool) -> i64 {
    let mut best = i64::MAX;
    let mut consider = |base: i64| {
        for &u in &a.stabilizer {
            for &w in &b.stabilizer {
                best = best.min(modulo(base * u * w, n));
            }
        }
    };
    consider(t);
    if same {
        consider(mod_inverse(t, n).expect("unit"));
    }
    best
}

fn pair_lists(first: &[Curve], second: &[Curve], same_list: bool) -> Result<Vec<Candidate>> {
    let Some(n) = first.first().or(second.first()).map(Curve::order) else {
        return Ok(Vec::new());
    };
    let unit_list = units(n);
    let a_list = index(first, &unit_list)?;
    let b_list = if same_list { Vec::new() } else { index(second, &unit_list)? };
    let b_ref = if same_list { &a_list } else { &b_list };

    let mut found: Vec<Candidate> = (0..a_list.len())
        .into_par_iter()
        .map(|i| {
            let a = &a_list[i];
            let start = if same_list { i } else { 0 };
            let mut out = Vec::new();
            for (j, b) in b_ref.iter().enumerate().skip(start) {
                for (ti, &t) in unit_list.iter().enumerate() {
                    let bm = b.paired[ti];
                    let overlap = a.own.support & bm.support;
                    if overlap.count_ones() != 1 || overlap & a.own.ones & bm.ones == 0 {
                        continue;
                    }
                    if representative_twist(n, t, a, b, same_list && i == j) != t {
                        continue;
                    }
                    let pair = SurfacePair::new(a.curve.clone(), b.curve.clone(), t)?;
                    debug_assert_eq!(pair.pg(), 1);
                    out.push(Candidate::new(pair)?);
                }
            }
            Ok(out)
        })
        .collect::<Result<Vec<Vec<_>>>>()?
        .into_iter()
        .flatten()
        .collect();
    found.sort_by_cached_key(Candidate::key);
    Ok(found)
}

/// All pairs of curves with `t1` and `t2` branch points (each carrying a
/// one-dimensional eigenspace) whose quotient has `p_g = 1` and `q = 0`, one
/// per equivalence class under relabelling and factor exchange.
pub fn scan(group: GroupSpec, t1: usize, t2: usize) -> Result<Vec<Candidate>> {
    if t1 < 3 || t2 < 3 {
        return Err(Error::Bound(format!("branch-point counts must be at least 3, got {t1} and {t2}")));
    }
    if group.doubled() && t1 + t2 > DOUBLED_BRANCH_CAP + 3 {
        return Err(Error::Bound(format!(
            "for order {} the counts may total at most 25, got {}",
            group.order(),
            t1 + t2
        )));
    }
    let first = enumerate_curves(group, BranchCount::Exactly(t1), true, false)?;
    if t1 == t2 {
        return pair_lists(&first, &first, true);
    }
    let second = enumerate_curves(group, BranchCount::Exactly(t2), true, false)?;
    pair_lists(&first, &second, false)
}

/// All candidates for the prime order `p`, over every admissible number of
/// branch points.
pub fn full_scan(group: GroupSpec) -> Result<Vec<Candidate>> {
    if group.doubled() {
        return Err(Error::Bound("the full scan is only bounded for prime order".into()));
    }
    let r_max = (2 * group.prime()) as usize;
    let curves = enumerate_curves(group, BranchCount::AtMost(r_max), true, false)?;
    pair_lists(&curves, &curves, true)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn full_scan_three() {
        let g = GroupSpec::new(3, false).unwrap();
        let all = full_scan(g).unwrap();
        let k3: Vec<_> = all.iter().filter(|c| c.is_k3_candidate()).collect();
        let mut k2: Vec<i64> = k3.iter().map(|c| c.invariants.k2_int()).collect();
        k2.sort();
        assert_eq!(k2, vec![-6, -4, -2, 0]);
    }

    #[test]
    fn bounds() {
        let g = GroupSpec::new(3, true).unwrap();
        assert!(scan(g, 2, 3).is_err());
        assert!(scan(g, 20, 6).is_err());
        assert!(full_scan(g).is_err());
    }
}
