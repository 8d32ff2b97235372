use std::collections::BTreeMap;

use crate::arith::{gcd, mod_inverse, modulo};
use crate::Result;

use super::SurfacePair;

/// `count` cyclic quotient singularities of type `1/d(1, q)` lying over the
/// base branch points `origin = (i, j)` of the two factors.
///
/// The orientation is `q = a/b mod d` where the common stabilizer generator
/// acts by `exp(2 pi i a/d)` on the first factor and by `exp(2 pi i b/d)` on
/// the second.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SingularityRecord {
    pub d: i64,
    pub q: i64,
    pub count: i64,
    pub origin: (usize, usize),
}

impl SingularityRecord {
    /// The type with the opposite orientation, as seen from the second factor.
    pub fn dual_q(&self) -> i64 {
        mod_inverse(self.q, self.d).expect("q is a unit")
    }

    /// Orientation-free type: the smaller of `q` and its inverse.
    pub fn unoriented(&self) -> (i64, i64) {
        (self.d, self.q.min(self.dual_q()))
    }
}

/// One record per pair of base branch points whose stabilizers intersect
/// non-trivially.
pub fn singularity_multiset(pair: &SurfacePair) -> Result<Vec<SingularityRecord>> {
    let n = pair.order();
    let mut out = Vec::new();
    for (i, a) in pair.first.action.points().iter().enumerate() {
        for (j, b) in pair.glued_second().action.points().iter().enumerate() {
            let d = gcd(a.stabilizer, b.stabilizer);
            if d == 1 {
                continue;
            }
            let count = (n / a.stabilizer) * (n / b.stabilizer) * d / n;
            let q = modulo(modulo(a.rotation, d) * mod_inverse(b.rotation, d)?, d);
            out.push(SingularityRecord { d, q, count, origin: (i, j) });
        }
    }
    Ok(out)
}

/// Aggregated counts by unoriented type `(d, min(q, q^-1))`.
pub fn unoriented_multiset(records: &[SingularityRecord]) -> BTreeMap<(i64, i64), i64> {
    let mut out = BTreeMap::new();
    for r in records {
        *out.entry(r.unoriented()).or_insert(0) += r.count;
    }
    out
}

/// Aggregated counts by oriented type `(d, q)`.
pub fn oriented_multiset(records: &[SingularityRecord]) -> BTreeMap<(i64, i64), i64> {
    let mut out = BTreeMap::new();
    for r in records {
        *out.entry((r.d, r.q)).or_insert(0) += r.count;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curves::{dp_delta, dp_tau, Curve, CurveAction, GroupSpec};

    fn multiset(pair: &SurfacePair) -> Vec<(i64, i64, i64)> {
        oriented_multiset(&singularity_multiset(pair).unwrap()).into_iter().map(|((d, q), c)| (c, d, q)).collect()
    }

    #[test]
    fn dp_self_products() {
        let d3 = Curve::new(dp_delta(3).unwrap()).unwrap();
        assert_eq!(multiset(&SurfacePair::new(d3.clone(), d3.clone(), 1).unwrap()), vec![(9, 3, 1)]);
        assert_eq!(multiset(&SurfacePair::new(d3.clone(), d3, 2).unwrap()), vec![(9, 3, 2)]);
    }

    #[test]
    fn five_point_example() {
        let g = GroupSpec::new(5, false).unwrap();
        let c = Curve::new(CurveAction::from_table_counts(g, &[0, 0, 0, 5]).unwrap()).unwrap();
        let d5 = Curve::new(dp_delta(5).unwrap()).unwrap();
        let pair = SurfacePair::new(c, d5, 1).unwrap();
        assert_eq!(multiset(&pair), vec![(10, 5, 1), (5, 5, 3)]);
    }

    #[test]
    fn doubled_top_genus() {
        let g = GroupSpec::new(3, true).unwrap();
        let c = Curve::new(CurveAction::from_table_counts(g, &[0, 12, 0, 0, 0]).unwrap()).unwrap();
        assert_eq!(c.genus, 25);
        let tau = Curve::new(dp_tau(3).unwrap()).unwrap();
        let pair = SurfacePair::new(c, tau, 1).unwrap();
        let un = unoriented_multiset(&singularity_multiset(&pair).unwrap());
        assert_eq!(un.into_iter().collect::<Vec<_>>(), vec![((2, 1), 12), ((3, 1), 12), ((6, 1), 12)]);
    }
}
