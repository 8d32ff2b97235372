use std::collections::{BTreeMap, BTreeSet};

use crate::arith::{continued_fraction, gcd, rat, to_integer, Rational};
use crate::curves::intermediate_quotient_genus;
use crate::surfaces::{SingularityRecord, SurfacePair};
use crate::{Error, Result};

use super::toric::{chain_rays, ray_is_fixed, torus_element};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum NodeKind {
    /// Central component of the fibre over a branch point of the first factor.
    Central1 { point: usize },
    /// Central component of the fibre over a branch point of the second factor.
    Central2 { point: usize },
    /// Member `position` of the `copy`-th string resolving a singular point
    /// over the branch points `(first, second)`.
    Exceptional { first: usize, second: usize, copy: usize, position: usize },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CurveNode {
    pub id: usize,
    pub kind: NodeKind,
    pub self_int: i64,
    /// Geometric genus of the curve.
    pub genus: i64,
    /// Arithmetic genus; grows when contractions create singularities on it.
    pub arithmetic_genus: i64,
    /// Whether the automorphism maps the curve to itself.
    pub invariant: bool,
    /// Whether the automorphism fixes the curve pointwise.
    pub fixed: bool,
}

/// Intersection graph of the central and exceptional curves of the
/// resolution, together with the isolated fixed points of the automorphism,
/// each located by the set of curves passing through it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CurveConfiguration {
    pub(super) nodes: BTreeMap<usize, CurveNode>,
    pub(super) inter: BTreeMap<usize, BTreeMap<usize, i64>>,
    pub(super) fixed_points: Vec<BTreeSet<usize>>,
    pub(super) invariant_exceptional: usize,
}

impl CurveConfiguration {
    pub fn nodes(&self) -> impl Iterator<Item = &CurveNode> {
        self.nodes.values()
    }

    pub fn node(&self, id: usize) -> Option<&CurveNode> {
        self.nodes.get(&id)
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// Intersection number of two distinct curves.
    pub fn intersection(&self, a: usize, b: usize) -> i64 {
        self.inter.get(&a).and_then(|m| m.get(&b)).copied().unwrap_or(0)
    }

    pub fn neighbours(&self, id: usize) -> impl Iterator<Item = (usize, i64)> + '_ {
        self.inter.get(&id).into_iter().flat_map(|m| m.iter().map(|(&k, &v)| (k, v)))
    }

    pub fn fixed_points(&self) -> &[BTreeSet<usize>] {
        &self.fixed_points
    }

    /// Number of exceptional curves mapped to themselves by the automorphism.
    pub fn invariant_exceptional(&self) -> usize {
        self.invariant_exceptional
    }

    fn add_node(&mut self, node: CurveNode) {
        self.inter.entry(node.id).or_default();
        self.nodes.insert(node.id, node);
    }

    pub(super) fn link(&mut self, a: usize, b: usize, mult: i64) {
        *self.inter.entry(a).or_default().entry(b).or_default() += mult;
        *self.inter.entry(b).or_default().entry(a).or_default() += mult;
    }
}

/// Self-intersection `-sum q_i/n_i` of the central curve of a fibre whose
/// singular points have oriented types `1/n_i(1, q_i)`, given as `(q_i, n_i)`.
pub fn central_self_intersection(fiber: &[(i64, i64)]) -> Result<Rational> {
    let total: Rational = fiber.iter().map(|&(q, d)| rat(q, d)).sum();
    let value = -total;
    if !value.is_integer() {
        return Err(Error::Invariant(format!("fibre types give non-integral self-intersection {value}")));
    }
    Ok(value)
}

/// The automorphism studied is induced by `id x h^c` where `h` is the glued
/// generator on the second factor: `c = 1` for prime order, `c = 2` for
/// order `2p`, so that it always has order `p`.
pub fn automorphism_exponent(order: i64) -> i64 {
    if order % 2 == 0 {
        2
    } else {
        1
    }
}

struct Class {
    first: usize,
    second: usize,
    d: i64,
    q: i64,
    count: i64,
    /// Pointwise-fixed flags of the rays, or `None` when the orbit is permuted.
    flags: Option<Vec<bool>>,
}

pub fn build_configuration(pair: &SurfacePair, sings: &[SingularityRecord]) -> Result<CurveConfiguration> {
    let n = pair.order();
    let c = automorphism_exponent(n);
    let first = pair.first.action.points();
    let second_curve = pair.glued_second();
    let second = second_curve.action.points();
    let mut config = CurveConfiguration {
        nodes: BTreeMap::new(),
        inter: BTreeMap::new(),
        fixed_points: Vec::new(),
        invariant_exceptional: 0,
    };

    let record = |i: usize, j: usize| sings.iter().find(|s| s.origin == (i, j));
    let integral = |v: Rational| to_integer(&v).ok_or_else(|| Error::Invariant(format!("non-integral value {v}")));

    let mut classes = Vec::new();
    for (i, a) in first.iter().enumerate() {
        for (j, b) in second.iter().enumerate() {
            let d = gcd(a.stabilizer, b.stabilizer);
            let count = (n / a.stabilizer) * (n / b.stabilizer) * d / n;
            let q = match (d, record(i, j)) {
                (1, _) => 0,
                (_, Some(r)) if r.d == d && r.count == count => r.q,
                _ => return Err(Error::Invariant(format!("missing singularity record for branch points ({i}, {j})"))),
            };
            let flags = match torus_element(n, c, a.stabilizer, a.rotation, b.stabilizer, b.rotation) {
                None => None,
                Some(t) => Some(chain_rays(d, q.max(1))?.iter().map(|w| ray_is_fixed(w, d, q.max(1), &t)).collect()),
            };
            classes.push(Class { first: i, second: j, d, q, count, flags });
        }
    }

    // Central curves of the first fibration come first, then the strings,
    // then the central curves of the second fibration.
    let mut next_id = 0;
    for (i, a) in first.iter().enumerate() {
        let fiber: Vec<(i64, i64)> = sings
            .iter()
            .filter(|s| s.origin.0 == i)
            .flat_map(|s| std::iter::repeat_n((s.q, s.d), s.count as usize))
            .collect();
        let genus = intermediate_quotient_genus(&second_curve.profile, n / a.stabilizer)?;
        config.add_node(CurveNode {
            id: next_id,
            kind: NodeKind::Central1 { point: i },
            self_int: integral(central_self_intersection(&fiber)?)?,
            genus,
            arithmetic_genus: genus,
            invariant: true,
            fixed: c % (n / a.stabilizer) == 0,
        });
        next_id += 1;
    }
    let chain_start = next_id;
    let chain_total: usize = classes
        .iter()
        .filter(|cl| cl.d > 1)
        .map(|cl| cl.count as usize * continued_fraction(cl.d, cl.q).map(|v| v.len()).unwrap_or(0))
        .sum();
    let central2_start = chain_start + chain_total;
    for (j, b) in second.iter().enumerate() {
        let fiber: Vec<(i64, i64)> = sings
            .iter()
            .filter(|s| s.origin.1 == j)
            .flat_map(|s| std::iter::repeat_n((s.dual_q(), s.d), s.count as usize))
            .collect();
        let genus = intermediate_quotient_genus(&pair.first.profile, n / b.stabilizer)?;
        config.add_node(CurveNode {
            id: central2_start + j,
            kind: NodeKind::Central2 { point: j },
            self_int: integral(central_self_intersection(&fiber)?)?,
            genus,
            arithmetic_genus: genus,
            invariant: true,
            fixed: c % (n / b.stabilizer) == 0,
        });
    }

    for cl in &classes {
        let y = cl.first;
        let z = central2_start + cl.second;
        if let Some(flags) = &cl.flags {
            let (fy, fz) = (config.nodes[&y].fixed, config.nodes[&z].fixed);
            if flags[0] != fy || flags[flags.len() - 1] != fz {
                return Err(Error::Invariant(format!(
                    "local fixed-curve rule disagrees with the central curves at ({}, {})",
                    cl.first, cl.second
                )));
            }
        }
        if cl.d == 1 {
            if cl.count > 0 {
                config.link(y, z, cl.count);
                if let Some(flags) = &cl.flags {
                    if !flags[0] && !flags[1] {
                        for _ in 0..cl.count {
                            config.fixed_points.push([y, z].into());
                        }
                    }
                }
            }
            continue;
        }
        let chain = continued_fraction(cl.d, cl.q)?;
        for copy in 0..cl.count as usize {
            let mut seq = vec![y];
            for (position, b) in chain.iter().enumerate() {
                let fixed = cl.flags.as_ref().is_some_and(|f| f[position + 1]);
                config.add_node(CurveNode {
                    id: next_id,
                    kind: NodeKind::Exceptional { first: cl.first, second: cl.second, copy, position },
                    self_int: -b,
                    genus: 0,
                    arithmetic_genus: 0,
                    invariant: cl.flags.is_some(),
                    fixed,
                });
                if cl.flags.is_some() {
                    config.invariant_exceptional += 1;
                }
                seq.push(next_id);
                next_id += 1;
            }
            seq.push(z);
            for w in seq.windows(2) {
                config.link(w[0], w[1], 1);
            }
            if let Some(flags) = &cl.flags {
                for (l, w) in seq.windows(2).enumerate() {
                    if !flags[l] && !flags[l + 1] {
                        config.fixed_points.push([w[0], w[1]].into());
                    }
                }
            }
        }
    }
    if next_id != central2_start {
        return Err(Error::Invariant("string bookkeeping is inconsistent".into()));
    }
    for node in config.nodes.values() {
        if node.fixed && config.neighbours(node.id).any(|(m, _)| config.nodes[&m].fixed) {
            return Err(Error::Invariant(format!("pointwise-fixed curves meet at node {}", node.id)));
        }
    }
    Ok(config)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::int;

    #[test]
    fn central_values() {
        assert_eq!(central_self_intersection(&[(1, 5), (1, 5), (3, 5)]).unwrap(), int(-1));
        assert_eq!(central_self_intersection(&[(2, 5); 5]).unwrap(), int(-2));
        assert_eq!(central_self_intersection(&[(2, 3); 3]).unwrap(), int(-2));
        assert!(central_self_intersection(&[(1, 3)]).is_err());
        assert_eq!(central_self_intersection(&[]).unwrap(), int(0));
    }
}
