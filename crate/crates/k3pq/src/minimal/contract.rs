use std::collections::BTreeSet;

use super::{CurveConfiguration, NodeKind};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ContractionEvent {
    pub node: usize,
    pub kind: NodeKind,
    pub invariant: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ContractionOutcome {
    pub config: CurveConfiguration,
    pub log: Vec<ContractionEvent>,
    pub k2_current: i64,
    pub euler_current: i64,
    /// Set when contracting further would exceed `-K^2` of the resolution.
    pub undetermined: Option<String>,
    /// Set when an isolated fixed point sat on a curve that the automorphism
    /// moves, so its fate under the contraction is not tracked.
    pub untracked_fixed_point: Option<String>,
}

impl ContractionOutcome {
    pub fn count(&self) -> usize {
        self.log.len()
    }
}

fn next_exceptional(config: &CurveConfiguration) -> Option<usize> {
    config.nodes.values().find(|n| n.arithmetic_genus == 0 && n.self_int == -1).map(|n| n.id)
}

/// Contracts smooth rational `(-1)`-curves, smallest id first, until none
/// is left. `k2` and `euler` are the invariants of the resolution.
pub fn contract_to_minimal(mut config: CurveConfiguration, k2: i64, euler: i64) -> ContractionOutcome {
    let budget = -k2;
    let mut log = Vec::new();
    let mut undetermined = None;
    let mut untracked = None;
    while let Some(e) = next_exceptional(&config) {
        if log.len() as i64 >= budget {
            undetermined = Some(format!(
                "node {e} is still a (-1)-curve after {} contractions, the most a surface with K^2 = {k2} allows",
                log.len()
            ));
            break;
        }
        let node = config.nodes.remove(&e).expect("candidate exists");
        let nbrs: Vec<(usize, i64)> = config.inter.remove(&e).unwrap_or_default().into_iter().collect();
        for &(a, m) in &nbrs {
            config.inter.get_mut(&a).expect("symmetric").remove(&e);
            let target = config.nodes.get_mut(&a).expect("neighbour exists");
            target.self_int += m * m;
            target.arithmetic_genus += m * (m - 1) / 2;
        }
        for (x, &(a, ma)) in nbrs.iter().enumerate() {
            for &(b, mb) in &nbrs[x + 1..] {
                config.link(a, b, ma * mb);
            }
        }

        let (on_e, rest): (Vec<_>, Vec<_>) =
            std::mem::take(&mut config.fixed_points).into_iter().partition(|p| p.contains(&e));
        config.fixed_points = rest;
        if node.invariant {
            let location: BTreeSet<usize> = nbrs.iter().map(|&(a, _)| a).collect();
            let touches_fixed = location.iter().any(|a| config.nodes[a].fixed);
            // The image point is fixed; it is isolated unless it lies on a
            // pointwise-fixed curve, which happens only if the contracted
            // curve itself was not fixed.
            if node.fixed || !touches_fixed {
                config.fixed_points.push(location);
            }
        } else if !on_e.is_empty() {
            untracked = Some(format!("fixed point on the non-invariant contracted curve {e}"));
        }
        log.push(ContractionEvent { node: e, kind: node.kind, invariant: node.invariant });
    }
    let count = log.len() as i64;
    ContractionOutcome {
        config,
        log,
        k2_current: k2 + count,
        euler_current: euler - count,
        undetermined,
        untracked_fixed_point: untracked,
    }
}
