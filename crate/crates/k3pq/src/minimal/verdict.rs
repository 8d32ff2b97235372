use crate::surfaces::Candidate;
use crate::Result;

use super::{build_configuration, contract_to_minimal, expected_fixed_euler, ContractionOutcome, CurveConfiguration};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum K3Status {
    K3,
    NotK3,
    Undetermined,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Verdict {
    pub status: K3Status,
    /// Failed conditions when the status is not `K3`.
    pub reasons: Vec<String>,
    pub undetermined_reason: Option<String>,
}

/// Fixed locus of the order-`p` automorphism on the minimal model: isolated
/// points, number of fixed curves and the largest genus among them.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FixedLocus {
    pub n_points: usize,
    pub top_genus: Option<i64>,
    pub num_curves: usize,
    pub curve_genera: Vec<i64>,
    /// Why the answer could not be certified, if it could not.
    pub unverified: Option<String>,
}

impl FixedLocus {
    /// `(n, g, k+1)` as in the reference tables.
    pub fn triple(&self) -> (usize, Option<i64>, usize) {
        (self.n_points, self.top_genus, self.num_curves)
    }

    /// Topological Euler number of the fixed locus.
    pub fn euler(&self) -> i64 {
        self.n_points as i64 + self.curve_genera.iter().map(|g| 2 - 2 * g).sum::<i64>()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct K3Analysis {
    pub verdict: Verdict,
    pub contraction: Option<ContractionOutcome>,
    pub fixed_locus: Option<FixedLocus>,
}

impl K3Analysis {
    pub fn contractions(&self) -> usize {
        self.contraction.as_ref().map_or(0, ContractionOutcome::count)
    }

    pub fn is_k3(&self) -> bool {
        self.verdict.status == K3Status::K3
    }
}

fn hodge_gate(candidate: &Candidate) -> Vec<String> {
    let inv = &candidate.invariants;
    let mut reasons = Vec::new();
    if inv.pg != 1 {
        reasons.push(format!("p_g = {}", inv.pg));
    }
    if inv.q != 0 {
        reasons.push(format!("q = {}", inv.q));
    }
    if inv.chi_int() != 2 {
        reasons.push(format!("chi = {}", inv.chi));
    }
    reasons
}

/// The minimal model is K3 when the Hodge numbers are right, exactly `-K^2`
/// curves were contracted, no `(-1)`-curve remains, every remaining curve
/// satisfies adjunction with trivial canonical class and the Euler number
/// drops to 24.
pub fn k3_verdict(candidate: &Candidate, outcome: &ContractionOutcome) -> Verdict {
    let inv = &candidate.invariants;
    let mut reasons = hodge_gate(candidate);
    if let Some(why) = &outcome.undetermined {
        return Verdict { status: K3Status::Undetermined, reasons, undetermined_reason: Some(why.clone()) };
    }
    let count = outcome.count() as i64;
    if count != -inv.k2_int() {
        reasons.push(format!("{count} contractions but K^2 = {}", inv.k2));
    }
    let final_config = &outcome.config;
    if final_config.nodes().any(|n| n.arithmetic_genus == 0 && n.self_int == -1) {
        reasons.push("a (-1)-curve remains".into());
    }
    if let Some(n) = final_config.nodes().find(|n| n.self_int != 2 * n.arithmetic_genus - 2) {
        reasons.push(format!(
            "curve {} has self-intersection {} and arithmetic genus {}",
            n.id, n.self_int, n.arithmetic_genus
        ));
    }
    if outcome.euler_current != 24 {
        reasons.push(format!("Euler number of the minimal model is {}", outcome.euler_current));
    }
    let status = if reasons.is_empty() { K3Status::K3 } else { K3Status::NotK3 };
    Verdict { status, reasons, undetermined_reason: None }
}

/// Reads off the fixed locus from the contracted configuration and checks
/// its Euler number against the Lefschetz formula.
pub fn fixed_locus(
    candidate: &Candidate,
    initial: &CurveConfiguration,
    outcome: &ContractionOutcome,
) -> Result<FixedLocus> {
    let final_config = &outcome.config;
    let fixed: Vec<_> = final_config.nodes().filter(|n| n.fixed).collect();
    let curve_genera: Vec<i64> = fixed.iter().map(|n| n.genus).collect();
    let mut locus = FixedLocus {
        n_points: final_config.fixed_points().len(),
        top_genus: curve_genera.iter().copied().max(),
        num_curves: fixed.len(),
        curve_genera,
        unverified: outcome.untracked_fixed_point.clone(),
    };
    if let Some(n) = fixed.iter().find(|n| n.genus != n.arithmetic_genus) {
        locus.unverified = Some(format!("fixed curve {} acquired singularities during contraction", n.id));
    }
    let contracted_invariant = outcome.log.iter().filter(|e| e.invariant).count();
    let expected = expected_fixed_euler(&candidate.pair, initial.invariant_exceptional(), contracted_invariant)?;
    if locus.unverified.is_none() && locus.euler() != expected {
        locus.unverified =
            Some(format!("fixed locus has Euler number {} but the Lefschetz number is {expected}", locus.euler()));
    }
    Ok(locus)
}

/// Full pipeline for one candidate.
pub fn analyse(candidate: &Candidate) -> Result<K3Analysis> {
    let gate = hodge_gate(candidate);
    if !gate.is_empty() {
        return Ok(K3Analysis {
            verdict: Verdict { status: K3Status::NotK3, reasons: gate, undetermined_reason: None },
            contraction: None,
            fixed_locus: None,
        });
    }
    let initial = build_configuration(&candidate.pair, &candidate.singularities)?;
    let outcome = contract_to_minimal(initial.clone(), candidate.invariants.k2_int(), candidate.invariants.euler_int());
    let verdict = k3_verdict(candidate, &outcome);
    let fixed_locus = match verdict.status {
        K3Status::K3 => Some(fixed_locus(candidate, &initial, &outcome)?),
        _ => None,
    };
    Ok(K3Analysis { verdict, contraction: Some(outcome), fixed_locus })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curves::{dp_delta, dp_tau, Curve, CurveAction, GroupSpec};
    use crate::minimal::NodeKind;
    use crate::surfaces::SurfacePair;

    fn candidate(p: i64, doubled: bool, counts: &[i64], twist: i64) -> Candidate {
        let g = GroupSpec::new(p, doubled).unwrap();
        let c1 = Curve::new(CurveAction::from_table_counts(g, counts).unwrap()).unwrap();
        let c2 = Curve::new(if doubled { dp_tau(p) } else { dp_delta(p) }.unwrap()).unwrap();
        Candidate::new(SurfacePair::new(c1, c2, twist).unwrap()).unwrap()
    }

    #[test]
    fn five_point_example() {
        let cand = candidate(5, false, &[0, 0, 0, 5], 1);
        let a = analyse(&cand).unwrap();
        assert!(a.is_k3(), "{:?}", a.verdict);
        let log = &a.contraction.as_ref().unwrap().log;
        assert_eq!(log.len(), 12);
        assert!(log[..5].iter().all(|e| matches!(e.kind, NodeKind::Central1 { .. })));
        assert!(log[5..10].iter().all(|e| matches!(e.kind, NodeKind::Exceptional { position: 0, .. })));
        assert!(log[10..].iter().all(|e| matches!(e.kind, NodeKind::Central2 { .. })));
        let fl = a.fixed_locus.unwrap();
        assert_eq!(fl.triple(), (7, Some(0), 1));
        assert_eq!(fl.unverified, None);
    }

    #[test]
    fn minimal_without_contraction() {
        let a = analyse(&candidate(3, false, &[3, 0], 1)).unwrap();
        assert!(a.is_k3());
        assert_eq!(a.contractions(), 0);
        assert_eq!(a.fixed_locus.unwrap().triple(), (9, Some(0), 6));
    }

    #[test]
    fn doubled_top_genus() {
        let a = analyse(&candidate(3, true, &[0, 12, 0, 0, 0], 1)).unwrap();
        assert!(a.is_k3());
        assert_eq!(a.contractions(), 36);
        assert_eq!(a.fixed_locus.unwrap().triple(), (0, Some(5), 2));
    }

    #[test]
    fn hodge_gate_blocks() {
        let d3 = Curve::new(dp_delta(3).unwrap()).unwrap();
        let cand = Candidate::new(SurfacePair::new(d3.clone(), d3, 1).unwrap()).unwrap();
        let a = analyse(&cand).unwrap();
        assert_eq!(a.verdict.status, K3Status::NotK3);
        assert!(a.contraction.is_none());
    }
}
