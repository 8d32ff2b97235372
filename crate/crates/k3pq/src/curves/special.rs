use crate::Result;

use super::{BranchPoint, CurveAction, GroupSpec};

/// The hyperelliptic curve `u^p = v^2 - 1` with the order-`p` automorphism
/// `u -> z u`.
pub fn dp_delta(p: i64) -> Result<CurveAction> {
    let group = GroupSpec::new(p, false)?;
    let inverse = BranchPoint::new(group, p, p - 1)?;
    let half = BranchPoint::new(group, p, (p + 1) / 2)?;
    CurveAction::new(group, vec![inverse, inverse, half])
}

/// The same curve with the order-`2p` automorphism obtained by composing with
/// the hyperelliptic involution.
pub fn dp_tau(p: i64) -> Result<CurveAction> {
    let group = GroupSpec::new(p, true)?;
    let points =
        vec![BranchPoint::new(group, 2 * p, 1)?, BranchPoint::new(group, p, p - 2)?, BranchPoint::new(group, 2, 1)?];
    CurveAction::new(group, points)
}
