//! Topological Lefschetz number of the automorphism, used to certify the
//! fixed locus computed from the configuration.

use crate::arith::{int, to_integer, CyclotomicNumber};
use crate::surfaces::SurfacePair;
use crate::{Error, Result};

use super::automorphism_exponent;

/// Trace of the automorphism on the invariant part of `H^1(C1) (x) H^1(C2)`.
pub fn middle_trace(pair: &SurfacePair) -> Result<i64> {
    let n = pair.order();
    let p = pair.first.action.group().prime();
    let c = automorphism_exponent(n);
    let first = &pair.first.profile;
    let second = &pair.glued_second().profile;
    let betti = |prof: &crate::curves::EigenspaceProfile, s: i64| prof.dim(s) + prof.dim(-s);
    let mut trace = CyclotomicNumber::zero(p)?;
    for s in 1..n {
        let mult = betti(first, -s) * betti(second, s);
        if mult != 0 {
            trace = trace.add(&CyclotomicNumber::root_of_unity(p, n, c * s)?.scale(&int(mult)))?;
        }
    }
    trace
        .as_rational()
        .as_ref()
        .and_then(to_integer)
        .ok_or_else(|| Error::Invariant(format!("trace {trace} on H^1 x H^1 is not an integer")))
}

/// Euler number of the fixed locus on the minimal model, from the
/// Lefschetz fixed-point formula. `invariant_exceptional` counts the
/// exceptional curves of the resolution mapped to themselves and
/// `invariant_contracted` the invariant curves contracted to reach the
/// minimal model.
pub fn expected_fixed_euler(
    pair: &SurfacePair,
    invariant_exceptional: usize,
    invariant_contracted: usize,
) -> Result<i64> {
    let h2 = 2 + middle_trace(pair)? + invariant_exceptional as i64 - invariant_contracted as i64;
    Ok(2 + h2)
}
