//! Cyclic actions on curves with rational quotient.

mod action;
mod enumerate;
mod profile;
mod special;

pub use action::{genus, is_admissible, BranchPoint, CurveAction, GroupSpec, Inadmissible};
pub use enumerate::{
    canonical_key, canonicalize, enumerate_curves, max_genus_bound, stabilizer_twists, BranchCount, DOUBLED_BRANCH_CAP,
};
pub use profile::{
    chevalley_weil_value, eigenspace_profile, intermediate_quotient_genus, lefschetz_check, lefschetz_defects,
    EigenspaceProfile,
};
pub use special::{dp_delta, dp_tau};

use crate::Result;

/// A curve action together with its derived genus and eigenspace profile.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Curve {
    pub action: CurveAction,
    pub genus: i64,
    pub profile: EigenspaceProfile,
}

impl Curve {
    pub fn new(action: CurveAction) -> Result<Self> {
        is_admissible(&action)?;
        let genus = genus(&action)?;
        let profile = eigenspace_profile(&action)?;
        Ok(Curve { action, genus, profile })
    }

    /// The same curve with the generator `g` replaced by `g^t`.
    pub fn twisted(&self, t: i64) -> Result<Self> {
        Curve::new(self.action.twisted(t)?)
    }

    pub fn order(&self) -> i64 {
        self.action.group().order()
    }
}
