//! Configuration of curves on the resolution, contraction to the minimal
//! model, the K3 criterion and the fixed locus of the induced automorphism.

mod config;
mod contract;
mod lefschetz;
mod toric;
mod verdict;

pub use config::{
    automorphism_exponent, build_configuration, central_self_intersection, CurveConfiguration, CurveNode, NodeKind,
};
pub use contract::{contract_to_minimal, ContractionEvent, ContractionOutcome};
pub use lefschetz::{expected_fixed_euler, middle_trace};
pub use toric::{chain_rays, ray_is_fixed, torus_element};
pub use verdict::{analyse, fixed_locus, k3_verdict, FixedLocus, K3Analysis, K3Status, Verdict};
