//! Diagonal quotients `(C1 x C2)/G` and their numerical invariants.

mod invariants;
mod pair;
mod scan;
mod singularities;

pub use invariants::{chern_invariants, hodge_numbers, moduli_dimension, SurfaceInvariants};
pub use pair::{geometric_genus, pair_admissible, SurfacePair};
pub use scan::{full_scan, scan, Candidate, CandidateKey};
pub use singularities::{oriented_multiset, singularity_multiset, unoriented_multiset, SingularityRecord};
