//! Serializable views of curves, candidates and verdicts.

use serde::{Deserialize, Serialize};

use crate::curves::Curve;
use crate::minimal::{K3Analysis, K3Status};
use crate::surfaces::{oriented_multiset, Candidate};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CurveRecord {
    pub order: i64,
    /// `[m, theta, count]`: `count` ramification points with stabilizer
    /// order `m` and rotation `theta`.
    pub branch: Vec<[i64; 3]>,
    pub genus: i64,
    pub alpha: Vec<i64>,
}

impl From<&Curve> for CurveRecord {
    fn from(c: &Curve) -> Self {
        CurveRecord {
            order: c.order(),
            branch: c.action.ramification().into_iter().map(|(m, t, k)| [m, t, k]).collect(),
            genus: c.genus,
            alpha: c.profile.dims().to_vec(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CandidateRecord {
    pub order: i64,
    pub curve1: CurveRecord,
    pub curve2: CurveRecord,
    pub twist: i64,
    /// `[count, d, q]` with the orientation of the first factor.
    pub singularities: Vec<[i64; 3]>,
    #[serde(rename = "K2")]
    pub k2: i64,
    pub euler: i64,
    pub chi: i64,
    pub pg: i64,
    pub q: i64,
    pub h11: i64,
    pub moduli_dim: i64,
    pub k3_candidate: bool,
}

impl From<&Candidate> for CandidateRecord {
    fn from(c: &Candidate) -> Self {
        let inv = &c.invariants;
        CandidateRecord {
            order: c.pair.order(),
            curve1: (&c.pair.first).into(),
            curve2: (&c.pair.second).into(),
            twist: c.pair.twist,
            singularities: oriented_multiset(&c.singularities).into_iter().map(|((d, q), k)| [k, d, q]).collect(),
            k2: inv.k2_int(),
            euler: inv.euler_int(),
            chi: inv.chi_int(),
            pg: inv.pg,
            q: inv.q,
            h11: inv.h11,
            moduli_dim: inv.moduli_dim,
            k3_candidate: c.is_k3_candidate(),
        }
    }
}

/// `true`, `false` or the string `"undetermined"`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum K3Flag {
    Decided(bool),
    Other(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerdictRecord {
    pub is_k3: K3Flag,
    pub contractions: usize,
    /// `[n, g, k+1]`, with `g` null when no curve is fixed.
    pub fixed_locus: Option<(usize, Option<i64>, usize)>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub undetermined_reason: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub unverified: Option<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub reasons: Vec<String>,
}

impl From<&K3Analysis> for VerdictRecord {
    fn from(a: &K3Analysis) -> Self {
        let is_k3 = match a.verdict.status {
            K3Status::K3 => K3Flag::Decided(true),
            K3Status::NotK3 => K3Flag::Decided(false),
            K3Status::Undetermined => K3Flag::Other("undetermined".into()),
        };
        VerdictRecord {
            is_k3,
            contractions: a.contractions(),
            fixed_locus: a.fixed_locus.as_ref().map(|f| f.triple()),
            undetermined_reason: a.verdict.undetermined_reason.clone(),
            unverified: a.fixed_locus.as_ref().and_then(|f| f.unverified.clone()),
            reasons: a.verdict.reasons.clone(),
        }
    }
}

/// A candidate together with the outcome of the K3 pipeline.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct K3Record {
    #[serde(flatten)]
    pub candidate: CandidateRecord,
    #[serde(flatten)]
    pub verdict: VerdictRecord,
}
