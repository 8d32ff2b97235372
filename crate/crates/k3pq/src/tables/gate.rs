use std::collections::BTreeMap;
use std::fmt;

use crate::arith::{gcd, int, rat, singularity_invariants, Rational};
use crate::curves::{genus, is_admissible, CurveAction, GroupSpec};
use crate::Result;

use super::FixtureRow;

/// A column of the reference tables, plus the derived checks attached to a row.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Cell {
    Genus,
    Alpha,
    BranchCounts,
    Singularities,
    K2,
    FixedLocus,
    Moduli,
    /// The minimal model is a K3 surface.
    Verdict,
    /// The surface is found again by the exhaustive search.
    Scan,
}

impl fmt::Display for Cell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            Cell::Genus => "g(C1)",
            Cell::Alpha => "alpha",
            Cell::BranchCounts => "branch counts",
            Cell::Singularities => "singularities",
            Cell::K2 => "K2",
            Cell::FixedLocus => "fixed locus",
            Cell::Moduli => "m",
            Cell::Verdict => "K3",
            Cell::Scan => "search",
        };
        f.write_str(name)
    }
}

/// Cells of a row that fail internal consistency, with the reason.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct GateReport {
    pub quarantined: BTreeMap<Cell, String>,
}

impl GateReport {
    pub fn is_quarantined(&self, cell: Cell) -> bool {
        self.quarantined.contains_key(&cell)
    }
}

fn branch_counts_problem(row: &FixtureRow, group: GroupSpec) -> Option<String> {
    let action = match CurveAction::from_table_counts(group, &row.branch_counts) {
        Ok(a) => a,
        Err(e) => return Some(e.to_string()),
    };
    if let Err(e) = is_admissible(&action) {
        return Some(e.to_string());
    }
    match genus(&action) {
        Ok(g) if g == row.g1 => None,
        Ok(g) => Some(format!("Riemann-Hurwitz gives genus {g}, the row says {}", row.g1)),
        Err(e) => Some(e.to_string()),
    }
}

fn alpha_problem(row: &FixtureRow, group: GroupSpec) -> Option<String> {
    let expected = group.order() - 1;
    if row.alpha_multiset.len() as i64 != expected {
        return Some(format!("{} entries instead of {expected}", row.alpha_multiset.len()));
    }
    if row.alpha_multiset.iter().any(|&a| a < 0) {
        return Some("negative dimension".into());
    }
    let total: i64 = row.alpha_multiset.iter().sum();
    (total != row.g1).then(|| format!("dimensions sum to {total}, the row says genus {}", row.g1))
}

fn singularity_problem(row: &FixtureRow, group: GroupSpec) -> Option<String> {
    let n = group.order();
    let partner_genus = (group.prime() - 1) / 2;
    let base = int((row.g1 - 1) * (partner_genus - 1));
    let mut k2: Rational = int(8) * &base / int(n);
    let mut euler: Rational = int(4) * &base / int(n);
    for &[count, d, q] in &row.singularities {
        if count <= 0 || d < 2 || n % d != 0 || q <= 0 || q >= d || gcd(q, d) != 1 {
            return Some(format!("{count} x {q}/{d} is not a singularity of a quotient by Z/{n}"));
        }
        let inv = singularity_invariants(d, q).expect("validated type");
        k2 += int(count) * inv.h;
        euler += int(count) * inv.e;
    }
    if k2 != int(row.k2) {
        return Some(format!("these singularities give K2 = {k2}, the row says {}", row.k2));
    }
    let total = &k2 + &euler;
    (total != int(24)).then(|| format!("Noether formula gives chi = {}", total * rat(1, 12)))
}

fn fixed_locus_problem(row: &FixtureRow) -> Option<String> {
    let (points, top, curves) = row.fixed_locus;
    if points < 0 || curves < 0 || top.is_some_and(|g| g < 0) {
        return Some("negative entry".into());
    }
    (top.is_none() != (curves == 0)).then(|| "a top genus is given if and only if some curve is fixed".into())
}

/// Internal-consistency checks of a printed row that do not use the
/// classification pipeline.
pub fn gate_row(row: &FixtureRow, doubled: bool) -> Result<GateReport> {
    let group = GroupSpec::new(row.p, doubled)?;
    let mut report = GateReport::default();
    let checks = [
        (Cell::BranchCounts, branch_counts_problem(row, group)),
        (Cell::Alpha, alpha_problem(row, group)),
        (Cell::Singularities, singularity_problem(row, group)),
        (Cell::FixedLocus, fixed_locus_problem(row)),
        (Cell::Moduli, (row.m < 0).then(|| "negative dimension".to_string())),
    ];
    for (cell, problem) in checks {
        if let Some(reason) = problem {
            report.quarantined.insert(cell, reason);
        }
    }
    Ok(report)
}
