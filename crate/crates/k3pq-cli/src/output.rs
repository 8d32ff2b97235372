//! JSON Lines and TSV renderings of the records.

use std::io::{self, Write};

use k3pq::records::{CandidateRecord, CurveRecord, K3Flag, K3Record, VerdictRecord};
use k3pq::tables::{CellStatus, Route, VerificationReport};
use serde_json::json;

use super::Format;

fn json_lines<T: serde::Serialize>(out: &mut dyn Write, items: &[T]) -> io::Result<()> {
    for item in items {
        serde_json::to_writer(&mut *out, item)?;
        writeln!(out)?;
    }
    Ok(())
}

fn join<T: ToString>(values: impl IntoIterator<Item = T>, sep: &str) -> String {
    values.into_iter().map(|v| v.to_string()).collect::<Vec<_>>().join(sep)
}

fn branch(c: &CurveRecord) -> String {
    join(c.branch.iter().map(|[m, t, k]| format!("{k}×{m}:{t}")), " ")
}

fn singularities(c: &CandidateRecord) -> String {
    join(c.singularities.iter().map(|[k, d, q]| format!("{k}×{d}/{q}")), " ")
}

const CANDIDATE_HEADER: &str =
    "order\tg1\tg2\ttwist\tbranch1\tbranch2\tsingularities\tK2\teuler\tchi\tpg\tq\th11\tm\tk3_candidate";

fn candidate_row(c: &CandidateRecord) -> String {
    format!(
        "{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}",
        c.order,
        c.curve1.genus,
        c.curve2.genus,
        c.twist,
        branch(&c.curve1),
        branch(&c.curve2),
        singularities(c),
        c.k2,
        c.euler,
        c.chi,
        c.pg,
        c.q,
        c.h11,
        c.moduli_dim,
        c.k3_candidate
    )
}

pub fn curves(out: &mut dyn Write, format: Format, records: &[CurveRecord]) -> io::Result<()> {
    match format {
        Format::Json => json_lines(out, records),
        Format::Tsv => {
            writeln!(out, "order\tgenus\tbranch\talpha")?;
            for c in records {
                writeln!(out, "{}\t{}\t{}\t{}", c.order, c.genus, branch(c), join(&c.alpha, " "))?;
            }
            Ok(())
        }
    }
}

pub fn candidates(out: &mut dyn Write, format: Format, records: &[CandidateRecord]) -> io::Result<()> {
    match format {
        Format::Json => json_lines(out, records),
        Format::Tsv => {
            writeln!(out, "{CANDIDATE_HEADER}")?;
            for c in records {
                writeln!(out, "{}", candidate_row(c))?;
            }
            Ok(())
        }
    }
}

fn verdict_cells(v: &VerdictRecord) -> String {
    let flag = match &v.is_k3 {
        K3Flag::Decided(b) => b.to_string(),
        K3Flag::Other(s) => s.clone(),
    };
    let locus = match v.fixed_locus {
        Some((n, Some(g), k)) => format!("({n}, {g}, {k})"),
        Some((n, None, k)) => format!("({n}, -, {k})"),
        None => "-".into(),
    };
    format!("{flag}\t{}\t{locus}", v.contractions)
}

pub fn k3(out: &mut dyn Write, format: Format, records: &[K3Record]) -> io::Result<()> {
    match format {
        Format::Json => json_lines(out, records),
        Format::Tsv => {
            writeln!(out, "{CANDIDATE_HEADER}\tis_k3\tcontractions\tfixed_locus")?;
            for r in records {
                writeln!(out, "{}\t{}", candidate_row(&r.candidate), verdict_cells(&r.verdict))?;
            }
            Ok(())
        }
    }
}

fn status_name(s: &CellStatus) -> (&'static str, Option<&str>) {
    match s {
        CellStatus::Match => ("match", None),
        CellStatus::Mismatch => ("mismatch", None),
        CellStatus::Quarantined(r) => ("quarantined", Some(r)),
        CellStatus::Unverified(r) => ("unverified", Some(r)),
    }
}

fn route_name(r: &Route) -> String {
    match r {
        Route::Direct => "direct".into(),
        Route::Search { t1, t2 } => format!("search t1={t1} t2={t2}"),
        Route::NotFound(why) => format!("not found: {why}"),
    }
}

pub fn verification(out: &mut dyn Write, format: Format, report: &VerificationReport) -> io::Result<()> {
    match format {
        Format::Json => {
            let rows: Vec<_> = report
                .rows
                .iter()
                .map(|r| {
                    let cells: Vec<_> = r
                        .cells
                        .iter()
                        .map(|c| {
                            let (status, reason) = status_name(&c.status);
                            json!({
                                "cell": c.cell.to_string(),
                                "printed": c.printed,
                                "derived": c.derived,
                                "status": status,
                                "reason": reason,
                                "note": c.note,
                            })
                        })
                        .collect();
                    json!({
                        "table": r.table,
                        "row": r.row,
                        "p": r.p,
                        "route": route_name(&r.route),
                        "twist": r.twist,
                        "matched": r.is_matched(),
                        "cells": cells,
                    })
                })
                .collect();
            let doc = json!({
                "table": report.table,
                "rows": rows,
                "summary": {
                    "rows": report.rows.len(),
                    "matched": report.matched(),
                    "mismatched": report.mismatched(),
                    "unverified": report.unverified(),
                    "quarantined_cells": report.quarantined_cells(),
                },
            });
            serde_json::to_writer_pretty(&mut *out, &doc)?;
            writeln!(out)
        }
        Format::Tsv => {
            writeln!(out, "table\trow\tp\troute\ttwist\tcell\tstatus\tprinted\tderived\tdetail")?;
            for r in &report.rows {
                for c in &r.cells {
                    let (status, reason) = status_name(&c.status);
                    let detail = reason.or(c.note.as_deref()).unwrap_or("");
                    writeln!(
                        out,
                        "{}\t{}\t{}\t{}\t{}\t{}\t{status}\t{}\t{}\t{detail}",
                        r.table,
                        r.row,
                        r.p,
                        route_name(&r.route),
                        r.twist.map_or("-".into(), |t| t.to_string()),
                        c.cell,
                        c.printed,
                        c.derived
                    )?;
                }
            }
            Ok(())
        }
    }
}
