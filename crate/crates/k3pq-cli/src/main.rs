use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use k3pq::curves::{enumerate_curves, BranchCount, GroupSpec};
use k3pq::minimal::analyse;
use k3pq::records::{CandidateRecord, CurveRecord, K3Record};
use k3pq::surfaces::{full_scan, scan, Candidate};
use k3pq::tables::verify_table;
use rayon::prelude::*;

mod output;

#[derive(Parser)]
#[command(name = "k3pq", version, about = "Product-quotient surfaces with K3 minimal model")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    common: Common,
}

#[derive(Args)]
struct Common {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    format: Format,
    /// Worker threads (defaults to the available parallelism).
    #[arg(long, global = true)]
    jobs: Option<usize>,
    /// Write output here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Tsv,
}

#[derive(Subcommand)]
enum Command {
    /// Enumerate cyclic covers of the line with a one-dimensional eigenspace.
    Curves(CurvesArgs),
    /// Pair curves into surfaces with p_g = 1 and q = 0.
    Classify(ClassifyArgs),
    /// Run the minimal-model pipeline on the candidates of `classify`.
    K3(K3Args),
    /// Check the pipeline against a bundled reference table.
    Verify(VerifyArgs),
}

#[derive(Args)]
struct CurvesArgs {
    /// Group order, p or 2p for an odd prime p <= 19.
    #[arg(long)]
    order: i64,
    /// Exact number of branch points.
    #[arg(long, conflicts_with = "max_branch_points", required_unless_present = "max_branch_points")]
    branch_points: Option<usize>,
    /// Upper bound on the number of branch points.
    #[arg(long)]
    max_branch_points: Option<usize>,
    /// Require the one-dimensional eigenvalue to have order exactly n.
    #[arg(long)]
    primitive_only: bool,
}

#[derive(Args)]
struct ClassifyArgs {
    #[arg(long)]
    order: i64,
    /// Branch points of the first curve. Omit both counts for a complete
    /// scan of a prime order.
    #[arg(long, requires = "t2")]
    t1: Option<usize>,
    /// Branch points of the second curve.
    #[arg(long, requires = "t1")]
    t2: Option<usize>,
}

#[derive(Args)]
struct K3Args {
    #[command(flatten)]
    classify: ClassifyArgs,
    /// Also report candidates with chi != 2.
    #[arg(long)]
    all: bool,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long, value_parser = clap::value_parser!(u8).range(1..=2))]
    table: u8,
    /// Restrict to one prime, written `p=N`.
    #[arg(long, value_parser = parse_rows)]
    rows: Option<i64>,
}

fn parse_rows(s: &str) -> Result<i64, String> {
    s.strip_prefix("p=").and_then(|v| v.parse().ok()).ok_or_else(|| format!("expected p=N, got {s:?}"))
}

/// Process outcome: success, a verification mismatch, or unusable input.
enum Failure {
    Mismatch,
    Input(String),
}

impl From<k3pq::Error> for Failure {
    fn from(e: k3pq::Error) -> Self {
        Failure::Input(e.to_string())
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Input(e.to_string())
    }
}

fn candidates(args: &ClassifyArgs) -> Result<Vec<Candidate>, Failure> {
    let group = GroupSpec::from_order(args.order)?;
    Ok(match (args.t1, args.t2) {
        (Some(t1), Some(t2)) => scan(group, t1, t2)?,
        _ => full_scan(group)?,
    })
}

fn run(cli: Cli) -> Result<(), Failure> {
    let mut sink: Box<dyn Write> = match &cli.common.out {
        Some(path) => Box::new(BufWriter::new(File::create(path)?)),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    };
    let format = cli.common.format;
    match cli.command {
        Command::Curves(args) => {
            let group = GroupSpec::from_order(args.order)?;
            let count = match (args.branch_points, args.max_branch_points) {
                (Some(r), _) => BranchCount::Exactly(r),
                (None, Some(r)) => BranchCount::AtMost(r),
                (None, None) => unreachable!("clap requires one of the counts"),
            };
            let curves = enumerate_curves(group, count, true, args.primitive_only)?;
            let records: Vec<CurveRecord> = curves.iter().map(CurveRecord::from).collect();
            output::curves(&mut sink, format, &records)?;
        }
        Command::Classify(args) => {
            let records: Vec<CandidateRecord> = candidates(&args)?.iter().map(CandidateRecord::from).collect();
            output::candidates(&mut sink, format, &records)?;
        }
        Command::K3(args) => {
            let list: Vec<Candidate> =
                candidates(&args.classify)?.into_iter().filter(|c| args.all || c.is_k3_candidate()).collect();
            let records = list
                .par_iter()
                .map(|c| analyse(c).map(|a| K3Record { candidate: c.into(), verdict: (&a).into() }))
                .collect::<Result<Vec<_>, _>>()?;
            output::k3(&mut sink, format, &records)?;
        }
        Command::Verify(args) => {
            let report = verify_table(args.table, args.rows)?;
            output::verification(&mut sink, format, &report)?;
            sink.flush()?;
            eprintln!(
                "table {}: {} rows, {} matched, {} mismatched, {} unverified, {} quarantined cells",
                report.table,
                report.rows.len(),
                report.matched(),
                report.mismatched(),
                report.unverified(),
                report.quarantined_cells()
            );
            if report.mismatched() > 0 {
                return Err(Failure::Mismatch);
            }
        }
    }
    sink.flush()?;
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(2) } else { ExitCode::SUCCESS };
        }
    };
    if let Some(jobs) = cli.common.jobs {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(jobs.max(1)).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Mismatch) => ExitCode::from(1),
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
