//! Argument parsing and command dispatch.

use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use intlat_core::arithmetic::{jacobi_r4, jacobi_r6, jacobi_r8};
use intlat_core::bounds::{verify_census_against_bounds, BoundSet};
use intlat_core::enumeration::{census_oracle_with_limit, census_zn_dp};
use intlat_core::lattice::make_lattice;
use intlat_core::roots::{check_root_axioms, extract_root_system_with_limit, k2_report};
use intlat_core::theta::{
    conjecture_test_census, mass_from_census, tau_star, verify_corollary_census, ConjectureVerdict,
};
use intlat_core::{Census, Error, Lattice, LatticeDescriptor, DEFAULT_NODE_LIMIT};
use num_bigint::BigInt;

use crate::descriptor::load_descriptor;
use crate::parallel::count_by_norm_parallel;
use crate::report::{self, Cell, Format, Report, Table};

pub const EXIT_PASS: i32 = 0;
pub const EXIT_ASSERTION: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_RESOURCE: i32 = 3;

#[derive(Debug, Parser)]
#[command(
    name = "intlat",
    version,
    about = "Short-vector counts and bounds for integral lattices"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Write the report here instead of standard output.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Csv, global = true)]
    pub format: Format,
    /// Ceiling on enumeration nodes (box points for the oracle).
    #[arg(long, global = true)]
    pub node_limit: Option<u64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MethodArg {
    Pruned,
    Dp,
    Oracle,
}

#[derive(Debug, Args)]
pub struct LatticeArg {
    /// JSON lattice descriptor.
    #[arg(long)]
    pub lattice: PathBuf,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Count lattice vectors by squared norm.
    Census {
        #[command(flatten)]
        lattice: LatticeArg,
        #[arg(long)]
        max_norm: u64,
        #[arg(long, value_enum, default_value_t = MethodArg::Pruned)]
        method: MethodArg,
    },
    /// Tabulate the closed-form bounds for k = 1..=K.
    Bounds {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: u64,
        /// Constant in the reverse-Minkowski-style bound.
        #[arg(long, default_value_t = 1.0)]
        rm_constant: f64,
    },
    /// Census, count bounds, root system and Gaussian-mass check in one pass.
    Verify {
        #[command(flatten)]
        lattice: LatticeArg,
        #[arg(long, default_value_t = 2)]
        max_norm: u64,
    },
    /// Certified Gaussian mass at each tau.
    Theta {
        #[command(flatten)]
        lattice: LatticeArg,
        /// Defaults to 2 log(2n).
        #[arg(long, value_delimiter = ',')]
        tau: Vec<f64>,
        #[arg(long, default_value_t = 8)]
        max_norm: u64,
    },
    /// Sums-of-squares formulas against direct counts.
    Jacobi {
        #[arg(long, default_value_t = 20)]
        max_norm: u64,
    },
    /// Root system of the norm-1 and norm-2 vectors.
    Roots {
        #[command(flatten)]
        lattice: LatticeArg,
    },
    /// Experimental: compare Gaussian mass with that of Z^n.
    Conjecture {
        #[command(flatten)]
        lattice: LatticeArg,
        /// Defaults to 1, 2, 4 and 2 log(2n).
        #[arg(long, value_delimiter = ',')]
        tau: Vec<f64>,
        #[arg(long, default_value_t = 8)]
        max_norm: u64,
    },
}

/// Why a command did not pass, mapped onto the exit codes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Failure {
    Usage(String),
    Resource(String),
    Assertion(String),
}

impl Failure {
    pub fn exit_code(&self) -> i32 {
        match self {
            Failure::Usage(_) => EXIT_USAGE,
            Failure::Resource(_) => EXIT_RESOURCE,
            Failure::Assertion(_) => EXIT_ASSERTION,
        }
    }

    pub fn message(&self) -> &str {
        match self {
            Failure::Usage(m) | Failure::Resource(m) | Failure::Assertion(m) => m,
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Failure {
        match e {
            Error::ResourceLimitExceeded { .. } | Error::EntryOverflow => {
                Failure::Resource(e.to_string())
            }
            Error::TailNotCertifiable { .. } | Error::SizeExceedsClassification { .. } => {
                Failure::Assertion(e.to_string())
            }
            _ => Failure::Usage(e.to_string()),
        }
    }
}

/// A finished report and whether every assertion in it held.
#[derive(Debug, Clone, PartialEq)]
pub struct Outcome {
    pub report: Report,
    pub passed: bool,
}

struct Loaded {
    descriptor: LatticeDescriptor,
    lattice: Lattice,
}

fn load(path: &Path) -> Result<Loaded, Failure> {
    let descriptor = load_descriptor(path).map_err(|e| Failure::Usage(e.to_string()))?;
    let lattice = make_lattice(&descriptor)?;
    Ok(Loaded {
        descriptor,
        lattice,
    })
}

fn need_positive(name: &str, v: u64) -> Result<(), Failure> {
    if v == 0 {
        return Err(Failure::Usage(format!("{name} must be at least 1")));
    }
    Ok(())
}

fn check_taus(taus: &[f64]) -> Result<(), Failure> {
    match taus.iter().find(|t| !(t.is_finite() && **t > 0.0)) {
        Some(t) => Err(Failure::Usage(format!(
            "tau must be a positive real, got {t}"
        ))),
        None => Ok(()),
    }
}

fn lattice_meta(r: Report, l: &Loaded) -> Report {
    r.meta("lattice", l.lattice.id())
        .meta("n", l.lattice.rank())
        .meta(
            "det",
            serde_json::Value::String(l.lattice.det_gram().to_string()),
        )
}

/// Runs one command and builds its report without touching the terminal.
pub fn execute(command: &Command, node_limit: Option<u64>) -> Result<Outcome, Failure> {
    let limit = node_limit.unwrap_or(DEFAULT_NODE_LIMIT);
    match command {
        Command::Census {
            lattice,
            max_norm,
            method,
        } => {
            need_positive("--max-norm", *max_norm)?;
            let l = load(&lattice.lattice)?;
            let census = match method {
                MethodArg::Pruned => count_by_norm_parallel(&l.lattice, *max_norm, limit)?,
                MethodArg::Oracle => census_oracle_with_limit(&l.lattice, *max_norm, limit)?,
                MethodArg::Dp => match l.descriptor.as_zn_rank() {
                    Some(n) => census_zn_dp(n, *max_norm),
                    None => {
                        return Err(Failure::Usage(format!(
                            "--method dp only applies to Z^n, not {}",
                            l.lattice.id()
                        )))
                    }
                },
            };
            let report = report::census_report(&l.lattice.id(), &census);
            Ok(Outcome {
                report,
                passed: true,
            })
        }
        Command::Bounds { n, k, rm_constant } => {
            if *n == 0 {
                return Err(Failure::Usage("--n must be at least 1".into()));
            }
            need_positive("--k", *k)?;
            if !rm_constant.is_finite() || *rm_constant <= 0.0 {
                return Err(Failure::Usage(
                    "--rm-constant must be a positive real".into(),
                ));
            }
            let sets: Vec<BoundSet> = (1..=*k)
                .map(|k| BoundSet::new(*n, k, *rm_constant))
                .collect();
            let mut report = Report::new("bounds").meta("rm_constant", *rm_constant);
            report.tables.push(report::bound_set_table(&sets));
            Ok(Outcome {
                report,
                passed: true,
            })
        }
        Command::Verify { lattice, max_norm } => {
            need_positive("--max-norm", *max_norm)?;
            let l = load(&lattice.lattice)?;
            verify(&l, *max_norm, limit)
        }
        Command::Theta {
            lattice,
            tau,
            max_norm,
        } => {
            need_positive("--max-norm", *max_norm)?;
            check_taus(tau)?;
            let l = load(&lattice.lattice)?;
            let taus = if tau.is_empty() {
                vec![tau_star(l.lattice.rank())]
            } else {
                tau.clone()
            };
            let census = count_by_norm_parallel(&l.lattice, *max_norm, limit)?;
            let evals: Vec<_> = taus.iter().map(|&t| mass_from_census(&census, t)).collect();
            let mut report = lattice_meta(Report::new("theta"), &l);
            for e in evals.iter().filter(|e| !e.certified) {
                report
                    .notes
                    .push(format!("tail not certified at tau={}", e.tau));
            }
            report.tables.push(report::theta_table(&evals));
            Ok(Outcome {
                report,
                passed: true,
            })
        }
        Command::Jacobi { max_norm } => {
            need_positive("--max-norm", *max_norm)?;
            jacobi(*max_norm, limit)
        }
        Command::Roots { lattice } => {
            let l = load(&lattice.lattice)?;
            let system = extract_root_system_with_limit(&l.lattice, limit)?;
            let axioms = check_root_axioms(&l.lattice, &system)?;
            let k2 = k2_report(&system);
            let mut report = lattice_meta(Report::new("roots"), &l);
            report.tables.push(report::roots_table(&system));
            if !axioms.pass() {
                report.notes.push(format!(
                    "root axioms fail: {} non-integral ratios, {} missing reflections",
                    axioms.non_integral, axioms.not_closed
                ));
            }
            report.notes.push(report::k2_verdict(&k2));
            Ok(Outcome {
                report,
                passed: axioms.pass() && k2.pass(),
            })
        }
        Command::Conjecture {
            lattice,
            tau,
            max_norm,
        } => {
            need_positive("--max-norm", *max_norm)?;
            check_taus(tau)?;
            let l = load(&lattice.lattice)?;
            let taus = if tau.is_empty() {
                vec![1.0, 2.0, 4.0, tau_star(l.lattice.rank())]
            } else {
                tau.clone()
            };
            let census = count_by_norm_parallel(&l.lattice, *max_norm, limit)?;
            let rows = conjecture_test_census(&census, &taus);
            let mut report = lattice_meta(Report::new("conjecture"), &l).meta("experimental", true);
            for r in rows
                .iter()
                .filter(|r| r.verdict == ConjectureVerdict::Violated)
            {
                report.notes.push(format!(
                    "VIOLATED at tau={}: mass exceeds that of Z^n",
                    r.tau
                ));
            }
            report.tables.push(report::conjecture_table(&rows));
            // experimental: verdicts never fail the run
            Ok(Outcome {
                report,
                passed: true,
            })
        }
    }
}

/// Truncation used for the Gaussian-mass check in `verify`. Below this the
/// certified tail can exceed the closed form even for `Z^n`.
pub const MASS_TRUNCATION: u64 = 6;

fn verify(l: &Loaded, max_norm: u64, limit: u64) -> Result<Outcome, Failure> {
    let deep: Census = count_by_norm_parallel(&l.lattice, max_norm.max(MASS_TRUNCATION), limit)?;
    let census = deep.truncated(max_norm)?;
    let bounds = verify_census_against_bounds(&l.lattice.id(), &census);
    let system = extract_root_system_with_limit(&l.lattice, limit)?;
    let axioms = check_root_axioms(&l.lattice, &system)?;
    let k2 = k2_report(&system);
    let corollary = verify_corollary_census(&deep)?;

    let mut report = lattice_meta(Report::new("verify"), l);
    report.tables.push(report::census_table(&census));
    report.tables.push(report::bound_report_table(&bounds));
    report.tables.push(report::roots_table(&system));
    report.tables.push(report::corollary_table(&corollary));
    if let Some(row) = bounds.violation() {
        report
            .notes
            .push(format!("count bound fails at k={}", row.k));
    }
    if !axioms.pass() {
        report.notes.push("root axioms fail".into());
    }
    report.notes.push(report::k2_verdict(&k2));
    let passed = bounds.pass() && axioms.pass() && k2.pass() && corollary.pass();
    report
        .notes
        .push(format!("verdict={}", if passed { "pass" } else { "fail" }));
    Ok(Outcome { report, passed })
}

fn jacobi(max_norm: u64, limit: u64) -> Result<Outcome, Failure> {
    let mut counts = Vec::new();
    for n in [4usize, 6, 8] {
        let lattice = make_lattice(&LatticeDescriptor::zn(n))?;
        let pruned = count_by_norm_parallel(&lattice, max_norm, limit)?;
        let dp = census_zn_dp(n, max_norm);
        if !pruned.same_counts(&dp) {
            return Err(Failure::Assertion(format!(
                "pruned and dp counts disagree on Z{n}"
            )));
        }
        counts.push(dp);
    }
    let mut table = Table::new("jacobi", &["k", "r4", "r6", "r8", "census_match"]);
    let mut passed = true;
    for k in 1..=max_norm {
        let m = |i: usize| BigInt::from(counts[i].on_sphere(k).clone());
        let r4 = jacobi_r4(k).ok();
        let (r6, r8) = (jacobi_r6(k), jacobi_r8(k));
        let ok = r4.as_ref().is_none_or(|r| *r == m(0)) && r6 == m(1) && r8 == m(2);
        passed &= ok;
        table.push(vec![
            Cell::int(k),
            r4.map_or(Cell::Empty, Cell::int),
            Cell::int(r6),
            Cell::int(r8),
            Cell::Bool(ok),
        ]);
    }
    let mut report = Report::new("jacobi");
    report.tables.push(table);
    Ok(Outcome { report, passed })
}

fn emit(text: &str, out: Option<&Path>) -> Result<(), Failure> {
    match out {
        Some(path) => std::fs::write(path, text)
            .map_err(|e| Failure::Usage(format!("{}: {e}", path.display()))),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout
                .write_all(text.as_bytes())
                .and_then(|_| stdout.flush())
                .map_err(|e| Failure::Usage(format!("stdout: {e}")))
        }
    }
}

/// Executes a parsed invocation and returns the process exit code.
pub fn run(cli: &Cli) -> i32 {
    let result = execute(&cli.command, cli.node_limit).and_then(|outcome| {
        emit(&outcome.report.render(cli.format), cli.out.as_deref())?;
        Ok(outcome.passed)
    });
    match result {
        Ok(true) => EXIT_PASS,
        Ok(false) => {
            eprintln!("intlat: assertion failed");
            EXIT_ASSERTION
        }
        Err(f) => {
            eprintln!("intlat: {}", f.message());
            f.exit_code()
        }
    }
}

pub fn main() -> i32 {
    match Cli::try_parse() {
        Ok(cli) => run(&cli),
        Err(e) => {
            let _ = e.print();
            if e.use_stderr() {
                EXIT_USAGE
            } else {
                EXIT_PASS
            }
        }
    }
}
