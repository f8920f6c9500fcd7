//! The `cheeger` command line.
//!
//! ```text
//! cheeger analyze GRAPH
//! cheeger cheeger GRAPH --k K [--signed] [--sweep-from-eig J] [--max-states N]
//! cheeger verify [GRAPH | --corpus NAME|CONFIG] [--checks LIST] [--product GRAPH2 --k K]
//!                [--eps E] [--seed S] [--format json|csv|text] [-o FILE]
//! cheeger perturb GRAPH [--eps E] [--trials T] [--seed S]
//! cheeger gen --family F --n N [--a A] [--p P] [--w-min W] [--w-max W]
//!             [--measure degree|unit] [--p-negative Q] [--seed S] [--format json|edges] [-o FILE]
//! ```
//!
//! Exit codes: 0 success (every check holds), 1 violated or failed check,
//! 2 input error, 3 exhausted search budget.

use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use crate::bounds::{
    check_product_theorem, preset, run_corpus, verify_graph, CheckKind, CorpusConfig, Report,
    VerifyOptions, DEFAULT_SEED,
};
use crate::cheeger::{rho_exact, rho_signed_exact, rho_upper_nodal_sweep, SearchBudget};
use crate::graph::io::{read_graph, to_edge_list, to_json};
use crate::graph::{
    classify, cyclomatic, degree_profile, generate, Family, GenParams, MeasureKind,
};
use crate::perturb::{genericity_frequency, GenericityOptions};
use crate::spectral::{adjacency_eta, laplacian_spectrum, max_residual, EigenOptions};
use crate::{Error, Result};

#[derive(Debug, Parser)]
#[command(
    name = "cheeger",
    version,
    about = "Spectra, nodal domains and multi-way Cheeger constants of weighted graphs"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Spectrum, cyclomatic number, degree ratios and structure of a graph.
    Analyze { graph: PathBuf },
    /// Exact k-way (signed) Cheeger constant with its certificate.
    Cheeger {
        graph: PathBuf,
        #[arg(long)]
        k: usize,
        /// Signed constant over k-sub-bipartitions.
        #[arg(long)]
        signed: bool,
        /// Also sweep the nodal domains of eigenfunction J (1-based).
        #[arg(long, value_name = "J")]
        sweep_from_eig: Option<usize>,
        #[command(flatten)]
        budget: BudgetArgs,
    },
    /// Check the spectral bounds on a graph, a graph pair or a corpus.
    Verify(VerifyArgs),
    /// Genericity frequencies of random perturbations.
    Perturb {
        graph: PathBuf,
        #[arg(long, default_value_t = 0.05)]
        eps: f64,
        #[arg(long, default_value_t = 1000)]
        trials: usize,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        #[arg(long, default_value_t = 1e-10)]
        gap_tol: f64,
        #[arg(long, default_value_t = 1e-10)]
        zero_tol: f64,
    },
    /// Generate a graph.
    Gen(GenArgs),
}

#[derive(Debug, Args)]
pub struct BudgetArgs {
    /// Search-tree nodes allowed per exact constant.
    #[arg(long, default_value_t = SearchBudget::default().max_states)]
    pub max_states: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ReportFormat {
    Json,
    Csv,
    Text,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// Graph file (JSON or edge list). Omit when using --corpus.
    pub graph: Option<PathBuf>,
    /// Built-in corpus (standard, trees, signed, gn) or a corpus config file.
    #[arg(long, conflicts_with = "graph")]
    pub corpus: Option<String>,
    /// Second factor: check the product bound for GRAPH x PRODUCT.
    #[arg(long, requires = "graph", value_name = "GRAPH2")]
    pub product: Option<PathBuf>,
    /// Index of the product check.
    #[arg(long, default_value_t = 1)]
    pub k: usize,
    /// Comma-separated subset of main, nodal, lemma, lower, basics, floor.
    #[arg(long, value_delimiter = ',')]
    pub checks: Option<Vec<String>>,
    #[arg(long, default_value_t = 0.05)]
    pub eps: f64,
    #[arg(long, default_value_t = DEFAULT_SEED)]
    pub seed: u64,
    #[command(flatten)]
    pub budget: BudgetArgs,
    #[arg(long, value_enum, default_value_t = ReportFormat::Json)]
    pub format: ReportFormat,
    #[arg(short, long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum GraphFormat {
    Json,
    Edges,
}

#[derive(Debug, Args)]
pub struct GenArgs {
    #[arg(long)]
    pub family: Family,
    #[arg(long)]
    pub n: usize,
    #[arg(long, default_value_t = 1.1)]
    pub a: f64,
    #[arg(long, default_value_t = 0.3)]
    pub p: f64,
    #[arg(long)]
    pub left: Option<usize>,
    #[arg(long, default_value_t = 1.0)]
    pub w_min: f64,
    #[arg(long, default_value_t = 1.0)]
    pub w_max: f64,
    #[arg(long, value_enum, default_value_t = MeasureArg::Degree)]
    pub measure: MeasureArg,
    #[arg(long, default_value_t = 0.0)]
    pub p_negative: f64,
    #[arg(long, default_value_t = DEFAULT_SEED)]
    pub seed: u64,
    #[arg(long, value_enum, default_value_t = GraphFormat::Json)]
    pub format: GraphFormat,
    #[arg(short, long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MeasureArg {
    Degree,
    Unit,
}

/// Exit code for an error escaping a command.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::InvalidGraph(_)
        | Error::Parse(_)
        | Error::InvalidArgument(_)
        | Error::Hypothesis(_)
        | Error::Io(_) => 2,
        Error::BudgetExceeded { .. } => 3,
        Error::NoConvergence { .. } | Error::Residual { .. } | Error::NotGeneric(_) => 1,
    }
}

/// Parses `args` (program name first) and runs the command, writing results
/// to `out` and diagnostics to `err`. Returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() {
                let _ = write!(err, "{e}");
                2
            } else {
                let _ = write!(out, "{e}");
                0
            };
            return code;
        }
    };
    match execute(cli.command, out, err) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            exit_code(&e)
        }
    }
}

fn pretty(v: &impl serde::Serialize) -> String {
    serde_json::to_string_pretty(v).expect("reports always serialize") + "\n"
}

fn emit(text: &str, path: Option<&Path>, out: &mut dyn Write) -> Result<()> {
    match path {
        Some(p) => std::fs::write(p, text).map_err(|e| Error::Io(format!("{}: {e}", p.display()))),
        None => out.write_all(text.as_bytes()).map_err(Error::from),
    }
}

fn execute(command: Command, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32> {
    match command {
        Command::Analyze { graph } => analyze(&graph, out),
        Command::Cheeger {
            graph,
            k,
            signed,
            sweep_from_eig,
            budget,
        } => cheeger(
            &graph,
            k,
            signed,
            sweep_from_eig,
            budget.max_states,
            out,
            err,
        ),
        Command::Verify(args) => verify(args, out, err),
        Command::Perturb {
            graph,
            eps,
            trials,
            seed,
            gap_tol,
            zero_tol,
        } => {
            let g = read_graph(&graph)?;
            let f = genericity_frequency(
                &g,
                eps,
                trials,
                seed,
                &GenericityOptions { gap_tol, zero_tol },
            )?;
            emit(&pretty(&f), None, out)?;
            Ok(0)
        }
        Command::Gen(args) => {
            let params = GenParams {
                n: args.n,
                a: args.a,
                p: args.p,
                left: args.left,
                w_min: args.w_min,
                w_max: args.w_max,
                measure: match args.measure {
                    MeasureArg::Degree => MeasureKind::Degree,
                    MeasureArg::Unit => MeasureKind::Unit,
                },
                p_negative: args.p_negative,
            };
            let g = generate(args.family, &params, args.seed)?;
            let text = match args.format {
                GraphFormat::Json => to_json(&g) + "\n",
                GraphFormat::Edges => to_edge_list(&g),
            };
            emit(&text, args.output.as_deref(), out)?;
            Ok(0)
        }
    }
}

fn analyze(path: &Path, out: &mut dyn Write) -> Result<i32> {
    let g = read_graph(path)?;
    let spectrum = laplacian_spectrum(&g, &EigenOptions::default())?;
    let profile = degree_profile(&g);
    let eta = adjacency_eta(&g, &EigenOptions::default()).ok();
    let report = json!({
        "n": g.n(),
        "edges": g.edge_count(),
        "signed": g.is_signed(),
        "measure_is_degree": g.measure_is_degree(),
        "cyclomatic": cyclomatic(&g),
        "tau": profile.tau,
        "tau_min": profile.tau_min,
        "eta": eta.as_ref().map(|a| a.eta),
        "eta_values": eta.as_ref().map(|a| a.eta_values.clone()),
        "spectrum": {
            "values": spectrum.values,
            "clusters": spectrum.clusters,
            "max_residual": max_residual(&g, &spectrum),
        },
        "classification": classify(&g),
    });
    emit(&pretty(&report), None, out)?;
    Ok(0)
}

fn cheeger(
    path: &Path,
    k: usize,
    signed: bool,
    sweep_from_eig: Option<usize>,
    max_states: u64,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> Result<i32> {
    let g = read_graph(path)?;
    let budget = SearchBudget {
        max_states,
        allow_overflow: true,
    };
    let sweep = match sweep_from_eig {
        None => None,
        Some(j) => {
            if j == 0 || j > g.n() {
                return Err(Error::InvalidArgument(format!(
                    "--sweep-from-eig must lie in 1..={}",
                    g.n()
                )));
            }
            let s = laplacian_spectrum(&g, &EigenOptions::default())?;
            let sweep = rho_upper_nodal_sweep(&g, &s.functions[j - 1])?;
            Some(json!({
                "eigen_index": j,
                "lambda": s.values[j - 1],
                "m": sweep.m,
                "bound": sweep.bound,
                "parts": sweep.certificate.parts,
            }))
        }
    };
    let result = if signed {
        rho_signed_exact(&g, k, &budget)
    } else {
        rho_exact(&g, k, &budget)
    };
    let cert = match result {
        Ok(cert) => Some(cert),
        Err(Error::BudgetExceeded { best, .. }) => best.map(|b| *b),
        Err(e) => return Err(e),
    };
    let exact = cert.as_ref().is_some_and(|c| c.exact);
    let mut report = json!({ "certificate": cert });
    if let Some(s) = sweep {
        report["sweep"] = s;
    }
    emit(&pretty(&report), None, out)?;
    if exact {
        Ok(0)
    } else {
        let _ = writeln!(
            err,
            "error: search budget of {max_states} states exhausted; certificate is an upper bound"
        );
        Ok(3)
    }
}

fn parse_checks(names: &[String]) -> Result<Vec<CheckKind>> {
    names.iter().map(|s| s.trim().parse()).collect()
}

fn corpus_config(spec: &str) -> Result<CorpusConfig> {
    if crate::bounds::PRESETS.contains(&spec) {
        return preset(spec);
    }
    let text = std::fs::read_to_string(spec).map_err(|e| Error::Io(format!("{spec}: {e}")))?;
    serde_json::from_str(&text).map_err(|e| Error::Parse(format!("{spec}: {e}")))
}

fn verify(args: VerifyArgs, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32> {
    let checks = args.checks.as_deref().map(parse_checks).transpose()?;
    let mut opts = VerifyOptions {
        eps: args.eps,
        seed: args.seed,
        budget: SearchBudget::with_max_states(args.budget.max_states),
        ..VerifyOptions::default()
    };
    let report = match (&args.graph, &args.corpus) {
        (Some(path), None) => {
            let g = read_graph(path)?;
            let id = path
                .file_stem()
                .map(|s| s.to_string_lossy().into_owned())
                .unwrap_or_else(|| "graph".into());
            match &args.product {
                Some(path2) => {
                    let g2 = read_graph(path2)?;
                    let mut report = Report {
                        name: id.clone(),
                        ..Report::default()
                    };
                    let mut record =
                        check_product_theorem(&g, &g2, args.k, args.eps, args.seed, &opts.budget)?;
                    record.instance = id;
                    report.summary.instances = 1;
                    report.summary.records = 1;
                    report.summary.holds = usize::from(record.holds);
                    report.summary.violations = usize::from(!record.holds);
                    report.records.push(record);
                    report
                }
                None => {
                    let checks = checks.unwrap_or_else(|| {
                        vec![
                            CheckKind::Main,
                            CheckKind::Nodal,
                            CheckKind::Lemma,
                            CheckKind::Lower,
                            CheckKind::Basics,
                        ]
                    });
                    verify_graph(&id, &g, &checks, &opts)
                }
            }
        }
        (None, Some(spec)) => {
            let mut config = corpus_config(spec)?;
            if let Some(checks) = checks {
                config.restrict_checks(checks);
            }
            opts.genericity = config.options.genericity;
            opts.perturb_lemma = config.options.perturb_lemma;
            config.options = opts;
            run_corpus(&config)?
        }
        _ => {
            return Err(Error::InvalidArgument(
                "give either a graph file or --corpus".into(),
            ))
        }
    };
    let text = match args.format {
        ReportFormat::Json => pretty(&report),
        ReportFormat::Csv => report.to_csv(),
        ReportFormat::Text => report.to_text(),
    };
    emit(&text, args.output.as_deref(), out)?;
    if report.summary.skipped > 0 {
        let _ = writeln!(
            err,
            "warning: {} check(s) skipped because their hypotheses do not hold",
            report.summary.skipped
        );
    }
    for e in &report.errors {
        let _ = writeln!(err, "error: {} {}: {}", e.instance, e.check, e.error);
    }
    for v in report.violations() {
        let _ = writeln!(
            err,
            "violated: {} {} k={}: {} > {}",
            v.instance, v.check, v.k, v.lhs, v.rhs
        );
    }
    Ok(report.exit_code())
}
