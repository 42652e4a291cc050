//! The `cbp` command: reads a problem file, runs one check or all of them,
//! and renders the result as text or JSON.

pub mod report;

use std::fmt::Write as _;
use std::path::PathBuf;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use thiserror::Error;

use cbp_core::cbp::{self, CbpError};
use cbp_core::linalg::{DetMode, LinalgError, PencilOptions};
use cbp_core::problem::{parse_problem, Problem};
use cbp_core::quotient::QuotientAlgebra;
use cbp_core::separator;

pub use report::JsonReport;

#[derive(Debug, Parser)]
#[command(name = "cbp", version, about = "Cayley-Bacharach and Gorenstein checks for zero-dimensional algebras")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Print a JSON report instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    /// How pencil determinants are decided; by default symbolic for at most three variables.
    #[arg(long, value_enum, global = true)]
    pub det_mode: Option<DetModeArg>,
    /// Seed for random evaluation points.
    #[arg(long, global = true, default_value_t = PencilOptions::default().seed)]
    pub seed: u64,
    /// Largest extension degree to try when the field is too small.
    #[arg(long, global = true, default_value_t = PencilOptions::default().max_extension)]
    pub max_extension: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum DetModeArg {
    Symbolic,
    Evaluated,
}

#[derive(Debug, Clone, Subcommand)]
pub enum Command {
    /// Reduced Gröbner basis in the file's term ordering.
    Gb { file: PathBuf },
    /// Affine Hilbert function up to the regularity index.
    Hilbert { file: PathBuf },
    /// Cayley-Bacharach property via the canonical module.
    Cbp { file: PathBuf },
    /// Local Gorenstein property.
    Gorenstein { file: PathBuf },
    /// Locally Gorenstein together with the Cayley-Bacharach property.
    GorCbp { file: PathBuf },
    /// Cayley-Bacharach property of the associated graded ring.
    StrictCbp { file: PathBuf },
    /// Strict Gorenstein property, by both characterizations.
    StrictGorenstein { file: PathBuf },
    /// Separator degrees of the given primary decomposition.
    Sepdeg { file: PathBuf },
    /// Every check.
    Analyze { file: PathBuf },
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Gb { .. } => "gb",
            Command::Hilbert { .. } => "hilbert",
            Command::Cbp { .. } => "cbp",
            Command::Gorenstein { .. } => "gorenstein",
            Command::GorCbp { .. } => "gor-cbp",
            Command::StrictCbp { .. } => "strict-cbp",
            Command::StrictGorenstein { .. } => "strict-gorenstein",
            Command::Sepdeg { .. } => "sepdeg",
            Command::Analyze { .. } => "analyze",
        }
    }

    pub fn file(&self) -> &PathBuf {
        match self {
            Command::Gb { file }
            | Command::Hilbert { file }
            | Command::Cbp { file }
            | Command::Gorenstein { file }
            | Command::GorCbp { file }
            | Command::StrictCbp { file }
            | Command::StrictGorenstein { file }
            | Command::Sepdeg { file }
            | Command::Analyze { file } => file,
        }
    }
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Input(String),
    #[error("internal inconsistency: {0}")]
    Inconsistent(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Input(_) => 1,
            CliError::Inconsistent(_) => 2,
        }
    }
}

impl From<CbpError> for CliError {
    fn from(e: CbpError) -> Self {
        match e {
            CbpError::Inconsistent(msg) => CliError::Inconsistent(msg),
            other => CliError::Input(other.to_string()),
        }
    }
}

impl From<LinalgError> for CliError {
    fn from(e: LinalgError) -> Self {
        CliError::Input(e.to_string())
    }
}

fn input<E: std::fmt::Display>(e: E) -> CliError {
    CliError::Input(e.to_string())
}

/// The rendered outcome of one invocation.
#[derive(Debug, Clone)]
pub struct Output {
    pub text: String,
    pub report: JsonReport,
}

impl Output {
    pub fn render(&self, json: bool) -> String {
        if json {
            serde_json::to_string_pretty(&self.report).expect("reports serialize")
        } else {
            self.text.clone()
        }
    }
}

pub fn options(cli: &Cli) -> PencilOptions {
    let mode = match cli.det_mode {
        None => DetMode::Auto,
        Some(DetModeArg::Symbolic) => DetMode::Symbolic,
        Some(DetModeArg::Evaluated) => DetMode::Evaluated,
    };
    PencilOptions { mode, seed: cli.seed, max_extension: cli.max_extension, ..Default::default() }
}

pub fn load(path: &PathBuf) -> Result<Problem, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
    parse_problem(&text).map_err(|e| CliError::Input(format!("{}:{e}", path.display())))
}

pub fn run(cli: &Cli) -> Result<Output, CliError> {
    let problem = load(cli.command.file())?;
    run_problem(cli, &problem)
}

pub fn run_problem(cli: &Cli, problem: &Problem) -> Result<Output, CliError> {
    let start = Instant::now();
    let opts = options(cli);
    let field = problem.field().clone();
    let mut report = JsonReport {
        command: cli.command.name().to_string(),
        field: field.to_string(),
        vars: problem.ambient.vars().to_vec(),
        ordering: problem.ordering.name().to_string(),
        det_mode: format!("{:?}", opts.mode).to_lowercase(),
        seed: opts.seed,
        ..Default::default()
    };
    let mut text = String::new();

    if let Command::Gb { .. } = cli.command {
        let gb = problem.ideal.gb(problem.ordering);
        let gens: Vec<String> = gb.gens().iter().map(|g| g.to_string()).collect();
        for g in &gens {
            writeln!(text, "{g}").unwrap();
        }
        report.gb_size = Some(gens.len());
        report.gb = Some(gens);
        report.elapsed_us = start.elapsed().as_micros() as u64;
        return Ok(Output { text, report });
    }

    let a = QuotientAlgebra::build(&problem.ideal).map_err(input)?;
    report.gb_size = Some(a.groebner_basis().len());
    report.set_algebra(&a);
    match cli.command {
        Command::Gb { .. } => unreachable!("handled above"),
        Command::Hilbert { .. } => {
            let hf: Vec<String> = a.hf().iter().map(|h| h.to_string()).collect();
            writeln!(text, "{}; ri = {}", hf.join(" "), a.ri()).unwrap();
        }
        Command::Cbp { .. } => {
            let v = cbp::check_cbp(&a);
            report.cbp = Some(v.holds);
            report.cbp_kernel_witness = v.kernel_witness.as_ref().map(|w| report::elements(&field, w));
            writeln!(text, "cbp = {}", v.holds).unwrap();
        }
        Command::Gorenstein { .. } => {
            let v = cbp::check_locally_gorenstein(&a, &opts)?;
            report.locally_gorenstein = Some(v.holds);
            report.det_c = v.pencil.determinant.as_ref().map(|d| d.to_string());
            report.generator = v.generator.as_ref().map(|g| report::elements(&field, &g.coeffs));
            report.gorenstein_witness = v.pencil.witness.as_ref().map(|w| report::elements(&v.pencil.field_used, w));
            report.field_used = Some(v.pencil.field_used.to_string());
            writeln!(text, "locally_gorenstein = {}", v.holds).unwrap();
            if let Some(d) = &report.det_c {
                writeln!(text, "det(C) = {d}").unwrap();
            }
        }
        Command::GorCbp { .. } => {
            let v = cbp::check_gor_cbp(&a, &opts)?;
            report.gor_and_cbp = Some(v.nonzero);
            report.det_c0 = v.determinant.as_ref().map(|d| d.to_string());
            report.gor_cbp_witness = v.witness.as_ref().map(|w| report::elements(&v.field_used, w));
            report.field_used = Some(v.field_used.to_string());
            writeln!(text, "gor_and_cbp = {}", v.nonzero).unwrap();
            if let Some(d) = &report.det_c0 {
                writeln!(text, "det(C_0) = {d}").unwrap();
            }
        }
        Command::StrictCbp { .. } => {
            let v = cbp::check_strict_cbp(&problem.ideal)?;
            report.strict_cbp = Some(v);
            writeln!(text, "strict_cbp = {v}").unwrap();
        }
        Command::StrictGorenstein { .. } => {
            let v = cbp::check_strict_gorenstein(&a)?;
            report.strict_gorenstein = Some(v.holds);
            report.strict_gorenstein_via_cbp_and_symmetry = Some(v.via_cbp_and_symmetry);
            report.strict_gorenstein_via_strict_cbp = Some(v.via_strict_cbp);
            writeln!(text, "strict_gorenstein = {}", v.holds).unwrap();
        }
        Command::Sepdeg { .. } => {
            let d = problem
                .decomposition()
                .map_err(input)?
                .ok_or_else(|| CliError::Input("sepdeg needs at least one `component:` block".into()))?;
            let s = separator::check_cbp_via_separators(&d, &a).map_err(input)?;
            report.set_separators(&s);
            write_separators(&mut text, &s);
        }
        Command::Analyze { .. } => {
            let r = cbp::analyze(&a, &opts)?;
            report.set_properties(&r, &field);
            let strict = cbp::check_strict_gorenstein(&a)?;
            report.strict_gorenstein_via_cbp_and_symmetry = Some(strict.via_cbp_and_symmetry);
            report.strict_gorenstein_via_strict_cbp = Some(strict.via_strict_cbp);
            write_properties(&mut text, &report);
            if let Some(d) = problem.decomposition().map_err(input)? {
                let s = separator::check_cbp_via_separators(&d, &a).map_err(input)?;
                if s.holds != r.cbp {
                    return Err(CliError::Inconsistent(format!(
                        "separators give CBP = {}, the canonical module gives {}",
                        s.holds, r.cbp
                    )));
                }
                report.set_separators(&s);
                write_separators(&mut text, &s);
            }
        }
    }
    report.elapsed_us = start.elapsed().as_micros() as u64;
    Ok(Output { text, report })
}

fn write_properties(text: &mut String, r: &JsonReport) {
    let list = |v: &[usize]| v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ");
    let basis = r.basis.as_deref().unwrap_or_default().join(", ");
    writeln!(text, "dim = {}", r.dim.unwrap_or_default()).unwrap();
    writeln!(text, "basis = {basis}").unwrap();
    writeln!(text, "hf = {}; ri = {}", list(r.hf.as_deref().unwrap_or_default()), r.ri.unwrap_or_default()).unwrap();
    writeln!(text, "delta = {}", r.delta.unwrap_or_default()).unwrap();
    let flags = [
        ("cbp", r.cbp),
        ("locally_gorenstein", r.locally_gorenstein),
        ("gor_and_cbp", r.gor_and_cbp),
        ("strict_cbp", r.strict_cbp),
        ("strict_gorenstein", r.strict_gorenstein),
        ("symmetric_hf", r.symmetric_hf),
        ("hf_inequality", r.hf_inequality),
    ];
    for (name, v) in flags {
        if let Some(v) = v {
            writeln!(text, "{name} = {v}").unwrap();
        }
    }
    if let Some(d) = &r.det_c {
        writeln!(text, "det(C) = {d}").unwrap();
    }
    if let Some(d) = &r.det_c0 {
        writeln!(text, "det(C_0) = {d}").unwrap();
    }
    if let Some(f) = &r.field_used {
        if *f != r.field {
            writeln!(text, "witness field = {f}").unwrap();
        }
    }
}

fn write_separators(text: &mut String, s: &separator::SeparatorReport) {
    for c in &s.components {
        let sepdeg = c.sepdeg.map_or_else(|| "n/a".to_string(), |d| d.to_string());
        writeln!(
            text,
            "component {}: ell = {}, m = {}, k = {}, rank = {}, max_sepdeg = {}, sepdeg = {sepdeg}",
            c.index, c.ell, c.m, c.k, c.rank, c.max_sepdeg
        )
        .unwrap();
    }
    writeln!(text, "cbp via separators = {}", s.holds).unwrap();
}
