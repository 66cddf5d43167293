//! Command-line front end: invariant reports, comparisons, prime families,
//! lacunary rotation parameters and a built-in example batch.

pub mod report;
pub mod spec_doc;

use std::ffi::OsString;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use elliott_core::classify::{compare_specs, family_report, ClassifyError, DEFAULT_SEARCH_BOUND};
use elliott_core::crossed::{elliott, rouhani_parameters, CrossedError};
use elliott_core::ktheory::{KTheoryError, TransformationSpec};
use elliott_core::par::Exec;
use elliott_core::theta::ThetaSymbol;
use thiserror::Error;

use report::{Body, Document, ExampleRow, ExamplesReport};
use spec_doc::SpecDocument;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CliError {
    #[error("{0}")]
    Input(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("internal error: {0}")]
    Internal(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Input(_) => 2,
            CliError::Unsupported(_) => 3,
            CliError::Internal(_) => 4,
        }
    }
}

impl From<CrossedError> for CliError {
    fn from(e: CrossedError) -> Self {
        match e {
            CrossedError::KTheory(k) => k.into(),
            CrossedError::ZeroDepth | CrossedError::DepthTooLarge(_) => {
                CliError::Input(e.to_string())
            }
            CrossedError::ThetaTooCoarse(_) => CliError::Input(e.to_string()),
            other => CliError::Internal(other.to_string()),
        }
    }
}

impl From<KTheoryError> for CliError {
    fn from(e: KTheoryError) -> Self {
        match e {
            KTheoryError::ExponentCount { .. } => CliError::Input(e.to_string()),
            _ => CliError::Unsupported(e.to_string()),
        }
    }
}

impl From<ClassifyError> for CliError {
    fn from(e: ClassifyError) -> Self {
        match e {
            ClassifyError::NoPrimes
            | ClassifyError::NotPrime(_)
            | ClassifyError::RepeatedPrime(_) => CliError::Input(e.to_string()),
            ClassifyError::Crossed(c) => c.into(),
            ClassifyError::KTheory(k) => k.into(),
            other => CliError::Internal(other.to_string()),
        }
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "elliott",
    version,
    about = "Elliott invariants of crossed products by minimal diffeomorphisms"
)]
pub struct Cli {
    /// Emit one JSON document instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    /// Entry bound for the flip-conjugator search.
    #[arg(long, global = true, default_value_t = DEFAULT_SEARCH_BOUND)]
    pub search_bound: u32,
    /// Run the built-in example batch and report pass/fail.
    #[arg(long)]
    pub paper_examples: bool,
    #[command(subcommand)]
    pub command: Option<Command>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Elliott invariant of one spec file.
    Invariant { file: PathBuf },
    /// Compare two spec files: Elliott invariants and flip conjugacy.
    Compare { first: PathBuf, second: PathBuf },
    /// Exponent family m_k = p1...pk, n_k = p(k+1)...pr on T^3, all pairs compared.
    Family {
        #[arg(required = true)]
        primes: Vec<u64>,
    },
    /// Parameters of the lacunary skew rotation of T^2.
    Rouhani {
        #[arg(long, default_value_t = 3)]
        depth: usize,
    },
}

/// Captured result of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: u8,
    pub stdout: String,
    pub stderr: String,
}

/// θ used by the family and example batches.
pub fn default_theta() -> ThetaSymbol {
    ThetaSymbol::from_decimals("theta", "0.5624", "0.5626").expect("valid interval")
}

fn load_spec(path: &Path) -> Result<TransformationSpec, CliError> {
    SpecDocument::load(path)?.to_spec()
}

fn execute(cli: &Cli) -> Result<(Document, bool), CliError> {
    let exec = Exec::default();
    if cli.paper_examples {
        if cli.command.is_some() {
            return Err(CliError::Input(
                "--paper-examples takes no subcommand".into(),
            ));
        }
        let r = example_batch(cli.search_bound)?;
        let ok = r.all_pass;
        return Ok((Document::new(Body::Examples(r)), ok));
    }
    let Some(command) = &cli.command else {
        return Err(CliError::Input("no subcommand given (try --help)".into()));
    };
    match command {
        Command::Invariant { file } => {
            let spec = load_spec(file)?;
            let inv = elliott(&spec)?;
            Ok((
                Document::new(Body::Invariant(report::invariant_report(&spec, &inv))),
                true,
            ))
        }
        Command::Compare { first, second } => {
            let (a, b) = (load_spec(first)?, load_spec(second)?);
            let c = compare_specs(&a, &b, cli.search_bound, exec)?;
            Ok((
                Document::new(Body::Compare(report::compare_report(&a, &b, &c))),
                true,
            ))
        }
        Command::Family { primes } => {
            let r = family_report(primes, &default_theta(), cli.search_bound, exec)?;
            let batch = report::family_batch(primes, &r);
            let ok = batch.all_isomorphic_and_distinct;
            Ok((Document::new(Body::Family(batch)), ok))
        }
        Command::Rouhani { depth } => {
            let p = rouhani_parameters(*depth)?;
            let ok = p.beta_bound_ok();
            Ok((Document::new(Body::Rouhani(report::rouhani_report(&p))), ok))
        }
    }
}

/// Parses arguments and runs one command. Exit codes: 0 success, 2 input
/// error, 3 unsupported spec, 4 internal invariant violation.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            return if e.use_stderr() {
                Outcome {
                    code,
                    stdout: String::new(),
                    stderr: text,
                }
            } else {
                Outcome {
                    code,
                    stdout: text,
                    stderr: String::new(),
                }
            };
        }
    };
    match execute(&cli) {
        Ok((doc, ok)) => {
            let stdout = if cli.json {
                report::render_json(&doc)
            } else {
                report::render(&doc)
            };
            let (code, stderr) = if ok {
                (0, String::new())
            } else {
                (4, "error: expected verdicts not reached\n".to_string())
            };
            Outcome {
                code,
                stdout,
                stderr,
            }
        }
        Err(e) => Outcome {
            code: e.exit_code(),
            stdout: String::new(),
            stderr: format!("error: {e}\n"),
        },
    }
}

fn row(name: &str, expected: &str, observed: String, pass: bool) -> ExampleRow {
    ExampleRow {
        name: name.into(),
        expected: expected.into(),
        observed,
        pass,
    }
}

fn verdict_pair(
    a: &TransformationSpec,
    b: &TransformationSpec,
    bound: u32,
) -> Result<(String, bool, bool), CliError> {
    let c = compare_specs(a, b, bound, Exec::default())?;
    let e = report::elliott_section(&c.elliott);
    let f = report::flip_section(&c.flip);
    Ok((
        format!("{} / {}", e.verdict, f.verdict),
        c.elliott.is_isomorphic(),
        c.flip_distinct(),
    ))
}

/// The built-in examples with their expected verdicts.
pub fn example_batch(bound: u32) -> Result<ExamplesReport, CliError> {
    let theta = default_theta();
    let torus = |m: i64, n: i64| TransformationSpec::torus(&[m, n], &theta).map_err(CliError::from);
    let sphere = |d: usize| TransformationSpec::sphere_circle(d, &theta).map_err(CliError::from);
    let mut rows = Vec::new();

    let p = rouhani_parameters(3)?;
    let nu: Vec<String> = p.nu.iter().map(ToString::to_string).collect();
    let theta3 = format!("{}/{}", p.theta_partial.numer(), p.theta_partial.denom());
    let observed = format!(
        "nu = ({}), theta_3 = {theta3}, beta bound {}",
        nu.join(", "),
        p.beta_bound_ok()
    );
    let pass = nu == ["1", "4", "21"] && theta3 == "1179649/2097152" && p.beta_bound_ok();
    rows.push(row(
        "lacunary rotation parameters, depth 3",
        "nu = (1, 4, 21), theta_3 = 1179649/2097152, beta bound true",
        observed,
        pass,
    ));

    let (obs, iso, distinct) = verdict_pair(&torus(2, 3)?, &torus(3, 2)?, bound)?;
    rows.push(row(
        "T^3 exponents (2,3) vs (3,2)",
        "ISOMORPHIC / DISTINCT",
        obs,
        iso && distinct,
    ));

    let fam = family_report(&[2, 3, 5], &theta, bound, Exec::default())?;
    let batch = report::family_batch(&[2, 3, 5], &fam);
    rows.push(row(
        "prime family 2 3 5",
        "6 pairs ISOMORPHIC / DISTINCT",
        format!(
            "{} pairs, all ISOMORPHIC / DISTINCT: {}",
            fam.pairs.len(),
            batch.all_isomorphic_and_distinct
        ),
        fam.pairs.len() == 6 && batch.all_isomorphic_and_distinct,
    ));

    let (obs, iso, _) = verdict_pair(&torus(1, 1)?, &sphere(2)?, bound)?;
    rows.push(row("T^3 (1,1) vs S^2 x S^1", "ISOMORPHIC", obs, iso));

    let mut all = true;
    let mut seen = Vec::new();
    for (a, b) in [(3, 5), (3, 7), (5, 7)] {
        let (obs, iso, _) = verdict_pair(&sphere(a)?, &sphere(b)?, bound)?;
        all &= iso;
        seen.push(format!("{a}/{b}: {obs}"));
    }
    rows.push(row(
        "S^n x S^1 for n = 3, 5, 7",
        "pairwise ISOMORPHIC",
        seen.join("; "),
        all,
    ));

    let all_pass = rows.iter().all(|r| r.pass);
    Ok(ExamplesReport {
        examples: rows,
        all_pass,
    })
}
