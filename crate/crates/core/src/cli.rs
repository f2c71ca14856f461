//! Command-line front end.
//!
//! Exit codes: 0 pass, 1 verification failure, 2 input error, 3 IO error.

use std::ffi::OsString;
use std::fs;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::error::Error;
use crate::factorize::{
    closed_form_alphas, detect_factorization, q_fock_operators, verify_q_relations,
    DEFAULT_DETECTION_TOL,
};
use crate::ladder::{build_ladder_rep, vacuum_moment, verify_normality_interior};
use crate::measures::{check_nondegenerate, radial_moments, MeasureSpec, Param};
use crate::orthosystem::{
    check_orthonormality, compare_systems, extract_alphas, gram_schmidt, sector_cholesky,
    verify_recurrence, verify_relations, AlphaTable,
};
use crate::report::{emit_report, float_value, scalar_cell, scalar_value, Artifact, CsvTable, Format};
use crate::scalar::{format_f64, Arith, Scalar, Surd};
use crate::tolerance::Tolerance;

/// Relative agreement demanded of the floating round trip.
pub const ROUNDTRIP_RTOL: f64 = 1e-9;

#[derive(Debug, Parser)]
#[command(
    name = "normal-field",
    version,
    about = "Orthonormal polynomials in z, z̄ for rotation-invariant measures, their recurrence \
             coefficients, and truncated ladder-operator representations"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Radial moment table m_0..m_N
    Moments(RunArgs),
    /// Recurrence coefficients α_{k,l} for k+l+1 ≤ N
    Alphas(RunArgs),
    /// Full identity check: both constructions, orthonormality, recurrences, relations, normality
    Verify(RunArgs),
    /// Factorization verdict α_{k,l} = f_k·g_l with fitted (q, c)
    Factorize(RunArgs),
    /// Closed-form ladder representation and deformed commutation relations for (q, c)
    Ladder(RunArgs),
    /// Closure of the measure → coefficients → operators → moments pipeline
    Roundtrip(RunArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum MeasureKind {
    Gaussian,
    UniformDisc,
    UnitCircle,
    Explicit,
    FromClosedForm,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ArithChoice {
    /// Exact when every input is rational
    Auto,
    Exact,
    Float,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum FormatChoice {
    Json,
    Csv,
}

#[derive(Clone, Debug, clap::Args)]
pub struct RunArgs {
    /// Measure family
    #[arg(long, value_enum)]
    pub measure: Option<MeasureKind>,
    /// JSON measure descriptor file, e.g. {"kind":"gaussian","sigma":"1"}
    #[arg(long)]
    pub measure_file: Option<PathBuf>,
    /// Gaussian width σ (p, p/q, or decimal)
    #[arg(long)]
    pub sigma: Option<String>,
    /// Disc radius R
    #[arg(long)]
    pub radius: Option<String>,
    /// Deformation parameter q > 0
    #[arg(long)]
    pub q: Option<String>,
    /// Scale c > 0
    #[arg(long)]
    pub c: Option<String>,
    /// Maximum total degree
    #[arg(short = 'N', default_value_t = 8)]
    pub n: usize,
    /// Ladder grid cutoff
    #[arg(short = 'M', default_value_t = 8)]
    pub m: usize,
    #[arg(long, value_enum, default_value_t = ArithChoice::Auto)]
    pub arith: ArithChoice,
    /// Floating tolerance for comparing the two constructions (default 1e-10)
    /// and for factorization detection (default 1e-8)
    #[arg(long)]
    pub tol: Option<f64>,
    #[arg(long, value_enum, default_value_t = FormatChoice::Json)]
    pub format: FormatChoice,
    /// Output path; stdout when absent
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CommandKind {
    Moments,
    Alphas,
    Verify,
    Factorize,
    Ladder,
    Roundtrip,
}

impl CommandKind {
    fn name(self) -> &'static str {
        match self {
            CommandKind::Moments => "moments",
            CommandKind::Alphas => "alphas",
            CommandKind::Verify => "verify",
            CommandKind::Factorize => "factorize",
            CommandKind::Ladder => "ladder",
            CommandKind::Roundtrip => "roundtrip",
        }
    }
}

/// Validated run configuration.
#[derive(Clone, Debug)]
pub struct RunConfig {
    pub command: CommandKind,
    pub measure: Option<MeasureSpec>,
    pub n: usize,
    pub m: usize,
    pub arith: Arith,
    pub tolerance: Option<f64>,
    pub format: Format,
    pub out: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ExitStatus {
    Pass = 0,
    VerificationFailure = 1,
    InputError = 2,
    IoError = 3,
}

/// Result of a dispatched run.
#[derive(Clone, Debug)]
pub struct Outcome {
    pub status: ExitStatus,
    pub artifact: Option<Artifact>,
    pub diagnostic: Option<Value>,
}

impl Outcome {
    fn finished(passed: bool, json: Value) -> Outcome {
        Outcome::with_artifact(passed, Artifact::json(json))
    }

    fn with_artifact(passed: bool, artifact: Artifact) -> Outcome {
        Outcome {
            status: if passed {
                ExitStatus::Pass
            } else {
                ExitStatus::VerificationFailure
            },
            artifact: Some(artifact),
            diagnostic: None,
        }
    }

    fn failed(error: &Error) -> Outcome {
        let status = match error {
            Error::RecurrenceViolation { .. } => ExitStatus::VerificationFailure,
            _ => ExitStatus::InputError,
        };
        Outcome {
            status,
            artifact: None,
            diagnostic: Some(diagnostic(error)),
        }
    }
}

fn diagnostic(error: &Error) -> Value {
    let mut record = json!({
        "error": error_kind(error),
        "message": error.to_string(),
    });
    if let Error::DegenerateMeasure { sector, size } = error {
        record["sector"] = json!(sector);
        record["size"] = json!(size);
    }
    record
}

fn error_kind(error: &Error) -> &'static str {
    match error {
        Error::NonPositiveMoment { .. } => "NonPositiveMoment",
        Error::NotNormalized(_) => "NotNormalized",
        Error::OutOfRange { .. } => "OutOfRange",
        Error::DegenerateMeasure { .. } => "DegenerateMeasure",
        Error::NotAProbability(_) => "NotAProbability",
        Error::RecurrenceViolation { .. } => "RecurrenceViolation",
        Error::MissingAlpha { .. } => "MissingAlpha",
        Error::CutoffTooSmall { .. } => "CutoffTooSmall",
        Error::IncompleteTable(_) => "IncompleteTable",
        Error::NonPositiveEntry { .. } => "NonPositiveEntry",
        Error::InvalidParameter(_) => "InvalidParameter",
        Error::InvalidDescriptor(_) => "InvalidDescriptor",
    }
}

fn required_param(value: &Option<String>, flag: &str, kind: &str) -> Result<Param, Error> {
    let text = value
        .as_deref()
        .ok_or_else(|| Error::InvalidParameter(format!("--measure {kind} needs --{flag}")))?;
    Param::parse(text)
}

impl RunConfig {
    pub fn from_cli(cli: Cli) -> Result<RunConfig, Error> {
        let (command, args) = match cli.command {
            Command::Moments(a) => (CommandKind::Moments, a),
            Command::Alphas(a) => (CommandKind::Alphas, a),
            Command::Verify(a) => (CommandKind::Verify, a),
            Command::Factorize(a) => (CommandKind::Factorize, a),
            Command::Ladder(a) => (CommandKind::Ladder, a),
            Command::Roundtrip(a) => (CommandKind::Roundtrip, a),
        };
        Self::from_args(command, args)
    }

    pub fn from_args(command: CommandKind, args: RunArgs) -> Result<RunConfig, Error> {
        let measure = if let Some(path) = &args.measure_file {
            let text = fs::read_to_string(path)
                .map_err(|e| Error::InvalidDescriptor(format!("{}: {e}", path.display())))?;
            Some(MeasureSpec::from_json(&text)?)
        } else {
            match args.measure {
                Some(MeasureKind::Gaussian) => Some(MeasureSpec::Gaussian {
                    sigma: required_param(&args.sigma, "sigma", "gaussian")?,
                }),
                Some(MeasureKind::UniformDisc) => Some(MeasureSpec::UniformDisc {
                    radius: required_param(&args.radius, "radius", "uniform-disc")?,
                }),
                Some(MeasureKind::UnitCircle) => Some(MeasureSpec::UnitCircle),
                Some(MeasureKind::Explicit) => {
                    return Err(Error::InvalidParameter(
                        "explicit moments are read from --measure-file".into(),
                    ))
                }
                Some(MeasureKind::FromClosedForm) => Some(MeasureSpec::FromClosedForm {
                    q: required_param(&args.q, "q", "from-closed-form")?,
                    c: required_param(&args.c, "c", "from-closed-form")?,
                }),
                None => match (&args.q, &args.c) {
                    (Some(q), Some(c)) => Some(MeasureSpec::FromClosedForm {
                        q: Param::parse(q)?,
                        c: Param::parse(c)?,
                    }),
                    _ => None,
                },
            }
        };
        if let Some(spec) = &measure {
            spec.validate()?;
        }
        if args.n < 1 || args.m < 1 {
            return Err(Error::InvalidParameter("N and M must be at least 1".into()));
        }
        if let Some(tol) = args.tol {
            if tol.is_nan() || tol <= 0.0 {
                return Err(Error::InvalidParameter("--tol must be positive".into()));
            }
        }
        let rational = measure.as_ref().is_none_or(MeasureSpec::is_rational);
        let arith = match args.arith {
            ArithChoice::Auto if rational => Arith::Exact,
            ArithChoice::Auto | ArithChoice::Float => Arith::Float,
            ArithChoice::Exact if rational => Arith::Exact,
            ArithChoice::Exact => {
                return Err(Error::InvalidParameter(
                    "exact arithmetic needs rational parameters (p or p/q)".into(),
                ))
            }
        };
        let format = match args.format {
            FormatChoice::Json => Format::Json,
            FormatChoice::Csv => Format::Csv,
        };
        if format == Format::Csv && !matches!(command, CommandKind::Moments | CommandKind::Alphas) {
            return Err(Error::InvalidParameter(format!(
                "{} has no CSV form; use --format json",
                command.name()
            )));
        }
        Ok(RunConfig {
            command,
            measure,
            n: args.n,
            m: args.m,
            arith,
            tolerance: args.tol,
            format,
            out: args.out,
        })
    }

    fn measure(&self) -> Result<&MeasureSpec, Error> {
        self.measure
            .as_ref()
            .ok_or_else(|| Error::InvalidParameter("a measure is required (--measure or --measure-file)".into()))
    }

    fn closed_form_params(&self) -> Result<(&Param, &Param), Error> {
        match &self.measure {
            Some(MeasureSpec::FromClosedForm { q, c }) => Ok((q, c)),
            _ => Err(Error::InvalidParameter(format!(
                "{} needs --q and --c",
                self.command.name()
            ))),
        }
    }

    fn header(&self) -> Value {
        json!({
            "command": self.command.name(),
            "arith": self.arith.to_string(),
            "measure": self.measure.as_ref().map_or(Value::Null, MeasureSpec::to_json),
        })
    }
}

/// Runs one command and returns its status and report.
pub fn dispatch(config: &RunConfig) -> Outcome {
    let result = match config.arith {
        Arith::Exact => dispatch_in::<Surd>(config),
        Arith::Float => dispatch_in::<f64>(config),
    };
    result.unwrap_or_else(|e| Outcome::failed(&e))
}

fn dispatch_in<S: Scalar>(config: &RunConfig) -> Result<Outcome, Error> {
    match config.command {
        CommandKind::Moments => run_moments::<S>(config),
        CommandKind::Alphas => run_alphas::<S>(config),
        CommandKind::Verify => run_verify::<S>(config),
        CommandKind::Factorize => run_factorize::<S>(config),
        CommandKind::Ladder => run_ladder::<S>(config),
        CommandKind::Roundtrip => run_roundtrip::<S>(config),
    }
}

fn merge(mut base: Value, extra: Value) -> Value {
    if let (Value::Object(b), Value::Object(e)) = (&mut base, extra) {
        b.extend(e);
    }
    base
}

fn run_moments<S: Scalar>(config: &RunConfig) -> Result<Outcome, Error> {
    let m = radial_moments::<S>(config.measure()?, config.n)?;
    let mut csv = CsvTable::new(&["n", "moment"]);
    let mut rows = Vec::new();
    for (n, v) in m.as_slice().iter().enumerate() {
        csv.push(vec![n.to_string(), scalar_cell(v)]);
        rows.push(json!({"n": n, "value": scalar_value(v), "approx": float_value(v.to_f64())}));
    }
    let json = merge(config.header(), json!({"n_max": config.n, "moments": rows}));
    Ok(Outcome::with_artifact(true, Artifact { json, csv: Some(csv) }))
}

fn alpha_csv<S: Scalar>(a: &AlphaTable<S>) -> CsvTable {
    let mut csv = CsvTable::new(&["k", "l", "alpha", "alpha_sq"]);
    for (&(k, l), v) in a.iter() {
        csv.push(vec![
            k.to_string(),
            l.to_string(),
            format_f64(v.to_f64()),
            scalar_cell(&(v.clone() * v.clone())),
        ]);
    }
    csv
}

fn measure_alphas<S: Scalar>(spec: &MeasureSpec, n: usize) -> Result<AlphaTable<S>, Error> {
    let m = radial_moments::<S>(spec, n)?;
    check_nondegenerate(&m, n)?;
    let sys = gram_schmidt(&m, n)?;
    extract_alphas(&sys, &m)
}

fn run_alphas<S: Scalar>(config: &RunConfig) -> Result<Outcome, Error> {
    let a = measure_alphas::<S>(config.measure()?, config.n)?;
    let json = merge(
        config.header(),
        json!({"max_total_degree": config.n, "alphas": a.to_json()}),
    );
    Ok(Outcome::with_artifact(
        true,
        Artifact {
            json,
            csv: Some(alpha_csv(&a)),
        },
    ))
}

fn run_verify<S: Scalar>(config: &RunConfig) -> Result<Outcome, Error> {
    let n = config.n;
    let m = radial_moments::<S>(config.measure()?, n)?;
    let nondegenerate = check_nondegenerate(&m, n)?;
    let gs = gram_schmidt(&m, n)?;
    let chol = sector_cholesky(&m, n)?;
    let tol = Tolerance::relative(config.tolerance.unwrap_or(Tolerance::default().rel));
    let agreement = compare_systems(&gs, &chol, tol);
    let ortho = check_orthonormality(&gs, &m)?;
    let alphas = extract_alphas(&gs, &m)?;
    let recurrence = verify_recurrence(&gs, &alphas);
    let relations = verify_relations(&alphas);

    // m_n = Π_{j<n} α_{j,0}²
    let mut product = S::one();
    let mut diagonal_ok = true;
    for k in 0..=n {
        diagonal_ok &= Tolerance::default().accepts(&(product.clone() - m.get(k)?.clone()), m.get(k)?.to_f64());
        if k < n {
            product = product * alphas.alpha_sq(k, 0).expect("complete table");
        }
    }

    let cutoff = config.m.min(n / 2);
    let (ladder, ladder_ok) = if cutoff >= 2 {
        let rep = build_ladder_rep(&alphas, cutoff)?;
        let normality = verify_normality_interior(&rep);
        let mut vacuum_ok = true;
        for k in 0..=cutoff {
            for l in 0..=cutoff - k {
                let v = vacuum_moment(&rep, k, l)?;
                let want = if k == l { m.get(k)?.clone() } else { S::zero() };
                vacuum_ok &= Tolerance::default().accepts(&(v - want.clone()), want.to_f64());
            }
        }
        let ok = normality.passed && vacuum_ok;
        (
            json!({"cutoff": cutoff, "normality": normality.to_json(), "vacuum_moments_passed": vacuum_ok}),
            ok,
        )
    } else {
        (json!({"cutoff": cutoff, "skipped": "need N >= 4 for a cutoff of at least 2"}), true)
    };

    let passed = agreement.passed
        && ortho.passed
        && recurrence.passed()
        && relations.passed()
        && diagonal_ok
        && ladder_ok;
    let json = merge(
        config.header(),
        json!({
            "max_total_degree": n,
            "nondegeneracy": nondegenerate.to_json(),
            "construction_agreement": agreement.to_json(),
            "orthonormality": ortho.to_json(),
            "recurrence": recurrence.to_json(),
            "relations": relations.to_json(),
            "diagonal_product_identity": diagonal_ok,
            "ladder": ladder,
            "passed": passed,
        }),
    );
    Ok(Outcome::finished(passed, json))
}

fn run_factorize<S: Scalar>(config: &RunConfig) -> Result<Outcome, Error> {
    let a = measure_alphas::<S>(config.measure()?, config.n)?;
    let verdict = detect_factorization(&a, config.tolerance.unwrap_or(DEFAULT_DETECTION_TOL))?;
    let json = merge(
        config.header(),
        merge(json!({"max_total_degree": config.n}), verdict.to_json()),
    );
    Ok(Outcome::finished(true, json))
}

fn run_ladder<S: Scalar>(config: &RunConfig) -> Result<Outcome, Error> {
    let (q, c) = config.closed_form_params()?;
    let (q, c): (S, S) = (q.to_scalar()?, c.to_scalar()?);
    let cutoff = config.m;
    let table = closed_form_alphas(&q, &c, 2 * cutoff)?;
    let rep = build_ladder_rep(&table, cutoff)?;
    let ops = q_fock_operators(&q, &c, cutoff)?;
    let q_relations = verify_q_relations(&ops, &rep)?;
    let normality = verify_normality_interior(&rep);
    let relations = verify_relations(&table);
    let passed = q_relations.passed && normality.passed && relations.passed();
    let json = merge(
        config.header(),
        json!({
            "cutoff": cutoff,
            "q_relations": q_relations.to_json(),
            "normality": normality.to_json(),
            "relations": relations.to_json(),
            "q_exceeds_one": q.to_f64() > 1.0,
            "rep": rep.to_json(),
            "passed": passed,
        }),
    );
    Ok(Outcome::finished(passed, json))
}

fn run_roundtrip<S: Scalar>(config: &RunConfig) -> Result<Outcome, Error> {
    let n = config.n;
    let spec = config.measure()?;
    match spec {
        MeasureSpec::FromClosedForm { q, c } => {
            // (q, c) → α → ladder → vacuum moments → Gram–Schmidt → α
            let (q, c): (S, S) = (q.to_scalar()?, c.to_scalar()?);
            let input = closed_form_alphas(&q, &c, n)?;
            let m = radial_moments::<S>(spec, n)?;
            let sys = gram_schmidt(&m, n)?;
            let output = extract_alphas(&sys, &m)?;
            let (max_rel, identical) = compare_tables(&input, &output);
            let passed = match S::ARITH {
                Arith::Exact => identical,
                Arith::Float => max_rel <= ROUNDTRIP_RTOL,
            };
            let json = merge(
                config.header(),
                json!({
                    "pipeline": "closed-form -> ladder -> vacuum moments -> gram-schmidt -> alphas",
                    "max_total_degree": n,
                    "moments": m.as_slice().iter().map(scalar_value).collect::<Vec<_>>(),
                    "max_rel_discrepancy": float_value(max_rel),
                    "identical": identical,
                    "passed": passed,
                }),
            );
            Ok(Outcome::finished(passed, json))
        }
        _ => {
            // m → α → ladder → vacuum moments, compared with m
            let m = radial_moments::<S>(spec, n)?;
            let a = measure_alphas::<S>(spec, n)?;
            let cutoff = n;
            let table = measure_alphas::<S>(spec, 2 * cutoff);
            let mut max_rel = 0.0f64;
            let mut identical = true;
            let mut checked = 0;
            // Direct product identity on the whole table, then the vacuum path
            // on a grid large enough for every moment.
            let mut product = S::one();
            for k in 0..=n {
                let want = m.get(k)?.clone();
                let diff = product.clone() - want.clone();
                identical &= diff.is_zero();
                max_rel = max_rel.max(diff.abs_f64() / want.abs_f64());
                if k < n {
                    product = product * a.alpha_sq(k, 0).expect("complete table");
                }
            }
            let table = table?;
            let rep = build_ladder_rep(&table, cutoff)?;
            for k in 0..=n / 2 {
                let v = vacuum_moment(&rep, k, k)?;
                let want = m.get(k)?.clone();
                let diff = v - want.clone();
                identical &= diff.is_zero();
                max_rel = max_rel.max(diff.abs_f64() / want.abs_f64());
                checked += 1;
            }
            let passed = match S::ARITH {
                Arith::Exact => identical,
                Arith::Float => max_rel <= ROUNDTRIP_RTOL,
            };
            let json = merge(
                config.header(),
                json!({
                    "pipeline": "moments -> gram-schmidt -> alphas -> ladder -> vacuum moments",
                    "max_total_degree": n,
                    "vacuum_moments_checked": checked,
                    "max_rel_discrepancy": float_value(max_rel),
                    "identical": identical,
                    "passed": passed,
                }),
            );
            Ok(Outcome::finished(passed, json))
        }
    }
}

fn compare_tables<S: Scalar>(a: &AlphaTable<S>, b: &AlphaTable<S>) -> (f64, bool) {
    let mut max_rel = 0.0f64;
    let mut identical = a.len() == b.len();
    for (&(k, l), x) in a.iter() {
        match b.get(k, l) {
            Some(y) => {
                let diff = x.clone() - y.clone();
                identical &= diff.is_zero();
                max_rel = max_rel.max(diff.abs_f64() / x.abs_f64());
            }
            None => {
                identical = false;
                max_rel = f64::INFINITY;
            }
        }
    }
    (max_rel, identical)
}

/// Parses arguments, runs, writes the artifact, and returns the exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitStatus::InputError as i32
            } else {
                ExitStatus::Pass as i32
            };
        }
    };
    let config = match RunConfig::from_cli(cli) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("{}", diagnostic(&e));
            return ExitStatus::InputError as i32;
        }
    };
    let outcome = dispatch(&config);
    if let Some(d) = &outcome.diagnostic {
        eprintln!("{d}");
    }
    if let Some(artifact) = &outcome.artifact {
        let written = artifact
            .render(config.format)
            .and_then(|bytes| emit_report(&bytes, config.out.as_deref()));
        if let Err(e) = written {
            eprintln!("{}", json!({"error": "Io", "message": e.to_string()}));
            return ExitStatus::IoError as i32;
        }
    }
    outcome.status as i32
}

#[cfg(test)]
mod tests {
    use super::*;

    fn config(args: &[&str]) -> Result<RunConfig, Error> {
        let cli = Cli::try_parse_from(std::iter::once("normal-field").chain(args.iter().copied())).unwrap();
        RunConfig::from_cli(cli)
    }

    #[test]
    fn auto_arithmetic_follows_the_parameters() {
        assert_eq!(config(&["verify", "--measure", "gaussian", "--sigma", "1"]).unwrap().arith, Arith::Exact);
        assert_eq!(config(&["verify", "--measure", "gaussian", "--sigma", "0.5"]).unwrap().arith, Arith::Float);
        assert_eq!(
            config(&["verify", "--measure", "gaussian", "--sigma", "1", "--arith", "float"]).unwrap().arith,
            Arith::Float
        );
        assert!(config(&["verify", "--measure", "gaussian", "--sigma", "0.5", "--arith", "exact"]).is_err());
    }

    #[test]
    fn defaults_and_validation() {
        let c = config(&["moments", "--measure", "unit-circle"]).unwrap();
        assert_eq!((c.n, c.m, c.tolerance, c.format), (8, 8, None, Format::Json));
        assert!(config(&["verify", "--measure", "gaussian"]).is_err());
        assert!(config(&["verify", "--measure", "gaussian", "--sigma", "1", "-N", "0"]).is_err());
        assert!(config(&["verify", "--measure", "gaussian", "--sigma", "1", "--tol=-1"]).is_err());
        assert!(config(&["verify", "--measure", "gaussian", "--sigma", "1", "--format", "csv"]).is_err());
        let ladder = config(&["ladder", "--q", "1/2", "--c", "1"]).unwrap();
        assert!(matches!(ladder.measure, Some(MeasureSpec::FromClosedForm { .. })));
    }

    #[test]
    fn degenerate_measure_is_an_input_error() {
        let outcome = dispatch(&config(&["verify", "--measure", "unit-circle", "-N", "4"]).unwrap());
        assert_eq!(outcome.status, ExitStatus::InputError);
        let d = outcome.diagnostic.unwrap();
        assert_eq!(d["error"], "DegenerateMeasure");
        assert_eq!((d["sector"].as_u64(), d["size"].as_u64()), (Some(0), Some(2)));
    }

    #[test]
    fn exact_verify_passes() {
        let outcome = dispatch(&config(&["verify", "--measure", "uniform-disc", "--radius", "1", "-N", "6"]).unwrap());
        assert_eq!(outcome.status, ExitStatus::Pass);
        let json = outcome.artifact.unwrap().json;
        assert_eq!(json["recurrence"]["max_residual"], json!(0));
        assert_eq!(json["ladder"]["cutoff"], json!(3));
    }
}
