//! `finsler-ineq`: evaluate Lorentz-Finsler norms, check single inequalities
//! and run verification campaigns.
//!
//! Exit codes: 0 pass, 1 usage or parse error, 2 domain error, 3 violated
//! inequality or failed campaign, 4 internal failure.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand};
use finsler_ineq::campaign::{self, SuiteManifest};
use finsler_ineq::inequalities::{self as ineq, IneqReport, Tolerances};
use finsler_ineq::sampling::{self, SampleConfig};
use finsler_ineq::{
    calculus, classify_signature, json, norm, CheckId, Error, Family, NormParams, NormSpec,
    SymTensor, Vector,
};
use serde::Serialize;

// Writes to stdout, ignoring errors such as a closed pipe.
macro_rules! out {
    ($($arg:tt)*) => {{
        use std::io::Write as _;
        let _ = write!(std::io::stdout().lock(), $($arg)*);
    }};
}

macro_rules! outln {
    ($($arg:tt)*) => {{
        use std::io::Write as _;
        let _ = writeln!(std::io::stdout().lock(), $($arg)*);
    }};
}

#[derive(Parser)]
#[command(name = "finsler-ineq", version, about = "Lorentz-Finsler norms and their inequalities")]
struct Cli {
    /// Seed for sampling (overrides manifests).
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Interior margin for sampling (overrides manifests).
    #[arg(long, global = true)]
    margin: Option<f64>,
    /// Relative verdict tolerance (for eval: the signature tolerance).
    #[arg(long, global = true)]
    tol: Option<f64>,
    /// Output file for the machine-readable report.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print F(v), the gradient, the fundamental tensor and its signature.
    Eval {
        /// Norm spec: a JSON file or inline JSON.
        spec: String,
        /// Vector such as 2,1 or [2,1].
        vector: String,
    },
    /// Evaluate one inequality and print its report.
    Check {
        /// Check name; run `check list` for the full list.
        name: String,
        /// Vectors the check takes.
        vectors: Vec<String>,
        /// Norm spec (file or inline JSON), for checks that use one.
        #[arg(long)]
        spec: Option<String>,
        /// Exponent for popoviciu, bellman, holder and minkowski.
        #[arg(long)]
        p: Option<f64>,
        /// Lower scale factor for scaled_refinement.
        #[arg(long, default_value_t = 1.0)]
        a: f64,
        /// Upper scale factor for scaled_refinement.
        #[arg(long, default_value_t = 2.0)]
        b: f64,
        /// Weights for weighted_am_gm.
        #[arg(long)]
        weights: Option<String>,
        /// Simpson panels for integral_refinement.
        #[arg(long, default_value_t = calculus::DEFAULT_PANELS)]
        panels: usize,
    },
    /// Run a campaign manifest and report aggregates.
    Verify {
        manifest: PathBuf,
        /// Include wall-clock time in the report (breaks byte-identical output).
        #[arg(long)]
        timing: bool,
    },
    /// List the norm families and their parameters.
    Catalog,
    /// Print sample replay lines for a norm.
    Sample {
        spec: String,
        #[arg(long, default_value_t = 10)]
        count: usize,
        /// Emit pairs instead of single vectors.
        #[arg(long)]
        pairs: bool,
    },
}

enum Failure {
    Error(Error),
    Violated(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Error(e)
    }
}

type Outcome = std::result::Result<(), Failure>;

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Argument(_) | Error::DimensionMismatch { .. } | Error::Parse(_) => 1,
        Error::Domain { .. } => 2,
        Error::Evaluation(_) | Error::SamplingExhausted { .. } | Error::Internal(_) => 4,
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Error(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
        Err(Failure::Violated(msg)) => {
            eprintln!("{msg}");
            ExitCode::from(3)
        }
    }
}

fn run(cli: Cli) -> Outcome {
    match &cli.command {
        Command::Eval { spec, vector } => eval(&cli, spec, vector),
        Command::Check {
            name,
            vectors,
            spec,
            p,
            a,
            b,
            weights,
            panels,
        } => {
            let args = CheckArgs {
                spec: spec.as_deref().map(load_spec).transpose()?,
                vectors: vectors.iter().map(|s| parse_vector(s)).collect::<Result<_, _>>()?,
                p: *p,
                a: *a,
                b: *b,
                weights: weights.as_deref().map(parse_vector).transpose()?,
                panels: *panels,
            };
            check(&cli, name, &args)
        }
        Command::Verify { manifest, timing } => verify(&cli, manifest, *timing),
        Command::Catalog => {
            catalog();
            Ok(())
        }
        Command::Sample { spec, count, pairs } => sample(&cli, spec, *count, *pairs),
    }
}

fn read(path: &Path) -> Result<String, Error> {
    fs::read_to_string(path).map_err(|e| Error::Parse(format!("cannot read {}: {e}", path.display())))
}

fn load_spec(arg: &str) -> Result<NormSpec, Error> {
    let text = if arg.trim_start().starts_with('{') {
        arg.to_string()
    } else {
        read(Path::new(arg))?
    };
    NormSpec::from_json(&text)
}

fn parse_vector(arg: &str) -> Result<Vector, Error> {
    let inner = arg.trim().trim_matches(|c| matches!(c, '(' | ')' | '[' | ']'));
    let comps = inner
        .split(|c: char| c == ',' || c.is_whitespace())
        .filter(|s| !s.is_empty())
        .map(|s| {
            s.parse::<f64>()
                .map_err(|_| Error::Parse(format!("bad vector component {s:?} in {arg:?}")))
        })
        .collect::<Result<Vec<_>, _>>()?;
    Vector::new(comps).map_err(|e| Error::Parse(format!("bad vector {arg:?}: {e}")))
}

fn fmt_num(x: f64) -> String {
    let s = format!("{x:.12}");
    let s = if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.').to_string()
    } else {
        s
    };
    if s == "-0" {
        "0".into()
    } else {
        s
    }
}

fn fmt_vec(v: &[f64]) -> String {
    format!("[{}]", v.iter().map(|x| fmt_num(*x)).collect::<Vec<_>>().join(", "))
}

fn eval(cli: &Cli, spec: &str, vector: &str) -> Outcome {
    let spec = load_spec(spec)?;
    let v = parse_vector(vector)?;
    norm::check_domain(&spec, &v)?;
    let f = norm::evaluate(&spec, &v)?;
    let grad = norm::gradient_analytic(&spec, &v)?;
    let g = norm::fundamental_tensor_analytic(&spec, &v)?;
    let sig = classify_signature(&g, cli.tol.unwrap_or(finsler_ineq::DEFAULT_SIGNATURE_TOL))?;
    outln!("norm      {}", spec.label());
    outln!("F(v)      {}", fmt_num(f));
    outln!("grad F    {}", fmt_vec(grad.as_slice()));
    outln!(
        "g_v       [{}]",
        g.rows().iter().map(|r| fmt_vec(r)).collect::<Vec<_>>().join(", ")
    );
    outln!("signature {sig}");
    Ok(())
}

struct CheckArgs {
    spec: Option<NormSpec>,
    vectors: Vec<Vector>,
    p: Option<f64>,
    a: f64,
    b: f64,
    weights: Option<Vector>,
    panels: usize,
}

impl CheckArgs {
    fn spec(&self, name: &str) -> Result<&NormSpec, Error> {
        self.spec
            .as_ref()
            .ok_or_else(|| Error::argument(format!("check {name} needs --spec")))
    }

    fn vectors<const N: usize>(&self, name: &str) -> Result<[&Vector; N], Error> {
        let got: Vec<&Vector> = self.vectors.iter().collect();
        got.try_into().map_err(|v: Vec<&Vector>| {
            Error::argument(format!("check {name} takes {N} vector(s), got {}", v.len()))
        })
    }

    /// The exponent from `--p`, else from the spec.
    fn p(&self, name: &str) -> Result<f64, Error> {
        if let Some(p) = self.p {
            return Ok(p);
        }
        match self.spec.as_ref().map(|s| s.params()) {
            Some(NormParams::PPseudoNorm { p }) | Some(NormParams::EuclideanP { p }) => Ok(*p),
            _ => Err(Error::argument(format!("check {name} needs --p"))),
        }
    }

    fn stationary_base(&self, name: &str) -> Result<NormSpec, Error> {
        let spec = self.spec(name)?;
        match spec.params() {
            NormParams::Stationary { base } => Ok((**base).clone()),
            _ if norm::expected_signature(spec) == finsler_ineq::SignatureClass::PositiveDefinite => {
                Ok(spec.clone())
            }
            _ => Err(Error::argument(format!(
                "check {name} needs a stationary spec or its positive definite base"
            ))),
        }
    }
}

const CHECKS: [&str; 23] = [
    "fundamental",
    "reverse_triangle",
    "scaled_refinement",
    "integral_refinement",
    "angular_metric",
    "mth_root",
    "aczel",
    "popoviciu",
    "bellman",
    "am_gm",
    "weighted_am_gm",
    "holder",
    "minkowski",
    "kropina",
    "bimetric",
    "bimetric_plane",
    "finslerian_aczel",
    "aczel_lemma",
    "aczel_refinement_1",
    "aczel_refinement_2",
    "aczel_refinement_1_as_displayed",
    "signature",
    "list",
];

fn print_json<T: Serialize>(value: &T) -> Result<(), Error> {
    outln!("{}", json::to_string_pretty(value)?);
    Ok(())
}

fn reports(list: &[IneqReport]) -> Outcome {
    if list.len() == 1 {
        print_json(&list[0])?;
    } else {
        print_json(&list)?;
    }
    let bad: Vec<&str> = list
        .iter()
        .filter(|r| !r.verdict.holds())
        .map(|r| r.name.as_str())
        .collect();
    if bad.is_empty() {
        Ok(())
    } else {
        Err(Failure::Violated(format!("violated: {}", bad.join(", "))))
    }
}

fn passfail<T: Serialize>(value: &T, ok: bool, what: &str) -> Outcome {
    print_json(value)?;
    if ok {
        Ok(())
    } else {
        Err(Failure::Violated(format!("failed: {what}")))
    }
}

fn check(cli: &Cli, name: &str, args: &CheckArgs) -> Outcome {
    let mut tol = Tolerances::default();
    if let Some(t) = cli.tol {
        tol.set("verdict", t)?;
    }
    let tol = &tol;
    match name {
        "list" => {
            for c in &CHECKS[..CHECKS.len() - 1] {
                outln!("{c}");
            }
            Ok(())
        }
        "fundamental" => {
            let [v, w] = args.vectors(name)?;
            reports(&[ineq::check_fundamental(args.spec(name)?, v, w, tol)?])
        }
        "reverse_triangle" => {
            let [v, w] = args.vectors(name)?;
            reports(&[ineq::check_reverse_triangle(args.spec(name)?, v, w, tol)?])
        }
        "scaled_refinement" => {
            let [v, w] = args.vectors(name)?;
            let (lo, hi) = ineq::check_scaled_refinement(args.spec(name)?, v, w, args.a, args.b, tol)?;
            reports(&[lo, hi])
        }
        "integral_refinement" => {
            let [v, w] = args.vectors(name)?;
            let (lo, hi) = ineq::check_integral_refinement(args.spec(name)?, v, w, args.panels, tol)?;
            reports(&[lo, hi])
        }
        "angular_metric" => {
            let [v] = args.vectors(name)?;
            let r = ineq::check_angular_metric(args.spec(name)?, v, tol)?;
            passfail(&r, r.ok, name)
        }
        "mth_root" => {
            let [v] = args.vectors(name)?;
            let r = ineq::mth_root_signature_transfer(args.spec(name)?, v, tol)?;
            passfail(&r, r.identity_holds && r.implication_holds, name)
        }
        "signature" => {
            let [v] = args.vectors(name)?;
            let spec = args.spec(name)?;
            let g = norm::fundamental_tensor_analytic(spec, v)?;
            let sig = classify_signature(&g, tol.signature)?;
            let expected = norm::expected_signature(spec);
            passfail(&sig, sig.class == expected, &format!("expected {expected}"))
        }
        "aczel" => {
            let [v, w] = args.vectors(name)?;
            reports(&[ineq::check_aczel_classical(v, w, tol)?])
        }
        "popoviciu" => {
            let [a, b] = args.vectors(name)?;
            reports(&[ineq::check_popoviciu(a, b, args.p(name)?, tol)?])
        }
        "bellman" => {
            let [v, w] = args.vectors(name)?;
            reports(&[ineq::check_bellman(v, w, args.p(name)?, tol)?])
        }
        "am_gm" => {
            let [a] = args.vectors(name)?;
            reports(&[ineq::check_am_gm(a, tol)?])
        }
        "weighted_am_gm" => {
            let [x] = args.vectors(name)?;
            let weights = args
                .weights
                .as_ref()
                .ok_or_else(|| Error::argument("check weighted_am_gm needs --weights"))?;
            reports(&[ineq::check_weighted_am_gm(weights, x, tol)?])
        }
        "holder" | "minkowski" => {
            let [a, b] = args.vectors(name)?;
            let (h, m) = ineq::check_holder_minkowski(a, b, args.p(name)?, tol)?;
            reports(&[if name == "holder" { h } else { m }])
        }
        "kropina" => {
            let [v, w] = args.vectors(name)?;
            reports(&[ineq::check_kropina(v, w, tol)?])
        }
        "bimetric" => {
            let [v, w] = args.vectors(name)?;
            let h: SymTensor = match args.spec(name)?.params() {
                NormParams::Bimetric { h } => h.clone(),
                _ => return Err(Error::argument("check bimetric needs a bimetric --spec").into()),
            };
            reports(&[ineq::check_bimetric(v, w, &h, tol)?])
        }
        "bimetric_plane" => {
            let [v, w] = args.vectors(name)?;
            reports(&[ineq::check_bimetric_plane(v, w, tol)?])
        }
        "finslerian_aczel" => {
            let [v, w] = args.vectors(name)?;
            reports(&[ineq::finslerian_aczel(&args.stationary_base(name)?, v, w, tol)?])
        }
        "aczel_lemma" => {
            let [v, w] = args.vectors(name)?;
            let r = ineq::aczel_lemma_identity(&args.stationary_base(name)?, v, w, tol)?;
            passfail(&r, r.holds, name)
        }
        "aczel_refinement_1" | "aczel_refinement_2" | "aczel_refinement_1_as_displayed" => {
            let [v, w] = args.vectors(name)?;
            let r = ineq::aczel_refinements(&args.stationary_base(name)?, v, w, tol)?;
            reports(&[match name {
                "aczel_refinement_1" => r.first,
                "aczel_refinement_2" => r.second,
                _ => r.first_as_displayed,
            }])
        }
        _ => Err(Error::argument(format!(
            "unknown check {name:?}; valid checks: {}",
            CHECKS[..CHECKS.len() - 1].join(", ")
        ))
        .into()),
    }
}

fn verify(cli: &Cli, manifest: &Path, timing: bool) -> Outcome {
    let mut suite = SuiteManifest::from_json(&read(manifest)?)?;
    for run in &mut suite.runs {
        if let Some(seed) = cli.seed {
            run.sample_cfg.seed = seed;
        }
        if let Some(m) = cli.margin {
            run.sample_cfg.margin = m;
        }
        if let Some(t) = cli.tol {
            run.tolerances.insert("verdict".into(), t);
        }
    }
    let start = Instant::now();
    let mut report = campaign::run_suite(&suite)?;
    if timing {
        report.wall_time_s = Some(start.elapsed().as_secs_f64());
    }
    out!("{}", campaign::summary_table(&report));
    let text = json::to_string_pretty(&report)?;
    let out = cli
        .out
        .clone()
        .or_else(|| suite.output_path.as_ref().map(PathBuf::from));
    match out {
        Some(path) => {
            fs::write(&path, format!("{text}\n"))
                .map_err(|e| Error::Internal(format!("cannot write {}: {e}", path.display())))?;
            outln!("report: {}", path.display());
        }
        None => outln!("{text}"),
    }
    if report.pass {
        Ok(())
    } else {
        Err(Failure::Violated("campaign failed".into()))
    }
}

fn catalog() {
    for f in Family::ALL {
        let (formula, params) = f.describe();
        outln!("{f}");
        outln!("  {formula}");
        outln!("  params: {params}");
        let checks: Vec<&str> = CheckId::ALL
            .iter()
            .filter(|c| c.families().is_some_and(|fs| fs.contains(&f)))
            .map(|c| c.name())
            .collect();
        if !checks.is_empty() {
            outln!("  specific checks: {}", checks.join(", "));
        }
    }
}

fn sample(cli: &Cli, spec: &str, count: usize, pairs: bool) -> Outcome {
    let spec = load_spec(spec)?;
    let mut cfg = SampleConfig::new(cli.seed.unwrap_or(0), count);
    if let Some(m) = cli.margin {
        cfg.margin = m;
    }
    let text = if pairs {
        let set = sampling::sample_pairs(&spec, &cfg)?;
        sampling::replay_lines(&spec, &cfg, &set)?
    } else {
        let mut out = String::new();
        for (index, v) in sampling::sample_domain(&spec, &cfg)?.into_iter().enumerate() {
            let rec = sampling::ReplayRecord {
                index,
                seed: cfg.seed,
                family: spec.family(),
                v,
                w: None,
            };
            out.push_str(&rec.to_line()?);
            out.push('\n');
        }
        out
    };
    match &cli.out {
        Some(path) => fs::write(path, text)
            .map_err(|e| Error::Internal(format!("cannot write {}: {e}", path.display())))?,
        None => out!("{text}"),
    }
    Ok(())
}
