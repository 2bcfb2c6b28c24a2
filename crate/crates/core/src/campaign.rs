//! Batch verification campaigns: every listed check over a sampled pair set,
//! aggregated per outcome.
//!
//! Samples are evaluated in parallel but folded in index order, so reports
//! are identical however the work is scheduled.

use std::collections::BTreeMap;
use std::fmt::{self, Write as _};

use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::calculus::{self, FdConfig, DEFAULT_PANELS};
use crate::error::{Error, Result};
use crate::inequalities::{self as ineq, IneqReport, ReductionReport, Tolerances, Verdict};
use crate::linalg::{classify_signature, SymTensor, Vector};
use crate::norm::{self, Family, NormParams, NormSpec};
use crate::sampling::{self, SampleConfig};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CheckId {
    Signature,
    Oracle,
    Euler,
    AngularMetric,
    Fundamental,
    ReverseTriangle,
    ScaledRefinement,
    IntegralRefinement,
    Aczel,
    Popoviciu,
    Bellman,
    AmGm,
    WeightedAmGm,
    HolderMinkowski,
    Kropina,
    Bimetric,
    FinslerianAczel,
    MthRoot,
}

impl CheckId {
    pub const ALL: [CheckId; 18] = [
        CheckId::Signature,
        CheckId::Oracle,
        CheckId::Euler,
        CheckId::AngularMetric,
        CheckId::Fundamental,
        CheckId::ReverseTriangle,
        CheckId::ScaledRefinement,
        CheckId::IntegralRefinement,
        CheckId::Aczel,
        CheckId::Popoviciu,
        CheckId::Bellman,
        CheckId::AmGm,
        CheckId::WeightedAmGm,
        CheckId::HolderMinkowski,
        CheckId::Kropina,
        CheckId::Bimetric,
        CheckId::FinslerianAczel,
        CheckId::MthRoot,
    ];

    pub fn name(self) -> &'static str {
        match self {
            CheckId::Signature => "signature",
            CheckId::Oracle => "oracle",
            CheckId::Euler => "euler",
            CheckId::AngularMetric => "angular_metric",
            CheckId::Fundamental => "fundamental",
            CheckId::ReverseTriangle => "reverse_triangle",
            CheckId::ScaledRefinement => "scaled_refinement",
            CheckId::IntegralRefinement => "integral_refinement",
            CheckId::Aczel => "aczel",
            CheckId::Popoviciu => "popoviciu",
            CheckId::Bellman => "bellman",
            CheckId::AmGm => "am_gm",
            CheckId::WeightedAmGm => "weighted_am_gm",
            CheckId::HolderMinkowski => "holder_minkowski",
            CheckId::Kropina => "kropina",
            CheckId::Bimetric => "bimetric",
            CheckId::FinslerianAczel => "finslerian_aczel",
            CheckId::MthRoot => "mth_root",
        }
    }

    pub fn parse(name: &str) -> Result<Self> {
        CheckId::ALL
            .into_iter()
            .find(|c| c.name() == name)
            .ok_or_else(|| {
                Error::argument(format!(
                    "unknown check {name:?}; valid checks: {}",
                    CheckId::ALL.map(CheckId::name).join(", ")
                ))
            })
    }

    /// Checks that only make sense for one family (or a few).
    pub fn families(self) -> Option<&'static [Family]> {
        Some(match self {
            CheckId::Aczel => &[Family::MinkowskiBilinear],
            CheckId::Popoviciu | CheckId::Bellman => &[Family::PPseudoNorm],
            CheckId::AmGm => &[Family::BerwaldMoor],
            CheckId::WeightedAmGm => &[Family::WeightedGeometric],
            CheckId::HolderMinkowski => &[Family::EuclideanP],
            CheckId::Kropina => &[Family::Kropina],
            CheckId::Bimetric => &[Family::Bimetric],
            CheckId::FinslerianAczel => &[Family::Stationary],
            CheckId::MthRoot => &[Family::PPseudoNorm, Family::BerwaldMoor, Family::Bimetric],
            _ => return None,
        })
    }

    pub fn applies_to(self, spec: &NormSpec) -> bool {
        match self.families() {
            None => true,
            Some(fams) if self == CheckId::Aczel => {
                fams.contains(&spec.family())
                    && matches!(spec.params(), NormParams::MinkowskiBilinear { g }
                        if *g == SymTensor::minkowski(spec.dim()).expect("dim >= 2"))
            }
            Some(fams) => fams.contains(&spec.family()),
        }
    }
}

impl fmt::Display for CheckId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// One campaign: a norm, the checks to run and how to sample.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunManifest {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
    pub spec: NormSpec,
    pub checks: Vec<CheckId>,
    pub sample_cfg: SampleConfig,
    #[serde(default)]
    pub tolerances: BTreeMap<String, f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub output_path: Option<String>,
}

impl RunManifest {
    pub fn new(spec: NormSpec, checks: Vec<CheckId>, sample_cfg: SampleConfig) -> Self {
        RunManifest {
            label: None,
            spec,
            checks,
            sample_cfg,
            tolerances: BTreeMap::new(),
            output_path: None,
        }
    }

    pub fn validate(&self) -> Result<Tolerances> {
        if self.checks.is_empty() {
            return Err(Error::argument("manifest lists no checks"));
        }
        for c in &self.checks {
            if !c.applies_to(&self.spec) {
                return Err(Error::argument(format!(
                    "check {c} does not apply to {}",
                    self.spec.label()
                )));
            }
        }
        self.sample_cfg.validate()?;
        Tolerances::with_overrides(&self.tolerances)
    }

    pub fn display_label(&self) -> String {
        self.label.clone().unwrap_or_else(|| self.spec.label())
    }
}

/// Several runs reported together.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SuiteManifest {
    pub runs: Vec<RunManifest>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub output_path: Option<String>,
}

impl SuiteManifest {
    /// Parses either a suite (`{"runs": [...]}`) or a single run manifest.
    pub fn from_json(text: &str) -> Result<Self> {
        let value: serde_json::Value =
            serde_json::from_str(text).map_err(|e| Error::Parse(format!("manifest: {e}")))?;
        let parsed = if value.get("runs").is_some() {
            serde_json::from_value::<SuiteManifest>(value)
        } else {
            serde_json::from_value::<RunManifest>(value).map(|run| SuiteManifest {
                output_path: run.output_path.clone(),
                runs: vec![run],
            })
        };
        let suite = parsed.map_err(|e| Error::Parse(format!("manifest: {e}")))?;
        if suite.runs.is_empty() {
            return Err(Error::argument("manifest has no runs"));
        }
        Ok(suite)
    }

    pub fn validate(&self) -> Result<()> {
        for (i, run) in self.runs.iter().enumerate() {
            run.validate()
                .map_err(|e| Error::argument(format!("run {i} ({}): {e}", run.display_label())))?;
        }
        Ok(())
    }
}

/// One evaluated outcome of one check at one sample.
#[derive(Debug, Clone, PartialEq)]
struct Outcome {
    name: String,
    slack: f64,
    verdict: Verdict,
    strict_expected: bool,
    collinear: bool,
}

impl Outcome {
    fn report(name: impl Into<String>, r: &IneqReport) -> Self {
        Outcome {
            name: name.into(),
            slack: r.slack,
            verdict: r.verdict,
            strict_expected: r.strict_expected,
            collinear: r.collinear,
        }
    }

    /// `deviation ≤ bound`, with slack `bound − deviation`.
    fn bound(name: impl Into<String>, deviation: f64, bound: f64) -> Self {
        let slack = if deviation.is_nan() { f64::NEG_INFINITY } else { bound - deviation };
        Outcome {
            name: name.into(),
            slack,
            verdict: if slack >= 0.0 { Verdict::Holds } else { Verdict::Violated },
            strict_expected: false,
            collinear: false,
        }
    }

    fn flag(name: impl Into<String>, ok: bool) -> Self {
        Outcome::bound(name, if ok { 0.0 } else { 1.0 }, 0.5)
    }
}

fn reduction(out: &mut Vec<Outcome>, prefix: &str, r: &ReductionReport) {
    out.push(Outcome::report(format!("{prefix}.direct"), &r.direct));
    out.push(Outcome::report(format!("{prefix}.machinery"), &r.machinery));
    out.push(Outcome::flag(format!("{prefix}.agreement"), r.agrees));
    out.push(Outcome::bound(format!("{prefix}.slack_gap"), r.slack_gap, r.gap_tol));
}

fn powered(v: &Vector, e: f64) -> Result<Vector> {
    Vector::new(v.iter().map(|c| c.powf(e)).collect())
}

struct Runner<'a> {
    spec: &'a NormSpec,
    checks: &'a [CheckId],
    cfg: SampleConfig,
    tol: Tolerances,
}

impl Runner<'_> {
    fn refinement_weights(&self, index: usize) -> (f64, f64) {
        let mut rng = sampling::substream(self.cfg.seed, "ab", index as u64);
        let a: f64 = rng.random_range(0.1..1.0);
        let b = a * rng.random_range(1.0..4.0);
        (a, b)
    }

    fn sample(&self, index: usize, v: &Vector, w: &Vector) -> Result<Vec<Outcome>> {
        let mut out = Vec::new();
        for check in self.checks {
            self.check(*check, index, v, w, &mut out)
                .map_err(|e| match e {
                    Error::Internal(m) => Error::Internal(format!(
                        "{} sample {index}: {check}: {m}",
                        self.spec.family()
                    )),
                    e => Error::Internal(format!(
                        "{} sample {index}: {check}: {e}",
                        self.spec.family()
                    )),
                })?;
        }
        Ok(out)
    }

    fn check(&self, check: CheckId, index: usize, v: &Vector, w: &Vector, out: &mut Vec<Outcome>) -> Result<()> {
        let spec = self.spec;
        let tol = &self.tol;
        match check {
            CheckId::Signature => {
                let g = norm::fundamental_tensor_analytic(spec, v)?;
                let sig = classify_signature(&g, tol.signature)?;
                out.push(Outcome::flag("signature", sig.class == norm::expected_signature(spec)));
            }
            CheckId::Oracle => {
                let g = norm::fundamental_tensor_analytic(spec, v)?;
                let fd = calculus::fd_fundamental_tensor(spec, v, FdConfig::hessian())?;
                out.push(Outcome::bound(
                    "oracle.tensor",
                    g.max_abs_diff(&fd)?,
                    tol.fd * (1.0 + g.max_abs()),
                ));
                let ell = norm::gradient_analytic(spec, v)?;
                let fd = calculus::fd_gradient(spec, v, FdConfig::gradient())?;
                let dev = ell.iter().zip(fd.iter()).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);
                out.push(Outcome::bound("oracle.gradient", dev, tol.fd * (1.0 + ell.norm_inf())));
            }
            CheckId::Euler => {
                let f = norm::evaluate(spec, v)?;
                let ell = norm::gradient_analytic(spec, v)?;
                out.push(Outcome::bound(
                    "euler.gradient",
                    (ell.dot(v)? - f).abs(),
                    tol.verdict * (1.0 + f),
                ));
                let g = norm::fundamental_tensor_analytic(spec, v)?;
                let gvv = crate::linalg::bilinear(&g, v, v)?;
                let n = v.dim();
                let scale = 1.0
                    + (0..n)
                        .flat_map(|i| (0..n).map(move |j| (i, j)))
                        .map(|(i, j)| (g.get(i, j) * v[i] * v[j]).abs())
                        .sum::<f64>();
                out.push(Outcome::bound("euler.tensor", (gvv - f * f).abs(), tol.verdict * scale));
            }
            CheckId::AngularMetric => {
                let r = ineq::check_angular_metric(spec, v, tol)?;
                out.push(Outcome::bound("angular_metric.radical", r.radical_residual, r.tol_used));
                out.push(Outcome::bound("angular_metric.sign", r.sign_excess, r.tol_used));
            }
            CheckId::Fundamental => {
                out.push(Outcome::report("fundamental", &ineq::check_fundamental(spec, v, w, tol)?));
            }
            CheckId::ReverseTriangle => {
                let r = ineq::check_reverse_triangle(spec, v, w, tol)?;
                out.push(Outcome::report("reverse_triangle", &r));
            }
            CheckId::ScaledRefinement => {
                let (a, b) = self.refinement_weights(index);
                let (lo, hi) = ineq::check_scaled_refinement(spec, v, w, a, b, tol)?;
                out.push(Outcome::report("scaled_refinement.lower", &lo));
                out.push(Outcome::report("scaled_refinement.upper", &hi));
            }
            CheckId::IntegralRefinement => {
                let (lo, hi) = ineq::check_integral_refinement(spec, v, w, DEFAULT_PANELS, tol)?;
                out.push(Outcome::report("integral_refinement.lower", &lo));
                out.push(Outcome::report("integral_refinement.upper", &hi));
            }
            CheckId::Aczel => reduction(out, "aczel", &ineq::aczel_reduction(v, w, tol)?),
            CheckId::Popoviciu => {
                let p = exponent(spec)?;
                let a = powered(v, p - 1.0)?;
                reduction(out, "popoviciu", &ineq::popoviciu_reduction(&a, w, p, tol)?);
            }
            CheckId::Bellman => {
                let p = exponent(spec)?;
                reduction(out, "bellman", &ineq::bellman_reduction(v, w, p, tol)?);
            }
            CheckId::AmGm => reduction(out, "am_gm", &ineq::am_gm_reduction(v, w, tol)?),
            CheckId::WeightedAmGm => {
                let NormParams::WeightedGeometric { weights } = spec.params() else {
                    return Err(Error::argument("weighted_am_gm needs weighted_geometric"));
                };
                let weights = Vector::from_slice(weights)?;
                let r = ineq::weighted_am_gm_reduction(&weights, v, w, tol)?;
                reduction(out, "weighted_am_gm", &r);
            }
            CheckId::HolderMinkowski => {
                let p = exponent(spec)?;
                let a = powered(v, p - 1.0)?;
                let (h, _) = ineq::holder_minkowski_reduction(&a, w, p, tol)?;
                let (_, m) = ineq::holder_minkowski_reduction(v, w, p, tol)?;
                reduction(out, "holder", &h);
                reduction(out, "minkowski", &m);
            }
            CheckId::Kropina => reduction(out, "kropina", &ineq::kropina_reduction(v, w, tol)?),
            CheckId::Bimetric => {
                let NormParams::Bimetric { h } = spec.params() else {
                    return Err(Error::argument("bimetric check needs a bimetric norm"));
                };
                reduction(out, "bimetric", &ineq::bimetric_reduction(v, w, h, tol)?);
            }
            CheckId::FinslerianAczel => {
                let NormParams::Stationary { base } = spec.params() else {
                    return Err(Error::argument("finslerian_aczel needs a stationary norm"));
                };
                out.push(Outcome::report(
                    "finslerian_aczel",
                    &ineq::finslerian_aczel(base, v, w, tol)?,
                ));
                let l = ineq::aczel_lemma_identity(base, v, w, tol)?;
                out.push(Outcome::bound("finslerian_aczel.lemma", l.deviation, l.tol_used));
                let r = ineq::aczel_refinements(base, v, w, tol)?;
                out.push(Outcome::report("finslerian_aczel.refinement_1", &r.first));
                out.push(Outcome::report("finslerian_aczel.refinement_2", &r.second));
            }
            CheckId::MthRoot => {
                let r = ineq::mth_root_signature_transfer(spec, v, tol)?;
                out.push(Outcome::bound("mth_root.identity", r.identity_deviation, r.identity_tol));
                out.push(Outcome::flag("mth_root.implication", r.implication_holds));
            }
        }
        Ok(())
    }
}

fn exponent(spec: &NormSpec) -> Result<f64> {
    match spec.params() {
        NormParams::PPseudoNorm { p } | NormParams::EuclideanP { p } => Ok(*p),
        _ => Err(Error::argument(format!("{} has no exponent", spec.family()))),
    }
}

/// The sample with the smallest slack for one outcome.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WorstCase {
    pub index: usize,
    pub slack: f64,
    pub v: Vector,
    pub w: Vector,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckAggregate {
    pub name: String,
    pub count: usize,
    pub min_slack: f64,
    pub violations: usize,
    pub equality_cases: usize,
    pub collinear_equality_cases: usize,
    /// Equality cases of strict-expected checks at non-collinear pairs.
    pub unexpected_equalities: usize,
    pub strict_expected: bool,
    pub worst: WorstCase,
    /// The first sample counted in `unexpected_equalities`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub first_unexpected: Option<WorstCase>,
    pub pass: bool,
}

impl CheckAggregate {
    fn start(o: &Outcome, index: usize, v: &Vector, w: &Vector) -> Self {
        CheckAggregate {
            name: o.name.clone(),
            count: 0,
            min_slack: f64::INFINITY,
            violations: 0,
            equality_cases: 0,
            collinear_equality_cases: 0,
            unexpected_equalities: 0,
            strict_expected: false,
            worst: WorstCase {
                index,
                slack: f64::INFINITY,
                v: v.clone(),
                w: w.clone(),
            },
            first_unexpected: None,
            pass: true,
        }
    }

    fn add(&mut self, o: &Outcome, index: usize, v: &Vector, w: &Vector) {
        self.count += 1;
        self.strict_expected |= o.strict_expected;
        match o.verdict {
            Verdict::Violated => self.violations += 1,
            Verdict::HoldsWithEquality => {
                self.equality_cases += 1;
                if o.collinear {
                    self.collinear_equality_cases += 1;
                } else if o.strict_expected {
                    self.unexpected_equalities += 1;
                    if self.first_unexpected.is_none() {
                        self.first_unexpected = Some(WorstCase {
                            index,
                            slack: o.slack,
                            v: v.clone(),
                            w: w.clone(),
                        });
                    }
                }
            }
            Verdict::Holds => {}
        }
        // Strict comparison keeps the lowest index among ties.
        if o.slack < self.min_slack || self.count == 1 {
            self.min_slack = o.slack;
            self.worst = WorstCase {
                index,
                slack: o.slack,
                v: v.clone(),
                w: w.clone(),
            };
        }
        self.pass = self.violations == 0 && self.unexpected_equalities == 0;
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunReport {
    pub label: String,
    pub manifest: RunManifest,
    pub tolerances: Tolerances,
    pub checks: Vec<CheckAggregate>,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CampaignReport {
    pub runs: Vec<RunReport>,
    pub pass: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub wall_time_s: Option<f64>,
}

pub fn run_campaign(manifest: &RunManifest) -> Result<RunReport> {
    let tol = manifest.validate()?;
    let spec = &manifest.spec;
    let pairs = sampling::sample_pairs(spec, &manifest.sample_cfg)?;
    let runner = Runner {
        spec,
        checks: &manifest.checks,
        cfg: manifest.sample_cfg,
        tol,
    };
    let per_sample: Vec<Result<Vec<Outcome>>> = pairs
        .par_iter()
        .enumerate()
        .map(|(i, (v, w))| runner.sample(i, v, w))
        .collect();

    let mut aggs: Vec<CheckAggregate> = Vec::new();
    for (i, outcomes) in per_sample.into_iter().enumerate() {
        let (v, w) = &pairs[i];
        for o in outcomes? {
            let slot = match aggs.iter().position(|a| a.name == o.name) {
                Some(k) => k,
                None => {
                    aggs.push(CheckAggregate::start(&o, i, v, w));
                    aggs.len() - 1
                }
            };
            aggs[slot].add(&o, i, v, w);
        }
    }
    let pass = aggs.iter().all(|a| a.pass);
    Ok(RunReport {
        label: manifest.display_label(),
        manifest: manifest.clone(),
        tolerances: tol,
        checks: aggs,
        pass,
    })
}

pub fn run_suite(suite: &SuiteManifest) -> Result<CampaignReport> {
    suite.validate()?;
    let runs = suite
        .runs
        .iter()
        .map(run_campaign)
        .collect::<Result<Vec<_>>>()?;
    let pass = runs.iter().all(|r| r.pass);
    Ok(CampaignReport {
        runs,
        pass,
        wall_time_s: None,
    })
}

/// An aligned plain-text table of every aggregate.
pub fn summary_table(report: &CampaignReport) -> String {
    let mut s = String::new();
    let width = report
        .runs
        .iter()
        .flat_map(|r| r.checks.iter().map(|c| c.name.len()))
        .max()
        .unwrap_or(5)
        .max(5);
    for run in &report.runs {
        let _ = writeln!(s, "== {} ({})", run.label, if run.pass { "pass" } else { "FAIL" });
        let _ = writeln!(
            s,
            "  {:<width$}  {:>7}  {:>12}  {:>5}  {:>6}  {:>6}  {:>6}",
            "check", "count", "min_slack", "viol", "equal", "coll", "unexp"
        );
        for c in &run.checks {
            let _ = writeln!(
                s,
                "  {:<width$}  {:>7}  {:>12.4e}  {:>5}  {:>6}  {:>6}  {:>6}",
                c.name,
                c.count,
                c.min_slack,
                c.violations,
                c.equality_cases,
                c.collinear_equality_cases,
                c.unexpected_equalities
            );
        }
    }
    let _ = writeln!(s, "overall: {}", if report.pass { "pass" } else { "FAIL" });
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run(spec: NormSpec, checks: &[CheckId], count: usize) -> RunReport {
        let m = RunManifest::new(spec, checks.to_vec(), SampleConfig::new(17, count));
        run_campaign(&m).unwrap()
    }

    fn agg<'a>(r: &'a RunReport, name: &str) -> &'a CheckAggregate {
        r.checks.iter().find(|c| c.name == name).unwrap()
    }

    #[test]
    fn generic_checks_pass_on_minkowski() {
        let r = run(
            NormSpec::minkowski(3).unwrap(),
            &[CheckId::Signature, CheckId::Oracle, CheckId::Fundamental, CheckId::Aczel],
            200,
        );
        assert!(r.pass, "{r:#?}");
        let f = agg(&r, "fundamental");
        assert_eq!(f.count, 200);
        assert_eq!(f.equality_cases, f.collinear_equality_cases);
        assert!(f.collinear_equality_cases >= 10);
    }

    #[test]
    fn tiny_tolerance_forces_equality_violations() {
        let mut m = RunManifest::new(
            NormSpec::kropina(3).unwrap(),
            vec![CheckId::Fundamental],
            SampleConfig::new(2, 200),
        );
        m.tolerances.insert("verdict".into(), 1e-30);
        let r = run_campaign(&m).unwrap();
        assert!(!r.pass);
        assert!(agg(&r, "fundamental").violations > 0);
    }

    #[test]
    fn applicability_and_names() {
        let spec = NormSpec::berwald_moor(3).unwrap();
        let m = RunManifest::new(spec, vec![CheckId::Kropina], SampleConfig::new(1, 1));
        assert!(matches!(m.validate(), Err(Error::Argument(_))));
        let tilted = NormSpec::minkowski_bilinear(
            SymTensor::from_rows(vec![vec![2.0, 0.1], vec![0.1, -1.0]]).unwrap(),
        )
        .unwrap();
        assert!(!CheckId::Aczel.applies_to(&tilted));
        assert_eq!(CheckId::parse("mth_root").unwrap(), CheckId::MthRoot);
        assert!(CheckId::parse("nope").unwrap_err().to_string().contains("am_gm"));
    }

    #[test]
    fn worst_case_keeps_first_of_ties() {
        let v = Vector::from_slice(&[2.0, 1.0]).unwrap();
        let o = Outcome::flag("x", true);
        let mut a = CheckAggregate::start(&o, 0, &v, &v);
        a.add(&o, 3, &v, &v);
        a.add(&o, 1, &v, &v);
        assert_eq!(a.worst.index, 3);
    }

    #[test]
    fn suite_parsing_accepts_single_runs() {
        let text = r#"{"spec": {"family": "kropina", "dim": 2, "params": {}},
                       "checks": ["fundamental"],
                       "sample_cfg": {"seed": 1, "count": 3}}"#;
        let s = SuiteManifest::from_json(text).unwrap();
        assert_eq!(s.runs.len(), 1);
        let text = r#"{"spec": {"family": "kropina", "dim": 2, "params": {}},
                       "checks": ["fundamental"],
                       "sample_cfg": {"seed": 1, "count": 0}}"#;
        let s = SuiteManifest::from_json(text).unwrap();
        assert!(matches!(s.validate(), Err(Error::Argument(_))));
        assert!(SuiteManifest::from_json(r#"{"runs": [], "extra": 1}"#).is_err());
    }

    #[test]
    fn deterministic_reports() {
        let m = RunManifest::new(
            NormSpec::p_pseudo_norm(4, 3.0).unwrap(),
            vec![CheckId::Popoviciu, CheckId::Bellman, CheckId::MthRoot],
            SampleConfig::new(5, 300),
        );
        let a = crate::json::to_string_pretty(&run_campaign(&m).unwrap()).unwrap();
        let b = crate::json::to_string_pretty(&run_campaign(&m).unwrap()).unwrap();
        assert_eq!(a, b);
    }
}
