//! Reproducible sampling of vectors strictly inside a norm's cone.
//!
//! Every sample `i` draws from its own ChaCha8 stream keyed by
//! `(seed, stream name, i)`, so samples can be generated in any order or in
//! parallel and adding a stream never perturbs the others.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Exp1, StandardNormal};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::json;
use crate::linalg::{SymTensor, Vector};
use crate::norm::{self, Family, NormParams, NormSpec};

pub const DEFAULT_MARGIN: f64 = 0.05;
pub const DEFAULT_SCALE_RANGE: (f64, f64) = (0.5, 2.0);
pub const DEFAULT_COLLINEAR_FRACTION: f64 = 0.05;
pub const DEFAULT_MIN_SEPARATION: f64 = 1e-3;
/// Attempts per sample before giving up on rejection sampling.
pub const ATTEMPT_BUDGET: usize = 10_000;

/// Constructions aim slightly inside the requested margin so that rounding
/// in the final rescaling cannot push a point back across it.
const MARGIN_BUMP: f64 = 1.05;

fn default_margin() -> f64 {
    DEFAULT_MARGIN
}

fn default_scale_range() -> (f64, f64) {
    DEFAULT_SCALE_RANGE
}

fn default_collinear_fraction() -> f64 {
    DEFAULT_COLLINEAR_FRACTION
}

fn default_min_separation() -> f64 {
    DEFAULT_MIN_SEPARATION
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SampleConfig {
    pub seed: u64,
    pub count: usize,
    #[serde(default = "default_margin")]
    pub margin: f64,
    /// Samples are rescaled so that `F(v)` is uniform in this range.
    #[serde(default = "default_scale_range")]
    pub scale_range: (f64, f64),
    /// Fraction of pairs built as `w = λv`.
    #[serde(default = "default_collinear_fraction")]
    pub collinear_fraction: f64,
    /// Lower bound on `‖v/F(v) − w/F(w)‖_∞` for pairs not built collinear.
    /// Inequality slacks vanish quadratically near the ray of `v`, so closer
    /// pairs cannot be told apart from equality cases at any useful tolerance.
    #[serde(default = "default_min_separation")]
    pub min_separation: f64,
}

impl SampleConfig {
    pub fn new(seed: u64, count: usize) -> Self {
        SampleConfig {
            seed,
            count,
            margin: DEFAULT_MARGIN,
            scale_range: DEFAULT_SCALE_RANGE,
            collinear_fraction: DEFAULT_COLLINEAR_FRACTION,
            min_separation: DEFAULT_MIN_SEPARATION,
        }
    }

    pub fn with_margin(mut self, margin: f64) -> Self {
        self.margin = margin;
        self
    }

    pub fn with_scale_range(mut self, min: f64, max: f64) -> Self {
        self.scale_range = (min, max);
        self
    }

    pub fn with_collinear_fraction(mut self, fraction: f64) -> Self {
        self.collinear_fraction = fraction;
        self
    }

    pub fn with_min_separation(mut self, separation: f64) -> Self {
        self.min_separation = separation;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if !(0.0..=0.5).contains(&self.min_separation) {
            return Err(Error::argument(format!(
                "minimum separation must lie in [0, 0.5], got {}",
                self.min_separation
            )));
        }
        if self.count < 1 {
            return Err(Error::argument("sample count must be >= 1"));
        }
        if !(0.0..0.5).contains(&self.margin) {
            return Err(Error::argument(format!(
                "sample margin must lie in [0, 0.5), got {}",
                self.margin
            )));
        }
        let (lo, hi) = self.scale_range;
        if !(lo > 0.0 && lo <= hi && hi.is_finite()) {
            return Err(Error::argument(format!(
                "scale range must satisfy 0 < min <= max, got ({lo}, {hi})"
            )));
        }
        if !(0.0..=1.0).contains(&self.collinear_fraction) {
            return Err(Error::argument(format!(
                "collinear fraction must lie in [0, 1], got {}",
                self.collinear_fraction
            )));
        }
        Ok(())
    }
}

fn fnv1a(name: &str) -> u64 {
    name.bytes().fold(0xcbf2_9ce4_8422_2325, |h, b| {
        (h ^ u64::from(b)).wrapping_mul(0x0000_0100_0000_01b3)
    })
}

/// The generator for sample `index` of the named stream.
pub fn substream(seed: u64, name: &str, index: u64) -> ChaCha8Rng {
    let mut key = [0u8; 32];
    key[..8].copy_from_slice(&seed.to_le_bytes());
    key[8..16].copy_from_slice(&fnv1a(name).to_le_bytes());
    key[16..24].copy_from_slice(&index.to_le_bytes());
    ChaCha8Rng::from_seed(key)
}

/// Whether pair `index` is built collinear: a fraction `f` of indices,
/// spread evenly.
pub fn is_collinear_index(index: usize, fraction: f64) -> bool {
    let at = |k: usize| (k as f64 * fraction + 1e-12).floor();
    at(index + 1) > at(index)
}

/// A `g`-orthonormal frame `f₀ = e₀/√g₀₀, f₁, …, fₙ` with `g(fα, fα) = −1`.
fn lorentz_frame(g: &SymTensor) -> Result<Vec<Vec<f64>>> {
    let n = g.dim();
    let form = |x: &[f64], y: &[f64]| -> f64 {
        (0..n)
            .map(|i| x[i] * g.row(i).iter().zip(y).map(|(a, b)| a * b).sum::<f64>())
            .sum()
    };
    let mut frame: Vec<Vec<f64>> = Vec::with_capacity(n);
    let mut e0 = vec![0.0; n];
    e0[0] = 1.0 / g.get(0, 0).sqrt();
    frame.push(e0);
    for i in 1..n {
        let mut x = vec![0.0; n];
        x[i] = 1.0;
        for f in &frame {
            let c = form(&x, f) / form(f, f);
            for (xk, fk) in x.iter_mut().zip(f) {
                *xk -= c * fk;
            }
        }
        let q = form(&x, &x);
        if !(q < 0.0) {
            return Err(Error::Internal(format!(
                "metric is not Lorentzian along e{i} (g-norm {q})"
            )));
        }
        let s = (-q).sqrt();
        frame.push(x.into_iter().map(|c| c / s).collect());
    }
    Ok(frame)
}

/// A point `f₀ + Σ sα fα` with `|s|² ≤ 1 − m`, so `g(v,v) ≥ m·τ²` with `τ = 1`.
fn draw_cone(frame: &[Vec<f64>], m: f64, rng: &mut ChaCha8Rng) -> Vec<f64> {
    let n = frame.len() - 1;
    let dir: Vec<f64> = (0..n).map(|_| StandardNormal.sample(rng)).collect();
    let len = dir.iter().map(|c: &f64| c * c).sum::<f64>().sqrt().max(f64::MIN_POSITIVE);
    let u: f64 = rng.random();
    let radius = (1.0 - m).sqrt() * u.powf(1.0 / n as f64);
    let mut v = frame[0].clone();
    for (a, f) in frame[1..].iter().enumerate() {
        let s = radius * dir[a] / len;
        for (vk, fk) in v.iter_mut().zip(f) {
            *vk += s * fk;
        }
    }
    v
}

enum Plan {
    Orthant,
    PowerCone { p: f64, budget: f64 },
    Cone { frame: Vec<Vec<f64>> },
    Degenerate { k: usize },
    Stationary { base: NormSpec },
}

fn plan(spec: &NormSpec, m: f64) -> Result<Plan> {
    let n = spec.dim() - 1;
    Ok(match spec.params() {
        NormParams::EuclideanP { .. }
        | NormParams::BerwaldMoor
        | NormParams::WeightedGeometric { .. } => Plan::Orthant,
        NormParams::PPseudoNorm { p } => {
            let budget = 1.0 - m - n as f64 * m.powf(*p);
            if !(budget > 0.0) {
                return Err(Error::argument(format!(
                    "margin {m} leaves no interior for {}",
                    spec.label()
                )));
            }
            Plan::PowerCone { p: *p, budget }
        }
        NormParams::MinkowskiBilinear { g } => Plan::Cone {
            frame: lorentz_frame(g)?,
        },
        NormParams::Kropina | NormParams::Bimetric { .. } => Plan::Cone {
            frame: lorentz_frame(&SymTensor::minkowski(spec.dim())?)?,
        },
        NormParams::DegenerateMinkowski { k } => Plan::Degenerate { k: *k },
        NormParams::Stationary { base } => {
            let floor = norm::raw_value(base, &vec![m; n]);
            if !(floor < 1.0 - m) {
                return Err(Error::argument(format!(
                    "margin {m} leaves no interior for {}",
                    spec.label()
                )));
            }
            Plan::Stationary {
                base: (**base).clone(),
            }
        }
    })
}

fn draw(plan: &Plan, dim: usize, m: f64, rng: &mut ChaCha8Rng) -> Vec<f64> {
    match plan {
        Plan::Orthant => (0..dim).map(|_| rng.random_range(m..1.0)).collect(),
        Plan::PowerCone { p, budget } => {
            // (vᵅ)^p = m^p + share of u·budget, so Σ(vᵅ)^p ≤ 1 − m with v⁰ = 1.
            let e: Vec<f64> = (1..dim).map(|_| Exp1.sample(rng)).collect();
            let total: f64 = e.iter().sum();
            let u: f64 = rng.random();
            let mp = m.powf(*p);
            std::iter::once(1.0)
                .chain(e.iter().map(|x| (mp + u * budget * x / total).powf(1.0 / p)))
                .collect()
        }
        Plan::Cone { frame } => draw_cone(frame, m, rng),
        Plan::Degenerate { k } => {
            let frame = lorentz_frame(&SymTensor::minkowski(k + 1).expect("k >= 1"))
                .expect("eta is Lorentzian");
            let mut v = draw_cone(&frame, m, rng);
            v.extend((k + 1..dim).map(|_| rng.random_range(-1.0..1.0)));
            v
        }
        Plan::Stationary { base } => {
            let n = dim - 1;
            let floor = norm::raw_value(base, &vec![m; n]);
            let target = rng.random_range(floor..1.0 - m);
            let y: Vec<f64> = (0..n).map(|_| rng.random_range(0.0..1.0)).collect();
            let top = y.iter().cloned().fold(f64::MIN_POSITIVE, f64::max);
            let at = |c: f64| -> Vec<f64> { y.iter().map(|yi| m + c * yi).collect() };
            let (mut lo, mut hi) = (0.0, target / top);
            for _ in 0..80 {
                let mid = 0.5 * (lo + hi);
                if norm::raw_value(base, &at(mid)) < target {
                    lo = mid;
                } else {
                    hi = mid;
                }
            }
            std::iter::once(1.0).chain(at(lo)).collect()
        }
    }
}

struct Sampler<'a> {
    spec: &'a NormSpec,
    cfg: SampleConfig,
    plan: Plan,
    inner_margin: f64,
}

impl<'a> Sampler<'a> {
    fn new(spec: &'a NormSpec, cfg: &SampleConfig) -> Result<Self> {
        cfg.validate()?;
        let inner_margin = cfg.margin * MARGIN_BUMP;
        Ok(Sampler {
            spec,
            cfg: *cfg,
            plan: plan(spec, inner_margin)?,
            inner_margin,
        })
    }

    /// A point of the cone with margin, before rescaling.
    fn raw(&self, stream: &str, index: usize, accept: impl Fn(&Vector) -> bool) -> Result<Vector> {
        let mut rng = substream(self.cfg.seed, stream, index as u64);
        for _ in 0..ATTEMPT_BUDGET {
            let v = Vector::from_vec_unchecked(draw(&self.plan, self.spec.dim(), self.inner_margin, &mut rng));
            if v.is_finite() && norm::domain_contains(self.spec, &v, self.cfg.margin) && accept(&v) {
                return Ok(v);
            }
        }
        Err(Error::SamplingExhausted {
            family: self.spec.family().to_string(),
            rate: 0.0,
        })
    }

    fn rescale(&self, v: &Vector, target: f64) -> Result<Vector> {
        let f = norm::evaluate(self.spec, v)?;
        let out = v.scaled(target / f);
        if !norm::domain_contains(self.spec, &out, self.cfg.margin) {
            return Err(Error::Internal(format!(
                "rescaled sample left the cone of {} at {out}",
                self.spec.label()
            )));
        }
        Ok(out)
    }

    fn scales(&self, index: usize) -> (f64, f64) {
        let mut rng = substream(self.cfg.seed, "scale", index as u64);
        let (lo, hi) = self.cfg.scale_range;
        let mut draw = || if lo < hi { rng.random_range(lo..=hi) } else { lo };
        let a = draw();
        let b = draw();
        (a, b)
    }

    fn vector(&self, index: usize) -> Result<Vector> {
        let v = self.raw("v", index, |_| true)?;
        self.rescale(&v, self.scales(index).0)
    }

    fn pair(&self, index: usize) -> Result<(Vector, Vector)> {
        let v = self.vector(index)?;
        let (_, sw) = self.scales(index);
        let w = if is_collinear_index(index, self.cfg.collinear_fraction) {
            let fv = norm::evaluate(self.spec, &v)?;
            v.scaled(sw / fv)
        } else {
            let fv = norm::evaluate(self.spec, &v)?;
            let separated = |w: &Vector| {
                let fw = norm::raw_value(self.spec, w.as_slice());
                let d = v
                    .iter()
                    .zip(w.iter())
                    .map(|(a, b)| (a / fv - b / fw).abs())
                    .fold(0.0, f64::max);
                d >= self.cfg.min_separation
            };
            self.rescale(&self.raw("w", index, separated)?, sw)?
        };
        Ok((v, w))
    }
}

fn in_order<T: Send>(count: usize, f: impl Fn(usize) -> Result<T> + Sync + Send) -> Result<Vec<T>> {
    let results: Vec<Result<T>> = (0..count).into_par_iter().map(f).collect();
    results.into_iter().collect()
}

/// `cfg.count` vectors inside the cone with margin `cfg.margin`.
pub fn sample_domain(spec: &NormSpec, cfg: &SampleConfig) -> Result<Vec<Vector>> {
    let s = Sampler::new(spec, cfg)?;
    in_order(cfg.count, |i| s.vector(i))
}

/// `cfg.count` pairs; a fraction `cfg.collinear_fraction` of them is collinear.
pub fn sample_pairs(spec: &NormSpec, cfg: &SampleConfig) -> Result<Vec<(Vector, Vector)>> {
    let s = Sampler::new(spec, cfg)?;
    in_order(cfg.count, |i| s.pair(i))
}

/// One line of the sample replay format.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ReplayRecord {
    pub index: usize,
    pub seed: u64,
    pub family: Family,
    pub v: Vector,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub w: Option<Vector>,
}

impl ReplayRecord {
    pub fn to_line(&self) -> Result<String> {
        json::to_string_compact(self)
    }

    pub fn from_line(line: &str) -> Result<Self> {
        Ok(serde_json::from_str(line)?)
    }
}

/// Replay lines for a pair set, one JSON record per line.
pub fn replay_lines(spec: &NormSpec, cfg: &SampleConfig, pairs: &[(Vector, Vector)]) -> Result<String> {
    let mut out = String::new();
    for (index, (v, w)) in pairs.iter().enumerate() {
        let rec = ReplayRecord {
            index,
            seed: cfg.seed,
            family: spec.family(),
            v: v.clone(),
            w: Some(w.clone()),
        };
        out.push_str(&rec.to_line()?);
        out.push('\n');
    }
    Ok(out)
}
