//! The catalog of (possibly degenerate) Lorentz-Finsler norms.
//!
//! Every family is a positively 1-homogeneous function `F` on an open convex
//! cone `𝒯 ⊂ ℝⁿ⁺¹`. Each one provides evaluation, a domain test with a
//! relative interior margin, and closed-form gradient and fundamental tensor
//! `g_v = ½ Hess(F²)(v)`.

use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::linalg::{
    bilinear, check_dims, classify_signature, SignatureClass, SymTensor, Vector,
    DEFAULT_SIGNATURE_TOL,
};

/// Largest exponent accepted by the power-type families.
pub const MAX_EXPONENT: f64 = 64.0;

/// Allowed deviation of weighted-geometric weights from unit sum.
pub const WEIGHT_SUM_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Family {
    MinkowskiBilinear,
    DegenerateMinkowski,
    PPseudoNorm,
    EuclideanP,
    BerwaldMoor,
    WeightedGeometric,
    Bimetric,
    Kropina,
    Stationary,
}

impl Family {
    pub const ALL: [Family; 9] = [
        Family::MinkowskiBilinear,
        Family::DegenerateMinkowski,
        Family::PPseudoNorm,
        Family::EuclideanP,
        Family::BerwaldMoor,
        Family::WeightedGeometric,
        Family::Bimetric,
        Family::Kropina,
        Family::Stationary,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Family::MinkowskiBilinear => "minkowski_bilinear",
            Family::DegenerateMinkowski => "degenerate_minkowski",
            Family::PPseudoNorm => "p_pseudo_norm",
            Family::EuclideanP => "euclidean_p",
            Family::BerwaldMoor => "berwald_moor",
            Family::WeightedGeometric => "weighted_geometric",
            Family::Bimetric => "bimetric",
            Family::Kropina => "kropina",
            Family::Stationary => "stationary",
        }
    }

    /// Human-readable formula and parameter list, for `catalog` listings.
    pub fn describe(self) -> (&'static str, &'static str) {
        match self {
            Family::MinkowskiBilinear => (
                "F(v) = sqrt(g(v,v)) on the future timelike cone of g",
                "g: Lorentzian matrix with g00 > 0 (optional, defaults to diag(1,-1,...,-1))",
            ),
            Family::DegenerateMinkowski => (
                "F(v) = sqrt(v0^2 - v1^2 - ... - vk^2), free in the last n-k components",
                "k: integer with 1 <= k <= n-2 (so dim >= 4)",
            ),
            Family::PPseudoNorm => (
                "F(v) = (v0^p - v1^p - ... - vn^p)^(1/p), all components positive",
                "p: exponent with 1 < p <= 64",
            ),
            Family::EuclideanP => (
                "F(v) = (v0^p + ... + vn^p)^(1/p) on the positive orthant (positive definite)",
                "p: exponent with 1 < p <= 64",
            ),
            Family::BerwaldMoor => (
                "F(v) = (v0 v1 ... vn)^(1/(n+1)) on the positive orthant",
                "none",
            ),
            Family::WeightedGeometric => (
                "F(v) = (v0)^a0 (v1)^a1 ... (vn)^an on the positive orthant",
                "a: n+1 nonnegative weights summing to 1",
            ),
            Family::Bimetric => (
                "F(v) = (eta(v,v) h(v,v))^(1/4) on the intersection of both future cones",
                "h: Lorentzian matrix with h00 > 0",
            ),
            Family::Kropina => ("F(v) = eta(v,v)/v0 on the future timelike cone", "none"),
            Family::Stationary => (
                "F(v) = sqrt(v0^2 - Fbar(v_spatial)^2) for a positive definite base norm Fbar",
                "base: nested euclidean_p spec of dimension n",
            ),
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Family-specific parameters.
#[derive(Debug, Clone, PartialEq)]
pub enum NormParams {
    MinkowskiBilinear { g: SymTensor },
    DegenerateMinkowski { k: usize },
    PPseudoNorm { p: f64 },
    EuclideanP { p: f64 },
    BerwaldMoor,
    WeightedGeometric { weights: Vec<f64> },
    Bimetric { h: SymTensor },
    Kropina,
    Stationary { base: Box<NormSpec> },
}

/// A validated norm: one catalog family, its dimension and parameters.
#[derive(Debug, Clone, PartialEq)]
pub struct NormSpec {
    dim: usize,
    params: NormParams,
}

fn check_exponent(p: f64) -> Result<()> {
    if !(p > 1.0 && p <= MAX_EXPONENT) {
        return Err(Error::argument(format!(
            "exponent p must satisfy 1 < p <= {MAX_EXPONENT}, got {p}"
        )));
    }
    Ok(())
}

fn check_min_dim(dim: usize, min: usize, family: Family) -> Result<()> {
    if dim < min {
        return Err(Error::argument(format!(
            "{family} needs dimension >= {min}, got {dim}"
        )));
    }
    Ok(())
}

/// Checks that `m` is Lorentzian with `m00 > 0`, so `e0` fixes the future cone.
fn check_time_oriented_lorentzian(m: &SymTensor, what: &str) -> Result<()> {
    let sig = classify_signature(m, DEFAULT_SIGNATURE_TOL)?;
    if sig.class != SignatureClass::Lorentzian {
        return Err(Error::argument(format!(
            "{what} must have Lorentzian signature, got {sig}"
        )));
    }
    if !(m.get(0, 0) > 0.0) {
        return Err(Error::argument(format!(
            "{what} must have {what}00 > 0 (e0 timelike)"
        )));
    }
    Ok(())
}

impl NormSpec {
    /// Minkowski norm of `η = diag(1,−1,…,−1)`.
    pub fn minkowski(dim: usize) -> Result<Self> {
        Self::minkowski_bilinear(SymTensor::minkowski(dim)?)
    }

    pub fn minkowski_bilinear(g: SymTensor) -> Result<Self> {
        let dim = g.dim();
        check_min_dim(dim, 2, Family::MinkowskiBilinear)?;
        check_time_oriented_lorentzian(&g, "g")?;
        Ok(NormSpec {
            dim,
            params: NormParams::MinkowskiBilinear { g },
        })
    }

    pub fn degenerate_minkowski(dim: usize, k: usize) -> Result<Self> {
        check_min_dim(dim, 4, Family::DegenerateMinkowski)?;
        let n = dim - 1;
        if k < 1 || k > n - 2 {
            return Err(Error::argument(format!(
                "degenerate_minkowski needs 1 <= k <= n-2 = {}, got k = {k}",
                n - 2
            )));
        }
        Ok(NormSpec {
            dim,
            params: NormParams::DegenerateMinkowski { k },
        })
    }

    pub fn p_pseudo_norm(dim: usize, p: f64) -> Result<Self> {
        check_min_dim(dim, 2, Family::PPseudoNorm)?;
        check_exponent(p)?;
        Ok(NormSpec {
            dim,
            params: NormParams::PPseudoNorm { p },
        })
    }

    /// The positive-definite p-norm on the open positive orthant.
    ///
    /// Dimension 1 is admitted so that it can serve as the base of a
    /// two-dimensional stationary norm.
    pub fn euclidean_p(dim: usize, p: f64) -> Result<Self> {
        check_min_dim(dim, 1, Family::EuclideanP)?;
        check_exponent(p)?;
        Ok(NormSpec {
            dim,
            params: NormParams::EuclideanP { p },
        })
    }

    pub fn berwald_moor(dim: usize) -> Result<Self> {
        check_min_dim(dim, 2, Family::BerwaldMoor)?;
        Ok(NormSpec {
            dim,
            params: NormParams::BerwaldMoor,
        })
    }

    pub fn weighted_geometric(weights: Vec<f64>) -> Result<Self> {
        let dim = weights.len();
        check_min_dim(dim, 2, Family::WeightedGeometric)?;
        if let Some(i) = weights.iter().position(|a| !a.is_finite() || *a < 0.0) {
            return Err(Error::argument(format!(
                "weight a{i} must be finite and >= 0, got {}",
                weights[i]
            )));
        }
        let sum: f64 = weights.iter().sum();
        if (sum - 1.0).abs() > WEIGHT_SUM_TOL {
            return Err(Error::argument(format!("weights must sum to 1, got {sum}")));
        }
        Ok(NormSpec {
            dim,
            params: NormParams::WeightedGeometric { weights },
        })
    }

    pub fn bimetric(h: SymTensor) -> Result<Self> {
        let dim = h.dim();
        check_min_dim(dim, 2, Family::Bimetric)?;
        check_time_oriented_lorentzian(&h, "h")?;
        Ok(NormSpec {
            dim,
            params: NormParams::Bimetric { h },
        })
    }

    pub fn kropina(dim: usize) -> Result<Self> {
        check_min_dim(dim, 2, Family::Kropina)?;
        Ok(NormSpec {
            dim,
            params: NormParams::Kropina,
        })
    }

    pub fn stationary(base: NormSpec) -> Result<Self> {
        if expected_signature(&base) != SignatureClass::PositiveDefinite {
            return Err(Error::argument(format!(
                "stationary base must be positive definite, got {}",
                base.family()
            )));
        }
        Ok(NormSpec {
            dim: base.dim + 1,
            params: NormParams::Stationary {
                base: Box::new(base),
            },
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn params(&self) -> &NormParams {
        &self.params
    }

    pub fn family(&self) -> Family {
        match self.params {
            NormParams::MinkowskiBilinear { .. } => Family::MinkowskiBilinear,
            NormParams::DegenerateMinkowski { .. } => Family::DegenerateMinkowski,
            NormParams::PPseudoNorm { .. } => Family::PPseudoNorm,
            NormParams::EuclideanP { .. } => Family::EuclideanP,
            NormParams::BerwaldMoor => Family::BerwaldMoor,
            NormParams::WeightedGeometric { .. } => Family::WeightedGeometric,
            NormParams::Bimetric { .. } => Family::Bimetric,
            NormParams::Kropina => Family::Kropina,
            NormParams::Stationary { .. } => Family::Stationary,
        }
    }

    /// The exponent `m` when `F = H^{1/m}` for a homogeneous polynomial-type `H`.
    pub fn mth_root_degree(&self) -> Option<f64> {
        match &self.params {
            NormParams::PPseudoNorm { p } => Some(*p),
            NormParams::BerwaldMoor => Some(self.dim as f64),
            NormParams::Bimetric { .. } => Some(4.0),
            _ => None,
        }
    }

    /// Short label such as `p_pseudo_norm(dim=3, p=2)`.
    pub fn label(&self) -> String {
        let extra = match &self.params {
            NormParams::DegenerateMinkowski { k } => format!(", k={k}"),
            NormParams::PPseudoNorm { p } | NormParams::EuclideanP { p } => format!(", p={p}"),
            NormParams::Stationary { base } => format!(", base={}", base.label()),
            _ => String::new(),
        };
        format!("{}(dim={}{extra})", self.family(), self.dim)
    }
}

// ---------------------------------------------------------------------------
// Domain constraints

/// One strict inequality defining the cone: satisfied with margin `m` iff
/// `value > 0` and `value ≥ m·reference`.
#[derive(Debug, Clone, Copy)]
struct Constraint {
    tag: ConstraintTag,
    value: f64,
    reference: f64,
}

#[derive(Debug, Clone, Copy)]
enum ConstraintTag {
    Component(usize),
    TimeOrientation(&'static str),
    QuadraticForm(&'static str),
    PowerForm,
    DegenerateForm(usize),
    StationaryCone,
}

impl ConstraintTag {
    fn describe(self) -> String {
        match self {
            ConstraintTag::Component(i) => format!("component v{i} must be > 0"),
            ConstraintTag::TimeOrientation(m) => format!("{m}(e0, v) must be > 0"),
            ConstraintTag::QuadraticForm(m) => format!("{m}(v, v) must be > 0"),
            ConstraintTag::PowerForm => "(v0)^p - (v1)^p - ... - (vn)^p must be > 0".into(),
            ConstraintTag::DegenerateForm(k) => {
                format!("(v0)^2 - (v1)^2 - ... - (v{k})^2 must be > 0")
            }
            ConstraintTag::StationaryCone => "v0 - Fbar(v1..vn) must be > 0".into(),
        }
    }
}

impl Constraint {
    fn new(tag: ConstraintTag, value: f64, reference: f64) -> Self {
        Constraint {
            tag,
            value,
            reference,
        }
    }

    fn holds(&self, margin: f64) -> bool {
        self.value > 0.0 && self.value >= margin * self.reference
    }
}

fn check_margin(margin: f64) -> Result<()> {
    if !(0.0..1.0).contains(&margin) {
        return Err(Error::argument(format!("margin must lie in [0, 1), got {margin}")));
    }
    Ok(())
}

/// Pushes positivity constraints for `comps` with reference `scale`, stopping
/// at the first failure.
fn positivity(comps: &[f64], offset: usize, scale: f64, out: &mut Vec<Constraint>) -> bool {
    for (i, &c) in comps.iter().enumerate() {
        let con = Constraint::new(ConstraintTag::Component(i + offset), c, scale);
        out.push(con);
        if !(c > 0.0) {
            return false;
        }
    }
    true
}

fn time_function(m: &SymTensor, v: &[f64]) -> f64 {
    m.row(0).iter().zip(v).map(|(a, b)| a * b).sum::<f64>() / m.get(0, 0).sqrt()
}

fn quad(m: &SymTensor, v: &[f64]) -> f64 {
    let mut acc = 0.0;
    for i in 0..v.len() {
        let row: f64 = m.row(i).iter().zip(v).map(|(a, b)| a * b).sum();
        acc += v[i] * row;
    }
    acc
}

fn eta_quad(v: &[f64]) -> f64 {
    v[0] * v[0] - v[1..].iter().map(|x| x * x).sum::<f64>()
}

fn eta_dot(v: &[f64], w: &[f64]) -> f64 {
    v[0] * w[0] - v[1..].iter().zip(&w[1..]).map(|(x, y)| x * y).sum::<f64>()
}

fn constraints(spec: &NormSpec, v: &[f64]) -> Vec<Constraint> {
    let mut out = Vec::with_capacity(v.len() + 2);
    let scale = v.iter().fold(0.0_f64, |m, c| m.max(c.abs()));
    match &spec.params {
        NormParams::MinkowskiBilinear { g } => {
            let tau = time_function(g, v);
            out.push(Constraint::new(ConstraintTag::TimeOrientation("g"), tau, 0.0));
            if tau > 0.0 {
                out.push(Constraint::new(
                    ConstraintTag::QuadraticForm("g"),
                    quad(g, v),
                    tau * tau,
                ));
            }
        }
        NormParams::Kropina => {
            out.push(Constraint::new(ConstraintTag::Component(0), v[0], 0.0));
            out.push(Constraint::new(
                ConstraintTag::QuadraticForm("eta"),
                eta_quad(v),
                v[0] * v[0],
            ));
        }
        NormParams::DegenerateMinkowski { k } => {
            out.push(Constraint::new(ConstraintTag::Component(0), v[0], 0.0));
            let q = v[0] * v[0] - v[1..=*k].iter().map(|x| x * x).sum::<f64>();
            out.push(Constraint::new(ConstraintTag::DegenerateForm(*k), q, v[0] * v[0]));
        }
        NormParams::PPseudoNorm { p } => {
            if positivity(v, 0, scale, &mut out) {
                let rest = 1.0 - power_ratio_sum(v, *p);
                out.push(Constraint::new(ConstraintTag::PowerForm, rest, 1.0));
            }
        }
        NormParams::EuclideanP { .. }
        | NormParams::BerwaldMoor
        | NormParams::WeightedGeometric { .. } => {
            positivity(v, 0, scale, &mut out);
        }
        NormParams::Bimetric { h } => {
            out.push(Constraint::new(ConstraintTag::Component(0), v[0], 0.0));
            out.push(Constraint::new(
                ConstraintTag::QuadraticForm("eta"),
                eta_quad(v),
                v[0] * v[0],
            ));
            let tau = time_function(h, v);
            out.push(Constraint::new(ConstraintTag::TimeOrientation("h"), tau, 0.0));
            if tau > 0.0 {
                out.push(Constraint::new(
                    ConstraintTag::QuadraticForm("h"),
                    quad(h, v),
                    tau * tau,
                ));
            }
        }
        NormParams::Stationary { base } => {
            out.push(Constraint::new(ConstraintTag::Component(0), v[0], 0.0));
            // The base lives on the positive orthant; its margin is measured
            // against the whole vector so that v⃗ stays off the time axis.
            if positivity(&v[1..], 1, scale, &mut out) {
                let fbar = raw_value(base, &v[1..]);
                out.push(Constraint::new(ConstraintTag::StationaryCone, v[0] - fbar, v[0]));
            }
        }
    }
    out
}

/// `Σ_{α≥1} (vᵅ/v⁰)ᵖ` with compensated summation, evaluated in log-space.
fn power_ratio_sum(v: &[f64], p: f64) -> f64 {
    let ln0 = v[0].ln();
    neumaier_sum(v[1..].iter().map(|x| (p * (x.ln() - ln0)).exp()))
}

pub(crate) fn neumaier_sum(terms: impl Iterator<Item = f64>) -> f64 {
    let mut sum = 0.0_f64;
    let mut comp = 0.0_f64;
    for t in terms {
        let s = sum + t;
        if sum.abs() >= t.abs() {
            comp += (sum - s) + t;
        } else {
            comp += (t - s) + sum;
        }
        sum = s;
    }
    sum + comp
}

fn first_violation(spec: &NormSpec, v: &[f64], margin: f64) -> Option<String> {
    constraints(spec, v)
        .into_iter()
        .find(|c| !c.holds(margin))
        .map(|c| c.tag.describe())
}

/// True iff `v` lies in the open cone with every defining inequality satisfied
/// with relative slack at least `margin`.
///
/// Returns false for dimension mismatches and for `margin` outside `[0, 1)`.
pub fn domain_contains(spec: &NormSpec, v: &Vector, margin: f64) -> bool {
    if v.dim() != spec.dim || check_margin(margin).is_err() {
        return false;
    }
    first_violation(spec, v.as_slice(), margin).is_none()
}

/// Like [`domain_contains`], but names the violated constraint.
pub fn check_domain(spec: &NormSpec, v: &Vector) -> Result<()> {
    check_dims(spec.dim, v.dim())?;
    match first_violation(spec, v.as_slice(), 0.0) {
        None => Ok(()),
        Some(c) => Err(Error::domain(c)),
    }
}

// ---------------------------------------------------------------------------
// Evaluation

/// `F(v)` without domain checks; callers guarantee `v ∈ 𝒯`.
pub(crate) fn raw_value(spec: &NormSpec, v: &[f64]) -> f64 {
    match &spec.params {
        NormParams::MinkowskiBilinear { g } => quad(g, v).sqrt(),
        NormParams::DegenerateMinkowski { k } => {
            (v[0] * v[0] - v[1..=*k].iter().map(|x| x * x).sum::<f64>()).sqrt()
        }
        NormParams::PPseudoNorm { p } => v[0] * (1.0 - power_ratio_sum(v, *p)).powf(1.0 / p),
        NormParams::EuclideanP { p } => {
            let top = v.iter().fold(0.0_f64, |m, c| m.max(c.abs()));
            let s = neumaier_sum(v.iter().map(|x| (p * (x.abs() / top).ln()).exp()));
            top * s.powf(1.0 / p)
        }
        NormParams::BerwaldMoor => {
            (v.iter().map(|x| x.ln()).sum::<f64>() / v.len() as f64).exp()
        }
        NormParams::WeightedGeometric { weights } => weights
            .iter()
            .zip(v)
            .filter(|(a, _)| **a > 0.0)
            .map(|(a, x)| a * x.ln())
            .sum::<f64>()
            .exp(),
        NormParams::Bimetric { h } => eta_quad(v).sqrt().sqrt() * quad(h, v).sqrt().sqrt(),
        NormParams::Kropina => eta_quad(v) / v[0],
        NormParams::Stationary { base } => {
            let fbar = raw_value(base, &v[1..]);
            ((v[0] - fbar) * (v[0] + fbar)).sqrt()
        }
    }
}

/// `F(v)`; errors when `v ∉ 𝒯`.
pub fn evaluate(spec: &NormSpec, v: &Vector) -> Result<f64> {
    check_domain(spec, v)?;
    let f = raw_value(spec, v.as_slice());
    if !(f.is_finite() && f > 0.0) {
        return Err(Error::Evaluation(format!(
            "{} produced F = {f} at {v}",
            spec.label()
        )));
    }
    Ok(f)
}

/// Gradient `Fᵢ(v)` from the closed-form expressions of each family.
pub fn gradient_analytic(spec: &NormSpec, v: &Vector) -> Result<Vector> {
    let f = evaluate(spec, v)?;
    let x = v.as_slice();
    let grad: Vec<f64> = match &spec.params {
        NormParams::MinkowskiBilinear { g } => {
            g.mul_vec(v)?.iter().map(|c| c / f).collect()
        }
        NormParams::DegenerateMinkowski { k } => x
            .iter()
            .enumerate()
            .map(|(i, c)| match i {
                0 => c / f,
                i if i <= *k => -c / f,
                _ => 0.0,
            })
            .collect(),
        NormParams::PPseudoNorm { p } => power_gradient(x, f, *p, true),
        NormParams::EuclideanP { p } => power_gradient(x, f, *p, false),
        NormParams::BerwaldMoor => {
            let n1 = x.len() as f64;
            x.iter().map(|c| f / (n1 * c)).collect()
        }
        NormParams::WeightedGeometric { weights } => {
            weights.iter().zip(x).map(|(a, c)| a * f / c).collect()
        }
        NormParams::Bimetric { h } => {
            let (a, b) = (eta_quad(x), quad(h, x));
            let hv = h.mul_vec(v)?;
            // ½ H^{-3/4} (ηv·h(v,v) + η(v,v)·hv), with H^{3/4} = F³.
            (0..x.len())
                .map(|i| {
                    let eta_v = if i == 0 { x[0] } else { -x[i] };
                    0.5 * (eta_v * b + a * hv[i]) / (f * f * f)
                })
                .collect()
        }
        NormParams::Kropina => {
            let v0 = x[0];
            let spatial_sq: f64 = x[1..].iter().map(|c| c * c).sum();
            std::iter::once(1.0 + spatial_sq / (v0 * v0))
                .chain(x[1..].iter().map(|c| -2.0 * c / v0))
                .collect()
        }
        NormParams::Stationary { base } => {
            let spatial = Vector::from_slice(&x[1..])?;
            let fbar = evaluate(base, &spatial)?;
            let gbar = gradient_analytic(base, &spatial)?;
            std::iter::once(x[0] / f)
                .chain(gbar.iter().map(|c| -fbar * c / f))
                .collect()
        }
    };
    finite_vector(grad, spec)
}

fn finite_vector(components: Vec<f64>, spec: &NormSpec) -> Result<Vector> {
    if components.iter().any(|c| !c.is_finite()) {
        return Err(Error::Evaluation(format!(
            "non-finite derivative for {}",
            spec.label()
        )));
    }
    Ok(Vector::from_vec_unchecked(components))
}

/// `±(vⁱ/F)^{p−1}`; the sign is negative on spatial slots when `lorentzian`.
fn power_gradient(x: &[f64], f: f64, p: f64, lorentzian: bool) -> Vec<f64> {
    x.iter()
        .enumerate()
        .map(|(i, c)| {
            let mag = ((p - 1.0) * (c / f).ln()).exp();
            if lorentzian && i > 0 {
                -mag
            } else {
                mag
            }
        })
        .collect()
}

/// Closed-form fundamental tensor `g_v = ½ Hess(F²)(v)`.
pub fn fundamental_tensor_analytic(spec: &NormSpec, v: &Vector) -> Result<SymTensor> {
    let f = evaluate(spec, v)?;
    let x = v.as_slice();
    let n = x.len();
    let g = match &spec.params {
        NormParams::MinkowskiBilinear { g } => g.clone(),
        NormParams::DegenerateMinkowski { k } => SymTensor::from_fn(n, |i, j| match (i, j) {
            (0, 0) => 1.0,
            _ if i == j && i <= *k => -1.0,
            _ => 0.0,
        })?,
        NormParams::PPseudoNorm { p } | NormParams::EuclideanP { p } => {
            // g = (p−1)·diag(±(vⁱ/F)^{p−2}) − (p−2)·ℓ⊗ℓ, with ℓ = ∇F.
            let lorentzian = spec.family() == Family::PPseudoNorm;
            let ell = power_gradient(x, f, *p, lorentzian);
            let diag: Vec<f64> = x
                .iter()
                .enumerate()
                .map(|(i, c)| {
                    let mag = (p - 1.0) * ((p - 2.0) * (c / f).ln()).exp();
                    if lorentzian && i > 0 {
                        -mag
                    } else {
                        mag
                    }
                })
                .collect();
            SymTensor::from_fn(n, |i, j| {
                let d = if i == j { diag[i] } else { 0.0 };
                d - (p - 2.0) * ell[i] * ell[j]
            })?
        }
        NormParams::BerwaldMoor => {
            let a = 1.0 / n as f64;
            weighted_tensor(x, f, &vec![a; n])?
        }
        NormParams::WeightedGeometric { weights } => weighted_tensor(x, f, weights)?,
        NormParams::Bimetric { .. } => {
            // From the 4th-root identity: g = H_ij / (4F²) − 2ℓ⊗ℓ.
            let hess = mth_root_hessian(spec, v)?;
            let ell = gradient_analytic(spec, v)?;
            SymTensor::from_fn(n, |i, j| hess.get(i, j) / (4.0 * f * f) - 2.0 * ell[i] * ell[j])?
        }
        NormParams::Kropina => {
            let ell = gradient_analytic(spec, v)?;
            let hess = kropina_hessian(x);
            SymTensor::from_fn(n, |i, j| f * hess.get(i, j) + ell[i] * ell[j])?
        }
        NormParams::Stationary { base } => {
            let gbar = fundamental_tensor_analytic(base, &Vector::from_slice(&x[1..])?)?;
            SymTensor::from_fn(n, |i, j| match (i, j) {
                (0, 0) => 1.0,
                (0, _) | (_, 0) => 0.0,
                _ => -gbar.get(i - 1, j - 1),
            })?
        }
    };
    Ok(g.with_ref_vector(v.clone()))
}

/// `F²·(2aᵢaⱼ/(uⁱuʲ) − aᵢδᵢⱼ/(uⁱ)²)`.
fn weighted_tensor(u: &[f64], f: f64, a: &[f64]) -> Result<SymTensor> {
    let f2 = f * f;
    SymTensor::from_fn(u.len(), |i, j| {
        let off = 2.0 * a[i] * a[j] / (u[i] * u[j]);
        let diag = if i == j { a[i] / (u[i] * u[i]) } else { 0.0 };
        f2 * (off - diag)
    })
}

/// Second derivatives of the Kropina norm `F = v⁰ − |v⃗|²/v⁰`.
pub(crate) fn kropina_hessian(x: &[f64]) -> SymTensor {
    let v0 = x[0];
    let spatial_sq: f64 = x[1..].iter().map(|c| c * c).sum();
    let n = x.len();
    let mut entries = vec![0.0; n * n];
    entries[0] = -2.0 * spatial_sq / (v0 * v0 * v0);
    for a in 1..n {
        let mixed = 2.0 * x[a] / (v0 * v0);
        entries[a] = mixed;
        entries[a * n] = mixed;
        entries[a * n + a] = -2.0 / v0;
    }
    SymTensor::from_row_major(n, entries).expect("finite Kropina Hessian on the cone")
}

/// The polynomial-type function `H = Fᵐ` of an m-th root family.
pub fn mth_root_polynomial(spec: &NormSpec, v: &Vector) -> Result<f64> {
    check_domain(spec, v)?;
    let x = v.as_slice();
    match &spec.params {
        NormParams::PPseudoNorm { p } => {
            Ok(x[0].powf(*p) - neumaier_sum(x[1..].iter().map(|c| c.powf(*p))))
        }
        NormParams::BerwaldMoor => Ok(x.iter().product()),
        NormParams::Bimetric { h } => Ok(eta_quad(x) * quad(h, x)),
        _ => Err(not_mth_root(spec)),
    }
}

fn not_mth_root(spec: &NormSpec) -> Error {
    Error::argument(format!("{} is not an m-th root family", spec.family()))
}

/// Hessian `H_ij = ∂²H/∂vⁱ∂vʲ` of the polynomial of an m-th root family.
pub fn mth_root_hessian(spec: &NormSpec, v: &Vector) -> Result<SymTensor> {
    check_domain(spec, v)?;
    let x = v.as_slice();
    let n = x.len();
    let out = match &spec.params {
        NormParams::PPseudoNorm { p } => {
            let c = p * (p - 1.0);
            SymTensor::from_fn(n, |i, j| match (i, j) {
                (0, 0) => c * x[0].powf(p - 2.0),
                _ if i == j => -c * x[i].powf(p - 2.0),
                _ => 0.0,
            })?
        }
        NormParams::BerwaldMoor => {
            let prod: f64 = x.iter().product();
            SymTensor::from_fn(n, |i, j| if i == j { 0.0 } else { prod / (x[i] * x[j]) })?
        }
        NormParams::Bimetric { h } => {
            let a = eta_quad(x);
            let b = quad(h, x);
            let hv = h.mul_vec(v)?;
            let eta = SymTensor::minkowski(n)?;
            let ev = eta.mul_vec(v)?;
            SymTensor::from_fn(n, |i, j| {
                2.0 * eta.get(i, j) * b
                    + 4.0 * (ev[i] * hv[j] + ev[j] * hv[i])
                    + 2.0 * h.get(i, j) * a
            })?
        }
        _ => return Err(not_mth_root(spec)),
    };
    Ok(out.with_ref_vector(v.clone()))
}

/// The signature class the theory asserts for the family throughout its cone.
pub fn expected_signature(spec: &NormSpec) -> SignatureClass {
    match &spec.params {
        NormParams::EuclideanP { .. } => SignatureClass::PositiveDefinite,
        NormParams::DegenerateMinkowski { .. } => SignatureClass::DegenerateLorentzian,
        NormParams::WeightedGeometric { weights } if weights.contains(&0.0) => {
            SignatureClass::DegenerateLorentzian
        }
        // Stationary norms are Lorentzian off the time axis, which the cone
        // excludes because the base lives on the open positive orthant.
        _ => SignatureClass::Lorentzian,
    }
}

/// `η(v, w)` on ℝⁿ⁺¹.
pub fn minkowski_product(v: &Vector, w: &Vector) -> Result<f64> {
    check_dims(v.dim(), w.dim())?;
    Ok(eta_dot(v.as_slice(), w.as_slice()))
}

/// `g(v, w)` for a stored metric; thin wrapper kept for symmetry with `η`.
pub fn metric_product(g: &SymTensor, v: &Vector, w: &Vector) -> Result<f64> {
    bilinear(g, v, w)
}

// ---------------------------------------------------------------------------
// JSON form: {"family": string, "dim": int, "params": {...}}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct NormSpecDoc {
    family: Family,
    dim: usize,
    #[serde(default)]
    params: Value,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct NoParams {}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct MinkowskiParams {
    g: Option<SymTensor>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct DegenerateParams {
    k: usize,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct ExponentParams {
    p: f64,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct WeightParams {
    a: Vec<f64>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct BimetricParams {
    h: SymTensor,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct StationaryParams {
    base: NormSpec,
}

fn params_as<T: for<'de> Deserialize<'de>>(family: Family, params: Value) -> Result<T> {
    let params = if params.is_null() { json!({}) } else { params };
    serde_json::from_value(params)
        .map_err(|e| Error::Parse(format!("invalid params for {family}: {e}")))
}

fn check_dim_matches(family: Family, declared: usize, actual: usize) -> Result<()> {
    if declared != actual {
        return Err(Error::Parse(format!(
            "{family}: declared dim {declared} does not match parameters of dimension {actual}"
        )));
    }
    Ok(())
}

impl TryFrom<NormSpecDoc> for NormSpec {
    type Error = Error;

    fn try_from(doc: NormSpecDoc) -> Result<Self> {
        let NormSpecDoc {
            family,
            dim,
            params,
        } = doc;
        let spec = match family {
            Family::MinkowskiBilinear => {
                let p: MinkowskiParams = params_as(family, params)?;
                match p.g {
                    Some(g) => {
                        check_dim_matches(family, dim, g.dim())?;
                        NormSpec::minkowski_bilinear(g)?
                    }
                    None => NormSpec::minkowski(dim)?,
                }
            }
            Family::DegenerateMinkowski => {
                let p: DegenerateParams = params_as(family, params)?;
                NormSpec::degenerate_minkowski(dim, p.k)?
            }
            Family::PPseudoNorm => {
                let p: ExponentParams = params_as(family, params)?;
                NormSpec::p_pseudo_norm(dim, p.p)?
            }
            Family::EuclideanP => {
                let p: ExponentParams = params_as(family, params)?;
                NormSpec::euclidean_p(dim, p.p)?
            }
            Family::BerwaldMoor => {
                let _: NoParams = params_as(family, params)?;
                NormSpec::berwald_moor(dim)?
            }
            Family::WeightedGeometric => {
                let p: WeightParams = params_as(family, params)?;
                check_dim_matches(family, dim, p.a.len())?;
                NormSpec::weighted_geometric(p.a)?
            }
            Family::Bimetric => {
                let p: BimetricParams = params_as(family, params)?;
                check_dim_matches(family, dim, p.h.dim())?;
                NormSpec::bimetric(p.h)?
            }
            Family::Kropina => {
                let _: NoParams = params_as(family, params)?;
                NormSpec::kropina(dim)?
            }
            Family::Stationary => {
                let p: StationaryParams = params_as(family, params)?;
                check_dim_matches(family, dim, p.base.dim() + 1)?;
                NormSpec::stationary(p.base)?
            }
        };
        Ok(spec)
    }
}

impl NormSpec {
    fn to_doc(&self) -> NormSpecDoc {
        let params = match &self.params {
            NormParams::MinkowskiBilinear { g } => json!({ "g": g.rows() }),
            NormParams::DegenerateMinkowski { k } => json!({ "k": k }),
            NormParams::PPseudoNorm { p } | NormParams::EuclideanP { p } => json!({ "p": p }),
            NormParams::WeightedGeometric { weights } => json!({ "a": weights }),
            NormParams::Bimetric { h } => json!({ "h": h.rows() }),
            NormParams::Stationary { base } => json!({ "base": base.to_doc() }),
            NormParams::BerwaldMoor | NormParams::Kropina => json!({}),
        };
        NormSpecDoc {
            family: self.family(),
            dim: self.dim,
            params,
        }
    }

    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }
}

impl Serialize for NormSpec {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_doc().serialize(s)
    }
}

impl<'de> Deserialize<'de> for NormSpec {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let doc = NormSpecDoc::deserialize(d)?;
        NormSpec::try_from(doc).map_err(serde::de::Error::custom)
    }
}
