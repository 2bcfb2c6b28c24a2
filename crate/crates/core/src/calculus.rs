//! Central finite-difference oracles, the angular metric `Hess(F)`, and
//! composite Simpson quadrature on `[0, 1]`.

use crate::error::{Error, Result};
use crate::linalg::{SymTensor, Vector};
use crate::norm::{self, NormSpec};

pub const DEFAULT_GRADIENT_STEP: f64 = 1e-5;
pub const DEFAULT_HESSIAN_STEP: f64 = 1e-4;
pub const DEFAULT_PANELS: usize = 64;

/// Second-order central differences with relative step `step`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FdConfig {
    step: f64,
}

impl FdConfig {
    pub fn new(step: f64) -> Result<Self> {
        if !(step > 0.0 && step < 0.1) {
            return Err(Error::argument(format!(
                "finite-difference step must lie in (0, 0.1), got {step}"
            )));
        }
        Ok(FdConfig { step })
    }

    pub fn gradient() -> Self {
        FdConfig {
            step: DEFAULT_GRADIENT_STEP,
        }
    }

    pub fn hessian() -> Self {
        FdConfig {
            step: DEFAULT_HESSIAN_STEP,
        }
    }

    pub fn step(&self) -> f64 {
        self.step
    }
}

/// Both `Fᵢ` and `g_ij` are 0-homogeneous, so differences are taken at
/// `v/‖v‖_∞`, which keeps step sizes commensurate with the point.
fn normalized(spec: &NormSpec, v: &Vector) -> Result<Vec<f64>> {
    norm::check_domain(spec, v)?;
    let s = v.norm_inf();
    Ok(v.iter().map(|c| c / s).collect())
}

fn steps(u: &[f64], step: f64) -> Vec<f64> {
    u.iter().map(|c| step * c.abs().max(1.0)).collect()
}

struct Stencil<'a> {
    spec: &'a NormSpec,
    base: &'a [f64],
    scratch: Vec<f64>,
}

impl<'a> Stencil<'a> {
    fn new(spec: &'a NormSpec, base: &'a [f64]) -> Self {
        Stencil {
            spec,
            base,
            scratch: base.to_vec(),
        }
    }

    /// `F` at `base + Σ offsets`, erroring if the point leaves the cone.
    fn eval(&mut self, offsets: &[(usize, f64)]) -> Result<f64> {
        self.scratch.copy_from_slice(self.base);
        for &(i, d) in offsets {
            self.scratch[i] += d;
        }
        let point = Vector::from_slice(&self.scratch)?;
        if !norm::domain_contains(self.spec, &point, 0.0) {
            let coords: Vec<String> = offsets.iter().map(|(i, _)| format!("v{i}")).collect();
            return Err(Error::domain(format!(
                "finite-difference stencil along {} leaves the cone",
                coords.join(", ")
            )));
        }
        Ok(norm::raw_value(self.spec, &self.scratch))
    }
}

/// Central-difference gradient of `F`.
pub fn fd_gradient(spec: &NormSpec, v: &Vector, cfg: FdConfig) -> Result<Vector> {
    let u = normalized(spec, v)?;
    let h = steps(&u, cfg.step);
    let mut st = Stencil::new(spec, &u);
    let mut grad = Vec::with_capacity(u.len());
    for i in 0..u.len() {
        let plus = st.eval(&[(i, h[i])])?;
        let minus = st.eval(&[(i, -h[i])])?;
        grad.push((plus - minus) / (2.0 * h[i]));
    }
    Vector::new(grad)
}

/// Central-difference Hessian of `½F²`, Richardson-extrapolated from steps
/// `h` and `h/2` so the `O(h²)` truncation error cancels.
pub fn fd_fundamental_tensor(spec: &NormSpec, v: &Vector, cfg: FdConfig) -> Result<SymTensor> {
    let u = normalized(spec, v)?;
    let h = steps(&u, cfg.step);
    let coarse = central_hessian(spec, &u, &h)?;
    let half: Vec<f64> = h.iter().map(|x| 0.5 * x).collect();
    let fine = central_hessian(spec, &u, &half)?;
    let entries = coarse
        .iter()
        .zip(&fine)
        .map(|(c, f)| (4.0 * f - c) / 3.0)
        .collect();
    Ok(SymTensor::from_row_major(u.len(), entries)?.with_ref_vector(v.clone()))
}

fn central_hessian(spec: &NormSpec, u: &[f64], h: &[f64]) -> Result<Vec<f64>> {
    let n = u.len();
    let mut st = Stencil::new(spec, u);
    let mut half_sq = |offsets: &[(usize, f64)]| -> Result<f64> {
        let f = st.eval(offsets)?;
        Ok(0.5 * f * f)
    };
    let centre = half_sq(&[])?;
    let mut entries = vec![0.0; n * n];
    for i in 0..n {
        let plus = half_sq(&[(i, h[i])])?;
        let minus = half_sq(&[(i, -h[i])])?;
        entries[i * n + i] = (plus - 2.0 * centre + minus) / (h[i] * h[i]);
        for j in 0..i {
            let pp = half_sq(&[(i, h[i]), (j, h[j])])?;
            let pm = half_sq(&[(i, h[i]), (j, -h[j])])?;
            let mp = half_sq(&[(i, -h[i]), (j, h[j])])?;
            let mm = half_sq(&[(i, -h[i]), (j, -h[j])])?;
            let mixed = (pp - pm - mp + mm) / (4.0 * h[i] * h[j]);
            entries[i * n + j] = mixed;
            entries[j * n + i] = mixed;
        }
    }
    Ok(entries)
}

/// The angular metric `F_ij = (g_ij − FᵢFⱼ)/F`.
pub fn hessian_f(spec: &NormSpec, v: &Vector) -> Result<SymTensor> {
    let f = norm::evaluate(spec, v)?;
    let g = norm::fundamental_tensor_analytic(spec, v)?;
    let ell = norm::gradient_analytic(spec, v)?;
    let n = v.dim();
    Ok(SymTensor::from_fn(n, |i, j| (g.get(i, j) - ell[i] * ell[j]) / f)?.with_ref_vector(v.clone()))
}

/// `dF_v(w) = Fᵢ(v)wⁱ`.
pub fn differential(spec: &NormSpec, v: &Vector, w: &Vector) -> Result<f64> {
    let ell = norm::gradient_analytic(spec, v)?;
    ell.dot(w)
}

/// Composite Simpson rule for `∫₀¹ f(t) dt` over `n_panels` panels.
pub fn integrate_unit_interval(f: impl Fn(f64) -> f64, n_panels: usize) -> Result<f64> {
    if n_panels < 2 || n_panels % 2 != 0 {
        return Err(Error::argument(format!(
            "Simpson rule needs an even panel count >= 2, got {n_panels}"
        )));
    }
    let h = 1.0 / n_panels as f64;
    let mut acc = 0.0;
    for k in 0..=n_panels {
        let t = k as f64 * h;
        let y = f(t);
        if !y.is_finite() {
            return Err(Error::Evaluation(format!("integrand is {y} at t = {t}")));
        }
        let weight = if k == 0 || k == n_panels {
            1.0
        } else if k % 2 == 1 {
            4.0
        } else {
            2.0
        };
        acc += weight * y;
    }
    Ok(acc * h / 3.0)
}
