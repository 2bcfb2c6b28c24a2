//! Classical inequalities obtained as special cases of the fundamental and
//! reverse triangle inequalities.
//!
//! Each `check_*` evaluates the textbook statement directly. The matching
//! `*_reduction` evaluates it a second time through the norm machinery and
//! records whether both agree, together with the exact algebraic relation
//! between the two slacks.

use crate::error::{Error, Result};
use crate::linalg::{bilinear, SymTensor, Vector};
use crate::norm::{self, NormSpec};

use super::generic::{check_fundamental, check_reverse_triangle, pair};
use super::report::{IneqReport, ReductionReport, Tolerances};

fn direct(
    name: &str,
    lhs: f64,
    rhs: f64,
    tol: &Tolerances,
    strict: bool,
    collinear: bool,
) -> IneqReport {
    IneqReport::new(name, lhs, rhs, tol.verdict, 1.0 + lhs.abs() + rhs.abs(), strict, collinear)
}

fn eta(v: &[f64], w: &[f64]) -> f64 {
    v[0] * w[0] - v[1..].iter().zip(&w[1..]).map(|(a, b)| a * b).sum::<f64>()
}

fn require_positive(x: &Vector, what: &str) -> Result<()> {
    match x.iter().position(|c| !(*c > 0.0)) {
        Some(i) => Err(Error::domain(format!("component {what}{i} must be > 0"))),
        None => Ok(()),
    }
}

fn require_same_dim(a: &Vector, b: &Vector) -> Result<()> {
    crate::linalg::check_dims(a.dim(), b.dim())
}

fn require_dim_at_least(a: &Vector, min: usize) -> Result<()> {
    if a.dim() < min {
        return Err(Error::argument(format!(
            "need at least {min} components, got {}",
            a.dim()
        )));
    }
    Ok(())
}

fn require_future_timelike(x: &Vector, what: &str) -> Result<()> {
    if !(x[0] > 0.0) {
        return Err(Error::domain(format!("{what}0 must be > 0")));
    }
    if !(eta(x.as_slice(), x.as_slice()) > 0.0) {
        return Err(Error::domain(format!("eta({what}, {what}) must be > 0")));
    }
    Ok(())
}

/// `(a⁰)^r − Σ(aᵅ)^r`, for positive components.
fn lorentz_power_form(a: &Vector, r: f64) -> f64 {
    a[0].powf(r) - a.spatial().iter().map(|c| c.powf(r)).sum::<f64>()
}

fn power_sum(a: &Vector, r: f64) -> f64 {
    a.iter().map(|c| c.powf(r)).sum()
}

fn componentwise(a: &Vector, f: impl Fn(f64) -> f64) -> Result<Vector> {
    Vector::new(a.iter().map(|c| f(*c)).collect())
}

fn conjugate(p: f64) -> Result<f64> {
    if !(p > 1.0 && p.is_finite()) {
        return Err(Error::argument(format!("exponent p must be > 1, got {p}")));
    }
    Ok(p / (p - 1.0))
}

// ---------------------------------------------------------------------------
// Aczél

/// `(η(v,w))² ≥ η(v,v)·η(w,w)` for future timelike `v, w`.
pub fn check_aczel_classical(v: &Vector, w: &Vector, tol: &Tolerances) -> Result<IneqReport> {
    require_same_dim(v, w)?;
    require_dim_at_least(v, 2)?;
    require_future_timelike(v, "v")?;
    require_future_timelike(w, "w")?;
    let (x, y) = (v.as_slice(), w.as_slice());
    let vw = eta(x, y);
    let lhs = vw * vw;
    let rhs = eta(x, x) * eta(y, y);
    let spec = NormSpec::minkowski(v.dim())?;
    let collinear = pair(&spec, v, w, tol)?.collinear;
    Ok(direct("aczel", lhs, rhs, tol, true, collinear))
}

/// Aczél against the fundamental inequality of `η`:
/// `(η(v,w))² − F(v)²F(w)² = F(v)·slack·(η(v,w) + F(v)F(w))`.
pub fn aczel_reduction(v: &Vector, w: &Vector, tol: &Tolerances) -> Result<ReductionReport> {
    let d = check_aczel_classical(v, w, tol)?;
    let spec = NormSpec::minkowski(v.dim())?;
    let m = check_fundamental(&spec, v, w, tol)?;
    let fv = norm::evaluate(&spec, v)?;
    let fw = norm::evaluate(&spec, w)?;
    let predicted = fv * m.slack * (eta(v.as_slice(), w.as_slice()) + fv * fw);
    Ok(ReductionReport::new(d, m, predicted, tol.verdict))
}

// ---------------------------------------------------------------------------
// Popoviciu and Bellman

/// `η(a,b) ≥ [(a⁰)^q − Σ(aᵅ)^q]^{1/q}·[(b⁰)^p − Σ(bᵅ)^p]^{1/p}`, `1/p + 1/q = 1`.
pub fn check_popoviciu(a: &Vector, b: &Vector, p: f64, tol: &Tolerances) -> Result<IneqReport> {
    let q = conjugate(p)?;
    require_same_dim(a, b)?;
    require_dim_at_least(a, 2)?;
    require_positive(a, "a")?;
    require_positive(b, "b")?;
    let qa = lorentz_power_form(a, q);
    if !(qa > 0.0) {
        return Err(Error::domain("(a0)^q - (a1)^q - ... - (an)^q must be > 0"));
    }
    let pb = lorentz_power_form(b, p);
    if !(pb > 0.0) {
        return Err(Error::domain("(b0)^p - (b1)^p - ... - (bn)^p must be > 0"));
    }
    let lhs = eta(a.as_slice(), b.as_slice());
    let rhs = qa.powf(1.0 / q) * pb.powf(1.0 / p);
    let (spec, v) = popoviciu_machinery(a, p)?;
    let collinear = pair(&spec, &v, b, tol)?.collinear;
    Ok(direct("popoviciu", lhs, rhs, tol, true, collinear))
}

/// The p-pseudo-norm and `v` with `vⁱ = (aⁱ)^{1/(p−1)}`, i.e. `aⁱ = (vⁱ)^{p−1}`.
fn popoviciu_machinery(a: &Vector, p: f64) -> Result<(NormSpec, Vector)> {
    let spec = NormSpec::p_pseudo_norm(a.dim(), p)?;
    let v = componentwise(a, |c| ((c.ln()) / (p - 1.0)).exp())?;
    Ok((spec, v))
}

/// Popoviciu against the fundamental inequality of the p-pseudo-norm:
/// direct slack `= F(v)^{p−1}·slack`.
pub fn popoviciu_reduction(
    a: &Vector,
    b: &Vector,
    p: f64,
    tol: &Tolerances,
) -> Result<ReductionReport> {
    let d = check_popoviciu(a, b, p, tol)?;
    let (spec, v) = popoviciu_machinery(a, p)?;
    let m = check_fundamental(&spec, &v, b, tol)?;
    let fv = norm::evaluate(&spec, &v)?;
    let predicted = fv.powf(p - 1.0) * m.slack;
    Ok(ReductionReport::new(d, m, predicted, tol.verdict))
}

fn bellman_form(x: &Vector, p: f64, what: &str) -> Result<f64> {
    require_positive(x, what)?;
    let h = lorentz_power_form(x, p);
    if !(h > 0.0) {
        return Err(Error::domain(format!(
            "({what}0)^p - ({what}1)^p - ... - ({what}n)^p must be > 0"
        )));
    }
    Ok(h.powf(1.0 / p))
}

/// `[(v⁰+w⁰)^p − Σ(vᵅ+wᵅ)^p]^{1/p} ≥ [(v⁰)^p − Σ(vᵅ)^p]^{1/p} + [(w⁰)^p − Σ(wᵅ)^p]^{1/p}`.
pub fn check_bellman(v: &Vector, w: &Vector, p: f64, tol: &Tolerances) -> Result<IneqReport> {
    conjugate(p)?;
    require_same_dim(v, w)?;
    require_dim_at_least(v, 2)?;
    let fv = bellman_form(v, p, "v")?;
    let fw = bellman_form(w, p, "w")?;
    let fs = bellman_form(&v.add(w)?, p, "(v+w)")?;
    let spec = NormSpec::p_pseudo_norm(v.dim(), p)?;
    let collinear = pair(&spec, v, w, tol)?.collinear;
    Ok(direct("bellman", fs, fv + fw, tol, true, collinear))
}

/// Bellman against the reverse triangle inequality of the p-pseudo-norm; the
/// two slacks are the same quantity.
pub fn bellman_reduction(
    v: &Vector,
    w: &Vector,
    p: f64,
    tol: &Tolerances,
) -> Result<ReductionReport> {
    let d = check_bellman(v, w, p, tol)?;
    let spec = NormSpec::p_pseudo_norm(v.dim(), p)?;
    let m = check_reverse_triangle(&spec, v, w, tol)?;
    let predicted = m.slack;
    Ok(ReductionReport::new(d, m, predicted, tol.lemma))
}

// ---------------------------------------------------------------------------
// AM-GM

/// `(a₀ + … + aₙ)/(n+1) ≥ (a₀⋯aₙ)^{1/(n+1)}`.
pub fn check_am_gm(a: &Vector, tol: &Tolerances) -> Result<IneqReport> {
    require_dim_at_least(a, 2)?;
    require_positive(a, "a")?;
    let k = a.dim() as f64;
    let mean = a.iter().sum::<f64>() / k;
    let geo = a.iter().product::<f64>().powf(1.0 / k);
    let equal = a.iter().all(|c| *c == a[0]);
    let spec = NormSpec::berwald_moor(a.dim())?;
    let ones = Vector::filled(a.dim(), 1.0)?;
    let collinear = equal || pair(&spec, &ones, a, tol)?.collinear;
    Ok(direct("am_gm", mean, geo, tol, true, collinear))
}

/// AM-GM for `aᵢ = wⁱ/vⁱ` against the Berwald-Moór fundamental inequality at
/// `v`: `slack = F(v)·(direct slack)`.
pub fn am_gm_reduction(v: &Vector, w: &Vector, tol: &Tolerances) -> Result<ReductionReport> {
    require_same_dim(v, w)?;
    require_positive(v, "v")?;
    let a = Vector::new(v.iter().zip(w.iter()).map(|(x, y)| y / x).collect())?;
    let d = check_am_gm(&a, tol)?;
    let spec = NormSpec::berwald_moor(v.dim())?;
    let m = check_fundamental(&spec, v, w, tol)?;
    let predicted = m.slack / norm::evaluate(&spec, v)?;
    Ok(ReductionReport::new(d, m, predicted, tol.verdict))
}

fn normalized_weights(weights: &Vector) -> Result<Vec<f64>> {
    if let Some(i) = weights.iter().position(|a| *a < 0.0) {
        return Err(Error::argument(format!("weight a{i} must be >= 0")));
    }
    let sum: f64 = weights.iter().sum();
    if (sum - 1.0).abs() > 1e-10 {
        return Err(Error::argument(format!(
            "weights must sum to 1 within 1e-10, got {sum}; normalize first"
        )));
    }
    Ok(weights.iter().map(|a| a / sum).collect())
}

/// `Σaᵢxⁱ ≥ Π(xⁱ)^{aᵢ}` for weights summing to one.
pub fn check_weighted_am_gm(weights: &Vector, x: &Vector, tol: &Tolerances) -> Result<IneqReport> {
    require_same_dim(weights, x)?;
    require_dim_at_least(x, 2)?;
    let a = normalized_weights(weights)?;
    require_positive(x, "v")?;
    let lhs: f64 = a.iter().zip(x.iter()).map(|(ai, xi)| ai * xi).sum();
    let rhs: f64 = a.iter().zip(x.iter()).map(|(ai, xi)| xi.powf(*ai)).product();
    let strict = a.iter().all(|ai| *ai > 0.0);
    let spec = NormSpec::weighted_geometric(a)?;
    let ones = Vector::filled(x.dim(), 1.0)?;
    let collinear = pair(&spec, &ones, x, tol)?.collinear;
    Ok(direct("weighted_am_gm", lhs, rhs, tol, strict, collinear))
}

/// Weighted AM-GM for `xⁱ = wⁱ/uⁱ` against the weighted geometric fundamental
/// inequality at `u`: `slack = F(u)·(direct slack)`.
pub fn weighted_am_gm_reduction(
    weights: &Vector,
    u: &Vector,
    w: &Vector,
    tol: &Tolerances,
) -> Result<ReductionReport> {
    require_same_dim(u, w)?;
    require_positive(u, "u")?;
    let x = Vector::new(u.iter().zip(w.iter()).map(|(a, b)| b / a).collect())?;
    let d = check_weighted_am_gm(weights, &x, tol)?;
    let spec = NormSpec::weighted_geometric(normalized_weights(weights)?)?;
    let m = check_fundamental(&spec, u, w, tol)?;
    let predicted = m.slack / norm::evaluate(&spec, u)?;
    Ok(ReductionReport::new(d, m, predicted, tol.verdict))
}

// ---------------------------------------------------------------------------
// Hölder and Minkowski

/// Hölder `‖a‖_q‖b‖_p ≥ Σaⁱbⁱ` and Minkowski `‖a‖_p + ‖b‖_p ≥ ‖a+b‖_p`.
pub fn check_holder_minkowski(
    a: &Vector,
    b: &Vector,
    p: f64,
    tol: &Tolerances,
) -> Result<(IneqReport, IneqReport)> {
    let q = conjugate(p)?;
    require_same_dim(a, b)?;
    require_positive(a, "a")?;
    require_positive(b, "b")?;
    let na_q = power_sum(a, q).powf(1.0 / q);
    let na_p = power_sum(a, p).powf(1.0 / p);
    let nb_p = power_sum(b, p).powf(1.0 / p);
    let nab_p = power_sum(&a.add(b)?, p).powf(1.0 / p);
    let dot = a.dot(b)?;

    let spec = NormSpec::euclidean_p(a.dim(), p)?;
    let v = componentwise(a, |c| (c.ln() / (p - 1.0)).exp())?;
    let holder_collinear = pair(&spec, &v, b, tol)?.collinear;
    let minkowski_collinear = pair(&spec, a, b, tol)?.collinear;
    Ok((
        direct("holder", na_q * nb_p, dot, tol, true, holder_collinear),
        direct("minkowski", na_p + nb_p, nab_p, tol, true, minkowski_collinear),
    ))
}

/// Hölder against the p-norm Cauchy-Schwarz inequality at `vⁱ = (aⁱ)^{1/(p−1)}`
/// (direct slack `= F(v)^{p−1}·slack`), and Minkowski against its triangle
/// inequality (equal slacks).
pub fn holder_minkowski_reduction(
    a: &Vector,
    b: &Vector,
    p: f64,
    tol: &Tolerances,
) -> Result<(ReductionReport, ReductionReport)> {
    let (holder, minkowski) = check_holder_minkowski(a, b, p, tol)?;
    let spec = NormSpec::euclidean_p(a.dim(), p)?;
    let v = componentwise(a, |c| (c.ln() / (p - 1.0)).exp())?;
    let fund = check_fundamental(&spec, &v, b, tol)?;
    let predicted_h = norm::evaluate(&spec, &v)?.powf(p - 1.0) * fund.slack;
    let tri = check_reverse_triangle(&spec, a, b, tol)?;
    let predicted_m = tri.slack;
    Ok((
        ReductionReport::new(holder, fund, predicted_h, tol.verdict),
        ReductionReport::new(minkowski, tri, predicted_m, tol.verdict),
    ))
}

// ---------------------------------------------------------------------------
// Kropina

/// `2η(v,w) ≥ (w⁰/v⁰)η(v,v) + (v⁰/w⁰)η(w,w)`, non-strict.
pub fn check_kropina(v: &Vector, w: &Vector, tol: &Tolerances) -> Result<IneqReport> {
    require_same_dim(v, w)?;
    require_dim_at_least(v, 2)?;
    require_future_timelike(v, "v")?;
    require_future_timelike(w, "w")?;
    let (x, y) = (v.as_slice(), w.as_slice());
    let lhs = 2.0 * eta(x, y);
    let rhs = (y[0] / x[0]) * eta(x, x) + (x[0] / y[0]) * eta(y, y);
    let spec = NormSpec::kropina(v.dim())?;
    let collinear = pair(&spec, v, w, tol)?.collinear;
    Ok(direct("kropina", lhs, rhs, tol, false, collinear))
}

/// Kropina against the fundamental inequality of `F = η(v,v)/v⁰`:
/// direct slack `= v⁰·slack`.
pub fn kropina_reduction(v: &Vector, w: &Vector, tol: &Tolerances) -> Result<ReductionReport> {
    let d = check_kropina(v, w, tol)?;
    let spec = NormSpec::kropina(v.dim())?;
    let m = check_fundamental(&spec, v, w, tol)?;
    let predicted = v[0] * m.slack;
    Ok(ReductionReport::new(d, m, predicted, tol.verdict))
}

// ---------------------------------------------------------------------------
// Bimetric

fn require_bimetric_cone(x: &Vector, h: &SymTensor, what: &str) -> Result<()> {
    require_future_timelike(x, what)?;
    let spec = NormSpec::bimetric(h.clone())?;
    norm::check_domain(&spec, x).map_err(|e| match e {
        Error::Domain { constraint } => Error::domain(format!("{what}: {constraint}")),
        other => other,
    })
}

/// `½(η(v,w)/η(v,v) + h(v,w)/h(v,v)) ≥ (H(w)/H(v))^{1/4}`, `H = η(·,·)·h(·,·)`.
pub fn check_bimetric(
    v: &Vector,
    w: &Vector,
    h: &SymTensor,
    tol: &Tolerances,
) -> Result<IneqReport> {
    require_same_dim(v, w)?;
    crate::linalg::check_dims(h.dim(), v.dim())?;
    require_bimetric_cone(v, h, "v")?;
    require_bimetric_cone(w, h, "w")?;
    let (x, y) = (v.as_slice(), w.as_slice());
    let (hvv, hww, hvw) = (bilinear(h, v, v)?, bilinear(h, w, w)?, bilinear(h, v, w)?);
    let lhs = 0.5 * (eta(x, y) / eta(x, x) + hvw / hvv);
    let rhs = ((eta(y, y) * hww) / (eta(x, x) * hvv)).powf(0.25);
    let spec = NormSpec::bimetric(h.clone())?;
    let collinear = pair(&spec, v, w, tol)?.collinear;
    Ok(direct("bimetric", lhs, rhs, tol, true, collinear))
}

/// Bimetric against the fundamental inequality of `F = H^{1/4}`:
/// direct slack `= slack/F(v)`.
pub fn bimetric_reduction(
    v: &Vector,
    w: &Vector,
    h: &SymTensor,
    tol: &Tolerances,
) -> Result<ReductionReport> {
    let d = check_bimetric(v, w, h, tol)?;
    let spec = NormSpec::bimetric(h.clone())?;
    let m = check_fundamental(&spec, v, w, tol)?;
    let predicted = m.slack / norm::evaluate(&spec, v)?;
    Ok(ReductionReport::new(d, m, predicted, tol.verdict))
}

/// The explicit plane case `h = diag(2, −1)` written as a fourth-power inequality:
/// `(1/16)(X + Y)⁴ ≥ H(w)/H(v)`.
pub fn check_bimetric_plane(v: &Vector, w: &Vector, tol: &Tolerances) -> Result<IneqReport> {
    if v.dim() != 2 || w.dim() != 2 {
        return Err(Error::argument("the plane bimetric inequality needs dimension 2"));
    }
    let h = SymTensor::diag(&[2.0, -1.0])?;
    require_bimetric_cone(v, &h, "v")?;
    require_bimetric_cone(w, &h, "w")?;
    let (v0, v1, w0, w1) = (v[0], v[1], w[0], w[1]);
    let x = (v0 * w0 - v1 * w1) / (v0 * v0 - v1 * v1);
    let y = (2.0 * v0 * w0 - v1 * w1) / (2.0 * v0 * v0 - v1 * v1);
    let lhs = (x + y).powi(4) / 16.0;
    let rhs = ((w0 * w0 - w1 * w1) * (2.0 * w0 * w0 - w1 * w1))
        / ((v0 * v0 - v1 * v1) * (2.0 * v0 * v0 - v1 * v1));
    let spec = NormSpec::bimetric(h)?;
    let collinear = pair(&spec, v, w, tol)?.collinear;
    Ok(direct("bimetric_plane", lhs, rhs, tol, true, collinear))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::inequalities::Verdict;

    fn v(c: &[f64]) -> Vector {
        Vector::from_slice(c).unwrap()
    }

    fn t() -> Tolerances {
        Tolerances::default()
    }

    #[test]
    fn aczel_examples() {
        let r = check_aczel_classical(&v(&[2.0, 1.0]), &v(&[3.0, 1.0]), &t()).unwrap();
        assert_eq!((r.lhs, r.rhs, r.slack), (25.0, 24.0, 1.0));
        assert_eq!(r.verdict, Verdict::Holds);
        let r = check_aczel_classical(&v(&[2.0, 1.0]), &v(&[2.0, 1.0]), &t()).unwrap();
        assert_eq!(r.verdict, Verdict::HoldsWithEquality);
        assert!(r.collinear);
        let r = check_aczel_classical(&v(&[1.0, 0.0]), &v(&[1.0, 0.5]), &t()).unwrap();
        assert!((r.slack - 0.25).abs() < 1e-15);
        assert!(check_aczel_classical(&v(&[1.0, 2.0]), &v(&[1.0, 0.5]), &t()).is_err());

        let red = aczel_reduction(&v(&[2.0, 1.0]), &v(&[3.0, 1.0]), &t()).unwrap();
        assert!(red.agrees && red.gap_ok());
    }

    #[test]
    fn popoviciu_examples() {
        let r = check_popoviciu(&v(&[2.0, 1.0]), &v(&[3.0, 1.0]), 2.0, &t()).unwrap();
        assert!((r.slack - (5.0 - 3f64.sqrt() * 8f64.sqrt())).abs() < 1e-14);
        assert!((r.slack - 0.101).abs() < 1e-3);

        // a = b = (2,1) at p = 3: the underlying v = (√2, 1) and w = (2, 1)
        // are not collinear, so the inequality is strict.
        let r = check_popoviciu(&v(&[2.0, 1.0]), &v(&[2.0, 1.0]), 3.0, &t()).unwrap();
        let q: f64 = 1.5;
        let oracle = 3.0 - (2f64.powf(q) - 1.0).powf(1.0 / q) * 7f64.powf(1.0 / 3.0);
        assert!((r.slack - oracle).abs() < 1e-14);
        assert!(r.slack > 0.1 && !r.collinear);

        // a = (4,1) at p = 3 gives v = (2,1) = b: collinear, so equality.
        let r = check_popoviciu(&v(&[4.0, 1.0]), &v(&[2.0, 1.0]), 3.0, &t()).unwrap();
        let oracle = 7.0 - 7f64.powf(1.0 / q) * 7f64.powf(1.0 / 3.0);
        assert!((r.slack - oracle).abs() < 1e-13);
        assert_eq!(r.verdict, Verdict::HoldsWithEquality);
        assert!(r.collinear);

        let r = check_popoviciu(&v(&[4.0, 1.0]), &v(&[3.0, 2.0]), 3.0, &t()).unwrap();
        let oracle = 10.0 - 7f64.powf(1.0 / q) * 19f64.powf(1.0 / 3.0);
        assert!((r.slack - oracle).abs() < 1e-13);
        assert_eq!(r.verdict, Verdict::Holds);

        let red = popoviciu_reduction(&v(&[4.0, 1.0]), &v(&[3.0, 2.0]), 3.0, &t()).unwrap();
        assert!(red.agrees && red.gap_ok());
    }

    #[test]
    fn bellman_examples() {
        let r = check_bellman(&v(&[2.0, 1.0]), &v(&[3.0, 1.0]), 2.0, &t()).unwrap();
        let want = 21f64.sqrt() - 3f64.sqrt() - 8f64.sqrt();
        assert!((r.slack - want).abs() < 1e-14);
        let r = check_bellman(&v(&[2.0, 1.0]), &v(&[4.0, 2.0]), 2.0, &t()).unwrap();
        assert_eq!(r.verdict, Verdict::HoldsWithEquality);
        let r = check_bellman(&v(&[2.0, 1.0]), &v(&[3.0, 2.0]), 3.0, &t()).unwrap();
        let c = |a: f64, b: f64| (a.powi(3) - b.powi(3)).cbrt();
        assert!((r.slack - (c(5.0, 3.0) - c(2.0, 1.0) - c(3.0, 2.0))).abs() < 1e-14);
        assert_eq!(r.verdict, Verdict::Holds);
        let red = bellman_reduction(&v(&[2.0, 1.0]), &v(&[3.0, 2.0]), 3.0, &t()).unwrap();
        assert!(red.agrees && red.slack_gap <= 1e-10);
    }

    #[test]
    fn am_gm_examples() {
        let r = check_am_gm(&v(&[1.0, 4.0]), &t()).unwrap();
        assert!((r.slack - 0.5).abs() < 1e-15);
        let r = check_am_gm(&v(&[3.0, 3.0, 3.0]), &t()).unwrap();
        assert_eq!(r.verdict, Verdict::HoldsWithEquality);
        assert!(r.collinear);
        let r = check_am_gm(&v(&[1.0, 2.0, 4.0]), &t()).unwrap();
        assert!((r.slack - 1.0 / 3.0).abs() < 1e-14);
        let red = am_gm_reduction(&v(&[2.0, 1.0, 3.0]), &v(&[1.0, 5.0, 2.0]), &t()).unwrap();
        assert!(red.agrees && red.gap_ok());
    }

    #[test]
    fn weighted_am_gm_examples() {
        let r = check_weighted_am_gm(&v(&[0.5, 0.5]), &v(&[1.0, 4.0]), &t()).unwrap();
        assert!((r.slack - 0.5).abs() < 1e-15);
        let r = check_weighted_am_gm(&v(&[1.0, 0.0]), &v(&[3.0, 7.0]), &t()).unwrap();
        assert_eq!(r.verdict, Verdict::HoldsWithEquality);
        assert!(!r.strict_expected && !r.collinear);
        let r = check_weighted_am_gm(&v(&[1.0 / 3.0, 2.0 / 3.0]), &v(&[1.0, 8.0]), &t()).unwrap();
        assert!((r.slack - (17.0 / 3.0 - 4.0)).abs() < 1e-14);
        assert!(check_weighted_am_gm(&v(&[0.5, 0.6]), &v(&[1.0, 2.0]), &t()).is_err());
        let red =
            weighted_am_gm_reduction(&v(&[0.2, 0.8]), &v(&[1.0, 2.0]), &v(&[3.0, 1.0]), &t())
                .unwrap();
        assert!(red.agrees && red.gap_ok());
    }

    #[test]
    fn holder_minkowski_examples() {
        let (h, _) = check_holder_minkowski(&v(&[3.0, 4.0]), &v(&[4.0, 3.0]), 2.0, &t()).unwrap();
        assert!((h.slack - 1.0).abs() < 1e-14);
        let (h, _) = check_holder_minkowski(&v(&[3.0, 4.0]), &v(&[3.0, 4.0]), 2.0, &t()).unwrap();
        assert_eq!(h.verdict, Verdict::HoldsWithEquality);

        let (h, m) = check_holder_minkowski(&v(&[1.0, 1.0]), &v(&[1.0, 2.0]), 3.0, &t()).unwrap();
        let holder = 2f64.powf(2.0 / 3.0) * 9f64.cbrt() - 3.0;
        let minkowski = 2f64.cbrt() + 9f64.cbrt() - 35f64.cbrt();
        assert!((h.slack - holder).abs() < 1e-14 && (m.slack - minkowski).abs() < 1e-14);
        assert_eq!(h.verdict, Verdict::Holds);
        assert_eq!(m.verdict, Verdict::Holds);

        let (rh, rm) =
            holder_minkowski_reduction(&v(&[1.0, 1.0]), &v(&[1.0, 2.0]), 3.0, &t()).unwrap();
        assert!(rh.agrees && rh.gap_ok() && rm.agrees && rm.gap_ok());
    }

    #[test]
    fn kropina_examples() {
        let r = check_kropina(&v(&[2.0, 1.0]), &v(&[3.0, 1.0]), &t()).unwrap();
        assert!((r.slack - (10.0 - 4.5 - 16.0 / 3.0)).abs() < 1e-14);
        assert!(!r.strict_expected);
        let r = check_kropina(&v(&[2.0, 1.0]), &v(&[2.0, 1.0]), &t()).unwrap();
        assert_eq!(r.verdict, Verdict::HoldsWithEquality);
        let r = check_kropina(&v(&[1.0, 0.0]), &v(&[2.0, 1.0]), &t()).unwrap();
        assert!((r.slack - 0.5).abs() < 1e-15);
        let red = kropina_reduction(&v(&[2.0, 1.0]), &v(&[3.0, 1.0]), &t()).unwrap();
        assert!(red.agrees && red.gap_ok());
    }

    #[test]
    fn bimetric_examples() {
        let h = SymTensor::diag(&[2.0, -1.0]).unwrap();
        let r = check_bimetric(&v(&[2.0, 0.0]), &v(&[2.0, 0.0]), &h, &t()).unwrap();
        assert_eq!(r.verdict, Verdict::HoldsWithEquality);
        let r = check_bimetric(&v(&[2.0, 0.0]), &v(&[4.0, 0.0]), &h, &t()).unwrap();
        assert_eq!(r.verdict, Verdict::HoldsWithEquality);
        assert!(r.collinear);

        let r = check_bimetric(&v(&[2.0, 1.0]), &v(&[3.0, 1.0]), &h, &t()).unwrap();
        let lhs = 0.5 * (5.0 / 3.0 + 11.0 / 7.0);
        let rhs = ((8.0f64 * 17.0) / (3.0 * 7.0)).powf(0.25);
        assert!((r.lhs - lhs).abs() < 1e-14 && (r.rhs - rhs).abs() < 1e-14);
        assert_eq!(r.verdict, Verdict::Holds);

        let plane = check_bimetric_plane(&v(&[2.0, 1.0]), &v(&[3.0, 1.0]), &t()).unwrap();
        assert!((plane.lhs - lhs.powi(4)).abs() < 1e-13);
        assert!((plane.rhs - rhs.powi(4)).abs() < 1e-13);
        assert_eq!(plane.verdict, Verdict::Holds);

        let red = bimetric_reduction(&v(&[2.0, 1.0]), &v(&[3.0, 1.0]), &h, &t()).unwrap();
        assert!(red.agrees && red.gap_ok());
    }
}
