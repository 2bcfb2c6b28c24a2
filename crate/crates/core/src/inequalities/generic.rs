//! The fundamental inequality, the triangle inequality and its two
//! refinements, for any catalog norm.

use crate::calculus;
use crate::error::{Error, Result};
use crate::linalg::{signature_of_eigenvalues, sym_eigenvalues, SignatureClass, Vector};
use crate::norm::{self, NormSpec};

use super::report::{normalized_distance, IneqReport, Tolerances};

/// Reverse (Lorentzian-type) or ordinary (positive-type) orientation, fixed by
/// the family's expected signature.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) struct Mode {
    pub reverse: bool,
    pub strict: bool,
}

pub(crate) fn mode(spec: &NormSpec) -> Mode {
    let class = norm::expected_signature(spec);
    Mode {
        reverse: class.is_lorentzian_type(),
        strict: !class.is_degenerate(),
    }
}

pub(crate) struct Pair {
    pub fv: f64,
    pub fw: f64,
    pub collinear: bool,
}

pub(crate) fn pair(spec: &NormSpec, v: &Vector, w: &Vector, tol: &Tolerances) -> Result<Pair> {
    let fv = norm::evaluate(spec, v)?;
    let fw = norm::evaluate(spec, w)?;
    Ok(Pair {
        fv,
        fw,
        collinear: normalized_distance(v, fv, w, fw) <= tol.collinear,
    })
}

/// `dF_v(w) ≥ F(w)` in Lorentzian signature, `dF_v(w) ≤ F(w)` otherwise.
pub fn check_fundamental(
    spec: &NormSpec,
    v: &Vector,
    w: &Vector,
    tol: &Tolerances,
) -> Result<IneqReport> {
    let p = pair(spec, v, w, tol)?;
    let d = calculus::differential(spec, v, w)?;
    let m = mode(spec);
    let (lhs, rhs) = if m.reverse { (d, p.fw) } else { (p.fw, d) };
    let scale = 1.0 + lhs.abs() + rhs.abs();
    Ok(IneqReport::new(
        "fundamental",
        lhs,
        rhs,
        tol.verdict,
        scale,
        m.strict,
        p.collinear,
    ))
}

fn sum_in_cone(spec: &NormSpec, v: &Vector, w: &Vector, what: &str) -> Result<f64> {
    let s = v.add(w)?;
    if !norm::domain_contains(spec, &s, 0.0) {
        return Err(Error::Internal(format!(
            "{what} left the convex cone of {} at {s}",
            spec.label()
        )));
    }
    norm::evaluate(spec, &s)
}

/// `F(v+w) ≥ F(v) + F(w)` in Lorentzian signature, `≤` otherwise.
pub fn check_reverse_triangle(
    spec: &NormSpec,
    v: &Vector,
    w: &Vector,
    tol: &Tolerances,
) -> Result<IneqReport> {
    let p = pair(spec, v, w, tol)?;
    let fs = sum_in_cone(spec, v, w, "v + w")?;
    let m = mode(spec);
    let (lhs, rhs) = if m.reverse {
        (fs, p.fv + p.fw)
    } else {
        (p.fv + p.fw, fs)
    };
    let scale = 1.0 + lhs.abs() + rhs.abs();
    Ok(IneqReport::new(
        "reverse_triangle",
        lhs,
        rhs,
        tol.verdict,
        scale,
        m.strict,
        p.collinear,
    ))
}

/// The chain `a·Δ(v,w) ≤ F(av+bw) − aF(v) − bF(w) ≤ b·Δ(v,w)` with
/// `Δ(v,w) = F(v+w) − F(v) − F(w)`, negated in positive-type signature.
pub fn check_scaled_refinement(
    spec: &NormSpec,
    v: &Vector,
    w: &Vector,
    a: f64,
    b: f64,
    tol: &Tolerances,
) -> Result<(IneqReport, IneqReport)> {
    if !(a > 0.0 && a <= b && b.is_finite()) {
        return Err(Error::argument(format!(
            "scaled refinement needs 0 < a <= b, got a = {a}, b = {b}"
        )));
    }
    let p = pair(spec, v, w, tol)?;
    let fs = sum_in_cone(spec, v, w, "v + w")?;
    let fab = sum_in_cone(spec, &v.scaled(a), &w.scaled(b), "av + bw")?;
    let m = mode(spec);
    let sign = if m.reverse { 1.0 } else { -1.0 };
    let delta = sign * (fs - p.fv - p.fw);
    let mid = sign * (fab - a * p.fv - b * p.fw);
    let scale = 1.0 + fab + fs + b * (p.fv + p.fw);
    let lower = IneqReport::new(
        "scaled_refinement_lower",
        mid,
        a * delta,
        tol.refinement,
        scale,
        false,
        p.collinear,
    );
    let upper = IneqReport::new(
        "scaled_refinement_upper",
        b * delta,
        mid,
        tol.refinement,
        scale,
        false,
        p.collinear,
    );
    Ok((lower, upper))
}

/// `F(v) + F(w) ≤ 2∫₀¹F(tv + (1−t)w)dt ≤ F(v+w)`, reversed in positive-type signature.
pub fn check_integral_refinement(
    spec: &NormSpec,
    v: &Vector,
    w: &Vector,
    n_panels: usize,
    tol: &Tolerances,
) -> Result<(IneqReport, IneqReport)> {
    let p = pair(spec, v, w, tol)?;
    let fs = sum_in_cone(spec, v, w, "v + w")?;
    let integrand = |t: f64| match v.combine(t, w, 1.0 - t) {
        Ok(x) => norm::evaluate(spec, &x).unwrap_or(f64::NAN),
        Err(_) => f64::NAN,
    };
    let twice = 2.0 * calculus::integrate_unit_interval(integrand, n_panels)?;
    let ends = p.fv + p.fw;
    let m = mode(spec);
    let scale = 1.0 + ends + fs + twice.abs();
    let (lower, upper) = if m.reverse {
        ((twice, ends), (fs, twice))
    } else {
        ((ends, twice), (twice, fs))
    };
    Ok((
        IneqReport::new(
            "integral_refinement_lower",
            lower.0,
            lower.1,
            tol.refinement,
            scale,
            false,
            p.collinear,
        ),
        IneqReport::new(
            "integral_refinement_upper",
            upper.0,
            upper.1,
            tol.refinement,
            scale,
            false,
            p.collinear,
        ),
    ))
}

/// Semidefiniteness and radical of the angular metric `F_ij` at one point.
#[derive(Debug, Clone, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct AngularMetricReport {
    pub g_class: SignatureClass,
    pub max_eigenvalue: f64,
    pub min_eigenvalue: f64,
    /// `‖F_ij vʲ‖_∞ / (max(1, ‖F_ij‖_max)·‖v‖_∞)`.
    pub radical_residual: f64,
    /// Violation of the sign condition implied by `g_class`, relative to `max(1, ‖F_ij‖_max)`.
    pub sign_excess: f64,
    pub tol_used: f64,
    pub ok: bool,
}

/// Where `g_v` has one positive eigenvalue, `F_ij` must be negative
/// semidefinite; where `g_v` is positive semidefinite, `F_ij` must be
/// positive semidefinite. In both cases `F_ij v = 0`.
pub fn check_angular_metric(
    spec: &NormSpec,
    v: &Vector,
    tol: &Tolerances,
) -> Result<AngularMetricReport> {
    let g = norm::fundamental_tensor_analytic(spec, v)?;
    let g_eigs = sym_eigenvalues(&g)?;
    let g_sig = signature_of_eigenvalues(&g_eigs, tol.signature);
    let g_class = g_sig.class;
    let h = calculus::hessian_f(spec, v)?;
    let eigs = sym_eigenvalues(&h)?;
    let scale = h.max_abs().max(1.0);
    let max_eig = eigs[0];
    let min_eig = eigs[eigs.len() - 1];
    let hv = h.mul_vec(v)?;
    let radical_residual = hv.norm_inf() / (scale * v.norm_inf());
    let one_positive = g_sig.n_pos == 1;
    let sign_excess = if g_class.is_positive_type() {
        (-min_eig).max(0.0) / scale
    } else if one_positive {
        max_eig.max(0.0) / scale
    } else {
        0.0
    };
    let ok = radical_residual <= tol.radical && sign_excess <= tol.radical;
    Ok(AngularMetricReport {
        g_class,
        max_eigenvalue: max_eig,
        min_eigenvalue: min_eig,
        radical_residual,
        sign_excess,
        tol_used: tol.radical,
        ok,
    })
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
    fn fundamental_examples() {
        let eta = NormSpec::minkowski(2).unwrap();
        let r = check_fundamental(&eta, &v(&[2.0, 1.0]), &v(&[3.0, 1.0]), &t()).unwrap();
        assert!((r.lhs - 5.0 / 3f64.sqrt()).abs() < 1e-14);
        assert!((r.rhs - 8f64.sqrt()).abs() < 1e-14);
        assert_eq!(r.verdict, Verdict::Holds);
        assert!(r.strict_expected && !r.collinear);

        let deg = NormSpec::degenerate_minkowski(5, 2).unwrap();
        let r = check_fundamental(
            &deg,
            &v(&[1.0, 0.0, 0.0, 1.0, 0.0]),
            &v(&[1.0, 0.0, 0.0, 0.0, 1.0]),
            &t(),
        )
        .unwrap();
        assert!(r.slack.abs() <= 1e-12);
        assert_eq!(r.verdict, Verdict::HoldsWithEquality);
        assert!(!r.collinear && !r.strict_expected);

        let bm = NormSpec::berwald_moor(3).unwrap();
        let x = v(&[1.0, 2.0, 3.0]);
        let r = check_fundamental(&bm, &x, &x, &t()).unwrap();
        assert_eq!(r.verdict, Verdict::HoldsWithEquality);
        assert!(r.collinear && !r.unexpected_equality());
    }

    #[test]
    fn positive_definite_mode_is_ordinary_cauchy_schwarz() {
        let e = NormSpec::euclidean_p(2, 2.0).unwrap();
        let r = check_fundamental(&e, &v(&[3.0, 4.0]), &v(&[4.0, 3.0]), &t()).unwrap();
        // F(w) = 5, dF_v(w) = (12 + 12)/5.
        assert!((r.lhs - 5.0).abs() < 1e-14 && (r.rhs - 4.8).abs() < 1e-14);
        assert_eq!(r.verdict, Verdict::Holds);
    }

    #[test]
    fn reverse_triangle_examples() {
        let eta = NormSpec::minkowski(2).unwrap();
        let r = check_reverse_triangle(&eta, &v(&[2.0, 1.0]), &v(&[3.0, 1.0]), &t()).unwrap();
        let want = 21f64.sqrt() - 3f64.sqrt() - 8f64.sqrt();
        assert!((r.slack - want).abs() < 1e-14);
        assert!((want - 0.0220).abs() < 1e-4);
        assert_eq!(r.verdict, Verdict::Holds);

        let r = check_reverse_triangle(&eta, &v(&[2.0, 1.0]), &v(&[6.0, 3.0]), &t()).unwrap();
        assert_eq!(r.verdict, Verdict::HoldsWithEquality);
        assert!(r.collinear);
    }

    #[test]
    fn scaled_refinement_examples() {
        let eta = NormSpec::minkowski(2).unwrap();
        let (x, y) = (v(&[2.0, 1.0]), v(&[3.0, 1.0]));
        let (lo, hi) = check_scaled_refinement(&eta, &x, &y, 1.0, 2.0, &t()).unwrap();
        let delta = 21f64.sqrt() - 3f64.sqrt() - 8f64.sqrt();
        let mid = 55f64.sqrt() - 3f64.sqrt() - 2.0 * 8f64.sqrt();
        assert!((lo.lhs - mid).abs() < 1e-14 && (lo.rhs - delta).abs() < 1e-14);
        assert!((hi.lhs - 2.0 * delta).abs() < 1e-14);
        assert!((mid - 0.0273).abs() < 5e-4);
        assert_eq!(lo.verdict, Verdict::Holds);
        assert_eq!(hi.verdict, Verdict::Holds);

        let (lo, hi) = check_scaled_refinement(&eta, &x, &y, 1.0, 1.0, &t()).unwrap();
        assert_eq!(lo.verdict, Verdict::HoldsWithEquality);
        assert_eq!(hi.verdict, Verdict::HoldsWithEquality);

        assert!(check_scaled_refinement(&eta, &x, &y, 2.0, 1.0, &t()).is_err());
        assert!(check_scaled_refinement(&eta, &x, &y, 0.0, 1.0, &t()).is_err());
    }

    #[test]
    fn integral_refinement_examples() {
        let eta = NormSpec::minkowski(2).unwrap();
        let (x, y) = (v(&[2.0, 1.0]), v(&[3.0, 1.0]));
        let (lo, hi) = check_integral_refinement(&eta, &x, &y, 64, &t()).unwrap();
        // Independent oracle: a fine midpoint rule for ∫₀¹ √((3−t)² − 1) dt.
        let n = 200_000;
        let oracle: f64 = (0..n)
            .map(|k| {
                let s = (k as f64 + 0.5) / n as f64;
                ((3.0 - s) * (3.0 - s) - 1.0).sqrt()
            })
            .sum::<f64>()
            / n as f64;
        assert!((lo.lhs - 2.0 * oracle).abs() < 1e-8);
        assert!((lo.rhs - 4.5606).abs() < 5e-4 && (hi.lhs - 4.5826).abs() < 5e-4);
        assert_eq!(lo.verdict, Verdict::Holds);
        assert_eq!(hi.verdict, Verdict::Holds);

        let (lo, hi) = check_integral_refinement(&eta, &x, &x, 64, &t()).unwrap();
        assert_eq!(lo.verdict, Verdict::HoldsWithEquality);
        assert_eq!(hi.verdict, Verdict::HoldsWithEquality);

        let bm = NormSpec::berwald_moor(2).unwrap();
        let (lo, hi) = check_integral_refinement(&bm, &v(&[1.0, 4.0]), &v(&[4.0, 1.0]), 64, &t()).unwrap();
        assert_eq!(lo.verdict, Verdict::Holds);
        assert_eq!(hi.verdict, Verdict::Holds);
    }

    #[test]
    fn angular_metric_signs() {
        let pp = NormSpec::p_pseudo_norm(3, 3.0).unwrap();
        let r = check_angular_metric(&pp, &v(&[3.0, 1.0, 2.0]), &t()).unwrap();
        assert!(r.ok && r.max_eigenvalue <= 1e-12);
        let e = NormSpec::euclidean_p(3, 3.0).unwrap();
        let r = check_angular_metric(&e, &v(&[3.0, 1.0, 2.0]), &t()).unwrap();
        assert!(r.ok && r.min_eigenvalue >= -1e-12);
    }
}
