//! The Finslerian Aczél inequality for stationary norms
//! `F(v) = √((v⁰)² − F̄(v⃗)²)`, its lemma identity and two refinements.
//!
//! Notation: `a = v⁰`, `b = w⁰`, `A = F̄(v⃗)²`, `B = F̄(w⃗)²` and
//! `ḡ = ḡ_{v⃗}(v⃗, w⃗) = F̄(v⃗)·dF̄_{v⃗}(w⃗)`.
//!
//! Expanding `(ab − ḡ)² − (a² − A)(b² − B)` gives
//! `[Ab² + a²B − 2abḡ] + [ḡ² − AB]`, and the lemma decomposes it as
//! `[bḡ/√B − a√B]² + (b² − B)/B·(AB − ḡ²)`. Both terms of the decomposition
//! are nonnegative by the Cauchy-Schwarz inequality for `F̄`, which yields the
//! two refinements. The mixed term enters squared; the unsquared variant is
//! evaluated separately as a diagnostic.

use serde::{Deserialize, Serialize};

use crate::calculus;
use crate::error::{Error, Result};
use crate::linalg::Vector;
use crate::norm::{self, NormSpec};

use super::report::{IneqReport, Tolerances};

struct Terms {
    a: f64,
    b: f64,
    big_a: f64,
    big_b: f64,
    gbar: f64,
    collinear: bool,
}

impl Terms {
    fn scale(&self) -> f64 {
        let ab = self.a * self.b;
        1.0 + ab * ab + self.big_a * self.b * self.b + self.a * self.a * self.big_b
    }

    fn aczel_lhs(&self) -> f64 {
        let m = self.a * self.b - self.gbar;
        m * m
    }

    fn aczel_rhs(&self) -> f64 {
        (self.a * self.a - self.big_a) * (self.b * self.b - self.big_b)
    }

    /// `[Ab² + a²B − 2abḡ] + [ḡ² − AB]`.
    fn expansion(&self) -> f64 {
        let first = self.big_a * self.b * self.b + self.a * self.a * self.big_b
            - 2.0 * self.a * self.b * self.gbar;
        first + (self.gbar * self.gbar - self.big_a * self.big_b)
    }

    /// `[bḡ/√B − a√B]²`.
    fn square_term(&self) -> f64 {
        let sb = self.big_b.sqrt();
        let t = self.b * self.gbar / sb - self.a * sb;
        t * t
    }

    /// `(b² − B)/B·(AB − ḡ²)`.
    fn cauchy_schwarz_term(&self) -> f64 {
        (self.b * self.b - self.big_b) / self.big_b * (self.big_a * self.big_b - self.gbar * self.gbar)
    }

    /// `(b² − B)/B·(AB − ḡ)`, the unsquared form.
    fn unsquared_term(&self) -> f64 {
        (self.b * self.b - self.big_b) / self.big_b * (self.big_a * self.big_b - self.gbar)
    }
}

fn stationary(base: &NormSpec) -> Result<NormSpec> {
    NormSpec::stationary(base.clone())
}

fn terms(base: &NormSpec, v: &Vector, w: &Vector, tol: &Tolerances, need_w: bool) -> Result<Terms> {
    crate::linalg::check_dims(base.dim() + 1, v.dim())?;
    crate::linalg::check_dims(base.dim() + 1, w.dim())?;
    if v.spatial().iter().all(|c| *c == 0.0) {
        return Err(Error::argument("spatial part of v must be nonzero"));
    }
    if need_w && w.spatial().iter().all(|c| *c == 0.0) {
        return Err(Error::argument("spatial part of w must be nonzero"));
    }
    let spec = stationary(base)?;
    let fv = norm::evaluate(&spec, v)?;
    let fw = norm::evaluate(&spec, w)?;
    let vs = Vector::from_slice(v.spatial())?;
    let ws = Vector::from_slice(w.spatial())?;
    let fbar_v = norm::evaluate(base, &vs)?;
    let fbar_w = norm::evaluate(base, &ws)?;
    let gbar = fbar_v * calculus::differential(base, &vs, &ws)?;
    let collinear = super::report::normalized_distance(v, fv, w, fw) <= tol.collinear;
    Ok(Terms {
        a: v[0],
        b: w[0],
        big_a: fbar_v * fbar_v,
        big_b: fbar_w * fbar_w,
        gbar,
        collinear,
    })
}

/// `[v⁰w⁰ − ḡ]² ≥ [(v⁰)² − F̄(v⃗)²]·[(w⁰)² − F̄(w⃗)²]`, strict for non-collinear pairs.
pub fn finslerian_aczel(
    base: &NormSpec,
    v: &Vector,
    w: &Vector,
    tol: &Tolerances,
) -> Result<IneqReport> {
    let t = terms(base, v, w, tol, false)?;
    let (lhs, rhs) = (t.aczel_lhs(), t.aczel_rhs());
    Ok(IneqReport::new(
        "finslerian_aczel",
        lhs,
        rhs,
        tol.verdict,
        t.scale(),
        true,
        t.collinear,
    ))
}

/// Maximum pairwise deviation between the Aczél slack, its expansion and the
/// lemma decomposition.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LemmaIdentity {
    pub aczel_slack: f64,
    pub expansion: f64,
    pub decomposition: f64,
    pub deviation: f64,
    pub tol_used: f64,
    pub holds: bool,
}

pub fn aczel_lemma_identity(
    base: &NormSpec,
    v: &Vector,
    w: &Vector,
    tol: &Tolerances,
) -> Result<LemmaIdentity> {
    let t = terms(base, v, w, tol, true)?;
    let direct = t.aczel_lhs() - t.aczel_rhs();
    let expansion = t.expansion();
    let decomposition = t.square_term() + t.cauchy_schwarz_term();
    let deviation = (direct - expansion)
        .abs()
        .max((direct - decomposition).abs())
        .max((expansion - decomposition).abs());
    let tol_used = tol.lemma * t.scale();
    Ok(LemmaIdentity {
        aczel_slack: direct,
        expansion,
        decomposition,
        deviation,
        tol_used,
        holds: deviation <= tol_used,
    })
}

/// The two refinements, plus the first refinement with the mixed term
/// unsquared as displayed in some statements of it.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AczelRefinements {
    /// Aczél slack `≥ (b² − B)/B·(AB − ḡ²)`.
    pub first: IneqReport,
    /// Aczél slack `≥ [bḡ/√B − a√B]²`.
    pub second: IneqReport,
    /// Aczél slack `≥ (b² − B)/B·(AB − ḡ)`; not dimensionally consistent and
    /// reported for information only.
    pub first_as_displayed: IneqReport,
}

pub fn aczel_refinements(
    base: &NormSpec,
    v: &Vector,
    w: &Vector,
    tol: &Tolerances,
) -> Result<AczelRefinements> {
    let t = terms(base, v, w, tol, true)?;
    let slack = t.aczel_lhs() - t.aczel_rhs();
    let scale = t.scale();
    let report = |name: &str, bound: f64| {
        IneqReport::new(name, slack, bound, tol.lemma, scale, false, t.collinear)
    };
    Ok(AczelRefinements {
        first: report("aczel_refinement_1", t.cauchy_schwarz_term()),
        second: report("aczel_refinement_2", t.square_term()),
        first_as_displayed: report("aczel_refinement_1_as_displayed", t.unsquared_term()),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::inequalities::Verdict;

    fn v(c: &[f64]) -> Vector {
        Vector::from_slice(c).unwrap()
    }

    fn euclid() -> NormSpec {
        NormSpec::euclidean_p(2, 2.0).unwrap()
    }

    #[test]
    fn euclidean_base_reduces_to_classical_aczel() {
        let t = Tolerances::default();
        let r = finslerian_aczel(&euclid(), &v(&[3.0, 2.0, 1.0]), &v(&[3.0, 1.0, 2.0]), &t).unwrap();
        assert!((r.lhs - 25.0).abs() < 1e-13 && (r.rhs - 16.0).abs() < 1e-13);
        assert!((r.slack - 9.0).abs() < 1e-13);
        assert_eq!(r.verdict, Verdict::Holds);

        let x = v(&[3.0, 2.0, 1.0]);
        let r = finslerian_aczel(&euclid(), &x, &x.scaled(2.5), &t).unwrap();
        assert_eq!(r.verdict, Verdict::HoldsWithEquality);
        assert!(r.collinear);
    }

    #[test]
    fn lemma_identity_examples() {
        let t = Tolerances::default();
        let l = aczel_lemma_identity(&euclid(), &v(&[3.0, 2.0, 1.0]), &v(&[3.0, 1.0, 2.0]), &t)
            .unwrap();
        assert!(l.holds && l.deviation <= 1e-10);
        let x = v(&[3.0, 2.0, 1.0]);
        let l = aczel_lemma_identity(&euclid(), &x, &x, &t).unwrap();
        assert!(l.deviation <= 1e-12);

        let p3 = NormSpec::euclidean_p(3, 3.0).unwrap();
        let l = aczel_lemma_identity(&p3, &v(&[5.0, 1.0, 2.0, 1.5]), &v(&[4.0, 2.0, 0.5, 1.0]), &t)
            .unwrap();
        assert!(l.holds);
    }

    #[test]
    fn refinements_by_direct_arithmetic() {
        let t = Tolerances::default();
        let r = aczel_refinements(&euclid(), &v(&[3.0, 2.0, 1.0]), &v(&[3.0, 1.0, 2.0]), &t)
            .unwrap();
        // A = B = 5, ḡ = 4: square term (3·4/√5 − 3√5)² = 9/5,
        // Cauchy-Schwarz term (9 − 5)/5·(25 − 16) = 36/5.
        assert!((r.second.rhs - 1.8).abs() < 1e-13);
        assert!((r.first.rhs - 7.2).abs() < 1e-13);
        assert!((r.first.slack - 1.8).abs() < 1e-13);
        assert!((r.second.slack - 7.2).abs() < 1e-13);
        assert_eq!(r.first.verdict, Verdict::Holds);
        assert_eq!(r.second.verdict, Verdict::Holds);
        // (9 − 5)/5·(25 − 4) = 16.8 exceeds the Aczél slack 9.
        assert!((r.first_as_displayed.rhs - 16.8).abs() < 1e-13);
        assert_eq!(r.first_as_displayed.verdict, Verdict::Violated);
    }

    #[test]
    fn refinement_two_collapses_for_equal_vectors() {
        let t = Tolerances::default();
        let x = v(&[3.0, 2.0, 1.0]);
        let r = aczel_refinements(&euclid(), &x, &x, &t).unwrap();
        assert_eq!(r.second.verdict, Verdict::HoldsWithEquality);
        assert_eq!(r.first.verdict, Verdict::HoldsWithEquality);
    }

    #[test]
    fn zero_spatial_part_is_rejected() {
        let t = Tolerances::default();
        let r = finslerian_aczel(&euclid(), &v(&[3.0, 0.0, 0.0]), &v(&[3.0, 1.0, 2.0]), &t);
        assert!(matches!(r, Err(Error::Argument(_))));
        let r = aczel_lemma_identity(&euclid(), &v(&[3.0, 1.0, 2.0]), &v(&[3.0, 0.0, 0.0]), &t);
        assert!(matches!(r, Err(Error::Argument(_))));
    }
}
