use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::Vector;
use crate::norm::{self, NormSpec};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Holds,
    HoldsWithEquality,
    Violated,
}

impl Verdict {
    pub fn from_slack(slack: f64, tol: f64) -> Self {
        if slack > tol {
            Verdict::Holds
        } else if slack >= -tol {
            Verdict::HoldsWithEquality
        } else {
            Verdict::Violated
        }
    }

    pub fn holds(self) -> bool {
        self != Verdict::Violated
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Holds => "holds",
            Verdict::HoldsWithEquality => "holds_with_equality",
            Verdict::Violated => "violated",
        })
    }
}

/// One evaluated inequality, oriented so that `slack ≥ 0` means it holds.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IneqReport {
    pub name: String,
    pub lhs: f64,
    pub rhs: f64,
    pub slack: f64,
    pub verdict: Verdict,
    pub strict_expected: bool,
    pub collinear: bool,
    pub tol_used: f64,
}

impl IneqReport {
    /// Builds a report for `lhs ≥ rhs` with tolerance `rel_tol·scale`.
    pub fn new(
        name: impl Into<String>,
        lhs: f64,
        rhs: f64,
        rel_tol: f64,
        scale: f64,
        strict_expected: bool,
        collinear: bool,
    ) -> Self {
        Self::with_slack(name, lhs, rhs, lhs - rhs, rel_tol * scale, strict_expected, collinear)
    }

    /// Builds a report whose slack is computed separately from `lhs − rhs`,
    /// e.g. to avoid cancellation.
    pub fn with_slack(
        name: impl Into<String>,
        lhs: f64,
        rhs: f64,
        slack: f64,
        tol_used: f64,
        strict_expected: bool,
        collinear: bool,
    ) -> Self {
        IneqReport {
            name: name.into(),
            lhs,
            rhs,
            slack,
            verdict: Verdict::from_slack(slack, tol_used),
            strict_expected,
            collinear,
            tol_used,
        }
    }

    /// Equality where the theory demands strict inequality for non-collinear input.
    pub fn unexpected_equality(&self) -> bool {
        self.strict_expected && self.verdict == Verdict::HoldsWithEquality && !self.collinear
    }
}

impl fmt::Display for IneqReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}: lhs={:.12e} rhs={:.12e} slack={:.6e} {} (tol {:.1e}{}{})",
            self.name,
            self.lhs,
            self.rhs,
            self.slack,
            self.verdict,
            self.tol_used,
            if self.strict_expected { ", strict" } else { "" },
            if self.collinear { ", collinear" } else { "" },
        )
    }
}

/// A classical inequality evaluated directly and through the norm machinery.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReductionReport {
    pub direct: IneqReport,
    pub machinery: IneqReport,
    /// The direct slack predicted from the machinery slack by the reduction.
    pub predicted_slack: f64,
    pub slack_gap: f64,
    pub gap_tol: f64,
    pub agrees: bool,
}

impl ReductionReport {
    pub(crate) fn new(
        direct: IneqReport,
        machinery: IneqReport,
        predicted_slack: f64,
        gap_rel_tol: f64,
    ) -> Self {
        let slack_gap = (direct.slack - predicted_slack).abs();
        let gap_tol = gap_rel_tol * (1.0 + direct.lhs.abs() + direct.rhs.abs());
        let agrees = direct.verdict == machinery.verdict;
        ReductionReport {
            direct,
            machinery,
            predicted_slack,
            slack_gap,
            gap_tol,
            agrees,
        }
    }

    pub fn gap_ok(&self) -> bool {
        self.slack_gap <= self.gap_tol
    }
}

/// Tolerances for every check; each can be overridden by name.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct Tolerances {
    /// Relative verdict tolerance, scaled by `1 + |lhs| + |rhs|`.
    pub verdict: f64,
    /// Relative eigenvalue zero threshold.
    pub signature: f64,
    /// Relative tolerance for the refinement sandwiches.
    pub refinement: f64,
    /// Relative bound for analytic-vs-finite-difference agreement.
    pub fd: f64,
    /// Relative bound for the Aczél lemma identity and refinements.
    pub lemma: f64,
    /// Relative bound for the m-th root Hessian identity.
    pub transfer: f64,
    /// Relative bound for the angular-metric radical and eigenvalue signs.
    pub radical: f64,
    /// Threshold on `‖v/F(v) − w/F(w)‖_∞` below which vectors count as collinear.
    pub collinear: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances {
            verdict: 1e-9,
            signature: 1e-9,
            refinement: 1e-6,
            fd: 1e-5,
            lemma: 1e-10,
            transfer: 1e-8,
            radical: 1e-9,
            collinear: 1e-8,
        }
    }
}

impl Tolerances {
    pub const KEYS: [&'static str; 8] = [
        "verdict",
        "signature",
        "refinement",
        "fd",
        "lemma",
        "transfer",
        "radical",
        "collinear",
    ];

    fn slot(&mut self, key: &str) -> Option<&mut f64> {
        Some(match key {
            "verdict" => &mut self.verdict,
            "signature" => &mut self.signature,
            "refinement" => &mut self.refinement,
            "fd" => &mut self.fd,
            "lemma" => &mut self.lemma,
            "transfer" => &mut self.transfer,
            "radical" => &mut self.radical,
            "collinear" => &mut self.collinear,
            _ => return None,
        })
    }

    pub fn set(&mut self, key: &str, value: f64) -> Result<()> {
        if !(value.is_finite() && value > 0.0) {
            return Err(Error::argument(format!(
                "tolerance {key} must be positive and finite, got {value}"
            )));
        }
        let slot = self.slot(key).ok_or_else(|| {
            Error::argument(format!(
                "unknown tolerance {key}; valid keys: {}",
                Self::KEYS.join(", ")
            ))
        })?;
        *slot = value;
        Ok(())
    }

    pub fn with_overrides(overrides: &BTreeMap<String, f64>) -> Result<Self> {
        let mut t = Tolerances::default();
        for (k, v) in overrides {
            t.set(k, *v)?;
        }
        Ok(t)
    }
}

/// `‖v/F(v) − w/F(w)‖_∞ ≤ threshold` under the given norm.
pub fn collinear(spec: &NormSpec, v: &Vector, w: &Vector, threshold: f64) -> Result<bool> {
    let fv = norm::evaluate(spec, v)?;
    let fw = norm::evaluate(spec, w)?;
    Ok(normalized_distance(v, fv, w, fw) <= threshold)
}

pub(crate) fn normalized_distance(v: &Vector, fv: f64, w: &Vector, fw: f64) -> f64 {
    v.iter()
        .zip(w.iter())
        .map(|(a, b)| (a / fv - b / fw).abs())
        .fold(0.0, f64::max)
}
