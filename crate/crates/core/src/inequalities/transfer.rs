//! Signature transfer for m-th root norms `F = H^{1/m}`:
//! `H_ij = m·F^{m−2}·[g_ij + (m−2)·FᵢFⱼ]`, and a Lorentzian `H_ij` forces a
//! Lorentzian `g_ij`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{classify_signature, Signature, SignatureClass, SymTensor, Vector};
use crate::norm::{self, NormSpec};

use super::report::Tolerances;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TransferReport {
    pub m: f64,
    pub h_signature: Signature,
    pub g_signature: Signature,
    /// `max|H_ij − m·F^{m−2}[g_ij + (m−2)FᵢFⱼ]|`.
    pub identity_deviation: f64,
    pub identity_tol: f64,
    pub identity_holds: bool,
    /// False only for a counterexample: `H` Lorentzian but `g` not.
    pub implication_holds: bool,
}

pub fn mth_root_signature_transfer(
    spec: &NormSpec,
    v: &Vector,
    tol: &Tolerances,
) -> Result<TransferReport> {
    let m = spec.mth_root_degree().ok_or_else(|| {
        Error::argument(format!("{} is not an m-th root family", spec.family()))
    })?;
    let hess = norm::mth_root_hessian(spec, v)?;
    let g = norm::fundamental_tensor_analytic(spec, v)?;
    let ell = norm::gradient_analytic(spec, v)?;
    let f = norm::evaluate(spec, v)?;
    let factor = m * f.powf(m - 2.0);
    let rebuilt = SymTensor::from_fn(v.dim(), |i, j| {
        factor * (g.get(i, j) + (m - 2.0) * ell[i] * ell[j])
    })?;
    let identity_deviation = hess.max_abs_diff(&rebuilt)?;
    let identity_tol = tol.transfer * hess.max_abs().max(1.0);
    let h_signature = classify_signature(&hess, tol.signature)?;
    let g_signature = classify_signature(&g, tol.signature)?;
    let implication_holds = h_signature.class != SignatureClass::Lorentzian
        || g_signature.class == SignatureClass::Lorentzian;
    Ok(TransferReport {
        m,
        h_signature,
        g_signature,
        identity_deviation,
        identity_tol,
        identity_holds: identity_deviation <= identity_tol,
        implication_holds,
    })
}
