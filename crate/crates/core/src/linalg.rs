//! Dense symmetric linear algebra for small matrices.
//!
//! The matrices handled here are fundamental tensors and Hessians of norms on
//! ℝⁿ⁺¹ with n rarely above a dozen, so everything is dense, row-major and
//! allocation-light. Eigenvalues come from a cyclic Jacobi sweep, which is
//! unconditionally stable for real symmetric input.

use std::fmt;
use std::ops::Index;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Default relative threshold under which an eigenvalue counts as zero.
pub const DEFAULT_SIGNATURE_TOL: f64 = 1e-9;

/// A point or direction in ℝⁿ⁺¹, components indexed `0..=n`.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(transparent)]
pub struct Vector(Vec<f64>);

impl Vector {
    /// Builds a vector, rejecting empty input and non-finite components.
    pub fn new(components: Vec<f64>) -> Result<Self> {
        if components.is_empty() {
            return Err(Error::argument("vector must have at least one component"));
        }
        if let Some(i) = components.iter().position(|c| !c.is_finite()) {
            return Err(Error::argument(format!("component v{i} is not finite")));
        }
        Ok(Vector(components))
    }

    /// Constructor for internal arithmetic whose finiteness is checked elsewhere.
    pub(crate) fn from_vec_unchecked(components: Vec<f64>) -> Self {
        Vector(components)
    }

    pub fn from_slice(components: &[f64]) -> Result<Self> {
        Self::new(components.to_vec())
    }

    pub fn filled(dim: usize, value: f64) -> Result<Self> {
        Self::new(vec![value; dim])
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.0
    }

    pub fn into_vec(self) -> Vec<f64> {
        self.0
    }

    pub fn iter(&self) -> std::slice::Iter<'_, f64> {
        self.0.iter()
    }

    pub fn is_finite(&self) -> bool {
        self.0.iter().all(|c| c.is_finite())
    }

    pub fn scaled(&self, factor: f64) -> Vector {
        Vector(self.0.iter().map(|c| c * factor).collect())
    }

    /// `a·self + b·other`.
    pub fn combine(&self, a: f64, other: &Vector, b: f64) -> Result<Vector> {
        check_dims(self.dim(), other.dim())?;
        Ok(Vector(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(x, y)| a * x + b * y)
                .collect(),
        ))
    }

    pub fn add(&self, other: &Vector) -> Result<Vector> {
        self.combine(1.0, other, 1.0)
    }

    pub fn dot(&self, other: &Vector) -> Result<f64> {
        check_dims(self.dim(), other.dim())?;
        Ok(self.0.iter().zip(&other.0).map(|(x, y)| x * y).sum())
    }

    pub fn norm_inf(&self) -> f64 {
        self.0.iter().fold(0.0_f64, |m, c| m.max(c.abs()))
    }

    /// The spatial part `(v¹, …, vⁿ)`.
    pub fn spatial(&self) -> &[f64] {
        &self.0[1..]
    }

    /// The temporal component `v⁰`.
    pub fn time(&self) -> f64 {
        self.0[0]
    }
}

impl Index<usize> for Vector {
    type Output = f64;

    fn index(&self, i: usize) -> &f64 {
        &self.0[i]
    }
}

impl<'de> Deserialize<'de> for Vector {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = Vec::<f64>::deserialize(d)?;
        Vector::new(raw).map_err(serde::de::Error::custom)
    }
}

impl fmt::Display for Vector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

pub(crate) fn check_dims(expected: usize, actual: usize) -> Result<()> {
    if expected != actual {
        return Err(Error::DimensionMismatch { expected, actual });
    }
    Ok(())
}

/// A symmetric real matrix, optionally tagged with the vector it was evaluated at.
///
/// Entries are symmetrized as `(M + Mᵀ)/2` on construction, so finite-difference
/// round-off never leaks an asymmetric part into downstream eigen-analysis.
#[derive(Debug, Clone, PartialEq)]
pub struct SymTensor {
    dim: usize,
    entries: Vec<f64>,
    ref_vector: Option<Vector>,
}

impl SymTensor {
    pub fn from_rows(rows: Vec<Vec<f64>>) -> Result<Self> {
        let dim = rows.len();
        if dim == 0 {
            return Err(Error::argument("matrix must be non-empty"));
        }
        let mut entries = Vec::with_capacity(dim * dim);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != dim {
                return Err(Error::argument(format!(
                    "row {i} has {} entries, expected {dim}",
                    row.len()
                )));
            }
            entries.extend_from_slice(row);
        }
        Self::from_row_major(dim, entries)
    }

    pub fn from_row_major(dim: usize, entries: Vec<f64>) -> Result<Self> {
        if dim == 0 || entries.len() != dim * dim {
            return Err(Error::argument("matrix entry count does not match dimension"));
        }
        if entries.iter().any(|e| !e.is_finite()) {
            return Err(Error::argument("matrix has non-finite entries"));
        }
        let mut m = SymTensor {
            dim,
            entries,
            ref_vector: None,
        };
        m.symmetrize();
        Ok(m)
    }

    pub fn from_fn(dim: usize, f: impl Fn(usize, usize) -> f64) -> Result<Self> {
        let mut entries = Vec::with_capacity(dim * dim);
        for i in 0..dim {
            for j in 0..dim {
                entries.push(f(i, j));
            }
        }
        Self::from_row_major(dim, entries)
    }

    pub fn diag(values: &[f64]) -> Result<Self> {
        Self::from_fn(values.len(), |i, j| if i == j { values[i] } else { 0.0 })
    }

    pub fn zeros(dim: usize) -> Result<Self> {
        Self::from_fn(dim, |_, _| 0.0)
    }

    pub fn identity(dim: usize) -> Result<Self> {
        Self::from_fn(dim, |i, j| if i == j { 1.0 } else { 0.0 })
    }

    /// The Minkowski metric `η = diag(1, −1, …, −1)`.
    pub fn minkowski(dim: usize) -> Result<Self> {
        Self::from_fn(dim, |i, j| match (i, j) {
            (0, 0) => 1.0,
            _ if i == j => -1.0,
            _ => 0.0,
        })
    }

    fn symmetrize(&mut self) {
        let n = self.dim;
        for i in 0..n {
            for j in (i + 1)..n {
                let avg = 0.5 * (self.entries[i * n + j] + self.entries[j * n + i]);
                self.entries[i * n + j] = avg;
                self.entries[j * n + i] = avg;
            }
        }
    }

    pub fn with_ref_vector(mut self, v: Vector) -> Self {
        self.ref_vector = Some(v);
        self
    }

    pub fn ref_vector(&self) -> Option<&Vector> {
        self.ref_vector.as_ref()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.entries[i * self.dim + j]
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.entries[i * self.dim..(i + 1) * self.dim]
    }

    pub fn rows(&self) -> Vec<Vec<f64>> {
        (0..self.dim).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn max_abs(&self) -> f64 {
        self.entries.iter().fold(0.0_f64, |m, e| m.max(e.abs()))
    }

    /// `M·u`.
    pub fn mul_vec(&self, u: &Vector) -> Result<Vector> {
        check_dims(self.dim, u.dim())?;
        let out = (0..self.dim)
            .map(|i| self.row(i).iter().zip(u.iter()).map(|(m, x)| m * x).sum())
            .collect();
        Ok(Vector::from_vec_unchecked(out))
    }

    /// Entrywise `a·self + b·other`; the reference vector of `self` is kept.
    pub fn combine(&self, a: f64, other: &SymTensor, b: f64) -> Result<SymTensor> {
        check_dims(self.dim, other.dim)?;
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(x, y)| a * x + b * y)
            .collect();
        let mut out = SymTensor::from_row_major(self.dim, entries)?;
        out.ref_vector = self.ref_vector.clone();
        Ok(out)
    }

    /// `max_ij |self_ij − other_ij|`.
    pub fn max_abs_diff(&self, other: &SymTensor) -> Result<f64> {
        check_dims(self.dim, other.dim)?;
        Ok(self
            .entries
            .iter()
            .zip(&other.entries)
            .fold(0.0_f64, |m, (x, y)| m.max((x - y).abs())))
    }

    /// `PᵀMP` for the permutation sending basis index `i` to `perm[i]`.
    pub fn permuted(&self, perm: &[usize]) -> Result<SymTensor> {
        check_dims(self.dim, perm.len())?;
        SymTensor::from_fn(self.dim, |i, j| self.get(perm[i], perm[j]))
    }

    /// `u ⊗ u`.
    pub fn outer(u: &Vector) -> Result<SymTensor> {
        SymTensor::from_fn(u.dim(), |i, j| u[i] * u[j])
    }
}

impl Serialize for SymTensor {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.rows().serialize(s)
    }
}

impl<'de> Deserialize<'de> for SymTensor {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let rows = Vec::<Vec<f64>>::deserialize(d)?;
        SymTensor::from_rows(rows).map_err(serde::de::Error::custom)
    }
}

/// `Σᵢⱼ Mᵢⱼ uⁱ wʲ`.
pub fn bilinear(m: &SymTensor, u: &Vector, w: &Vector) -> Result<f64> {
    check_dims(m.dim(), u.dim())?;
    check_dims(m.dim(), w.dim())?;
    let mut acc = 0.0;
    for i in 0..m.dim() {
        let row = m.row(i);
        let mw: f64 = row.iter().zip(w.iter()).map(|(a, b)| a * b).sum();
        acc += u[i] * mw;
    }
    Ok(acc)
}

/// Eigen-decomposition of a symmetric matrix.
#[derive(Debug, Clone)]
pub struct SymEigen {
    /// Eigenvalues in descending order.
    pub values: Vec<f64>,
    /// `vectors[k]` is a unit eigenvector for `values[k]`.
    pub vectors: Vec<Vector>,
}

const MAX_SWEEPS: usize = 64;

/// Cyclic Jacobi eigen-decomposition.
pub fn sym_eigen(m: &SymTensor) -> Result<SymEigen> {
    let n = m.dim();
    if m.entries.iter().any(|e| !e.is_finite()) {
        return Err(Error::argument("matrix has non-finite entries"));
    }
    let mut a = m.entries.clone();
    let mut v = vec![0.0; n * n];
    for i in 0..n {
        v[i * n + i] = 1.0;
    }
    let scale = m.max_abs();
    if scale > 0.0 {
        for _ in 0..MAX_SWEEPS {
            let off: f64 = (0..n)
                .flat_map(|i| ((i + 1)..n).map(move |j| (i, j)))
                .map(|(i, j)| a[i * n + j] * a[i * n + j])
                .sum();
            if off.sqrt() <= f64::EPSILON * 1e-2 * scale {
                break;
            }
            for p in 0..n {
                for q in (p + 1)..n {
                    rotate(&mut a, &mut v, n, p, q);
                }
            }
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[j * n + j].total_cmp(&a[i * n + i]));
    let values = order.iter().map(|&k| a[k * n + k]).collect();
    let vectors = order
        .iter()
        .map(|&k| Vector::from_vec_unchecked((0..n).map(|i| v[i * n + k]).collect()))
        .collect();
    Ok(SymEigen { values, vectors })
}

/// One Jacobi rotation annihilating `a[p][q]`, accumulated into `v`.
fn rotate(a: &mut [f64], v: &mut [f64], n: usize, p: usize, q: usize) {
    let apq = a[p * n + q];
    if apq == 0.0 {
        return;
    }
    let app = a[p * n + p];
    let aqq = a[q * n + q];
    let theta = (aqq - app) / (2.0 * apq);
    let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
    let t = if theta == 0.0 { 1.0 } else { t };
    let c = 1.0 / (t * t + 1.0).sqrt();
    let s = t * c;

    for k in 0..n {
        let akp = a[k * n + p];
        let akq = a[k * n + q];
        a[k * n + p] = c * akp - s * akq;
        a[k * n + q] = s * akp + c * akq;
    }
    for k in 0..n {
        let apk = a[p * n + k];
        let aqk = a[q * n + k];
        a[p * n + k] = c * apk - s * aqk;
        a[q * n + k] = s * apk + c * aqk;
    }
    a[p * n + q] = 0.0;
    a[q * n + p] = 0.0;

    for k in 0..n {
        let vkp = v[k * n + p];
        let vkq = v[k * n + q];
        v[k * n + p] = c * vkp - s * vkq;
        v[k * n + q] = s * vkp + c * vkq;
    }
}

/// Eigenvalues in descending order.
pub fn sym_eigenvalues(m: &SymTensor) -> Result<Vec<f64>> {
    Ok(sym_eigen(m)?.values)
}

/// Named signature classes of a symmetric form on ℝⁿ⁺¹.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SignatureClass {
    PositiveDefinite,
    PositiveSemidefinite,
    Lorentzian,
    DegenerateLorentzian,
    Other,
}

impl SignatureClass {
    /// True for classes with exactly one positive eigenvalue.
    pub fn is_lorentzian_type(self) -> bool {
        matches!(
            self,
            SignatureClass::Lorentzian | SignatureClass::DegenerateLorentzian
        )
    }

    pub fn is_positive_type(self) -> bool {
        matches!(
            self,
            SignatureClass::PositiveDefinite | SignatureClass::PositiveSemidefinite
        )
    }

    pub fn is_degenerate(self) -> bool {
        matches!(
            self,
            SignatureClass::DegenerateLorentzian | SignatureClass::PositiveSemidefinite
        )
    }

    /// Assigns a class from sign counts.
    ///
    /// With a single positive eigenvalue the degenerate-Lorentzian reading wins
    /// over positive-semidefinite, so `(+,0,…,0)` is the maximally degenerate
    /// Lorentzian case. A 1×1 positive form is positive definite.
    pub fn from_counts(n_pos: usize, n_neg: usize, n_zero: usize) -> Self {
        let dim = n_pos + n_neg + n_zero;
        if dim >= 2 && n_pos == 1 && n_zero == 0 {
            SignatureClass::Lorentzian
        } else if dim >= 2 && n_pos == 1 {
            SignatureClass::DegenerateLorentzian
        } else if n_neg == 0 && n_zero == 0 {
            SignatureClass::PositiveDefinite
        } else if n_neg == 0 {
            SignatureClass::PositiveSemidefinite
        } else {
            SignatureClass::Other
        }
    }
}

impl fmt::Display for SignatureClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            SignatureClass::PositiveDefinite => "PositiveDefinite",
            SignatureClass::PositiveSemidefinite => "PositiveSemidefinite",
            SignatureClass::Lorentzian => "Lorentzian",
            SignatureClass::DegenerateLorentzian => "DegenerateLorentzian",
            SignatureClass::Other => "Other",
        };
        f.write_str(name)
    }
}

/// Eigenvalue sign counts under a tolerance.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Signature {
    pub n_pos: usize,
    pub n_neg: usize,
    pub n_zero: usize,
    pub tol_used: f64,
    pub class: SignatureClass,
}

impl fmt::Display for Signature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} ({},{},{})",
            self.class, self.n_pos, self.n_neg, self.n_zero
        )
    }
}

/// Counts eigenvalue signs; `λ` is zero iff `|λ| ≤ tol·max(1, max|λ|)`.
pub fn classify_signature(m: &SymTensor, tol: f64) -> Result<Signature> {
    if !(tol > 0.0) || !tol.is_finite() {
        return Err(Error::argument(format!("signature tolerance must be > 0, got {tol}")));
    }
    let values = sym_eigenvalues(m)?;
    Ok(signature_of_eigenvalues(&values, tol))
}

pub(crate) fn signature_of_eigenvalues(values: &[f64], tol: f64) -> Signature {
    let radius = values.iter().fold(0.0_f64, |r, l| r.max(l.abs()));
    let cutoff = tol * radius.max(1.0);
    let (mut n_pos, mut n_neg, mut n_zero) = (0, 0, 0);
    for &l in values {
        if l.abs() <= cutoff {
            n_zero += 1;
        } else if l > 0.0 {
            n_pos += 1;
        } else {
            n_neg += 1;
        }
    }
    Signature {
        n_pos,
        n_neg,
        n_zero,
        tol_used: cutoff,
        class: SignatureClass::from_counts(n_pos, n_neg, n_zero),
    }
}
