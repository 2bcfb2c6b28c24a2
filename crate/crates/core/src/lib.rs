//! Lorentz-Finsler norms on convex cones and numerical verification of the
//! inequalities they imply: reverse Cauchy-Schwarz and triangle inequalities,
//! their refinements, and classical specializations such as Aczél, Popoviciu,
//! Bellman and the AM-GM inequality.

pub mod calculus;
pub mod campaign;
pub mod error;
pub mod inequalities;
pub mod json;
pub mod linalg;
pub mod norm;
pub mod sampling;

pub use error::{Error, Result};
pub use linalg::{
    bilinear, classify_signature, sym_eigen, sym_eigenvalues, Signature, SignatureClass,
    SymEigen, SymTensor, Vector, DEFAULT_SIGNATURE_TOL,
};
pub use norm::{
    check_domain, domain_contains, evaluate, expected_signature, fundamental_tensor_analytic,
    gradient_analytic, Family, NormParams, NormSpec,
};
pub use sampling::{sample_domain, sample_pairs, SampleConfig};
pub use campaign::{run_campaign, run_suite, CampaignReport, CheckId, RunManifest, SuiteManifest};
