//! Every inequality as an [`IneqReport`], oriented so that nonnegative slack
//! means the inequality holds.

mod aczel;
mod classical;
mod generic;
mod report;
mod transfer;

pub use aczel::{aczel_lemma_identity, aczel_refinements, finslerian_aczel, AczelRefinements, LemmaIdentity};
pub use classical::{
    aczel_reduction, am_gm_reduction, bellman_reduction, bimetric_reduction, check_aczel_classical,
    check_am_gm, check_bellman, check_bimetric, check_bimetric_plane, check_holder_minkowski,
    check_kropina, check_popoviciu, check_weighted_am_gm, holder_minkowski_reduction,
    kropina_reduction, popoviciu_reduction, weighted_am_gm_reduction,
};
pub use generic::{
    check_angular_metric, check_fundamental, check_integral_refinement, check_reverse_triangle,
    check_scaled_refinement, AngularMetricReport,
};
pub use report::{collinear, IneqReport, ReductionReport, Tolerances, Verdict};
pub use transfer::{mth_root_signature_transfer, TransferReport};
