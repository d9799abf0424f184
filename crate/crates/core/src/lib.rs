//! Exact computations for the DG algebras A(M) on the (-1)-skew polynomial ring:
//! differential from a coefficient matrix, cohomology, isomorphism via quasi-permutation
//! matrices, case classification, minimal semi-free resolutions, Ext-algebras and
//! Frobenius tests.

pub mod classifier;
pub mod dg_core;
pub mod error;
pub mod exact_linalg;
pub mod frob_algebra;
pub mod qpl_action;
pub mod resolution;
pub mod scalar;
pub mod skew_algebra;

pub use error::{Error, Result};
pub use exact_linalg::{in_span, rref, solve_linear, Column, Mat};
pub use scalar::Scalar;
pub use skew_algebra::{elt_mul, graded_basis, mono_mul, normalize_word, SkewElement, SkewMonomial};
pub use dg_core::{boundary_matrix, cohomology, cup_kernel, cy_probe, differential, CohomologyReport, DgSpec, ProbeVerdict};
pub use qpl_action::{aut_group, chi, iso_solve, AutRecord, IsoResult, IsoStatus, QplMatrix};
pub use frob_algebra::{frobenius, make_algebra, radical_filtration, recognize_truncated, socle_dim, FinAlg, FrobeniusVerdict};
pub use classifier::{
    classify, compare, ntwo_case, ntwo_presentation, presentation_of, presented_dims, report, theorem_c, Branch, CaseLabel,
    GradedPresentation, Report, Subcase, TheoremCVerdict,
};
pub use resolution::{
    build_resolution, ext_algebra, verify_resolution, BuildOutcome, InfinitePattern, SemifreeResolution, VerificationRecord,
};
