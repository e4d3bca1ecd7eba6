//! Narayana numbers that are concatenations of three repdigits in base rho.
//!
//! The library solves and verifies the Diophantine equation
//! N(n) = d1...d1 d2...d2 d3...d3 (base rho) end to end:
//!
//! * [`algebraic`] / [`real`]: certified interval arithmetic over MPFR and
//!   exact root isolation for the dominant root alpha of x^3 - x^2 - 1;
//! * [`sequence`]: exact sequence generation over all integer indices and
//!   the Binet-residual estimates;
//! * [`digits`]: digit strings, three-block decomposition, the closed-form
//!   reconstruction, and the exhaustive search;
//! * [`bounds`]: Matveev's lower bound and the initial bound
//!   n < 5.6e48 log^7(rho);
//! * [`contfrac`] / [`reduction`]: certified continued fractions and the
//!   three-step Dujella-Petho reduction to small, checkable bounds;
//! * [`verify`] / [`report`]: the end-to-end pipeline and its renderers.

pub mod algebraic;
pub mod bounds;
pub mod contfrac;
pub mod digits;
pub mod error;
pub mod real;
pub mod reduction;
pub mod report;
pub mod sequence;
pub mod verify;

pub use algebraic::{binet_coefficient_a, golden_ratio, real_root_alpha, RootBracket};
pub use bounds::{
    ell_bound, initial_n_bound, lemma2_digit_bounds, m_bound, matveev_lower_bound,
    resolve_recursive_bound, InitialBoundReport, LinearForm, MatveevInstance,
};
pub use contfrac::{cf_expand, cf_expand_rational, convergent_exceeding, ContinuedFraction};
pub use digits::{
    maximal_runs, reconstruct, search_hits, three_block_patterns, to_digits, ConcatPattern,
    DigitString, SearchHit,
};
pub use error::{Error, Result};
pub use real::PrecisionReal;
pub use reduction::{
    default_m, full_reduction, full_reduction_with, reduce_case, step1, step1_with, step2,
    step2_with, step3, step3_with, CaseLabel, ReductionCase, ReductionContext,
    ReductionOptions, ReductionOutcome, ReductionSummary, StepReport,
};
pub use report::OutputFormat;
pub use sequence::{binet_residual, narayana, narayana_range, SequenceCache};
pub use verify::{run_verify, self_check, RunConfig, VerifyReport};
