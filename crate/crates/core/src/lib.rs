//! Refined Young-inequality bounds on the ratio `((1 - v) + v t) / t^v`:
//! scalar kernels, a catalog of bounds with pointwise certification, grid
//! sweeps and non-ordering witness search, and operator-mean checks for
//! Hermitian positive-definite matrices.

// Negated comparisons are deliberate: they also reject NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod catalog;
pub mod error;
pub mod operator;
pub mod scalar;
pub mod verifier;

pub use catalog::{
    certify_point, chain_check, evaluate, find_bound, list_bounds, tightest, BoundSpec, Certificate,
    ChainLink, ChainReport, Side, Tightest, ValidRegion,
};
pub use error::{Error, Result};
pub use operator::{
    certify_corollary_one, certify_corollary_two, hermitian_power, loewner_leq, validate_sandwich,
    weighted_arithmetic, weighted_geometric, HermitianMatrix, LoewnerCheck, OperatorCertificate,
    SandwichCase, SandwichSpec, Variant,
};
pub use scalar::{
    deformed_exp, exp_r, kantorovich, kantorovich_identity_arg, young_ratio, DeformParam, EvalPoint,
    KExponents,
};
pub use verifier::{
    eval_diff, find_sign_change, reproduce_remarks, sweep, NonOrderingWitness, Region, RemarkRow,
    SweepReport, TScale,
};
