//! Metric operators and Hermitian counterparts: terminating BCH series,
//! closed Euler/κ sums, observable maps and Moyal-residual metric solving.

mod ansatz;
mod bch;
mod kappa;

pub use ansatz::{metric_residual, solve_metric_ansatz, MetricSolution};
pub use bch::{
    conjugate_by_exp, hermitian_pair_from_q, nfold_commutator, observable_map, Conjugation,
    SimilarityPair, DEFAULT_MAX_ORDER,
};
pub use kappa::{euler_numbers, kappa, KappaTable};
