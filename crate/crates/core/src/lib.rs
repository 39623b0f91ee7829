//! Closed-form spectra and entropies of Gaussian density-matrix kernels,
//! their three-mode purifications, and a dense numerical oracle to check them.

// `!(x > 0.0)` is used on purpose so that NaN fails validation.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod bipartite;
pub mod error;
pub mod math;
pub mod oracle;
pub mod purification;
pub mod single;

pub use bipartite::{
    entropy_report, kernel_eval, purity, EntropyOrder, EntropyReport, GaussianKernelParams, KernelKind, Physicality,
    XiPair,
};
pub use error::{Error, Result};
pub use purification::{psi_eval, purify_type_i, purify_type_ii, purify_type_iii, PureState3};
pub use single::{single_derive, single_eigenfunction, single_eigenvalue, single_entropies, single_kernel, SingleParams};
