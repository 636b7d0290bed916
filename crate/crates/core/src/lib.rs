//! ridgekit approximates expensive multivariate functions by ridge models
//! g(Uᵀx): a polynomial profile over a few linear combinations of the inputs.
//!
//! The toolkit covers the full workflow:
//!
//! - [`sampling`]: seeded Latin hypercube, box, and Gaussian designs;
//! - [`activesubspace`]: Monte Carlo estimation of the gradient
//!   outer-product matrix C = E[∇f ∇fᵀ], spectral-gap dimension selection,
//!   and bootstrap variability summaries — the eigenvectors of C seed the
//!   subspace search;
//! - [`polyridge`]: alternating minimization that interleaves exact
//!   least-squares coefficient fits with projected steepest descent for the
//!   subspace frame on the Grassmann manifold;
//! - [`oracle`]: Gauss-Hermite quadrature ground truth for Gaussian inputs —
//!   the conditional-mean profile, the exact subspace objective R(U), a
//!   bivariate angle sweep, and a numeric check that the gradient-based
//!   subspace is near-stationary for R;
//! - [`linalg`]: the shared frame/spectrum types with a deterministic sign
//!   convention, so every run of a seeded experiment is bit-reproducible.

pub mod activesubspace;
pub mod error;
pub mod linalg;
pub mod oracle;
pub mod polyridge;
pub mod sampling;

pub use activesubspace::{BootstrapSummary, GradientSet, ReplicateRange, SpectrumEstimate};
pub use error::{Error, Result};
pub use linalg::{Frame, Spectrum};
pub use oracle::{BuiltinOptions, GaussHermiteRule, SweepRow, SweepTable, TestFunction};
pub use polyridge::{
    HistoryRow, LabeledSamples, MultiIndexBasis, Phase, PolyModel, RidgeModel,
};
pub use sampling::{Design, Domain};
