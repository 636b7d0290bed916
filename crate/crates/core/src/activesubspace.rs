//! Active-subspace estimation from gradient samples: the Monte Carlo
//! estimate of the gradient outer-product matrix C = E[∇f ∇fᵀ], spectral-gap
//! based dimension selection, bootstrap variability summaries, and error
//! metrics against a reference spectrum.

use nalgebra::{DMatrix, DVector};
use rand::prelude::*;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::linalg::{self, Spectrum};

/// Minimum consecutive eigenvalue ratio that counts as a usable gap.
const GAP_RATIO_FLOOR: f64 = 1.1;

/// An M×m matrix of sampled gradients, one ∇f(xᵢ) per row.
#[derive(Debug, Clone)]
pub struct GradientSet {
    rows: DMatrix<f64>,
}

impl GradientSet {
    /// Validates finiteness and nonemptiness.
    pub fn new(rows: DMatrix<f64>) -> Result<Self> {
        if rows.nrows() == 0 || rows.ncols() == 0 {
            return Err(Error::InvalidArgument(
                "gradient set needs at least one row and one column".into(),
            ));
        }
        for i in 0..rows.nrows() {
            for j in 0..rows.ncols() {
                if !rows[(i, j)].is_finite() {
                    return Err(Error::NonFinite { row: i, col: j });
                }
            }
        }
        Ok(Self { rows })
    }

    pub fn matrix(&self) -> &DMatrix<f64> {
        &self.rows
    }

    /// Sample count M.
    pub fn len(&self) -> usize {
        self.rows.nrows()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.nrows() == 0
    }

    /// Input dimension m.
    pub fn dim(&self) -> usize {
        self.rows.ncols()
    }

    /// The first `count` gradients.
    pub fn prefix(&self, count: usize) -> Result<GradientSet> {
        if count == 0 || count > self.len() {
            return Err(Error::InvalidArgument(format!(
                "prefix length {count} outside 1..={}",
                self.len()
            )));
        }
        Ok(GradientSet {
            rows: self.rows.rows(0, count).into_owned(),
        })
    }
}

/// An estimated C matrix together with its eigendecomposition.
#[derive(Debug, Clone)]
pub struct SpectrumEstimate {
    spectrum: Spectrum,
    sample_count: usize,
    c_hat: DMatrix<f64>,
}

impl SpectrumEstimate {
    /// Builds an estimate from an explicitly symmetric PSD matrix, e.g. an
    /// analytic C or a quadrature estimate.
    pub fn from_matrix(c: DMatrix<f64>, sample_count: usize) -> Result<Self> {
        let spectrum = linalg::sym_eig_desc(&c)?;
        let lambda_max = spectrum.eigenvalues()[0];
        let lambda_min = spectrum.eigenvalues()[spectrum.dim() - 1];
        if lambda_min < -1e-10 * lambda_max.max(1.0) {
            return Err(Error::InvalidArgument(format!(
                "matrix is not positive semidefinite (λ_min = {lambda_min:e})"
            )));
        }
        Ok(Self {
            spectrum,
            sample_count,
            c_hat: c,
        })
    }

    pub fn spectrum(&self) -> &Spectrum {
        &self.spectrum
    }

    pub fn sample_count(&self) -> usize {
        self.sample_count
    }

    pub fn c_hat(&self) -> &DMatrix<f64> {
        &self.c_hat
    }

    pub fn dim(&self) -> usize {
        self.spectrum.dim()
    }
}

/// (min, mean, max) over bootstrap replicates of one scalar quantity.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ReplicateRange {
    pub min: f64,
    pub mean: f64,
    pub max: f64,
}

impl ReplicateRange {
    fn from_values(values: &[f64]) -> Self {
        let mut min = f64::INFINITY;
        let mut max = f64::NEG_INFINITY;
        let mut sum = 0.0;
        for &v in values {
            min = min.min(v);
            max = max.max(v);
            sum += v;
        }
        Self {
            min,
            mean: sum / values.len() as f64,
            max,
        }
    }
}

/// Bootstrap variability summary for an estimated spectrum.
///
/// `eigen_ranges[k]` spans the replicates of eigenvalue k; for each subspace
/// dimension k = 1…m−1, `subspace_ranges[k−1]` spans the projector-difference
/// distances between replicate and point-estimate leading-k eigenspaces.
#[derive(Debug, Clone)]
pub struct BootstrapSummary {
    pub eigen_ranges: Vec<ReplicateRange>,
    pub subspace_ranges: Vec<ReplicateRange>,
    pub replicates: usize,
    pub seed: u64,
}

/// Monte Carlo estimate Ĉ = (1/M) Σᵢ gᵢgᵢᵀ, symmetrized and eigendecomposed.
pub fn estimate_c(gradients: &GradientSet) -> Result<SpectrumEstimate> {
    let m = gradients.dim();
    let count = gradients.len();
    let g = gradients.matrix();
    let mut c = DMatrix::<f64>::zeros(m, m);
    // gemm_tr computes GᵀG in one pass; the explicit resymmetrization keeps
    // the matrix bit-symmetric for the eigensolver.
    c.gemm_tr(1.0 / count as f64, g, g, 0.0);
    let c = (&c + c.transpose()) * 0.5;
    SpectrumEstimate::from_matrix(c, count)
}

/// Picks the subspace dimension with the largest consecutive eigenvalue
/// log-ratio among k ≤ max_n.
///
/// Eigenvalues at or below 1e−14·λ₁ are floored there before forming ratios.
/// When every consecutive ratio is at most 1.1 there is no usable gap and the
/// function is a poor ridge-approximation candidate.
pub fn choose_n(spectrum: &Spectrum, max_n: usize) -> Result<usize> {
    let m = spectrum.dim();
    if max_n == 0 {
        return Err(Error::InvalidArgument("max_n must be >= 1".into()));
    }
    let max_n = max_n.min(m - 1);
    let lambda = spectrum.eigenvalues();
    let floor = 1e-14 * lambda[0].max(f64::MIN_POSITIVE);
    let mut best_k = None;
    let mut best_ratio = GAP_RATIO_FLOOR;
    for k in 0..max_n {
        let hi = lambda[k].max(floor);
        let lo = lambda[k + 1].max(floor);
        let ratio = hi / lo;
        if ratio > best_ratio {
            best_ratio = ratio;
            best_k = Some(k + 1);
        }
    }
    best_k.ok_or(Error::NoSpectralGap)
}

/// Resamples the gradient rows with replacement B times and summarizes the
/// spread of the replicate eigenvalues and leading-k eigenspace distances.
///
/// Replicate b draws from an independent ChaCha8 stream derived from (seed,
/// b), so the summary is deterministic and replicates may run in parallel.
pub fn bootstrap_spectrum(
    gradients: &GradientSet,
    replicates: usize,
    seed: u64,
) -> Result<BootstrapSummary> {
    if replicates == 0 {
        return Err(Error::InvalidArgument("replicate count must be >= 1".into()));
    }
    let point = estimate_c(gradients)?;
    let m = gradients.dim();
    let count = gradients.len();

    // Point-estimate leading-k frames, reused by every replicate.
    let point_frames: Vec<_> = (1..m)
        .map(|k| point.spectrum().leading_frame(k))
        .collect::<Result<_>>()?;

    let replicate_results: Vec<(Vec<f64>, Vec<f64>)> = (0..replicates)
        .into_par_iter()
        .map(|b| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(b as u64 + 1);
            let mut resampled = DMatrix::zeros(count, m);
            for i in 0..count {
                let pick = rng.random_range(0..count);
                resampled.set_row(i, &gradients.matrix().row(pick));
            }
            let set = GradientSet::new(resampled).expect("resampled rows stay finite");
            let est = estimate_c(&set).expect("resampled estimate");
            let eigs: Vec<f64> = est.spectrum().eigenvalues().iter().copied().collect();
            let dists: Vec<f64> = (1..m)
                .map(|k| {
                    let frame = est.spectrum().leading_frame(k).expect("leading frame");
                    linalg::subspace_distance(&frame, &point_frames[k - 1])
                        .expect("matching dimensions")
                })
                .collect();
            (eigs, dists)
        })
        .collect();

    let eigen_ranges = (0..m)
        .map(|idx| {
            let values: Vec<f64> = replicate_results.iter().map(|(e, _)| e[idx]).collect();
            ReplicateRange::from_values(&values)
        })
        .collect();
    let subspace_ranges = (0..m.saturating_sub(1))
        .map(|idx| {
            let values: Vec<f64> = replicate_results.iter().map(|(_, d)| d[idx]).collect();
            ReplicateRange::from_values(&values)
        })
        .collect();

    Ok(BootstrapSummary {
        eigen_ranges,
        subspace_ranges,
        replicates,
        seed,
    })
}

/// Average relative eigenvalue error and average leading-k subspace distance
/// between a reference spectrum and an estimate.
pub fn error_metrics(
    reference: &SpectrumEstimate,
    estimate: &SpectrumEstimate,
) -> Result<(f64, f64)> {
    let m = reference.dim();
    if estimate.dim() != m {
        return Err(Error::DimensionMismatch(format!(
            "reference dimension {m} vs estimate dimension {}",
            estimate.dim()
        )));
    }
    let lambda_ref = reference.spectrum().eigenvalues();
    let lambda_est = estimate.spectrum().eigenvalues();
    let mut err_lambda = 0.0;
    for k in 0..m {
        if lambda_ref[k] == 0.0 {
            return Err(Error::ZeroReferenceEigenvalue(k));
        }
        err_lambda += (lambda_ref[k] - lambda_est[k]).abs() / lambda_ref[k].abs();
    }
    err_lambda /= m as f64;

    let mut err_w = 0.0;
    for k in 1..m {
        let wr = reference.spectrum().leading_frame(k)?;
        let we = estimate.spectrum().leading_frame(k)?;
        err_w += linalg::subspace_distance(&wr, &we)?;
    }
    err_w /= (m - 1) as f64;
    Ok((err_lambda, err_w))
}

/// Eigenvalue vector of `estimate` as a plain DVector, for reporting.
pub fn eigenvalues(estimate: &SpectrumEstimate) -> DVector<f64> {
    estimate.spectrum().eigenvalues().clone()
}
