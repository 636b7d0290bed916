//! Polynomial ridge approximation p_N(Uᵀx, θ) fitted by alternating
//! minimization: an exact least-squares solve for the coefficients θ with the
//! subspace held fixed, followed by projected steepest descent for the frame
//! U on the Grassmann manifold with θ held fixed.

use nalgebra::{DMatrix, DVector};
use rand::prelude::*;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::linalg::{self, Frame};

/// Floor applied to empirical ridge-coordinate scales.
const SCALE_FLOOR: f64 = 1e-12;

/// Armijo sufficient-decrease constant for the subspace line search.
const ARMIJO_C: f64 = 1e-4;

/// Maximum step halvings before the line search reports a stall.
const MAX_BACKTRACKS: usize = 30;

/// Default cap on steepest-descent steps per alternation.
pub const DEFAULT_DESCENT_STEPS: usize = 10;

/// Default number of outer alternations.
pub const DEFAULT_ITERATIONS: usize = 20;

/// Total-degree multi-index basis in n variables, graded lexicographic:
/// degrees ascend, and within a degree the leading variables carry the
/// higher powers first.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MultiIndexBasis {
    vars: usize,
    degree: usize,
    indices: Vec<Vec<u32>>,
}

impl MultiIndexBasis {
    pub fn vars(&self) -> usize {
        self.vars
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn indices(&self) -> &[Vec<u32>] {
        &self.indices
    }

    /// Number of basis terms, binomial(N + n, n).
    pub fn len(&self) -> usize {
        self.indices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.indices.is_empty()
    }
}

/// All multi-indices α ∈ ℕ^n with |α| ≤ N in graded-lex order.
pub fn multi_indices(vars: usize, degree: usize) -> Result<MultiIndexBasis> {
    if vars == 0 {
        return Err(Error::InvalidArgument("basis needs n >= 1 variables".into()));
    }
    let mut indices = Vec::new();
    let mut scratch = vec![0u32; vars];
    for total in 0..=degree {
        push_compositions(total as u32, 0, &mut scratch, &mut indices);
    }
    Ok(MultiIndexBasis {
        vars,
        degree,
        indices,
    })
}

fn push_compositions(remaining: u32, pos: usize, scratch: &mut [u32], out: &mut Vec<Vec<u32>>) {
    if pos == scratch.len() - 1 {
        scratch[pos] = remaining;
        out.push(scratch.to_vec());
        return;
    }
    for lead in (0..=remaining).rev() {
        scratch[pos] = lead;
        push_compositions(remaining - lead, pos + 1, scratch, out);
    }
}

/// A total-degree polynomial in n ridge coordinates, evaluated on scaled
/// coordinates y_j / s_j.
#[derive(Debug, Clone)]
pub struct PolyModel {
    basis: MultiIndexBasis,
    theta: DVector<f64>,
    y_scale: DVector<f64>,
}

impl PolyModel {
    pub fn new(basis: MultiIndexBasis, theta: DVector<f64>, y_scale: DVector<f64>) -> Result<Self> {
        if theta.len() != basis.len() {
            return Err(Error::DimensionMismatch(format!(
                "theta length {} vs basis size {}",
                theta.len(),
                basis.len()
            )));
        }
        if y_scale.len() != basis.vars() {
            return Err(Error::DimensionMismatch(format!(
                "y_scale length {} vs n = {}",
                y_scale.len(),
                basis.vars()
            )));
        }
        if y_scale.iter().any(|&s| !(s > 0.0)) {
            return Err(Error::InvalidArgument("y_scale must be positive".into()));
        }
        Ok(Self {
            basis,
            theta,
            y_scale,
        })
    }

    pub fn basis(&self) -> &MultiIndexBasis {
        &self.basis
    }

    pub fn theta(&self) -> &DVector<f64> {
        &self.theta
    }

    pub fn y_scale(&self) -> &DVector<f64> {
        &self.y_scale
    }

    /// p(y) at one ridge coordinate vector.
    pub fn eval(&self, y: &DVector<f64>) -> f64 {
        let scaled: Vec<f64> = (0..y.len()).map(|j| y[j] / self.y_scale[j]).collect();
        let mut acc = 0.0;
        for (alpha, &coeff) in self.basis.indices().iter().zip(self.theta.iter()) {
            acc += coeff * monomial(&scaled, alpha);
        }
        acc
    }

    /// p(y) together with its gradient ∇_y p(y).
    pub fn eval_with_grad(&self, y: &DVector<f64>) -> (f64, DVector<f64>) {
        let n = y.len();
        let scaled: Vec<f64> = (0..n).map(|j| y[j] / self.y_scale[j]).collect();
        let mut value = 0.0;
        let mut grad = DVector::zeros(n);
        for (alpha, &coeff) in self.basis.indices().iter().zip(self.theta.iter()) {
            value += coeff * monomial(&scaled, alpha);
            for j in 0..n {
                let a = alpha[j];
                if a == 0 {
                    continue;
                }
                let mut term = coeff * a as f64 / self.y_scale[j];
                for (l, &al) in alpha.iter().enumerate() {
                    let pow = if l == j { al - 1 } else { al };
                    term *= scaled[l].powi(pow as i32);
                }
                grad[j] += term;
            }
        }
        (value, grad)
    }
}

fn monomial(scaled: &[f64], alpha: &[u32]) -> f64 {
    let mut v = 1.0;
    for (l, &a) in alpha.iter().enumerate() {
        if a > 0 {
            v *= scaled[l].powi(a as i32);
        }
    }
    v
}

/// Which half of an alternation produced a residual-history row.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Phase {
    Theta,
    Grassmann,
}

impl std::fmt::Display for Phase {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Phase::Theta => write!(f, "theta"),
            Phase::Grassmann => write!(f, "grassmann"),
        }
    }
}

/// One residual-history record made after a θ-fit or a U-descent half-step.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HistoryRow {
    pub iter: usize,
    pub phase: Phase,
    pub residual: f64,
}

/// True when the residual column never increases by more than `tol`.
pub fn history_is_nonincreasing(history: &[HistoryRow], tol: f64) -> bool {
    history
        .windows(2)
        .all(|w| w[1].residual <= w[0].residual + tol)
}

/// A fitted ridge model: subspace frame plus polynomial profile, with the
/// residual trace of the fit that produced it.
#[derive(Debug, Clone)]
pub struct RidgeModel {
    u: Frame,
    poly: PolyModel,
    history: Vec<HistoryRow>,
    init_label: String,
    seed: u64,
}

impl RidgeModel {
    pub fn new(u: Frame, poly: PolyModel) -> Result<Self> {
        if u.subspace_dim() != poly.basis().vars() {
            return Err(Error::DimensionMismatch(format!(
                "frame has n = {} but polynomial has {} variables",
                u.subspace_dim(),
                poly.basis().vars()
            )));
        }
        Ok(Self {
            u,
            poly,
            history: Vec::new(),
            init_label: String::new(),
            seed: 0,
        })
    }

    pub fn frame(&self) -> &Frame {
        &self.u
    }

    pub fn poly(&self) -> &PolyModel {
        &self.poly
    }

    pub fn history(&self) -> &[HistoryRow] {
        &self.history
    }

    pub fn init_label(&self) -> &str {
        &self.init_label
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn with_metadata(mut self, init_label: &str, seed: u64) -> Self {
        self.init_label = init_label.to_string();
        self.seed = seed;
        self
    }

    /// Final residual, taken from the last history row when present.
    pub fn final_residual(&self) -> Option<f64> {
        self.history.last().map(|row| row.residual)
    }
}

/// Paired inputs and outputs of the target function.
#[derive(Debug, Clone)]
pub struct LabeledSamples {
    x: DMatrix<f64>,
    f: DVector<f64>,
}

impl LabeledSamples {
    pub fn new(x: DMatrix<f64>, f: DVector<f64>) -> Result<Self> {
        if x.nrows() == 0 {
            return Err(Error::InvalidArgument("need at least one sample".into()));
        }
        if x.nrows() != f.len() {
            return Err(Error::DimensionMismatch(format!(
                "{} input rows vs {} outputs",
                x.nrows(),
                f.len()
            )));
        }
        for i in 0..x.nrows() {
            for j in 0..x.ncols() {
                if !x[(i, j)].is_finite() {
                    return Err(Error::NonFinite { row: i, col: j });
                }
            }
            if !f[i].is_finite() {
                return Err(Error::NonFinite {
                    row: i,
                    col: x.ncols(),
                });
            }
        }
        Ok(Self { x, f })
    }

    pub fn inputs(&self) -> &DMatrix<f64> {
        &self.x
    }

    pub fn outputs(&self) -> &DVector<f64> {
        &self.f
    }

    pub fn len(&self) -> usize {
        self.x.nrows()
    }

    pub fn is_empty(&self) -> bool {
        self.x.nrows() == 0
    }

    pub fn dim(&self) -> usize {
        self.x.ncols()
    }
}

/// Monomial design matrix over scaled ridge coordinates: row i holds
/// ∏ⱼ (y_ij/s_j)^{α_j} for each basis index α, column 0 all ones.
pub fn design_matrix(
    y: &DMatrix<f64>,
    basis: &MultiIndexBasis,
    y_scale: &DVector<f64>,
) -> DMatrix<f64> {
    let rows = y.nrows();
    let terms = basis.len();
    let n = basis.vars();
    let mut out = DMatrix::zeros(rows, terms);
    let mut scaled = vec![0.0; n];
    for i in 0..rows {
        for j in 0..n {
            scaled[j] = y[(i, j)] / y_scale[j];
        }
        for (k, alpha) in basis.indices().iter().enumerate() {
            out[(i, k)] = monomial(&scaled, alpha);
        }
    }
    out
}

/// Exact least-squares fit of the polynomial coefficients for fixed U.
///
/// Ridge coordinates are yᵢ = Uᵀxᵢ; their per-coordinate max-abs values
/// (floored at 1e−12) become the scale so the design matrix stays
/// conditioned through degree 5.
pub fn fit_theta(
    samples: &LabeledSamples,
    u: &Frame,
    basis: &MultiIndexBasis,
) -> Result<PolyModel> {
    if samples.dim() != u.ambient_dim() {
        return Err(Error::DimensionMismatch(format!(
            "samples have dimension {} but frame has m = {}",
            samples.dim(),
            u.ambient_dim()
        )));
    }
    if basis.vars() != u.subspace_dim() {
        return Err(Error::DimensionMismatch(format!(
            "basis has {} variables but frame has n = {}",
            basis.vars(),
            u.subspace_dim()
        )));
    }
    let y = samples.inputs() * u.matrix();
    let n = basis.vars();
    let mut scale = DVector::from_element(n, SCALE_FLOOR);
    for j in 0..n {
        for i in 0..y.nrows() {
            scale[j] = scale[j].max(y[(i, j)].abs());
        }
    }
    let a = design_matrix(&y, basis, &scale);
    let theta = linalg::lstsq(&a, samples.outputs())?;
    PolyModel::new(basis.clone(), theta, scale)
}

/// Sum of squared residuals Σᵢ (fᵢ − p(Uᵀxᵢ))².
pub fn residual(samples: &LabeledSamples, u: &Frame, poly: &PolyModel) -> f64 {
    raw_residual(samples, u.matrix(), poly)
}

/// Euclidean gradient of the residual with respect to the frame entries:
/// ∂J/∂U = −2 Σᵢ rᵢ xᵢ (∇_y p(yᵢ))ᵀ with rᵢ = fᵢ − p(yᵢ).
pub fn euclidean_grad_u(samples: &LabeledSamples, u: &Frame, poly: &PolyModel) -> DMatrix<f64> {
    raw_euclidean_grad(samples, u.matrix(), poly)
}

/// Outcome of a single descent run; `stalled` means the line search ran out
/// of backtracks before finding sufficient decrease.
#[derive(Debug, Clone)]
pub struct DescentOutcome {
    pub frame: Frame,
    pub residual: f64,
    pub steps_taken: usize,
    pub stalled: bool,
}

/// Projected steepest descent for the frame with the polynomial fixed.
///
/// Each step projects the Euclidean gradient onto the tangent space at U,
/// retracts U − t·Ḡ back to orthonormal columns, and accepts the step under
/// an Armijo test (start t = 1, halve, sufficient decrease 1e−4). Terminates
/// on the step cap, a small projected gradient (‖Ḡ‖_F ≤ 1e−10·(1+J)), or a
/// stalled line search; the objective never increases across accepted steps.
///
/// The retraction is the polar factor of U − t·Ḡ. Unlike a thin-QR
/// retraction, the polar factor commutes with right rotations,
/// polar(MQ) = polar(M)·Q, which makes the whole descent path — and hence
/// the fitted residual — depend on span(U₀) rather than on the particular
/// starting basis. Internal iterates skip the column-sign convention for the
/// same reason; only the returned frame is canonicalized.
pub fn grassmann_descent(
    samples: &LabeledSamples,
    u0: &Frame,
    poly: &PolyModel,
    max_steps: usize,
) -> DescentOutcome {
    let mut u = u0.matrix().clone();
    let mut obj = raw_residual(samples, &u, poly);
    let mut stalled = false;
    let mut steps_taken = 0;

    for _ in 0..max_steps {
        let egrad = raw_euclidean_grad(samples, &u, poly);
        let tangent = &egrad - &u * (u.transpose() * &egrad);
        let gnorm = tangent.norm();
        if gnorm <= 1e-10 * (1.0 + obj) {
            break;
        }
        let mut step = 1.0;
        let mut accepted = None;
        for _ in 0..=MAX_BACKTRACKS {
            let retracted = polar_retract(&(&u - &tangent * step));
            let trial = raw_residual(samples, &retracted, poly);
            if trial <= obj - ARMIJO_C * step * gnorm * gnorm {
                accepted = Some((retracted, trial));
                break;
            }
            step *= 0.5;
        }
        match accepted {
            Some((next_u, next_obj)) => {
                u = next_u;
                obj = next_obj;
                steps_taken += 1;
            }
            None => {
                stalled = true;
                break;
            }
        }
    }

    let frame = Frame::new(u).expect("polar iterates stay orthonormal");
    DescentOutcome {
        frame,
        residual: obj,
        steps_taken,
        stalled,
    }
}

/// Polar factor of a full-rank matrix: the nearest matrix with orthonormal
/// columns. Here MᵀM = I + t²ḠᵀḠ is always well-conditioned.
fn polar_retract(m: &DMatrix<f64>) -> DMatrix<f64> {
    let gram = m.transpose() * m;
    let eig = gram.symmetric_eigen();
    let n = eig.eigenvalues.len();
    let mut inv_sqrt = DMatrix::zeros(n, n);
    for k in 0..n {
        let scale = 1.0 / eig.eigenvalues[k].sqrt();
        let col = eig.eigenvectors.column(k);
        inv_sqrt.ger(scale, &col, &col, 1.0);
    }
    m * inv_sqrt
}

fn raw_residual(samples: &LabeledSamples, u: &DMatrix<f64>, poly: &PolyModel) -> f64 {
    let y = samples.inputs() * u;
    let mut acc = 0.0;
    for i in 0..samples.len() {
        let r = samples.outputs()[i] - poly.eval(&y.row(i).transpose());
        acc += r * r;
    }
    acc
}

fn raw_euclidean_grad(
    samples: &LabeledSamples,
    u: &DMatrix<f64>,
    poly: &PolyModel,
) -> DMatrix<f64> {
    let y = samples.inputs() * u;
    let mut grad = DMatrix::zeros(u.nrows(), u.ncols());
    for i in 0..samples.len() {
        let yi = y.row(i).transpose();
        let (value, gy) = poly.eval_with_grad(&yi);
        let r = samples.outputs()[i] - value;
        let xi = samples.inputs().row(i).transpose();
        grad.ger(-2.0 * r, &xi, &gy, 1.0);
    }
    grad
}

/// Alternating minimization: P rounds of θ-fit then subspace descent, with a
/// closing θ-refit so the returned coefficients are optimal for the returned
/// frame. The residual is recorded after every half-step.
pub fn alternate_fit(
    samples: &LabeledSamples,
    degree: usize,
    u0: &Frame,
    iterations: usize,
    descent_steps: usize,
) -> Result<RidgeModel> {
    let basis = multi_indices(u0.subspace_dim(), degree)?;
    let mut u = u0.clone();
    let mut history = Vec::with_capacity(2 * iterations + 1);

    for iter in 1..=iterations {
        let poly = fit_theta(samples, &u, &basis)?;
        history.push(HistoryRow {
            iter,
            phase: Phase::Theta,
            residual: residual(samples, &u, &poly),
        });
        let outcome = grassmann_descent(samples, &u, &poly, descent_steps);
        u = outcome.frame;
        history.push(HistoryRow {
            iter,
            phase: Phase::Grassmann,
            residual: outcome.residual,
        });
    }

    let poly = fit_theta(samples, &u, &basis)?;
    history.push(HistoryRow {
        iter: iterations + 1,
        phase: Phase::Theta,
        residual: residual(samples, &u, &poly),
    });

    let mut model = RidgeModel::new(u, poly)?;
    model.history = history;
    Ok(model)
}

/// Predictions p_N(Uᵀxᵢ, θ) at the rows of `x`.
pub fn predict(model: &RidgeModel, x: &DMatrix<f64>) -> Result<DVector<f64>> {
    if x.ncols() != model.frame().ambient_dim() {
        return Err(Error::DimensionMismatch(format!(
            "inputs have dimension {} but model has m = {}",
            x.ncols(),
            model.frame().ambient_dim()
        )));
    }
    let y = x * model.frame().matrix();
    Ok(DVector::from_fn(x.nrows(), |i, _| {
        model.poly().eval(&y.row(i).transpose())
    }))
}

/// Average relative pointwise error over a testing set.
pub fn test_error(model: &RidgeModel, test: &LabeledSamples) -> Result<f64> {
    if test.outputs().iter().any(|&v| v == 0.0) {
        return Err(Error::RelativeErrorUndefined);
    }
    let predictions = predict(model, test.inputs())?;
    let mut acc = 0.0;
    for i in 0..test.len() {
        acc += (test.outputs()[i] - predictions[i]).abs() / test.outputs()[i].abs();
    }
    Ok(acc / test.len() as f64)
}

/// Seeded random starting frame: an orthonormalized standard-Gaussian m×n
/// matrix.
pub fn random_frame(m: usize, n: usize, seed: u64) -> Result<Frame> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let raw = DMatrix::from_fn(m, n, |_, _| rng.sample::<f64, _>(rand_distr::StandardNormal));
    linalg::orthonormalize(&raw)
}
