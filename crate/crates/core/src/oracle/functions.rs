//! Built-in synthetic test functions with exact analytic gradients, used as
//! ground truth throughout the test and acceptance suites.

use nalgebra::{DMatrix, DVector};
use rand::prelude::*;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::linalg::Frame;
use crate::polyridge::{self, PolyModel};

/// A target function together with its exact gradient.
#[derive(Debug, Clone)]
pub enum TestFunction {
    /// 5x₁ + sin(10πx₂): rapid oscillation in one direction, slow steady
    /// variation in the other.
    Bivariate,
    /// ½xᵀAx + bᵀx with symmetric A.
    Quadratic { a: DMatrix<f64>, b: DVector<f64> },
    /// g(U*ᵀx) with polynomial profile g: an exact ridge function.
    ExactRidge { frame: Frame, profile: PolyModel },
    /// h embedded in a larger space; coordinates outside `active` are ignored.
    Padded {
        inner: Box<TestFunction>,
        ambient: usize,
        active: Vec<usize>,
    },
    /// Weighted sum Σ wᵢ·fᵢ of same-dimension terms.
    Sum { terms: Vec<(f64, TestFunction)> },
}

/// Parameters for the string-keyed [`builtin`] factory.
#[derive(Debug, Clone)]
pub struct BuiltinOptions {
    pub dim: usize,
    pub subdim: usize,
    pub degree: usize,
    pub seed: u64,
    /// Diagonal of A for the quadratic; halving entries 3, 1.5, 0.75, … when
    /// absent.
    pub diag: Option<Vec<f64>>,
}

impl Default for BuiltinOptions {
    fn default() -> Self {
        Self {
            dim: 2,
            subdim: 1,
            degree: 2,
            seed: 0,
            diag: None,
        }
    }
}

/// Looks up a built-in by name: `bivariate`, `quadratic`, `exact_ridge`, or
/// `padded`.
pub fn builtin(name: &str, opts: &BuiltinOptions) -> Result<TestFunction> {
    match name {
        "bivariate" => Ok(TestFunction::Bivariate),
        "quadratic" => {
            let diag = match &opts.diag {
                Some(d) => {
                    if d.len() != opts.dim {
                        return Err(Error::DimensionMismatch(format!(
                            "diagonal length {} vs dim {}",
                            d.len(),
                            opts.dim
                        )));
                    }
                    d.clone()
                }
                None => (0..opts.dim).map(|j| 3.0 * 0.5_f64.powi(j as i32)).collect(),
            };
            TestFunction::quadratic(
                DMatrix::from_diagonal(&DVector::from_vec(diag)),
                DVector::zeros(opts.dim),
            )
        }
        "exact_ridge" => {
            TestFunction::exact_ridge_seeded(opts.dim, opts.subdim, opts.degree, opts.seed)
        }
        "padded" => {
            let inner = builtin(
                "quadratic",
                &BuiltinOptions {
                    dim: 2,
                    diag: Some(vec![3.0, 1.0]),
                    ..opts.clone()
                },
            )?;
            TestFunction::padded(inner, opts.dim, vec![0, 1])
        }
        other => Err(Error::UnknownFunction(other.to_string())),
    }
}

impl TestFunction {
    pub fn quadratic(a: DMatrix<f64>, b: DVector<f64>) -> Result<Self> {
        let m = a.nrows();
        if a.ncols() != m || b.len() != m {
            return Err(Error::DimensionMismatch(
                "quadratic needs square A and matching b".into(),
            ));
        }
        if (&a - a.transpose()).abs().max() > 1e-12 * a.abs().max().max(1.0) {
            return Err(Error::InvalidArgument("quadratic A must be symmetric".into()));
        }
        Ok(Self::Quadratic { a, b })
    }

    pub fn exact_ridge(frame: Frame, profile: PolyModel) -> Result<Self> {
        if profile.basis().vars() != frame.subspace_dim() {
            return Err(Error::DimensionMismatch(format!(
                "profile has {} variables but frame has n = {}",
                profile.basis().vars(),
                frame.subspace_dim()
            )));
        }
        Ok(Self::ExactRidge { frame, profile })
    }

    /// Exact ridge function with a seeded random frame and profile
    /// coefficients.
    pub fn exact_ridge_seeded(m: usize, n: usize, degree: usize, seed: u64) -> Result<Self> {
        let frame = polyridge::random_frame(m, n, seed)?;
        let basis = polyridge::multi_indices(n, degree)?;
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x9e37_79b9_7f4a_7c15);
        let theta = DVector::from_fn(basis.len(), |_, _| {
            rng.sample::<f64, _>(rand_distr::StandardNormal)
        });
        let profile = PolyModel::new(basis, theta, DVector::from_element(n, 1.0))?;
        Self::exact_ridge(frame, profile)
    }

    pub fn padded(inner: TestFunction, ambient: usize, active: Vec<usize>) -> Result<Self> {
        if active.len() != inner.dim() {
            return Err(Error::DimensionMismatch(format!(
                "{} active coordinates for an inner function of dimension {}",
                active.len(),
                inner.dim()
            )));
        }
        let mut seen = vec![false; ambient];
        for &idx in &active {
            if idx >= ambient {
                return Err(Error::InvalidArgument(format!(
                    "active coordinate {idx} outside ambient dimension {ambient}"
                )));
            }
            if seen[idx] {
                return Err(Error::InvalidArgument(format!(
                    "active coordinate {idx} repeated"
                )));
            }
            seen[idx] = true;
        }
        Ok(Self::Padded {
            inner: Box::new(inner),
            ambient,
            active,
        })
    }

    pub fn sum(terms: Vec<(f64, TestFunction)>) -> Result<Self> {
        if terms.is_empty() {
            return Err(Error::InvalidArgument("sum needs at least one term".into()));
        }
        let m = terms[0].1.dim();
        if terms.iter().any(|(_, f)| f.dim() != m) {
            return Err(Error::DimensionMismatch(
                "sum terms must share one dimension".into(),
            ));
        }
        Ok(Self::Sum { terms })
    }

    /// Ambient input dimension.
    pub fn dim(&self) -> usize {
        match self {
            Self::Bivariate => 2,
            Self::Quadratic { a, .. } => a.nrows(),
            Self::ExactRidge { frame, .. } => frame.ambient_dim(),
            Self::Padded { ambient, .. } => *ambient,
            Self::Sum { terms } => terms[0].1.dim(),
        }
    }

    /// Human-readable descriptor.
    pub fn name(&self) -> String {
        match self {
            Self::Bivariate => "bivariate".into(),
            Self::Quadratic { a, .. } => format!("quadratic(m={})", a.nrows()),
            Self::ExactRidge { frame, profile } => format!(
                "exact_ridge(m={}, n={}, N={})",
                frame.ambient_dim(),
                frame.subspace_dim(),
                profile.basis().degree()
            ),
            Self::Padded { inner, ambient, .. } => {
                format!("padded({}, m={ambient})", inner.name())
            }
            Self::Sum { terms } => format!("sum({} terms)", terms.len()),
        }
    }

    pub fn eval(&self, x: &[f64]) -> f64 {
        debug_assert_eq!(x.len(), self.dim());
        match self {
            Self::Bivariate => 5.0 * x[0] + (10.0 * std::f64::consts::PI * x[1]).sin(),
            Self::Quadratic { a, b } => {
                let m = a.nrows();
                let mut acc = 0.0;
                for i in 0..m {
                    let mut row = 0.0;
                    for j in 0..m {
                        row += a[(i, j)] * x[j];
                    }
                    acc += 0.5 * x[i] * row + b[i] * x[i];
                }
                acc
            }
            Self::ExactRidge { frame, profile } => {
                let u = frame.matrix();
                let n = frame.subspace_dim();
                let mut y = DVector::zeros(n);
                for j in 0..n {
                    let mut s = 0.0;
                    for i in 0..u.nrows() {
                        s += u[(i, j)] * x[i];
                    }
                    y[j] = s;
                }
                profile.eval(&y)
            }
            Self::Padded { inner, active, .. } => {
                let mut reduced = vec![0.0; active.len()];
                for (k, &idx) in active.iter().enumerate() {
                    reduced[k] = x[idx];
                }
                inner.eval(&reduced)
            }
            Self::Sum { terms } => terms.iter().map(|(w, f)| w * f.eval(x)).sum(),
        }
    }

    /// Exact gradient written into `out`.
    pub fn grad_into(&self, x: &[f64], out: &mut [f64]) {
        debug_assert_eq!(x.len(), self.dim());
        debug_assert_eq!(out.len(), self.dim());
        match self {
            Self::Bivariate => {
                let pi10 = 10.0 * std::f64::consts::PI;
                out[0] = 5.0;
                out[1] = pi10 * (pi10 * x[1]).cos();
            }
            Self::Quadratic { a, b } => {
                for i in 0..a.nrows() {
                    let mut s = b[i];
                    for j in 0..a.ncols() {
                        s += a[(i, j)] * x[j];
                    }
                    out[i] = s;
                }
            }
            Self::ExactRidge { frame, profile } => {
                let u = frame.matrix();
                let n = frame.subspace_dim();
                let mut y = DVector::zeros(n);
                for j in 0..n {
                    let mut s = 0.0;
                    for i in 0..u.nrows() {
                        s += u[(i, j)] * x[i];
                    }
                    y[j] = s;
                }
                let (_, gy) = profile.eval_with_grad(&y);
                for i in 0..u.nrows() {
                    let mut s = 0.0;
                    for j in 0..n {
                        s += u[(i, j)] * gy[j];
                    }
                    out[i] = s;
                }
            }
            Self::Padded { inner, active, .. } => {
                let mut reduced = vec![0.0; active.len()];
                for (k, &idx) in active.iter().enumerate() {
                    reduced[k] = x[idx];
                }
                let mut inner_grad = vec![0.0; active.len()];
                inner.grad_into(&reduced, &mut inner_grad);
                out.fill(0.0);
                for (k, &idx) in active.iter().enumerate() {
                    out[idx] = inner_grad[k];
                }
            }
            Self::Sum { terms } => {
                out.fill(0.0);
                let mut scratch = vec![0.0; x.len()];
                for (w, f) in terms {
                    f.grad_into(x, &mut scratch);
                    for (o, &s) in out.iter_mut().zip(&scratch) {
                        *o += w * s;
                    }
                }
            }
        }
    }

    pub fn grad(&self, x: &[f64]) -> Vec<f64> {
        let mut out = vec![0.0; self.dim()];
        self.grad_into(x, &mut out);
        out
    }

    /// Closed-form C = E[∇f ∇fᵀ] under the standard Gaussian density, when
    /// one exists.
    pub fn analytic_c(&self) -> Option<DMatrix<f64>> {
        match self {
            Self::Bivariate => {
                let pi = std::f64::consts::PI;
                // E[(10π cos(10πx))²] = 50π²(1 + e^{−200π²}); the exponential
                // underflows to zero in f64.
                let c22 = 50.0 * pi * pi * (1.0 + (-200.0 * pi * pi).exp());
                Some(DMatrix::from_diagonal(&DVector::from_column_slice(&[
                    25.0, c22,
                ])))
            }
            Self::Quadratic { a, b } => {
                let mut c = a * a;
                c.ger(1.0, b, b, 1.0);
                Some(c)
            }
            Self::Padded {
                inner,
                ambient,
                active,
            } => {
                let inner_c = inner.analytic_c()?;
                let mut c = DMatrix::zeros(*ambient, *ambient);
                for (p, &i) in active.iter().enumerate() {
                    for (q, &j) in active.iter().enumerate() {
                        c[(i, j)] = inner_c[(p, q)];
                    }
                }
                Some(c)
            }
            Self::ExactRidge { .. } | Self::Sum { .. } => None,
        }
    }

    /// Integer upper bound on sup‖∇f‖₂ when the gradient is bounded.
    pub fn gradient_sup_bound(&self) -> Option<f64> {
        match self {
            Self::Bivariate => {
                let pi = std::f64::consts::PI;
                Some((25.0 + 100.0 * pi * pi).sqrt().ceil())
            }
            Self::Padded { inner, .. } => inner.gradient_sup_bound(),
            _ => None,
        }
    }
}
