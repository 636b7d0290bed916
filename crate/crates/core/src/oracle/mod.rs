//! Quadrature-based ground truth under a standard Gaussian input density:
//! the conditional-mean ridge profile µ, the exact objective R(U), the
//! bivariate angle sweep, a finite-difference Grassmann gradient of R, and
//! the near-stationarity bound it is compared against.

mod functions;
mod quadrature;

pub use functions::{builtin, BuiltinOptions, TestFunction};
pub use quadrature::{tensor_for_each, GaussHermiteRule};

use nalgebra::DMatrix;
use rayon::prelude::*;

use crate::activesubspace::{GradientSet, SpectrumEstimate};
use crate::error::{Error, Result};
use crate::linalg::{self, Frame};

/// Tensor-product quadrature is limited to this many ambient dimensions.
pub const TENSOR_DIM_LIMIT: usize = 4;

/// Default step for the finite-difference Grassmann gradient.
pub const DEFAULT_FD_STEP: f64 = 1e-5;

/// Input densities a caller may request. Only the standard Gaussian carries
/// a product structure on subspace coordinates, so it is the only one the
/// conditional-mean oracle supports.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Density {
    StandardGaussian,
    UniformBox,
}

/// One row of a bivariate angle sweep.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepRow {
    pub alpha: f64,
    pub objective: f64,
}

/// The objective R(U(α)) tabulated over evenly spaced angles in [0, π].
#[derive(Debug, Clone)]
pub struct SweepTable {
    rows: Vec<SweepRow>,
}

impl SweepTable {
    pub fn rows(&self) -> &[SweepRow] {
        &self.rows
    }

    /// Index of the grid point closest to the given angle.
    pub fn nearest_index(&self, alpha: f64) -> usize {
        let mut best = 0;
        let mut best_gap = f64::INFINITY;
        for (i, row) in self.rows.iter().enumerate() {
            let gap = (row.alpha - alpha).abs();
            if gap < best_gap {
                best_gap = gap;
                best = i;
            }
        }
        best
    }
}

/// µ(y): the average of f over the affine slice {Uy + Vz} with z integrated
/// against the standard normal, evaluated by an (m−n)-dimensional tensor
/// rule.
pub fn conditional_mean_mu(
    f: &TestFunction,
    u: &Frame,
    y: &[f64],
    inner_rule: &GaussHermiteRule,
    density: Density,
) -> Result<f64> {
    if density != Density::StandardGaussian {
        return Err(Error::UnsupportedDensity);
    }
    if f.dim() != u.ambient_dim() {
        return Err(Error::DimensionMismatch(format!(
            "function dimension {} vs frame ambient {}",
            f.dim(),
            u.ambient_dim()
        )));
    }
    if y.len() != u.subspace_dim() {
        return Err(Error::DimensionMismatch(format!(
            "coordinate length {} vs subspace dimension {}",
            y.len(),
            u.subspace_dim()
        )));
    }
    let v = linalg::complement(u)?;
    let m = u.ambient_dim();
    let mut base = vec![0.0; m];
    let mut point = vec![0.0; m];
    Ok(mu_value(
        f,
        u.matrix(),
        v.matrix(),
        y,
        inner_rule,
        &mut base,
        &mut point,
    ))
}

/// Inner kernel for µ with caller-provided buffers; `base` and `point` must
/// have length m.
fn mu_value(
    f: &TestFunction,
    u: &DMatrix<f64>,
    v: &DMatrix<f64>,
    y: &[f64],
    rule: &GaussHermiteRule,
    base: &mut [f64],
    point: &mut [f64],
) -> f64 {
    let m = u.nrows();
    base.fill(0.0);
    for (j, &yj) in y.iter().enumerate() {
        for i in 0..m {
            base[i] += u[(i, j)] * yj;
        }
    }
    let mut acc = 0.0;
    tensor_for_each(rule, v.ncols(), |z, w| {
        point.copy_from_slice(base);
        for (j, &zj) in z.iter().enumerate() {
            for i in 0..m {
                point[i] += v[(i, j)] * zj;
            }
        }
        acc += w * f.eval(point);
    });
    acc
}

/// The ridge-approximation objective R(U) = ½‖f − µ(Uᵀ·)‖²_{L²(ρ)}, with the
/// outer expectation taken by an m-dimensional tensor rule and µ by
/// [`conditional_mean_mu`]'s kernel.
pub fn ridge_error_r(
    f: &TestFunction,
    u: &Frame,
    outer_rule: &GaussHermiteRule,
    inner_rule: &GaussHermiteRule,
) -> Result<f64> {
    let m = f.dim();
    if m != u.ambient_dim() {
        return Err(Error::DimensionMismatch(format!(
            "function dimension {m} vs frame ambient {}",
            u.ambient_dim()
        )));
    }
    if m > TENSOR_DIM_LIMIT {
        return Err(Error::TensorQuadratureInfeasible {
            m,
            limit: TENSOR_DIM_LIMIT,
        });
    }
    let v = linalg::complement(u)?;
    let um = u.matrix();
    let n = u.subspace_dim();
    let mut y = vec![0.0; n];
    let mut base = vec![0.0; m];
    let mut point = vec![0.0; m];
    let mut acc = 0.0;
    tensor_for_each(outer_rule, m, |x, w| {
        for j in 0..n {
            let mut s = 0.0;
            for i in 0..m {
                s += um[(i, j)] * x[i];
            }
            y[j] = s;
        }
        let mu = mu_value(f, um, v.matrix(), &y, inner_rule, &mut base, &mut point);
        let r = f.eval(x) - mu;
        acc += w * r * r;
    });
    Ok(0.5 * acc)
}

/// C = ∫ ∇f ∇fᵀ dρ by an m-dimensional tensor rule, eigendecomposed.
pub fn estimate_c_quadrature(
    f: &TestFunction,
    rule: &GaussHermiteRule,
) -> Result<SpectrumEstimate> {
    let m = f.dim();
    if m > TENSOR_DIM_LIMIT {
        return Err(Error::TensorQuadratureInfeasible {
            m,
            limit: TENSOR_DIM_LIMIT,
        });
    }
    let mut c = DMatrix::<f64>::zeros(m, m);
    let mut grad = vec![0.0; m];
    let mut count = 0usize;
    tensor_for_each(rule, m, |x, w| {
        f.grad_into(x, &mut grad);
        for i in 0..m {
            for j in 0..m {
                c[(i, j)] += w * grad[i] * grad[j];
            }
        }
        count += 1;
    });
    let c = (&c + c.transpose()) * 0.5;
    SpectrumEstimate::from_matrix(c, count)
}

/// Tabulates R(U(α)) for U(α) = [cos α, sin α]ᵀ over `n_angles` evenly
/// spaced angles spanning [0, π] inclusive.
///
/// Rows evaluate in parallel; each row's quadrature accumulates in a fixed
/// order, so the table is identical for any worker count.
pub fn sweep_angle(
    f: &TestFunction,
    n_angles: usize,
    outer_order: usize,
    inner_order: usize,
) -> Result<SweepTable> {
    if f.dim() != 2 {
        return Err(Error::DimensionMismatch(format!(
            "angle sweep requires a bivariate function, got m = {}",
            f.dim()
        )));
    }
    if n_angles < 2 {
        return Err(Error::InvalidArgument("need at least two angles".into()));
    }
    let outer = GaussHermiteRule::new(outer_order)?;
    let inner = GaussHermiteRule::new(inner_order)?;
    let step = std::f64::consts::PI / (n_angles - 1) as f64;
    let rows: Vec<SweepRow> = (0..n_angles)
        .into_par_iter()
        .map(|i| {
            let alpha = step * i as f64;
            let u = Frame::new(DMatrix::from_column_slice(2, 1, &[alpha.cos(), alpha.sin()]))
                .expect("unit column is orthonormal");
            let objective = ridge_error_r(f, &u, &outer, &inner)?;
            Ok(SweepRow { alpha, objective })
        })
        .collect::<Result<_>>()?;
    Ok(SweepTable { rows })
}

/// Central-difference Grassmann gradient of R at the complement frame V.
///
/// Differences are taken along the orthonormal tangent basis {u_a e_bᵀ}
/// (u_a spanning the complement of span(V)), each direction retracted by
/// re-orthonormalization. Returns the assembled tangent matrix and its
/// Frobenius norm.
pub fn grassmann_grad_r_fd(
    f: &TestFunction,
    v: &Frame,
    fd_step: f64,
    outer_rule: &GaussHermiteRule,
    inner_rule: &GaussHermiteRule,
) -> Result<(DMatrix<f64>, f64)> {
    if !(fd_step > 0.0) {
        return Err(Error::InvalidArgument("fd_step must be positive".into()));
    }
    let m = v.ambient_dim();
    let p = v.subspace_dim();
    let u = linalg::complement(v)?;
    let n = u.subspace_dim();

    let objective_at = |frame_v: &Frame| -> Result<f64> {
        let u_of_v = linalg::complement(frame_v)?;
        ridge_error_r(f, &u_of_v, outer_rule, inner_rule)
    };

    let directions: Vec<(usize, usize)> = (0..n)
        .flat_map(|a| (0..p).map(move |b| (a, b)))
        .collect();
    let coeffs: Vec<f64> = directions
        .par_iter()
        .map(|&(a, b)| {
            let mut tangent = DMatrix::<f64>::zeros(m, p);
            for i in 0..m {
                tangent[(i, b)] = u.matrix()[(i, a)];
            }
            let plus = linalg::orthonormalize(&(v.matrix() + &tangent * fd_step))?;
            let minus = linalg::orthonormalize(&(v.matrix() - &tangent * fd_step))?;
            Ok((objective_at(&plus)? - objective_at(&minus)?) / (2.0 * fd_step))
        })
        .collect::<Result<_>>()?;

    let mut gradient = DMatrix::<f64>::zeros(m, p);
    let mut norm_sq = 0.0;
    for (&(a, b), &c) in directions.iter().zip(&coeffs) {
        for i in 0..m {
            gradient[(i, b)] += c * u.matrix()[(i, a)];
        }
        norm_sq += c * c;
    }
    Ok((gradient, norm_sq.sqrt()))
}

/// The near-stationarity bound L(2√m + √(m−n))·√(λ_{n+1}+…+λ_m) on the
/// Grassmann gradient norm of R at the gradient-based subspace.
pub fn near_stationary_bound(lipschitz: f64, m: usize, n: usize, tail: &[f64]) -> Result<f64> {
    if !(lipschitz > 0.0) {
        return Err(Error::InvalidArgument(
            "Lipschitz constant must be positive".into(),
        ));
    }
    if n >= m {
        return Err(Error::InvalidArgument(format!(
            "need n < m, got n = {n}, m = {m}"
        )));
    }
    if tail.len() != m - n {
        return Err(Error::DimensionMismatch(format!(
            "tail has {} entries, expected m − n = {}",
            tail.len(),
            m - n
        )));
    }
    let mut sum = 0.0;
    for &lambda in tail {
        if lambda < 0.0 {
            return Err(Error::NegativeTail(lambda));
        }
        sum += lambda;
    }
    Ok(lipschitz * (2.0 * (m as f64).sqrt() + ((m - n) as f64).sqrt()) * sum.sqrt())
}

/// Largest sampled gradient norm: a certified lower bound on sup‖∇f‖.
pub fn lipschitz_estimate(gradients: &GradientSet) -> f64 {
    let g = gradients.matrix();
    (0..g.nrows())
        .map(|i| g.row(i).norm())
        .fold(0.0, f64::max)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyridge::{self, PolyModel};
    use approx::assert_relative_eq;
    use nalgebra::{dvector, DVector};

    fn e1_frame() -> Frame {
        Frame::identity(2, 1).unwrap()
    }

    fn e2_frame() -> Frame {
        Frame::new(DMatrix::from_column_slice(2, 1, &[0.0, 1.0])).unwrap()
    }

    fn constant_function(m: usize, value: f64) -> TestFunction {
        let frame = Frame::identity(m, 1).unwrap();
        let basis = polyridge::multi_indices(1, 0).unwrap();
        let profile = PolyModel::new(basis, dvector![value], dvector![1.0]).unwrap();
        TestFunction::exact_ridge(frame, profile).unwrap()
    }

    #[test]
    fn mu_linear_function_is_exact() {
        let f = TestFunction::quadratic(DMatrix::zeros(2, 2), dvector![5.0, 0.0]).unwrap();
        let rule = GaussHermiteRule::new(7).unwrap();
        for &y in &[-1.3, 0.0, 2.4] {
            let mu =
                conditional_mean_mu(&f, &e1_frame(), &[y], &rule, Density::StandardGaussian)
                    .unwrap();
            assert_relative_eq!(mu, 5.0 * y, epsilon = 1e-13);
        }
    }

    #[test]
    fn mu_constant_function() {
        let f = constant_function(3, -2.5);
        let u = Frame::identity(3, 2).unwrap();
        let rule = GaussHermiteRule::new(5).unwrap();
        let mu = conditional_mean_mu(&f, &u, &[0.4, -1.0], &rule, Density::StandardGaussian)
            .unwrap();
        assert_relative_eq!(mu, -2.5, epsilon = 1e-13);
    }

    #[test]
    fn mu_bivariate_along_oscillation() {
        // With U = e₂ the slow 5x₁ term integrates away exactly by symmetry.
        let f = TestFunction::Bivariate;
        let rule = GaussHermiteRule::new(51).unwrap();
        for &y in &[0.03, -0.11, 0.27] {
            let mu =
                conditional_mean_mu(&f, &e2_frame(), &[y], &rule, Density::StandardGaussian)
                    .unwrap();
            let expected = (10.0 * std::f64::consts::PI * y).sin();
            assert!((mu - expected).abs() <= 1e-12);
        }
    }

    #[test]
    fn mu_rejects_non_gaussian() {
        let f = TestFunction::Bivariate;
        let rule = GaussHermiteRule::new(3).unwrap();
        assert!(matches!(
            conditional_mean_mu(&f, &e1_frame(), &[0.0], &rule, Density::UniformBox),
            Err(Error::UnsupportedDensity)
        ));
    }

    #[test]
    fn ridge_error_along_active_direction_is_exact() {
        // U = e₂: the residual is 5x₁, so R = 12.5 for any rule with q ≥ 2.
        let f = TestFunction::Bivariate;
        let outer = GaussHermiteRule::new(21).unwrap();
        let inner = GaussHermiteRule::new(21).unwrap();
        let r = ridge_error_r(&f, &e2_frame(), &outer, &inner).unwrap();
        assert_relative_eq!(r, 12.5, epsilon = 1e-10);
    }

    #[test]
    fn ridge_error_converged_along_slow_direction() {
        let f = TestFunction::Bivariate;
        let outer = GaussHermiteRule::new(201).unwrap();
        let inner = GaussHermiteRule::new(201).unwrap();
        let r = ridge_error_r(&f, &e1_frame(), &outer, &inner).unwrap();
        assert_relative_eq!(r, 0.25, max_relative = 1e-6);
    }

    #[test]
    fn ridge_error_exact_ridge_vanishes() {
        let f = TestFunction::exact_ridge_seeded(3, 1, 3, 5).unwrap();
        let TestFunction::ExactRidge { frame, .. } = &f else {
            unreachable!()
        };
        let outer = GaussHermiteRule::new(9).unwrap();
        let inner = GaussHermiteRule::new(9).unwrap();
        let r = ridge_error_r(&f, frame, &outer, &inner).unwrap();
        assert!(r.abs() <= 1e-12);
    }

    #[test]
    fn ridge_error_rejects_large_dimension() {
        let f = TestFunction::exact_ridge_seeded(5, 1, 2, 0).unwrap();
        let TestFunction::ExactRidge { frame, .. } = &f else {
            unreachable!()
        };
        let rule = GaussHermiteRule::new(3).unwrap();
        assert!(matches!(
            ridge_error_r(&f, frame, &rule, &rule),
            Err(Error::TensorQuadratureInfeasible { m: 5, .. })
        ));
    }

    /// Closed-form R for a quadratic under the standard Gaussian: with
    /// B = UᵀAV, S = VᵀAV, c = Vᵀb,
    /// R = ½(‖B‖²_F + ½‖S‖²_F + ‖c‖²).
    fn analytic_r_quadratic(a: &DMatrix<f64>, b: &DVector<f64>, u: &Frame) -> f64 {
        let v = linalg::complement(u).unwrap();
        let bmat = u.matrix().transpose() * a * v.matrix();
        let smat = v.matrix().transpose() * a * v.matrix();
        let cvec = v.matrix().transpose() * b;
        0.5 * (bmat.norm_squared() + 0.5 * smat.norm_squared() + cvec.norm_squared())
    }

    #[test]
    fn ridge_error_matches_quadratic_closed_form() {
        let a = DMatrix::from_row_slice(
            3,
            3,
            &[2.0, 0.4, -0.1, 0.4, 1.0, 0.3, -0.1, 0.3, 0.5],
        );
        let b = dvector![0.7, -0.2, 0.1];
        let f = TestFunction::quadratic(a.clone(), b.clone()).unwrap();
        let rule = GaussHermiteRule::new(5).unwrap();
        for seed in 0..3 {
            for n in 1..3 {
                let u = polyridge::random_frame(3, n, 40 + seed).unwrap();
                let expected = analytic_r_quadratic(&a, &b, &u);
                let got = ridge_error_r(&f, &u, &rule, &rule).unwrap();
                assert_relative_eq!(got, expected, max_relative = 1e-10);
            }
        }
    }

    #[test]
    fn ridge_error_basis_invariant() {
        let a = DMatrix::from_row_slice(3, 3, &[1.5, 0.2, 0.0, 0.2, 0.8, -0.3, 0.0, -0.3, 2.2]);
        let f = TestFunction::quadratic(a, dvector![0.1, 0.0, -0.5]).unwrap();
        let u = polyridge::random_frame(3, 2, 77).unwrap();
        let theta = 0.9_f64;
        let q = DMatrix::from_row_slice(
            2,
            2,
            &[theta.cos(), -theta.sin(), theta.sin(), theta.cos()],
        );
        let uq = u.rotate(&q).unwrap();
        let rule = GaussHermiteRule::new(7).unwrap();
        let r1 = ridge_error_r(&f, &u, &rule, &rule).unwrap();
        let r2 = ridge_error_r(&f, &uq, &rule, &rule).unwrap();
        assert_relative_eq!(r1, r2, max_relative = 1e-8);
    }

    #[test]
    fn quadrature_c_constant_gradient() {
        let f = TestFunction::quadratic(DMatrix::zeros(2, 2), dvector![3.0, -4.0]).unwrap();
        let rule = GaussHermiteRule::new(1).unwrap();
        let est = estimate_c_quadrature(&f, &rule).unwrap();
        let expected = DMatrix::from_row_slice(2, 2, &[9.0, -12.0, -12.0, 16.0]);
        assert_relative_eq!(est.c_hat(), &expected, epsilon = 1e-12);
    }

    #[test]
    fn quadrature_c_bivariate_101_and_converged() {
        let f = TestFunction::Bivariate;
        let est101 = estimate_c_quadrature(&f, &GaussHermiteRule::new(101).unwrap()).unwrap();
        assert_relative_eq!(est101.c_hat()[(0, 0)], 25.00, max_relative = 1e-9);
        // The 101-point rule under-resolves the oscillatory integrand and
        // lands near 526.43, well off the converged value.
        assert_relative_eq!(est101.c_hat()[(1, 1)], 526.4268, max_relative = 1e-4);

        let est301 = estimate_c_quadrature(&f, &GaussHermiteRule::new(301).unwrap()).unwrap();
        let converged = 50.0 * std::f64::consts::PI.powi(2);
        assert_relative_eq!(est301.c_hat()[(1, 1)], converged, max_relative = 1e-8);
    }

    #[test]
    fn sweep_hits_named_angles() {
        let f = TestFunction::Bivariate;
        let table = sweep_angle(&f, 5, 201, 201).unwrap();
        assert_eq!(table.rows().len(), 5);
        assert_relative_eq!(table.rows()[0].alpha, 0.0);
        assert_relative_eq!(
            table.rows()[4].alpha,
            std::f64::consts::PI,
            epsilon = 1e-15
        );
        for row in table.rows() {
            assert!(row.objective >= 0.0);
        }
        assert_relative_eq!(table.rows()[0].objective, 0.25, max_relative = 1e-2);
        let mid = table.nearest_index(std::f64::consts::FRAC_PI_2);
        assert_relative_eq!(table.rows()[mid].objective, 12.5, max_relative = 1e-6);
    }

    #[test]
    fn fd_gradient_vanishes_for_exact_ridge_complement() {
        let f = TestFunction::exact_ridge_seeded(3, 1, 2, 9).unwrap();
        let TestFunction::ExactRidge { frame, .. } = &f else {
            unreachable!()
        };
        let v = linalg::complement(frame).unwrap();
        let rule = GaussHermiteRule::new(9).unwrap();
        let (_, norm) = grassmann_grad_r_fd(&f, &v, DEFAULT_FD_STEP, &rule, &rule).unwrap();
        assert!(norm <= 1e-6, "norm {norm}");
    }

    #[test]
    fn fd_gradient_small_at_bivariate_local_minimum() {
        let f = TestFunction::Bivariate;
        let v = e1_frame(); // complement of the oscillation direction
        let rule = GaussHermiteRule::new(101).unwrap();
        let (_, norm) = grassmann_grad_r_fd(&f, &v, DEFAULT_FD_STEP, &rule, &rule).unwrap();
        assert!(norm <= 1e-3, "norm {norm}");
    }

    #[test]
    fn fd_gradient_richardson_consistency() {
        // At a non-stationary angle the truncation error scales as h².
        let f = TestFunction::Bivariate;
        let alpha = std::f64::consts::FRAC_PI_4;
        let v = Frame::new(DMatrix::from_column_slice(
            2,
            1,
            &[-alpha.sin(), alpha.cos()],
        ))
        .unwrap();
        let rule = GaussHermiteRule::new(101).unwrap();
        let norm_at = |h: f64| {
            grassmann_grad_r_fd(&f, &v, h, &rule, &rule)
                .map(|(_, n)| n)
                .unwrap()
        };
        let (n1, n2, n4) = (norm_at(2e-2), norm_at(1e-2), norm_at(5e-3));
        let ratio = (n1 - n2) / (n2 - n4);
        assert!(
            (2.0..8.0).contains(&ratio.abs()),
            "Richardson ratio {ratio} (norms {n1}, {n2}, {n4})"
        );
    }

    #[test]
    fn bound_arithmetic() {
        assert_eq!(near_stationary_bound(32.0, 2, 1, &[0.0]).unwrap(), 0.0);
        let b = near_stationary_bound(32.0, 2, 1, &[25.0]).unwrap();
        assert_relative_eq!(b, 612.5483399593904, max_relative = 1e-12);
        let doubled = near_stationary_bound(64.0, 2, 1, &[25.0]).unwrap();
        assert_relative_eq!(doubled, 2.0 * b, max_relative = 1e-14);
        assert!(matches!(
            near_stationary_bound(32.0, 2, 1, &[-1.0]),
            Err(Error::NegativeTail(_))
        ));
    }

    #[test]
    fn poincare_consistency_at_active_subspace() {
        // Along W₁ = e₂ the bound of the eigenvalue-tail theorem is tight:
        // 2R(W₁) = λ₂ = 25 exactly.
        let f = TestFunction::Bivariate;
        let est = estimate_c_quadrature(&f, &GaussHermiteRule::new(101).unwrap()).unwrap();
        let tail = est.spectrum().eigenvalues()[1];
        let outer = GaussHermiteRule::new(201).unwrap();
        let r = ridge_error_r(&f, &e2_frame(), &outer, &outer).unwrap();
        assert!(2.0 * r <= tail * (1.0 + 1e-3), "2R = {} vs tail {tail}", 2.0 * r);
    }

    #[test]
    fn lipschitz_estimates() {
        let g = GradientSet::new(DMatrix::from_row_slice(1, 2, &[3.0, 4.0])).unwrap();
        assert_eq!(lipschitz_estimate(&g), 5.0);

        let zeros = GradientSet::new(DMatrix::zeros(3, 2)).unwrap();
        assert_eq!(lipschitz_estimate(&zeros), 0.0);

        let f = TestFunction::Bivariate;
        let design = crate::sampling::gaussian_design(1000, 2, 3).unwrap();
        let mut rows = DMatrix::zeros(1000, 2);
        let mut buf = [0.0; 2];
        for i in 0..1000 {
            f.grad_into(&[design.points()[(i, 0)], design.points()[(i, 1)]], &mut buf);
            rows[(i, 0)] = buf[0];
            rows[(i, 1)] = buf[1];
        }
        let l = lipschitz_estimate(&GradientSet::new(rows).unwrap());
        assert!(l <= 32.0 && l >= 31.0, "sampled Lipschitz bound {l}");
    }
}
