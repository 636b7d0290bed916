//! Dense linear-algebra kernels and subspace geometry shared by the other
//! modules: orthonormal frames, symmetric eigendecomposition with a fixed
//! ordering and sign convention, subspace distances, and min-norm least
//! squares.
//!
//! All routines here are pure functions of their inputs and are safe to call
//! from multiple threads.

use nalgebra::{DMatrix, DVector};

use crate::error::{Error, Result};

/// Tolerance on `max|UᵀU − I|` for a valid frame.
pub const FRAME_ORTHO_TOL: f64 = 1e-12;

/// Relative singular-value cutoff used by [`orthonormalize`] and [`lstsq`].
pub const RANK_TOL: f64 = 1e-12;

/// An m×n matrix with orthonormal columns: one representative of a point on
/// the Grassmann manifold G(n, m).
///
/// Construction canonicalizes column signs so that the entry of largest
/// absolute value in each column is positive (ties broken by lowest row
/// index). Two frames spanning the same subspace through the same basis thus
/// compare bit-identically, which keeps downstream results reproducible.
#[derive(Debug, Clone, PartialEq)]
pub struct Frame {
    entries: DMatrix<f64>,
}

impl Frame {
    /// Wraps an already-orthonormal matrix, applying the sign convention.
    ///
    /// Fails if the matrix is not orthonormal to within [`FRAME_ORTHO_TOL`]
    /// or if the shape violates 1 ≤ n < m. Use [`orthonormalize`] for a
    /// general full-rank matrix.
    pub fn new(entries: DMatrix<f64>) -> Result<Self> {
        let (m, n) = entries.shape();
        if n == 0 || n >= m {
            return Err(Error::InvalidArgument(format!(
                "frame requires 1 <= n < m, got m = {m}, n = {n}"
            )));
        }
        let gram = entries.transpose() * &entries;
        let dev = (&gram - DMatrix::<f64>::identity(n, n)).abs().max();
        if !(dev <= FRAME_ORTHO_TOL) {
            return Err(Error::InvalidArgument(format!(
                "columns not orthonormal (max|UᵀU − I| = {dev:e})"
            )));
        }
        let mut entries = entries;
        fix_column_signs(&mut entries);
        Ok(Self { entries })
    }

    /// First `n` columns of the m×m identity.
    pub fn identity(m: usize, n: usize) -> Result<Self> {
        Self::new(DMatrix::identity(m, n))
    }

    /// Ambient dimension m.
    pub fn ambient_dim(&self) -> usize {
        self.entries.nrows()
    }

    /// Subspace dimension n.
    pub fn subspace_dim(&self) -> usize {
        self.entries.ncols()
    }

    /// The underlying m×n matrix.
    pub fn matrix(&self) -> &DMatrix<f64> {
        &self.entries
    }

    /// Right-multiplies by an n×n orthogonal matrix, staying on the manifold.
    ///
    /// The result spans the same subspace through a rotated basis.
    pub fn rotate(&self, q: &DMatrix<f64>) -> Result<Self> {
        if q.nrows() != self.subspace_dim() || q.ncols() != self.subspace_dim() {
            return Err(Error::DimensionMismatch(format!(
                "rotation must be {n}×{n}",
                n = self.subspace_dim()
            )));
        }
        Self::new(&self.entries * q)
    }
}

/// Flips column signs so the largest-magnitude entry of each column is
/// positive; exact ties go to the lowest row index.
fn fix_column_signs(a: &mut DMatrix<f64>) {
    for j in 0..a.ncols() {
        let mut pivot = 0;
        let mut best = f64::NEG_INFINITY;
        for i in 0..a.nrows() {
            let v = a[(i, j)].abs();
            if v > best {
                best = v;
                pivot = i;
            }
        }
        if a[(pivot, j)] < 0.0 {
            for i in 0..a.nrows() {
                a[(i, j)] = -a[(i, j)];
            }
        }
    }
}

/// Eigendecomposition of a symmetric matrix with eigenvalues in descending
/// order and sign-canonicalized eigenvectors.
#[derive(Debug, Clone)]
pub struct Spectrum {
    eigenvalues: DVector<f64>,
    eigenvectors: DMatrix<f64>,
}

impl Spectrum {
    /// Eigenvalues λ₁ ≥ λ₂ ≥ … ≥ λ_m.
    pub fn eigenvalues(&self) -> &DVector<f64> {
        &self.eigenvalues
    }

    /// m×m orthogonal matrix; column k pairs with eigenvalue k.
    pub fn eigenvectors(&self) -> &DMatrix<f64> {
        &self.eigenvectors
    }

    /// Dimension m.
    pub fn dim(&self) -> usize {
        self.eigenvalues.len()
    }

    /// Frame spanned by the first `k` eigenvectors (requires 1 ≤ k < m).
    pub fn leading_frame(&self, k: usize) -> Result<Frame> {
        Frame::new(self.eigenvectors.columns(0, k).into_owned())
    }

    /// Frame spanned by the trailing `m − k` eigenvectors (the complement of
    /// the leading-k eigenspace).
    pub fn trailing_frame(&self, k: usize) -> Result<Frame> {
        let m = self.dim();
        Frame::new(self.eigenvectors.columns(k, m - k).into_owned())
    }
}

/// Thin-QR orthonormalization of a full-column-rank matrix.
///
/// The span is preserved; fails with [`Error::RankDeficient`] when the
/// smallest singular value is below [`RANK_TOL`] times the largest.
pub fn orthonormalize(a: &DMatrix<f64>) -> Result<Frame> {
    let (m, n) = a.shape();
    if n == 0 || n >= m {
        return Err(Error::InvalidArgument(format!(
            "orthonormalize requires 1 <= n < m, got m = {m}, n = {n}"
        )));
    }
    let svals = a.clone().singular_values();
    let smax = svals.max();
    let smin = svals.min();
    if !(smin > RANK_TOL * smax) {
        return Err(Error::RankDeficient);
    }
    let q = a.clone().qr().q();
    Frame::new(q)
}

/// Orthonormal basis for the complement of `span(U)` in ℝ^m.
///
/// Computed as the top eigenvectors of the projector I − UUᵀ, so the result
/// is deterministic under the crate-wide sign convention.
pub fn complement(u: &Frame) -> Result<Frame> {
    let m = u.ambient_dim();
    let n = u.subspace_dim();
    if n >= m {
        return Err(Error::NoComplement);
    }
    let proj = DMatrix::<f64>::identity(m, m) - u.matrix() * u.matrix().transpose();
    let spec = sym_eig_desc(&proj)?;
    spec.leading_frame(m - n)
}

/// Symmetric eigendecomposition, eigenvalues descending, eigenvector signs
/// canonicalized per the [`Frame`] convention.
///
/// The input is rejected when `max|S − Sᵀ|` exceeds `1e−10·max|S|`; within
/// the tolerance the matrix is explicitly symmetrized before decomposition.
pub fn sym_eig_desc(s: &DMatrix<f64>) -> Result<Spectrum> {
    let (m, k) = s.shape();
    if m != k {
        return Err(Error::DimensionMismatch(format!(
            "eigendecomposition needs a square matrix, got {m}×{k}"
        )));
    }
    let scale = s.abs().max();
    let asym = (s - s.transpose()).abs().max();
    if asym > 1e-10 * scale.max(f64::MIN_POSITIVE) {
        return Err(Error::NotSymmetric { max_asym: asym });
    }
    let sym = (s + s.transpose()) * 0.5;
    let eig = sym.symmetric_eigen();

    let mut order: Vec<usize> = (0..m).collect();
    order.sort_by(|&i, &j| {
        eig.eigenvalues[j]
            .partial_cmp(&eig.eigenvalues[i])
            .expect("symmetric eigenvalues are finite")
    });
    let eigenvalues = DVector::from_iterator(m, order.iter().map(|&i| eig.eigenvalues[i]));
    let mut eigenvectors = DMatrix::zeros(m, m);
    for (dst, &src) in order.iter().enumerate() {
        eigenvectors.set_column(dst, &eig.eigenvectors.column(src));
    }
    fix_column_signs(&mut eigenvectors);
    Ok(Spectrum {
        eigenvalues,
        eigenvectors,
    })
}

/// Distance between equal-dimensional subspaces: the 2-norm of the projector
/// difference, which is √(1 − σ_min(WaᵀWb)²), the sine of the largest
/// principal angle.
///
/// Evaluated as σ_max(Wb − Wa(WaᵀWb)), the identical quantity without the
/// 1 − σ² cancellation, so distances near zero come out at rounding level
/// instead of √ε. O(mk²) either way.
pub fn subspace_distance(wa: &Frame, wb: &Frame) -> Result<f64> {
    if wa.subspace_dim() != wb.subspace_dim() {
        return Err(Error::DimensionMismatch(format!(
            "subspace dimensions differ: {} vs {}",
            wa.subspace_dim(),
            wb.subspace_dim()
        )));
    }
    if wa.ambient_dim() != wb.ambient_dim() {
        return Err(Error::DimensionMismatch(format!(
            "ambient dimensions differ: {} vs {}",
            wa.ambient_dim(),
            wb.ambient_dim()
        )));
    }
    let overlap = wa.matrix().transpose() * wb.matrix();
    let residual = wb.matrix() - wa.matrix() * overlap;
    let smax = residual.singular_values().max();
    Ok(smax.clamp(0.0, 1.0))
}

/// Minimum-norm least-squares solution of `Aθ ≈ b` via a rank-revealing SVD.
///
/// Singular values below [`RANK_TOL`] times the largest are truncated, so a
/// rank-deficient system returns the minimizer of smallest 2-norm.
pub fn lstsq(a: &DMatrix<f64>, b: &DVector<f64>) -> Result<DVector<f64>> {
    let (rows, cols) = a.shape();
    if rows != b.len() {
        return Err(Error::DimensionMismatch(format!(
            "A has {rows} rows but b has {} entries",
            b.len()
        )));
    }
    if rows == 0 || cols == 0 {
        return Err(Error::InvalidArgument(
            "lstsq requires at least one row and one column".into(),
        ));
    }
    let svd = a.clone().svd(true, true);
    let u = svd.u.as_ref().expect("svd computed with u");
    let vt = svd.v_t.as_ref().expect("svd computed with v_t");
    let smax = svd.singular_values.max();
    let cutoff = RANK_TOL * smax;
    let mut theta = DVector::zeros(cols);
    for (i, &sigma) in svd.singular_values.iter().enumerate() {
        if sigma > cutoff {
            let coeff = u.column(i).dot(b) / sigma;
            theta.axpy(coeff, &vt.row(i).transpose(), 1.0);
        }
    }
    Ok(theta)
}
