//! Gauss-Hermite quadrature normalized for the standard normal density, plus
//! tensor-product iteration over several dimensions.

use nalgebra::DMatrix;

use crate::error::{Error, Result};
use crate::linalg;

/// A q-point Gauss-Hermite rule in the probabilists' normalization:
/// weights sum to one and integrate polynomials of degree ≤ 2q−1 exactly
/// against the standard normal density.
#[derive(Debug, Clone)]
pub struct GaussHermiteRule {
    nodes: Vec<f64>,
    weights: Vec<f64>,
}

impl GaussHermiteRule {
    /// Builds the rule by eigendecomposition of the Jacobi matrix of the
    /// probabilists' Hermite recurrence (Golub-Welsch). Nodes ascend and are
    /// exactly symmetric about zero.
    pub fn new(order: usize) -> Result<Self> {
        if order == 0 {
            return Err(Error::InvalidArgument("quadrature order must be >= 1".into()));
        }
        if order == 1 {
            return Ok(Self {
                nodes: vec![0.0],
                weights: vec![1.0],
            });
        }
        let mut jacobi = DMatrix::<f64>::zeros(order, order);
        for k in 1..order {
            let beta = (k as f64).sqrt();
            jacobi[(k - 1, k)] = beta;
            jacobi[(k, k - 1)] = beta;
        }
        let spectrum = linalg::sym_eig_desc(&jacobi)?;
        // Descending eigenvalues reversed into ascending nodes; the weight is
        // the squared first component of the normalized eigenvector (the
        // zeroth moment of the normal density is one).
        let mut nodes = Vec::with_capacity(order);
        let mut weights = Vec::with_capacity(order);
        for idx in (0..order).rev() {
            nodes.push(spectrum.eigenvalues()[idx]);
            let first = spectrum.eigenvectors()[(0, idx)];
            weights.push(first * first);
        }
        // Pair up ± nodes so symmetry holds exactly.
        let half = order / 2;
        for i in 0..half {
            let j = order - 1 - i;
            let node = 0.5 * (nodes[j] - nodes[i]);
            nodes[i] = -node;
            nodes[j] = node;
            let w = 0.5 * (weights[i] + weights[j]);
            weights[i] = w;
            weights[j] = w;
        }
        if order % 2 == 1 {
            nodes[half] = 0.0;
        }
        Ok(Self { nodes, weights })
    }

    pub fn order(&self) -> usize {
        self.nodes.len()
    }

    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    /// ∫ g dρ over one dimension.
    pub fn integrate(&self, mut g: impl FnMut(f64) -> f64) -> f64 {
        self.nodes
            .iter()
            .zip(&self.weights)
            .map(|(&x, &w)| w * g(x))
            .sum()
    }
}

/// Visits every node of the d-fold tensor product of `rule` in a fixed
/// odometer order (last coordinate fastest), passing the node coordinates
/// and the product weight.
///
/// The fixed order makes accumulated sums bit-stable.
pub fn tensor_for_each(rule: &GaussHermiteRule, dims: usize, mut visit: impl FnMut(&[f64], f64)) {
    debug_assert!(dims >= 1);
    let q = rule.order();
    let mut idx = vec![0usize; dims];
    let mut point = vec![rule.nodes[0]; dims];
    loop {
        let mut weight = 1.0;
        for d in 0..dims {
            point[d] = rule.nodes[idx[d]];
            weight *= rule.weights[idx[d]];
        }
        visit(&point, weight);
        // odometer increment
        let mut d = dims;
        loop {
            if d == 0 {
                return;
            }
            d -= 1;
            idx[d] += 1;
            if idx[d] < q {
                break;
            }
            idx[d] = 0;
        }
    }
}
