//! Seeded random designs of experiments: Latin hypercube, box-scaled, and
//! standard Gaussian point sets.
//!
//! All generators run on ChaCha8, a portable counter-style stream cipher RNG
//! with a fixed algorithm, so a (seed, M, m) triple reproduces the same design
//! bit-for-bit on every platform.

use nalgebra::DMatrix;
use rand::prelude::*;
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::error::{Error, Result};

/// The sampling domain a design was drawn from.
#[derive(Debug, Clone, PartialEq)]
pub enum Domain {
    /// The unit hypercube [0, 1]^m.
    UnitCube,
    /// A per-coordinate box [lo_j, hi_j].
    Box { lo: Vec<f64>, hi: Vec<f64> },
    /// Independent standard normals per coordinate.
    StandardGaussian,
}

/// An M×m design of experiments together with its domain and seed.
#[derive(Debug, Clone)]
pub struct Design {
    points: DMatrix<f64>,
    domain: Domain,
    seed: u64,
}

impl Design {
    /// The M×m point matrix, one sample per row.
    pub fn points(&self) -> &DMatrix<f64> {
        &self.points
    }

    pub fn domain(&self) -> &Domain {
        &self.domain
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    /// Number of samples M.
    pub fn len(&self) -> usize {
        self.points.nrows()
    }

    pub fn is_empty(&self) -> bool {
        self.points.nrows() == 0
    }

    /// Input dimension m.
    pub fn dim(&self) -> usize {
        self.points.ncols()
    }

    /// The first `count` rows as a new design.
    ///
    /// This is a plain row slice: a prefix of a Latin hypercube design does
    /// not itself satisfy the Latin property, and no re-stratification is
    /// attempted.
    pub fn prefix(&self, count: usize) -> Result<Design> {
        if count == 0 || count > self.len() {
            return Err(Error::InvalidArgument(format!(
                "prefix length {count} outside 1..={}",
                self.len()
            )));
        }
        Ok(Design {
            points: self.points.rows(0, count).into_owned(),
            domain: self.domain.clone(),
            seed: self.seed,
        })
    }
}

/// Latin hypercube design on [0, 1]^m.
///
/// Per coordinate, the M strata [i/M, (i+1)/M) each receive exactly one
/// sample; strata are assigned by an independent uniform permutation per
/// coordinate and points are placed uniformly within their stratum.
pub fn latin_hypercube(count: usize, dim: usize, seed: u64) -> Result<Design> {
    if count == 0 {
        return Err(Error::InvalidArgument("sample count must be >= 1".into()));
    }
    if dim == 0 {
        return Err(Error::InvalidArgument("dimension must be >= 1".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut points = DMatrix::zeros(count, dim);
    let mut strata: Vec<usize> = (0..count).collect();
    for j in 0..dim {
        strata.shuffle(&mut rng);
        for i in 0..count {
            let jitter: f64 = rng.random();
            points[(i, j)] = (strata[i] as f64 + jitter) / count as f64;
        }
    }
    Ok(Design {
        points,
        domain: Domain::UnitCube,
        seed,
    })
}

/// Affinely maps a unit-cube design onto the box [lo, hi] per coordinate.
pub fn scale_to_box(design: &Design, lo: &[f64], hi: &[f64]) -> Result<Design> {
    let dim = design.dim();
    if lo.len() != dim || hi.len() != dim {
        return Err(Error::DimensionMismatch(format!(
            "bounds of length {}/{} for a {dim}-dimensional design",
            lo.len(),
            hi.len()
        )));
    }
    for j in 0..dim {
        if !(lo[j] < hi[j]) {
            return Err(Error::InvalidArgument(format!(
                "lo >= hi in coordinate {j}: {} >= {}",
                lo[j], hi[j]
            )));
        }
    }
    if design.domain != Domain::UnitCube {
        return Err(Error::InvalidArgument(
            "scale_to_box expects a unit-cube design".into(),
        ));
    }
    let mut points = design.points.clone();
    for j in 0..dim {
        for i in 0..points.nrows() {
            points[(i, j)] = lo[j] + points[(i, j)] * (hi[j] - lo[j]);
        }
    }
    Ok(Design {
        points,
        domain: Domain::Box {
            lo: lo.to_vec(),
            hi: hi.to_vec(),
        },
        seed: design.seed,
    })
}

/// M×m design with i.i.d. standard normal entries.
pub fn gaussian_design(count: usize, dim: usize, seed: u64) -> Result<Design> {
    if count == 0 {
        return Err(Error::InvalidArgument("sample count must be >= 1".into()));
    }
    if dim == 0 {
        return Err(Error::InvalidArgument("dimension must be >= 1".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut points = DMatrix::zeros(count, dim);
    for i in 0..count {
        for j in 0..dim {
            points[(i, j)] = rng.sample::<f64, _>(StandardNormal);
        }
    }
    Ok(Design {
        points,
        domain: Domain::StandardGaussian,
        seed,
    })
}
