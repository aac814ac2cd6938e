use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Minimum number of grid points accepted by [`Grid1D::new`].
pub const MIN_POINTS: usize = 256;

/// Uniform periodic grid on `[-extent, extent)`.
///
/// Samples are `x_j = -extent + j·dx` for `j = 0..n_points`, so the left edge
/// is included and the right edge is its periodic image. With an even number
/// of points the sample `x = 0` sits at index `n_points / 2`.
#[derive(Debug, Clone, PartialEq)]
pub struct Grid1D {
    pub n_points: usize,
    pub extent: f64,
    pub dx: f64,
    pub x: Vec<f64>,
}

/// Serializable grid description.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GridSpec {
    pub extent_nm: f64,
    pub n_points: usize,
}

impl Default for GridSpec {
    fn default() -> Self {
        Self { extent_nm: 600.0, n_points: 2048 }
    }
}

impl GridSpec {
    pub fn build(&self) -> Result<Grid1D> {
        Grid1D::new(self.extent_nm, self.n_points)
    }
}

impl Grid1D {
    /// Any power-of-two size is accepted here; scenarios additionally require
    /// at least [`MIN_POINTS`].
    pub fn new(extent: f64, n_points: usize) -> Result<Self> {
        if !n_points.is_power_of_two() || n_points < 2 {
            return Err(Error::InvalidGrid(format!(
                "n_points = {n_points} is not a power of two"
            )));
        }
        if !(extent.is_finite() && extent > 0.0) {
            return Err(Error::InvalidGrid(format!("extent must be > 0, got {extent}")));
        }
        let dx = 2.0 * extent / n_points as f64;
        let x = (0..n_points).map(|j| -extent + j as f64 * dx).collect();
        Ok(Self { n_points, extent, dx, x })
    }

    pub fn len(&self) -> usize {
        self.n_points
    }

    pub fn is_empty(&self) -> bool {
        self.n_points == 0
    }

    /// Index of the sample at x = 0.
    pub fn origin_index(&self) -> usize {
        self.n_points / 2
    }

    /// Trapezoid/rectangle quadrature on the periodic grid.
    pub fn integrate(&self, f: impl Iterator<Item = f64>) -> f64 {
        f.sum::<f64>() * self.dx
    }
}
