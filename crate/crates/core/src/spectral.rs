//! FFT plans and wavenumbers for a [`Grid1D`].

use std::f64::consts::PI;
use std::fmt;
use std::sync::Arc;

use rustfft::{Fft, FftPlanner};

use crate::grid::Grid1D;
use crate::Complex64;

#[derive(Clone)]
pub struct Spectral {
    n: usize,
    forward: Arc<dyn Fft<f64>>,
    inverse: Arc<dyn Fft<f64>>,
    /// Angular wavenumbers in FFT order, nm⁻¹. The Nyquist mode is negative.
    pub k: Vec<f64>,
}

impl fmt::Debug for Spectral {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Spectral").field("n", &self.n).finish()
    }
}

impl Spectral {
    pub fn new(grid: &Grid1D) -> Self {
        let n = grid.n_points;
        let mut planner = FftPlanner::new();
        let forward = planner.plan_fft_forward(n);
        let inverse = planner.plan_fft_inverse(n);
        let dk = 2.0 * PI / (n as f64 * grid.dx);
        let k = (0..n)
            .map(|j| if j < n / 2 { j as f64 } else { j as f64 - n as f64 } * dk)
            .collect();
        Self { n, forward, inverse, k }
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn forward(&self, data: &mut [Complex64]) {
        self.forward.process(data);
    }

    /// Inverse transform including the 1/n normalisation.
    pub fn inverse(&self, data: &mut [Complex64]) {
        self.inverse.process(data);
        let s = 1.0 / self.n as f64;
        data.iter_mut().for_each(|v| *v *= s);
    }

    /// Spectral first derivative. The Nyquist coefficient is dropped so the
    /// derivative of a real function stays real.
    pub fn derivative(&self, psi: &[Complex64]) -> Vec<Complex64> {
        let mut buf = psi.to_vec();
        self.forward(&mut buf);
        for (j, (c, &k)) in buf.iter_mut().zip(&self.k).enumerate() {
            *c = if j == self.n / 2 { Complex64::new(0.0, 0.0) } else { *c * Complex64::new(0.0, k) };
        }
        self.inverse(&mut buf);
        buf
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn derivative_of_gaussian() {
        let g = Grid1D::new(200.0, 512).unwrap();
        let sp = Spectral::new(&g);
        let s = 20.0;
        let f: Vec<Complex64> = g.x.iter().map(|&x| Complex64::new((-x * x / (2.0 * s * s)).exp(), 0.0)).collect();
        let d = sp.derivative(&f);
        for (j, &x) in g.x.iter().enumerate() {
            let exact = -x / (s * s) * (-x * x / (2.0 * s * s)).exp();
            assert!((d[j].re - exact).abs() < 1e-12, "x={x}");
            assert!(d[j].im.abs() < 1e-12);
        }
    }

    #[test]
    fn round_trip() {
        let g = Grid1D::new(10.0, 256).unwrap();
        let sp = Spectral::new(&g);
        let orig: Vec<Complex64> = (0..256).map(|j| Complex64::new(j as f64, -(j as f64) * 0.5)).collect();
        let mut buf = orig.clone();
        sp.forward(&mut buf);
        sp.inverse(&mut buf);
        for (a, b) in buf.iter().zip(&orig) {
            assert!((a - b).norm() < 1e-9);
        }
    }
}
