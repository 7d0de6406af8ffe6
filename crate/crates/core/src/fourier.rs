//! Uniform periodic grid with FFT-based differentiation.

use std::f64::consts::PI;
use std::fmt;
use std::sync::Arc;

use rustfft::num_complex::Complex64;
use rustfft::{Fft, FftPlanner};

#[derive(Clone)]
pub struct SpectralGrid {
    n: usize,
    x_min: f64,
    length: f64,
    k: Vec<f64>,
    fwd: Arc<dyn Fft<f64>>,
    inv: Arc<dyn Fft<f64>>,
}

impl fmt::Debug for SpectralGrid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("SpectralGrid")
            .field("n", &self.n)
            .field("x_min", &self.x_min)
            .field("length", &self.length)
            .finish()
    }
}

impl SpectralGrid {
    /// `n` points on `[x_min, x_min + length)`.
    pub fn new(n: usize, x_min: f64, length: f64) -> Self {
        assert!(n >= 2 && n.is_multiple_of(2), "grid size must be even");
        let mut planner = FftPlanner::new();
        let fwd = planner.plan_fft_forward(n);
        let inv = planner.plan_fft_inverse(n);
        let base = 2.0 * PI / length;
        let k = (0..n)
            .map(|i| {
                let m = if i <= n / 2 { i as f64 } else { i as f64 - n as f64 };
                m * base
            })
            .collect();
        Self { n, x_min, length, k, fwd, inv }
    }

    /// Symmetric grid on `[-half_width, half_width)`.
    pub fn centered(n: usize, half_width: f64) -> Self {
        Self::new(n, -half_width, 2.0 * half_width)
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn length(&self) -> f64 {
        self.length
    }

    pub fn dx(&self) -> f64 {
        self.length / self.n as f64
    }

    pub fn x(&self, i: usize) -> f64 {
        self.x_min + i as f64 * self.dx()
    }

    pub fn points(&self) -> Vec<f64> {
        (0..self.n).map(|i| self.x(i)).collect()
    }

    pub fn wavenumbers(&self) -> &[f64] {
        &self.k
    }

    /// Index of the Nyquist mode.
    pub fn nyquist(&self) -> usize {
        self.n / 2
    }

    pub fn forward(&self, f: &[f64]) -> Vec<Complex64> {
        let mut buf: Vec<Complex64> = f.iter().map(|&v| Complex64::new(v, 0.0)).collect();
        self.fwd.process(&mut buf);
        buf
    }

    pub fn forward_in_place(&self, buf: &mut [Complex64]) {
        self.fwd.process(buf);
    }

    /// Inverse transform including the `1/n` normalisation; returns the real part.
    pub fn inverse_real(&self, spec: &[Complex64]) -> Vec<f64> {
        let mut buf = spec.to_vec();
        self.inv.process(&mut buf);
        let s = 1.0 / self.n as f64;
        buf.iter().map(|c| c.re * s).collect()
    }

    pub fn inverse_in_place(&self, buf: &mut [Complex64]) {
        self.inv.process(buf);
        let s = 1.0 / self.n as f64;
        for c in buf.iter_mut() {
            *c *= s;
        }
    }

    /// Spectral symbol of `d^order/dx^order`; odd orders drop the Nyquist mode.
    pub fn derivative_symbol(&self, i: usize, order: u32) -> Complex64 {
        if order % 2 == 1 && i == self.nyquist() {
            return Complex64::new(0.0, 0.0);
        }
        Complex64::new(0.0, self.k[i]).powu(order)
    }

    pub fn derivative(&self, f: &[f64], order: u32) -> Vec<f64> {
        let mut spec = self.forward(f);
        for (i, c) in spec.iter_mut().enumerate() {
            *c *= self.derivative_symbol(i, order);
        }
        self.inverse_real(&spec)
    }

    /// Trapezoid (spectrally accurate for periodic data) integral of samples.
    pub fn integrate(&self, f: &[f64]) -> f64 {
        f.iter().sum::<f64>() * self.dx()
    }
}
