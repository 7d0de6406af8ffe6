//! Translation-minimised H^1 distance on a periodic grid.
//!
//! With unnormalised FFTs, `||f||_{H^1}^2 = (dx/N) sum_k (1 + k^2) |f_k|^2`, and a
//! translate `f(. + s)` has coefficients `f_k e^{iks}`. So
//! `d(s)^2 = |U|^2 + |Phi|^2 - 2 Re sum_k w_k U_k conj(Phi_k) e^{iks}`;
//! every grid shift at once is one inverse FFT.

use rustfft::num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::fourier::SpectralGrid;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ModulatedDistance {
    pub distance: f64,
    /// Minimising `s` in `||U(. + s) - Phi||`, wrapped to `[-length/2, length/2)`.
    pub shift: f64,
}

/// Unnormalised spectra of both components.
#[derive(Debug, Clone)]
pub struct FieldSpectrum {
    pub u: Vec<Complex64>,
    pub v: Vec<Complex64>,
}

impl FieldSpectrum {
    pub fn of(grid: &SpectralGrid, u: &[f64], v: &[f64]) -> Self {
        Self {
            u: grid.forward(u),
            v: grid.forward(v),
        }
    }

    pub fn h1_norm_sq(&self, grid: &SpectralGrid) -> f64 {
        let k = grid.wavenumbers();
        let s: f64 = (0..k.len())
            .map(|i| (1.0 + k[i] * k[i]) * (self.u[i].norm_sqr() + self.v[i].norm_sqr()))
            .sum();
        s * grid.dx() / grid.len() as f64
    }
}

pub fn h1_norm(grid: &SpectralGrid, u: &[f64], v: &[f64]) -> f64 {
    FieldSpectrum::of(grid, u, v).h1_norm_sq(grid).sqrt()
}

struct Correlator<'a> {
    grid: &'a SpectralGrid,
    field: &'a FieldSpectrum,
    reference: &'a FieldSpectrum,
    /// `w_k U_k conj(Phi_k)`, both components summed.
    cross: Vec<Complex64>,
    base: f64,
}

impl<'a> Correlator<'a> {
    fn new(grid: &'a SpectralGrid, field: &'a FieldSpectrum, reference: &'a FieldSpectrum) -> Self {
        let k = grid.wavenumbers();
        let nyq = grid.nyquist();
        let cross = (0..k.len())
            .map(|i| {
                let w = 1.0 + k[i] * k[i];
                let c = field.u[i] * reference.u[i].conj() + field.v[i] * reference.v[i].conj();
                // A real translate keeps the Nyquist mode real; only its cosine part survives.
                if i == nyq {
                    Complex64::new(w * c.re, 0.0)
                } else {
                    w * c
                }
            })
            .collect();
        let base = field.h1_norm_sq(grid) + reference.h1_norm_sq(grid);
        Self { grid, field, reference, cross, base }
    }

    fn scale(&self) -> f64 {
        self.grid.dx() / self.grid.len() as f64
    }

    /// `d(s)^2` summed directly, free of the cancellation in the expanded form.
    fn at(&self, s: f64) -> f64 {
        let k = self.grid.wavenumbers();
        let nyq = self.grid.nyquist();
        let sum: f64 = (0..k.len())
            .map(|i| {
                let ks = k[i] * s;
                let phase = if i == nyq {
                    Complex64::new(ks.cos(), 0.0)
                } else {
                    Complex64::new(ks.cos(), ks.sin())
                };
                let du = self.field.u[i] * phase - self.reference.u[i];
                let dv = self.field.v[i] * phase - self.reference.v[i];
                (1.0 + k[i] * k[i]) * (du.norm_sqr() + dv.norm_sqr())
            })
            .sum();
        sum * self.scale()
    }

    /// `d(s_j)^2` at every grid shift `s_j = j dx`.
    fn scan(&self) -> Vec<f64> {
        // sum_k c_k e^{i k s_j} = N * ifft(c)_j
        let mut buf = self.cross.clone();
        self.grid.inverse_in_place(&mut buf);
        let n = self.grid.len() as f64;
        buf.iter()
            .map(|c| (self.base - 2.0 * c.re * n * self.scale()).max(0.0))
            .collect()
    }
}

fn wrap(s: f64, length: f64) -> f64 {
    (s + 0.5 * length).rem_euclid(length) - 0.5 * length
}

/// Minimises over shifts: coarse scan on grid shifts, then golden-section
/// refinement to `1e-10 dx` around the best one.
pub fn modulated_distance(
    grid: &SpectralGrid,
    field: &FieldSpectrum,
    reference: &FieldSpectrum,
) -> ModulatedDistance {
    let corr = Correlator::new(grid, field, reference);
    let coarse = corr.scan();
    let (j, _) = coarse
        .iter()
        .enumerate()
        .min_by(|a, b| a.1.total_cmp(b.1))
        .expect("nonempty grid");
    let dx = grid.dx();
    let mut a = j as f64 * dx - dx;
    let mut b = j as f64 * dx + dx;
    let g = 0.5 * (5f64.sqrt() - 1.0);
    let mut c = b - g * (b - a);
    let mut d = a + g * (b - a);
    let mut fc = corr.at(c);
    let mut fd = corr.at(d);
    while b - a > 1e-10 * dx {
        if fc < fd {
            b = d;
            d = c;
            fd = fc;
            c = b - g * (b - a);
            fc = corr.at(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + g * (b - a);
            fd = corr.at(d);
        }
    }
    let s = 0.5 * (a + b);
    let best = corr.at(s).min(corr.at(j as f64 * dx));
    ModulatedDistance {
        distance: best.sqrt(),
        shift: wrap(s, grid.length()),
    }
}

/// `||U(. + s) - Phi||_{H^1}` at a fixed shift.
pub fn distance_at_shift(
    grid: &SpectralGrid,
    field: &FieldSpectrum,
    reference: &FieldSpectrum,
    s: f64,
) -> f64 {
    Correlator::new(grid, field, reference).at(s).sqrt()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bump(x: f64) -> f64 {
        1.0 / (x.cosh() * x.cosh())
    }

    #[test]
    fn recovers_translation() {
        let g = SpectralGrid::centered(512, 30.0);
        let xs = g.points();
        let phi: Vec<f64> = xs.iter().map(|&x| bump(x)).collect();
        let shifted: Vec<f64> = xs.iter().map(|&x| bump(x - 3.7)).collect();
        let zero = vec![0.0; xs.len()];
        let r = FieldSpectrum::of(&g, &phi, &zero);
        let f = FieldSpectrum::of(&g, &shifted, &zero);
        let m = modulated_distance(&g, &f, &r);
        assert!(m.distance < 1e-8, "{}", m.distance);
        assert!((m.shift - 3.7).abs() < 1e-6, "{}", m.shift);
    }

    #[test]
    fn scaled_profile_minimised_at_zero() {
        let g = SpectralGrid::centered(512, 30.0);
        let xs = g.points();
        let phi: Vec<f64> = xs.iter().map(|&x| bump(x)).collect();
        let psi: Vec<f64> = phi.iter().map(|&y| 0.5 * y).collect();
        let big: Vec<f64> = phi.iter().map(|&y| 1.05 * y).collect();
        let bigv: Vec<f64> = psi.iter().map(|&y| 1.05 * y).collect();
        let r = FieldSpectrum::of(&g, &phi, &psi);
        let f = FieldSpectrum::of(&g, &big, &bigv);
        let m = modulated_distance(&g, &f, &r);
        let want = 0.05 * h1_norm(&g, &phi, &psi);
        assert!((m.distance - want).abs() < 1e-10 * want.max(1.0));
        assert!(m.shift.abs() < 1e-6);
    }

    #[test]
    fn h1_norm_parseval() {
        // ||sech^2||^2 = 4/3, ||(sech^2)'||^2 = 16/15
        let g = SpectralGrid::centered(1024, 30.0);
        let phi: Vec<f64> = g.points().iter().map(|&x| bump(x)).collect();
        let zero = vec![0.0; phi.len()];
        let n = h1_norm(&g, &phi, &zero);
        assert!((n * n - (4.0 / 3.0 + 16.0 / 15.0)).abs() < 1e-12);
    }
}
