//! Discretised one-dimensional Schrödinger operators
//! `-kinetic d^2/dx^2 + shift + V(x)` on `[-L, L]`.

use std::f64::consts::PI;

use nalgebra::{DMatrix, SymmetricEigen};
use serde::{Deserialize, Serialize};

use super::tridiag::lowest_eigenvalues;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Scheme {
    /// Second-order central differences, Dirichlet ends.
    CentralDifference,
    /// Central differences on `h` and `h/2` combined to cancel the `h^2` error.
    Richardson,
    /// Dense Fourier collocation on the periodic extension.
    Fourier,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct DiscretizationParams {
    /// Domain half-width; `None` picks a default from the operator's length scale.
    pub half_width: Option<f64>,
    /// Number of grid intervals (a power of two, at least 1024).
    pub n_points: usize,
    pub scheme: Scheme,
    /// How many of the lowest eigenvalues to extract.
    pub n_eigs: usize,
    /// Allowed shift of the least eigenvalue under grid doubling, relative to `1 + |lambda|`.
    pub tolerance: f64,
}

impl Default for DiscretizationParams {
    fn default() -> Self {
        Self {
            half_width: None,
            n_points: 2048,
            scheme: Scheme::Richardson,
            n_eigs: 6,
            tolerance: 1e-6,
        }
    }
}

impl DiscretizationParams {
    pub fn validate(&self) -> Result<()> {
        if self.n_points < 1024 || !self.n_points.is_power_of_two() {
            return Err(Error::InvalidGrid(format!(
                "n_points = {} must be a power of two >= 1024",
                self.n_points
            )));
        }
        if self.n_eigs == 0 {
            return Err(Error::InvalidGrid("n_eigs must be positive".into()));
        }
        if let Some(l) = self.half_width {
            if !(l > 0.0) || !l.is_finite() {
                return Err(Error::InvalidGrid(format!("half_width = {l} must be positive")));
            }
        }
        if !(self.tolerance > 0.0) {
            return Err(Error::InvalidGrid("tolerance must be positive".into()));
        }
        Ok(())
    }
}

pub struct SchrodingerOperator<'a> {
    pub kinetic: f64,
    pub shift: f64,
    pub potential: &'a (dyn Fn(f64) -> f64 + Sync),
}

impl<'a> SchrodingerOperator<'a> {
    /// Tridiagonal central-difference matrix with `intervals` cells on `[-L, L]`.
    pub fn tridiagonal(&self, half_width: f64, intervals: usize) -> (Vec<f64>, Vec<f64>) {
        let h = 2.0 * half_width / intervals as f64;
        let c = self.kinetic / (h * h);
        let diag = (1..intervals)
            .map(|i| 2.0 * c + self.shift + (self.potential)(-half_width + i as f64 * h))
            .collect();
        let off = vec![-c; intervals - 2];
        (diag, off)
    }

    pub fn central_difference(&self, half_width: f64, intervals: usize, k: usize) -> Vec<f64> {
        let (d, e) = self.tridiagonal(half_width, intervals);
        lowest_eigenvalues(&d, &e, k)
    }

    pub fn richardson(&self, half_width: f64, intervals: usize, k: usize) -> Vec<f64> {
        let (coarse, fine) = rayon::join(
            || self.central_difference(half_width, intervals, k),
            || self.central_difference(half_width, 2 * intervals, k),
        );
        coarse
            .iter()
            .zip(&fine)
            .map(|(c, f)| (4.0 * f - c) / 3.0)
            .collect()
    }

    /// Dense Fourier-collocation matrix on `n` periodic points of `[-L, L)`.
    pub fn fourier_matrix(&self, half_width: f64, n: usize) -> DMatrix<f64> {
        assert!(n.is_multiple_of(2));
        let length = 2.0 * half_width;
        let h = 2.0 * PI / n as f64;
        let scale = (2.0 * PI / length).powi(2);
        let dx = length / n as f64;
        DMatrix::from_fn(n, n, |i, j| {
            let d2 = if i == j {
                -PI * PI / (3.0 * h * h) - 1.0 / 6.0
            } else {
                let m = i as isize - j as isize;
                let sign = if m.rem_euclid(2) == 0 { 1.0 } else { -1.0 };
                -sign / (2.0 * (m as f64 * h / 2.0).sin().powi(2))
            };
            let mut v = -self.kinetic * scale * d2;
            if i == j {
                v += self.shift + (self.potential)(-half_width + i as f64 * dx);
            }
            v
        })
    }

    pub fn fourier(&self, half_width: f64, n: usize, k: usize) -> Vec<f64> {
        let mut e: Vec<f64> = SymmetricEigen::new(self.fourier_matrix(half_width, n))
            .eigenvalues
            .iter()
            .copied()
            .collect();
        e.sort_by(f64::total_cmp);
        e.truncate(k);
        e
    }

    fn raw(&self, scheme: Scheme, half_width: f64, n: usize, k: usize) -> Vec<f64> {
        match scheme {
            Scheme::CentralDifference => self.central_difference(half_width, n, k),
            Scheme::Richardson => self.richardson(half_width, n, k),
            Scheme::Fourier => self.fourier(half_width, n, k),
        }
    }

    /// Lowest `params.n_eigs` eigenvalues with a refinement check on the least one.
    ///
    /// Finite-difference schemes compare the result on `n_points` against
    /// `2 n_points`; the Fourier scheme compares `n_points / 2` against `n_points`.
    pub fn lowest(&self, half_width: f64, params: &DiscretizationParams) -> Result<Vec<f64>> {
        params.validate()?;
        let n = params.n_points;
        let k = params.n_eigs;
        let (coarse, fine) = match params.scheme {
            Scheme::Fourier => rayon::join(
                || self.raw(Scheme::Fourier, half_width, n / 2, k),
                || self.raw(Scheme::Fourier, half_width, n, k),
            ),
            s => rayon::join(
                || self.raw(s, half_width, n, k),
                || self.raw(s, half_width, 2 * n, k),
            ),
        };
        let shift = (fine[0] - coarse[0]).abs();
        let allowed = params.tolerance * (1.0 + fine[0].abs());
        if !(shift <= allowed) {
            return Err(Error::GridTooCoarse { shift, allowed });
        }
        Ok(fine)
    }
}
