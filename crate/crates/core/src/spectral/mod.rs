//! Point spectra of the linearised operators around a proportional wave.
//!
//! After the orthogonal change of variables that diagonalises `M`, the
//! linearisation splits into
//!
//! ```text
//! L1 = -omega d^2/dx^2 + (omega - 1) - phi_0(x)
//! L2 = -omega d^2/dx^2 + (omega - 1) - det(M) phi_0(x)
//! ```
//!
//! with `phi_0 = (p+1)(p+2)(omega-1)/2 sech^2(Bx)`. Substituting `y = Bx`
//! turns both into Pöschl–Teller problems, so their bound states are known
//! exactly; this module computes them in closed form and by discretisation.

mod legendre;
mod operator;
pub mod tridiag;

use nalgebra::{DMatrix, SymmetricEigen};
use serde::{Deserialize, Serialize};

pub use legendre::{
    legendre_degree, legendre_eigenfunction, poschl_teller_spectrum, BoundState,
    PoschlTellerSpectrum,
};
pub use operator::{DiscretizationParams, SchrodingerOperator, Scheme};

use crate::criterion::build_m;
use crate::error::{Error, Result};
use crate::fourier::SpectralGrid;
use crate::nonlinearity::{HomogeneousNonlinearity, ProportionalRatio};
use crate::profile::WaveProfile;

/// `B = (p/2) sqrt((omega-1)/omega)`.
pub fn width(p: u32, omega: f64) -> f64 {
    0.5 * p as f64 * ((omega - 1.0) / omega).sqrt()
}

/// `phi_0(x)`; independent of `H`.
pub fn phi0(p: u32, omega: f64, x: f64) -> f64 {
    let pf = p as f64;
    0.5 * (pf + 1.0) * (pf + 2.0) * (omega - 1.0) * crate::profile::sech_pow(width(p, omega) * x, 2.0)
}

/// Default half-width `max(20, 12/B)`.
pub fn default_half_width(p: u32, omega: f64) -> f64 {
    (12.0 / width(p, omega)).max(20.0)
}

fn check_speed(omega: f64) -> Result<()> {
    if omega > 1.0 && omega.is_finite() {
        Ok(())
    } else {
        Err(Error::InvalidSpeed(omega))
    }
}

/// Lowest eigenvalues of `-omega d^2/dx^2 + (omega-1) - scale phi_0(x)`.
///
/// `scale = 1` is `L1`; `scale = det M` is `L2`.
pub fn numeric_spectrum(
    potential_scale: f64,
    p: u32,
    omega: f64,
    grid: &DiscretizationParams,
) -> Result<Vec<f64>> {
    check_speed(omega)?;
    let b = width(p, omega);
    let half_width = grid.half_width.unwrap_or_else(|| default_half_width(p, omega));
    if half_width < 10.0 / b {
        return Err(Error::InvalidGrid(format!(
            "half_width = {half_width} is below the decay margin 10/B = {}",
            10.0 / b
        )));
    }
    let potential = move |x: f64| -potential_scale * phi0(p, omega, x);
    let op = SchrodingerOperator {
        kinetic: omega,
        shift: omega - 1.0,
        potential: &potential,
    };
    op.lowest(half_width, grid)
}

/// `1/(p+1)`: `L2 > 0` exactly when `det M` lies below it.
pub fn l2_positivity_threshold(p: u32) -> f64 {
    1.0 / (p as f64 + 1.0)
}

/// Exact bound states of `-omega d^2/dx^2 + (omega-1) - scale phi_0`, ascending.
///
/// Empty when `scale <= 0` (no attractive well).
pub fn analytic_bound_states(potential_scale: f64, p: u32, omega: f64) -> Vec<f64> {
    if potential_scale <= 0.0 {
        return Vec::new();
    }
    let pf = p as f64;
    let alpha = 2.0 * (pf + 1.0) * (pf + 2.0) * potential_scale / (pf * pf);
    let factor = pf * pf * (omega - 1.0) / 4.0;
    let mut v: Vec<f64> = poschl_teller_spectrum(alpha)
        .eigenpairs
        .iter()
        .map(|b| factor * (4.0 / (pf * pf) - b.epsilon * b.epsilon))
        .collect();
    v.sort_by(f64::total_cmp);
    v
}

/// `-p(p+4)(omega-1)/4`.
pub fn analytic_l1_least(p: u32, omega: f64) -> f64 {
    let pf = p as f64;
    -pf * (pf + 4.0) * (omega - 1.0) / 4.0
}

/// `||L1 phi'|| / ||phi'||` with Fourier differentiation on a periodic grid.
pub fn zero_mode_residual(p: u32, omega: f64, half_width: f64, n: usize) -> Result<f64> {
    check_speed(omega)?;
    // phi' direction does not depend on H_u or mu.
    let w = WaveProfile::new(p, omega, 1.0, 0.0)?;
    let grid = SpectralGrid::centered(n, half_width);
    let xs = grid.points();
    let dphi: Vec<f64> = xs.iter().map(|&x| w.dphi(x)).collect();
    let d3 = grid.derivative(&dphi, 2);
    let mut num = 0.0;
    let mut den = 0.0;
    for (i, &x) in xs.iter().enumerate() {
        let r = -omega * d3[i] + (omega - 1.0) * dphi[i] - w.phi0(x) * dphi[i];
        num += r * r;
        den += dphi[i] * dphi[i];
    }
    Ok((num / den).sqrt())
}

/// Domain and resolution used for the zero-mode check.
///
/// `phi'` decays like `exp(-2B|x|/p)`; the box is wide enough for `e^-36`, since
/// the periodic wrap-around jump is amplified by `k^2`. Poles of `sech` sit at
/// distance `pi/(2B)` from the real axis, so `dx = 0.1/B` resolves it to rounding.
pub fn zero_mode_grid(p: u32, omega: f64) -> (f64, usize) {
    let b = width(p, omega);
    let half_width = 18.0 * p as f64 / b;
    let n = ((2.0 * half_width * b / 0.1).ceil() as usize).next_power_of_two();
    (half_width, n)
}

/// Spectrum of the coupled `2x2` operator
/// `(-omega d^2 + omega - 1) I - Hess H(phi, mu phi)` against the merged spectra
/// of `L1` and `L2`, on the same central-difference grid.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BlockComparison {
    pub block: Vec<f64>,
    pub split: Vec<f64>,
    pub max_deviation: f64,
}

pub fn block_comparison(
    h: &HomogeneousNonlinearity,
    ratio: &ProportionalRatio,
    omega: f64,
    half_width: f64,
    intervals: usize,
    k: usize,
) -> Result<BlockComparison> {
    check_speed(omega)?;
    let m = build_m(h, ratio)?;
    let p = h.p();
    let w = WaveProfile::new(p, omega, m.hu, m.mu)?;
    let n = intervals - 1;
    let dx = 2.0 * half_width / intervals as f64;
    let c = omega / (dx * dx);

    let mut block = DMatrix::<f64>::zeros(2 * n, 2 * n);
    for i in 0..n {
        let x = -half_width + (i + 1) as f64 * dx;
        let phi = w.phi(x);
        let hess = h.hessian(phi, m.mu * phi);
        for a in 0..2 {
            for b in 0..2 {
                block[(a * n + i, b * n + i)] = -hess[a][b];
            }
            block[(a * n + i, a * n + i)] += 2.0 * c + omega - 1.0;
            if i + 1 < n {
                block[(a * n + i, a * n + i + 1)] = -c;
                block[(a * n + i + 1, a * n + i)] = -c;
            }
        }
    }
    let mut block_eigs: Vec<f64> = SymmetricEigen::new(block).eigenvalues.iter().copied().collect();
    block_eigs.sort_by(f64::total_cmp);
    block_eigs.truncate(k);

    let l1_pot = |x: f64| -phi0(p, omega, x);
    let l2_pot = |x: f64| -m.det * phi0(p, omega, x);
    let l1 = SchrodingerOperator { kinetic: omega, shift: omega - 1.0, potential: &l1_pot };
    let l2 = SchrodingerOperator { kinetic: omega, shift: omega - 1.0, potential: &l2_pot };
    let mut split = l1.central_difference(half_width, intervals, k);
    split.extend(l2.central_difference(half_width, intervals, k));
    split.sort_by(f64::total_cmp);
    split.truncate(k);

    let max_deviation = block_eigs
        .iter()
        .zip(&split)
        .map(|(a, b)| (a - b).abs())
        .fold(0.0, f64::max);
    Ok(BlockComparison {
        block: block_eigs,
        split,
        max_deviation,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpectrumReport {
    pub p: u32,
    pub omega: f64,
    pub mu: f64,
    pub det_m: f64,
    pub analytic_l1_least: f64,
    pub analytic_l1_eigs: Vec<f64>,
    pub analytic_l2_eigs: Vec<f64>,
    /// Numerical eigenvalues of `L1` below the continuum edge.
    pub numeric_l1_eigs: Vec<f64>,
    /// Numerical eigenvalues of `L2` below the continuum edge.
    pub numeric_l2_eigs: Vec<f64>,
    /// Least numerical eigenvalue of `L2`, continuum approximations included.
    pub numeric_l2_least: f64,
    /// `omega - 1`.
    pub cont_edge: f64,
    pub zero_mode_residual: f64,
    pub block_max_deviation: f64,
    pub negative_count: usize,
    pub zero_is_simple: bool,
    pub l2_positive: bool,
    /// Exactly one negative eigenvalue, a simple zero, and a positive continuum edge.
    pub spectral_conditions_hold: bool,
}

/// Eigenvalues within this distance of zero count as the translation mode.
pub fn zero_tolerance(omega: f64) -> f64 {
    1e-6 * omega.max(1.0)
}

pub fn theorem2_report(
    h: &HomogeneousNonlinearity,
    ratio: &ProportionalRatio,
    omega: f64,
    grid: &DiscretizationParams,
) -> Result<SpectrumReport> {
    check_speed(omega)?;
    let m = build_m(h, ratio)?;
    let p = h.p();
    let edge = omega - 1.0;

    let (l1, l2) = rayon::join(
        || numeric_spectrum(1.0, p, omega, grid),
        || numeric_spectrum(m.det, p, omega, grid),
    );
    let (l1, l2) = (l1?, l2?);
    let below = |v: &[f64]| v.iter().copied().filter(|&x| x < edge).collect::<Vec<f64>>();
    let numeric_l1_eigs = below(&l1);
    let numeric_l2_eigs = below(&l2);

    let (zw, zn) = zero_mode_grid(p, omega);
    let zero_mode = zero_mode_residual(p, omega, zw, zn)?;

    let half_width = grid.half_width.unwrap_or_else(|| default_half_width(p, omega));
    let block = block_comparison(h, ratio, omega, half_width, 256, 2 * grid.n_eigs)?;

    let tol = zero_tolerance(omega);
    let point: Vec<f64> = numeric_l1_eigs.iter().chain(&numeric_l2_eigs).copied().collect();
    let negative_count = point.iter().filter(|&&x| x < -tol).count();
    let zero_is_simple = point.iter().filter(|&&x| x.abs() <= tol).count() == 1;
    let numeric_l2_least = l2[0];
    let l2_positive = numeric_l2_least > tol;

    Ok(SpectrumReport {
        p,
        omega,
        mu: m.mu,
        det_m: m.det,
        analytic_l1_least: analytic_l1_least(p, omega),
        analytic_l1_eigs: analytic_bound_states(1.0, p, omega),
        analytic_l2_eigs: analytic_bound_states(m.det, p, omega),
        numeric_l1_eigs,
        numeric_l2_eigs,
        numeric_l2_least,
        cont_edge: edge,
        zero_mode_residual: zero_mode,
        block_max_deviation: block.max_deviation,
        negative_count,
        zero_is_simple,
        l2_positive,
        spectral_conditions_hold: negative_count == 1 && zero_is_simple && l2_positive && edge > 0.0,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn analytic_l1_matches_formula() {
        for &(p, omega) in &[(1u32, 2.0), (2, 1.5), (3, 3.0), (5, 1.2)] {
            let v = analytic_bound_states(1.0, p, omega);
            assert!((v[0] - analytic_l1_least(p, omega)).abs() < 1e-12);
            // Second bound state of L1 is the translation mode.
            assert!(v[1].abs() < 1e-12, "p={p}: {v:?}");
        }
    }

    #[test]
    fn threshold_values() {
        assert_eq!(l2_positivity_threshold(1), 0.5);
        assert_eq!(l2_positivity_threshold(4), 0.2);
    }

    #[test]
    fn l2_least_crosses_zero_at_threshold() {
        for p in [1u32, 2, 3, 5, 8] {
            let t = l2_positivity_threshold(p);
            let at = analytic_bound_states(t, p, 1.5);
            assert!(at[0].abs() < 1e-12, "p={p}: {}", at[0]);
            assert!(analytic_bound_states(t * 0.99, p, 1.5)[0] > 0.0);
            assert!(analytic_bound_states(t * 1.01, p, 1.5)[0] < 0.0);
        }
    }

    #[test]
    fn least_l1_eigenvalue_numeric() {
        let grid = DiscretizationParams::default();
        let e = numeric_spectrum(1.0, 1, 2.0, &grid).unwrap();
        assert!((e[0] + 1.25).abs() < 1e-6, "{}", e[0]);
    }

    #[test]
    fn free_operator_is_at_edge() {
        let grid = DiscretizationParams::default();
        let e = numeric_spectrum(0.0, 2, 1.5, &grid).unwrap();
        // Dirichlet box lifts the edge by omega (pi / 2L)^2.
        let l = default_half_width(2, 1.5);
        let want = 0.5 + 1.5 * (std::f64::consts::PI / (2.0 * l)).powi(2);
        assert!((e[0] - want).abs() < 1e-8, "{} vs {want}", e[0]);
    }

    #[test]
    fn rejects_narrow_domain() {
        let grid = DiscretizationParams { half_width: Some(1.0), ..Default::default() };
        assert!(matches!(numeric_spectrum(1.0, 1, 2.0, &grid), Err(Error::InvalidGrid(_))));
        assert!(matches!(
            numeric_spectrum(1.0, 1, 1.0, &DiscretizationParams::default()),
            Err(Error::InvalidSpeed(_))
        ));
    }
}
