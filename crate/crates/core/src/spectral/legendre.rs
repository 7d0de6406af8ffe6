//! Exact bound states of `-d^2/dy^2 - alpha sech^2(y)`.
//!
//! With `s(s+1) = alpha`, the bound states are `lambda_n = -eps_n^2`,
//! `eps_n = s - ceil(s) + n` for `n = 1..=ceil(s)`, with eigenfunctions
//! `P_s^{eps_n}(tanh y)`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::profile::sech_pow;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BoundState {
    pub n: u32,
    pub epsilon: f64,
    pub lambda: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PoschlTellerSpectrum {
    pub alpha: f64,
    pub s: f64,
    /// Ordered by `n`, so `epsilon` increases and `lambda` decreases.
    pub eigenpairs: Vec<BoundState>,
}

impl PoschlTellerSpectrum {
    /// Eigenvalues sorted ascending (most negative first).
    pub fn eigenvalues(&self) -> Vec<f64> {
        let mut v: Vec<f64> = self.eigenpairs.iter().map(|b| b.lambda).collect();
        v.sort_by(f64::total_cmp);
        v
    }

    /// `-s^2`.
    pub fn least(&self) -> f64 {
        -self.s * self.s
    }
}

/// Positive root of `s(s+1) = alpha`.
pub fn legendre_degree(alpha: f64) -> f64 {
    0.5 * (-1.0 + (1.0 + 4.0 * alpha).sqrt())
}

pub fn poschl_teller_spectrum(alpha: f64) -> PoschlTellerSpectrum {
    assert!(alpha > 0.0, "alpha must be positive");
    let mut s = legendre_degree(alpha);
    // Snap to an integer degree when alpha = m(m+1) up to rounding.
    let nearest = s.round();
    if (s - nearest).abs() <= 1e-12 * s.max(1.0) {
        s = nearest;
    }
    let top = s.ceil();
    let eigenpairs = (1..=top as u32)
        .filter_map(|n| {
            let epsilon = s - top + n as f64;
            (epsilon > 0.0).then_some(BoundState {
                n,
                epsilon,
                lambda: -epsilon * epsilon,
            })
        })
        .collect();
    PoschlTellerSpectrum { alpha, s, eigenpairs }
}

/// Samples `P_s^eps(tanh x)` (Condon–Shortley phase) on `xs`.
///
/// Integer `s` in `1..=3` supports every `1 <= eps <= s`; any `s > 0` supports
/// the ground state `eps = s`, returned as `sech^s(x)`.
pub fn legendre_eigenfunction(s: f64, eps: f64, xs: &[f64]) -> Result<Vec<f64>> {
    let is_int = |v: f64| v.fract() == 0.0;
    if is_int(s) && is_int(eps) && (1.0..=3.0).contains(&s) && eps >= 1.0 && eps <= s {
        let f: fn(f64) -> f64 = match (s as u32, eps as u32) {
            (1, 1) => |x| -sech_pow(x, 1.0),
            (2, 1) => |x| -3.0 * x.tanh() * sech_pow(x, 1.0),
            (2, 2) => |x| 3.0 * sech_pow(x, 2.0),
            (3, 1) => |x| {
                let t = x.tanh();
                -1.5 * (5.0 * t * t - 1.0) * sech_pow(x, 1.0)
            },
            (3, 2) => |x| 15.0 * x.tanh() * sech_pow(x, 2.0),
            (3, 3) => |x| -15.0 * sech_pow(x, 3.0),
            _ => unreachable!(),
        };
        return Ok(xs.iter().map(|&x| f(x)).collect());
    }
    if s > 0.0 && eps == s {
        return Ok(xs.iter().map(|&x| sech_pow(x, s)).collect());
    }
    Err(Error::Unsupported(format!(
        "P_s^eps with s = {s}, eps = {eps}: only integer s <= 3 or the ground state eps = s"
    )))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn alpha_twelve() {
        let sp = poschl_teller_spectrum(12.0);
        assert_eq!(sp.s, 3.0);
        assert_eq!(sp.eigenvalues(), vec![-9.0, -4.0, -1.0]);
    }

    #[test]
    fn alpha_two_and_pt_of_l1() {
        assert_eq!(poschl_teller_spectrum(2.0).eigenvalues(), vec![-1.0]);
        // alpha = 2(p+1)(p+2)/p^2 at p = 2 gives s = (p+2)/p = 2.
        let sp = poschl_teller_spectrum(6.0);
        assert_eq!(sp.eigenvalues(), vec![-4.0, -1.0]);
        assert_eq!(sp.least(), -4.0);
    }

    #[test]
    fn fractional_degree() {
        // s = 1.5: eps = 0.5, 1.5
        let sp = poschl_teller_spectrum(1.5 * 2.5);
        let eps: Vec<f64> = sp.eigenpairs.iter().map(|b| b.epsilon).collect();
        assert_eq!(eps.len(), 2);
        assert!((eps[0] - 0.5).abs() < 1e-12 && (eps[1] - 1.5).abs() < 1e-12);
        for w in sp.eigenpairs.windows(2) {
            assert!(w[1].lambda < w[0].lambda);
        }
        assert!((sp.s * (sp.s + 1.0) - sp.alpha).abs() < 1e-12);
    }

    #[test]
    fn table_values() {
        assert_eq!(legendre_eigenfunction(3.0, 2.0, &[0.0]).unwrap(), vec![0.0]);
        assert_eq!(legendre_eigenfunction(3.0, 3.0, &[0.0]).unwrap(), vec![-15.0]);
        assert_eq!(legendre_eigenfunction(1.5, 1.5, &[0.0]).unwrap(), vec![1.0]);
        assert!(legendre_eigenfunction(1.5, 0.5, &[0.0]).is_err());
        assert!(legendre_eigenfunction(4.0, 1.0, &[0.0]).is_err());
    }

    #[test]
    fn tabulated_functions_are_eigenfunctions() {
        // -psi'' - s(s+1) sech^2 psi = -eps^2 psi, checked by central differences.
        let h = 1e-4;
        for s in 1..=3u32 {
            for eps in 1..=s {
                let alpha = (s * (s + 1)) as f64;
                for i in -30..=30 {
                    let x = i as f64 * 0.1;
                    let f = legendre_eigenfunction(s as f64, eps as f64, &[x - h, x, x + h]).unwrap();
                    let d2 = (f[0] - 2.0 * f[1] + f[2]) / (h * h);
                    let lhs = -d2 - alpha * sech_pow(x, 2.0) * f[1];
                    let rhs = -((eps * eps) as f64) * f[1];
                    assert!((lhs - rhs).abs() < 1e-5, "s={s} eps={eps} x={x}: {lhs} vs {rhs}");
                }
            }
        }
    }
}
