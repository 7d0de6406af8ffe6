//! `d(omega) = Theta(Phi_omega) + omega Omega(Phi_omega)` and the sign of `d''`.
//!
//! `d'(omega) = Omega(Phi_omega)`, and for the closed-form wave
//!
//! ```text
//! Omega(Phi_omega) = th1 (w-1)^(2/p) sqrt(w/(w-1)) + th2 (w-1)^(2/p) sqrt((w-1)/w)
//! ```
//!
//! so `d''(w) = (w-1)^(2/p-3/2) w^(-3/2) q(w)` with `q` quadratic.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fourier::SpectralGrid;
use crate::nonlinearity::HomogeneousNonlinearity;
use crate::profile::{sech_pow, WaveProfile};
use crate::quadrature::{integrate, QuadratureOptions};

/// Smallest speed offset `omega - 1` accepted by [`d_second`].
pub const MIN_SPEED_OFFSET: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ConservedPair {
    /// `1/2 int U.U + U_x.U_x`
    pub omega: f64,
    /// `-1/2 int U.U + 2 H(U)`
    pub theta: f64,
}

/// Both conserved functionals of a periodic two-component field, with spectral
/// derivatives and the trapezoid rule.
pub fn conserved(
    u: &[f64],
    v: &[f64],
    grid: &SpectralGrid,
    h: &HomogeneousNonlinearity,
) -> ConservedPair {
    let ux = grid.derivative(u, 1);
    let vx = grid.derivative(v, 1);
    let mut om = 0.0;
    let mut th = 0.0;
    for i in 0..u.len() {
        let mass = u[i] * u[i] + v[i] * v[i];
        om += mass + ux[i] * ux[i] + vx[i] * vx[i];
        th += mass + 2.0 * h.eval(u[i], v[i]);
    }
    ConservedPair {
        omega: 0.5 * om * grid.dx(),
        theta: -0.5 * th * grid.dx(),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MomentConstants {
    pub theta1: f64,
    pub theta2: f64,
    pub p: u32,
    pub mu: f64,
    pub hu: f64,
    /// `int sech^(4/p)`
    pub i1: f64,
    /// `int sinh^2 sech^(4/p+2)`
    pub i2: f64,
}

fn half_line(f: impl Fn(f64) -> f64, p: u32) -> Result<f64> {
    // Integrands decay like exp(-4y/p); at Y = 10p + 10 the tail is below 1e-17.
    let y = 10.0 * p as f64 + 10.0;
    let opts = QuadratureOptions::default();
    let body = integrate(&f, 0.0, y, opts)?;
    let tail = (f(y) * p as f64 / 4.0).abs();
    if tail > 1e-12 * body.value.abs() {
        return Err(Error::QuadratureNotConverged { estimate: tail });
    }
    Ok(2.0 * body.value)
}

/// `(I1, I2)` over the real line.
pub fn sech_integrals(p: u32) -> Result<(f64, f64)> {
    let k = 4.0 / p as f64;
    let i1 = half_line(|y| sech_pow(y, k), p)?;
    let i2 = half_line(
        |y| {
            let t = y.tanh();
            t * t * sech_pow(y, k)
        },
        p,
    )?;
    Ok((i1, i2))
}

pub fn moment_constants(p: u32, mu: f64, hu: f64) -> Result<MomentConstants> {
    if p == 0 {
        return Err(Error::InvalidNonlinearity("p must be >= 1".into()));
    }
    if !(hu > 0.0) {
        return Err(Error::NotAdmissible { mu, hu });
    }
    let pf = p as f64;
    let (i1, i2) = sech_integrals(p)?;
    let k = 0.5 * (1.0 + mu * mu) * ((pf + 2.0) / (2.0 * hu)).powf(2.0 / pf);
    Ok(MomentConstants {
        theta1: k * (2.0 / pf) * i1,
        theta2: k * (2.0 / pf) * i2,
        p,
        mu,
        hu,
        i1,
        i2,
    })
}

impl MomentConstants {
    /// `(a, b, c)` with `q(w) = a w^2 + b w + c`.
    pub fn q_coeffs(&self) -> (f64, f64, f64) {
        let pf = self.p as f64;
        let (t1, t2) = (self.theta1, self.theta2);
        (
            (2.0 / pf) * (t1 + t2),
            -(0.5 * t1 + 2.0 * t2 / pf - 0.5 * t2),
            -0.5 * t2,
        )
    }

    pub fn q(&self, omega: f64) -> f64 {
        let (a, b, c) = self.q_coeffs();
        (a * omega + b) * omega + c
    }

    /// `2 th1 (1/p - 1/4)`
    pub fn q_at_one(&self) -> f64 {
        2.0 * self.theta1 * (1.0 / self.p as f64 - 0.25)
    }

    /// `d'(omega) = Omega(Phi_omega)` in closed form.
    pub fn omega_functional(&self, omega: f64) -> f64 {
        let e = 2.0 / self.p as f64;
        let r = (omega - 1.0) / omega;
        (omega - 1.0).powf(e) * (self.theta1 / r.sqrt() + self.theta2 * r.sqrt())
    }
}

pub fn q(omega: f64, mc: &MomentConstants) -> f64 {
    mc.q(omega)
}

pub fn d_second(omega: f64, mc: &MomentConstants) -> Result<f64> {
    if !(omega >= 1.0 + MIN_SPEED_OFFSET) || !omega.is_finite() {
        return Err(Error::InvalidSpeed(omega));
    }
    let e = 2.0 / mc.p as f64 - 1.5;
    Ok((omega - 1.0).powf(e) * omega.powf(-1.5) * mc.q(omega))
}

/// Root of `q` above 1 when `p > 4`; `None` otherwise.
pub fn omega_threshold(mc: &MomentConstants) -> Option<f64> {
    if mc.p <= 4 {
        return None;
    }
    let (a, b, c) = mc.q_coeffs();
    let disc = (b * b - 4.0 * a * c).max(0.0).sqrt();
    // a > 0 > c: exactly one positive root. Pick the form without cancellation.
    let root = if b <= 0.0 {
        (-b + disc) / (2.0 * a)
    } else {
        2.0 * c / (-b - disc)
    };
    (root > 1.0).then_some(root)
}

/// `Omega(Phi_omega)` by direct quadrature of the closed-form wave in `x`.
pub fn omega_by_quadrature(omega: f64, p: u32, mu: f64, hu: f64) -> Result<f64> {
    let w = WaveProfile::new(p, omega, hu, mu)?;
    let x_max = w.decay_half_width(1e-12) * 1.5;
    let f = |x: f64| {
        let a = w.phi(x);
        let b = w.dphi(x);
        a * a + b * b
    };
    let opts = QuadratureOptions { abs_tol: 0.0, ..Default::default() };
    // Split at a few widths so the adaptive rule sees the peak.
    let knee = (4.0 / w.width).min(x_max);
    let inner = integrate(f, 0.0, knee, opts)?;
    let outer = integrate(f, knee, x_max, opts)?;
    Ok((1.0 + mu * mu) * (inner.value + outer.value))
}

/// Richardson-extrapolated central difference of `omega_by_quadrature`; an oracle for [`d_second`]
/// independent of the `theta` constants.
pub fn d_second_fd(omega: f64, p: u32, mu: f64, hu: f64, h: f64) -> Result<f64> {
    if !(omega - h > 1.0) || !(h > 0.0) {
        return Err(Error::InvalidSpeed(omega - h));
    }
    let om = |w: f64| omega_by_quadrature(w, p, mu, hu);
    let diff = |h: f64| -> Result<f64> { Ok((om(omega + h)? - om(omega - h)?) / (2.0 * h)) };
    let coarse = diff(h)?;
    let fine = diff(0.5 * h)?;
    // Error of the step-h estimate is about 4/3 of the coarse-fine gap; the
    // gate is on that, the returned value is the extrapolation.
    let relative = (4.0 / 3.0) * (coarse - fine).abs() / fine.abs().max(f64::MIN_POSITIVE);
    if relative > 1e-4 {
        return Err(Error::StepTooLarge { relative });
    }
    Ok((4.0 * fine - coarse) / 3.0)
}

/// One row of a `d''` table.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DSecondSample {
    pub omega: f64,
    pub q: f64,
    pub d_second: f64,
}

pub fn d_second_table(mc: &MomentConstants, omegas: &[f64]) -> Result<Vec<DSecondSample>> {
    omegas
        .iter()
        .map(|&omega| {
            Ok(DSecondSample {
                omega,
                q: mc.q(omega),
                d_second: d_second(omega, mc)?,
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn closed_form_integrals() {
        let (i1, i2) = sech_integrals(2).unwrap();
        assert!((i1 - 2.0).abs() < 1e-12);
        assert!((i2 - 2.0 / 3.0).abs() < 1e-12);
        let (i1, i2) = sech_integrals(1).unwrap();
        assert!((i1 - 4.0 / 3.0).abs() < 1e-12);
        assert!((i2 - 4.0 / 15.0).abs() < 1e-12);
        let (i1, i2) = sech_integrals(4).unwrap();
        assert!((i1 - PI).abs() < 1e-12);
        assert!((i2 - PI / 2.0).abs() < 1e-12);
    }

    #[test]
    fn frozen_integrals() {
        let (i1, i2) = sech_integrals(3).unwrap();
        assert!((i1 - 2.5871095592297912).abs() < 1e-11);
        assert!((i2 - 1.1087612396699107).abs() < 1e-11);
        let (i1, i2) = sech_integrals(5).unwrap();
        assert!((i1 - 3.679093980405881).abs() < 1e-11);
        assert!((i2 - 2.04394110022549).abs() < 1e-11);
    }

    #[test]
    fn theta_form_matches_quadrature() {
        // Independent value at p = 1, mu = 1, hu = 2, omega = 2.
        let mc = moment_constants(1, 1.0, 2.0).unwrap();
        assert!((mc.omega_functional(2.0) - 2.333452377915607).abs() < 1e-10);
        for p in [1u32, 2, 3, 5] {
            let mc = moment_constants(p, 0.3, 1.7).unwrap();
            for w in [1.1, 2.0, 10.0] {
                let quad = omega_by_quadrature(w, p, 0.3, 1.7).unwrap();
                let form = mc.omega_functional(w);
                assert!(((quad - form) / quad).abs() < 1e-8, "p={p} w={w}: {quad} vs {form}");
            }
        }
    }

    #[test]
    fn q_at_one_identity() {
        for p in 1..=6 {
            let mc = moment_constants(p, 0.0, 1.0).unwrap();
            let rel = (mc.q(1.0) - mc.q_at_one()).abs() / mc.q_at_one().abs().max(1e-300);
            assert!(rel < 1e-10 || (p == 4 && mc.q(1.0).abs() < 1e-14), "p={p}");
        }
    }

    #[test]
    fn threshold_values() {
        let frozen = [(5u32, 1.1147572655570153), (6, 1.213525491562421), (7, 1.300914175521223)];
        for (p, want) in frozen {
            let got = omega_threshold(&moment_constants(p, 0.0, 1.0).unwrap()).unwrap();
            assert!((got - want).abs() < 1e-9, "p={p}: {got}");
        }
        for p in 1..=4 {
            assert!(omega_threshold(&moment_constants(p, 0.0, 1.0).unwrap()).is_none());
        }
    }

    #[test]
    fn threshold_independent_of_mu_and_hu() {
        let base = omega_threshold(&moment_constants(6, 0.0, 1.0).unwrap()).unwrap();
        for hu in [0.5, 1.0, 4.0] {
            for mu in [-2.0, 0.5] {
                let w = omega_threshold(&moment_constants(6, mu, hu).unwrap()).unwrap();
                assert!((w - base).abs() <= 1e-10);
            }
        }
    }

    #[test]
    fn sign_pattern() {
        for p in 1..=4 {
            let mc = moment_constants(p, 0.0, 1.0).unwrap();
            for i in 1..=500 {
                let w = 1.0 + 0.1 * i as f64;
                assert!(d_second(w, &mc).unwrap() > 0.0, "p={p} w={w}");
            }
        }
        let mc = moment_constants(5, 0.0, 1.0).unwrap();
        let wp = omega_threshold(&mc).unwrap();
        assert!(d_second(0.5 * (1.0 + wp), &mc).unwrap() < 0.0);
        assert!(d_second(wp + 0.01, &mc).unwrap() > 0.0);
        assert!(d_second(wp, &mc).unwrap().abs() < 1e-10);
    }

    #[test]
    fn finite_difference_oracle() {
        let mc = moment_constants(1, 0.0, 1.0).unwrap();
        let fd = d_second_fd(2.0, 1, 0.0, 1.0, 1e-3).unwrap();
        let cf = d_second(2.0, &mc).unwrap();
        assert!(((fd - cf) / cf).abs() < 1e-5, "{fd} vs {cf}");
        assert!(matches!(d_second_fd(1.0005, 1, 0.0, 1.0, 1e-3), Err(Error::InvalidSpeed(_))));
        assert!(matches!(d_second(1.0, &mc), Err(Error::InvalidSpeed(_))));
    }

    #[test]
    fn conserved_of_zero_and_scalar_limit() {
        let h = HomogeneousNonlinearity::new(1, vec![0.0, 0.0, 0.0, 1.0]).unwrap();
        let g = SpectralGrid::centered(512, 40.0);
        let zero = vec![0.0; 512];
        let c = conserved(&zero, &zero, &g, &h);
        assert_eq!((c.omega, c.theta), (0.0, 0.0));
        // Scalar wave (mu = 0): Omega agrees with the one-component quadrature.
        let w = WaveProfile::new(1, 2.0, 3.0, 0.0).unwrap();
        let u: Vec<f64> = g.points().iter().map(|&x| w.phi(x)).collect();
        let c = conserved(&u, &zero, &g, &h);
        let want = omega_by_quadrature(2.0, 1, 0.0, 3.0).unwrap();
        assert!((c.omega - want).abs() < 1e-10 * want, "{} vs {want}", c.omega);
    }
}
