//! Closed-form proportional solitary wave `Phi = (phi, mu phi)` with
//! `phi(x) = A^(1/p) sech^(2/p)(B x)`, `A = (p+2)(omega-1)/(2 H_u(1,mu))`,
//! `B = (p/2) sqrt((omega-1)/omega)`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct WaveProfile {
    pub p: u32,
    pub omega: f64,
    pub hu: f64,
    pub mu: f64,
    pub amplitude: f64,
    pub width: f64,
}

/// `ln cosh(y)` without overflow.
pub fn ln_cosh(y: f64) -> f64 {
    let a = y.abs();
    a + (-2.0 * a).exp().ln_1p() - std::f64::consts::LN_2
}

/// `sech(y)^k` for real `k >= 0`.
pub fn sech_pow(y: f64, k: f64) -> f64 {
    (-k * ln_cosh(y)).exp()
}

impl WaveProfile {
    pub fn new(p: u32, omega: f64, hu: f64, mu: f64) -> Result<Self> {
        if !(omega > 1.0) || !omega.is_finite() {
            return Err(Error::InvalidSpeed(omega));
        }
        if !(hu > 0.0) {
            return Err(Error::NotAdmissible { mu, hu });
        }
        let pf = p as f64;
        Ok(Self {
            p,
            omega,
            hu,
            mu,
            amplitude: (pf + 2.0) * (omega - 1.0) / (2.0 * hu),
            width: 0.5 * pf * ((omega - 1.0) / omega).sqrt(),
        })
    }

    fn pf(&self) -> f64 {
        self.p as f64
    }

    /// `A^(1/p)`, the peak height of `phi`.
    pub fn peak(&self) -> f64 {
        self.amplitude.powf(1.0 / self.pf())
    }

    pub fn phi(&self, x: f64) -> f64 {
        self.peak() * sech_pow(self.width * x, 2.0 / self.pf())
    }

    /// `-(2/p) A^(1/p) B sinh(Bx) sech^(2/p+1)(Bx)`.
    pub fn dphi(&self, x: f64) -> f64 {
        let y = self.width * x;
        -(2.0 / self.pf()) * self.peak() * self.width * y.tanh() * sech_pow(y, 2.0 / self.pf())
    }

    pub fn d2phi(&self, x: f64) -> f64 {
        let y = self.width * x;
        let k = 2.0 / self.pf();
        let t = y.tanh();
        let s2 = sech_pow(y, 2.0);
        -k * self.peak() * self.width * self.width * sech_pow(y, k) * (s2 - k * t * t)
    }

    /// `-omega phi'' + (omega-1) phi - H_u(1,mu) phi^(p+1)`.
    pub fn ode_residual(&self, x: f64) -> f64 {
        let phi = self.phi(x);
        -self.omega * self.d2phi(x) + (self.omega - 1.0) * phi
            - self.hu * phi.powi(self.p as i32 + 1)
    }

    /// The potential `phi_0 = (p+1)(p+2)(omega-1)/2 sech^2(Bx)`, equal to `H_u(1,mu) (p+1) phi^p`.
    pub fn phi0(&self, x: f64) -> f64 {
        let pf = self.pf();
        0.5 * (pf + 1.0) * (pf + 2.0) * (self.omega - 1.0) * sech_pow(self.width * x, 2.0)
    }

    /// Half-width beyond which `phi < tol * peak`; `phi` decays like `exp(-2 B |x| / p)`.
    pub fn decay_half_width(&self, tol: f64) -> f64 {
        let rate = 2.0 * self.width / self.pf();
        (-(tol / 2f64.powf(2.0 / self.pf())).ln()) / rate
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ode_residual_small() {
        for &(p, omega, hu) in &[(1, 2.0, 2.0), (2, 1.5, 1.0), (3, 3.0, 0.7), (5, 1.2, 1.0), (7, 10.0, 3.0)] {
            let w = WaveProfile::new(p, omega, hu, 0.5).unwrap();
            for i in -40..=40 {
                let x = i as f64 * 0.25 / w.width;
                let r = w.ode_residual(x);
                assert!(r.abs() <= 1e-8 * (1.0 + w.peak()), "p={p} x={x} r={r}");
            }
        }
    }

    #[test]
    fn derivative_matches_difference() {
        let w = WaveProfile::new(3, 2.0, 1.5, 0.0).unwrap();
        let h = 1e-5;
        for i in -20..=20 {
            let x = i as f64 * 0.3;
            let fd = (w.phi(x + h) - w.phi(x - h)) / (2.0 * h);
            assert!((fd - w.dphi(x)).abs() < 1e-8);
            let fd2 = (w.dphi(x + h) - w.dphi(x - h)) / (2.0 * h);
            assert!((fd2 - w.d2phi(x)).abs() < 1e-8);
        }
    }

    #[test]
    fn potential_is_hessian_scale() {
        let w = WaveProfile::new(4, 1.7, 0.8, 0.0).unwrap();
        for &x in &[0.0, 0.7, -2.3, 5.0] {
            let lhs = w.phi0(x);
            let rhs = 5.0 * w.hu * w.phi(x).powi(4);
            assert!((lhs - rhs).abs() <= 1e-13 * (1.0 + lhs));
        }
    }

    #[test]
    fn rejects_bad_speed() {
        assert!(WaveProfile::new(1, 1.0, 1.0, 0.0).is_err());
        assert!(WaveProfile::new(1, 2.0, -1.0, 0.0).is_err());
    }

    #[test]
    fn ln_cosh_large_argument() {
        assert!((ln_cosh(1000.0) - (1000.0 - std::f64::consts::LN_2)).abs() < 1e-9);
        assert_eq!(sech_pow(0.0, 3.0), 1.0);
    }
}
