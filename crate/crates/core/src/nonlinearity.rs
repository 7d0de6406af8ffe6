//! Homogeneous polynomial nonlinearities `H(u, v)` and proportional ratios.
//!
//! `H(u, v) = sum_i C_i u^i v^(p+2-i)` with `i = 0..=p+2`. A proportional
//! solitary wave `(phi, mu phi)` exists only for ratios `mu` solving
//! `H_v(1, mu) = mu H_u(1, mu)`, and its speed-profile is governed by
//! `H_u(1, mu)`, which must be positive.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::roots::{horner, real_roots, RootSet};

/// Residual allowed for a reported ratio, relative to the polynomial scale.
pub const RATIO_RESIDUAL_TOL: f64 = 1e-10;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawNonlinearity")]
pub struct HomogeneousNonlinearity {
    p: u32,
    coeffs: Vec<f64>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawNonlinearity {
    p: u32,
    coeffs: Vec<f64>,
}

impl TryFrom<RawNonlinearity> for HomogeneousNonlinearity {
    type Error = Error;
    fn try_from(raw: RawNonlinearity) -> Result<Self> {
        Self::new(raw.p, raw.coeffs)
    }
}

impl HomogeneousNonlinearity {
    /// `coeffs[i]` multiplies `u^i v^(p+2-i)`.
    pub fn new(p: u32, coeffs: Vec<f64>) -> Result<Self> {
        if p < 1 {
            return Err(Error::InvalidNonlinearity("p must be at least 1".into()));
        }
        if coeffs.len() != p as usize + 3 {
            return Err(Error::InvalidNonlinearity(format!(
                "expected {} coefficients for p = {p}, got {}",
                p + 3,
                coeffs.len()
            )));
        }
        if coeffs.iter().any(|c| !c.is_finite()) {
            return Err(Error::InvalidNonlinearity("coefficients must be finite".into()));
        }
        if coeffs.iter().all(|&c| c == 0.0) {
            return Err(Error::InvalidNonlinearity("all coefficients vanish".into()));
        }
        Ok(Self { p, coeffs })
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    /// Total degree `p + 2`.
    pub fn degree(&self) -> usize {
        self.p as usize + 2
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    /// `c * H`.
    pub fn scaled(&self, c: f64) -> Self {
        Self {
            p: self.p,
            coeffs: self.coeffs.iter().map(|x| x * c).collect(),
        }
    }

    pub fn eval(&self, u: f64, v: f64) -> f64 {
        let n = self.degree();
        self.coeffs
            .iter()
            .enumerate()
            .map(|(i, &c)| c * pw(u, i) * pw(v, n - i))
            .sum()
    }

    /// `(H_u, H_v)`.
    pub fn grad(&self, u: f64, v: f64) -> (f64, f64) {
        let n = self.degree();
        let mut hu = 0.0;
        let mut hv = 0.0;
        for (i, &c) in self.coeffs.iter().enumerate() {
            if c == 0.0 {
                continue;
            }
            if i >= 1 {
                hu += i as f64 * c * pw(u, i - 1) * pw(v, n - i);
            }
            if i < n {
                hv += (n - i) as f64 * c * pw(u, i) * pw(v, n - i - 1);
            }
        }
        (hu, hv)
    }

    /// `[[H_uu, H_uv], [H_uv, H_vv]]`.
    pub fn hessian(&self, u: f64, v: f64) -> [[f64; 2]; 2] {
        let n = self.degree();
        let (mut huu, mut huv, mut hvv) = (0.0, 0.0, 0.0);
        for (i, &c) in self.coeffs.iter().enumerate() {
            if c == 0.0 {
                continue;
            }
            let j = n - i;
            if i >= 2 {
                huu += (i * (i - 1)) as f64 * c * pw(u, i - 2) * pw(v, j);
            }
            if i >= 1 && j >= 1 {
                huv += (i * j) as f64 * c * pw(u, i - 1) * pw(v, j - 1);
            }
            if j >= 2 {
                hvv += (j * (j - 1)) as f64 * c * pw(u, i) * pw(v, j - 2);
            }
        }
        [[huu, huv], [huv, hvv]]
    }

    /// Ascending coefficients of `g(mu) = H_v(1, mu) - mu H_u(1, mu)`.
    pub fn proportionality_poly(&self) -> Vec<f64> {
        let n = self.degree();
        let c = |i: isize| -> f64 {
            if i < 0 || i as usize > n {
                0.0
            } else {
                self.coeffs[i as usize]
            }
        };
        (0..=n)
            .map(|k| {
                let k = k as isize;
                let n = n as isize;
                (k + 1) as f64 * c(n - 1 - k) - (n + 1 - k) as f64 * c(n + 1 - k)
            })
            .collect()
    }

    /// `|g(mu)|` divided by `sum |g_k| |mu|^k`.
    pub fn ratio_residual(&self, mu: f64) -> f64 {
        let g = self.proportionality_poly();
        let (val, _) = horner(&g, mu);
        let scale: f64 = g
            .iter()
            .enumerate()
            .map(|(k, c)| c.abs() * mu.abs().powi(k as i32))
            .sum();
        if scale == 0.0 {
            0.0
        } else {
            val.abs() / scale
        }
    }

    /// Example 1: `b1 (u^(p+2) + v^(p+2)) / ((p+1)(p+2)) + b2 (u^(p+1) v + u v^(p+1)) / (p+1)`.
    pub fn coupled_power(p: u32, b1: f64, b2: f64) -> Result<Self> {
        let n = p as usize + 2;
        let mut c = vec![0.0; n + 1];
        let pure = b1 / ((p as f64 + 1.0) * (p as f64 + 2.0));
        let mixed = b2 / (p as f64 + 1.0);
        c[n] += pure;
        c[0] += pure;
        c[n - 1] += mixed;
        c[1] += mixed;
        Self::new(p, c)
    }

    /// Example 2: `u^(q+1) v^(q+1) / (q+1)`, degree `2q + 2`.
    pub fn symmetric_product(q: u32) -> Result<Self> {
        if q < 1 {
            return Err(Error::InvalidNonlinearity("q must be at least 1".into()));
        }
        let p = 2 * q;
        let mut c = vec![0.0; p as usize + 3];
        c[q as usize + 1] = 1.0 / (q as f64 + 1.0);
        Self::new(p, c)
    }

    /// Example 3 (decoupled): `(a u^(p+2) + b v^(p+2)) / (p+2)`.
    pub fn decoupled(p: u32, a: f64, b: f64) -> Result<Self> {
        let n = p as usize + 2;
        let mut c = vec![0.0; n + 1];
        c[n] = a / n as f64;
        c[0] = b / n as f64;
        Self::new(p, c)
    }

    /// Example 4: `u^4/4 + beta u^2 v^2 / 2 + v^4/4`.
    pub fn cubic_coupling(beta: f64) -> Result<Self> {
        Self::new(2, vec![0.25, 0.0, beta / 2.0, 0.0, 0.25])
    }
}

#[inline]
fn pw(x: f64, k: usize) -> f64 {
    x.powi(k as i32)
}

/// A real root `mu` of the proportionality condition.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ProportionalRatio {
    pub mu: f64,
    /// `H_u(1, mu)`.
    pub hu: f64,
    pub admissible: bool,
}

impl ProportionalRatio {
    pub fn at(h: &HomogeneousNonlinearity, mu: f64) -> Self {
        let hu = h.grad(1.0, mu).0;
        Self {
            mu,
            hu,
            admissible: hu > 0.0,
        }
    }
}

/// All real ratios, sorted ascending.
///
/// Returns `EmptySpectrumOfRoots` when the condition has no real solution and
/// `ContinuumOfRatios` when it holds identically.
pub fn find_ratios(h: &HomogeneousNonlinearity) -> Result<Vec<ProportionalRatio>> {
    match real_roots(&h.proportionality_poly()) {
        RootSet::Everywhere => Err(Error::ContinuumOfRatios),
        RootSet::Finite(roots) if roots.is_empty() => Err(Error::EmptySpectrumOfRoots),
        RootSet::Finite(roots) => Ok(roots
            .into_iter()
            .map(|mu| ProportionalRatio::at(h, mu))
            .collect()),
    }
}

/// Ratio for a user-supplied `mu`, checked against the proportionality condition.
pub fn ratio_for_mu(h: &HomogeneousNonlinearity, mu: f64) -> Result<ProportionalRatio> {
    let residual = h.ratio_residual(mu);
    if !(residual <= 1e-8) {
        return Err(Error::InvalidNonlinearity(format!(
            "mu = {mu} does not satisfy H_v(1,mu) = mu H_u(1,mu) (relative residual {residual:e})"
        )));
    }
    Ok(ProportionalRatio::at(h, mu))
}

/// Residuals of the Euler identities for `H_u` and `H_v` at `(1, mu)`:
/// `H_uu + mu H_uv - (p+1) H_u` and `H_uv + mu H_vv - (p+1) H_v`.
///
/// At a proportional ratio `H_v = mu H_u`, so the second reads
/// `H_uv + mu H_vv = (p+1) mu H_u`.
pub fn hessian_identities_residual(h: &HomogeneousNonlinearity, mu: f64) -> (f64, f64) {
    let (hu, hv) = h.grad(1.0, mu);
    let [[huu, huv], [_, hvv]] = h.hessian(1.0, mu);
    let k = h.p() as f64 + 1.0;
    (huu + mu * huv - k * hu, huv + mu * hvv - k * hv)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn example1_unit() -> HomogeneousNonlinearity {
        HomogeneousNonlinearity::coupled_power(1, 1.0, 1.0).unwrap()
    }

    #[test]
    fn rejects_bad_input() {
        assert!(HomogeneousNonlinearity::new(0, vec![1.0, 0.0]).is_err());
        assert!(HomogeneousNonlinearity::new(1, vec![1.0, 0.0]).is_err());
        assert!(HomogeneousNonlinearity::new(1, vec![0.0; 4]).is_err());
        assert!(HomogeneousNonlinearity::new(1, vec![f64::NAN, 0.0, 0.0, 1.0]).is_err());
    }

    #[test]
    fn eval_examples() {
        let h4 = HomogeneousNonlinearity::cubic_coupling(1.0).unwrap();
        assert!((h4.eval(1.0, 1.0) - 1.0).abs() < 1e-15);
        assert_eq!(example1_unit().eval(0.0, 0.0), 0.0);
        // u^2 v^2 / 2 at (2, 3): 4 * 9 / 2
        let h2 = HomogeneousNonlinearity::symmetric_product(1).unwrap();
        assert!((h2.eval(2.0, 3.0) - 18.0).abs() < 1e-12);
    }

    #[test]
    fn hessian_of_symmetric_product() {
        let h = HomogeneousNonlinearity::symmetric_product(1).unwrap();
        // H = u^2 v^2 / 2: H_uu = v^2, H_uv = 2uv, H_vv = u^2.
        assert_eq!(h.hessian(1.0, 1.0), [[1.0, 2.0], [2.0, 1.0]]);
        assert_eq!(h.grad(0.0, 0.0), (0.0, 0.0));
    }

    #[test]
    fn proportionality_poly_example4() {
        let beta = 3.0;
        let h = HomogeneousNonlinearity::cubic_coupling(beta).unwrap();
        // (beta - 1) mu (1 - mu^2)
        let g = h.proportionality_poly();
        let want = [0.0, beta - 1.0, 0.0, 1.0 - beta, 0.0];
        for (a, b) in g.iter().zip(want) {
            assert!((a - b).abs() < 1e-14);
        }
    }

    #[test]
    fn ratios_example4() {
        let h = HomogeneousNonlinearity::cubic_coupling(0.5).unwrap();
        let r = find_ratios(&h).unwrap();
        let mus: Vec<f64> = r.iter().map(|x| x.mu).collect();
        assert_eq!(mus.len(), 3);
        for (m, w) in mus.iter().zip([-1.0, 0.0, 1.0]) {
            assert!((m - w).abs() < 1e-12);
        }
        assert!(r.iter().all(|x| x.admissible));
    }

    #[test]
    fn ratios_symmetric_product() {
        for q in 1..=4 {
            let h = HomogeneousNonlinearity::symmetric_product(q).unwrap();
            let r = find_ratios(&h).unwrap();
            let one = r.iter().find(|x| (x.mu - 1.0).abs() < 1e-12).unwrap();
            assert!(one.admissible);
            let zero = r.iter().find(|x| x.mu == 0.0).unwrap();
            assert!(!zero.admissible);
        }
    }

    #[test]
    fn ratios_decoupled_match_factoring() {
        // B mu^(p+1) = A mu: mu = 0 or mu^p = A/B.
        let h = HomogeneousNonlinearity::decoupled(2, 1.0, 1.0).unwrap();
        let mus: Vec<f64> = find_ratios(&h).unwrap().iter().map(|r| r.mu).collect();
        assert_eq!(mus.len(), 3);
        for (m, w) in mus.iter().zip([-1.0, 0.0, 1.0]) {
            assert!((m - w).abs() < 1e-12);
        }
        let h = HomogeneousNonlinearity::decoupled(3, 2.0, 0.5).unwrap();
        let mus: Vec<f64> = find_ratios(&h).unwrap().iter().map(|r| r.mu).collect();
        assert_eq!(mus.len(), 2);
        assert_eq!(mus[0], 0.0);
        assert!((mus[1] - 4.0_f64.cbrt()).abs() < 1e-12);
    }

    #[test]
    fn continuum_and_empty() {
        // (u^2 + v^2)^2 / 4 satisfies the condition for every mu.
        let h = HomogeneousNonlinearity::new(2, vec![0.25, 0.0, 0.5, 0.0, 0.25]).unwrap();
        assert_eq!(find_ratios(&h), Err(Error::ContinuumOfRatios));
        let h = HomogeneousNonlinearity::new(1, vec![0.0, -1.0, 0.0, 1.0 / 3.0]).unwrap();
        // H = u^3/3 - u v^2: H_v = -2mu, mu H_u = mu(1 - mu^2): g = -3mu + mu^3 -> roots 0, +-sqrt3
        assert_eq!(find_ratios(&h).unwrap().len(), 3);
        let h = HomogeneousNonlinearity::new(1, vec![1.0, 0.0, 1.0, 0.0]).unwrap();
        // H = v^3 + u^2 v: H_v = 3mu^2 + 1, mu H_u = 2mu^2 -> g = 1 + mu^2 > 0
        assert_eq!(find_ratios(&h), Err(Error::EmptySpectrumOfRoots));
    }

    #[test]
    fn identities_on_monomials() {
        let h = HomogeneousNonlinearity::new(3, vec![0.0, 0.0, 0.0, 0.0, 0.0, 1.0]).unwrap();
        let (a, b) = hessian_identities_residual(&h, 0.0);
        assert_eq!((a, b), (0.0, 0.0));
        let (a, b) = hessian_identities_residual(&example1_unit(), 1.0);
        assert!(a.abs() < 1e-14 && b.abs() < 1e-14);
    }

    #[test]
    fn ratio_form_of_second_identity() {
        let h = HomogeneousNonlinearity::cubic_coupling(2.5).unwrap();
        for r in find_ratios(&h).unwrap() {
            let [[_, huv], [_, hvv]] = h.hessian(1.0, r.mu);
            let res = huv + r.mu * hvv - 3.0 * r.mu * r.hu;
            assert!(res.abs() < 1e-12, "mu = {}: {res}", r.mu);
        }
    }

    fn arb_nonlinearity() -> impl Strategy<Value = HomogeneousNonlinearity> {
        (1u32..=6).prop_flat_map(|p| {
            proptest::collection::vec(-2.0f64..2.0, p as usize + 3).prop_filter_map(
                "nonzero",
                move |c| HomogeneousNonlinearity::new(p, c).ok(),
            )
        })
    }

    fn fd_grad(h: &HomogeneousNonlinearity, u: f64, v: f64, eps: f64) -> (f64, f64) {
        (
            (h.eval(u + eps, v) - h.eval(u - eps, v)) / (2.0 * eps),
            (h.eval(u, v + eps) - h.eval(u, v - eps)) / (2.0 * eps),
        )
    }

    proptest! {
        #[test]
        fn homogeneity(h in arb_nonlinearity(), u in -2.0f64..2.0, v in -2.0f64..2.0, t in -3.0f64..3.0) {
            let lhs = h.eval(t * u, t * v);
            let rhs = t.powi(h.degree() as i32) * h.eval(u, v);
            prop_assert!((lhs - rhs).abs() <= 1e-10 * (1.0 + rhs.abs()));
        }

        #[test]
        fn euler_identities_hold_for_every_mu(h in arb_nonlinearity(), mu in -3.0f64..3.0) {
            let (a, b) = hessian_identities_residual(&h, mu);
            let (hu, hv) = h.grad(1.0, mu);
            let [[huu, huv], [_, hvv]] = h.hessian(1.0, mu);
            let scale = [1.0, hu, hv, huu, huv * mu, hvv * mu].iter().fold(0.0_f64, |m, x| m.max(x.abs()));
            prop_assert!(a.abs() <= 1e-10 * scale, "a = {a}");
            prop_assert!(b.abs() <= 1e-10 * scale, "b = {b}");
        }

        #[test]
        fn derivatives_match_finite_differences(h in arb_nonlinearity(), u in -2.0f64..2.0, v in -2.0f64..2.0) {
            let eps = 1e-5;
            let (gu, gv) = h.grad(u, v);
            let (fu, fv) = fd_grad(&h, u, v, eps);
            let scale = 1.0 + gu.abs().max(gv.abs());
            prop_assert!((gu - fu).abs() <= 1e-6 * scale);
            prop_assert!((gv - fv).abs() <= 1e-6 * scale);
            let hs = h.hessian(u, v);
            let gp = h.grad(u + eps, v);
            let gm = h.grad(u - eps, v);
            let gvp = h.grad(u, v + eps);
            let gvm = h.grad(u, v - eps);
            let fd = [
                [(gp.0 - gm.0) / (2.0 * eps), (gvp.0 - gvm.0) / (2.0 * eps)],
                [(gp.1 - gm.1) / (2.0 * eps), (gvp.1 - gvm.1) / (2.0 * eps)],
            ];
            let hscale = 1.0 + hs.iter().flatten().fold(0.0_f64, |m, x| m.max(x.abs()));
            for i in 0..2 {
                for j in 0..2 {
                    prop_assert!((hs[i][j] - fd[i][j]).abs() <= 1e-6 * hscale);
                }
            }
            prop_assert_eq!(hs[0][1], hs[1][0]);
        }

        #[test]
        fn found_ratios_satisfy_condition(h in arb_nonlinearity()) {
            if let Ok(ratios) = find_ratios(&h) {
                for r in ratios {
                    prop_assert!(h.ratio_residual(r.mu) <= RATIO_RESIDUAL_TOL, "mu = {}", r.mu);
                    prop_assert_eq!(r.admissible, r.hu > 0.0);
                }
            }
        }
    }
}
