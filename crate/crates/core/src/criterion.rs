//! The criterion matrix `M = Hess H(1, mu) / ((p+1) H_u(1, mu))` and the
//! stability verdict built on `det M < 1/(p+1)`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::nonlinearity::{HomogeneousNonlinearity, ProportionalRatio};

pub type Mat2 = [[f64; 2]; 2];

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CriterionMatrix {
    pub p: u32,
    pub mu: f64,
    pub hu: f64,
    pub entries: Mat2,
    pub det: f64,
    /// Always `(1, det)`: `(1, mu)` is an eigenvector with eigenvalue 1.
    pub eigvals: (f64, f64),
    /// Columns are unit eigenvectors for `eigvals.0` and `eigvals.1`.
    pub orthogonal: Mat2,
}

/// Builds `M` for an admissible ratio.
pub fn build_m(h: &HomogeneousNonlinearity, ratio: &ProportionalRatio) -> Result<CriterionMatrix> {
    let mu = ratio.mu;
    let hu = h.grad(1.0, mu).0;
    if !(hu > 0.0) {
        return Err(Error::NotAdmissible { mu, hu });
    }
    let p = h.p();
    let k = 1.0 / ((p as f64 + 1.0) * hu);
    let hess = h.hessian(1.0, mu);
    let entries = [
        [k * hess[0][0], k * hess[0][1]],
        [k * hess[1][0], k * hess[1][1]],
    ];
    let det = entries[0][0] * entries[1][1] - entries[0][1] * entries[1][0];

    let orthogonal = if (det - 1.0).abs() <= 1e-12 {
        [[1.0, 0.0], [0.0, 1.0]]
    } else {
        let n = (1.0 + mu * mu).sqrt();
        let (c1, s1) = (1.0 / n, mu / n);
        // Second column orthogonal to (1, mu), first nonzero entry positive.
        let (c2, s2) = if mu > 0.0 { (mu / n, -1.0 / n) } else { (-mu / n, 1.0 / n) };
        [[c1, c2], [s1, s2]]
    };

    Ok(CriterionMatrix {
        p,
        mu,
        hu,
        entries,
        det,
        eigvals: (1.0, det),
        orthogonal,
    })
}

impl CriterionMatrix {
    /// `1/(p+1)`.
    pub fn bound(&self) -> f64 {
        1.0 / (self.p as f64 + 1.0)
    }

    /// `O^t M O`.
    pub fn rotated(&self) -> Mat2 {
        let o = &self.orthogonal;
        let m = &self.entries;
        let mut mo = [[0.0; 2]; 2];
        for i in 0..2 {
            for j in 0..2 {
                mo[i][j] = m[i][0] * o[0][j] + m[i][1] * o[1][j];
            }
        }
        let mut r = [[0.0; 2]; 2];
        for i in 0..2 {
            for j in 0..2 {
                r[i][j] = o[0][i] * mo[0][j] + o[1][i] * mo[1][j];
            }
        }
        r
    }

    /// Largest `||M v - lambda v||` over the two columns of `O`.
    pub fn eigen_residual(&self) -> f64 {
        let lambdas = [self.eigvals.0, self.eigvals.1];
        (0..2)
            .map(|j| {
                let v = [self.orthogonal[0][j], self.orthogonal[1][j]];
                let mv = [
                    self.entries[0][0] * v[0] + self.entries[0][1] * v[1],
                    self.entries[1][0] * v[0] + self.entries[1][1] * v[1],
                ];
                ((mv[0] - lambdas[j] * v[0]).powi(2) + (mv[1] - lambdas[j] * v[1]).powi(2)).sqrt()
            })
            .fold(0.0, f64::max)
    }
}

/// Eigenvalues of a symmetric 2x2 matrix, ascending, from the trace/discriminant formula.
pub fn symmetric_eigenvalues(m: &Mat2) -> (f64, f64) {
    let half_tr = 0.5 * (m[0][0] + m[1][1]);
    let half_diff = 0.5 * (m[0][0] - m[1][1]);
    let r = half_diff.hypot(m[0][1]);
    (half_tr - r, half_tr + r)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum VerdictKind {
    StableAllSpeeds,
    ThresholdStable { omega_p: f64 },
    CriterionFails,
    NotAdmissible,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct StabilityVerdict {
    #[serde(flatten)]
    pub kind: VerdictKind,
    /// `None` when `M` is undefined (`H_u(1, mu) <= 0`).
    pub det_m: Option<f64>,
    pub bound: f64,
}

impl StabilityVerdict {
    pub fn not_admissible(p: u32) -> Self {
        Self {
            kind: VerdictKind::NotAdmissible,
            det_m: None,
            bound: 1.0 / (p as f64 + 1.0),
        }
    }
}

/// Width of the band around `1/(p+1)` treated as the boundary itself.
pub const BOUNDARY_TOL: f64 = 1e-12;

/// Classifies `M`. The boundary `det M = 1/(p+1)`, including values within
/// [`BOUNDARY_TOL`] of it, is `CriterionFails`.
pub fn verdict(m: &CriterionMatrix, p: u32, omega_p: Option<f64>) -> Result<StabilityVerdict> {
    let bound = 1.0 / (p as f64 + 1.0);
    let kind = if m.det < bound - BOUNDARY_TOL {
        if p <= 4 {
            VerdictKind::StableAllSpeeds
        } else {
            match omega_p {
                Some(w) => VerdictKind::ThresholdStable { omega_p: w },
                None => return Err(Error::MissingThreshold { p }),
            }
        }
    } else {
        VerdictKind::CriterionFails
    };
    Ok(StabilityVerdict {
        kind,
        det_m: Some(m.det),
        bound,
    })
}

/// The closing bound quoted for the coupled-power example, `-(p+1)(p-3) b2 / p`.
///
/// This is looser than what `det M < 1/(p+1)` actually implies; see
/// [`example1_exact_bound`].
pub fn example1_bound(p: u32, b2: f64) -> f64 {
    let p = p as f64;
    -(p + 1.0) * (p - 3.0) * b2 / p
}

/// The upper bound on `b1` equivalent to `det M < 1/(p+1)` for the coupled-power
/// example at `mu = 1`, given `b1 > -(p+2) b2`: `-(p^2 - 2p - 4) b2 / p`.
pub fn example1_exact_bound(p: u32, b2: f64) -> f64 {
    let p = p as f64;
    -(p * p - 2.0 * p - 4.0) * b2 / p
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::nonlinearity::find_ratios;
    use proptest::prelude::*;

    fn ratio(h: &HomogeneousNonlinearity, mu: f64) -> ProportionalRatio {
        ProportionalRatio::at(h, mu)
    }

    #[test]
    fn symmetric_product_matrix() {
        for q in 1..=4u32 {
            let h = HomogeneousNonlinearity::symmetric_product(q).unwrap();
            let m = build_m(&h, &ratio(&h, 1.0)).unwrap();
            let qf = q as f64;
            let k = 1.0 / (2.0 * qf + 1.0);
            assert!((m.entries[0][0] - k * qf).abs() < 1e-14);
            assert!((m.entries[0][1] - k * (qf + 1.0)).abs() < 1e-14);
            assert!((m.det + 1.0 / (2.0 * qf + 1.0)).abs() < 1e-12);
        }
    }

    #[test]
    fn decoupled_dets() {
        let h = HomogeneousNonlinearity::decoupled(2, 1.0, 1.0).unwrap();
        let m0 = build_m(&h, &ratio(&h, 0.0)).unwrap();
        assert_eq!(m0.entries, [[1.0, 0.0], [0.0, 0.0]]);
        assert_eq!(m0.det, 0.0);
        let m1 = build_m(&h, &ratio(&h, 1.0)).unwrap();
        assert!((m1.det - 1.0).abs() < 1e-14);
        assert_eq!(m1.orthogonal, [[1.0, 0.0], [0.0, 1.0]]);
    }

    #[test]
    fn cubic_coupling_boundary() {
        let h = HomogeneousNonlinearity::cubic_coupling(1.0).unwrap();
        let m = build_m(&h, &ratio(&h, 1.0)).unwrap();
        assert!((m.det - 1.0 / 3.0).abs() < 1e-14);
        assert_eq!(verdict(&m, 2, None).unwrap().kind, VerdictKind::CriterionFails);
        let below = CriterionMatrix { det: 1.0 / 3.0 - 1e-15, ..m.clone() };
        assert_eq!(verdict(&below, 2, None).unwrap().kind, VerdictKind::CriterionFails);
        let clearly_below = CriterionMatrix { det: 1.0 / 3.0 - 1e-6, ..m };
        assert_eq!(verdict(&clearly_below, 2, None).unwrap().kind, VerdictKind::StableAllSpeeds);
    }

    #[test]
    fn not_admissible() {
        let h = HomogeneousNonlinearity::symmetric_product(1).unwrap();
        let err = build_m(&h, &ratio(&h, 0.0)).unwrap_err();
        assert!(matches!(err, Error::NotAdmissible { .. }));
    }

    #[test]
    fn verdicts() {
        let h = HomogeneousNonlinearity::coupled_power(1, 1.0, 1.0).unwrap();
        let m = build_m(&h, &ratio(&h, 1.0)).unwrap();
        // (b1 + (p-2) b2) / (b1 + (p+2) b2) = 0 / 4
        assert!(m.det.abs() < 1e-15);
        assert_eq!(verdict(&m, 1, None).unwrap().kind, VerdictKind::StableAllSpeeds);

        let h = HomogeneousNonlinearity::decoupled(3, 1.0, 1.0).unwrap();
        let m = build_m(&h, &ratio(&h, 1.0)).unwrap();
        assert_eq!(verdict(&m, 3, None).unwrap().kind, VerdictKind::CriterionFails);

        let h = HomogeneousNonlinearity::decoupled(5, 1.0, 1.0).unwrap();
        let m = build_m(&h, &ratio(&h, 0.0)).unwrap();
        assert_eq!(verdict(&m, 5, None), Err(Error::MissingThreshold { p: 5 }));
        assert_eq!(
            verdict(&m, 5, Some(1.1)).unwrap().kind,
            VerdictKind::ThresholdStable { omega_p: 1.1 }
        );
    }

    #[test]
    fn example1_bounds() {
        assert_eq!(example1_bound(3, 1.0), 0.0);
        assert!((example1_bound(1, 1.0) - 4.0).abs() < 1e-15);
        assert!((example1_bound(5, 1.0) + 12.0 / 5.0).abs() < 1e-15);
        // Frozen from a brute-force det(M) scan over b1 (b2 = 1).
        assert!((example1_exact_bound(1, 1.0) - 5.0).abs() < 1e-15);
        assert!((example1_exact_bound(3, 1.0) - 1.0 / 3.0).abs() < 1e-15);
        assert!((example1_exact_bound(5, 1.0) + 11.0 / 5.0).abs() < 1e-15);
    }

    #[test]
    fn orthogonal_sign_convention() {
        let h = HomogeneousNonlinearity::cubic_coupling(3.0).unwrap();
        for r in find_ratios(&h).unwrap() {
            let m = build_m(&h, &r).unwrap();
            for j in 0..2 {
                let col = [m.orthogonal[0][j], m.orthogonal[1][j]];
                let first = col.iter().find(|x| **x != 0.0).unwrap();
                assert!(*first > 0.0, "mu = {}: {:?}", r.mu, m.orthogonal);
            }
        }
    }

    fn arb_admissible() -> impl Strategy<Value = (HomogeneousNonlinearity, ProportionalRatio)> {
        (1u32..=6)
            .prop_flat_map(|p| {
                (
                    Just(p),
                    proptest::collection::vec(-2.0f64..2.0, p as usize + 3),
                )
            })
            .prop_filter_map("admissible ratio", |(p, c)| {
                let h = HomogeneousNonlinearity::new(p, c).ok()?;
                let r = find_ratios(&h).ok()?.into_iter().find(|r| r.admissible && r.hu > 1e-3)?;
                Some((h, r))
            })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(500))]

        #[test]
        fn eigenvalues_are_one_and_det((h, r) in arb_admissible()) {
            let m = build_m(&h, &r).unwrap();
            let (lo, hi) = symmetric_eigenvalues(&m.entries);
            let (a, b) = if m.det < 1.0 { (m.det, 1.0) } else { (1.0, m.det) };
            let scale = 1.0 + m.det.abs();
            prop_assert!((lo - a).abs() <= 1e-9 * scale, "{lo} vs {a}");
            prop_assert!((hi - b).abs() <= 1e-9 * scale, "{hi} vs {b}");
            prop_assert!(m.eigen_residual() <= 1e-10 * scale);
            let o = m.orthogonal;
            let oto = [
                [o[0][0] * o[0][0] + o[1][0] * o[1][0], o[0][0] * o[0][1] + o[1][0] * o[1][1]],
                [o[0][1] * o[0][0] + o[1][1] * o[1][0], o[0][1] * o[0][1] + o[1][1] * o[1][1]],
            ];
            prop_assert!((oto[0][0] - 1.0).abs() <= 1e-12 && (oto[1][1] - 1.0).abs() <= 1e-12);
            prop_assert!(oto[0][1].abs() <= 1e-12);
            let rot = m.rotated();
            prop_assert!(rot[0][1].abs() <= 1e-10 * scale && rot[1][0].abs() <= 1e-10 * scale);
            prop_assert!((rot[0][0] - 1.0).abs() <= 1e-10 * scale);
            prop_assert!((rot[1][1] - m.det).abs() <= 1e-10 * scale);
        }

        #[test]
        fn scale_invariance((h, r) in arb_admissible(), c in 0.1f64..10.0) {
            let m = build_m(&h, &r).unwrap();
            let hc = h.scaled(c);
            let mc = build_m(&hc, &ProportionalRatio::at(&hc, r.mu)).unwrap();
            for i in 0..2 {
                for j in 0..2 {
                    prop_assert!((m.entries[i][j] - mc.entries[i][j]).abs() <= 1e-12 * (1.0 + m.entries[i][j].abs()));
                }
            }
            let p = h.p();
            let v = verdict(&m, p, Some(1.5)).unwrap();
            let vc = verdict(&mc, p, Some(1.5)).unwrap();
            if (m.det - m.bound()).abs() > 1e-9 {
                prop_assert_eq!(v.kind, vc.kind);
            }
        }
    }
}
