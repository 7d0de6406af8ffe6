//! Lowest eigenvalues of a real symmetric tridiagonal matrix by Sturm-sequence bisection.

/// Number of eigenvalues strictly below `x`.
pub fn sturm_count(diag: &[f64], off: &[f64], x: f64) -> usize {
    let mut count = 0;
    let mut q = 1.0;
    for i in 0..diag.len() {
        let coupling = if i == 0 { 0.0 } else { off[i - 1] * off[i - 1] / q };
        q = diag[i] - x - coupling;
        if q == 0.0 {
            q = -f64::EPSILON * (diag[i].abs() + x.abs()).max(f64::MIN_POSITIVE);
        }
        if q < 0.0 {
            count += 1;
        }
    }
    count
}

/// Gershgorin interval containing the spectrum.
fn gershgorin(diag: &[f64], off: &[f64]) -> (f64, f64) {
    let n = diag.len();
    let mut lo = f64::INFINITY;
    let mut hi = f64::NEG_INFINITY;
    for i in 0..n {
        let r = if i > 0 { off[i - 1].abs() } else { 0.0 } + if i + 1 < n { off[i].abs() } else { 0.0 };
        lo = lo.min(diag[i] - r);
        hi = hi.max(diag[i] + r);
    }
    (lo, hi)
}

/// The `k` smallest eigenvalues, ascending. `off[i]` couples rows `i` and `i+1`.
pub fn lowest_eigenvalues(diag: &[f64], off: &[f64], k: usize) -> Vec<f64> {
    let n = diag.len();
    assert_eq!(off.len() + 1, n.max(1), "off-diagonal length");
    let k = k.min(n);
    let (glo, ghi) = gershgorin(diag, off);
    let norm = glo.abs().max(ghi.abs()).max(f64::MIN_POSITIVE);
    let tol = 4.0 * f64::EPSILON * norm;

    let mut out = Vec::with_capacity(k);
    let mut lo_prev = glo;
    for j in 0..k {
        // Smallest x with count(x) > j lies in (lo, hi].
        let mut lo = lo_prev;
        let mut hi = ghi;
        while hi - lo > tol {
            let mid = 0.5 * (lo + hi);
            if mid <= lo || mid >= hi {
                break;
            }
            if sturm_count(diag, off, mid) > j {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        let lambda = 0.5 * (lo + hi);
        out.push(lambda);
        lo_prev = lo;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use nalgebra::{DMatrix, SymmetricEigen};

    #[test]
    fn discrete_laplacian_closed_form() {
        let n = 50;
        let diag = vec![2.0; n];
        let off = vec![-1.0; n - 1];
        let got = lowest_eigenvalues(&diag, &off, 5);
        for (j, g) in got.iter().enumerate() {
            let theta = (j + 1) as f64 * std::f64::consts::PI / (n + 1) as f64;
            let want = 2.0 - 2.0 * theta.cos();
            assert!((g - want).abs() < 1e-13, "{g} vs {want}");
        }
    }

    #[test]
    fn agrees_with_dense_solver() {
        let n = 40;
        let diag: Vec<f64> = (0..n).map(|i| ((i * 7) % 11) as f64 - 5.0).collect();
        let off: Vec<f64> = (0..n - 1).map(|i| ((i * 3) % 5) as f64 * 0.7 - 1.0).collect();
        let mut m = DMatrix::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = diag[i];
            if i + 1 < n {
                m[(i, i + 1)] = off[i];
                m[(i + 1, i)] = off[i];
            }
        }
        let mut dense: Vec<f64> = SymmetricEigen::new(m).eigenvalues.iter().copied().collect();
        dense.sort_by(f64::total_cmp);
        let got = lowest_eigenvalues(&diag, &off, n);
        for (a, b) in got.iter().zip(&dense) {
            assert!((a - b).abs() < 1e-12, "{a} vs {b}");
        }
    }

    #[test]
    fn repeated_eigenvalues() {
        // Decoupled blocks give a double eigenvalue.
        let diag = vec![1.0, 1.0, 3.0];
        let off = vec![0.0, 0.0];
        assert_eq!(lowest_eigenvalues(&diag, &off, 3).len(), 3);
        let e = lowest_eigenvalues(&diag, &off, 3);
        assert!((e[0] - 1.0).abs() < 1e-14 && (e[1] - 1.0).abs() < 1e-14 && (e[2] - 3.0).abs() < 1e-14);
    }
}
