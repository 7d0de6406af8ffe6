//! Real roots of a univariate polynomial via companion-matrix eigenvalues.

use nalgebra::DMatrix;

/// Outcome of a real-root search.
#[derive(Debug, Clone, PartialEq)]
pub enum RootSet {
    /// Every coefficient vanishes; every real number is a root.
    Everywhere,
    /// Sorted, deduplicated real roots (possibly empty).
    Finite(Vec<f64>),
}

const COEFF_ZERO: f64 = 1e-14;
const IMAG_TOL: f64 = 1e-8;
// A root of multiplicity m splits into an m-cycle of radius ~eps^(1/m); the
// looser window only admits such clusters when the polished residual vanishes.
const CLUSTER_IMAG_TOL: f64 = 1e-4;
const DEDUP_TOL: f64 = 1e-9;

/// Evaluates `sum c_k x^k` by Horner's rule, returning value and derivative.
pub fn horner(coeffs: &[f64], x: f64) -> (f64, f64) {
    let mut val = 0.0;
    let mut der = 0.0;
    for &c in coeffs.iter().rev() {
        der = der * x + val;
        val = val * x + c;
    }
    (val, der)
}

/// Scale used to judge whether `horner(coeffs, x).0` is zero.
fn residual_scale(coeffs: &[f64], x: f64) -> f64 {
    let ax = x.abs();
    let mut s = 0.0;
    let mut pow = 1.0;
    for &c in coeffs {
        s += c.abs() * pow;
        pow *= ax;
    }
    s.max(f64::MIN_POSITIVE)
}

/// Real roots of the polynomial with ascending coefficients `coeffs`.
pub fn real_roots(coeffs: &[f64]) -> RootSet {
    let scale = coeffs.iter().fold(0.0_f64, |m, c| m.max(c.abs()));
    if scale == 0.0 || !scale.is_finite() {
        return RootSet::Everywhere;
    }
    let cleaned: Vec<f64> = coeffs
        .iter()
        .map(|&c| if c.abs() <= COEFF_ZERO * scale { 0.0 } else { c })
        .collect();

    let top = match cleaned.iter().rposition(|&c| c != 0.0) {
        Some(t) => t,
        None => return RootSet::Everywhere,
    };
    let low = cleaned.iter().position(|&c| c != 0.0).unwrap_or(0);

    let mut roots = Vec::new();
    if low > 0 {
        roots.push(0.0);
    }
    // Deflated polynomial: x^low factored out, degree top - low.
    let reduced = &cleaned[low..=top];
    let degree = reduced.len() - 1;
    match degree {
        0 => {}
        1 => roots.push(-reduced[0] / reduced[1]),
        _ => {
            let lead = reduced[degree];
            let mut companion = DMatrix::<f64>::zeros(degree, degree);
            for i in 1..degree {
                companion[(i, i - 1)] = 1.0;
            }
            for i in 0..degree {
                companion[(i, degree - 1)] = -reduced[i] / lead;
            }
            for z in companion.complex_eigenvalues().iter() {
                let re = z.re;
                let im = z.im.abs();
                let near_real = im <= IMAG_TOL * (1.0 + re.abs());
                let polished = polish(reduced, re);
                let clustered = im <= CLUSTER_IMAG_TOL * (1.0 + re.abs())
                    && horner(reduced, polished).0.abs()
                        <= 1e-10 * residual_scale(reduced, polished);
                if near_real || clustered {
                    roots.push(polished);
                }
            }
        }
    }

    roots.sort_by(|a, b| a.partial_cmp(b).expect("finite roots"));
    roots.dedup_by(|a, b| (*a - *b).abs() <= DEDUP_TOL * (1.0 + b.abs()));
    RootSet::Finite(roots)
}

/// One Newton step, kept only when it lowers the residual.
fn polish(coeffs: &[f64], x: f64) -> f64 {
    let (f, df) = horner(coeffs, x);
    if df == 0.0 || !df.is_finite() {
        return x;
    }
    let next = x - f / df;
    if next.is_finite() && horner(coeffs, next).0.abs() <= f.abs() {
        next
    } else {
        x
    }
}
