//! Exact bound states of -d^2/dy^2 - alpha sech^2(y) against a finite-difference solve.

use bbmstab::spectral::{legendre_eigenfunction, poschl_teller_spectrum, SchrodingerOperator};

fn main() -> bbmstab::Result<()> {
    for alpha in [0.5, 2.0, 6.0, 12.0, 20.0] {
        let exact = poschl_teller_spectrum(alpha);
        let v = move |y: f64| -alpha / y.cosh().powi(2);
        let op = SchrodingerOperator { kinetic: 1.0, shift: 0.0, potential: &v };
        let numeric = op.richardson(40.0, 4096, exact.eigenpairs.len());
        println!("alpha = {alpha:>5}  s = {:.6}", exact.s);
        for (e, n) in exact.eigenvalues().iter().zip(&numeric) {
            println!("    exact {e:>12.8}   numeric {n:>12.8}   diff {:.1e}", (e - n).abs());
        }
    }

    // Tabulated eigenfunctions for s = 3 at a few points.
    let xs = [-1.0, 0.0, 0.5, 2.0];
    for eps in 1..=3 {
        let f = legendre_eigenfunction(3.0, eps as f64, &xs)?;
        println!("P_3^{eps}(tanh x) at {xs:?}: {f:.5?}");
    }
    Ok(())
}
