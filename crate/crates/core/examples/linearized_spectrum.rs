//! Spectra of L1 = -w d^2 + (w-1) - phi_0 and L2 = -w d^2 + (w-1) - det(M) phi_0.

use bbmstab::nonlinearity::{ratio_for_mu, HomogeneousNonlinearity};
use bbmstab::spectral::{analytic_l1_least, l2_positivity_threshold, numeric_spectrum, theorem2_report, DiscretizationParams};

fn main() -> bbmstab::Result<()> {
    let grid = DiscretizationParams::default();

    let h = HomogeneousNonlinearity::coupled_power(1, 1.0, 1.0)?;
    let r = ratio_for_mu(&h, 1.0)?;
    let rep = theorem2_report(&h, &r, 2.0, &grid)?;
    println!("{}", serde_json::to_string_pretty(&rep).expect("serialisable"));

    println!("\nleast eigenvalue of L1 vs -p(p+4)(w-1)/4");
    for (p, w) in [(1u32, 2.0), (2, 1.5), (3, 3.0), (5, 1.2)] {
        let got = numeric_spectrum(1.0, p, w, &grid)?[0];
        let want = analytic_l1_least(p, w);
        println!("  p = {p}  w = {w}:  {got:.9}  vs  {want:.9}");
    }

    println!("\nleast eigenvalue of L2 as det M crosses 1/(p+1), p = 2, w = 1.5");
    let t = l2_positivity_threshold(2);
    for d in [-0.02, -0.01, 0.0, 0.01, 0.02] {
        let e = numeric_spectrum(t + d, 2, 1.5, &grid)?[0];
        println!("  det M = {:.4}:  {e:+.3e}", t + d);
    }
    Ok(())
}
