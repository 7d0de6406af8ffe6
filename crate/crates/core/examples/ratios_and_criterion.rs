//! Proportional ratios and the det(M) criterion for the four worked nonlinearities.

use bbmstab::criterion::{build_m, verdict};
use bbmstab::moment::{moment_constants, omega_threshold};
use bbmstab::nonlinearity::{find_ratios, hessian_identities_residual, ratio_for_mu, HomogeneousNonlinearity};

fn report(name: &str, h: &HomogeneousNonlinearity, mu: Option<f64>) -> bbmstab::Result<()> {
    let ratios = match mu {
        Some(mu) => vec![ratio_for_mu(h, mu)?],
        None => find_ratios(h)?,
    };
    println!("{name}  (p = {}, coeffs = {:?})", h.p(), h.coeffs());
    for r in ratios {
        let (e1, e2) = hessian_identities_residual(h, r.mu);
        if !r.admissible {
            println!("  mu = {:>7.4}  H_u = {:>8.4}  not admissible", r.mu, r.hu);
            continue;
        }
        let m = build_m(h, &r)?;
        let omega_p = omega_threshold(&moment_constants(h.p(), r.mu, r.hu)?);
        let v = verdict(&m, h.p(), omega_p)?;
        println!(
            "  mu = {:>7.4}  H_u = {:>8.4}  det M = {:>9.6}  bound = {:.4}  {:?}   (Euler residuals {e1:.1e}, {e2:.1e})",
            r.mu, r.hu, m.det, m.bound(), v.kind
        );
    }
    Ok(())
}

fn main() -> bbmstab::Result<()> {
    report("coupled powers b1 = b2 = 1", &HomogeneousNonlinearity::coupled_power(1, 1.0, 1.0)?, None)?;
    for q in 1..=3 {
        report(&format!("product u^{0} v^{0} / {0}", q + 1), &HomogeneousNonlinearity::symmetric_product(q)?, None)?;
    }
    report("decoupled a = b = 1", &HomogeneousNonlinearity::decoupled(2, 1.0, 1.0)?, None)?;
    for beta in [0.5, 2.0] {
        report(&format!("cubic coupling beta = {beta}"), &HomogeneousNonlinearity::cubic_coupling(beta)?, None)?;
    }
    // At beta = 1 every mu is a ratio, so one has to be named.
    report("cubic coupling beta = 1", &HomogeneousNonlinearity::cubic_coupling(1.0)?, Some(1.0))?;
    Ok(())
}
