//! The sign of d''(omega) and the threshold speed omega_p for p > 4.

use bbmstab::moment::{d_second, d_second_fd, moment_constants, omega_threshold};

fn main() -> bbmstab::Result<()> {
    for p in 1..=8u32 {
        let mc = moment_constants(p, 0.0, 1.0)?;
        let wp = omega_threshold(&mc);
        println!(
            "p = {p}: theta1 = {:.6}  theta2 = {:.6}  q(1) = {:+.6}  omega_p = {}",
            mc.theta1,
            mc.theta2,
            mc.q(1.0),
            wp.map_or("none".into(), |w| format!("{w:.12}"))
        );
    }

    let mc = moment_constants(5, 0.0, 1.0)?;
    let wp = omega_threshold(&mc).expect("p = 5 has a threshold");
    println!("\np = 5, H = u^7/7: closed form vs finite differences of Omega");
    for w in [1.02, 0.5 * (1.0 + wp), wp, wp + 0.05, 1.5, 3.0] {
        let cf = d_second(w, &mc)?;
        // Near omega_p d'' vanishes and the relative step check refuses.
        let fd = match d_second_fd(w, 5, 0.0, 1.0, 0.01 * (w - 1.0)) {
            Ok(fd) => format!("{fd:+.6e}"),
            Err(e) => format!("({e})"),
        };
        println!("  w = {w:.6}:  d'' = {cf:+.6e}   fd = {fd}");
    }
    Ok(())
}
