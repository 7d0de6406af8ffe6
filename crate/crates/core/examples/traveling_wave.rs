//! An exact solitary wave carried by the time stepper; conserved quantities and
//! the H^1 error against the translated profile.

use bbmstab::nonlinearity::HomogeneousNonlinearity;
use bbmstab::simulator::{run, InitialCondition, SimulationConfig, SimulationSettings};

fn main() -> bbmstab::Result<()> {
    let h = HomogeneousNonlinearity::coupled_power(1, 1.0, 1.0)?;
    let omega = 2.0;
    let cfg = SimulationConfig::new(
        h,
        1.0,
        SimulationSettings {
            n_modes: 1024,
            dt: 0.01,
            t_end: 20.0,
            sample_every: 200,
            initial: InitialCondition::ExactWave { omega },
            ..Default::default()
        },
    );
    let r = run(&cfg)?;
    println!("domain length {:.3}, {} modes, cfl {:.3}", r.domain_length, r.n_modes, r.cfl);
    println!("{:>6} {:>18} {:>18} {:>12} {:>10}", "t", "Omega", "Theta", "deviation", "shift");
    for i in 0..r.times.len() {
        println!(
            "{:>6.1} {:>18.12} {:>18.12} {:>12.3e} {:>10.5}",
            r.times[i], r.conserved[i].omega, r.conserved[i].theta, r.deviation[i], r.shift[i]
        );
    }
    let (dom, dth) = r.relative_drift();
    println!("relative drift: Omega {dom:.2e}, Theta {dth:.2e}; final shift / t = {:.6}", r.shift.last().unwrap() / 20.0);
    Ok(())
}
