//! Perturbed waves on both sides of the criterion, tagged by their deviation history.
//!
//! `cargo run --release --example stability_runs`

use bbmstab::nonlinearity::HomogeneousNonlinearity;
use bbmstab::simulator::{run_many, InitialCondition, Perturbation, SimulationConfig, SimulationSettings, Thresholds};

fn perturbed(omega: f64, epsilon: f64, n_modes: usize, dt: f64, t_end: f64) -> SimulationSettings {
    SimulationSettings {
        n_modes,
        dt,
        t_end,
        sample_every: ((t_end / dt) / 20.0) as usize,
        initial: InitialCondition::PerturbedWave { omega, perturbation: Perturbation::Amplitude { epsilon } },
        ..Default::default()
    }
}

fn main() -> bbmstab::Result<()> {
    let mut seventh = vec![0.0; 8];
    seventh[7] = 1.0 / 7.0;
    let u7 = HomogeneousNonlinearity::new(5, seventh)?;
    let cases = [
        ("coupled powers, p=1, w=2", SimulationConfig::new(HomogeneousNonlinearity::coupled_power(1, 1.0, 1.0)?, 1.0, perturbed(2.0, 0.01, 1024, 0.01, 100.0))),
        ("u^7/7, w=1.05 (below omega_5)", SimulationConfig::new(u7.clone(), 0.0, perturbed(1.05, 0.01, 2048, 0.02, 300.0))),
        ("u^7/7, w=1.5 (above omega_5)", SimulationConfig::new(u7, 0.0, perturbed(1.5, 0.01, 2048, 0.02, 300.0))),
        (
            "decoupled pair, w1=2, w2=2.05",
            SimulationConfig::new(
                HomogeneousNonlinearity::decoupled(2, 1.0, 1.0)?,
                1.0,
                SimulationSettings {
                    n_modes: 2048,
                    dt: 0.01,
                    t_end: 100.0,
                    sample_every: 500,
                    initial: InitialCondition::TwoSpeedPair { omega1: 2.0, omega2: 2.05 },
                    ..Default::default()
                },
            ),
        ),
    ];
    let configs: Vec<_> = cases.iter().map(|(_, c)| c.clone()).collect();
    for ((name, _), result) in cases.iter().zip(run_many(&configs)) {
        let r = result?;
        println!("{name}: {:?}", r.classify(Thresholds::default()));
        let d0 = r.initial_deviation();
        let trace: Vec<String> = r.times.iter().zip(&r.deviation).map(|(t, d)| format!("{t:.0}:{:.2}", d / d0)).collect();
        println!("  deviation / initial: {}", trace.join(" "));
    }
    Ok(())
}
