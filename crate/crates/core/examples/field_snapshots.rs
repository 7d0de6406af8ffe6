//! Writes a run's history table and field snapshots, then reads a snapshot back.

use std::fs::File;
use std::io::{BufReader, BufWriter};

use bbmstab::nonlinearity::HomogeneousNonlinearity;
use bbmstab::simulator::io::{read_snapshot, write_history_csv, write_snapshot};
use bbmstab::simulator::{run, InitialCondition, SimulationConfig, SimulationSettings};

fn main() -> bbmstab::Result<()> {
    let dir = std::env::temp_dir().join("bbmstab-snapshots");
    std::fs::create_dir_all(&dir)?;
    let cfg = SimulationConfig::new(
        HomogeneousNonlinearity::cubic_coupling(2.0)?,
        1.0,
        SimulationSettings {
            n_modes: 512,
            t_end: 5.0,
            sample_every: 50,
            checkpoint_every: Some(250),
            initial: InitialCondition::ExactWave { omega: 1.5 },
            ..Default::default()
        },
    );
    let r = run(&cfg)?;
    write_history_csv(BufWriter::new(File::create(dir.join("history.csv"))?), &r)?;
    for (i, snap) in r.checkpoints.iter().enumerate() {
        write_snapshot(BufWriter::new(File::create(dir.join(format!("snapshot_{i:04}.bin")))?), snap)?;
    }
    let back = read_snapshot(BufReader::new(File::open(dir.join("snapshot_0000.bin"))?))?;
    println!(
        "wrote {} snapshots to {}; first has n = {}, t = {}, max u = {:.6}",
        r.checkpoints.len(),
        dir.display(),
        back.u.len(),
        back.time,
        back.u.iter().cloned().fold(f64::MIN, f64::max)
    );
    Ok(())
}
