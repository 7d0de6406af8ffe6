//! History tables and raw field snapshots.
//!
//! A snapshot file is one line of JSON header, a newline, then
//! `n` little-endian `f64` values of `u` followed by `n` of `v`.

use std::io::{BufRead, Write};

use serde::{Deserialize, Serialize};

use super::{SimulationRun, Snapshot};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SnapshotHeader {
    pub n: usize,
    pub components: usize,
    pub dx: f64,
    pub x_min: f64,
    pub time: f64,
}

pub fn write_history_csv<W: Write>(mut w: W, run: &SimulationRun) -> Result<()> {
    writeln!(w, "time,omega,theta,deviation")?;
    for i in 0..run.times.len() {
        writeln!(
            w,
            "{:?},{:?},{:?},{:?}",
            run.times[i], run.conserved[i].omega, run.conserved[i].theta, run.deviation[i]
        )?;
    }
    Ok(())
}

pub fn write_snapshot<W: Write>(mut w: W, snap: &Snapshot) -> Result<()> {
    let header = SnapshotHeader {
        n: snap.u.len(),
        components: 2,
        dx: snap.dx,
        x_min: snap.x_min,
        time: snap.time,
    };
    let line = serde_json::to_string(&header).map_err(|e| Error::Io(e.to_string()))?;
    writeln!(w, "{line}")?;
    let mut bytes = Vec::with_capacity(16 * header.n);
    for x in snap.u.iter().chain(&snap.v) {
        bytes.extend_from_slice(&x.to_le_bytes());
    }
    w.write_all(&bytes)?;
    Ok(())
}

pub fn read_snapshot<R: BufRead>(mut r: R) -> Result<Snapshot> {
    let mut line = String::new();
    r.read_line(&mut line)?;
    let header: SnapshotHeader =
        serde_json::from_str(line.trim_end()).map_err(|e| Error::Schema(format!("snapshot header: {e}")))?;
    if header.components != 2 {
        return Err(Error::Schema(format!("expected 2 components, got {}", header.components)));
    }
    let mut bytes = vec![0u8; 16 * header.n];
    r.read_exact(&mut bytes)?;
    let values: Vec<f64> = bytes
        .chunks_exact(8)
        .map(|c| f64::from_le_bytes(c.try_into().expect("8-byte chunk")))
        .collect();
    let (u, v) = values.split_at(header.n);
    Ok(Snapshot {
        time: header.time,
        x_min: header.x_min,
        dx: header.dx,
        u: u.to_vec(),
        v: v.to_vec(),
    })
}
