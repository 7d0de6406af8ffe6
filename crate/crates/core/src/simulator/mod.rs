//! Pseudo-spectral time stepping of `U_t + U_x - U_xxt + (grad H(U))_x = 0`
//! on a periodic interval.
//!
//! Inverting `1 - d_xx` gives `U_t = -(1 - d_xx)^{-1} d_x (U + grad H(U))`, a
//! bounded Fourier multiplier `-ik/(1+k^2)`, so classical RK4 with a fixed step is
//! enough. Both components are carried in one complex array `u + i v`; the
//! multiplier maps real fields to real fields, so they never mix.

mod distance;
pub mod io;

use rayon::prelude::*;
use rustfft::num_complex::Complex64;
use serde::{Deserialize, Serialize};

pub use distance::{distance_at_shift, h1_norm, modulated_distance, FieldSpectrum, ModulatedDistance};

use crate::error::{Error, Result};
use crate::fourier::SpectralGrid;
use crate::moment::{conserved, ConservedPair};
use crate::nonlinearity::{HomogeneousNonlinearity, ProportionalRatio};
use crate::profile::WaveProfile;

/// `max |U|` beyond which a run is aborted.
pub const BLOWUP_LIMIT: f64 = 1e6;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "shape", rename_all = "snake_case", deny_unknown_fields)]
pub enum Perturbation {
    /// `(1 + epsilon) Phi`
    Amplitude { epsilon: f64 },
    /// `Phi + epsilon exp(-((x - center)/width)^2) (1, mu)`
    GaussianBump { epsilon: f64, center: f64, width: f64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum InitialCondition {
    ExactWave { omega: f64 },
    PerturbedWave { omega: f64, perturbation: Perturbation },
    /// `(phi_{omega1}, mu phi_{omega2})`; the reference wave travels at `omega1`.
    TwoSpeedPair { omega1: f64, omega2: f64 },
}

impl InitialCondition {
    pub fn reference_speed(&self) -> f64 {
        match *self {
            Self::ExactWave { omega } | Self::PerturbedWave { omega, .. } => omega,
            Self::TwoSpeedPair { omega1, .. } => omega1,
        }
    }

    fn slowest(&self) -> f64 {
        match *self {
            Self::TwoSpeedPair { omega1, omega2 } => omega1.min(omega2),
            _ => self.reference_speed(),
        }
    }
}

/// Empirical classification thresholds, as multiples of the initial deviation.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Thresholds {
    pub stable_factor: f64,
    pub unstable_factor: f64,
}

impl Default for Thresholds {
    fn default() -> Self {
        Self {
            stable_factor: 5.0,
            unstable_factor: 10.0,
        }
    }
}

/// Numerical settings of a run; everything but the nonlinearity and ratio.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SimulationSettings {
    /// Period of the domain; `None` picks `max(40/B, 2 x_tail)` where the wave
    /// tail falls below `1e-10` of its peak at `x_tail`.
    pub domain_length: Option<f64>,
    pub n_modes: usize,
    pub dt: f64,
    pub t_end: f64,
    /// 2/3-rule truncation of `grad H(U)`; `None` means on for `p >= 2`.
    pub dealias: Option<bool>,
    /// Steps between history samples.
    pub sample_every: usize,
    /// Steps between stored field snapshots; `None` keeps only the first and last.
    pub checkpoint_every: Option<usize>,
    pub thresholds: Thresholds,
    pub initial: InitialCondition,
}

impl Default for SimulationSettings {
    fn default() -> Self {
        Self {
            domain_length: None,
            n_modes: 1024,
            dt: 0.01,
            t_end: 20.0,
            dealias: None,
            sample_every: 100,
            checkpoint_every: None,
            thresholds: Thresholds::default(),
            initial: InitialCondition::ExactWave { omega: 2.0 },
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SimulationConfig {
    pub h: HomogeneousNonlinearity,
    pub mu: f64,
    pub settings: SimulationSettings,
}

impl SimulationConfig {
    pub fn new(h: HomogeneousNonlinearity, mu: f64, settings: SimulationSettings) -> Self {
        Self { h, mu, settings }
    }

    pub fn ratio(&self) -> ProportionalRatio {
        ProportionalRatio::at(&self.h, self.mu)
    }

    pub fn dealias(&self) -> bool {
        self.settings.dealias.unwrap_or(self.h.p() >= 2)
    }

    pub fn n_steps(&self) -> usize {
        (self.settings.t_end / self.settings.dt).round() as usize
    }

    pub fn domain_length(&self) -> Result<f64> {
        if let Some(l) = self.settings.domain_length {
            return Ok(l);
        }
        let w = WaveProfile::new(self.h.p(), self.settings.initial.slowest(), self.ratio().hu, self.mu)?;
        Ok((40.0 / w.width).max(2.0 * w.decay_half_width(1e-10)))
    }

    pub fn validate(&self) -> Result<()> {
        let s = &self.settings;
        let bad = |m: String| Err(Error::InvalidConfig(m));
        if s.n_modes < 16 || !s.n_modes.is_power_of_two() {
            return bad(format!("n_modes = {} must be a power of two >= 16", s.n_modes));
        }
        if !(s.dt > 0.0) || !s.dt.is_finite() {
            return bad(format!("dt = {} must be positive", s.dt));
        }
        if !(s.t_end >= 0.0) || !s.t_end.is_finite() {
            return bad(format!("t_end = {} must be non-negative", s.t_end));
        }
        if s.sample_every == 0 || s.checkpoint_every == Some(0) {
            return bad("sample_every and checkpoint_every must be positive".into());
        }
        if let Some(l) = s.domain_length {
            if !(l > 0.0) || !l.is_finite() {
                return bad(format!("domain_length = {l} must be positive"));
            }
        }
        let t = s.thresholds;
        if !(t.stable_factor > 0.0) || !(t.unstable_factor > 0.0) {
            return bad("thresholds must be positive".into());
        }
        for w in match s.initial {
            InitialCondition::TwoSpeedPair { omega1, omega2 } => vec![omega1, omega2],
            other => vec![other.reference_speed()],
        } {
            if !(w > 1.0) || !w.is_finite() {
                return Err(Error::InvalidSpeed(w));
            }
        }
        if let InitialCondition::PerturbedWave {
            perturbation: Perturbation::GaussianBump { width, .. },
            ..
        } = s.initial
        {
            if !(width > 0.0) {
                return bad(format!("bump width = {width} must be positive"));
            }
        }
        let r = self.ratio();
        if !r.admissible {
            return Err(Error::NotAdmissible { mu: r.mu, hu: r.hu });
        }
        if self.h.ratio_residual(self.mu) > 1e-8 {
            return bad(format!("mu = {} is not a proportional ratio of H", self.mu));
        }
        Ok(())
    }
}

/// RK4 integrator for the spectral state `hat(u) + i hat(v)`.
pub struct Stepper {
    grid: SpectralGrid,
    h: HomogeneousNonlinearity,
    /// `-ik/(1+k^2)`, zero at the Nyquist mode.
    symbol: Vec<Complex64>,
    /// 1 on retained modes, 0 on the truncated top third.
    mask: Vec<f64>,
    buf: Vec<Complex64>,
}

impl Stepper {
    pub fn new(grid: SpectralGrid, h: HomogeneousNonlinearity, dealias: bool) -> Self {
        let n = grid.len();
        let nyq = grid.nyquist();
        let symbol = grid
            .wavenumbers()
            .iter()
            .enumerate()
            .map(|(i, &k)| {
                if i == nyq {
                    Complex64::new(0.0, 0.0)
                } else {
                    Complex64::new(0.0, -k / (1.0 + k * k))
                }
            })
            .collect();
        let mask = (0..n)
            .map(|i| {
                let m = if i <= nyq { i } else { n - i };
                if dealias && 3 * m > n {
                    0.0
                } else {
                    1.0
                }
            })
            .collect();
        Self {
            grid,
            h,
            symbol,
            mask,
            buf: vec![Complex64::new(0.0, 0.0); n],
        }
    }

    pub fn grid(&self) -> &SpectralGrid {
        &self.grid
    }

    pub fn to_spectral(&self, u: &[f64], v: &[f64]) -> Vec<Complex64> {
        let mut z: Vec<Complex64> = u.iter().zip(v).map(|(&a, &b)| Complex64::new(a, b)).collect();
        self.grid.forward_in_place(&mut z);
        z
    }

    pub fn to_physical(&self, state: &[Complex64]) -> (Vec<f64>, Vec<f64>) {
        let mut z = state.to_vec();
        self.grid.inverse_in_place(&mut z);
        (z.iter().map(|c| c.re).collect(), z.iter().map(|c| c.im).collect())
    }

    /// Separates `hat(u) + i hat(v)` into the two component spectra.
    pub fn split(&self, state: &[Complex64]) -> FieldSpectrum {
        let n = state.len();
        let mut u = Vec::with_capacity(n);
        let mut v = Vec::with_capacity(n);
        for k in 0..n {
            let a = state[k];
            let b = state[(n - k) % n].conj();
            u.push(0.5 * (a + b));
            v.push(Complex64::new(0.0, -0.5) * (a - b));
        }
        FieldSpectrum { u, v }
    }

    /// Writes the time derivative of `state` into `out`; returns `max |U|`.
    fn rhs(&mut self, state: &[Complex64], out: &mut [Complex64]) -> f64 {
        self.buf.copy_from_slice(state);
        self.grid.inverse_in_place(&mut self.buf);
        let mut max_abs: f64 = 0.0;
        for z in self.buf.iter_mut() {
            max_abs = max_abs.max(z.re.abs()).max(z.im.abs());
            if !z.re.is_finite() || !z.im.is_finite() {
                max_abs = f64::INFINITY;
            }
            let (gu, gv) = self.h.grad(z.re, z.im);
            *z = Complex64::new(gu, gv);
        }
        self.grid.forward_in_place(&mut self.buf);
        for i in 0..out.len() {
            out[i] = self.symbol[i] * (state[i] + self.mask[i] * self.buf[i]);
        }
        max_abs
    }

    /// One classical RK4 step of size `dt` (negative `dt` integrates backwards).
    pub fn step(&mut self, state: &mut [Complex64], dt: f64, time: f64) -> Result<()> {
        let n = state.len();
        let zero = Complex64::new(0.0, 0.0);
        let mut k = vec![zero; n];
        let mut acc = state.to_vec();
        let mut stage = vec![zero; n];

        let max_abs = self.rhs(state, &mut k);
        if !(max_abs <= BLOWUP_LIMIT) {
            return Err(Error::BlowupDetected { time, max_abs });
        }
        for (c, w) in [(0.5, 1.0), (0.5, 2.0), (1.0, 2.0)] {
            for i in 0..n {
                acc[i] += (dt * w / 6.0) * k[i];
                stage[i] = state[i] + (c * dt) * k[i];
            }
            self.rhs(&stage, &mut k);
        }
        for i in 0..n {
            state[i] = acc[i] + (dt / 6.0) * k[i];
        }
        Ok(())
    }
}

/// A field at one instant, in physical space.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Snapshot {
    pub time: f64,
    pub x_min: f64,
    pub dx: f64,
    pub u: Vec<f64>,
    pub v: Vec<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum HeuristicVerdict {
    HeuristicStable,
    HeuristicUnstable,
    Indeterminate,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SimulationRun {
    pub times: Vec<f64>,
    pub conserved: Vec<ConservedPair>,
    /// Translation-minimised H^1 distance to the reference wave.
    pub deviation: Vec<f64>,
    /// Minimising shift; tracks the wave position.
    pub shift: Vec<f64>,
    pub checkpoints: Vec<Snapshot>,
    pub domain_length: f64,
    pub n_modes: usize,
    pub dealias: bool,
    /// `dt max|k|/(1+k^2) (1 + max|grad H|)` at `t = 0`; advisory only.
    pub cfl: f64,
}

impl SimulationRun {
    /// Largest `|Q(t) - Q(0)| / |Q(0)|` for `(Omega, Theta)`.
    pub fn relative_drift(&self) -> (f64, f64) {
        let c0 = self.conserved[0];
        let rel = |a: f64, b: f64| (a - b).abs() / b.abs().max(f64::MIN_POSITIVE);
        self.conserved.iter().fold((0.0, 0.0), |(o, t), c| {
            (o.max(rel(c.omega, c0.omega)), t.max(rel(c.theta, c0.theta)))
        })
    }

    pub fn initial_deviation(&self) -> f64 {
        self.deviation[0]
    }

    pub fn max_deviation(&self) -> f64 {
        self.deviation.iter().copied().fold(0.0, f64::max)
    }

    pub fn final_deviation(&self) -> f64 {
        *self.deviation.last().expect("at least one sample")
    }

    pub fn classify(&self, t: Thresholds) -> HeuristicVerdict {
        let d0 = self.initial_deviation();
        if self.max_deviation() <= t.stable_factor * d0 {
            HeuristicVerdict::HeuristicStable
        } else if self.final_deviation() >= t.unstable_factor * d0 {
            HeuristicVerdict::HeuristicUnstable
        } else {
            HeuristicVerdict::Indeterminate
        }
    }
}

/// The configured wave and its initial data on a grid.
pub struct Setup {
    pub grid: SpectralGrid,
    pub reference: WaveProfile,
    pub u0: Vec<f64>,
    pub v0: Vec<f64>,
}

pub fn setup(config: &SimulationConfig) -> Result<Setup> {
    config.validate()?;
    let s = &config.settings;
    let length = config.domain_length()?;
    let grid = SpectralGrid::centered(s.n_modes, 0.5 * length);
    let (p, mu, hu) = (config.h.p(), config.mu, config.ratio().hu);
    let reference = WaveProfile::new(p, s.initial.reference_speed(), hu, mu)?;
    let xs = grid.points();
    let phi: Vec<f64> = xs.iter().map(|&x| reference.phi(x)).collect();
    let (u0, v0) = match s.initial {
        InitialCondition::ExactWave { .. } => (phi.clone(), phi.iter().map(|f| mu * f).collect()),
        InitialCondition::PerturbedWave { perturbation, .. } => {
            let bump: Vec<f64> = match perturbation {
                Perturbation::Amplitude { epsilon } => phi.iter().map(|f| epsilon * f).collect(),
                Perturbation::GaussianBump { epsilon, center, width } => xs
                    .iter()
                    .map(|&x| epsilon * (-((x - center) / width).powi(2)).exp())
                    .collect(),
            };
            let u: Vec<f64> = phi.iter().zip(&bump).map(|(f, b)| f + b).collect();
            let v = u.iter().map(|f| mu * f).collect();
            (u, v)
        }
        InitialCondition::TwoSpeedPair { omega2, .. } => {
            let second = WaveProfile::new(p, omega2, hu, mu)?;
            (phi.clone(), xs.iter().map(|&x| mu * second.phi(x)).collect())
        }
    };
    Ok(Setup { grid, reference, u0, v0 })
}

fn cfl_number(grid: &SpectralGrid, h: &HomogeneousNonlinearity, u: &[f64], v: &[f64], dt: f64) -> f64 {
    let symbol_max = grid
        .wavenumbers()
        .iter()
        .map(|&k| k.abs() / (1.0 + k * k))
        .fold(0.0, f64::max);
    let grad_max = u
        .iter()
        .zip(v)
        .map(|(&a, &b)| {
            let (x, y) = h.grad(a, b);
            x.abs().max(y.abs())
        })
        .fold(0.0, f64::max);
    dt * symbol_max * (1.0 + grad_max)
}

/// Runs the configured simulation to `t_end`.
pub fn run(config: &SimulationConfig) -> Result<SimulationRun> {
    let st = setup(config)?;
    let s = &config.settings;
    let dealias = config.dealias();
    let mut stepper = Stepper::new(st.grid.clone(), config.h.clone(), dealias);
    let xs = st.grid.points();
    let ref_u: Vec<f64> = xs.iter().map(|&x| st.reference.phi(x)).collect();
    let ref_v: Vec<f64> = ref_u.iter().map(|f| config.mu * f).collect();
    let reference = FieldSpectrum::of(&st.grid, &ref_u, &ref_v);

    let mut state = stepper.to_spectral(&st.u0, &st.v0);
    let n_steps = config.n_steps();
    let mut out = SimulationRun {
        times: Vec::new(),
        conserved: Vec::new(),
        deviation: Vec::new(),
        shift: Vec::new(),
        checkpoints: Vec::new(),
        domain_length: st.grid.length(),
        n_modes: s.n_modes,
        dealias,
        cfl: cfl_number(&st.grid, &config.h, &st.u0, &st.v0, s.dt),
    };

    let record = |out: &mut SimulationRun, stepper: &Stepper, state: &[Complex64], step: usize| {
        let time = step as f64 * s.dt;
        let (u, v) = stepper.to_physical(state);
        let md = modulated_distance(stepper.grid(), &stepper.split(state), &reference);
        out.times.push(time);
        out.conserved.push(conserved(&u, &v, stepper.grid(), &config.h));
        out.deviation.push(md.distance);
        out.shift.push(md.shift);
        let keep = match s.checkpoint_every {
            Some(c) => step.is_multiple_of(c),
            None => step == 0,
        };
        if keep || step == n_steps {
            out.checkpoints.push(Snapshot {
                time,
                x_min: stepper.grid().x(0),
                dx: stepper.grid().dx(),
                u,
                v,
            });
        }
    };

    record(&mut out, &stepper, &state, 0);
    for step in 1..=n_steps {
        stepper.step(&mut state, s.dt, (step - 1) as f64 * s.dt)?;
        if step.is_multiple_of(s.sample_every) || step == n_steps {
            record(&mut out, &stepper, &state, step);
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StabilityExperiment {
    pub run: SimulationRun,
    pub verdict: HeuristicVerdict,
    pub initial_deviation: f64,
    pub max_deviation: f64,
    pub final_deviation: f64,
}

/// Runs a perturbed or two-speed configuration and tags the outcome.
///
/// The tag is an empirical label from the deviation history, not a proof.
pub fn stability_experiment(config: &SimulationConfig) -> Result<StabilityExperiment> {
    if let InitialCondition::ExactWave { .. } = config.settings.initial {
        return Err(Error::InvalidConfig(
            "stability experiments need a perturbed wave or a two-speed pair".into(),
        ));
    }
    let run = run(config)?;
    let verdict = run.classify(config.settings.thresholds);
    Ok(StabilityExperiment {
        initial_deviation: run.initial_deviation(),
        max_deviation: run.max_deviation(),
        final_deviation: run.final_deviation(),
        verdict,
        run,
    })
}

/// Independent runs in parallel; results in input order.
pub fn run_many(configs: &[SimulationConfig]) -> Vec<Result<SimulationRun>> {
    configs.par_iter().map(run).collect()
}
