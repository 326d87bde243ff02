//! Experiment driver: configurations, time sweeps, parameter scans, and
//! CSV/SVG emission.
//!
//! An experiment always compares two evolving states of the same model that
//! share the environment constants and the splitting `eps`, differing in
//! the correlation parameter and/or the initial qubit amplitudes. The two
//! amplitude sets are angle-parameterized on the Bloch sphere:
//! `b+ = cos(theta/2)`, `b- = e^(i zeta) sin(theta/2)`, so the default
//! `theta = pi/2`, `zeta = 0` is the equal-amplitude preparation.

mod config;
mod emit;

pub use config::{parse_config, ConfigError};
pub use emit::{emit_csv, emit_plot, emit_scan_csv, EmitError, PlotInput};

use num_complex::Complex64;
use thiserror::Error;

use crate::distances::{all_distances, DistanceError, DistanceRecord};
use crate::model_a::{rho_a, ModelAParams, ModelError};
use crate::model_b::{rho_b, CorrelatedBranch, EnvPrep, ModelBParams};
use crate::qstate::QubitState;

#[derive(Debug, Error)]
pub enum RunError {
    #[error("model evaluation failed at t = {t}: {source}")]
    Model { t: f64, source: ModelError },
    #[error("distance evaluation failed at t = {t}: {source}")]
    Distance { t: f64, source: DistanceError },
}

/// Uniform time grid with inclusive endpoints.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TimeGrid {
    pub t_start: f64,
    pub t_end: f64,
    pub n: usize,
}

impl TimeGrid {
    pub fn step(&self) -> f64 {
        (self.t_end - self.t_start) / (self.n - 1) as f64
    }

    pub fn times(&self) -> impl Iterator<Item = f64> + '_ {
        let step = self.step();
        (0..self.n).map(move |k| self.t_start + step * k as f64)
    }
}

/// Scan axis for [`run_scan`]. `Lam`, `Theta` and `Zeta` act on the second
/// state; `ZAbs`, `Phase` and `BosonN` change the shared environment
/// preparation of both states.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ScanAxis {
    Lam,
    ZAbs,
    Phase,
    Theta,
    Zeta,
    BosonN,
}

impl ScanAxis {
    pub fn key(&self) -> &'static str {
        match self {
            ScanAxis::Lam => "lam",
            ScanAxis::ZAbs => "z_abs",
            ScanAxis::Phase => "phase",
            ScanAxis::Theta => "theta",
            ScanAxis::Zeta => "zeta",
            ScanAxis::BosonN => "n",
        }
    }
}

/// Scan request: ordered axis values; the statistic is fixed to
/// `MAX[D(t) - D(0)]` over the time grid, reported per measure.
#[derive(Debug, Clone, PartialEq)]
pub struct ScanSpec {
    pub axis: ScanAxis,
    pub values: Vec<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Model {
    A,
    B,
}

/// One state's variable inputs: correlation parameter and Bloch angles.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StateSpec {
    pub lam: f64,
    pub theta: f64,
    pub zeta: f64,
}

impl StateSpec {
    pub fn amplitudes(&self) -> (Complex64, Complex64) {
        let b_plus = Complex64::new((0.5 * self.theta).cos(), 0.0);
        let b_minus = Complex64::from_polar((0.5 * self.theta).sin(), self.zeta);
        (b_plus, b_minus)
    }
}

/// Model-A environment constants shared by both states.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EnvA {
    pub alpha_eff: f64,
    pub gamma_eff: f64,
    pub mu: f64,
    pub nu: f64,
}

/// Model-B environment constants shared by both states.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EnvB {
    pub g: f64,
    pub prep: EnvPrep,
    pub branch: CorrelatedBranch,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum EnvSpec {
    A(EnvA),
    B(EnvB),
}

/// A fully resolved experiment: shared environment, splitting, two state
/// specs, time grid, optional scan, optional output paths.
#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentConfig {
    pub env: EnvSpec,
    pub eps: f64,
    pub state1: StateSpec,
    pub state2: StateSpec,
    pub grid: TimeGrid,
    pub scan: Option<ScanSpec>,
    pub csv_path: Option<String>,
    pub plot_path: Option<String>,
}

impl ExperimentConfig {
    pub fn model(&self) -> Model {
        match self.env {
            EnvSpec::A(_) => Model::A,
            EnvSpec::B(_) => Model::B,
        }
    }

    /// Canonical `key = value` lines describing the resolved experiment;
    /// fixed order, so identical configs serialize identically.
    pub fn metadata(&self) -> Vec<(String, String)> {
        let mut meta: Vec<(String, String)> = Vec::new();
        let mut push = |k: &str, v: String| meta.push((k.to_string(), v));
        match &self.env {
            EnvSpec::A(a) => {
                push("model", "A".into());
                push("alpha_eff", a.alpha_eff.to_string());
                push("gamma_eff", a.gamma_eff.to_string());
                push("mu", a.mu.to_string());
                push("nu", a.nu.to_string());
            }
            EnvSpec::B(b) => {
                push("model", "B".into());
                push("g", b.g.to_string());
                match b.prep {
                    EnvPrep::Coherent { z_abs, phase } => {
                        push("prep", "coherent".into());
                        push("z_abs", z_abs.to_string());
                        push("phase", phase.to_string());
                    }
                    EnvPrep::Number { n } => {
                        push("prep", "number".into());
                        push("nboson", n.to_string());
                    }
                }
                push(
                    "branch",
                    match b.branch {
                        CorrelatedBranch::Excited => "excited".into(),
                        CorrelatedBranch::Ground => "ground".into(),
                    },
                );
            }
        }
        push("eps", self.eps.to_string());
        push("lam1", self.state1.lam.to_string());
        push("theta1", self.state1.theta.to_string());
        push("zeta1", self.state1.zeta.to_string());
        push("lam2", self.state2.lam.to_string());
        push("theta2", self.state2.theta.to_string());
        push("zeta2", self.state2.zeta.to_string());
        push("t_start", self.grid.t_start.to_string());
        push("t_end", self.grid.t_end.to_string());
        push("n", self.grid.n.to_string());
        if let Some(scan) = &self.scan {
            push("scan_axis", scan.axis.key().into());
            push(
                "scan_values",
                scan.values
                    .iter()
                    .map(|v| v.to_string())
                    .collect::<Vec<_>>()
                    .join(","),
            );
        }
        meta
    }

    /// Applies one scan-axis value, returning the modified configuration.
    fn with_axis_value(&self, axis: ScanAxis, value: f64) -> Self {
        let mut cfg = self.clone();
        match axis {
            ScanAxis::Lam => cfg.state2.lam = value,
            ScanAxis::Theta => cfg.state2.theta = value,
            ScanAxis::Zeta => cfg.state2.zeta = value,
            ScanAxis::ZAbs | ScanAxis::Phase => {
                if let EnvSpec::B(env) = &mut cfg.env {
                    if let EnvPrep::Coherent { z_abs, phase } = &mut env.prep {
                        if axis == ScanAxis::ZAbs {
                            *z_abs = value;
                        } else {
                            *phase = value;
                        }
                    }
                }
            }
            ScanAxis::BosonN => {
                if let EnvSpec::B(env) = &mut cfg.env {
                    env.prep = EnvPrep::Number { n: value.round() as u32 };
                }
            }
        }
        cfg
    }

    fn state(&self, which: &StateSpec, t: f64) -> Result<QubitState, RunError> {
        let (b_plus, b_minus) = which.amplitudes();
        let wrap = |source| RunError::Model { t, source };
        match &self.env {
            EnvSpec::A(a) => {
                let params = ModelAParams {
                    alpha_eff: a.alpha_eff,
                    gamma_eff: a.gamma_eff,
                    mu: a.mu,
                    nu: a.nu,
                    eps: self.eps,
                    lam: which.lam,
                    b_plus,
                    b_minus,
                };
                rho_a(&params, t).map_err(wrap)
            }
            EnvSpec::B(b) => {
                let params = ModelBParams {
                    g: b.g,
                    eps: self.eps,
                    lam: which.lam,
                    prep: b.prep,
                    b_plus,
                    b_minus,
                    branch: b.branch,
                };
                rho_b(&params, t).map_err(wrap)
            }
        }
    }
}

/// Sequence of `(t, DistanceRecord)` rows plus the resolved metadata.
#[derive(Debug, Clone)]
pub struct TimeSeries {
    pub rows: Vec<(f64, DistanceRecord)>,
    pub meta: Vec<(String, String)>,
}

impl TimeSeries {
    /// `MAX[D(t) - D(0)]` over the rows, one entry per measure.
    pub fn max_excess(&self) -> [f64; 5] {
        let base = self.rows[0].1.as_array();
        let mut out = [f64::NEG_INFINITY; 5];
        for (_, rec) in &self.rows {
            for (k, v) in rec.as_array().iter().enumerate() {
                out[k] = out[k].max(v - base[k]);
            }
        }
        out
    }
}

/// Scan output: one row of per-measure `MAX[D(t) - D(0)]` per axis value.
#[derive(Debug, Clone)]
pub struct ScanResult {
    pub axis: ScanAxis,
    pub rows: Vec<(f64, [f64; 5])>,
    pub meta: Vec<(String, String)>,
}

/// Evolves both states over the grid and records all five distances.
pub fn run_timeseries(cfg: &ExperimentConfig) -> Result<TimeSeries, RunError> {
    let mut rows = Vec::with_capacity(cfg.grid.n);
    for t in cfg.grid.times() {
        let s1 = cfg.state(&cfg.state1, t)?;
        let s2 = cfg.state(&cfg.state2, t)?;
        let rec = all_distances(&s1, &s2).map_err(|source| RunError::Distance { t, source })?;
        rows.push((t, rec));
    }
    Ok(TimeSeries { rows, meta: cfg.metadata() })
}

/// Runs one time sweep per scan value and reduces each to the
/// `MAX[D(t) - D(0)]` statistic.
pub fn run_scan(cfg: &ExperimentConfig) -> Result<ScanResult, RunError> {
    let scan = cfg.scan.as_ref().expect("run_scan requires a scan section");
    let mut rows = Vec::with_capacity(scan.values.len());
    for &value in &scan.values {
        let sub = cfg.with_axis_value(scan.axis, value);
        let series = run_timeseries(&sub)?;
        rows.push((value, series.max_excess()));
    }
    Ok(ScanResult { axis: scan.axis, rows, meta: cfg.metadata() })
}
