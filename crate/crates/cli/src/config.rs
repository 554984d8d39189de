//! Run configuration: defaults, an optional TOML file, then flags.

use std::f64::consts::PI;
use std::path::{Path, PathBuf};

use clap::{Args, ValueEnum};
use serde::Deserialize;

use holodd::dd::{BathKind, BathModel, InterleavingPlan, DEFAULT_BATH_WIDTH};
use holodd::gates::{schedule_u1, schedule_u2, schedule_u3, GateSchedule};

use crate::CliError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Gate {
    U1,
    U2,
    U3,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum BathArg {
    None,
    Scalar,
    Qubit,
}

fn parse_pair(s: &str) -> Result<(f64, f64), String> {
    let (a, b) = s.split_once(',').ok_or_else(|| format!("expected LO,HI, got {s:?}"))?;
    let p = |x: &str| x.trim().parse::<f64>().map_err(|e| format!("{x:?}: {e}"));
    Ok((p(a)?, p(b)?))
}

/// Settings shared by every subcommand. Unset flags fall back to the config
/// file, then to built-in defaults.
#[derive(Args, Debug, Default, Clone)]
pub struct Overrides {
    /// TOML file with the same keys as the flags (underscores for dashes)
    #[arg(long, value_name = "FILE")]
    pub config: Option<PathBuf>,
    /// Physical qubits (even, 4..=8)
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long, value_enum)]
    pub gate: Option<Gate>,
    /// Target logical qubit for u1/u2
    #[arg(long)]
    pub j: Option<usize>,
    /// First logical qubit for u3
    #[arg(long)]
    pub k: Option<usize>,
    /// Second logical qubit for u3 (k < l)
    #[arg(long)]
    pub l: Option<usize>,
    /// theta for u1/u2, phi for u3
    #[arg(long, allow_hyphen_values = true)]
    pub angle: Option<f64>,
    /// XY-4 cycles per schedule segment
    #[arg(long)]
    pub cycles: Option<usize>,
    /// Flip-angle error range LO,HI
    #[arg(long, value_parser = parse_pair, allow_hyphen_values = true)]
    pub eps_range: Option<(f64, f64)>,
    /// Detuning error range LO,HI
    #[arg(long, value_parser = parse_pair, allow_hyphen_values = true)]
    pub delta_range: Option<(f64, f64)>,
    /// Grid step for both error sweeps
    #[arg(long)]
    pub step: Option<f64>,
    #[arg(long, value_enum)]
    pub bath: Option<BathArg>,
    /// Half-width of the uniform bath coupling distribution
    #[arg(long)]
    pub bath_width: Option<f64>,
    #[arg(long)]
    pub seed: Option<u64>,
    /// Output file (stdout when omitted)
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Comma-separated dt values for the decoupling probe
    #[arg(long, value_delimiter = ',')]
    pub dt_ladder: Option<Vec<f64>>,
    /// Total evolution time for the decoupling probe
    #[arg(long)]
    pub total_time: Option<f64>,
    /// Time samples per segment in the holonomy check
    #[arg(long)]
    pub samples: Option<usize>,
}

#[derive(Deserialize, Debug, Default)]
#[serde(deny_unknown_fields)]
struct FileConfig {
    n: Option<usize>,
    gate: Option<Gate>,
    j: Option<usize>,
    k: Option<usize>,
    l: Option<usize>,
    angle: Option<f64>,
    cycles: Option<usize>,
    eps_range: Option<[f64; 2]>,
    delta_range: Option<[f64; 2]>,
    step: Option<f64>,
    bath: Option<BathArg>,
    bath_width: Option<f64>,
    seed: Option<u64>,
    out: Option<PathBuf>,
    dt_ladder: Option<Vec<f64>>,
    total_time: Option<f64>,
    samples: Option<usize>,
}

fn read_file(path: &Path) -> Result<FileConfig, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
    toml::from_str(&text).map_err(|e| CliError::Config(format!("{}: {e}", path.display())))
}

/// Fully resolved settings; `bath` stays optional so each command picks its default.
#[derive(Clone, Debug, PartialEq)]
pub struct RunConfig {
    pub n: usize,
    pub gate: Gate,
    pub j: usize,
    pub k: usize,
    pub l: usize,
    pub angle: f64,
    pub cycles: usize,
    pub eps_range: (f64, f64),
    pub delta_range: (f64, f64),
    pub step: f64,
    pub bath: Option<BathArg>,
    pub bath_width: f64,
    pub seed: u64,
    pub out: Option<PathBuf>,
    pub dt_ladder: Vec<f64>,
    pub total_time: f64,
    pub samples: usize,
}

impl RunConfig {
    pub fn resolve(o: &Overrides) -> Result<Self, CliError> {
        let f = match &o.config {
            Some(p) => read_file(p)?,
            None => FileConfig::default(),
        };
        let c = Self {
            n: o.n.or(f.n).unwrap_or(4),
            gate: o.gate.or(f.gate).unwrap_or(Gate::U3),
            j: o.j.or(f.j).unwrap_or(1),
            k: o.k.or(f.k).unwrap_or(1),
            l: o.l.or(f.l).unwrap_or(2),
            angle: o.angle.or(f.angle).unwrap_or(-PI / 4.0),
            cycles: o.cycles.or(f.cycles).unwrap_or(InterleavingPlan::default().cycles_per_segment),
            eps_range: o.eps_range.or(f.eps_range.map(|[a, b]| (a, b))).unwrap_or((-0.1, 0.1)),
            delta_range: o.delta_range.or(f.delta_range.map(|[a, b]| (a, b))).unwrap_or((-0.1, 0.1)),
            step: o.step.or(f.step).unwrap_or(0.005),
            bath: o.bath.or(f.bath),
            bath_width: o.bath_width.or(f.bath_width).unwrap_or(DEFAULT_BATH_WIDTH),
            seed: o.seed.or(f.seed).unwrap_or(0),
            out: o.out.clone().or(f.out),
            dt_ladder: o.dt_ladder.clone().or(f.dt_ladder).unwrap_or_else(|| vec![0.1, 0.05, 0.025]),
            total_time: o.total_time.or(f.total_time).unwrap_or(0.8),
            samples: o.samples.or(f.samples).unwrap_or(8),
        };
        c.validate()?;
        Ok(c)
    }

    fn validate(&self) -> Result<(), CliError> {
        let bad = |m: String| Err(CliError::Config(m));
        if self.n % 2 == 1 || !(4..=8).contains(&self.n) {
            return bad(format!("n must be even and in 4..=8, got {}", self.n));
        }
        if self.cycles == 0 {
            return bad("cycles must be positive".into());
        }
        if !(self.step > 0.0) {
            return bad(format!("step must be positive, got {}", self.step));
        }
        for (name, (lo, hi)) in [("eps-range", self.eps_range), ("delta-range", self.delta_range)] {
            if !(lo <= hi) || lo < -0.5 || hi > 0.5 {
                return bad(format!("{name} must satisfy -0.5 <= LO <= HI <= 0.5, got {lo},{hi}"));
            }
        }
        if !self.angle.is_finite() {
            return bad("angle must be finite".into());
        }
        if !(self.bath_width >= 0.0) {
            return bad("bath-width must be non-negative".into());
        }
        if self.samples == 0 {
            return bad("samples must be positive".into());
        }
        if self.dt_ladder.is_empty() || self.dt_ladder.iter().any(|&d| !(d > 0.0)) {
            return bad("dt-ladder needs positive entries".into());
        }
        if !(self.total_time > 0.0) {
            return bad("total-time must be positive".into());
        }
        Ok(())
    }

    pub fn schedule(&self) -> Result<GateSchedule<f64>, CliError> {
        match self.gate {
            Gate::U1 => schedule_u1(self.n, self.j, self.angle),
            Gate::U2 => schedule_u2(self.n, self.j, self.angle),
            Gate::U3 => schedule_u3(self.n, self.k, self.l, self.angle),
        }
        .map_err(|e| CliError::Config(e.to_string()))
    }

    pub fn plan(&self) -> InterleavingPlan {
        InterleavingPlan {
            cycles_per_segment: self.cycles,
        }
    }

    /// Bath for `n_system` qubits, with `default` when none was configured.
    pub fn bath_model(&self, n_system: usize, default: BathArg) -> Result<BathModel<f64>, CliError> {
        let model = match self.bath.unwrap_or(default) {
            BathArg::None => BathModel::zero(n_system),
            BathArg::Scalar => BathModel::random(BathKind::ScalarField, n_system, self.bath_width, self.seed),
            BathArg::Qubit => BathModel::random(BathKind::BathQubit, n_system, self.bath_width, self.seed),
        };
        model.map_err(|e| CliError::Config(e.to_string()))
    }
}
