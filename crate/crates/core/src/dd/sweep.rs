//! Fidelity sweeps over flip-angle and detuning errors.

use std::fmt::Write as _;

use rayon::prelude::*;

use crate::dfs::LogicalBasis;
use crate::error::{Error, Result};
use crate::gates::{GateKind, GateSchedule};
use crate::pauli::Coefficient;
use crate::scalar::Real;

use super::bath::BathModel;
use super::pulse::DDErrorModel;
use super::sequence::{gate_fidelity_under_error, InterleavingPlan};

pub const CSV_HEADER: &str = "error_kind,error_value,fidelity,seed,plan_cycles,gate,theta_or_phi";

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ErrorKind {
    Detuning,
    Flip,
}

impl ErrorKind {
    pub fn name(self) -> &'static str {
        match self {
            ErrorKind::Detuning => "detuning",
            ErrorKind::Flip => "flip",
        }
    }

    pub fn model<T: Real>(self, value: T, theta_p: T) -> DDErrorModel<T> {
        let base = DDErrorModel { theta_p, ..DDErrorModel::ideal() };
        match self {
            ErrorKind::Flip => DDErrorModel { epsilon: value, ..base },
            ErrorKind::Detuning => DDErrorModel { delta: value, ..base },
        }
    }
}

/// Inclusive grid `lo, lo + step, ..., hi`. Values within `1e-12 * step` of
/// zero are snapped to zero.
pub fn grid<T: Real>(lo: T, hi: T, step: T) -> Result<Vec<T>> {
    if !(step > T::zero()) || hi < lo {
        return Err(Error::InvalidParameter(format!("bad grid [{lo}, {hi}] step {step}")));
    }
    let count = ((hi - lo) / step + T::lit(1e-9)).floor().to_f64() as usize + 1;
    Ok((0..count)
        .map(|i| {
            let v = lo + step * T::lit(i as f64);
            if v.abs() < step * T::lit(1e-12) { T::zero() } else { v }
        })
        .collect())
}

/// Gate angle: `theta` for U1/U2, `phi` for U3.
pub fn gate_angle<T: Real>(kind: &GateKind<T>) -> T {
    match *kind {
        GateKind::U1 { theta, .. } | GateKind::U2 { theta, .. } => theta,
        GateKind::U3 { phi, .. } => phi,
        GateKind::Custom => T::zero(),
    }
}

#[derive(Clone, Debug)]
pub struct SweepSpec<T = f64> {
    pub schedule: GateSchedule<T>,
    pub plan: InterleavingPlan,
    pub bath: BathModel<T>,
    pub flip_values: Vec<T>,
    pub detuning_values: Vec<T>,
    pub theta_p: T,
    /// Recorded in every row; the bath is expected to have been drawn from it.
    pub seed: u64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SweepRow<T = f64> {
    pub kind: ErrorKind,
    pub value: T,
    pub physical: T,
    pub logical: T,
}

/// Rows ordered by error kind (`detuning` before `flip`), then ascending value.
pub fn run_sweep<T: Real + Coefficient>(spec: &SweepSpec<T>) -> Result<Vec<SweepRow<T>>> {
    let basis = LogicalBasis::new(spec.schedule.n_qubits())?;
    let mut points: Vec<(ErrorKind, T)> = spec
        .flip_values
        .iter()
        .map(|&v| (ErrorKind::Flip, v))
        .chain(spec.detuning_values.iter().map(|&v| (ErrorKind::Detuning, v)))
        .collect();
    points.sort_by(|a, b| a.0.cmp(&b.0).then(a.1.partial_cmp(&b.1).expect("finite grid")));
    points
        .par_iter()
        .map(|&(kind, value)| {
            let f = gate_fidelity_under_error(&spec.schedule, &basis, &spec.plan, &kind.model(value, spec.theta_p), &spec.bath)?;
            Ok(SweepRow {
                kind,
                value,
                physical: f.physical,
                logical: f.logical,
            })
        })
        .collect()
}

/// CSV text with [`CSV_HEADER`]; fidelity is the physical one.
pub fn sweep_csv<T: Real + Coefficient>(spec: &SweepSpec<T>, rows: &[SweepRow<T>]) -> String {
    let mut out = String::with_capacity(64 * (rows.len() + 1));
    out.push_str(CSV_HEADER);
    out.push('\n');
    let gate = spec.schedule.kind().name();
    let angle = gate_angle(spec.schedule.kind()).to_f64();
    for r in rows {
        writeln!(
            out,
            "{},{:.6},{:.12},{},{},{},{:.12}",
            r.kind.name(),
            r.value.to_f64(),
            r.physical.to_f64(),
            spec.seed,
            spec.plan.cycles_per_segment,
            gate,
            angle
        )
        .expect("writing to String");
    }
    out
}

/// Mean physical fidelity over the rows of one kind.
pub fn mean_fidelity<T: Real>(rows: &[SweepRow<T>], kind: ErrorKind) -> Option<T> {
    let vals: Vec<T> = rows.iter().filter(|r| r.kind == kind).map(|r| r.physical).collect();
    if vals.is_empty() {
        return None;
    }
    Some(vals.iter().fold(T::zero(), |a, &b| a + b) / T::lit(vals.len() as f64))
}
