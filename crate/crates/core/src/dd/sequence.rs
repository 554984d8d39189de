//! XY-4 cycles, DD interleaved with gate schedules, and decoupling probes.

use crate::dfs::{project_to_logical, LogicalBasis};
use crate::error::{Error, Result};
use crate::linalg::{expm_hermitian, phase_invariant_fidelity, ComplexMatrix};
use crate::pauli::Coefficient;
use crate::scalar::Real;

use crate::gates::GateSchedule;

use super::bath::{reduce_to_system, BathModel};
use super::pulse::{register_pulse, Axis, DDErrorModel};

/// Pulse order within one XY-4 cycle; each pulse follows a free slice.
pub const XY4: [Axis; 4] = [Axis::X, Axis::Y, Axis::X, Axis::Y];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct InterleavingPlan {
    pub cycles_per_segment: usize,
}

impl InterleavingPlan {
    pub const SLICES_PER_CYCLE: usize = 4;

    pub fn new(cycles_per_segment: usize) -> Result<Self> {
        if cycles_per_segment == 0 {
            return Err(Error::InvalidParameter("cycles_per_segment must be positive".into()));
        }
        Ok(Self { cycles_per_segment })
    }

    pub fn slices_per_segment(&self) -> usize {
        Self::SLICES_PER_CYCLE * self.cycles_per_segment
    }
}

impl Default for InterleavingPlan {
    fn default() -> Self {
        Self { cycles_per_segment: 2 }
    }
}

fn xy4_pulses<T: Real>(n_system: usize, n_bath: usize, errors: &DDErrorModel<T>) -> Result<[ComplexMatrix<T>; 2]> {
    Ok([
        register_pulse(Axis::X, n_system, n_bath, errors)?,
        register_pulse(Axis::Y, n_system, n_bath, errors)?,
    ])
}

/// Applies `cycles` XY-4 cycles around a fixed free propagator `f`:
/// `(P_Y f P_X f P_Y f P_X f)^cycles`.
fn repeat_xy4<T: Real>(f: &ComplexMatrix<T>, pulses: &[ComplexMatrix<T>; 2], cycles: usize) -> ComplexMatrix<T> {
    let mut u = ComplexMatrix::identity(f.dim());
    for _ in 0..cycles {
        for axis in XY4 {
            let p = match axis {
                Axis::X => &pulses[0],
                Axis::Y => &pulses[1],
            };
            u = p * &(f * &u);
        }
    }
    u
}

/// One XY-4 cycle `P_Y F P_X F P_Y F P_X F` with `F = exp(-i free_h dt)`.
/// Pulses act on the first `n_system` qubits of `free_h`'s register.
pub fn dd_cycle<T: Real>(free_h: &ComplexMatrix<T>, dt: T, errors: &DDErrorModel<T>, n_system: usize) -> Result<ComplexMatrix<T>> {
    if dt <= T::zero() {
        return Err(Error::InvalidParameter("dt must be positive".into()));
    }
    let n_total = free_h.dim().trailing_zeros() as usize;
    if free_h.dim() != 1 << n_total || n_total < n_system {
        return Err(Error::DimensionMismatch {
            expected: 1 << n_system,
            actual: free_h.dim(),
        });
    }
    let f = expm_hermitian(free_h, dt)?;
    Ok(repeat_xy4(&f, &xy4_pulses(n_system, n_total - n_system, errors)?, 1))
}

/// Splits every segment into `4 * cycles` slices of `exp(-i[(A/m) H + (|A|/m) H_SB])`
/// with an XY-4 pulse after each slice. Segment duration is `|A|`.
pub fn interleave<T: Real + Coefficient>(
    schedule: &GateSchedule<T>,
    bath: &BathModel<T>,
    plan: &InterleavingPlan,
    errors: &DDErrorModel<T>,
) -> Result<ComplexMatrix<T>> {
    let n = schedule.n_qubits();
    if bath.system_qubits() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            actual: bath.system_qubits(),
        });
    }
    let n_bath = bath.bath_qubits();
    let pulses = xy4_pulses(n, n_bath, errors)?;
    let h_sb = if bath.is_zero() { None } else { Some(bath.coupling_matrix()?) };
    let m = T::lit(plan.slices_per_segment() as f64);
    let mut u = ComplexMatrix::identity(1 << (n + n_bath));
    for seg in schedule.segments() {
        let h = seg.hamiltonian().padded(n_bath).to_matrix()?;
        let mut slice_h = h.scale_real(seg.area() / m);
        if let Some(hb) = &h_sb {
            slice_h = &slice_h + &hb.scale_real(seg.area().abs() / m);
        }
        let f = expm_hermitian(&slice_h, T::one())?;
        u = &repeat_xy4(&f, &pulses, plan.cycles_per_segment) * &u;
    }
    Ok(u)
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ErrorFidelity<T = f64> {
    /// Trace overlap on the full system propagators (bath-reduced if needed).
    pub physical: T,
    /// The same overlap restricted to the code space.
    pub logical: T,
}

/// Fidelity between the interleaved gate with ideal pulses and with `errors`.
pub fn gate_fidelity_under_error<T: Real + Coefficient>(
    schedule: &GateSchedule<T>,
    basis: &LogicalBasis<T>,
    plan: &InterleavingPlan,
    errors: &DDErrorModel<T>,
    bath: &BathModel<T>,
) -> Result<ErrorFidelity<T>> {
    if basis.n_physical() != schedule.n_qubits() {
        return Err(Error::DimensionMismatch {
            expected: schedule.n_qubits(),
            actual: basis.n_physical(),
        });
    }
    let n_bath = bath.bath_qubits();
    let ideal = reduce_to_system(&interleave(schedule, bath, plan, &DDErrorModel::ideal())?, n_bath);
    let actual = reduce_to_system(&interleave(schedule, bath, plan, errors)?, n_bath);
    Ok(ErrorFidelity {
        physical: phase_invariant_fidelity(&ideal, &actual),
        logical: phase_invariant_fidelity(&project_to_logical(&ideal, basis)?, &project_to_logical(&actual, basis)?),
    })
}

fn identity_error<T: Real>(u: &ComplexMatrix<T>, n_bath: usize) -> T {
    let red = reduce_to_system(u, n_bath);
    let f = phase_invariant_fidelity(&red, &ComplexMatrix::identity(red.dim()));
    (T::one() - f).max(T::zero())
}

/// Number of whole XY-4 cycles of length `4 dt` in `total_time`.
pub fn whole_cycles<T: Real>(dt: T, total_time: T) -> Result<usize> {
    let bad = || Error::BadPartition {
        dt: dt.to_f64(),
        total: total_time.to_f64(),
    };
    if dt <= T::zero() || total_time <= T::zero() {
        return Err(bad());
    }
    let cycles = total_time / (T::lit(4.0) * dt);
    let rounded = cycles.round();
    if rounded < T::one() || (cycles - rounded).abs() > T::lit(1e-6) * rounded.max(T::one()) {
        return Err(bad());
    }
    Ok(rounded.to_f64() as usize)
}

/// For each `dt`, runs ideal XY-4 cycles under `H_SB` for `total_time` and
/// reports `1 - F(U_sys, I)`.
pub fn decoupling_order_probe<T: Real + Coefficient>(
    bath: &BathModel<T>,
    dt_values: &[T],
    total_time: T,
) -> Result<Vec<(T, T)>> {
    let h = bath.coupling_matrix()?;
    let (n, n_bath) = (bath.system_qubits(), bath.bath_qubits());
    let pulses = xy4_pulses(n, n_bath, &DDErrorModel::ideal())?;
    dt_values
        .iter()
        .map(|&dt| {
            let cycles = whole_cycles(dt, total_time)?;
            let f = expm_hermitian(&h, dt)?;
            Ok((dt, identity_error(&repeat_xy4(&f, &pulses, cycles), n_bath)))
        })
        .collect()
}

/// `1 - F(U_sys, I)` for free evolution under `H_SB` without pulses.
pub fn bare_evolution_error<T: Real + Coefficient>(bath: &BathModel<T>, total_time: T) -> Result<T> {
    let u = expm_hermitian(&bath.coupling_matrix()?, total_time)?;
    Ok(identity_error(&u, bath.bath_qubits()))
}

/// Least-squares slope of `ln(error)` against `ln(dt)`. Points with
/// non-positive error are skipped; `None` if fewer than two remain.
pub fn fit_order<T: Real>(points: &[(T, T)]) -> Option<T> {
    let logs: Vec<(f64, f64)> = points
        .iter()
        .filter(|(dt, e)| *dt > T::zero() && *e > T::zero())
        .map(|&(dt, e)| (Real::to_f64(dt).ln(), Real::to_f64(e).ln()))
        .collect();
    if logs.len() < 2 {
        return None;
    }
    let k = logs.len() as f64;
    let mx = logs.iter().map(|p| p.0).sum::<f64>() / k;
    let my = logs.iter().map(|p| p.1).sum::<f64>() / k;
    let sxx: f64 = logs.iter().map(|p| (p.0 - mx).powi(2)).sum();
    if sxx == 0.0 {
        return None;
    }
    let sxy: f64 = logs.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    Some(T::lit(sxy / sxx))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dd::bath::BathKind;
    use crate::gates::{evolve_schedule, schedule_u1, schedule_u3, GateKind, ScheduleSegment};
    use crate::linalg::phase_invariant_fidelity;
    use crate::pauli::PauliSum;
    use std::f64::consts::PI;

    fn scalar_bath(seed: u64) -> BathModel<f64> {
        BathModel::random(BathKind::ScalarField, 4, 0.1, seed).unwrap()
    }

    #[test]
    fn free_cycle_is_identity_up_to_phase() {
        let u = dd_cycle(&ComplexMatrix::<f64>::zeros(16), 0.1, &DDErrorModel::ideal(), 4).unwrap();
        assert!(phase_invariant_fidelity(&u, &ComplexMatrix::identity(16)) > 1.0 - 1e-14);
        let u = dd_cycle(&ComplexMatrix::<f64>::zeros(8), 0.1, &DDErrorModel::ideal(), 3).unwrap();
        assert!(phase_invariant_fidelity(&u, &ComplexMatrix::identity(8)) > 1.0 - 1e-14);
    }

    #[test]
    fn cycle_beats_bare_evolution() {
        let bath = scalar_bath(11);
        let h = bath.coupling_matrix().unwrap();
        let dt = 0.05;
        let id = ComplexMatrix::identity(16);
        let dd = dd_cycle(&h, dt, &DDErrorModel::ideal(), 4).unwrap();
        let bare = expm_hermitian(&h, 4.0 * dt).unwrap();
        assert!(phase_invariant_fidelity(&dd, &id) > phase_invariant_fidelity(&bare, &id));
    }

    #[test]
    fn cycle_tends_to_identity() {
        let h = scalar_bath(2).coupling_matrix().unwrap();
        let u = dd_cycle(&h, 1e-7, &DDErrorModel::ideal(), 4).unwrap();
        assert!(phase_invariant_fidelity(&u, &ComplexMatrix::identity(16)) > 1.0 - 1e-12);
    }

    #[test]
    fn transparent_without_bath_or_error() {
        let basis = LogicalBasis::<f64>::new(4).unwrap();
        let s = schedule_u3(4, 1, 2, 0.7).unwrap();
        let u = interleave(&s, &BathModel::zero(4).unwrap(), &InterleavingPlan::default(), &DDErrorModel::ideal()).unwrap();
        let direct = evolve_schedule(&s).unwrap();
        let a = project_to_logical(&u, &basis).unwrap();
        let b = project_to_logical(&direct, &basis).unwrap();
        assert!(phase_invariant_fidelity(&a, &b) > 1.0 - 1e-12);
        assert!(phase_invariant_fidelity(&u, &direct) > 1.0 - 1e-12);
    }

    #[test]
    fn more_cycles_average_better() {
        let s = schedule_u1(4, 1, 0.5).unwrap();
        let bath = scalar_bath(5);
        let target = evolve_schedule(&s).unwrap();
        let f = |c| {
            let u = interleave(&s, &bath, &InterleavingPlan::new(c).unwrap(), &DDErrorModel::ideal()).unwrap();
            phase_invariant_fidelity(&u, &target)
        };
        assert!(f(4) > f(2));
        assert!(f(2) > f(1));
    }

    #[test]
    fn zero_area_schedule_reduces_to_free_cycle() {
        let seg = ScheduleSegment::new(PauliSum::zero(4), 0.0).unwrap();
        let s = GateSchedule::new(4, GateKind::Custom, vec![seg]).unwrap();
        let u = interleave(&s, &BathModel::zero(4).unwrap(), &InterleavingPlan::new(1).unwrap(), &DDErrorModel::ideal()).unwrap();
        let c = dd_cycle(&ComplexMatrix::zeros(16), 1.0, &DDErrorModel::ideal(), 4).unwrap();
        assert!(u.max_abs_diff(&c) < 1e-14);
    }

    #[test]
    fn error_free_fidelity_is_one() {
        let basis = LogicalBasis::<f64>::new(4).unwrap();
        let s = schedule_u3(4, 1, 2, -PI / 4.0).unwrap();
        let f = gate_fidelity_under_error(&s, &basis, &InterleavingPlan::default(), &DDErrorModel::ideal(), &BathModel::zero(4).unwrap()).unwrap();
        assert!(f.physical > 1.0 - 1e-12);
        assert!(f.logical > 1.0 - 1e-12);
    }

    #[test]
    fn probe_without_bath_is_exact() {
        let pts = decoupling_order_probe(&BathModel::<f64>::zero(4).unwrap(), &[0.1, 0.05], 0.8).unwrap();
        assert!(pts.iter().all(|&(_, e)| e <= 1e-10));
        assert_eq!(fit_order(&pts), None);
    }

    #[test]
    fn probe_rejects_fractional_cycles() {
        let r = decoupling_order_probe(&scalar_bath(1), &[0.3], 1.0);
        assert!(matches!(r, Err(Error::BadPartition { .. })));
    }

    #[test]
    fn halving_dt_cuts_error_by_about_four() {
        let bath = scalar_bath(7);
        let pts = decoupling_order_probe(&bath, &[0.1, 0.05, 0.025], 0.8).unwrap();
        for w in pts.windows(2) {
            let ratio = w[0].1 / w[1].1;
            assert!((2.8..=5.5).contains(&ratio), "ratio {ratio}");
        }
        let bare = bare_evolution_error(&bath, 0.8).unwrap();
        assert!(pts.iter().all(|&(_, e)| e < bare));
    }

    #[test]
    fn fit_recovers_power_law() {
        let pts: Vec<(f64, f64)> = [0.1, 0.05, 0.025].iter().map(|&d| (d, 3.0 * d * d)).collect();
        assert!((fit_order(&pts).unwrap() - 2.0).abs() < 1e-12);
    }
}
