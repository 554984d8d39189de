//! Dynamical decoupling with imperfect pulses.

mod bath;
mod pulse;
mod sequence;
mod sweep;

pub use bath::{reduce_to_system, BathKind, BathModel, DEFAULT_BATH_WIDTH};
pub use pulse::{
    ideal_pulse, imperfect_pulse, imperfect_pulse_detuning, imperfect_pulse_flip, register_pulse, single_qubit_rotation, Axis,
    DDErrorModel,
};
pub use sequence::{
    bare_evolution_error, dd_cycle, decoupling_order_probe, fit_order, gate_fidelity_under_error, interleave, whole_cycles,
    ErrorFidelity, InterleavingPlan, XY4,
};
pub use sweep::{gate_angle, grid, mean_fidelity, run_sweep, sweep_csv, ErrorKind, SweepRow, SweepSpec, CSV_HEADER};
