//! Holonomic gate schedules, their logical action and holonomy certificates.

mod heisenberg;
mod holonomy;
mod logical;
mod schedule;

pub use heisenberg::{heisenberg_pair, heisenberg_reduction, HeisenbergCouplings};
pub use holonomy::{
    barred_basis, holonomy_frames, to_barred_basis, u3_block_decomposition, verify_holonomy,
    verify_holonomy_in_frames, y_eigenstates, HolonomyReport, U3Blocks,
};
pub use logical::{
    logical_gate, operator_schmidt_rank, phase_aligned_distance, synthesize, target_gate, GateReport,
};
pub use schedule::{
    evolve_schedule, schedule_u1, schedule_u2, schedule_u3, xx_coupling, zz_coupling, GateKind,
    GateSchedule, ScheduleSegment,
};
