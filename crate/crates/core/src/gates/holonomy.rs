//! Checks of the non-adiabatic holonomy conditions.
//!
//! A gate is holonomic on a subspace `M(0)` spanned by `|psi_k(0)>` when
//! (i) the evolved subspace returns to `M(0)` at the final time and
//! (ii) `<psi_k(t)| H(t) |psi_l(t)> = 0` for all `k, l` and all `t`.
//!
//! For the gates here the code space splits into two cyclic subspaces: the
//! `+-1` eigenspaces of `Y_L` on the rotated qubit for U1 and U3, and of
//! `Z_L` for U2. The first step maps one subspace onto the other and the
//! second step maps it back.

use num_complex::Complex;
use num_traits::{One, Zero};

use crate::dfs::{leakage, project_to_logical, LogicalBasis};
use crate::error::{Error, Result};
use crate::linalg::{kron, subspace_projector, ComplexMatrix, StateVector};
use crate::pauli::Coefficient;
use crate::scalar::Real;

use super::schedule::{evolve_schedule, GateKind, GateSchedule};

#[derive(Clone, Debug, PartialEq)]
pub struct HolonomyReport<T = f64> {
    /// `max ||P(T) - P(0)||` over the cyclic subspaces, operator norm.
    pub cyclic_defect: T,
    /// `max |<psi_k(t)| H |psi_l(t)>|` over subspaces, pairs and sample times.
    pub max_parallel_transport_violation: T,
    /// `||M^dag M - I||` for the logical restriction.
    pub leakage: T,
    /// For two-segment schedules with two subspaces: `||P_1(tau) - P_2(0)||`,
    /// how far the first subspace is from the second at the segment boundary.
    pub swap_defect: Option<T>,
}

impl<T: Real> HolonomyReport<T> {
    pub fn passes(&self, tol: T) -> bool {
        self.cyclic_defect <= tol
            && self.max_parallel_transport_violation <= tol
            && self.leakage <= tol
            && self.swap_defect.is_none_or(|d| d <= tol)
    }
}

fn logical_state<T: Real>(amps: Vec<Complex<T>>) -> StateVector<T> {
    StateVector::new(amps)
}

/// Eigenstates `(|0> +- i|1>)/sqrt(2)` of `sigma_y`, `+1` first.
pub fn y_eigenstates<T: Real>() -> [StateVector<T>; 2] {
    let r = T::FRAC_1_SQRT_2();
    [
        logical_state(vec![Complex::new(r, T::zero()), Complex::new(T::zero(), r)]),
        logical_state(vec![Complex::new(r, T::zero()), Complex::new(T::zero(), -r)]),
    ]
}

fn z_eigenstates<T: Real>() -> [StateVector<T>; 2] {
    [StateVector::basis(2, 0), StateVector::basis(2, 1)]
}

/// Logical product states with `local` on qubit `j` and every computational
/// state on the others.
fn frame_with_local_state<T: Real>(n_logical: usize, j: usize, local: &StateVector<T>) -> Vec<StateVector<T>> {
    let others = n_logical - 1;
    (0..1usize << others)
        .map(|bits| {
            let mut v = StateVector::new(vec![Complex::one()]);
            let mut consumed = 0;
            for q in 1..=n_logical {
                let factor = if q == j {
                    local.clone()
                } else {
                    let bit = (bits >> (others - 1 - consumed)) & 1;
                    consumed += 1;
                    StateVector::basis(2, bit)
                };
                v = v.kron(&factor);
            }
            v
        })
        .collect()
}

/// The pair of cyclic subspaces for a schedule, as physical state lists.
pub fn holonomy_frames<T: Real>(kind: &GateKind<T>, basis: &LogicalBasis<T>) -> Result<Vec<Vec<StateVector<T>>>> {
    let n_logical = basis.n_logical();
    let (j, locals) = match *kind {
        GateKind::U1 { j, .. } => (j, y_eigenstates()),
        GateKind::U3 { k, .. } => (k, y_eigenstates()),
        GateKind::U2 { j, .. } => (j, z_eigenstates()),
        GateKind::Custom => return Ok(vec![basis.states().to_vec()]),
    };
    if j == 0 || j > n_logical {
        return Err(Error::IndexOutOfRange { index: j, max: n_logical });
    }
    locals
        .iter()
        .map(|local| {
            frame_with_local_state(n_logical, j, local)
                .iter()
                .map(|v| basis.encode(v))
                .collect()
        })
        .collect()
}

/// Certifies conditions (i) and (ii) for the schedule's natural frames,
/// sampling `samples_per_segment + 1` evenly spaced times in every segment.
pub fn verify_holonomy<T: Real + Coefficient>(
    s: &GateSchedule<T>,
    basis: &LogicalBasis<T>,
    samples_per_segment: usize,
) -> Result<HolonomyReport<T>> {
    let frames = holonomy_frames(s.kind(), basis)?;
    verify_holonomy_in_frames(s, basis, &frames, samples_per_segment)
}

pub fn verify_holonomy_in_frames<T: Real + Coefficient>(
    s: &GateSchedule<T>,
    basis: &LogicalBasis<T>,
    frames: &[Vec<StateVector<T>>],
    samples_per_segment: usize,
) -> Result<HolonomyReport<T>> {
    if samples_per_segment == 0 {
        return Err(Error::InvalidParameter("need at least one sample per segment".into()));
    }
    let hamiltonians = s
        .segments()
        .iter()
        .map(|seg| seg.matrix())
        .collect::<Result<Vec<_>>>()?;
    let full_steps = s
        .segments()
        .iter()
        .map(|seg| seg.propagator(T::one()))
        .collect::<Result<Vec<_>>>()?;
    let partial_steps: Vec<Vec<ComplexMatrix<T>>> = s
        .segments()
        .iter()
        .map(|seg| {
            (0..=samples_per_segment)
                .map(|m| seg.propagator(T::lit(m as f64 / samples_per_segment as f64)))
                .collect()
        })
        .collect::<Result<_>>()?;

    let mut cyclic = T::zero();
    let mut violation = T::zero();
    let mut boundary_projectors = Vec::with_capacity(frames.len());
    let mut initial_projectors = Vec::with_capacity(frames.len());
    for frame in frames {
        let p0 = subspace_projector(frame)?;
        let mut current = frame.clone();
        let mut after_first = None;
        for (seg_idx, (h, partials)) in hamiltonians.iter().zip(&partial_steps).enumerate() {
            for u in partials {
                let states: Vec<StateVector<T>> = current.iter().map(|v| u.apply(v)).collect();
                let images: Vec<StateVector<T>> = states.iter().map(|v| h.apply(v)).collect();
                for a in &states {
                    for hb in &images {
                        violation = violation.max(a.inner(hb).norm());
                    }
                }
            }
            current = current.iter().map(|v| full_steps[seg_idx].apply(v)).collect();
            if seg_idx == 0 {
                after_first = Some(subspace_projector(&current)?);
            }
        }
        let p_final = subspace_projector(&current)?;
        cyclic = cyclic.max((&p_final - &p0).hermitian_spectral_norm());
        boundary_projectors.push(after_first);
        initial_projectors.push(p0);
    }

    let swap_defect = match (s.segments().len(), frames.len()) {
        (2, 2) => {
            let forward = (boundary_projectors[0].as_ref().unwrap() - &initial_projectors[1]).hermitian_spectral_norm();
            let backward = (boundary_projectors[1].as_ref().unwrap() - &initial_projectors[0]).hermitian_spectral_norm();
            Some(forward.max(backward))
        }
        _ => None,
    };

    let logical = project_to_logical(&evolve_schedule(s)?, basis)?;
    Ok(HolonomyReport {
        cyclic_defect: cyclic,
        max_parallel_transport_violation: violation,
        leakage: leakage(&logical),
        swap_defect,
    })
}

/// Analytic two-step structure of U3 in the barred basis
/// `|0b> = (|0> + i|1>)/sqrt(2)`, `|1b> = (|0> - i|1>)/sqrt(2)`:
/// the Hamiltonians are `[[0, A], [A^dag, 0]]` and `[[0, B], [B^dag, 0]]`
/// and the gate is `-diag(B A^dag, B^dag A)`.
#[derive(Clone, Debug)]
pub struct U3Blocks<T = f64> {
    pub a: ComplexMatrix<T>,
    pub b: ComplexMatrix<T>,
    pub gate: ComplexMatrix<T>,
}

pub fn u3_block_decomposition<T: Real>(phi: T) -> U3Blocks<T> {
    let (c, s) = (phi.cos(), phi.sin());
    let z = T::zero();
    let a = ComplexMatrix::from_row_major(vec![
        Complex::new(z, -c),
        Complex::new(-s, z),
        Complex::new(-s, z),
        Complex::new(z, -c),
    ])
    .expect("2x2");
    let b = ComplexMatrix::identity(2).scale(Complex::new(z, -T::one()));
    let upper = &b * &a.dagger();
    let lower = &b.dagger() * &a;
    let gate = ComplexMatrix::from_fn(4, |r, col| match (r < 2, col < 2) {
        (true, true) => -upper[(r, col)],
        (false, false) => -lower[(r - 2, col - 2)],
        _ => Complex::zero(),
    });
    U3Blocks { a, b, gate }
}

/// Columns are `|0b0b>, |0b1b>, |1b0b>, |1b1b>` in the computational basis of
/// two logical qubits.
pub fn barred_basis<T: Real>() -> ComplexMatrix<T> {
    let [plus, minus] = y_eigenstates::<T>();
    let single = ComplexMatrix::from_fn(2, |r, c| if c == 0 { plus.amplitudes()[r] } else { minus.amplitudes()[r] });
    kron(&single, &single)
}

/// `V^dag M V` with `V` from [`barred_basis`].
pub fn to_barred_basis<T: Real>(m: &ComplexMatrix<T>) -> ComplexMatrix<T> {
    let v = barred_basis::<T>();
    &(&v.dagger() * m) * &v
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gates::logical::logical_gate;
    use crate::gates::schedule::{schedule_u1, schedule_u2, schedule_u3};
    use crate::linalg::expm_hermitian;
    use std::f64::consts::FRAC_PI_2;

    fn basis(n: usize) -> LogicalBasis<f64> {
        LogicalBasis::new(n).unwrap()
    }

    #[test]
    fn u1_holonomic_in_y_frame() {
        let r = verify_holonomy(&schedule_u1(4, 1, 0.8).unwrap(), &basis(4), 8).unwrap();
        assert!(r.cyclic_defect < 1e-10, "{r:?}");
        assert!(r.max_parallel_transport_violation < 1e-10, "{r:?}");
        assert!(r.swap_defect.unwrap() < 1e-10);
    }

    #[test]
    fn u2_holonomic_in_computational_frame() {
        let r = verify_holonomy(&schedule_u2(4, 1, 1.0).unwrap(), &basis(4), 8).unwrap();
        assert!(r.passes(1e-10), "{r:?}");
        assert!(r.swap_defect.is_none());
    }

    #[test]
    fn u3_subspaces_swap_at_boundary() {
        let r = verify_holonomy(&schedule_u3(4, 1, 2, 0.3).unwrap(), &basis(4), 8).unwrap();
        assert!(r.passes(1e-10), "{r:?}");
    }

    #[test]
    fn dynamical_frame_is_flagged() {
        // In the Y_L eigenframe, U2's first Hamiltonian X_L has zero diagonal
        // but the computational frame of U1 sees Z_L directly.
        let b = basis(4);
        let frames = holonomy_frames(&GateKind::U2 { j: 1, theta: 0.0 }, &b).unwrap();
        let r = verify_holonomy_in_frames(&schedule_u1(4, 1, 0.5).unwrap(), &b, &frames, 4).unwrap();
        assert!(r.max_parallel_transport_violation > 0.5);
    }

    #[test]
    fn zero_samples_rejected() {
        assert!(verify_holonomy(&schedule_u1(4, 1, 0.5).unwrap(), &basis(4), 0).is_err());
    }

    #[test]
    fn block_formula_matches_simulation() {
        for &phi in &[0.0, 0.3, FRAC_PI_2, 2.0] {
            let blocks = u3_block_decomposition(phi);
            let m = logical_gate(&schedule_u3(4, 1, 2, phi).unwrap(), &basis(4)).unwrap();
            assert!(to_barred_basis(&m).max_abs_diff(&blocks.gate) < 1e-12, "phi={phi}");
            assert!(blocks.a.unitarity_defect() < 1e-15);
            assert!(blocks.b.unitarity_defect() < 1e-15);
        }
    }

    #[test]
    fn block_formula_at_zero_is_minus_identity() {
        let blocks = u3_block_decomposition(0.0);
        assert!(blocks.gate.max_abs_diff(&ComplexMatrix::identity(4).scale_real(-1.0)) < 1e-15);
    }

    #[test]
    fn block_formula_at_quarter_turn_matches_exponential() {
        // Independent route: exp(i (pi/2) Y (x) Z) from the eigendecomposition.
        let yz = crate::linalg::kron(&crate::linalg::paulis::sigma_y(), &crate::linalg::paulis::sigma_z());
        let direct = expm_hermitian(&yz, -FRAC_PI_2).unwrap();
        let blocks = u3_block_decomposition(FRAC_PI_2);
        let barred = to_barred_basis(&direct);
        let f = crate::linalg::phase_invariant_fidelity(&barred, &blocks.gate);
        assert!((f - 1.0).abs() < 1e-12);
    }
}
