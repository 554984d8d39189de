//! Logical action of synthesized gates and their analytic targets.

use num_complex::Complex;
use num_traits::Zero;

use crate::dfs::{leakage, logical_pauli_matrix, project_to_logical, LogicalBasis, LogicalPauli};
use crate::error::{Error, Result};
use crate::linalg::{phase_invariant_fidelity, ComplexMatrix};
use crate::pauli::Coefficient;
use crate::scalar::Real;

use super::schedule::{evolve_schedule, GateKind, GateSchedule};

/// `cos(a) I - i sin(a) P` for an involution `P`.
fn rotation<T: Real>(p: &ComplexMatrix<T>, angle: T) -> ComplexMatrix<T> {
    let id = ComplexMatrix::identity(p.dim()).scale_real(angle.cos());
    &id + &p.scale(Complex::new(T::zero(), -angle.sin()))
}

/// Ideal logical gate for a schedule kind on `n_logical` encoded qubits:
/// `exp(-i theta Y_j)`, `exp(-i theta Z_j)` or `exp(i phi Y_k Z_l)`.
pub fn target_gate<T: Real>(kind: &GateKind<T>, n_logical: usize) -> Result<ComplexMatrix<T>> {
    match *kind {
        GateKind::U1 { j, theta } => Ok(rotation(&logical_pauli_matrix(n_logical, LogicalPauli::Y, j)?, theta)),
        GateKind::U2 { j, theta } => Ok(rotation(&logical_pauli_matrix(n_logical, LogicalPauli::Z, j)?, theta)),
        GateKind::U3 { k, l, phi } => {
            let yk = logical_pauli_matrix(n_logical, LogicalPauli::Y, k)?;
            let zl = logical_pauli_matrix(n_logical, LogicalPauli::Z, l)?;
            Ok(rotation(&(&yk * &zl), -phi))
        }
        GateKind::Custom => Err(Error::InvalidParameter("custom schedules have no analytic target".into())),
    }
}

/// Evolves the schedule and restricts it to the code space, failing if the
/// restriction is not unitary.
pub fn logical_gate<T: Real + Coefficient>(s: &GateSchedule<T>, basis: &LogicalBasis<T>) -> Result<ComplexMatrix<T>> {
    let report = synthesize(s, basis)?;
    if report.leakage > T::structural_tol() {
        return Err(Error::LeakageDetected {
            leakage: report.leakage.to_f64(),
        });
    }
    Ok(report.logical)
}

#[derive(Clone, Debug)]
pub struct GateReport<T = f64> {
    pub physical: ComplexMatrix<T>,
    pub logical: ComplexMatrix<T>,
    pub leakage: T,
    /// Phase-invariant fidelity to the analytic target; `None` for custom schedules.
    pub fidelity: Option<T>,
}

pub fn synthesize<T: Real + Coefficient>(s: &GateSchedule<T>, basis: &LogicalBasis<T>) -> Result<GateReport<T>> {
    if s.n_qubits() != basis.n_physical() {
        return Err(Error::DimensionMismatch {
            expected: basis.n_physical(),
            actual: s.n_qubits(),
        });
    }
    let physical = evolve_schedule(s)?;
    let logical = project_to_logical(&physical, basis)?;
    let leak = leakage(&logical);
    let fidelity = match s.kind() {
        GateKind::Custom => None,
        kind => Some(phase_invariant_fidelity(&logical, &target_gate(kind, basis.n_logical())?)),
    };
    Ok(GateReport {
        physical,
        logical,
        leakage: leak,
        fidelity,
    })
}

/// Smallest `max |a_ij - e^{i g} b_ij|` over global phases `g`, with the phase
/// fixed by the overlap `Tr(b^dag a)`.
pub fn phase_aligned_distance<T: Real>(a: &ComplexMatrix<T>, b: &ComplexMatrix<T>) -> T {
    let overlap = a
        .as_slice()
        .iter()
        .zip(b.as_slice())
        .fold(Complex::<T>::zero(), |acc, (&x, &y)| acc + y.conj() * x);
    let phase = if overlap.norm().is_zero() {
        Complex::new(T::one(), T::zero())
    } else {
        overlap / overlap.norm()
    };
    a.max_abs_diff(&b.scale(phase))
}

/// Number of nonzero singular values in the operator Schmidt decomposition
/// of a two-qubit operator across the (first qubit | second qubit) cut.
/// `tol` bounds the squared singular values, which is where eigenvalue
/// round-off lives.
pub fn operator_schmidt_rank<T: Real>(u: &ComplexMatrix<T>, tol: T) -> usize {
    assert_eq!(u.dim(), 4, "operator Schmidt rank is defined here for two qubits");
    // Realign U_{(a b),(c d)} into R_{(a c),(b d)}; its rank is the Schmidt rank.
    let r = ComplexMatrix::from_fn(4, |row, col| {
        let (a, c) = (row >> 1, row & 1);
        let (b, d) = (col >> 1, col & 1);
        u[((a << 1) | b, (c << 1) | d)]
    });
    let (values, _) = T::hermitian_eigen(&(&r.dagger() * &r));
    values.iter().filter(|&&v| v > tol).count()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gates::schedule::{schedule_u1, schedule_u2, schedule_u3};
    use std::f64::consts::PI;

    fn basis(n: usize) -> LogicalBasis<f64> {
        LogicalBasis::new(n).unwrap()
    }

    fn c(re: f64, im: f64) -> Complex<f64> {
        Complex::new(re, im)
    }

    #[test]
    fn u1_action_table_n4() {
        let theta: f64 = 0.6;
        let (cs, sn) = (theta.cos(), theta.sin());
        let m = logical_gate(&schedule_u1(4, 1, theta).unwrap(), &basis(4)).unwrap();
        // Columns are images of |00>,|01>,|10>,|11>.
        let expected = ComplexMatrix::from_real_rows([
            [-cs, 0.0, sn, 0.0],
            [0.0, -cs, 0.0, sn],
            [-sn, 0.0, -cs, 0.0],
            [0.0, -sn, 0.0, -cs],
        ]);
        assert!(m.max_abs_diff(&expected) < 1e-12, "{m:?}");
    }

    #[test]
    fn u2_action_table_n4() {
        let theta: f64 = 1.0;
        let m = logical_gate(&schedule_u2(4, 1, theta).unwrap(), &basis(4)).unwrap();
        let minus = c(-theta.cos(), theta.sin());
        let plus = c(-theta.cos(), -theta.sin());
        let expected = ComplexMatrix::diagonal(&[minus, minus, plus, plus]);
        assert!(m.max_abs_diff(&expected) < 1e-12, "{m:?}");
    }

    #[test]
    fn u2_at_zero_angle_is_identity_up_to_phase() {
        let m = logical_gate(&schedule_u2(4, 1, 0.0).unwrap(), &basis(4)).unwrap();
        assert!(phase_aligned_distance(&m, &ComplexMatrix::identity(4)) < 1e-12);
    }

    #[test]
    fn u3_action_table_n4() {
        let phi: f64 = 0.9;
        let (cs, sn) = (phi.cos(), phi.sin());
        let m = logical_gate(&schedule_u3(4, 1, 2, phi).unwrap(), &basis(4)).unwrap();
        let expected = ComplexMatrix::from_real_rows([
            [-cs, 0.0, -sn, 0.0],
            [0.0, -cs, 0.0, sn],
            [sn, 0.0, -cs, 0.0],
            [0.0, -sn, 0.0, -cs],
        ]);
        assert!(m.max_abs_diff(&expected) < 1e-12, "{m:?}");
    }

    #[test]
    fn u3_on_middle_pair_n6() {
        let phi = 0.4;
        let report = synthesize(&schedule_u3(6, 2, 3, phi).unwrap(), &basis(6)).unwrap();
        assert!(report.fidelity.unwrap() > 1.0 - 1e-12);
        assert!(report.leakage < 1e-12);
    }

    #[test]
    fn u1_full_turn_is_trivial() {
        let m = logical_gate(&schedule_u1(4, 2, PI).unwrap(), &basis(4)).unwrap();
        assert!(phase_aligned_distance(&m, &ComplexMatrix::identity(4)) < 1e-12);
    }

    #[test]
    fn schmidt_rank_examples() {
        let id = ComplexMatrix::<f64>::identity(4);
        assert_eq!(operator_schmidt_rank(&id, 1e-9), 1);
        let g = target_gate(&GateKind::U3 { k: 1, l: 2, phi: PI / 4.0 }, 2).unwrap();
        assert_eq!(operator_schmidt_rank(&g, 1e-9), 2);
    }

    #[test]
    fn mismatched_register_is_rejected() {
        let s = schedule_u1(6, 1, 0.1).unwrap();
        assert!(matches!(synthesize(&s, &basis(4)), Err(Error::DimensionMismatch { .. })));
    }
}
