//! Global pi pulses, ideal and with flip-angle or detuning error.

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::linalg::{kron, kron_all, ComplexMatrix};
use crate::pauli::{Letter, PauliString, MAX_QUBITS};
use crate::scalar::Real;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Axis {
    X,
    Y,
}

/// Per-pulse imperfections. The same error hits every qubit and every pulse.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DDErrorModel<T = f64> {
    /// Relative flip-angle error.
    pub epsilon: T,
    /// Relative detuning; tilts the axis toward z and stretches the angle.
    pub delta: T,
    /// Nominal rotation angle.
    pub theta_p: T,
}

impl<T: Real> DDErrorModel<T> {
    pub fn ideal() -> Self {
        Self {
            epsilon: T::zero(),
            delta: T::zero(),
            theta_p: T::PI(),
        }
    }

    pub fn flip(epsilon: T) -> Self {
        Self { epsilon, ..Self::ideal() }
    }

    pub fn detuning(delta: T) -> Self {
        Self { delta, ..Self::ideal() }
    }

    pub fn is_ideal(&self) -> bool {
        self.epsilon.is_zero() && self.delta.is_zero() && self.theta_p == T::PI()
    }

    /// Effective rotation angle `(1 + eps) theta_p sqrt(1 + delta^2)`.
    pub fn rotation_angle(&self) -> T {
        (T::one() + self.epsilon) * self.theta_p * (T::one() + self.delta * self.delta).sqrt()
    }
}

impl<T: Real> Default for DDErrorModel<T> {
    fn default() -> Self {
        Self::ideal()
    }
}

fn check_register(n: usize) -> Result<()> {
    if n == 0 || n > MAX_QUBITS {
        return Err(Error::DimensionTooLarge { n_qubits: n, max: MAX_QUBITS });
    }
    Ok(())
}

/// `cos(a/2) I - i sin(a/2) n.sigma` on one qubit with
/// `n = (cos phi, sin phi, delta) / sqrt(1 + delta^2)`.
pub fn single_qubit_rotation<T: Real>(axis: Axis, errors: &DDErrorModel<T>) -> ComplexMatrix<T> {
    let norm = (T::one() + errors.delta * errors.delta).sqrt();
    let (nx, ny) = match axis {
        Axis::X => (T::one(), T::zero()),
        Axis::Y => (T::zero(), T::one()),
    };
    let (nx, ny, nz) = (nx / norm, ny / norm, errors.delta / norm);
    let half = errors.rotation_angle() / T::lit(2.0);
    let (c, s) = (half.cos(), half.sin());
    // -i s (nx X + ny Y + nz Z)
    let data = vec![
        Complex::new(c, -s * nz),
        Complex::new(-s * ny, -s * nx),
        Complex::new(s * ny, -s * nx),
        Complex::new(c, s * nz),
    ];
    ComplexMatrix::from_row_major(data).expect("2x2")
}

/// `prod_i exp(-i sigma_i^a pi/2) = (-i)^n sigma^a x ... x sigma^a`.
pub fn ideal_pulse<T: Real>(axis: Axis, n: usize) -> Result<ComplexMatrix<T>> {
    check_register(n)?;
    let letter = match axis {
        Axis::X => Letter::X,
        Axis::Y => Letter::Y,
    };
    let phase = Complex::new(T::zero(), -T::one()).powu(n as u32);
    Ok(PauliString::uniform(n, letter).to_matrix::<T>()?.scale(phase))
}

/// Global pulse with the full error model applied on each of `n` qubits.
pub fn imperfect_pulse<T: Real>(axis: Axis, n: usize, errors: &DDErrorModel<T>) -> Result<ComplexMatrix<T>> {
    check_register(n)?;
    let r = single_qubit_rotation(axis, errors);
    Ok(kron_all(&vec![r; n]))
}

pub fn imperfect_pulse_flip<T: Real>(axis: Axis, n: usize, epsilon: T) -> Result<ComplexMatrix<T>> {
    imperfect_pulse(axis, n, &DDErrorModel::flip(epsilon))
}

pub fn imperfect_pulse_detuning<T: Real>(axis: Axis, n: usize, delta: T) -> Result<ComplexMatrix<T>> {
    imperfect_pulse(axis, n, &DDErrorModel::detuning(delta))
}

/// Pulse on `n_system` qubits followed by identity on `n_bath` bath qubits.
pub fn register_pulse<T: Real>(
    axis: Axis,
    n_system: usize,
    n_bath: usize,
    errors: &DDErrorModel<T>,
) -> Result<ComplexMatrix<T>> {
    check_register(n_system + n_bath)?;
    let p = if errors.is_ideal() {
        ideal_pulse(axis, n_system)?
    } else {
        imperfect_pulse(axis, n_system, errors)?
    };
    Ok(if n_bath == 0 {
        p
    } else {
        kron(&p, &ComplexMatrix::identity(1 << n_bath))
    })
}
