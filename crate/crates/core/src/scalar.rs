//! Real scalar abstraction shared by every numeric routine in the crate.
//!
//! All operators are complex matrices over `Complex<T>` with `T: Real`.
//! `f64` is the working precision; `f32` is supported for cheap sweeps
//! with correspondingly looser default tolerances.

use std::fmt::{Debug, Display};

use nalgebra::DMatrix;
use num_complex::Complex;
use num_traits::{Float, FloatConst, NumAssign};

use crate::linalg::ComplexMatrix;

/// Floating-point scalar usable as the real part of matrix entries.
pub trait Real:
    Float + FloatConst + NumAssign + Default + Debug + Display + Send + Sync + 'static
{
    /// Default tolerance for structural checks (Hermiticity, unitarity, leakage).
    fn structural_tol() -> Self;
    /// Default tolerance for vector norms and orthonormality.
    fn norm_tol() -> Self;

    /// Eigendecomposition of a Hermitian matrix: real eigenvalues and the
    /// unitary whose columns are the matching eigenvectors.
    fn hermitian_eigen(m: &ComplexMatrix<Self>) -> (Vec<Self>, ComplexMatrix<Self>);

    /// Lossy conversion from an `f64` literal.
    fn lit(x: f64) -> Self {
        <Self as num_traits::NumCast>::from(x).expect("f64 literal representable")
    }

    fn to_f64(self) -> f64 {
        <Self as num_traits::ToPrimitive>::to_f64(&self).expect("finite scalar")
    }
}

fn nalgebra_eigen<T>(m: &ComplexMatrix<T>) -> (Vec<T>, ComplexMatrix<T>)
where
    T: Real + nalgebra::RealField,
{
    let d = m.dim();
    let dm = DMatrix::<Complex<T>>::from_row_slice(d, d, m.as_slice());
    let eig = dm.symmetric_eigen();
    let values = eig.eigenvalues.iter().copied().collect();
    let mut vectors = ComplexMatrix::zeros(d);
    for r in 0..d {
        for c in 0..d {
            vectors[(r, c)] = eig.eigenvectors[(r, c)];
        }
    }
    (values, vectors)
}

impl Real for f64 {
    fn structural_tol() -> Self {
        1e-10
    }
    fn norm_tol() -> Self {
        1e-12
    }
    fn hermitian_eigen(m: &ComplexMatrix<Self>) -> (Vec<Self>, ComplexMatrix<Self>) {
        nalgebra_eigen(m)
    }
}

impl Real for f32 {
    fn structural_tol() -> Self {
        1e-4
    }
    fn norm_tol() -> Self {
        1e-5
    }
    fn hermitian_eigen(m: &ComplexMatrix<Self>) -> (Vec<Self>, ComplexMatrix<Self>) {
        nalgebra_eigen(m)
    }
}

/// Tolerances for structural checks, overridable per call site.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Tolerances<T> {
    pub structural: T,
    pub norm: T,
}

impl<T: Real> Default for Tolerances<T> {
    fn default() -> Self {
        Self {
            structural: T::structural_tol(),
            norm: T::norm_tol(),
        }
    }
}
