//! Dense complex linear algebra for Hilbert spaces of up to 2^8 dimensions.
//!
//! Matrices are square and stored row-major. Qubit 1 is the leftmost tensor
//! factor, i.e. the most significant bit of a basis index.

use std::fmt;
use std::ops::{Add, Index, IndexMut, Mul, Neg, Sub};

use num_complex::Complex;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::scalar::{Real, Tolerances};

/// Largest supported dimension (eight qubits).
pub const MAX_DIM: usize = 1 << 8;

#[derive(Clone, PartialEq)]
pub struct ComplexMatrix<T = f64> {
    dim: usize,
    data: Vec<Complex<T>>,
}

impl<T: Real> ComplexMatrix<T> {
    pub fn zeros(dim: usize) -> Self {
        assert!(dim >= 1, "matrix dimension must be positive");
        Self {
            dim,
            data: vec![Complex::zero(); dim * dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m[(i, i)] = Complex::one();
        }
        m
    }

    pub fn from_fn(dim: usize, mut f: impl FnMut(usize, usize) -> Complex<T>) -> Self {
        let mut m = Self::zeros(dim);
        for r in 0..dim {
            for c in 0..dim {
                m[(r, c)] = f(r, c);
            }
        }
        m
    }

    /// Builds a matrix from a row-major slice whose length must be a perfect square.
    pub fn from_row_major(data: Vec<Complex<T>>) -> Result<Self> {
        let dim = (data.len() as f64).sqrt().round() as usize;
        if dim == 0 || dim * dim != data.len() {
            return Err(Error::DimensionMismatch {
                expected: dim * dim,
                actual: data.len(),
            });
        }
        Ok(Self { dim, data })
    }

    pub fn from_real_rows<const D: usize>(rows: [[f64; D]; D]) -> Self {
        Self::from_fn(D, |r, c| Complex::new(T::lit(rows[r][c]), T::zero()))
    }

    pub fn diagonal(diag: &[Complex<T>]) -> Self {
        let mut m = Self::zeros(diag.len());
        for (i, &d) in diag.iter().enumerate() {
            m[(i, i)] = d;
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn as_slice(&self) -> &[Complex<T>] {
        &self.data
    }

    pub fn row(&self, r: usize) -> &[Complex<T>] {
        &self.data[r * self.dim..(r + 1) * self.dim]
    }

    pub fn column(&self, c: usize) -> StateVector<T> {
        StateVector::new((0..self.dim).map(|r| self[(r, c)]).collect())
    }

    pub fn dagger(&self) -> Self {
        Self::from_fn(self.dim, |r, c| self[(c, r)].conj())
    }

    pub fn trace(&self) -> Complex<T> {
        (0..self.dim).fold(Complex::zero(), |acc, i| acc + self[(i, i)])
    }

    pub fn scale(&self, s: Complex<T>) -> Self {
        Self {
            dim: self.dim,
            data: self.data.iter().map(|&z| z * s).collect(),
        }
    }

    pub fn scale_real(&self, s: T) -> Self {
        self.scale(Complex::new(s, T::zero()))
    }

    pub fn frobenius_norm(&self) -> T {
        self.data
            .iter()
            .fold(T::zero(), |acc, z| acc + z.norm_sqr())
            .sqrt()
    }

    /// Largest entry modulus.
    pub fn max_abs(&self) -> T {
        self.data.iter().fold(T::zero(), |acc, z| acc.max(z.norm()))
    }

    /// Largest entrywise deviation `|a_ij - b_ij|`.
    pub fn max_abs_diff(&self, other: &Self) -> T {
        assert_eq!(self.dim, other.dim, "dimension mismatch");
        self.data
            .iter()
            .zip(&other.data)
            .fold(T::zero(), |acc, (a, b)| acc.max((*a - *b).norm()))
    }

    pub fn hermiticity_defect(&self) -> T {
        let mut worst = T::zero();
        for r in 0..self.dim {
            for c in r..self.dim {
                worst = worst.max((self[(r, c)] - self[(c, r)].conj()).norm());
            }
        }
        worst
    }

    pub fn is_hermitian(&self, tol: T) -> bool {
        self.hermiticity_defect() <= tol
    }

    /// `max |(U U^dag - I)_ij|`.
    pub fn unitarity_defect(&self) -> T {
        (self * &self.dagger()).max_abs_diff(&Self::identity(self.dim))
    }

    /// Operator (spectral) norm of a Hermitian matrix.
    pub fn hermitian_spectral_norm(&self) -> T {
        let (values, _) = T::hermitian_eigen(self);
        values.iter().fold(T::zero(), |acc, v| acc.max(v.abs()))
    }

    /// Operator norm, computed as the square root of the largest eigenvalue of `A^dag A`.
    pub fn spectral_norm(&self) -> T {
        (&self.dagger() * self).hermitian_spectral_norm().sqrt()
    }

    pub fn apply(&self, v: &StateVector<T>) -> StateVector<T> {
        assert_eq!(self.dim, v.dim(), "dimension mismatch");
        let out = (0..self.dim)
            .map(|r| {
                self.row(r)
                    .iter()
                    .zip(v.amplitudes())
                    .fold(Complex::zero(), |acc, (&a, &b)| acc + a * b)
            })
            .collect();
        StateVector::new(out)
    }

    /// `a * b - b * a`.
    pub fn commutator(&self, other: &Self) -> Self {
        &(self * other) - &(other * self)
    }

    pub fn map(&self, f: impl Fn(Complex<T>) -> Complex<T>) -> Self {
        Self {
            dim: self.dim,
            data: self.data.iter().map(|&z| f(z)).collect(),
        }
    }
}

impl<T> Index<(usize, usize)> for ComplexMatrix<T> {
    type Output = Complex<T>;
    fn index(&self, (r, c): (usize, usize)) -> &Complex<T> {
        &self.data[r * self.dim + c]
    }
}

impl<T> IndexMut<(usize, usize)> for ComplexMatrix<T> {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut Complex<T> {
        &mut self.data[r * self.dim + c]
    }
}

impl<T: Real> Mul for &ComplexMatrix<T> {
    type Output = ComplexMatrix<T>;

    fn mul(self, rhs: &ComplexMatrix<T>) -> ComplexMatrix<T> {
        assert_eq!(self.dim, rhs.dim, "dimension mismatch");
        let d = self.dim;
        let mut out = ComplexMatrix::zeros(d);
        for r in 0..d {
            let out_row = &mut out.data[r * d..(r + 1) * d];
            for k in 0..d {
                let a = self.data[r * d + k];
                if a.is_zero() {
                    continue;
                }
                let rhs_row = &rhs.data[k * d..(k + 1) * d];
                for (o, &b) in out_row.iter_mut().zip(rhs_row) {
                    *o += a * b;
                }
            }
        }
        out
    }
}

impl<T: Real> Mul for ComplexMatrix<T> {
    type Output = ComplexMatrix<T>;
    fn mul(self, rhs: ComplexMatrix<T>) -> ComplexMatrix<T> {
        &self * &rhs
    }
}

impl<T: Real> Add for &ComplexMatrix<T> {
    type Output = ComplexMatrix<T>;
    fn add(self, rhs: &ComplexMatrix<T>) -> ComplexMatrix<T> {
        assert_eq!(self.dim, rhs.dim, "dimension mismatch");
        ComplexMatrix {
            dim: self.dim,
            data: self.data.iter().zip(&rhs.data).map(|(&a, &b)| a + b).collect(),
        }
    }
}

impl<T: Real> Sub for &ComplexMatrix<T> {
    type Output = ComplexMatrix<T>;
    fn sub(self, rhs: &ComplexMatrix<T>) -> ComplexMatrix<T> {
        assert_eq!(self.dim, rhs.dim, "dimension mismatch");
        ComplexMatrix {
            dim: self.dim,
            data: self.data.iter().zip(&rhs.data).map(|(&a, &b)| a - b).collect(),
        }
    }
}

impl<T: Real> Neg for &ComplexMatrix<T> {
    type Output = ComplexMatrix<T>;
    fn neg(self) -> ComplexMatrix<T> {
        self.map(|z| -z)
    }
}

impl<T: fmt::Debug> fmt::Debug for ComplexMatrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "ComplexMatrix({}x{})", self.dim, self.dim)?;
        for r in 0..self.dim {
            let row: Vec<String> = self.data[r * self.dim..(r + 1) * self.dim]
                .iter()
                .map(|z| format!("{:.4?}+{:.4?}i", z.re, z.im))
                .collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct StateVector<T = f64> {
    amplitudes: Vec<Complex<T>>,
}

impl<T: Real> StateVector<T> {
    pub fn new(amplitudes: Vec<Complex<T>>) -> Self {
        assert!(!amplitudes.is_empty(), "state dimension must be positive");
        Self { amplitudes }
    }

    pub fn zeros(dim: usize) -> Self {
        Self::new(vec![Complex::zero(); dim])
    }

    /// Computational basis state `|index>`.
    pub fn basis(dim: usize, index: usize) -> Self {
        let mut v = Self::zeros(dim);
        v.amplitudes[index] = Complex::one();
        v
    }

    pub fn dim(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn amplitudes(&self) -> &[Complex<T>] {
        &self.amplitudes
    }

    pub fn norm(&self) -> T {
        self.amplitudes
            .iter()
            .fold(T::zero(), |acc, z| acc + z.norm_sqr())
            .sqrt()
    }

    pub fn is_normalized(&self, tol: T) -> bool {
        (self.norm() - T::one()).abs() <= tol
    }

    pub fn normalized(&self) -> Self {
        let n = self.norm();
        self.scale(Complex::new(T::one() / n, T::zero()))
    }

    /// `<self|other>`, antilinear in `self`.
    pub fn inner(&self, other: &Self) -> Complex<T> {
        assert_eq!(self.dim(), other.dim(), "dimension mismatch");
        self.amplitudes
            .iter()
            .zip(&other.amplitudes)
            .fold(Complex::zero(), |acc, (&a, &b)| acc + a.conj() * b)
    }

    pub fn scale(&self, s: Complex<T>) -> Self {
        Self::new(self.amplitudes.iter().map(|&z| z * s).collect())
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.dim(), other.dim(), "dimension mismatch");
        Self::new(
            self.amplitudes
                .iter()
                .zip(&other.amplitudes)
                .map(|(&a, &b)| a + b)
                .collect(),
        )
    }

    /// `|self><other|`.
    pub fn outer(&self, other: &Self) -> ComplexMatrix<T> {
        let d = self.dim();
        ComplexMatrix::from_fn(d, |r, c| self.amplitudes[r] * other.amplitudes[c].conj())
    }

    /// `|self> (x) |other>` with `self` as the leftmost factor.
    pub fn kron(&self, other: &Self) -> Self {
        let mut out = Vec::with_capacity(self.dim() * other.dim());
        for &a in &self.amplitudes {
            out.extend(other.amplitudes.iter().map(|&b| a * b));
        }
        Self::new(out)
    }
}

/// Kronecker product with `a` as the leftmost (most significant) factor.
pub fn kron<T: Real>(a: &ComplexMatrix<T>, b: &ComplexMatrix<T>) -> ComplexMatrix<T> {
    let (da, db) = (a.dim(), b.dim());
    let mut out = ComplexMatrix::zeros(da * db);
    for ar in 0..da {
        for ac in 0..da {
            let x = a[(ar, ac)];
            if x.is_zero() {
                continue;
            }
            for br in 0..db {
                for bc in 0..db {
                    out[(ar * db + br, ac * db + bc)] = x * b[(br, bc)];
                }
            }
        }
    }
    out
}

/// Kronecker product of a list of factors, first factor leftmost.
pub fn kron_all<T: Real>(factors: &[ComplexMatrix<T>]) -> ComplexMatrix<T> {
    factors
        .iter()
        .skip(1)
        .fold(factors[0].clone(), |acc, f| kron(&acc, f))
}

/// `exp(-i * scale * h)` for Hermitian `h`, via eigendecomposition.
pub fn expm_hermitian<T: Real>(h: &ComplexMatrix<T>, scale: T) -> Result<ComplexMatrix<T>> {
    expm_hermitian_tol(h, scale, &Tolerances::default())
}

pub fn expm_hermitian_tol<T: Real>(
    h: &ComplexMatrix<T>,
    scale: T,
    tol: &Tolerances<T>,
) -> Result<ComplexMatrix<T>> {
    let deviation = h.hermiticity_defect();
    if deviation > tol.structural {
        return Err(Error::NotHermitian {
            deviation: deviation.to_f64(),
        });
    }
    if scale.is_zero() {
        return Ok(ComplexMatrix::identity(h.dim()));
    }
    let (values, vectors) = T::hermitian_eigen(h);
    let phases: Vec<Complex<T>> = values
        .iter()
        .map(|&e| Complex::new(T::zero(), -scale * e).exp())
        .collect();
    let d = h.dim();
    let mut out = ComplexMatrix::zeros(d);
    for r in 0..d {
        for c in 0..d {
            let mut acc = Complex::zero();
            for k in 0..d {
                acc += vectors[(r, k)] * phases[k] * vectors[(c, k)].conj();
            }
            out[(r, c)] = acc;
        }
    }
    Ok(out)
}

/// If `h * h = c * I` with `c > 0`, returns `c`.
pub fn involution_constant<T: Real>(h: &ComplexMatrix<T>, tol: T) -> Result<T> {
    let sq = h * h;
    let c = sq.trace().re / T::lit(h.dim() as f64);
    let deviation = sq.max_abs_diff(&ComplexMatrix::identity(h.dim()).scale_real(c));
    if deviation > tol || c <= tol {
        return Err(Error::NotInvolutory {
            deviation: deviation.to_f64(),
        });
    }
    Ok(c)
}

/// `exp(-i * scale * h)` for `h` with `h^2 = c I`:
/// `cos(scale sqrt(c)) I - i sin(scale sqrt(c)) / sqrt(c) h`.
pub fn expm_involutory<T: Real>(h: &ComplexMatrix<T>, scale: T) -> Result<ComplexMatrix<T>> {
    expm_involutory_tol(h, scale, &Tolerances::default())
}

pub fn expm_involutory_tol<T: Real>(
    h: &ComplexMatrix<T>,
    scale: T,
    tol: &Tolerances<T>,
) -> Result<ComplexMatrix<T>> {
    let c = involution_constant(h, tol.structural)?;
    let root = c.sqrt();
    let angle = scale * root;
    let cos = ComplexMatrix::identity(h.dim()).scale_real(angle.cos());
    let sin = h.scale(Complex::new(T::zero(), -angle.sin() / root));
    Ok(&cos + &sin)
}

/// `exp(-i * scale * h)`, taking the closed form when `h` squares to a
/// multiple of the identity and the eigendecomposition otherwise.
pub fn expm_auto<T: Real>(h: &ComplexMatrix<T>, scale: T) -> Result<ComplexMatrix<T>> {
    match expm_involutory(h, scale) {
        Ok(u) => Ok(u),
        Err(Error::NotInvolutory { .. }) => expm_hermitian(h, scale),
        Err(e) => Err(e),
    }
}

/// `|Tr(u v^dag)| / sqrt(Tr(u u^dag) Tr(v v^dag))`, insensitive to a global phase.
pub fn phase_invariant_fidelity<T: Real>(u: &ComplexMatrix<T>, v: &ComplexMatrix<T>) -> T {
    assert_eq!(u.dim(), v.dim(), "dimension mismatch");
    let overlap = u
        .as_slice()
        .iter()
        .zip(v.as_slice())
        .fold(Complex::<T>::zero(), |acc, (&a, &b)| acc + a * b.conj());
    let nu = u.frobenius_norm();
    let nv = v.frobenius_norm();
    if nu.is_zero() || nv.is_zero() {
        return T::zero();
    }
    // Cauchy-Schwarz bounds this by 1; clamp rounding overshoot.
    (overlap.norm() / (nu * nv)).min(T::one())
}

/// Largest deviation of the Gram matrix of `basis` from the identity.
pub fn gram_defect<T: Real>(basis: &[StateVector<T>]) -> T {
    let mut worst = T::zero();
    for (a, va) in basis.iter().enumerate() {
        for (b, vb) in basis.iter().enumerate() {
            let target = if a == b { T::one() } else { T::zero() };
            worst = worst.max((va.inner(vb) - Complex::new(target, T::zero())).norm());
        }
    }
    worst
}

/// `sum_k |psi_k><psi_k|` for an orthonormal family.
pub fn subspace_projector<T: Real>(basis: &[StateVector<T>]) -> Result<ComplexMatrix<T>> {
    subspace_projector_tol(basis, &Tolerances::default())
}

pub fn subspace_projector_tol<T: Real>(
    basis: &[StateVector<T>],
    tol: &Tolerances<T>,
) -> Result<ComplexMatrix<T>> {
    let Some(first) = basis.first() else {
        return Err(Error::InvalidParameter("empty basis".into()));
    };
    let d = first.dim();
    if let Some(bad) = basis.iter().find(|v| v.dim() != d) {
        return Err(Error::DimensionMismatch {
            expected: d,
            actual: bad.dim(),
        });
    }
    let deviation = gram_defect(basis);
    if deviation > tol.structural {
        return Err(Error::NotOrthonormal {
            deviation: deviation.to_f64(),
        });
    }
    let mut p = ComplexMatrix::zeros(d);
    for v in basis {
        let amps = v.amplitudes();
        for r in 0..d {
            if amps[r].is_zero() {
                continue;
            }
            for c in 0..d {
                p[(r, c)] += amps[r] * amps[c].conj();
            }
        }
    }
    Ok(p)
}

pub mod paulis {
    //! Single-qubit Pauli matrices.
    use super::*;

    pub fn identity<T: Real>() -> ComplexMatrix<T> {
        ComplexMatrix::identity(2)
    }

    pub fn sigma_x<T: Real>() -> ComplexMatrix<T> {
        ComplexMatrix::from_real_rows([[0.0, 1.0], [1.0, 0.0]])
    }

    pub fn sigma_y<T: Real>() -> ComplexMatrix<T> {
        let i = Complex::new(T::zero(), T::one());
        ComplexMatrix::from_fn(2, |r, c| match (r, c) {
            (0, 1) => -i,
            (1, 0) => i,
            _ => Complex::zero(),
        })
    }

    pub fn sigma_z<T: Real>() -> ComplexMatrix<T> {
        ComplexMatrix::from_real_rows([[1.0, 0.0], [0.0, -1.0]])
    }
}
