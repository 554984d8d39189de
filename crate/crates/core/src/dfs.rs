//! Decoherence-free subspaces of the decoupling group and the encoded
//! logical basis.
//!
//! For even `n` the group `{I, X^n, Y^n, Z^n}` is abelian, so the register
//! splits into four joint eigenspaces of dimension `2^(n-2)`. Logical qubits
//! live in the sector where every group element acts as `+1`.
//!
//! A logical label `r` is an `(n-2)`-bit string, logical qubit 1 first. Its
//! code word is `(|0 r 0> + |1 ~r 1>)/sqrt(2)` when `r` has even weight and
//! `(|1 r 0> + |0 ~r 1>)/sqrt(2)` when `r` has odd weight.

use std::fmt::Write as _;

use num_complex::Complex;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::linalg::{kron_all, paulis, ComplexMatrix, StateVector};
use crate::pauli::{DecouplingGroup, MAX_QUBITS};
use crate::scalar::Real;

/// Orthonormal basis of the `lambda = {1,1,1,1}` subspace, in lexicographic
/// order of the logical label.
#[derive(Clone, Debug, PartialEq)]
pub struct LogicalBasis<T = f64> {
    n_physical: usize,
    states: Vec<StateVector<T>>,
    /// The two computational basis indices appearing in each code word,
    /// first-branch index first.
    branches: Vec<(usize, usize)>,
}

fn check_n(n: usize) -> Result<()> {
    if n % 2 == 1 {
        return Err(Error::OddN(n));
    }
    if n < 4 {
        return Err(Error::NTooSmall { n, min: 4 });
    }
    if n > MAX_QUBITS {
        return Err(Error::DimensionTooLarge {
            n_qubits: n,
            max: MAX_QUBITS,
        });
    }
    Ok(())
}

impl<T: Real> LogicalBasis<T> {
    pub fn new(n: usize) -> Result<Self> {
        check_n(n)?;
        let n_logical = n - 2;
        let mask = (1usize << n_logical) - 1;
        let high = 1usize << (n - 1);
        let amp = Complex::new(T::FRAC_1_SQRT_2(), T::zero());
        let mut states = Vec::with_capacity(1 << n_logical);
        let mut branches = Vec::with_capacity(1 << n_logical);
        for r in 0..=mask {
            let not_r = r ^ mask;
            let (first, second) = if r.count_ones() % 2 == 0 {
                (r << 1, high | (not_r << 1) | 1)
            } else {
                (high | (r << 1), (not_r << 1) | 1)
            };
            let mut amps = vec![Complex::zero(); 1 << n];
            amps[first] = amp;
            amps[second] = amp;
            states.push(StateVector::new(amps));
            branches.push((first, second));
        }
        Ok(Self {
            n_physical: n,
            states,
            branches,
        })
    }

    pub fn n_physical(&self) -> usize {
        self.n_physical
    }

    pub fn n_logical(&self) -> usize {
        self.n_physical - 2
    }

    /// `2^n_logical`.
    pub fn dim(&self) -> usize {
        self.states.len()
    }

    pub fn states(&self) -> &[StateVector<T>] {
        &self.states
    }

    pub fn label(&self, index: usize) -> String {
        bits(index, self.n_logical())
    }

    pub fn labels(&self) -> Vec<String> {
        (0..self.dim()).map(|i| self.label(i)).collect()
    }

    pub fn branches(&self) -> &[(usize, usize)] {
        &self.branches
    }

    /// Physical state `sum_a c_a |a>_L` for logical amplitudes `c`.
    pub fn encode(&self, logical: &StateVector<T>) -> Result<StateVector<T>> {
        if logical.dim() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                actual: logical.dim(),
            });
        }
        let mut out = StateVector::zeros(1 << self.n_physical);
        for (c, psi) in logical.amplitudes().iter().zip(&self.states) {
            if !c.is_zero() {
                out = out.add(&psi.scale(*c));
            }
        }
        Ok(out)
    }

    /// Projector onto the code space.
    pub fn projector(&self) -> ComplexMatrix<T> {
        let mut p = ComplexMatrix::zeros(1 << self.n_physical);
        let half = Complex::new(T::lit(0.5), T::zero());
        for &(a, b) in &self.branches {
            p[(a, a)] += half;
            p[(a, b)] += half;
            p[(b, a)] += half;
            p[(b, b)] += half;
        }
        p
    }

    /// One line per code word: `label : coeff|bits> + coeff|bits>`.
    pub fn dump(&self) -> String {
        let mut out = String::new();
        for (k, (psi, &(a, b))) in self.states.iter().zip(&self.branches).enumerate() {
            let amp = |i: usize| psi.amplitudes()[i].re.to_f64();
            writeln!(
                out,
                "{} : {:.6}|{}\u{27e9} + {:.6}|{}\u{27e9}",
                self.label(k),
                amp(a),
                bits(a, self.n_physical),
                amp(b),
                bits(b, self.n_physical)
            )
            .unwrap();
        }
        out
    }
}

fn bits(value: usize, width: usize) -> String {
    (0..width)
        .map(|k| if (value >> (width - 1 - k)) & 1 == 1 { '1' } else { '0' })
        .collect()
}

pub fn build_logical_basis<T: Real>(n: usize) -> Result<LogicalBasis<T>> {
    LogicalBasis::new(n)
}

/// `(n - 2) / n`.
pub fn encoding_rate(n: usize) -> f64 {
    (n as f64 - 2.0) / n as f64
}

/// Joint eigenspace of the decoupling group.
#[derive(Clone, Debug)]
pub struct DfsSector<T = f64> {
    /// Eigenvalues of `[I, X^n, Y^n, Z^n]` on the sector, `Y = ZX`.
    pub eigenvalues: [i8; 4],
    pub dimension: usize,
    pub projector: ComplexMatrix<T>,
}

/// The four sectors, `lambda = {1,1,1,1}` first.
///
/// Sectors are labelled by the eigenvalues of `X^n` and `Z^n`; the `Y^n`
/// eigenvalue is read off the projector and checked to be `+-1`.
pub fn dfs_decomposition<T: Real>(g: &DecouplingGroup) -> Result<Vec<DfsSector<T>>> {
    let n = g.n_qubits();
    if g.system_qubits() != n {
        return Err(Error::InvalidParameter(
            "decomposition needs a group acting on the whole register".into(),
        ));
    }
    if n % 2 == 1 {
        return Err(Error::OddN(n));
    }
    let dim = 1usize << n;
    let id = ComplexMatrix::<T>::identity(dim);
    let [_, x, y, z] = g.elements();
    let (xm, ym, zm) = (x.to_matrix::<T>()?, y.to_matrix::<T>()?, z.to_matrix::<T>()?);
    let half = T::lit(0.5);
    let mut sectors = Vec::with_capacity(4);
    for (lx, lz) in [(1i8, 1i8), (1, -1), (-1, 1), (-1, -1)] {
        let px = (&id + &xm.scale_real(T::lit(lx as f64))).scale_real(half);
        let pz = (&id + &zm.scale_real(T::lit(lz as f64))).scale_real(half);
        let p = &px * &pz;
        let trace = p.trace().re;
        let dimension = trace.round().to_f64() as usize;
        let y_trace = (&p * &ym).trace();
        let ly = (y_trace.re / trace).round().to_f64() as i8;
        if (y_trace.re - trace * T::lit(ly as f64)).abs() > T::structural_tol() * trace
            || y_trace.im.abs() > T::structural_tol() * trace
        {
            return Err(Error::InvalidParameter(format!(
                "Y^n is not constant on sector ({lx}, {lz})"
            )));
        }
        sectors.push(DfsSector {
            eigenvalues: [1, lx, ly, lz],
            dimension,
            projector: p,
        });
    }
    Ok(sectors)
}

#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum LogicalPauli {
    Y,
    Z,
}

/// Pauli operator on one logical qubit, as a `2^n_logical` matrix.
#[derive(Clone, Debug)]
pub struct LogicalOperator<T = f64> {
    pub which: LogicalPauli,
    /// 1-based logical qubit index.
    pub target: usize,
    pub matrix: ComplexMatrix<T>,
}

/// `I (x) .. (x) P (x) .. (x) I` with `P` at logical qubit `j` (1-based).
pub fn logical_pauli_matrix<T: Real>(n_logical: usize, which: LogicalPauli, j: usize) -> Result<ComplexMatrix<T>> {
    if j == 0 || j > n_logical {
        return Err(Error::IndexOutOfRange {
            index: j,
            max: n_logical,
        });
    }
    let factors: Vec<ComplexMatrix<T>> = (1..=n_logical)
        .map(|q| match (q == j, which) {
            (false, _) => paulis::identity(),
            (true, LogicalPauli::Y) => paulis::sigma_y(),
            (true, LogicalPauli::Z) => paulis::sigma_z(),
        })
        .collect();
    Ok(kron_all(&factors))
}

pub fn logical_operator<T: Real>(basis: &LogicalBasis<T>, which: LogicalPauli, j: usize) -> Result<LogicalOperator<T>> {
    Ok(LogicalOperator {
        which,
        target: j,
        matrix: logical_pauli_matrix(basis.n_logical(), which, j)?,
    })
}

/// `M[a][b] = <psi_a| u |psi_b>` over the logical basis.
pub fn project_to_logical<T: Real>(u: &ComplexMatrix<T>, basis: &LogicalBasis<T>) -> Result<ComplexMatrix<T>> {
    let expected = 1usize << basis.n_physical();
    if u.dim() != expected {
        return Err(Error::DimensionMismatch {
            expected,
            actual: u.dim(),
        });
    }
    let images: Vec<StateVector<T>> = basis.states().iter().map(|psi| u.apply(psi)).collect();
    Ok(ComplexMatrix::from_fn(basis.dim(), |a, b| {
        basis.states()[a].inner(&images[b])
    }))
}

/// `||M^dag M - I||` in operator norm; zero iff the code space is preserved.
pub fn leakage<T: Real>(m: &ComplexMatrix<T>) -> T {
    let defect = &(&m.dagger() * m) - &ComplexMatrix::identity(m.dim());
    defect.hermitian_spectral_norm()
}
