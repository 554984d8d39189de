//! System-bath couplings `sum_i,a b_i^a sigma_i^a (x B_i^a)`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::linalg::ComplexMatrix;
use crate::pauli::{Coefficient, Letter, PauliString, PauliSum, MAX_QUBITS};
use crate::scalar::Real;

/// Default half-width of the uniform coupling distribution.
pub const DEFAULT_BATH_WIDTH: f64 = 0.1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum BathKind {
    /// `B_i^a` are c-numbers; the coupling acts on the system alone.
    ScalarField,
    /// One bath qubit per system qubit, `B_i^a = b_i^a tau_i^x`.
    BathQubit,
}

#[derive(Clone, Debug, PartialEq)]
pub struct BathModel<T = f64> {
    kind: BathKind,
    /// `couplings[i] = [b_x, b_y, b_z]` for system qubit `i + 1`.
    couplings: Vec<[T; 3]>,
}

impl<T: Real + Coefficient> BathModel<T> {
    pub fn new(kind: BathKind, couplings: Vec<[T; 3]>) -> Result<Self> {
        let n = couplings.len();
        if n == 0 {
            return Err(Error::InvalidParameter("bath needs at least one system qubit".into()));
        }
        let total = match kind {
            BathKind::ScalarField => n,
            BathKind::BathQubit => 2 * n,
        };
        if total > MAX_QUBITS {
            return Err(Error::DimensionTooLarge {
                n_qubits: total,
                max: MAX_QUBITS,
            });
        }
        Ok(Self { kind, couplings })
    }

    /// Scalar bath with every coupling zero.
    pub fn zero(n: usize) -> Result<Self> {
        Self::new(BathKind::ScalarField, vec![[T::zero(); 3]; n])
    }

    /// Couplings drawn uniformly from `[-width, width]` with a seeded ChaCha8 stream.
    /// Draw order is qubit-major, axes x, y, z.
    pub fn random(kind: BathKind, n: usize, width: T, seed: u64) -> Result<Self> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let w = width.to_f64();
        let couplings = (0..n)
            .map(|_| [(); 3].map(|_| T::lit(if w > 0.0 { rng.random_range(-w..=w) } else { 0.0 })))
            .collect();
        Self::new(kind, couplings)
    }

    pub fn kind(&self) -> BathKind {
        self.kind
    }

    pub fn couplings(&self) -> &[[T; 3]] {
        &self.couplings
    }

    pub fn system_qubits(&self) -> usize {
        self.couplings.len()
    }

    pub fn bath_qubits(&self) -> usize {
        match self.kind {
            BathKind::ScalarField => 0,
            BathKind::BathQubit => self.couplings.len(),
        }
    }

    pub fn total_qubits(&self) -> usize {
        self.system_qubits() + self.bath_qubits()
    }

    pub fn is_zero(&self) -> bool {
        self.couplings.iter().flatten().all(|b| b.is_zero())
    }

    /// `H_SB` as a Pauli sum on system qubits `1..=n` followed by bath qubits.
    pub fn coupling(&self) -> PauliSum<T> {
        let n = self.system_qubits();
        let total = self.total_qubits();
        let mut terms = Vec::with_capacity(3 * n);
        for (i, b) in self.couplings.iter().enumerate() {
            for (&strength, letter) in b.iter().zip([Letter::X, Letter::Y, Letter::Z]) {
                let mut ops = vec![(i + 1, letter)];
                if self.kind == BathKind::BathQubit {
                    ops.push((n + i + 1, Letter::X));
                }
                terms.push((strength, PauliString::from_sparse(total, &ops)));
            }
        }
        PauliSum::from_terms(total, terms).expect("terms sized to register").simplified()
    }

    pub fn coupling_matrix(&self) -> Result<ComplexMatrix<T>> {
        self.coupling().to_matrix()
    }
}

/// Restricts a system-bath operator to the system by sandwiching with the
/// bath state `|0...0>`: `U_sys[a, b] = U[(a, 0), (b, 0)]`.
pub fn reduce_to_system<T: Real>(u: &ComplexMatrix<T>, bath_qubits: usize) -> ComplexMatrix<T> {
    if bath_qubits == 0 {
        return u.clone();
    }
    let dim_sys = u.dim() >> bath_qubits;
    ComplexMatrix::from_fn(dim_sys, |a, b| u[(a << bath_qubits, b << bath_qubits)])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pauli::{group_average, DecouplingGroup};

    #[test]
    fn seeded_draws_repeat() {
        let a = BathModel::<f64>::random(BathKind::ScalarField, 4, 0.1, 7).unwrap();
        let b = BathModel::<f64>::random(BathKind::ScalarField, 4, 0.1, 7).unwrap();
        let c = BathModel::<f64>::random(BathKind::ScalarField, 4, 0.1, 8).unwrap();
        assert_eq!(a, b);
        assert_ne!(a, c);
        assert!(a.couplings().iter().flatten().all(|b| b.abs() <= 0.1));
    }

    #[test]
    fn coupling_shapes() {
        let s = BathModel::<f64>::random(BathKind::ScalarField, 4, 0.1, 1).unwrap();
        assert_eq!(s.coupling().n_qubits(), 4);
        assert_eq!(s.coupling().terms().len(), 12);
        let q = BathModel::<f64>::random(BathKind::BathQubit, 4, 0.1, 1).unwrap();
        assert_eq!(q.coupling().n_qubits(), 8);
        assert!(q.coupling().terms().iter().all(|(_, p)| p.weight() == 2));
        assert!(q.coupling_matrix().unwrap().is_hermitian(1e-12));
    }

    #[test]
    fn bath_qubit_model_limited_to_four_system_qubits() {
        assert!(matches!(
            BathModel::<f64>::random(BathKind::BathQubit, 6, 0.1, 1),
            Err(Error::DimensionTooLarge { n_qubits: 12, .. })
        ));
    }

    #[test]
    fn both_couplings_average_to_zero() {
        for kind in [BathKind::ScalarField, BathKind::BathQubit] {
            let bath = BathModel::<f64>::random(kind, 4, 0.1, 3).unwrap();
            let g = DecouplingGroup::new(4).unwrap().extended(bath.bath_qubits());
            assert!(group_average(&bath.coupling(), &g).unwrap().is_zero());
        }
    }

    #[test]
    fn reduction_picks_bath_ground_block() {
        let u = ComplexMatrix::<f64>::from_fn(4, |r, c| num_complex::Complex::new((4 * r + c) as f64, 0.0));
        let red = reduce_to_system(&u, 1);
        assert_eq!(red.dim(), 2);
        assert_eq!(red[(1, 0)].re, 8.0);
        assert_eq!(red[(1, 1)].re, 10.0);
    }
}
