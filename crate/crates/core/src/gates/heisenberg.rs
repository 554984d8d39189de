//! Anisotropic Heisenberg couplings and their reduction to gate Hamiltonians.

use crate::pauli::{Coefficient, Letter, PauliString, PauliSum};
use crate::scalar::Real;

/// `field * Z_i + jx X_i X_b + jy Y_i Y_b + jz Z_i Z_b` per bond.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct HeisenbergCouplings<T = f64> {
    pub field: T,
    pub jx: T,
    pub jy: T,
    pub jz: T,
}

fn bond_terms<T: Real + Coefficient>(c: &HeisenbergCouplings<T>, n: usize, a: usize, b: usize) -> Vec<(T, PauliString)> {
    [(c.jx, Letter::X), (c.jy, Letter::Y), (c.jz, Letter::Z)]
        .into_iter()
        .map(|(j, l)| (j, PauliString::from_sparse(n, &[(a, l), (b, l)])))
        .collect()
}

fn field_term<T: Real + Coefficient>(c: &HeisenbergCouplings<T>, n: usize, i: usize) -> (T, PauliString) {
    (c.field, PauliString::from_sparse(n, &[(i, Letter::Z)]))
}

/// Open chain on `n` qubits: a field on every site and a bond between each
/// neighbouring pair `(i, i+1)`. Zero couplings are dropped.
pub fn heisenberg_reduction<T: Real + Coefficient>(c: HeisenbergCouplings<T>, n: usize) -> PauliSum<T> {
    assert!(n >= 2, "Heisenberg chain needs at least two sites");
    let mut terms = Vec::new();
    for i in 1..=n {
        terms.push(field_term(&c, n, i));
        if i < n {
            terms.extend(bond_terms(&c, n, i, i + 1));
        }
    }
    PauliSum::from_terms(n, terms).expect("terms sized to n").simplified()
}

/// Only qubits `a` and `b` (1-based) interact, e.g. two coupled cavities
/// with every other coupling switched off.
pub fn heisenberg_pair<T: Real + Coefficient>(c: HeisenbergCouplings<T>, a: usize, b: usize, n: usize) -> PauliSum<T> {
    let mut terms = vec![field_term(&c, n, a), field_term(&c, n, b)];
    terms.extend(bond_terms(&c, n, a, b));
    PauliSum::from_terms(n, terms).expect("terms sized to n").simplified()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gates::schedule::{schedule_u1, schedule_u2};

    fn couplings(field: f64, jx: f64, jy: f64, jz: f64) -> HeisenbergCouplings<f64> {
        HeisenbergCouplings { field, jx, jy, jz }
    }

    #[test]
    fn zz_only_pair_is_h1() {
        let (n, j) = (6, 2);
        let h = heisenberg_pair(couplings(0.0, 0.0, 0.0, 1.0), j + 1, n, n);
        let s = schedule_u1(n, j, 0.3).unwrap();
        assert_eq!(&h, s.segments()[0].hamiltonian());
    }

    #[test]
    fn xx_only_pair_is_h2() {
        let (n, j) = (4, 2);
        let h = heisenberg_pair(couplings(0.0, 1.0, 0.0, 0.0), 1, j + 1, n);
        let s = schedule_u2(n, j, 0.3).unwrap();
        assert_eq!(&h, s.segments()[3].hamiltonian());
    }

    #[test]
    fn zero_couplings_vanish() {
        assert!(heisenberg_reduction(couplings(0.0, 0.0, 0.0, 0.0), 5).terms().is_empty());
    }

    #[test]
    fn chain_term_count() {
        let h = heisenberg_reduction(couplings(0.1, 0.2, 0.3, 0.4), 4);
        // 4 fields and 3 bonds of 3 terms each.
        assert_eq!(h.terms().len(), 4 + 9);
        assert!(h.has_real_phases());
    }
}
