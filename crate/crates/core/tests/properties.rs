use holodd::dfs::LogicalBasis;
use holodd::linalg::{expm_hermitian, kron_all, paulis, subspace_projector, ComplexMatrix, StateVector};
use holodd::pauli::{group_average, DecouplingGroup, Letter, Phase, PauliString, PauliSum};
use num_complex::Complex;
use num_rational::Rational64;
use proptest::prelude::*;

fn letter() -> impl Strategy<Value = Letter> {
    prop_oneof![Just(Letter::I), Just(Letter::X), Just(Letter::Y), Just(Letter::Z)]
}

fn pauli_pair(max_n: usize) -> impl Strategy<Value = (PauliString, PauliString)> {
    (1..=max_n).prop_flat_map(|n| {
        let s = move || (0i64..4, prop::collection::vec(letter(), n)).prop_map(|(k, l)| PauliString::new(Phase::from_power(k), l));
        (s(), s())
    })
}

/// Kronecker product of 2x2 Pauli matrices, independent of `to_matrix`.
fn dense(p: &PauliString) -> ComplexMatrix<f64> {
    let factors: Vec<_> = p
        .letters()
        .iter()
        .map(|l| match l {
            Letter::I => paulis::identity(),
            Letter::X => paulis::sigma_x(),
            Letter::Y => paulis::sigma_y(),
            Letter::Z => paulis::sigma_z(),
        })
        .collect();
    kron_all(&factors).scale(Complex::i().powi(p.phase().power() as i32))
}

fn hermitian(n: usize) -> impl Strategy<Value = ComplexMatrix<f64>> {
    let d = 1 << n;
    prop::collection::vec((-1.0f64..1.0, -1.0f64..1.0), d * d).prop_map(move |v| {
        let a = ComplexMatrix::from_fn(d, |r, c| Complex::new(v[r * d + c].0, v[r * d + c].1));
        (&a + &a.dagger()).scale_real(0.5)
    })
}

/// Even-N register with a sum of random strings.
fn pauli_sum_f64() -> impl Strategy<Value = PauliSum<f64>> {
    prop_oneof![Just(2usize), Just(4), Just(6)].prop_flat_map(|n| {
        prop::collection::vec((-3.0f64..3.0, 0i64..4, prop::collection::vec(letter(), n)), 1..12).prop_map(move |terms| {
            let terms = terms
                .into_iter()
                .map(|(c, k, l)| (c, PauliString::new(Phase::from_power(2 * (k % 2)), l)))
                .collect();
            PauliSum::from_terms(n, terms).unwrap()
        })
    })
}

fn commutes_with_group_oracle(p: &PauliString) -> bool {
    // X^N: count of Y/Z letters even; Z^N: count of X/Y letters even.
    let yz = p.letters().iter().filter(|l| matches!(l, Letter::Y | Letter::Z)).count();
    let xy = p.letters().iter().filter(|l| matches!(l, Letter::X | Letter::Y)).count();
    yz % 2 == 0 && xy % 2 == 0
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn pauli_product_is_homomorphic((a, b) in pauli_pair(5)) {
        let prod = a.product(&b).unwrap();
        prop_assert!(dense(&prod).max_abs_diff(&(&dense(&a) * &dense(&b))) < 1e-14);
        prop_assert!(prod.to_matrix::<f64>().unwrap().max_abs_diff(&dense(&prod)) < 1e-14);
    }

    #[test]
    fn commutation_matches_matrices((a, b) in pauli_pair(4)) {
        let (ma, mb) = (dense(&a), dense(&b));
        let comm = a.commutes(&b).unwrap();
        prop_assert_eq!(comm, ma.commutator(&mb).max_abs() < 1e-14);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn expm_semigroup_and_unitarity(h in hermitian(3), s in -2.0f64..2.0, t in -2.0f64..2.0) {
        let us = expm_hermitian(&h, s).unwrap();
        let ut = expm_hermitian(&h, t).unwrap();
        let ust = expm_hermitian(&h, s + t).unwrap();
        prop_assert!(ust.max_abs_diff(&(&us * &ut)) < 1e-11);
        prop_assert!(us.unitarity_defect() < 1e-12);
    }

    #[test]
    fn logical_subset_projectors_are_idempotent(n in prop_oneof![Just(4usize), Just(6)], mask in 1u32..u32::MAX) {
        let basis = LogicalBasis::<f64>::new(n).unwrap();
        let chosen: Vec<StateVector<f64>> = basis
            .states()
            .iter()
            .enumerate()
            .filter(|(k, _)| mask >> (k % 32) & 1 == 1)
            .map(|(_, v)| v.clone())
            .collect();
        prop_assume!(!chosen.is_empty());
        let p = subspace_projector(&chosen).unwrap();
        prop_assert!((&p * &p).max_abs_diff(&p) < 1e-12);
        prop_assert!(p.hermiticity_defect() < 1e-15);
        prop_assert!((p.trace().re - chosen.len() as f64).abs() < 1e-12);
    }

    #[test]
    fn group_average_is_idempotent_projection(h in pauli_sum_f64()) {
        let g = DecouplingGroup::new(h.n_qubits()).unwrap();
        let once = group_average(&h, &g).unwrap();
        let twice = group_average(&once, &g).unwrap();
        prop_assert_eq!(&once, &twice);
        for (_, p) in once.terms() {
            prop_assert!(commutes_with_group_oracle(p));
        }
    }

    #[test]
    fn rational_average_is_exact(
        n in prop_oneof![Just(2usize), Just(4), Just(6)],
        terms in prop::collection::vec((-50i64..50, 1i64..20, prop::collection::vec(letter(), 6)), 1..10),
    ) {
        let strings: Vec<(Rational64, PauliString)> = terms
            .iter()
            .map(|(a, b, l)| (Rational64::new(*a, *b), PauliString::new(Phase::PlusOne, l[..n].to_vec())))
            .collect();
        let h = PauliSum::from_terms(n, strings.clone()).unwrap().simplified();
        let avg = group_average(&h, &DecouplingGroup::new(n).unwrap()).unwrap();
        let expected: Vec<_> = h.terms().iter().filter(|(_, p)| commutes_with_group_oracle(p)).cloned().collect();
        prop_assert_eq!(avg.terms(), &expected[..]);
    }
}

#[test]
fn matrix_average_agrees_with_symbolic() {
    let h = PauliSum::<f64>::parse("0.3*+XYZI + -1.25*+XXII + 0.5*+ZIZI + 2*+YYYY + 0.7*+IXYZ", 4).unwrap();
    let g = DecouplingGroup::new(4).unwrap();
    let m = h.to_matrix().unwrap();
    let mut acc = ComplexMatrix::zeros(16);
    for e in g.elements() {
        let em = dense(e);
        acc = &acc + &(&(&em.dagger() * &m) * &em);
    }
    let numeric = acc.scale_real(0.25);
    let symbolic = group_average(&h, &g).unwrap().to_matrix().unwrap();
    assert!(numeric.max_abs_diff(&symbolic) < 1e-14);
}
