use biodilate::numkernel::ComplexMatrix;
use biodilate::qsim::{hadamard_layer, qft_circuit, register, state_prep_unitary, StateVector};
use biodilate::random;
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn runs_preserve_norm(seed in any::<u64>(), n in 1usize..=5) {
        let mut rng = random::seeded(seed);
        let psi = random::state(&mut rng, 1 << n);
        let s = StateVector::from_amplitudes(psi).unwrap();
        let out = s.run(&qft_circuit(n, &register(0, n)).unwrap()).unwrap();
        prop_assert!((out.norm() - 1.0).abs() <= 1e-10);
    }

    #[test]
    fn qft_zero_row_matches_hadamards(seed in any::<u64>(), n in 1usize..=3, extra in 1usize..=3) {
        let mut rng = random::seeded(seed);
        let total = n + extra;
        let psi = random::state(&mut rng, 1 << total);
        let s = StateVector::from_amplitudes(psi).unwrap();
        let reg = register(0, n);
        let a = s.run(&qft_circuit(total, &reg).unwrap()).unwrap().postselect(&reg, 0).unwrap();
        let b = s.run(&hadamard_layer(total, &reg).unwrap()).unwrap().postselect(&reg, 0).unwrap();
        prop_assert!((a.probability - b.probability).abs() <= 1e-10);
        prop_assert!(a.state.amplitudes().max_abs_diff(b.state.amplitudes()).unwrap() <= 1e-10);
    }

    #[test]
    fn outcome_probabilities_sum_to_one(seed in any::<u64>(), n in 2usize..=5, width in 1usize..=2) {
        let mut rng = random::seeded(seed);
        let s = StateVector::from_amplitudes(random::state(&mut rng, 1 << n)).unwrap();
        let reg: Vec<usize> = (0..width.min(n)).map(|i| n - 1 - i).collect();
        let total: f64 = (0..(1usize << reg.len()))
            .map(|v| s.postselect(&reg, v).map(|r| r.probability).unwrap_or(0.0))
            .sum();
        prop_assert!((total - 1.0).abs() <= 1e-10);
    }

    #[test]
    fn state_prep_maps_e0_to_target(seed in any::<u64>(), n in 0usize..=6) {
        let mut rng = random::seeded(seed);
        let target = random::state(&mut rng, 1 << n);
        let u = state_prep_unitary(&target).unwrap();
        prop_assert!(u.is_unitary(1e-10));
        prop_assert!(u.column(0).max_abs_diff(&target).unwrap() <= 1e-10);
    }
}

#[test]
fn qft_is_unitary_up_to_six_qubits() {
    for n in 1..=6 {
        let u = qft_circuit(n, &register(0, n)).unwrap().unitary().unwrap();
        let prod = u.matmul(&u.adjoint()).unwrap();
        assert!(prod.max_abs_diff(&ComplexMatrix::identity(1 << n)).unwrap() <= 1e-10);
    }
}
