use biodilate::biortho::{BiorthogonalOperator, KappaPolicy};
use biodilate::dilate::{biortho_plan, lcu_plan, pauli_decompose, sznagy_plan, DilationOutcome, DilationPlan};
use biodilate::numkernel::{fidelity, singular_values, ComplexMatrix, ComplexVector, C64};
use biodilate::qsim::gate_census;
use biodilate::random;
use proptest::prelude::*;

fn dims() -> impl Strategy<Value = usize> {
    prop::sample::select(vec![2usize, 4, 8])
}

fn check_outcome(plan: &DilationPlan, psi: &ComplexVector, out: &DilationOutcome) -> Result<(), TestCaseError> {
    let v_psi = plan.target.matvec(psi).unwrap();
    if out.simulated_probability > 1e-12 {
        prop_assert!(fidelity(&out.output_state, &v_psi).unwrap() >= 1.0 - 1e-8);
    }
    prop_assert!((out.simulated_probability - out.predicted_probability).abs() <= 1e-10);
    let rebuilt = out.branch.scale(C64::new(out.scale, 0.0));
    prop_assert!(rebuilt.max_abs_diff(&v_psi).unwrap() <= 1e-9 * v_psi.norm().max(1.0));
    Ok(())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn biortho_end_to_end(seed in any::<u64>(), dim in dims()) {
        let mut rng = random::seeded(seed);
        let v = random::diagonalizable(&mut rng, dim);
        let psi = random::state(&mut rng, dim);
        let op = BiorthogonalOperator::from_eigen(&v, &KappaPolicy::default()).unwrap();
        let plan = biortho_plan(&op).unwrap();
        prop_assert_eq!(plan.ancilla_qubits, plan.system_qubits);
        let out = plan.run(&psi).unwrap();
        check_outcome(&plan, &psi, &out)?;
    }

    #[test]
    fn lcu_end_to_end(seed in any::<u64>(), dim in dims()) {
        let mut rng = random::seeded(seed);
        let v = random::diagonalizable(&mut rng, dim);
        let psi = random::state(&mut rng, dim);
        let terms = pauli_decompose(&v).unwrap();
        let plan = lcu_plan(&terms).unwrap();
        let out = plan.run(&psi).unwrap();
        check_outcome(&plan, &psi, &out)?;
        prop_assert!(plan.target.max_abs_diff(&v).unwrap() <= 1e-10);
    }

    #[test]
    fn sznagy_end_to_end(seed in any::<u64>(), dim in dims()) {
        let mut rng = random::seeded(seed);
        let g = random::diagonalizable(&mut rng, dim);
        let v = g.scale(C64::new(0.95 / singular_values(&g).unwrap()[0], 0.0));
        let psi = random::state(&mut rng, dim);
        let plan = sznagy_plan(&v).unwrap();
        prop_assert!(plan.circuit.gates()[0].matrix().is_unitary(1e-8));
        let out = plan.run(&psi).unwrap();
        check_outcome(&plan, &psi, &out)?;
    }

    #[test]
    fn ancillas_ignore_summand_count(seed in any::<u64>(), dim in dims()) {
        // dense V has up to dim^2 Pauli terms; the biortho ancilla count stays log2(dim)
        let mut rng = random::seeded(seed);
        let v = random::diagonalizable(&mut rng, dim);
        let n = dim.trailing_zeros() as usize;
        let summands = pauli_decompose(&v).unwrap().len();
        let plan = biortho_plan(&BiorthogonalOperator::from_eigen(&v, &KappaPolicy::default()).unwrap()).unwrap();
        prop_assert_eq!(plan.ancilla_qubits, n);
        let lcu = lcu_plan(&pauli_decompose(&v).unwrap()).unwrap();
        prop_assert_eq!(lcu.ancilla_qubits, summands.next_power_of_two().trailing_zeros() as usize);
    }
}

#[test]
fn sixteen_dimensional_biortho() {
    let mut rng = random::seeded(1616);
    let v = random::diagonalizable(&mut rng, 16);
    let psi = random::state(&mut rng, 16);
    let plan = biortho_plan(&BiorthogonalOperator::from_eigen(&v, &KappaPolicy::default()).unwrap()).unwrap();
    let out = plan.run(&psi).unwrap();
    assert!(out.fidelity_vs_oracle >= 1.0 - 1e-8);
    assert!((out.simulated_probability - out.predicted_probability).abs() <= 1e-10);
    let census = gate_census(&plan.circuit);
    assert_eq!(census.controlled_basis, 16);
    assert!(census.within_scaling_bound(4, 4));
}

#[test]
fn half_identity_contraction() {
    let v = ComplexMatrix::identity(2).scale(C64::new(0.5, 0.0));
    let out = sznagy_plan(&v).unwrap().run(&ComplexVector::basis(2, 0)).unwrap();
    assert!((out.simulated_probability - 0.25).abs() < 1e-12);
    assert!(out.output_state.max_abs_diff(&ComplexVector::basis(2, 0)).unwrap() < 1e-12);
}
