use num_complex::Complex64;
use proptest::prelude::*;

use qnlo_core::dynamics::{evolve, EvolutionSpec, Propagator};
use qnlo_core::{BasisState, Hamiltonian, InteractionModel, SystemSpec};

fn model() -> impl Strategy<Value = InteractionModel> {
    prop::sample::select(InteractionModel::ALL.to_vec())
}

fn spec(model: InteractionModel, wa: f64, wq: f64, g: f64, theta: f64) -> SystemSpec {
    SystemSpec::new(model)
        .mode("a", wa, Some(6))
        .qubit("q", wq)
        .coupling("a", "q", g, theta)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn norm_is_preserved(
        m in model(),
        wa in 0.3f64..2.0,
        wq in 0.3f64..2.0,
        g in 0.0f64..0.4,
        theta in 0.0f64..3.1,
        t in 1.0f64..200.0,
    ) {
        let h = Hamiltonian::build(&spec(m, wa, wq, g, theta)).unwrap();
        let trace = evolve(&h.total, &EvolutionSpec {
            initial: "1,e".parse().unwrap(),
            targets: vec!["1,e".parse().unwrap(), "0,g".parse().unwrap()],
            total_time: t,
            samples: 32,
        }).unwrap();
        for (k, n) in trace.norms.iter().enumerate() {
            prop_assert!((n - 1.0).abs() < 1e-10);
            let p: f64 = trace.populations.iter().map(|row| row[k]).sum();
            prop_assert!(p <= 1.0 + 1e-10);
        }
        prop_assert!((trace.populations[0][0] - 1.0).abs() < 1e-12);
    }

    #[test]
    fn time_reversal_returns_initial_state(
        m in model(),
        wa in 0.3f64..2.0,
        wq in 0.3f64..2.0,
        g in 0.0f64..0.4,
        theta in 0.0f64..3.1,
        t in 0.1f64..50.0,
    ) {
        let h = Hamiltonian::build(&spec(m, wa, wq, g, theta)).unwrap();
        let prop = Propagator::new(&h.total).unwrap();
        let dim = h.space.dimension();
        let start = h.space.index_of(&BasisState::new(vec![2], vec![false])).unwrap();
        let mut psi = vec![Complex64::new(0.0, 0.0); dim];
        psi[start] = Complex64::new(1.0, 0.0);
        let forward = prop.state_at(&prop.coefficients(&psi), t);
        let back = prop.state_at(&prop.coefficients(&forward), -t);
        let err: f64 = back.iter().zip(&psi).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max);
        prop_assert!(err < 1e-10);
    }

    #[test]
    fn jc_conserves_excitations(
        wa in 0.3f64..2.0,
        wq in 0.3f64..2.0,
        g in 0.0f64..0.4,
        t in 1.0f64..100.0,
    ) {
        let h = Hamiltonian::build(&spec(InteractionModel::JaynesCummings, wa, wq, g, 0.0)).unwrap();
        let trace = evolve(&h.total, &EvolutionSpec {
            initial: "2,g".parse().unwrap(),
            targets: vec!["2,g".parse().unwrap(), "1,e".parse().unwrap()],
            total_time: t,
            samples: 32,
        }).unwrap();
        for k in 0..trace.times.len() {
            let p = trace.populations[0][k] + trace.populations[1][k];
            prop_assert!((p - 1.0).abs() < 1e-10);
        }
    }
}
