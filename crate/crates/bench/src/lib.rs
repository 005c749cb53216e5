//! Fixtures shared by the benchmarks.

use std::f64::consts::FRAC_PI_6;

use qnlo_core::spectra::SweepSpec;
use qnlo_core::{BasisState, InteractionModel, SystemSpec};

pub fn state(s: &str) -> BasisState {
    s.parse().expect("fixture state")
}

/// Two resonators and one qubit near second-harmonic resonance.
pub fn two_resonator(model: InteractionModel, n_max: usize) -> SystemSpec {
    SystemSpec::new(model)
        .mode("a", 2.0, Some(n_max))
        .mode("b", 1.0, Some(n_max))
        .qubit("q", 1.6)
        .coupling("a", "q", 0.07, FRAC_PI_6)
        .coupling("b", "q", 0.14, FRAC_PI_6)
}

/// One resonator with `qubits` identical qubits.
pub fn multi_qubit(model: InteractionModel, wa: f64, qubits: usize, n_max: usize) -> SystemSpec {
    let mut s = SystemSpec::new(model).mode("a", wa, Some(n_max));
    for k in 1..=qubits {
        let label = format!("q{k}");
        s = s.qubit(&label, 1.0).coupling("a", &label, 0.05, 0.0);
    }
    s
}

pub fn crossing_sweep(points: usize, n_max: usize) -> SweepSpec {
    SweepSpec {
        system: two_resonator(InteractionModel::GeneralizedRabi, n_max),
        parameter: "a".parse().expect("label"),
        lo: 1.9,
        hi: 2.05,
        points,
        tracked: vec![state("1,0,g"), state("0,2,g")],
    }
}
