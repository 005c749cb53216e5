//! Exact diagonalization, level tracking through parameter sweeps and
//! avoided-crossing analysis.

mod crossing;
mod eigen;
mod lanczos;
mod sweep;

pub use crossing::{dressed_gap, find_avoided_crossing, CrossingReport};
pub use eigen::{eigensystem, lowest_eigenpairs, Eigensystem, Solver, DENSE_CAP};
pub use sweep::{state_slug, track_levels, SweepResult, SweepSpec, SweptParameter, AMBIGUITY_MARGIN};

use log::warn;

use crate::error::{Error, Result};
use crate::hamiltonian::Hamiltonian;
use crate::hilbert::BasisState;
use crate::system::{InteractionModel, SystemSpec};

/// Observable values at successive truncations.
#[derive(Clone, Debug, PartialEq)]
pub struct ConvergenceSeries {
    pub n_max: Vec<usize>,
    pub values: Vec<f64>,
}

impl ConvergenceSeries {
    /// `|v_{k+1} − v_k| / |v_{k+1}|`, or the absolute change when the value is zero.
    pub fn relative_changes(&self) -> Vec<f64> {
        self.values
            .windows(2)
            .map(|w| {
                let d = (w[1] - w[0]).abs();
                if w[1] == 0.0 {
                    d
                } else {
                    d / w[1].abs()
                }
            })
            .collect()
    }
}

/// Evaluates `observable` with every mode truncated at `n_max`,
/// `n_max + step` and `n_max + 2·step`.
pub fn convergence_check<F>(
    spec: &SystemSpec,
    n_max: usize,
    step: usize,
    observable: F,
) -> Result<ConvergenceSeries>
where
    F: Fn(&SystemSpec) -> Result<f64>,
{
    let levels: Vec<usize> = (0..3).map(|k| n_max + k * step).collect();
    let values = levels
        .iter()
        .map(|&n| observable(&spec.clone().with_n_max(n)))
        .collect::<Result<Vec<f64>>>()?;
    Ok(ConvergenceSeries {
        n_max: levels,
        values,
    })
}

#[derive(Clone, Debug, PartialEq)]
pub struct KerrEstimate {
    /// Mean of the two half second differences.
    pub chi: f64,
    /// `½(E(n+1) − 2E(n) + E(n−1))` for `n = 1, 2`.
    pub half_second_differences: [f64; 2],
    /// `g / |ω_a − ω_q|`.
    pub dispersive_ratio: f64,
}

/// Numerical self-Kerr coefficient of a one-mode, one-qubit JC system from
/// the dressed qubit-ground branch `E(n)`, `n = 0..=3`.
pub fn kerr_shift_numeric(spec: &SystemSpec) -> Result<KerrEstimate> {
    if spec.modes.len() != 1 || spec.qubits.len() != 1 || spec.couplings.len() > 1 {
        return Err(Error::InvalidSpec(
            "Kerr estimate needs one mode, one qubit and at most one coupling".into(),
        ));
    }
    if spec.model != InteractionModel::JaynesCummings {
        warn!("Kerr estimate evaluated under the {} model", spec.model);
    }
    let g = spec.couplings.first().map_or(0.0, |c| c.g);
    let detuning = (spec.modes[0].frequency - spec.qubits[0].frequency).abs();
    let ratio = g / detuning;
    if ratio > 0.2 {
        warn!("g/|ω_a − ω_q| = {ratio:.3} is outside the dispersive regime");
    }

    let ground = |n: usize| BasisState::new(vec![n], vec![false]);
    let mut s = spec.clone();
    s.fill_truncation(&[ground(3)]);
    let h = Hamiltonian::build(&s)?;
    let eig = eigensystem(&h.total)?;
    let energies: Vec<f64> = (0..4)
        .map(|n| {
            let b = h.space.index_of(&ground(n))?;
            let k = (0..eig.len())
                .max_by(|&x, &y| eig.weight(x, b).total_cmp(&eig.weight(y, b)))
                .unwrap();
            Ok(eig.values[k])
        })
        .collect::<Result<_>>()?;
    let d1 = 0.5 * (energies[2] - 2.0 * energies[1] + energies[0]);
    let d2 = 0.5 * (energies[3] - 2.0 * energies[2] + energies[1]);
    Ok(KerrEstimate {
        chi: 0.5 * (d1 + d2),
        half_second_differences: [d1, d2],
        dispersive_ratio: ratio,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn kerr_spec(g: f64) -> SystemSpec {
        SystemSpec::new(InteractionModel::JaynesCummings)
            .mode("a", 1.0, Some(8))
            .qubit("q", 0.5)
            .coupling("a", "q", g, 0.0)
    }

    #[test]
    fn kerr_numeric() {
        let k = kerr_spec(0.02).with_n_max(8);
        let est = kerr_shift_numeric(&k).unwrap();
        let chi = -(0.02f64).powi(4) / 0.5f64.powi(3);
        assert!((est.chi - chi).abs() < 0.1 * chi.abs(), "{est:?}");
        assert!(est.chi < 0.0);
        assert_eq!(kerr_shift_numeric(&kerr_spec(0.0)).unwrap().chi, 0.0);
    }

    #[test]
    fn convergence_of_uncoupled_gap_is_exact() {
        let spec = kerr_spec(0.0);
        let series = convergence_check(&spec, 4, 2, |s| {
            let h = Hamiltonian::build(s)?;
            let e = eigensystem(&h.total)?;
            Ok(e.values[1] - e.values[0])
        })
        .unwrap();
        assert_eq!(series.n_max, vec![4, 6, 8]);
        assert!(series.relative_changes().iter().all(|&c| c == 0.0));
    }

    #[test]
    fn convergence_with_too_small_truncation() {
        let spec = kerr_spec(0.02);
        let err = convergence_check(&spec, 1, 2, |s| {
            let h = Hamiltonian::build(s)?;
            h.space.bare_energy(&"2,g".parse().unwrap())
        })
        .unwrap_err();
        assert_eq!(err.kind(), crate::error::ErrorKind::Capacity);
    }
}
