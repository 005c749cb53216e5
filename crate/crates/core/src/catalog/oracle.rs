//! Path sum against the published closed forms, at resonance and at
//! detuned points where a general form exists.

use std::f64::consts::FRAC_PI_6;

use super::closed_form_params;
use crate::error::Result;
use crate::hilbert::BasisState;
use crate::perturbation::{closed_form_geff, effective_coupling_for, kerr_path_sum, ClosedForm};
use crate::system::{InteractionModel, SystemSpec};

pub const ORACLE_TOLERANCE: f64 = 1e-10;

/// Detuned points as multiples of the resonant value.
pub const DETUNING_FACTORS: [f64; 3] = [0.9, 0.95, 1.1];

#[derive(Clone, Debug, PartialEq)]
pub enum Probe {
    Transition {
        initial: BasisState,
        target: BasisState,
    },
    /// Self-Kerr shift of a one-mode JC system.
    Kerr,
}

#[derive(Clone, Debug, PartialEq)]
pub struct OracleCase {
    pub id: &'static str,
    /// System at the resonant point.
    pub system: SystemSpec,
    /// Frequency label varied to detune.
    pub swept: &'static str,
    pub probe: Probe,
    /// Form valid at any detuning.
    pub general: Option<ClosedForm>,
    /// Form valid only on resonance.
    pub resonant: Option<ClosedForm>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct OraclePoint {
    pub parameter: f64,
    pub path_sum: f64,
    /// Largest single-path magnitude; sets the scale for vanishing couplings.
    pub largest_path: f64,
    /// `(form, closed value, error, passed)`.
    pub comparisons: Vec<(ClosedForm, f64, f64, bool)>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct OracleOutcome {
    pub id: &'static str,
    pub points: Vec<OraclePoint>,
}

impl OracleOutcome {
    pub fn passed(&self) -> bool {
        self.points
            .iter()
            .all(|p| !p.comparisons.is_empty() && p.comparisons.iter().all(|c| c.3))
    }

    pub fn worst_error(&self) -> f64 {
        self.points
            .iter()
            .flat_map(|p| p.comparisons.iter().map(|c| c.2))
            .fold(0.0, f64::max)
    }
}

/// Relative error of `path` against `closed`, measured against the largest
/// single-path contribution when the coupling itself vanishes.
pub fn oracle_agreement(path: f64, closed: f64, largest_path: f64) -> (f64, bool) {
    let diff = (path - closed).abs();
    let scale = path.abs().max(closed.abs());
    let err = if scale > 1e-6 * largest_path {
        diff / scale
    } else if largest_path > 0.0 {
        diff / largest_path
    } else {
        diff
    };
    (err, err <= ORACLE_TOLERANCE)
}

fn st(s: &str) -> BasisState {
    s.parse().expect("static state")
}

fn transition(i: &str, f: &str) -> Probe {
    Probe::Transition {
        initial: st(i),
        target: st(f),
    }
}

fn two_modes(model: InteractionModel, wa: f64, wb: f64, wq: f64, ga: f64, gb: f64) -> SystemSpec {
    SystemSpec::new(model)
        .mode("a", wa, None)
        .mode("b", wb, None)
        .qubit("q", wq)
        .coupling("a", "q", ga, FRAC_PI_6)
        .coupling("b", "q", gb, FRAC_PI_6)
}

fn one_mode(model: InteractionModel, wa: f64, wq: f64, qubits: usize, g: f64) -> SystemSpec {
    let mut s = SystemSpec::new(model).mode("a", wa, None);
    for k in 1..=qubits {
        let label = if qubits == 1 {
            "q".to_string()
        } else {
            format!("q{k}")
        };
        s = s.qubit(&label, wq).coupling("a", &label, g, FRAC_PI_6);
    }
    s
}

/// The published closed forms, each with the system it describes.
pub fn oracle_suite() -> Vec<OracleCase> {
    use ClosedForm as Cf;
    use InteractionModel::{GeneralizedRabi as Gr, JaynesCummings as Jc, Rabi};

    let hyper_raman_ii = SystemSpec::new(Rabi)
        .mode("a", 3.3, None)
        .mode("b", 1.3, None)
        .qubit("q1", 1.0)
        .qubit("q2", 1.0)
        .coupling("a", "q1", 0.05, 0.0)
        .coupling("a", "q2", 0.05, 0.0)
        .coupling("b", "q1", 0.04, 0.0)
        .coupling("b", "q2", 0.04, 0.0);

    let case = |id, system, swept, probe, general, resonant| OracleCase {
        id,
        system,
        swept,
        probe,
        general,
        resonant,
    };
    vec![
        case(
            "sshg-two-resonator",
            two_modes(Gr, 2.0, 1.0, 1.6, 0.07, 0.14),
            "a",
            transition("0,2,g", "1,0,g"),
            Some(Cf::SshgTwoResonator),
            Some(Cf::SshgTwoResonatorResonant),
        ),
        case(
            "two-photon-rabi",
            one_mode(Gr, 0.5, 1.0, 1, 0.05),
            "a",
            transition("2,g", "0,e"),
            Some(Cf::TwoPhotonRabi),
            Some(Cf::TwoPhotonRabiResonant),
        ),
        case(
            "photon-to-two-qubits",
            one_mode(Gr, 2.0, 1.0, 2, 0.05),
            "a",
            transition("0,e,e", "1,g,g"),
            None,
            Some(Cf::PhotonToTwoQubits),
        ),
        case(
            "raman-stokes",
            two_modes(Gr, 3.0, 2.0, 1.0, 0.05, 0.05),
            "a",
            transition("1,0,g", "0,1,e"),
            Some(Cf::RamanStokes),
            Some(Cf::RamanStokesResonant),
        ),
        case(
            "tshg-two-resonator",
            two_modes(Rabi, 3.0, 1.0, 1.6, 0.07, 0.14),
            "a",
            transition("0,3,g", "1,0,g"),
            Some(Cf::TshgTwoResonator),
            Some(Cf::TshgTwoResonatorResonant),
        ),
        case(
            "three-photon-rabi",
            one_mode(Rabi, 1.0 / 3.0, 1.0, 1, 0.05),
            "a",
            transition("3,g", "0,e"),
            Some(Cf::ThreePhotonRabi),
            Some(Cf::ThreePhotonRabiResonant),
        ),
        case(
            "three-qubit-thg",
            one_mode(Rabi, 3.0, 1.0, 3, 0.05),
            "a",
            transition("0,e,e,e", "1,g,g,g"),
            Some(Cf::ThreeQubitThg),
            None,
        ),
        case(
            "hyper-raman-i-stokes",
            two_modes(Rabi, 3.0, 2.0, 1.0, 0.05, 0.05),
            "a",
            transition("0,2,g", "1,0,e"),
            Some(Cf::HyperRamanIStokes),
            Some(Cf::HyperRamanIResonant),
        ),
        case(
            "hyper-raman-i-anti-stokes",
            two_modes(Rabi, 5.0, 2.0, 1.0, 0.05, 0.05),
            "a",
            transition("0,2,e", "1,0,g"),
            Some(Cf::HyperRamanIAntiStokes),
            Some(Cf::HyperRamanIResonant),
        ),
        case(
            "hyper-raman-i-jc",
            two_modes(Jc, 3.0, 2.0, 1.0, 0.05, 0.05),
            "a",
            transition("0,2,g", "1,0,e"),
            Some(Cf::HyperRamanIJc),
            Some(Cf::HyperRamanIJcResonant),
        ),
        case(
            "hyper-raman-ii",
            hyper_raman_ii,
            "a",
            transition("0,1,e,e", "1,0,g,g"),
            Some(Cf::HyperRamanII),
            None,
        ),
        case(
            "kerr",
            one_mode(Jc, 1.0, 0.5, 1, 0.02),
            "a",
            Probe::Kerr,
            Some(Cf::Kerr),
            None,
        ),
    ]
}

fn evaluate(case: &OracleCase, spec: &SystemSpec) -> Result<(f64, f64)> {
    match &case.probe {
        Probe::Transition { initial, target } => {
            let eff = effective_coupling_for(spec, initial, target)?;
            let largest = eff
                .paths
                .iter()
                .map(|p| p.contribution.norm())
                .fold(0.0, f64::max);
            Ok((eff.value.re, largest))
        }
        Probe::Kerr => {
            let p = closed_form_params(spec);
            let v = kerr_path_sum(p.wa, p.wq, p.g)?;
            Ok((v, v.abs()))
        }
    }
}

pub fn run_oracle_case(case: &OracleCase) -> Result<OracleOutcome> {
    let x0 = case.system.frequency(case.swept)?;
    let mut points = Vec::new();
    let detuned: &[f64] = if case.general.is_some() {
        &DETUNING_FACTORS
    } else {
        &[]
    };
    for (k, factor) in std::iter::once(1.0).chain(detuned.iter().copied()).enumerate() {
        let mut spec = case.system.clone();
        let x = x0 * factor;
        *spec.frequency_mut(case.swept)? = x;
        let (path_sum, largest_path) = evaluate(case, &spec)?;
        let params = closed_form_params(&spec);
        let forms = case.general.into_iter().chain(case.resonant.filter(|_| k == 0));
        let comparisons = forms
            .map(|form| {
                let closed = closed_form_geff(form, &params)?;
                let (err, ok) = oracle_agreement(path_sum, closed, largest_path);
                Ok((form, closed, err, ok))
            })
            .collect::<Result<Vec<_>>>()?;
        points.push(OraclePoint {
            parameter: x,
            path_sum,
            largest_path,
            comparisons,
        });
    }
    Ok(OracleOutcome { id: case.id, points })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_has_twelve_forms() {
        let suite = oracle_suite();
        assert_eq!(suite.len(), 12);
        for case in &suite {
            let out = run_oracle_case(case).unwrap();
            assert!(out.passed(), "{}: {:?}", case.id, out.points);
        }
    }

    #[test]
    fn agreement_scales() {
        assert!(oracle_agreement(1.0, 1.0 + 1e-11, 1.0).1);
        assert!(!oracle_agreement(1.0, 1.0 + 1e-9, 1.0).1);
        assert!(oracle_agreement(4e-20, 0.0, 1e-4).1);
        assert!(!oracle_agreement(1e-12, 0.0, 1e-4).1);
    }
}
