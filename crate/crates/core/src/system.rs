//! Declarative description of a qubit–resonator system.
//!
//! Frequencies and couplings are dimensionless multiples of a reference
//! frequency, with ħ = 1.

use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// Photon margin added above the largest requested occupation when a mode
/// has no explicit truncation.
pub const DEFAULT_TRUNCATION_MARGIN: usize = 4;

#[derive(Clone, Debug, PartialEq)]
pub struct ModeSpec {
    pub label: String,
    pub frequency: f64,
    /// Highest photon number kept. `None` means "pick automatically".
    pub n_max: Option<usize>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct QubitSpec {
    pub label: String,
    pub frequency: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct CouplingSpec {
    pub mode: String,
    pub qubit: String,
    pub g: f64,
    /// Mixing angle between transverse and longitudinal coupling; only the
    /// generalized Rabi model reads it.
    pub theta: f64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum InteractionModel {
    /// `g (a σ+ + a† σ-)`
    JaynesCummings,
    /// `g (a + a†) σx`
    Rabi,
    /// `g (a + a†) (σx cos θ + σz sin θ)`
    GeneralizedRabi,
}

impl InteractionModel {
    pub const ALL: [InteractionModel; 3] = [
        InteractionModel::JaynesCummings,
        InteractionModel::Rabi,
        InteractionModel::GeneralizedRabi,
    ];

    pub fn name(self) -> &'static str {
        match self {
            InteractionModel::JaynesCummings => "jc",
            InteractionModel::Rabi => "rabi",
            InteractionModel::GeneralizedRabi => "generalized-rabi",
        }
    }

    /// Models strictly weaker than `self`, i.e. whose terms are a subset.
    pub fn weaker(self) -> &'static [InteractionModel] {
        match self {
            InteractionModel::JaynesCummings => &[],
            InteractionModel::Rabi => &[InteractionModel::JaynesCummings],
            InteractionModel::GeneralizedRabi => &[InteractionModel::JaynesCummings, InteractionModel::Rabi],
        }
    }
}

impl fmt::Display for InteractionModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for InteractionModel {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "jc" | "jaynes-cummings" => Ok(InteractionModel::JaynesCummings),
            "rabi" => Ok(InteractionModel::Rabi),
            "generalized-rabi" | "gen-rabi" | "genrabi" => Ok(InteractionModel::GeneralizedRabi),
            other => Err(Error::InvalidSpec(format!("unknown interaction model `{other}`"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SystemSpec {
    pub modes: Vec<ModeSpec>,
    pub qubits: Vec<QubitSpec>,
    pub couplings: Vec<CouplingSpec>,
    pub model: InteractionModel,
}

impl SystemSpec {
    pub fn new(model: InteractionModel) -> Self {
        SystemSpec {
            modes: Vec::new(),
            qubits: Vec::new(),
            couplings: Vec::new(),
            model,
        }
    }

    pub fn mode(mut self, label: &str, frequency: f64, n_max: Option<usize>) -> Self {
        self.modes.push(ModeSpec {
            label: label.to_string(),
            frequency,
            n_max,
        });
        self
    }

    pub fn qubit(mut self, label: &str, frequency: f64) -> Self {
        self.qubits.push(QubitSpec {
            label: label.to_string(),
            frequency,
        });
        self
    }

    pub fn coupling(mut self, mode: &str, qubit: &str, g: f64, theta: f64) -> Self {
        self.couplings.push(CouplingSpec {
            mode: mode.to_string(),
            qubit: qubit.to_string(),
            g,
            theta,
        });
        self
    }

    pub fn with_model(mut self, model: InteractionModel) -> Self {
        self.model = model;
        self
    }

    /// Sets every mode's truncation to `n_max`.
    pub fn with_n_max(mut self, n_max: usize) -> Self {
        for m in &mut self.modes {
            m.n_max = Some(n_max);
        }
        self
    }

    pub fn mode_index(&self, label: &str) -> Result<usize> {
        self.modes
            .iter()
            .position(|m| m.label == label)
            .ok_or_else(|| Error::UnknownLabel(label.to_string()))
    }

    pub fn qubit_index(&self, label: &str) -> Result<usize> {
        self.qubits
            .iter()
            .position(|q| q.label == label)
            .ok_or_else(|| Error::UnknownLabel(label.to_string()))
    }

    /// Mutable access to the frequency of the mode or qubit called `label`.
    pub fn frequency_mut(&mut self, label: &str) -> Result<&mut f64> {
        if let Some(m) = self.modes.iter_mut().find(|m| m.label == label) {
            return Ok(&mut m.frequency);
        }
        if let Some(q) = self.qubits.iter_mut().find(|q| q.label == label) {
            return Ok(&mut q.frequency);
        }
        Err(Error::UnknownLabel(label.to_string()))
    }

    pub fn frequency(&self, label: &str) -> Result<f64> {
        if let Some(m) = self.modes.iter().find(|m| m.label == label) {
            return Ok(m.frequency);
        }
        if let Some(q) = self.qubits.iter().find(|q| q.label == label) {
            return Ok(q.frequency);
        }
        Err(Error::UnknownLabel(label.to_string()))
    }

    /// Fills every unspecified truncation with the largest occupation found in
    /// `states` plus [`DEFAULT_TRUNCATION_MARGIN`].
    pub fn fill_truncation(&mut self, states: &[crate::hilbert::BasisState]) {
        for (k, mode) in self.modes.iter_mut().enumerate() {
            if mode.n_max.is_none() {
                let largest = states
                    .iter()
                    .filter_map(|s| s.occupations.get(k).copied())
                    .max()
                    .unwrap_or(0);
                mode.n_max = Some(largest + DEFAULT_TRUNCATION_MARGIN);
            }
        }
    }

    /// Checks labels, signs and references. Returns every violation found.
    pub fn violations(&self) -> Vec<String> {
        let mut out = Vec::new();
        if self.modes.is_empty() && self.qubits.is_empty() {
            out.push("system has neither modes nor qubits".to_string());
        }
        let mut seen = HashSet::new();
        for (k, m) in self.modes.iter().enumerate() {
            if !seen.insert(m.label.as_str()) {
                out.push(format!("modes[{k}].label: duplicate label `{}`", m.label));
            }
            if !(m.frequency.is_finite() && m.frequency > 0.0) {
                out.push(format!("modes[{k}].frequency: must be > 0, got {}", m.frequency));
            }
            if m.n_max == Some(0) {
                out.push(format!("modes[{k}].n_max: must be >= 1"));
            }
        }
        for (k, q) in self.qubits.iter().enumerate() {
            if !seen.insert(q.label.as_str()) {
                out.push(format!("qubits[{k}].label: duplicate label `{}`", q.label));
            }
            if !(q.frequency.is_finite() && q.frequency > 0.0) {
                out.push(format!("qubits[{k}].frequency: must be > 0, got {}", q.frequency));
            }
        }
        for (k, c) in self.couplings.iter().enumerate() {
            if self.mode_index(&c.mode).is_err() {
                out.push(format!("couplings[{k}].mode: unknown mode `{}`", c.mode));
            }
            if self.qubit_index(&c.qubit).is_err() {
                out.push(format!("couplings[{k}].qubit: unknown qubit `{}`", c.qubit));
            }
            if !(c.g.is_finite() && c.g >= 0.0) {
                out.push(format!("couplings[{k}].g: must be >= 0, got {}", c.g));
            }
            if !c.theta.is_finite() {
                out.push(format!("couplings[{k}].theta: must be finite"));
            }
        }
        out
    }

    pub fn validate(&self) -> Result<()> {
        let v = self.violations();
        if v.is_empty() {
            Ok(())
        } else {
            Err(Error::InvalidSpec(v.join("; ")))
        }
    }
}
