//! Truncated product space of resonator Fock ladders and qubits.
//!
//! Tensor factors are laid out in declaration order, modes before qubits, and
//! indexed row-major: the last declared factor varies fastest. Index order
//! therefore coincides with lexicographic order of `(n_0, n_1, …, q_0, q_1, …)`
//! with `g < e`, independently of the truncation.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::system::{ModeSpec, QubitSpec, SystemSpec, DEFAULT_TRUNCATION_MARGIN};

pub const DEFAULT_DIMENSION_CAP: usize = 1 << 20;

/// Bare product state: photon numbers per mode, then `true` for each excited qubit.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BasisState {
    pub occupations: Vec<usize>,
    pub excited: Vec<bool>,
}

impl BasisState {
    pub fn new(occupations: Vec<usize>, excited: Vec<bool>) -> Self {
        BasisState { occupations, excited }
    }

    /// Total excitation number: photons plus excited qubits.
    pub fn excitations(&self) -> usize {
        self.occupations.iter().sum::<usize>() + self.excited.iter().filter(|&&e| e).count()
    }
}

impl fmt::Display for BasisState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .occupations
            .iter()
            .map(|n| n.to_string())
            .chain(
                self.excited
                    .iter()
                    .map(|&e| if e { "e" } else { "g" }.to_string()),
            )
            .collect();
        write!(f, "|{}⟩", parts.join(","))
    }
}

impl FromStr for BasisState {
    type Err = Error;

    /// Accepts `1,0,g`, `|1,0,g>` or `|1,0,g⟩`. Integers are photon numbers,
    /// `g`/`e` are qubit labels; all integers must precede the qubit labels.
    fn from_str(s: &str) -> Result<Self> {
        let body = s
            .trim()
            .trim_start_matches('|')
            .trim_end_matches('>')
            .trim_end_matches('⟩');
        let mut occupations = Vec::new();
        let mut excited = Vec::new();
        for tok in body.split(',').map(str::trim).filter(|t| !t.is_empty()) {
            match tok {
                "g" => excited.push(false),
                "e" => excited.push(true),
                _ => {
                    if !excited.is_empty() {
                        return Err(Error::InvalidSpec(format!(
                            "state `{s}`: photon numbers must precede qubit labels"
                        )));
                    }
                    let n = tok
                        .parse::<usize>()
                        .map_err(|_| Error::InvalidSpec(format!("state `{s}`: bad token `{tok}`")))?;
                    occupations.push(n);
                }
            }
        }
        if occupations.is_empty() && excited.is_empty() {
            return Err(Error::InvalidSpec(format!("state `{s}` is empty")));
        }
        Ok(BasisState::new(occupations, excited))
    }
}

#[derive(Clone, Debug)]
pub struct HilbertSpace {
    modes: Vec<ModeSpec>,
    qubits: Vec<QubitSpec>,
    /// Local dimension of every factor, modes first.
    local_dims: Vec<usize>,
    strides: Vec<usize>,
    dimension: usize,
}

impl HilbertSpace {
    pub fn new(spec: &SystemSpec) -> Result<Self> {
        Self::with_cap(spec, DEFAULT_DIMENSION_CAP)
    }

    /// Builds the space, rejecting it when the dimension exceeds `cap`.
    /// Modes without an explicit truncation get [`DEFAULT_TRUNCATION_MARGIN`].
    pub fn with_cap(spec: &SystemSpec, cap: usize) -> Result<Self> {
        spec.validate()?;
        let modes: Vec<ModeSpec> = spec
            .modes
            .iter()
            .map(|m| ModeSpec {
                n_max: Some(m.n_max.unwrap_or(DEFAULT_TRUNCATION_MARGIN)),
                ..m.clone()
            })
            .collect();
        let local_dims: Vec<usize> = modes
            .iter()
            .map(|m| m.n_max.unwrap() + 1)
            .chain(std::iter::repeat_n(2, spec.qubits.len()))
            .collect();

        let dimension: u128 = local_dims.iter().map(|&d| d as u128).product();
        if dimension > cap as u128 {
            let desc: Vec<String> = modes
                .iter()
                .map(|m| format!("{}(n_max={})", m.label, m.n_max.unwrap()))
                .chain(spec.qubits.iter().map(|q| q.label.clone()))
                .collect();
            return Err(Error::Capacity {
                what: format!("space [{}]", desc.join(" x ")),
                dimension,
                cap,
            });
        }

        let mut strides = vec![1usize; local_dims.len()];
        for k in (0..local_dims.len().saturating_sub(1)).rev() {
            strides[k] = strides[k + 1] * local_dims[k + 1];
        }

        Ok(HilbertSpace {
            modes,
            qubits: spec.qubits.clone(),
            local_dims,
            strides,
            dimension: dimension as usize,
        })
    }

    pub fn dimension(&self) -> usize {
        self.dimension
    }

    pub fn modes(&self) -> &[ModeSpec] {
        &self.modes
    }

    pub fn qubits(&self) -> &[QubitSpec] {
        &self.qubits
    }

    pub fn n_max(&self, mode: usize) -> usize {
        self.local_dims[mode] - 1
    }

    pub(crate) fn stride(&self, factor: usize) -> usize {
        self.strides[factor]
    }

    /// Stride of qubit `q` in the flat index.
    pub(crate) fn qubit_stride(&self, q: usize) -> usize {
        self.strides[self.modes.len() + q]
    }

    pub fn check(&self, state: &BasisState) -> Result<()> {
        if state.occupations.len() != self.modes.len() || state.excited.len() != self.qubits.len() {
            return Err(Error::OccupationOutOfRange {
                state: state.to_string(),
                detail: format!(
                    "expected {} photon numbers and {} qubit labels",
                    self.modes.len(),
                    self.qubits.len()
                ),
            });
        }
        for (k, (&n, m)) in state.occupations.iter().zip(&self.modes).enumerate() {
            let n_max = self.local_dims[k] - 1;
            if n > n_max {
                return Err(Error::OccupationOutOfRange {
                    state: state.to_string(),
                    detail: format!("mode {} holds {n} photons but n_max = {n_max}", m.label),
                });
            }
        }
        Ok(())
    }

    pub fn index_of(&self, state: &BasisState) -> Result<usize> {
        self.check(state)?;
        let nm = self.modes.len();
        let idx = state
            .occupations
            .iter()
            .enumerate()
            .map(|(k, &n)| n * self.strides[k])
            .sum::<usize>()
            + state
                .excited
                .iter()
                .enumerate()
                .map(|(q, &e)| usize::from(e) * self.strides[nm + q])
                .sum::<usize>();
        Ok(idx)
    }

    pub fn state(&self, index: usize) -> BasisState {
        assert!(index < self.dimension, "basis index {index} out of range");
        let nm = self.modes.len();
        let mut rest = index;
        let mut digits = vec![0usize; self.local_dims.len()];
        for k in 0..self.local_dims.len() {
            digits[k] = rest / self.strides[k];
            rest %= self.strides[k];
        }
        BasisState {
            occupations: digits[..nm].to_vec(),
            excited: digits[nm..].iter().map(|&d| d == 1).collect(),
        }
    }

    /// Photon number of `mode` in basis state `index`.
    pub(crate) fn occupation_at(&self, index: usize, mode: usize) -> usize {
        (index / self.strides[mode]) % self.local_dims[mode]
    }

    /// Whether qubit `q` is excited in basis state `index`.
    pub(crate) fn excited_at(&self, index: usize, q: usize) -> bool {
        (index / self.qubit_stride(q)) % 2 == 1
    }

    /// Bare energy `Σ n ω_mode + Σ ±ω_q/2`.
    pub fn bare_energy(&self, state: &BasisState) -> Result<f64> {
        self.check(state)?;
        Ok(self.energy_from_parts(state.occupations.iter().copied(), state.excited.iter().copied()))
    }

    pub fn bare_energy_at(&self, index: usize) -> f64 {
        let nm = self.modes.len();
        self.energy_from_parts(
            (0..nm).map(|k| self.occupation_at(index, k)),
            (0..self.qubits.len()).map(|q| self.excited_at(index, q)),
        )
    }

    fn energy_from_parts(&self, occ: impl Iterator<Item = usize>, exc: impl Iterator<Item = bool>) -> f64 {
        let photons: f64 = occ.zip(&self.modes).map(|(n, m)| n as f64 * m.frequency).sum();
        let atoms: f64 = exc
            .zip(&self.qubits)
            .map(|(e, q)| if e { 0.5 * q.frequency } else { -0.5 * q.frequency })
            .sum();
        photons + atoms
    }

    /// Total excitation number of basis state `index`.
    pub fn excitations_at(&self, index: usize) -> usize {
        let nm = self.modes.len();
        (0..nm).map(|k| self.occupation_at(index, k)).sum::<usize>()
            + (0..self.qubits.len())
                .filter(|&q| self.excited_at(index, q))
                .count()
    }

    pub fn label(&self, index: usize) -> String {
        self.state(index).to_string()
    }
}
