use std::fmt;
use std::fmt::Write as _;
use std::str::FromStr;

use rayon::prelude::*;

use super::eigen::{eigensystem, Eigensystem};
use crate::error::{Error, Result};
use crate::hamiltonian::Hamiltonian;
use crate::hilbert::BasisState;
use crate::system::SystemSpec;

/// Overlap margin below which two candidate eigenvectors are ambiguous.
pub const AMBIGUITY_MARGIN: f64 = 1e-3;

const CHUNK: usize = 16;

/// A scalar of [`SystemSpec`] that can be swept: a mode or qubit frequency
/// (`a`), or a coupling strength (`g:a:q`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SweptParameter {
    Frequency(String),
    Coupling { mode: String, qubit: String },
}

impl SweptParameter {
    pub fn apply(&self, spec: &mut SystemSpec, value: f64) -> Result<()> {
        match self {
            SweptParameter::Frequency(label) => *spec.frequency_mut(label)? = value,
            SweptParameter::Coupling { mode, qubit } => {
                let c = spec
                    .couplings
                    .iter_mut()
                    .find(|c| &c.mode == mode && &c.qubit == qubit)
                    .ok_or_else(|| Error::UnknownLabel(self.to_string()))?;
                c.g = value;
            }
        }
        Ok(())
    }
}

impl fmt::Display for SweptParameter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SweptParameter::Frequency(l) => f.write_str(l),
            SweptParameter::Coupling { mode, qubit } => write!(f, "g:{mode}:{qubit}"),
        }
    }
}

impl FromStr for SweptParameter {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.split(':').collect();
        match parts.as_slice() {
            [label] if !label.is_empty() => Ok(SweptParameter::Frequency(label.to_string())),
            ["g", mode, qubit] => Ok(SweptParameter::Coupling {
                mode: mode.to_string(),
                qubit: qubit.to_string(),
            }),
            _ => Err(Error::InvalidSpec(format!(
                "swept parameter `{s}`: expected a label or g:<mode>:<qubit>"
            ))),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SweepSpec {
    pub system: SystemSpec,
    pub parameter: SweptParameter,
    pub lo: f64,
    pub hi: f64,
    pub points: usize,
    pub tracked: Vec<BasisState>,
}

impl SweepSpec {
    pub fn violations(&self) -> Vec<String> {
        let mut v = Vec::new();
        if !(self.lo < self.hi) {
            v.push(format!("range: lo ({}) must be below hi ({})", self.lo, self.hi));
        }
        if self.points < 3 {
            v.push(format!("points: need at least 3, got {}", self.points));
        }
        if self.tracked.len() < 2 {
            v.push("tracked: need at least two bare states".to_string());
        }
        v
    }

    pub fn validate(&self) -> Result<()> {
        let v = self.violations();
        if v.is_empty() {
            Ok(())
        } else {
            Err(Error::InvalidSpec(v.join("; ")))
        }
    }

    pub fn grid(&self) -> Vec<f64> {
        let step = (self.hi - self.lo) / (self.points - 1) as f64;
        (0..self.points)
            .map(|k| {
                if k + 1 == self.points {
                    self.hi
                } else {
                    self.lo + step * k as f64
                }
            })
            .collect()
    }

    /// The system at parameter value `x`, with truncations filled from the
    /// tracked states.
    pub fn system_at(&self, x: f64) -> Result<SystemSpec> {
        let mut s = self.system.clone();
        s.fill_truncation(&self.tracked);
        self.parameter.apply(&mut s, x)?;
        Ok(s)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SweepResult {
    pub parameter: SweptParameter,
    pub tracked: Vec<BasisState>,
    pub values: Vec<f64>,
    /// `levels[point][t]`: energy of the level following `tracked[t]`.
    pub levels: Vec<Vec<f64>>,
    /// `overlaps[point][t] = |⟨tracked_t|v⟩|²`.
    pub overlaps: Vec<Vec<f64>>,
    /// `(point, tracked)` pairs whose assignment was ambiguous.
    pub ambiguous: Vec<(usize, usize)>,
}

impl SweepResult {
    pub fn gap(&self, a: usize, b: usize) -> Vec<f64> {
        self.levels.iter().map(|l| (l[a] - l[b]).abs()).collect()
    }

    pub fn csv_header(&self) -> String {
        let names: Vec<String> = self.tracked.iter().map(state_slug).collect();
        let mut cols = vec!["param".to_string()];
        cols.extend(names.iter().map(|n| format!("level_{n}")));
        cols.extend(names.iter().map(|n| format!("overlap_{n}")));
        cols.join(",")
    }

    pub fn to_csv(&self) -> String {
        let mut s = self.csv_header();
        s.push('\n');
        for (k, x) in self.values.iter().enumerate() {
            write!(s, "{x:.16e}").unwrap();
            for v in self.levels[k].iter().chain(&self.overlaps[k]) {
                write!(s, ",{v:.16e}").unwrap();
            }
            s.push('\n');
        }
        s
    }
}

/// `|1,0,g⟩` → `1_0_g`.
pub fn state_slug(s: &BasisState) -> String {
    let t = s.to_string();
    t.trim_start_matches('|').trim_end_matches('⟩').replace(',', "_")
}

/// Greedy assignment of eigenvectors to references by descending overlap.
/// Returns `(chosen eigenvector per reference, ambiguous flags)`.
pub(crate) fn assign(overlap: &[Vec<f64>]) -> (Vec<usize>, Vec<bool>) {
    let t = overlap.len();
    let n = overlap.first().map_or(0, Vec::len);
    let mut chosen = vec![usize::MAX; t];
    let mut taken = vec![false; n];
    let mut ambiguous = vec![false; t];
    for _ in 0..t {
        let mut best = (f64::NEG_INFINITY, 0, 0);
        for (r, row) in overlap.iter().enumerate() {
            if chosen[r] != usize::MAX {
                continue;
            }
            for (c, &w) in row.iter().enumerate() {
                if !taken[c] && w > best.0 {
                    best = (w, r, c);
                }
            }
        }
        let (w, r, c) = best;
        chosen[r] = c;
        taken[c] = true;
        ambiguous[r] = overlap[r]
            .iter()
            .enumerate()
            .any(|(k, &x)| k != c && !taken[k] && w - x < AMBIGUITY_MARGIN);
    }
    (chosen, ambiguous)
}

/// Follows each tracked bare state through the sweep by eigenvector-overlap
/// continuation. The first point anchors on the bare states; later points
/// anchor on the previous point's eigenvectors.
pub fn track_levels(sweep: &SweepSpec) -> Result<SweepResult> {
    sweep.validate()?;
    let grid = sweep.grid();
    let probe = Hamiltonian::build(&sweep.system_at(grid[0])?)?;
    let bare: Vec<usize> = sweep
        .tracked
        .iter()
        .map(|s| probe.space.index_of(s))
        .collect::<Result<_>>()?;

    let mut result = SweepResult {
        parameter: sweep.parameter.clone(),
        tracked: sweep.tracked.clone(),
        values: grid.clone(),
        levels: Vec::with_capacity(grid.len()),
        overlaps: Vec::with_capacity(grid.len()),
        ambiguous: Vec::new(),
    };
    let mut previous: Option<Vec<Vec<num_complex::Complex64>>> = None;

    for (c, chunk) in grid.chunks(CHUNK).enumerate() {
        let systems: Vec<Eigensystem> = chunk
            .par_iter()
            .map(|&x| eigensystem(&Hamiltonian::build(&sweep.system_at(x)?)?.total))
            .collect::<Result<_>>()?;
        for (offset, eig) in systems.iter().enumerate() {
            let point = c * CHUNK + offset;
            let overlap: Vec<Vec<f64>> = match &previous {
                None => bare
                    .iter()
                    .map(|&b| (0..eig.len()).map(|k| eig.weight(k, b)).collect())
                    .collect(),
                Some(prev) => prev
                    .iter()
                    .map(|p| {
                        (0..eig.len())
                            .map(|k| {
                                eig.vectors
                                    .column(k)
                                    .iter()
                                    .zip(p)
                                    .map(|(v, w)| w.conj() * v)
                                    .sum::<num_complex::Complex64>()
                                    .norm_sqr()
                            })
                            .collect()
                    })
                    .collect(),
            };
            let (chosen, ambiguous) = assign(&overlap);
            for (t, &a) in ambiguous.iter().enumerate() {
                if a {
                    result.ambiguous.push((point, t));
                }
            }
            result
                .levels
                .push(chosen.iter().map(|&k| eig.values[k]).collect());
            result.overlaps.push(
                chosen
                    .iter()
                    .zip(&bare)
                    .map(|(&k, &b)| eig.weight(k, b).min(1.0))
                    .collect(),
            );
            previous = Some(chosen.iter().map(|&k| eig.vector(k)).collect());
        }
    }
    Ok(result)
}
