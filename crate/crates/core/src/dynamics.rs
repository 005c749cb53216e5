//! Unitary evolution of bare states by spectral decomposition and
//! extraction of effective oscillation rates.

use std::f64::consts::PI;
use std::fmt::Write as _;

use num_complex::Complex64;
use rustfft::FftPlanner;

use crate::error::{Error, Result};
use crate::hilbert::BasisState;
use crate::operator::HermitianOperator;
use crate::spectra::{eigensystem, state_slug, Eigensystem};

#[derive(Clone, Debug, PartialEq)]
pub struct EvolutionSpec {
    pub initial: BasisState,
    pub targets: Vec<BasisState>,
    pub total_time: f64,
    pub samples: usize,
}

impl EvolutionSpec {
    pub fn violations(&self) -> Vec<String> {
        let mut v = Vec::new();
        if !(self.total_time.is_finite() && self.total_time > 0.0) {
            v.push(format!("total_time: must be > 0, got {}", self.total_time));
        }
        if self.samples < 16 {
            v.push(format!("samples: need at least 16, got {}", self.samples));
        }
        if self.targets.is_empty() {
            v.push("targets: need at least one target state".into());
        }
        v
    }

    pub fn times(&self) -> Vec<f64> {
        let dt = self.total_time / (self.samples - 1) as f64;
        (0..self.samples).map(|k| k as f64 * dt).collect()
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct PopulationTrace {
    pub targets: Vec<BasisState>,
    pub times: Vec<f64>,
    /// `populations[target][sample]`.
    pub populations: Vec<Vec<f64>>,
    pub norms: Vec<f64>,
}

impl PopulationTrace {
    pub fn to_csv(&self) -> String {
        let mut s = String::from("t");
        for t in &self.targets {
            write!(s, ",P_{}", state_slug(t)).unwrap();
        }
        s.push_str(",norm\n");
        for (k, t) in self.times.iter().enumerate() {
            write!(s, "{t:.16e}").unwrap();
            for p in &self.populations {
                write!(s, ",{:.16e}", p[k]).unwrap();
            }
            writeln!(s, ",{:.16e}", self.norms[k]).unwrap();
        }
        s
    }
}

/// `e^{−iHt} = V e^{−iΛt} V†`.
#[derive(Clone, Debug)]
pub struct Propagator {
    eig: Eigensystem,
}

impl Propagator {
    pub fn new(h: &HermitianOperator) -> Result<Self> {
        Ok(Propagator { eig: eigensystem(h)? })
    }

    pub fn eigensystem(&self) -> &Eigensystem {
        &self.eig
    }

    /// Expansion coefficients `⟨v_k|ψ⟩`.
    pub fn coefficients(&self, psi: &[Complex64]) -> Vec<Complex64> {
        (0..self.eig.len())
            .map(|k| {
                self.eig
                    .vectors
                    .column(k)
                    .iter()
                    .zip(psi)
                    .map(|(v, p)| v.conj() * p)
                    .sum()
            })
            .collect()
    }

    /// `ψ(t)` from the coefficients of `ψ(0)`.
    pub fn state_at(&self, coeffs: &[Complex64], t: f64) -> Vec<Complex64> {
        let phased: Vec<Complex64> = coeffs
            .iter()
            .zip(&self.eig.values)
            .map(|(c, &l)| c * Complex64::from_polar(1.0, -l * t))
            .collect();
        let n = self.eig.vectors.nrows();
        (0..n)
            .map(|r| {
                self.eig
                    .vectors
                    .row(r)
                    .iter()
                    .zip(&phased)
                    .map(|(v, c)| v * c)
                    .sum()
            })
            .collect()
    }
}

pub fn evolve(h: &HermitianOperator, spec: &EvolutionSpec) -> Result<PopulationTrace> {
    let v = spec.violations();
    if !v.is_empty() {
        return Err(Error::InvalidSpec(v.join("; ")));
    }
    let space = h.space();
    let i = space.index_of(&spec.initial)?;
    let targets: Vec<usize> = spec
        .targets
        .iter()
        .map(|t| space.index_of(t))
        .collect::<Result<_>>()?;
    let prop = Propagator::new(h)?;
    let mut psi0 = vec![Complex64::new(0.0, 0.0); h.dimension()];
    psi0[i] = Complex64::new(1.0, 0.0);
    let coeffs = prop.coefficients(&psi0);

    let times = spec.times();
    let mut populations = vec![Vec::with_capacity(times.len()); targets.len()];
    let mut norms = Vec::with_capacity(times.len());
    for &t in &times {
        let psi = prop.state_at(&coeffs, t);
        norms.push(psi.iter().map(|x| x.norm_sqr()).sum::<f64>().sqrt());
        for (p, &f) in populations.iter_mut().zip(&targets) {
            p.push(psi[f].norm_sqr());
        }
    }
    Ok(PopulationTrace {
        targets: spec.targets.clone(),
        times,
        populations,
        norms,
    })
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Oscillation {
    /// Angular frequency of the population oscillation. `P = sin²(Ωt)`
    /// oscillates at `2Ω`.
    pub frequency: f64,
    pub max_population: f64,
    /// Time of the population maximum within the first oscillation period.
    pub first_peak_time: f64,
}

const FLAT_THRESHOLD: f64 = 1e-6;

/// Dominant oscillation of a uniformly sampled trace, from the largest
/// non-DC peak of its Hann-windowed discrete-time Fourier transform.
pub fn extract_oscillation(times: &[f64], values: &[f64]) -> Result<Oscillation> {
    let n = values.len();
    if n < 4 || times.len() != n {
        return Err(Error::InvalidSpec(
            "oscillation fit needs at least 4 matched samples".into(),
        ));
    }
    let (lo, hi) = values
        .iter()
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), &v| {
            (a.min(v), b.max(v))
        });
    if hi - lo < FLAT_THRESHOLD {
        return Err(Error::FlatTrace(hi - lo));
    }
    let dt = (times[n - 1] - times[0]) / (n - 1) as f64;
    let mean = values.iter().sum::<f64>() / n as f64;
    let hann = |j: usize| 0.5 - 0.5 * (2.0 * PI * j as f64 / (n - 1) as f64).cos();
    let centered: Vec<f64> = values
        .iter()
        .enumerate()
        .map(|(j, v)| (v - mean) * hann(j))
        .collect();

    let padded = (8 * n).next_power_of_two();
    let mut buf: Vec<Complex64> = centered
        .iter()
        .map(|&v| Complex64::new(v, 0.0))
        .chain(std::iter::repeat(Complex64::new(0.0, 0.0)))
        .take(padded)
        .collect();
    FftPlanner::new().plan_fft_forward(padded).process(&mut buf);
    let k = (1..padded / 2)
        .max_by(|&a, &b| buf[a].norm().total_cmp(&buf[b].norm()))
        .unwrap();
    let bin = 2.0 * PI / (padded as f64 * dt);

    let dtft = |w: f64| -> f64 {
        centered
            .iter()
            .enumerate()
            .map(|(j, &v)| v * Complex64::from_polar(1.0, -w * j as f64 * dt))
            .sum::<Complex64>()
            .norm()
    };
    let frequency = golden_max((k as f64 - 1.0).max(0.0) * bin, (k as f64 + 1.0) * bin, dtft);

    let period = 2.0 * PI / frequency;
    let window = values
        .iter()
        .zip(times)
        .take_while(|(_, &t)| t - times[0] <= period)
        .count()
        .max(2);
    let (max_population, _) = refined_peak(values, 0..n, dt, times[0]);
    let (_, first_peak_time) = refined_peak(values, 0..window, dt, times[0]);

    Ok(Oscillation {
        frequency,
        max_population,
        first_peak_time,
    })
}

/// Largest sample in `range`, refined by a parabola through its neighbours.
fn refined_peak(values: &[f64], range: std::ops::Range<usize>, dt: f64, t0: f64) -> (f64, f64) {
    let k = range
        .clone()
        .max_by(|&a, &b| values[a].total_cmp(&values[b]))
        .unwrap();
    if k == 0 || k + 1 >= values.len() {
        return (values[k], t0 + k as f64 * dt);
    }
    let (a, b, c) = (values[k - 1], values[k], values[k + 1]);
    let denom = a - 2.0 * b + c;
    if denom >= 0.0 {
        return (b, t0 + k as f64 * dt);
    }
    let shift = 0.5 * (a - c) / denom;
    (b - 0.25 * (a - c) * shift, t0 + (k as f64 + shift) * dt)
}

fn golden_max<F: Fn(f64) -> f64>(mut lo: f64, mut hi: f64, f: F) -> f64 {
    let r = (5f64.sqrt() - 1.0) / 2.0;
    let mut x1 = hi - r * (hi - lo);
    let mut x2 = lo + r * (hi - lo);
    let (mut f1, mut f2) = (f(x1), f(x2));
    for _ in 0..80 {
        if hi - lo <= 1e-12 * hi.abs() {
            break;
        }
        if f1 >= f2 {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - r * (hi - lo);
            f1 = f(x1);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + r * (hi - lo);
            f2 = f(x2);
        }
    }
    0.5 * (lo + hi)
}
