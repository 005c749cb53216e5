//! Classical nonlinear polarization `P = ε₀(χ⁽¹⁾E + χ⁽²⁾E² + χ⁽³⁾E³)` of a
//! multi-tone field `E(t) = Σ E_k cos(ω_k t)`, expanded into frequency
//! components by product-to-sum identities.

/// Components closer than this in frequency are merged.
pub const MERGE_TOLERANCE: f64 = 1e-12;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Tone {
    pub amplitude: f64,
    pub frequency: f64,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Susceptibilities {
    pub chi1: f64,
    pub chi2: f64,
    pub chi3: f64,
    pub eps0: f64,
}

impl Default for Susceptibilities {
    fn default() -> Self {
        Susceptibilities {
            chi1: 0.0,
            chi2: 0.0,
            chi3: 0.0,
            eps0: 1.0,
        }
    }
}

/// `A cos(ω t)` with `ω ≥ 0`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Component {
    pub frequency: f64,
    pub amplitude: f64,
}

/// Frequency components of the polarization, sorted by frequency.
///
/// Each power `E^n` expands as a sum over ordered tone tuples of
/// `Π cos θ_k = 2^{-n} Σ_{s ∈ {±1}^n} cos(Σ s_k θ_k)`.
pub fn polarization_spectrum(tones: &[Tone], chi: &Susceptibilities) -> Vec<Component> {
    let mut raw: Vec<Component> = Vec::new();
    for (order, coeff) in [(1u32, chi.chi1), (2, chi.chi2), (3, chi.chi3)] {
        if coeff == 0.0 || tones.is_empty() {
            continue;
        }
        let scale = chi.eps0 * coeff / f64::from(1u32 << order);
        let t = tones.len();
        let tuples = t.pow(order);
        for code in 0..tuples {
            let picks: Vec<&Tone> = (0..order).map(|k| &tones[(code / t.pow(k)) % t]).collect();
            let amp: f64 = picks.iter().map(|x| x.amplitude).product::<f64>() * scale;
            for signs in 0..(1u32 << order) {
                let w: f64 = picks
                    .iter()
                    .enumerate()
                    .map(|(k, x)| {
                        if signs >> k & 1 == 1 {
                            -x.frequency
                        } else {
                            x.frequency
                        }
                    })
                    .sum();
                raw.push(Component {
                    frequency: w.abs(),
                    amplitude: amp,
                });
            }
        }
    }
    merge(raw)
}

fn merge(mut raw: Vec<Component>) -> Vec<Component> {
    raw.sort_by(|a, b| a.frequency.total_cmp(&b.frequency));
    let mut out: Vec<Component> = Vec::new();
    for c in raw {
        match out.last_mut() {
            Some(last) if (c.frequency - last.frequency).abs() <= MERGE_TOLERANCE => {
                last.amplitude += c.amplitude;
            }
            _ => out.push(c),
        }
    }
    let peak = out.iter().map(|c| c.amplitude.abs()).fold(0.0, f64::max);
    out.retain(|c| c.amplitude.abs() > 1e-14 * peak);
    out
}

/// `P(t) = Σ A_k cos(ω_k t)`.
pub fn evaluate_components(components: &[Component], t: f64) -> f64 {
    components
        .iter()
        .map(|c| c.amplitude * (c.frequency * t).cos())
        .sum()
}

/// `ε₀ Σ_n χ⁽ⁿ⁾ E(t)ⁿ` evaluated directly.
pub fn evaluate_direct(tones: &[Tone], chi: &Susceptibilities, t: f64) -> f64 {
    let e: f64 = tones.iter().map(|x| x.amplitude * (x.frequency * t).cos()).sum();
    chi.eps0 * (chi.chi1 * e + chi.chi2 * e * e + chi.chi3 * e * e * e)
}

/// Upper bound on `|P(t)|`: `ε₀ Σ_n |χ⁽ⁿ⁾| (Σ_k |E_k|)ⁿ`.
pub fn magnitude_bound(tones: &[Tone], chi: &Susceptibilities) -> f64 {
    let e: f64 = tones.iter().map(|x| x.amplitude.abs()).sum();
    (chi.eps0 * (chi.chi1.abs() * e + chi.chi2.abs() * e * e + chi.chi3.abs() * e * e * e)).abs()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LinearEffect {
    Pockels,
    Kerr,
}

/// Linear susceptibility induced by a static bias `E₂₀`:
/// `2χ⁽²⁾E₂₀` (Pockels) or `¾χ⁽³⁾E₂₀²` (Kerr).
pub fn effective_linear_susceptibility(kind: LinearEffect, chi: &Susceptibilities, bias: f64) -> f64 {
    match kind {
        LinearEffect::Pockels => 2.0 * chi.chi2 * bias,
        LinearEffect::Kerr => 0.75 * chi.chi3 * bias * bias,
    }
}
