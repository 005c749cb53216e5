use log::warn;

use super::eigen::eigensystem;
use super::sweep::{track_levels, SweepResult, SweepSpec, SweptParameter};
use crate::error::{Error, Result};
use crate::hamiltonian::Hamiltonian;
use crate::hilbert::BasisState;
use crate::perturbation::effective_coupling;

const GOLDEN_REL_TOL: f64 = 1e-10;

#[derive(Clone, Debug, PartialEq)]
pub struct CrossingReport {
    pub level_a: BasisState,
    pub level_b: BasisState,
    /// Parameter value at the refined gap minimum.
    pub parameter: f64,
    pub gap: f64,
    /// Parameter value where the bare levels are degenerate.
    pub bare_resonance: f64,
    /// `2|g_eff|` at the bare resonance, when a path exists.
    pub predicted: Option<f64>,
    /// Why no prediction is available.
    pub prediction_note: Option<String>,
    pub coarse: SweepResult,
}

impl CrossingReport {
    /// `|Δ_min − 2|g_eff|| / 2|g_eff|`.
    pub fn relative_deviation(&self) -> Option<f64> {
        self.predicted
            .filter(|&p| p > 0.0)
            .map(|p| (self.gap - p).abs() / p)
    }
}

/// Splitting of the two dressed levels carrying the most weight on
/// `span{|a⟩, |b⟩}` at parameter `x`.
pub fn dressed_gap(sweep: &SweepSpec, a: &BasisState, b: &BasisState, x: f64) -> Result<f64> {
    let h = Hamiltonian::build(&sweep.system_at(x)?)?;
    let (ia, ib) = (h.space.index_of(a)?, h.space.index_of(b)?);
    let eig = eigensystem(&h.total)?;
    let mut best = [(f64::NEG_INFINITY, 0usize); 2];
    for k in 0..eig.len() {
        let w = eig.weight(k, ia) + eig.weight(k, ib);
        if w > best[0].0 {
            best[1] = best[0];
            best[0] = (w, k);
        } else if w > best[1].0 {
            best[1] = (w, k);
        }
    }
    Ok((eig.values[best[0].1] - eig.values[best[1].1]).abs())
}

fn golden_section<F>(mut lo: f64, mut hi: f64, f: F) -> Result<(f64, f64)>
where
    F: Fn(f64) -> Result<f64>,
{
    let inv_phi = (5f64.sqrt() - 1.0) / 2.0;
    let mut x1 = hi - inv_phi * (hi - lo);
    let mut x2 = lo + inv_phi * (hi - lo);
    let mut f1 = f(x1)?;
    let mut f2 = f(x2)?;
    while hi - lo > GOLDEN_REL_TOL * lo.abs().max(hi.abs()).max(f64::MIN_POSITIVE) {
        if f1 <= f2 {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - inv_phi * (hi - lo);
            f1 = f(x1)?;
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + inv_phi * (hi - lo);
            f2 = f(x2)?;
        }
    }
    Ok(if f1 <= f2 { (x1, f1) } else { (x2, f2) })
}

/// Parameter value where the bare energies of `a` and `b` coincide. Bare
/// energies are affine in any frequency, so two evaluations suffice.
fn bare_resonance(sweep: &SweepSpec, a: &BasisState, b: &BasisState, guess: f64) -> Result<f64> {
    if matches!(sweep.parameter, SweptParameter::Coupling { .. }) {
        return Ok(guess);
    }
    let diff = |x: f64| -> Result<f64> {
        let h = Hamiltonian::build(&sweep.system_at(x)?)?;
        Ok(h.space.bare_energy(a)? - h.space.bare_energy(b)?)
    };
    let (x0, x1) = (sweep.lo, sweep.hi);
    let (d0, d1) = (diff(x0)?, diff(x1)?);
    if d1 == d0 {
        return Ok(guess);
    }
    Ok(x0 - d0 * (x1 - x0) / (d1 - d0))
}

/// Locates the gap minimum between the levels following `a` and `b`: a
/// coarse tracked sweep brackets it, golden-section search refines it.
pub fn find_avoided_crossing(sweep: &SweepSpec, a: &BasisState, b: &BasisState) -> Result<CrossingReport> {
    let coarse = track_levels(sweep)?;
    let ta = sweep
        .tracked
        .iter()
        .position(|s| s == a)
        .ok_or_else(|| Error::InvalidSpec(format!("{a} is not a tracked state")))?;
    let tb = sweep
        .tracked
        .iter()
        .position(|s| s == b)
        .ok_or_else(|| Error::InvalidSpec(format!("{b} is not a tracked state")))?;

    let gaps = coarse.gap(ta, tb);
    let k = gaps
        .iter()
        .enumerate()
        .min_by(|x, y| x.1.total_cmp(y.1))
        .map(|(k, _)| k)
        .unwrap();
    if k == 0 || k + 1 == gaps.len() {
        return Err(Error::Bracketing(format!(
            "smallest sampled gap between {a} and {b} sits at the sweep edge ({} = {})",
            sweep.parameter, coarse.values[k]
        )));
    }

    let (x, gap) = golden_section(coarse.values[k - 1], coarse.values[k + 1], |x| {
        dressed_gap(sweep, a, b, x)
    })?;

    let x0 = bare_resonance(sweep, a, b, x)?;
    let (predicted, prediction_note) = match predicted_splitting(sweep, a, b, x0) {
        Ok(p) => (Some(p), None),
        Err(e) => {
            warn!("no perturbative prediction for {a} <-> {b}: {e}");
            (None, Some(e.to_string()))
        }
    };

    Ok(CrossingReport {
        level_a: a.clone(),
        level_b: b.clone(),
        parameter: x,
        gap,
        bare_resonance: x0,
        predicted,
        prediction_note,
        coarse,
    })
}

fn predicted_splitting(sweep: &SweepSpec, a: &BasisState, b: &BasisState, x: f64) -> Result<f64> {
    let h = Hamiltonian::build(&sweep.system_at(x)?)?;
    Ok(2.0 * effective_coupling(&h.hint, a, b)?.magnitude())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::system::{InteractionModel, SystemSpec};
    use std::f64::consts::PI;

    fn spec(model: InteractionModel, ga: f64) -> SweepSpec {
        SweepSpec {
            system: SystemSpec::new(model)
                .mode("a", 2.0, Some(6))
                .mode("b", 1.0, Some(6))
                .qubit("q", 1.6)
                .coupling("a", "q", ga, PI / 6.0)
                .coupling("b", "q", 2.0 * ga, PI / 6.0),
            parameter: "a".parse().unwrap(),
            lo: 1.85,
            hi: 2.05,
            points: 41,
            tracked: vec!["1,0,g".parse().unwrap(), "0,2,g".parse().unwrap()],
        }
    }

    #[test]
    fn golden_finds_parabola_minimum() {
        let (x, f) = golden_section(0.0, 3.0, |x| Ok((x - 1.3) * (x - 1.3) + 0.5)).unwrap();
        assert!((x - 1.3).abs() < 1e-7);
        assert!((f - 0.5).abs() < 1e-14);
    }

    #[test]
    fn generalized_rabi_anticrossing() {
        let a: BasisState = "1,0,g".parse().unwrap();
        let b: BasisState = "0,2,g".parse().unwrap();
        let r = find_avoided_crossing(&spec(InteractionModel::GeneralizedRabi, 0.07), &a, &b).unwrap();
        assert!((r.bare_resonance - 2.0).abs() < 1e-12);
        assert!((r.predicted.unwrap() - 9.950e-3).abs() < 1e-5);
        assert!(r.relative_deviation().unwrap() < 0.25, "{r:?}");
        assert!((r.parameter - 1.938).abs() < 0.01);
    }

    #[test]
    fn rabi_crosses() {
        let a: BasisState = "1,0,g".parse().unwrap();
        let b: BasisState = "0,2,g".parse().unwrap();
        let r = find_avoided_crossing(&spec(InteractionModel::Rabi, 0.07), &a, &b).unwrap();
        assert!(r.gap < 1e-6, "{}", r.gap);
        assert!(r.predicted.is_none());
    }

    #[test]
    fn edge_minimum_is_bracketing_error() {
        let mut s = spec(InteractionModel::GeneralizedRabi, 0.07);
        s.lo = 2.2;
        s.hi = 2.4;
        let a: BasisState = "1,0,g".parse().unwrap();
        let b: BasisState = "0,2,g".parse().unwrap();
        assert!(matches!(
            find_avoided_crossing(&s, &a, &b).unwrap_err(),
            Error::Bracketing(_)
        ));
    }
}
