use num_complex::Complex64;

use super::paths::interaction_for;
use super::DEGENERACY_TOLERANCE;
use crate::error::{Error, Result};
use crate::hilbert::BasisState;
use crate::operator::HermitianOperator;
use crate::system::{InteractionModel, SystemSpec};

/// Rayleigh–Schrödinger corrections `[E1, E2, …]` of the bare level `state`
/// up to `order`, from the recursion
/// `|ψ_n⟩ = R (V|ψ_{n−1}⟩ − Σ_k E_k |ψ_{n−k}⟩)`, `E_n = ⟨i|V|ψ_{n−1}⟩`,
/// with `R = Q/(E_i − H0)`.
pub fn energy_corrections(hint: &HermitianOperator, state: &BasisState, order: usize) -> Result<Vec<f64>> {
    let space = hint.space();
    let si = space.index_of(state)?;
    let dim = space.dimension();
    let e_i = space.bare_energy_at(si);
    let zero = Complex64::new(0.0, 0.0);

    let mut psi: Vec<Vec<Complex64>> = Vec::with_capacity(order);
    let mut unit = vec![zero; dim];
    unit[si] = Complex64::new(1.0, 0.0);
    psi.push(unit);
    let mut energies: Vec<f64> = Vec::with_capacity(order);

    for n in 1..=order {
        let v_prev = hint.apply(&psi[n - 1]);
        energies.push(v_prev[si].re);
        if n == order {
            break;
        }
        let mut rhs = v_prev;
        // ψ_0 terms vanish under Q, so only k < n contribute
        for k in 1..n {
            let ek = energies[k - 1];
            for (r, x) in rhs.iter_mut().zip(&psi[n - k]) {
                *r -= x * ek;
            }
        }
        let mut next = vec![zero; dim];
        for j in 0..dim {
            if j == si || rhs[j] == zero {
                continue;
            }
            let d = e_i - space.bare_energy_at(j);
            if d.abs() < DEGENERACY_TOLERANCE {
                return Err(Error::DegenerateIntermediate {
                    state: space.label(j),
                    gap: d.abs(),
                });
            }
            next[j] = rhs[j] / d;
        }
        psi.push(next);
    }
    Ok(energies)
}

/// Self-Kerr coefficient from the fourth-order level shifts of
/// `|0,g⟩, |1,g⟩, |2,g⟩` in a one-mode, one-qubit JC system:
/// `χ_K = ½ (E(2) − 2E(1) + E(0))`.
pub fn kerr_path_sum(wa: f64, wq: f64, g: f64) -> Result<f64> {
    let spec = SystemSpec::new(InteractionModel::JaynesCummings)
        .mode("a", wa, None)
        .qubit("q", wq)
        .coupling("a", "q", g, 0.0);
    let ground = |n: usize| BasisState::new(vec![n], vec![false]);
    let hint = interaction_for(&spec, &[ground(2)])?;
    let shift = |n: usize| -> Result<f64> { Ok(energy_corrections(&hint, &ground(n), 4)?.iter().sum()) };
    Ok(0.5 * (shift(2)? - 2.0 * shift(1)? + shift(0)?))
}
