//! Lanczos iteration with full reorthogonalization for the lowest few
//! eigenpairs of large sparse operators.
//!
//! A single Krylov sequence resolves one vector per eigenspace, so exactly
//! degenerate eigenvalues appear once.

use nalgebra::{DMatrix, SymmetricEigen};
use num_complex::Complex64;

use super::eigen::Eigensystem;
use crate::error::{Error, Result};
use crate::operator::HermitianOperator;

const RESIDUAL_TOL: f64 = 1e-10;
const MAX_BASIS_BYTES: usize = 1 << 30;
const MAX_STEPS: usize = 600;

fn dot(a: &[Complex64], b: &[Complex64]) -> Complex64 {
    a.iter().zip(b).map(|(x, y)| x.conj() * y).sum()
}

fn norm(a: &[Complex64]) -> f64 {
    a.iter().map(|x| x.norm_sqr()).sum::<f64>().sqrt()
}

/// Deterministic start vector with support on every basis state.
fn start_vector(n: usize) -> Vec<Complex64> {
    let mut v: Vec<Complex64> = (0..n)
        .map(|j| Complex64::new(1.0 + ((j * 7919) % 13) as f64 / 13.0, 0.0))
        .collect();
    let s = norm(&v);
    v.iter_mut().for_each(|x| *x /= s);
    v
}

pub(crate) fn lanczos_lowest(h: &HermitianOperator, k: usize) -> Result<Eigensystem> {
    let n = h.dimension();
    let k = k.min(n);
    let max_steps = MAX_STEPS
        .min(n)
        .min((MAX_BASIS_BYTES / (16 * n.max(1))).max(k + 2));

    let mut basis: Vec<Vec<Complex64>> = vec![start_vector(n)];
    let mut alpha: Vec<f64> = Vec::new();
    let mut beta: Vec<f64> = Vec::new();
    let mut w = vec![Complex64::new(0.0, 0.0); n];

    loop {
        let j = basis.len() - 1;
        h.matvec(&basis[j], &mut w);
        let a = dot(&basis[j], &w).re;
        alpha.push(a);
        for _ in 0..2 {
            for q in &basis {
                let c = dot(q, &w);
                w.iter_mut().zip(q).for_each(|(x, y)| *x -= c * y);
            }
        }
        let b = norm(&w);
        let m = alpha.len();
        let exhausted = b < 1e-12 || m == max_steps;

        if m >= k && (m.is_multiple_of(5) || exhausted) {
            let t = DMatrix::from_fn(m, m, |r, c| {
                if r == c {
                    alpha[r]
                } else if r + 1 == c {
                    beta[r]
                } else if c + 1 == r {
                    beta[c]
                } else {
                    0.0
                }
            });
            let eig = SymmetricEigen::new(t);
            let mut order: Vec<usize> = (0..m).collect();
            order.sort_by(|&x, &y| eig.eigenvalues[x].total_cmp(&eig.eigenvalues[y]));
            let lowest = &order[..k];
            let converged = lowest.iter().all(|&i| {
                let theta = eig.eigenvalues[i];
                b * eig.eigenvectors[(m - 1, i)].abs() <= RESIDUAL_TOL * theta.abs().max(1.0)
            });
            if converged || b < 1e-12 {
                let values: Vec<f64> = lowest.iter().map(|&i| eig.eigenvalues[i]).collect();
                let vectors = DMatrix::from_fn(n, k, |r, c| {
                    let col = lowest[c];
                    (0..m)
                        .map(|s| basis[s][r] * eig.eigenvectors[(s, col)])
                        .sum::<Complex64>()
                });
                return Ok(Eigensystem { values, vectors });
            }
            if exhausted {
                return Err(Error::NoConvergence(format!(
                    "{k} lowest eigenpairs unresolved after {m} Lanczos steps (dimension {n})"
                )));
            }
        }

        beta.push(b);
        let next: Vec<Complex64> = w.iter().map(|x| x / b).collect();
        basis.push(next);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hamiltonian::Hamiltonian;
    use crate::spectra::eigen::{eigensystem, lowest_eigenpairs, Solver, DENSE_CAP};
    use crate::system::{InteractionModel, SystemSpec};

    #[test]
    fn matches_dense() {
        let spec = SystemSpec::new(InteractionModel::GeneralizedRabi)
            .mode("a", 1.0, Some(12))
            .mode("b", 1.7, Some(8))
            .qubit("q", 1.3)
            .coupling("a", "q", 0.11, 0.4)
            .coupling("b", "q", 0.07, 0.4);
        let h = Hamiltonian::build(&spec).unwrap();
        let dense = eigensystem(&h.total).unwrap();
        let lz = lanczos_lowest(&h.total, 6).unwrap();
        for k in 0..6 {
            assert!((lz.values[k] - dense.values[k]).abs() < 1e-9, "level {k}");
            let overlap: Complex64 = (0..h.total.dimension())
                .map(|r| lz.vectors[(r, k)].conj() * dense.vectors[(r, k)])
                .sum();
            assert!((overlap.norm() - 1.0).abs() < 1e-8);
        }
    }

    #[test]
    fn iterative_above_cap() {
        let spec = SystemSpec::new(InteractionModel::Rabi)
            .mode("a", 1.0, Some(1))
            .qubit("q0", 1.0)
            .qubit("q1", 1.1)
            .qubit("q2", 1.2)
            .qubit("q3", 1.3)
            .qubit("q4", 1.4)
            .qubit("q5", 1.5)
            .qubit("q6", 1.6)
            .qubit("q7", 1.7)
            .qubit("q8", 1.8)
            .qubit("q9", 1.9)
            .qubit("q10", 2.0)
            .qubit("q11", 2.1)
            .coupling("a", "q0", 0.1, 0.0)
            .coupling("a", "q5", 0.1, 0.0);
        let h = Hamiltonian::build(&spec).unwrap();
        assert!(h.total.dimension() > DENSE_CAP);
        let eig = lowest_eigenpairs(&h.total, 3, Solver::Auto).unwrap();
        for k in 0..3 {
            let v = eig.vector(k);
            let hv = h.total.apply(&v);
            let res: f64 = hv
                .iter()
                .zip(&v)
                .map(|(a, b)| (a - b * eig.values[k]).norm_sqr())
                .sum::<f64>()
                .sqrt();
            assert!(res < 1e-8, "residual {res}");
        }
        assert!(eig.values.windows(2).all(|w| w[0] <= w[1]));
    }
}
