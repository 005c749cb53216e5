use nalgebra::{DMatrix, SymmetricEigen};
use num_complex::Complex64;

use super::lanczos::lanczos_lowest;
use crate::error::{Error, Result};
use crate::operator::HermitianOperator;

pub const DENSE_CAP: usize = 4096;

/// Eigenvalues in ascending order with matching eigenvector columns.
#[derive(Clone, Debug)]
pub struct Eigensystem {
    pub values: Vec<f64>,
    pub vectors: DMatrix<Complex64>,
}

impl Eigensystem {
    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// `|⟨basis|v_k⟩|²`.
    pub fn weight(&self, k: usize, basis: usize) -> f64 {
        self.vectors[(basis, k)].norm_sqr()
    }

    pub fn vector(&self, k: usize) -> Vec<Complex64> {
        self.vectors.column(k).iter().copied().collect()
    }

    /// `max |V†V − 1|` over all entries.
    pub fn orthonormality_defect(&self) -> f64 {
        let gram = self.vectors.adjoint() * &self.vectors;
        let mut worst = 0.0f64;
        for r in 0..gram.nrows() {
            for c in 0..gram.ncols() {
                let target = if r == c { 1.0 } else { 0.0 };
                worst = worst.max((gram[(r, c)] - target).norm());
            }
        }
        worst
    }

    fn sorted(values: Vec<f64>, vectors: DMatrix<Complex64>) -> Self {
        let mut order: Vec<usize> = (0..values.len()).collect();
        order.sort_by(|&a, &b| values[a].total_cmp(&values[b]).then(a.cmp(&b)));
        let values_sorted = order.iter().map(|&k| values[k]).collect();
        let vectors_sorted = DMatrix::from_fn(vectors.nrows(), order.len(), |r, c| vectors[(r, order[c])]);
        Eigensystem {
            values: values_sorted,
            vectors: vectors_sorted,
        }
    }
}

/// Full dense diagonalization. Real operators take the real symmetric path.
pub fn eigensystem(h: &HermitianOperator) -> Result<Eigensystem> {
    let n = h.dimension();
    if n > DENSE_CAP {
        return Err(Error::Capacity {
            what: "dense eigensolver".into(),
            dimension: n as u128,
            cap: DENSE_CAP,
        });
    }
    if h.is_real() {
        let eig = SymmetricEigen::new(h.to_dense_real());
        let vectors = eig.eigenvectors.map(|x| Complex64::new(x, 0.0));
        Ok(Eigensystem::sorted(
            eig.eigenvalues.iter().copied().collect(),
            vectors,
        ))
    } else {
        let eig = SymmetricEigen::new(h.to_dense());
        Ok(Eigensystem::sorted(
            eig.eigenvalues.iter().copied().collect(),
            eig.eigenvectors,
        ))
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Solver {
    /// Dense up to [`DENSE_CAP`], capacity error above.
    #[default]
    Dense,
    /// Dense up to [`DENSE_CAP`], Lanczos above.
    Auto,
}

/// The `k` lowest eigenpairs.
pub fn lowest_eigenpairs(h: &HermitianOperator, k: usize, solver: Solver) -> Result<Eigensystem> {
    let n = h.dimension();
    if n <= DENSE_CAP || solver == Solver::Dense {
        let full = eigensystem(h)?;
        let k = k.min(n);
        return Ok(Eigensystem {
            values: full.values[..k].to_vec(),
            vectors: full.vectors.columns(0, k).into_owned(),
        });
    }
    lanczos_lowest(h, k)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hamiltonian::Hamiltonian;
    use crate::system::{InteractionModel, SystemSpec};

    fn jc(g: f64) -> Hamiltonian {
        let spec = SystemSpec::new(InteractionModel::JaynesCummings)
            .mode("a", 1.0, Some(6))
            .qubit("q", 1.0)
            .coupling("a", "q", g, 0.0);
        Hamiltonian::build(&spec).unwrap()
    }

    #[test]
    fn zero_coupling_gives_bare_energies() {
        let h = jc(0.0);
        let eig = eigensystem(&h.total).unwrap();
        let mut bare = h.h0.diagonal();
        bare.sort_by(f64::total_cmp);
        assert_eq!(eig.values, bare);
    }

    #[test]
    fn single_qubit() {
        let spec = SystemSpec::new(InteractionModel::Rabi).qubit("q", 1.6);
        let h = Hamiltonian::build(&spec).unwrap();
        assert_eq!(eigensystem(&h.total).unwrap().values, vec![-0.8, 0.8]);
    }

    #[test]
    fn jc_doublet_on_resonance() {
        let g = 0.05;
        let eig = eigensystem(&jc(g).total).unwrap();
        // ground |0,g⟩ at -0.5, then 0.5 ± g
        assert!((eig.values[0] + 0.5).abs() < 1e-14);
        assert!((eig.values[2] - eig.values[1] - 2.0 * g).abs() < 1e-13);
        assert!(eig.orthonormality_defect() < 1e-10);
    }

    #[test]
    fn dense_cap() {
        let spec = SystemSpec::new(InteractionModel::Rabi)
            .mode("a", 1.0, Some(2100))
            .qubit("q", 1.0);
        let h = Hamiltonian::build(&spec).unwrap();
        let err = eigensystem(&h.total).unwrap_err();
        assert_eq!(err.kind(), crate::error::ErrorKind::Capacity);
        assert!(lowest_eigenpairs(&h.total, 2, Solver::Dense).is_err());
    }
}
