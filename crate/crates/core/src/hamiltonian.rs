//! Bare and interaction Hamiltonians for the JC, Rabi and generalized Rabi
//! models, extended to many modes and qubits.

use std::sync::Arc;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::hilbert::HilbertSpace;
use crate::operator::{HermitianOperator, OperatorBuilder};
use crate::system::{CouplingSpec, InteractionModel, SystemSpec};

/// `H0 = Σ ω n + Σ ±ω_q/2`, diagonal in the bare basis.
pub fn build_h0(space: &Arc<HilbertSpace>) -> HermitianOperator {
    let mut b = OperatorBuilder::new();
    for i in 0..space.dimension() {
        b.add_diagonal(i, space.bare_energy_at(i));
    }
    b.build(space.clone())
}

/// Sum of the model's coupling term over all couplings.
///
/// Only the `a†` half of each term is enumerated; the builder adds the
/// conjugate `a` half, so the result is Hermitian by construction.
pub fn build_hint(
    space: &Arc<HilbertSpace>,
    couplings: &[CouplingSpec],
    model: InteractionModel,
) -> Result<HermitianOperator> {
    let mut b = OperatorBuilder::new();
    for c in couplings {
        let m = space
            .modes()
            .iter()
            .position(|x| x.label == c.mode)
            .ok_or_else(|| Error::UnknownLabel(c.mode.clone()))?;
        let q = space
            .qubits()
            .iter()
            .position(|x| x.label == c.qubit)
            .ok_or_else(|| Error::UnknownLabel(c.qubit.clone()))?;
        let (transverse, longitudinal) = match model {
            InteractionModel::GeneralizedRabi => (c.g * c.theta.cos(), c.g * c.theta.sin()),
            _ => (c.g, 0.0),
        };
        let n_max = space.n_max(m);
        let mode_stride = space.stride(m);
        let qubit_stride = space.qubit_stride(q);

        for s in 0..space.dimension() {
            let n = space.occupation_at(s, m);
            if n == n_max {
                continue;
            }
            let fock = ((n + 1) as f64).sqrt();
            let excited = space.excited_at(s, q);
            let raised = s + mode_stride;
            let flipped = if excited {
                raised - qubit_stride
            } else {
                raised + qubit_stride
            };

            match model {
                InteractionModel::JaynesCummings => {
                    if excited {
                        b.add_hermitian(flipped, s, Complex64::new(c.g * fock, 0.0));
                    }
                }
                InteractionModel::Rabi | InteractionModel::GeneralizedRabi => {
                    if transverse != 0.0 {
                        b.add_hermitian(flipped, s, Complex64::new(transverse * fock, 0.0));
                    }
                    if longitudinal != 0.0 {
                        let sz = if excited { 1.0 } else { -1.0 };
                        b.add_hermitian(raised, s, Complex64::new(sz * longitudinal * fock, 0.0));
                    }
                }
            }
        }
    }
    Ok(b.build(space.clone()))
}

/// `N = Σ a†a + Σ |e⟩⟨e|`.
pub fn total_number_operator(space: &Arc<HilbertSpace>) -> HermitianOperator {
    let mut b = OperatorBuilder::new();
    for i in 0..space.dimension() {
        b.add_diagonal(i, space.excitations_at(i) as f64);
    }
    b.build(space.clone())
}

/// `Π = (−1)^N`.
pub fn parity_operator(space: &Arc<HilbertSpace>) -> HermitianOperator {
    let mut b = OperatorBuilder::new();
    for i in 0..space.dimension() {
        let p = if space.excitations_at(i).is_multiple_of(2) {
            1.0
        } else {
            -1.0
        };
        b.add_diagonal(i, p);
    }
    b.build(space.clone())
}

/// Bare, interaction and full Hamiltonian of one system.
#[derive(Clone, Debug)]
pub struct Hamiltonian {
    pub space: Arc<HilbertSpace>,
    pub h0: HermitianOperator,
    pub hint: HermitianOperator,
    pub total: HermitianOperator,
}

impl Hamiltonian {
    pub fn build(spec: &SystemSpec) -> Result<Self> {
        Self::build_in(Arc::new(HilbertSpace::new(spec)?), spec)
    }

    pub fn build_with_cap(spec: &SystemSpec, cap: usize) -> Result<Self> {
        Self::build_in(Arc::new(HilbertSpace::with_cap(spec, cap)?), spec)
    }

    fn build_in(space: Arc<HilbertSpace>, spec: &SystemSpec) -> Result<Self> {
        let h0 = build_h0(&space);
        let hint = build_hint(&space, &spec.couplings, spec.model)?;
        let total = h0.add(&hint);
        Ok(Hamiltonian {
            space,
            h0,
            hint,
            total,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hilbert::BasisState;
    use proptest::prelude::*;
    use std::f64::consts::PI;

    fn one_mode(model: InteractionModel, g: f64, theta: f64, n_max: usize) -> Hamiltonian {
        let spec = SystemSpec::new(model)
            .mode("a", 1.0, Some(n_max))
            .qubit("q", 1.6)
            .coupling("a", "q", g, theta);
        Hamiltonian::build(&spec).unwrap()
    }

    fn idx(h: &Hamiltonian, s: &str) -> usize {
        h.space.index_of(&s.parse::<BasisState>().unwrap()).unwrap()
    }

    #[test]
    fn h0_diagonal() {
        let h = one_mode(InteractionModel::Rabi, 0.0, 0.0, 2);
        let expected = [-0.8, 0.8, 0.2, 1.8, 1.2, 2.8];
        for (d, e) in h.h0.diagonal().iter().zip(expected) {
            assert!((d - e).abs() < 1e-15, "{d} vs {e}");
        }
        assert!(h.h0.entries().all(|(r, c, _)| r == c));
        assert_eq!(h.hint.nnz(), 0);

        let spec = SystemSpec::new(InteractionModel::Rabi).qubit("q", 1.6);
        let h = Hamiltonian::build(&spec).unwrap();
        assert_eq!(h.h0.diagonal(), vec![-0.8, 0.8]);
    }

    #[test]
    fn matrix_elements() {
        let g = 0.05;
        let th = PI / 6.0;
        let h = one_mode(InteractionModel::Rabi, g, th, 3);
        assert_eq!(h.hint.get(idx(&h, "0,e"), idx(&h, "1,g")).re, g);

        let h = one_mode(InteractionModel::GeneralizedRabi, g, th, 3);
        let v = h.hint.get(idx(&h, "2,g"), idx(&h, "1,e")).re;
        assert!((v - 2f64.sqrt() * g * th.cos()).abs() < 1e-17);
        let v = h.hint.get(idx(&h, "1,g"), idx(&h, "0,g")).re;
        assert!((v + g * th.sin()).abs() < 1e-17);
        let v = h.hint.get(idx(&h, "1,e"), idx(&h, "0,e")).re;
        assert!((v - g * th.sin()).abs() < 1e-17);
    }

    #[test]
    fn jc_keeps_only_rotating_terms() {
        let h = one_mode(InteractionModel::JaynesCummings, 0.1, 0.0, 3);
        assert_eq!(h.hint.get(idx(&h, "0,e"), idx(&h, "1,g")).re, 0.1);
        assert_eq!(h.hint.get(idx(&h, "1,e"), idx(&h, "0,g")).re, 0.0);
    }

    #[test]
    fn hard_cutoff() {
        let h = one_mode(InteractionModel::Rabi, 0.1, 0.0, 2);
        // no element leaves the truncated space; the top rung only couples downward
        let top = idx(&h, "2,g");
        let partners: Vec<usize> = h.hint.row(top).map(|(c, _)| c).collect();
        assert_eq!(partners, vec![idx(&h, "1,e")]);
    }

    #[test]
    fn number_and_parity() {
        let spec = SystemSpec::new(InteractionModel::Rabi)
            .mode("a", 1.0, Some(2))
            .mode("b", 1.0, Some(2))
            .qubit("q", 1.0);
        let sp = Arc::new(HilbertSpace::new(&spec).unwrap());
        let n = total_number_operator(&sp);
        let p = parity_operator(&sp);
        let i = sp.index_of(&"1,0,e".parse().unwrap()).unwrap();
        assert_eq!(n.get(i, i).re, 2.0);
        let i = sp.index_of(&"0,0,g".parse().unwrap()).unwrap();
        assert_eq!(n.get(i, i).re, 0.0);
        let i = sp.index_of(&"1,1,g".parse().unwrap()).unwrap();
        assert_eq!(p.get(i, i).re, 1.0);

        let sp1 = Arc::new(
            HilbertSpace::new(
                &SystemSpec::new(InteractionModel::Rabi)
                    .mode("a", 1.0, Some(2))
                    .qubit("q", 1.0),
            )
            .unwrap(),
        );
        let i = sp1.index_of(&"0,e".parse().unwrap()).unwrap();
        assert_eq!(parity_operator(&sp1).get(i, i).re, -1.0);
    }

    #[test]
    fn unknown_label() {
        let spec = SystemSpec::new(InteractionModel::Rabi)
            .mode("a", 1.0, Some(2))
            .qubit("q", 1.0);
        let sp = Arc::new(HilbertSpace::new(&spec).unwrap());
        let bad = vec![CouplingSpec {
            mode: "z".into(),
            qubit: "q".into(),
            g: 0.1,
            theta: 0.0,
        }];
        let err = build_hint(&sp, &bad, InteractionModel::Rabi).unwrap_err();
        assert_eq!(err.kind(), crate::error::ErrorKind::Config);
    }

    fn multi(model: InteractionModel, ga: f64, gb: f64, theta: f64) -> Hamiltonian {
        let spec = SystemSpec::new(model)
            .mode("a", 2.0, Some(3))
            .mode("b", 1.0, Some(3))
            .qubit("q", 1.6)
            .qubit("r", 0.9)
            .coupling("a", "q", ga, theta)
            .coupling("b", "q", gb, theta)
            .coupling("b", "r", ga, -theta);
        Hamiltonian::build(&spec).unwrap()
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]

        #[test]
        fn symmetries(ga in 0.0f64..0.3, gb in 0.0f64..0.3, theta in -1.5f64..1.5) {
            let jc = multi(InteractionModel::JaynesCummings, ga, gb, theta);
            let n = total_number_operator(&jc.space);
            prop_assert_eq!(jc.total.commutator_norm(&n), 0.0);

            let rabi = multi(InteractionModel::Rabi, ga, gb, theta);
            let p = parity_operator(&rabi.space);
            prop_assert_eq!(rabi.total.commutator_norm(&p), 0.0);

            let gen = multi(InteractionModel::GeneralizedRabi, ga, gb, theta);
            prop_assert_eq!(gen.total.hermiticity_defect(), 0.0);
            prop_assert_eq!(rabi.total.hermiticity_defect(), 0.0);
        }

        #[test]
        fn model_reduction(ga in 0.01f64..0.3, gb in 0.01f64..0.3) {
            let gen0 = multi(InteractionModel::GeneralizedRabi, ga, gb, 0.0);
            let rabi = multi(InteractionModel::Rabi, ga, gb, 0.7);
            prop_assert_eq!(&gen0.hint, &rabi.hint);

            let jc = multi(InteractionModel::JaynesCummings, ga, gb, 0.7);
            for (r, c, v) in jc.hint.entries() {
                prop_assert_eq!(v, rabi.hint.get(r, c));
            }
            prop_assert!(jc.hint.nnz() < rabi.hint.nnz());
        }

        #[test]
        fn homogeneous_in_g(g in 0.01f64..0.3, lambda in 0.1f64..4.0) {
            let h1 = one_mode(InteractionModel::GeneralizedRabi, g, 0.4, 4);
            let h2 = one_mode(InteractionModel::GeneralizedRabi, lambda * g, 0.4, 4);
            for (r, c, v) in h1.hint.entries() {
                let w = h2.hint.get(r, c);
                prop_assert!((w - v * lambda).norm() <= 1e-15 * w.norm().max(1e-300));
            }
        }
    }

    #[test]
    fn generalized_breaks_both_symmetries() {
        let gen = multi(InteractionModel::GeneralizedRabi, 0.05, 0.1, PI / 6.0);
        let n = total_number_operator(&gen.space);
        let p = parity_operator(&gen.space);
        assert!(gen.total.commutator_norm(&n) > 0.0);
        assert!(gen.total.commutator_norm(&p) > 0.0);
    }
}
