//! Qubit–resonator Hamiltonians in truncated Fock space, perturbative
//! effective couplings between resonant bare states, and exact checks of
//! those couplings by diagonalization and time evolution.

pub mod catalog;
pub mod classical;
pub mod dynamics;
pub mod error;
pub mod hamiltonian;
pub mod hilbert;
pub mod operator;
pub mod perturbation;
pub mod spectra;
pub mod system;

pub use error::{Error, ErrorKind, Result};
pub use hamiltonian::Hamiltonian;
pub use hilbert::{BasisState, HilbertSpace};
pub use operator::{HermitianOperator, OperatorBuilder, C64};
pub use system::{CouplingSpec, InteractionModel, ModeSpec, QubitSpec, SystemSpec};
