//! Lowest-order effective couplings between degenerate bare states.
//!
//! For an `n`-step process from `|i⟩` to `|f⟩`
//!
//! ```text
//! g_eff = Σ_paths V_{f j_{n-1}} ⋯ V_{j_1 i} / Π_k (E_i − E_{j_k})
//! ```
//!
//! so that `H_eff = g_eff |f⟩⟨i| + h.c.`

mod closed_form;
mod energy;
mod paths;

pub use closed_form::{closed_form_geff, ClosedForm, ClosedFormParams};
pub use energy::{energy_corrections, kerr_path_sum};
pub(crate) use paths::interaction_for;
pub use paths::{
    effective_coupling, effective_coupling_for, enumerate_paths, shortest_order, shortest_order_within,
    stimulated_ratio, EffectiveCoupling, TransitionPath,
};

/// Intermediates closer than this to `E_i` make the expansion singular.
pub const DEGENERACY_TOLERANCE: f64 = 1e-9;

/// `|E_i − E_f|` above which an evaluation is reported as off resonance.
pub const RESONANCE_TOLERANCE: f64 = 1e-6;

pub const DEFAULT_MAX_DEPTH: usize = 8;
