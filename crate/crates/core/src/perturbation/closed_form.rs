//! Published analytic effective couplings, used as independent oracles for
//! the path sum.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// Frequencies and couplings consumed by the closed forms. Each form reads
/// only the fields it needs.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct ClosedFormParams {
    pub wa: f64,
    pub wb: f64,
    pub wq: f64,
    /// Coupling for single-mode setups.
    pub g: f64,
    pub ga: f64,
    pub gb: f64,
    pub theta: f64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ClosedForm {
    /// `|0,2,g⟩ → |1,0,g⟩`, two modes, generalized Rabi; any detuning.
    SshgTwoResonator,
    /// Same at `ω_a = 2ω_b`.
    SshgTwoResonatorResonant,
    /// `|2,g⟩ → |0,e⟩`, generalized Rabi; any detuning.
    TwoPhotonRabi,
    /// Same at `ω_a = ω_q/2`.
    TwoPhotonRabiResonant,
    /// `|0,e,e⟩ → |1,g,g⟩` at `ω_a = 2ω_q`.
    PhotonToTwoQubits,
    /// `|1,0,g⟩ → |0,1,e⟩`, generalized Rabi; any detuning.
    RamanStokes,
    /// Same at `ω_a = ω_b + ω_q`.
    RamanStokesResonant,
    /// `|0,3,g⟩ → |1,0,g⟩`, Rabi; any detuning.
    TshgTwoResonator,
    /// Same at `ω_a = 3ω_b`.
    TshgTwoResonatorResonant,
    /// `|3,g⟩ → |0,e⟩`, Rabi; any detuning.
    ThreePhotonRabi,
    /// Same at `ω_q = 3ω_a`.
    ThreePhotonRabiResonant,
    /// `|0,e,e,e⟩ → |1,g,g,g⟩`, Rabi; vanishes at `ω_a = 3ω_q`.
    ThreeQubitThg,
    /// `|0,2,g⟩ → |1,0,e⟩`, Rabi; any detuning.
    HyperRamanIStokes,
    /// `|0,2,e⟩ → |1,0,g⟩`, Rabi; any detuning.
    HyperRamanIAntiStokes,
    /// Either hyper-Raman I direction on resonance.
    HyperRamanIResonant,
    /// Stokes transition under JC; any detuning.
    HyperRamanIJc,
    /// Same on resonance `ω_a + ω_q = 2ω_b`.
    HyperRamanIJcResonant,
    /// `|0,1,e,e⟩ → |1,0,g,g⟩`, Rabi; vanishes at `ω_a = ω_b + 2ω_q`.
    HyperRamanII,
    /// Dispersive self-Kerr coefficient of the JC model.
    Kerr,
    /// Degenerate parametric coefficient `ζ` of the two-mode generalized Rabi model.
    Parametric,
}

impl ClosedForm {
    pub const ALL: [ClosedForm; 20] = [
        ClosedForm::SshgTwoResonator,
        ClosedForm::SshgTwoResonatorResonant,
        ClosedForm::TwoPhotonRabi,
        ClosedForm::TwoPhotonRabiResonant,
        ClosedForm::PhotonToTwoQubits,
        ClosedForm::RamanStokes,
        ClosedForm::RamanStokesResonant,
        ClosedForm::TshgTwoResonator,
        ClosedForm::TshgTwoResonatorResonant,
        ClosedForm::ThreePhotonRabi,
        ClosedForm::ThreePhotonRabiResonant,
        ClosedForm::ThreeQubitThg,
        ClosedForm::HyperRamanIStokes,
        ClosedForm::HyperRamanIAntiStokes,
        ClosedForm::HyperRamanIResonant,
        ClosedForm::HyperRamanIJc,
        ClosedForm::HyperRamanIJcResonant,
        ClosedForm::HyperRamanII,
        ClosedForm::Kerr,
        ClosedForm::Parametric,
    ];

    pub fn id(self) -> &'static str {
        match self {
            ClosedForm::SshgTwoResonator => "sshg-two-resonator",
            ClosedForm::SshgTwoResonatorResonant => "sshg-two-resonator-resonant",
            ClosedForm::TwoPhotonRabi => "two-photon-rabi",
            ClosedForm::TwoPhotonRabiResonant => "two-photon-rabi-resonant",
            ClosedForm::PhotonToTwoQubits => "photon-to-two-qubits",
            ClosedForm::RamanStokes => "raman-stokes",
            ClosedForm::RamanStokesResonant => "raman-stokes-resonant",
            ClosedForm::TshgTwoResonator => "tshg-two-resonator",
            ClosedForm::TshgTwoResonatorResonant => "tshg-two-resonator-resonant",
            ClosedForm::ThreePhotonRabi => "three-photon-rabi",
            ClosedForm::ThreePhotonRabiResonant => "three-photon-rabi-resonant",
            ClosedForm::ThreeQubitThg => "three-qubit-thg",
            ClosedForm::HyperRamanIStokes => "hyper-raman-i-stokes",
            ClosedForm::HyperRamanIAntiStokes => "hyper-raman-i-anti-stokes",
            ClosedForm::HyperRamanIResonant => "hyper-raman-i-resonant",
            ClosedForm::HyperRamanIJc => "hyper-raman-i-jc",
            ClosedForm::HyperRamanIJcResonant => "hyper-raman-i-jc-resonant",
            ClosedForm::HyperRamanII => "hyper-raman-ii",
            ClosedForm::Kerr => "kerr",
            ClosedForm::Parametric => "parametric-zeta",
        }
    }

    /// Whether the form is a transition amplitude `⟨f|H_eff|i⟩` comparable
    /// with the path sum. The Kerr and parametric forms are Hamiltonian
    /// coefficients.
    pub fn is_transition_amplitude(self) -> bool {
        !matches!(self, ClosedForm::Kerr | ClosedForm::Parametric)
    }
}

impl fmt::Display for ClosedForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

impl FromStr for ClosedForm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        ClosedForm::ALL
            .into_iter()
            .find(|c| c.id() == s)
            .ok_or_else(|| Error::UnknownLabel(s.to_string()))
    }
}

/// Collects the form's denominators so poles are reported by name.
struct Eval {
    form: ClosedForm,
}

impl Eval {
    fn inv(&self, name: &str, d: f64) -> Result<f64> {
        if d.abs() < 1e-12 || !d.is_finite() {
            return Err(Error::Pole {
                form: self.form.id().to_string(),
                denominator: format!("{name} = {d:e}"),
            });
        }
        Ok(1.0 / d)
    }
}

/// Evaluates one closed form. Results are real in the convention
/// `H_eff = g_eff |f⟩⟨i| + h.c.`, with the transitions listed on
/// [`ClosedForm`].
pub fn closed_form_geff(form: ClosedForm, p: &ClosedFormParams) -> Result<f64> {
    let e = Eval { form };
    let (s, c) = p.theta.sin_cos();
    let sq2 = 2f64.sqrt();
    let sq6 = 6f64.sqrt();
    let (wa, wb, wq) = (p.wa, p.wb, p.wq);

    let v = match form {
        ClosedForm::SshgTwoResonator => {
            let pre = sq2 * p.ga * p.gb * p.gb;
            let dab = wa - wb;
            let longitudinal = s.powi(3)
                * (e.inv("ω_a(ω_b−ω_a)", wa * (wb - wa))?
                    - e.inv("ω_b(ω_b−ω_a)", wb * (wb - wa))?
                    - e.inv("2ω_b²", 2.0 * wb * wb)?);
            let mixed = s
                * c
                * c
                * (e.inv("(Δ_ab+ω_q)(ω_a+ω_q)", (dab + wq) * (wa + wq))?
                    - e.inv("ω_a(Δ_ab+ω_q)", wa * (dab + wq))?
                    - e.inv("(Δ_ab+ω_q)(ω_b−ω_q)", (dab + wq) * (wb - wq))?
                    + e.inv("ω_b(Δ_ab+ω_q)", wb * (dab + wq))?
                    - e.inv("Δ_ab(ω_a+ω_q)", dab * (wa + wq))?
                    + e.inv("Δ_ab(ω_b−ω_q)", dab * (wb - wq))?
                    + e.inv("(2ω_b−ω_q)Δ_bq", (2.0 * wb - wq) * (wb - wq))?
                    - e.inv("ω_b(2ω_b−ω_q)", wb * (2.0 * wb - wq))?
                    - e.inv("2ω_b(ω_b−ω_q)", 2.0 * wb * (wb - wq))?);
            pre * (longitudinal + mixed)
        }
        ClosedForm::SshgTwoResonatorResonant => {
            let den = 4.0 * wb.powi(4) - 5.0 * wb * wb * wq * wq + wq.powi(4);
            3.0 * sq2
                * p.ga
                * p.gb
                * p.gb
                * wq
                * wq
                * (2.0 * p.theta).sin()
                * c
                * e.inv("4ω_b⁴−5ω_b²ω_q²+ω_q⁴", den)?
        }
        ClosedForm::TwoPhotonRabi => {
            sq2 * p.g * p.g * s * c * (e.inv("ω_a−ω_q", wa - wq)? - e.inv("ω_a", wa)?)
        }
        ClosedForm::TwoPhotonRabiResonant => {
            -2.0 * sq2 * (2.0 * p.theta).sin() * p.g * p.g * e.inv("ω_q", wq)?
        }
        ClosedForm::PhotonToTwoQubits => -8.0 / 3.0 * s * c * c * p.g.powi(3) * e.inv("ω_q²", wq * wq)?,
        ClosedForm::RamanStokes => {
            p.ga * p.gb
                * s
                * c
                * (-e.inv("ω_a", wa)? - e.inv("ω_q−ω_a", wq - wa)? + e.inv("ω_b", wb)?
                    - e.inv("ω_b+ω_q", wb + wq)?)
        }
        ClosedForm::RamanStokesResonant => {
            p.ga * p.gb * (e.inv("ω_b", wb)? - e.inv("ω_a", wa)?) * (2.0 * p.theta).sin()
        }
        ClosedForm::TshgTwoResonator => {
            let oaq = wa + wq;
            let dab = wa - wb;
            let dbq = wb - wq;
            sq6 * p.ga
                * p.gb.powi(3)
                * (-e.inv("(Ω_aq−2ω_b)Δ_abΩ_aq", (oaq - 2.0 * wb) * dab * oaq)?
                    + e.inv("(Ω_aq−2ω_b)Δ_abΔ_bq", (oaq - 2.0 * wb) * dab * dbq)?
                    - e.inv("2ω_b(Ω_aq−2ω_b)Δ_bq", 2.0 * wb * (oaq - 2.0 * wb) * dbq)?
                    + e.inv("2ω_b(3ω_b−ω_q)Δ_bq", 2.0 * wb * (3.0 * wb - wq) * dbq)?)
        }
        ClosedForm::TshgTwoResonatorResonant => {
            let den = 9.0 * wb.powi(4) - 10.0 * wb * wb * wq * wq + wq.powi(4);
            4.0 * sq6 * p.ga * p.gb.powi(3) * wq * e.inv("9ω_b⁴−10ω_b²ω_q²+ω_q⁴", den)?
        }
        ClosedForm::ThreePhotonRabi => sq6 * p.g.powi(3) * e.inv("2ω_a(ω_a−ω_q)", 2.0 * wa * (wa - wq))?,
        ClosedForm::ThreePhotonRabiResonant => -9.0 * sq6 * p.g.powi(3) * e.inv("4ω_q²", 4.0 * wq * wq)?,
        ClosedForm::ThreeQubitThg => {
            -3.0 * p.g.powi(3) * (wa - 3.0 * wq) * e.inv("ω_q(ω_q−ω_a)²", wq * (wq - wa) * (wq - wa))?
        }
        ClosedForm::HyperRamanIStokes => {
            let dab = wa - wb;
            let dqb = wq - wb;
            sq2 * p.ga
                * p.gb
                * p.gb
                * (-e.inv("2ω_bΔ_qb", 2.0 * wb * dqb)?
                    + e.inv("Δ_abΔ_qb", dab * dqb)?
                    + e.inv("Δ_abΩ_aq", dab * (wa + wq))?)
        }
        ClosedForm::HyperRamanIAntiStokes => {
            let dab = wa - wb;
            sq2 * p.ga
                * p.gb
                * p.gb
                * (e.inv("2ω_bΩ_qb", 2.0 * wb * (wq + wb))? - e.inv("Δ_abΩ_qb", dab * (wq + wb))?
                    + e.inv("Δ_abΔ_aq", dab * (wa - wq))?)
        }
        ClosedForm::HyperRamanIResonant => {
            let dab = wa - wb;
            sq2 * p.ga * p.gb * p.gb * (wa - 2.0 * wb) * e.inv("ω_bΔ_ab²", wb * dab * dab)?
        }
        ClosedForm::HyperRamanIJc => sq2 * p.ga * p.gb * p.gb * e.inv("Δ_abΔ_qb", (wa - wb) * (wq - wb))?,
        ClosedForm::HyperRamanIJcResonant => {
            -sq2 * p.ga * p.gb * p.gb * e.inv("Δ_ab²", (wa - wb) * (wa - wb))?
        }
        ClosedForm::HyperRamanII => 2.0 * p.ga * p.gb * (e.inv("Δ_qa", wq - wa)? + e.inv("Ω_bq", wb + wq)?),
        ClosedForm::Kerr => -p.g.powi(4) * e.inv("(ω_a−ω_q)³", (wa - wq).powi(3))?,
        ClosedForm::Parametric => {
            p.ga * p.ga * p.gb * p.gb * s * (2.0 * p.theta).sin() * e.inv("ω_a(ω_q−ω_b)", wa * (wq - wb))?
        }
    };
    Ok(v)
}
