//! Registry of nonlinear-optics analogues: setup, resonance condition,
//! transition, minimal interaction model and closed-form reference.

mod entries;
mod oracle;
mod template;

pub use oracle::{
    oracle_agreement, oracle_suite, run_oracle_case, OracleCase, OracleOutcome, OraclePoint, Probe,
};
pub use template::{Occupation, Relation, StateTemplate};

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::hilbert::BasisState;
use crate::perturbation::{
    closed_form_geff, effective_coupling, kerr_path_sum, shortest_order, ClosedForm, ClosedFormParams,
};
use crate::system::{InteractionModel, SystemSpec};

/// Highest wave-mixing order `m` instantiated for the generic harmonic entries.
pub const DEFAULT_MAX_ORDER: usize = 6;
pub const DEFAULT_COUPLING: f64 = 0.05;
pub const DEFAULT_THETA: f64 = std::f64::consts::FRAC_PI_6;
/// Photon number substituted for `n` in parametric templates.
pub const DEFAULT_TEMPLATE_N: usize = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Category {
    ThreeWave,
    FourWave,
    Higher,
    Other,
}

impl Category {
    pub fn name(self) -> &'static str {
        match self {
            Category::ThreeWave => "three-wave",
            Category::FourWave => "four-wave",
            Category::Higher => "higher",
            Category::Other => "other",
        }
    }
}

impl fmt::Display for Category {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Category {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        [
            Category::ThreeWave,
            Category::FourWave,
            Category::Higher,
            Category::Other,
        ]
        .into_iter()
        .find(|c| c.name() == s)
        .ok_or_else(|| Error::UnknownLabel(s.to_string()))
    }
}

/// Which summary an entry comes from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Source {
    ThreeWaveSummary,
    FourWaveSummary,
    DegenerateFourWave,
    OtherProcesses,
}

impl Source {
    pub fn title(self) -> &'static str {
        match self {
            Source::ThreeWaveSummary => "three-wave-mixing summary",
            Source::FourWaveSummary => "four-wave-mixing summary",
            Source::DegenerateFourWave => "four-wave mixing with two degenerate frequencies",
            Source::OtherProcesses => "other nonlinear processes",
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ProcessEntry {
    pub id: String,
    pub category: Category,
    pub degenerate: bool,
    pub name: String,
    pub source: Source,
    pub reference: String,
    /// Frequency symbol of each mode; modes are labelled by their symbol.
    pub mode_symbols: Vec<String>,
    /// Frequency symbol of each qubit. Identical qubits share a symbol.
    pub qubit_symbols: Vec<String>,
    /// `None` for diagonal processes.
    pub relation: Option<Relation>,
    pub initial: StateTemplate,
    pub final_state: StateTemplate,
    pub model: InteractionModel,
    pub closed_form: Option<ClosedForm>,
}

impl ProcessEntry {
    /// `(modes, qubits)`.
    pub fn setup(&self) -> (usize, usize) {
        (self.mode_symbols.len(), self.qubit_symbols.len())
    }

    pub fn mode_labels(&self) -> Vec<String> {
        self.mode_symbols.clone()
    }

    pub fn qubit_labels(&self) -> Vec<String> {
        match self.qubit_symbols.len() {
            1 => vec!["q".to_string()],
            k => (1..=k).map(|j| format!("q{j}")).collect(),
        }
    }

    /// Distinct frequency symbols, modes first.
    pub fn symbols(&self) -> Vec<String> {
        let mut out: Vec<String> = Vec::new();
        for s in self.mode_symbols.iter().chain(&self.qubit_symbols) {
            if !out.contains(s) {
                out.push(s.clone());
            }
        }
        out
    }

    pub fn is_diagonal(&self) -> bool {
        self.initial == self.final_state
    }

    pub fn endpoints(&self, n: usize) -> (BasisState, BasisState) {
        (self.initial.instantiate(n), self.final_state.instantiate(n))
    }

    /// Bare-energy difference `2(E_f − E_i)` as `(symbol, n coefficient, constant)`.
    fn energy_change(&self) -> Vec<(String, i64, i64)> {
        let mut out: Vec<(String, i64, i64)> = self.symbols().into_iter().map(|s| (s, 0, 0)).collect();
        let mut add = |sym: &str, n: i64, k: i64| {
            let e = out.iter_mut().find(|e| e.0 == sym).expect("known symbol");
            e.1 += n;
            e.2 += k;
        };
        for (m, sym) in self.mode_symbols.iter().enumerate() {
            let (a, b) = (self.initial.occupations[m], self.final_state.occupations[m]);
            add(
                sym,
                2 * (b.n_coefficient as i64 - a.n_coefficient as i64),
                2 * (b.offset as i64 - a.offset as i64),
            );
        }
        for (q, sym) in self.qubit_symbols.iter().enumerate() {
            let flip = |e: bool| if e { 1 } else { -1 };
            add(
                sym,
                0,
                flip(self.final_state.excited[q]) - flip(self.initial.excited[q]),
            );
        }
        out
    }

    /// The bare energies of the two templates agree for every `n` exactly
    /// when the resonance relation holds.
    pub fn energy_balance(&self) -> bool {
        if self.initial.occupations.len() != self.mode_symbols.len()
            || self.final_state.occupations.len() != self.mode_symbols.len()
            || self.initial.excited.len() != self.qubit_symbols.len()
            || self.final_state.excited.len() != self.qubit_symbols.len()
        {
            return false;
        }
        let change = self.energy_change();
        if change.iter().any(|c| c.1 != 0) {
            return false;
        }
        let Some(rel) = &self.relation else {
            return change.iter().all(|c| c.2 == 0);
        };
        if rel.symbols().any(|s| !change.iter().any(|c| c.0 == s)) {
            return false;
        }
        let r: Vec<i64> = change.iter().map(|c| rel.coefficient(&c.0)).collect();
        let d: Vec<i64> = change.iter().map(|c| c.2).collect();
        let proportional = (0..d.len()).all(|i| (0..d.len()).all(|j| d[i] * r[j] == d[j] * r[i]));
        proportional && d.iter().any(|&x| x != 0) && r.iter().any(|&x| x != 0)
    }

    /// Frequencies used when a symbol is not fixed by the caller.
    pub fn default_frequency(symbol: &str) -> f64 {
        match symbol {
            "a" => 1.0,
            "b" => 1.23,
            "c" => 1.47,
            "d" => 1.71,
            "q" | "q1" => 0.83,
            "q2" => 0.97,
            "q3" => 1.11,
            _ => 1.0,
        }
    }

    fn spec_from(&self, freq: &[(String, f64)]) -> SystemSpec {
        let lookup = |s: &str| freq.iter().find(|(k, _)| k == s).map(|x| x.1).unwrap();
        let mut spec = SystemSpec::new(self.model);
        for sym in &self.mode_symbols {
            spec = spec.mode(sym, lookup(sym), None);
        }
        let qubits = self.qubit_labels();
        for (label, sym) in qubits.iter().zip(&self.qubit_symbols) {
            spec = spec.qubit(label, lookup(sym));
        }
        for m in &self.mode_symbols {
            for q in &qubits {
                spec = spec.coupling(m, q, DEFAULT_COUPLING, DEFAULT_THETA);
            }
        }
        spec
    }

    /// A resonant parameter point built from the default frequencies, solving
    /// the relation for its first symbol that comes out positive.
    pub fn default_spec(&self) -> Result<SystemSpec> {
        let Some(rel) = &self.relation else {
            return resolve_resonance(self, &[]);
        };
        let mut last = None;
        for free in rel.symbols() {
            let fixed: Vec<(String, f64)> = rel
                .symbols()
                .filter(|s| *s != free)
                .map(|s| (s.to_string(), Self::default_frequency(s)))
                .collect();
            let fixed: Vec<(&str, f64)> = fixed.iter().map(|(s, v)| (s.as_str(), *v)).collect();
            match resolve_resonance(self, &fixed) {
                Ok(spec) => return Ok(spec),
                Err(e) => last = Some(e),
            }
        }
        Err(last.unwrap_or_else(|| Error::InvalidSpec(format!("{} has an empty relation", self.id))))
    }
}

impl fmt::Display for ProcessEntry {
    /// One `key=value` record with a fixed field order.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (m, q) = self.setup();
        let relation = self
            .relation
            .as_ref()
            .map_or("none".to_string(), |r| r.to_string());
        write!(
            f,
            "id={}\tcategory={}\tdegenerate={}\tname={}\tmodes={}\tqubits={}\tresonance={}\tinitial={}\tfinal={}\tmodel={}\tclosed_form={}\treference={}",
            self.id,
            self.category,
            self.degenerate,
            self.name,
            m,
            q,
            relation,
            self.initial,
            self.final_state,
            self.model,
            self.closed_form.map_or("none", |c| c.id()),
            self.reference,
        )
    }
}

/// Weakest model that can connect the two templates: odd excitation change
/// needs the longitudinal term, even nonzero change the counter-rotating
/// terms, zero change only the JC terms.
pub fn parity_model(entry: &ProcessEntry) -> Result<InteractionModel> {
    let (ni, ki) = entry.initial.excitations();
    let (nf, kf) = entry.final_state.excitations();
    if ni != nf {
        return Err(Error::InvalidSpec(format!(
            "{}: excitation change depends on n",
            entry.id
        )));
    }
    Ok(match (kf - ki).abs() {
        0 => InteractionModel::JaynesCummings,
        d if d % 2 == 1 => InteractionModel::GeneralizedRabi,
        _ => InteractionModel::Rabi,
    })
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct ProcessFilter {
    pub category: Option<Category>,
    pub degenerate: Option<bool>,
    pub model: Option<InteractionModel>,
    pub source: Option<Source>,
}

impl ProcessFilter {
    pub fn matches(&self, e: &ProcessEntry) -> bool {
        self.category.is_none_or(|c| c == e.category)
            && self.degenerate.is_none_or(|d| d == e.degenerate)
            && self.model.is_none_or(|m| m == e.model)
            && self.source.is_none_or(|s| s == e.source)
    }
}

pub fn list_processes(filter: &ProcessFilter) -> Vec<ProcessEntry> {
    list_processes_up_to(DEFAULT_MAX_ORDER, filter)
}

/// Like [`list_processes`] with generic harmonic entries instantiated up to
/// wave-mixing order `max_order`.
pub fn list_processes_up_to(max_order: usize, filter: &ProcessFilter) -> Vec<ProcessEntry> {
    entries::all(max_order)
        .into_iter()
        .filter(|e| filter.matches(e))
        .collect()
}

pub fn find_process(id: &str) -> Result<ProcessEntry> {
    list_processes(&ProcessFilter::default())
        .into_iter()
        .find(|e| e.id == id)
        .ok_or_else(|| Error::UnknownLabel(id.to_string()))
}

/// Solves the resonance relation for its single unfixed symbol. Symbols
/// outside the relation take the fixed value or their default. The system
/// uses the entry's model and uniform couplings on every mode–qubit pair.
pub fn resolve_resonance(entry: &ProcessEntry, fixed: &[(&str, f64)]) -> Result<SystemSpec> {
    let symbols = entry.symbols();
    for (s, _) in fixed {
        if !symbols.iter().any(|x| x == s) {
            return Err(Error::UnknownLabel(s.to_string()));
        }
    }
    let given = |s: &str| fixed.iter().find(|(k, _)| *k == s).map(|x| x.1);
    let mut freq: Vec<(String, f64)> = symbols
        .iter()
        .map(|s| {
            (
                s.clone(),
                given(s).unwrap_or_else(|| ProcessEntry::default_frequency(s)),
            )
        })
        .collect();

    if let Some(rel) = &entry.relation {
        let free: Vec<&str> = rel.symbols().filter(|s| given(s).is_none()).collect();
        if free.len() != 1 {
            return Err(Error::Arity {
                free: free.len(),
                total: rel.terms.len(),
            });
        }
        let target = free[0];
        let rest: f64 = rel
            .terms
            .iter()
            .filter(|(s, _)| s != target)
            .map(|(s, c)| *c as f64 * given(s).unwrap())
            .sum();
        let value = -rest / rel.coefficient(target) as f64;
        if !(value > 0.0) {
            return Err(Error::Infeasible {
                symbol: format!("ω_{target}"),
                value,
            });
        }
        freq.iter_mut().find(|(s, _)| s == target).unwrap().1 = value;
    }
    Ok(entry.spec_from(&freq))
}

/// Closed-form inputs read from a spec: first two modes as `a`, `b`, the
/// first qubit as `q`, and their couplings.
pub fn closed_form_params(spec: &SystemSpec) -> ClosedFormParams {
    let coupling = |m: usize| -> Option<(f64, f64)> {
        let mode = spec.modes.get(m)?;
        let qubit = spec.qubits.first()?;
        spec.couplings
            .iter()
            .find(|c| c.mode == mode.label && c.qubit == qubit.label)
            .map(|c| (c.g, c.theta))
    };
    let first = spec.couplings.first().map_or((0.0, 0.0), |c| (c.g, c.theta));
    ClosedFormParams {
        wa: spec.modes.first().map_or(0.0, |m| m.frequency),
        wb: spec.modes.get(1).map_or(0.0, |m| m.frequency),
        wq: spec.qubits.first().map_or(0.0, |q| q.frequency),
        g: first.0,
        ga: coupling(0).map_or(0.0, |c| c.0),
        gb: coupling(1).map_or(0.0, |c| c.0),
        theta: first.1,
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq)]
pub struct EntryReport {
    pub id: String,
    pub order: Option<usize>,
    pub g_eff: Option<Complex64>,
    pub path_count: usize,
    pub closed_form: Option<(ClosedForm, f64)>,
    pub checks: Vec<Check>,
}

impl EntryReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

impl fmt::Display for EntryReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{} {}", if self.passed() { "PASS" } else { "FAIL" }, self.id)?;
        if let Some(g) = self.g_eff {
            writeln!(
                f,
                "  g_eff = {:.10e}{:+.10e}i (order {}, {} paths)",
                g.re,
                g.im,
                self.order.unwrap_or(0),
                self.path_count
            )?;
        }
        if let Some((form, v)) = self.closed_form {
            writeln!(f, "  closed form {form} = {v:.10e}")?;
        }
        for c in &self.checks {
            writeln!(
                f,
                "  [{}] {}: {}",
                if c.passed { "ok" } else { "FAIL" },
                c.name,
                c.detail
            )?;
        }
        Ok(())
    }
}

fn reachable(
    spec: &SystemSpec,
    model: InteractionModel,
    i: &BasisState,
    f: &BasisState,
) -> Result<Option<usize>> {
    let hint =
        crate::perturbation::interaction_for(&spec.clone().with_model(model), &[i.clone(), f.clone()])?;
    match shortest_order(&hint, i, f) {
        Ok(d) => Ok(Some(d)),
        Err(Error::Unreachable { .. }) => Ok(None),
        Err(e) => Err(e),
    }
}

/// Runs the energy-balance, parity, model-sufficiency and oracle checks for
/// one entry at the parameter point `spec`, with `n` substituted into
/// parametric templates.
pub fn verify_entry(entry: &ProcessEntry, spec: &SystemSpec, n: usize) -> Result<EntryReport> {
    spec.validate()?;
    let (i, f) = entry.endpoints(n);
    let mut checks = Vec::new();
    let mut check = |name: &str, passed: bool, detail: String| {
        checks.push(Check {
            name: name.to_string(),
            passed,
            detail,
        })
    };

    check(
        "energy balance",
        entry.energy_balance(),
        match &entry.relation {
            Some(r) => format!("{} -> {} under {r}", entry.initial, entry.final_state),
            None => "diagonal".into(),
        },
    );

    let mut filled = spec.clone();
    filled.fill_truncation(&[i.clone(), f.clone()]);
    let space = crate::hilbert::HilbertSpace::new(&filled)?;
    let detuning = space.bare_energy(&i)? - space.bare_energy(&f)?;
    let scale = spec
        .modes
        .iter()
        .map(|m| m.frequency.abs())
        .chain(spec.qubits.iter().map(|q| q.frequency.abs()))
        .fold(1.0, f64::max);
    check(
        "resonance",
        detuning.abs() <= 1e-9 * scale,
        format!("E_i - E_f = {detuning:e}"),
    );

    match parity_model(entry) {
        Ok(m) => check(
            "parity",
            m == entry.model,
            format!("excitation change requires {m}, entry lists {}", entry.model),
        ),
        Err(e) => check("parity", false, e.to_string()),
    }

    let mut report = EntryReport {
        id: entry.id.clone(),
        order: None,
        g_eff: None,
        path_count: 0,
        closed_form: None,
        checks: Vec::new(),
    };

    let params = closed_form_params(spec);
    if entry.is_diagonal() {
        if entry.closed_form == Some(ClosedForm::Kerr) {
            let path = kerr_path_sum(params.wa, params.wq, params.g)?;
            let closed = closed_form_geff(ClosedForm::Kerr, &params)?;
            let (err, ok) = oracle_agreement(path, closed, path.abs());
            report.g_eff = Some(Complex64::new(path, 0.0));
            report.closed_form = Some((ClosedForm::Kerr, closed));
            check(
                "oracle",
                ok,
                format!("fourth-order shift {path:.10e}, relative error {err:.2e}"),
            );
        }
    } else {
        match reachable(spec, entry.model, &i, &f)? {
            Some(d) => check(
                "sufficient model",
                true,
                format!("{} reaches {f} in {d} steps", entry.model),
            ),
            None => check(
                "sufficient model",
                false,
                format!("{f} unreachable under {}", entry.model),
            ),
        }
        for &weaker in entry.model.weaker() {
            let r = reachable(spec, weaker, &i, &f)?;
            check(
                "weaker model",
                r.is_none(),
                match r {
                    None => format!("unreachable under {weaker}"),
                    Some(d) => format!("reachable under {weaker} in {d} steps"),
                },
            );
        }

        let hint = crate::perturbation::interaction_for(spec, &[i.clone(), f.clone()])?;
        let eff = effective_coupling(&hint, &i, &f)?;
        report.order = Some(eff.order);
        report.g_eff = Some(eff.value);
        report.path_count = eff.path_count;

        if let Some(form) = entry.closed_form {
            let closed = closed_form_geff(form, &params)?;
            report.closed_form = Some((form, closed));
            if form.is_transition_amplitude() && spec.model == entry.model {
                let largest = eff
                    .paths
                    .iter()
                    .map(|p| p.contribution.norm())
                    .fold(0.0, f64::max);
                let (err, ok) = oracle_agreement(eff.value.re, closed, largest);
                check(
                    "oracle",
                    ok && eff.value.im.abs() <= 1e-12 * largest.max(f64::MIN_POSITIVE),
                    format!(
                        "path sum {:.10e} vs {form} {closed:.10e}, error {err:.2e}",
                        eff.value.re
                    ),
                );
            }
        }
    }
    report.checks = checks;
    Ok(report)
}

/// [`verify_entry`] at the entry's default resonant point.
pub fn verify_default(entry: &ProcessEntry) -> Result<EntryReport> {
    verify_entry(entry, &entry.default_spec()?, DEFAULT_TEMPLATE_N)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn all() -> Vec<ProcessEntry> {
        list_processes(&ProcessFilter::default())
    }

    fn by_source(s: Source) -> usize {
        list_processes(&ProcessFilter {
            source: Some(s),
            ..Default::default()
        })
        .len()
    }

    #[test]
    fn counts() {
        assert_eq!(by_source(Source::ThreeWaveSummary), 16);
        assert_eq!(by_source(Source::FourWaveSummary), 22);
        assert_eq!(by_source(Source::DegenerateFourWave), 12);
        // 12 harmonic entries for m = 5, 6; 4 multiphoton; Kerr; parametric
        assert_eq!(by_source(Source::OtherProcesses), 18);
        assert_eq!(
            list_processes_up_to(4, &ProcessFilter::default()).len(),
            16 + 22 + 12 + 4
        );
    }

    #[test]
    fn ids_unique() {
        let mut ids: Vec<String> = all().into_iter().map(|e| e.id).collect();
        let n = ids.len();
        ids.sort();
        ids.dedup();
        assert_eq!(ids.len(), n);
    }

    #[test]
    fn filters() {
        let f = ProcessFilter {
            category: Some(Category::ThreeWave),
            degenerate: Some(true),
            ..Default::default()
        };
        assert_eq!(list_processes(&f).len(), 6);
        let f = ProcessFilter {
            category: Some(Category::FourWave),
            degenerate: Some(false),
            ..Default::default()
        };
        assert_eq!(list_processes(&f).len(), 12);
        let f = ProcessFilter {
            model: Some(InteractionModel::JaynesCummings),
            ..Default::default()
        };
        let ids: Vec<String> = list_processes(&f).into_iter().map(|e| e.id).collect();
        for id in [
            "fwm-i-3r1q",
            "fwm-i-4r1q",
            "fwm-i-2r2q",
            "fwm-i-1r3q",
            "hyper-raman-i-stokes",
        ] {
            assert!(ids.iter().any(|x| x == id), "{id}");
        }
    }

    #[test]
    fn energy_balance_and_parity() {
        for e in all() {
            assert!(e.energy_balance(), "{}", e.id);
            assert_eq!(parity_model(&e).unwrap(), e.model, "{}", e.id);
        }
        let mut bad = find_process("raman-stokes").unwrap();
        bad.relation = Some("a = 2b + q".parse().unwrap());
        assert!(!bad.energy_balance());
    }

    #[test]
    fn three_wave_needs_generalized_rabi() {
        let f = ProcessFilter {
            category: Some(Category::ThreeWave),
            ..Default::default()
        };
        assert!(list_processes(&f)
            .iter()
            .all(|e| e.model == InteractionModel::GeneralizedRabi));
    }

    #[test]
    fn resolve_examples() {
        let spec = resolve_resonance(&find_process("sshg-2r1q").unwrap(), &[("b", 1.0)]).unwrap();
        assert_eq!(spec.frequency("a").unwrap(), 2.0);
        let spec =
            resolve_resonance(&find_process("raman-stokes").unwrap(), &[("b", 2.0), ("q", 1.0)]).unwrap();
        assert_eq!(spec.frequency("a").unwrap(), 3.0);
        let spec = resolve_resonance(
            &find_process("hyper-raman-ii-stokes").unwrap(),
            &[("b", 1.0), ("q", 1.0)],
        )
        .unwrap();
        assert_eq!(spec.frequency("a").unwrap(), 3.0);
        assert_eq!(spec.frequency("q2").unwrap(), 1.0);
    }

    #[test]
    fn resolve_errors() {
        let e = find_process("raman-stokes").unwrap();
        assert!(matches!(
            resolve_resonance(&e, &[("a", 1.0), ("q", 2.0)]).unwrap_err(),
            Error::Infeasible { .. }
        ));
        assert_eq!(
            resolve_resonance(&e, &[("a", 3.0), ("b", 2.0), ("q", 1.0)]).unwrap_err(),
            Error::Arity { free: 0, total: 3 }
        );
        assert_eq!(
            resolve_resonance(&e, &[("b", 2.0)]).unwrap_err(),
            Error::Arity { free: 2, total: 3 }
        );
        assert!(matches!(
            resolve_resonance(&e, &[("z", 2.0)]).unwrap_err(),
            Error::UnknownLabel(_)
        ));
    }

    #[test]
    fn sshg_at_figure_parameters() {
        let e = find_process("shg-2r1q").unwrap();
        let mut spec = resolve_resonance(&e, &[("b", 1.0), ("q", 1.6)]).unwrap();
        spec.couplings[0].g = 0.07;
        spec.couplings[1].g = 0.14;
        let r = verify_entry(&e, &spec, 0).unwrap();
        assert!(r.passed(), "{r}");
        assert_eq!(r.path_count, 12);
        assert!((r.g_eff.unwrap().re + 4.9751e-3).abs() < 5e-8);
    }

    #[test]
    fn sshg_under_rabi_is_unreachable() {
        let e = find_process("shg-2r1q").unwrap();
        let spec = e.default_spec().unwrap();
        let r = reachable(
            &spec,
            InteractionModel::Rabi,
            &e.initial.instantiate(0),
            &e.final_state.instantiate(0),
        );
        assert_eq!(r.unwrap(), None);
    }

    #[test]
    fn type_one_under_jc() {
        let e = find_process("fwm-i-3r1q").unwrap();
        let r = verify_default(&e).unwrap();
        assert!(r.passed(), "{r}");
        assert!(r.g_eff.unwrap().norm() > 0.0);
    }

    #[test]
    fn every_entry_verifies() {
        for e in all() {
            let r = verify_default(&e).unwrap_or_else(|err| panic!("{}: {err}", e.id));
            assert!(r.passed(), "{r}");
        }
    }

    #[test]
    fn records_have_stable_fields() {
        let line = find_process("raman-stokes").unwrap().to_string();
        assert!(line.starts_with("id=raman-stokes\tcategory=three-wave\tdegenerate=false\t"));
        assert!(line.contains("resonance=ω_a = ω_b + ω_q"));
    }
}
