//! Run configuration in TOML.
//!
//! ```toml
//! model = "generalized-rabi"
//! output = "sweep.csv"          # optional, stdout otherwise
//!
//! [[modes]]
//! label = "a"
//! frequency = 2.0
//! n_max = 8                     # optional, derived from the states used
//!
//! [[qubits]]
//! label = "q"
//! frequency = 1.6
//!
//! [[couplings]]
//! mode = "a"
//! qubit = "q"
//! g = 0.07
//! theta = 0.5235987755982988    # optional, 0 by default
//!
//! [geff]
//! initial = "0,2,g"
//! final = "1,0,g"
//! ```
//!
//! Command sections: `geff`, `spectrum`, `evolve`, `catalog`, `classical`,
//! `verify`. Every unknown key is an error, and parsing reports all
//! violations at once with their field paths.

use std::fmt;
use std::str::FromStr;

use toml::{Table, Value};

use qnlo_core::catalog::{Category, ProcessFilter, DEFAULT_MAX_ORDER, DEFAULT_TEMPLATE_N};
use qnlo_core::classical::{Susceptibilities, Tone};
use qnlo_core::perturbation::DEFAULT_MAX_DEPTH;
use qnlo_core::spectra::SweptParameter;
use qnlo_core::{BasisState, CouplingSpec, InteractionModel, ModeSpec, QubitSpec, SystemSpec};

/// Environment variables `QNLO__A__B=value` act as `--set a.b=value`.
pub const ENV_PREFIX: &str = "QNLO__";

#[derive(Clone, Debug, PartialEq)]
pub struct GeffSection {
    pub initial: BasisState,
    pub final_state: BasisState,
    pub max_depth: usize,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SpectrumSection {
    pub parameter: SweptParameter,
    pub lo: f64,
    pub hi: f64,
    pub points: usize,
    pub tracked: Vec<BasisState>,
    pub models: Vec<InteractionModel>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct EvolveSection {
    pub initial: BasisState,
    pub targets: Vec<BasisState>,
    pub total_time: f64,
    pub samples: usize,
}

#[derive(Clone, Debug, PartialEq)]
pub struct CatalogSection {
    pub category: Option<Category>,
    pub degenerate: Option<bool>,
    pub model: Option<InteractionModel>,
    pub max_order: usize,
}

impl CatalogSection {
    pub fn filter(&self) -> ProcessFilter {
        ProcessFilter {
            category: self.category,
            degenerate: self.degenerate,
            model: self.model,
            source: None,
        }
    }
}

impl Default for CatalogSection {
    fn default() -> Self {
        CatalogSection {
            category: None,
            degenerate: None,
            model: None,
            max_order: DEFAULT_MAX_ORDER,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ClassicalSection {
    pub tones: Vec<Tone>,
    pub chi: Susceptibilities,
}

#[derive(Clone, Debug, PartialEq)]
pub struct VerifySection {
    /// Catalog ids; empty means every entry.
    pub processes: Vec<String>,
    /// Photon number substituted into parametric templates.
    pub n: usize,
}

impl Default for VerifySection {
    fn default() -> Self {
        VerifySection {
            processes: Vec::new(),
            n: DEFAULT_TEMPLATE_N,
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct RunConfig {
    pub system: Option<SystemSpec>,
    pub output: Option<String>,
    pub geff: Option<GeffSection>,
    pub spectrum: Option<SpectrumSection>,
    pub evolve: Option<EvolveSection>,
    pub catalog: Option<CatalogSection>,
    pub classical: Option<ClassicalSection>,
    pub verify: Option<VerifySection>,
}

#[derive(Clone, Debug, PartialEq)]
pub enum ConfigError {
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    Invalid(Vec<String>),
    Override(String),
}

impl fmt::Display for ConfigError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ConfigError::Syntax {
                line,
                column,
                message,
            } => {
                write!(f, "syntax error at line {line}, column {column}: {message}")
            }
            ConfigError::Invalid(v) => {
                write!(f, "{} configuration error(s):", v.len())?;
                for e in v {
                    write!(f, "\n  {e}")?;
                }
                Ok(())
            }
            ConfigError::Override(m) => write!(f, "override: {m}"),
        }
    }
}

impl std::error::Error for ConfigError {}

pub fn parse_table(text: &str) -> Result<Table, ConfigError> {
    text.parse::<Table>().map_err(|e| {
        let start = e.span().map_or(0, |s| s.start).min(text.len());
        let before = &text[..start];
        let line = before.matches('\n').count() + 1;
        let column = before.rsplit('\n').next().map_or(0, |l| l.chars().count()) + 1;
        ConfigError::Syntax {
            line,
            column,
            message: e.message().trim().to_string(),
        }
    })
}

pub fn parse_config(text: &str) -> Result<RunConfig, ConfigError> {
    from_table(&parse_table(text)?)
}

/// Parses `text`, applies `overrides` in order, then validates.
pub fn load(text: &str, overrides: &[(String, String)]) -> Result<RunConfig, ConfigError> {
    let mut table = parse_table(text)?;
    for (path, value) in overrides {
        apply_override(&mut table, path, value)?;
    }
    from_table(&table)
}

/// `(path, value)` pairs from `QNLO__`-prefixed variables, sorted by path.
pub fn env_overrides<I: IntoIterator<Item = (String, String)>>(vars: I) -> Vec<(String, String)> {
    let mut out: Vec<(String, String)> = vars
        .into_iter()
        .filter_map(|(k, v)| {
            let rest = k.strip_prefix(ENV_PREFIX)?;
            Some((rest.to_ascii_lowercase().replace("__", "."), v))
        })
        .collect();
    out.sort();
    out
}

/// Parses `path=value` from a `--set` flag.
pub fn split_assignment(s: &str) -> Result<(String, String), ConfigError> {
    let (k, v) = s
        .split_once('=')
        .ok_or_else(|| ConfigError::Override(format!("`{s}`: expected path=value")))?;
    Ok((k.trim().to_string(), v.trim().to_string()))
}

/// Sets a dotted path (`modes.0.frequency`, `spectrum.points`). The value is
/// read as a TOML literal, falling back to a bare string.
pub fn apply_override(root: &mut Table, path: &str, raw: &str) -> Result<(), ConfigError> {
    let value = format!("v = {raw}")
        .parse::<Table>()
        .ok()
        .and_then(|mut t| t.remove("v"))
        .unwrap_or_else(|| Value::String(raw.to_string()));
    let segments: Vec<&str> = path.split('.').collect();
    if segments.iter().any(|s| s.is_empty()) {
        return Err(ConfigError::Override(format!("`{path}`: empty path segment")));
    }
    let mut wrapped = Value::Table(std::mem::take(root));
    let result = set_path(&mut wrapped, &segments, value, path);
    if let Value::Table(t) = wrapped {
        *root = t;
    }
    result
}

fn container_for(next: &str) -> Value {
    if next.parse::<usize>().is_ok() {
        Value::Array(Vec::new())
    } else {
        Value::Table(Table::new())
    }
}

fn set_path(node: &mut Value, segs: &[&str], value: Value, path: &str) -> Result<(), ConfigError> {
    let Some((&head, rest)) = segs.split_first() else {
        *node = value;
        return Ok(());
    };
    match node {
        Value::Table(t) => {
            if rest.is_empty() {
                t.insert(head.to_string(), value);
                return Ok(());
            }
            let child = t
                .entry(head.to_string())
                .or_insert_with(|| container_for(rest[0]));
            set_path(child, rest, value, path)
        }
        Value::Array(a) => {
            let idx: usize = head
                .parse()
                .map_err(|_| ConfigError::Override(format!("`{path}`: `{head}` is not an array index")))?;
            if idx > a.len() {
                return Err(ConfigError::Override(format!(
                    "`{path}`: index {idx} skips past the end (length {})",
                    a.len()
                )));
            }
            if idx == a.len() {
                a.push(
                    rest.first()
                        .map_or(Value::Table(Table::new()), |n| container_for(n)),
                );
            }
            set_path(&mut a[idx], rest, value, path)
        }
        _ => Err(ConfigError::Override(format!(
            "`{path}`: `{head}` is inside a scalar"
        ))),
    }
}

struct Reader {
    errors: Vec<String>,
}

fn join(path: &str, key: &str) -> String {
    if path.is_empty() {
        key.to_string()
    } else {
        format!("{path}.{key}")
    }
}

fn type_name(v: &Value) -> &'static str {
    match v {
        Value::String(_) => "a string",
        Value::Integer(_) => "an integer",
        Value::Float(_) => "a float",
        Value::Boolean(_) => "a boolean",
        Value::Datetime(_) => "a datetime",
        Value::Array(_) => "an array",
        Value::Table(_) => "a table",
    }
}

impl Reader {
    fn fail(&mut self, path: &str, msg: impl fmt::Display) {
        self.errors.push(format!("{path}: {msg}"));
    }

    fn known(&mut self, t: &Table, path: &str, allowed: &[&str]) {
        for k in t.keys() {
            if !allowed.contains(&k.as_str()) {
                self.fail(&join(path, k), "unknown key");
            }
        }
    }

    fn get<'a>(&mut self, t: &'a Table, path: &str, key: &str, required: bool) -> Option<&'a Value> {
        let v = t.get(key);
        if v.is_none() && required {
            self.fail(&join(path, key), "missing");
        }
        v
    }

    fn f64(&mut self, t: &Table, path: &str, key: &str, required: bool) -> Option<f64> {
        match self.get(t, path, key, required)? {
            Value::Float(x) => Some(*x),
            Value::Integer(i) => Some(*i as f64),
            other => {
                self.fail(
                    &join(path, key),
                    format!("expected a number, got {}", type_name(other)),
                );
                None
            }
        }
    }

    fn usize(&mut self, t: &Table, path: &str, key: &str, required: bool) -> Option<usize> {
        match self.get(t, path, key, required)? {
            Value::Integer(i) if *i >= 0 => Some(*i as usize),
            Value::Integer(i) => {
                self.fail(&join(path, key), format!("must be nonnegative, got {i}"));
                None
            }
            other => {
                self.fail(
                    &join(path, key),
                    format!("expected an integer, got {}", type_name(other)),
                );
                None
            }
        }
    }

    fn bool(&mut self, t: &Table, path: &str, key: &str) -> Option<bool> {
        match self.get(t, path, key, false)? {
            Value::Boolean(b) => Some(*b),
            other => {
                self.fail(
                    &join(path, key),
                    format!("expected a boolean, got {}", type_name(other)),
                );
                None
            }
        }
    }

    fn string<'a>(&mut self, t: &'a Table, path: &str, key: &str, required: bool) -> Option<&'a str> {
        match self.get(t, path, key, required)? {
            Value::String(s) => Some(s),
            other => {
                self.fail(
                    &join(path, key),
                    format!("expected a string, got {}", type_name(other)),
                );
                None
            }
        }
    }

    fn parsed<T>(&mut self, t: &Table, path: &str, key: &str, required: bool) -> Option<T>
    where
        T: FromStr,
        T::Err: fmt::Display,
    {
        let s = self.string(t, path, key, required)?;
        s.parse().map_err(|e| self.fail(&join(path, key), e)).ok()
    }

    fn array<'a>(&mut self, t: &'a Table, path: &str, key: &str, required: bool) -> Option<&'a [Value]> {
        match self.get(t, path, key, required)? {
            Value::Array(a) => Some(a),
            other => {
                self.fail(
                    &join(path, key),
                    format!("expected an array, got {}", type_name(other)),
                );
                None
            }
        }
    }

    fn tables<'a>(&mut self, t: &'a Table, key: &str) -> Vec<(String, &'a Table)> {
        let Some(items) = self.array(t, "", key, false) else {
            return Vec::new();
        };
        items
            .iter()
            .enumerate()
            .filter_map(|(k, v)| {
                let p = format!("{key}[{k}]");
                match v {
                    Value::Table(t) => Some((p, t)),
                    other => {
                        self.fail(&p, format!("expected a table, got {}", type_name(other)));
                        None
                    }
                }
            })
            .collect()
    }

    fn section<'a>(&mut self, t: &'a Table, key: &str) -> Option<&'a Table> {
        match t.get(key)? {
            Value::Table(s) => Some(s),
            other => {
                self.fail(key, format!("expected a table, got {}", type_name(other)));
                None
            }
        }
    }

    fn states(&mut self, t: &Table, path: &str, key: &str) -> Option<Vec<BasisState>> {
        let items = self.array(t, path, key, true)?;
        let mut out = Vec::new();
        for (k, v) in items.iter().enumerate() {
            let p = format!("{}[{k}]", join(path, key));
            match v {
                Value::String(s) => match s.parse() {
                    Ok(st) => out.push(st),
                    Err(e) => self.fail(&p, e),
                },
                other => self.fail(&p, format!("expected a string, got {}", type_name(other))),
            }
        }
        (out.len() == items.len()).then_some(out)
    }

    fn system(&mut self, root: &Table) -> Option<SystemSpec> {
        let present = ["model", "modes", "qubits", "couplings"]
            .iter()
            .any(|k| root.contains_key(*k));
        if !present {
            return None;
        }
        let model = self.parsed::<InteractionModel>(root, "", "model", true);
        let mut spec = SystemSpec::new(model.unwrap_or(InteractionModel::GeneralizedRabi));
        let mut expected = 0;
        let modes = self.tables(root, "modes");
        expected += modes.len();
        for (p, t) in modes {
            self.known(t, &p, &["label", "frequency", "n_max"]);
            let label = self.string(t, &p, "label", true).map(str::to_string);
            let frequency = self.f64(t, &p, "frequency", true);
            let n_max = self.usize(t, &p, "n_max", false);
            if let (Some(label), Some(frequency)) = (label, frequency) {
                spec.modes.push(ModeSpec {
                    label,
                    frequency,
                    n_max,
                });
            }
        }
        let qubits = self.tables(root, "qubits");
        expected += qubits.len();
        for (p, t) in qubits {
            self.known(t, &p, &["label", "frequency"]);
            let label = self.string(t, &p, "label", true).map(str::to_string);
            let frequency = self.f64(t, &p, "frequency", true);
            if let (Some(label), Some(frequency)) = (label, frequency) {
                spec.qubits.push(QubitSpec { label, frequency });
            }
        }
        let couplings = self.tables(root, "couplings");
        expected += couplings.len();
        for (p, t) in couplings {
            self.known(t, &p, &["mode", "qubit", "g", "theta"]);
            let mode = self.string(t, &p, "mode", true).map(str::to_string);
            let qubit = self.string(t, &p, "qubit", true).map(str::to_string);
            let g = self.f64(t, &p, "g", true);
            let theta = self.f64(t, &p, "theta", false).unwrap_or(0.0);
            if let (Some(mode), Some(qubit), Some(g)) = (mode, qubit, g) {
                spec.couplings.push(CouplingSpec {
                    mode,
                    qubit,
                    g,
                    theta,
                });
            }
        }
        if spec.modes.len() + spec.qubits.len() + spec.couplings.len() == expected {
            self.errors.extend(spec.violations());
        }
        model.map(|_| spec)
    }

    fn check_shape(&mut self, system: Option<&SystemSpec>, path: &str, state: &BasisState) {
        let Some(s) = system else { return };
        if state.occupations.len() != s.modes.len() || state.excited.len() != s.qubits.len() {
            self.fail(
                path,
                format!(
                    "{state} does not match {} mode(s) and {} qubit(s)",
                    s.modes.len(),
                    s.qubits.len()
                ),
            );
        }
    }
}

fn from_table(root: &Table) -> Result<RunConfig, ConfigError> {
    let mut r = Reader { errors: Vec::new() };
    r.known(
        root,
        "",
        &[
            "model",
            "output",
            "modes",
            "qubits",
            "couplings",
            "geff",
            "spectrum",
            "evolve",
            "catalog",
            "classical",
            "verify",
        ],
    );
    let system = r.system(root);
    let output = r.string(root, "", "output", false).map(str::to_string);
    let sys = system.as_ref();

    let geff = r.section(root, "geff").and_then(|t| {
        let p = "geff";
        r.known(t, p, &["initial", "final", "max_depth"]);
        let initial = r.parsed::<BasisState>(t, p, "initial", true);
        let final_state = r.parsed::<BasisState>(t, p, "final", true);
        let max_depth = r.usize(t, p, "max_depth", false).unwrap_or(DEFAULT_MAX_DEPTH);
        if max_depth == 0 {
            r.fail("geff.max_depth", "must be >= 1");
        }
        if let Some(s) = &initial {
            r.check_shape(sys, "geff.initial", s);
        }
        if let Some(s) = &final_state {
            r.check_shape(sys, "geff.final", s);
        }
        Some(GeffSection {
            initial: initial?,
            final_state: final_state?,
            max_depth,
        })
    });

    let spectrum = r.section(root, "spectrum").and_then(|t| {
        let p = "spectrum";
        r.known(t, p, &["parameter", "lo", "hi", "points", "tracked", "models"]);
        let parameter = r.parsed::<SweptParameter>(t, p, "parameter", true);
        let lo = r.f64(t, p, "lo", true);
        let hi = r.f64(t, p, "hi", true);
        let points = r.usize(t, p, "points", true);
        let tracked = r.states(t, p, "tracked");
        let models = match r.array(t, p, "models", false) {
            None => Some(InteractionModel::ALL.to_vec()),
            Some(items) => {
                let mut out = Vec::new();
                for (k, v) in items.iter().enumerate() {
                    let path = format!("spectrum.models[{k}]");
                    match v.as_str().map(str::parse::<InteractionModel>) {
                        Some(Ok(m)) => out.push(m),
                        Some(Err(e)) => r.fail(&path, e),
                        None => r.fail(&path, format!("expected a string, got {}", type_name(v))),
                    }
                }
                if items.is_empty() {
                    r.fail("spectrum.models", "must not be empty");
                }
                (out.len() == items.len()).then_some(out)
            }
        };
        if let (Some(lo), Some(hi)) = (lo, hi) {
            if !(lo < hi) {
                r.fail("spectrum.hi", format!("must exceed lo ({lo}), got {hi}"));
            }
        }
        if points.is_some_and(|n| n < 3) {
            r.fail("spectrum.points", "need at least 3");
        }
        if let Some(ts) = &tracked {
            if ts.len() < 2 {
                r.fail("spectrum.tracked", "need at least two bare states");
            }
            for (k, s) in ts.iter().enumerate() {
                r.check_shape(sys, &format!("spectrum.tracked[{k}]"), s);
            }
        }
        Some(SpectrumSection {
            parameter: parameter?,
            lo: lo?,
            hi: hi?,
            points: points?,
            tracked: tracked?,
            models: models?,
        })
    });

    let evolve = r.section(root, "evolve").and_then(|t| {
        let p = "evolve";
        r.known(t, p, &["initial", "targets", "total_time", "samples"]);
        let initial = r.parsed::<BasisState>(t, p, "initial", true);
        let targets = r.states(t, p, "targets");
        let total_time = r.f64(t, p, "total_time", true);
        let samples = r.usize(t, p, "samples", true);
        if total_time.is_some_and(|x| !(x.is_finite() && x > 0.0)) {
            r.fail("evolve.total_time", "must be > 0");
        }
        if samples.is_some_and(|n| n < 16) {
            r.fail("evolve.samples", "need at least 16");
        }
        if let Some(s) = &initial {
            r.check_shape(sys, "evolve.initial", s);
        }
        if let Some(ts) = &targets {
            if ts.is_empty() {
                r.fail("evolve.targets", "must not be empty");
            }
            for (k, s) in ts.iter().enumerate() {
                r.check_shape(sys, &format!("evolve.targets[{k}]"), s);
            }
        }
        Some(EvolveSection {
            initial: initial?,
            targets: targets?,
            total_time: total_time?,
            samples: samples?,
        })
    });

    let catalog = r.section(root, "catalog").map(|t| {
        let p = "catalog";
        r.known(t, p, &["category", "degenerate", "model", "max_order"]);
        let max_order = r.usize(t, p, "max_order", false).unwrap_or(DEFAULT_MAX_ORDER);
        if max_order < 3 {
            r.fail("catalog.max_order", "must be >= 3");
        }
        CatalogSection {
            category: r.parsed(t, p, "category", false),
            degenerate: r.bool(t, p, "degenerate"),
            model: r.parsed(t, p, "model", false),
            max_order,
        }
    });

    let classical = r.section(root, "classical").map(|t| {
        let p = "classical";
        r.known(t, p, &["tones", "chi1", "chi2", "chi3", "eps0"]);
        let d = Susceptibilities::default();
        let chi = Susceptibilities {
            chi1: r.f64(t, p, "chi1", false).unwrap_or(d.chi1),
            chi2: r.f64(t, p, "chi2", false).unwrap_or(d.chi2),
            chi3: r.f64(t, p, "chi3", false).unwrap_or(d.chi3),
            eps0: r.f64(t, p, "eps0", false).unwrap_or(d.eps0),
        };
        let mut tones = Vec::new();
        for (k, v) in r
            .array(t, p, "tones", true)
            .unwrap_or_default()
            .iter()
            .enumerate()
        {
            let path = format!("classical.tones[{k}]");
            let Value::Table(tt) = v else {
                r.fail(&path, format!("expected a table, got {}", type_name(v)));
                continue;
            };
            r.known(tt, &path, &["amplitude", "frequency"]);
            let amplitude = r.f64(tt, &path, "amplitude", true);
            let frequency = r.f64(tt, &path, "frequency", true);
            if frequency.is_some_and(|w| w < 0.0) {
                r.fail(&format!("{path}.frequency"), "must be >= 0");
            }
            if let (Some(amplitude), Some(frequency)) = (amplitude, frequency) {
                tones.push(Tone { amplitude, frequency });
            }
        }
        ClassicalSection { tones, chi }
    });

    let verify = r.section(root, "verify").map(|t| {
        let p = "verify";
        r.known(t, p, &["processes", "n"]);
        let mut processes = Vec::new();
        for (k, v) in r
            .array(t, p, "processes", false)
            .unwrap_or_default()
            .iter()
            .enumerate()
        {
            match v.as_str() {
                Some(s) => processes.push(s.to_string()),
                None => r.fail(&format!("verify.processes[{k}]"), "expected a string"),
            }
        }
        VerifySection {
            processes,
            n: r.usize(t, p, "n", false).unwrap_or(DEFAULT_TEMPLATE_N),
        }
    });

    if r.errors.is_empty() {
        Ok(RunConfig {
            system,
            output,
            geff,
            spectrum,
            evolve,
            catalog,
            classical,
            verify,
        })
    } else {
        Err(ConfigError::Invalid(r.errors))
    }
}

fn states_value(states: &[BasisState]) -> Value {
    Value::Array(states.iter().map(|s| Value::String(s.to_string())).collect())
}

fn table<const N: usize>(entries: [(&str, Value); N]) -> Value {
    Value::Table(entries.into_iter().map(|(k, v)| (k.to_string(), v)).collect())
}

/// Writes `config` back out as TOML; `parse_config` inverts it exactly.
pub fn emit_config(config: &RunConfig) -> String {
    let mut root = Table::new();
    if let Some(s) = &config.system {
        root.insert("model".into(), Value::String(s.model.name().into()));
        let modes = s
            .modes
            .iter()
            .map(|m| {
                let mut t = Table::new();
                t.insert("label".into(), Value::String(m.label.clone()));
                t.insert("frequency".into(), Value::Float(m.frequency));
                if let Some(n) = m.n_max {
                    t.insert("n_max".into(), Value::Integer(n as i64));
                }
                Value::Table(t)
            })
            .collect();
        root.insert("modes".into(), Value::Array(modes));
        let qubits = s
            .qubits
            .iter()
            .map(|q| {
                table([
                    ("label", Value::String(q.label.clone())),
                    ("frequency", Value::Float(q.frequency)),
                ])
            })
            .collect();
        root.insert("qubits".into(), Value::Array(qubits));
        let couplings = s
            .couplings
            .iter()
            .map(|c| {
                table([
                    ("mode", Value::String(c.mode.clone())),
                    ("qubit", Value::String(c.qubit.clone())),
                    ("g", Value::Float(c.g)),
                    ("theta", Value::Float(c.theta)),
                ])
            })
            .collect();
        root.insert("couplings".into(), Value::Array(couplings));
    }
    if let Some(o) = &config.output {
        root.insert("output".into(), Value::String(o.clone()));
    }
    if let Some(g) = &config.geff {
        root.insert(
            "geff".into(),
            table([
                ("initial", Value::String(g.initial.to_string())),
                ("final", Value::String(g.final_state.to_string())),
                ("max_depth", Value::Integer(g.max_depth as i64)),
            ]),
        );
    }
    if let Some(s) = &config.spectrum {
        root.insert(
            "spectrum".into(),
            table([
                ("parameter", Value::String(s.parameter.to_string())),
                ("lo", Value::Float(s.lo)),
                ("hi", Value::Float(s.hi)),
                ("points", Value::Integer(s.points as i64)),
                ("tracked", states_value(&s.tracked)),
                (
                    "models",
                    Value::Array(s.models.iter().map(|m| Value::String(m.name().into())).collect()),
                ),
            ]),
        );
    }
    if let Some(e) = &config.evolve {
        root.insert(
            "evolve".into(),
            table([
                ("initial", Value::String(e.initial.to_string())),
                ("targets", states_value(&e.targets)),
                ("total_time", Value::Float(e.total_time)),
                ("samples", Value::Integer(e.samples as i64)),
            ]),
        );
    }
    if let Some(c) = &config.catalog {
        let mut t = Table::new();
        if let Some(cat) = c.category {
            t.insert("category".into(), Value::String(cat.name().into()));
        }
        if let Some(d) = c.degenerate {
            t.insert("degenerate".into(), Value::Boolean(d));
        }
        if let Some(m) = c.model {
            t.insert("model".into(), Value::String(m.name().into()));
        }
        t.insert("max_order".into(), Value::Integer(c.max_order as i64));
        root.insert("catalog".into(), Value::Table(t));
    }
    if let Some(c) = &config.classical {
        let tones = c
            .tones
            .iter()
            .map(|t| {
                table([
                    ("amplitude", Value::Float(t.amplitude)),
                    ("frequency", Value::Float(t.frequency)),
                ])
            })
            .collect();
        root.insert(
            "classical".into(),
            table([
                ("tones", Value::Array(tones)),
                ("chi1", Value::Float(c.chi.chi1)),
                ("chi2", Value::Float(c.chi.chi2)),
                ("chi3", Value::Float(c.chi.chi3)),
                ("eps0", Value::Float(c.chi.eps0)),
            ]),
        );
    }
    if let Some(v) = &config.verify {
        root.insert(
            "verify".into(),
            table([
                (
                    "processes",
                    Value::Array(v.processes.iter().map(|p| Value::String(p.clone())).collect()),
                ),
                ("n", Value::Integer(v.n as i64)),
            ]),
        );
    }
    toml::to_string(&root).expect("a TOML table always serializes")
}
