use std::fmt::Write as _;

use rayon::prelude::*;

use qnlo_core::catalog::{
    find_process, list_processes, list_processes_up_to, oracle_suite, run_oracle_case, verify_default,
    verify_entry, EntryReport, ProcessFilter, DEFAULT_TEMPLATE_N,
};
use qnlo_core::classical::polarization_spectrum;
use qnlo_core::dynamics::{evolve, extract_oscillation, EvolutionSpec};
use qnlo_core::perturbation::{enumerate_paths, shortest_order_within};
use qnlo_core::spectra::{find_avoided_crossing, state_slug, track_levels, SweepSpec};
use qnlo_core::{Hamiltonian, SystemSpec};

use crate::config::{
    CatalogSection, ClassicalSection, EvolveSection, GeffSection, RunConfig, SpectrumSection, VerifySection,
};
use crate::error::CliError;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Command {
    Geff,
    Spectrum,
    Evolve,
    Catalog,
    Classical,
    Verify,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::Geff => "geff",
            Command::Spectrum => "spectrum",
            Command::Evolve => "evolve",
            Command::Catalog => "catalog",
            Command::Classical => "classical",
            Command::Verify => "verify",
        }
    }
}

#[derive(Clone, Copy, Debug, Default)]
pub struct RunOptions {
    pub explain: bool,
    pub all_closed_forms: bool,
}

/// What a command produced. `body` is the artifact; `notes` go to stderr.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct Report {
    pub body: String,
    pub notes: Vec<String>,
    /// A check ran and failed.
    pub failed: bool,
}

/// Floats in CSV artifacts: 17 significant digits.
pub fn num(x: f64) -> String {
    format!("{x:.16e}")
}

fn section<T>(s: &Option<T>, command: Command) -> Result<&T, CliError> {
    s.as_ref().ok_or_else(|| {
        CliError::config(format!(
            "{0}: the `{0}` command needs a [{0}] section",
            command.name()
        ))
    })
}

fn system(config: &RunConfig, command: Command) -> Result<&SystemSpec, CliError> {
    config
        .system
        .as_ref()
        .ok_or_else(|| CliError::config(format!("modes: the `{}` command needs a system", command.name())))
}

pub fn run(command: Command, config: &RunConfig, opts: RunOptions) -> Result<Report, CliError> {
    match command {
        Command::Geff => geff(system(config, command)?, section(&config.geff, command)?, opts),
        Command::Spectrum => spectrum(
            system(config, command)?,
            section(&config.spectrum, command)?,
            opts,
        ),
        Command::Evolve => evolve_cmd(system(config, command)?, section(&config.evolve, command)?, opts),
        Command::Catalog => catalog(&config.catalog.clone().unwrap_or_default(), opts),
        Command::Classical => classical(section(&config.classical, command)?, opts),
        Command::Verify => {
            let explicit = config.verify.is_some();
            verify(&config.verify.clone().unwrap_or_default(), explicit, opts)
        }
    }
}

fn geff(system: &SystemSpec, sec: &GeffSection, opts: RunOptions) -> Result<Report, CliError> {
    let (i, f) = (&sec.initial, &sec.final_state);
    let mut spec = system.clone();
    spec.fill_truncation(&[i.clone(), f.clone()]);
    let h = Hamiltonian::build(&spec)?;
    let space = &h.space;
    let detuning = space.bare_energy(i)? - space.bare_energy(f)?;
    let order = shortest_order_within(&h.hint, i, f, sec.max_depth)?;
    let (paths, excluded) = enumerate_paths(&h.hint, i, f, order)?;
    let value: num_complex::Complex64 = paths.iter().map(|p| p.contribution).sum();

    let mut body = String::new();
    let mut line = |k: &str, v: String| writeln!(body, "{k}={v}").unwrap();
    line("initial", i.to_string());
    line("final", f.to_string());
    line("model", spec.model.to_string());
    line("dimension", space.dimension().to_string());
    line("detuning", num(detuning));
    line("order", order.to_string());
    line("paths", paths.len().to_string());
    line("g_eff_re", num(value.re));
    line("g_eff_im", num(value.im));
    line("g_eff_abs", num(value.norm()));
    let excluded: Vec<String> = excluded.iter().map(|&k| space.label(k)).collect();
    line("excluded", excluded.join(" "));
    if opts.explain {
        for (k, p) in paths.iter().enumerate() {
            line(&format!("path.{k}"), p.display(space).to_string());
        }
    }
    let mut notes = Vec::new();
    if detuning.abs() > 1e-6 {
        notes.push(format!(
            "endpoints are detuned by {detuning:e}; the coupling is off resonance"
        ));
    }
    Ok(Report {
        body,
        notes,
        failed: false,
    })
}

fn spectrum(system: &SystemSpec, sec: &SpectrumSection, opts: RunOptions) -> Result<Report, CliError> {
    let sweeps: Vec<SweepSpec> = sec
        .models
        .iter()
        .map(|&m| SweepSpec {
            system: system.clone().with_model(m),
            parameter: sec.parameter.clone(),
            lo: sec.lo,
            hi: sec.hi,
            points: sec.points,
            tracked: sec.tracked.clone(),
        })
        .collect();
    let results = sweeps
        .iter()
        .map(track_levels)
        .collect::<qnlo_core::Result<Vec<_>>>()?;
    let pair = sec.tracked.len() == 2;

    let slugs: Vec<String> = sec.tracked.iter().map(state_slug).collect();
    let mut header = vec![sec.parameter.to_string()];
    for m in &sec.models {
        header.extend(slugs.iter().map(|s| format!("{m}:{s}")));
        if pair {
            header.push(format!("{m}:gap"));
        }
    }
    let mut body = header.join(",");
    body.push('\n');
    for (k, x) in results[0].values.iter().enumerate() {
        body.push_str(&num(*x));
        for r in &results {
            for e in &r.levels[k] {
                write!(body, ",{}", num(*e)).unwrap();
            }
            if pair {
                write!(body, ",{}", num((r.levels[k][0] - r.levels[k][1]).abs())).unwrap();
            }
        }
        body.push('\n');
    }

    let mut notes = Vec::new();
    for r in &results {
        for &(point, t) in &r.ambiguous {
            notes.push(format!(
                "ambiguous level assignment for {} at {} = {}",
                sec.tracked[t], r.parameter, r.values[point]
            ));
        }
    }
    if opts.explain && pair {
        for (m, sweep) in sec.models.iter().zip(&sweeps) {
            match find_avoided_crossing(sweep, &sec.tracked[0], &sec.tracked[1]) {
                Ok(c) => {
                    let predicted = c.predicted.map_or("none".to_string(), |p| format!("{p:.6e}"));
                    notes.push(format!(
                        "{m}: minimum gap {:.6e} at {} = {:.8}, bare resonance {:.8}, predicted 2|g_eff| {predicted}",
                        c.gap, sec.parameter, c.parameter, c.bare_resonance
                    ));
                }
                Err(e) => notes.push(format!("{m}: no avoided crossing located ({e})")),
            }
        }
    }
    Ok(Report {
        body,
        notes,
        failed: false,
    })
}

fn evolve_cmd(system: &SystemSpec, sec: &EvolveSection, opts: RunOptions) -> Result<Report, CliError> {
    let mut spec = system.clone();
    let mut states = vec![sec.initial.clone()];
    states.extend(sec.targets.iter().cloned());
    spec.fill_truncation(&states);
    let h = Hamiltonian::build(&spec)?;
    let trace = evolve(
        &h.total,
        &EvolutionSpec {
            initial: sec.initial.clone(),
            targets: sec.targets.clone(),
            total_time: sec.total_time,
            samples: sec.samples,
        },
    )?;
    let mut notes = Vec::new();
    if opts.explain {
        for (t, p) in sec.targets.iter().zip(&trace.populations) {
            match extract_oscillation(&trace.times, p) {
                Ok(o) => notes.push(format!(
                    "{t}: angular frequency {:.6e}, max population {:.6}, first peak at t = {:.6e}",
                    o.frequency, o.max_population, o.first_peak_time
                )),
                Err(e) => notes.push(format!("{t}: {e}")),
            }
        }
    }
    Ok(Report {
        body: trace.to_csv(),
        notes,
        failed: false,
    })
}

fn catalog(sec: &CatalogSection, opts: RunOptions) -> Result<Report, CliError> {
    let entries = list_processes_up_to(sec.max_order, &sec.filter());
    let mut body = String::new();
    for e in &entries {
        writeln!(body, "{e}").unwrap();
    }
    let notes = if opts.explain {
        vec![format!("{} entries", entries.len())]
    } else {
        Vec::new()
    };
    Ok(Report {
        body,
        notes,
        failed: false,
    })
}

fn classical(sec: &ClassicalSection, opts: RunOptions) -> Result<Report, CliError> {
    let comps = polarization_spectrum(&sec.tones, &sec.chi);
    let mut body = String::from("frequency,amplitude\n");
    for c in &comps {
        writeln!(body, "{},{}", num(c.frequency), num(c.amplitude)).unwrap();
    }
    let notes = if opts.explain {
        vec![format!(
            "{} components from {} tones",
            comps.len(),
            sec.tones.len()
        )]
    } else {
        Vec::new()
    };
    Ok(Report {
        body,
        notes,
        failed: false,
    })
}

fn summary(r: &EntryReport) -> String {
    let mut s = format!("{} {}", if r.passed() { "PASS" } else { "FAIL" }, r.id);
    if let (Some(order), Some(g)) = (r.order, r.g_eff) {
        write!(s, " order={order} paths={} g_eff={}", r.path_count, num(g.re)).unwrap();
    }
    for c in r.checks.iter().filter(|c| !c.passed) {
        write!(s, " failed[{}]={}", c.name, c.detail).unwrap();
    }
    s
}

fn verify(sec: &VerifySection, explicit: bool, opts: RunOptions) -> Result<Report, CliError> {
    let mut body = String::new();
    let mut failed = false;

    if opts.all_closed_forms {
        let suite = oracle_suite();
        let outcomes = suite
            .par_iter()
            .map(run_oracle_case)
            .collect::<qnlo_core::Result<Vec<_>>>()?;
        for o in &outcomes {
            failed |= !o.passed();
            writeln!(
                body,
                "{} {} points={} worst_error={:.3e}",
                if o.passed() { "PASS" } else { "FAIL" },
                o.id,
                o.points.len(),
                o.worst_error()
            )
            .unwrap();
            if opts.explain {
                for p in &o.points {
                    for (form, closed, err, ok) in &p.comparisons {
                        writeln!(
                            body,
                            "  x={} path_sum={} {form}={} error={err:.3e}{}",
                            num(p.parameter),
                            num(p.path_sum),
                            num(*closed),
                            if *ok { "" } else { " FAIL" }
                        )
                        .unwrap();
                    }
                }
            }
        }
        if !explicit {
            return Ok(Report {
                body,
                notes: Vec::new(),
                failed,
            });
        }
    }

    let entries = if sec.processes.is_empty() {
        list_processes(&ProcessFilter::default())
    } else {
        sec.processes
            .iter()
            .map(|id| find_process(id))
            .collect::<qnlo_core::Result<Vec<_>>>()?
    };
    let n = sec.n;
    let reports = entries
        .par_iter()
        .map(|e| {
            if n == DEFAULT_TEMPLATE_N {
                verify_default(e)
            } else {
                verify_entry(e, &e.default_spec()?, n)
            }
        })
        .collect::<qnlo_core::Result<Vec<_>>>()?;
    for r in &reports {
        failed |= !r.passed();
        if opts.explain {
            write!(body, "{r}").unwrap();
        } else {
            writeln!(body, "{}", summary(r)).unwrap();
        }
    }
    Ok(Report {
        body,
        notes: Vec::new(),
        failed,
    })
}
