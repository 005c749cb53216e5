//! End-to-end acceptance checks. Prints one PASS/FAIL line per criterion
//! and exits nonzero if any fails.

use std::f64::consts::FRAC_PI_6;
use std::process::ExitCode;
use std::sync::Arc;
use std::time::{Duration, Instant};

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use qnlo_core::catalog::{
    list_processes, oracle_suite, run_oracle_case, verify_default, Category, ProcessFilter, Source,
};
use qnlo_core::classical::{
    evaluate_components, evaluate_direct, magnitude_bound, polarization_spectrum, Susceptibilities, Tone,
};
use qnlo_core::dynamics::{evolve, extract_oscillation, EvolutionSpec, Propagator};
use qnlo_core::hamiltonian::{parity_operator, total_number_operator};
use qnlo_core::perturbation::{effective_coupling, effective_coupling_for, stimulated_ratio};
use qnlo_core::spectra::{find_avoided_crossing, SweepSpec};
use qnlo_core::{BasisState, Hamiltonian, InteractionModel, SystemSpec};

type Outcome = Result<String, String>;

/// `(name, check, time budget in seconds)`.
type Criterion = (&'static str, fn() -> Outcome, u64);

fn st(s: &str) -> BasisState {
    s.parse().unwrap()
}

fn ensure(ok: bool, detail: String) -> Outcome {
    if ok {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn oracle_suite_agrees() -> Outcome {
    let mut failed = Vec::new();
    let mut worst: f64 = 0.0;
    let mut points = 0;
    let suite = oracle_suite();
    for case in &suite {
        let out = run_oracle_case(case).map_err(|e| format!("{}: {e}", case.id))?;
        worst = worst.max(out.worst_error());
        points += out.points.len();
        if !out.passed() {
            failed.push(out.id);
        }
    }
    ensure(
        failed.is_empty() && suite.len() == 12,
        format!(
            "{} forms, {points} points, worst relative error {worst:.1e}{}",
            suite.len(),
            if failed.is_empty() {
                String::new()
            } else {
                format!(", failing: {}", failed.join(", "))
            }
        ),
    )
}

fn interference_zeros() -> Outcome {
    let g: f64 = 0.05;
    let three_qubit = SystemSpec::new(InteractionModel::Rabi)
        .mode("a", 3.0, None)
        .qubit("q1", 1.0)
        .qubit("q2", 1.0)
        .qubit("q3", 1.0)
        .coupling("a", "q1", g, 0.0)
        .coupling("a", "q2", g, 0.0)
        .coupling("a", "q3", g, 0.0);
    let hyper_raman = SystemSpec::new(InteractionModel::Rabi)
        .mode("a", 3.3, None)
        .mode("b", 1.3, None)
        .qubit("q1", 1.0)
        .qubit("q2", 1.0)
        .coupling("a", "q1", g, 0.0)
        .coupling("a", "q2", g, 0.0)
        .coupling("b", "q1", g, 0.0)
        .coupling("b", "q2", g, 0.0);
    let mut lines = Vec::new();
    let mut ok = true;
    for (name, spec, i, f) in [
        ("three-qubit THG", three_qubit, "0,e,e,e", "1,g,g,g"),
        ("hyper-Raman II", hyper_raman, "0,1,e,e", "1,0,g,g"),
    ] {
        let eff = effective_coupling_for(&spec, &st(i), &st(f)).map_err(|e| e.to_string())?;
        let largest = eff
            .paths
            .iter()
            .map(|p| p.contribution.norm())
            .fold(0.0, f64::max);
        let floor = 1e-4 * g.powi(eff.order as i32 - 1);
        ok &= eff.magnitude() < 1e-12 && largest > floor;
        lines.push(format!(
            "{name} |g_eff| = {:.1e}, largest path {largest:.1e} (floor {floor:.1e})",
            eff.magnitude()
        ));
    }
    ensure(ok, lines.join("; "))
}

fn two_resonator_sweep(model: InteractionModel, lo: f64, hi: f64, tracked: [&str; 2]) -> SweepSpec {
    let ga = 0.07;
    SweepSpec {
        system: SystemSpec::new(model)
            .mode("a", 2.0, Some(8))
            .mode("b", 1.0, Some(8))
            .qubit("q", 1.6)
            .coupling("a", "q", ga, FRAC_PI_6)
            .coupling("b", "q", 2.0 * ga, FRAC_PI_6),
        parameter: "a".parse().unwrap(),
        lo,
        hi,
        points: 41,
        tracked: tracked.iter().map(|s| st(s)).collect(),
    }
}

fn two_resonator_crossing() -> Outcome {
    let mut lines = Vec::new();
    let mut ok = true;
    let (a, b) = (st("1,0,g"), st("0,2,g"));
    for model in InteractionModel::ALL {
        let r = find_avoided_crossing(
            &two_resonator_sweep(model, 1.85, 2.05, ["1,0,g", "0,2,g"]),
            &a,
            &b,
        )
        .map_err(|e| format!("{model}: {e}"))?;
        match model {
            InteractionModel::GeneralizedRabi => {
                let predicted = r.predicted.unwrap_or(f64::NAN);
                let dev = r.relative_deviation().unwrap_or(f64::INFINITY);
                ok &= dev < 0.25 && (predicted - 9.950e-3).abs() < 1e-5;
                lines.push(format!(
                    "{model} gap {:.4e} at ω_a = {:.4}, 2|g_eff| = {predicted:.4e}, deviation {:.1}%",
                    r.gap,
                    r.parameter,
                    100.0 * dev
                ));
            }
            _ => {
                ok &= r.gap < 1e-6;
                lines.push(format!("{model} gap {:.1e}", r.gap));
            }
        }
    }
    let (a, b) = (st("1,0,g"), st("0,0,e"));
    for model in InteractionModel::ALL {
        let r = find_avoided_crossing(&two_resonator_sweep(model, 1.4, 1.8, ["1,0,g", "0,0,e"]), &a, &b)
            .map_err(|e| format!("{model} |1,0,g⟩-|0,0,e⟩: {e}"))?;
        ok &= r.gap > 0.07 && (r.parameter - 1.6).abs() < 0.05;
        lines.push(format!("|1,0,g⟩-|0,0,e⟩ {model} gap {:.3e}", r.gap));
    }
    ensure(ok, lines.join("; "))
}

fn two_photon_dynamics() -> Outcome {
    let (g, wq) = (0.05, 1.0);
    let system = SystemSpec::new(InteractionModel::GeneralizedRabi)
        .mode("a", 0.5, Some(10))
        .qubit("q", wq)
        .coupling("a", "q", g, FRAC_PI_6);
    let (i, f) = (st("0,e"), st("2,g"));
    let sweep = SweepSpec {
        system: system.clone(),
        parameter: "a".parse().unwrap(),
        lo: 0.48,
        hi: 0.53,
        points: 41,
        tracked: vec![i.clone(), f.clone()],
    };
    let crossing = find_avoided_crossing(&sweep, &i, &f).map_err(|e| e.to_string())?;
    let geff = effective_coupling_for(&system, &f, &i)
        .map_err(|e| e.to_string())?
        .magnitude();

    let mut dressed = system.clone();
    *dressed.frequency_mut("a").unwrap() = crossing.parameter;
    let h = Hamiltonian::build(&dressed).map_err(|e| e.to_string())?;
    let period = std::f64::consts::PI / geff;
    let trace = evolve(
        &h.total,
        &EvolutionSpec {
            initial: i,
            targets: vec![f],
            total_time: 4.0 * period,
            samples: 4096,
        },
    )
    .map_err(|e| e.to_string())?;
    let osc = extract_oscillation(&trace.times, &trace.populations[0]).map_err(|e| e.to_string())?;
    let dev = (osc.frequency - 2.0 * geff).abs() / (2.0 * geff);
    ensure(
        osc.max_population > 0.9 && dev < 0.15,
        format!(
            "dressed resonance ω_a = {:.5}, max P = {:.4}, frequency {:.5e} vs 2|g_eff| = {:.5e} ({:.1}%)",
            crossing.parameter,
            osc.max_population,
            osc.frequency,
            2.0 * geff,
            100.0 * dev
        ),
    )
}

fn stimulated_scaling() -> Outcome {
    let spec = SystemSpec::new(InteractionModel::GeneralizedRabi)
        .mode("a", 3.0, Some(12))
        .mode("b", 2.0, Some(12))
        .qubit("q", 1.0)
        .coupling("a", "q", 0.05, FRAC_PI_6)
        .coupling("b", "q", 0.05, FRAC_PI_6);
    let h = Hamiltonian::build(&spec).map_err(|e| e.to_string())?;
    let mut worst: f64 = 0.0;
    for n in [0usize, 1, 3, 8] {
        let r = stimulated_ratio(&h.hint, n).map_err(|e| e.to_string())?;
        let expect = ((n + 1) as f64).sqrt();
        worst = worst.max((r - expect).abs() / expect);
    }
    ensure(
        worst < 1e-10,
        format!("n = 0, 1, 3, 8: worst relative error {worst:.1e}"),
    )
}

fn sshg_longitudinal_cancellation() -> Outcome {
    let ga = 0.07;
    let spec = SystemSpec::new(InteractionModel::GeneralizedRabi)
        .mode("a", 2.0, Some(3))
        .mode("b", 1.0, Some(4))
        .qubit("q", 1.6)
        .coupling("a", "q", ga, FRAC_PI_6)
        .coupling("b", "q", 2.0 * ga, FRAC_PI_6);
    let h = Hamiltonian::build(&spec).map_err(|e| e.to_string())?;
    let eff = effective_coupling(&h.hint, &st("0,2,g"), &st("1,0,g")).map_err(|e| e.to_string())?;
    let longitudinal: Vec<Complex64> = eff
        .paths
        .iter()
        .filter(|p| p.states.iter().all(|&s| !h.space.state(s).excited[0]))
        .map(|p| p.contribution)
        .collect();
    let sum: Complex64 = longitudinal.iter().sum();
    let smallest = longitudinal
        .iter()
        .map(|c| c.norm())
        .fold(f64::INFINITY, f64::min);
    ensure(
        longitudinal.len() == 3 && sum.norm() < 1e-12 && smallest > 0.0,
        format!(
            "{} σ_z-only paths of {}, sum {:.1e}, smallest term {smallest:.2e}",
            longitudinal.len(),
            eff.path_count,
            sum.norm()
        ),
    )
}

fn random_spec(rng: &mut ChaCha8Rng, model: InteractionModel) -> SystemSpec {
    let modes = rng.random_range(1..=2);
    let qubits = rng.random_range(1..=2);
    let mut spec = SystemSpec::new(model);
    for m in 0..modes {
        spec = spec.mode(
            &format!("m{m}"),
            rng.random_range(0.5..2.0),
            Some(rng.random_range(2..=4)),
        );
    }
    for q in 0..qubits {
        spec = spec.qubit(&format!("q{q}"), rng.random_range(0.5..2.0));
    }
    for m in 0..modes {
        for q in 0..qubits {
            spec = spec.coupling(
                &format!("m{m}"),
                &format!("q{q}"),
                rng.random_range(0.0..0.3),
                rng.random_range(0.0..std::f64::consts::PI),
            );
        }
    }
    spec
}

fn conservation() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let (mut comm_jc, mut comm_rabi, mut norm_dev, mut energy_dev) = (0.0f64, 0.0f64, 0.0f64, 0.0f64);
    for k in 0..20 {
        let model = InteractionModel::ALL[k % 3];
        let spec = random_spec(&mut rng, model);
        let h = Hamiltonian::build(&spec).map_err(|e| e.to_string())?;
        let space: &Arc<_> = &h.space;

        let jc = Hamiltonian::build(&spec.clone().with_model(InteractionModel::JaynesCummings))
            .map_err(|e| e.to_string())?;
        comm_jc = comm_jc.max(jc.total.commutator_norm(&total_number_operator(space)));
        let rabi = Hamiltonian::build(&spec.clone().with_model(InteractionModel::Rabi))
            .map_err(|e| e.to_string())?;
        comm_rabi = comm_rabi.max(rabi.total.commutator_norm(&parity_operator(space)));

        let prop = Propagator::new(&h.total).map_err(|e| e.to_string())?;
        let start = rng.random_range(0..space.dimension());
        let mut psi0 = vec![Complex64::new(0.0, 0.0); space.dimension()];
        psi0[start] = Complex64::new(1.0, 0.0);
        let e0 = h.total.expectation(&psi0);
        let coeffs = prop.coefficients(&psi0);
        for t in [0.5, 7.3, 41.0, 250.0] {
            let psi = prop.state_at(&coeffs, t);
            let norm: f64 = psi.iter().map(|x| x.norm_sqr()).sum();
            norm_dev = norm_dev.max((norm - 1.0).abs());
            energy_dev = energy_dev.max((h.total.expectation(&psi) - e0).abs());
        }
    }
    ensure(
        comm_jc == 0.0 && comm_rabi == 0.0 && norm_dev < 1e-10 && energy_dev < 1e-10,
        format!(
            "20 specs: ‖[H_JC,N]‖ = {comm_jc:e}, ‖[H_Rabi,Π]‖ = {comm_rabi:e}, norm drift {norm_dev:.1e}, energy drift {energy_dev:.1e}"
        ),
    )
}

fn catalog_consistency() -> Outcome {
    let count = |s: Source| {
        list_processes(&ProcessFilter {
            source: Some(s),
            ..Default::default()
        })
        .len()
    };
    let (three, four) = (count(Source::ThreeWaveSummary), count(Source::FourWaveSummary));
    let all = list_processes(&ProcessFilter::default());
    let mut failed = Vec::new();
    for e in &all {
        match verify_default(e) {
            Ok(r) if r.passed() => {}
            Ok(_) => failed.push(e.id.clone()),
            Err(err) => failed.push(format!("{} ({err})", e.id)),
        }
    }
    let three_wave_gr = all
        .iter()
        .filter(|e| e.category == Category::ThreeWave)
        .all(|e| e.model == InteractionModel::GeneralizedRabi);
    let type_one_jc = ["fwm-i-3r1q", "fwm-i-4r1q", "fwm-i-2r2q", "fwm-i-1r3q"]
        .iter()
        .all(|id| {
            all.iter()
                .find(|e| e.id == *id)
                .is_some_and(|e| e.model == InteractionModel::JaynesCummings)
        });
    ensure(
        three >= 12 && four >= 20 && failed.is_empty() && three_wave_gr && type_one_jc,
        format!(
            "{three} three-wave rows (12 required), {four} four-wave rows (20 required), {} entries verified{}",
            all.len(),
            if failed.is_empty() { String::new() } else { format!(", failing: {}", failed.join(", ")) }
        ),
    )
}

fn classical_mixer() -> Outcome {
    let tone = |a, w| Tone {
        amplitude: a,
        frequency: w,
    };
    let pairs = |tones: &[Tone], chi: &Susceptibilities| -> Vec<(f64, f64)> {
        polarization_spectrum(tones, chi)
            .iter()
            .map(|c| (c.frequency, c.amplitude))
            .collect()
    };
    let chi2 = Susceptibilities {
        chi2: 1.0,
        ..Default::default()
    };
    let chi3 = Susceptibilities {
        chi3: 1.0,
        ..Default::default()
    };
    let shg = pairs(&[tone(1.0, 1.0)], &chi2) == vec![(0.0, 0.5), (2.0, 0.5)];
    let thg = pairs(&[tone(1.0, 1.0)], &chi3) == vec![(1.0, 0.75), (3.0, 0.25)];
    let two_tone = pairs(&[tone(0.7, 1.0), tone(1.3, 2.5)], &chi2).len();

    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let mut worst: f64 = 0.0;
    for _ in 0..20 {
        let tones: Vec<Tone> = (0..rng.random_range(1..=3))
            .map(|_| tone(rng.random_range(-2.0..2.0), rng.random_range(0.0..5.0)))
            .collect();
        let chi = Susceptibilities {
            chi1: rng.random_range(-1.0..1.0),
            chi2: rng.random_range(-1.0..1.0),
            chi3: rng.random_range(-1.0..1.0),
            eps0: rng.random_range(0.1..2.0),
        };
        let comps = polarization_spectrum(&tones, &chi);
        let scale = magnitude_bound(&tones, &chi).max(1.0);
        for _ in 0..64 {
            let t = rng.random_range(0.0..50.0);
            let d = (evaluate_components(&comps, t) - evaluate_direct(&tones, &chi, t)).abs() / scale;
            worst = worst.max(d);
        }
    }
    ensure(
        shg && thg && two_tone == 5 && worst < 1e-12,
        format!("χ⁽²⁾ table {shg}, χ⁽³⁾ table {thg}, two-tone components {two_tone}, pointwise error {worst:.1e} (scaled)"),
    )
}

fn main() -> ExitCode {
    let criteria: [Criterion; 9] = [
        ("closed-form oracle suite", oracle_suite_agrees, 10),
        ("destructive-interference zeros", interference_zeros, 5),
        ("two-resonator avoided crossing", two_resonator_crossing, 60),
        ("two-photon Rabi dynamics", two_photon_dynamics, 30),
        ("stimulated Raman scaling", stimulated_scaling, 10),
        (
            "SSHG longitudinal-path cancellation",
            sshg_longitudinal_cancellation,
            2,
        ),
        ("conservation invariants", conservation, 30),
        ("catalog completeness and consistency", catalog_consistency, 20),
        ("classical mixer", classical_mixer, 1),
    ];
    let mut all_ok = true;
    for (k, (name, run, budget)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = run();
        let elapsed = start.elapsed();
        let in_time = elapsed <= Duration::from_secs(*budget);
        let (ok, detail) = match outcome {
            Ok(d) => (in_time, d),
            Err(d) => (false, d),
        };
        all_ok &= ok;
        println!(
            "criterion {} {}: {} [{:.2}s of {}s] {}",
            k + 1,
            name,
            if ok { "PASS" } else { "FAIL" },
            elapsed.as_secs_f64(),
            budget,
            detail
        );
    }
    if all_ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
