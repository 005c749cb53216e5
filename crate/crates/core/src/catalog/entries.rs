use super::{parity_model, Category, ProcessEntry, Source};
use crate::perturbation::ClosedForm;
use crate::system::InteractionModel;

use Category::{FourWave, Higher, Other, ThreeWave};
use ClosedForm as Cf;
use InteractionModel::{GeneralizedRabi as Gr, JaynesCummings as Jc, Rabi};

struct Row<'a> {
    id: &'a str,
    name: &'a str,
    modes: &'a [&'a str],
    qubits: &'a [&'a str],
    relation: Option<&'a str>,
    transition: (&'a str, &'a str),
    model: InteractionModel,
    closed_form: Option<ClosedForm>,
}

fn row<'a>(
    id: &'a str,
    name: &'a str,
    setup: (&'a [&'a str], &'a [&'a str]),
    relation: &'a str,
    transition: (&'a str, &'a str),
    model: InteractionModel,
) -> Row<'a> {
    Row {
        id,
        name,
        modes: setup.0,
        qubits: setup.1,
        relation: Some(relation),
        transition,
        model,
        closed_form: None,
    }
}

impl Row<'_> {
    fn closed(mut self, form: ClosedForm) -> Self {
        self.closed_form = Some(form);
        self
    }

    fn build(self, category: Category, degenerate: bool, source: Source, block: &str) -> ProcessEntry {
        ProcessEntry {
            id: self.id.to_string(),
            category,
            degenerate,
            name: self.name.to_string(),
            source,
            reference: format!("{}: {}", source.title(), block),
            mode_symbols: self.modes.iter().map(|s| s.to_string()).collect(),
            qubit_symbols: self.qubits.iter().map(|s| s.to_string()).collect(),
            relation: self.relation.map(|r| r.parse().expect("static relation")),
            initial: self.transition.0.parse().expect("static template"),
            final_state: self.transition.1.parse().expect("static template"),
            model: self.model,
            closed_form: self.closed_form,
        }
    }
}

const A: &[&str] = &["a"];
const AB: &[&str] = &["a", "b"];
const ABC: &[&str] = &["a", "b", "c"];
const ABCD: &[&str] = &["a", "b", "c", "d"];
const Q: &[&str] = &["q"];
const QQ: &[&str] = &["q", "q"];
const QQQ: &[&str] = &["q", "q", "q"];
const Q12: &[&str] = &["q1", "q2"];
const Q123: &[&str] = &["q1", "q2", "q3"];

fn three_wave() -> Vec<ProcessEntry> {
    let src = Source::ThreeWaveSummary;
    let mut out = Vec::new();

    let shg = "second-harmonic generation";
    let sshg = "second-subharmonic generation";
    for r in [
        row("shg-1r1q", shg, (A, Q), "q = 2a", ("2,g", "0,e"), Gr).closed(Cf::TwoPhotonRabi),
        row("shg-2r1q", shg, (AB, Q), "a = 2b", ("0,2,g", "1,0,g"), Gr).closed(Cf::SshgTwoResonator),
        row("shg-1r2q", shg, (A, QQ), "a = 2q", ("0,e,e", "1,g,g"), Gr).closed(Cf::PhotonToTwoQubits),
        row("sshg-1r1q", sshg, (A, Q), "q = 2a", ("0,e", "2,g"), Gr).closed(Cf::TwoPhotonRabiResonant),
        row("sshg-2r1q", sshg, (AB, Q), "a = 2b", ("1,0,g", "0,2,g"), Gr)
            .closed(Cf::SshgTwoResonatorResonant),
        row("sshg-1r2q", sshg, (A, QQ), "a = 2q", ("1,g,g", "0,e,e"), Gr).closed(Cf::PhotonToTwoQubits),
    ] {
        let block = if r.id.starts_with("shg") { shg } else { sshg };
        out.push(r.build(ThreeWave, true, src, block));
    }

    let raman = "a = b + q";
    for r in [
        row(
            "raman-stokes",
            "spontaneous Stokes Raman scattering",
            (AB, Q),
            raman,
            ("1,0,g", "0,1,e"),
            Gr,
        )
        .closed(Cf::RamanStokes),
        row(
            "raman-anti-stokes",
            "spontaneous anti-Stokes Raman scattering",
            (AB, Q),
            raman,
            ("0,1,e", "1,0,g"),
            Gr,
        )
        .closed(Cf::RamanStokesResonant),
        row(
            "stimulated-raman-stokes",
            "stimulated Stokes Raman scattering",
            (AB, Q),
            raman,
            ("1,n,g", "0,n+1,e"),
            Gr,
        ),
        row(
            "stimulated-raman-anti-stokes",
            "stimulated anti-Stokes Raman scattering",
            (AB, Q),
            raman,
            ("n,1,e", "n+1,0,g"),
            Gr,
        ),
    ] {
        out.push(r.build(ThreeWave, false, src, "Raman scattering"));
    }

    let sfg = "sum-frequency generation";
    let dfg = "difference-frequency generation";
    for r in [
        row("sfg-1r2q", sfg, (A, Q12), "a = q1 + q2", ("0,e,e", "1,g,g"), Gr),
        row("sfg-2r1q", sfg, (AB, Q), "a + b = q", ("1,1,g", "0,0,e"), Gr),
        row("sfg-3r1q", sfg, (ABC, Q), "a + b = c", ("1,1,0,g", "0,0,1,g"), Gr),
        row("dfg-1r2q", dfg, (A, Q12), "a = q1 + q2", ("1,g,g", "0,e,e"), Gr),
        row("dfg-2r1q", dfg, (AB, Q), "a + b = q", ("0,0,e", "1,1,g"), Gr),
        row("dfg-3r1q", dfg, (ABC, Q), "a + b = c", ("0,0,1,g", "1,1,0,g"), Gr),
    ] {
        let block = if r.id.starts_with("sfg") { sfg } else { dfg };
        out.push(r.build(ThreeWave, false, src, block));
    }
    out
}

fn four_wave() -> Vec<ProcessEntry> {
    let src = Source::FourWaveSummary;
    let mut out = Vec::new();

    let thg = "third-harmonic generation";
    let tshg = "third-subharmonic generation";
    for r in [
        row("thg-1r1q", thg, (A, Q), "q = 3a", ("3,g", "0,e"), Rabi).closed(Cf::ThreePhotonRabi),
        row("thg-2r1q", thg, (AB, Q), "a = 3b", ("0,3,g", "1,0,g"), Rabi).closed(Cf::TshgTwoResonator),
        row("thg-1r3q", thg, (A, QQQ), "a = 3q", ("0,e,e,e", "1,g,g,g"), Rabi).closed(Cf::ThreeQubitThg),
        row("tshg-1r1q", tshg, (A, Q), "q = 3a", ("0,e", "3,g"), Rabi).closed(Cf::ThreePhotonRabiResonant),
        row("tshg-2r1q", tshg, (AB, Q), "a = 3b", ("1,0,g", "0,3,g"), Rabi)
            .closed(Cf::TshgTwoResonatorResonant),
        row(
            "tshg-1r3q",
            tshg,
            (A, QQQ),
            "a = 3q",
            ("1,g,g,g", "0,e,e,e"),
            Rabi,
        )
        .closed(Cf::ThreeQubitThg),
    ] {
        let block = if r.id.starts_with("thg") { thg } else { tshg };
        out.push(r.build(FourWave, true, src, block));
    }

    for r in [
        row(
            "hyper-raman-i-stokes",
            "type-I Stokes hyper-Raman scattering",
            (AB, Q),
            "a + q = 2b",
            ("0,2,g", "1,0,e"),
            Jc,
        )
        .closed(Cf::HyperRamanIJc),
        row(
            "hyper-raman-i-anti-stokes",
            "type-I anti-Stokes hyper-Raman scattering",
            (AB, Q),
            "a = 2b + q",
            ("0,2,e", "1,0,g"),
            Rabi,
        )
        .closed(Cf::HyperRamanIAntiStokes),
        row(
            "hyper-raman-ii-stokes",
            "type-II Stokes hyper-Raman scattering",
            (AB, QQ),
            "a = b + 2q",
            ("1,0,g,g", "0,1,e,e"),
            Rabi,
        )
        .closed(Cf::HyperRamanII),
        row(
            "hyper-raman-ii-anti-stokes",
            "type-II anti-Stokes hyper-Raman scattering",
            (AB, QQ),
            "a = b + 2q",
            ("0,1,e,e", "1,0,g,g"),
            Rabi,
        )
        .closed(Cf::HyperRamanII),
    ] {
        out.push(r.build(FourWave, true, src, "hyper-Raman scattering"));
    }

    let t1 = "type-I four-wave mixing";
    let t2 = "type-II four-wave mixing";
    let t3 = "type-III four-wave mixing";
    for (r, block) in [
        (
            row(
                "fwm-i-3r1q",
                t1,
                (ABC, Q),
                "a + b = c + q",
                ("1,1,0,g", "0,0,1,e"),
                Jc,
            ),
            t1,
        ),
        (
            row(
                "fwm-i-4r1q",
                t1,
                (ABCD, Q),
                "a + b = c + d",
                ("1,1,0,0,g", "0,0,1,1,g"),
                Jc,
            ),
            t1,
        ),
        (
            row(
                "fwm-i-2r2q",
                t1,
                (AB, Q12),
                "a + b = q1 + q2",
                ("1,1,g,g", "0,0,e,e"),
                Jc,
            ),
            t1,
        ),
        (
            row(
                "fwm-i-1r3q",
                t1,
                (A, Q123),
                "a + q1 = q2 + q3",
                ("1,e,g,g", "0,g,e,e"),
                Jc,
            ),
            t1,
        ),
        (
            row(
                "fwm-ii-3r1q",
                t2,
                (ABC, Q),
                "a + b + c = q",
                ("1,1,1,g", "0,0,0,e"),
                Rabi,
            ),
            t2,
        ),
        (
            row(
                "fwm-ii-4r1q",
                t2,
                (ABCD, Q),
                "a + b + c = d",
                ("1,1,1,0,g", "0,0,0,1,g"),
                Rabi,
            ),
            t2,
        ),
        (
            row(
                "fwm-ii-2r2q",
                t2,
                (AB, Q12),
                "a = b + q1 + q2",
                ("0,1,e,e", "1,0,g,g"),
                Rabi,
            ),
            t2,
        ),
        (
            row(
                "fwm-ii-1r3q",
                t2,
                (A, Q123),
                "a = q1 + q2 + q3",
                ("0,e,e,e", "1,g,g,g"),
                Rabi,
            ),
            t2,
        ),
        (
            row(
                "fwm-iii-3r1q",
                t3,
                (ABC, Q),
                "a + b + c = q",
                ("0,0,0,e", "1,1,1,g"),
                Rabi,
            ),
            t3,
        ),
        (
            row(
                "fwm-iii-4r1q",
                t3,
                (ABCD, Q),
                "a = b + c + d",
                ("1,0,0,0,g", "0,1,1,1,g"),
                Rabi,
            ),
            t3,
        ),
        (
            row(
                "fwm-iii-2r2q",
                t3,
                (AB, Q12),
                "a = b + q1 + q2",
                ("1,0,g,g", "0,1,e,e"),
                Rabi,
            ),
            t3,
        ),
        (
            row(
                "fwm-iii-1r3q",
                t3,
                (A, Q123),
                "a = q1 + q2 + q3",
                ("1,g,g,g", "0,e,e,e"),
                Rabi,
            ),
            t3,
        ),
    ] {
        out.push(r.build(FourWave, false, src, block));
    }
    out
}

fn degenerate_four_wave() -> Vec<ProcessEntry> {
    let src = Source::DegenerateFourWave;
    let t1 = "type-I mixing with two degenerate signals";
    let t2 = "type-II mixing with two degenerate signals";
    let t3 = "type-III mixing with two degenerate signals";
    [
        (
            row(
                "dfwm-i-3r1q",
                t1,
                (ABC, Q),
                "2a = b + c",
                ("2,0,0,g", "0,1,1,g"),
                Jc,
            ),
            t1,
        ),
        (
            row(
                "dfwm-i-3r1q-reverse",
                t1,
                (ABC, Q),
                "2a = b + c",
                ("0,1,1,g", "2,0,0,g"),
                Jc,
            ),
            t1,
        ),
        (
            row(
                "dfwm-ii-3r1q",
                t2,
                (ABC, Q),
                "2a + b = c",
                ("2,1,0,g", "0,0,1,g"),
                Rabi,
            ),
            t2,
        ),
        (
            row(
                "dfwm-iii-3r1q",
                t3,
                (ABC, Q),
                "2a + b = c",
                ("0,0,1,g", "2,1,0,g"),
                Rabi,
            ),
            t3,
        ),
        (
            row("dfwm-i-2r1q", t1, (AB, Q), "2a = b + q", ("2,0,g", "0,1,e"), Jc),
            t1,
        ),
        (
            row(
                "dfwm-i-2r1q-reverse",
                t1,
                (AB, Q),
                "2a = b + q",
                ("0,1,e", "2,0,g"),
                Jc,
            ),
            t1,
        ),
        (
            row(
                "dfwm-ii-2r1q",
                t2,
                (AB, Q),
                "2a + b = q",
                ("2,1,g", "0,0,e"),
                Rabi,
            ),
            t2,
        ),
        (
            row(
                "dfwm-iii-2r1q",
                t3,
                (AB, Q),
                "2a + b = q",
                ("0,0,e", "2,1,g"),
                Rabi,
            ),
            t3,
        ),
        (
            row(
                "dfwm-i-1r2q",
                t1,
                (A, Q12),
                "2a = q1 + q2",
                ("2,g,g", "0,e,e"),
                Jc,
            ),
            t1,
        ),
        (
            row(
                "dfwm-i-1r2q-reverse",
                t1,
                (A, Q12),
                "2a = q1 + q2",
                ("0,e,e", "2,g,g"),
                Jc,
            ),
            t1,
        ),
        (
            row(
                "dfwm-ii-1r2q",
                t2,
                (A, Q12),
                "2a + q1 = q2",
                ("2,e,g", "0,g,e"),
                Rabi,
            ),
            t2,
        ),
        (
            row(
                "dfwm-iii-1r2q",
                t3,
                (A, Q12),
                "2a + q1 = q2",
                ("0,g,e", "2,e,g"),
                Rabi,
            ),
            t3,
        ),
    ]
    .into_iter()
    .map(|(r, block)| r.build(FourWave, true, src, block))
    .collect()
}

fn ordinal(k: usize) -> String {
    let suffix = match (k % 10, k % 100) {
        (1, x) if x != 11 => "st",
        (2, x) if x != 12 => "nd",
        (3, x) if x != 13 => "rd",
        _ => "th",
    };
    format!("{k}{suffix}")
}

fn template(photons: &[usize], excited: &[bool]) -> String {
    photons
        .iter()
        .map(|n| n.to_string())
        .chain(excited.iter().map(|&e| if e { "e" } else { "g" }.to_string()))
        .collect::<Vec<_>>()
        .join(",")
}

/// `(m−1)`th-harmonic and -subharmonic templates for `5 ≤ m ≤ max_order`,
/// in the three standard setups.
fn higher_harmonics(max_order: usize) -> Vec<ProcessEntry> {
    let mut out = Vec::new();
    for m in 5..=max_order {
        let k = m - 1;
        let up = format!("{}-harmonic generation", ordinal(k));
        let down = format!("{}-subharmonic generation", ordinal(k));
        let block = format!("{m}-wave mixing");
        let qubits_k: Vec<&str> = vec!["q"; k];
        let setups: [(String, &[&str], &[&str], String, String, String); 3] = [
            (
                "2r1q".into(),
                AB,
                Q,
                format!("a = {k}b"),
                template(&[0, k], &[false]),
                template(&[1, 0], &[false]),
            ),
            (
                "1r1q".into(),
                A,
                Q,
                format!("q = {k}a"),
                template(&[k], &[false]),
                template(&[0], &[true]),
            ),
            (
                format!("1r{k}q"),
                A,
                &qubits_k,
                format!("a = {k}q"),
                template(&[0], &vec![true; k]),
                template(&[1], &vec![false; k]),
            ),
        ];
        for (setup, modes, qubits, relation, low, high) in setups.iter() {
            for (prefix, name, (i, f)) in [("hhg", &up, (low, high)), ("hsg", &down, (high, low))] {
                let id = format!("{prefix}-{k}-{setup}");
                let mut e = row(&id, name, (modes, qubits), relation, (i, f), Gr).build(
                    Higher,
                    true,
                    Source::OtherProcesses,
                    &block,
                );
                e.model = parity_model(&e).expect("balanced template");
                out.push(e);
            }
        }
    }
    out
}

fn other(max_order: usize) -> Vec<ProcessEntry> {
    let src = Source::OtherProcesses;
    let mut out = Vec::new();
    for n in 2..max_order {
        let id = format!("multiphoton-absorption-{n}");
        let name = format!("{n}-photon absorption");
        let relation = format!("q = {n}a");
        let initial = template(&[n], &[false]);
        let mut e = row(&id, &name, (A, Q), &relation, (&initial, "0,e"), Gr).build(
            Other,
            false,
            src,
            "multiphoton absorption",
        );
        e.model = parity_model(&e).expect("balanced template");
        out.push(e);
    }

    let mut kerr = row("kerr", "self-Kerr effect", (A, Q), "", ("n,g", "n,g"), Jc).closed(Cf::Kerr);
    kerr.relation = None;
    out.push(kerr.build(Other, false, src, "Kerr effect"));

    out.push(
        row(
            "parametric-downconversion",
            "degenerate parametric downconversion",
            (AB, Q),
            "2a = b",
            ("0,1,g", "2,0,g"),
            Gr,
        )
        .closed(Cf::Parametric)
        .build(Other, true, src, "parametric processes"),
    );
    out
}

pub(super) fn all(max_order: usize) -> Vec<ProcessEntry> {
    let mut out = three_wave();
    out.extend(four_wave());
    out.extend(degenerate_four_wave());
    out.extend(higher_harmonics(max_order));
    out.extend(other(max_order));
    out
}
