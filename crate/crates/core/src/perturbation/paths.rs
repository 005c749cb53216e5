use std::collections::VecDeque;
use std::fmt;

use log::warn;
use num_complex::Complex64;
use rayon::prelude::*;

use super::{DEFAULT_MAX_DEPTH, DEGENERACY_TOLERANCE, RESONANCE_TOLERANCE};
use crate::error::{Error, Result};
use crate::hamiltonian::build_hint;
use crate::hilbert::{BasisState, HilbertSpace};
use crate::operator::HermitianOperator;
use crate::system::SystemSpec;

/// One virtual-transition path `i → j_1 → … → f`.
#[derive(Clone, Debug, PartialEq)]
pub struct TransitionPath {
    /// Basis indices, including both endpoints.
    pub states: Vec<usize>,
    /// `V_{j_1 i}, V_{j_2 j_1}, …, V_{f j_{n-1}}`.
    pub elements: Vec<Complex64>,
    /// `E_i − E_{j_k}` for each intermediate.
    pub denominators: Vec<f64>,
    pub contribution: Complex64,
}

impl TransitionPath {
    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn display<'a>(&'a self, space: &'a HilbertSpace) -> PathDisplay<'a> {
        PathDisplay { path: self, space }
    }
}

pub struct PathDisplay<'a> {
    path: &'a TransitionPath,
    space: &'a HilbertSpace,
}

impl fmt::Display for PathDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let labels: Vec<String> = self.path.states.iter().map(|&s| self.space.label(s)).collect();
        let v: Vec<String> = self.path.elements.iter().map(|x| format_complex(*x)).collect();
        let d: Vec<String> = self
            .path
            .denominators
            .iter()
            .map(|x| format!("{x:.10e}"))
            .collect();
        write!(
            f,
            "{}  V=[{}]  D=[{}]  contribution={}",
            labels.join(" -> "),
            v.join(", "),
            d.join(", "),
            format_complex(self.path.contribution)
        )
    }
}

fn format_complex(z: Complex64) -> String {
    if z.im == 0.0 {
        format!("{:.10e}", z.re)
    } else {
        format!("{:.10e}{:+.10e}i", z.re, z.im)
    }
}

#[derive(Clone, Debug)]
pub struct EffectiveCoupling {
    pub value: Complex64,
    pub order: usize,
    pub path_count: usize,
    pub paths: Vec<TransitionPath>,
    /// Intermediates degenerate with `|i⟩` that were skipped because they
    /// lie on no complete path.
    pub excluded: Vec<usize>,
    /// `E_i − E_f`.
    pub detuning: f64,
}

impl EffectiveCoupling {
    pub fn magnitude(&self) -> f64 {
        self.value.norm()
    }
}

/// Minimal number of interaction steps from `i` to `f`, by breadth-first
/// search over the nonzero pattern of `hint`.
pub fn shortest_order(hint: &HermitianOperator, i: &BasisState, f: &BasisState) -> Result<usize> {
    shortest_order_within(hint, i, f, DEFAULT_MAX_DEPTH)
}

pub fn shortest_order_within(
    hint: &HermitianOperator,
    i: &BasisState,
    f: &BasisState,
    max_depth: usize,
) -> Result<usize> {
    let space = hint.space();
    let (si, sf) = (space.index_of(i)?, space.index_of(f)?);
    if si == sf {
        return Err(Error::InvalidSpec(format!(
            "initial and final state coincide ({i})"
        )));
    }
    match distances_from(hint, si, max_depth)[sf] {
        Some(d) => Ok(d),
        None => Err(Error::Unreachable {
            from: i.to_string(),
            to: f.to_string(),
            max_depth,
        }),
    }
}

/// Graph distances from `start`, capped at `depth`.
fn distances_from(hint: &HermitianOperator, start: usize, depth: usize) -> Vec<Option<usize>> {
    let mut dist = vec![None; hint.dimension()];
    dist[start] = Some(0);
    let mut queue = VecDeque::from([start]);
    while let Some(s) = queue.pop_front() {
        let d = dist[s].unwrap();
        if d == depth {
            continue;
        }
        for (t, _) in hint.row(s) {
            if dist[t].is_none() {
                dist[t] = Some(d + 1);
                queue.push_back(t);
            }
        }
    }
    dist
}

struct Walk<'a> {
    hint: &'a HermitianOperator,
    space: &'a HilbertSpace,
    dist_to_f: Vec<Option<usize>>,
    i: usize,
    f: usize,
    n: usize,
    e_i: f64,
}

struct Partial {
    states: Vec<usize>,
    elements: Vec<Complex64>,
    denominators: Vec<f64>,
    degenerate: Option<usize>,
}

#[derive(Default)]
struct WalkOutput {
    paths: Vec<TransitionPath>,
    /// First complete path through a degenerate intermediate.
    blocked: Option<usize>,
    excluded: Vec<usize>,
}

impl WalkOutput {
    fn append(&mut self, other: WalkOutput) {
        self.paths.extend(other.paths);
        self.blocked = self.blocked.or(other.blocked);
        self.excluded.extend(other.excluded);
    }
}

impl Walk<'_> {
    fn can_finish(&self, state: usize, remaining: usize) -> bool {
        matches!(self.dist_to_f[state], Some(d) if d <= remaining)
    }

    /// Extends `p` by one step to `next` (with `V_{next,last}` = `v`) and
    /// recurses. Neighbours are visited in ascending index order, so paths
    /// come out lexicographically sorted.
    fn step(&self, p: &mut Partial, next: usize, v: Complex64, out: &mut WalkOutput) {
        let taken = p.elements.len() + 1;
        if taken == self.n {
            if next == self.f {
                p.elements.push(v);
                match p.degenerate {
                    Some(j) => {
                        out.blocked.get_or_insert(j);
                    }
                    None => {
                        let num: Complex64 = p.elements.iter().product();
                        let den: f64 = p.denominators.iter().product();
                        let mut states = p.states.clone();
                        states.push(next);
                        out.paths.push(TransitionPath {
                            states,
                            elements: p.elements.clone(),
                            denominators: p.denominators.clone(),
                            contribution: num / den,
                        });
                    }
                }
                p.elements.pop();
            }
            return;
        }
        if next == self.i || next == self.f || !self.can_finish(next, self.n - taken) {
            return;
        }
        let d = self.e_i - self.space.bare_energy_at(next);
        let degenerate_here = d.abs() < DEGENERACY_TOLERANCE;
        if degenerate_here {
            out.excluded.push(next);
        }
        let saved = p.degenerate;
        if degenerate_here && p.degenerate.is_none() {
            p.degenerate = Some(next);
        }
        p.states.push(next);
        p.elements.push(v);
        p.denominators.push(d);
        for (t, w) in self.hint.column(next) {
            self.step(p, t, w, out);
        }
        p.states.pop();
        p.elements.pop();
        p.denominators.pop();
        p.degenerate = saved;
    }
}

/// All `n`-step paths from `i` to `f` in canonical order.
///
/// Intermediates never equal `i` or `f`. A complete path through an
/// intermediate within [`DEGENERACY_TOLERANCE`] of `E_i` is an error;
/// degenerate states that lie on no complete path are reported in
/// `excluded`.
pub fn enumerate_paths(
    hint: &HermitianOperator,
    i: &BasisState,
    f: &BasisState,
    n: usize,
) -> Result<(Vec<TransitionPath>, Vec<usize>)> {
    let space = hint.space();
    let (si, sf) = (space.index_of(i)?, space.index_of(f)?);
    if n == 0 || si == sf {
        return Err(Error::InvalidSpec(
            "path enumeration needs distinct states and n >= 1".into(),
        ));
    }
    let walk = Walk {
        hint,
        space,
        dist_to_f: distances_from(hint, sf, n),
        i: si,
        f: sf,
        n,
        e_i: space.bare_energy_at(si),
    };

    let first: Vec<(usize, Complex64)> = hint.column(si).collect();
    let parts: Vec<WalkOutput> = first
        .par_iter()
        .map(|&(t, v)| {
            let mut out = WalkOutput::default();
            let mut p = Partial {
                states: vec![si],
                elements: Vec::with_capacity(n),
                denominators: Vec::with_capacity(n),
                degenerate: None,
            };
            walk.step(&mut p, t, v, &mut out);
            out
        })
        .collect();

    let mut all = WalkOutput::default();
    for part in parts {
        all.append(part);
    }
    if let Some(j) = all.blocked {
        return Err(Error::DegenerateIntermediate {
            state: space.label(j),
            gap: (walk.e_i - space.bare_energy_at(j)).abs(),
        });
    }
    all.excluded.sort_unstable();
    all.excluded.dedup();
    Ok((all.paths, all.excluded))
}

/// Lowest-order effective coupling `⟨f|H_eff|i⟩`.
pub fn effective_coupling(
    hint: &HermitianOperator,
    i: &BasisState,
    f: &BasisState,
) -> Result<EffectiveCoupling> {
    let space = hint.space();
    let detuning = space.bare_energy(i)? - space.bare_energy(f)?;
    if detuning.abs() > RESONANCE_TOLERANCE {
        warn!("evaluating {i} -> {f} off resonance (E_i - E_f = {detuning:e})");
    }
    let order = shortest_order(hint, i, f)?;
    let (paths, excluded) = enumerate_paths(hint, i, f, order)?;
    let value = paths
        .iter()
        .fold(Complex64::new(0.0, 0.0), |acc, p| acc + p.contribution);
    Ok(EffectiveCoupling {
        value,
        order,
        path_count: paths.len(),
        paths,
        excluded,
        detuning,
    })
}

/// Builds the interaction for `spec`, filling missing truncations from the
/// two endpoint states, and evaluates [`effective_coupling`].
pub fn effective_coupling_for(
    spec: &SystemSpec,
    i: &BasisState,
    f: &BasisState,
) -> Result<EffectiveCoupling> {
    let hint = interaction_for(spec, &[i.clone(), f.clone()])?;
    effective_coupling(&hint, i, f)
}

pub(crate) fn interaction_for(spec: &SystemSpec, states: &[BasisState]) -> Result<HermitianOperator> {
    let mut spec = spec.clone();
    spec.fill_truncation(states);
    let space = std::sync::Arc::new(HilbertSpace::new(&spec)?);
    build_hint(&space, &spec.couplings, spec.model)
}

/// `|g_eff(|1,n,g⟩ → |0,n+1,e⟩)| / |g_eff(|1,0,g⟩ → |0,1,e⟩)|` for a
/// two-mode, one-qubit Raman setup.
pub fn stimulated_ratio(hint: &HermitianOperator, n: usize) -> Result<f64> {
    let space = hint.space();
    if space.modes().len() != 2 || space.qubits().len() != 1 {
        return Err(Error::InvalidSpec(
            "stimulated ratio needs two modes and one qubit".into(),
        ));
    }
    let state = |a: usize, b: usize, e: bool| BasisState::new(vec![a, b], vec![e]);
    let base = effective_coupling(hint, &state(1, 0, false), &state(0, 1, true))?;
    let stim = effective_coupling(hint, &state(1, n, false), &state(0, n + 1, true))?;
    Ok(stim.magnitude() / base.magnitude())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::system::InteractionModel;
    use std::f64::consts::PI;

    fn st(s: &str) -> BasisState {
        s.parse().unwrap()
    }

    fn sshg(wa: f64) -> SystemSpec {
        SystemSpec::new(InteractionModel::GeneralizedRabi)
            .mode("a", wa, Some(8))
            .mode("b", 1.0, Some(8))
            .qubit("q", 1.6)
            .coupling("a", "q", 0.07, PI / 6.0)
            .coupling("b", "q", 0.14, PI / 6.0)
    }

    fn raman() -> SystemSpec {
        SystemSpec::new(InteractionModel::GeneralizedRabi)
            .mode("a", 3.0, None)
            .mode("b", 2.0, None)
            .qubit("q", 1.0)
            .coupling("a", "q", 0.05, PI / 6.0)
            .coupling("b", "q", 0.05, PI / 6.0)
    }

    #[test]
    fn orders() {
        let hint = interaction_for(&raman(), &[st("1,0,g"), st("0,1,e")]).unwrap();
        assert_eq!(shortest_order(&hint, &st("1,0,g"), &st("0,1,e")).unwrap(), 2);

        let hint = interaction_for(&sshg(2.0), &[]).unwrap();
        assert_eq!(shortest_order(&hint, &st("0,2,g"), &st("1,0,g")).unwrap(), 3);

        let tshg = sshg(3.0).with_model(InteractionModel::Rabi);
        let hint = interaction_for(&tshg, &[]).unwrap();
        assert_eq!(shortest_order(&hint, &st("0,3,g"), &st("1,0,g")).unwrap(), 4);
    }

    #[test]
    fn unreachable_under_parity() {
        let rabi = sshg(2.0).with_model(InteractionModel::Rabi);
        let hint = interaction_for(&rabi, &[]).unwrap();
        let err = shortest_order(&hint, &st("0,2,g"), &st("1,0,g")).unwrap_err();
        assert!(matches!(err, Error::Unreachable { max_depth: 8, .. }));
    }

    #[test]
    fn sshg_paths() {
        let g = effective_coupling_for(&sshg(2.0), &st("0,2,g"), &st("1,0,g")).unwrap();
        assert_eq!(g.order, 3);
        assert_eq!(g.path_count, 12);
        let sum = g
            .paths
            .iter()
            .fold(Complex64::new(0.0, 0.0), |a, p| a + p.contribution);
        assert_eq!(sum, g.value);
        for w in g.paths.windows(2) {
            assert!(w[0].states < w[1].states);
        }
        assert!((g.value.re + 4.9751e-3).abs() < 1e-7, "{}", g.value);
    }

    #[test]
    fn zero_coupling_has_no_paths() {
        let spec = SystemSpec::new(InteractionModel::GeneralizedRabi)
            .mode("a", 0.5, Some(6))
            .qubit("q", 1.0)
            .coupling("a", "q", 0.0, PI / 6.0);
        let hint = interaction_for(&spec, &[]).unwrap();
        let (paths, _) = enumerate_paths(&hint, &st("2,g"), &st("0,e"), 2).unwrap();
        assert!(paths.is_empty());
        assert!(effective_coupling(&hint, &st("2,g"), &st("0,e")).is_err());
    }

    #[test]
    fn degenerate_intermediate_on_path() {
        // |1,0,g⟩ -> |0,1,e⟩ with ω_a = ω_q makes |0,0,e⟩ degenerate with |1,0,g⟩
        let spec = SystemSpec::new(InteractionModel::GeneralizedRabi)
            .mode("a", 1.0, Some(4))
            .mode("b", 2.0, Some(4))
            .qubit("q", 1.0)
            .coupling("a", "q", 0.05, 0.3)
            .coupling("b", "q", 0.05, 0.3);
        let hint = interaction_for(&spec, &[]).unwrap();
        let err = effective_coupling(&hint, &st("1,0,g"), &st("0,1,e")).unwrap_err();
        match err {
            Error::DegenerateIntermediate { state, .. } => assert_eq!(state, "|0,0,e⟩"),
            e => panic!("unexpected {e:?}"),
        }
    }

    #[test]
    fn stimulated() {
        let spec = raman().with_n_max(12);
        let hint = interaction_for(&spec, &[]).unwrap();
        for (n, want) in [(0usize, 1.0f64), (3, 2.0), (8, 3.0)] {
            let r = stimulated_ratio(&hint, n).unwrap();
            assert!((r - want).abs() < 1e-10 * want, "n={n}: {r}");
        }
        let small = interaction_for(&raman().with_n_max(3), &[]).unwrap();
        let err = stimulated_ratio(&small, 3).unwrap_err();
        assert_eq!(err.kind(), crate::error::ErrorKind::Capacity);
    }

    #[test]
    fn explain_lines() {
        let hint = interaction_for(&raman(), &[st("1,0,g"), st("0,1,e")]).unwrap();
        let g = effective_coupling(&hint, &st("1,0,g"), &st("0,1,e")).unwrap();
        let line = g.paths[0].display(hint.space()).to_string();
        assert!(line.starts_with("|1,0,g⟩ -> "), "{line}");
        assert!(line.contains("contribution="));
    }
}
