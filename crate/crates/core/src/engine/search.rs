//! The bounded proof search.

use std::collections::{HashMap, HashSet};

use super::expand::{candidate_expansions, compile_hypotheses, expand_slice};
use super::{initial_graph, Claim, Derivation, HypothesisMode, ProveConfig, Step, Verdict, TRACE_VERSION};
use crate::conversion::normalize;
use crate::graph::{canonicalize, Graph, NodeId, Slice};
use crate::morphism::{is_erasable, is_zero_slice, ErasureWitness};
use crate::semantics::{falsifying_pair, find_countermodel, holds, natural_model, Model};
use crate::term::Inclusion;

/// How a slice closes.
enum Plan {
    Zero,
    Erased(ErasureWitness),
    Expand {
        u: NodeId,
        v: NodeId,
        template: Slice,
        glued: Box<Plan>,
        added: Box<Plan>,
    },
}

enum Stop {
    Countermodel(Model, (usize, usize)),
    Budget,
}

struct Search<'a> {
    goal: &'a Inclusion,
    hyps: &'a [Inclusion],
    hyp_slices: &'a [Slice],
    cfg: &'a ProveConfig,
    visited: usize,
    /// Largest depth at which a canonical slice is known not to close.
    failed: HashMap<Slice, usize>,
    probed: HashSet<Slice>,
}

impl Search<'_> {
    fn close(&mut self, s: &Slice, depth: usize) -> Result<Option<Plan>, Stop> {
        self.visited += 1;
        if self.visited > self.cfg.search_budget {
            return Err(Stop::Budget);
        }
        if is_zero_slice(s).is_some() {
            return Ok(Some(Plan::Zero));
        }
        if let Some(w) = is_erasable(s, self.hyp_slices) {
            return Ok(Some(Plan::Erased(w)));
        }
        let key = canonicalize(s);
        if self.probed.insert(key.clone()) {
            if let Some((m, pair)) = self.probe(s) {
                return Err(Stop::Countermodel(m, pair));
            }
        }
        if depth == 0 || self.failed.get(&key).is_some_and(|&d| d >= depth) {
            return Ok(None);
        }
        for c in candidate_expansions(s, self.hyp_slices) {
            let [glued, added] = expand_slice(s, c.u, c.v, &c.template);
            let Some(g) = self.close(&glued, depth - 1)? else {
                continue;
            };
            let Some(a) = self.close(&added, depth - 1)? else {
                continue;
            };
            return Ok(Some(Plan::Expand {
                u: c.u,
                v: c.v,
                template: c.template.slice().clone(),
                glued: Box::new(g),
                added: Box::new(a),
            }));
        }
        self.failed.insert(key, depth);
        Ok(None)
    }

    /// The natural model of an open slice, if it refutes the goal.
    fn probe(&self, s: &Slice) -> Option<(Model, (usize, usize))> {
        let (m, _) = natural_model(s.draft());
        let pair = falsifying_pair(&m, self.goal)?;
        self.hyps.iter().all(|h| holds(&m, h)).then_some((m, pair))
    }
}

/// Whether `m` is a genuine countermodel: every hypothesis holds and `pair`
/// witnesses the failure of the goal.
fn validated(goal: &Inclusion, hyps: &[Inclusion], m: Model, pair: (usize, usize)) -> Option<Verdict> {
    let ok = hyps.iter().all(|h| holds(&m, h)) && falsifying_pair(&m, goal).is_some_and(|_| {
        let lhs = crate::semantics::eval_term(&m, &goal.lhs);
        let rhs = crate::semantics::eval_term(&m, &goal.rhs);
        lhs.contains(pair.0, pair.1) && !rhs.contains(pair.0, pair.1)
    });
    ok.then_some(Verdict::Countermodel { model: m, pair })
}

/// A smaller countermodel from the exhaustive search, when one exists
/// within the bit budget.
fn minimized(goal: &Inclusion, hyps: &[Inclusion], m: Model, pair: (usize, usize), bits: usize) -> Verdict {
    if m.size() > 1 {
        if let Ok(Some(c)) = find_countermodel(goal, hyps, m.size() - 1, bits) {
            if let Some(v) = validated(goal, hyps, c.model, c.pair) {
                return v;
            }
        }
    }
    validated(goal, hyps, m, pair).expect("probe results are refutations")
}

/// Tries to prove `goal` from `hyps`.
///
/// The result is a derivation, a countermodel (re-checked before it is
/// returned), or `Unknown` with the depth reached, the number of slices
/// left open, and why the search stopped.
pub fn prove(goal: &Inclusion, hyps: &[Inclusion], cfg: &ProveConfig) -> Verdict {
    let hyp_slices = match compile_hypotheses(hyps, cfg.step_budget) {
        Ok(h) => h,
        Err(e) => {
            return Verdict::Unknown {
                depth: 0,
                frontier: 0,
                reason: format!("converting hypotheses: {e}"),
            }
        }
    };
    let (g0, conversions) = match normalize(initial_graph(goal), cfg.step_budget) {
        Ok(r) => r,
        Err(e) => {
            return Verdict::Unknown {
                depth: 0,
                frontier: 1,
                reason: format!("converting the goal: {e}"),
            }
        }
    };
    let mut search = Search {
        goal,
        hyps,
        hyp_slices: &hyp_slices,
        cfg,
        visited: 0,
        failed: HashMap::new(),
        probed: HashSet::new(),
    };
    let mut plans = Vec::with_capacity(g0.len());
    let mut stop_reason = None;
    let mut depth_reached = 0;
    'slices: for s in g0.iter() {
        for depth in 0..=cfg.max_depth {
            depth_reached = depth_reached.max(depth);
            match search.close(s, depth) {
                Ok(Some(plan)) => {
                    plans.push(plan);
                    continue 'slices;
                }
                Ok(None) => {}
                Err(Stop::Countermodel(m, pair)) => {
                    return minimized(goal, hyps, m, pair, cfg.oracle_bits);
                }
                Err(Stop::Budget) => {
                    stop_reason = Some(format!("search budget of {} slices exhausted", cfg.search_budget));
                    break 'slices;
                }
            }
        }
        stop_reason = Some(format!("no closing expansion within depth {}", cfg.max_depth));
        break;
    }
    if stop_reason.is_none() {
        return Verdict::Proved(derivation(goal, hyps, hyp_slices, cfg.mode, g0, conversions, plans));
    }
    let frontier = g0.len() - plans.len();
    match find_countermodel(goal, hyps, cfg.model_max, cfg.oracle_bits) {
        Ok(Some(c)) => {
            if let Some(v) = validated(goal, hyps, c.model, c.pair) {
                return v;
            }
        }
        Ok(None) => {}
        Err(e) => {
            let reason = stop_reason.take().unwrap_or_default();
            stop_reason = Some(format!("{reason}; {e}"));
        }
    }
    Verdict::Unknown {
        depth: depth_reached,
        frontier,
        reason: stop_reason.unwrap_or_default(),
    }
}

/// Turns per-slice plans into derivation steps on the whole graph.
fn derivation(
    goal: &Inclusion,
    hyps: &[Inclusion],
    hyp_slices: Vec<Slice>,
    mode: HypothesisMode,
    g0: Graph,
    conversions: Vec<crate::conversion::ConversionStep>,
    plans: Vec<Plan>,
) -> Derivation {
    let mut steps: Vec<Step> = conversions.into_iter().map(Step::Conversion).collect();
    let mut graph = g0.clone();
    let mut work: Vec<(Slice, Plan)> = g0.slices().iter().cloned().zip(plans).collect();
    work.reverse();
    while let Some((s, plan)) = work.pop() {
        let Some(index) = position(&graph, &s) else {
            // An isomorphic copy was merged away and is handled by its own plan.
            continue;
        };
        match plan {
            Plan::Zero => {}
            Plan::Erased(w) => {
                if mode == HypothesisMode::Erase {
                    let before = graph.slices()[index].clone();
                    graph = graph.remove(index);
                    steps.push(Step::Erasure {
                        slice: index,
                        hypothesis: w.hypothesis,
                        morphism: w.morphism,
                        before,
                    });
                }
            }
            Plan::Expand {
                u,
                v,
                template,
                glued,
                added,
            } => {
                let before = graph.slices()[index].clone();
                let after = expand_slice(&before, u, v, &template);
                graph = graph.replace(index, after.clone());
                let [g, a] = after.clone();
                work.push((a, *added));
                work.push((g, *glued));
                steps.push(Step::Expansion {
                    slice: index,
                    u,
                    v,
                    template,
                    before,
                    after: after.to_vec(),
                });
            }
        }
    }
    let claim = match mode {
        HypothesisMode::Erase => Claim::Zero,
        HypothesisMode::Hzero => Claim::Hzero,
    };
    Derivation {
        version: TRACE_VERSION,
        goal: goal.clone(),
        hypotheses: hyps.to_vec(),
        hypothesis_slices: hyp_slices,
        mode,
        steps,
        final_graph: graph,
        claim,
    }
}

fn position(g: &Graph, s: &Slice) -> Option<usize> {
    let key = canonicalize(s);
    g.iter().position(|t| canonicalize(t) == key)
}
