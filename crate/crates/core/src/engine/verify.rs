//! Independent replay of derivations.

use thiserror::Error;

use super::expand::{compile_hypotheses, expand_slice};
use super::{initial_graph, Claim, Derivation, HypothesisMode, Step, TRACE_VERSION};
use crate::conversion::{apply_at, next_redex, DEFAULT_STEP_LIMIT};
use crate::graph::{is_basic_slice, Graph};
use crate::morphism::{is_erasable, is_morphism, is_zero_slice};

/// The first problem found; `step` is `None` for problems outside the
/// step list.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{}{reason}", step.map(|i| format!("step {i}: ")).unwrap_or_default())]
pub struct VerifyError {
    pub step: Option<usize>,
    pub reason: String,
}

fn fail(step: Option<usize>, reason: impl Into<String>) -> VerifyError {
    VerifyError {
        step,
        reason: reason.into(),
    }
}

/// Replays a derivation from the goal's difference slice with the rule
/// implementations, checking that conversions come first, that every
/// recorded operand matches the replay, and that the final graph is as
/// claimed.
pub fn verify_derivation(d: &Derivation) -> Result<(), VerifyError> {
    if d.version != TRACE_VERSION {
        return Err(fail(None, format!("unsupported trace version {}", d.version)));
    }
    let hyps = compile_hypotheses(&d.hypotheses, DEFAULT_STEP_LIMIT)
        .map_err(|e| fail(None, format!("converting hypotheses: {e}")))?;
    if hyps != d.hypothesis_slices {
        return Err(fail(None, "hypothesis slices do not match the hypotheses"));
    }
    let mut graph = initial_graph(&d.goal);
    let mut converting = true;
    for (i, step) in d.steps.iter().enumerate() {
        let at = Some(i);
        match step {
            Step::Conversion(c) => {
                if !converting {
                    return Err(fail(at, "conversion after expansion or erasure"));
                }
                let (next, again) =
                    apply_at(&graph, &c.position, c.rule).map_err(|e| fail(at, e.to_string()))?;
                if &again != c {
                    return Err(fail(at, "recorded redex or contractum differs from replay"));
                }
                graph = next;
            }
            Step::Expansion {
                slice,
                u,
                v,
                template,
                before,
                after,
            } => {
                leave_conversion(&mut converting, &graph, i)?;
                let s = member(&graph, *slice, i)?;
                if s != before {
                    return Err(fail(at, "recorded slice differs from replay"));
                }
                if !s.nodes().contains(u) || !s.nodes().contains(v) {
                    return Err(fail(at, "expansion nodes are not in the slice"));
                }
                if !is_basic_slice(template) {
                    return Err(fail(at, "template is not basic"));
                }
                let out = expand_slice(s, *u, *v, template);
                if out.as_slice() != after.as_slice() {
                    return Err(fail(at, "recorded expansion differs from replay"));
                }
                graph = graph.replace(*slice, out);
            }
            Step::Erasure {
                slice,
                hypothesis,
                morphism,
                before,
            } => {
                leave_conversion(&mut converting, &graph, i)?;
                if d.mode != HypothesisMode::Erase {
                    return Err(fail(at, "erasure outside erase mode"));
                }
                let s = member(&graph, *slice, i)?;
                if s != before {
                    return Err(fail(at, "recorded slice differs from replay"));
                }
                let h = hyps
                    .get(*hypothesis)
                    .ok_or_else(|| fail(at, "no such hypothesis slice"))?;
                let total = h.nodes().iter().all(|n| morphism.map.contains_key(n));
                if !total || !is_morphism(h.draft(), s.draft(), &morphism.map) {
                    return Err(fail(at, "erasure map is not a morphism"));
                }
                graph = graph.remove(*slice);
            }
        }
    }
    if converting && next_redex(&graph).is_some() {
        return Err(fail(None, "conversion is incomplete"));
    }
    if graph != d.final_graph {
        return Err(fail(None, "final graph differs from replay"));
    }
    let claim_ok = match (d.claim, d.mode) {
        (Claim::Zero, _) => graph.iter().all(|s| is_zero_slice(s).is_some()),
        (Claim::Hzero, HypothesisMode::Hzero) => graph
            .iter()
            .all(|s| is_zero_slice(s).is_some() || is_erasable(s, &hyps).is_some()),
        (Claim::Hzero, HypothesisMode::Erase) => false,
    };
    if !claim_ok {
        return Err(fail(None, format!("final graph is not {:?}", d.claim)));
    }
    Ok(())
}

fn leave_conversion(converting: &mut bool, g: &Graph, i: usize) -> Result<(), VerifyError> {
    if *converting && next_redex(g).is_some() {
        return Err(fail(Some(i), "expansion or erasure before conversion is complete"));
    }
    *converting = false;
    Ok(())
}

fn member(g: &Graph, index: usize, i: usize) -> Result<&crate::graph::Slice, VerifyError> {
    g.slices()
        .get(index)
        .ok_or_else(|| fail(Some(i), format!("no slice {index}")))
}
