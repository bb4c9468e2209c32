//! Direction reductions: (R1) deletes a direction edge lying in a
//! direction-pure circuit, (R2) keeps an induced subgraph whose complement
//! contributes exactly two direction edges per vertex.

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::bounded::{bounded_components, is_bounded};
use crate::graph::{EdgeKind, EdgeRef, MixedGraph};
use crate::matroid::{self, Settings};

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum ReduceError {
    #[error("the graph is not rigid")]
    NotRigid,
    #[error("the direction edges are dependent")]
    DirectionDependent,
    #[error("the retained vertex set must be a non-empty proper subset")]
    NotProper,
    #[error("vertex {0:?} is not in the graph")]
    UnknownVertex(String),
    #[error("step {index}: {reason}")]
    Replay { index: usize, reason: String },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind")]
pub enum ReductionStep {
    /// Delete `edge`, which lies in the direction-pure `circuit`.
    R1 { edge: EdgeRef, circuit: Vec<EdgeRef> },
    /// Keep the subgraph induced by `block`; `witness` is the direction
    /// edge whose removal left `block` as the only nontrivial bounded
    /// component.
    R2 { block: Vec<String>, witness: EdgeRef },
}

impl ReductionStep {
    pub fn apply(&self, g: &MixedGraph) -> Result<MixedGraph, ReduceError> {
        match self {
            ReductionStep::R1 { edge, .. } => {
                let i = g
                    .find_edge_ref(edge)
                    .ok_or_else(|| ReduceError::UnknownVertex(edge.to_string()))?;
                Ok(g.without_edge(i))
            }
            ReductionStep::R2 { block, .. } => Ok(g.induced(&indices(g, block)?)),
        }
    }
}

fn indices(g: &MixedGraph, names: &[String]) -> Result<Vec<usize>, ReduceError> {
    let mut ids = names
        .iter()
        .map(|n| g.index_of(n).ok_or_else(|| ReduceError::UnknownVertex(n.clone())))
        .collect::<Result<Vec<_>, _>>()?;
    ids.sort_unstable();
    ids.dedup();
    Ok(ids)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TracedStep {
    #[serde(flatten)]
    pub step: ReductionStep,
    /// Canonical hash of the graph after this step.
    pub graph_hash: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReductionTrace {
    pub input_hash: String,
    pub steps: Vec<TracedStep>,
    pub result: MixedGraph,
    /// Set when the input was not rigid and only (R1) was applied.
    pub partial: bool,
}

impl ReductionTrace {
    pub fn to_value(&self) -> Value {
        json!({
            "input_hash": self.input_hash,
            "steps": self.steps,
            "result": self.result.to_value(),
            "result_hash": self.result.canonical_hash(),
            "partial": self.partial,
            "direction_irreducible": !self.partial,
        })
    }
}

/// `(deleted edge, circuit)` as edge indices of `g`.
fn r1_indices(g: &MixedGraph, settings: &Settings) -> Option<(usize, Vec<usize>)> {
    matroid::direction_circuit(g, settings)
}

pub fn find_r1(g: &MixedGraph, settings: &Settings) -> Option<ReductionStep> {
    r1_indices(g, settings).map(|(e, c)| ReductionStep::R1 {
        edge: g.edge_ref(e),
        circuit: g.edge_refs(&c),
    })
}

fn require_rigid_independent(g: &MixedGraph, settings: &Settings) -> Result<(), ReduceError> {
    if !matroid::is_rigid(g, settings) {
        return Err(ReduceError::NotRigid);
    }
    if !matroid::direction_independent(g, settings) {
        return Err(ReduceError::DirectionDependent);
    }
    Ok(())
}

/// First direction edge `e` (canonical order) such that `G - e` is
/// unbounded with exactly one nontrivial bounded component `B`; the step
/// reduces `G` to `G[B]`.
pub fn find_r2(g: &MixedGraph, settings: &Settings) -> Result<Option<ReductionStep>, ReduceError> {
    require_rigid_independent(g, settings)?;
    for e in g.dir_edges() {
        let h = g.without_edge(e);
        let dec = bounded_components(&h, settings);
        debug_assert_eq!(dec.blocks.len() == 1, is_bounded(&h, settings));
        if dec.blocks.len() == 1 {
            continue;
        }
        if let [block] = dec.nontrivial_blocks()[..] {
            debug_assert_eq!(check_reduction_to(g, block, settings), Ok(true));
            return Ok(Some(ReductionStep::R2 {
                block: g.names(block),
                witness: g.edge_ref(e),
            }));
        }
    }
    Ok(None)
}

/// Whether `G` direction-reduces to the subgraph induced by `keep`: every
/// length edge survives and exactly `2|V - V'|` direction edges are lost.
pub fn check_reduction_to(g: &MixedGraph, keep: &[usize], settings: &Settings) -> Result<bool, ReduceError> {
    require_rigid_independent(g, settings)?;
    let mut inside = vec![false; g.vertex_count()];
    for &v in keep {
        inside[v] = true;
    }
    let kept = inside.iter().filter(|&&b| b).count();
    if kept == 0 || kept == g.vertex_count() {
        return Err(ReduceError::NotProper);
    }
    let lengths_kept = g
        .edges()
        .iter()
        .filter(|e| e.is_length())
        .all(|e| inside[e.u] && inside[e.v]);
    let lost = g
        .edges()
        .iter()
        .filter(|e| e.kind == EdgeKind::Direction && !(inside[e.u] && inside[e.v]))
        .count();
    Ok(lengths_kept && lost == 2 * (g.vertex_count() - kept))
}

/// Name-based form of [`check_reduction_to`].
pub fn check_reduction_to_named(g: &MixedGraph, keep: &[&str], settings: &Settings) -> Result<bool, ReduceError> {
    let names: Vec<String> = keep.iter().map(|s| s.to_string()).collect();
    check_reduction_to(g, &indices(g, &names)?, settings)
}

/// Applies (R1) until exhausted, then (R2), repeating until neither applies.
/// Non-rigid inputs get (R1) only and a trace marked partial.
pub fn reduce_fully(g: &MixedGraph, settings: &Settings) -> ReductionTrace {
    let rigid = matroid::is_rigid(g, settings);
    let mut current = g.clone();
    let mut steps = Vec::new();
    loop {
        while let Some((e, c)) = r1_indices(&current, settings) {
            let step = ReductionStep::R1 {
                edge: current.edge_ref(e),
                circuit: current.edge_refs(&c),
            };
            current = current.without_edge(e);
            steps.push(TracedStep {
                step,
                graph_hash: current.canonical_hash(),
            });
        }
        if !rigid {
            break;
        }
        match find_r2(&current, settings) {
            Ok(Some(step)) => {
                current = step.apply(&current).expect("step names come from this graph");
                steps.push(TracedStep {
                    step,
                    graph_hash: current.canonical_hash(),
                });
            }
            Ok(None) => break,
            Err(e) => unreachable!("reductions preserve rigidity and independence: {e}"),
        }
    }
    ReductionTrace {
        input_hash: g.canonical_hash(),
        steps,
        result: current,
        partial: !rigid,
    }
}

/// Neither reduction applies. (R2) is only searched on rigid graphs.
pub fn is_direction_irreducible(g: &MixedGraph, settings: &Settings) -> bool {
    if r1_indices(g, settings).is_some() {
        return false;
    }
    !matroid::is_rigid(g, settings) || matches!(find_r2(g, settings), Ok(None))
}

/// Re-applies a trace to `g`, checking every step independently: (R1)
/// circuits are direction-pure circuits containing the deleted edge, (R2)
/// blocks pass [`check_reduction_to`], and every hash matches.
pub fn replay(g: &MixedGraph, trace: &ReductionTrace, settings: &Settings) -> Result<MixedGraph, ReduceError> {
    let fail = |index: usize, reason: String| ReduceError::Replay { index, reason };
    if g.canonical_hash() != trace.input_hash {
        return Err(fail(0, "input hash mismatch".into()));
    }
    let mut current = g.clone();
    for (index, traced) in trace.steps.iter().enumerate() {
        match &traced.step {
            ReductionStep::R1 { edge, circuit } => {
                let ids = circuit
                    .iter()
                    .map(|r| current.find_edge_ref(r))
                    .collect::<Option<Vec<usize>>>()
                    .ok_or_else(|| fail(index, "circuit edge missing".into()))?;
                if !circuit.contains(edge) {
                    return Err(fail(index, "deleted edge is not in its circuit".into()));
                }
                if circuit.iter().any(|r| r.kind != EdgeKind::Direction) {
                    return Err(fail(index, "circuit is not direction-pure".into()));
                }
                let dependent = !matroid::is_independent(&current, &ids, settings);
                let minimal = ids.iter().all(|&f| {
                    let rest: Vec<usize> = ids.iter().copied().filter(|&x| x != f).collect();
                    matroid::is_independent(&current, &rest, settings)
                });
                if !(dependent && minimal) {
                    return Err(fail(index, "edge set is not a circuit".into()));
                }
            }
            ReductionStep::R2 { block, .. } => {
                let keep = indices(&current, block)?;
                if check_reduction_to(&current, &keep, settings) != Ok(true) {
                    return Err(fail(index, "block fails the reduction count".into()));
                }
            }
        }
        let next = traced.step.apply(&current)?;
        if next.vertex_count() + next.dir_count() >= current.vertex_count() + current.dir_count() {
            return Err(fail(index, "step does not shrink |D| + |V|".into()));
        }
        if next.canonical_hash() != traced.graph_hash {
            return Err(fail(index, "graph hash mismatch".into()));
        }
        current = next;
    }
    if current != trace.result {
        return Err(fail(trace.steps.len(), "result differs from replay".into()));
    }
    Ok(current)
}
