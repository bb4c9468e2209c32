//! Deciding whether every generic realisation of a mixed graph is globally
//! rigid, with a certificate that can be re-checked independently.

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::bounded::is_bounded;
use crate::graph::{balance_violation, cut_witness, CutWitness, EdgeRef, MixedGraph, Separation};
use crate::matroid::{self, MatroidView, RedundancyFailure, Settings};
use crate::reduce::{reduce_fully, replay, ReductionTrace};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Answer {
    AllGenericGloballyRigid,
    NotAll,
}

impl Answer {
    pub fn is_yes(self) -> bool {
        self == Answer::AllGenericGloballyRigid
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type")]
pub enum Certificate {
    TrivialSingleVertex,
    /// The (reduced) graph is rigid and has one length edge.
    RigidWithOneLengthEdge {
        length_edge: EdgeRef,
    },
    /// The reduced graph is 2-connected, direction-balanced and redundantly
    /// rigid.
    IrreducibleAllConditions {
        reduced_hash: String,
        vertices: usize,
        rank: usize,
    },
    NotRigid {
        rank: usize,
        required: usize,
    },
    /// Pure direction graphs on two or more vertices are never rigid.
    NoLengthEdges {
        rank: usize,
        required: usize,
    },
    Not2Connected {
        witness: CutWitness,
    },
    NotDirectionBalanced {
        separation: Separation,
    },
    /// Deleting `edge` from the reduced graph destroys rigidity.
    NotRedundantlyRigid {
        edge: EdgeRef,
    },
}

impl Certificate {
    pub fn answer(&self) -> Answer {
        match self {
            Certificate::TrivialSingleVertex
            | Certificate::RigidWithOneLengthEdge { .. }
            | Certificate::IrreducibleAllConditions { .. } => Answer::AllGenericGloballyRigid,
            _ => Answer::NotAll,
        }
    }

    /// Both ways of certifying that the input is not rigid.
    pub fn is_not_rigid(&self) -> bool {
        matches!(self, Certificate::NotRigid { .. } | Certificate::NoLengthEdges { .. })
    }

    pub fn kind(&self) -> &'static str {
        match self {
            Certificate::TrivialSingleVertex => "TrivialSingleVertex",
            Certificate::RigidWithOneLengthEdge { .. } => "RigidWithOneLengthEdge",
            Certificate::IrreducibleAllConditions { .. } => "IrreducibleAllConditions",
            Certificate::NotRigid { .. } => "NotRigid",
            Certificate::NoLengthEdges { .. } => "NoLengthEdges",
            Certificate::Not2Connected { .. } => "Not2Connected",
            Certificate::NotDirectionBalanced { .. } => "NotDirectionBalanced",
            Certificate::NotRedundantlyRigid { .. } => "NotRedundantlyRigid",
        }
    }

    /// One-line justification for text output.
    pub fn explain(&self) -> String {
        match self {
            Certificate::TrivialSingleVertex => "a single vertex is globally rigid".into(),
            Certificate::RigidWithOneLengthEdge { length_edge } => {
                format!("rigid with exactly one length edge ({length_edge})")
            }
            Certificate::IrreducibleAllConditions { vertices, .. } => format!(
                "direction-irreducible reduction on {vertices} vertices is 2-connected, direction-balanced and redundantly rigid"
            ),
            Certificate::NotRigid { rank, required } => {
                format!("not rigid: rank {rank} < {required}")
            }
            Certificate::NoLengthEdges { rank, required } => {
                format!("no length edges, so not rigid: rank {rank} < {required}")
            }
            Certificate::Not2Connected { witness } => match witness {
                CutWitness::CutVertex { vertex } => {
                    format!("reduced graph is not 2-connected: {vertex} is a cut vertex")
                }
                CutWitness::Disconnected { component } => {
                    format!("reduced graph is disconnected: component {}", component.join(","))
                }
            },
            Certificate::NotDirectionBalanced { separation } => format!(
                "reduced graph is not direction-balanced: side {{{}}} of the separation {{{},{}}} has no direction edge",
                separation.side.join(","),
                separation.cut_pair[0],
                separation.cut_pair[1]
            ),
            Certificate::NotRedundantlyRigid { edge } => {
                format!("reduced graph is not redundantly rigid: deleting {edge} destroys rigidity")
            }
        }
    }
}

pub const NOTE_YES: &str = "every generic realisation is globally rigid";
pub const NOTE_NO: &str = "some generic realisation is not globally rigid; whether another generic realisation can be globally rigid is an open question";

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Verdict {
    pub answer: Answer,
    pub certificate: Certificate,
    /// Present when the reduction stage ran.
    pub trace: Option<ReductionTrace>,
}

impl Verdict {
    fn new(certificate: Certificate, trace: Option<ReductionTrace>) -> Self {
        Verdict {
            answer: certificate.answer(),
            certificate,
            trace,
        }
    }

    pub fn note(&self) -> &'static str {
        if self.answer.is_yes() {
            NOTE_YES
        } else {
            NOTE_NO
        }
    }

    pub fn to_value(&self) -> Value {
        json!({
            "answer": self.answer,
            "certificate": self.certificate,
            "trace": self.trace.as_ref().map(ReductionTrace::to_value),
            "note": self.note(),
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DecideOptions {
    pub settings: Settings,
    /// Answer rigid graphs with one length edge immediately. Turning this
    /// off sends them through the reduction stage instead.
    pub use_single_length_fast_path: bool,
}

impl Default for DecideOptions {
    fn default() -> Self {
        DecideOptions {
            settings: Settings::default(),
            use_single_length_fast_path: true,
        }
    }
}

pub fn decide_global_rigidity(g: &MixedGraph, settings: &Settings) -> Verdict {
    decide_with(
        g,
        &DecideOptions {
            settings: *settings,
            ..DecideOptions::default()
        },
    )
}

pub fn decide_with(g: &MixedGraph, options: &DecideOptions) -> Verdict {
    let s = &options.settings;
    let n = g.vertex_count();
    if n == 1 {
        return Verdict::new(Certificate::TrivialSingleVertex, None);
    }
    let rank = matroid::generic_rank(g, None, s);
    let required = 2 * n.saturating_sub(1);
    if g.len_count() == 0 {
        return Verdict::new(Certificate::NoLengthEdges { rank, required }, None);
    }
    if rank < required {
        return Verdict::new(Certificate::NotRigid { rank, required }, None);
    }
    if options.use_single_length_fast_path && g.len_count() == 1 {
        let length_edge = g.edge_ref(g.len_edges()[0]);
        return Verdict::new(Certificate::RigidWithOneLengthEdge { length_edge }, None);
    }

    let trace = reduce_fully(g, s);
    let h = &trace.result;
    let certificate = if h.len_count() == 1 {
        Certificate::RigidWithOneLengthEdge {
            length_edge: h.edge_ref(h.len_edges()[0]),
        }
    } else if let Some(witness) = cut_witness(h) {
        Certificate::Not2Connected { witness }
    } else if let Some(separation) = balance_violation(h) {
        Certificate::NotDirectionBalanced { separation }
    } else {
        match matroid::redundancy_failure(h, s) {
            Some(RedundancyFailure::Edge(e)) => Certificate::NotRedundantlyRigid { edge: h.edge_ref(e) },
            Some(RedundancyFailure::NotRigid) => unreachable!("reductions preserve rigidity"),
            None => Certificate::IrreducibleAllConditions {
                reduced_hash: h.canonical_hash(),
                vertices: h.vertex_count(),
                rank: 2 * h.vertex_count() - 2,
            },
        }
    };
    Verdict::new(certificate, Some(trace))
}

/// Re-checks a verdict against `g` by re-running the predicate its
/// certificate refers to.
pub fn verify(g: &MixedGraph, verdict: &Verdict, settings: &Settings) -> Result<(), String> {
    if verdict.answer != verdict.certificate.answer() {
        return Err("answer does not match the certificate".into());
    }
    let h = match &verdict.trace {
        Some(t) => replay(g, t, settings).map_err(|e| e.to_string())?,
        None => g.clone(),
    };
    let n = g.vertex_count();
    let ok = |cond: bool, msg: &str| if cond { Ok(()) } else { Err(msg.to_string()) };
    match &verdict.certificate {
        Certificate::TrivialSingleVertex => ok(n == 1, "more than one vertex"),
        Certificate::NoLengthEdges { rank, required } => {
            ok(g.len_count() == 0 && n >= 2, "graph has length edges")?;
            ok(
                *rank == matroid::generic_rank(g, None, settings) && rank < required,
                "rank mismatch",
            )
        }
        Certificate::NotRigid { rank, required } => {
            ok(*required == 2 * n - 2, "wrong rigidity threshold")?;
            ok(
                *rank == matroid::generic_rank(g, None, settings) && rank < required,
                "rank mismatch",
            )
        }
        Certificate::RigidWithOneLengthEdge { length_edge } => {
            ok(matroid::is_rigid(g, settings), "graph is not rigid")?;
            ok(
                h.len_count() == 1 && h.find_edge_ref(length_edge).is_some(),
                "not exactly the named length edge",
            )
        }
        Certificate::IrreducibleAllConditions { reduced_hash, .. } => {
            ok(&h.canonical_hash() == reduced_hash, "reduced graph hash mismatch")?;
            ok(matroid::is_rigid(g, settings), "graph is not rigid")?;
            ok(cut_witness(&h).is_none(), "reduced graph is not 2-connected")?;
            ok(
                balance_violation(&h).is_none(),
                "reduced graph is not direction-balanced",
            )?;
            ok(
                matroid::is_redundantly_rigid(&h, settings),
                "reduced graph is not redundantly rigid",
            )
        }
        Certificate::Not2Connected { witness } => {
            let comps = match witness {
                CutWitness::CutVertex { vertex } => {
                    let v = h.index_of(vertex).ok_or("unknown cut vertex")?;
                    h.components_without(&[v]).len()
                }
                CutWitness::Disconnected { .. } => h.components_without(&[]).len(),
            };
            ok(comps >= 2, "witness does not disconnect the graph")
        }
        Certificate::NotDirectionBalanced { separation } => {
            let a = h.index_of(&separation.cut_pair[0]).ok_or("unknown vertex")?;
            let b = h.index_of(&separation.cut_pair[1]).ok_or("unknown vertex")?;
            let comps = h.components_without(&[a, b]);
            let side: Vec<usize> = separation
                .side
                .iter()
                .map(|v| h.index_of(v).ok_or("unknown vertex"))
                .collect::<Result<_, _>>()?;
            let is_component = comps.iter().any(|c| h.names(c) == separation.side);
            let touches_direction = h
                .edges()
                .iter()
                .any(|e| e.is_direction() && (side.contains(&e.u) || side.contains(&e.v)));
            ok(
                comps.len() >= 2 && is_component && !touches_direction,
                "separation is not a violation",
            )
        }
        Certificate::NotRedundantlyRigid { edge } => {
            let e = h.find_edge_ref(edge).ok_or("edge not in reduced graph")?;
            ok(
                matroid::is_rigid(&h, settings) && !matroid::is_rigid(&h.without_edge(e), settings),
                "edge deletion keeps the graph rigid",
            )
        }
    }
}

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum DecideError {
    #[error("graph has {edges} edges, more than 2|V| - 1 = {limit}")]
    TooManyEdges { edges: usize, limit: usize },
}

/// Outcome of the characterisation for sparse graphs.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SparseVerdict {
    pub answer: Answer,
    pub reason: String,
    /// The unique circuit, when `|E| = 2|V| - 1` and the graph is rigid.
    pub circuit: Option<Vec<EdgeRef>>,
}

/// Independent check for graphs with `|E| <= 2|V| - 1`: yes iff rigid and
/// either one length edge, or `|E| = 2|V| - 1` with a unique circuit that is
/// mixed, direction-balanced and contains every length edge.
pub fn decide_sparse(g: &MixedGraph, settings: &Settings) -> Result<SparseVerdict, DecideError> {
    let n = g.vertex_count();
    let limit = (2 * n).saturating_sub(1);
    if g.edge_count() > limit {
        return Err(DecideError::TooManyEdges {
            edges: g.edge_count(),
            limit,
        });
    }
    let verdict = |yes: bool, reason: &str, circuit: Option<Vec<EdgeRef>>| SparseVerdict {
        answer: if yes {
            Answer::AllGenericGloballyRigid
        } else {
            Answer::NotAll
        },
        reason: reason.into(),
        circuit,
    };
    if n == 1 {
        return Ok(verdict(true, "single vertex", None));
    }
    let view = MatroidView::new(g, settings);
    if !view.is_rigid() {
        return Ok(verdict(false, "not rigid", None));
    }
    if g.len_count() == 1 {
        return Ok(verdict(true, "rigid with one length edge", None));
    }
    if g.edge_count() < limit {
        return Ok(verdict(false, "minimally rigid with two or more length edges", None));
    }
    let circuits = view.fundamental_circuits();
    debug_assert_eq!(circuits.len(), 1);
    let c = circuits.values().next().expect("one edge beyond a basis").clone();
    let refs = Some(g.edge_refs(&c));
    let mixed = c.iter().any(|&e| g.edge(e).is_length()) && c.iter().any(|&e| g.edge(e).is_direction());
    if !mixed {
        return Ok(verdict(false, "the unique circuit is pure", refs));
    }
    if !g.len_edges().iter().all(|e| c.contains(e)) {
        return Ok(verdict(false, "a length edge lies outside the unique circuit", refs));
    }
    let circuit_graph = g.with_edges(&c).induced(&g.support(&c));
    if balance_violation(&circuit_graph).is_some() {
        return Ok(verdict(false, "the unique circuit is not direction-balanced", refs));
    }
    Ok(verdict(
        true,
        "unique circuit is mixed, direction-balanced and contains every length edge",
        refs,
    ))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdgeCondition {
    pub edge: EdgeRef,
    pub holds: bool,
}

/// Every named condition, evaluated independently.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConditionsReport {
    pub vertices: usize,
    pub direction_edges: usize,
    pub length_edges: usize,
    pub rank: usize,
    pub rigid: bool,
    pub redundantly_rigid: bool,
    pub two_connected: bool,
    pub cut_witness: Option<CutWitness>,
    pub direction_balanced: bool,
    pub balance_violation: Option<Separation>,
    pub m_connected: bool,
    pub m_components: usize,
    pub direction_independent: bool,
    pub bounded: bool,
    /// `G - e` is rigid, for each length edge.
    pub length_redundancy: Vec<EdgeCondition>,
    /// `G - e` is bounded, for each direction edge.
    pub direction_edge_boundedness: Vec<EdgeCondition>,
}

pub fn conditions_report(g: &MixedGraph, settings: &Settings) -> ConditionsReport {
    let view = MatroidView::new(g, settings);
    let cut = cut_witness(g);
    let balance = balance_violation(g);
    let per_edge = |ids: Vec<usize>, test: &dyn Fn(&MixedGraph) -> bool| -> Vec<EdgeCondition> {
        ids.into_iter()
            .map(|e| EdgeCondition {
                edge: g.edge_ref(e),
                holds: test(&g.without_edge(e)),
            })
            .collect()
    };
    ConditionsReport {
        vertices: g.vertex_count(),
        direction_edges: g.dir_count(),
        length_edges: g.len_count(),
        rank: view.rank(),
        rigid: view.is_rigid(),
        redundantly_rigid: matroid::is_redundantly_rigid(g, settings),
        two_connected: cut.is_none(),
        cut_witness: cut,
        direction_balanced: balance.is_none(),
        balance_violation: balance,
        m_connected: view.is_m_connected(),
        m_components: view.components().len(),
        direction_independent: matroid::direction_independent(g, settings),
        bounded: is_bounded(g, settings),
        length_redundancy: per_edge(g.len_edges(), &|h| matroid::is_rigid(h, settings)),
        direction_edge_boundedness: per_edge(g.dir_edges(), &|h| is_bounded(h, settings)),
    }
}
