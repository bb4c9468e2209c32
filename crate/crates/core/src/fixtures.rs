//! Small named graphs used throughout the tests, benches and the CLI self-test.
//! The same graphs ship as JSON under `crates/core/tests/fixtures/`.

use crate::graph::EdgeKind::{self, Direction as D, Length as L};
use crate::graph::MixedGraph;

fn graph(vertices: &[&str], edges: &[(&str, &str, EdgeKind)]) -> MixedGraph {
    MixedGraph::new(vertices.iter().copied(), edges).expect("fixture is valid")
}

/// One direction and one length edge on the same pair.
pub fn digon() -> MixedGraph {
    graph(&["a", "b"], &[("a", "b", D), ("a", "b", L)])
}

pub fn tri_l() -> MixedGraph {
    graph(&["a", "b", "c"], &[("a", "b", L), ("b", "c", L), ("a", "c", L)])
}

fn k4(kind: EdgeKind) -> MixedGraph {
    let vs = ["a", "b", "c", "d"];
    let mut edges = Vec::new();
    for i in 0..4 {
        for j in i + 1..4 {
            edges.push((vs[i], vs[j], kind));
        }
    }
    graph(&vs, &edges)
}

pub fn k4_d() -> MixedGraph {
    k4(D)
}

pub fn k4_l() -> MixedGraph {
    k4(L)
}

pub fn hat() -> MixedGraph {
    graph(
        &["a", "b", "c"],
        &[("a", "b", L), ("a", "b", D), ("c", "a", D), ("c", "b", D)],
    )
}

pub fn pend() -> MixedGraph {
    graph(&["a", "b", "c"], &[("a", "b", L), ("a", "b", D), ("b", "c", D)])
}

/// A mixed circuit on three vertices.
pub fn mc5() -> MixedGraph {
    graph(
        &["a", "b", "c"],
        &[
            ("a", "b", L),
            ("b", "c", L),
            ("c", "a", L),
            ("a", "b", D),
            ("b", "c", D),
        ],
    )
}

pub fn lolly() -> MixedGraph {
    graph(
        &["a", "b", "c", "d"],
        &[
            ("a", "b", L),
            ("b", "c", L),
            ("c", "a", L),
            ("a", "b", D),
            ("b", "c", D),
            ("a", "d", D),
            ("a", "d", L),
        ],
    )
}

const BOWTIE_LENGTHS: [(&str, &str, EdgeKind); 5] = [
    ("u", "x", L),
    ("x", "v", L),
    ("u", "y", L),
    ("y", "v", L),
    ("u", "v", L),
];

pub fn bowtie_l() -> MixedGraph {
    graph(&["u", "v", "x", "y"], &BOWTIE_LENGTHS)
}

pub fn bowtie_mix() -> MixedGraph {
    let mut edges = BOWTIE_LENGTHS.to_vec();
    edges.push(("u", "x", D));
    edges.push(("v", "y", D));
    graph(&["u", "v", "x", "y"], &edges)
}

/// Every fixture with its file stem.
pub fn all() -> Vec<(&'static str, MixedGraph)> {
    vec![
        ("digon", digon()),
        ("tri_l", tri_l()),
        ("k4_d", k4_d()),
        ("k4_l", k4_l()),
        ("hat", hat()),
        ("pend", pend()),
        ("mc5", mc5()),
        ("lolly", lolly()),
        ("bowtie_l", bowtie_l()),
        ("bowtie_mix", bowtie_mix()),
    ]
}

pub fn by_name(name: &str) -> Option<MixedGraph> {
    all()
        .into_iter()
        .find(|(n, _)| n.eq_ignore_ascii_case(name))
        .map(|(_, g)| g)
}
