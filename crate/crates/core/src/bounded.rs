//! Boundedness and the partition of a mixed graph into bounded components.

use serde_json::{json, Value};

use crate::field::{self, Echelon};
use crate::graph::{contract_length_edges, Edge, EdgeKind, MixedGraph};
use crate::matroid::{self, stream_rng, Settings, STREAM_FRAME};
use crate::packing::spanning_tree_packing;
use crate::realize::frame_row_mod_p;
use crate::union_find::UnionFind;

/// Vertex sets of the maximal bounded subgraphs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundedDecomposition {
    /// Sorted vertex indices, blocks ordered by smallest member.
    pub blocks: Vec<Vec<usize>>,
}

impl BoundedDecomposition {
    pub fn nontrivial_blocks(&self) -> Vec<&Vec<usize>> {
        self.blocks.iter().filter(|b| b.len() >= 2).collect()
    }

    pub fn block_of(&self, v: usize) -> usize {
        self.blocks
            .iter()
            .position(|b| b.binary_search(&v).is_ok())
            .expect("blocks partition the vertices")
    }

    pub fn named(&self, g: &MixedGraph) -> Vec<Vec<String>> {
        self.blocks.iter().map(|b| g.names(b)).collect()
    }

    pub fn to_value(&self, g: &MixedGraph) -> Value {
        let nontrivial: Vec<Vec<String>> = self.nontrivial_blocks().iter().map(|b| g.names(b)).collect();
        json!({ "blocks": self.named(g), "nontrivial_blocks": nontrivial })
    }
}

/// `G+`: a direction edge is added beside every length edge that lacks one.
pub fn augment(g: &MixedGraph) -> MixedGraph {
    let extra: Vec<Edge> = g
        .edges()
        .iter()
        .filter(|e| e.is_length() && g.find_edge(e.u, e.v, EdgeKind::Direction).is_none())
        .map(|e| Edge::new(e.u, e.v, EdgeKind::Direction))
        .collect();
    g.with_added(&extra)
}

/// `G` with its direction edges cut down to a maximal independent subset,
/// chosen greedily in canonical order.
pub fn independent_directions(g: &MixedGraph, settings: &Settings) -> MixedGraph {
    let (_, rejected) = matroid::greedy_independent(g, &g.dir_edges(), settings);
    let keep: Vec<usize> = (0..g.edge_count()).filter(|e| !rejected.contains(e)).collect();
    g.with_edges(&keep)
}

/// `G'/L` contains two edge-disjoint spanning trees.
pub fn is_bounded_by_packing(g: &MixedGraph, settings: &Settings) -> bool {
    let reduced = independent_directions(g, settings);
    spanning_tree_packing(&contract_length_edges(&reduced).graph).has_two_trees()
}

/// `G+` is rigid.
pub fn is_bounded_by_augmentation(g: &MixedGraph, settings: &Settings) -> bool {
    matroid::is_rigid(&augment(g), settings)
}

pub fn is_bounded(g: &MixedGraph, settings: &Settings) -> bool {
    let bounded = is_bounded_by_packing(g, settings);
    debug_assert_eq!(
        bounded,
        is_bounded_by_augmentation(g, settings),
        "boundedness routes disagree on {}",
        g.to_json()
    );
    bounded
}

/// Partition of `V` into the vertex sets of the bounded components.
///
/// After dropping dependent direction edges and contracting `L`, two
/// adjacent vertices of the contracted graph share a block when a pair of
/// fresh parallel edges between them is spanned in a random frame matrix,
/// i.e. when they lie in a common set carrying two edge-disjoint spanning
/// trees. Blocks are closed under this relation and pulled back.
pub fn bounded_components(g: &MixedGraph, settings: &Settings) -> BoundedDecomposition {
    let reduced = independent_directions(g, settings);
    let contraction = contract_length_edges(&reduced);
    let h = &contraction.graph;
    let k = h.vertex_count();

    let mut rng = stream_rng(settings.seed, STREAM_FRAME);
    let mut base = Echelon::new(2 * k);
    for e in &h.edges {
        let q = [field::random(&mut rng), field::random(&mut rng)];
        base.insert(frame_row_mod_p(e.u, e.v, q, k));
    }
    let fresh: Vec<[u64; 2]> = (0..2)
        .map(|_| [field::random(&mut rng), field::random(&mut rng)])
        .collect();

    let mut uf = UnionFind::new(k);
    for e in &h.edges {
        if uf.same(e.u, e.v) {
            continue;
        }
        let mut probe = base.clone();
        let linked = fresh.iter().all(|&q| !probe.insert(frame_row_mod_p(e.u, e.v, q, k)));
        if linked {
            uf.union(e.u, e.v);
        }
    }

    let mut pulled = UnionFind::new(g.vertex_count());
    let mut first_of = vec![usize::MAX; k];
    for v in 0..g.vertex_count() {
        let root = uf.find(contraction.vertex_map[v]);
        if first_of[root] == usize::MAX {
            first_of[root] = v;
        } else {
            pulled.union(first_of[root], v);
        }
    }
    let all: Vec<usize> = (0..g.vertex_count()).collect();
    BoundedDecomposition {
        blocks: pulled.classes_of(&all),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use EdgeKind::{Direction as D, Length as L};

    fn s() -> Settings {
        Settings::default()
    }

    fn blocks(g: &MixedGraph) -> Vec<Vec<String>> {
        bounded_components(g, &s()).named(g)
    }

    #[test]
    fn augmentation() {
        let tri = augment(&fixtures::tri_l());
        assert_eq!((tri.dir_count(), tri.len_count()), (3, 3));
        assert_eq!(augment(&fixtures::digon()), fixtures::digon());
        assert_eq!(augment(&fixtures::pend()), fixtures::pend());
    }

    #[test]
    fn boundedness_examples() {
        let dir = MixedGraph::new(["a", "b"], &[("a", "b", D)]).unwrap();
        let len = MixedGraph::new(["a", "b"], &[("a", "b", L)]).unwrap();
        assert!(!is_bounded(&dir, &s()));
        assert!(is_bounded(&len, &s()));
        assert!(is_bounded(&fixtures::mc5(), &s()));
        assert!(!is_bounded(&fixtures::pend(), &s()));
        assert!(is_bounded(&fixtures::tri_l(), &s()));
        assert!(!is_bounded(&fixtures::k4_d(), &s()));
    }

    #[test]
    fn decomposition_examples() {
        assert_eq!(blocks(&fixtures::pend()), vec![vec!["a", "b"], vec!["c"]]);
        let empty = MixedGraph::new(["a", "b", "c"], &[] as &[(&str, &str, EdgeKind)]).unwrap();
        assert_eq!(blocks(&empty), vec![vec!["a"], vec!["b"], vec!["c"]]);
        assert_eq!(blocks(&fixtures::hat()), vec![vec!["a", "b", "c"]]);
        let hat_minus_ca = fixtures::hat().without_edge(2);
        assert_eq!(blocks(&hat_minus_ca), vec![vec!["a", "b"], vec!["c"]]);
        // Two direction edges alone never bound a pair.
        let k4 = fixtures::k4_d();
        assert_eq!(bounded_components(&k4, &s()).blocks.len(), 4);
    }

    #[test]
    fn blocks_are_maximal_bounded_sets() {
        for (_, g) in fixtures::all() {
            let dec = bounded_components(&g, &s());
            for b in &dec.blocks {
                assert!(is_bounded(&g.induced(b), &s()));
            }
            for i in 0..dec.blocks.len() {
                for j in i + 1..dec.blocks.len() {
                    let mut union = dec.blocks[i].clone();
                    union.extend(&dec.blocks[j]);
                    union.sort_unstable();
                    assert!(!is_bounded(&g.induced(&union), &s()));
                }
            }
            for e in g.edges().iter().filter(|e| e.is_length()) {
                assert_eq!(dec.block_of(e.u), dec.block_of(e.v));
            }
            let connected = g.components_without(&[]).len() == 1;
            if connected {
                assert_eq!(is_bounded(&g, &s()), dec.blocks.len() == 1);
            }
        }
    }
}
