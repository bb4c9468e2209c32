//! Deterministic workloads shared by the benchmarks under `benches/`.

use rigikit_core::realize::random_minimally_rigid;
use rigikit_core::{corpus, MixedGraph, Multigraph, SlopeProblem};

pub const SIZES: [usize; 3] = [8, 16, 32];

/// A minimally rigid graph on `n` vertices with about a quarter length edges,
/// plus three extra edges so circuits exist.
pub fn rigid_graph(n: usize, seed: u64) -> MixedGraph {
    let base = random_minimally_rigid(n, seed, (n / 4).max(1)).expect("budget is feasible");
    let mut edges: Vec<_> = base.edges().iter().map(|e| (e.u, e.v, e.kind)).collect();
    let mut added = 0;
    for a in 0..n {
        for b in a + 1..n {
            for kind in [rigikit_core::EdgeKind::Direction, rigikit_core::EdgeKind::Length] {
                if added < 3 && base.find_edge(a, b, kind).is_none() && (a + 2 * b + seed as usize).is_multiple_of(5) {
                    edges.push((a, b, kind));
                    added += 1;
                }
            }
        }
    }
    MixedGraph::with_numbered_vertices(n, &edges)
}

/// The underlying multigraph of `rigid_graph(n, seed)`, which has 2n - 2 + 3
/// edges and so is a packing instance near the two-tree threshold.
pub fn packing_instance(n: usize, seed: u64) -> Multigraph {
    let g = rigid_graph(n, seed);
    let pairs: Vec<(usize, usize)> = g.edges().iter().map(|e| (e.u, e.v)).collect();
    Multigraph::from_pairs(n, &pairs)
}

pub fn slope_problem(n: usize, seed: u64) -> SlopeProblem {
    corpus::random_slope_problem(seed, n)
}
