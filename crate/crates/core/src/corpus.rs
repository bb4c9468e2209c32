//! Graph families for exhaustive and randomised testing.

use rand::seq::{IndexedRandom, SliceRandom};
use rand::Rng;

use crate::exact::Rational;
use crate::graph::{EdgeKind, MixedGraph, Multigraph};
use crate::matroid::stream_rng;
use crate::realize::{random_minimally_rigid, SlopeProblem};

const STREAM_CORPUS: u64 = 5 << 32;

fn pairs(n: usize) -> Vec<(usize, usize)> {
    (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))).collect()
}

/// Every mixed graph on `n` vertices: each pair carries nothing, a
/// direction edge, a length edge or both (`4^(n choose 2)` graphs).
pub fn exhaustive(n: usize) -> Vec<MixedGraph> {
    let ps = pairs(n);
    let total = 1usize << (2 * ps.len());
    (0..total)
        .map(|code| {
            let mut edges = Vec::new();
            for (i, &(a, b)) in ps.iter().enumerate() {
                if code >> (2 * i) & 1 == 1 {
                    edges.push((a, b, EdgeKind::Direction));
                }
                if code >> (2 * i + 1) & 1 == 1 {
                    edges.push((a, b, EdgeKind::Length));
                }
            }
            MixedGraph::with_numbered_vertices(n, &edges)
        })
        .collect()
}

/// All mixed graphs on at most `max_n` vertices (at least one vertex).
pub fn exhaustive_up_to(max_n: usize) -> Vec<MixedGraph> {
    (1..=max_n).flat_map(exhaustive).collect()
}

/// `m` distinct typed edges chosen uniformly on `n` vertices.
pub fn random_graph<R: Rng>(rng: &mut R, n: usize, m: usize) -> MixedGraph {
    let mut slots: Vec<(usize, usize, EdgeKind)> = pairs(n)
        .into_iter()
        .flat_map(|(a, b)| [(a, b, EdgeKind::Direction), (a, b, EdgeKind::Length)])
        .collect();
    slots.shuffle(rng);
    slots.truncate(m.min(slots.len()));
    MixedGraph::with_numbered_vertices(n, &slots)
}

/// A minimally rigid graph with up to `extra` random edges added.
pub fn random_rigid_graph<R: Rng>(rng: &mut R, n: usize, extra: usize, max_edges: usize) -> MixedGraph {
    let budget = if n == 1 { 0 } else { rng.random_range(1..=2 * n - 3) };
    let base = random_minimally_rigid(n, rng.random(), budget).expect("budget is feasible");
    let mut edges: Vec<(usize, usize, EdgeKind)> = base.edges().iter().map(|e| (e.u, e.v, e.kind)).collect();
    let mut free: Vec<(usize, usize, EdgeKind)> = pairs(n)
        .into_iter()
        .flat_map(|(a, b)| [(a, b, EdgeKind::Direction), (a, b, EdgeKind::Length)])
        .filter(|&(a, b, k)| base.find_edge(a, b, k).is_none())
        .collect();
    free.shuffle(rng);
    let add = rng.random_range(0..=extra).min(max_edges.saturating_sub(edges.len()));
    edges.extend(free.into_iter().take(add));
    MixedGraph::with_numbered_vertices(n, &edges)
}

/// `count` reproducible graphs on `min_n..=max_n` vertices with at most
/// `max_edges` edges. Half are uniform with edge counts around `2n - 2`,
/// half are minimally rigid graphs with a few extra edges.
pub fn random_corpus(seed: u64, count: usize, min_n: usize, max_n: usize, max_edges: usize) -> Vec<MixedGraph> {
    let mut rng = stream_rng(seed, STREAM_CORPUS);
    (0..count)
        .map(|i| {
            let n = rng.random_range(min_n..=max_n);
            if i % 2 == 0 {
                let lo = n.saturating_sub(1);
                let hi = (2 * n + 2).min(max_edges).max(lo);
                let m = rng.random_range(lo..=hi);
                random_graph(&mut rng, n, m)
            } else {
                random_rigid_graph(&mut rng, n, 3, max_edges)
            }
        })
        .collect()
}

/// The standard test corpus: every graph on at most four vertices plus
/// `random` seeded graphs on five to eight vertices with at most 20 edges.
pub fn standard_corpus(seed: u64, random: usize) -> Vec<MixedGraph> {
    let mut all = exhaustive_up_to(4);
    all.extend(random_corpus(seed, random, 5, 8, 20));
    all
}

/// A random multigraph on `n` vertices with `m` edges (no loops).
pub fn random_multigraph<R: Rng>(rng: &mut R, n: usize, m: usize) -> Multigraph {
    let ps = pairs(n);
    let chosen: Vec<(usize, usize)> = (0..m).filter_map(|_| ps.choose(rng).copied()).collect();
    Multigraph::from_pairs(n, &chosen)
}

/// Every loop-free multigraph on `n` vertices with exactly `m` edges, up to
/// edge order (multisets of vertex pairs).
pub fn exhaustive_multigraphs(n: usize, m: usize) -> Vec<Multigraph> {
    let ps = pairs(n);
    let mut out = Vec::new();
    let mut chosen = Vec::new();
    fn go(
        ps: &[(usize, usize)],
        start: usize,
        left: usize,
        n: usize,
        chosen: &mut Vec<(usize, usize)>,
        out: &mut Vec<Multigraph>,
    ) {
        if left == 0 {
            out.push(Multigraph::from_pairs(n, chosen));
            return;
        }
        for i in start..ps.len() {
            chosen.push(ps[i]);
            go(ps, i, left - 1, n, chosen, out);
            chosen.pop();
        }
    }
    if m == 0 || !ps.is_empty() {
        go(&ps, 0, m, n, &mut chosen, &mut out);
    }
    out
}

/// Every simple graph on `n` vertices with at most `max_m` edges, as
/// multigraphs.
pub fn exhaustive_simple(n: usize, max_m: usize) -> Vec<Multigraph> {
    let ps = pairs(n);
    (0u64..1 << ps.len())
        .filter(|mask| mask.count_ones() as usize <= max_m)
        .map(|mask| {
            let chosen: Vec<(usize, usize)> = (0..ps.len()).filter(|&i| mask >> i & 1 == 1).map(|i| ps[i]).collect();
            Multigraph::from_pairs(n, &chosen)
        })
        .collect()
}

/// A random direction-pure graph with `2n - 3` edges satisfying
/// `i(X) <= 2|X| - 3`, grown by vertex additions of degree two and
/// edge splits of degree three.
pub fn random_tight_direction_graph<R: Rng>(rng: &mut R, n: usize) -> MixedGraph {
    assert!(n >= 2);
    let mut edges: Vec<(usize, usize)> = vec![(0, 1)];
    for v in 2..n {
        if v >= 3 && rng.random_bool(0.5) {
            let (a, b) = edges.swap_remove(rng.random_range(0..edges.len()));
            let others: Vec<usize> = (0..v).filter(|&c| c != a && c != b).collect();
            let c = *others.choose(rng).expect("at least three vertices");
            edges.extend([(a, v), (b, v), (c, v)]);
        } else {
            let a = rng.random_range(0..v);
            let b = (a + rng.random_range(1..v)) % v;
            edges.extend([(a, v), (b, v)]);
        }
    }
    let typed: Vec<(usize, usize, EdgeKind)> = edges.into_iter().map(|(a, b)| (a, b, EdgeKind::Direction)).collect();
    MixedGraph::with_numbered_vertices(n, &typed)
}

/// A tight slope-realisation instance with distinct random slopes; `z0`,
/// `x0`, `y0` are three distinct random vertices when available.
pub fn random_slope_problem(seed: u64, n: usize) -> SlopeProblem {
    let mut rng = stream_rng(seed, STREAM_CORPUS + 1);
    let graph = random_tight_direction_graph(&mut rng, n);
    let mut slopes: Vec<Rational> = Vec::new();
    while slopes.len() < graph.edge_count() {
        let s = Rational::new(
            rng.random_range(-1000i64..=1000).into(),
            rng.random_range(1i64..=1000).into(),
        );
        if !slopes.contains(&s) {
            slopes.push(s);
        }
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(&mut rng);
    let pick = |i: usize| graph.name(order[i % n]).to_string();
    SlopeProblem {
        x0: pick(0),
        y0: pick(1),
        z0: pick(2),
        t2: Rational::new(rng.random_range(1i64..=100).into(), rng.random_range(1i64..=100).into()),
        slopes,
        graph,
    }
}
