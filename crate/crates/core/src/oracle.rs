//! Exponential-time reference implementations. They use only counting and
//! enumeration, never the rigidity matrix, and serve as ground truth for the
//! fast algorithms on small inputs.

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::graph::{EdgeKind, MixedGraph, Multigraph};
use crate::packing::{PackingResult, PackingVerdict, PartitionDeficit};
use crate::union_find::UnionFind;

pub const MAX_RANK_EDGES: usize = 20;
pub const MAX_BRUTE_VERTICES: usize = 6;
pub const MAX_PACKING_EDGES: usize = 14;
/// Vertex subsets are enumerated as bitmasks.
pub const MAX_COUNT_VERTICES: usize = 16;

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum OracleError {
    #[error("{what} has size {size}, above the oracle limit {limit}")]
    TooLarge {
        what: &'static str,
        size: usize,
        limit: usize,
    },
    #[error("maximal bounded sets do not partition the vertices")]
    PartitionFailure,
}

fn guard(what: &'static str, size: usize, limit: usize) -> Result<(), OracleError> {
    if size > limit {
        Err(OracleError::TooLarge { what, size, limit })
    } else {
        Ok(())
    }
}

/// Edge counts of every vertex subset, updated one edge at a time.
struct CountTable {
    n: usize,
    all: Vec<u32>,
    dir: Vec<u32>,
    len: Vec<u32>,
}

impl CountTable {
    fn new(n: usize) -> Self {
        let size = 1usize << n;
        CountTable {
            n,
            all: vec![0; size],
            dir: vec![0; size],
            len: vec![0; size],
        }
    }

    /// Supersets of `{u, v}` in the vertex lattice.
    fn supersets(&self, u: usize, v: usize) -> impl Iterator<Item = usize> {
        let base = (1usize << u) | (1usize << v);
        let rest = ((1usize << self.n) - 1) & !base;
        let mut sub = rest;
        let mut done = false;
        std::iter::from_fn(move || {
            if done {
                return None;
            }
            let x = sub | base;
            if sub == 0 {
                done = true;
            } else {
                sub = (sub - 1) & rest;
            }
            Some(x)
        })
    }

    /// Whether adding the edge keeps every count within bounds.
    fn fits(&self, u: usize, v: usize, kind: EdgeKind) -> bool {
        self.supersets(u, v).all(|x| {
            let cap = 2 * x.count_ones();
            let pure = match kind {
                EdgeKind::Direction => self.dir[x],
                EdgeKind::Length => self.len[x],
            };
            self.all[x] + 3 <= cap && pure + 4 <= cap
        })
    }

    fn add(&mut self, u: usize, v: usize, kind: EdgeKind, delta: i32) {
        let xs: Vec<usize> = self.supersets(u, v).collect();
        for x in xs {
            let bump = |c: &mut u32| *c = (*c as i32 + delta) as u32;
            bump(&mut self.all[x]);
            match kind {
                EdgeKind::Direction => bump(&mut self.dir[x]),
                EdgeKind::Length => bump(&mut self.len[x]),
            }
        }
    }
}

/// Count test: every `X` with `|X| >= 2` spans at most `2|X| - 2` edges of
/// `ids`, and at most `2|X| - 3` of either single type.
pub fn is_independent_by_counts(g: &MixedGraph, ids: &[usize]) -> bool {
    assert!(g.vertex_count() <= MAX_COUNT_VERTICES);
    let mut table = CountTable::new(g.vertex_count());
    ids.iter().all(|&i| {
        let e = g.edge(i);
        let ok = table.fits(e.u, e.v, e.kind);
        table.add(e.u, e.v, e.kind, 1);
        ok
    })
}

/// Size of a largest count-independent edge subset. The count-independent
/// sets form a matroid, so a greedy pass reaches the maximum.
pub fn rank_by_counts(g: &MixedGraph) -> Result<usize, OracleError> {
    guard("edge set", g.edge_count(), MAX_RANK_EDGES)?;
    guard("vertex set", g.vertex_count(), MAX_COUNT_VERTICES)?;
    let mut table = CountTable::new(g.vertex_count());
    let mut rank = 0;
    for e in g.edges() {
        if table.fits(e.u, e.v, e.kind) {
            table.add(e.u, e.v, e.kind, 1);
            rank += 1;
        }
    }
    Ok(rank)
}

/// Largest count-independent subset by trying every edge subset.
pub fn rank_by_subsets(g: &MixedGraph) -> Result<usize, OracleError> {
    guard("edge set", g.edge_count(), 12)?;
    let m = g.edge_count();
    Ok((0u32..1 << m)
        .filter_map(|mask| {
            let ids: Vec<usize> = (0..m).filter(|&i| mask >> i & 1 == 1).collect();
            is_independent_by_counts(g, &ids).then_some(ids.len())
        })
        .max()
        .unwrap_or(0))
}

/// Every minimal count-dependent edge set, each sorted, in discovery order.
pub fn enumerate_circuits(g: &MixedGraph) -> Result<Vec<Vec<usize>>, OracleError> {
    guard("edge set", g.edge_count(), MAX_RANK_EDGES)?;
    guard("vertex set", g.vertex_count(), MAX_COUNT_VERTICES)?;
    let mut circuits = Vec::new();
    let mut table = CountTable::new(g.vertex_count());
    let mut stack = Vec::new();
    extend_circuits(g, 0, &mut table, &mut stack, &mut circuits);
    Ok(circuits)
}

/// Depth-first over independent sets in increasing edge order; a dependent
/// extension is recorded when every one-smaller subset is independent.
fn extend_circuits(
    g: &MixedGraph,
    start: usize,
    table: &mut CountTable,
    current: &mut Vec<usize>,
    out: &mut Vec<Vec<usize>>,
) {
    for i in start..g.edge_count() {
        let e = g.edge(i);
        if table.fits(e.u, e.v, e.kind) {
            table.add(e.u, e.v, e.kind, 1);
            current.push(i);
            extend_circuits(g, i + 1, table, current, out);
            current.pop();
            table.add(e.u, e.v, e.kind, -1);
        } else {
            let mut candidate = current.clone();
            candidate.push(i);
            let minimal = current.iter().all(|&f| {
                let rest: Vec<usize> = candidate.iter().copied().filter(|&x| x != f).collect();
                is_independent_by_counts(g, &rest)
            });
            if minimal {
                out.push(candidate);
            }
        }
    }
}

fn mask_members(mask: usize, n: usize) -> Vec<usize> {
    (0..n).filter(|&v| mask >> v & 1 == 1).collect()
}

/// A vertex set is bounded when its induced subgraph, with a direction edge
/// added beside every length edge, has count rank `2|X| - 2`.
fn bounded_by_counts(g: &MixedGraph, set: &[usize]) -> bool {
    if set.len() <= 1 {
        return true;
    }
    let h = g.induced(set);
    let mut edges: Vec<(usize, usize, EdgeKind)> = h.edges().iter().map(|e| (e.u, e.v, e.kind)).collect();
    for e in h.edges().iter().filter(|e| e.is_length()) {
        if h.find_edge(e.u, e.v, EdgeKind::Direction).is_none() {
            edges.push((e.u, e.v, EdgeKind::Direction));
        }
    }
    let plus = MixedGraph::with_numbered_vertices(h.vertex_count(), &edges);
    let mut table = CountTable::new(plus.vertex_count());
    let mut rank = 0;
    for e in plus.edges() {
        if table.fits(e.u, e.v, e.kind) {
            table.add(e.u, e.v, e.kind, 1);
            rank += 1;
        }
    }
    rank == 2 * set.len() - 2
}

/// Maximal bounded vertex sets, checked to partition `V`, each sorted and
/// ordered by smallest member.
pub fn bounded_components_brute(g: &MixedGraph) -> Result<Vec<Vec<usize>>, OracleError> {
    let n = g.vertex_count();
    guard("vertex set", n, MAX_BRUTE_VERTICES)?;
    let bounded: Vec<usize> = (1usize..1 << n)
        .filter(|&mask| bounded_by_counts(g, &mask_members(mask, n)))
        .collect();
    let maximal: Vec<usize> = bounded
        .iter()
        .copied()
        .filter(|&x| !bounded.iter().any(|&y| y != x && y & x == x))
        .collect();
    let mut covered = 0usize;
    for &x in &maximal {
        if covered & x != 0 {
            return Err(OracleError::PartitionFailure);
        }
        covered |= x;
    }
    if covered != (1 << n) - 1 {
        return Err(OracleError::PartitionFailure);
    }
    let mut blocks: Vec<Vec<usize>> = maximal.iter().map(|&x| mask_members(x, n)).collect();
    blocks.sort();
    Ok(blocks)
}

fn is_spanning_tree(m: &Multigraph, ids: &[usize]) -> bool {
    let mut uf = UnionFind::new(m.vertex_count());
    ids.len() + 1 == m.vertex_count() && ids.iter().all(|&i| uf.union(m.edges[i].u, m.edges[i].v))
}

/// A spanning tree inside `ids`, if `ids` connects every vertex.
fn spanning_tree_within(m: &Multigraph, ids: &[usize]) -> Option<Vec<usize>> {
    let mut uf = UnionFind::new(m.vertex_count());
    let tree: Vec<usize> = ids
        .iter()
        .copied()
        .filter(|&i| uf.union(m.edges[i].u, m.edges[i].v))
        .collect();
    (tree.len() + 1 == m.vertex_count()).then_some(tree)
}

/// Every partition of `0..n` into non-empty blocks.
fn set_partitions(n: usize) -> Vec<Vec<usize>> {
    // Restricted growth strings: label[v] <= 1 + max(label[..v]).
    let mut out = Vec::new();
    let mut labels = vec![0usize; n];
    fn go(v: usize, max: usize, labels: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if v == labels.len() {
            out.push(labels.clone());
            return;
        }
        for l in 0..=max + 1 {
            labels[v] = l;
            go(v + 1, max.max(l), labels, out);
        }
    }
    if n == 0 {
        return vec![Vec::new()];
    }
    go(1, 0, &mut labels, &mut out);
    out
}

/// Two edge-disjoint spanning trees by exhaustive search, with brute-force
/// certificates: a violating vertex set when the edges cannot be covered by
/// two forests, and a deficient partition when no tree pair exists.
pub fn packing_brute(m: &Multigraph) -> Result<PackingResult, OracleError> {
    guard("edge set", m.edge_count(), MAX_PACKING_EDGES)?;
    let n = m.vertex_count();
    guard("vertex set", n, MAX_COUNT_VERTICES)?;
    let e = m.edge_count();

    let mut trees = None;
    if n <= 1 {
        trees = Some([Vec::new(), Vec::new()]);
    } else if e >= 2 * (n - 1) {
        'search: for mask in 0u32..1 << e {
            if mask.count_ones() as usize != n - 1 {
                continue;
            }
            let first: Vec<usize> = (0..e).filter(|&i| mask >> i & 1 == 1).collect();
            if !is_spanning_tree(m, &first) {
                continue;
            }
            let rest: Vec<usize> = (0..e).filter(|&i| mask >> i & 1 == 0).collect();
            if let Some(second) = spanning_tree_within(m, &rest) {
                trees = Some([first, second]);
                break 'search;
            }
        }
    }

    let violator = (1usize..1 << n).find_map(|x| {
        let set = mask_members(x, n);
        (m.induced_count(&set) + 1 >= 2 * set.len()).then_some(set)
    });

    let verdict = match &trees {
        Some(t) if t[0].len() + t[1].len() == m.edges.iter().filter(|x| x.u != x.v).count() => PackingVerdict::Union,
        Some(_) => PackingVerdict::Contains,
        None => PackingVerdict::Neither,
    };
    let deficit = if verdict == PackingVerdict::Neither {
        set_partitions(n).into_iter().find_map(|labels| {
            let parts = labels.iter().max().map_or(0, |&x| x + 1);
            let cross = m.edges.iter().filter(|x| labels[x.u] != labels[x.v]).count();
            (cross + 2 < 2 * parts).then(|| PartitionDeficit {
                parts: (0..parts)
                    .map(|p| (0..n).filter(|&v| labels[v] == p).collect())
                    .collect(),
                cross_edges: cross,
            })
        })
    } else {
        None
    };
    Ok(PackingResult {
        verdict,
        trees,
        violator,
        deficit,
    })
}

fn connected_without(g: &MixedGraph, removed: &[usize]) -> bool {
    let mut uf = UnionFind::new(g.vertex_count());
    for e in g.edges() {
        if !removed.contains(&e.u) && !removed.contains(&e.v) {
            uf.union(e.u, e.v);
        }
    }
    let mut alive = (0..g.vertex_count()).filter(|v| !removed.contains(v));
    match alive.next() {
        None => true,
        Some(first) => alive.all(|v| uf.same(first, v)),
    }
}

/// Connected, and no single vertex deletion disconnects it.
pub fn is_2connected_brute(g: &MixedGraph) -> bool {
    let n = g.vertex_count();
    connected_without(g, &[]) && (n <= 2 || (0..n).all(|v| connected_without(g, &[v])))
}

/// For every pair `{u, v}` and every split of the remaining vertices into two
/// non-empty sides with no edge between them, each side has a direction edge
/// with an endpoint on that side.
pub fn direction_balanced_brute(g: &MixedGraph) -> Result<bool, OracleError> {
    let n = g.vertex_count();
    guard("vertex set", n, MAX_COUNT_VERTICES)?;
    for u in 0..n {
        for v in u + 1..n {
            let rest: Vec<usize> = (0..n).filter(|&w| w != u && w != v).collect();
            let k = rest.len();
            for mask in 1usize..(1 << k) - 1 {
                let side = |w: usize| -> Option<bool> { rest.iter().position(|&r| r == w).map(|p| mask >> p & 1 == 1) };
                let separated = g.edges().iter().all(|e| match (side(e.u), side(e.v)) {
                    (Some(a), Some(b)) => a == b,
                    _ => true,
                });
                if !separated {
                    continue;
                }
                for which in [true, false] {
                    let has_dir = g
                        .edges()
                        .iter()
                        .any(|e| e.is_direction() && (side(e.u) == Some(which) || side(e.v) == Some(which)));
                    if !has_dir {
                        return Ok(false);
                    }
                }
            }
        }
    }
    Ok(true)
}

/// Result of one oracle evaluation, with a witness where one exists.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OracleReport {
    pub predicate: String,
    pub input_hash: String,
    pub value: Value,
    pub witness: Option<Value>,
}

/// Every oracle evaluated on one graph (within guards).
pub fn report_all(g: &MixedGraph) -> Vec<OracleReport> {
    let hash = g.canonical_hash();
    let report = |predicate: &str, value: Value, witness: Option<Value>| OracleReport {
        predicate: predicate.into(),
        input_hash: hash.clone(),
        value,
        witness,
    };
    let mut out = Vec::new();
    if let Ok(r) = rank_by_counts(g) {
        out.push(report("rank_by_counts", json!(r), None));
    }
    if g.edge_count() <= 14 {
        if let Ok(cs) = enumerate_circuits(g) {
            let named: Vec<Vec<String>> = cs
                .iter()
                .map(|c| g.edge_refs(c).iter().map(ToString::to_string).collect())
                .collect();
            out.push(report("circuits", json!(cs.len()), Some(json!(named))));
        }
    }
    if let Ok(blocks) = bounded_components_brute(g) {
        let named: Vec<Vec<String>> = blocks.iter().map(|b| g.names(b)).collect();
        out.push(report("bounded_components", json!(blocks.len()), Some(json!(named))));
    }
    out.push(report("two_connected", json!(is_2connected_brute(g)), None));
    if let Ok(b) = direction_balanced_brute(g) {
        out.push(report("direction_balanced", json!(b), None));
    }
    out
}
