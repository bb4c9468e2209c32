//! Packing two edge-disjoint spanning trees into a multigraph.
//!
//! Edges are inserted one at a time into a pair of forests; when an edge
//! closes a cycle in both, a breadth-first search over forest exchanges looks
//! for a shortest augmenting sequence (matroid partition). When the search
//! fails the set of reached edges yields the Nash-Williams / Tutte
//! certificates.

use std::collections::VecDeque;

use serde::{Deserialize, Serialize};

use crate::graph::Multigraph;
use crate::union_find::UnionFind;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum PackingVerdict {
    /// Exactly two edge-disjoint spanning trees partition the edge set.
    Union,
    /// Two edge-disjoint spanning trees exist and edges are left over.
    Contains,
    Neither,
}

/// A partition of the vertex set crossed by fewer than `2(parts - 1)` edges,
/// which rules out two edge-disjoint spanning trees.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PartitionDeficit {
    pub parts: Vec<Vec<usize>>,
    pub cross_edges: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PackingResult {
    pub verdict: PackingVerdict,
    /// Two edge-disjoint spanning trees (edge indices), when they exist.
    pub trees: Option<[Vec<usize>; 2]>,
    /// A vertex set `X` with `i(X) >= 2|X| - 1`, present whenever the edges
    /// cannot be covered by two forests.
    pub violator: Option<Vec<usize>>,
    /// Present exactly when the verdict is `Neither`.
    pub deficit: Option<PartitionDeficit>,
}

impl PackingResult {
    pub fn has_two_trees(&self) -> bool {
        self.verdict != PackingVerdict::Neither
    }
}

/// Path of forest edges between `a` and `b`, or `None` if they are not
/// connected in the forest.
fn forest_path(m: &Multigraph, assign: &[Option<u8>], forest: u8, a: usize, b: usize) -> Option<Vec<usize>> {
    let n = m.vertex_count();
    let mut adj: Vec<Vec<(usize, usize)>> = vec![Vec::new(); n];
    for (i, e) in m.edges.iter().enumerate() {
        if assign[i] == Some(forest) {
            adj[e.u].push((e.v, i));
            adj[e.v].push((e.u, i));
        }
    }
    let mut via = vec![None; n];
    let mut seen = vec![false; n];
    seen[a] = true;
    let mut queue = VecDeque::from([a]);
    while let Some(x) = queue.pop_front() {
        if x == b {
            let mut path = Vec::new();
            let mut cur = b;
            while let Some((prev, e)) = via[cur] {
                path.push(e);
                cur = prev;
            }
            return Some(path);
        }
        for &(y, e) in &adj[x] {
            if !seen[y] {
                seen[y] = true;
                via[y] = Some((x, e));
                queue.push_back(y);
            }
        }
    }
    None
}

/// Breadth-first exchange search from `sources`. Returns the augmenting
/// chain `(edge, forest)` from sink back to a source if one exists, otherwise
/// the set of reached edges.
fn exchange_search(m: &Multigraph, assign: &[Option<u8>], sources: &[usize]) -> Result<Vec<(usize, u8)>, Vec<bool>> {
    let mut reached = vec![false; m.edge_count()];
    let mut label: Vec<Option<(usize, u8)>> = vec![None; m.edge_count()];
    let mut queue = VecDeque::new();
    for &s in sources {
        reached[s] = true;
        queue.push_back(s);
    }
    while let Some(y) = queue.pop_front() {
        let e = m.edges[y];
        for forest in 0..2u8 {
            if assign[y] == Some(forest) {
                continue;
            }
            match forest_path(m, assign, forest, e.u, e.v) {
                None => {
                    // y fits into `forest`; unwind the chain of exchanges.
                    let mut chain = vec![(y, forest)];
                    let mut cur = y;
                    while let Some((pred, f)) = label[cur] {
                        chain.push((pred, f));
                        cur = pred;
                    }
                    return Ok(chain);
                }
                Some(cycle) => {
                    for z in cycle {
                        if !reached[z] {
                            reached[z] = true;
                            label[z] = Some((y, forest));
                            queue.push_back(z);
                        }
                    }
                }
            }
        }
    }
    Err(reached)
}

/// Decides whether `m` contains (or is the union of) two edge-disjoint
/// spanning trees, with a certificate either way.
pub fn spanning_tree_packing(m: &Multigraph) -> PackingResult {
    let n = m.vertex_count();
    let mut assign: Vec<Option<u8>> = vec![None; m.edge_count()];
    for i in 0..m.edge_count() {
        if m.edges[i].u == m.edges[i].v {
            continue;
        }
        if let Ok(chain) = exchange_search(m, &assign, &[i]) {
            for (edge, forest) in chain {
                assign[edge] = Some(forest);
            }
            debug_assert!(forests_are_acyclic(m, &assign));
        }
    }

    let forest = |k: u8| -> Vec<usize> { (0..m.edge_count()).filter(|&i| assign[i] == Some(k)).collect() };
    let trees = [forest(0), forest(1)];
    let spanning = n == 0 || trees.iter().all(|t| t.len() == n - 1);
    let unassigned: Vec<usize> = (0..m.edge_count()).filter(|&i| assign[i].is_none()).collect();

    // Edges reachable from the leftovers span themselves in both forests.
    let reached = match exchange_search(m, &assign, &unassigned) {
        Ok(_) => unreachable!("forest pair is maximal"),
        Err(r) => r,
    };
    let mut uf = UnionFind::new(n);
    for (i, e) in m.edges.iter().enumerate() {
        if reached[i] {
            uf.union(e.u, e.v);
        }
    }
    let violator = unassigned.first().map(|&i| {
        let root = uf.find(m.edges[i].u);
        (0..n).filter(|&v| uf.find(v) == root).collect::<Vec<_>>()
    });

    let verdict = match (spanning, unassigned.is_empty()) {
        (true, true) => PackingVerdict::Union,
        (true, false) => PackingVerdict::Contains,
        (false, _) => PackingVerdict::Neither,
    };
    let deficit = (verdict == PackingVerdict::Neither).then(|| {
        let all: Vec<usize> = (0..n).collect();
        let parts = uf.classes_of(&all);
        let cross_edges = m.edges.iter().filter(|e| !uf.same(e.u, e.v)).count();
        PartitionDeficit { parts, cross_edges }
    });
    PackingResult {
        verdict,
        trees: spanning.then_some(trees),
        violator,
        deficit,
    }
}

fn forests_are_acyclic(m: &Multigraph, assign: &[Option<u8>]) -> bool {
    (0..2u8).all(|k| {
        let mut uf = UnionFind::new(m.vertex_count());
        m.edges
            .iter()
            .enumerate()
            .filter(|(i, _)| assign[*i] == Some(k))
            .all(|(_, e)| uf.union(e.u, e.v))
    })
}

/// Checks a result's certificates against the multigraph without trusting
/// the algorithm that produced them.
pub fn verify_certificate(m: &Multigraph, r: &PackingResult) -> Result<(), String> {
    let n = m.vertex_count();
    if let Some(trees) = &r.trees {
        let mut used = vec![false; m.edge_count()];
        for t in trees {
            if t.len() + 1 != n.max(1) {
                return Err(format!("tree has {} edges on {n} vertices", t.len()));
            }
            let mut uf = UnionFind::new(n);
            for &i in t {
                if i >= m.edge_count() || used[i] {
                    return Err(format!("edge {i} reused or out of range"));
                }
                used[i] = true;
                if !uf.union(m.edges[i].u, m.edges[i].v) {
                    return Err(format!("edge {i} closes a cycle"));
                }
            }
        }
        let total = trees[0].len() + trees[1].len();
        let expect = if total == m.edge_count() {
            PackingVerdict::Union
        } else {
            PackingVerdict::Contains
        };
        if r.verdict != expect {
            return Err(format!("trees present but verdict {:?}", r.verdict));
        }
    } else if r.verdict != PackingVerdict::Neither {
        return Err("verdict claims trees but none given".into());
    }
    if let Some(x) = &r.violator {
        let i = m.induced_count(x);
        if i + 1 < 2 * x.len() {
            return Err(format!("violator has i(X) = {i} < 2|X| - 1"));
        }
    }
    match (&r.deficit, r.verdict) {
        (Some(d), PackingVerdict::Neither) => {
            let mut part_of = vec![usize::MAX; n];
            for (p, part) in d.parts.iter().enumerate() {
                for &v in part {
                    if part_of[v] != usize::MAX {
                        return Err(format!("vertex {v} in two parts"));
                    }
                    part_of[v] = p;
                }
            }
            if part_of.contains(&usize::MAX) {
                return Err("partition does not cover the vertices".into());
            }
            let cross = m.edges.iter().filter(|e| part_of[e.u] != part_of[e.v]).count();
            if cross != d.cross_edges || cross + 2 >= 2 * d.parts.len() {
                return Err(format!(
                    "partition with {} parts has {cross} cross edges",
                    d.parts.len()
                ));
            }
        }
        (None, PackingVerdict::Neither) => return Err("missing deficit certificate".into()),
        (Some(_), _) => return Err("deficit given for a positive verdict".into()),
        (None, _) => {}
    }
    Ok(())
}
