//! Mixed direction-length graphs, their JSON interchange format, contraction
//! and the purely combinatorial predicates (2-connectivity, direction balance).

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::union_find::UnionFind;

/// The two constraint types carried by an edge.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum EdgeKind {
    #[serde(rename = "dir")]
    Direction,
    #[serde(rename = "len")]
    Length,
}

impl EdgeKind {
    pub fn as_str(self) -> &'static str {
        match self {
            EdgeKind::Direction => "dir",
            EdgeKind::Length => "len",
        }
    }

    fn describe(self) -> &'static str {
        match self {
            EdgeKind::Direction => "direction",
            EdgeKind::Length => "length",
        }
    }
}

impl fmt::Display for EdgeKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// An edge between vertex indices `u < v`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Edge {
    pub u: usize,
    pub v: usize,
    pub kind: EdgeKind,
}

impl Edge {
    pub fn new(a: usize, b: usize, kind: EdgeKind) -> Self {
        Edge {
            u: a.min(b),
            v: a.max(b),
            kind,
        }
    }

    pub fn is_direction(&self) -> bool {
        self.kind == EdgeKind::Direction
    }

    pub fn is_length(&self) -> bool {
        self.kind == EdgeKind::Length
    }
}

/// An edge identified by vertex names, used wherever edges leave the library.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct EdgeRef {
    pub u: String,
    pub v: String,
    pub kind: EdgeKind,
}

impl fmt::Display for EdgeRef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}:{}", self.u, self.v, self.kind)
    }
}

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum GraphError {
    #[error("malformed JSON at line {line}, column {column}: {message}")]
    Json {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("vertices[{index}]: duplicate vertex {name:?}")]
    DuplicateVertex { index: usize, name: String },
    #[error("edges[{index}]: loop at vertex {vertex:?}")]
    Loop { index: usize, vertex: String },
    #[error("edges[{index}]: endpoint {vertex:?} is not a declared vertex")]
    UndeclaredVertex { index: usize, vertex: String },
    #[error("edges[{index}]: parallel {} edges between {u:?} and {v:?}", .kind.describe())]
    ParallelEdges {
        index: usize,
        u: String,
        v: String,
        kind: EdgeKind,
    },
    #[error("vertex set for contraction is empty")]
    EmptyContraction,
    #[error("vertex {0:?} is not in the graph")]
    UnknownVertex(String),
}

/// A mixed graph `(V; D, L)`.
///
/// Vertices are kept in lexicographic order and edges sorted by
/// `(min endpoint, max endpoint, kind)`; every iteration order in the crate
/// derives from this.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MixedGraph {
    vertices: Vec<String>,
    edges: Vec<Edge>,
}

#[derive(Serialize, Deserialize)]
struct GraphDoc {
    vertices: Vec<String>,
    edges: Vec<EdgeDoc>,
}

#[derive(Serialize, Deserialize)]
struct EdgeDoc {
    u: String,
    v: String,
    kind: EdgeKind,
}

impl MixedGraph {
    /// Builds a graph from vertex names and named edges, checking every invariant.
    pub fn new<V, S>(vertices: V, edges: &[(S, S, EdgeKind)]) -> Result<Self, GraphError>
    where
        V: IntoIterator,
        V::Item: Into<String>,
        S: AsRef<str>,
    {
        let vertices: Vec<String> = vertices.into_iter().map(Into::into).collect();
        let edges: Vec<(String, String, EdgeKind)> = edges
            .iter()
            .map(|(a, b, k)| (a.as_ref().to_string(), b.as_ref().to_string(), *k))
            .collect();
        Self::build(vertices, edges)
    }

    fn build(names: Vec<String>, named_edges: Vec<(String, String, EdgeKind)>) -> Result<Self, GraphError> {
        let mut position = HashMap::new();
        for (index, name) in names.iter().enumerate() {
            if position.insert(name.clone(), index).is_some() {
                return Err(GraphError::DuplicateVertex {
                    index,
                    name: name.clone(),
                });
            }
        }
        let mut sorted = names.clone();
        sorted.sort();
        let rank: HashMap<&str, usize> = sorted.iter().enumerate().map(|(i, n)| (n.as_str(), i)).collect();

        let mut seen = BTreeMap::new();
        for (index, (a, b, kind)) in named_edges.iter().enumerate() {
            let ia = *rank.get(a.as_str()).ok_or_else(|| GraphError::UndeclaredVertex {
                index,
                vertex: a.clone(),
            })?;
            let ib = *rank.get(b.as_str()).ok_or_else(|| GraphError::UndeclaredVertex {
                index,
                vertex: b.clone(),
            })?;
            if ia == ib {
                return Err(GraphError::Loop {
                    index,
                    vertex: a.clone(),
                });
            }
            let edge = Edge::new(ia, ib, *kind);
            if seen.insert(edge, index).is_some() {
                return Err(GraphError::ParallelEdges {
                    index,
                    u: sorted[edge.u].clone(),
                    v: sorted[edge.v].clone(),
                    kind: *kind,
                });
            }
        }
        Ok(MixedGraph {
            vertices: sorted,
            edges: seen.into_keys().collect(),
        })
    }

    /// Internal constructor for already-canonical data. `vertices` must be
    /// sorted and distinct, `edges` valid for them.
    pub(crate) fn from_parts(vertices: Vec<String>, mut edges: Vec<Edge>) -> Self {
        debug_assert!(vertices.windows(2).all(|w| w[0] < w[1]));
        edges.sort();
        edges.dedup();
        debug_assert!(edges.iter().all(|e| e.u < e.v && e.v < vertices.len()));
        MixedGraph { vertices, edges }
    }

    /// Graph on `n` vertices named `v0, v1, ...` (zero padded so that the
    /// names sort numerically).
    pub fn with_numbered_vertices(n: usize, edges: &[(usize, usize, EdgeKind)]) -> Self {
        let width = n.saturating_sub(1).to_string().len();
        let vertices = (0..n).map(|i| format!("v{i:0width$}")).collect();
        let edges = edges.iter().map(|&(a, b, k)| Edge::new(a, b, k)).collect();
        Self::from_parts(vertices, edges)
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge(&self, i: usize) -> Edge {
        self.edges[i]
    }

    pub fn name(&self, v: usize) -> &str {
        &self.vertices[v]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.vertices.binary_search_by(|v| v.as_str().cmp(name)).ok()
    }

    pub fn find_edge(&self, a: usize, b: usize, kind: EdgeKind) -> Option<usize> {
        self.edges.binary_search(&Edge::new(a, b, kind)).ok()
    }

    /// Looks an edge up by vertex names.
    pub fn find_edge_ref(&self, e: &EdgeRef) -> Option<usize> {
        let a = self.index_of(&e.u)?;
        let b = self.index_of(&e.v)?;
        self.find_edge(a, b, e.kind)
    }

    pub fn edge_ref(&self, i: usize) -> EdgeRef {
        let e = self.edges[i];
        EdgeRef {
            u: self.vertices[e.u].clone(),
            v: self.vertices[e.v].clone(),
            kind: e.kind,
        }
    }

    pub fn edge_refs(&self, ids: &[usize]) -> Vec<EdgeRef> {
        ids.iter().map(|&i| self.edge_ref(i)).collect()
    }

    pub fn names(&self, ids: &[usize]) -> Vec<String> {
        ids.iter().map(|&v| self.vertices[v].clone()).collect()
    }

    /// Indices of the direction edges, in canonical order.
    pub fn dir_edges(&self) -> Vec<usize> {
        self.ids_of(EdgeKind::Direction)
    }

    /// Indices of the length edges, in canonical order.
    pub fn len_edges(&self) -> Vec<usize> {
        self.ids_of(EdgeKind::Length)
    }

    fn ids_of(&self, kind: EdgeKind) -> Vec<usize> {
        (0..self.edges.len()).filter(|&i| self.edges[i].kind == kind).collect()
    }

    pub fn dir_count(&self) -> usize {
        self.edges.iter().filter(|e| e.is_direction()).count()
    }

    pub fn len_count(&self) -> usize {
        self.edges.iter().filter(|e| e.is_length()).count()
    }

    /// `G - e`.
    pub fn without_edge(&self, i: usize) -> MixedGraph {
        let mut edges = self.edges.clone();
        edges.remove(i);
        MixedGraph {
            vertices: self.vertices.clone(),
            edges,
        }
    }

    /// Spanning subgraph keeping only the listed edges.
    pub fn with_edges(&self, ids: &[usize]) -> MixedGraph {
        MixedGraph::from_parts(self.vertices.clone(), ids.iter().map(|&i| self.edges[i]).collect())
    }

    /// Adds edges given by index, ignoring those already present.
    pub fn with_added(&self, extra: &[Edge]) -> MixedGraph {
        let mut edges = self.edges.clone();
        edges.extend_from_slice(extra);
        MixedGraph::from_parts(self.vertices.clone(), edges)
    }

    /// The subgraph induced by a set of vertex indices.
    pub fn induced(&self, keep: &[usize]) -> MixedGraph {
        let mut keep = keep.to_vec();
        keep.sort_unstable();
        keep.dedup();
        let mut map = vec![usize::MAX; self.vertices.len()];
        for (new, &old) in keep.iter().enumerate() {
            map[old] = new;
        }
        let edges = self
            .edges
            .iter()
            .filter(|e| map[e.u] != usize::MAX && map[e.v] != usize::MAX)
            .map(|e| Edge::new(map[e.u], map[e.v], e.kind))
            .collect();
        MixedGraph::from_parts(keep.iter().map(|&i| self.vertices[i].clone()).collect(), edges)
    }

    /// Vertices touched by a set of edges.
    pub fn support(&self, ids: &[usize]) -> Vec<usize> {
        let mut vs: Vec<usize> = ids.iter().flat_map(|&i| [self.edges[i].u, self.edges[i].v]).collect();
        vs.sort_unstable();
        vs.dedup();
        vs
    }

    /// Adjacency of the underlying simple graph (types and parallels merged).
    pub fn neighbours(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.vertices.len()];
        for e in &self.edges {
            adj[e.u].push(e.v);
            adj[e.v].push(e.u);
        }
        for list in &mut adj {
            list.sort_unstable();
            list.dedup();
        }
        adj
    }

    /// Connected components of the underlying graph with the `removed`
    /// vertices deleted, each sorted, ordered by smallest member.
    pub fn components_without(&self, removed: &[usize]) -> Vec<Vec<usize>> {
        let n = self.vertices.len();
        let mut uf = UnionFind::new(n);
        for e in &self.edges {
            if !removed.contains(&e.u) && !removed.contains(&e.v) {
                uf.union(e.u, e.v);
            }
        }
        let keep: Vec<usize> = (0..n).filter(|v| !removed.contains(v)).collect();
        uf.classes_of(&keep)
    }

    pub fn from_json(text: &str) -> Result<Self, GraphError> {
        parse_graph(text)
    }

    /// Canonical serialisation: sorted vertices, sorted edges.
    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.to_value()).expect("graph serialisation cannot fail")
    }

    pub fn to_value(&self) -> serde_json::Value {
        let doc = GraphDoc {
            vertices: self.vertices.clone(),
            edges: self
                .edges
                .iter()
                .map(|e| EdgeDoc {
                    u: self.vertices[e.u].clone(),
                    v: self.vertices[e.v].clone(),
                    kind: e.kind,
                })
                .collect(),
        };
        serde_json::to_value(doc).expect("graph serialisation cannot fail")
    }

    /// First 16 hex digits of the SHA-256 of the canonical JSON.
    pub fn canonical_hash(&self) -> String {
        let digest = Sha256::digest(self.to_json().as_bytes());
        hex::encode(&digest[..8])
    }
}

/// Parses the graph interchange format
/// `{"vertices":[...],"edges":[{"u":..,"v":..,"kind":"dir"|"len"}]}`.
pub fn parse_graph(text: &str) -> Result<MixedGraph, GraphError> {
    let doc: GraphDoc = serde_json::from_str(text).map_err(|e| GraphError::Json {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })?;
    MixedGraph::build(
        doc.vertices,
        doc.edges.into_iter().map(|e| (e.u, e.v, e.kind)).collect(),
    )
}

/// A loop-free multigraph; each edge remembers the mixed-graph edge it came from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Multigraph {
    pub labels: Vec<String>,
    pub edges: Vec<MultiEdge>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct MultiEdge {
    pub u: usize,
    pub v: usize,
    pub kind: EdgeKind,
    /// Index of the originating edge, or the edge's own position for
    /// multigraphs built directly.
    pub source: usize,
}

impl Multigraph {
    /// Direction-typed multigraph on `n` numbered vertices; loops are dropped.
    pub fn from_pairs(n: usize, pairs: &[(usize, usize)]) -> Self {
        let labels = (0..n).map(|i| i.to_string()).collect();
        let edges = pairs
            .iter()
            .enumerate()
            .filter(|(_, (a, b))| a != b)
            .map(|(i, &(a, b))| MultiEdge {
                u: a.min(b),
                v: a.max(b),
                kind: EdgeKind::Direction,
                source: i,
            })
            .collect();
        Multigraph { labels, edges }
    }

    pub fn vertex_count(&self) -> usize {
        self.labels.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn pairs(&self) -> Vec<(usize, usize)> {
        self.edges.iter().map(|e| (e.u, e.v)).collect()
    }

    /// Number of edges with both ends in `set`.
    pub fn induced_count(&self, set: &[usize]) -> usize {
        let mut inside = vec![false; self.labels.len()];
        for &v in set {
            inside[v] = true;
        }
        self.edges.iter().filter(|e| inside[e.u] && inside[e.v]).count()
    }
}

/// Result of contracting vertex classes of a mixed graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Contraction {
    pub graph: Multigraph,
    /// Original vertex index -> contracted vertex index.
    pub vertex_map: Vec<usize>,
}

impl Contraction {
    /// Original vertices mapped to contracted vertex `w`.
    pub fn preimage(&self, w: usize) -> Vec<usize> {
        (0..self.vertex_map.len())
            .filter(|&v| self.vertex_map[v] == w)
            .collect()
    }
}

/// Contracts each class of `classes` (a partition of the vertex indices) to a
/// single vertex. Edges become parallel where needed; loops are dropped.
/// With `kinds = Some(k)` only edges of that kind are kept.
pub(crate) fn contract_classes(g: &MixedGraph, classes: &[Vec<usize>], kind: Option<EdgeKind>) -> Contraction {
    let mut vertex_map = vec![usize::MAX; g.vertex_count()];
    let mut labels = Vec::with_capacity(classes.len());
    for (w, class) in classes.iter().enumerate() {
        for &v in class {
            vertex_map[v] = w;
        }
        labels.push(class.iter().map(|&v| g.name(v)).collect::<Vec<_>>().join("+"));
    }
    let edges = g
        .edges()
        .iter()
        .enumerate()
        .filter(|(_, e)| kind.is_none_or(|k| e.kind == k))
        .filter_map(|(i, e)| {
            let (a, b) = (vertex_map[e.u], vertex_map[e.v]);
            (a != b).then(|| MultiEdge {
                u: a.min(b),
                v: a.max(b),
                kind: e.kind,
                source: i,
            })
        })
        .collect();
    Contraction {
        graph: Multigraph { labels, edges },
        vertex_map,
    }
}

/// `G / G[U]`: the vertices of `U` collapse to one vertex, edges inside `U`
/// disappear, all other edges survive (possibly parallel).
pub fn contract_subgraph(g: &MixedGraph, set: &[&str]) -> Result<Contraction, GraphError> {
    if set.is_empty() {
        return Err(GraphError::EmptyContraction);
    }
    let mut inside = vec![false; g.vertex_count()];
    for name in set {
        let v = g
            .index_of(name)
            .ok_or_else(|| GraphError::UnknownVertex(name.to_string()))?;
        inside[v] = true;
    }
    let merged: Vec<usize> = (0..g.vertex_count()).filter(|&v| inside[v]).collect();
    let mut classes = Vec::new();
    let mut placed = false;
    for v in 0..g.vertex_count() {
        if inside[v] {
            if !placed {
                classes.push(merged.clone());
                placed = true;
            }
        } else {
            classes.push(vec![v]);
        }
    }
    Ok(contract_classes(g, &classes, None))
}

/// `G / L`: each connected component of `(V, L)` becomes one vertex; the
/// direction edges are kept, loops dropped.
pub fn contract_length_edges(g: &MixedGraph) -> Contraction {
    let mut uf = UnionFind::new(g.vertex_count());
    for e in g.edges().iter().filter(|e| e.is_length()) {
        uf.union(e.u, e.v);
    }
    let all: Vec<usize> = (0..g.vertex_count()).collect();
    contract_classes(g, &uf.classes_of(&all), Some(EdgeKind::Direction))
}

/// Why a graph fails to be 2-connected.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum CutWitness {
    CutVertex { vertex: String },
    Disconnected { component: Vec<String> },
}

/// Returns `None` when the underlying simple graph is 2-connected. Graphs on
/// at most one vertex count as 2-connected; so does a single connected pair.
pub fn cut_witness(g: &MixedGraph) -> Option<CutWitness> {
    let n = g.vertex_count();
    if n <= 1 {
        return None;
    }
    let comps = g.components_without(&[]);
    if comps.len() > 1 {
        return Some(CutWitness::Disconnected {
            component: g.names(&comps[0]),
        });
    }
    articulation_point(&g.neighbours()).map(|v| CutWitness::CutVertex {
        vertex: g.name(v).to_string(),
    })
}

pub fn is_2connected(g: &MixedGraph) -> bool {
    cut_witness(g).is_none()
}

/// Smallest articulation point of a connected simple graph (iterative
/// lowpoint DFS from vertex 0).
fn articulation_point(adj: &[Vec<usize>]) -> Option<usize> {
    let n = adj.len();
    let mut disc = vec![usize::MAX; n];
    let mut low = vec![0; n];
    let mut parent = vec![usize::MAX; n];
    let mut is_cut = vec![false; n];
    let mut root_children = 0;
    let mut time = 0;
    let mut stack = vec![(0usize, 0usize)];
    disc[0] = 0;
    low[0] = 0;
    time += 1;
    while let Some(&mut (v, ref mut next)) = stack.last_mut() {
        if *next < adj[v].len() {
            let w = adj[v][*next];
            *next += 1;
            if disc[w] == usize::MAX {
                parent[w] = v;
                disc[w] = time;
                low[w] = time;
                time += 1;
                if v == 0 {
                    root_children += 1;
                }
                stack.push((w, 0));
            } else if w != parent[v] {
                low[v] = low[v].min(disc[w]);
            }
        } else {
            stack.pop();
            let p = parent[v];
            if p != usize::MAX {
                low[p] = low[p].min(low[v]);
                if p != 0 && low[v] >= disc[p] {
                    is_cut[p] = true;
                }
            }
        }
    }
    if root_children > 1 {
        is_cut[0] = true;
    }
    is_cut.iter().position(|&c| c)
}

/// A 2-separation `{u, v}` together with the components of `G - {u, v}`;
/// `side` is the component that lacks a direction edge.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Separation {
    pub cut_pair: [String; 2],
    pub sides: Vec<Vec<String>>,
    pub side: Vec<String>,
}

/// Returns a violating separation if `g` is not direction-balanced.
///
/// For each vertex pair whose removal disconnects the graph, every component
/// `S` of `G - {u,v}` must see a direction edge with an endpoint in `S` (such
/// an edge lies in `G[S + {u,v}]` and is not a `uv` edge). A deficient union
/// of components contains a deficient component, so checking components
/// suffices.
pub fn balance_violation(g: &MixedGraph) -> Option<Separation> {
    let n = g.vertex_count();
    let mut has_dir = vec![false; n];
    for a in 0..n {
        for b in a + 1..n {
            let comps = g.components_without(&[a, b]);
            if comps.len() < 2 {
                continue;
            }
            let mut comp_of = vec![usize::MAX; n];
            for (i, c) in comps.iter().enumerate() {
                for &v in c {
                    comp_of[v] = i;
                }
            }
            has_dir[..comps.len()].iter_mut().for_each(|h| *h = false);
            for e in g.edges().iter().filter(|e| e.is_direction()) {
                for end in [e.u, e.v] {
                    if comp_of[end] != usize::MAX {
                        has_dir[comp_of[end]] = true;
                    }
                }
            }
            if let Some(bad) = (0..comps.len()).find(|&i| !has_dir[i]) {
                return Some(Separation {
                    cut_pair: [g.name(a).to_string(), g.name(b).to_string()],
                    sides: comps.iter().map(|c| g.names(c)).collect(),
                    side: g.names(&comps[bad]),
                });
            }
        }
    }
    None
}

pub fn is_direction_balanced(g: &MixedGraph) -> bool {
    balance_violation(g).is_none()
}
