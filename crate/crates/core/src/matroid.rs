//! The generic 2D direction-length rigidity matroid `M(G)`.
//!
//! Ranks are computed as ranks of the rigidity matrix evaluated at
//! coordinates drawn uniformly from the field of order `2^61 - 1`. A random
//! evaluation can only lose rank, so the maximum over a few independent trials
//! is taken. By Schwartz-Zippel a single trial undercounts with probability
//! below `4|V||E| / 2^61`.

use std::collections::{BTreeMap, HashMap};
use std::sync::Mutex;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::field::{self, Echelon};
use crate::graph::MixedGraph;
use crate::realize::rigidity_row_mod_p;
use crate::union_find::UnionFind;

/// Reproducibility knobs shared by every randomised computation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Settings {
    pub seed: u64,
    /// Independent rank trials; the maximum is taken.
    pub trials: usize,
}

impl Default for Settings {
    fn default() -> Self {
        Settings { seed: 0, trials: 3 }
    }
}

impl Settings {
    pub fn with_seed(seed: u64) -> Self {
        Settings {
            seed,
            ..Settings::default()
        }
    }
}

// Stream ids keep the different random objects drawn from one seed apart.
pub(crate) const STREAM_VERTEX: u64 = 0;
pub(crate) const STREAM_FRAME: u64 = 1 << 32;

pub(crate) fn stream_rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum MatroidError {
    #[error("edge {0} is already in the basis")]
    EdgeInBasis(usize),
    #[error("the given edge set is not a basis (|B| = {size}, independent: {independent}, rank = {rank})")]
    NotABasis {
        size: usize,
        independent: bool,
        rank: usize,
    },
    #[error("edge index {0} out of range")]
    NoSuchEdge(usize),
}

/// Random field coordinates for every vertex, one set per trial.
#[derive(Clone, Debug)]
pub struct RigidityOracle {
    coords: Vec<Vec<[u64; 2]>>,
}

impl RigidityOracle {
    pub fn new(vertex_count: usize, settings: &Settings) -> Self {
        let coords = (0..settings.trials.max(1) as u64)
            .map(|t| {
                let mut rng = stream_rng(settings.seed, STREAM_VERTEX + t);
                (0..vertex_count)
                    .map(|_| [field::random(&mut rng), field::random(&mut rng)])
                    .collect()
            })
            .collect();
        RigidityOracle { coords }
    }

    pub fn trials(&self) -> usize {
        self.coords.len()
    }

    pub fn row(&self, trial: usize, g: &MixedGraph, edge: usize) -> Vec<u64> {
        rigidity_row_mod_p(&g.edge(edge), &self.coords[trial], g.vertex_count())
    }

    pub fn trial_rank(&self, trial: usize, g: &MixedGraph, ids: &[usize]) -> usize {
        field::rank(2 * g.vertex_count(), ids.iter().map(|&e| self.row(trial, g, e)))
    }

    /// Maximum rank over the trials.
    pub fn rank(&self, g: &MixedGraph, ids: &[usize]) -> usize {
        (0..self.trials())
            .map(|t| self.trial_rank(t, g, ids))
            .max()
            .unwrap_or(0)
    }
}

fn all_edges(g: &MixedGraph) -> Vec<usize> {
    (0..g.edge_count()).collect()
}

/// Rank of `subset` (default: every edge) in `M(G)`.
pub fn generic_rank(g: &MixedGraph, subset: Option<&[usize]>, settings: &Settings) -> usize {
    let oracle = RigidityOracle::new(g.vertex_count(), settings);
    match subset {
        Some(ids) => oracle.rank(g, ids),
        None => oracle.rank(g, &all_edges(g)),
    }
}

pub fn is_independent(g: &MixedGraph, ids: &[usize], settings: &Settings) -> bool {
    generic_rank(g, Some(ids), settings) == ids.len()
}

/// `r(G) = 2|V| - 2`. A single vertex is rigid.
pub fn is_rigid(g: &MixedGraph, settings: &Settings) -> bool {
    let n = g.vertex_count();
    n <= 1 || generic_rank(g, None, settings) == 2 * n - 2
}

/// Why a graph is not redundantly rigid.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RedundancyFailure {
    NotRigid,
    /// `G - e` is not rigid.
    Edge(usize),
}

pub fn redundancy_failure(g: &MixedGraph, settings: &Settings) -> Option<RedundancyFailure> {
    if !is_rigid(g, settings) {
        return Some(RedundancyFailure::NotRigid);
    }
    (0..g.edge_count())
        .find(|&e| !is_rigid(&g.without_edge(e), settings))
        .map(RedundancyFailure::Edge)
}

pub fn is_redundantly_rigid(g: &MixedGraph, settings: &Settings) -> bool {
    redundancy_failure(g, settings).is_none()
}

/// Rank data for one graph: a basis, its fundamental circuits and the
/// M-components.
///
/// All rank queries of a view use the single trial that achieved the largest
/// rank on the whole edge set, so the view works with one linear matroid and
/// its circuits are mutually consistent.
#[derive(Debug)]
pub struct MatroidView {
    graph: MixedGraph,
    oracle: RigidityOracle,
    trial: usize,
    rank: usize,
    basis: Vec<usize>,
    circuits: BTreeMap<usize, Vec<usize>>,
    components: Vec<Vec<usize>>,
    memo: Mutex<HashMap<Vec<usize>, usize>>,
}

impl MatroidView {
    pub fn new(g: &MixedGraph, settings: &Settings) -> Self {
        let oracle = RigidityOracle::new(g.vertex_count(), settings);
        let all = all_edges(g);
        let trial = (0..oracle.trials())
            .map(|t| (oracle.trial_rank(t, g, &all), t))
            .max_by_key(|&(r, t)| (r, std::cmp::Reverse(t)))
            .map_or(0, |(_, t)| t);
        let mut view = MatroidView {
            graph: g.clone(),
            oracle,
            trial,
            rank: 0,
            basis: Vec::new(),
            circuits: BTreeMap::new(),
            components: Vec::new(),
            memo: Mutex::new(HashMap::new()),
        };
        let (basis, rest) = view.greedy_independent(&all);
        view.rank = basis.len();
        for &e in &rest {
            let c = view.circuit_in(&basis, e);
            view.circuits.insert(e, c);
        }
        let mut uf = UnionFind::new(g.edge_count());
        for c in view.circuits.values() {
            for w in c.windows(2) {
                uf.union(w[0], w[1]);
            }
        }
        view.components = uf.classes_of(&all);
        view.basis = basis;
        view
    }

    pub fn graph(&self) -> &MixedGraph {
        &self.graph
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn basis(&self) -> &[usize] {
        &self.basis
    }

    /// Non-basis edge -> its fundamental circuit (sorted edge ids).
    pub fn fundamental_circuits(&self) -> &BTreeMap<usize, Vec<usize>> {
        &self.circuits
    }

    /// Edge classes of the M-components, ordered by smallest edge id.
    pub fn components(&self) -> &[Vec<usize>] {
        &self.components
    }

    pub fn is_rigid(&self) -> bool {
        let n = self.graph.vertex_count();
        n <= 1 || self.rank == 2 * n - 2
    }

    /// Graphs with at most one edge count as M-connected.
    pub fn is_m_connected(&self) -> bool {
        self.graph.edge_count() <= 1 || self.components.len() == 1
    }

    /// Rank of an edge subset under this view's trial, memoised.
    pub fn rank_of(&self, ids: &[usize]) -> usize {
        let mut key = ids.to_vec();
        key.sort_unstable();
        if let Some(&r) = self.memo.lock().expect("memo poisoned").get(&key) {
            return r;
        }
        let r = self.oracle.trial_rank(self.trial, &self.graph, &key);
        self.memo.lock().expect("memo poisoned").insert(key, r);
        r
    }

    /// Greedy maximal independent subset of `candidates` in the given order;
    /// returns `(kept, rejected)`.
    pub fn greedy_independent(&self, candidates: &[usize]) -> (Vec<usize>, Vec<usize>) {
        let mut echelon = Echelon::new(2 * self.graph.vertex_count());
        let mut kept = Vec::new();
        let mut rejected = Vec::new();
        for &e in candidates {
            if echelon.insert(self.oracle.row(self.trial, &self.graph, e)) {
                kept.push(e);
            } else {
                rejected.push(e);
            }
        }
        (kept, rejected)
    }

    /// The unique circuit in `independent + e`, by greedily discarding every
    /// element whose removal keeps the set dependent.
    pub fn circuit_in(&self, independent: &[usize], e: usize) -> Vec<usize> {
        let mut current: Vec<usize> = independent.to_vec();
        current.push(e);
        current.sort_unstable();
        debug_assert!(self.rank_of(&current) < current.len());
        for f in independent {
            let trial: Vec<usize> = current.iter().copied().filter(|x| x != f).collect();
            if self.rank_of(&trial) < trial.len() {
                current = trial;
            }
        }
        current
    }
}

/// The circuit inside `basis + e` where `basis` is a basis of `M(G)`.
pub fn fundamental_circuit(
    g: &MixedGraph,
    basis: &[usize],
    e: usize,
    settings: &Settings,
) -> Result<Vec<usize>, MatroidError> {
    if let Some(&bad) = basis.iter().chain([&e]).find(|&&x| x >= g.edge_count()) {
        return Err(MatroidError::NoSuchEdge(bad));
    }
    if basis.contains(&e) {
        return Err(MatroidError::EdgeInBasis(e));
    }
    let view = MatroidView::new(g, settings);
    let independent = view.rank_of(basis) == basis.len();
    if !independent || basis.len() != view.rank() {
        return Err(MatroidError::NotABasis {
            size: basis.len(),
            independent,
            rank: view.rank(),
        });
    }
    Ok(view.circuit_in(basis, e))
}

pub fn m_components(g: &MixedGraph, settings: &Settings) -> Vec<Vec<usize>> {
    MatroidView::new(g, settings).components().to_vec()
}

pub fn is_m_connected(g: &MixedGraph, settings: &Settings) -> bool {
    MatroidView::new(g, settings).is_m_connected()
}

/// The circuit inside `independent + e`, found by discarding every element
/// whose removal keeps the set dependent.
pub fn circuit_within(g: &MixedGraph, independent: &[usize], e: usize, settings: &Settings) -> Vec<usize> {
    let oracle = RigidityOracle::new(g.vertex_count(), settings);
    let mut current: Vec<usize> = independent.to_vec();
    current.push(e);
    current.sort_unstable();
    debug_assert!(oracle.rank(g, &current) < current.len());
    for f in independent {
        let trial: Vec<usize> = current.iter().copied().filter(|x| x != f).collect();
        if oracle.rank(g, &trial) < trial.len() {
            current = trial;
        }
    }
    current
}

/// A circuit contained in `D`, if `D` is dependent. Any such circuit is
/// direction-pure. The circuit closes the first direction edge, in canonical
/// order, rejected by the greedy basis of `D`.
pub fn direction_circuit(g: &MixedGraph, settings: &Settings) -> Option<(usize, Vec<usize>)> {
    let (kept, rejected) = greedy_independent(g, &g.dir_edges(), settings);
    let e = *rejected.first()?;
    Some((e, circuit_within(g, &kept, e, settings)))
}

pub fn direction_independent(g: &MixedGraph, settings: &Settings) -> bool {
    is_independent(g, &g.dir_edges(), settings)
}

/// Greedy maximal independent subset of `candidates` in the given order,
/// under the trial that keeps the most edges; returns `(kept, rejected)`.
pub fn greedy_independent(g: &MixedGraph, candidates: &[usize], settings: &Settings) -> (Vec<usize>, Vec<usize>) {
    let oracle = RigidityOracle::new(g.vertex_count(), settings);
    let mut best: Option<(Vec<usize>, Vec<usize>)> = None;
    for t in 0..oracle.trials() {
        let mut echelon = Echelon::new(2 * g.vertex_count());
        let (kept, rejected): (Vec<usize>, Vec<usize>) =
            candidates.iter().partition(|&&e| echelon.insert(oracle.row(t, g, e)));
        if best.as_ref().is_none_or(|(k, _)| kept.len() > k.len()) {
            best = Some((kept, rejected));
        }
    }
    best.unwrap_or_default()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::graph::EdgeKind::*;

    fn s() -> Settings {
        Settings::default()
    }

    #[test]
    fn rank_examples() {
        assert_eq!(generic_rank(&fixtures::digon(), None, &s()), 2);
        assert_eq!(generic_rank(&fixtures::tri_l(), None, &s()), 3);
        assert_eq!(generic_rank(&fixtures::k4_d(), None, &s()), 5);
        assert_eq!(generic_rank(&fixtures::mc5(), None, &s()), 4);
    }

    #[test]
    fn independence_examples() {
        let hat = fixtures::hat();
        assert!(is_independent(&hat, &[0, 1, 2, 3], &s()));
        let k4 = fixtures::k4_d();
        assert!(!is_independent(&k4, &(0..6).collect::<Vec<_>>(), &s()));
        assert!(is_independent(&k4, &[], &s()));
    }

    #[test]
    fn rigidity_examples() {
        assert!(is_rigid(&fixtures::digon(), &s()));
        assert!(!is_rigid(&fixtures::tri_l(), &s()));
        assert!(is_rigid(&fixtures::hat(), &s()));
        let single = MixedGraph::with_numbered_vertices(1, &[]);
        assert!(is_rigid(&single, &s()));
    }

    #[test]
    fn redundancy_examples() {
        assert!(is_redundantly_rigid(&fixtures::mc5(), &s()));
        let hat = fixtures::hat();
        // HAT is minimally rigid: every edge fails; the scan reports the first.
        assert_eq!(redundancy_failure(&hat, &s()), Some(RedundancyFailure::Edge(0)));
        for e in 0..hat.edge_count() {
            assert!(!is_rigid(&hat.without_edge(e), &s()));
        }
        assert!(!is_redundantly_rigid(&fixtures::digon(), &s()));
        assert_eq!(
            redundancy_failure(&fixtures::tri_l(), &s()),
            Some(RedundancyFailure::NotRigid)
        );
    }

    #[test]
    fn fundamental_circuit_examples() {
        let k4 = fixtures::k4_d();
        assert_eq!(
            fundamental_circuit(&k4, &[0, 1, 2, 3, 4], 5, &s()).unwrap(),
            vec![0, 1, 2, 3, 4, 5]
        );
        assert_eq!(
            fundamental_circuit(&k4, &[1, 2, 3, 4, 5], 0, &s()).unwrap(),
            vec![0, 1, 2, 3, 4, 5]
        );
        let mc5 = fixtures::mc5();
        assert_eq!(
            fundamental_circuit(&mc5, &[0, 1, 3, 4], 2, &s()).unwrap(),
            vec![0, 1, 2, 3, 4]
        );
        assert_eq!(
            fundamental_circuit(&k4, &[0, 1, 2, 3, 4], 4, &s()),
            Err(MatroidError::EdgeInBasis(4))
        );
        assert!(matches!(
            fundamental_circuit(&k4, &[0, 1, 2, 3], 5, &s()),
            Err(MatroidError::NotABasis { .. })
        ));
    }

    #[test]
    fn component_examples() {
        assert_eq!(m_components(&fixtures::hat(), &s()).len(), 4);
        assert_eq!(m_components(&fixtures::mc5(), &s()), vec![vec![0, 1, 2, 3, 4]]);

        // Two length K4s glued at vertex 3.
        let mut edges = Vec::new();
        for block in [[0, 1, 2, 3], [3, 4, 5, 6]] {
            for i in 0..4 {
                for j in i + 1..4 {
                    edges.push((block[i], block[j], Length));
                }
            }
        }
        let g = MixedGraph::with_numbered_vertices(7, &edges);
        let comps = m_components(&g, &s());
        assert_eq!(comps.len(), 2);
        assert!(comps.iter().all(|c| c.len() == 6));
    }

    #[test]
    fn m_connectivity_examples() {
        assert!(is_m_connected(&fixtures::mc5(), &s()));
        assert!(!is_m_connected(&fixtures::hat(), &s()));
        let single = MixedGraph::with_numbered_vertices(2, &[(0, 1, Length)]);
        assert!(is_m_connected(&single, &s()));
    }

    #[test]
    fn direction_independence_examples() {
        assert!(direction_independent(&fixtures::hat(), &s()));
        assert_eq!(direction_circuit(&fixtures::hat(), &s()), None);
        let k4 = fixtures::k4_d();
        assert!(!direction_independent(&k4, &s()));
        assert_eq!(direction_circuit(&k4, &s()), Some((5, (0..6).collect())));
        assert!(direction_independent(&fixtures::digon(), &s()));
    }

    #[test]
    fn rank_is_seed_stable() {
        for seed in 0..20 {
            let st = Settings::with_seed(seed);
            assert_eq!(generic_rank(&fixtures::lolly(), None, &st), 6);
        }
    }
}
