//! Frameworks in exact rational arithmetic: rigidity and frame matrices,
//! generic sampling, realisation from prescribed slopes, equivalence and
//! congruence tests, and a random generator of minimally rigid graphs.
//!
//! Lengths are always handled squared, so no radicals appear except in the
//! final dilation of a slope realisation (see [`SlopeRealization`]).

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::seq::SliceRandom;
use rand::Rng;
use serde_json::{json, Value};

use crate::exact::{self, Rational};
use crate::field;
use crate::graph::{Edge, EdgeKind, MixedGraph, Multigraph};
use crate::matroid::{self, stream_rng, Settings};

pub type Point = [Rational; 2];

const STREAM_SAMPLE: u64 = 2 << 32;
const STREAM_SLOPES: u64 = 3 << 32;
const STREAM_EXTENSIONS: u64 = 4 << 32;

/// Combination attempts before a slope realisation gives up.
pub const SLOPE_RETRIES: usize = 32;

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum RealizeError {
    #[error("edge {u}{v} has coincident endpoints")]
    CoincidentEndpoints { u: String, v: String },
    #[error("malformed framework: {0}")]
    Format(String),
    #[error("vertex {0:?} is not in the graph")]
    UnknownVertex(String),
    #[error("slope realisation needs x0 != y0")]
    SamePinnedPair,
    #[error("squared distance t2 must be positive")]
    NonPositiveDistance,
    #[error("slopes must be pairwise distinct; {0} and {1} share a slope")]
    RepeatedSlope(String, String),
    #[error("only direction edges may carry slopes")]
    NotDirectionPure,
    #[error("count condition i(X) <= 2|X| - 3 fails: the edges are not independent")]
    TooDense,
    #[error("no injective solution after {0} combinations; slopes are not generic enough")]
    NotInjective(usize),
    #[error("no minimally rigid graph on {n} vertices has exactly {budget} length edges")]
    InfeasibleBudget { n: usize, budget: usize },
}

/// A mixed graph with an exact position for every vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Framework {
    pub graph: MixedGraph,
    /// Indexed like `graph.vertices()`.
    pub coords: Vec<Point>,
}

fn rational_to_json(x: &Rational) -> Value {
    let part = |b: &BigInt| match b.to_i64() {
        Some(v) => json!(v),
        None => json!(b.to_string()),
    };
    json!([part(x.numer()), part(x.denom())])
}

fn json_to_bigint(v: &Value) -> Result<BigInt, RealizeError> {
    match v {
        Value::Number(n) => n
            .as_i64()
            .map(BigInt::from)
            .ok_or_else(|| RealizeError::Format(format!("{n} is not an integer"))),
        Value::String(s) => s
            .parse()
            .map_err(|_| RealizeError::Format(format!("{s:?} is not an integer"))),
        other => Err(RealizeError::Format(format!("expected integer, got {other}"))),
    }
}

/// `[numerator, denominator]`, or a bare integer.
pub fn rational_from_json(v: &Value) -> Result<Rational, RealizeError> {
    match v {
        Value::Array(parts) if parts.len() == 2 => {
            let d = json_to_bigint(&parts[1])?;
            if d.is_zero() {
                return Err(RealizeError::Format("zero denominator".into()));
            }
            Ok(Rational::new(json_to_bigint(&parts[0])?, d))
        }
        Value::Number(_) | Value::String(_) => Ok(Rational::from_integer(json_to_bigint(v)?)),
        other => Err(RealizeError::Format(format!(
            "expected [numerator, denominator], got {other}"
        ))),
    }
}

pub fn rational_json(x: &Rational) -> Value {
    rational_to_json(x)
}

impl Framework {
    pub fn new(graph: MixedGraph, coords: Vec<Point>) -> Self {
        assert_eq!(graph.vertex_count(), coords.len());
        Framework { graph, coords }
    }

    pub fn point(&self, name: &str) -> Option<&Point> {
        self.graph.index_of(name).map(|i| &self.coords[i])
    }

    /// `{"coords":{"a":[[xn,xd],[yn,yd]],...}}`
    pub fn coords_json(&self) -> Value {
        let map: serde_json::Map<String, Value> = self
            .graph
            .vertices()
            .iter()
            .zip(&self.coords)
            .map(|(v, p)| (v.clone(), json!([rational_to_json(&p[0]), rational_to_json(&p[1])])))
            .collect();
        json!({ "coords": map })
    }

    pub fn to_json(&self) -> String {
        self.coords_json().to_string()
    }

    /// Reads coordinates for `graph`; every vertex must be present, no others.
    pub fn from_json(graph: &MixedGraph, text: &str) -> Result<Self, RealizeError> {
        let doc: Value = serde_json::from_str(text)
            .map_err(|e| RealizeError::Format(format!("line {}, column {}: {e}", e.line(), e.column())))?;
        let coords = doc
            .get("coords")
            .and_then(Value::as_object)
            .ok_or_else(|| RealizeError::Format("missing \"coords\" object".into()))?;
        let mut points: Vec<Option<Point>> = vec![None; graph.vertex_count()];
        for (name, value) in coords {
            let i = graph
                .index_of(name)
                .ok_or_else(|| RealizeError::UnknownVertex(name.clone()))?;
            let pair = value
                .as_array()
                .filter(|a| a.len() == 2)
                .ok_or_else(|| RealizeError::Format(format!("{name}: expected [x, y]")))?;
            points[i] = Some([rational_from_json(&pair[0])?, rational_from_json(&pair[1])?]);
        }
        let coords = points
            .into_iter()
            .enumerate()
            .map(|(i, p)| p.ok_or_else(|| RealizeError::Format(format!("{}: missing coordinates", graph.name(i)))))
            .collect::<Result<_, _>>()?;
        Ok(Framework::new(graph.clone(), coords))
    }
}

fn diff(p: &Point, q: &Point) -> Point {
    [&p[0] - &q[0], &p[1] - &q[1]]
}

fn cross(a: &Point, b: &Point) -> Rational {
    &a[0] * &b[1] - &a[1] * &b[0]
}

fn norm2(a: &Point) -> Rational {
    &a[0] * &a[0] + &a[1] * &a[1]
}

/// Rigidity-matrix row of one edge at field coordinates. With
/// `(a, b) = p(u) - p(v)`: a length edge puts `(a, b)` at `u` and `(-a, -b)` at
/// `v`; a direction edge puts `(b, -a)` at `u` and `(-b, a)` at `v`.
pub fn rigidity_row_mod_p(e: &Edge, coords: &[[u64; 2]], n: usize) -> Vec<u64> {
    let mut row = vec![0; 2 * n];
    let a = field::sub(coords[e.u][0], coords[e.v][0]);
    let b = field::sub(coords[e.u][1], coords[e.v][1]);
    let (x, y) = match e.kind {
        EdgeKind::Length => (a, b),
        EdgeKind::Direction => (b, field::neg(a)),
    };
    row[2 * e.u] = x;
    row[2 * e.u + 1] = y;
    row[2 * e.v] = field::neg(x);
    row[2 * e.v + 1] = field::neg(y);
    row
}

/// `R(G, p)` with rows in canonical edge order and two columns per vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RigidityMatrix {
    pub rows: Vec<Vec<Rational>>,
    pub cols: usize,
}

impl RigidityMatrix {
    pub fn rank(&self) -> usize {
        numeric_rank(&self.rows)
    }

    /// The matrix with one row deleted.
    pub fn without_row(&self, i: usize) -> RigidityMatrix {
        let mut rows = self.rows.clone();
        rows.remove(i);
        RigidityMatrix { rows, cols: self.cols }
    }
}

pub fn rigidity_matrix(fw: &Framework) -> Result<RigidityMatrix, RealizeError> {
    let g = &fw.graph;
    let n = g.vertex_count();
    let rows = g
        .edges()
        .iter()
        .map(|e| {
            let d = diff(&fw.coords[e.u], &fw.coords[e.v]);
            if d[0].is_zero() && d[1].is_zero() {
                return Err(RealizeError::CoincidentEndpoints {
                    u: g.name(e.u).into(),
                    v: g.name(e.v).into(),
                });
            }
            let [a, b] = d;
            let (x, y) = match e.kind {
                EdgeKind::Length => (a, b),
                EdgeKind::Direction => (b, -a),
            };
            let mut row = vec![Rational::zero(); 2 * n];
            row[2 * e.v] = -x.clone();
            row[2 * e.v + 1] = -y.clone();
            row[2 * e.u] = x;
            row[2 * e.u + 1] = y;
            Ok(row)
        })
        .collect::<Result<_, _>>()?;
    Ok(RigidityMatrix { rows, cols: 2 * n })
}

/// Exact rank by fraction-free elimination.
pub fn numeric_rank(rows: &[Vec<Rational>]) -> usize {
    exact::rank(rows)
}

pub fn infinitesimally_rigid(fw: &Framework) -> Result<bool, RealizeError> {
    let n = fw.graph.vertex_count();
    Ok(n <= 1 || rigidity_matrix(fw)?.rank() == 2 * n - 2)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Measurement {
    SquaredLength(Rational),
    /// `None` for a vertical direction edge.
    Slope(Option<Rational>),
}

/// The rigidity map: squared lengths and slopes in canonical edge order.
pub fn measurements(fw: &Framework) -> Vec<Measurement> {
    fw.graph
        .edges()
        .iter()
        .map(|e| {
            let d = diff(&fw.coords[e.u], &fw.coords[e.v]);
            match e.kind {
                EdgeKind::Length => Measurement::SquaredLength(norm2(&d)),
                EdgeKind::Direction => Measurement::Slope((!d[0].is_zero()).then(|| &d[1] / &d[0])),
            }
        })
        .collect()
}

/// Integer coordinates uniform in `[0, 2^62)`, reproducible from `seed`.
pub fn random_generic_framework(g: &MixedGraph, seed: u64) -> Framework {
    let mut rng = stream_rng(seed, STREAM_SAMPLE);
    let coords = (0..g.vertex_count())
        .map(|_| {
            [
                Rational::from_integer(BigInt::from(rng.random_range(0..1i64 << 62))),
                Rational::from_integer(BigInt::from(rng.random_range(0..1i64 << 62))),
            ]
        })
        .collect();
    Framework::new(g.clone(), coords)
}

/// Incidence matrix of the frame `(H, q)`: row `e = uv` holds `q(e)` at `u`
/// and `-q(e)` at `v`.
pub fn frame_matrix(h: &Multigraph, q: &[Point]) -> Vec<Vec<Rational>> {
    assert_eq!(q.len(), h.edge_count());
    h.edges
        .iter()
        .zip(q)
        .map(|(e, qe)| {
            let mut row = vec![Rational::zero(); 2 * h.vertex_count()];
            row[2 * e.u] = qe[0].clone();
            row[2 * e.u + 1] = qe[1].clone();
            row[2 * e.v] = -qe[0].clone();
            row[2 * e.v + 1] = -qe[1].clone();
            row
        })
        .collect()
}

/// Frame row over the prime field.
pub fn frame_row_mod_p(u: usize, v: usize, q: [u64; 2], n: usize) -> Vec<u64> {
    let mut row = vec![0; 2 * n];
    row[2 * u] = q[0];
    row[2 * u + 1] = q[1];
    row[2 * v] = field::neg(q[0]);
    row[2 * v + 1] = field::neg(q[1]);
    row
}

/// Direction-pure graph with a prescribed slope per edge, to be realised
/// with `z0` at the origin and `|p(x0) - p(y0)|^2 = t2`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SlopeProblem {
    pub graph: MixedGraph,
    /// Indexed like `graph.edges()`.
    pub slopes: Vec<Rational>,
    pub x0: String,
    pub y0: String,
    pub z0: String,
    pub t2: Rational,
}

impl SlopeProblem {
    /// `{"vertices":[..],"edges":[{"u":..,"v":..,"slope":[n,d]}],"x0":..,"y0":..,"z0":..,"t2":[n,d]}`
    pub fn from_json(text: &str) -> Result<Self, RealizeError> {
        let doc: Value = serde_json::from_str(text)
            .map_err(|e| RealizeError::Format(format!("line {}, column {}: {e}", e.line(), e.column())))?;
        let field_str = |k: &str| -> Result<String, RealizeError> {
            doc.get(k)
                .and_then(Value::as_str)
                .map(str::to_string)
                .ok_or_else(|| RealizeError::Format(format!("missing string field {k:?}")))
        };
        let vertices: Vec<String> = doc
            .get("vertices")
            .and_then(Value::as_array)
            .ok_or_else(|| RealizeError::Format("missing \"vertices\"".into()))?
            .iter()
            .map(|v| {
                v.as_str()
                    .map(str::to_string)
                    .ok_or_else(|| RealizeError::Format("vertex names must be strings".into()))
            })
            .collect::<Result<_, _>>()?;
        let mut edges = Vec::new();
        let mut slopes = Vec::new();
        for (i, e) in doc
            .get("edges")
            .and_then(Value::as_array)
            .ok_or_else(|| RealizeError::Format("missing \"edges\"".into()))?
            .iter()
            .enumerate()
        {
            let end = |k: &str| {
                e.get(k)
                    .and_then(Value::as_str)
                    .map(str::to_string)
                    .ok_or_else(|| RealizeError::Format(format!("edges[{i}]: missing {k:?}")))
            };
            edges.push((end("u")?, end("v")?, EdgeKind::Direction));
            let slope = e
                .get("slope")
                .ok_or_else(|| RealizeError::Format(format!("edges[{i}]: missing \"slope\"")))?;
            slopes.push(rational_from_json(slope)?);
        }
        let graph = MixedGraph::new(vertices, &edges).map_err(|e| RealizeError::Format(e.to_string()))?;
        // Re-key slopes to canonical edge order.
        let mut ordered = vec![Rational::zero(); graph.edge_count()];
        for ((u, v, _), s) in edges.iter().zip(slopes) {
            let (a, b) = (graph.index_of(u).unwrap(), graph.index_of(v).unwrap());
            ordered[graph.find_edge(a, b, EdgeKind::Direction).unwrap()] = s;
        }
        let t2 = rational_from_json(
            doc.get("t2")
                .ok_or_else(|| RealizeError::Format("missing \"t2\"".into()))?,
        )?;
        Ok(SlopeProblem {
            graph,
            slopes: ordered,
            x0: field_str("x0")?,
            y0: field_str("y0")?,
            z0: field_str("z0")?,
            t2,
        })
    }

    pub fn to_json(&self) -> String {
        let g = &self.graph;
        let edges: Vec<Value> = g
            .edges()
            .iter()
            .zip(&self.slopes)
            .map(|(e, s)| json!({"u": g.name(e.u), "v": g.name(e.v), "slope": rational_to_json(s)}))
            .collect();
        json!({
            "vertices": g.vertices(),
            "edges": edges,
            "x0": self.x0, "y0": self.y0, "z0": self.z0,
            "t2": rational_to_json(&self.t2),
        })
        .to_string()
    }
}

/// Output of [`realize_from_slopes`].
///
/// The realisation is `sqrt(scale_squared) * base`. `base` is rational,
/// satisfies every slope constraint and has `z0` at the origin; its first
/// non-zero coordinate is 1, which also fixes the sign. When the scale is
/// rational the scaled framework is given exactly in `framework`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SlopeRealization {
    pub base: Framework,
    pub scale_squared: Rational,
    pub framework: Option<Framework>,
}

impl SlopeRealization {
    pub fn to_json(&self) -> Value {
        let mut doc = match &self.framework {
            Some(fw) => fw.coords_json(),
            None => json!({}),
        };
        doc["base"] = self.base.coords_json()["coords"].clone();
        doc["scale_squared"] = rational_to_json(&self.scale_squared);
        doc["exact"] = json!(self.framework.is_some());
        doc
    }
}

/// Checks the constraints of a slope problem exactly against `p`, up to
/// the dilation by `sqrt(scale_squared)`.
pub fn check_slope_solution(problem: &SlopeProblem, p: &[Point], scale_squared: &Rational) -> bool {
    let g = &problem.graph;
    let idx = |n: &str| g.index_of(n);
    let (Some(x0), Some(y0), Some(z0)) = (idx(&problem.x0), idx(&problem.y0), idx(&problem.z0)) else {
        return false;
    };
    let slopes_ok = g.edges().iter().zip(&problem.slopes).all(|(e, s)| {
        let d = diff(&p[e.u], &p[e.v]);
        d[1] == s * &d[0]
    });
    let injective = (0..p.len()).all(|i| (i + 1..p.len()).all(|j| p[i] != p[j]));
    slopes_ok
        && injective
        && p[z0][0].is_zero()
        && p[z0][1].is_zero()
        && scale_squared * norm2(&diff(&p[x0], &p[y0])) == problem.t2
}

/// Realises a direction-pure graph with prescribed slopes.
///
/// Solves `s_e (x_u - x_v) - (y_u - y_v) = 0` with `z0` pinned at the origin,
/// takes seeded random rational combinations of the null space until the
/// placement is injective, normalises it and dilates to the requested
/// squared distance. When `|E| = 2|V| - 3` the null space is one-dimensional
/// and the result is independent of the seed.
pub fn realize_from_slopes(problem: &SlopeProblem, seed: u64) -> Result<SlopeRealization, RealizeError> {
    let g = &problem.graph;
    let n = g.vertex_count();
    let find = |name: &str| g.index_of(name).ok_or_else(|| RealizeError::UnknownVertex(name.into()));
    let (x0, y0, z0) = (find(&problem.x0)?, find(&problem.y0)?, find(&problem.z0)?);
    if x0 == y0 {
        return Err(RealizeError::SamePinnedPair);
    }
    if !problem.t2.is_positive() {
        return Err(RealizeError::NonPositiveDistance);
    }
    if g.len_count() > 0 {
        return Err(RealizeError::NotDirectionPure);
    }
    let mut by_slope: BTreeMap<&Rational, usize> = BTreeMap::new();
    for (i, s) in problem.slopes.iter().enumerate() {
        if let Some(&j) = by_slope.get(s) {
            let name = |k: usize| g.edge_ref(k).to_string();
            return Err(RealizeError::RepeatedSlope(name(j), name(i)));
        }
        by_slope.insert(s, i);
    }
    // Independence of a direction-pure edge set is exactly the (2,3) count.
    let all: Vec<usize> = (0..g.edge_count()).collect();
    if !matroid::is_independent(g, &all, &Settings::with_seed(seed)) {
        return Err(RealizeError::TooDense);
    }

    // Unknown columns: every vertex except z0, two per vertex.
    let col = |v: usize| -> Option<usize> {
        match v.cmp(&z0) {
            std::cmp::Ordering::Less => Some(2 * v),
            std::cmp::Ordering::Equal => None,
            std::cmp::Ordering::Greater => Some(2 * (v - 1)),
        }
    };
    let width = 2 * (n - 1);
    let rows: Vec<Vec<Rational>> = g
        .edges()
        .iter()
        .zip(&problem.slopes)
        .map(|(e, s)| {
            let mut row = vec![Rational::zero(); width];
            for (v, sign) in [(e.u, Rational::one()), (e.v, -Rational::one())] {
                if let Some(c) = col(v) {
                    row[c] = s * &sign;
                    row[c + 1] = -sign;
                }
            }
            row
        })
        .collect();
    let kernel = exact::null_space(&rows, width);

    let mut rng = stream_rng(seed, STREAM_SLOPES);
    let placement = |x: &[Rational]| -> Vec<Point> {
        (0..n)
            .map(|v| match col(v) {
                Some(c) => [x[c].clone(), x[c + 1].clone()],
                None => [Rational::zero(), Rational::zero()],
            })
            .collect()
    };
    for _ in 0..SLOPE_RETRIES {
        let mut x = vec![Rational::zero(); width];
        for b in &kernel {
            let c = Rational::from_integer(BigInt::from(rng.random_range(-(1i64 << 20)..=(1i64 << 20))));
            for (xi, bi) in x.iter_mut().zip(b) {
                *xi += &c * bi;
            }
        }
        let mut p = placement(&x);
        let injective = (0..n).all(|i| (i + 1..n).all(|j| p[i] != p[j]));
        if !injective {
            continue;
        }
        let lead = p
            .iter()
            .flat_map(|q| q.iter())
            .find(|c| !c.is_zero())
            .cloned()
            .expect("injective placement on two or more vertices is non-zero");
        for q in &mut p {
            for c in q.iter_mut() {
                *c /= &lead;
            }
        }
        let scale_squared = &problem.t2 / norm2(&diff(&p[x0], &p[y0]));
        debug_assert!(check_slope_solution(problem, &p, &scale_squared));
        let framework = exact::sqrt_exact(&scale_squared)
            .map(|k| Framework::new(g.clone(), p.iter().map(|q| [&q[0] * &k, &q[1] * &k]).collect()));
        return Ok(SlopeRealization {
            base: Framework::new(g.clone(), p),
            scale_squared,
            framework,
        });
    }
    Err(RealizeError::NotInjective(SLOPE_RETRIES))
}

/// Equivalent frameworks: parallel on every direction edge (where `q`'s
/// endpoints differ) and equal squared length on every length edge.
pub fn are_equivalent(g: &MixedGraph, p: &Framework, q: &Framework) -> bool {
    g.edges().iter().all(|e| {
        let dp = diff(&p.coords[e.u], &p.coords[e.v]);
        let dq = diff(&q.coords[e.u], &q.coords[e.v]);
        match e.kind {
            EdgeKind::Direction => (dq[0].is_zero() && dq[1].is_zero()) || cross(&dp, &dq).is_zero(),
            EdgeKind::Length => norm2(&dp) == norm2(&dq),
        }
    })
}

/// Congruent placements differ by a translation, possibly composed with a
/// rotation by 180 degrees.
pub fn are_congruent(p: &Framework, q: &Framework) -> bool {
    if p.graph.vertices() != q.graph.vertices() {
        return false;
    }
    let n = p.coords.len();
    if n == 0 {
        return true;
    }
    let shift = |sign: bool| -> bool {
        let base = |i: usize| -> Point {
            if sign {
                [&q.coords[i][0] - &p.coords[i][0], &q.coords[i][1] - &p.coords[i][1]]
            } else {
                [&q.coords[i][0] + &p.coords[i][0], &q.coords[i][1] + &p.coords[i][1]]
            }
        };
        let t = base(0);
        (1..n).all(|i| base(i) == t)
    };
    shift(true) || shift(false)
}

/// A random independent rigid graph on `n` vertices with exactly
/// `length_budget` length edges, grown from one vertex by 0- and
/// 1-extensions. Vertices are named `v0, v1, ...`.
pub fn random_minimally_rigid(n: usize, seed: u64, length_budget: usize) -> Result<MixedGraph, RealizeError> {
    let infeasible = RealizeError::InfeasibleBudget {
        n,
        budget: length_budget,
    };
    match n {
        0 => return Err(infeasible),
        1 if length_budget == 0 => return Ok(MixedGraph::with_numbered_vertices(1, &[])),
        1 => return Err(infeasible),
        _ if length_budget < 1 || length_budget > 2 * n - 3 => return Err(infeasible),
        _ => {}
    }
    use EdgeKind::{Direction as D, Length as L};
    let mut rng = stream_rng(seed, STREAM_EXTENSIONS);
    // The only legal first step: a direction and a length edge to vertex 0.
    let mut edges: Vec<(usize, usize, EdgeKind)> = vec![(0, 1, D), (0, 1, L)];
    let mut lengths = 1;
    for v in 2..n {
        let later = n - 1 - v;
        let options: Vec<usize> = (0..=2)
            .filter(|d| lengths + d <= length_budget && lengths + d + 2 * later >= length_budget)
            .collect();
        let delta = options[rng.random_range(0..options.len())];
        if rng.random_bool(0.5) && one_extension(&mut edges, v, delta, &mut rng) {
            lengths += delta;
            continue;
        }
        let kinds = match delta {
            0 => [D, D],
            1 if rng.random_bool(0.5) => [D, L],
            1 => [L, D],
            _ => [L, L],
        };
        let a = rng.random_range(0..v);
        let b = if kinds[0] != kinds[1] {
            rng.random_range(0..v)
        } else {
            let b = rng.random_range(0..v - 1);
            if b >= a {
                b + 1
            } else {
                b
            }
        };
        edges.push((a, v, kinds[0]));
        edges.push((b, v, kinds[1]));
        lengths += delta;
    }
    Ok(MixedGraph::with_numbered_vertices(n, &edges))
}

/// Replaces a random edge `ab` by a new vertex `v` joined to `a`, `b` and a
/// third vertex, changing the length count by `delta` and never decreasing
/// either edge type. Returns false if no legal placement exists.
fn one_extension<R: Rng>(edges: &mut Vec<(usize, usize, EdgeKind)>, v: usize, delta: usize, rng: &mut R) -> bool {
    use EdgeKind::{Direction as D, Length as L};
    let pick = rng.random_range(0..edges.len());
    let (a, b, kind) = edges[pick];
    let new_lengths = delta + usize::from(kind == L);
    let mut kinds: Vec<EdgeKind> = (0..3).map(|i| if i < new_lengths { L } else { D }).collect();
    kinds.shuffle(rng);
    let third: Vec<usize> = (0..v)
        .filter(|&c| !(c == a && kinds[2] == kinds[0]) && !(c == b && kinds[2] == kinds[1]))
        .collect();
    if third.is_empty() {
        return false;
    }
    let c = third[rng.random_range(0..third.len())];
    edges.swap_remove(pick);
    edges.push((a, v, kinds[0]));
    edges.push((b, v, kinds[1]));
    edges.push((c, v, kinds[2]));
    true
}
