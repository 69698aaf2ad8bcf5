//! Conflict graphs: two vectors are adjacent iff their inner product is at
//! most -16, i.e. their squared distance is at least 96. A proper coloring
//! therefore splits the vector set into parts of squared diameter below 96.
//!
//! Graphs come in two modes. Explicit graphs store sorted neighbor lists in
//! CSR form with `u32` ids. Implicit graphs keep only the vectors and answer
//! adjacency queries by computing inner products on demand; they are what the
//! full shell needs, since its 452 million edges do not fit the default budget.
//!
//! Independent balls `{z : ⟨x + y, z⟩ ≥ 16}` for pairs with `⟨x, y⟩ = -8`
//! have internal inner products at least -8, so they are independent sets and
//! serve as pre-assigned color classes ("peeling").

use std::borrow::Cow;
use std::collections::HashSet;
use std::io::{self, BufRead, Write};
use std::sync::{Arc, OnceLock};

use rayon::prelude::*;
use thiserror::Error;

use crate::golay::LENGTH;
use crate::leech::{LatticeVector, MinimalVectorSet};

/// Adjacency threshold on the inner product.
pub const CONFLICT_IP: i32 = -16;
/// Default explicit-mode memory budget, 3 GiB.
pub const DEFAULT_MEM_BUDGET: u64 = 3 << 30;
/// Inner product of the pairs whose sum centers an independent ball.
pub const BALL_PAIR_IP: i32 = -8;
/// Membership threshold `⟨center, z⟩ ≥ 16`.
pub const BALL_THRESHOLD: i32 = 16;

#[derive(Debug, Error)]
pub enum GraphError {
    #[error("explicit graph needs ~{needed} bytes, budget is {budget}; use implicit mode")]
    CapacityExceeded { needed: u64, budget: u64 },
    #[error("empty vector set")]
    Empty,
    #[error("vertices {u} and {v} have inner product {ip}; only -16 and -32 may be adjacent")]
    UnexpectedInnerProduct { u: usize, v: usize, ip: i32 },
    #[error("vertices {x} and {y} have inner product {ip}, a ball needs -8")]
    BadPair { x: usize, y: usize, ip: i32 },
    #[error("vertex {0} out of range")]
    VertexOutOfRange(usize),
    #[error("graph has no vectors attached (imported adjacency only)")]
    NoVectors,
    #[error("DIMACS line {line}: {msg}")]
    Dimacs { line: usize, msg: String },
    #[error(transparent)]
    Io(#[from] io::Error),
}

/// Requested storage mode.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GraphMode {
    Explicit,
    Implicit,
    /// Explicit if the estimate fits the budget, implicit otherwise.
    Auto,
}

#[derive(Debug, Clone)]
enum Adjacency {
    Explicit { offsets: Vec<u64>, neighbors: Vec<u32> },
    Implicit,
}

#[derive(Debug, Clone)]
pub struct ConflictGraph {
    vectors: Option<Arc<Vec<LatticeVector>>>,
    vertex_ids: Vec<u32>,
    adjacency: Adjacency,
    edge_count: OnceLock<u64>,
}

fn adjacent_ip(ip: i32) -> bool {
    ip <= CONFLICT_IP
}

fn scan_neighbors(vectors: &[LatticeVector], u: usize) -> Vec<u32> {
    let x = &vectors[u];
    vectors
        .iter()
        .enumerate()
        .filter(|(_, y)| adjacent_ip(x.dot(y)))
        .map(|(v, _)| v as u32)
        .collect()
}

impl ConflictGraph {
    /// Builds `Γ_X` for `set`. Vertex `i` is `set.vectors()[i]`.
    pub fn build(set: &MinimalVectorSet, mode: GraphMode, mem_budget: u64) -> Result<Self, GraphError> {
        let ids = (0..set.len() as u32).collect();
        Self::from_vectors(set.vectors().to_vec(), ids, mode, mem_budget)
    }

    /// Builds the graph on an arbitrary list of minimal vectors; `vertex_ids`
    /// are the positions the vertices had in their source set.
    pub fn from_vectors(
        vectors: Vec<LatticeVector>,
        vertex_ids: Vec<u32>,
        mode: GraphMode,
        mem_budget: u64,
    ) -> Result<Self, GraphError> {
        if vectors.is_empty() {
            return Err(GraphError::Empty);
        }
        assert_eq!(vectors.len(), vertex_ids.len());
        let n = vectors.len();
        let explicit = match mode {
            GraphMode::Explicit => true,
            GraphMode::Implicit => false,
            GraphMode::Auto => estimate_explicit_bytes(&vectors) <= mem_budget,
        };
        let vectors = Arc::new(vectors);
        if !explicit {
            return Ok(ConflictGraph { vectors: Some(vectors), vertex_ids, adjacency: Adjacency::Implicit, edge_count: OnceLock::new() });
        }
        let needed = estimate_explicit_bytes(&vectors);
        if needed > mem_budget {
            return Err(GraphError::CapacityExceeded { needed, budget: mem_budget });
        }
        let lists: Vec<Vec<u32>> = (0..n).into_par_iter().map(|u| scan_neighbors(&vectors, u)).collect();
        for (u, list) in lists.iter().enumerate() {
            for &v in list {
                let ip = vectors[u].dot(&vectors[v as usize]);
                if ip != -16 && ip != -32 {
                    return Err(GraphError::UnexpectedInnerProduct { u, v: v as usize, ip });
                }
            }
        }
        let graph = Self::from_lists(&lists, Some(vectors), vertex_ids);
        Ok(graph)
    }

    fn from_lists(lists: &[Vec<u32>], vectors: Option<Arc<Vec<LatticeVector>>>, vertex_ids: Vec<u32>) -> Self {
        let mut offsets = Vec::with_capacity(lists.len() + 1);
        offsets.push(0u64);
        let total: usize = lists.iter().map(Vec::len).sum();
        let mut neighbors = Vec::with_capacity(total);
        for list in lists {
            neighbors.extend_from_slice(list);
            offsets.push(neighbors.len() as u64);
        }
        let edge_count = OnceLock::new();
        let _ = edge_count.set(total as u64 / 2);
        ConflictGraph { vectors, vertex_ids, adjacency: Adjacency::Explicit { offsets, neighbors }, edge_count }
    }

    /// Explicit graph from an edge list (0-based, any order, duplicates ignored).
    pub fn from_edges(n: usize, edges: &[(u32, u32)]) -> Self {
        let mut lists = vec![Vec::new(); n];
        for &(u, v) in edges {
            if u != v {
                lists[u as usize].push(v);
                lists[v as usize].push(u);
            }
        }
        for list in &mut lists {
            list.sort_unstable();
            list.dedup();
        }
        Self::from_lists(&lists, None, (0..n as u32).collect())
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_ids.len()
    }

    /// Positions of the vertices in their source set.
    pub fn vertex_ids(&self) -> &[u32] {
        &self.vertex_ids
    }

    pub fn is_explicit(&self) -> bool {
        matches!(self.adjacency, Adjacency::Explicit { .. })
    }

    pub fn vectors(&self) -> Option<&[LatticeVector]> {
        self.vectors.as_deref().map(Vec::as_slice)
    }

    pub fn vector(&self, u: usize) -> Option<&LatticeVector> {
        self.vectors.as_ref().and_then(|v| v.get(u))
    }

    /// Sorted neighbor list of `u`. Borrowed in explicit mode, computed in implicit mode.
    pub fn neighbors(&self, u: usize) -> Cow<'_, [u32]> {
        match &self.adjacency {
            Adjacency::Explicit { offsets, neighbors } => {
                Cow::Borrowed(&neighbors[offsets[u] as usize..offsets[u + 1] as usize])
            }
            Adjacency::Implicit => Cow::Owned(scan_neighbors(self.vectors.as_ref().unwrap(), u)),
        }
    }

    pub fn degree(&self, u: usize) -> usize {
        match &self.adjacency {
            Adjacency::Explicit { offsets, .. } => (offsets[u + 1] - offsets[u]) as usize,
            Adjacency::Implicit => {
                let vs = self.vectors.as_ref().unwrap();
                let x = &vs[u];
                vs.iter().filter(|y| adjacent_ip(x.dot(y))).count()
            }
        }
    }

    pub fn is_adjacent(&self, u: usize, v: usize) -> bool {
        match &self.adjacency {
            Adjacency::Explicit { .. } => self.neighbors(u).binary_search(&(v as u32)).is_ok(),
            Adjacency::Implicit => {
                let vs = self.vectors.as_ref().unwrap();
                adjacent_ip(vs[u].dot(&vs[v]))
            }
        }
    }

    /// Number of edges. Implicit graphs stream all pairs once and cache the result.
    pub fn edge_count(&self) -> u64 {
        *self.edge_count.get_or_init(|| {
            let vs = self.vectors.as_ref().expect("implicit graphs carry vectors");
            (0..vs.len())
                .into_par_iter()
                .map(|u| {
                    let x = &vs[u];
                    vs[u + 1..].iter().filter(|y| adjacent_ip(x.dot(y))).count() as u64
                })
                .sum()
        })
    }

    /// Same graph, stored explicitly. Fails if the budget is too small.
    pub fn to_explicit(&self, mem_budget: u64) -> Result<ConflictGraph, GraphError> {
        if self.is_explicit() {
            return Ok(self.clone());
        }
        let vectors = self.vectors.as_ref().ok_or(GraphError::NoVectors)?;
        ConflictGraph::from_vectors(vectors.to_vec(), self.vertex_ids.clone(), GraphMode::Explicit, mem_budget)
    }

    /// Induced subgraph on `keep` (ascending local vertex indices).
    pub fn induced(&self, keep: &[u32]) -> ConflictGraph {
        let ids = keep.iter().map(|&u| self.vertex_ids[u as usize]).collect();
        let vectors = self.vectors.as_ref().map(|vs| Arc::new(keep.iter().map(|&u| vs[u as usize]).collect::<Vec<_>>()));
        match &self.adjacency {
            Adjacency::Implicit => ConflictGraph { vectors, vertex_ids: ids, adjacency: Adjacency::Implicit, edge_count: OnceLock::new() },
            Adjacency::Explicit { .. } => {
                let mut local = vec![u32::MAX; self.vertex_count()];
                for (i, &u) in keep.iter().enumerate() {
                    local[u as usize] = i as u32;
                }
                let lists: Vec<Vec<u32>> = keep
                    .iter()
                    .map(|&u| {
                        self.neighbors(u as usize)
                            .iter()
                            .filter_map(|&v| Some(local[v as usize]).filter(|&l| l != u32::MAX))
                            .collect()
                    })
                    .collect();
                Self::from_lists(&lists, vectors, ids)
            }
        }
    }
}

/// Explicit-mode footprint: CSR offsets plus `u32` neighbor ids, from the
/// mean degree of up to 32 evenly spaced vertices.
pub fn estimate_explicit_bytes(vectors: &[LatticeVector]) -> u64 {
    let n = vectors.len();
    if n == 0 {
        return 0;
    }
    let samples = crate::leech::stride_sample(n, 32);
    let degree_sum: u64 = samples
        .iter()
        .map(|&u| vectors.iter().filter(|y| adjacent_ip(vectors[u].dot(y))).count() as u64)
        .sum();
    let mean = degree_sum as f64 / samples.len() as f64;
    8 * (n as u64 + 1) + (4.0 * mean * n as f64).ceil() as u64
}

/// Builds `Γ_X` (free-function form of [`ConflictGraph::build`]).
pub fn build_graph(set: &MinimalVectorSet, mode: GraphMode, mem_budget: u64) -> Result<ConflictGraph, GraphError> {
    ConflictGraph::build(set, mode, mem_budget)
}

/// An independent set `{z : ⟨center, z⟩ ≥ 16}` with `center = x + y`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IndependentBall {
    pub center: [i32; LENGTH],
    /// Local vertex indices, ascending.
    pub members: Vec<u32>,
}

impl IndependentBall {
    pub fn center_norm2(&self) -> i64 {
        self.center.iter().map(|&c| i64::from(c) * i64::from(c)).sum()
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }
}

fn center_dot(center: &[i32; LENGTH], z: &LatticeVector) -> i32 {
    center.iter().zip(z.coords()).map(|(&c, &x)| c * i32::from(x)).sum()
}

fn ball_members(vectors: &[LatticeVector], center: &[i32; LENGTH]) -> Vec<u32> {
    vectors
        .iter()
        .enumerate()
        .filter(|(_, z)| center_dot(center, z) >= BALL_THRESHOLD)
        .map(|(i, _)| i as u32)
        .collect()
}

/// The ball centered at `x + y` for graph vertices `x`, `y` with `⟨x, y⟩ = -8`.
pub fn independent_ball(graph: &ConflictGraph, x: usize, y: usize) -> Result<IndependentBall, GraphError> {
    let vs = graph.vectors().ok_or(GraphError::NoVectors)?;
    for u in [x, y] {
        if u >= vs.len() {
            return Err(GraphError::VertexOutOfRange(u));
        }
    }
    let ip = vs[x].dot(&vs[y]);
    if ip != BALL_PAIR_IP {
        return Err(GraphError::BadPair { x, y, ip });
    }
    let center = vs[x].add_wide(&vs[y]);
    Ok(IndependentBall { members: ball_members(vs, &center), center })
}

/// Result of greedy peeling.
#[derive(Debug, Clone)]
pub struct Peeling {
    /// Disjoint independent sets, as local indices of the input graph.
    pub sets: Vec<IndependentBall>,
    /// Subgraph induced on the vertices no set covers.
    pub residual: ConflictGraph,
    /// `residual` vertex `i` is input vertex `residual_to_parent[i]`.
    pub residual_to_parent: Vec<u32>,
}

/// Default number of ball centers scored per peeling step.
pub const DEFAULT_PEEL_CANDIDATES: usize = 64;

/// Greedily removes up to `k` independent sets.
///
/// Each step walks pairs `(x, y)`, `x < y`, of still-uncovered vertices with
/// `⟨x, y⟩ = -8` in canonical order, scores up to `candidates` distinct centers
/// by how many uncovered vertices their ball contains, and keeps the best
/// (first on ties). The chosen ball is intersected with the uncovered
/// vertices. Stops early when no pair is left.
pub fn peel(graph: &ConflictGraph, k: usize, candidates: usize) -> Result<Peeling, GraphError> {
    let n = graph.vertex_count();
    let mut covered = vec![false; n];
    let mut sets = Vec::with_capacity(k);
    if k > 0 {
        let vs = graph.vectors().ok_or(GraphError::NoVectors)?;
        for _ in 0..k {
            let Some(ball) = best_ball(vs, &covered, candidates.max(1)) else { break };
            for &m in &ball.members {
                covered[m as usize] = true;
            }
            sets.push(ball);
        }
    }
    let residual_to_parent: Vec<u32> = (0..n as u32).filter(|&u| !covered[u as usize]).collect();
    let residual = graph.induced(&residual_to_parent);
    Ok(Peeling { sets, residual, residual_to_parent })
}

fn best_ball(vs: &[LatticeVector], covered: &[bool], candidates: usize) -> Option<IndependentBall> {
    let mut seen = HashSet::new();
    let mut centers = Vec::new();
    'outer: for x in (0..vs.len()).filter(|&x| !covered[x]) {
        for y in (x + 1..vs.len()).filter(|&y| !covered[y]) {
            if vs[x].dot(&vs[y]) == BALL_PAIR_IP {
                let c = vs[x].add_wide(&vs[y]);
                if seen.insert(c) {
                    centers.push(c);
                    if centers.len() == candidates {
                        break 'outer;
                    }
                }
            }
        }
    }
    let scored: Vec<(usize, Vec<u32>)> = centers
        .par_iter()
        .map(|c| {
            let members: Vec<u32> = ball_members(vs, c).into_iter().filter(|&m| !covered[m as usize]).collect();
            (members.len(), members)
        })
        .collect();
    let best = scored.iter().enumerate().max_by(|(i, a), (j, b)| a.0.cmp(&b.0).then(j.cmp(i)))?.0;
    let (_, members) = scored.into_iter().nth(best)?;
    Some(IndependentBall { center: centers[best], members })
}

/// Writes the graph in DIMACS edge format: `p edge V E`, then `e u v` with
/// 1-based ids, `u < v`, sorted.
pub fn export_dimacs<W: Write>(graph: &ConflictGraph, mut sink: W) -> Result<(), GraphError> {
    writeln!(sink, "p edge {} {}", graph.vertex_count(), graph.edge_count())?;
    for u in 0..graph.vertex_count() {
        for &v in graph.neighbors(u).iter().filter(|&&v| v as usize > u) {
            writeln!(sink, "e {} {}", u + 1, v + 1)?;
        }
    }
    sink.flush()?;
    Ok(())
}

/// Reads a DIMACS edge file into an explicit graph without vectors.
pub fn import_dimacs<R: BufRead>(source: R) -> Result<ConflictGraph, GraphError> {
    let mut n = None;
    let mut declared_edges = 0u64;
    let mut edges = Vec::new();
    for (i, line) in source.lines().enumerate() {
        let line = line?;
        let err = |msg: &str| GraphError::Dimacs { line: i + 1, msg: msg.to_string() };
        let mut tok = line.split_whitespace();
        match tok.next() {
            None | Some("c") => {}
            Some("p") => {
                let _format = tok.next().ok_or_else(|| err("missing format"))?;
                n = Some(tok.next().and_then(|t| t.parse::<usize>().ok()).ok_or_else(|| err("bad vertex count"))?);
                declared_edges = tok.next().and_then(|t| t.parse().ok()).ok_or_else(|| err("bad edge count"))?;
            }
            Some("e") => {
                let nv = n.ok_or_else(|| err("edge before header"))?;
                let mut id = || -> Result<u32, GraphError> {
                    let v: usize = tok.next().and_then(|t| t.parse().ok()).ok_or_else(|| err("bad vertex id"))?;
                    if v == 0 || v > nv {
                        return Err(err("vertex id out of range"));
                    }
                    Ok(v as u32 - 1)
                };
                let (u, v) = (id()?, id()?);
                edges.push((u, v));
            }
            Some(_) => return Err(err("unknown line type")),
        }
    }
    let n = n.ok_or(GraphError::Dimacs { line: 0, msg: "missing header".into() })?;
    let g = ConflictGraph::from_edges(n, &edges);
    if g.edge_count() != declared_edges {
        return Err(GraphError::Dimacs { line: 0, msg: format!("header declares {declared_edges} edges, found {}", g.edge_count()) });
    }
    Ok(g)
}
