//! Colorings of conflict graphs.
//!
//! A proper `k`-coloring of a conflict graph is a division of its vector set
//! into `k` parts, each of squared diameter below 96. [`verify`] recounts
//! conflicts from scratch and is the only judge of properness; the searches
//! ([`dsatur`], [`tabucol`], [`solve`]) keep incremental counters that are
//! checked against it.

use std::collections::BTreeSet;
use std::cmp::Reverse;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::confgraph::{peel, ConflictGraph, GraphError, DEFAULT_PEEL_CANDIDATES};

/// Identifier of the pseudo-random generator driving every randomized search.
pub const RNG_ALGORITHM: &str = "ChaCha8Rng::seed_from_u64 (rand_chacha 0.3)";

/// Smallest part counts previously reported for `M_n`, `n = 1..=24` (index `n - 1`).
/// These are heuristic results, not proven chromatic numbers.
pub const BEST_KNOWN_PARTS: [usize; 24] = [2, 3, 4, 5, 6, 7, 8, 9, 9, 9, 9, 9, 10, 11, 13, 16, 16, 17, 18, 20, 22, 25, 29, 35];

/// Largest graph [`exact_chromatic`] accepts.
pub const EXACT_MAX_VERTICES: usize = 64;

#[derive(Debug, Error)]
pub enum ColoringError {
    #[error("assignment has {found} entries, graph has {expected} vertices")]
    LengthMismatch { expected: usize, found: usize },
    #[error("vertex {vertex} has color {color}, but only {k} colors are declared")]
    ColorOutOfRange { vertex: usize, color: u32, k: usize },
    #[error("exact search supports at most {EXACT_MAX_VERTICES} vertices, got {0}")]
    TooLarge(usize),
    #[error("need at least one color")]
    NoColors,
    #[error(transparent)]
    Graph(#[from] GraphError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Strategy {
    Dsatur,
    Tabucol,
}

impl std::str::FromStr for Strategy {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "dsatur" => Ok(Strategy::Dsatur),
            "tabucol" => Ok(Strategy::Tabucol),
            other => Err(format!("unknown strategy {other:?} (expected dsatur or tabucol)")),
        }
    }
}

/// Best failed attempt below the reported color count.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct NearMiss {
    pub colors: usize,
    pub conflicts: u64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SearchMeta {
    pub seed: u64,
    pub strategy: Strategy,
    pub iterations: u64,
    pub wall_time: Duration,
    pub rng: &'static str,
    pub near_miss: Option<NearMiss>,
    /// True if a time limit cut the search short; such runs are not replayable.
    pub timed_out: bool,
}

impl SearchMeta {
    fn new(seed: u64, strategy: Strategy) -> Self {
        SearchMeta { seed, strategy, iterations: 0, wall_time: Duration::ZERO, rng: RNG_ALGORITHM, near_miss: None, timed_out: false }
    }
}

/// A color per vertex, with its conflict count.
#[derive(Debug, Clone, PartialEq)]
pub struct Coloring {
    pub assignment: Vec<u32>,
    pub k: usize,
    pub conflicts: u64,
    pub meta: SearchMeta,
}

impl Coloring {
    pub fn is_proper(&self) -> bool {
        self.conflicts == 0
    }

    /// Number of colors actually used.
    pub fn used_colors(&self) -> usize {
        let mut used = vec![false; self.k];
        for &c in &self.assignment {
            used[c as usize] = true;
        }
        used.into_iter().filter(|&u| u).count()
    }
}

/// Search parameters. Identical config and graph give an identical trajectory
/// unless `time_limit` interrupts it.
#[derive(Debug, Clone, PartialEq)]
pub struct SearchConfig {
    /// Target number of colors.
    pub k: usize,
    pub seed: u64,
    /// Iteration budget of one TABUCOL run.
    pub max_iterations: u64,
    pub tabu_tenure_base: u32,
    pub tabu_tenure_slope: f64,
    /// TABUCOL runs per color count before [`solve`] gives up on it.
    pub restarts: u32,
    /// Independent balls reserved as color classes before coloring the rest.
    pub peel_count: usize,
    pub peel_candidates: usize,
    pub time_limit: Option<Duration>,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig {
            k: 1,
            seed: 0,
            max_iterations: 1_000_000,
            tabu_tenure_base: 10,
            tabu_tenure_slope: 0.6,
            restarts: 4,
            peel_count: 0,
            peel_candidates: DEFAULT_PEEL_CANDIDATES,
            time_limit: None,
        }
    }
}

/// Outcome of [`verify`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Verification {
    pub conflicts: u64,
    /// The first (up to 100) conflicting edges, `u < v`.
    pub examples: Vec<(u32, u32)>,
}

impl Verification {
    pub fn is_proper(&self) -> bool {
        self.conflicts == 0
    }
}

/// Recounts monochromatic edges from scratch.
pub fn verify(graph: &ConflictGraph, assignment: &[u32]) -> Result<Verification, ColoringError> {
    if assignment.len() != graph.vertex_count() {
        return Err(ColoringError::LengthMismatch { expected: graph.vertex_count(), found: assignment.len() });
    }
    let mut conflicts = 0u64;
    let mut examples = Vec::new();
    for u in 0..graph.vertex_count() {
        for &v in graph.neighbors(u).iter().filter(|&&v| v as usize > u) {
            if assignment[u] == assignment[v as usize] {
                conflicts += 1;
                if examples.len() < 100 {
                    examples.push((u as u32, v));
                }
            }
        }
    }
    Ok(Verification { conflicts, examples })
}

/// [`verify`], additionally checking every color is below `coloring.k`.
pub fn verify_coloring(graph: &ConflictGraph, coloring: &Coloring) -> Result<Verification, ColoringError> {
    if let Some((vertex, &color)) = coloring.assignment.iter().enumerate().find(|(_, &c)| c as usize >= coloring.k) {
        return Err(ColoringError::ColorOutOfRange { vertex, color, k: coloring.k });
    }
    verify(graph, &coloring.assignment)
}

/// DSATUR: repeatedly color the vertex seeing the most distinct colors
/// (then highest degree, then lowest id) with the smallest free color.
pub fn dsatur(graph: &ConflictGraph) -> Coloring {
    let start = Instant::now();
    let n = graph.vertex_count();
    let degree: Vec<usize> = (0..n).map(|u| graph.degree(u)).collect();
    let mut seen: Vec<Vec<u64>> = vec![Vec::new(); n];
    let mut saturation = vec![0usize; n];
    let mut color = vec![u32::MAX; n];
    let mut queue: BTreeSet<(Reverse<usize>, Reverse<usize>, usize)> =
        (0..n).map(|u| (Reverse(0), Reverse(degree[u]), u)).collect();
    let mut k = 0usize;
    while let Some((_, _, u)) = queue.pop_first() {
        let c = first_free(&seen[u]);
        color[u] = c as u32;
        k = k.max(c + 1);
        for &v in graph.neighbors(u).iter() {
            let v = v as usize;
            if color[v] != u32::MAX {
                continue;
            }
            let (word, bit) = (c / 64, c % 64);
            if seen[v].len() <= word {
                seen[v].resize(word + 1, 0);
            }
            if seen[v][word] >> bit & 1 == 0 {
                queue.remove(&(Reverse(saturation[v]), Reverse(degree[v]), v));
                seen[v][word] |= 1 << bit;
                saturation[v] += 1;
                queue.insert((Reverse(saturation[v]), Reverse(degree[v]), v));
            }
        }
    }
    let mut meta = SearchMeta::new(0, Strategy::Dsatur);
    meta.iterations = n as u64;
    meta.wall_time = start.elapsed();
    Coloring { assignment: color, k, conflicts: 0, meta }
}

fn first_free(bits: &[u64]) -> usize {
    for (w, &word) in bits.iter().enumerate() {
        if word != u64::MAX {
            return w * 64 + (!word).trailing_zeros() as usize;
        }
    }
    bits.len() * 64
}

/// Incremental TABUCOL state: `gamma[v * k + c]` counts neighbors of `v` colored `c`.
struct TabuState<'g> {
    graph: &'g ConflictGraph,
    k: usize,
    color: Vec<u32>,
    gamma: Vec<u32>,
    conflicts: u64,
    /// Conflicting vertices, with `slot[v]` the position in `conflicting` or `usize::MAX`.
    conflicting: Vec<u32>,
    slot: Vec<usize>,
}

impl<'g> TabuState<'g> {
    fn new(graph: &'g ConflictGraph, k: usize, color: Vec<u32>) -> Self {
        let n = graph.vertex_count();
        let mut gamma = vec![0u32; n * k];
        let mut twice = 0u64;
        for u in 0..n {
            for &v in graph.neighbors(u).iter() {
                gamma[u * k + color[v as usize] as usize] += 1;
            }
            twice += u64::from(gamma[u * k + color[u] as usize]);
        }
        let mut state = TabuState { graph, k, color, gamma, conflicts: twice / 2, conflicting: Vec::new(), slot: vec![usize::MAX; n] };
        for u in 0..n {
            state.refresh(u);
        }
        state
    }

    fn refresh(&mut self, u: usize) {
        let bad = self.gamma[u * self.k + self.color[u] as usize] > 0;
        let present = self.slot[u] != usize::MAX;
        if bad && !present {
            self.slot[u] = self.conflicting.len();
            self.conflicting.push(u as u32);
        } else if !bad && present {
            let pos = self.slot[u];
            let last = *self.conflicting.last().unwrap();
            self.conflicting.swap_remove(pos);
            if last as usize != u {
                self.slot[last as usize] = pos;
            }
            self.slot[u] = usize::MAX;
        }
    }

    fn delta(&self, v: usize, c: usize) -> i64 {
        let row = &self.gamma[v * self.k..(v + 1) * self.k];
        i64::from(row[c]) - i64::from(row[self.color[v] as usize])
    }

    fn apply(&mut self, v: usize, c: usize) {
        let old = self.color[v] as usize;
        let delta = self.delta(v, c);
        self.conflicts = (self.conflicts as i64 + delta) as u64;
        self.color[v] = c as u32;
        let graph = self.graph;
        let neighbors = graph.neighbors(v);
        for &u in neighbors.iter() {
            let u = u as usize;
            self.gamma[u * self.k + old] -= 1;
            self.gamma[u * self.k + c] += 1;
            let cu = self.color[u] as usize;
            if cu == old || cu == c {
                self.refresh(u);
            }
        }
        self.refresh(v);
    }
}

/// Initial `k`-coloring: visit vertices in `order`, give each the color with
/// the fewest already-colored neighbors (lowest color on ties).
fn greedy_k(graph: &ConflictGraph, k: usize, order: &[u32]) -> Vec<u32> {
    let n = graph.vertex_count();
    let mut color = vec![u32::MAX; n];
    let mut count = vec![0u32; k];
    for &u in order {
        count.iter_mut().for_each(|c| *c = 0);
        for &v in graph.neighbors(u as usize).iter() {
            let cv = color[v as usize];
            if cv != u32::MAX {
                count[cv as usize] += 1;
            }
        }
        let best = (0..k).min_by_key(|&c| count[c]).unwrap();
        color[u as usize] = best as u32;
    }
    color
}

/// Squeezes a coloring into `k` colors: classes `>= k` are dissolved, each
/// vertex moving to the color with the fewest neighbors (lowest on ties).
pub fn reduce_colors(graph: &ConflictGraph, assignment: &[u32], k: usize) -> Vec<u32> {
    // renumber so the k largest classes keep their slots
    let max = assignment.iter().copied().max().map_or(0, |m| m as usize + 1);
    let mut size = vec![0usize; max];
    for &c in assignment {
        size[c as usize] += 1;
    }
    let mut by_size: Vec<usize> = (0..max).collect();
    by_size.sort_by_key(|&c| (Reverse(size[c]), c));
    let mut rename = vec![u32::MAX; max];
    for (new, &old) in by_size.iter().enumerate() {
        rename[old] = new as u32;
    }
    let mut color: Vec<u32> = assignment.iter().map(|&c| rename[c as usize]).collect();
    let mut count = vec![0u32; k];
    for u in 0..color.len() {
        if (color[u] as usize) < k {
            continue;
        }
        count.iter_mut().for_each(|c| *c = 0);
        for &v in graph.neighbors(u).iter() {
            let cv = color[v as usize] as usize;
            if cv < k {
                count[cv] += 1;
            }
        }
        color[u] = (0..k).min_by_key(|&c| count[c]).unwrap() as u32;
    }
    color
}

/// TABUCOL from a greedy start built with the seeded generator.
pub fn tabucol(graph: &ConflictGraph, cfg: &SearchConfig) -> Result<Coloring, ColoringError> {
    if cfg.k == 0 {
        return Err(ColoringError::NoColors);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut order: Vec<u32> = (0..graph.vertex_count() as u32).collect();
    shuffle(&mut order, &mut rng);
    let start = greedy_k(graph, cfg.k, &order);
    Ok(tabucol_from(graph, cfg, start, &mut rng, Instant::now()))
}

fn shuffle(v: &mut [u32], rng: &mut ChaCha8Rng) {
    for i in (1..v.len()).rev() {
        let j = rng.gen_range(0..=i);
        v.swap(i, j);
    }
}

/// TABUCOL from a given `cfg.k`-coloring.
///
/// Moves recolor one conflicting vertex; the move with the smallest conflict
/// delta wins, ties broken uniformly at random. Undoing a move (putting `v`
/// back to its old color) is tabu for
/// `base + slope * |conflicting vertices| + uniform(0..=9)` iterations,
/// unless it would beat the best conflict count seen so far.
pub fn tabucol_from(
    graph: &ConflictGraph,
    cfg: &SearchConfig,
    initial: Vec<u32>,
    rng: &mut ChaCha8Rng,
    clock: Instant,
) -> Coloring {
    let k = cfg.k;
    let n = graph.vertex_count();
    assert_eq!(initial.len(), n);
    let mut state = TabuState::new(graph, k, initial);
    let mut tabu_until = vec![0u64; n * k];
    let mut best = state.color.clone();
    let mut best_conflicts = state.conflicts;
    let mut iterations = 0u64;
    let mut timed_out = false;

    while best_conflicts > 0 && iterations < cfg.max_iterations && k > 1 {
        if iterations % 1024 == 0 {
            if let Some(limit) = cfg.time_limit {
                if clock.elapsed() >= limit {
                    timed_out = true;
                    break;
                }
            }
        }
        iterations += 1;

        let mut chosen: Option<(usize, usize)> = None;
        let mut chosen_delta = i64::MAX;
        let mut ties = 0u32;
        for &v in &state.conflicting {
            let v = v as usize;
            let cv = state.color[v] as usize;
            for c in (0..k).filter(|&c| c != cv) {
                let delta = state.delta(v, c);
                let aspirated = (state.conflicts as i64 + delta) < best_conflicts as i64;
                if tabu_until[v * k + c] > iterations && !aspirated {
                    continue;
                }
                if delta < chosen_delta {
                    chosen = Some((v, c));
                    chosen_delta = delta;
                    ties = 1;
                } else if delta == chosen_delta {
                    ties += 1;
                    if rng.gen_range(0..ties) == 0 {
                        chosen = Some((v, c));
                    }
                }
            }
        }
        let (v, c) = match chosen {
            Some(m) => m,
            None => {
                // every move is tabu: take a random one
                let v = state.conflicting[rng.gen_range(0..state.conflicting.len())] as usize;
                let mut c = rng.gen_range(0..k - 1);
                if c >= state.color[v] as usize {
                    c += 1;
                }
                (v, c)
            }
        };
        let old = state.color[v] as usize;
        state.apply(v, c);
        let tenure = u64::from(cfg.tabu_tenure_base)
            + (cfg.tabu_tenure_slope * state.conflicting.len() as f64) as u64
            + rng.gen_range(0..10u64);
        tabu_until[v * k + old] = iterations + tenure;

        if state.conflicts < best_conflicts {
            best_conflicts = state.conflicts;
            best.copy_from_slice(&state.color);
        }
    }

    let mut meta = SearchMeta::new(cfg.seed, Strategy::Tabucol);
    meta.iterations = iterations;
    meta.wall_time = clock.elapsed();
    meta.timed_out = timed_out;
    Coloring { assignment: best, k, conflicts: best_conflicts, meta }
}

/// One attempted color count in a [`solve`] run.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Attempt {
    pub colors: usize,
    pub restarts_used: u32,
    pub best_conflicts: u64,
    pub iterations: u64,
}

#[derive(Debug, Clone)]
pub struct SolveReport {
    /// Best proper coloring found, with `k` = colors used.
    pub best: Coloring,
    pub attempts: Vec<Attempt>,
}

fn derive_seed(seed: u64, k: usize, restart: u32) -> u64 {
    // splitmix64 finalizer over the packed inputs
    let mut z = seed ^ ((k as u64) << 32) ^ u64::from(restart).wrapping_mul(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Descending-`k` search for a proper coloring with as few colors as possible.
///
/// Starts from DSATUR (or from `initial_k` if that is smaller), then asks
/// TABUCOL for a proper `(k - 1)`-coloring, seeded from the current best,
/// with up to `cfg.restarts` runs per color count. Stops at `cfg.k`, at the
/// first color count no run solves, or when `cfg.time_limit` expires. With
/// `cfg.peel_count > 0`, that many independent balls are reserved as color
/// classes first and only the residual graph is searched.
pub fn solve(graph: &ConflictGraph, initial_k: Option<usize>, cfg: &SearchConfig) -> Result<SolveReport, ColoringError> {
    let clock = Instant::now();
    if cfg.peel_count > 0 {
        return solve_peeled(graph, initial_k, cfg, clock);
    }
    solve_inner(graph, initial_k, cfg, clock)
}

fn solve_inner(
    graph: &ConflictGraph,
    initial_k: Option<usize>,
    cfg: &SearchConfig,
    clock: Instant,
) -> Result<SolveReport, ColoringError> {
    let mut best = dsatur(graph);
    let mut iterations = best.meta.iterations;
    let mut attempts = Vec::new();
    let mut near_miss = None;
    let target = cfg.k.max(1);
    let mut timed_out = false;

    let mut next_k = best.k.saturating_sub(1);
    if let Some(k0) = initial_k {
        next_k = next_k.min(k0);
    }
    'descend: while next_k >= target && best.k > target {
        let k = next_k;
        let mut attempt = Attempt { colors: k, restarts_used: 0, best_conflicts: u64::MAX, iterations: 0 };
        let mut solved = None;
        for r in 0..cfg.restarts.max(1) {
            if let Some(limit) = cfg.time_limit {
                if clock.elapsed() >= limit {
                    timed_out = true;
                    attempts.push(attempt);
                    break 'descend;
                }
            }
            let seed = derive_seed(cfg.seed, k, r);
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let start = if r == 0 {
                reduce_colors(graph, &best.assignment, k)
            } else {
                let mut order: Vec<u32> = (0..graph.vertex_count() as u32).collect();
                shuffle(&mut order, &mut rng);
                greedy_k(graph, k, &order)
            };
            let run_cfg = SearchConfig { k, seed, ..cfg.clone() };
            let run = tabucol_from(graph, &run_cfg, start, &mut rng, clock);
            attempt.restarts_used = r + 1;
            attempt.iterations += run.meta.iterations;
            attempt.best_conflicts = attempt.best_conflicts.min(run.conflicts);
            iterations += run.meta.iterations;
            timed_out |= run.meta.timed_out;
            if run.is_proper() {
                solved = Some(run);
                break;
            }
            if timed_out {
                break;
            }
        }
        attempts.push(attempt.clone());
        match solved {
            Some(c) => {
                debug_assert!(verify(graph, &c.assignment).unwrap().is_proper());
                best = c;
                next_k = k - 1;
            }
            None => {
                near_miss = Some(NearMiss { colors: k, conflicts: attempt.best_conflicts });
                // a failed jump below DSATUR may still leave room above it
                if initial_k.is_some_and(|k0| k == k0) && k + 1 < best.k {
                    next_k = best.k - 1;
                    continue;
                }
                break;
            }
        }
    }

    compact(&mut best);
    best.meta = SearchMeta {
        seed: cfg.seed,
        strategy: Strategy::Tabucol,
        iterations,
        wall_time: clock.elapsed(),
        rng: RNG_ALGORITHM,
        near_miss,
        timed_out,
    };
    Ok(SolveReport { best, attempts })
}

fn solve_peeled(
    graph: &ConflictGraph,
    initial_k: Option<usize>,
    cfg: &SearchConfig,
    clock: Instant,
) -> Result<SolveReport, ColoringError> {
    let peeling = peel(graph, cfg.peel_count, cfg.peel_candidates)?;
    let reserved = peeling.sets.len();
    let mut assignment = vec![u32::MAX; graph.vertex_count()];
    for (c, set) in peeling.sets.iter().enumerate() {
        for &m in &set.members {
            assignment[m as usize] = c as u32;
        }
    }
    let inner_cfg = SearchConfig { k: cfg.k.saturating_sub(reserved).max(1), peel_count: 0, ..cfg.clone() };
    let residual = if peeling.residual_to_parent.is_empty() {
        None
    } else {
        let inner_initial = initial_k.map(|k| k.saturating_sub(reserved).max(1));
        Some(solve_inner(&peeling.residual, inner_initial, &inner_cfg, clock)?)
    };
    let (inner_k, meta, attempts) = match residual {
        Some(report) => {
            for (i, &parent) in peeling.residual_to_parent.iter().enumerate() {
                assignment[parent as usize] = report.best.assignment[i] + reserved as u32;
            }
            (report.best.k, report.best.meta, report.attempts)
        }
        None => (0, SearchMeta::new(cfg.seed, Strategy::Tabucol), Vec::new()),
    };
    let shift = |a: Attempt| Attempt { colors: a.colors + reserved, ..a };
    let mut meta = meta;
    meta.near_miss = meta.near_miss.map(|m| NearMiss { colors: m.colors + reserved, ..m });
    meta.wall_time = clock.elapsed();
    let k = reserved + inner_k;
    let conflicts = verify(graph, &assignment)?.conflicts;
    let mut best = Coloring { assignment, k, conflicts, meta };
    compact(&mut best);
    Ok(SolveReport { best, attempts: attempts.into_iter().map(shift).collect() })
}

/// Renumbers colors to `0..used` in order of first appearance and sets `k = used`.
fn compact(c: &mut Coloring) {
    let mut rename = vec![u32::MAX; c.k.max(1)];
    let mut next = 0u32;
    for a in c.assignment.iter_mut() {
        let slot = &mut rename[*a as usize];
        if *slot == u32::MAX {
            *slot = next;
            next += 1;
        }
        *a = *slot;
    }
    c.k = next as usize;
}

/// Exact chromatic number by DSATUR-ordered branch and bound, for graphs of
/// at most 64 vertices. The lower bound is a greedily grown clique.
pub fn exact_chromatic(graph: &ConflictGraph) -> Result<usize, ColoringError> {
    let n = graph.vertex_count();
    if n > EXACT_MAX_VERTICES {
        return Err(ColoringError::TooLarge(n));
    }
    if n == 0 {
        return Ok(0);
    }
    let adj: Vec<u64> = (0..n).map(|u| graph.neighbors(u).iter().fold(0u64, |m, &v| m | 1 << v)).collect();
    let lower = greedy_clique(&adj);
    let upper = dsatur(graph).k;
    if lower == upper {
        return Ok(upper);
    }
    let mut bb = BranchAndBound { adj: &adj, best: upper, lower, classes: Vec::new() };
    bb.search(0, if n == 64 { u64::MAX } else { (1u64 << n) - 1 });
    Ok(bb.best)
}

fn greedy_clique(adj: &[u64]) -> usize {
    let mut best = 1;
    for start in 0..adj.len() {
        let mut clique = 1u64 << start;
        let mut cand = adj[start];
        while cand != 0 {
            // take the candidate with most neighbors among the remaining candidates
            let mut pick = cand.trailing_zeros() as usize;
            let mut pick_score = 0;
            let mut rest = cand;
            while rest != 0 {
                let v = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                let score = (adj[v] & cand).count_ones();
                if score > pick_score {
                    pick = v;
                    pick_score = score;
                }
            }
            clique |= 1 << pick;
            cand &= adj[pick];
        }
        best = best.max(clique.count_ones() as usize);
    }
    best
}

struct BranchAndBound<'a> {
    adj: &'a [u64],
    best: usize,
    lower: usize,
    classes: Vec<u64>,
}

impl BranchAndBound<'_> {
    fn search(&mut self, colored: u64, all: u64) {
        if self.best == self.lower {
            return;
        }
        let uncolored = all & !colored;
        if uncolored == 0 {
            self.best = self.best.min(self.classes.len());
            return;
        }
        // most saturated uncolored vertex, ties by degree then id
        let mut pick = 0;
        let mut key = (0, 0);
        let mut rest = uncolored;
        let mut first = true;
        while rest != 0 {
            let v = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            let sat = self.classes.iter().filter(|&&c| c & self.adj[v] != 0).count();
            let k = (sat, (self.adj[v] & uncolored).count_ones() as usize);
            if first || k > key {
                pick = v;
                key = k;
                first = false;
            }
        }
        let bit = 1u64 << pick;
        for c in 0..self.classes.len() {
            if self.classes[c] & self.adj[pick] == 0 {
                self.classes[c] |= bit;
                self.search(colored | bit, all);
                self.classes[c] &= !bit;
                if self.best == self.lower {
                    return;
                }
            }
        }
        if self.classes.len() + 1 < self.best {
            self.classes.push(bit);
            self.search(colored | bit, all);
            self.classes.pop();
        }
    }
}

/// On-disk coloring document. Field names are fixed.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ColoringFile {
    pub dimension: usize,
    pub colors: usize,
    pub seed: u64,
    pub strategy: Strategy,
    pub iterations: u64,
    pub conflicts: u64,
    pub assignment: Vec<u32>,
}

impl ColoringFile {
    pub fn from_coloring(dimension: usize, c: &Coloring) -> Self {
        ColoringFile {
            dimension,
            colors: c.k,
            seed: c.meta.seed,
            strategy: c.meta.strategy,
            iterations: c.meta.iterations,
            conflicts: c.conflicts,
            assignment: c.assignment.clone(),
        }
    }

    pub fn into_coloring(self) -> Coloring {
        let mut meta = SearchMeta::new(self.seed, self.strategy);
        meta.iterations = self.iterations;
        Coloring { assignment: self.assignment, k: self.colors, conflicts: self.conflicts, meta }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("coloring serializes") + "\n"
    }

    pub fn from_json(text: &str) -> Result<Self, serde_json::Error> {
        serde_json::from_str(text)
    }
}
