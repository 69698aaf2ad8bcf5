//! Colors an antipodal selection of M_n (default n = 23) and reports the
//! smallest proper part count found.
//!
//! ```text
//! cargo run --release --example color_hset -- [DIM] [TARGET] [SEED] [SECONDS]
//! ```

use std::time::Duration;

use leech_borsuk::coloring::{solve, verify, SearchConfig};
use leech_borsuk::confgraph::{ConflictGraph, GraphMode, DEFAULT_MEM_BUDGET};
use leech_borsuk::golay::build_golay;
use leech_borsuk::hset::{make_hset, HRule};
use leech_borsuk::laminated::slice;
use leech_borsuk::leech::enumerate_minimal_vectors;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let n: usize = args.first().map(|s| s.parse()).transpose()?.unwrap_or(23);
    let target: usize = args.get(1).map(|s| s.parse()).transpose()?.unwrap_or(24);
    let seed: u64 = args.get(2).map(|s| s.parse()).transpose()?.unwrap_or(1);
    let secs: f64 = args.get(3).map(|s| s.parse()).transpose()?.unwrap_or(600.0);

    let m = enumerate_minimal_vectors(&build_golay()?);
    let base = if n == 24 { m } else { slice(&m, n)? };
    let h = make_hset(&base, HRule::Canonical)?;
    let ids = (0..h.len() as u32).collect();
    let g = ConflictGraph::from_vectors(h.realized().to_vec(), ids, GraphMode::Auto, DEFAULT_MEM_BUDGET)?;
    println!("H_{n}: {} vectors, {} edges", g.vertex_count(), g.edge_count());

    let cfg = SearchConfig {
        k: target,
        seed,
        max_iterations: 500_000,
        restarts: 4,
        time_limit: Some(Duration::from_secs_f64(secs)),
        ..Default::default()
    };
    let report = solve(&g, None, &cfg)?;
    assert!(verify(&g, &report.best.assignment)?.is_proper());
    for a in &report.attempts {
        println!("  k = {:>2}: best {} conflicts after {} iterations", a.colors, a.best_conflicts, a.iterations);
    }
    println!("best proper: {} parts (target {target})", report.best.k);
    Ok(())
}
