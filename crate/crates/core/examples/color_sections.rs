//! Searches small colorings of the laminated sections and prints one line per
//! dimension: vertices, edges, DSATUR colors, best colors found.
//!
//! ```text
//! cargo run --release --example color_sections -- [MIN_DIM] [MAX_DIM] [SEED]
//! ```

use std::time::Instant;

use leech_borsuk::coloring::{dsatur, solve, verify, SearchConfig, BEST_KNOWN_PARTS};
use leech_borsuk::confgraph::{build_graph, GraphMode, DEFAULT_MEM_BUDGET};
use leech_borsuk::golay::build_golay;
use leech_borsuk::laminated::slice;
use leech_borsuk::leech::enumerate_minimal_vectors;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let args: Vec<usize> = std::env::args().skip(1).map(|a| a.parse()).collect::<Result<_, _>>()?;
    let lo = args.first().copied().unwrap_or(1);
    let hi = args.get(1).copied().unwrap_or(12);
    let seed = args.get(2).copied().unwrap_or(1) as u64;

    let m = enumerate_minimal_vectors(&build_golay()?);
    println!("{:>3} {:>7} {:>10} {:>7} {:>6} {:>10} {:>8}", "n", "|M_n|", "edges", "dsatur", "best", "iters", "secs");
    for n in lo..=hi {
        let t = Instant::now();
        let section = slice(&m, n)?;
        let g = build_graph(&section, GraphMode::Auto, DEFAULT_MEM_BUDGET)?;
        let greedy = dsatur(&g).k;
        let target = BEST_KNOWN_PARTS[n - 1];
        let cfg = SearchConfig { k: target, seed, max_iterations: 200_000, restarts: 8, ..Default::default() };
        let report = solve(&g, None, &cfg)?;
        assert!(verify(&g, &report.best.assignment)?.is_proper());
        println!(
            "{:>3} {:>7} {:>10} {:>7} {:>6} {:>10} {:>8.1}",
            n,
            section.len(),
            g.edge_count(),
            greedy,
            report.best.k,
            report.best.meta.iterations,
            t.elapsed().as_secs_f64()
        );
    }
    Ok(())
}
