//! Independent balls {z : <x+y, z> >= 16} for pairs at inner product -8, and
//! greedy peeling of several of them from a section.
//!
//! ```text
//! cargo run --release --example independent_balls -- [DIM] [K]
//! ```

use leech_borsuk::confgraph::{build_graph, independent_ball, peel, GraphMode, DEFAULT_MEM_BUDGET, DEFAULT_PEEL_CANDIDATES};
use leech_borsuk::golay::build_golay;
use leech_borsuk::laminated::slice;
use leech_borsuk::leech::enumerate_minimal_vectors;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut args = std::env::args().skip(1);
    let n: usize = args.next().map(|s| s.parse()).transpose()?.unwrap_or(20);
    let k: usize = args.next().map(|s| s.parse()).transpose()?.unwrap_or(4);

    let m = enumerate_minimal_vectors(&build_golay()?);
    let full = build_graph(&m, GraphMode::Implicit, DEFAULT_MEM_BUDGET)?;
    let v = m.vectors();
    let y = (1..v.len()).find(|&j| v[0].dot(&v[j]) == -8).expect("a pair at -8");
    let ball = independent_ball(&full, 0, y)?;
    println!("M_24 ball around {} + {}: {} members, |center|² = {}", v[0], v[y], ball.len(), ball.center_norm2());

    let s = slice(&m, n)?;
    let g = build_graph(&s, GraphMode::Auto, DEFAULT_MEM_BUDGET)?;
    let p = peel(&g, k, DEFAULT_PEEL_CANDIDATES)?;
    let sizes: Vec<usize> = p.sets.iter().map(|b| b.len()).collect();
    println!("M_{n}: peeled {sizes:?} of {} vertices, residual {} with {} edges", g.vertex_count(), p.residual.vertex_count(), p.residual.edge_count());
    Ok(())
}
