//! Conflict graph of a section: degrees, edge count, DIMACS export, and the
//! same graph held implicitly.
//!
//! ```text
//! cargo run --release --example conflict_graph -- [DIM] [DIMACS_OUT]
//! ```

use std::fs::File;
use std::io::BufWriter;

use leech_borsuk::confgraph::{build_graph, estimate_explicit_bytes, export_dimacs, GraphMode, DEFAULT_MEM_BUDGET};
use leech_borsuk::golay::build_golay;
use leech_borsuk::laminated::slice;
use leech_borsuk::leech::enumerate_minimal_vectors;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut args = std::env::args().skip(1);
    let n: usize = args.next().map(|s| s.parse()).transpose()?.unwrap_or(16);
    let out = args.next();

    let m = enumerate_minimal_vectors(&build_golay()?);
    let s = slice(&m, n)?;
    println!("M_{n}: {} vectors, explicit CSR estimate {} bytes", s.len(), estimate_explicit_bytes(s.vectors()));
    let g = build_graph(&s, GraphMode::Auto, DEFAULT_MEM_BUDGET)?;
    let degrees: Vec<usize> = (0..g.vertex_count()).map(|u| g.degree(u)).collect();
    println!(
        "{} edges, degree min {} max {}, explicit: {}",
        g.edge_count(),
        degrees.iter().min().unwrap_or(&0),
        degrees.iter().max().unwrap_or(&0),
        g.is_explicit()
    );

    let implicit = build_graph(&s, GraphMode::Implicit, DEFAULT_MEM_BUDGET)?;
    let agree = (0..g.vertex_count()).all(|u| g.neighbors(u) == implicit.neighbors(u));
    println!("implicit adjacency agrees: {agree}");

    // the full shell: degree from one vertex without materializing anything
    let full = build_graph(&m, GraphMode::Implicit, DEFAULT_MEM_BUDGET)?;
    println!("Γ(M_24): degree of vertex 0 = {}", full.degree(0));

    if let Some(path) = out {
        export_dimacs(&g, BufWriter::new(File::create(&path)?))?;
        println!("wrote {path}");
    }
    Ok(())
}
