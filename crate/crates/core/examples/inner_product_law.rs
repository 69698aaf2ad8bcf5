//! Enumerates the 196560 minimal vectors and checks that every sampled base
//! vector sees the same inner-product distribution.
//!
//! ```text
//! cargo run --release --example inner_product_law -- [SAMPLES]
//! ```

use std::time::Instant;

use leech_borsuk::golay::build_golay;
use leech_borsuk::leech::{enumerate_minimal_vectors, ip_histograms, stride_sample, Shape};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let samples = std::env::args().nth(1).map(|s| s.parse()).transpose()?.unwrap_or(200);
    let t = Instant::now();
    let m = enumerate_minimal_vectors(&build_golay()?);
    println!("|M| = {} in {:.2} s", m.len(), t.elapsed().as_secs_f64());
    for s in Shape::ALL {
        println!("  {:<8} {:>6}", s.label(), m.count(s));
    }
    println!("first vector: {}", m.vectors()[0]);

    let bases = stride_sample(m.len(), samples);
    let hists = ip_histograms(&m, &bases)?;
    let first = &hists[0];
    let uniform = hists.iter().all(|h| h == first);
    println!("{} bases, identical histograms: {uniform}", bases.len());
    for (p, n) in first.iter() {
        println!("  <x,y> = {p:>3}: {n:>6}   |x-y|² = {}", 64 - 2 * p);
    }
    Ok(())
}
