//! Builds the extended Golay code and prints its weight distribution and a few octads.

use leech_borsuk::golay::{build_golay, WEIGHT_ENUMERATOR};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let code = build_golay()?;
    println!("generator:");
    for row in code.generator() {
        println!("  {row}");
    }
    for (w, expected) in WEIGHT_ENUMERATOR {
        println!("weight {w:>2}: {:>4} (expected {expected})", code.weight_histogram()[&w]);
    }
    let octads = code.octads();
    println!("{} octads, first three:", octads.len());
    for o in &octads[..3] {
        println!("  {:?}", o.support().collect::<Vec<_>>());
    }
    Ok(())
}
