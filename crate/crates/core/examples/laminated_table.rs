//! Prints the sizes of the laminated sections M_1..M_24 by shape, with the rank of each span.

use leech_borsuk::golay::build_golay;
use leech_borsuk::laminated::{lattice_name, rank_of_span, slice, SectionCounts, ADDED_CONDITIONS, EXPECTED_COUNTS};
use leech_borsuk::leech::enumerate_minimal_vectors;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let m = enumerate_minimal_vectors(&build_golay()?);
    println!("{:>3} {:<12} {:>7} {:>6} {:>6} {:>6} {:>5}  condition", "n", "lattice", "#M_n", "(4,0)", "(2,0)", "(3,1)", "rank");
    for n in (1..=24).rev() {
        let s = slice(&m, n)?;
        let c = SectionCounts::of(&s);
        let mark = if c == EXPECTED_COUNTS[n - 1] { "" } else { "  MISMATCH" };
        let cond = if n < 24 { ADDED_CONDITIONS[23 - n].to_string() } else { String::new() };
        println!(
            "{:>3} {:<12} {:>7} {:>6} {:>6} {:>6} {:>5}  {cond}{mark}",
            n,
            lattice_name(n),
            c.total,
            c.four_four,
            c.two_eight,
            c.three_one,
            rank_of_span(&s)
        );
    }
    Ok(())
}
