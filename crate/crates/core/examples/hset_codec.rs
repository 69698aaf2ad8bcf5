//! Makes an antipodal selection of M_24, packs it into 6-byte records and
//! validates the decoded set. With a path argument, decodes that file instead.
//!
//! ```text
//! cargo run --release --example hset_codec -- [H24S1.DAT]
//! ```

use leech_borsuk::golay::build_golay;
use leech_borsuk::hset::{decode_dat, encode_hset, make_hset, validate_hset, DatLayout, HRule};
use leech_borsuk::leech::enumerate_minimal_vectors;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let code = build_golay()?;
    let m = enumerate_minimal_vectors(&code);
    let bytes = match std::env::args().nth(1) {
        Some(path) => std::fs::read(path)?,
        None => encode_hset(&make_hset(&m, HRule::Seeded(1))?)?,
    };
    let layout = DatLayout::for_base(&m);
    println!("{} bytes, layout {}/{}/{} records", bytes.len(), layout.four_four, layout.two_eight, layout.three_one);
    println!("first record: {:?}", &bytes[..6]);

    let h = decode_dat(&bytes, &m, &code)?;
    println!("first vector: {}", h.realized()[0]);
    let report = validate_hset(&m, &h, false);
    println!("{}", serde_json::to_string_pretty(&report)?);
    assert_eq!(encode_hset(&h)?, bytes);
    Ok(())
}
