//! The extended binary Golay code \[24, 12, 8\].
//!
//! The generator is Leech's bordered-circulant matrix `[I | B]`, where row 1
//! of `B` is `0 1^11` and rows 2..12 are `1` followed by the cyclic shifts of
//! the quadratic-residue pattern `10100011101`. Its columns are then relabeled
//! by [`COORDINATE_LABELS`] so that the cumulative coordinate conditions of the
//! laminated sections (see [`crate::laminated`]) cut out the tabulated sets.
//! In this frame `{1..8}`, `{9..16}` and `{17..24}` are octads.
//!
//! Coordinates are 1-based in every public interface. A [`Codeword`] stores
//! coordinate `i` in bit `24 - i`, so numeric order on the raw bits is the
//! lexicographic order of the word read with coordinate 1 most significant.

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

/// Code length.
pub const LENGTH: usize = 24;
/// Code dimension.
pub const DIMENSION: usize = 12;
/// Number of codewords.
pub const SIZE: usize = 1 << DIMENSION;

/// Leech's generator rows in their original column order.
const LEECH_ROWS: [&str; DIMENSION] = [
    "100000000000011111111111",
    "010000000000110100011101",
    "001000000000101000111011",
    "000100000000110001110110",
    "000010000000100011101101",
    "000001000000100111011010",
    "000000100000101110110100",
    "000000010000111101101000",
    "000000001000111011010001",
    "000000000100110110100011",
    "000000000010101101000111",
    "000000000001111010001110",
];

/// Coordinate `k` (1-based) of the lattice frame is column
/// `COORDINATE_LABELS[k - 1]` (1-based) of [`LEECH_ROWS`].
pub const COORDINATE_LABELS: [usize; LENGTH] = [
    24, 13, 10, 17, 18, 11, 1, 6, 22, 20, 2, 12, 16, 9, 4, 19, 15, 7, 5, 3, 23, 14, 8, 21,
];

/// Weight enumerator of the extended Golay code.
pub const WEIGHT_ENUMERATOR: [(u32, usize); 5] = [(0, 1), (8, 759), (12, 2576), (16, 759), (24, 1)];

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GolayError {
    #[error("generator spans {0} distinct words, expected 4096")]
    RankDeficient(usize),
    #[error("weight histogram {found:?} does not match the Golay enumerator")]
    WeightHistogram { found: BTreeMap<u32, usize> },
    #[error("invalid codeword string {0:?}")]
    Parse(String),
}

/// A length-24 binary word.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Codeword(u32);

impl Codeword {
    pub const ZERO: Codeword = Codeword(0);
    pub const ALL_ONES: Codeword = Codeword((1 << LENGTH) - 1);

    /// Builds a word from raw bits (coordinate 1 = bit 23). Bits above 23 are dropped.
    pub fn from_bits(bits: u32) -> Self {
        Codeword(bits & Self::ALL_ONES.0)
    }

    pub fn bits(self) -> u32 {
        self.0
    }

    /// Builds a word from its support, given as 1-based coordinates.
    pub fn from_support<I: IntoIterator<Item = usize>>(coords: I) -> Self {
        let mut w = 0u32;
        for i in coords {
            assert!((1..=LENGTH).contains(&i), "coordinate {i} out of range");
            w |= 1 << (LENGTH - i);
        }
        Codeword(w)
    }

    /// Bit at 1-based coordinate `i`.
    pub fn get(self, i: usize) -> bool {
        debug_assert!((1..=LENGTH).contains(&i));
        self.0 >> (LENGTH - i) & 1 == 1
    }

    pub fn weight(self) -> u32 {
        self.0.count_ones()
    }

    /// 1-based coordinates where the word is 1, ascending.
    pub fn support(self) -> impl Iterator<Item = usize> {
        (1..=LENGTH).filter(move |&i| self.get(i))
    }

    pub fn xor(self, other: Codeword) -> Codeword {
        Codeword(self.0 ^ other.0)
    }
}

/// Number of 1-bits in `w`.
pub fn weight(w: Codeword) -> u32 {
    w.weight()
}

impl fmt::Debug for Codeword {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Codeword({self})")
    }
}

impl fmt::Display for Codeword {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 1..=LENGTH {
            f.write_str(if self.get(i) { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl std::str::FromStr for Codeword {
    type Err = GolayError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if s.len() != LENGTH || !s.bytes().all(|b| b == b'0' || b == b'1') {
            return Err(GolayError::Parse(s.to_string()));
        }
        Ok(Codeword::from_support(
            s.bytes().enumerate().filter(|(_, b)| *b == b'1').map(|(i, _)| i + 1),
        ))
    }
}

/// The materialized code: generator, all 4096 words (sorted) and the weight histogram.
#[derive(Debug, Clone)]
pub struct GolayCode {
    generator: [Codeword; DIMENSION],
    words: Vec<Codeword>,
    weight_histogram: BTreeMap<u32, usize>,
}

impl GolayCode {
    pub fn generator(&self) -> &[Codeword; DIMENSION] {
        &self.generator
    }

    /// All codewords in ascending (lexicographic) order.
    pub fn words(&self) -> &[Codeword] {
        &self.words
    }

    pub fn weight_histogram(&self) -> &BTreeMap<u32, usize> {
        &self.weight_histogram
    }

    pub fn contains(&self, w: Codeword) -> bool {
        self.words.binary_search(&w).is_ok()
    }

    /// The 759 weight-8 words in ascending lexicographic order.
    pub fn octads(&self) -> Vec<Codeword> {
        self.words.iter().copied().filter(|w| w.weight() == 8).collect()
    }
}

/// Free-function form of [`GolayCode::octads`].
pub fn octads(code: &GolayCode) -> Vec<Codeword> {
    code.octads()
}

fn relabeled_generator() -> [Codeword; DIMENSION] {
    let mut rows = [Codeword::ZERO; DIMENSION];
    for (row, text) in rows.iter_mut().zip(LEECH_ROWS) {
        let column = text.as_bytes();
        *row = Codeword::from_support(
            (1..=LENGTH).filter(|&k| column[COORDINATE_LABELS[k - 1] - 1] == b'1'),
        );
    }
    rows
}

/// Span of `generator` over GF(2), sorted and deduplicated.
fn span(generator: &[Codeword]) -> Vec<Codeword> {
    let mut words = vec![Codeword::ZERO];
    for &g in generator {
        let shifted: Vec<Codeword> = words.iter().map(|w| w.xor(g)).collect();
        words.extend(shifted);
    }
    words.sort_unstable();
    words.dedup();
    words
}

/// Validates a candidate generator and materializes the code it spans.
pub fn golay_from_generator(generator: [Codeword; DIMENSION]) -> Result<GolayCode, GolayError> {
    let words = span(&generator);
    if words.len() != SIZE {
        return Err(GolayError::RankDeficient(words.len()));
    }
    let mut weight_histogram = BTreeMap::new();
    for w in &words {
        *weight_histogram.entry(w.weight()).or_insert(0) += 1;
    }
    if weight_histogram != WEIGHT_ENUMERATOR.into_iter().collect() {
        return Err(GolayError::WeightHistogram { found: weight_histogram });
    }
    Ok(GolayCode { generator, words, weight_histogram })
}

/// Builds the code in the lattice coordinate frame. Deterministic.
pub fn build_golay() -> Result<GolayCode, GolayError> {
    golay_from_generator(relabeled_generator())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builds_with_golay_enumerator() {
        let code = build_golay().unwrap();
        assert_eq!(code.words().len(), 4096);
        assert_eq!(code.weight_histogram()[&8], 759);
        assert!(code.contains(Codeword::ZERO));
        assert!(code.contains(Codeword::ALL_ONES));
    }

    #[test]
    fn weight_of_extremes() {
        assert_eq!(weight(Codeword::ZERO), 0);
        assert_eq!(weight(Codeword::ALL_ONES), 24);
    }

    #[test]
    fn generator_rows_have_weight_8_or_12() {
        let code = build_golay().unwrap();
        for row in code.generator() {
            assert!(matches!(row.weight(), 8 | 12), "{row}");
        }
    }

    #[test]
    fn unrelabeled_rows_are_also_a_golay_code() {
        let mut rows = [Codeword::ZERO; DIMENSION];
        for (r, s) in rows.iter_mut().zip(LEECH_ROWS) {
            *r = s.parse().unwrap();
        }
        assert!(golay_from_generator(rows).is_ok());
    }

    #[test]
    fn trio_blocks_are_octads() {
        let code = build_golay().unwrap();
        for block in [1..=8, 9..=16, 17..=24] {
            assert!(code.contains(Codeword::from_support(block)));
        }
    }

    #[test]
    fn broken_generator_is_rejected() {
        let mut rows = build_golay().unwrap().generator;
        rows[11] = rows[10];
        assert_eq!(golay_from_generator(rows).unwrap_err(), GolayError::RankDeficient(2048));
        let mut rows = build_golay().unwrap().generator;
        rows[0] = Codeword::from_support([1]);
        assert!(matches!(golay_from_generator(rows), Err(GolayError::WeightHistogram { .. })));
    }

    #[test]
    fn octads_sorted_and_intersect_evenly() {
        let code = build_golay().unwrap();
        let oct = octads(&code);
        assert_eq!(oct.len(), 759);
        assert!(oct.windows(2).all(|w| w[0] < w[1]));
        for (i, a) in oct.iter().enumerate() {
            assert_eq!(a.weight(), 8);
            for b in &oct[i + 1..] {
                let meet = (a.bits() & b.bits()).count_ones();
                assert!(matches!(meet, 0 | 2 | 4), "{a} {b} meet in {meet}");
            }
        }
    }

    #[test]
    fn codeword_text_roundtrip() {
        let w: Codeword = "100000000000011111111111".parse().unwrap();
        assert_eq!(w.to_string(), "100000000000011111111111");
        assert_eq!(w.support().next(), Some(1));
        assert!("10".parse::<Codeword>().is_err());
    }
}
