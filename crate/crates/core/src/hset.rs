//! Antipodal selections: one vector out of every pair `{x, -x}` of `M_n`.
//!
//! Every such selection of the full shell has squared diameter exactly 96
//! (inner products never reach -32), so it is a candidate set for partitions
//! into parts of smaller diameter.
//!
//! # Packed record format
//!
//! A selection of `M_24` is stored as 98280 records of 6 bytes (589680 bytes
//! total): first the 552 `(±4,0)` vectors, then the 48576 `(±2,0)` vectors,
//! then the 49152 `(±3,±1)` vectors. Each coordinate becomes a 2-bit symbol:
//!
//! | block      | 0  | 1  | 2 | 3 |
//! |------------|----|----|---|---|
//! | `(±4,0)`   | -4 | 0  | 4 |   |
//! | `(±2,0)`   | -2 | 0  | 2 |   |
//! | `(±3,±1)`  | -3 | -1 | 1 | 3 |
//!
//! Byte `n` (1-based) of a record is
//! `64·y[4n] + 16·y[4n-1] + 4·y[4n-2] + y[4n-3]`, so coordinate `4n-3` sits
//! in the two lowest bits. Sections `M_n` with `n < 24` use the same
//! encoding with block sizes equal to half their shape counts.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use thiserror::Error;

use crate::golay::{GolayCode, LENGTH};
use crate::leech::{leech_member, LatticeVector, MinimalVectorSet, Shape, MIN_NORM};

/// Bytes per packed vector.
pub const RECORD_LEN: usize = 6;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum HsetError {
    #[error("base set M_{0} is not closed under negation")]
    BaseNotAntipodal(usize),
    #[error("explicit rule has {found} bits, base has {expected} antipodal pairs")]
    ChoiceLength { expected: usize, found: usize },
    #[error("file has {found} bytes, expected {expected}")]
    SizeMismatch { expected: usize, found: usize },
    #[error("coordinate {coord} value {value} has no symbol in the {shape:?} alphabet")]
    AlphabetViolation { coord: usize, value: i32, shape: Shape },
    #[error("record {record}: decoded vector {vector} does not have shape {expected:?}")]
    ShapeMismatch { record: usize, vector: LatticeVector, expected: Shape },
    #[error("record {record}: {vector} is not a Leech lattice vector (coordinate labeling mismatch?)")]
    NotInLattice { record: usize, vector: LatticeVector },
    #[error("record {record}: {vector} is not in M_{dimension}")]
    NotInBase { record: usize, vector: LatticeVector, dimension: usize },
    #[error("antipodal violation: {0}")]
    AntipodalViolation(String),
    #[error("vector {index} breaks the block layout (shape {shape:?} after a later block)")]
    Layout { index: usize, shape: Shape },
}

/// How to choose the member of each pair.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum HRule {
    /// The lexicographically larger member.
    Canonical,
    /// One bit per pair from the seeded generator.
    Seeded(u64),
    /// `true` selects the smaller member of pair `i`.
    Explicit(Vec<bool>),
}

/// An antipodal selection of `M_n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HSelection {
    dimension: usize,
    /// Per pair, in canonical pair order: `true` if the smaller member is chosen.
    choice: Vec<bool>,
    realized: Vec<LatticeVector>,
}

impl HSelection {
    pub fn dimension(&self) -> usize {
        self.dimension
    }

    pub fn choice(&self) -> &[bool] {
        &self.choice
    }

    /// The selected vectors, in file/selection order.
    pub fn realized(&self) -> &[LatticeVector] {
        &self.realized
    }

    pub fn len(&self) -> usize {
        self.realized.len()
    }

    pub fn is_empty(&self) -> bool {
        self.realized.is_empty()
    }
}

/// Pair representatives (the larger member of each pair) in canonical order.
pub fn antipodal_pairs(base: &MinimalVectorSet) -> Vec<LatticeVector> {
    base.vectors().iter().filter(|v| **v > v.neg()).copied().collect()
}

fn block_order(v: &LatticeVector) -> (Shape, LatticeVector) {
    (v.shape().expect("minimal vector"), *v)
}

pub fn make_hset(base: &MinimalVectorSet, rule: HRule) -> Result<HSelection, HsetError> {
    if !base.is_closed_under_negation() {
        return Err(HsetError::BaseNotAntipodal(base.dimension()));
    }
    let reps = antipodal_pairs(base);
    let choice = match rule {
        HRule::Canonical => vec![false; reps.len()],
        HRule::Seeded(seed) => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            (0..reps.len()).map(|_| rng.gen::<bool>()).collect()
        }
        HRule::Explicit(bits) => {
            if bits.len() != reps.len() {
                return Err(HsetError::ChoiceLength { expected: reps.len(), found: bits.len() });
            }
            bits
        }
    };
    let mut realized: Vec<LatticeVector> =
        reps.iter().zip(&choice).map(|(r, &flip)| if flip { r.neg() } else { *r }).collect();
    realized.sort_by_key(block_order);
    Ok(HSelection { dimension: base.dimension(), choice, realized })
}

/// Wraps an ordered list as a selection of `base`, keeping the order.
pub fn selection_from_vectors(base: &MinimalVectorSet, vectors: Vec<LatticeVector>) -> Result<HSelection, HsetError> {
    let reps = antipodal_pairs(base);
    let pair_of: std::collections::HashMap<LatticeVector, usize> =
        reps.iter().enumerate().map(|(i, r)| (*r, i)).collect();
    let mut choice: Vec<Option<bool>> = vec![None; reps.len()];
    for (record, v) in vectors.iter().enumerate() {
        if !base.contains(v) {
            return Err(HsetError::NotInBase { record, vector: *v, dimension: base.dimension() });
        }
        let (pair, flip) = match pair_of.get(v) {
            Some(&p) => (p, false),
            None => (pair_of[&v.neg()], true),
        };
        if choice[pair].is_some() {
            return Err(HsetError::AntipodalViolation(format!("pair of {} selected twice (record {record})", reps[pair])));
        }
        choice[pair] = Some(flip);
    }
    if let Some(missing) = choice.iter().position(Option::is_none) {
        return Err(HsetError::AntipodalViolation(format!("no member of the pair ±{} selected", reps[missing])));
    }
    Ok(HSelection { dimension: base.dimension(), choice: choice.into_iter().map(Option::unwrap).collect(), realized: vectors })
}

/// Record counts per block.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DatLayout {
    pub four_four: usize,
    pub two_eight: usize,
    pub three_one: usize,
}

impl DatLayout {
    /// Layout for selections of `base`: half of each shape count.
    pub fn for_base(base: &MinimalVectorSet) -> Self {
        DatLayout {
            four_four: base.count(Shape::FourFour) / 2,
            two_eight: base.count(Shape::TwoEight) / 2,
            three_one: base.count(Shape::ThreeOne) / 2,
        }
    }

    pub fn records(&self) -> usize {
        self.four_four + self.two_eight + self.three_one
    }

    pub fn byte_len(&self) -> usize {
        self.records() * RECORD_LEN
    }

    /// Block shape of record `i`.
    pub fn shape_of(&self, i: usize) -> Shape {
        if i < self.four_four {
            Shape::FourFour
        } else if i < self.four_four + self.two_eight {
            Shape::TwoEight
        } else {
            Shape::ThreeOne
        }
    }
}

/// The full shell's layout: 552 + 48576 + 49152 records.
pub const FULL_LAYOUT: DatLayout = DatLayout { four_four: 552, two_eight: 48576, three_one: 49152 };

fn symbol(shape: Shape, value: i8) -> Option<u8> {
    match (shape, value) {
        (Shape::FourFour, -4) | (Shape::TwoEight, -2) | (Shape::ThreeOne, -3) => Some(0),
        (Shape::FourFour | Shape::TwoEight, 0) | (Shape::ThreeOne, -1) => Some(1),
        (Shape::FourFour, 4) | (Shape::TwoEight, 2) | (Shape::ThreeOne, 1) => Some(2),
        (Shape::ThreeOne, 3) => Some(3),
        _ => None,
    }
}

fn value(shape: Shape, symbol: u8) -> Option<i8> {
    match (shape, symbol) {
        (Shape::FourFour, 0) => Some(-4),
        (Shape::FourFour, 1) | (Shape::TwoEight, 1) => Some(0),
        (Shape::FourFour, 2) => Some(4),
        (Shape::TwoEight, 0) => Some(-2),
        (Shape::TwoEight, 2) => Some(2),
        (Shape::ThreeOne, s @ 0..=3) => Some(2 * s as i8 - 3),
        _ => None,
    }
}

/// Packs one vector with the alphabet of `shape`.
pub fn encode_vector(v: &LatticeVector, shape: Shape) -> Result<[u8; RECORD_LEN], HsetError> {
    let mut out = [0u8; RECORD_LEN];
    for (i, &c) in v.coords().iter().enumerate() {
        let s = symbol(shape, c).ok_or(HsetError::AlphabetViolation { coord: i + 1, value: i32::from(c), shape })?;
        out[i / 4] |= s << (2 * (i % 4));
    }
    Ok(out)
}

/// Unpacks one record with the alphabet of `shape`.
pub fn decode_vector(record: &[u8; RECORD_LEN], shape: Shape) -> Result<LatticeVector, HsetError> {
    let mut x = [0i8; LENGTH];
    for (i, xi) in x.iter_mut().enumerate() {
        let s = record[i / 4] >> (2 * (i % 4)) & 3;
        *xi = value(shape, s).ok_or(HsetError::AlphabetViolation { coord: i + 1, value: i32::from(s), shape })?;
    }
    Ok(LatticeVector::new(x))
}

/// Serializes a selection. Its vectors must already be in block order.
pub fn encode_hset(h: &HSelection) -> Result<Vec<u8>, HsetError> {
    let mut out = Vec::with_capacity(h.len() * RECORD_LEN);
    let mut last = Shape::FourFour;
    for (index, v) in h.realized.iter().enumerate() {
        let shape = v.shape().expect("selections hold minimal vectors");
        if shape < last {
            return Err(HsetError::Layout { index, shape });
        }
        last = shape;
        out.extend_from_slice(&encode_vector(v, shape)?);
    }
    Ok(out)
}

/// Parses and validates a packed selection of `base` (normally the full shell).
///
/// Each record is checked for its block's alphabet and shape, squared norm
/// 32, lattice membership and membership in `base`; then the whole list is
/// checked to hold exactly one vector of every antipodal pair. File order is
/// preserved.
pub fn decode_dat(bytes: &[u8], base: &MinimalVectorSet, code: &GolayCode) -> Result<HSelection, HsetError> {
    let layout = DatLayout::for_base(base);
    if bytes.len() != layout.byte_len() {
        return Err(HsetError::SizeMismatch { expected: layout.byte_len(), found: bytes.len() });
    }
    let vectors: Vec<LatticeVector> = bytes
        .par_chunks_exact(RECORD_LEN)
        .enumerate()
        .map(|(record, chunk)| {
            let expected = layout.shape_of(record);
            let v = decode_vector(chunk.try_into().unwrap(), expected)?;
            if v.shape() != Some(expected) || v.norm2() != i64::from(MIN_NORM) {
                return Err(HsetError::ShapeMismatch { record, vector: v, expected });
            }
            if !leech_member(&v, code) {
                return Err(HsetError::NotInLattice { record, vector: v });
            }
            Ok(v)
        })
        .collect::<Result<_, _>>()?;
    selection_from_vectors(base, vectors)
}

/// Geometry and completeness of a candidate selection.
#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize)]
pub struct HsetReport {
    pub dimension: usize,
    pub size: usize,
    pub expected_size: usize,
    /// Vectors not in the base set.
    pub not_in_base: usize,
    /// Pairs with both members present (or a vector repeated).
    pub doubled_pairs: usize,
    /// Pairs with no member present.
    pub missing_pairs: usize,
    /// Observed inner products between distinct members, ascending.
    pub ip_support: Vec<i32>,
    /// Whether `ip_support` came from all pairs rather than from witnesses.
    pub exhaustive: bool,
    pub min_ip: Option<i32>,
    pub diameter2: Option<i64>,
    pub four_four: usize,
    pub two_eight: usize,
    pub three_one: usize,
}

impl HsetReport {
    pub fn antipodal_ok(&self) -> bool {
        self.not_in_base == 0 && self.doubled_pairs == 0 && self.missing_pairs == 0 && self.size == self.expected_size
    }
}

/// Validates an arbitrary vector list as a selection of `base`.
///
/// With `exhaustive`, every pair of members is compared. Otherwise the
/// support is found from witnesses: once all vectors are known to be minimal
/// and no pair is doubled, inner products are confined to `{0, ±8, ±16}`, and
/// rows are scanned only until each of those values has been seen.
pub fn validate_vectors(base: &MinimalVectorSet, vectors: &[LatticeVector], exhaustive: bool) -> HsetReport {
    let expected_size = base.len() / 2;
    let mut not_in_base = 0;
    let mut present = std::collections::HashMap::with_capacity(vectors.len());
    let mut doubled = 0;
    for v in vectors {
        if !base.contains(v) {
            not_in_base += 1;
        }
        let key = if *v > v.neg() { *v } else { v.neg() };
        let e = present.entry(key).or_insert(0usize);
        *e += 1;
        if *e == 2 {
            doubled += 1;
        }
    }
    let missing = antipodal_pairs(base).iter().filter(|r| !present.contains_key(r)).count();

    let witness_mode = !exhaustive && not_in_base == 0;
    let mut seen = [false; 65];
    if witness_mode {
        // ±32 only arise from repeats or from x and -x together
        let members: std::collections::HashSet<&LatticeVector> = vectors.iter().collect();
        seen[64] = members.len() < vectors.len();
        seen[0] = vectors.iter().any(|v| members.contains(&v.neg()));
        let targets = [-16, -8, 0, 8, 16];
        for (i, x) in vectors.iter().enumerate() {
            for y in &vectors[i + 1..] {
                let p = x.dot(y);
                if p.abs() < 32 {
                    seen[(p + 32) as usize] = true;
                }
            }
            if targets.iter().all(|&t| seen[(t + 32) as usize]) {
                break;
            }
        }
    } else {
        let rows: Vec<[bool; 65]> = (0..vectors.len())
            .into_par_iter()
            .map(|i| {
                let mut acc = [false; 65];
                let x = &vectors[i];
                for y in &vectors[i + 1..] {
                    acc[(x.dot_wide(y) + 32).clamp(0, 64) as usize] = true;
                }
                acc
            })
            .collect();
        for r in rows {
            for (s, b) in seen.iter_mut().zip(r) {
                *s |= b;
            }
        }
    }
    let ip_support: Vec<i32> = (0..65).filter(|&i| seen[i]).map(|i| i as i32 - 32).collect();
    let min_ip = ip_support.first().copied();
    let counts = |s: Shape| vectors.iter().filter(|v| v.shape() == Some(s)).count();
    HsetReport {
        dimension: base.dimension(),
        size: vectors.len(),
        expected_size,
        not_in_base,
        doubled_pairs: doubled,
        missing_pairs: missing,
        ip_support,
        exhaustive: !witness_mode,
        min_ip,
        diameter2: min_ip.map(|p| 2 * (i64::from(MIN_NORM) - i64::from(p))),
        four_four: counts(Shape::FourFour),
        two_eight: counts(Shape::TwoEight),
        three_one: counts(Shape::ThreeOne),
    }
}

pub fn validate_hset(base: &MinimalVectorSet, h: &HSelection, exhaustive: bool) -> HsetReport {
    validate_vectors(base, h.realized(), exhaustive)
}
