//! Minimal vectors of the Leech lattice and their inner-product statistics.
//!
//! The lattice is taken unscaled: minimal squared norm 32, integer coordinates.
//! A vector `x` lies in the lattice iff, for some `a ∈ {0,1}`, Golay codeword
//! `b`, bits `c_i` with `Σ c_i ≡ a (mod 2)` and integers `d_i`,
//! `x_i = a + 2 b_i + 4 c_i + 8 d_i` for every coordinate.
//!
//! The 196560 minimal vectors come in three shapes:
//!
//! | shape      | entries            | count            |
//! |------------|--------------------|------------------|
//! | `FourFour` | `(±4)^2 0^22`      | 1104             |
//! | `TwoEight` | `(±2)^8 0^16`      | 97152 = 759·128  |
//! | `ThreeOne` | `(∓3)(±1)^23`      | 98304 = 4096·24  |
//!
//! Canonical order is the `FourFour` block, then `TwoEight`, then `ThreeOne`,
//! each block sorted lexicographically on the signed coordinates. Vertex ids
//! in exported graphs and coloring files refer to this order.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use rayon::prelude::*;
use thiserror::Error;

use crate::golay::{Codeword, GolayCode, LENGTH};

/// Squared norm of every minimal vector.
pub const MIN_NORM: i32 = 32;
/// Number of minimal vectors.
pub const KISSING_NUMBER: usize = 196_560;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum LeechError {
    #[error("vector {0} is not in the set")]
    NotInSet(LatticeVector),
    #[error("vector index {index} out of range for a set of {len}")]
    IndexOutOfRange { index: usize, len: usize },
}

/// The three shapes of minimal vectors, in canonical block order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, serde::Serialize, serde::Deserialize)]
pub enum Shape {
    FourFour,
    TwoEight,
    ThreeOne,
}

impl Shape {
    pub const ALL: [Shape; 3] = [Shape::FourFour, Shape::TwoEight, Shape::ThreeOne];

    /// Short label used in tables: `(±4,0)`, `(±2,0)`, `(±3,±1)`.
    pub fn label(self) -> &'static str {
        match self {
            Shape::FourFour => "(±4,0)",
            Shape::TwoEight => "(±2,0)",
            Shape::ThreeOne => "(±3,±1)",
        }
    }
}

/// A 24-coordinate integer vector with entries small enough for `i8`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LatticeVector([i8; LENGTH]);

impl LatticeVector {
    pub const ZERO: LatticeVector = LatticeVector([0; LENGTH]);

    pub fn new(coords: [i8; LENGTH]) -> Self {
        LatticeVector(coords)
    }

    /// Converts from wider integers; `None` if the length is wrong or an entry overflows `i8`.
    pub fn from_slice(coords: &[i64]) -> Option<Self> {
        if coords.len() != LENGTH {
            return None;
        }
        let mut out = [0i8; LENGTH];
        for (o, &c) in out.iter_mut().zip(coords) {
            *o = i8::try_from(c).ok()?;
        }
        Some(LatticeVector(out))
    }

    pub fn coords(&self) -> &[i8; LENGTH] {
        &self.0
    }

    /// Coordinate `i`, 1-based.
    pub fn at(&self, i: usize) -> i8 {
        self.0[i - 1]
    }

    pub fn dot(&self, other: &LatticeVector) -> i32 {
        // |entries| <= 4 on everything this crate stores, so i16 lanes cannot overflow
        self.0.iter().zip(&other.0).map(|(&a, &b)| i16::from(a) * i16::from(b)).sum::<i16>() as i32
    }

    /// Wide dot product, safe for any pair of `i8` vectors.
    pub fn dot_wide(&self, other: &LatticeVector) -> i64 {
        self.0.iter().zip(&other.0).map(|(&a, &b)| i64::from(a) * i64::from(b)).sum()
    }

    pub fn norm2(&self) -> i64 {
        self.dot_wide(self)
    }

    pub fn neg(&self) -> LatticeVector {
        LatticeVector(self.0.map(|c| c.wrapping_neg()))
    }

    /// Sum as wide integers (used for ball centers, which leave the minimal shell).
    pub fn add_wide(&self, other: &LatticeVector) -> [i32; LENGTH] {
        std::array::from_fn(|i| i32::from(self.0[i]) + i32::from(other.0[i]))
    }

    /// Shape of a minimal vector, `None` if the entry multiset matches none of the three.
    pub fn shape(&self) -> Option<Shape> {
        let mut counts = [0usize; 5];
        for &c in &self.0 {
            let a = c.unsigned_abs() as usize;
            if a > 4 {
                return None;
            }
            counts[a] += 1;
        }
        match counts {
            [22, 0, 0, 0, 2] => Some(Shape::FourFour),
            [16, 0, 8, 0, 0] => Some(Shape::TwoEight),
            [0, 23, 0, 1, 0] => Some(Shape::ThreeOne),
            _ => None,
        }
    }
}

impl fmt::Debug for LatticeVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LatticeVector({self})")
    }
}

/// Space-separated coordinates, the line format of vector files.
impl fmt::Display for LatticeVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

/// Inner product.
pub fn ip(x: &LatticeVector, y: &LatticeVector) -> i32 {
    x.dot(y)
}

/// Squared Euclidean distance. On minimal vectors this is `2 (32 - ⟨x, y⟩)`.
pub fn distance_squared(x: &LatticeVector, y: &LatticeVector) -> i64 {
    x.0.iter().zip(&y.0).map(|(&a, &b)| (i64::from(a) - i64::from(b)).pow(2)).sum()
}

/// Lattice membership by recovering `a`, `b` and `c` coordinatewise.
///
/// Inputs of the wrong length return `false`.
pub fn is_leech_vector(x: &[i64], code: &GolayCode) -> bool {
    if x.len() != LENGTH {
        return false;
    }
    let a = x[0].rem_euclid(2);
    if x.iter().any(|&xi| xi.rem_euclid(2) != a) {
        return false;
    }
    let mut b = Vec::with_capacity(8);
    let mut c_sum = 0i64;
    for (i, &xi) in x.iter().enumerate() {
        let bi = ((xi - a) / 2).rem_euclid(2);
        if bi == 1 {
            b.push(i + 1);
        }
        c_sum += ((xi - a - 2 * bi) / 4).rem_euclid(2);
    }
    code.contains(Codeword::from_support(b)) && c_sum.rem_euclid(2) == a
}

/// Membership test for an already-narrowed vector.
pub fn leech_member(x: &LatticeVector, code: &GolayCode) -> bool {
    let wide: Vec<i64> = x.0.iter().map(|&c| i64::from(c)).collect();
    is_leech_vector(&wide, code)
}

/// Counts of `⟨x, y⟩ = p`, keyed by `p`.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct InnerProductHistogram(BTreeMap<i32, u64>);

impl InnerProductHistogram {
    pub fn get(&self, p: i32) -> u64 {
        self.0.get(&p).copied().unwrap_or(0)
    }

    pub fn add(&mut self, p: i32, n: u64) {
        *self.0.entry(p).or_insert(0) += n;
    }

    pub fn total(&self) -> u64 {
        self.0.values().sum()
    }

    pub fn support(&self) -> impl Iterator<Item = i32> + '_ {
        self.0.iter().filter(|(_, &n)| n > 0).map(|(&p, _)| p)
    }

    pub fn iter(&self) -> impl Iterator<Item = (i32, u64)> + '_ {
        self.0.iter().map(|(&p, &n)| (p, n))
    }

    pub fn merge(&mut self, other: &InnerProductHistogram) {
        for (p, n) in other.iter() {
            self.add(p, n);
        }
    }
}

impl FromIterator<(i32, u64)> for InnerProductHistogram {
    fn from_iter<I: IntoIterator<Item = (i32, u64)>>(iter: I) -> Self {
        let mut h = InnerProductHistogram::default();
        for (p, n) in iter {
            h.add(p, n);
        }
        h
    }
}

/// An ordered set of minimal vectors of `M_n`, with a coordinate lookup.
#[derive(Debug, Clone)]
pub struct MinimalVectorSet {
    dimension: usize,
    vectors: Vec<LatticeVector>,
    index: HashMap<LatticeVector, u32>,
    counts_by_shape: BTreeMap<Shape, usize>,
}

impl MinimalVectorSet {
    /// Wraps an ordered vector list. Every vector must have a minimal shape.
    pub(crate) fn from_vectors(dimension: usize, vectors: Vec<LatticeVector>) -> Self {
        let mut counts_by_shape: BTreeMap<Shape, usize> = Shape::ALL.iter().map(|&s| (s, 0)).collect();
        let mut index = HashMap::with_capacity(vectors.len());
        for (i, v) in vectors.iter().enumerate() {
            let shape = v.shape().expect("minimal vector shape");
            *counts_by_shape.get_mut(&shape).unwrap() += 1;
            let prev = index.insert(*v, i as u32);
            assert!(prev.is_none(), "duplicate vector {v}");
        }
        MinimalVectorSet { dimension, vectors, index, counts_by_shape }
    }

    /// Dimension label `n` of `M_n` (24 for the full shell).
    pub fn dimension(&self) -> usize {
        self.dimension
    }

    pub fn vectors(&self) -> &[LatticeVector] {
        &self.vectors
    }

    pub fn len(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }

    pub fn get(&self, i: usize) -> Option<&LatticeVector> {
        self.vectors.get(i)
    }

    pub fn position(&self, v: &LatticeVector) -> Option<usize> {
        self.index.get(v).map(|&i| i as usize)
    }

    pub fn contains(&self, v: &LatticeVector) -> bool {
        self.index.contains_key(v)
    }

    pub fn counts_by_shape(&self) -> &BTreeMap<Shape, usize> {
        &self.counts_by_shape
    }

    pub fn count(&self, shape: Shape) -> usize {
        self.counts_by_shape[&shape]
    }

    pub fn is_closed_under_negation(&self) -> bool {
        self.vectors.iter().all(|v| self.contains(&v.neg()))
    }
}

/// Enumerates all 196560 minimal vectors in canonical order.
pub fn enumerate_minimal_vectors(code: &GolayCode) -> MinimalVectorSet {
    let mut four: Vec<LatticeVector> = Vec::with_capacity(1104);
    for p1 in 0..LENGTH {
        for p2 in p1 + 1..LENGTH {
            for (s1, s2) in [(4, 4), (4, -4), (-4, 4), (-4, -4)] {
                let mut x = [0i8; LENGTH];
                x[p1] = s1;
                x[p2] = s2;
                four.push(LatticeVector(x));
            }
        }
    }

    let mut two: Vec<LatticeVector> = Vec::with_capacity(97_152);
    for octad in code.octads() {
        let positions: Vec<usize> = octad.support().collect();
        for signs in 0u32..256 {
            if signs.count_ones() % 2 != 0 {
                continue;
            }
            let mut x = [0i8; LENGTH];
            for (k, &p) in positions.iter().enumerate() {
                x[p - 1] = if signs >> k & 1 == 1 { -2 } else { 2 };
            }
            two.push(LatticeVector(x));
        }
    }

    let mut three: Vec<LatticeVector> = Vec::with_capacity(98_304);
    for &b in code.words() {
        for p in 1..=LENGTH {
            let x = std::array::from_fn(|i| {
                let bi = i8::from(b.get(i + 1));
                if i + 1 == p {
                    6 * bi - 3
                } else {
                    1 - 2 * bi
                }
            });
            three.push(LatticeVector(x));
        }
    }

    let mut vectors = Vec::with_capacity(KISSING_NUMBER);
    for (mut block, shape) in [(four, Shape::FourFour), (two, Shape::TwoEight), (three, Shape::ThreeOne)] {
        block.sort_unstable();
        debug_assert!(block.iter().all(|v| v.shape() == Some(shape)));
        vectors.append(&mut block);
    }
    // from_vectors asserts duplicate-freeness across all three blocks
    MinimalVectorSet::from_vectors(LENGTH, vectors)
}

/// Histogram of `⟨x, y⟩` over all `y` in `set`, for a member `x`.
pub fn ip_histogram(set: &MinimalVectorSet, x: &LatticeVector) -> Result<InnerProductHistogram, LeechError> {
    if !set.contains(x) {
        return Err(LeechError::NotInSet(*x));
    }
    Ok(histogram_against(set.vectors(), x))
}

fn histogram_against(vectors: &[LatticeVector], x: &LatticeVector) -> InnerProductHistogram {
    // ip on minimal vectors lies in [-32, 32]
    let mut bins = [0u64; 65];
    for y in vectors {
        bins[(x.dot(y) + 32) as usize] += 1;
    }
    bins.iter()
        .enumerate()
        .filter(|(_, &n)| n > 0)
        .map(|(i, &n)| (i as i32 - 32, n))
        .collect()
}

/// Per-base histograms for the vectors at `bases`, computed in parallel.
pub fn ip_histograms(set: &MinimalVectorSet, bases: &[usize]) -> Result<Vec<InnerProductHistogram>, LeechError> {
    for &b in bases {
        if b >= set.len() {
            return Err(LeechError::IndexOutOfRange { index: b, len: set.len() });
        }
    }
    Ok(bases.par_iter().map(|&b| histogram_against(set.vectors(), &set.vectors()[b])).collect())
}

/// `k` base indices spread evenly over `0..len` (all of them if `k >= len`).
pub fn stride_sample(len: usize, k: usize) -> Vec<usize> {
    if k >= len {
        return (0..len).collect();
    }
    (0..k).map(|i| i * len / k).collect()
}

/// Writes one vector per line, 24 space-separated integers.
pub fn write_vector_lines<W: std::io::Write>(mut sink: W, vectors: &[LatticeVector]) -> std::io::Result<()> {
    for v in vectors {
        writeln!(sink, "{v}")?;
    }
    sink.flush()
}

/// Reads the format of [`write_vector_lines`]. Blank lines and `#` comments are skipped.
pub fn read_vector_lines<R: std::io::BufRead>(source: R) -> std::io::Result<Vec<LatticeVector>> {
    let mut out = Vec::new();
    for (i, line) in source.lines().enumerate() {
        let line = line?;
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let bad = |msg: String| std::io::Error::new(std::io::ErrorKind::InvalidData, format!("line {}: {msg}", i + 1));
        let coords: Vec<i64> = line
            .split_whitespace()
            .map(|t| t.parse::<i64>().map_err(|e| bad(format!("{t:?}: {e}"))))
            .collect::<Result<_, _>>()?;
        let v = LatticeVector::from_slice(&coords)
            .ok_or_else(|| bad(format!("expected {LENGTH} small integers, got {}", coords.len())))?;
        out.push(v);
    }
    Ok(out)
}
