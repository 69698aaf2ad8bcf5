//! Laminated sections `M_n` of the minimal shell.
//!
//! `M_n` is the set of minimal vectors satisfying every condition added on
//! the way down from 24 to `n`. Conditions act on the raw coordinates; there
//! is no re-embedding into `n` coordinates, so inner products are unchanged.
//! Rows 13, 12 and 11 are the `Λmax` sections; no other sections in those
//! dimensions are produced.

use std::fmt;

use thiserror::Error;

use crate::golay::LENGTH;
use crate::leech::{LatticeVector, MinimalVectorSet, Shape};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum LaminatedError {
    #[error("dimension {0} is outside 1..=24")]
    InvalidDimension(usize),
    #[error("slicing needs the full 24-dimensional shell, got M_{0}")]
    NotFullShell(usize),
}

/// A linear coordinate condition, 1-based indices.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Condition {
    Equal(usize, usize),
    Zero(usize),
    SumZero(usize, usize, usize),
}

impl Condition {
    pub fn holds(&self, v: &LatticeVector) -> bool {
        match *self {
            Condition::Equal(i, j) => v.at(i) == v.at(j),
            Condition::Zero(i) => v.at(i) == 0,
            Condition::SumZero(i, j, k) => i32::from(v.at(i)) + i32::from(v.at(j)) + i32::from(v.at(k)) == 0,
        }
    }
}

impl fmt::Display for Condition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Condition::Equal(i, j) => write!(f, "x{i} = x{j}"),
            Condition::Zero(i) => write!(f, "x{i} = 0"),
            Condition::SumZero(i, j, k) => write!(f, "x{i} + x{j} + x{k} = 0"),
        }
    }
}

/// Condition added when going from dimension `n + 1` to `n`, for `n = 23, 22, …, 1`.
pub const ADDED_CONDITIONS: [Condition; 23] = {
    use Condition::*;
    [
        Equal(24, 23),
        Equal(23, 22),
        Zero(22),
        Zero(21),
        Zero(20),
        SumZero(19, 18, 17),
        Zero(19),
        Zero(18),
        Zero(16),
        SumZero(15, 14, 13),
        Zero(15),
        Zero(14),
        Equal(12, 11),
        Equal(11, 10),
        Zero(10),
        Zero(9),
        Equal(8, 7),
        Equal(7, 6),
        Zero(6),
        Zero(5),
        Zero(4),
        SumZero(3, 2, 1),
        Zero(3),
    ]
};

/// Tabulated section data: total and per-shape counts.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
pub struct SectionCounts {
    pub n: usize,
    pub total: usize,
    pub four_four: usize,
    pub two_eight: usize,
    pub three_one: usize,
}

impl SectionCounts {
    pub fn of(set: &MinimalVectorSet) -> Self {
        SectionCounts {
            n: set.dimension(),
            total: set.len(),
            four_four: set.count(Shape::FourFour),
            two_eight: set.count(Shape::TwoEight),
            three_one: set.count(Shape::ThreeOne),
        }
    }

    pub fn by_shape(&self, shape: Shape) -> usize {
        match shape {
            Shape::FourFour => self.four_four,
            Shape::TwoEight => self.two_eight,
            Shape::ThreeOne => self.three_one,
        }
    }
}

const fn row(n: usize, total: usize, four_four: usize, two_eight: usize, three_one: usize) -> SectionCounts {
    SectionCounts { n, total, four_four, two_eight, three_one }
}

/// Reference counts for `n = 1..=24` (index `n - 1`).
pub const EXPECTED_COUNTS: [SectionCounts; 24] = [
    row(1, 2, 2, 0, 0),
    row(2, 6, 6, 0, 0),
    row(3, 12, 12, 0, 0),
    row(4, 24, 24, 0, 0),
    row(5, 40, 40, 0, 0),
    row(6, 72, 40, 32, 0),
    row(7, 126, 62, 64, 0),
    row(8, 240, 112, 128, 0),
    row(9, 272, 144, 128, 0),
    row(10, 336, 144, 192, 0),
    row(11, 438, 182, 256, 0),
    row(12, 648, 264, 384, 0),
    row(13, 906, 266, 640, 0),
    row(14, 1422, 270, 1152, 0),
    row(15, 2340, 420, 1920, 0),
    row(16, 4320, 480, 3840, 0),
    row(17, 5346, 482, 4864, 0),
    row(18, 7398, 486, 6912, 0),
    row(19, 10668, 684, 9984, 0),
    row(20, 17400, 760, 16640, 0),
    row(21, 27720, 840, 26880, 0),
    row(22, 49896, 840, 27552, 21504),
    row(23, 93150, 926, 47168, 45056),
    row(24, 196560, 1104, 97152, 98304),
];

/// Lattice name for dimension `n`, with the usual isomorphism label where one exists.
pub fn lattice_name(n: usize) -> String {
    let base = match n {
        11..=13 => format!("Λ{n}max"),
        _ => format!("Λ{n}"),
    };
    let iso = match n {
        1 => " ≅ A1",
        2 => " ≅ A2",
        3 => " ≅ D3",
        4 => " ≅ D4",
        5 => " ≅ D5",
        6 => " ≅ E6",
        7 => " ≅ E7",
        8 => " ≅ E8",
        16 => " ≅ BW16",
        _ => "",
    };
    format!("{base}{iso}")
}

/// The cumulative conditions defining a section.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LaminatedSpec {
    pub n: usize,
    pub conditions: Vec<Condition>,
}

impl LaminatedSpec {
    pub fn new(n: usize) -> Result<Self, LaminatedError> {
        if !(1..=LENGTH).contains(&n) {
            return Err(LaminatedError::InvalidDimension(n));
        }
        Ok(LaminatedSpec { n, conditions: ADDED_CONDITIONS[..LENGTH - n].to_vec() })
    }

    pub fn admits(&self, v: &LatticeVector) -> bool {
        self.conditions.iter().all(|c| c.holds(v))
    }
}

/// `M_n` as a filter of the full shell, in inherited canonical order.
pub fn slice(full: &MinimalVectorSet, n: usize) -> Result<MinimalVectorSet, LaminatedError> {
    let spec = LaminatedSpec::new(n)?;
    if full.dimension() != LENGTH {
        return Err(LaminatedError::NotFullShell(full.dimension()));
    }
    let vectors = full.vectors().iter().filter(|v| spec.admits(v)).copied().collect();
    Ok(MinimalVectorSet::from_vectors(n, vectors))
}

fn gcd(mut a: i128, mut b: i128) -> i128 {
    a = a.abs();
    b = b.abs();
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Exact rank of the integer matrix whose rows are the vectors of `vectors`.
///
/// Fraction-free elimination: each new row is cross-multiplied against the
/// pivot rows kept so far, then divided by its content.
pub fn rank_of_vectors(vectors: &[LatticeVector]) -> usize {
    let mut basis: Vec<([i128; LENGTH], usize)> = Vec::new();
    for v in vectors {
        let mut row: [i128; LENGTH] = v.coords().map(i128::from);
        for (b, pivot) in &basis {
            let f = row[*pivot];
            if f == 0 {
                continue;
            }
            let p = b[*pivot];
            for (r, &bv) in row.iter_mut().zip(b) {
                *r = *r * p - bv * f;
            }
            let g = row.iter().fold(0, |g, &x| gcd(g, x));
            if g > 1 {
                row.iter_mut().for_each(|x| *x /= g);
            }
        }
        if let Some(pivot) = row.iter().position(|&x| x != 0) {
            basis.push((row, pivot));
            if basis.len() == LENGTH {
                break;
            }
        }
    }
    basis.len()
}

pub fn rank_of_span(set: &MinimalVectorSet) -> usize {
    rank_of_vectors(set.vectors())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::golay::build_golay;
    use crate::leech::enumerate_minimal_vectors;
    use std::sync::OnceLock;

    fn full() -> &'static MinimalVectorSet {
        static CELL: OnceLock<MinimalVectorSet> = OnceLock::new();
        CELL.get_or_init(|| enumerate_minimal_vectors(&build_golay().unwrap()))
    }

    #[test]
    fn specs_are_cumulative() {
        assert!(LaminatedSpec::new(24).unwrap().conditions.is_empty());
        for n in 1..24 {
            let lo = LaminatedSpec::new(n).unwrap();
            let hi = LaminatedSpec::new(n + 1).unwrap();
            assert_eq!(lo.conditions.len(), hi.conditions.len() + 1);
            assert_eq!(lo.conditions[..hi.conditions.len()], hi.conditions[..]);
        }
        assert_eq!(LaminatedSpec::new(0), Err(LaminatedError::InvalidDimension(0)));
        assert_eq!(LaminatedSpec::new(25), Err(LaminatedError::InvalidDimension(25)));
    }

    #[test]
    fn all_rows_match() {
        let m = full();
        for expected in EXPECTED_COUNTS {
            let s = slice(m, expected.n).unwrap();
            assert_eq!(SectionCounts::of(&s), expected);
        }
    }

    #[test]
    fn e8_section() {
        let s = slice(full(), 8).unwrap();
        assert_eq!(s.len(), 240);
        for x in s.vectors() {
            for y in s.vectors() {
                assert!(!matches!(x.dot(y), 8 | -8));
            }
        }
    }

    #[test]
    fn one_dimensional_section_is_antipodal_pair() {
        let s = slice(full(), 1).unwrap();
        assert_eq!(s.len(), 2);
        assert_eq!(s.vectors()[0].dot(&s.vectors()[1]), -32);
    }

    #[test]
    fn sections_are_nested() {
        let m = full();
        let mut prev = slice(m, 1).unwrap();
        for n in 2..=24 {
            let cur = slice(m, n).unwrap();
            assert!(prev.vectors().iter().all(|v| cur.contains(v)), "M_{} ⊄ M_{n}", n - 1);
            prev = cur;
        }
    }

    #[test]
    fn ranks() {
        let m = full();
        assert_eq!(rank_of_span(m), 24);
        assert_eq!(rank_of_span(&slice(m, 2).unwrap()), 2);
        assert_eq!(rank_of_span(&slice(m, 13).unwrap()), 13);
    }

    #[test]
    fn rank_small_matrices() {
        let e = |i: usize, c: i8| {
            let mut x = [0i8; 24];
            x[i] = c;
            LatticeVector::new(x)
        };
        assert_eq!(rank_of_vectors(&[]), 0);
        assert_eq!(rank_of_vectors(&[e(0, 2), e(0, -4)]), 1);
        assert_eq!(rank_of_vectors(&[e(0, 2), e(3, 1), e(0, 4)]), 2);
    }

    #[test]
    fn slice_needs_full_shell() {
        let m8 = slice(full(), 8).unwrap();
        assert_eq!(slice(&m8, 4).unwrap_err(), LaminatedError::NotFullShell(8));
    }
}
