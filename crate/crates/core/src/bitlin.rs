//! Linear algebra over GF(2) on packed bit vectors.
//!
//! Vectors are stored LSB-first in 64-bit words: bit j of the vector (its j-th
//! coordinate) is bit `j % 64` of word `j / 64`. Matrices are row lists of
//! uniform width. Provided operations: reduced row-echelon form with rank,
//! span membership by incremental elimination, and full span enumeration into
//! either a flat membership table (narrow widths) or an explicit sorted list.

use std::fmt;
use thiserror::Error;

/// Widest supported vector.
pub const MAX_WIDTH: usize = 4096;
/// Largest span rank that [`BitMatrix::enumerate_span`] will expand.
pub const MAX_SPAN_RANK: usize = 24;
/// Spans over at most this width are returned as flat membership tables.
pub const TABLE_WIDTH: usize = 24;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum LinError {
    #[error("bit width {0} exceeds limit {MAX_WIDTH}")]
    WidthTooLarge(usize),
    #[error("width mismatch: {0} vs {1}")]
    WidthMismatch(usize, usize),
    #[error("span rank {0} exceeds enumeration limit {MAX_SPAN_RANK}")]
    RankTooLarge(usize),
}

/// A bit vector of fixed width.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BitVec {
    width: usize,
    words: Vec<u64>,
}

impl BitVec {
    pub fn zeros(width: usize) -> Result<BitVec, LinError> {
        if width > MAX_WIDTH {
            return Err(LinError::WidthTooLarge(width));
        }
        Ok(BitVec {
            width,
            words: vec![0; width.div_ceil(64).max(1)],
        })
    }

    /// Packs the low `width` bits of `value` (width ≤ 64).
    pub fn from_u64(width: usize, value: u64) -> BitVec {
        assert!(width <= 64, "from_u64 requires width <= 64");
        let mask = if width == 64 { u64::MAX } else { (1u64 << width) - 1 };
        BitVec {
            width,
            words: vec![value & mask],
        }
    }

    /// The packed value of a vector of width ≤ 64.
    pub fn as_u64(&self) -> u64 {
        assert!(self.width <= 64, "as_u64 requires width <= 64");
        self.words[0]
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn get(&self, i: usize) -> bool {
        debug_assert!(i < self.width);
        self.words[i / 64] >> (i % 64) & 1 == 1
    }

    pub fn set(&mut self, i: usize, value: bool) {
        debug_assert!(i < self.width);
        if value {
            self.words[i / 64] |= 1 << (i % 64);
        } else {
            self.words[i / 64] &= !(1 << (i % 64));
        }
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    /// Hamming weight.
    pub fn weight(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    /// Index of the lowest set coordinate, if any.
    pub fn first_set(&self) -> Option<usize> {
        for (i, &w) in self.words.iter().enumerate() {
            if w != 0 {
                return Some(i * 64 + w.trailing_zeros() as usize);
            }
        }
        None
    }

    pub fn xor_assign(&mut self, other: &BitVec) {
        debug_assert_eq!(self.width, other.width);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= b;
        }
    }

    pub fn or_assign(&mut self, other: &BitVec) {
        debug_assert_eq!(self.width, other.width);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a |= b;
        }
    }

    /// Parity of the AND with `other` (the GF(2) inner product).
    pub fn dot(&self, other: &BitVec) -> bool {
        debug_assert_eq!(self.width, other.width);
        self.words
            .iter()
            .zip(&other.words)
            .fold(0u32, |acc, (a, b)| acc ^ (a & b).count_ones())
            & 1
            == 1
    }

    /// Parses a binary literal with coordinate 0 first, e.g. `0b1011` or
    /// `1011` for the vector with coordinates 0, 2, 3 set.
    pub fn parse_binary(s: &str) -> Option<BitVec> {
        let digits = s.strip_prefix("0b").unwrap_or(s);
        if digits.is_empty() || digits.len() > MAX_WIDTH {
            return None;
        }
        let mut v = BitVec::zeros(digits.len()).ok()?;
        for (i, ch) in digits.chars().enumerate() {
            match ch {
                '0' => {}
                '1' => v.set(i, true),
                _ => return None,
            }
        }
        Some(v)
    }
}

/// Formats as a binary literal with coordinate 0 first.
impl fmt::Display for BitVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("0b")?;
        for i in 0..self.width {
            f.write_str(if self.get(i) { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl fmt::Debug for BitVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BitVec({self})")
    }
}

/// A matrix over GF(2): rows of uniform width.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BitMatrix {
    width: usize,
    rows: Vec<BitVec>,
}

impl fmt::Debug for BitMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BitMatrix[")?;
        for (i, r) in self.rows.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{r}")?;
        }
        write!(f, "]")
    }
}

impl BitMatrix {
    pub fn new(width: usize) -> Result<BitMatrix, LinError> {
        if width > MAX_WIDTH {
            return Err(LinError::WidthTooLarge(width));
        }
        Ok(BitMatrix {
            width,
            rows: Vec::new(),
        })
    }

    pub fn from_rows(width: usize, rows: Vec<BitVec>) -> Result<BitMatrix, LinError> {
        let mut m = BitMatrix::new(width)?;
        for r in rows {
            m.push_row(r)?;
        }
        Ok(m)
    }

    /// Convenience constructor from packed u64 rows (width ≤ 64).
    pub fn from_u64_rows(width: usize, rows: &[u64]) -> BitMatrix {
        assert!(width <= 64);
        BitMatrix {
            width,
            rows: rows.iter().map(|&r| BitVec::from_u64(width, r)).collect(),
        }
    }

    pub fn push_row(&mut self, row: BitVec) -> Result<(), LinError> {
        if row.width() != self.width {
            return Err(LinError::WidthMismatch(row.width(), self.width));
        }
        self.rows.push(row);
        Ok(())
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn row(&self, i: usize) -> &BitVec {
        &self.rows[i]
    }

    pub fn rows(&self) -> &[BitVec] {
        &self.rows
    }

    /// Reduced row-echelon form and rank. The row count is preserved (zero
    /// rows sink to the bottom), so among matrices with equal row counts two
    /// have the same row space exactly when their RREFs are equal.
    pub fn rref(&self) -> (BitMatrix, usize) {
        let mut rows = self.rows.clone();
        let mut next = 0usize;
        for col in 0..self.width {
            let Some(p) = (next..rows.len()).find(|&i| rows[i].get(col)) else {
                continue;
            };
            rows.swap(next, p);
            let pivot = rows[next].clone();
            for (i, row) in rows.iter_mut().enumerate() {
                if i != next && row.get(col) {
                    row.xor_assign(&pivot);
                }
            }
            next += 1;
            if next == rows.len() {
                break;
            }
        }
        (
            BitMatrix {
                width: self.width,
                rows,
            },
            next,
        )
    }

    pub fn rank(&self) -> usize {
        self.rref().1
    }

    /// The nonzero RREF rows: a canonical basis of the row space, comparable
    /// across matrices with different row counts.
    pub fn row_basis(&self) -> BitMatrix {
        let (r, rank) = self.rref();
        BitMatrix {
            width: self.width,
            rows: r.rows[..rank].to_vec(),
        }
    }

    /// Whether `v` is a GF(2) combination of the rows, by incremental
    /// elimination against an internally built echelon basis.
    pub fn in_span(&self, v: &BitVec) -> Result<bool, LinError> {
        if v.width() != self.width {
            return Err(LinError::WidthMismatch(v.width(), self.width));
        }
        let mut ech = Echelon::new();
        for r in &self.rows {
            ech.insert(r.clone());
        }
        Ok(ech.reduces_to_zero(v))
    }

    /// Enumerates the full span (all 2^rank combinations) by Gray-code
    /// iteration over an echelon row basis.
    pub fn enumerate_span(&self) -> Result<SpanSet, LinError> {
        let mut ech = Echelon::new();
        for r in &self.rows {
            ech.insert(r.clone());
        }
        let basis = ech.rows;
        if basis.len() > MAX_SPAN_RANK {
            return Err(LinError::RankTooLarge(basis.len()));
        }
        let count = 1usize << basis.len();
        if self.width <= TABLE_WIDTH {
            let mut bits = vec![0u64; (1usize << self.width).div_ceil(64)];
            let mut cur = 0u64;
            let mark = |bits: &mut [u64], v: u64| bits[(v / 64) as usize] |= 1 << (v % 64);
            mark(&mut bits, 0);
            for i in 1..count {
                cur ^= basis[i.trailing_zeros() as usize].as_u64();
                mark(&mut bits, cur);
            }
            Ok(SpanSet::Table {
                width: self.width,
                members: count,
                bits,
            })
        } else {
            let mut cur = BitVec::zeros(self.width)?;
            let mut out = Vec::with_capacity(count);
            out.push(cur.clone());
            for i in 1..count {
                cur.xor_assign(&basis[i.trailing_zeros() as usize]);
                out.push(cur.clone());
            }
            out.sort();
            Ok(SpanSet::List {
                width: self.width,
                members: out,
            })
        }
    }

    /// A basis of the null space {v : M·vᵀ = 0}, computed from the RREF by
    /// the standard free-column construction. The returned matrix has
    /// width − rank rows.
    pub fn nullspace(&self) -> BitMatrix {
        let (r, rank) = self.rref();
        let mut pivot_of_col: Vec<Option<usize>> = vec![None; self.width];
        let mut pivot_cols = Vec::with_capacity(rank);
        for i in 0..rank {
            let col = r.rows[i].first_set().expect("nonzero RREF row");
            pivot_of_col[col] = Some(i);
            pivot_cols.push(col);
        }
        let mut out = BitMatrix::new(self.width).expect("validated width");
        for (free, pivot) in pivot_of_col.iter().enumerate() {
            if pivot.is_some() {
                continue;
            }
            let mut v = BitVec::zeros(self.width).expect("validated width");
            v.set(free, true);
            for (i, &pc) in pivot_cols.iter().enumerate() {
                if r.rows[i].get(free) {
                    v.set(pc, true);
                }
            }
            out.rows.push(v);
        }
        out
    }
}

/// Maintained echelon basis for incremental rank/membership work.
#[derive(Clone, Default)]
pub struct Echelon {
    rows: Vec<BitVec>, // each with a distinct leading coordinate, ascending
}

impl Echelon {
    pub fn new() -> Echelon {
        Echelon::default()
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Reduces `v` against the basis and inserts the residue if nonzero.
    /// Returns true when the rank grew.
    pub fn insert(&mut self, mut v: BitVec) -> bool {
        for r in &self.rows {
            if v.get(r.first_set().expect("basis rows are nonzero")) {
                v.xor_assign(r);
            }
        }
        match v.first_set() {
            None => false,
            Some(lead) => {
                let pos = self
                    .rows
                    .partition_point(|r| r.first_set().expect("nonzero") < lead);
                self.rows.insert(pos, v);
                true
            }
        }
    }

    pub fn reduces_to_zero(&self, v: &BitVec) -> bool {
        let mut v = v.clone();
        for r in &self.rows {
            if v.get(r.first_set().expect("basis rows are nonzero")) {
                v.xor_assign(r);
            }
        }
        v.is_zero()
    }
}

/// An enumerated span: membership table for narrow widths, sorted list
/// otherwise.
#[derive(Debug)]
pub enum SpanSet {
    Table {
        width: usize,
        members: usize,
        bits: Vec<u64>,
    },
    List {
        width: usize,
        members: Vec<BitVec>,
    },
}

impl SpanSet {
    pub fn len(&self) -> usize {
        match self {
            SpanSet::Table { members, .. } => *members,
            SpanSet::List { members, .. } => members.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn contains(&self, v: &BitVec) -> bool {
        match self {
            SpanSet::Table { width, bits, .. } => {
                debug_assert_eq!(v.width(), *width);
                let x = v.as_u64();
                bits[(x / 64) as usize] >> (x % 64) & 1 == 1
            }
            SpanSet::List { members, .. } => members.binary_search(v).is_ok(),
        }
    }

    /// Membership by packed value (table-backed spans only).
    pub fn contains_u64(&self, v: u64) -> bool {
        match self {
            SpanSet::Table { bits, .. } => bits[(v / 64) as usize] >> (v % 64) & 1 == 1,
            SpanSet::List { .. } => panic!("contains_u64 requires a table-backed span"),
        }
    }
}

/// First index combination {0, 1, …, t−1}.
pub fn first_combination(t: usize) -> Vec<usize> {
    (0..t).collect()
}

/// Advances `idx` to the next t-subset of {0, …, n−1} in lexicographic
/// order; returns false when exhausted.
pub fn next_combination(idx: &mut [usize], n: usize) -> bool {
    let t = idx.len();
    let mut i = t;
    loop {
        if i == 0 {
            return false;
        }
        i -= 1;
        if idx[i] != i + n - t {
            break;
        }
    }
    idx[i] += 1;
    for j in i + 1..t {
        idx[j] = idx[j - 1] + 1;
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mat(width: usize, rows: &[u64]) -> BitMatrix {
        BitMatrix::from_u64_rows(width, rows)
    }

    #[test]
    fn rref_examples() {
        let id = mat(3, &[0b001, 0b010, 0b100]);
        let (r, rank) = id.rref();
        assert_eq!(rank, 3);
        // RREF sorts pivots by column: coordinate 0 first.
        assert_eq!(r, mat(3, &[0b001, 0b010, 0b100]));

        let z = mat(3, &[0, 0]);
        let (r, rank) = z.rref();
        assert_eq!((r, rank), (mat(3, &[0, 0]), 0));

        // Rows 110, 011, 101 (coordinate 0 first): the third is the sum of
        // the first two.
        let m = mat(3, &[0b011, 0b110, 0b101]);
        assert_eq!(m.rank(), 2);
    }

    #[test]
    fn rref_idempotent_and_canonical() {
        let m = mat(5, &[0b10110, 0b01101, 0b11011, 0b00111]);
        let (r1, k1) = m.rref();
        let (r2, k2) = r1.rref();
        assert_eq!(r1, r2);
        assert_eq!(k1, k2);
        // Same row space presented as sums of the original rows → same basis.
        let m2 = mat(
            5,
            &[
                0b10110 ^ 0b01101,
                0b01101 ^ 0b00111,
                0b10110,
                0b10110 ^ 0b01101 ^ 0b00111,
            ],
        );
        assert_eq!(m.row_basis(), m2.row_basis());
        assert_eq!(m.rank(), m2.rank());
    }

    #[test]
    fn in_span_examples() {
        let m = mat(2, &[0b01, 0b10]);
        assert!(m.in_span(&BitVec::from_u64(2, 0b11)).unwrap());
        let m = mat(3, &[0b011, 0b110]);
        assert!(m.in_span(&BitVec::from_u64(3, 0)).unwrap());
        assert!(!m.in_span(&BitVec::from_u64(3, 0b001)).unwrap());
        assert_eq!(
            m.in_span(&BitVec::from_u64(4, 0)).unwrap_err(),
            LinError::WidthMismatch(4, 3)
        );
    }

    #[test]
    fn enumerate_span_examples() {
        let empty = BitMatrix::new(3).unwrap();
        let s = empty.enumerate_span().unwrap();
        assert_eq!(s.len(), 1);
        assert!(s.contains_u64(0));

        let m = mat(2, &[0b01, 0b10]);
        let s = m.enumerate_span().unwrap();
        assert_eq!(s.len(), 4);
        for v in 0..4 {
            assert!(s.contains_u64(v));
        }

        let m = mat(3, &[0b011, 0b110]);
        let s = m.enumerate_span().unwrap();
        assert_eq!(s.len(), 4);
        for v in 0..8u64 {
            assert_eq!(
                s.contains_u64(v),
                [0b000, 0b011, 0b110, 0b101].contains(&v),
                "v={v}"
            );
        }
    }

    #[test]
    fn span_membership_agrees_with_in_span() {
        // Deterministic pseudo-random instances via a tiny LCG.
        let mut state = 0x9e3779b97f4a7c15u64;
        let mut next = move || {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            state >> 33
        };
        for width in [6usize, 10, 16, 20] {
            for _ in 0..20 {
                let rows: Vec<u64> = (0..4).map(|_| next() & ((1 << width) - 1)).collect();
                let m = mat(width, &rows);
                let s = m.enumerate_span().unwrap();
                assert_eq!(s.len(), 1 << m.rank());
                for _ in 0..50 {
                    let v = next() & ((1 << width) - 1);
                    assert_eq!(
                        s.contains_u64(v),
                        m.in_span(&BitVec::from_u64(width, v)).unwrap()
                    );
                }
            }
        }
    }

    #[test]
    fn wide_spans_fall_back_to_lists() {
        let mut m = BitMatrix::new(80).unwrap();
        let mut r1 = BitVec::zeros(80).unwrap();
        r1.set(0, true);
        r1.set(79, true);
        let mut r2 = BitVec::zeros(80).unwrap();
        r2.set(40, true);
        m.push_row(r1.clone()).unwrap();
        m.push_row(r2.clone()).unwrap();
        let s = m.enumerate_span().unwrap();
        assert_eq!(s.len(), 4);
        assert!(s.contains(&r1));
        let mut sum = r1.clone();
        sum.xor_assign(&r2);
        assert!(s.contains(&sum));
        let mut other = BitVec::zeros(80).unwrap();
        other.set(1, true);
        assert!(!s.contains(&other));
    }

    #[test]
    fn rank_guard_on_enumeration() {
        let rows: Vec<u64> = (0..25).map(|i| 1u64 << i).collect();
        let m = mat(30, &rows);
        assert_eq!(
            m.enumerate_span().unwrap_err(),
            LinError::RankTooLarge(25)
        );
    }

    #[test]
    fn nullspace_is_orthogonal_complement() {
        let m = mat(6, &[0b110100, 0b011010, 0b000111]);
        let ns = m.nullspace();
        assert_eq!(ns.nrows(), 6 - m.rank());
        for r in ns.rows() {
            for row in m.rows() {
                assert!(!r.dot(row));
            }
        }
        assert_eq!(ns.rank(), ns.nrows());
    }

    #[test]
    fn combinations_enumerate_lexicographically() {
        let mut idx = first_combination(2);
        let mut seen = vec![idx.clone()];
        while next_combination(&mut idx, 4) {
            seen.push(idx.clone());
        }
        assert_eq!(
            seen,
            vec![
                vec![0, 1],
                vec![0, 2],
                vec![0, 3],
                vec![1, 2],
                vec![1, 3],
                vec![2, 3]
            ]
        );
        let mut idx = first_combination(0);
        assert!(!next_combination(&mut idx, 5));
        let mut count = 1u64;
        let mut idx = first_combination(3);
        while next_combination(&mut idx, 10) {
            count += 1;
        }
        assert_eq!(count, 120);
    }

    #[test]
    fn display_and_parse_binary() {
        let v = BitVec::from_u64(6, 0b011001); // coords 0, 3, 4
        assert_eq!(v.to_string(), "0b100110");
        let parsed = BitVec::parse_binary("0b100110").unwrap();
        assert_eq!(parsed, v);
        assert!(BitVec::parse_binary("0b10x").is_none());
        assert_eq!(v.weight(), 3);
        assert_eq!(v.first_set(), Some(0));
    }
}
