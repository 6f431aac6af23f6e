//! Binary linear codes: minimum distance, generalized Hamming weights, the
//! closed-form weight hierarchy of Hamming codes, exhaustive classification of
//! tiny codes up to permutation equivalence, and the missing-parity-column
//! certificate for [2^r−2, 2^r−2−r, 3] codes.

use crate::bitlin::{first_combination, next_combination, BitMatrix, BitVec, LinError};
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};
use std::collections::{BTreeSet, HashSet};
use thiserror::Error;

/// Largest dimension accepted by codeword-enumeration routines.
pub const MAX_ENUM_DIMENSION: usize = 24;
/// Largest number of subspaces [`BinaryCode::ghw`] will enumerate.
pub const GHW_WORK_LIMIT: u128 = 100_000_000;
/// Length limit for permutation-equivalence classification.
pub const CLASSIFY_MAX_N: usize = 8;
/// Dimension limit for permutation-equivalence classification.
pub const CLASSIFY_MAX_K: usize = 5;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CodeError {
    #[error("dimension {k} exceeds enumeration limit {limit}")]
    DimensionTooLarge { k: usize, limit: usize },
    #[error("generator has {rows} rows but rank {rank}; rows must be independent")]
    RankDeficient { rows: usize, rank: usize },
    #[error("subcode dimension {r} outside 1..={k}")]
    SubcodeRankOutOfRange { r: usize, k: usize },
    #[error("estimated work {estimated} subspaces exceeds limit {limit}")]
    WorkLimitExceeded { estimated: u128, limit: u128 },
    #[error("classification limited to n ≤ {CLASSIFY_MAX_N}, 1 ≤ k ≤ {CLASSIFY_MAX_K}, k ≤ n; got n={n}, k={k}")]
    InfeasibleClassification { n: usize, k: usize },
    #[error("code has dimension 0: no nonzero codewords")]
    EmptyCode,
    #[error("parameter m={0} outside supported range 2..=30")]
    DegreeOutOfRange(u32),
    #[error(transparent)]
    Lin(#[from] LinError),
}

/// A binary linear [n, k] code given by a full-rank generator matrix, with an
/// optional cached parity-check matrix.
#[derive(Clone, PartialEq, Eq)]
pub struct BinaryCode {
    n: usize,
    k: usize,
    gen: BitMatrix,
    par: Option<BitMatrix>,
}

impl std::fmt::Debug for BinaryCode {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "BinaryCode[{},{}]{:?}", self.n, self.k, self.gen)
    }
}

impl Serialize for BinaryCode {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("BinaryCode", 3)?;
        st.serialize_field("n", &self.n)?;
        st.serialize_field("k", &self.k)?;
        let rows: Vec<String> = self.gen.rows().iter().map(|r| r.to_string()).collect();
        st.serialize_field("gen", &rows)?;
        st.end()
    }
}

impl BinaryCode {
    /// Builds a code from an independent set of generator rows.
    pub fn from_generator(gen: BitMatrix) -> Result<BinaryCode, CodeError> {
        let rank = gen.rank();
        if rank != gen.nrows() {
            return Err(CodeError::RankDeficient {
                rows: gen.nrows(),
                rank,
            });
        }
        Ok(BinaryCode {
            n: gen.width(),
            k: gen.nrows(),
            gen,
            par: None,
        })
    }

    /// Builds a code as the null space of a parity-check matrix. Dependent
    /// parity rows are reduced away; the stored check matrix has full rank.
    pub fn from_parity_check(par: BitMatrix) -> Result<BinaryCode, CodeError> {
        let par = par.row_basis();
        let gen = par.nullspace();
        Ok(BinaryCode {
            n: par.width(),
            k: gen.nrows(),
            gen,
            par: Some(par),
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn generator(&self) -> &BitMatrix {
        &self.gen
    }

    pub fn parity_check(&self) -> Option<&BitMatrix> {
        self.par.as_ref()
    }

    /// The cached parity-check matrix, or a freshly computed null-space basis
    /// of the generator.
    pub fn compute_parity_check(&self) -> BitMatrix {
        match &self.par {
            Some(p) => p.clone(),
            None => self.gen.nullspace(),
        }
    }

    /// Whether `word` is a codeword.
    pub fn contains(&self, word: &BitVec) -> Result<bool, CodeError> {
        Ok(self.gen.in_span(word)?)
    }

    fn guard_enum(&self) -> Result<(), CodeError> {
        if self.k > MAX_ENUM_DIMENSION {
            return Err(CodeError::DimensionTooLarge {
                k: self.k,
                limit: MAX_ENUM_DIMENSION,
            });
        }
        Ok(())
    }

    /// Minimum Hamming weight over all nonzero codewords, by Gray-code
    /// enumeration of the message space.
    pub fn min_distance(&self) -> Result<usize, CodeError> {
        self.guard_enum()?;
        if self.k == 0 {
            return Err(CodeError::EmptyCode);
        }
        let mut cur = BitVec::zeros(self.n)?;
        let mut best = usize::MAX;
        for msg in 1u64..1 << self.k {
            cur.xor_assign(self.gen.row(msg.trailing_zeros() as usize));
            best = best.min(cur.weight());
        }
        Ok(best)
    }

    /// Codeword counts by weight; entry `w` counts codewords of weight `w`.
    pub fn weight_distribution(&self) -> Result<Vec<u64>, CodeError> {
        self.guard_enum()?;
        let mut counts = vec![0u64; self.n + 1];
        counts[0] = 1;
        let mut cur = BitVec::zeros(self.n)?;
        for msg in 1u64..1 << self.k {
            cur.xor_assign(self.gen.row(msg.trailing_zeros() as usize));
            counts[cur.weight()] += 1;
        }
        Ok(counts)
    }

    /// The r-th generalized Hamming weight: the minimum union-support size
    /// over all r-dimensional subcodes. Subspaces of the message space are
    /// enumerated once each via reduced-echelon pivot patterns.
    pub fn ghw(&self, r: usize) -> Result<usize, CodeError> {
        if r == 0 || r > self.k {
            return Err(CodeError::SubcodeRankOutOfRange { r, k: self.k });
        }
        let estimated = gaussian_binomial(self.k as u32, r as u32);
        if estimated > GHW_WORK_LIMIT {
            return Err(CodeError::WorkLimitExceeded {
                estimated,
                limit: GHW_WORK_LIMIT,
            });
        }
        // Fast path: rows packed into single words.
        let packed: Option<Vec<u64>> = if self.n <= 64 {
            Some(self.gen.rows().iter().map(|r| r.as_u64()).collect())
        } else {
            None
        };
        let k = self.k;
        let mut best = usize::MAX;
        let mut pivots = first_combination(r);
        loop {
            // Free message coordinates assignable in each basis row: those
            // beyond the row's pivot and not pivots themselves.
            let mut cells: Vec<(usize, usize)> = Vec::new();
            for (i, &p) in pivots.iter().enumerate() {
                for j in p + 1..k {
                    if !pivots.contains(&j) {
                        cells.push((i, j));
                    }
                }
            }
            for mask in 0u64..1 << cells.len() {
                let mut msgs: Vec<u64> = pivots.iter().map(|&p| 1u64 << p).collect();
                for (c, &(i, j)) in cells.iter().enumerate() {
                    if mask >> c & 1 == 1 {
                        msgs[i] |= 1 << j;
                    }
                }
                let weight = match &packed {
                    Some(rows) => {
                        let mut supp = 0u64;
                        for &msg in &msgs {
                            let mut w = 0u64;
                            let mut bits = msg;
                            while bits != 0 {
                                w ^= rows[bits.trailing_zeros() as usize];
                                bits &= bits - 1;
                            }
                            supp |= w;
                        }
                        supp.count_ones() as usize
                    }
                    None => {
                        let mut supp = BitVec::zeros(self.n)?;
                        for &msg in &msgs {
                            let mut w = BitVec::zeros(self.n)?;
                            let mut bits = msg;
                            while bits != 0 {
                                w.xor_assign(self.gen.row(bits.trailing_zeros() as usize));
                                bits &= bits - 1;
                            }
                            supp.or_assign(&w);
                        }
                        supp.weight()
                    }
                };
                best = best.min(weight);
            }
            if !next_combination(&mut pivots, k) {
                break;
            }
        }
        Ok(best)
    }
}

/// Number of r-dimensional subspaces of F_2^k, saturating at `u128::MAX`.
pub fn gaussian_binomial(k: u32, r: u32) -> u128 {
    if r > k {
        return 0;
    }
    let r = r.min(k - r);
    // Recurrence [k r] = [k−1 r−1] + 2^r [k−1 r], row by row.
    let mut row: Vec<u128> = vec![1];
    for _ in 0..k {
        let mut next = vec![1u128];
        for j in 1..=r as usize {
            let same = *row.get(j).unwrap_or(&0);
            let scaled = if same > u128::MAX >> j {
                u128::MAX
            } else {
                same << j
            };
            let below = *row.get(j - 1).unwrap_or(&0);
            next.push(below.saturating_add(scaled));
        }
        row = next;
    }
    *row.get(r as usize).unwrap_or(&0)
}

/// The Hamming code of redundancy `r`: parity-check columns are all nonzero
/// r-bit vectors in increasing value order.
pub fn hamming_code(r: u32) -> Result<BinaryCode, CodeError> {
    if !(2..=16).contains(&r) {
        return Err(CodeError::DegreeOutOfRange(r));
    }
    let n = (1usize << r) - 1;
    let mut par = BitMatrix::new(n)?;
    for bit in 0..r as usize {
        let mut row = BitVec::zeros(n)?;
        for j in 0..n {
            if (j + 1) >> bit & 1 == 1 {
                row.set(j, true);
            }
        }
        par.push_row(row)?;
    }
    BinaryCode::from_parity_check(par)
}

/// The full weight hierarchy of the Hamming code of redundancy `m`, lazily:
/// the increasing sequence obtained by deleting the powers of two from
/// 1..2^m − 1. Its length is 2^m − 1 − m.
pub fn hamming_ghw_sequence(m: u32) -> Result<impl Iterator<Item = u64>, CodeError> {
    if !(2..=30).contains(&m) {
        return Err(CodeError::DegreeOutOfRange(m));
    }
    Ok((1..(1u64 << m)).filter(|v| !v.is_power_of_two()))
}

/// One permutation-equivalence class of codes: a canonical representative and
/// the number of distinct codes (echelon generator matrices) in the class.
#[derive(Clone, Debug)]
pub struct CodeClass {
    pub code: BinaryCode,
    pub min_distance: usize,
    pub members: u64,
}

impl Serialize for CodeClass {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("CodeClass", 5)?;
        st.serialize_field("n", &self.code.n())?;
        st.serialize_field("k", &self.code.k())?;
        st.serialize_field("min_distance", &self.min_distance)?;
        let rows: Vec<String> = self
            .code
            .generator()
            .rows()
            .iter()
            .map(|r| r.to_string())
            .collect();
        st.serialize_field("gen", &rows)?;
        st.serialize_field("members", &self.members)?;
        st.end()
    }
}

// Classification works on rows packed into u32 with coordinate 0 at the most
// significant of the low n bits, so that lexicographic comparison of row
// tuples matches left-to-right comparison of the written-out matrices.

fn encode_row(v: &BitVec, n: usize) -> u32 {
    let mut bits = 0u32;
    for j in 0..n {
        if v.get(j) {
            bits |= 1 << (n - 1 - j);
        }
    }
    bits
}

fn decode_rows(rows: &[u32], n: usize) -> Result<BitMatrix, CodeError> {
    let mut m = BitMatrix::new(n)?;
    for &bits in rows {
        let mut v = BitVec::zeros(n)?;
        for j in 0..n {
            if bits >> (n - 1 - j) & 1 == 1 {
                v.set(j, true);
            }
        }
        m.push_row(v)?;
    }
    Ok(m)
}

/// In-place reduced echelon form with pivots scanned coordinate-first
/// (highest bit first); returns the rank.
fn rref_packed(rows: &mut [u32], n: usize) -> usize {
    let mut next = 0;
    for col in (0..n as u32).rev() {
        let Some(p) = (next..rows.len()).find(|&i| rows[i] >> col & 1 == 1) else {
            continue;
        };
        rows.swap(next, p);
        let pivot = rows[next];
        for (i, row) in rows.iter_mut().enumerate() {
            if i != next && *row >> col & 1 == 1 {
                *row ^= pivot;
            }
        }
        next += 1;
        if next == rows.len() {
            break;
        }
    }
    next
}

fn min_distance_packed(rows: &[u32]) -> u32 {
    let k = rows.len();
    let mut best = u32::MAX;
    let mut cur = 0u32;
    for msg in 1u64..1 << k {
        cur ^= rows[msg.trailing_zeros() as usize];
        best = best.min(cur.count_ones());
    }
    best
}

/// All permutations of 0..n in lexicographic order.
fn permutations(n: usize) -> Vec<Vec<u8>> {
    let mut out = Vec::new();
    let mut cur: Vec<u8> = (0..n as u8).collect();
    loop {
        out.push(cur.clone());
        // Advance to the next lexicographic permutation.
        let Some(i) = (0..n.saturating_sub(1)).rev().find(|&i| cur[i] < cur[i + 1]) else {
            break;
        };
        let j = (i + 1..n).rev().find(|&j| cur[j] > cur[i]).expect("successor exists");
        cur.swap(i, j);
        cur[i + 1..].reverse();
    }
    out
}

fn permute_columns(rows: &[u32], n: usize, perm: &[u8]) -> Vec<u32> {
    rows.iter()
        .map(|&r| {
            let mut v = 0u32;
            for (j, &p) in perm.iter().enumerate() {
                if r >> (n - 1 - p as usize) & 1 == 1 {
                    v |= 1 << (n - 1 - j);
                }
            }
            v
        })
        .collect()
}

fn check_classify_params(n: usize, k: usize) -> Result<(), CodeError> {
    if n == 0 || n > CLASSIFY_MAX_N || k == 0 || k > CLASSIFY_MAX_K || k > n {
        return Err(CodeError::InfeasibleClassification { n, k });
    }
    Ok(())
}

fn enumerate_packed(n: usize, k: usize, d: usize) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    let mut pivots = first_combination(k);
    loop {
        let mut cells: Vec<(usize, usize)> = Vec::new();
        for (i, &p) in pivots.iter().enumerate() {
            for j in p + 1..n {
                if !pivots.contains(&j) {
                    cells.push((i, j));
                }
            }
        }
        for mask in 0u64..1 << cells.len() {
            let mut rows: Vec<u32> = pivots.iter().map(|&p| 1u32 << (n - 1 - p)).collect();
            for (c, &(i, j)) in cells.iter().enumerate() {
                if mask >> c & 1 == 1 {
                    rows[i] |= 1 << (n - 1 - j);
                }
            }
            if min_distance_packed(&rows) as usize >= d {
                out.push(rows);
            }
        }
        if !next_combination(&mut pivots, n) {
            break;
        }
    }
    out.sort();
    out
}

/// All [n, k] codes with minimum distance at least `d`, one echelon generator
/// matrix per code, in canonical order.
pub fn enumerate_codes(n: usize, k: usize, d: usize) -> Result<Vec<BinaryCode>, CodeError> {
    check_classify_params(n, k)?;
    enumerate_packed(n, k, d)
        .into_iter()
        .map(|rows| BinaryCode::from_generator(decode_rows(&rows, n)?))
        .collect()
}

/// Classifies all [n, k, ≥d] codes up to coordinate permutation. Each class
/// reports the lexicographically least echelon generator over the whole
/// permutation orbit and the number of distinct codes in the class.
pub fn classify_small(n: usize, k: usize, d: usize) -> Result<Vec<CodeClass>, CodeError> {
    check_classify_params(n, k)?;
    let survivors = enumerate_packed(n, k, d);
    let perms = permutations(n);
    let mut assigned: HashSet<Vec<u32>> = HashSet::new();
    let mut classes = Vec::new();
    for s in &survivors {
        if assigned.contains(s) {
            continue;
        }
        let mut orbit: BTreeSet<Vec<u32>> = BTreeSet::new();
        for perm in &perms {
            let mut im = permute_columns(s, n, perm);
            rref_packed(&mut im, n);
            orbit.insert(im);
        }
        let rep = orbit.first().expect("orbit nonempty").clone();
        let code = BinaryCode::from_generator(decode_rows(&rep, n)?)?;
        let min_distance = code.min_distance()?;
        classes.push(CodeClass {
            code,
            min_distance,
            members: orbit.len() as u64,
        });
        for member in orbit {
            assigned.insert(member);
        }
    }
    classes.sort_by_key(|c| {
        c.code
            .generator()
            .rows()
            .iter()
            .map(|r| encode_row(r, n))
            .collect::<Vec<_>>()
    });
    Ok(classes)
}

/// The lexicographically least echelon form of `gen` over all column
/// permutations: equal outputs characterize permutation-equivalent codes.
pub fn permutation_canonical_form(gen: &BitMatrix) -> Result<BitMatrix, CodeError> {
    let n = gen.width();
    let k = gen.rank();
    check_classify_params(n, k)?;
    let basis = gen.row_basis();
    let rows: Vec<u32> = basis.rows().iter().map(|r| encode_row(r, n)).collect();
    let mut best: Option<Vec<u32>> = None;
    for perm in permutations(n) {
        let mut im = permute_columns(&rows, n, &perm);
        rref_packed(&mut im, n);
        if best.as_ref().is_none_or(|b| im < *b) {
            best = Some(im);
        }
    }
    decode_rows(&best.expect("at least one permutation"), n)
}

/// For a code shaped [2^r − 2, 2^r − 2 − r]: checks that the parity-check
/// columns are distinct nonzero r-bit vectors and returns the unique nonzero
/// vector missing from them. Returns `None` when the shape is wrong or the
/// columns repeat or vanish (equivalently, when the distance is below 3).
pub fn missing_column_certificate(code: &BinaryCode) -> Option<BitVec> {
    let r = code.n() - code.k();
    if r == 0 || r > 16 || code.n() + 2 != 1usize << r {
        return None;
    }
    let par = code.compute_parity_check();
    debug_assert_eq!(par.nrows(), r);
    let mut seen = vec![false; 1 << r];
    for j in 0..code.n() {
        let mut col = 0usize;
        for i in 0..r {
            if par.row(i).get(j) {
                col |= 1 << i;
            }
        }
        if col == 0 || seen[col] {
            return None;
        }
        seen[col] = true;
    }
    let missing = (1..1 << r).find(|&v| !seen[v]).expect("one column short of full");
    let mut v = BitVec::zeros(r).ok()?;
    for i in 0..r {
        if missing >> i & 1 == 1 {
            v.set(i, true);
        }
    }
    Some(v)
}
