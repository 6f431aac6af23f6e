//! The exact covering engine over the syndrome space GF(2^m)²: minimum
//! covering sizes for target tuples, exhaustive no-cover certificates, exact
//! generalized covering radii for small m (with and without symmetry
//! reduction), the relative weight d_r(C, C′) between the double- and
//! single-error-correcting codes, a literal brute-force oracle for it on
//! arbitrary code pairs, and the counting/threshold bounds.

use crate::bch::{build_columns, BchError, ColumnSystem, SyndromePair};
use crate::bitlin::{first_combination, next_combination, BitMatrix, BitVec};
use crate::codes::{BinaryCode, CodeError};
use crate::gf2m::{Felt, FieldSpec};
use crate::util::binomial;
use num_bigint::BigUint;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::collections::HashSet;
use thiserror::Error;

/// Target-count limit for [`min_cover`] and [`certify_no_cover`].
pub const MAX_TARGETS: usize = 6;
/// Field-degree limit for [`min_cover`] and [`certify_no_cover`].
pub const MAX_COVER_DEGREE: u32 = 8;
/// Subset budget for one certification pass.
pub const CERTIFY_WORK_LIMIT: u128 = 100_000_000;
/// Subset budget for one [`min_cover`] level.
pub const MIN_COVER_LEVEL_LIMIT: u128 = 200_000_000;
/// Product budget for [`d_cc_generic`] (coset tuples × coset products).
pub const GENERIC_WORK_LIMIT: u128 = 10_000_000_000;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CoverError {
    #[error("target count {got} outside 1..={limit}")]
    TargetCountOutOfRange { got: usize, limit: usize },
    #[error("degree m={m} exceeds limit {limit} for {what}")]
    DegreeTooLarge { m: u32, limit: u32, what: &'static str },
    #[error("estimated work {estimated} exceeds limit {limit}")]
    WorkLimitExceeded { estimated: u128, limit: u128 },
    #[error("columns span only a rank-{column_rank} subspace; some targets are never coverable")]
    TargetUnreachable { column_rank: usize },
    #[error("exact search for r={r}, m={m} infeasible (about {estimated} tuples)")]
    InfeasibleParameters { r: usize, m: u32, estimated: u128 },
    #[error("rank r={r} outside 1..={max}")]
    RankOutOfRange { r: usize, max: usize },
    #[error("first code is not a subcode of the second")]
    NotASubcode,
    #[error("codes have different lengths: {0} vs {1}")]
    LengthMismatch(usize, usize),
    #[error("dimension gap {gap} smaller than requested rank {r}")]
    DimensionGapTooSmall { gap: usize, r: usize },
    #[error("parameter k={0} out of range for this bound")]
    KOutOfRange(u32),
    #[error(transparent)]
    Code(#[from] CodeError),
    #[error(transparent)]
    Bch(#[from] BchError),
}

/// Incremental GF(2) basis over packed words, highest-set-bit pivots.
#[derive(Clone, Default)]
struct XorBasis {
    rows: Vec<u64>, // distinct leading bits, descending
}

impl XorBasis {
    fn reduce(&self, mut v: u64) -> u64 {
        for &b in &self.rows {
            if v ^ b < v {
                v ^= b;
            }
        }
        v
    }

    /// Returns true when the rank grew.
    fn insert(&mut self, v: u64) -> bool {
        let v = self.reduce(v);
        if v == 0 {
            return false;
        }
        let pos = self.rows.partition_point(|&b| b > v);
        self.rows.insert(pos, v);
        true
    }

    fn contains(&self, v: u64) -> bool {
        self.reduce(v) == 0
    }

    fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Fully reduced rows: a canonical form of the span.
    fn canonical_rows(&self) -> Vec<u64> {
        let mut rows = self.rows.clone();
        for j in 1..rows.len() {
            let lead = 1u64 << (63 - rows[j].leading_zeros());
            for i in 0..j {
                if rows[i] & lead != 0 {
                    rows[i] ^= rows[j];
                }
            }
        }
        rows
    }

    /// All 2^rank span members by Gray-code iteration.
    fn expand(&self) -> Vec<u64> {
        let mut out = Vec::with_capacity(1 << self.rows.len());
        out.push(0);
        let mut cur = 0u64;
        for i in 1u64..1 << self.rows.len() {
            cur ^= self.rows[i.trailing_zeros() as usize];
            out.push(cur);
        }
        out
    }
}

fn packed_targets(cs: &ColumnSystem, targets: &[SyndromePair]) -> Vec<u64> {
    let m = cs.field().m();
    targets.iter().map(|t| t.packed(m)).collect()
}

fn check_cover_inputs(cs: &ColumnSystem, targets: &[SyndromePair]) -> Result<(), CoverError> {
    let m = cs.field().m();
    if m > MAX_COVER_DEGREE {
        return Err(CoverError::DegreeTooLarge {
            m,
            limit: MAX_COVER_DEGREE,
            what: "cover search",
        });
    }
    if targets.is_empty() || targets.len() > MAX_TARGETS {
        return Err(CoverError::TargetCountOutOfRange {
            got: targets.len(),
            limit: MAX_TARGETS,
        });
    }
    Ok(())
}

/// Result of a minimum-cover search: the least subset size, the
/// lexicographically first witness subset at that size, and the number of
/// subsets examined on the way.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MinCover {
    pub t: usize,
    pub witness: Vec<usize>,
    pub subsets_checked: u64,
}

/// The least t such that some t columns span every target, searched upward
/// from the rank of the target set. The all-zero target tuple answers t = 0.
pub fn min_cover(cs: &ColumnSystem, targets: &[SyndromePair]) -> Result<MinCover, CoverError> {
    check_cover_inputs(cs, targets)?;
    let cols = cs.packed_columns();
    let tv = packed_targets(cs, targets);
    if tv.iter().all(|&v| v == 0) {
        return Ok(MinCover {
            t: 0,
            witness: Vec::new(),
            subsets_checked: 0,
        });
    }
    let mut full = XorBasis::default();
    for &c in &cols {
        full.insert(c);
    }
    if tv.iter().any(|&v| !full.contains(v)) {
        return Err(CoverError::TargetUnreachable {
            column_rank: full.rank(),
        });
    }
    let mut target_basis = XorBasis::default();
    for &v in &tv {
        target_basis.insert(v);
    }
    let n = cols.len();
    let mut checked = 0u64;
    for t in target_basis.rank().max(1)..=full.rank() {
        let level = binomial(n as u64, t as u64);
        if level > MIN_COVER_LEVEL_LIMIT {
            return Err(CoverError::WorkLimitExceeded {
                estimated: level,
                limit: MIN_COVER_LEVEL_LIMIT,
            });
        }
        let mut idx = first_combination(t);
        loop {
            checked += 1;
            let mut basis = XorBasis::default();
            for &i in &idx {
                basis.insert(cols[i]);
            }
            if tv.iter().all(|&v| basis.contains(v)) {
                return Ok(MinCover {
                    t,
                    witness: idx,
                    subsets_checked: checked,
                });
            }
            if !next_combination(&mut idx, n) {
                break;
            }
        }
    }
    unreachable!("reachable targets are covered by a column basis")
}

/// Verdict of an exhaustive fixed-size cover search.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Verdict {
    #[serde(rename = "no-cover-at-t")]
    NoCoverAtT,
    #[serde(rename = "covered")]
    Covered,
}

/// An exhaustively established statement about covering a target tuple with
/// t columns: either no t-subset spans all targets (after full enumeration),
/// or a witness subset does.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoverCertificate {
    pub field: FieldSpec,
    pub targets: Vec<SyndromePair>,
    pub t: usize,
    pub verdict: Verdict,
    pub subsets_checked: u64,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub witness: Option<Vec<usize>>,
}

/// Enumerates every t-subset of columns in lexicographic order. Returns a
/// `Covered` certificate at the first spanning subset, or a `NoCoverAtT`
/// certificate whose `subsets_checked` equals C(n, t).
pub fn certify_no_cover(
    cs: &ColumnSystem,
    targets: &[SyndromePair],
    t: usize,
) -> Result<CoverCertificate, CoverError> {
    certify_no_cover_with_progress(cs, targets, t, &mut |_| {})
}

/// As [`certify_no_cover`], reporting the running subset count to `progress`
/// at fixed intervals.
pub fn certify_no_cover_with_progress(
    cs: &ColumnSystem,
    targets: &[SyndromePair],
    t: usize,
    progress: &mut dyn FnMut(u64),
) -> Result<CoverCertificate, CoverError> {
    check_cover_inputs(cs, targets)?;
    let cols = cs.packed_columns();
    let tv = packed_targets(cs, targets);
    let n = cols.len();
    let work = binomial(n as u64, t as u64);
    if work > CERTIFY_WORK_LIMIT {
        return Err(CoverError::WorkLimitExceeded {
            estimated: work,
            limit: CERTIFY_WORK_LIMIT,
        });
    }
    let mut cert = CoverCertificate {
        field: cs.field().clone(),
        targets: targets.to_vec(),
        t,
        verdict: Verdict::NoCoverAtT,
        subsets_checked: 0,
        witness: None,
    };
    if t > n {
        return Ok(cert); // no subsets of that size exist
    }
    const PROGRESS_EVERY: u64 = 1 << 20;
    let mut idx = first_combination(t);
    loop {
        cert.subsets_checked += 1;
        let mut basis = XorBasis::default();
        for &i in &idx {
            basis.insert(cols[i]);
        }
        if tv.iter().all(|&v| basis.contains(v)) {
            cert.verdict = Verdict::Covered;
            cert.witness = Some(idx);
            return Ok(cert);
        }
        if cert.subsets_checked.is_multiple_of(PROGRESS_EVERY) {
            progress(cert.subsets_checked);
        }
        if !next_combination(&mut idx, n) {
            break;
        }
    }
    debug_assert_eq!(u128::from(cert.subsets_checked), work);
    Ok(cert)
}

/// Re-checks a certificate from scratch with the generic bit-matrix span
/// machinery. A `Covered` certificate must name a valid witness subset whose
/// span contains every target; a `NoCoverAtT` certificate is re-established
/// by full re-enumeration and must have counted every subset.
pub fn verify_certificate(cert: &CoverCertificate) -> Result<bool, CoverError> {
    let cs = build_columns(&cert.field)?;
    let m = cert.field.m() as usize;
    let width = 2 * m;
    let n = cs.n();
    let col_vec = |j: usize| BitVec::from_u64(width, cs.columns()[j].packed(m as u32));
    let target_vecs: Vec<BitVec> = cert
        .targets
        .iter()
        .map(|t| BitVec::from_u64(width, t.packed(m as u32)))
        .collect();
    match cert.verdict {
        Verdict::Covered => {
            let Some(witness) = &cert.witness else {
                return Ok(false);
            };
            if witness.len() != cert.t
                || witness.iter().any(|&j| j >= n)
                || witness.windows(2).any(|w| w[0] >= w[1])
            {
                return Ok(false);
            }
            let mat = BitMatrix::from_rows(width, witness.iter().map(|&j| col_vec(j)).collect())
                .map_err(CodeError::from)?;
            for tv in &target_vecs {
                if !mat.in_span(tv).map_err(CodeError::from)? {
                    return Ok(false);
                }
            }
            Ok(true)
        }
        Verdict::NoCoverAtT => {
            let work = binomial(n as u64, cert.t as u64);
            if work > CERTIFY_WORK_LIMIT {
                return Err(CoverError::WorkLimitExceeded {
                    estimated: work,
                    limit: CERTIFY_WORK_LIMIT,
                });
            }
            if u128::from(cert.subsets_checked) != work || cert.witness.is_some() {
                return Ok(false);
            }
            if cert.t > n {
                return Ok(true);
            }
            let mut idx = first_combination(cert.t);
            loop {
                let mat =
                    BitMatrix::from_rows(width, idx.iter().map(|&j| col_vec(j)).collect())
                        .map_err(CodeError::from)?;
                let mut all = true;
                for tv in &target_vecs {
                    if !mat.in_span(tv).map_err(CodeError::from)? {
                        all = false;
                        break;
                    }
                }
                if all {
                    return Ok(false); // a cover exists after all
                }
                if !next_combination(&mut idx, n) {
                    break;
                }
            }
            Ok(true)
        }
    }
}

/// Whether the exact engine reduces the tuple space by the column-preserving
/// symmetries (coordinate scaling with cubed second component, Frobenius,
/// and tuple reordering) before searching.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum Symmetry {
    On,
    Off,
}

/// Output of the exact search: the radius, one tuple attaining it, and the
/// number of tuples (or orbit representatives) examined.
#[derive(Clone, Debug, Serialize)]
pub struct GcrOutcome {
    pub rho: usize,
    pub argmax: Vec<SyndromePair>,
    pub tuples_examined: u64,
}

fn gcr_feasible(r: usize, m: u32) -> bool {
    (1..=3).contains(&r) && (m <= 4 || (m == 5 && r <= 2))
}

/// The exact r-th covering radius of the column system: the maximum of
/// [`min_cover`] over all r-tuples of targets in GF(2^m)².
pub fn gcr_exact(cs: &ColumnSystem, r: usize, symmetry: Symmetry) -> Result<GcrOutcome, CoverError> {
    gcr_exact_with_progress(cs, r, symmetry, &mut |_| {})
}

/// As [`gcr_exact`]; `progress` receives the completed level after each
/// covering level is exhausted.
pub fn gcr_exact_with_progress(
    cs: &ColumnSystem,
    r: usize,
    symmetry: Symmetry,
    progress: &mut dyn FnMut(u64),
) -> Result<GcrOutcome, CoverError> {
    let m = cs.field().m();
    if !gcr_feasible(r, m) {
        let estimated = (1u128 << (2 * m)).pow(r.max(1) as u32);
        return Err(CoverError::InfeasibleParameters { r, m, estimated });
    }
    let cols = cs.packed_columns();
    let mut full = XorBasis::default();
    for &c in &cols {
        full.insert(c);
    }
    if full.rank() != 2 * m as usize {
        return Err(CoverError::TargetUnreachable {
            column_rank: full.rank(),
        });
    }
    match symmetry {
        Symmetry::Off => gcr_marking(cs, r, &cols, progress),
        Symmetry::On => gcr_orbits(cs, r, &cols, progress),
    }
}

/// Exhaustive engine: one bit per r-tuple of packed targets; each covering
/// level marks the r-th power of every fresh independent-subset span.
fn gcr_marking(
    cs: &ColumnSystem,
    r: usize,
    cols: &[u64],
    progress: &mut dyn FnMut(u64),
) -> Result<GcrOutcome, CoverError> {
    let m = cs.field().m();
    let q2 = 1usize << (2 * m);
    let total = q2.pow(r as u32);
    let mut covered = vec![0u64; total.div_ceil(64)];
    covered[0] |= 1; // the all-zero tuple, covered by the empty subset
    let mut remaining = total - 1;
    let n = cols.len();
    let mut first_unmarked = 1usize;
    for t in 1..=2 * m as usize {
        while first_unmarked < total
            && covered[first_unmarked / 64] >> (first_unmarked % 64) & 1 == 1
        {
            first_unmarked += 1;
        }
        let level_witness = first_unmarked;
        let mut seen: HashSet<Vec<u64>> = HashSet::new();
        let mut idx = first_combination(t);
        loop {
            let mut basis = XorBasis::default();
            for &i in &idx {
                basis.insert(cols[i]);
            }
            if basis.rank() == t && seen.insert(basis.canonical_rows()) {
                let members = basis.expand();
                mark_tuples(&members, r, q2, &mut covered, &mut remaining);
                if remaining == 0 {
                    return Ok(GcrOutcome {
                        rho: t,
                        argmax: decode_tuple(level_witness, r, q2, m),
                        tuples_examined: total as u64,
                    });
                }
            }
            if !next_combination(&mut idx, n) {
                break;
            }
        }
        progress(t as u64);
    }
    unreachable!("full-rank columns cover every tuple by level 2m")
}

fn mark_tuples(members: &[u64], r: usize, q2: usize, covered: &mut [u64], remaining: &mut usize) {
    let mut mark = |idx: usize| {
        let (w, b) = (idx / 64, idx % 64);
        if covered[w] >> b & 1 == 0 {
            covered[w] |= 1 << b;
            *remaining -= 1;
        }
    };
    match r {
        1 => {
            for &x in members {
                mark(x as usize);
            }
        }
        2 => {
            for &x in members {
                let xi = x as usize * q2;
                for &y in members {
                    mark(xi + y as usize);
                }
            }
        }
        3 => {
            for &x in members {
                let xi = x as usize * q2;
                for &y in members {
                    let xyi = (xi + y as usize) * q2;
                    for &z in members {
                        mark(xyi + z as usize);
                    }
                }
            }
        }
        _ => unreachable!("r limited to 3"),
    }
}

fn decode_tuple(mut idx: usize, r: usize, q2: usize, m: u32) -> Vec<SyndromePair> {
    let mut vals = vec![0u64; r];
    for slot in (0..r).rev() {
        vals[slot] = (idx % q2) as u64;
        idx /= q2;
    }
    vals.into_iter()
        .map(|v| SyndromePair::from_packed(m, v))
        .collect()
}

/// Symmetry-reduced engine: enumerates one sorted representative per orbit
/// of the scaling/Frobenius/reordering group, then finds each
/// representative's covering level by sweeping span bitmaps level by level.
fn gcr_orbits(
    cs: &ColumnSystem,
    r: usize,
    cols: &[u64],
    progress: &mut dyn FnMut(u64),
) -> Result<GcrOutcome, CoverError> {
    let f = cs.field();
    let m = f.m();
    let q2 = 1usize << (2 * m);
    // Tables for (a, b) -> (lambda * a^(2^j), lambda^3 * b^(2^j)), each of
    // which permutes the column set.
    let mut frob: Vec<Vec<Felt>> = vec![f.all_elements().collect()];
    for j in 1..m as usize {
        let prev = &frob[j - 1];
        frob.push(prev.iter().map(|&a| f.frobenius(a)).collect());
    }
    let low_mask = (1usize << m) - 1;
    let mut tables: Vec<Vec<u16>> = Vec::new();
    for lambda in f.nonzero_elements() {
        let lambda3 = f.cube(lambda);
        for fr in &frob {
            let mut table = vec![0u16; q2];
            for (v, entry) in table.iter_mut().enumerate() {
                let a = fr[v & low_mask];
                let b = fr[v >> m];
                *entry = (f.mul(lambda, a).0 | f.mul(lambda3, b).0 << m) as u16;
            }
            tables.push(table);
        }
    }
    // Orbit representatives: sorted tuples minimal within their orbit.
    let reps: Vec<Vec<u16>> = (0..q2 as u16)
        .into_par_iter()
        .flat_map_iter(|v1| {
            let tables = &tables;
            sorted_tuples_from(v1, q2 as u16, r).filter(move |tup| {
                let mut mapped = vec![0u16; tup.len()];
                for table in tables {
                    for (dst, &v) in mapped.iter_mut().zip(tup.iter()) {
                        *dst = table[v as usize];
                    }
                    mapped.sort_unstable();
                    if mapped < *tup {
                        return false;
                    }
                }
                true
            })
        })
        .collect();
    let tuples_examined = reps.len() as u64;

    let n = cols.len();
    let words = q2.div_ceil(64);
    let mut uncovered: Vec<&[u16]> = reps.iter().map(|t| t.as_slice()).collect();
    // The all-zero tuple is the orbit representative covered at level 0.
    uncovered.retain(|t| t.iter().any(|&v| v != 0));
    let mut last_survivor: Vec<u16>;
    for t in 1..=2 * m as usize {
        if uncovered.is_empty() {
            break;
        }
        last_survivor = uncovered[0].to_vec();
        let mut idx = first_combination(t);
        'subsets: loop {
            let mut basis = XorBasis::default();
            for &i in &idx {
                basis.insert(cols[i]);
            }
            if basis.rank() == t {
                let mut bitmap = vec![0u64; words];
                let mut cur = 0u64;
                bitmap[0] |= 1;
                for g in 1u64..1 << t {
                    cur ^= basis.rows[g.trailing_zeros() as usize];
                    bitmap[(cur / 64) as usize] |= 1 << (cur % 64);
                }
                uncovered.retain(|tup| {
                    !tup.iter()
                        .all(|&v| bitmap[v as usize / 64] >> (v % 64) & 1 == 1)
                });
                if uncovered.is_empty() {
                    break 'subsets;
                }
            }
            if !next_combination(&mut idx, n) {
                break;
            }
        }
        progress(t as u64);
        if uncovered.is_empty() {
            return Ok(GcrOutcome {
                rho: t,
                argmax: last_survivor
                    .iter()
                    .map(|&v| SyndromePair::from_packed(m, u64::from(v)))
                    .collect(),
                tuples_examined,
            });
        }
    }
    unreachable!("full-rank columns cover every representative by level 2m")
}

/// Sorted tuples (v1 ≤ v2 ≤ … ≤ vr) with the given first coordinate.
fn sorted_tuples_from(v1: u16, q2: u16, r: usize) -> impl Iterator<Item = Vec<u16>> {
    let mut cur: Vec<u16> = vec![v1; r];
    let mut done = false;
    std::iter::from_fn(move || {
        if done {
            return None;
        }
        let out = cur.clone();
        // Odometer over positions 1..r, each coordinate ≥ its predecessor.
        let mut pos = r;
        loop {
            if pos == 1 {
                done = true;
                break;
            }
            pos -= 1;
            if cur[pos] + 1 < q2 {
                cur[pos] += 1;
                for p in pos + 1..r {
                    cur[p] = cur[pos];
                }
                break;
            }
        }
        if r == 1 {
            done = true;
        }
        Some(out)
    })
}

/// Output of the relative-weight search: the value, one first-coordinate
/// tuple attaining it, and the number of orbit representatives examined.
#[derive(Clone, Debug, Serialize)]
pub struct DccOutcome {
    pub value: usize,
    pub witness: Vec<Felt>,
    pub tuples_examined: u64,
}

/// d_r between the double-corrector and its single-corrector supercode:
/// the maximum of [`min_cover`] on targets {(0, α_i)} over all
/// F_2-independent r-tuples (α_1, …, α_r) of nonzero field elements.
/// Tuples are reduced by cube-scaling, Frobenius, and reordering, all of
/// which preserve both independence and covering level.
pub fn d_cc(cs: &ColumnSystem, r: usize) -> Result<DccOutcome, CoverError> {
    let f = cs.field();
    let m = f.m();
    if m > 5 {
        return Err(CoverError::DegreeTooLarge {
            m,
            limit: 5,
            what: "relative-weight search",
        });
    }
    if r == 0 || r > 4 {
        return Err(CoverError::RankOutOfRange { r, max: 4 });
    }
    if r > m as usize {
        return Err(CoverError::DimensionGapTooSmall {
            gap: m as usize,
            r,
        });
    }
    let q = 1usize << m;
    // Cube values: the image of cubing on nonzero elements.
    let mut cubes: Vec<Felt> = f.nonzero_elements().map(|x| f.cube(x)).collect();
    cubes.sort_unstable();
    cubes.dedup();
    let mut frob: Vec<Vec<Felt>> = vec![f.all_elements().collect()];
    for j in 1..m as usize {
        let prev = &frob[j - 1];
        frob.push(prev.iter().map(|&a| f.frobenius(a)).collect());
    }
    let mut tables: Vec<Vec<u16>> = Vec::new();
    for &c in &cubes {
        for fr in &frob {
            tables.push((0..q).map(|v| f.mul(c, fr[v]).0 as u16).collect());
        }
    }
    // Independent sorted tuples that are minimal in their orbit.
    let mut reps: Vec<Vec<u16>> = Vec::new();
    let mut tup: Vec<u16> = (0..r as u16).collect(); // placeholder sizes
    fn descend(
        tup: &mut Vec<u16>,
        depth: usize,
        r: usize,
        q: usize,
        reps: &mut Vec<Vec<u16>>,
        tables: &[Vec<u16>],
    ) {
        if depth == r {
            let mut basis = XorBasis::default();
            if !tup.iter().all(|&v| basis.insert(u64::from(v))) {
                return;
            }
            let mut mapped = vec![0u16; r];
            for table in tables {
                for (dst, &v) in mapped.iter_mut().zip(tup.iter()) {
                    *dst = table[v as usize];
                }
                mapped.sort_unstable();
                if mapped < *tup {
                    return;
                }
            }
            reps.push(tup.clone());
            return;
        }
        let lo = if depth == 0 { 1 } else { tup[depth - 1] as usize + 1 };
        for v in lo..q {
            tup[depth] = v as u16;
            descend(tup, depth + 1, r, q, reps, tables);
        }
    }
    descend(&mut tup, 0, r, q, &mut reps, &tables);
    let tuples_examined = reps.len() as u64;

    // Sweep covering levels with the β-sections of independent-subset spans:
    // for a subset S, the set {β : (0, β) ∈ span S} as a bitmask over F_2^m.
    // Repacking (a, b) as (a << m) | b makes that section the low-value rows
    // of the echelon basis.
    let cols: Vec<u64> = cs
        .columns()
        .iter()
        .map(|c| c.a.0 << m | c.b.0)
        .collect();
    let n = cols.len();
    let mut full = XorBasis::default();
    for &c in &cols {
        full.insert(c);
    }
    if full.rank() != 2 * m as usize {
        return Err(CoverError::TargetUnreachable {
            column_rank: full.rank(),
        });
    }
    let mut uncovered: Vec<&[u16]> = reps.iter().map(|t| t.as_slice()).collect();
    let mut last_survivor: Vec<u16>;
    for t in r..=2 * m as usize {
        if uncovered.is_empty() {
            break;
        }
        last_survivor = uncovered[0].to_vec();
        let mut masks_seen: HashSet<u32> = HashSet::new();
        let mut idx = first_combination(t);
        'subsets: loop {
            let mut basis = XorBasis::default();
            for &i in &idx {
                basis.insert(cols[i]);
            }
            if basis.rank() == t {
                let beta_rows: Vec<u64> = basis
                    .rows
                    .iter()
                    .copied()
                    .filter(|&v| v < 1u64 << m)
                    .collect();
                let mut mask = 1u32; // β = 0
                let mut cur = 0u64;
                for g in 1u64..1 << beta_rows.len() {
                    cur ^= beta_rows[g.trailing_zeros() as usize];
                    mask |= 1 << cur;
                }
                if masks_seen.insert(mask) {
                    uncovered.retain(|tup| !tup.iter().all(|&v| mask >> v & 1 == 1));
                    if uncovered.is_empty() {
                        break 'subsets;
                    }
                }
            }
            if !next_combination(&mut idx, n) {
                break;
            }
        }
        if uncovered.is_empty() {
            return Ok(DccOutcome {
                value: t,
                witness: last_survivor.iter().map(|&v| Felt(u64::from(v))).collect(),
                tuples_examined,
            });
        }
    }
    unreachable!("full-rank columns cover every second-component tuple by level 2m")
}

/// Literal brute-force evaluation of d_r(C, C′) for an arbitrary nested code
/// pair: maximize over supercode tuples independent modulo the subcode,
/// minimize the union support over all subcode translates.
pub fn d_cc_generic(sub: &BinaryCode, sup: &BinaryCode, r: usize) -> Result<usize, CoverError> {
    if sub.n() != sup.n() {
        return Err(CoverError::LengthMismatch(sub.n(), sup.n()));
    }
    let n = sub.n();
    if n > 16 {
        return Err(CoverError::DegreeTooLarge {
            m: n as u32,
            limit: 16,
            what: "generic relative weight",
        });
    }
    if sup.k() > 12 {
        return Err(CoverError::DegreeTooLarge {
            m: sup.k() as u32,
            limit: 12,
            what: "generic relative weight",
        });
    }
    let gap = sup.k().saturating_sub(sub.k());
    if r == 0 || r > gap {
        return Err(CoverError::DimensionGapTooSmall { gap, r });
    }
    // Subcode containment, and a quotient basis of sup modulo sub.
    let mut ech = XorBasis::default();
    let sub_rows: Vec<u64> = sub.generator().rows().iter().map(|v| v.as_u64()).collect();
    for &row in &sub_rows {
        ech.insert(row);
    }
    let mut quotient: Vec<u64> = Vec::new();
    for row in sup.generator().rows() {
        if ech.insert(row.as_u64()) {
            quotient.push(row.as_u64());
        }
    }
    if quotient.len() != gap {
        return Err(CoverError::NotASubcode);
    }
    // All subcode words.
    let mut sub_words = vec![0u64; 1 << sub.k()];
    for msg in 1usize..1 << sub.k() {
        let low = msg.trailing_zeros() as usize;
        sub_words[msg] = sub_words[msg ^ (1 << low)] ^ sub_rows[low];
    }
    let coset_rep = |u: usize| -> u64 {
        let mut w = 0u64;
        let mut bits = u;
        while bits != 0 {
            w ^= quotient[bits.trailing_zeros() as usize];
            bits &= bits - 1;
        }
        w
    };
    // Work estimate before any enumeration: tuples × coset products.
    let qn = (1usize << gap) - 1;
    let shift = sub.k() * r;
    let work = if shift >= 100 {
        u128::MAX
    } else {
        binomial(qn as u64, r as u64).saturating_mul(1u128 << shift)
    };
    if work > GENERIC_WORK_LIMIT {
        return Err(CoverError::WorkLimitExceeded {
            estimated: work,
            limit: GENERIC_WORK_LIMIT,
        });
    }
    // Independent r-subsets of nonzero quotient vectors.
    let mut tuples: Vec<Vec<usize>> = Vec::new();
    let mut idx = first_combination(r);
    loop {
        let us: Vec<usize> = idx.iter().map(|&i| i + 1).collect();
        let mut basis = XorBasis::default();
        if us.iter().all(|&u| basis.insert(u as u64)) {
            tuples.push(us);
        }
        if !next_combination(&mut idx, qn) {
            break;
        }
    }
    let best = tuples
        .par_iter()
        .map(|us| {
            let reps: Vec<u64> = us.iter().map(|&u| coset_rep(u)).collect();
            let mut min = usize::MAX;
            // Depth-first product over coset members with union-support pruning.
            fn go(
                depth: usize,
                acc: u64,
                reps: &[u64],
                sub_words: &[u64],
                min: &mut usize,
            ) {
                if (acc.count_ones() as usize) >= *min {
                    return;
                }
                if depth == reps.len() {
                    *min = acc.count_ones() as usize;
                    return;
                }
                for &w in sub_words {
                    go(depth + 1, acc | (reps[depth] ^ w), reps, sub_words, min);
                }
            }
            go(0, 0, &reps, &sub_words, &mut min);
            min
        })
        .reduce(|| 0, usize::max);
    Ok(best)
}

/// The family a bound report belongs to.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum BoundKind {
    Supercode,
    Counting,
    Threshold,
}

/// A checked bound instance: the parameter it concerns, whether its
/// hypothesis held, and the bound value when it did.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundReport {
    pub kind: BoundKind,
    #[serde(rename = "k")]
    pub k_or_r: u64,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub m: Option<u32>,
    pub bound: Option<u64>,
    pub hypothesis_holds: bool,
}

/// Lower bound via a supercode: when the dimension gap is at least r, the
/// r-th covering radius of the subcode is at least the supercode's r-th
/// generalized Hamming weight.
pub fn supercode_bound(r: usize, dims: (usize, usize), ghw_of_sup: usize) -> BoundReport {
    let holds = dims.1.saturating_sub(dims.0) >= r;
    BoundReport {
        kind: BoundKind::Supercode,
        k_or_r: r as u64,
        m: None,
        bound: holds.then_some(ghw_of_sup as u64),
        hypothesis_holds: holds,
    }
}

/// Counting lower bound: when 2^m · (2k−1)! ≥ 2^{k(2k−1)} (checked in exact
/// big-integer arithmetic), the k-th covering radius is at least 2k.
pub fn counting_bound(k: u32, m: u32) -> Result<BoundReport, CoverError> {
    if k == 0 {
        return Err(CoverError::KOutOfRange(k));
    }
    let mut factorial = BigUint::from(1u32);
    for i in 2..=u64::from(2 * k - 1) {
        factorial *= i;
    }
    let lhs = (BigUint::from(1u32) << m) * factorial;
    let rhs = BigUint::from(1u32) << (k * (2 * k - 1));
    let holds = lhs >= rhs;
    Ok(BoundReport {
        kind: BoundKind::Counting,
        k_or_r: u64::from(k),
        m: Some(m),
        bound: holds.then_some(u64::from(2 * k)),
        hypothesis_holds: holds,
    })
}

/// The smallest degree m at which the constructive 2k+1 cover is guaranteed:
/// the least m with 2^m ≥ ((k−1)·2^{k+1} + 3)², in exact integer arithmetic.
pub fn threshold_upper(k: u32) -> Result<u32, CoverError> {
    if k < 2 {
        return Err(CoverError::KOutOfRange(k));
    }
    let b = (BigUint::from(k - 1) << (k + 1)) + 3u32;
    let b2 = &b * &b;
    // Smallest m with 2^m ≥ b²  ⇔  m = bit-length of b² − 1.
    let m = (b2 - 1u32).bits();
    Ok(m as u32)
}

/// [`threshold_upper`] packaged as a report: at the returned degree the k-th
/// covering radius is at most 2k + 1.
pub fn threshold_report(k: u32) -> Result<BoundReport, CoverError> {
    let m = threshold_upper(k)?;
    Ok(BoundReport {
        kind: BoundKind::Threshold,
        k_or_r: u64::from(k),
        m: Some(m),
        bound: Some(u64::from(2 * k + 1)),
        hypothesis_holds: true,
    })
}
