//! The explicit small-cover construction: one shared column x plus a solved
//! quadratic pair (y_i, z_i) per target writes any k syndrome targets as
//! GF(2)-combinations of at most 2k + 1 columns. An exact solution counter
//! and a closed-form lower bound quantify how many choices of x work.

use crate::bch::{ColumnSystem, SyndromePair};
use crate::bitlin::{BitMatrix, BitVec, LinError};
use crate::gf2m::Felt;
use crate::util::isqrt;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha20Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Target-count limit for the constructive cover.
pub const MAX_CONSTRUCT_TARGETS: usize = 6;
/// Degree limit for exact solution counting.
pub const MAX_COUNT_DEGREE: u32 = 14;
/// Target-count limit for exact solution counting.
pub const MAX_COUNT_TARGETS: usize = 4;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ConstructError {
    #[error("target count {got} outside 1..={limit}")]
    TargetCountOutOfRange { got: usize, limit: usize },
    #[error("degree m={m} exceeds limit {limit} for {what}")]
    DegreeTooLarge { m: u32, limit: u32, what: &'static str },
    #[error(transparent)]
    Lin(#[from] LinError),
}

/// Candidate order for the shared column x.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum ScanOrder {
    /// Increasing powers of the field generator.
    Sequential,
    /// A seeded shuffle of the sequential order.
    Randomized { seed: u64 },
}

/// A constructed cover: the shared column, the per-target quadratic roots,
/// the deduplicated nonzero column values in first-use order, and one 0/1
/// combination row per target over those columns.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoverSolution {
    pub x: Felt,
    pub ys: Vec<Felt>,
    pub zs: Vec<Felt>,
    pub columns: Vec<Felt>,
    pub coefficients: Vec<Vec<u8>>,
}

fn check_targets(targets: &[SyndromePair], limit: usize) -> Result<(), ConstructError> {
    if targets.is_empty() || targets.len() > limit {
        return Err(ConstructError::TargetCountOutOfRange {
            got: targets.len(),
            limit,
        });
    }
    Ok(())
}

/// The quadratic residue c(x) = (a·x² + a²·x + a³ + b) / (a + x)³ whose
/// trace decides solvability; requires x ≠ a.
fn residue(cs: &ColumnSystem, t: &SyndromePair, x: Felt) -> Felt {
    let f = cs.field();
    let s = f.add(t.a, x);
    let num = f.add(
        f.add(f.mul(t.a, f.mul(x, x)), f.mul(f.mul(t.a, t.a), x)),
        f.add(f.cube(t.a), t.b),
    );
    let inv = f.inv(f.cube(s)).expect("x must differ from the target's first component");
    f.mul(num, inv)
}

/// Scans candidates x ∉ {a_1, …, a_k, 0} in the requested order and accepts
/// the first x whose residues all have trace zero. For each target, y_i is
/// (a_i + x) times the smaller root of w² + w = c_i(x), and z_i closes the
/// triple x + y_i + z_i = a_i. Returns None when no candidate is accepted.
pub fn cover_2kplus1(
    cs: &ColumnSystem,
    targets: &[SyndromePair],
    order: ScanOrder,
) -> Result<Option<CoverSolution>, ConstructError> {
    check_targets(targets, MAX_CONSTRUCT_TARGETS)?;
    let f = cs.field();
    if targets.iter().all(|t| t.is_zero()) {
        return Ok(Some(CoverSolution {
            x: Felt::ZERO,
            ys: vec![Felt::ZERO; targets.len()],
            zs: vec![Felt::ZERO; targets.len()],
            columns: Vec::new(),
            coefficients: vec![Vec::new(); targets.len()],
        }));
    }
    let excluded: Vec<Felt> = targets.iter().map(|t| t.a).collect();
    let mut candidates = Vec::with_capacity(cs.n());
    let mut x = Felt::ONE;
    for _ in 0..f.units() {
        if !excluded.contains(&x) {
            candidates.push(x);
        }
        x = f.mul(x, f.generator());
    }
    if let ScanOrder::Randomized { seed } = order {
        let mut rng = ChaCha20Rng::seed_from_u64(seed);
        candidates.shuffle(&mut rng);
    }
    'scan: for &x in &candidates {
        let mut ys = Vec::with_capacity(targets.len());
        for t in targets {
            match f.solve_artin_schreier(residue(cs, t, x)) {
                Some((w_min, _)) => ys.push(f.mul(f.add(t.a, x), w_min)),
                None => continue 'scan,
            }
        }
        let zs: Vec<Felt> = targets
            .iter()
            .zip(&ys)
            .map(|(t, &y)| f.add(f.add(t.a, x), y))
            .collect();
        return Ok(Some(assemble(x, ys, zs)));
    }
    Ok(None)
}

/// Deduplicates the nonzero values among x, y_1, z_1, y_2, z_2, … in first
/// appearance order and derives each target's parity row over them.
fn assemble(x: Felt, ys: Vec<Felt>, zs: Vec<Felt>) -> CoverSolution {
    fn push(columns: &mut Vec<Felt>, v: Felt) {
        if !v.is_zero() && !columns.contains(&v) {
            columns.push(v);
        }
    }
    let mut columns = Vec::new();
    push(&mut columns, x);
    for (&y, &z) in ys.iter().zip(&zs) {
        push(&mut columns, y);
        push(&mut columns, z);
    }
    let coefficients = ys
        .iter()
        .zip(&zs)
        .map(|(&y, &z)| {
            let mut row = vec![0u8; columns.len()];
            for v in [x, y, z] {
                if !v.is_zero() {
                    let j = columns.iter().position(|&c| c == v).unwrap();
                    row[j] ^= 1;
                }
            }
            row
        })
        .collect();
    CoverSolution {
        x,
        ys,
        zs,
        columns,
        coefficients,
    }
}

/// Checks a solution end to end: root structure (z_i = a_i + x + y_i and the
/// cube equation), parity rows matching the multiset {x, y_i, z_i}, at most
/// 2k + 1 distinct nonzero columns, and each target reproduced both by its
/// combination row and by an independent span-membership pass.
pub fn verify_solution(
    cs: &ColumnSystem,
    targets: &[SyndromePair],
    sol: &CoverSolution,
) -> Result<bool, ConstructError> {
    let f = cs.field();
    let m = f.m();
    let width = 2 * m as usize;
    let k = targets.len();
    if sol.ys.len() != k || sol.zs.len() != k || sol.coefficients.len() != k {
        return Ok(false);
    }
    if sol.columns.len() > 2 * k + 1 {
        return Ok(false);
    }
    for (i, c) in sol.columns.iter().enumerate() {
        if c.is_zero() || c.0 >= f.order() || sol.columns[..i].contains(c) {
            return Ok(false);
        }
    }
    for (t, (&y, &z)) in targets.iter().zip(sol.ys.iter().zip(&sol.zs)) {
        if f.add(f.add(t.a, sol.x), y) != z {
            return Ok(false);
        }
        if f.add(f.add(f.cube(sol.x), f.cube(y)), f.cube(z)) != t.b {
            return Ok(false);
        }
    }
    let col_vecs: Vec<BitVec> = sol
        .columns
        .iter()
        .map(|&v| BitVec::from_u64(width, SyndromePair::new(v, f.cube(v)).packed(m)))
        .collect();
    let mat = BitMatrix::from_rows(width, col_vecs.clone())?;
    for (i, (t, row)) in targets.iter().zip(&sol.coefficients).enumerate() {
        if row.len() != sol.columns.len() || row.iter().any(|&b| b > 1) {
            return Ok(false);
        }
        // The row must be the parity of {x, y_i, z_i} over the column list.
        let mut expected = vec![0u8; sol.columns.len()];
        for v in [sol.x, sol.ys[i], sol.zs[i]] {
            if !v.is_zero() {
                match sol.columns.iter().position(|&c| c == v) {
                    Some(j) => expected[j] ^= 1,
                    None => return Ok(false),
                }
            }
        }
        if *row != expected {
            return Ok(false);
        }
        let mut acc = BitVec::zeros(width)?;
        for (j, &bit) in row.iter().enumerate() {
            if bit == 1 {
                acc.xor_assign(&col_vecs[j]);
            }
        }
        let tv = BitVec::from_u64(width, t.packed(m));
        if acc != tv || !mat.in_span(&tv)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// The exact number of solutions (x, y_1, …, y_k) of the full system: for
/// x = a_i the i-th factor is q when b_i = a_i³ and 0 otherwise; elsewhere
/// each solvable quadratic contributes its two roots.
pub fn count_solutions(
    cs: &ColumnSystem,
    targets: &[SyndromePair],
) -> Result<u64, ConstructError> {
    check_targets(targets, MAX_COUNT_TARGETS)?;
    let f = cs.field();
    if f.m() > MAX_COUNT_DEGREE {
        return Err(ConstructError::DegreeTooLarge {
            m: f.m(),
            limit: MAX_COUNT_DEGREE,
            what: "solution counting",
        });
    }
    let q = f.order();
    let mut total = 0u64;
    for bits in 0..q {
        let x = Felt(bits);
        let mut prod = 1u64;
        for t in targets {
            let factor = if t.a == x {
                if t.b == f.cube(t.a) {
                    q
                } else {
                    0
                }
            } else if f.trace(residue(cs, t, x)) == 0 {
                2
            } else {
                0
            };
            prod *= factor;
            if prod == 0 {
                break;
            }
        }
        total += prod;
    }
    Ok(total)
}

/// Closed-form lower bound on [`count_solutions`] for any k targets at
/// degree m: q − k·2^k − ⌊2B√q⌋ with B = (k−1)·2^k + 1. May be negative
/// (vacuous) at small m; an integer count meets the underlying real bound
/// exactly when it meets this value.
pub fn solution_count_lower_bound(m: u32, k: u32) -> Result<i128, ConstructError> {
    if k == 0 || k as usize > MAX_CONSTRUCT_TARGETS {
        return Err(ConstructError::TargetCountOutOfRange {
            got: k as usize,
            limit: MAX_CONSTRUCT_TARGETS,
        });
    }
    if m > 64 {
        return Err(ConstructError::DegreeTooLarge {
            m,
            limit: 64,
            what: "solution lower bound",
        });
    }
    let q = 1i128 << m;
    let b = i128::from(k - 1) * (1i128 << k) + 1;
    Ok(q - i128::from(k) * (1i128 << k) - isqrt((4 * b * b * q) as u128) as i128)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bch::build_columns;
    use crate::cover::min_cover;
    use crate::gf2m::FieldSpec;

    fn system(m: u32) -> ColumnSystem {
        build_columns(&FieldSpec::new(m, None).unwrap()).unwrap()
    }

    fn pair(a: u64, b: u64) -> SyndromePair {
        SyndromePair::new(Felt(a), Felt(b))
    }

    #[test]
    fn cube_sum_residual_identity() {
        // x³ + y³ + (a+x+y)³ = (a+x)y² + (a²+x²)y + ax² + a²x + a³.
        let check = |f: &FieldSpec, a: Felt, x: Felt, y: Felt| {
            let lhs = f.add(
                f.add(f.cube(x), f.cube(y)),
                f.cube(f.add(f.add(a, x), y)),
            );
            let rhs = f.add(
                f.add(f.mul(f.add(a, x), f.mul(y, y)), f.mul(f.add(f.mul(a, a), f.mul(x, x)), y)),
                f.add(
                    f.add(f.mul(a, f.mul(x, x)), f.mul(f.mul(a, a), x)),
                    f.cube(a),
                ),
            );
            assert_eq!(lhs, rhs, "a={a:?} x={x:?} y={y:?}");
        };
        let f4 = FieldSpec::new(4, None).unwrap();
        for a in f4.all_elements() {
            for x in f4.all_elements() {
                for y in f4.all_elements() {
                    check(&f4, a, x, y);
                }
            }
        }
        for m in [9u32, 12] {
            let f = FieldSpec::new(m, None).unwrap();
            let mut state = 0x243f6a8885a308d3u64 ^ u64::from(m);
            for _ in 0..200 {
                let mut draw = || {
                    state = state
                        .wrapping_mul(6364136223846793005)
                        .wrapping_add(1442695040888963407);
                    Felt(state >> (64 - m))
                };
                let (a, x, y) = (draw(), draw(), draw());
                check(&f, a, x, y);
            }
        }
    }

    #[test]
    fn trace_acceptance_matches_brute_solvability() {
        for m in [3u32, 4, 5] {
            let cs = system(m);
            let f = cs.field().clone();
            let q = f.order();
            for a in 0..q {
                for b in 0..q {
                    let t = pair(a, b);
                    for xb in 0..q {
                        let x = Felt(xb);
                        if x == t.a {
                            continue;
                        }
                        let accepted = f.trace(residue(&cs, &t, x)) == 0;
                        let solvable = (0..q).any(|yb| {
                            let y = Felt(yb);
                            let z = f.add(f.add(t.a, x), y);
                            f.add(f.add(f.cube(x), f.cube(y)), f.cube(z)) == t.b
                        });
                        assert_eq!(accepted, solvable, "m={m} a={a:#x} b={b:#x} x={xb:#x}");
                    }
                }
            }
        }
    }

    #[test]
    fn count_matches_brute_force_single_target() {
        let cs = system(3);
        let f = cs.field().clone();
        for a in 0..8u64 {
            for b in 0..8u64 {
                let t = pair(a, b);
                let brute = (0..8u64)
                    .flat_map(|x| (0..8u64).map(move |y| (x, y)))
                    .filter(|&(x, y)| {
                        let (x, y) = (Felt(x), Felt(y));
                        let z = f.add(f.add(t.a, x), y);
                        f.add(f.add(f.cube(x), f.cube(y)), f.cube(z)) == t.b
                    })
                    .count() as u64;
                assert_eq!(count_solutions(&cs, &[t]).unwrap(), brute, "a={a} b={b}");
            }
        }
        assert_eq!(count_solutions(&cs, &[pair(0, 0)]).unwrap(), 22);
        assert_eq!(count_solutions(&system(4), &[pair(0, 0)]).unwrap(), 46);
    }

    #[test]
    fn count_matches_brute_force_two_targets() {
        let cs = system(3);
        let f = cs.field().clone();
        let q = 8u64;
        let mut state = 0x13198a2e03707344u64;
        for _ in 0..60 {
            let mut draw = || {
                state = state
                    .wrapping_mul(6364136223846793005)
                    .wrapping_add(1442695040888963407);
                state >> 61
            };
            let ts = [pair(draw(), draw()), pair(draw(), draw())];
            let mut brute = 0u64;
            for x in 0..q {
                let x = Felt(x);
                let per_target = |t: &SyndromePair| {
                    (0..q)
                        .filter(|&yb| {
                            let y = Felt(yb);
                            let z = f.add(f.add(t.a, x), y);
                            f.add(f.add(f.cube(x), f.cube(y)), f.cube(z)) == t.b
                        })
                        .count() as u64
                };
                brute += per_target(&ts[0]) * per_target(&ts[1]);
            }
            assert_eq!(count_solutions(&cs, &ts).unwrap(), brute, "{ts:?}");
        }
    }

    #[test]
    fn count_extremes_match_closed_form_bound() {
        let cs = system(4);
        let mut counts = Vec::new();
        for a in 0..16u64 {
            for b in 0..16u64 {
                counts.push(count_solutions(&cs, &[pair(a, b)]).unwrap());
            }
        }
        let min = *counts.iter().min().unwrap();
        let max = *counts.iter().max().unwrap();
        assert_eq!(min, 6);
        assert_eq!(max, 46);
        assert_eq!(solution_count_lower_bound(4, 1).unwrap(), 6);
        // Every target meets the bound wherever it is non-vacuous.
        for m in [3u32, 4, 5] {
            let cs = system(m);
            let bound = solution_count_lower_bound(m, 1).unwrap();
            for a in 0..cs.field().order() {
                for b in 0..cs.field().order() {
                    let c = count_solutions(&cs, &[pair(a, b)]).unwrap();
                    assert!(i128::from(c) >= bound, "m={m} a={a:#x} b={b:#x}: {c} < {bound}");
                }
            }
        }
        assert_eq!(solution_count_lower_bound(7, 2).unwrap(), 7);
        assert!(solution_count_lower_bound(3, 2).unwrap() < 0);
    }

    #[test]
    fn pair_counts_meet_bound_at_degree_seven() {
        let cs = system(7);
        let bound = solution_count_lower_bound(7, 2).unwrap();
        assert_eq!(bound, 7);
        let mut state = 0xa4093822299f31d0u64;
        for _ in 0..300 {
            let mut draw = || {
                state = state
                    .wrapping_mul(6364136223846793005)
                    .wrapping_add(1442695040888963407);
                state >> 57
            };
            let ts = [pair(draw(), draw()), pair(draw(), draw())];
            let c = count_solutions(&cs, &ts).unwrap();
            assert!(i128::from(c) >= bound, "{ts:?}: {c} < {bound}");
        }
    }

    #[test]
    fn sequential_construction_round_trip() {
        let cs = system(4);
        let targets = [pair(0, 1)];
        let sol = cover_2kplus1(&cs, &targets, ScanOrder::Sequential)
            .unwrap()
            .unwrap();
        assert!(verify_solution(&cs, &targets, &sol).unwrap());
        assert_eq!(sol.columns.len(), 3);
        assert_eq!(sol.coefficients, vec![vec![1, 1, 1]]);
        // Deterministic re-run and serde round trip.
        let again = cover_2kplus1(&cs, &targets, ScanOrder::Sequential)
            .unwrap()
            .unwrap();
        assert_eq!(again, sol);
        let json = serde_json::to_string(&sol).unwrap();
        let back: CoverSolution = serde_json::from_str(&json).unwrap();
        assert_eq!(back, sol);
        assert!(verify_solution(&cs, &targets, &back).unwrap());
    }

    #[test]
    fn construction_covers_pairs_at_degree_seven() {
        let cs = system(7);
        let targets = [pair(0x03, 0x11), pair(0x25, 0x0f)];
        for order in [ScanOrder::Sequential, ScanOrder::Randomized { seed: 1 }] {
            let sol = cover_2kplus1(&cs, &targets, order).unwrap().unwrap();
            assert!(verify_solution(&cs, &targets, &sol).unwrap());
            assert!(sol.columns.len() <= 5);
        }
        // Same seed, same solution.
        let a = cover_2kplus1(&cs, &targets, ScanOrder::Randomized { seed: 9 }).unwrap();
        let b = cover_2kplus1(&cs, &targets, ScanOrder::Randomized { seed: 9 }).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn narrow_field_rejects_every_candidate() {
        // In GF(4) every nonzero cube is 1, so (0, ω) has residue ω with
        // trace 1 at every x: the scan must come up empty.
        let cs = system(2);
        assert_eq!(
            cover_2kplus1(&cs, &[pair(0, 2)], ScanOrder::Sequential).unwrap(),
            None
        );
    }

    #[test]
    fn tampered_solutions_fail_verification() {
        let cs = system(4);
        let targets = [pair(0, 1)];
        let sol = cover_2kplus1(&cs, &targets, ScanOrder::Sequential)
            .unwrap()
            .unwrap();
        // The target needs three columns, so every truncation must fail.
        assert_eq!(min_cover(&cs, &targets).unwrap().t, 3);
        for drop in 0..3 {
            let mut cut = sol.clone();
            cut.columns.remove(drop);
            for row in &mut cut.coefficients {
                row.remove(drop);
            }
            assert!(!verify_solution(&cs, &targets, &cut).unwrap(), "drop {drop}");
        }
        let mut bad = sol.clone();
        bad.coefficients[0][2] ^= 1;
        assert!(!verify_solution(&cs, &targets, &bad).unwrap());
        let mut bad = sol.clone();
        bad.ys[0] = cs.field().add(bad.ys[0], Felt::ONE);
        assert!(!verify_solution(&cs, &targets, &bad).unwrap());
        let mut bad = sol;
        bad.columns[2] = Felt::ZERO;
        assert!(!verify_solution(&cs, &targets, &bad).unwrap());
    }

    #[test]
    fn zero_targets_need_no_columns() {
        let cs = system(4);
        let zeros = [SyndromePair::ZERO, SyndromePair::ZERO];
        let sol = cover_2kplus1(&cs, &zeros, ScanOrder::Sequential)
            .unwrap()
            .unwrap();
        assert!(sol.columns.is_empty());
        assert!(verify_solution(&cs, &zeros, &sol).unwrap());
        // A zero target mixed with a live one gets an all-zero row.
        let mixed = [SyndromePair::ZERO, pair(1, 1)];
        let sol = cover_2kplus1(&cs, &mixed, ScanOrder::Sequential)
            .unwrap()
            .unwrap();
        assert!(verify_solution(&cs, &mixed, &sol).unwrap());
        assert!(sol.coefficients[0].iter().all(|&b| b == 0));
    }

    #[test]
    fn guards() {
        let cs = system(4);
        assert!(matches!(
            cover_2kplus1(&cs, &[], ScanOrder::Sequential),
            Err(ConstructError::TargetCountOutOfRange { got: 0, .. })
        ));
        let many = vec![pair(1, 1); 7];
        assert!(cover_2kplus1(&cs, &many, ScanOrder::Sequential).is_err());
        let five = vec![pair(1, 1); 5];
        assert!(matches!(
            count_solutions(&cs, &five),
            Err(ConstructError::TargetCountOutOfRange { got: 5, limit: 4 })
        ));
        let cs15 = system(15);
        assert!(matches!(
            count_solutions(&cs15, &[pair(1, 1)]),
            Err(ConstructError::DegreeTooLarge { m: 15, .. })
        ));
        assert!(solution_count_lower_bound(4, 0).is_err());
    }
}
