//! Character sums over GF(2^m): the cubic multiplicative character with its
//! square-root cancellation bound, additive character sums of the rational
//! families arising in the solution count, the algebraic identities behind
//! the constructive cover, and the scan for non-cube target triples.

use crate::bch::SyndromePair;
use crate::gf2m::{DlogTable, Felt, FieldError, FieldSpec};
use crate::util::isqrt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use thiserror::Error;

/// Degree cap for polynomial character sums.
pub const MAX_POLY_DEGREE: usize = 8;
/// Field-degree cap for full-domain sums.
pub const MAX_SUM_DEGREE: u32 = 16;
/// Term cap for rational additive sums.
pub const MAX_TERMS: usize = 6;
/// Field-degree cap for exhaustive two-variable identity checks.
pub const MAX_EXHAUSTIVE_PAIR_DEGREE: u32 = 12;
/// Field-degree cap for exhaustive three-variable identity checks.
pub const MAX_EXHAUSTIVE_TRIPLE_DEGREE: u32 = 8;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CharSumError {
    #[error("degree m={0} must be even for the cubic character")]
    EvenDegreeRequired(u32),
    #[error("degree m={m} below minimum {min}")]
    DegreeTooSmall { m: u32, min: u32 },
    #[error("degree m={m} exceeds limit {limit} for {what}")]
    DegreeTooLarge { m: u32, limit: u32, what: &'static str },
    #[error("polynomial degree {deg} exceeds limit {limit}")]
    PolyDegreeTooLarge { deg: usize, limit: usize },
    #[error("the zero polynomial has no character sum")]
    ZeroPolynomial,
    #[error("polynomial is a cube times a constant; its cubic-character sum is degenerate")]
    CubePolynomial,
    #[error("term count {got} outside 1..={limit}")]
    TermCountOutOfRange { got: usize, limit: usize },
    #[error("family is degenerate: every pole cancels to order two or less")]
    DegenerateFamily,
    #[error("no non-cube triple exists at this degree")]
    NoTripleFound,
    #[error(transparent)]
    Field(#[from] FieldError),
}

/// An element a + bζ of Z[ζ], ζ a primitive cube root of unity.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EisensteinInt {
    pub a: i64,
    pub b: i64,
}

impl EisensteinInt {
    pub const ZERO: EisensteinInt = EisensteinInt { a: 0, b: 0 };

    pub fn new(a: i64, b: i64) -> EisensteinInt {
        EisensteinInt { a, b }
    }

    /// |a + bζ|² = a² − ab + b², always a nonnegative integer.
    pub fn norm_squared(self) -> u64 {
        let (a, b) = (i128::from(self.a), i128::from(self.b));
        (a * a - a * b + b * b) as u64
    }
}

impl std::ops::Mul for EisensteinInt {
    type Output = EisensteinInt;

    /// (a + bζ)(c + dζ) with ζ² = −1 − ζ.
    fn mul(self, rhs: EisensteinInt) -> EisensteinInt {
        EisensteinInt {
            a: self.a * rhs.a - self.b * rhs.b,
            b: self.a * rhs.b + self.b * rhs.a - self.b * rhs.b,
        }
    }
}

// ----- internal F_q[X] arithmetic: coefficients low-to-high, trimmed -----

fn trim(p: &mut Vec<Felt>) {
    while p.last() == Some(&Felt::ZERO) {
        p.pop();
    }
}

fn poly_deg(p: &[Felt]) -> Option<usize> {
    if p.is_empty() {
        None
    } else {
        Some(p.len() - 1)
    }
}

fn poly_eval(f: &FieldSpec, p: &[Felt], x: Felt) -> Felt {
    let mut acc = Felt::ZERO;
    for &c in p.iter().rev() {
        acc = f.add(f.mul(acc, x), c);
    }
    acc
}

fn poly_mul(f: &FieldSpec, a: &[Felt], b: &[Felt]) -> Vec<Felt> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![Felt::ZERO; a.len() + b.len() - 1];
    for (i, &ca) in a.iter().enumerate() {
        if ca.is_zero() {
            continue;
        }
        for (j, &cb) in b.iter().enumerate() {
            out[i + j] = f.add(out[i + j], f.mul(ca, cb));
        }
    }
    trim(&mut out);
    out
}

/// Quotient and remainder of num by a nonzero den.
fn poly_divrem(f: &FieldSpec, num: &[Felt], den: &[Felt]) -> (Vec<Felt>, Vec<Felt>) {
    let dd = poly_deg(den).expect("division by the zero polynomial");
    let lead_inv = f.inv(den[dd]).expect("nonzero leading coefficient");
    let mut rem: Vec<Felt> = num.to_vec();
    trim(&mut rem);
    if poly_deg(&rem) < Some(dd) {
        return (Vec::new(), rem);
    }
    let mut quo = vec![Felt::ZERO; rem.len() - dd];
    while let Some(rd) = poly_deg(&rem) {
        if rd < dd {
            break;
        }
        let c = f.mul(rem[rd], lead_inv);
        quo[rd - dd] = c;
        for (i, &dc) in den.iter().enumerate() {
            rem[rd - dd + i] = f.add(rem[rd - dd + i], f.mul(c, dc));
        }
        trim(&mut rem);
    }
    trim(&mut quo);
    (quo, rem)
}

fn poly_monic(f: &FieldSpec, p: &[Felt]) -> Vec<Felt> {
    match poly_deg(p) {
        None => Vec::new(),
        Some(d) => {
            let inv = f.inv(p[d]).expect("nonzero leading coefficient");
            p.iter().map(|&c| f.mul(c, inv)).collect()
        }
    }
}

fn poly_gcd(f: &FieldSpec, a: &[Felt], b: &[Felt]) -> Vec<Felt> {
    let mut a = a.to_vec();
    let mut b = b.to_vec();
    trim(&mut a);
    trim(&mut b);
    while !b.is_empty() {
        let (_, r) = poly_divrem(f, &a, &b);
        a = b;
        b = r;
    }
    poly_monic(f, &a)
}

/// Formal derivative in characteristic 2: only odd-exponent terms survive.
fn poly_derivative(p: &[Felt]) -> Vec<Felt> {
    let mut out = vec![Felt::ZERO; p.len().saturating_sub(1)];
    for (i, &c) in p.iter().enumerate().skip(1) {
        if i % 2 == 1 {
            out[i - 1] = c;
        }
    }
    trim(&mut out);
    out
}

fn poly_lcm(f: &FieldSpec, a: &[Felt], b: &[Felt]) -> Vec<Felt> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let g = poly_gcd(f, a, b);
    let (q, _) = poly_divrem(f, &poly_mul(f, a, b), &g);
    poly_monic(f, &q)
}

/// The squarefree part (product of distinct irreducible factors), monic.
/// When the derivative vanishes the polynomial is a perfect square whose
/// root has Frobenius-halved coefficients; otherwise the classic
/// gcd-splitting applies with recursion on the repeated part.
fn poly_radical(f: &FieldSpec, p: &[Felt]) -> Vec<Felt> {
    match poly_deg(p) {
        None => Vec::new(),
        Some(0) => vec![Felt::ONE],
        Some(_) => {
            let d = poly_derivative(p);
            if d.is_empty() {
                // p(X) = h(X²) = (√h)(X)²: halve exponents, sqrt coefficients.
                let root: Vec<Felt> = p.iter().step_by(2).map(|&c| f.sqrt(c)).collect();
                return poly_radical(f, &root);
            }
            let g = poly_gcd(f, p, &d);
            let (cofactor, _) = poly_divrem(f, p, &g);
            poly_lcm(f, &poly_monic(f, &cofactor), &poly_radical(f, &g))
        }
    }
}

/// Whether p is a constant times a perfect cube.
fn poly_is_cube(f: &FieldSpec, p: &[Felt]) -> bool {
    let mut p = p.to_vec();
    trim(&mut p);
    loop {
        match poly_deg(&p) {
            None => return false,
            Some(0) => return true,
            Some(_) => {
                let r = poly_radical(f, &p);
                let r3 = poly_mul(f, &poly_mul(f, &r, &r), &r);
                let (q, rem) = poly_divrem(f, &p, &r3);
                if !rem.is_empty() {
                    return false;
                }
                p = q;
            }
        }
    }
}

/// Σ_x χ(p(x)) over all of GF(2^m) for the cubic character χ (χ(0) = 0),
/// as an Eisenstein integer. Requires even m so that χ has order three.
pub fn mult_char_sum(f: &FieldSpec, poly: &[Felt]) -> Result<EisensteinInt, CharSumError> {
    let m = f.m();
    if !m.is_multiple_of(2) {
        return Err(CharSumError::EvenDegreeRequired(m));
    }
    if m > MAX_SUM_DEGREE {
        return Err(CharSumError::DegreeTooLarge {
            m,
            limit: MAX_SUM_DEGREE,
            what: "character sum",
        });
    }
    let mut p = poly.to_vec();
    trim(&mut p);
    let Some(deg) = poly_deg(&p) else {
        return Err(CharSumError::ZeroPolynomial);
    };
    if deg > MAX_POLY_DEGREE {
        return Err(CharSumError::PolyDegreeTooLarge {
            deg,
            limit: MAX_POLY_DEGREE,
        });
    }
    let dlog = DlogTable::new(f)?;
    let mut counts = [0i64; 3];
    for x in f.all_elements() {
        if let Some(t) = dlog.dlog(poly_eval(f, &p, x)) {
            counts[(t % 3) as usize] += 1;
        }
    }
    Ok(EisensteinInt {
        a: counts[0] - counts[2],
        b: counts[1] - counts[2],
    })
}

/// The value of a character-sum check, Eisenstein or rational integer.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum SumValue {
    Eisenstein(EisensteinInt),
    Integer(i64),
}

/// One checked character-sum instance against its square-root bound.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CharSumReport {
    pub m: u32,
    pub family: String,
    pub sum: SumValue,
    pub squared_magnitude: u64,
    pub bound_squared: u64,
    pub pass: bool,
}

impl CharSumReport {
    pub const CSV_HEADER: &'static str = "m,family,sum_squared,bound_squared,pass";

    pub fn csv_row(&self) -> String {
        format!(
            "{},{},{},{},{}",
            self.m, self.family, self.squared_magnitude, self.bound_squared, self.pass
        )
    }
}

/// Checks |Σ χ(p(x))|² ≤ (s−1)²·q where s counts the distinct roots of p
/// (the degree of its radical). Rejects cubes-times-constants, whose sums
/// grow linearly in q instead.
pub fn weil_check(f: &FieldSpec, poly: &[Felt]) -> Result<CharSumReport, CharSumError> {
    let mut p = poly.to_vec();
    trim(&mut p);
    if p.is_empty() {
        return Err(CharSumError::ZeroPolynomial);
    }
    if poly_is_cube(f, &p) {
        return Err(CharSumError::CubePolynomial);
    }
    let sum = mult_char_sum(f, &p)?;
    let s = poly_radical(f, &p).len() - 1;
    let squared = sum.norm_squared();
    let bound = ((s as u64 - 1) * (s as u64 - 1)) * f.order();
    Ok(CharSumReport {
        m: f.m(),
        family: "multiplicative".to_string(),
        sum: SumValue::Eisenstein(sum),
        squared_magnitude: squared,
        bound_squared: bound,
        pass: squared <= bound,
    })
}

/// The summand c(x) = (a·x² + a²·x + a³ + b) / (a + x)³ of one term.
fn term_value(f: &FieldSpec, t: &SyndromePair, x: Felt) -> Felt {
    let s = f.add(t.a, x);
    let num = f.add(
        f.add(f.mul(t.a, f.mul(x, x)), f.mul(f.mul(t.a, t.a), x)),
        f.add(f.cube(t.a), t.b),
    );
    f.mul(num, f.inv(f.cube(s)).expect("x avoids every pole"))
}

/// An additive character sum over the pole-free domain, with the trivial
/// all-plus-ones case flagged.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AdditiveSum {
    pub sum: i64,
    pub domain: u64,
    pub degenerate: bool,
}

/// Σ ψ(Σ_i c_i(x)) over x outside every listed pole, ψ(u) = (−1)^trace(u).
/// `degenerate` reports the trivial outcome sum = |domain| (every value has
/// trace zero), which the square-root bound cannot cover.
pub fn additive_rational_sum(
    f: &FieldSpec,
    terms: &[SyndromePair],
) -> Result<AdditiveSum, CharSumError> {
    if terms.is_empty() || terms.len() > MAX_TERMS {
        return Err(CharSumError::TermCountOutOfRange {
            got: terms.len(),
            limit: MAX_TERMS,
        });
    }
    if f.m() > MAX_SUM_DEGREE {
        return Err(CharSumError::DegreeTooLarge {
            m: f.m(),
            limit: MAX_SUM_DEGREE,
            what: "additive sum",
        });
    }
    let poles: Vec<Felt> = terms.iter().map(|t| t.a).collect();
    let mut sum = 0i64;
    let mut domain = 0u64;
    for x in f.all_elements() {
        if poles.contains(&x) {
            continue;
        }
        domain += 1;
        let mut v = Felt::ZERO;
        for t in terms {
            v = f.add(v, term_value(f, t, x));
        }
        sum += if f.trace(v) == 0 { 1 } else { -1 };
    }
    Ok(AdditiveSum {
        sum,
        domain,
        degenerate: sum == domain as i64,
    })
}

/// Square-root cancellation check for the rational family: terms sharing a
/// pole are combined mod 2; a pole survives with order 3 unless its combined
/// numerator vanishes there (order 2) or entirely (inactive). With
/// L = Σ (order + 1) over active poles, passes when |S| ≤ 1 + (L−2)√q.
/// Families whose active poles all cancel to order two are Artin–Schreier
/// degenerate (the summand is g² + g pointwise) and are rejected.
pub fn cochrane_check(
    f: &FieldSpec,
    terms: &[SyndromePair],
) -> Result<CharSumReport, CharSumError> {
    let sum = additive_rational_sum(f, terms)?;
    let mut groups: BTreeMap<Felt, (u32, Felt)> = BTreeMap::new();
    for t in terms {
        let entry = groups.entry(t.a).or_insert((0, Felt::ZERO));
        entry.0 ^= 1;
        entry.1 = f.add(entry.1, t.b);
    }
    let mut l = 0u64;
    let mut saturated = false;
    for (&a, &(parity, bsum)) in &groups {
        if parity == 0 && bsum.is_zero() {
            continue; // terms at this pole cancel entirely
        }
        let at_pole = if parity == 1 {
            f.add(f.cube(a), bsum)
        } else {
            bsum
        };
        let order = if at_pole.is_zero() { 2 } else { 3 };
        saturated |= order == 3;
        l += order + 1;
    }
    if !saturated {
        return Err(CharSumError::DegenerateFamily);
    }
    let q = f.order();
    let root = 1 + isqrt(u128::from((l - 2) * (l - 2)) * u128::from(q)) as u64;
    let squared = (i128::from(sum.sum) * i128::from(sum.sum)) as u64;
    let bound = root * root;
    Ok(CharSumReport {
        m: f.m(),
        family: "additive-rational".to_string(),
        sum: SumValue::Integer(sum.sum),
        squared_magnitude: squared,
        bound_squared: bound,
        pass: squared <= bound,
    })
}

/// How an identity verifier samples its variable space.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum SampleMode {
    Exhaustive,
    Random { trials: u64, seed: u64 },
}

/// Outcome of an identity sweep: assertions evaluated, whether all held,
/// and the first failing assignment if any.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerifyOutcome {
    pub checked: u64,
    pub holds: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<Vec<Felt>>,
}

fn sweep_pairs(
    f: &FieldSpec,
    mode: SampleMode,
    mut check: impl FnMut(Felt, Felt) -> bool,
) -> Result<VerifyOutcome, CharSumError> {
    let mut out = VerifyOutcome {
        checked: 0,
        holds: true,
        counterexample: None,
    };
    let mut consider = |y1: Felt, y2: Felt, out: &mut VerifyOutcome| {
        out.checked += 1;
        if out.holds && !check(y1, y2) {
            out.holds = false;
            out.counterexample = Some(vec![y1, y2]);
        }
    };
    match mode {
        SampleMode::Exhaustive => {
            if f.m() > MAX_EXHAUSTIVE_PAIR_DEGREE {
                return Err(CharSumError::DegreeTooLarge {
                    m: f.m(),
                    limit: MAX_EXHAUSTIVE_PAIR_DEGREE,
                    what: "exhaustive pair sweep",
                });
            }
            for y1 in f.all_elements() {
                for y2 in f.all_elements() {
                    consider(y1, y2, &mut out);
                }
            }
        }
        SampleMode::Random { trials, seed } => {
            let mut rng = ChaCha20Rng::seed_from_u64(seed);
            for _ in 0..trials {
                let y1 = Felt(rng.gen_range(0..f.order()));
                let y2 = Felt(rng.gen_range(0..f.order()));
                consider(y1, y2, &mut out);
            }
        }
    }
    Ok(out)
}

fn sweep_triples(
    f: &FieldSpec,
    mode: SampleMode,
    mut check: impl FnMut(Felt, Felt, Felt) -> Option<bool>,
) -> Result<VerifyOutcome, CharSumError> {
    let mut out = VerifyOutcome {
        checked: 0,
        holds: true,
        counterexample: None,
    };
    let mut consider = |y1: Felt, y2: Felt, y3: Felt, out: &mut VerifyOutcome| {
        let Some(ok) = check(y1, y2, y3) else {
            return; // assignment outside the lemma's hypothesis
        };
        out.checked += 1;
        if out.holds && !ok {
            out.holds = false;
            out.counterexample = Some(vec![y1, y2, y3]);
        }
    };
    match mode {
        SampleMode::Exhaustive => {
            if f.m() > MAX_EXHAUSTIVE_TRIPLE_DEGREE {
                return Err(CharSumError::DegreeTooLarge {
                    m: f.m(),
                    limit: MAX_EXHAUSTIVE_TRIPLE_DEGREE,
                    what: "exhaustive triple sweep",
                });
            }
            for y1 in f.all_elements() {
                for y2 in f.all_elements() {
                    for y3 in f.all_elements() {
                        consider(y1, y2, y3, &mut out);
                    }
                }
            }
        }
        SampleMode::Random { trials, seed } => {
            let mut rng = ChaCha20Rng::seed_from_u64(seed);
            for _ in 0..trials {
                let y1 = Felt(rng.gen_range(0..f.order()));
                let y2 = Felt(rng.gen_range(0..f.order()));
                let y3 = Felt(rng.gen_range(0..f.order()));
                consider(y1, y2, y3, &mut out);
            }
        }
    }
    Ok(out)
}

/// y₁³ + y₂³ + y₃³ = y₁y₂(y₁ + y₂) whenever y₃ = y₁ + y₂.
pub fn verify_y1y2y3(f: &FieldSpec, mode: SampleMode) -> Result<VerifyOutcome, CharSumError> {
    sweep_pairs(f, mode, |y1, y2| {
        let y3 = f.add(y1, y2);
        let lhs = f.add(f.add(f.cube(y1), f.cube(y2)), f.cube(y3));
        lhs == f.mul(f.mul(y1, y2), f.add(y1, y2))
    })
}

/// With α₁ = y₁y₂(y₁+y₂), α₂ = y₁y₃(y₁+y₃), α₃ = y₂y₃(y₂+y₃), the product
/// A = α₁α₂α₃(α₁+α₂)(α₁+α₃)(α₂+α₃)(α₁+α₂+α₃), when nonzero, equals
/// P³ for P = y₁y₂y₃(y₁+y₂)(y₂+y₃)(y₃+y₁)(y₁+y₂+y₃) and is therefore a
/// cube. Requires even m, where being a cube is a nontrivial property.
pub fn verify_cube_lemma(f: &FieldSpec, mode: SampleMode) -> Result<VerifyOutcome, CharSumError> {
    if !f.m().is_multiple_of(2) {
        return Err(CharSumError::EvenDegreeRequired(f.m()));
    }
    sweep_triples(f, mode, |y1, y2, y3| {
        let a1 = f.mul(f.mul(y1, y2), f.add(y1, y2));
        let a2 = f.mul(f.mul(y1, y3), f.add(y1, y3));
        let a3 = f.mul(f.mul(y2, y3), f.add(y2, y3));
        let big = f.mul(
            f.mul(f.mul(a1, a2), a3),
            f.mul(
                f.mul(f.add(a1, a2), f.add(a1, a3)),
                f.mul(f.add(a2, a3), f.add(f.add(a1, a2), a3)),
            ),
        );
        if big.is_zero() {
            return None;
        }
        let p = f.mul(
            f.mul(
                f.mul(f.mul(y1, y2), y3),
                f.mul(f.mul(f.add(y1, y2), f.add(y2, y3)), f.add(y3, y1)),
            ),
            f.add(f.add(y1, y2), y3),
        );
        let cube = f.is_cube(big).expect("product is nonzero");
        Some(cube && big == f.cube(p))
    })
}

/// (y₅+y₆+y₇)³ + y₅³ + y₆³ + y₇³ = y₅y₆(y₅+y₆) + y₅y₇(y₅+y₇) + y₆y₇(y₆+y₇).
pub fn verify_beta4(f: &FieldSpec, mode: SampleMode) -> Result<VerifyOutcome, CharSumError> {
    sweep_triples(f, mode, |y5, y6, y7| {
        let lhs = f.add(
            f.cube(f.add(f.add(y5, y6), y7)),
            f.add(f.add(f.cube(y5), f.cube(y6)), f.cube(y7)),
        );
        let rhs = f.add(
            f.add(
                f.mul(f.mul(y5, y6), f.add(y5, y6)),
                f.mul(f.mul(y5, y7), f.add(y5, y7)),
            ),
            f.mul(f.mul(y6, y7), f.add(y6, y7)),
        );
        Some(lhs == rhs)
    })
}

fn independent3(y1: Felt, y2: Felt, y3: Felt) -> bool {
    let mut basis: Vec<u64> = Vec::new();
    for mut v in [y1.0, y2.0, y3.0] {
        for &b in &basis {
            if v ^ b < v {
                v ^= b;
            }
        }
        if v == 0 {
            return false;
        }
        basis.push(v);
        basis.sort_unstable_by(|x, y| y.cmp(x));
    }
    true
}

/// Whether (y₁, y₂, y₃) is F₂-independent with non-cube witness product
/// P = y₁y₂y₃(y₁+y₂)(y₂+y₃)(y₃+y₁)(y₁+y₂+y₃). Requires even m.
pub fn is_noncube_triple(
    f: &FieldSpec,
    y1: Felt,
    y2: Felt,
    y3: Felt,
) -> Result<bool, CharSumError> {
    if !f.m().is_multiple_of(2) {
        return Err(CharSumError::EvenDegreeRequired(f.m()));
    }
    if !independent3(y1, y2, y3) {
        return Ok(false);
    }
    let p = f.mul(
        f.mul(
            f.mul(f.mul(y1, y2), y3),
            f.mul(f.mul(f.add(y1, y2), f.add(y2, y3)), f.add(y3, y1)),
        ),
        f.add(f.add(y1, y2), y3),
    );
    Ok(!p.is_zero() && !f.is_cube(p)?)
}

/// Scans x₀ = 2, 3, … in value order for the first triple (1, x₀, x₀²) that
/// is independent with non-cube witness product; needs even m ≥ 4.
pub fn find_noncube_triple(f: &FieldSpec) -> Result<(Felt, Felt, Felt), CharSumError> {
    if !f.m().is_multiple_of(2) {
        return Err(CharSumError::EvenDegreeRequired(f.m()));
    }
    if f.m() < 4 {
        return Err(CharSumError::DegreeTooSmall { m: f.m(), min: 4 });
    }
    for bits in 2..f.order() {
        let x0 = Felt(bits);
        let x0sq = f.mul(x0, x0);
        if is_noncube_triple(f, Felt::ONE, x0, x0sq)? {
            return Ok((Felt::ONE, x0, x0sq));
        }
    }
    Err(CharSumError::NoTripleFound)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn field(m: u32) -> FieldSpec {
        FieldSpec::new(m, None).unwrap()
    }

    fn felts(bits: &[u64]) -> Vec<Felt> {
        bits.iter().map(|&b| Felt(b)).collect()
    }

    #[test]
    fn eisenstein_arithmetic() {
        let zeta = EisensteinInt::new(0, 1);
        let zeta2 = zeta * zeta;
        assert_eq!(zeta2, EisensteinInt::new(-1, -1));
        assert_eq!(zeta2 * zeta, EisensteinInt::new(1, 0));
        assert_eq!(zeta.norm_squared(), 1);
        assert_eq!(EisensteinInt::new(1, 1).norm_squared(), 1);
        assert_eq!(EisensteinInt::new(2, 1).norm_squared(), 3);
        assert_eq!(EisensteinInt::new(-3, 4).norm_squared(), 37);
    }

    #[test]
    fn linear_polynomials_sum_to_zero() {
        let f = field(4);
        for c in [1u64, 2, 7, 13] {
            let s = mult_char_sum(&f, &felts(&[0, c])).unwrap();
            assert_eq!(s, EisensteinInt::ZERO, "c={c}");
        }
        // χ(x³) = 1 on every nonzero x, so the cube power sums to q − 1.
        assert_eq!(
            mult_char_sum(&f, &felts(&[0, 0, 0, 1])).unwrap(),
            EisensteinInt::new(15, 0)
        );
    }

    #[test]
    fn quartic_sums_meet_weil_bound() {
        // p(X) = X⁴ + X = X(X+1)(X²+X+1): squarefree with s = 4.
        let poly = felts(&[0, 1, 0, 0, 1]);
        let expect = [
            (4u32, EisensteinInt::ZERO, 0u64, 144u64),
            (6, EisensteinInt::new(24, 0), 576, 576),
            (8, EisensteinInt::ZERO, 0, 2304),
            (10, EisensteinInt::ZERO, 0, 9216),
        ];
        for (m, sum, squared, bound) in expect {
            let report = weil_check(&field(m), &poly).unwrap();
            assert_eq!(report.sum, SumValue::Eisenstein(sum), "m={m}");
            assert_eq!(report.squared_magnitude, squared, "m={m}");
            assert_eq!(report.bound_squared, bound, "m={m}");
            assert!(report.pass, "m={m}");
        }
    }

    #[test]
    fn cube_polynomials_are_rejected() {
        let f = field(4);
        for cube in [
            felts(&[0, 0, 0, 1]),          // X³
            felts(&[1, 1, 1, 1]),          // (X+1)³
            felts(&[0, 0, 0, 1, 1, 1, 1]), // (X²+X)³
            felts(&[7]),                   // constant
            felts(&[0, 0, 0, 5]),          // 5·X³
        ] {
            assert_eq!(
                weil_check(&f, &cube).unwrap_err(),
                CharSumError::CubePolynomial,
                "{cube:?}"
            );
        }
        assert_eq!(
            weil_check(&f, &[]).unwrap_err(),
            CharSumError::ZeroPolynomial
        );
    }

    #[test]
    fn radical_splits_repeated_factors() {
        let f = field(4);
        // (X+1)² = X² + 1.
        assert_eq!(poly_radical(&f, &felts(&[1, 0, 1])), felts(&[1, 1]));
        // X³(X+1) = X⁴ + X³ has radical X² + X.
        assert_eq!(poly_radical(&f, &felts(&[0, 0, 0, 1, 1])), felts(&[0, 1, 1]));
        // X⁴ + X is already squarefree.
        assert_eq!(
            poly_radical(&f, &felts(&[0, 1, 0, 0, 1])),
            felts(&[0, 1, 0, 0, 1])
        );
        // (X²+X+1)² via derivative-zero branch.
        let sq = poly_mul(&f, &felts(&[1, 1, 1]), &felts(&[1, 1, 1]));
        assert_eq!(poly_radical(&f, &sq), felts(&[1, 1, 1]));
    }

    #[test]
    fn division_and_gcd_are_consistent() {
        let f = field(5);
        let a = felts(&[3, 0, 7, 1, 0, 2]);
        let b = felts(&[5, 1, 4]);
        let (q, r) = poly_divrem(&f, &a, &b);
        let back = {
            let mut p = poly_mul(&f, &q, &b);
            while p.len() < a.len() {
                p.push(Felt::ZERO);
            }
            for (i, c) in r.iter().enumerate() {
                p[i] = f.add(p[i], *c);
            }
            trim(&mut p);
            p
        };
        assert_eq!(back, a);
        assert!(poly_deg(&r) < poly_deg(&b));
        let g = poly_gcd(&f, &poly_mul(&f, &a, &b), &b);
        assert_eq!(g, poly_monic(&f, &b)); // b divides both
    }

    #[test]
    fn additive_sum_psi_is_additive() {
        let f = field(8);
        let mut state = 0x082efa98ec4e6c89u64;
        for _ in 0..200 {
            let mut draw = || {
                state = state
                    .wrapping_mul(6364136223846793005)
                    .wrapping_add(1442695040888963407);
                Felt(state >> 56)
            };
            let (u, v) = (draw(), draw());
            let lhs = f.trace(f.add(u, v));
            assert_eq!(lhs, f.trace(u) ^ f.trace(v));
        }
    }

    #[test]
    fn degenerate_families_are_flagged() {
        let f = field(8);
        // b = a³ collapses the term to g² + g: all traces vanish.
        let t = SyndromePair::new(Felt(2), f.cube(Felt(2)));
        let s = additive_rational_sum(&f, &[t]).unwrap();
        assert!(s.degenerate);
        assert_eq!(s.sum, 255); // q − 1 pole-free points, all contributing +1
        assert_eq!(s.domain, 255);
        assert_eq!(
            cochrane_check(&f, &[t]).unwrap_err(),
            CharSumError::DegenerateFamily
        );
        // A pair of identical terms cancels entirely.
        let dup = SyndromePair::new(Felt(3), Felt(5));
        assert_eq!(
            cochrane_check(&f, &[dup, dup]).unwrap_err(),
            CharSumError::DegenerateFamily
        );
        let s = additive_rational_sum(&f, &[dup, dup]).unwrap();
        assert!(s.degenerate);
        assert_eq!(s.domain, 255); // shared pole excluded once
    }

    #[test]
    fn cochrane_bounds_pinned() {
        let f = field(8);
        // One full-order pole: L = 4, |S| ≤ 1 + 2·16 = 33.
        let r = cochrane_check(&f, &[SyndromePair::new(Felt(1), Felt::ZERO)]).unwrap();
        assert_eq!(r.bound_squared, 33 * 33);
        assert!(r.pass);
        assert_eq!(r.family, "additive-rational");
        // Two full-order poles: L = 8, |S| ≤ 1 + 6·16 = 97.
        let r = cochrane_check(
            &f,
            &[
                SyndromePair::new(Felt(1), Felt::ZERO),
                SyndromePair::new(Felt(2), Felt::ZERO),
            ],
        )
        .unwrap();
        assert_eq!(r.bound_squared, 97 * 97);
        assert!(r.pass);
        // Order-2 plus order-3 poles: L = 3 + 4 = 7, |S| ≤ 1 + 5·16 = 81.
        let r = cochrane_check(
            &f,
            &[
                SyndromePair::new(Felt(1), Felt::ONE), // b = a³ at a = 1
                SyndromePair::new(Felt(2), Felt::ZERO),
            ],
        )
        .unwrap();
        assert_eq!(r.bound_squared, 81 * 81);
        assert!(r.pass);
    }

    #[test]
    fn cochrane_random_families_pass() {
        for m in [8u32, 10, 12] {
            let f = field(m);
            let mut state = 0x452821e638d01377u64 ^ u64::from(m);
            for _ in 0..200 {
                let mut draw = || {
                    state = state
                        .wrapping_mul(6364136223846793005)
                        .wrapping_add(1442695040888963407);
                    state >> (64 - m)
                };
                let k = 1 + (draw() as usize) % 3;
                let terms: Vec<SyndromePair> = (0..k)
                    .map(|_| SyndromePair::new(Felt(draw()), Felt(draw())))
                    .collect();
                match cochrane_check(&f, &terms) {
                    Ok(report) => assert!(report.pass, "m={m} terms={terms:?}"),
                    Err(CharSumError::DegenerateFamily) => {}
                    Err(e) => panic!("unexpected error: {e}"),
                }
            }
        }
    }

    #[test]
    fn identity_sweeps_hold() {
        for m in [3u32, 4, 5, 6] {
            let f = field(m);
            let out = verify_y1y2y3(&f, SampleMode::Exhaustive).unwrap();
            assert!(out.holds, "m={m}");
            assert_eq!(out.checked, f.order() * f.order());
            let out = verify_beta4(&f, SampleMode::Exhaustive).unwrap();
            assert!(out.holds, "m={m}");
            assert_eq!(out.checked, f.order().pow(3));
        }
        let out = verify_y1y2y3(&field(11), SampleMode::Random { trials: 500, seed: 7 }).unwrap();
        assert!(out.holds);
        assert_eq!(out.checked, 500);
        // Same seed, same outcome.
        let again =
            verify_y1y2y3(&field(11), SampleMode::Random { trials: 500, seed: 7 }).unwrap();
        assert_eq!(again, out);
    }

    #[test]
    fn cube_lemma_holds_on_even_degrees() {
        let out = verify_cube_lemma(&field(4), SampleMode::Exhaustive).unwrap();
        assert!(out.holds);
        assert_eq!(out.checked, 2520); // triples with a nonzero product
        let out = verify_cube_lemma(&field(6), SampleMode::Random { trials: 400, seed: 3 })
            .unwrap();
        assert!(out.holds);
        assert!(out.checked <= 400);
        assert_eq!(
            verify_cube_lemma(&field(5), SampleMode::Exhaustive).unwrap_err(),
            CharSumError::EvenDegreeRequired(5)
        );
    }

    #[test]
    fn noncube_scan_matches_pinned_values() {
        let f4 = field(4);
        assert_eq!(
            find_noncube_triple(&f4).unwrap(),
            (Felt(1), Felt(8), Felt(0xc))
        );
        let hits4 = (2..16u64)
            .filter(|&b| {
                let x0 = Felt(b);
                is_noncube_triple(&f4, Felt::ONE, x0, f4.mul(x0, x0)).unwrap()
            })
            .count();
        assert_eq!(hits4, 8);
        let f6 = field(6);
        assert_eq!(
            find_noncube_triple(&f6).unwrap(),
            (Felt(1), Felt(6), Felt(0x14))
        );
        let hits6 = (2..64u64)
            .filter(|&b| {
                let x0 = Felt(b);
                is_noncube_triple(&f6, Felt::ONE, x0, f6.mul(x0, x0)).unwrap()
            })
            .count();
        assert_eq!(hits6, 24);
        // The generator-powers triple and its pinned witness product.
        let g = f4.generator();
        let g3 = f4.cube(g);
        assert!(is_noncube_triple(&f4, Felt::ONE, g, g3).unwrap());
        let p = f4.mul(
            f4.mul(
                f4.mul(f4.mul(Felt::ONE, g), g3),
                f4.mul(
                    f4.mul(f4.add(Felt::ONE, g), f4.add(g, g3)),
                    f4.add(g3, Felt::ONE),
                ),
            ),
            f4.add(f4.add(Felt::ONE, g), g3),
        );
        assert_eq!(p, Felt(0x5));
        assert_eq!(f4.pow(p, 5), Felt(0x7)); // ≠ 1: not a cube
        // Dependent triples are rejected regardless of products.
        assert!(!is_noncube_triple(&f4, Felt(1), Felt(2), Felt(3)).unwrap());
        assert_eq!(
            find_noncube_triple(&field(5)).unwrap_err(),
            CharSumError::EvenDegreeRequired(5)
        );
        assert_eq!(
            find_noncube_triple(&field(2)).unwrap_err(),
            CharSumError::DegreeTooSmall { m: 2, min: 4 }
        );
    }

    #[test]
    fn reports_serialize_for_json_and_csv() {
        let report = weil_check(&field(6), &felts(&[0, 1, 0, 0, 1])).unwrap();
        let json = serde_json::to_value(&report).unwrap();
        assert_eq!(
            json,
            serde_json::json!({
                "m": 6,
                "family": "multiplicative",
                "sum": {"a": 24, "b": 0},
                "squared_magnitude": 576,
                "bound_squared": 576,
                "pass": true
            })
        );
        let back: CharSumReport = serde_json::from_value(json).unwrap();
        assert_eq!(back, report);
        assert_eq!(report.csv_row(), "6,multiplicative,576,576,true");

        let f = field(8);
        let r = cochrane_check(&f, &[SyndromePair::new(Felt(1), Felt::ZERO)]).unwrap();
        let json = serde_json::to_value(&r).unwrap();
        assert!(json["sum"].is_i64());
        let back: CharSumReport = serde_json::from_value(json).unwrap();
        assert_eq!(back, r);
        assert_eq!(CharSumReport::CSV_HEADER, "m,family,sum_squared,bound_squared,pass");
    }
}
