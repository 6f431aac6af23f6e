//! Exact arithmetic in the binary extension field GF(2^m).
//!
//! Elements are represented in the polynomial basis {1, x, …, x^(m−1)} modulo
//! a monic irreducible polynomial of degree m over GF(2); the coordinate
//! vector is packed into a `u64` with bit i holding the coefficient of x^i.
//! A [`FieldSpec`] fixes the degree, the modulus and a primitive element, and
//! provides multiplication, inversion, trace, cube testing, and the solvers
//! for Artin–Schreier and general quadratic equations in characteristic 2.

use serde::de::Error as _;
use serde::ser::SerializeStruct;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::fmt;
use thiserror::Error;

/// Smallest supported extension degree.
pub const MIN_DEGREE: u32 = 2;
/// Largest supported extension degree.
pub const MAX_DEGREE: u32 = 32;
/// Largest degree for which discrete-log tables may be built.
pub const MAX_DLOG_DEGREE: u32 = 16;

/// Default modulus per degree m = 2..=32: the lexicographically smallest
/// primitive polynomial of degree m over GF(2), encoded with bit i as the
/// coefficient of x^i. Being primitive, each makes x itself a generator.
const DEFAULT_MODULI: [u64; 31] = [
    0x7, 0xb, 0x13, 0x25, 0x43, 0x83, 0x11d, 0x211, 0x409, 0x805, 0x1053, 0x201b, 0x402b, 0x8003,
    0x1002d, 0x20009, 0x40027, 0x80027, 0x100009, 0x200005, 0x400003, 0x800021, 0x100001b,
    0x2000009, 0x4000047, 0x8000027, 0x10000009, 0x20000005, 0x40000053, 0x80000009, 0x1000000af,
];

/// Errors from field construction and arithmetic.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum FieldError {
    #[error("extension degree {0} outside supported range {MIN_DEGREE}..={MAX_DEGREE}")]
    DegreeOutOfRange(u32),
    #[error("modulus {modulus:#x} is not monic of degree {m}")]
    BadModulusShape { m: u32, modulus: u64 },
    #[error("modulus {modulus:#x} is reducible: divisible by {factor:#x}")]
    ReducibleModulus { modulus: u64, factor: u64 },
    #[error("element {element:#x} is not primitive for degree {m}")]
    NotPrimitive { m: u32, element: u64 },
    #[error("element {element:#x} has coordinates beyond degree {m}")]
    ElementOutOfRange { m: u32, element: u64 },
    #[error("division by zero")]
    DivisionByZero,
    #[error("cube status of zero is undefined")]
    CubeOfZero,
    #[error("discrete-log table requires m <= {MAX_DLOG_DEGREE}, got {0}")]
    DlogTableTooLarge(u32),
    #[error("invalid hex field element {0:?}")]
    BadHex(String),
}

/// A field element: packed coordinates over the polynomial basis.
#[derive(Copy, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Felt(pub u64);

impl Felt {
    pub const ZERO: Felt = Felt(0);
    pub const ONE: Felt = Felt(1);

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }

    /// Parses a hex literal, with or without a leading `0x`.
    pub fn parse_hex(s: &str) -> Result<Felt, FieldError> {
        let digits = s
            .strip_prefix("0x")
            .or_else(|| s.strip_prefix("0X"))
            .unwrap_or(s);
        u64::from_str_radix(digits, 16)
            .map(Felt)
            .map_err(|_| FieldError::BadHex(s.to_string()))
    }
}

impl fmt::Display for Felt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:#x}", self.0)
    }
}

impl fmt::Debug for Felt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Felt({:#x})", self.0)
    }
}

/// Addition in characteristic 2 is coordinate-wise exclusive-or, independent
/// of the modulus, so it is provided directly on the element type.
impl std::ops::Add for Felt {
    type Output = Felt;
    #[allow(clippy::suspicious_arithmetic_impl)] // characteristic-2 addition is xor
    fn add(self, rhs: Felt) -> Felt {
        Felt(self.0 ^ rhs.0)
    }
}

impl std::ops::AddAssign for Felt {
    #[allow(clippy::suspicious_op_assign_impl)] // characteristic-2 addition is xor
    fn add_assign(&mut self, rhs: Felt) {
        self.0 ^= rhs.0;
    }
}

impl Serialize for Felt {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&format!("{:#x}", self.0))
    }
}

impl<'de> Deserialize<'de> for Felt {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        Felt::parse_hex(&s).map_err(D::Error::custom)
    }
}

/// An explicit model of GF(2^m): degree, modulus and a primitive element.
#[derive(Clone, PartialEq, Eq)]
pub struct FieldSpec {
    m: u32,
    modulus: u64,
    generator: Felt,
}

impl fmt::Debug for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "FieldSpec {{ m: {}, modulus: {:#x}, generator: {} }}",
            self.m, self.modulus, self.generator
        )
    }
}

impl FieldSpec {
    /// Builds GF(2^m) with the given modulus, or the default primitive
    /// modulus for the degree. The modulus must be monic of degree m and
    /// irreducible; a generator (primitive element) is found by search.
    pub fn new(m: u32, modulus: Option<u64>) -> Result<FieldSpec, FieldError> {
        if !(MIN_DEGREE..=MAX_DEGREE).contains(&m) {
            return Err(FieldError::DegreeOutOfRange(m));
        }
        let modulus = modulus.unwrap_or(DEFAULT_MODULI[(m - MIN_DEGREE) as usize]);
        if modulus >> m != 1 {
            return Err(FieldError::BadModulusShape { m, modulus });
        }
        if let Some(factor) = nontrivial_factor(modulus, m) {
            return Err(FieldError::ReducibleModulus { modulus, factor });
        }
        let mut spec = FieldSpec {
            m,
            modulus,
            generator: Felt::ZERO,
        };
        spec.generator = spec.find_generator();
        Ok(spec)
    }

    /// Like [`FieldSpec::new`], but with a caller-chosen generator, which is
    /// verified to be primitive. Used when re-ingesting serialized specs.
    pub fn with_generator(m: u32, modulus: u64, generator: Felt) -> Result<FieldSpec, FieldError> {
        let mut spec = FieldSpec::new(m, Some(modulus))?;
        if generator.0 >> m != 0 {
            return Err(FieldError::ElementOutOfRange {
                m,
                element: generator.0,
            });
        }
        if !spec.is_primitive(generator) {
            return Err(FieldError::NotPrimitive {
                m,
                element: generator.0,
            });
        }
        spec.generator = generator;
        Ok(spec)
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn generator(&self) -> Felt {
        self.generator
    }

    /// Field size q = 2^m.
    pub fn order(&self) -> u64 {
        1u64 << self.m
    }

    /// Size of the multiplicative group, q − 1.
    pub fn units(&self) -> u64 {
        self.order() - 1
    }

    /// Validated element constructor: the value must fit in m bits.
    pub fn element(&self, bits: u64) -> Result<Felt, FieldError> {
        if bits >> self.m != 0 {
            return Err(FieldError::ElementOutOfRange {
                m: self.m,
                element: bits,
            });
        }
        Ok(Felt(bits))
    }

    /// Iterates over all q field elements in increasing packed order.
    pub fn all_elements(&self) -> impl Iterator<Item = Felt> {
        (0..self.order()).map(Felt)
    }

    /// Iterates over the q − 1 nonzero elements in increasing packed order.
    pub fn nonzero_elements(&self) -> impl Iterator<Item = Felt> {
        (1..self.order()).map(Felt)
    }

    /// Coordinate-wise sum (exclusive-or).
    pub fn add(&self, a: Felt, b: Felt) -> Felt {
        a + b
    }

    /// Product by shift-and-reduce against the modulus.
    pub fn mul(&self, a: Felt, b: Felt) -> Felt {
        debug_assert!(a.0 >> self.m == 0 && b.0 >> self.m == 0);
        let top = 1u64 << self.m;
        let mut acc = 0u64;
        let mut a = a.0;
        let mut b = b.0;
        while b != 0 {
            if b & 1 == 1 {
                acc ^= a;
            }
            b >>= 1;
            a <<= 1;
            if a & top != 0 {
                a ^= self.modulus;
            }
        }
        Felt(acc)
    }

    /// The Frobenius automorphism a ↦ a².
    pub fn frobenius(&self, a: Felt) -> Felt {
        self.mul(a, a)
    }

    /// a³.
    pub fn cube(&self, a: Felt) -> Felt {
        self.mul(self.frobenius(a), a)
    }

    /// Square-and-multiply power; `pow(a, 0) = 1` for every a, including 0.
    pub fn pow(&self, a: Felt, mut e: u64) -> Felt {
        let mut base = a;
        let mut acc = Felt::ONE;
        while e != 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// Multiplicative inverse via a^(q−2); zero is rejected.
    pub fn inv(&self, a: Felt) -> Result<Felt, FieldError> {
        if a.is_zero() {
            return Err(FieldError::DivisionByZero);
        }
        Ok(self.pow(a, self.order() - 2))
    }

    /// Absolute trace Tr(a) = Σ_{j<m} a^(2^j) ∈ {0, 1}.
    pub fn trace(&self, a: Felt) -> u8 {
        let mut acc = Felt::ZERO;
        let mut x = a;
        for _ in 0..self.m {
            acc += x;
            x = self.frobenius(x);
        }
        debug_assert!(acc.0 <= 1);
        acc.0 as u8
    }

    /// Whether nonzero a is a cube. For odd m every nonzero element is a cube
    /// (gcd(3, 2^m − 1) = 1 makes cubing bijective); for even m the test is
    /// a^((q−1)/3) = 1.
    pub fn is_cube(&self, a: Felt) -> Result<bool, FieldError> {
        if a.is_zero() {
            return Err(FieldError::CubeOfZero);
        }
        if self.m % 2 == 1 {
            return Ok(true);
        }
        Ok(self.pow(a, self.units() / 3) == Felt::ONE)
    }

    /// Square root; squaring is an automorphism, so every element has exactly
    /// one, namely b^(2^(m−1)).
    pub fn sqrt(&self, b: Felt) -> Felt {
        self.pow(b, 1u64 << (self.m - 1))
    }

    /// Solves w² + w = c. Returns the two roots {w, w+1} in increasing packed
    /// order when Tr(c) = 0, and `None` otherwise.
    ///
    /// Method: w ↦ w² + w is GF(2)-linear, so solve (F + I)·w = c over the
    /// polynomial basis, where F is the Frobenius matrix; the kernel {0, 1}
    /// supplies the second root.
    pub fn solve_artin_schreier(&self, c: Felt) -> Option<(Felt, Felt)> {
        let m = self.m as usize;
        // Row i of the augmented system: bits over columns j of
        // coefficient_i((x^j)² + x^j), plus the target bit c_i.
        let mut rows = vec![0u64; m];
        for j in 0..m {
            let e = Felt(1 << j);
            let col = (self.frobenius(e) + e).0;
            for (i, row) in rows.iter_mut().enumerate() {
                *row |= (col >> i & 1) << j;
            }
        }
        let mut aug: Vec<(u64, u8)> = rows
            .into_iter()
            .enumerate()
            .map(|(i, r)| (r, (c.0 >> i & 1) as u8))
            .collect();
        let mut pivots = Vec::with_capacity(m);
        let mut next = 0usize;
        for col in 0..m {
            let Some(p) = (next..m).find(|&i| aug[i].0 >> col & 1 == 1) else {
                continue;
            };
            aug.swap(next, p);
            for i in 0..m {
                if i != next && aug[i].0 >> col & 1 == 1 {
                    aug[i].0 ^= aug[next].0;
                    aug[i].1 ^= aug[next].1;
                }
            }
            pivots.push(col);
            next += 1;
        }
        if aug[next..].iter().any(|&(_, b)| b == 1) {
            return None; // inconsistent: happens exactly when Tr(c) = 1
        }
        let mut w = 0u64;
        for (r, &col) in pivots.iter().enumerate() {
            w |= u64::from(aug[r].1) << col;
        }
        let w0 = Felt(w);
        let w1 = w0 + Felt::ONE;
        debug_assert_eq!(self.frobenius(w0) + w0, c);
        Some(if w0 < w1 { (w0, w1) } else { (w1, w0) })
    }

    /// Full root set of x² + ax + b = 0, sorted by packed value.
    ///
    /// For a ≠ 0 the substitution x = a·w reduces to w² + w = b/a², which has
    /// two roots exactly when Tr(b/a²) = 0 and none otherwise. For a = 0 the
    /// unique root is the square root of b.
    pub fn solve_quadratic(&self, a: Felt, b: Felt) -> Vec<Felt> {
        if a.is_zero() {
            return vec![self.sqrt(b)];
        }
        let ainv = self.inv(a).expect("a is nonzero");
        let c = self.mul(b, self.frobenius(ainv));
        match self.solve_artin_schreier(c) {
            None => Vec::new(),
            Some((w0, w1)) => {
                let mut roots = [self.mul(a, w0), self.mul(a, w1)];
                roots.sort();
                roots.to_vec()
            }
        }
    }

    fn is_primitive(&self, a: Felt) -> bool {
        if a.is_zero() {
            return false;
        }
        let n = self.units();
        prime_factors(n)
            .into_iter()
            .all(|p| self.pow(a, n / p) != Felt::ONE)
    }

    fn find_generator(&self) -> Felt {
        (2..self.order())
            .map(Felt)
            .find(|&cand| self.is_primitive(cand))
            .expect("every finite field has a primitive element")
    }
}

impl Serialize for FieldSpec {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("FieldSpec", 3)?;
        st.serialize_field("m", &self.m)?;
        st.serialize_field("modulus", &format!("{:#x}", self.modulus))?;
        st.serialize_field("generator", &self.generator)?;
        st.end()
    }
}

impl<'de> Deserialize<'de> for FieldSpec {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Raw {
            m: u32,
            modulus: String,
            generator: String,
        }
        let raw = Raw::deserialize(d)?;
        let modulus = Felt::parse_hex(&raw.modulus).map_err(D::Error::custom)?.0;
        let generator = Felt::parse_hex(&raw.generator).map_err(D::Error::custom)?;
        FieldSpec::with_generator(raw.m, modulus, generator).map_err(D::Error::custom)
    }
}

/// Degree of a nonzero GF(2) polynomial encoded in a u64.
fn poly_degree(p: u64) -> u32 {
    debug_assert!(p != 0);
    63 - p.leading_zeros()
}

/// Remainder of polynomial division over GF(2).
fn poly_rem(mut a: u64, b: u64) -> u64 {
    let db = poly_degree(b);
    while a != 0 && poly_degree(a) >= db {
        a ^= b << (poly_degree(a) - db);
    }
    a
}

/// Exhaustive trial division: returns a monic factor of degree 1..=m/2 when
/// one exists, which is exactly when the modulus is reducible.
fn nontrivial_factor(modulus: u64, m: u32) -> Option<u64> {
    for deg in 1..=m / 2 {
        for low in 0..1u64 << deg {
            let div = (1u64 << deg) | low;
            if poly_rem(modulus, div) == 0 {
                return Some(div);
            }
        }
    }
    None
}

/// Distinct prime factors by trial division (n ≤ 2^32 here, so this is cheap).
fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// One-time discrete-logarithm table against the field generator, with the
/// matching power table. Supports O(1) logs, inverses and order-3 character
/// residues for m ≤ 16.
#[derive(Debug)]
pub struct DlogTable {
    units: u64,
    log: Vec<u32>,
    exp: Vec<u64>,
}

impl DlogTable {
    pub fn new(f: &FieldSpec) -> Result<DlogTable, FieldError> {
        if f.m() > MAX_DLOG_DEGREE {
            return Err(FieldError::DlogTableTooLarge(f.m()));
        }
        let q = f.order() as usize;
        let mut log = vec![u32::MAX; q];
        let mut exp = Vec::with_capacity(q - 1);
        let mut acc = Felt::ONE;
        for i in 0..f.units() {
            debug_assert_eq!(log[acc.0 as usize], u32::MAX, "generator not primitive");
            log[acc.0 as usize] = i as u32;
            exp.push(acc.0);
            acc = f.mul(acc, f.generator());
        }
        Ok(DlogTable {
            units: f.units(),
            log,
            exp,
        })
    }

    /// Discrete log of a nonzero element; `None` at zero.
    pub fn dlog(&self, a: Felt) -> Option<u64> {
        let v = self.log[a.0 as usize];
        (v != u32::MAX).then_some(v as u64)
    }

    /// Table-lookup inverse; `None` at zero.
    pub fn inv(&self, a: Felt) -> Option<Felt> {
        let l = self.dlog(a)?;
        Some(Felt(self.exp[((self.units - l) % self.units) as usize]))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    fn f16() -> FieldSpec {
        FieldSpec::new(4, None).unwrap()
    }

    #[test]
    fn default_moduli_table() {
        let expect = [(2, 0x7), (3, 0xb), (4, 0x13), (8, 0x11d), (16, 0x1002d)];
        for (m, modulus) in expect {
            let f = FieldSpec::new(m, None).unwrap();
            assert_eq!(f.modulus(), modulus, "m={m}");
            assert_eq!(f.generator(), Felt(0x2), "x generates the defaults");
        }
        // Every table entry is accepted (irreducible) with generator x.
        for m in MIN_DEGREE..=MAX_DEGREE {
            let f = FieldSpec::new(m, None).unwrap();
            assert_eq!(f.generator(), Felt(0x2), "m={m}");
        }
    }

    #[test]
    fn construction_rejects_bad_moduli() {
        assert_eq!(
            FieldSpec::new(1, None).unwrap_err(),
            FieldError::DegreeOutOfRange(1)
        );
        assert_eq!(
            FieldSpec::new(33, None).unwrap_err(),
            FieldError::DegreeOutOfRange(33)
        );
        assert_eq!(
            FieldSpec::new(5, Some(0x13)).unwrap_err(),
            FieldError::BadModulusShape {
                m: 5,
                modulus: 0x13
            }
        );
        // x⁴ + x² + 1 = (x² + x + 1)²: the reported factor must divide.
        match FieldSpec::new(4, Some(0x15)).unwrap_err() {
            FieldError::ReducibleModulus { modulus, factor } => {
                assert_eq!(modulus, 0x15);
                assert_eq!(poly_rem(0x15, factor), 0);
                assert!(factor > 1);
            }
            other => panic!("unexpected error {other:?}"),
        }
    }

    #[test]
    fn alternate_moduli_accepted() {
        // x⁴ + x³ + 1 is primitive: x generates.
        let f = FieldSpec::new(4, Some(0x19)).unwrap();
        assert_eq!(f.generator(), Felt(0x2));
        // x⁴ + x³ + x² + x + 1 is irreducible but x has order 5; the searched
        // generator must still have full order 15.
        let f = FieldSpec::new(4, Some(0x1f)).unwrap();
        assert_eq!(f.pow(Felt(0x2), 5), Felt::ONE, "x has order 5 here");
        let g = f.generator();
        assert_eq!(f.pow(g, 15), Felt::ONE);
        assert_ne!(f.pow(g, 5), Felt::ONE);
        assert_ne!(f.pow(g, 3), Felt::ONE);
    }

    #[test]
    fn mul_examples_in_f16() {
        let f = f16();
        let w = f.generator();
        let w3 = f.pow(w, 3);
        // ω⁴ = ω + 1 under modulus x⁴ + x + 1.
        assert_eq!(f.mul(w3, w), Felt(0x3));
        for a in f.all_elements() {
            assert_eq!(f.mul(Felt::ONE, a), a);
        }
        // (ω²+1)⁵ = ω²+ω+1, via mul ∘ pow.
        let a = Felt(0x5);
        assert_eq!(f.mul(a, f.pow(a, 4)), f.pow(a, 5));
        assert_eq!(f.pow(a, 5), Felt(0x7));
    }

    #[test]
    fn field_axioms_exhaustive_small() {
        for m in MIN_DEGREE..=8 {
            let f = FieldSpec::new(m, None).unwrap();
            for a in f.all_elements() {
                for b in f.all_elements() {
                    assert_eq!(f.mul(a, b), f.mul(b, a));
                }
                if !a.is_zero() {
                    assert_eq!(f.mul(a, f.inv(a).unwrap()), Felt::ONE);
                    assert_eq!(f.pow(a, f.units()), Felt::ONE);
                }
            }
        }
        assert_eq!(
            f16().inv(Felt::ZERO).unwrap_err(),
            FieldError::DivisionByZero
        );
    }

    #[test]
    fn trace_examples_and_balance() {
        let f = f16();
        assert_eq!(f.trace(Felt::ZERO), 0);
        assert_eq!(f.trace(Felt::ONE), 0, "four equal terms in char 2");
        let w3 = f.pow(f.generator(), 3);
        assert_eq!(f.trace(w3), 1);
        for m in MIN_DEGREE..=8 {
            let f = FieldSpec::new(m, None).unwrap();
            let zeros = f.all_elements().filter(|&a| f.trace(a) == 0).count();
            assert_eq!(zeros as u64, f.order() / 2, "m={m}");
            // additivity
            for a in f.all_elements().step_by(3) {
                for b in f.all_elements().step_by(5) {
                    assert_eq!(f.trace(a + b), f.trace(a) ^ f.trace(b));
                }
            }
        }
    }

    #[test]
    fn cube_tests() {
        let f = f16();
        assert!(!f.is_cube(Felt(0x5)).unwrap(), "ω²+1 is not a cube");
        assert!(f.is_cube(Felt::ONE).unwrap());
        assert_eq!(f.is_cube(Felt::ZERO).unwrap_err(), FieldError::CubeOfZero);
        let f8 = FieldSpec::new(3, None).unwrap();
        for a in f8.nonzero_elements() {
            assert!(f8.is_cube(a).unwrap(), "odd m: cubing is a bijection");
        }
        for m in [4, 6, 8] {
            let f = FieldSpec::new(m, None).unwrap();
            let cubes: HashSet<Felt> = f.nonzero_elements().map(|a| f.cube(a)).collect();
            assert_eq!(cubes.len() as u64, f.units() / 3);
            for a in f.nonzero_elements() {
                assert_eq!(f.is_cube(a).unwrap(), cubes.contains(&a), "m={m} a={a}");
            }
        }
    }

    #[test]
    fn artin_schreier_examples() {
        let f = f16();
        assert_eq!(
            f.solve_artin_schreier(Felt::ZERO),
            Some((Felt::ZERO, Felt::ONE))
        );
        let w = f.generator();
        let (w0, w1) = f.solve_artin_schreier(w).expect("Tr(ω) = 0");
        assert_eq!((w0, w1), (Felt(0xa), Felt(0xb)));
        for r in [w0, w1] {
            assert_eq!(f.frobenius(r) + r, w);
        }
        assert_eq!(f.solve_artin_schreier(f.pow(w, 3)), None, "Tr(ω³) = 1");
    }

    #[test]
    fn artin_schreier_exhaustive() {
        for m in MIN_DEGREE..=8 {
            let f = FieldSpec::new(m, None).unwrap();
            for c in f.all_elements() {
                match f.solve_artin_schreier(c) {
                    Some((w0, w1)) => {
                        assert_eq!(f.trace(c), 0);
                        assert_eq!(w1, w0 + Felt::ONE);
                        assert!(w0 < w1);
                        assert_eq!(f.frobenius(w0) + w0, c);
                    }
                    None => assert_eq!(f.trace(c), 1),
                }
            }
        }
    }

    #[test]
    fn quadratic_examples() {
        let f = f16();
        assert_eq!(
            f.solve_quadratic(Felt::ONE, Felt::ZERO),
            vec![Felt::ZERO, Felt::ONE]
        );
        for b in f.all_elements() {
            let roots = f.solve_quadratic(Felt::ZERO, b);
            assert_eq!(roots.len(), 1);
            assert_eq!(f.frobenius(roots[0]), b);
        }
        assert!(f.solve_quadratic(Felt::ONE, f.pow(f.generator(), 3)).is_empty());
    }

    #[test]
    fn quadratic_root_criterion_exhaustive_m4_m5() {
        for m in [4, 5] {
            let f = FieldSpec::new(m, None).unwrap();
            for a in f.nonzero_elements() {
                let a2inv = f.inv(f.frobenius(a)).unwrap();
                for b in f.all_elements() {
                    let roots = f.solve_quadratic(a, b);
                    let want = if f.trace(f.mul(b, a2inv)) == 0 { 2 } else { 0 };
                    assert_eq!(roots.len(), want);
                    for x in roots {
                        assert_eq!(f.frobenius(x) + f.mul(a, x) + b, Felt::ZERO);
                    }
                }
            }
        }
    }

    #[test]
    fn dlog_table_roundtrip() {
        let f = f16();
        let t = DlogTable::new(&f).unwrap();
        assert_eq!(t.dlog(Felt::ONE), Some(0));
        assert_eq!(t.dlog(f.generator()), Some(1));
        assert_eq!(t.dlog(Felt::ZERO), None);
        for a in f.nonzero_elements() {
            assert_eq!(f.pow(f.generator(), t.dlog(a).unwrap()), a);
            assert_eq!(t.inv(a).unwrap(), f.inv(a).unwrap());
        }
        let big = FieldSpec::new(17, None).unwrap();
        assert_eq!(
            DlogTable::new(&big).unwrap_err(),
            FieldError::DlogTableTooLarge(17)
        );
    }

    #[test]
    fn serde_hex_forms() {
        let f = f16();
        assert_eq!(serde_json::to_string(&Felt(0x5)).unwrap(), "\"0x5\"");
        assert_eq!(
            serde_json::to_string(&f).unwrap(),
            r#"{"m":4,"modulus":"0x13","generator":"0x2"}"#
        );
        let back: FieldSpec = serde_json::from_str(r#"{"m":4,"modulus":"0x13","generator":"0x2"}"#).unwrap();
        assert_eq!(back, f);
        // A non-primitive generator is rejected on re-ingestion.
        let bad: Result<FieldSpec, _> =
            serde_json::from_str(r#"{"m":4,"modulus":"0x13","generator":"0x0"}"#);
        assert!(bad.is_err());
        let v: Felt = serde_json::from_str("\"0xf\"").unwrap();
        assert_eq!(v, Felt(0xf));
        assert!(Felt::parse_hex("zz").is_err());
    }
}
