//! Double-error-correcting BCH codes over GF(2^m): the syndrome column
//! system (x, x³) indexed by generator powers, the expanded binary
//! parity-check matrix, materialized code objects for small m, and syndrome
//! evaluation.

use crate::bitlin::{BitMatrix, BitVec};
use crate::codes::{BinaryCode, CodeError};
use crate::gf2m::{Felt, FieldSpec};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

/// Largest extension degree for which the column system is materialized.
pub const MAX_COLUMNS_DEGREE: u32 = 16;
/// Largest extension degree for the expanded binary parity-check matrix.
pub const MAX_PARITY_DEGREE: u32 = 12;
/// Largest extension degree for full code materialization.
pub const MAX_CODE_DEGREE: u32 = 6;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum BchError {
    #[error("degree m={m} exceeds limit {limit} for {what}")]
    DegreeTooLarge { m: u32, limit: u32, what: &'static str },
    #[error("designed error count e={0} unsupported (only 1 and 2)")]
    UnsupportedE(u32),
    #[error("word length {got} does not match code length {want}")]
    WordLengthMismatch { got: usize, want: usize },
    #[error(transparent)]
    Code(#[from] CodeError),
}

/// An element of GF(2^m)²: a syndrome value, a parity-check column, or a
/// cover target.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SyndromePair {
    pub a: Felt,
    pub b: Felt,
}

impl SyndromePair {
    pub const ZERO: SyndromePair = SyndromePair {
        a: Felt::ZERO,
        b: Felt::ZERO,
    };

    pub fn new(a: Felt, b: Felt) -> SyndromePair {
        SyndromePair { a, b }
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    /// Packs into a 2m-bit value: low m bits the first coordinate, high m
    /// bits the second.
    pub fn packed(&self, m: u32) -> u64 {
        debug_assert!(self.a.0 >> m == 0 && self.b.0 >> m == 0);
        self.a.0 | self.b.0 << m
    }

    pub fn from_packed(m: u32, bits: u64) -> SyndromePair {
        let mask = (1u64 << m) - 1;
        SyndromePair {
            a: Felt(bits & mask),
            b: Felt(bits >> m & mask),
        }
    }
}

impl Serialize for SyndromePair {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        (self.a, self.b).serialize(s)
    }
}

impl<'de> Deserialize<'de> for SyndromePair {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let (a, b) = <(Felt, Felt)>::deserialize(d)?;
        Ok(SyndromePair { a, b })
    }
}

/// The n = 2^m − 1 parity-check columns of the double-error-correcting BCH
/// code: column j is (α^j, α^3j) for the field generator α.
#[derive(Clone, Debug, Serialize)]
pub struct ColumnSystem {
    field: FieldSpec,
    columns: Vec<SyndromePair>,
}

/// Builds the column system in generator-power order.
pub fn build_columns(f: &FieldSpec) -> Result<ColumnSystem, BchError> {
    if f.m() > MAX_COLUMNS_DEGREE {
        return Err(BchError::DegreeTooLarge {
            m: f.m(),
            limit: MAX_COLUMNS_DEGREE,
            what: "column system",
        });
    }
    let mut columns = Vec::with_capacity(f.units() as usize);
    let mut x = Felt::ONE;
    for _ in 0..f.units() {
        columns.push(SyndromePair::new(x, f.cube(x)));
        x = f.mul(x, f.generator());
    }
    debug_assert_eq!(columns[0], SyndromePair::new(Felt::ONE, Felt::ONE));
    Ok(ColumnSystem {
        field: f.clone(),
        columns,
    })
}

impl ColumnSystem {
    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    /// Code length 2^m − 1.
    pub fn n(&self) -> usize {
        self.columns.len()
    }

    pub fn columns(&self) -> &[SyndromePair] {
        &self.columns
    }

    /// Columns as packed 2m-bit values, in column order.
    pub fn packed_columns(&self) -> Vec<u64> {
        let m = self.field.m();
        self.columns.iter().map(|c| c.packed(m)).collect()
    }

    /// The GF(2^m)²-sum of the columns at the word's support. A word is a
    /// codeword exactly when its syndrome is (0, 0).
    pub fn syndrome(&self, word: &BitVec) -> Result<SyndromePair, BchError> {
        if word.width() != self.n() {
            return Err(BchError::WordLengthMismatch {
                got: word.width(),
                want: self.n(),
            });
        }
        let mut a = Felt::ZERO;
        let mut b = Felt::ZERO;
        for (j, col) in self.columns.iter().enumerate() {
            if word.get(j) {
                a += col.a;
                b += col.b;
            }
        }
        Ok(SyndromePair::new(a, b))
    }
}

impl<'de> Deserialize<'de> for ColumnSystem {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Raw {
            field: FieldSpec,
            columns: Vec<SyndromePair>,
        }
        let raw = Raw::deserialize(d)?;
        let rebuilt = build_columns(&raw.field).map_err(D::Error::custom)?;
        if rebuilt.columns != raw.columns {
            return Err(D::Error::custom("columns are not the generator-power column system of the field"));
        }
        Ok(rebuilt)
    }
}

fn check_e(e: u32) -> Result<(), BchError> {
    if e == 1 || e == 2 {
        Ok(())
    } else {
        Err(BchError::UnsupportedE(e))
    }
}

/// The me × n binary parity-check matrix: for each exponent i in {1, 3, …,
/// 2e−1}, the m coordinate rows of the field row (α^{ij})_j under the
/// polynomial-basis coordinate map.
pub fn binary_parity_check(f: &FieldSpec, e: u32) -> Result<BitMatrix, BchError> {
    check_e(e)?;
    if f.m() > MAX_PARITY_DEGREE {
        return Err(BchError::DegreeTooLarge {
            m: f.m(),
            limit: MAX_PARITY_DEGREE,
            what: "binary parity-check",
        });
    }
    let m = f.m() as usize;
    let n = f.units() as usize;
    let mut rows = Vec::with_capacity(e as usize * m);
    for block in 0..e {
        let exponent = 2 * block + 1; // 1, then 3
        let step = f.pow(f.generator(), u64::from(exponent));
        let mut x = Felt::ONE;
        let mut elements = Vec::with_capacity(n);
        for _ in 0..n {
            elements.push(x);
            x = f.mul(x, step);
        }
        for bit in 0..m {
            let mut row = BitVec::zeros(n).expect("n within width limit");
            for (j, el) in elements.iter().enumerate() {
                if el.0 >> bit & 1 == 1 {
                    row.set(j, true);
                }
            }
            rows.push(row);
        }
    }
    Ok(BitMatrix::from_rows(n, rows).expect("uniform width"))
}

/// The binary BCH code with `binary_parity_check` as its parity-check
/// matrix, fully materialized.
pub fn bch_code(f: &FieldSpec, e: u32) -> Result<BinaryCode, BchError> {
    check_e(e)?;
    if f.m() > MAX_CODE_DEGREE {
        return Err(BchError::DegreeTooLarge {
            m: f.m(),
            limit: MAX_CODE_DEGREE,
            what: "code materialization",
        });
    }
    Ok(BinaryCode::from_parity_check(binary_parity_check(f, e)?)?)
}
