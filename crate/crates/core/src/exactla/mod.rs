//! Exact integer linear algebra: Smith normal form over the integers,
//! elementary divisors modulo `q`, and submodule membership in `Z_q^r`.

mod matrix;
mod smith;

pub(crate) use smith::Reduction;

pub use matrix::IntegerMatrix;
pub use smith::{smith_normal_form, SmithDecomposition};

use num_bigint::{BigInt, BigUint};
use num_traits::One;

use crate::numtheory::{gcd_big_u64, residue};
use crate::{Error, Result};

/// Elementary divisors of a matrix over `Z_q`: `0 < d_1 | d_2 | ... | d_s | q`
/// with every `d_i < q`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ModularDivisors {
    q: u64,
    values: Vec<u64>,
}

impl ModularDivisors {
    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn values(&self) -> &[u64] {
        &self.values
    }

    /// Number `s` of nonzero elementary divisors modulo `q`.
    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Order `q^s / (d_1 ... d_s)` of the column image in `Z_q^r`.
    pub fn image_cardinality(&self) -> BigUint {
        self.values
            .iter()
            .fold(BigUint::one(), |acc, &d| acc * BigUint::from(self.q / d))
    }
}

/// Reduces an integer divisor chain modulo `q`: `d_i = gcd(e_i, q)` for
/// `i <= s`, where `s` is the last index with `q` not dividing `e_s`.
pub fn divisors_mod_q(decomposition: &SmithDecomposition, q: u64) -> Result<ModularDivisors> {
    if q < 1 {
        return Err(Error::InvalidModulus(q));
    }
    let all: Vec<u64> = decomposition.divisors().iter().map(|e| gcd_big_u64(e, q)).collect();
    let s = all.iter().rposition(|&d| d < q).map_or(0, |i| i + 1);
    Ok(ModularDivisors {
        q,
        values: all[..s].to_vec(),
    })
}

/// Elementary divisors of `[m]_q`, computed from the least nonnegative lift.
pub fn modular_divisors(m: &IntegerMatrix, q: u64) -> Result<ModularDivisors> {
    if q < 1 {
        return Err(Error::InvalidModulus(q));
    }
    divisors_mod_q(&smith_normal_form(&reduce(m, q), false), q)
}

/// Whether `[v]_q` lies in the `Z_q`-submodule of `Z_q^{rows}` generated by
/// the columns of `[m]_q`.
///
/// Decided by comparing the elementary divisors of `[m]_q` and `[m | v]_q`:
/// appending a vector never shrinks the image, and equal divisors mean equal
/// image cardinality.
pub fn in_span_mod_q(m: &IntegerMatrix, v: &[BigInt], q: u64) -> Result<bool> {
    if q < 1 {
        return Err(Error::InvalidModulus(q));
    }
    if v.len() != m.rows() {
        return Err(Error::InvalidInput(format!(
            "vector of length {} against a matrix with {} rows",
            v.len(),
            m.rows()
        )));
    }
    if v.iter().all(|x| residue(x, q) == 0) {
        return Ok(true);
    }
    let base = modular_divisors(m, q)?;
    let extended = modular_divisors(&m.with_column(v)?, q)?;
    Ok(base == extended)
}

fn reduce(m: &IntegerMatrix, q: u64) -> IntegerMatrix {
    let entries = m.entries().iter().map(|x| BigInt::from(residue(x, q))).collect();
    IntegerMatrix::new(m.rows(), m.cols(), entries).expect("shape preserved")
}
