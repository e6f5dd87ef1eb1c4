//! Integral arrangements `(C, b)` and their per-subset invariants.
//!
//! Points are row vectors: the hyperplane `H_{j,q}` is the solution set of
//! `z . [c_j]_q = [b_j]_q` in `Z_q^m`, and `H_{J,q}` solves `z [C_J]_q = [b_J]_q`.
//! Column subsets `J` are 0-based index lists.

mod periods;
mod profile;
pub(crate) mod walk;

pub use periods::{lcm_period, period_data, q0_bound, q1_bound, qstar, PeriodData};
pub use profile::{fiber_cardinality, subset_profile, SubsetProfile};

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::exactla::IntegerMatrix;
use crate::numtheory::content;
use crate::{Error, Result};

/// An integral arrangement: `n` hyperplanes in dimension `m`, given by the
/// columns `c_j` of an `m x n` coefficient matrix and constants `b_j`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ArrangementSpec {
    coefficients: IntegerMatrix,
    constants: Vec<BigInt>,
}

impl ArrangementSpec {
    pub fn new(coefficients: IntegerMatrix, constants: Vec<BigInt>) -> Result<Self> {
        let (m, n) = (coefficients.rows(), coefficients.cols());
        if m == 0 {
            return Err(Error::InvalidInput("m: dimension must be at least 1".into()));
        }
        if n == 0 {
            return Err(Error::InvalidInput("n: at least one hyperplane is required".into()));
        }
        if constants.len() != n {
            return Err(Error::InvalidInput(format!(
                "b: expected {n} constants, got {}",
                constants.len()
            )));
        }
        if let Some(j) = (0..n).find(|&j| (0..m).all(|i| coefficients.get(i, j).is_zero())) {
            return Err(Error::InvalidInput(format!("columns[{j}]: zero coefficient vector")));
        }
        Ok(ArrangementSpec {
            coefficients,
            constants,
        })
    }

    /// Convenience constructor from machine-integer columns.
    pub fn from_columns(m: usize, columns: &[Vec<i64>], constants: &[i64]) -> Result<Self> {
        let cols: Vec<Vec<BigInt>> = columns
            .iter()
            .map(|c| c.iter().map(|&x| BigInt::from(x)).collect())
            .collect();
        let c = IntegerMatrix::from_columns(m, &cols)?;
        Self::new(c, constants.iter().map(|&x| BigInt::from(x)).collect())
    }

    /// Ambient dimension `m`.
    pub fn m(&self) -> usize {
        self.coefficients.rows()
    }

    /// Number of hyperplanes `n`.
    pub fn n(&self) -> usize {
        self.coefficients.cols()
    }

    pub fn coefficients(&self) -> &IntegerMatrix {
        &self.coefficients
    }

    pub fn constants(&self) -> &[BigInt] {
        &self.constants
    }

    pub fn column(&self, j: usize) -> Vec<BigInt> {
        self.coefficients.column(j)
    }

    pub fn is_central(&self) -> bool {
        self.constants.iter().all(Zero::is_zero)
    }

    /// `C_J`, the `m x |J|` matrix of the selected columns.
    pub fn coefficient_submatrix(&self, subset: &[usize]) -> IntegerMatrix {
        self.coefficients.select_columns(subset)
    }

    /// `A_J`, the `(m+1) x |J|` matrix `C_J` stacked over `b_J`.
    pub fn augmented_submatrix(&self, subset: &[usize]) -> IntegerMatrix {
        let b: Vec<BigInt> = subset.iter().map(|&j| self.constants[j].clone()).collect();
        self.coefficient_submatrix(subset)
            .with_row(&b)
            .expect("row length matches subset")
    }

    /// Positive gcd of the entries of `c_j`.
    pub fn column_gcd(&self, j: usize) -> BigInt {
        content(&self.column(j))
    }

    /// Columns of `A = (C over b)`, each of length `m + 1`.
    pub(crate) fn augmented_columns(&self) -> Vec<Vec<BigInt>> {
        (0..self.n())
            .map(|j| {
                let mut c = self.column(j);
                c.push(self.constants[j].clone());
                c
            })
            .collect()
    }

    pub(crate) fn coefficient_columns(&self) -> Vec<Vec<BigInt>> {
        (0..self.n()).map(|j| self.column(j)).collect()
    }

    /// Checks and normalizes a subset: in range, no repeats, sorted ascending.
    pub fn normalize_subset(&self, subset: &[usize]) -> Result<Vec<usize>> {
        let mut s = subset.to_vec();
        s.sort_unstable();
        if s.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::InvalidSubset(format!("{subset:?} repeats an index")));
        }
        if let Some(&j) = s.last().filter(|&&j| j >= self.n()) {
            return Err(Error::InvalidSubset(format!(
                "index {j} out of range for n = {}",
                self.n()
            )));
        }
        Ok(s)
    }

    /// Parses the arrangement JSON format.
    pub fn from_json(text: &str) -> Result<Self> {
        let raw: ArrangementJson =
            serde_json::from_str(text).map_err(|e| Error::InvalidInput(format!("malformed arrangement JSON: {e}")))?;
        raw.into_spec()
    }

    /// Serializes to the arrangement JSON format (single line, keys in the
    /// order `m`, `n`, `columns`, `b`).
    pub fn to_json(&self) -> String {
        let raw = ArrangementJson {
            m: self.m(),
            n: self.n(),
            columns: (0..self.n())
                .map(|j| self.column(j).iter().map(JsonInt::from_big).collect())
                .collect(),
            b: self.constants.iter().map(JsonInt::from_big).collect(),
        };
        serde_json::to_string(&raw).expect("serializable")
    }
}

/// Integer accepted in JSON either as a number or as a decimal string.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(untagged)]
pub(crate) enum JsonInt {
    Number(i64),
    Text(String),
}

impl JsonInt {
    pub(crate) fn from_big(x: &BigInt) -> Self {
        match x.to_i64() {
            Some(v) => JsonInt::Number(v),
            None => JsonInt::Text(x.to_string()),
        }
    }

    pub(crate) fn to_big(&self, field: &str) -> Result<BigInt> {
        match self {
            JsonInt::Number(v) => Ok(BigInt::from(*v)),
            JsonInt::Text(s) => s
                .trim()
                .parse()
                .map_err(|_| Error::InvalidInput(format!("{field}: {s:?} is not an integer"))),
        }
    }
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ArrangementJson {
    m: usize,
    n: usize,
    columns: Vec<Vec<JsonInt>>,
    b: Vec<JsonInt>,
}

impl ArrangementJson {
    fn into_spec(self) -> Result<ArrangementSpec> {
        if self.columns.len() != self.n {
            return Err(Error::InvalidInput(format!(
                "columns: expected n = {} columns, got {}",
                self.n,
                self.columns.len()
            )));
        }
        if self.b.len() != self.n {
            return Err(Error::InvalidInput(format!(
                "b: expected n = {} constants, got {}",
                self.n,
                self.b.len()
            )));
        }
        let mut cols = Vec::with_capacity(self.n);
        for (j, c) in self.columns.iter().enumerate() {
            if c.len() != self.m {
                return Err(Error::InvalidInput(format!(
                    "columns[{j}]: expected m = {} entries, got {}",
                    self.m,
                    c.len()
                )));
            }
            let col = c
                .iter()
                .enumerate()
                .map(|(i, x)| x.to_big(&format!("columns[{j}][{i}]")))
                .collect::<Result<Vec<_>>>()?;
            cols.push(col);
        }
        let b = self
            .b
            .iter()
            .enumerate()
            .map(|(j, x)| x.to_big(&format!("b[{j}]")))
            .collect::<Result<Vec<_>>>()?;
        ArrangementSpec::new(IntegerMatrix::from_columns(self.m, &cols)?, b)
    }
}
