//! Fixed inputs shared by the benchmarks.

use modarr::athanasiadis::bma_spec;
use modarr::{ArrangementSpec, IntegerMatrix};

/// A dense square matrix with mixed signs and no small structure.
pub fn dense_matrix(size: usize) -> IntegerMatrix {
    let mut x: i64 = 7;
    let rows: Vec<Vec<i64>> = (0..size)
        .map(|_| {
            (0..size)
                .map(|_| {
                    x = (x * 1103 + 12345) % 2039;
                    x % 41 - 20
                })
                .collect()
        })
        .collect();
    IntegerMatrix::from_rows(&rows)
}

/// The deformed type-B arrangement in dimension `m` with constants `0..=a`.
pub fn bma(m: usize, a: u64) -> ArrangementSpec {
    bma_spec(m, a).expect("valid parameters")
}
