//! The deformed type-B arrangement `B_m^[0,a]`: hyperplanes `x_i = k`,
//! `x_i - x_j = k` and `x_i + x_j = k` for `k = 0..=a`, with closed forms
//! for its mod-`q` counts.

mod closed;
mod genfun;
mod shift;

pub use closed::{closed_form_constituents, closed_form_operators, even_constituent_unsimplified, ClosedForms};
pub use genfun::{a_prime, f_poly, genfun_count, shift_identity_check};
pub use shift::{apply_shift_poly, ShiftPolynomial};

use num_bigint::BigInt;
use rayon::prelude::*;
use serde::Serialize;

use crate::arrangement::{q0_bound, ArrangementSpec};
use crate::oracle::count_complement;
use crate::{Error, Limits, Result};

/// Builds `B_m^[0,a]` with columns ordered as all `x_i` forms, then
/// `x_i - x_j`, then `x_i + x_j` (`i < j`), constants ascending within each form.
pub fn bma_spec(m: usize, a: u64) -> Result<ArrangementSpec> {
    if m < 1 || a < 1 {
        return Err(Error::InvalidInput(format!(
            "m and a must be positive, got m = {m}, a = {a}"
        )));
    }
    let mut forms: Vec<Vec<i64>> = Vec::new();
    for i in 0..m {
        let mut c = vec![0; m];
        c[i] = 1;
        forms.push(c);
    }
    for sign in [-1, 1] {
        for i in 0..m {
            for j in i + 1..m {
                let mut c = vec![0; m];
                c[i] = 1;
                c[j] = sign;
                forms.push(c);
            }
        }
    }
    let mut columns = Vec::new();
    let mut constants = Vec::new();
    for f in &forms {
        for k in 0..=a as i64 {
            columns.push(f.clone());
            constants.push(k);
        }
    }
    ArrangementSpec::from_columns(m, &columns, &constants)
}

/// The last modulus not covered by the closed forms, `2a(m+1) - 2`.
pub fn closed_form_bound(m: usize, a: u64) -> u64 {
    2 * a * (m as u64 + 1) - 2
}

fn sweep_points(m: usize, upto: u64) -> Option<u64> {
    (1..=upto).try_fold(0u64, |acc, q| acc.checked_add(q.checked_pow(m as u32)?))
}

/// Greatest `q <= 2a(m+1) - 2` at which the enumerated count differs from the
/// closed form for the parity of `q`; zero when they agree throughout.
pub fn qbar(m: usize, a: u64, limits: &Limits) -> Result<u64> {
    let forms = closed_form_constituents(m, a)?;
    let bound = closed_form_bound(m, a);
    let needed = sweep_points(m, bound);
    if needed.is_none_or(|n| n > limits.sweep_budget) {
        return Err(Error::resource(
            "modulus sweep",
            needed.map_or_else(|| "more than 2^64 points".into(), |n| format!("{n} points")),
            limits.sweep_budget,
        ));
    }
    let spec = bma_spec(m, a)?;
    let mismatches: Vec<u64> = (1..=bound)
        .into_par_iter()
        .map(|q| {
            let count = count_complement(&spec, q, limits)?;
            Ok((BigInt::from(count) != forms.value(q)).then_some(q))
        })
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .flatten()
        .collect();
    Ok(mismatches.into_iter().max().unwrap_or(0))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct BmaTableRow {
    pub m: usize,
    pub a: u64,
    pub q0: u64,
    pub two_a_m1_minus2: u64,
    pub qbar: u64,
}

impl BmaTableRow {
    pub fn csv_header() -> &'static str {
        "m,a,q0,bound,qbar"
    }

    pub fn to_csv(&self) -> String {
        format!(
            "{},{},{},{},{}",
            self.m, self.a, self.q0, self.two_a_m1_minus2, self.qbar
        )
    }
}

pub fn table_row(m: usize, a: u64, limits: &Limits) -> Result<BmaTableRow> {
    let spec = bma_spec(m, a)?;
    let q0 = q0_bound(&spec, limits)?;
    let qbar = qbar(m, a, limits)?;
    Ok(BmaTableRow {
        m,
        a,
        q0,
        two_a_m1_minus2: closed_form_bound(m, a),
        qbar,
    })
}
