use num_traits::ToPrimitive;
use serde::Serialize;

use super::walk::{Visit, Walk};
use super::ArrangementSpec;
use crate::numtheory::lcm_u64;
use crate::{Error, Limits, Result};

/// The global constants of an arrangement.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct PeriodData {
    /// lcm of `e(J)` over nonempty `J`: a period of the counting function.
    pub rho0: u64,
    /// Counting is quasi-polynomial for `q > q0`.
    pub q0: u64,
    /// Auxiliary bound entering `qstar`.
    pub q1: u64,
    /// Intersection posets are periodic for `q > qstar`.
    pub qstar: u64,
}

/// `(lcm, max over |J| >= 2)` of `e(J)` across independent coefficient subsets.
///
/// Every `J` contains an independent `J'` of the same rank with
/// `e(J) | e(J')`, so independent subsets suffice for the lcm. A pair
/// `(J, j)` raising the rank contains an independent `I + j` of the same rank
/// and size at least two, so they also suffice for `q1`.
fn coefficient_walk(spec: &ArrangementSpec, limits: &Limits) -> Result<(u64, u64)> {
    let cols = spec.coefficient_columns();
    let walk = Walk::new(&cols, spec.m(), spec.m(), limits.subset_cap);
    let (rho0, q1) = walk.fold(
        || (Some(1u64), 0u64),
        |acc: &mut (Option<u64>, u64), v: Visit<'_>| {
            acc.0 = acc.0.and_then(|l| lcm_u64(l, v.last_divisor));
            if v.subset.len() >= 2 {
                acc.1 = acc.1.max(v.last_divisor);
            }
        },
        |a, b| (a.0.zip(b.0).and_then(|(x, y)| lcm_u64(x, y)), a.1.max(b.1)),
    )?;
    let rho0 = rho0.ok_or_else(|| Error::overflow("lcm period"))?;
    Ok((rho0, q1))
}

/// `rho0 = lcm{ e(J) : J nonempty }`.
pub fn lcm_period(spec: &ArrangementSpec, limits: &Limits) -> Result<u64> {
    coefficient_walk(spec, limits).map(|r| r.0)
}

/// `q0 = max{ e'(J) : rank A_J = rank C_J + 1, 1 <= |J| <= m + 1 }`, or 0.
///
/// Only subsets with independent `A_J` columns are visited: any rank-jump `J`
/// contains such a `J'` of equal `A`-rank with `e'(J) | e'(J')`. On an
/// independent `A_J` the rank jump holds exactly when the last coordinate
/// axis lies in the column span.
pub fn q0_bound(spec: &ArrangementSpec, limits: &Limits) -> Result<u64> {
    if spec.is_central() {
        return Ok(0);
    }
    let cols = spec.augmented_columns();
    let dim = spec.m() + 1;
    let walk = Walk::new(&cols, dim, dim, limits.subset_cap);
    walk.fold(
        || 0u64,
        |acc: &mut u64, v: Visit<'_>| {
            if v.spans_last_axis {
                *acc = (*acc).max(v.last_divisor);
            }
        },
        |a, b| a.max(b),
    )
}

/// `q1 = max{ e(J + j) : rank C_{J+j} = rank C_J + 1, 1 <= |J| <= m - 1 }`, or 0.
pub fn q1_bound(spec: &ArrangementSpec, limits: &Limits) -> Result<u64> {
    coefficient_walk(spec, limits).map(|r| r.1)
}

fn max_column_gcd(spec: &ArrangementSpec) -> Result<u64> {
    (0..spec.n()).try_fold(1u64, |acc, j| {
        let g = spec
            .column_gcd(j)
            .to_u64()
            .ok_or_else(|| Error::overflow("column gcd"))?;
        Ok(acc.max(g))
    })
}

/// `q* = max{ q0, q1, max_j gcd(c_j) }`.
pub fn qstar(spec: &ArrangementSpec, limits: &Limits) -> Result<u64> {
    period_data(spec, limits).map(|p| p.qstar)
}

/// All four constants, sharing the coefficient-subset enumeration.
pub fn period_data(spec: &ArrangementSpec, limits: &Limits) -> Result<PeriodData> {
    let (rho0, q1) = coefficient_walk(spec, limits)?;
    let q0 = q0_bound(spec, limits)?;
    let qstar = q0.max(q1).max(max_column_gcd(spec)?);
    Ok(PeriodData { rho0, q0, q1, qstar })
}
