//! The characteristic quasi-polynomial, by inclusion-exclusion over subsets.

use std::collections::BTreeMap;

use num_bigint::{BigInt, BigUint};
use rayon::prelude::*;
use serde::Serialize;

use crate::arrangement::{period_data, subset_profile, ArrangementSpec};
use crate::numtheory::{divisors, gcd_u64};
use crate::poly::IntPoly;
use crate::poset::mask_indices;
use crate::{Error, Limits, Result};

/// `chi(q)` for `q > q0`, one constituent per divisor `g` of `rho0`, applied
/// to the `q` with `gcd(q, rho0) = g`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuasiPolynomial {
    m: usize,
    rho0: u64,
    q0: u64,
    constituents: BTreeMap<u64, IntPoly>,
}

/// A value of the quasi-polynomial and whether `q` lies in its valid range.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Evaluation {
    pub value: BigInt,
    /// `q > q0`: only then does the value equal `|M(A_q)|`.
    pub valid: bool,
}

impl QuasiPolynomial {
    pub fn new(m: usize, rho0: u64, q0: u64, constituents: BTreeMap<u64, IntPoly>) -> Result<Self> {
        let want = divisors(rho0);
        if constituents.keys().copied().ne(want.iter().copied()) {
            return Err(Error::InvalidInput(
                "one constituent per divisor of rho0 is required".into(),
            ));
        }
        Ok(QuasiPolynomial {
            m,
            rho0,
            q0,
            constituents,
        })
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn rho0(&self) -> u64 {
        self.rho0
    }

    pub fn q0(&self) -> u64 {
        self.q0
    }

    pub fn constituents(&self) -> &BTreeMap<u64, IntPoly> {
        &self.constituents
    }

    /// The constituent used for modulus `q`, selected by `gcd(q, rho0)`.
    pub fn constituent_for(&self, q: u64) -> &IntPoly {
        &self.constituents[&gcd_u64(q, self.rho0)]
    }

    pub fn evaluate(&self, q: u64) -> Result<Evaluation> {
        if q < 1 {
            return Err(Error::InvalidModulus(q));
        }
        Ok(Evaluation {
            value: self.constituent_for(q).eval(&BigInt::from(q)),
            valid: q > self.q0,
        })
    }

    /// Smallest `p | rho0` with the same constituent on residues `r` and `r + p`.
    ///
    /// The constituent of `r` depends on the valuations `min(v(r), v(rho0))`;
    /// a residue mod `p` fixes exactly `min(v(r), v(p))` and leaves the rest
    /// free, so `p` is a period iff `chi_g = chi_gcd(g, p)` for every `g | rho0`.
    pub fn minimum_period(&self) -> u64 {
        let gs = divisors(self.rho0);
        gs.iter()
            .copied()
            .find(|&p| {
                gs.iter()
                    .all(|&g| self.constituents[&g] == self.constituents[&gcd_u64(g, p)])
            })
            .unwrap_or(self.rho0)
    }

    pub fn to_report(&self) -> QuasiPolynomialReport {
        QuasiPolynomialReport {
            rho0: self.rho0,
            q0: self.q0,
            constituents: self
                .constituents
                .iter()
                .map(|(&gcd, coeffs)| ConstituentReport {
                    gcd,
                    coeffs: coeffs.clone(),
                })
                .collect(),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct QuasiPolynomialReport {
    pub rho0: u64,
    pub q0: u64,
    pub constituents: Vec<ConstituentReport>,
}

#[derive(Debug, Clone, Serialize)]
pub struct ConstituentReport {
    pub gcd: u64,
    /// Ascending coefficients, as decimal strings.
    pub coeffs: IntPoly,
}

/// Inclusion-exclusion over every subset of hyperplanes:
/// `chi_g(t) = t^m + sum_J (-1)^|J| d~_J(g) t^(m - rank C_J)`, where subsets
/// with a rank jump contribute nothing.
pub fn characteristic_quasipoly(spec: &ArrangementSpec, limits: &Limits) -> Result<QuasiPolynomial> {
    let n = spec.n();
    limits.check_table(n)?;
    let pd = period_data(spec, limits)?;
    let gs = divisors(pd.rho0);
    let m = spec.m();
    let width = gs.len() * (m + 1);
    let zero = || vec![BigInt::from(0); width];
    let sums = (1u64..1 << n)
        .into_par_iter()
        .try_fold(zero, |mut acc, mask| {
            let p = subset_profile(spec, &mask_indices(mask))?;
            if p.rank_jump {
                return Ok(acc);
            }
            let sign = if mask.count_ones() % 2 == 0 { 1 } else { -1 };
            for (k, &g) in gs.iter().enumerate() {
                let d = p.d_tilde(g).unwrap_or_default();
                if d != BigUint::default() {
                    acc[k * (m + 1) + m - p.ell] += BigInt::from(d) * sign;
                }
            }
            Ok(acc)
        })
        .try_reduce(zero, |mut a, b| {
            for (x, y) in a.iter_mut().zip(b) {
                *x += y;
            }
            Ok(a)
        })?;
    let constituents = gs
        .iter()
        .enumerate()
        .map(|(k, &g)| {
            let mut c = sums[k * (m + 1)..(k + 1) * (m + 1)].to_vec();
            c[m] += 1;
            (g, IntPoly::new(c))
        })
        .collect();
    QuasiPolynomial::new(m, pd.rho0, pd.q0, constituents)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec(m: usize, cols: &[Vec<i64>], b: &[i64]) -> ArrangementSpec {
        ArrangementSpec::from_columns(m, cols, b).unwrap()
    }

    #[test]
    fn three_four() {
        let s = spec(1, &[vec![3], vec![4]], &[0, 0]);
        let qp = characteristic_quasipoly(&s, &Limits::default()).unwrap();
        let shown: Vec<(u64, String)> = qp.constituents().iter().map(|(g, p)| (*g, p.to_string())).collect();
        let expect = [
            (1, "t - 1"),
            (2, "t - 2"),
            (3, "t - 3"),
            (4, "t - 4"),
            (6, "t - 4"),
            (12, "t - 6"),
        ];
        assert_eq!(shown, expect.map(|(g, s)| (g, s.to_string())));
        assert_eq!(
            qp.evaluate(12).unwrap(),
            Evaluation {
                value: BigInt::from(6),
                valid: true
            }
        );
        assert_eq!(qp.evaluate(7).unwrap().value, BigInt::from(6));
        assert_eq!(qp.minimum_period(), 12);
    }

    #[test]
    fn two_points() {
        let s = spec(1, &[vec![1], vec![1]], &[1, -1]);
        let qp = characteristic_quasipoly(&s, &Limits::default()).unwrap();
        assert_eq!(qp.constituents()[&1].to_string(), "t - 2");
        assert!(!qp.evaluate(2).unwrap().valid);
        assert!(qp.evaluate(3).unwrap().valid);
        assert_eq!(qp.minimum_period(), 1);
    }

    #[test]
    fn table_cap() {
        let cols: Vec<Vec<i64>> = (1..=5).map(|k| vec![k]).collect();
        let s = spec(1, &cols, &[0; 5]);
        let l = Limits {
            max_table_columns: 4,
            ..Limits::default()
        };
        assert!(matches!(
            characteristic_quasipoly(&s, &l),
            Err(Error::ResourceLimit { .. })
        ));
    }

    #[test]
    fn report_json() {
        let s = spec(1, &[vec![1], vec![1]], &[1, -1]);
        let qp = characteristic_quasipoly(&s, &Limits::default()).unwrap();
        let json = serde_json::to_string(&qp.to_report()).unwrap();
        assert_eq!(
            json,
            r#"{"rho0":1,"q0":2,"constituents":[{"gcd":1,"coeffs":["-2","1"]}]}"#
        );
    }
}
