use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};

use super::ArrangementSpec;
use crate::exactla::{in_span_mod_q, smith_normal_form};
use crate::numtheory::gcd_big_u64;
use crate::{Error, Result};

/// Divisor chains of `C_J` and `A_J` for one nonempty subset `J`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubsetProfile {
    pub subset: Vec<usize>,
    /// `rank C_J`
    pub ell: usize,
    /// `rank A_J`
    pub ell_prime: usize,
    pub e_chain: Vec<BigInt>,
    pub e_prime_chain: Vec<BigInt>,
    /// `rank A_J = rank C_J + 1`: the intersection is empty for all large `q`.
    pub rank_jump: bool,
}

impl SubsetProfile {
    /// `e(J)`, the largest elementary divisor of `C_J`.
    pub fn e(&self) -> &BigInt {
        self.e_chain.last().expect("nonzero columns give rank >= 1")
    }

    /// `e'(J)`, the largest elementary divisor of `A_J`.
    pub fn e_prime(&self) -> &BigInt {
        self.e_prime_chain.last().expect("nonzero columns give rank >= 1")
    }

    /// `d_J(q) = prod_j gcd(e_{J,j}, q)`.
    pub fn d(&self, q: u64) -> BigUint {
        self.e_chain
            .iter()
            .fold(BigUint::one(), |acc, e| acc * BigUint::from(gcd_big_u64(e, q)))
    }

    /// `d~_J(q)`: `d_J(q)` when the reduced chains of `C_J` and `A_J` agree
    /// in every position up to `rank C_J`, zero otherwise. `None` for
    /// subsets with a rank jump, where this criterion does not apply.
    pub fn d_tilde(&self, q: u64) -> Option<BigUint> {
        if self.rank_jump {
            return None;
        }
        let agree = self
            .e_chain
            .iter()
            .zip(&self.e_prime_chain)
            .all(|(e, f)| gcd_big_u64(e, q) == gcd_big_u64(f, q));
        Some(if agree { self.d(q) } else { BigUint::zero() })
    }
}

/// Smith chains of `C_J` and `A_J` for a nonempty subset.
pub fn subset_profile(spec: &ArrangementSpec, subset: &[usize]) -> Result<SubsetProfile> {
    if subset.is_empty() {
        return Err(Error::InvalidSubset("profile needs a nonempty subset".into()));
    }
    let subset = spec.normalize_subset(subset)?;
    let c = smith_normal_form(&spec.coefficient_submatrix(&subset), false);
    let a = smith_normal_form(&spec.augmented_submatrix(&subset), false);
    let (ell, ell_prime) = (c.rank(), a.rank());
    debug_assert!(ell_prime == ell || ell_prime == ell + 1);
    Ok(SubsetProfile {
        subset,
        ell,
        ell_prime,
        e_chain: c.divisors().to_vec(),
        e_prime_chain: a.divisors().to_vec(),
        rank_jump: ell_prime == ell + 1,
    })
}

/// `|H_{J,q}|` for any `q >= 1`: `d_J(q) q^{m - rank C_J}` when `[b_J]_q` is
/// in the image of `z -> z [C_J]_q`, and zero otherwise. The empty subset
/// gives the whole space `q^m`.
pub fn fiber_cardinality(spec: &ArrangementSpec, subset: &[usize], q: u64) -> Result<BigUint> {
    if q < 1 {
        return Err(Error::InvalidModulus(q));
    }
    if subset.is_empty() {
        return Ok(BigUint::from(q).pow(spec.m() as u32));
    }
    let subset = spec.normalize_subset(subset)?;
    let b: Vec<BigInt> = subset.iter().map(|&j| spec.constants()[j].clone()).collect();
    // z C_J = b_J  <=>  C_J^T z^T = b_J^T
    if !in_span_mod_q(&spec.coefficient_submatrix(&subset).transpose(), &b, q)? {
        return Ok(BigUint::zero());
    }
    let snf = smith_normal_form(&spec.coefficient_submatrix(&subset), false);
    let d = snf
        .divisors()
        .iter()
        .fold(BigUint::one(), |acc, e| acc * BigUint::from(gcd_big_u64(e, q)));
    Ok(d * BigUint::from(q).pow((spec.m() - snf.rank()) as u32))
}
