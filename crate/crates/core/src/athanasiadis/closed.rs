use num_bigint::BigInt;
use num_rational::BigRational;
use serde::Serialize;

use super::genfun::f_poly;
use super::shift::{apply_shift_poly, ShiftPolynomial};
use crate::poly::IntPoly;
use crate::{Error, Result};

/// The two constituents of `|M(B_m^[0,a] mod q)|` for large `q`, by parity of `q`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClosedForms {
    pub m: usize,
    pub a: u64,
    pub odd_q: IntPoly,
    pub even_q: IntPoly,
}

impl ClosedForms {
    pub fn for_modulus(&self, q: u64) -> &IntPoly {
        if q % 2 == 1 {
            &self.odd_q
        } else {
            &self.even_q
        }
    }

    pub fn value(&self, q: u64) -> BigInt {
        self.for_modulus(q).eval(&BigInt::from(q))
    }

    /// Moduli from which the closed forms count exactly: `2a(m+1) - 1`.
    pub fn valid_from(&self) -> u64 {
        2 * self.a * (self.m as u64 + 1) - 1
    }
}

fn over_a_power(num: i64, a: u64, m: usize) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(a).pow(m as u32 + 1))
}

fn expand(phi: &ShiftPolynomial, m: usize, what: &str) -> Result<IntPoly> {
    let p = apply_shift_poly(phi, m)
        .to_int()
        .ok_or_else(|| Error::Internal(format!("{what}: non-integral coefficients")))?;
    if p.degree() != Some(m) || !p.is_monic() {
        return Err(Error::Internal(format!(
            "{what}: expected a monic polynomial of degree {m}, got {p}"
        )));
    }
    Ok(p)
}

fn check_params(m: usize, a: u64) -> Result<()> {
    if m < 1 || a < 1 {
        return Err(Error::InvalidInput(format!(
            "m and a must be positive, got m = {m}, a = {a}"
        )));
    }
    Ok(())
}

/// Shift-operator forms of the two constituents, before expansion.
pub fn closed_form_operators(m: usize, a: u64) -> Result<(ShiftPolynomial, ShiftPolynomial)> {
    check_params(m, a)?;
    let mi = m as i64;
    let base = ShiftPolynomial::phi(a, 2).pow(m as u32 - 1);
    if a % 2 == 1 {
        let op = &(&ShiftPolynomial::shift(2 * mi) * &base) * &ShiftPolynomial::phi(a, 1).pow(2);
        let op = op.scale(&over_a_power(1, a, m));
        return Ok((op.clone(), op));
    }
    let half = &base * &ShiftPolynomial::phi(a / 2, 2).pow(2);
    let odd = (&ShiftPolynomial::shift(2 * mi + 1) * &half).scale(&over_a_power(4, a, m));
    let even = &(&ShiftPolynomial::shift(2 * mi) * &half) * &ShiftPolynomial::phi(2, 2);
    Ok((odd, even.scale(&over_a_power(2, a, m))))
}

/// Expands both constituents, checking integrality and monicity.
pub fn closed_form_constituents(m: usize, a: u64) -> Result<ClosedForms> {
    let (odd, even) = closed_form_operators(m, a)?;
    Ok(ClosedForms {
        m,
        a,
        odd_q: expand(&odd, m, "odd-q constituent")?,
        even_q: expand(&even, m, "even-q constituent")?,
    })
}

/// The even-q constituent in its unsimplified form
/// `phi_a(S^2)^(m-1) S^(2m-a) (1-S^a)^2 / a^(m+1) * (S^a (1+S^a)/(1-S^2)
/// + S^2 (1+S^a)^2/(1-S^2)^2 - f_{a-3}(S^2) S^2)`, with the division by
/// `(1-S^2)^2` carried out exactly.
pub fn even_constituent_unsimplified(m: usize, a: u64) -> Result<IntPoly> {
    check_params(m, a)?;
    let (mi, ai) = (m as i64, a as i64);
    let one = ShiftPolynomial::one();
    let s = ShiftPolynomial::shift;
    let one_minus_s2 = &one - &s(2);
    let one_plus_sa = &one + &s(ai);
    let f = ShiftPolynomial::substitute(&f_poly(ai - 3), 2);
    let bracket = &(&(&s(ai) * &one_plus_sa) * &one_minus_s2) + &(&s(2) * &one_plus_sa.pow(2));
    let bracket = &bracket - &(&(&f * &s(2)) * &one_minus_s2.pow(2));
    let numer = &(&ShiftPolynomial::phi(a, 2).pow(m as u32 - 1) * &(&one - &s(ai)).pow(2)) * &bracket;
    let op = numer
        .div_exact(&one_minus_s2.pow(2))
        .ok_or_else(|| Error::Internal("(1 - S^2)^2 does not divide the numerator".into()))?;
    let op = (&op * &s(2 * mi - ai)).scale(&over_a_power(1, a, m));
    expand(&op, m, "unsimplified even-q constituent")
}
