use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use super::shift::ShiftPolynomial;
use crate::poly::{mul_trunc, pow_trunc, IntPoly, RatPoly};
use crate::{Error, Result};

/// `f_k(y) = sum over s, t >= 0 with s + 2t <= k of y^(s+t)`; zero for `k < 0`.
pub fn f_poly(k: i64) -> IntPoly {
    let mut p = IntPoly::default();
    if k < 0 {
        return p;
    }
    for t in 0..=k / 2 {
        for s in 0..=k - 2 * t {
            p.add_term((s + t) as usize, &BigInt::one());
        }
    }
    p
}

fn phi_series(a: u64, deg: usize) -> Vec<BigInt> {
    (0..=deg).map(|i| BigInt::from((i as u64) < a)).collect()
}

/// `sum_j g(j) y^(a j)` truncated at `deg`.
fn spaced_series(a: u64, deg: usize, start: u64, g: impl Fn(u64) -> BigInt) -> Vec<BigInt> {
    let mut s = vec![BigInt::zero(); deg + 1];
    let mut j = start;
    while (a * j) as usize <= deg {
        s[(a * j) as usize] = g(j);
        j += 1;
    }
    s
}

/// `a'_0 = 1` and `a'_j = (2j+1)^m - 2(2j)^m + (2j-1)^m` for `j >= 1`.
pub fn a_prime(m: usize, j: u64) -> BigInt {
    if j == 0 {
        return BigInt::one();
    }
    let p = |x: u64| BigInt::from(x).pow(m as u32);
    p(2 * j + 1) - p(2 * j) * 2 + p(2 * j - 1)
}

/// `[y^k]` of `prod factors`, or zero for negative `k`.
fn extract(k: i64, factors: &[Vec<BigInt>]) -> BigInt {
    if k < 0 {
        return BigInt::zero();
    }
    let k = k as usize;
    let mut acc = vec![BigInt::one()];
    for f in factors {
        acc = mul_trunc(&acc, f, k);
    }
    acc.get(k).cloned().unwrap_or_default()
}

/// Counts the complement of `B_m^[0,a]` over `Z_q` by coefficient extraction,
/// for odd `q >= 2a+1` or even `q >= 2a+2`.
pub fn genfun_count(m: usize, a: u64, q: u64) -> Result<BigInt> {
    if m < 1 || a < 1 {
        return Err(Error::InvalidInput(format!(
            "m and a must be positive, got m = {m}, a = {a}"
        )));
    }
    let threshold = if q % 2 == 1 { 2 * a + 1 } else { 2 * a + 2 };
    if q < threshold {
        return Err(Error::PreconditionViolation(format!(
            "generating functions need q >= {threshold} for this parity, got q = {q}"
        )));
    }
    let mi = m as i64;
    let ai = a as i64;
    let deg = (q / 2) as usize;
    let pw = |x: u64| BigInt::from(x).pow(m as u32);
    let phi = phi_series(a, deg);
    let phi_pow = |e: usize| pow_trunc(&phi, e, deg);
    let odd_terms = spaced_series(a, deg, 0, |j| pw(2 * j + 1));
    let primes = spaced_series(a, deg, 0, |j| a_prime(m, j));
    let pad = |p: IntPoly| {
        let mut c = p.coeffs().to_vec();
        c.resize(deg + 1, BigInt::zero());
        c.truncate(deg + 1);
        c
    };
    if q % 2 == 1 {
        let k = (q as i64 - 1) / 2 - mi;
        let first = extract(k, &[phi_pow(m + 1), odd_terms]);
        let second = extract(k, &[pad(f_poly(ai - 2)), phi_pow(m - 1), primes]);
        Ok(first - second)
    } else {
        let k = q as i64 / 2 - mi;
        let steps = spaced_series(a, deg, 1, |j| pw(2 * j) - pw(2 * j - 1));
        let first = extract(k, &[phi_pow(m), steps]);
        let second = extract(k - 1, &[phi_pow(m + 1), odd_terms]);
        let third = extract(k - 1, &[pad(f_poly(ai - 3)), phi_pow(m - 1), primes]);
        Ok(first + second - third)
    }
}

/// Compares both sides of the coefficient-extraction identity
/// `[y^(p-l)] psi(y) phi_a(y)^m sum_j (cj+b)^h y^(aj)
///  = a^-(h+1) psi(S) phi_a(S)^m S^(l - ab/c) (cp)^h`.
#[allow(clippy::too_many_arguments)]
pub fn shift_identity_check(psi: &IntPoly, p: u64, a: u64, m: usize, l: u64, h: usize, b: i64, c: i64) -> Result<bool> {
    let fail = |why: String| Err(Error::PreconditionViolation(why));
    if p < 1 || a < 1 || m < 1 {
        return fail(format!("p, a, m must be positive, got p = {p}, a = {a}, m = {m}"));
    }
    if h + 1 > m {
        return fail(format!("h = {h} exceeds m - 1 = {}", m - 1));
    }
    let ab = BigInt::from(a) * b;
    if c == 0 || !ab.is_multiple_of(&BigInt::from(c)) {
        return fail(format!("c = {c} must be nonzero and divide a b = {ab}"));
    }
    // each term y^i of psi shifts l by i, so the bound must hold for l + deg psi
    let need = l + psi.degree().unwrap_or(0) as u64 + m as u64 * (a - 1);
    if p < need {
        return fail(format!("p = {p} is below l + deg(psi) + m(a-1) = {need}"));
    }
    let deg = (p - l) as usize;
    let psi_c = {
        let mut v = psi.coeffs().to_vec();
        v.resize(deg + 1, BigInt::zero());
        v.truncate(deg + 1);
        v
    };
    let series = spaced_series(a, deg, 0, |j| (BigInt::from(c) * j + b).pow(h as u32));
    let lhs = BigRational::from_integer(extract(
        deg as i64,
        &[psi_c, pow_trunc(&phi_series(a, deg), m, deg), series],
    ));

    let shift_exp = l as i64 - (ab / c).to_i64().ok_or_else(|| Error::overflow("ab/c"))?;
    let op = &(&ShiftPolynomial::substitute(psi, 1) * &ShiftPolynomial::phi(a, 1).pow(m as u32))
        * &ShiftPolynomial::shift(shift_exp);
    let op = op.scale(&BigRational::new(BigInt::one(), BigInt::from(a).pow(h as u32 + 1)));
    let f = RatPoly::monomial(h, BigRational::from_integer(BigInt::from(c).pow(h as u32)));
    let rhs = op.apply(&f).eval(&BigRational::from_integer(BigInt::from(p)));
    Ok(lhs == rhs)
}
