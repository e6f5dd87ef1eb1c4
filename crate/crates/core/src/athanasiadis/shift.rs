use std::collections::BTreeMap;
use std::ops::{Add, Mul, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::poly::{IntPoly, RatPoly};

/// A Laurent polynomial `sum_k c_k S^k` in the shift operator `S f(x) = f(x - 1)`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ShiftPolynomial {
    coeffs: BTreeMap<i64, BigRational>,
}

fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

impl ShiftPolynomial {
    pub fn from_terms(terms: impl IntoIterator<Item = (i64, BigRational)>) -> Self {
        let mut coeffs = BTreeMap::new();
        for (k, c) in terms {
            *coeffs.entry(k).or_insert_with(BigRational::zero) += c;
        }
        coeffs.retain(|_, c: &mut BigRational| !c.is_zero());
        ShiftPolynomial { coeffs }
    }

    pub fn one() -> Self {
        Self::monomial(0, BigRational::one())
    }

    /// `c S^k`
    pub fn monomial(k: i64, c: BigRational) -> Self {
        Self::from_terms([(k, c)])
    }

    /// `S^k`
    pub fn shift(k: i64) -> Self {
        Self::monomial(k, BigRational::one())
    }

    pub fn scalar(c: BigRational) -> Self {
        Self::monomial(0, c)
    }

    /// `phi_b(S^step) = 1 + S^step + ... + S^(step (b - 1))`, zero for `b = 0`.
    pub fn phi(b: u64, step: i64) -> Self {
        Self::from_terms((0..b as i64).map(|i| (i * step, BigRational::one())))
    }

    /// `psi(S^step)` for an integer polynomial `psi`.
    pub fn substitute(psi: &IntPoly, step: i64) -> Self {
        Self::from_terms(
            psi.coeffs()
                .iter()
                .enumerate()
                .map(|(k, c)| (k as i64 * step, BigRational::from_integer(c.clone()))),
        )
    }

    pub fn coeffs(&self) -> &BTreeMap<i64, BigRational> {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn scale(&self, s: &BigRational) -> Self {
        Self::from_terms(self.coeffs.iter().map(|(&k, c)| (k, c * s)))
    }

    pub fn pow(&self, e: u32) -> Self {
        (0..e).fold(Self::one(), |acc, _| &acc * self)
    }

    /// `sum_k c_k f(x - k)`.
    pub fn apply(&self, f: &RatPoly) -> RatPoly {
        let mut out = RatPoly::default();
        for (&k, c) in &self.coeffs {
            out.add_scaled(&f.shifted(k), c);
        }
        out
    }

    /// Exact quotient `self / d`, or `None` when `d` does not divide `self`.
    pub fn div_exact(&self, d: &ShiftPolynomial) -> Option<ShiftPolynomial> {
        let (&ds, _) = d.coeffs.iter().next()?;
        let Some((&ns, _)) = self.coeffs.iter().next() else {
            return Some(Self::default());
        };
        let dense = |p: &ShiftPolynomial, low: i64| {
            let high = *p.coeffs.keys().next_back().unwrap();
            let mut v = vec![BigRational::zero(); (high - low) as usize + 1];
            for (&k, c) in &p.coeffs {
                v[(k - low) as usize] = c.clone();
            }
            v
        };
        let mut num = dense(self, ns);
        let den = dense(d, ds);
        if num.len() < den.len() {
            return None;
        }
        // low-order-first division, since den[0] != 0
        let mut quot = vec![BigRational::zero(); num.len() - den.len() + 1];
        for i in 0..quot.len() {
            let qi = &num[i] / &den[0];
            for (j, dj) in den.iter().enumerate() {
                num[i + j] -= &qi * dj;
            }
            quot[i] = qi;
        }
        if num.iter().any(|c| !c.is_zero()) {
            return None;
        }
        Some(Self::from_terms(
            quot.into_iter().enumerate().map(|(i, c)| (ns - ds + i as i64, c)),
        ))
    }
}

impl Mul for &ShiftPolynomial {
    type Output = ShiftPolynomial;

    fn mul(self, rhs: &ShiftPolynomial) -> ShiftPolynomial {
        ShiftPolynomial::from_terms(
            self.coeffs
                .iter()
                .flat_map(|(&i, a)| rhs.coeffs.iter().map(move |(&j, b)| (i + j, a * b))),
        )
    }
}

impl Add for &ShiftPolynomial {
    type Output = ShiftPolynomial;

    fn add(self, rhs: &ShiftPolynomial) -> ShiftPolynomial {
        ShiftPolynomial::from_terms(self.coeffs.iter().chain(&rhs.coeffs).map(|(&k, c)| (k, c.clone())))
    }
}

impl Sub for &ShiftPolynomial {
    type Output = ShiftPolynomial;

    fn sub(self, rhs: &ShiftPolynomial) -> ShiftPolynomial {
        self + &rhs.scale(&rat(-1))
    }
}

/// `phi` applied to `q^m`: `sum_k c_k (q - k)^m`.
pub fn apply_shift_poly(phi: &ShiftPolynomial, m: usize) -> RatPoly {
    phi.apply(&RatPoly::monomial(m, BigRational::one()))
}
