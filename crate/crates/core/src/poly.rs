//! Dense univariate polynomials with exact coefficients, ascending powers.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Serialize, Serializer};

/// Integer polynomial `c_0 + c_1 t + ... + c_d t^d` without trailing zeros.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct IntPoly(Vec<BigInt>);

impl IntPoly {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        IntPoly(coeffs)
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn monomial(degree: usize) -> Self {
        let mut c = vec![BigInt::zero(); degree + 1];
        c[degree] = BigInt::one();
        IntPoly(c)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.0
    }

    /// Degree, with the zero polynomial reported as `None`.
    pub fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    pub fn is_monic(&self) -> bool {
        self.0.last().is_some_and(One::is_one)
    }

    /// Adds `c t^k`.
    pub fn add_term(&mut self, k: usize, c: &BigInt) {
        if self.0.len() <= k {
            self.0.resize(k + 1, BigInt::zero());
        }
        self.0[k] += c;
        while self.0.last().is_some_and(Zero::is_zero) {
            self.0.pop();
        }
    }

    pub fn eval(&self, t: &BigInt) -> BigInt {
        self.0.iter().rev().fold(BigInt::zero(), |acc, c| acc * t + c)
    }
}

impl fmt::Debug for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IntPoly({self})")
    }
}

impl fmt::Display for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.0.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if c.is_negative() { '-' } else { '+' })?;
            }
            first = false;
            match (k, mag.is_one()) {
                (0, _) => write!(f, "{mag}")?,
                (1, true) => write!(f, "t")?,
                (1, false) => write!(f, "{mag}t")?,
                (_, true) => write!(f, "t^{k}")?,
                (_, false) => write!(f, "{mag}t^{k}")?,
            }
        }
        Ok(())
    }
}

impl Serialize for IntPoly {
    /// Coefficients as decimal strings, ascending.
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(self.0.iter().map(ToString::to_string))
    }
}

/// Rational polynomial, ascending powers, without trailing zeros.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct RatPoly(Vec<BigRational>);

impl RatPoly {
    pub fn new(mut coeffs: Vec<BigRational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        RatPoly(coeffs)
    }

    pub fn monomial(degree: usize, c: BigRational) -> Self {
        let mut v = vec![BigRational::zero(); degree + 1];
        v[degree] = c;
        Self::new(v)
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.0
    }

    pub fn eval(&self, x: &BigRational) -> BigRational {
        self.0.iter().rev().fold(BigRational::zero(), |acc, c| acc * x + c)
    }

    pub fn add_scaled(&mut self, other: &RatPoly, scale: &BigRational) {
        if self.0.len() < other.0.len() {
            self.0.resize(other.0.len(), BigRational::zero());
        }
        for (a, b) in self.0.iter_mut().zip(&other.0) {
            *a += b * scale;
        }
        while self.0.last().is_some_and(Zero::is_zero) {
            self.0.pop();
        }
    }

    /// `f(x - k)` for any integer `k`, by Taylor expansion with binomials.
    pub fn shifted(&self, k: i64) -> RatPoly {
        let n = self.0.len();
        let mut out = vec![BigRational::zero(); n];
        let minus_k = BigRational::from_integer(BigInt::from(-k));
        for (d, c) in self.0.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            // (x - k)^d = sum_i binom(d, i) x^i (-k)^(d-i)
            let mut binom = BigInt::one();
            for i in (0..=d).rev() {
                let pow = num_traits::pow(minus_k.clone(), d - i);
                out[i] += c * BigRational::from_integer(binom.clone()) * pow;
                // binom(d, i-1) = binom(d, i) * i / (d - i + 1)
                binom = binom * BigInt::from(i) / BigInt::from(d - i + 1);
            }
        }
        Self::new(out)
    }

    /// The same polynomial with integer coefficients, if every coefficient is integral.
    pub fn to_int(&self) -> Option<IntPoly> {
        self.0
            .iter()
            .map(|c| c.is_integer().then(|| c.to_integer()))
            .collect::<Option<Vec<_>>>()
            .map(IntPoly::new)
    }
}

/// Truncated product of two integer series: coefficients of degree `<= deg`.
pub fn mul_trunc(a: &[BigInt], b: &[BigInt], deg: usize) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); deg + 1];
    for (i, x) in a.iter().enumerate().take(deg + 1) {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate().take(deg + 1 - i) {
            out[i + j] += x * y;
        }
    }
    out
}

/// `a^e` truncated at degree `deg`.
pub fn pow_trunc(a: &[BigInt], e: usize, deg: usize) -> Vec<BigInt> {
    let mut acc = vec![BigInt::zero(); deg + 1];
    acc[0] = BigInt::one();
    for _ in 0..e {
        acc = mul_trunc(&acc, a, deg);
    }
    acc
}
