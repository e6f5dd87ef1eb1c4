//! Smith normal form over the integers.
//!
//! One elimination routine is shared by two entry types: `i128` with checked
//! arithmetic (the fast path, used whenever the input fits in `i64`) and
//! `BigInt`. An overflow on the fast path restarts the computation with
//! `BigInt`, so both paths return identical results.

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::IntegerMatrix;

pub(crate) trait SnfEntry: Clone + PartialEq {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn is_negative(&self) -> bool;
    fn abs_lt(&self, other: &Self) -> bool;
    fn checked_neg(&self) -> Option<Self>;
    /// `self - q * x`
    fn sub_mul(&self, q: &Self, x: &Self) -> Option<Self>;
    /// Quotient truncated toward zero.
    fn quot(&self, d: &Self) -> Option<Self>;
    /// `self | x`, for nonzero `self`.
    fn divides(&self, x: &Self) -> bool;
}

impl SnfEntry for i128 {
    fn zero() -> Self {
        0
    }
    fn one() -> Self {
        1
    }
    fn is_zero(&self) -> bool {
        *self == 0
    }
    fn is_negative(&self) -> bool {
        *self < 0
    }
    fn abs_lt(&self, other: &Self) -> bool {
        self.unsigned_abs() < other.unsigned_abs()
    }
    fn checked_neg(&self) -> Option<Self> {
        i128::checked_neg(*self)
    }
    fn sub_mul(&self, q: &Self, x: &Self) -> Option<Self> {
        self.checked_sub(q.checked_mul(*x)?)
    }
    fn quot(&self, d: &Self) -> Option<Self> {
        self.checked_div(*d)
    }
    fn divides(&self, x: &Self) -> bool {
        x.checked_rem(*self) == Some(0)
    }
}

impl SnfEntry for BigInt {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn is_negative(&self) -> bool {
        Signed::is_negative(self)
    }
    fn abs_lt(&self, other: &Self) -> bool {
        self.magnitude() < other.magnitude()
    }
    fn checked_neg(&self) -> Option<Self> {
        Some(-self)
    }
    fn sub_mul(&self, q: &Self, x: &Self) -> Option<Self> {
        Some(self - q * x)
    }
    fn quot(&self, d: &Self) -> Option<Self> {
        Some(self / d)
    }
    fn divides(&self, x: &Self) -> bool {
        Zero::is_zero(&(x % self))
    }
}

/// Working state: the matrix being diagonalized plus optional transforms.
pub(crate) struct Reduction<T> {
    rows: usize,
    cols: usize,
    a: Vec<T>,
    left: Option<Vec<T>>,
    right: Option<Vec<T>>,
}

impl<T: SnfEntry> Reduction<T> {
    pub(crate) fn new(rows: usize, cols: usize, a: Vec<T>, want_left: bool, want_right: bool) -> Self {
        debug_assert_eq!(a.len(), rows * cols);
        Reduction {
            rows,
            cols,
            a,
            left: want_left.then(|| identity(rows)),
            right: want_right.then(|| identity(cols)),
        }
    }

    pub(crate) fn left(&self) -> Option<&[T]> {
        self.left.as_deref()
    }

    fn at(&self, i: usize, j: usize) -> &T {
        &self.a[i * self.cols + j]
    }

    fn swap_rows(&mut self, i: usize, k: usize) {
        if i == k {
            return;
        }
        for j in 0..self.cols {
            self.a.swap(i * self.cols + j, k * self.cols + j);
        }
        if let Some(l) = self.left.as_mut() {
            for j in 0..self.rows {
                l.swap(i * self.rows + j, k * self.rows + j);
            }
        }
    }

    fn swap_cols(&mut self, j: usize, k: usize) {
        if j == k {
            return;
        }
        for i in 0..self.rows {
            self.a.swap(i * self.cols + j, i * self.cols + k);
        }
        if let Some(r) = self.right.as_mut() {
            for i in 0..self.cols {
                r.swap(i * self.cols + j, i * self.cols + k);
            }
        }
    }

    /// row_i -= f * row_k
    fn row_sub(&mut self, i: usize, k: usize, f: &T) -> Option<()> {
        for j in 0..self.cols {
            let v = self.a[i * self.cols + j].sub_mul(f, &self.a[k * self.cols + j])?;
            self.a[i * self.cols + j] = v;
        }
        if let Some(l) = self.left.as_mut() {
            let n = self.rows;
            for j in 0..n {
                let v = l[i * n + j].sub_mul(f, &l[k * n + j])?;
                l[i * n + j] = v;
            }
        }
        Some(())
    }

    /// col_j -= f * col_k
    fn col_sub(&mut self, j: usize, k: usize, f: &T) -> Option<()> {
        for i in 0..self.rows {
            let v = self.a[i * self.cols + j].sub_mul(f, &self.a[i * self.cols + k])?;
            self.a[i * self.cols + j] = v;
        }
        if let Some(r) = self.right.as_mut() {
            let n = self.cols;
            for i in 0..n {
                let v = r[i * n + j].sub_mul(f, &r[i * n + k])?;
                r[i * n + j] = v;
            }
        }
        Some(())
    }

    fn negate_row(&mut self, i: usize) -> Option<()> {
        for j in 0..self.cols {
            self.a[i * self.cols + j] = self.a[i * self.cols + j].checked_neg()?;
        }
        if let Some(l) = self.left.as_mut() {
            let n = self.rows;
            for j in 0..n {
                l[i * n + j] = l[i * n + j].checked_neg()?;
            }
        }
        Some(())
    }

    fn min_abs_entry(&self, t: usize) -> Option<(usize, usize)> {
        let mut best: Option<(usize, usize)> = None;
        for i in t..self.rows {
            for j in t..self.cols {
                let x = self.at(i, j);
                if x.is_zero() {
                    continue;
                }
                if best.is_none_or(|(bi, bj)| x.abs_lt(self.at(bi, bj))) {
                    best = Some((i, j));
                }
            }
        }
        best
    }

    /// Diagonalizes in place and returns the positive divisor chain, or `None`
    /// if a checked operation overflowed.
    pub(crate) fn run(&mut self) -> Option<Vec<T>> {
        let neg_one = T::one().checked_neg()?;
        let mut t = 0;
        while t < self.rows.min(self.cols) {
            let Some((pi, pj)) = self.min_abs_entry(t) else {
                break;
            };
            self.swap_rows(t, pi);
            self.swap_cols(t, pj);
            loop {
                let p = self.at(t, t).clone();
                let mut dirty = false;
                for i in t + 1..self.rows {
                    if !self.at(i, t).is_zero() {
                        let f = self.at(i, t).quot(&p)?;
                        self.row_sub(i, t, &f)?;
                        dirty |= !self.at(i, t).is_zero();
                    }
                }
                for j in t + 1..self.cols {
                    if !self.at(t, j).is_zero() {
                        let f = self.at(t, j).quot(&p)?;
                        self.col_sub(j, t, &f)?;
                        dirty |= !self.at(t, j).is_zero();
                    }
                }
                if dirty {
                    // Remainders are strictly smaller than the pivot: move the
                    // smallest one into pivot position.
                    let mut best = (t, t);
                    for i in t + 1..self.rows {
                        let x = self.at(i, t);
                        if !x.is_zero() && x.abs_lt(self.at(best.0, best.1)) {
                            best = (i, t);
                        }
                    }
                    for j in t + 1..self.cols {
                        let x = self.at(t, j);
                        if !x.is_zero() && x.abs_lt(self.at(best.0, best.1)) {
                            best = (t, j);
                        }
                    }
                    self.swap_rows(t, best.0);
                    self.swap_cols(t, best.1);
                    continue;
                }
                let offender = (t + 1..self.rows).find(|&i| (t + 1..self.cols).any(|j| !p.divides(self.at(i, j))));
                match offender {
                    Some(i) => self.row_sub(t, i, &neg_one)?,
                    None => break,
                }
            }
            if self.at(t, t).is_negative() {
                self.negate_row(t)?;
            }
            t += 1;
        }
        Some((0..t).map(|k| self.at(k, k).clone()).collect())
    }
}

fn identity<T: SnfEntry>(n: usize) -> Vec<T> {
    let mut v = vec![T::zero(); n * n];
    for i in 0..n {
        v[i * n + i] = T::one();
    }
    v
}

/// Elementary divisors `e_1 | e_2 | ... | e_l` of an integer matrix, with
/// optional unimodular transforms `P`, `Q` such that `P * M * Q` is the
/// diagonal matrix `diag(e_1, ..., e_l, 0, ..., 0)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SmithDecomposition {
    divisors: Vec<BigInt>,
    left: Option<IntegerMatrix>,
    right: Option<IntegerMatrix>,
}

impl SmithDecomposition {
    /// Wraps a divisor chain computed elsewhere. Panics if it is not a
    /// positive divisibility chain.
    pub fn from_divisors(divisors: Vec<BigInt>) -> Self {
        assert!(divisors.iter().all(|d| d.is_positive()), "divisors must be positive");
        assert!(
            divisors.windows(2).all(|w| Zero::is_zero(&(&w[1] % &w[0]))),
            "divisors must form a chain"
        );
        SmithDecomposition {
            divisors,
            left: None,
            right: None,
        }
    }

    pub fn divisors(&self) -> &[BigInt] {
        &self.divisors
    }

    /// Rank over the rationals.
    pub fn rank(&self) -> usize {
        self.divisors.len()
    }

    /// Largest elementary divisor, if the matrix is nonzero.
    pub fn last(&self) -> Option<&BigInt> {
        self.divisors.last()
    }

    pub fn left_transform(&self) -> Option<&IntegerMatrix> {
        self.left.as_ref()
    }

    pub fn right_transform(&self) -> Option<&IntegerMatrix> {
        self.right.as_ref()
    }

    /// The diagonal matrix `diag(e_1, ..., e_l, 0, ..., 0)` of the given shape.
    pub fn diagonal(&self, rows: usize, cols: usize) -> IntegerMatrix {
        let mut d = IntegerMatrix::zeros(rows, cols);
        for (k, e) in self.divisors.iter().enumerate() {
            d.set(k, k, e.clone());
        }
        d
    }
}

/// Smith normal form of `m`, pivoting on the entry of least absolute value.
pub fn smith_normal_form(m: &IntegerMatrix, want_transforms: bool) -> SmithDecomposition {
    let (rows, cols) = (m.rows(), m.cols());
    let small: Option<Vec<i128>> = m.entries().iter().map(|x| x.to_i64().map(i128::from)).collect();
    if let Some(small) = small {
        let mut red = Reduction::new(rows, cols, small, want_transforms, want_transforms);
        if let Some(d) = red.run() {
            return SmithDecomposition {
                divisors: d.into_iter().map(BigInt::from).collect(),
                left: red.left.map(|l| to_matrix(rows, rows, l)),
                right: red.right.map(|r| to_matrix(cols, cols, r)),
            };
        }
    }
    let mut red = Reduction::new(rows, cols, m.entries().to_vec(), want_transforms, want_transforms);
    let d = red.run().expect("BigInt arithmetic cannot overflow");
    SmithDecomposition {
        divisors: d,
        left: red.left.map(|l| IntegerMatrix::new(rows, rows, l).expect("shape")),
        right: red.right.map(|r| IntegerMatrix::new(cols, cols, r).expect("shape")),
    }
}

fn to_matrix(rows: usize, cols: usize, v: Vec<i128>) -> IntegerMatrix {
    IntegerMatrix::new(rows, cols, v.into_iter().map(BigInt::from).collect()).expect("shape")
}
