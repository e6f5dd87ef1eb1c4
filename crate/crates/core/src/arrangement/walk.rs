//! Depth-first enumeration of linearly independent column subsets.
//!
//! Every nonempty subset whose columns are independent over the rationals is
//! visited exactly once (dependent subsets and all their supersets are
//! pruned), together with its largest elementary divisor.
//!
//! The fast path runs in checked `i128`. Each internal node keeps the left
//! transform `P` of its Smith form `P A_J Q = D`; a child `J + v` then has
//! `P [A_J | v] diag(Q, 1) = [D | w]` with `w = P v`, whose torsion exponent
//! is `lcm(d_k, T * g)` where `g` is the gcd of the tail of `w` and
//! `T = lcm_i d_i / gcd(d_i, w_i)`. Children at the size limit therefore cost
//! one matrix-vector product instead of a Smith form.

use std::sync::atomic::{AtomicU64, Ordering};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};
use rayon::prelude::*;

use crate::exactla::{smith_normal_form, IntegerMatrix, Reduction};
use crate::{Error, Result};

/// One visited independent subset.
#[derive(Debug, Clone, Copy)]
pub(crate) struct Visit<'a> {
    pub subset: &'a [usize],
    /// Largest elementary divisor of the subset's column matrix.
    pub last_divisor: u64,
    /// Whether the rational span of the columns contains the last coordinate
    /// axis `e_{dim-1}`.
    pub spans_last_axis: bool,
}

pub(crate) struct Walk<'v> {
    vectors: &'v [Vec<BigInt>],
    dim: usize,
    max_size: usize,
    cap: u64,
}

enum Abort {
    Overflow,
    Fail(Error),
}

impl From<Error> for Abort {
    fn from(e: Error) -> Self {
        Abort::Fail(e)
    }
}

impl<'v> Walk<'v> {
    pub(crate) fn new(vectors: &'v [Vec<BigInt>], dim: usize, max_size: usize, cap: u64) -> Self {
        debug_assert!(vectors.iter().all(|v| v.len() == dim));
        Walk {
            vectors,
            dim,
            max_size: max_size.min(dim),
            cap,
        }
    }

    /// Folds `visit` over all independent subsets of size `1..=max_size`.
    ///
    /// Roots are processed in parallel; `merge` must be associative and
    /// commutative for the result to be independent of scheduling.
    pub(crate) fn fold<A, I, V, M>(&self, init: I, visit: V, merge: M) -> Result<A>
    where
        A: Send,
        I: Fn() -> A + Sync,
        V: Fn(&mut A, Visit<'_>) + Sync,
        M: Fn(A, A) -> A + Sync,
    {
        match self.fold_fast(&init, &visit, &merge) {
            Ok(acc) => Ok(acc),
            Err(Abort::Fail(e)) => Err(e),
            Err(Abort::Overflow) => self.fold_exact(&init, &visit, &merge),
        }
    }

    fn bump(&self, counter: &AtomicU64) -> std::result::Result<(), Error> {
        let seen = counter.fetch_add(1, Ordering::Relaxed) + 1;
        if seen > self.cap {
            return Err(Error::resource(
                "independent subset enumeration",
                format!("more than {seen} subsets"),
                self.cap,
            ));
        }
        Ok(())
    }

    fn fold_fast<A, I, V, M>(&self, init: &I, visit: &V, merge: &M) -> std::result::Result<A, Abort>
    where
        A: Send,
        I: Fn() -> A + Sync,
        V: Fn(&mut A, Visit<'_>) + Sync,
        M: Fn(A, A) -> A + Sync,
    {
        let small: Option<Vec<Vec<i128>>> = self
            .vectors
            .iter()
            .map(|v| v.iter().map(|x| x.to_i64().map(i128::from)).collect())
            .collect();
        let small = small.ok_or(Abort::Overflow)?;
        let counter = AtomicU64::new(0);
        let root = Node {
            divisors: Vec::new(),
            left: identity(self.dim),
        };
        (0..self.vectors.len())
            .into_par_iter()
            .map(|first| {
                let mut acc = init();
                let mut subset = Vec::with_capacity(self.max_size);
                self.child_fast(&small, &root, first, &mut subset, &mut acc, visit, &counter)?;
                Ok(acc)
            })
            .try_reduce(init, |a, b| Ok(merge(a, b)))
    }

    /// Handles the child `subset + idx` of `parent`, then its descendants.
    #[allow(clippy::too_many_arguments)]
    fn child_fast<A, V>(
        &self,
        small: &[Vec<i128>],
        parent: &Node,
        idx: usize,
        subset: &mut Vec<usize>,
        acc: &mut A,
        visit: &V,
        counter: &AtomicU64,
    ) -> std::result::Result<(), Abort>
    where
        V: Fn(&mut A, Visit<'_>) + Sync,
    {
        let dim = self.dim;
        let k = parent.divisors.len();
        let w = mat_vec(&parent.left, dim, &small[idx]).ok_or(Abort::Overflow)?;
        let g = w[k..].iter().fold(0i128, |acc, x| acc.gcd(x));
        if g == 0 {
            return Ok(());
        }
        self.bump(counter)?;
        let mut t = 1i128;
        for (d, wi) in parent.divisors.iter().zip(&w) {
            t = checked_lcm(t, d / d.gcd(wi)).ok_or(Abort::Overflow)?;
        }
        let top = parent.divisors.last().copied().unwrap_or(1);
        let last = checked_lcm(top, t.checked_mul(g).ok_or(Abort::Overflow)?).ok_or(Abort::Overflow)?;
        let last_divisor = u64::try_from(last).map_err(|_| Error::overflow("elementary divisor"))?;
        // P e_{dim-1} is the last column of P; it lies in the span of [D | w]
        // iff its tail is parallel to the tail of w.
        let u: Vec<i128> = (k..dim).map(|i| parent.left[i * dim + dim - 1]).collect();
        let spans_last_axis = parallel(&u, &w[k..]).ok_or(Abort::Overflow)?;

        subset.push(idx);
        visit(
            acc,
            Visit {
                subset,
                last_divisor,
                spans_last_axis,
            },
        );
        if subset.len() < self.max_size {
            let node = self.node_fast(small, subset).ok_or(Abort::Overflow)?;
            debug_assert_eq!(node.divisors.last().copied(), Some(last));
            for next in idx + 1..small.len() {
                self.child_fast(small, &node, next, subset, acc, visit, counter)?;
            }
        }
        subset.pop();
        Ok(())
    }

    fn node_fast(&self, small: &[Vec<i128>], subset: &[usize]) -> Option<Node> {
        let (rows, cols) = (self.dim, subset.len());
        let mut a = vec![0i128; rows * cols];
        for (c, &j) in subset.iter().enumerate() {
            for i in 0..rows {
                a[i * cols + c] = small[j][i];
            }
        }
        let mut red = Reduction::new(rows, cols, a, true, false);
        let divisors = red.run()?;
        Some(Node {
            left: red.left().expect("requested").to_vec(),
            divisors,
        })
    }

    /// Arbitrary-precision walk: every subset gets its own Smith form.
    pub(crate) fn fold_exact<A, I, V, M>(&self, init: &I, visit: &V, merge: &M) -> Result<A>
    where
        A: Send,
        I: Fn() -> A + Sync,
        V: Fn(&mut A, Visit<'_>) + Sync,
        M: Fn(A, A) -> A + Sync,
    {
        let counter = AtomicU64::new(0);
        (0..self.vectors.len())
            .into_par_iter()
            .map(|first| {
                let mut acc = init();
                let mut subset = vec![first];
                self.node_exact(&mut subset, &mut acc, visit, &counter)?;
                Ok(acc)
            })
            .try_reduce(init, |a, b| Ok(merge(a, b)))
    }

    fn node_exact<A, V>(&self, subset: &mut Vec<usize>, acc: &mut A, visit: &V, counter: &AtomicU64) -> Result<()>
    where
        V: Fn(&mut A, Visit<'_>) + Sync,
    {
        let cols: Vec<Vec<BigInt>> = subset.iter().map(|&j| self.vectors[j].clone()).collect();
        let a = IntegerMatrix::from_columns(self.dim, &cols)?;
        let snf = smith_normal_form(&a, false);
        if snf.rank() < subset.len() {
            return Ok(());
        }
        self.bump(counter)?;
        let mut axis = vec![BigInt::zero(); self.dim];
        axis[self.dim - 1] = BigInt::from(1);
        let spans_last_axis = smith_normal_form(&a.with_column(&axis)?, false).rank() == snf.rank();
        let last_divisor = snf
            .last()
            .and_then(ToPrimitive::to_u64)
            .ok_or_else(|| Error::overflow("elementary divisor"))?;
        visit(
            acc,
            Visit {
                subset,
                last_divisor,
                spans_last_axis,
            },
        );
        if subset.len() < self.max_size {
            let last = *subset.last().expect("nonempty");
            for next in last + 1..self.vectors.len() {
                subset.push(next);
                self.node_exact(subset, acc, visit, counter)?;
                subset.pop();
            }
        }
        Ok(())
    }
}

struct Node {
    divisors: Vec<i128>,
    left: Vec<i128>,
}

fn identity(n: usize) -> Vec<i128> {
    let mut v = vec![0i128; n * n];
    for i in 0..n {
        v[i * n + i] = 1;
    }
    v
}

fn mat_vec(p: &[i128], dim: usize, v: &[i128]) -> Option<Vec<i128>> {
    let mut out = vec![0i128; dim];
    for (i, o) in out.iter_mut().enumerate() {
        let mut s = 0i128;
        for (j, x) in v.iter().enumerate() {
            if *x != 0 {
                s = s.checked_add(p[i * dim + j].checked_mul(*x)?)?;
            }
        }
        *o = s;
    }
    Some(out)
}

fn checked_lcm(a: i128, b: i128) -> Option<i128> {
    let (a, b) = (a.abs(), b.abs());
    if a == 0 || b == 0 {
        return Some(0);
    }
    (a / a.gcd(&b)).checked_mul(b)
}

/// Whether `u` is a rational multiple of the nonzero vector `w`.
fn parallel(u: &[i128], w: &[i128]) -> Option<bool> {
    for i in 0..u.len() {
        for j in i + 1..u.len() {
            if u[i].checked_mul(w[j])? != u[j].checked_mul(w[i])? {
                return Some(false);
            }
        }
    }
    // With w nonzero, pairwise proportionality leaves one ratio for all entries
    // except when some u_i is nonzero where w_i is zero.
    Some(u.iter().zip(w).all(|(&x, &y)| y != 0 || x == 0))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn vecs(rows: &[&[i64]]) -> Vec<Vec<BigInt>> {
        rows.iter()
            .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
            .collect()
    }

    type Seen = Vec<(Vec<usize>, u64, bool)>;

    fn collect(vectors: &[Vec<BigInt>], dim: usize, max: usize, exact: bool) -> Seen {
        let walk = Walk::new(vectors, dim, max, u64::MAX);
        let init = Vec::new;
        let visit = |acc: &mut Seen, v: Visit<'_>| acc.push((v.subset.to_vec(), v.last_divisor, v.spans_last_axis));
        let merge = |mut a: Seen, b: Seen| {
            a.extend(b);
            a
        };
        let mut seen = if exact {
            walk.fold_exact(&init, &visit, &merge).unwrap()
        } else {
            walk.fold(init, visit, merge).unwrap()
        };
        seen.sort();
        seen
    }

    #[test]
    fn prunes_dependent_subsets() {
        // columns (1,0), (2,0), (0,3)
        let v = vecs(&[&[1, 0], &[2, 0], &[0, 3]]);
        let seen = collect(&v, 2, 2, false);
        let subsets: Vec<_> = seen.iter().map(|s| s.0.clone()).collect();
        assert_eq!(subsets, vec![vec![0], vec![0, 2], vec![1], vec![1, 2], vec![2]]);
        let divs: Vec<_> = seen.iter().map(|s| s.1).collect();
        assert_eq!(divs, vec![1, 3, 2, 6, 3]);
        let axis: Vec<_> = seen.iter().map(|s| s.2).collect();
        assert_eq!(axis, vec![false, true, false, true, true]);
    }

    #[test]
    fn fast_and_exact_agree() {
        let v = vecs(&[&[1, 1, 0], &[1, -1, 2], &[2, 0, 2], &[0, 3, 1], &[4, 2, -2], &[0, 0, 5]]);
        for max in 1..=3 {
            assert_eq!(collect(&v, 3, max, false), collect(&v, 3, max, true));
        }
    }

    #[test]
    fn cap_is_enforced() {
        let v = vecs(&[&[1, 0], &[0, 1], &[1, 1]]);
        let walk = Walk::new(&v, 2, 2, 4);
        let r = walk.fold(|| 0u64, |a, _| *a += 1, |a, b| a + b);
        assert!(matches!(r, Err(Error::ResourceLimit { .. })));
        let walk = Walk::new(&v, 2, 2, 6);
        assert_eq!(walk.fold(|| 0u64, |a, _| *a += 1, |a, b| a + b).unwrap(), 6);
    }

    #[test]
    fn parallel_vectors() {
        assert_eq!(parallel(&[2, 4], &[1, 2]), Some(true));
        assert_eq!(parallel(&[0, 0], &[1, 2]), Some(true));
        assert_eq!(parallel(&[1, 0], &[0, 2]), Some(false));
        assert_eq!(parallel(&[1, 1], &[1, 2]), Some(false));
    }
}
