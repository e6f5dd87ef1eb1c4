//! Brute-force enumeration over `Z_q^m`, used as ground truth.
//!
//! Nothing here relies on Smith forms: points are enumerated and tested
//! directly against the residue equations `z . c_j = b_j (mod q)`.

use std::collections::BTreeSet;

use rayon::prelude::*;

use crate::arrangement::ArrangementSpec;
use crate::numtheory::{pow_u64, residue};
use crate::poset::{mask_indices, IntersectionPoset};
use crate::{Error, Limits, Result};

/// Coefficients and constants reduced into `[0, q)`.
struct Reduced {
    q: u64,
    m: usize,
    n: usize,
    /// `coef[i * n + j] = [C_{ij}]_q`
    coef: Vec<u64>,
    b: Vec<u64>,
}

impl Reduced {
    fn new(spec: &ArrangementSpec, q: u64) -> Self {
        let (m, n) = (spec.m(), spec.n());
        let c = spec.coefficients();
        let coef = (0..m)
            .flat_map(|i| (0..n).map(move |j| (i, j)))
            .map(|(i, j)| residue(c.get(i, j), q))
            .collect();
        let b = spec.constants().iter().map(|x| residue(x, q)).collect();
        Reduced { q, m, n, coef, b }
    }

    fn lies_on(&self, z: &[u64], j: usize) -> bool {
        let q = self.q as u128;
        let s = z.iter().enumerate().fold(0u128, |acc, (i, &zi)| {
            (acc + zi as u128 * self.coef[i * self.n + j] as u128) % q
        });
        s as u64 == self.b[j]
    }
}

fn check_points(spec: &ArrangementSpec, q: u64, limits: &Limits) -> Result<u64> {
    if q < 1 {
        return Err(Error::InvalidModulus(q));
    }
    match pow_u64(q, spec.m()) {
        Some(p) if p <= limits.point_cap => Ok(p),
        _ => Err(Error::resource(
            "point enumeration",
            format!("{q}^{}", spec.m()),
            limits.point_cap,
        )),
    }
}

/// `|M(A_q)|` by depth-first enumeration of `Z_q^m`.
///
/// Coordinates are fixed in order; a hyperplane is tested as soon as its
/// last coordinate with a nonzero residue is fixed, and the whole subtree
/// below a prefix lying on it is skipped.
pub fn count_complement(spec: &ArrangementSpec, q: u64, limits: &Limits) -> Result<u64> {
    check_points(spec, q, limits)?;
    let r = Reduced::new(spec, q);
    let mut open: Vec<Vec<(usize, u64)>> = vec![Vec::new(); r.m];
    let mut closing: Vec<Vec<usize>> = vec![Vec::new(); r.m];
    for j in 0..r.n {
        let support: Vec<usize> = (0..r.m).filter(|&i| r.coef[i * r.n + j] != 0).collect();
        match support.last() {
            // the hyperplane is either everything or nothing
            None if r.b[j] == 0 => return Ok(0),
            None => {}
            Some(&last) => {
                for &i in &support {
                    open[i].push((j, r.coef[i * r.n + j]));
                }
                closing[last].push(j);
            }
        }
    }
    let dfs = Dfs {
        r: &r,
        open: &open,
        closing: &closing,
    };
    let total = (0..q)
        .into_par_iter()
        .map(|z0| {
            let mut sums = vec![0u64; (r.m + 1) * r.n];
            dfs.descend(0, z0, &mut sums)
        })
        .sum();
    Ok(total)
}

struct Dfs<'a> {
    r: &'a Reduced,
    open: &'a [Vec<(usize, u64)>],
    closing: &'a [Vec<usize>],
}

impl Dfs<'_> {
    /// Fixes coordinate `depth` to `value` and counts surviving completions.
    /// `sums[d * n + j]` holds the partial sum of hyperplane `j` over the
    /// first `d` coordinates.
    fn descend(&self, depth: usize, value: u64, sums: &mut [u64]) -> u64 {
        let (n, q) = (self.r.n, self.r.q as u128);
        let (prev, next) = sums.split_at_mut((depth + 1) * n);
        let prev = &prev[depth * n..];
        let next = &mut next[..n];
        next.copy_from_slice(prev);
        for &(j, c) in &self.open[depth] {
            next[j] = ((next[j] as u128 + value as u128 * c as u128) % q) as u64;
        }
        if self.closing[depth].iter().any(|&j| next[j] == self.r.b[j]) {
            return 0;
        }
        if depth + 1 == self.r.m {
            return 1;
        }
        (0..self.r.q).map(|v| self.descend(depth + 1, v, sums)).sum()
    }
}

/// An explicit set of points of `Z_q^m`, coordinates in `[0, q)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PointSet {
    pub q: u64,
    pub m: usize,
    pub points: BTreeSet<Vec<u64>>,
}

impl PointSet {
    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }
}

fn all_points(m: usize, q: u64) -> impl Iterator<Item = Vec<u64>> {
    let total = q.pow(m as u32);
    (0..total).map(move |mut k| {
        (0..m)
            .map(|_| {
                let d = k % q;
                k /= q;
                d
            })
            .collect()
    })
}

/// `H_{J,q}` by testing every point; the empty subset gives all of `Z_q^m`.
pub fn fiber_points(spec: &ArrangementSpec, subset: &[usize], q: u64, limits: &Limits) -> Result<PointSet> {
    check_points(spec, q, limits)?;
    let subset = if subset.is_empty() {
        Vec::new()
    } else {
        spec.normalize_subset(subset)?
    };
    let r = Reduced::new(spec, q);
    let points = all_points(r.m, q)
        .filter(|z| subset.iter().all(|&j| r.lies_on(z, j)))
        .collect();
    Ok(PointSet { q, m: r.m, points })
}

/// `L_q` from explicit point sets, with closures computed by set inclusion.
pub fn poset_by_enumeration(spec: &ArrangementSpec, q: u64, limits: &Limits) -> Result<IntersectionPoset> {
    let total = check_points(spec, q, limits)? as usize;
    let n = spec.n();
    limits.check_table(n)?;
    let r = Reduced::new(spec, q);
    let words = total.div_ceil(64);
    let mut planes = vec![vec![0u64; words]; n];
    for (k, z) in all_points(r.m, q).enumerate() {
        for (j, plane) in planes.iter_mut().enumerate() {
            if r.lies_on(&z, j) {
                plane[k / 64] |= 1 << (k % 64);
            }
        }
    }
    let mut whole = vec![u64::MAX; words];
    if !total.is_multiple_of(64) {
        whole[words - 1] = (1u64 << (total % 64)) - 1;
    }
    let closures = (0..1u64 << n)
        .into_par_iter()
        .map(|mask| {
            let mut set = whole.clone();
            for j in mask_indices(mask) {
                for (w, p) in set.iter_mut().zip(&planes[j]) {
                    *w &= p;
                }
            }
            if set.iter().all(|&w| w == 0) {
                return None;
            }
            let cl = (0..n)
                .filter(|&j| set.iter().zip(&planes[j]).all(|(s, p)| s & !p == 0))
                .fold(0u64, |c, j| c | 1 << j);
            Some(cl)
        })
        .collect();
    IntersectionPoset::from_closures(q, n, closures)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec(m: usize, cols: &[Vec<i64>], b: &[i64]) -> ArrangementSpec {
        ArrangementSpec::from_columns(m, cols, b).unwrap()
    }

    fn naive_count(s: &ArrangementSpec, q: u64) -> u64 {
        let r = Reduced::new(s, q);
        all_points(r.m, q)
            .filter(|z| (0..r.n).all(|j| !r.lies_on(z, j)))
            .count() as u64
    }

    #[test]
    fn count_examples() {
        let l = Limits::default();
        let s = spec(1, &[vec![1], vec![1]], &[1, -1]);
        assert_eq!(count_complement(&s, 5, &l).unwrap(), 3);
        assert_eq!(count_complement(&s, 2, &l).unwrap(), 1);
        let s = spec(1, &[vec![3], vec![4]], &[0, 0]);
        assert_eq!(count_complement(&s, 12, &l).unwrap(), 6);
        assert_eq!(count_complement(&s, 7, &l).unwrap(), 6);
    }

    #[test]
    fn degenerate_residues() {
        let l = Limits::default();
        // 3z = 0 is everything mod 3
        let s = spec(1, &[vec![3], vec![1]], &[0, 1]);
        assert_eq!(count_complement(&s, 3, &l).unwrap(), 0);
        // 3z = 1 is nothing mod 3
        let s = spec(1, &[vec![3], vec![1]], &[1, 1]);
        assert_eq!(count_complement(&s, 3, &l).unwrap(), 2);
    }

    #[test]
    fn pruned_matches_naive() {
        let s = spec(
            3,
            &[vec![1, 2, 0], vec![0, 1, -1], vec![2, 0, 3], vec![1, 1, 1]],
            &[0, 1, -2, 5],
        );
        for q in 1..=9 {
            assert_eq!(
                count_complement(&s, q, &Limits::default()).unwrap(),
                naive_count(&s, q),
                "q = {q}"
            );
        }
    }

    #[test]
    fn point_cap() {
        let s = spec(3, &[vec![1, 1, 1]], &[0]);
        let l = Limits {
            point_cap: 100,
            ..Limits::default()
        };
        assert!(matches!(count_complement(&s, 5, &l), Err(Error::ResourceLimit { .. })));
        assert!(count_complement(&s, 4, &l).is_ok());
        assert_eq!(count_complement(&s, 0, &l), Err(Error::InvalidModulus(0)));
    }

    #[test]
    fn fibers() {
        let l = Limits::default();
        let s = spec(1, &[vec![3], vec![4]], &[0, 0]);
        let f = fiber_points(&s, &[0], 6, &l).unwrap();
        let pts: Vec<Vec<u64>> = f.points.into_iter().collect();
        assert_eq!(pts, vec![vec![0], vec![2], vec![4]]);
        assert_eq!(fiber_points(&s, &[], 6, &l).unwrap().len(), 6);
        assert!(fiber_points(&s, &[2], 6, &l).is_err());
    }

    #[test]
    fn enumerated_poset_matches_algebraic() {
        let l = Limits::default();
        let s = spec(2, &[vec![1, 0], vec![2, 2], vec![1, 3]], &[0, 1, 2]);
        for q in 1..=12 {
            let a = crate::poset::intersection_poset(&s, q, &l).unwrap();
            let b = poset_by_enumeration(&s, q, &l).unwrap();
            assert_eq!(a, b, "q = {q}");
        }
    }
}
