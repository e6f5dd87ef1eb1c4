//! Generators and brute-force references shared by the integration tests.
#![allow(dead_code)]

use modarr::arrangement::subset_profile;
use modarr::{ArrangementSpec, IntegerMatrix};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn ints(v: &[i64]) -> Vec<BigInt> {
    v.iter().map(|&x| BigInt::from(x)).collect()
}

pub fn random_matrix(rng: &mut impl Rng, rows: usize, cols: usize, bound: i64) -> IntegerMatrix {
    let entries = (0..rows * cols)
        .map(|_| BigInt::from(rng.gen_range(-bound..=bound)))
        .collect();
    IntegerMatrix::new(rows, cols, entries).unwrap()
}

/// A random arrangement with nonzero columns.
pub fn random_spec(rng: &mut impl Rng, m: usize, n: usize, coef: i64, constant: i64) -> ArrangementSpec {
    let mut columns = Vec::with_capacity(n);
    while columns.len() < n {
        let c: Vec<i64> = (0..m).map(|_| rng.gen_range(-coef..=coef)).collect();
        if c.iter().any(|&x| x != 0) {
            columns.push(c);
        }
    }
    let b: Vec<i64> = (0..n).map(|_| rng.gen_range(-constant..=constant)).collect();
    ArrangementSpec::from_columns(m, &columns, &b).unwrap()
}

/// A product of random elementary operations, so determinant +-1.
pub fn random_unimodular(rng: &mut impl Rng, size: usize, steps: usize) -> IntegerMatrix {
    let mut u = IntegerMatrix::identity(size);
    if size < 2 {
        if rng.gen_bool(0.5) {
            u.set(0, 0, BigInt::from(-1));
        }
        return u;
    }
    for _ in 0..steps {
        let i = rng.gen_range(0..size);
        let mut j = rng.gen_range(0..size - 1);
        if j >= i {
            j += 1;
        }
        let k = BigInt::from(rng.gen_range(-3i64..=3));
        for c in 0..size {
            let v = u.get(i, c) + &k * u.get(j, c);
            u.set(i, c, v);
        }
        if rng.gen_ratio(1, 4) {
            for c in 0..size {
                let v = -u.get(i, c);
                u.set(i, c, v);
            }
        }
    }
    u
}

pub fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, k, &mut Vec::new(), &mut out);
    out
}

fn minor(m: &IntegerMatrix, rows: &[usize], cols: &[usize]) -> BigInt {
    let entries = rows
        .iter()
        .flat_map(|&i| cols.iter().map(move |&j| m.get(i, j).clone()))
        .collect();
    IntegerMatrix::new(rows.len(), cols.len(), entries)
        .unwrap()
        .determinant()
        .unwrap()
}

/// Elementary divisors from determinantal divisors: `e_k = D_k / D_(k-1)`
/// where `D_k` is the gcd of all `k x k` minors.
pub fn divisors_from_minors(m: &IntegerMatrix) -> Vec<BigInt> {
    let mut out = Vec::new();
    let mut prev = BigInt::from(1);
    for k in 1..=m.rows().min(m.cols()) {
        let mut g = BigInt::zero();
        for rows in combinations(m.rows(), k) {
            for cols in combinations(m.cols(), k) {
                g = g.gcd(&minor(m, &rows, &cols));
            }
        }
        if g.is_zero() {
            break;
        }
        out.push(&g / &prev);
        prev = g;
    }
    out
}

pub fn subsets(n: usize) -> impl Iterator<Item = Vec<usize>> {
    (1u64..1 << n).map(move |mask| (0..n).filter(|&j| mask >> j & 1 == 1).collect())
}

/// The period constants from their definitions, over every subset.
pub fn brute_periods(spec: &ArrangementSpec) -> (u64, u64, u64) {
    let m = spec.m();
    let mut rho0 = BigInt::from(1);
    let mut q0 = BigInt::zero();
    let mut q1 = BigInt::zero();
    let profiles: Vec<_> = subsets(spec.n()).map(|j| subset_profile(spec, &j).unwrap()).collect();
    for p in &profiles {
        rho0 = rho0.lcm(p.e());
        if p.rank_jump && p.subset.len() <= m + 1 {
            q0 = q0.max(p.e_prime().abs());
        }
    }
    for p in &profiles {
        if p.subset.len() > m.saturating_sub(1) {
            continue;
        }
        for j in (0..spec.n()).filter(|j| !p.subset.contains(j)) {
            let mut bigger = p.subset.clone();
            bigger.push(j);
            let pj = subset_profile(spec, &bigger).unwrap();
            if pj.ell == p.ell + 1 {
                q1 = q1.max(pj.e().clone());
            }
        }
    }
    let q0 = if spec.is_central() { BigInt::zero() } else { q0 };
    (rho0.to_u64().unwrap(), q0.to_u64().unwrap(), q1.to_u64().unwrap())
}
