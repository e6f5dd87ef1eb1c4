//! Intersection posets `L_q` built from algebraic tests alone.
//!
//! An element is the nonempty intersection `H_{J,q}`, named by its closure
//! `cl(J) = { j : H_{j,q} contains H_{J,q} }`. Since `H_{cl(J),q} = H_{J,q}`,
//! two subsets name the same element exactly when their closures coincide,
//! and `H_{J1} >= H_{J2}` under reverse inclusion iff `cl(J1)` is contained
//! in `cl(J2)`. Subsets are bitmasks over the 0-based hyperplane indices.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use serde::Serialize;

use crate::arrangement::{period_data, ArrangementSpec};
use crate::exactla::{in_span_mod_q, modular_divisors, IntegerMatrix};
use crate::numtheory::{divisors, gcd_u64};
use crate::{Error, Limits, Result};

/// The labeled intersection poset of one reduction `A_q`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntersectionPoset {
    q: u64,
    n: usize,
    /// Indexed by subset mask: `None` when `H_{J,q}` is empty, otherwise the
    /// closure mask of `J`.
    closures: Vec<Option<u64>>,
    /// Distinct closures, sorted by size then by index list.
    elements: Vec<u64>,
}

impl IntersectionPoset {
    /// Assembles a poset from a full closure table of length `2^n`.
    pub fn from_closures(q: u64, n: usize, closures: Vec<Option<u64>>) -> Result<Self> {
        if closures.len() != 1usize << n {
            return Err(Error::InvalidInput(format!(
                "closure table needs 2^{n} entries, got {}",
                closures.len()
            )));
        }
        if closures[0].is_none() {
            return Err(Error::InvalidInput("the whole space cannot be empty".into()));
        }
        let mut elements: Vec<u64> = closures.iter().flatten().copied().collect();
        elements.sort_by_key(|&c| (c.count_ones(), mask_indices(c)));
        elements.dedup();
        Ok(IntersectionPoset {
            q,
            n,
            closures,
            elements,
        })
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Closure label of `H_{J,q}`, or `None` if it is empty.
    pub fn closure(&self, subset: u64) -> Option<u64> {
        self.closures[subset as usize]
    }

    pub fn is_empty_intersection(&self, subset: u64) -> bool {
        self.closures[subset as usize].is_none()
    }

    /// Closure labels of all elements, sorted.
    pub fn elements(&self) -> &[u64] {
        &self.elements
    }

    /// The bottom element `V = H_{empty,q}`.
    pub fn bottom(&self) -> u64 {
        self.closures[0].expect("whole space is nonempty")
    }

    /// The greatest element, when one exists.
    pub fn top(&self) -> Option<u64> {
        let max: Vec<u64> = self
            .elements
            .iter()
            .copied()
            .filter(|&a| !self.elements.iter().any(|&b| b != a && a & !b == 0))
            .collect();
        (max.len() == 1).then(|| max[0])
    }

    /// Reverse-inclusion order on closure labels: `a <= b` iff `H_a` contains `H_b`.
    pub fn leq(a: u64, b: u64) -> bool {
        a & !b == 0
    }

    /// Cover relations as index pairs into [`Self::elements`].
    pub fn covers(&self) -> Vec<(usize, usize)> {
        let e = &self.elements;
        let mut out = Vec::new();
        for (i, &a) in e.iter().enumerate() {
            for (j, &b) in e.iter().enumerate() {
                if i == j || !Self::leq(a, b) {
                    continue;
                }
                let between = e
                    .iter()
                    .any(|&c| c != a && c != b && Self::leq(a, c) && Self::leq(c, b));
                if !between {
                    out.push((i, j));
                }
            }
        }
        out
    }

    /// Whether `H_{J1,q} = H_{J2,q}` with both nonempty.
    pub fn same_element(&self, j1: u64, j2: u64) -> bool {
        match (self.closure(j1), self.closure(j2)) {
            (Some(a), Some(b)) => a == b,
            _ => false,
        }
    }

    pub fn to_report(&self) -> PosetReport {
        PosetReport {
            q: self.q,
            n: self.n,
            elements: self.elements.iter().map(|&c| one_based(c)).collect(),
            covers: self.covers(),
            bottom: one_based(self.bottom()),
            top: self.top().map(one_based),
        }
    }
}

/// Serializable view of a poset; labels use 1-based hyperplane numbers.
#[derive(Debug, Clone, Serialize)]
pub struct PosetReport {
    pub q: u64,
    pub n: usize,
    pub elements: Vec<Vec<usize>>,
    pub covers: Vec<(usize, usize)>,
    pub bottom: Vec<usize>,
    pub top: Option<Vec<usize>>,
}

pub(crate) fn mask_indices(mask: u64) -> Vec<usize> {
    (0..64).filter(|&j| mask >> j & 1 == 1).collect()
}

fn one_based(mask: u64) -> Vec<usize> {
    mask_indices(mask).into_iter().map(|j| j + 1).collect()
}

fn mask_of(subset: &[usize]) -> u64 {
    subset.iter().fold(0, |m, &j| m | 1 << j)
}

/// Builds `L_q` without enumerating points.
///
/// `H_{J,q}` is nonempty iff `[b_J]_q` lies in the span of the columns of
/// `[C_J]_q^T`. For nonempty `H_{J,q}` and `j` outside `J`,
/// `H_{j,q}` contains `H_{J,q}` iff (a) `H_{J+j,q}` is nonempty and
/// (b) `[c_j]_q` lies in the column span of `[C_J]_q`.
pub fn intersection_poset(spec: &ArrangementSpec, q: u64, limits: &Limits) -> Result<IntersectionPoset> {
    if q < 1 {
        return Err(Error::InvalidModulus(q));
    }
    let n = spec.n();
    limits.check_table(n)?;
    let size = 1usize << n;
    let mut nonempty = vec![false; size];
    nonempty[0] = true;
    for mask in 1..size {
        // an empty intersection stays empty under further intersection
        let parents_ok = (0..n)
            .filter(|&j| mask >> j & 1 == 1)
            .all(|j| nonempty[mask & !(1 << j)]);
        if !parents_ok {
            continue;
        }
        let subset = mask_indices(mask as u64);
        let b: Vec<BigInt> = subset.iter().map(|&j| spec.constants()[j].clone()).collect();
        nonempty[mask] = in_span_mod_q(&spec.coefficient_submatrix(&subset).transpose(), &b, q)?;
    }
    let columns: Vec<Vec<BigInt>> = (0..n).map(|j| spec.column(j)).collect();
    let mut closures = vec![None; size];
    for mask in 0..size {
        if !nonempty[mask] {
            continue;
        }
        let subset = mask_indices(mask as u64);
        let c_j = spec.coefficient_submatrix(&subset);
        let base = modular_divisors(&c_j, q)?;
        let mut cl = mask as u64;
        for (j, col) in columns.iter().enumerate() {
            if mask >> j & 1 == 1 || !nonempty[mask | 1 << j] {
                continue;
            }
            if spans(&c_j, &base, col, q)? {
                cl |= 1 << j;
            }
        }
        closures[mask] = Some(cl);
    }
    IntersectionPoset::from_closures(q, n, closures)
}

fn spans(m: &IntegerMatrix, base: &crate::exactla::ModularDivisors, v: &[BigInt], q: u64) -> Result<bool> {
    if v.iter().all(|x| crate::numtheory::residue(x, q) == 0) {
        return Ok(true);
    }
    Ok(&modular_divisors(&m.with_column(v)?, q)? == base)
}

/// Labeled isomorphism: the same subsets give nonempty intersections, and
/// the reverse-inclusion order agrees on every pair of them. Equivalent to
/// equality of the closure tables.
pub fn isomorphic(p1: &IntersectionPoset, p2: &IntersectionPoset) -> Result<bool> {
    if p1.n != p2.n {
        return Err(Error::InvalidComparison(format!(
            "posets over {} and {} hyperplanes",
            p1.n, p2.n
        )));
    }
    Ok(p1.closures == p2.closures)
}

/// Eventual period of the sequence of poset isomorphism classes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct PosetPeriod {
    pub qstar: u64,
    pub rho0: u64,
    /// Smallest divisor `p` of `rho0` with `L_q ~ L_{q+p}` across the window.
    pub period: u64,
    /// First scanned modulus, `qstar + 1`.
    pub start: u64,
    pub window: u64,
    /// Whether `L_q ~ L_{q+rho0}` held throughout the window.
    pub verified_rho0_period: bool,
    /// Always true: the minimum is observed over a finite window only.
    pub empirical: bool,
}

/// Scans `q = qstar+1 ..= qstar+window` and reports the smallest divisor `p`
/// of `rho0` for which `L_q` and `L_{q+p}` are isomorphic at every scanned `q`.
pub fn poset_min_period(spec: &ArrangementSpec, window: u64, limits: &Limits) -> Result<PosetPeriod> {
    if window == 0 {
        return Err(Error::InvalidInput("window: must be at least 1".into()));
    }
    limits.check_table(spec.n())?;
    let pd = period_data(spec, limits)?;
    let start = pd.qstar + 1;
    let end = pd.qstar + window + pd.rho0;
    let tables = (window + pd.rho0).saturating_mul(1 << spec.n());
    if tables > limits.subset_cap {
        return Err(Error::resource(
            "poset sweep",
            format!("{} posets of 2^{} subsets", window + pd.rho0, spec.n()),
            limits.subset_cap,
        ));
    }
    let posets: BTreeMap<u64, IntersectionPoset> = {
        use rayon::prelude::*;
        (start..=end)
            .into_par_iter()
            .map(|q| intersection_poset(spec, q, limits).map(|p| (q, p)))
            .collect::<Result<_>>()?
    };
    let holds = |p: u64| (start..start + window).all(|q| posets[&q].closures == posets[&(q + p)].closures);
    let verified = holds(pd.rho0);
    let period = divisors(pd.rho0).into_iter().find(|&p| holds(p)).unwrap_or(pd.rho0);
    Ok(PosetPeriod {
        qstar: pd.qstar,
        rho0: pd.rho0,
        period,
        start,
        window,
        verified_rho0_period: verified,
        empirical: true,
    })
}

/// Checks the coarseness transfer: given `H_{J1,q} = H_{J2,q}` (nonempty)
/// with `q, q' > qstar` and `gcd(rho0, q') | gcd(rho0, q)`, reports whether
/// `H_{J1,q'} = H_{J2,q'}`.
pub fn coarseness_check(
    spec: &ArrangementSpec,
    j1: &[usize],
    j2: &[usize],
    q: u64,
    q_prime: u64,
    limits: &Limits,
) -> Result<bool> {
    let (j1, j2) = (spec.normalize_subset(j1)?, spec.normalize_subset(j2)?);
    let pd = period_data(spec, limits)?;
    if q <= pd.qstar || q_prime <= pd.qstar {
        return Err(Error::PreconditionViolation(format!(
            "q = {q} and q' = {q_prime} must both exceed q* = {}",
            pd.qstar
        )));
    }
    if !gcd_u64(pd.rho0, q).is_multiple_of(gcd_u64(pd.rho0, q_prime)) {
        return Err(Error::PreconditionViolation(format!(
            "gcd(rho0, q') = {} does not divide gcd(rho0, q) = {}",
            gcd_u64(pd.rho0, q_prime),
            gcd_u64(pd.rho0, q)
        )));
    }
    let (m1, m2) = (mask_of(&j1), mask_of(&j2));
    let at_q = intersection_poset(spec, q, limits)?;
    if !at_q.same_element(m1, m2) {
        return Err(Error::PreconditionViolation(format!(
            "H_J1 and H_J2 are not the same nonempty intersection at q = {q}"
        )));
    }
    Ok(intersection_poset(spec, q_prime, limits)?.same_element(m1, m2))
}
