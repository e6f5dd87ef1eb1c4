mod common;

use common::{divisors_from_minors, random_unimodular, rng};
use modarr::exactla::{in_span_mod_q, modular_divisors, smith_normal_form};
use modarr::IntegerMatrix;
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;

fn matrix() -> impl Strategy<Value = IntegerMatrix> {
    (1usize..=4, 1usize..=4).prop_flat_map(|(r, c)| {
        prop::collection::vec(-12i64..=12, r * c)
            .prop_map(move |v| IntegerMatrix::new(r, c, v.into_iter().map(BigInt::from).collect()).unwrap())
    })
}

/// Exhaustive: is there `x` in `Z_q^cols` with `M x = v (mod q)`?
fn solvable_by_search(m: &IntegerMatrix, v: &[BigInt], q: u64) -> bool {
    let total = q.pow(m.cols() as u32);
    (0..total).any(|mut k| {
        let x: Vec<BigInt> = (0..m.cols())
            .map(|_| {
                let d = k % q;
                k /= q;
                BigInt::from(d)
            })
            .collect();
        (0..m.rows()).all(|i| {
            let s: BigInt = (0..m.cols()).map(|j| m.get(i, j) * &x[j]).sum();
            ((s - &v[i]) % BigInt::from(q)).is_zero()
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn divisors_match_minor_gcds(m in matrix()) {
        let snf = smith_normal_form(&m, false);
        prop_assert_eq!(snf.divisors().to_vec(), divisors_from_minors(&m));
    }

    #[test]
    fn chain_divides_and_is_positive(m in matrix()) {
        let d = smith_normal_form(&m, false).divisors().to_vec();
        prop_assert!(d.iter().all(|x| x.is_positive()));
        prop_assert!(d.windows(2).all(|w| (&w[1] % &w[0]).is_zero()));
    }

    #[test]
    fn transforms_reproduce_diagonal(m in matrix()) {
        let snf = smith_normal_form(&m, true);
        let p = snf.left_transform().unwrap();
        let q = snf.right_transform().unwrap();
        prop_assert_eq!(p.determinant().unwrap().abs(), BigInt::one());
        prop_assert_eq!(q.determinant().unwrap().abs(), BigInt::one());
        prop_assert_eq!(p.mul(&m).unwrap().mul(q).unwrap(), snf.diagonal(m.rows(), m.cols()));
    }

    #[test]
    fn unimodular_invariance(m in matrix(), seed in any::<u64>()) {
        let mut r = rng(seed);
        let u = random_unimodular(&mut r, m.rows(), 6);
        let v = random_unimodular(&mut r, m.cols(), 6);
        let moved = u.mul(&m).unwrap().mul(&v).unwrap();
        prop_assert_eq!(smith_normal_form(&moved, false), smith_normal_form(&m, false));
    }

    #[test]
    fn membership_matches_search(
        (m, v) in (1usize..=3, 1usize..=2).prop_flat_map(|(r, c)| (
            prop::collection::vec(-6i64..=6, r * c).prop_map(move |e| {
                IntegerMatrix::new(r, c, e.into_iter().map(BigInt::from).collect()).unwrap()
            }),
            prop::collection::vec(-6i64..=6, r),
        )),
        q in 1u64..=12,
    ) {
        let v: Vec<BigInt> = v.into_iter().map(BigInt::from).collect();
        prop_assert_eq!(in_span_mod_q(&m, &v, q).unwrap(), solvable_by_search(&m, &v, q));
    }

    #[test]
    fn image_size_matches_search(
        m in (1usize..=2, 1usize..=2).prop_flat_map(|(r, c)| {
            prop::collection::vec(-6i64..=6, r * c).prop_map(move |e| {
                IntegerMatrix::new(r, c, e.into_iter().map(BigInt::from).collect()).unwrap()
            })
        }),
        q in 1u64..=9,
    ) {
        let image = (0..q.pow(m.rows() as u32))
            .filter(|&k| {
                let v: Vec<BigInt> = (0..m.rows()).map(|i| BigInt::from(k / q.pow(i as u32) % q)).collect();
                solvable_by_search(&m, &v, q)
            })
            .count() as u64;
        let md = modular_divisors(&m, q).unwrap();
        prop_assert_eq!(BigInt::from(md.image_cardinality()), BigInt::from(image));
    }
}

#[test]
fn five_hundred_random_matrices() {
    let mut r = rng(7);
    for _ in 0..500 {
        let rows = rand::Rng::gen_range(&mut r, 1..=4);
        let cols = rand::Rng::gen_range(&mut r, 1..=4);
        let m = common::random_matrix(&mut r, rows, cols, 15);
        assert_eq!(
            smith_normal_form(&m, false).divisors().to_vec(),
            divisors_from_minors(&m),
            "{m:?}"
        );
    }
}
