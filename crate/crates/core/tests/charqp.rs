mod common;

use common::{random_spec, rng};
use modarr::charqp::characteristic_quasipoly;
use modarr::oracle::count_complement;
use modarr::Limits;
use num_bigint::BigInt;
use rand::Rng;

#[test]
fn evaluation_matches_enumeration_past_q0() {
    let mut r = rng(41);
    let l = Limits::default();
    let mut done = 0;
    while done < 60 {
        let m = r.gen_range(1..=3);
        let n = r.gen_range(1..=8);
        let bound = if m == 3 { 2 } else { 4 };
        let s = random_spec(&mut r, m, n, bound, 4);
        let qp = characteristic_quasipoly(&s, &l).unwrap();
        let top = qp.q0() + 2 * qp.rho0() + 4;
        if top.checked_pow(m as u32).is_none_or(|p| p > 200_000) {
            continue;
        }
        for q in qp.q0() + 1..=top {
            let e = qp.evaluate(q).unwrap();
            assert!(e.valid);
            assert_eq!(
                e.value,
                BigInt::from(count_complement(&s, q, &l).unwrap()),
                "{s:?} q={q}"
            );
        }
        done += 1;
    }
}

#[test]
fn constituents_are_monic_of_degree_m() {
    let mut r = rng(42);
    for _ in 0..40 {
        let m = r.gen_range(1..=3);
        let n = r.gen_range(1..=7);
        let s = random_spec(&mut r, m, n, 3, 5);
        let qp = characteristic_quasipoly(&s, &Limits::default()).unwrap();
        for p in qp.constituents().values() {
            assert!(p.is_monic() && p.degree() == Some(m), "{p}");
        }
        let p = qp.minimum_period();
        assert_eq!(qp.rho0() % p, 0);
        if qp.rho0() <= 5000 {
            // residue-by-residue check of the period and its minimality
            let periodic = |p: u64| (0..qp.rho0()).all(|r| qp.constituent_for(r) == qp.constituent_for(r + p));
            assert!(periodic(p));
            assert!(modarr::numtheory::divisors(p)
                .into_iter()
                .filter(|&d| d < p)
                .all(|d| !periodic(d)));
        }
    }
}
