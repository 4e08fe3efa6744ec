//! Property tests against independent oracles.

use num_bigint::BigInt;
use proptest::prelude::*;
use sporadic::arith::{
    cornacchia, cornacchia_exhaustive, count_quadratic_roots, kronecker_symbol, primes_in, rat,
    sqrt_in_field, FiniteField, PrimeField, QuadExtField,
};
use sporadic::congruence::GammaCheck;
use sporadic::pointcount::oracle::brute_count;
use sporadic::pointcount::{
    count_cubic_points, expected_det, rho_det_with, Cover, MemoTraces, TernaryCubic, TraceSource,
};
use sporadic::qseries::{eta_quotient, g_series, EtaProduct, QSeries};
use sporadic::sequences::{integral_prefix, zagier_u, RecurrenceTriple};

const SMALL_PRIMES: [u64; 8] = [5, 7, 11, 13, 17, 19, 23, 29];

fn legendre_by_euler(a: i64, p: u64) -> i8 {
    let f = PrimeField::new(p).unwrap();
    let x = f.from_i64(a);
    if f.is_zero(x) {
        0
    } else if f.pow(x, (p - 1) / 2) == f.one() {
        1
    } else {
        -1
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn eta_quotients_multiply(e1 in -3i64..4, e2 in -3i64..4, e3 in -3i64..4, f1 in -3i64..4) {
        let a = EtaProduct::new([(1, 12 * e1), (2, 12 * e2)]);
        let b = EtaProduct::new([(2, 12 * e3), (3, 12 * f1)]);
        let lhs = eta_quotient(&a.mul(&b), 20).unwrap();
        let rhs = eta_quotient(&a, 40).unwrap().mul(&eta_quotient(&b, 40).unwrap());
        let n = lhs.precision();
        prop_assert_eq!(lhs, rhs.truncate(n));
    }

    #[test]
    fn sqrt_squares_back(c in proptest::collection::vec(-20i64..20, 1..12)) {
        let mut coeffs: Vec<_> = c.iter().map(|&v| rat(v, 3)).collect();
        coeffs[0] = rat(1, 1);
        let f = QSeries::from_dense(0, coeffs, 12);
        let sq = f.mul(&f);
        prop_assert_eq!(sq.sqrt().unwrap(), f);
    }

    #[test]
    fn kronecker_is_multiplicative(a in -500i64..500, b in -500i64..500, pi in 0usize..8) {
        let p = SMALL_PRIMES[pi] as i64;
        let k = |x| kronecker_symbol(x, p).unwrap();
        prop_assert_eq!(k(a * b), k(a) * k(b));
        prop_assert_eq!(k(a), legendre_by_euler(a, p as u64));
    }

    #[test]
    fn quadratic_root_counts(a in 0i64..13, b in 0i64..13, c in 0i64..13) {
        let f = PrimeField::new(13).unwrap();
        let (a, b, c) = (f.from_i64(a), f.from_i64(b), f.from_i64(c));
        let brute = f.elements().filter(|&x| {
            let v = f.add(f.add(f.mul(a, f.mul(x, x)), f.mul(b, x)), c);
            f.is_zero(v)
        }).count() as u64;
        prop_assert_eq!(count_quadratic_roots(&f, a, b, c).solutions(), brute);
    }

    #[test]
    fn field_sqrt_squares_to_input(pi in 0usize..4, i in 0u64..1000) {
        let p = SMALL_PRIMES[pi];
        let f = QuadExtField::new(p).unwrap();
        let x = f.element(i % f.order());
        match sqrt_in_field(&f, x) {
            Some(r) => prop_assert_eq!(f.mul(r, r), x),
            None => prop_assert!(!f.is_square(x)),
        }
    }

    #[test]
    fn early_abort_matches_full_recurrence(a in 0i64..21, b in 0i64..11, c in -20i64..81) {
        let t = RecurrenceTriple::new(a, b, c);
        let full = zagier_u(t, 12);
        let fast = integral_prefix(t, 12);
        prop_assert_eq!(fast.is_some(), full.integral);
        if let Some(v) = fast {
            prop_assert_eq!(Some(v), full.integers());
        }
    }

    #[test]
    fn cornacchia_matches_search(i in 0usize..200, d in prop_oneof![Just(1u64), Just(2), Just(3), Just(6)]) {
        let primes = primes_in(5, 2000);
        let p = primes[i % primes.len()];
        let fast = cornacchia(p, d).unwrap().map(|r| (r.a, r.b));
        prop_assert_eq!(fast, cornacchia_exhaustive(p, d));
    }
}

#[test]
fn fast_counts_match_brute_force() {
    for p in [5u64, 7, 11, 13] {
        let f = PrimeField::new(p).unwrap();
        let squares = f.square_table();
        for c in f.elements() {
            let brute = brute_count(&f, &TernaryCubic::fiber(&f, c));
            assert_eq!(
                count_cubic_points(&f, &squares, c),
                brute,
                "p = {p}, c = {c}"
            );
        }
    }
    let f = QuadExtField::new(5).unwrap();
    let squares = f.square_table();
    for c in f.elements() {
        assert_eq!(
            count_cubic_points(&f, &squares, c),
            brute_count(&f, &TernaryCubic::fiber(&f, c))
        );
    }
}

#[test]
fn traces_are_even() {
    let traces = MemoTraces::default();
    for p in primes_in(5, 97) {
        let a = traces.trace(p, Cover::Two).unwrap();
        assert_eq!(a % 2, 0, "A_{p} = {a}");
    }
}

#[test]
fn determinants_match_character() {
    let traces = MemoTraces::default();
    for p in primes_in(5, 73) {
        assert_eq!(
            rho_det_with(&traces, p).unwrap(),
            expected_det(p).unwrap(),
            "p = {p}"
        );
    }
}

#[test]
fn gamma_sources_agree() {
    let g = g_series(98);
    let traces = MemoTraces::default();
    for p in primes_in(5, 97) {
        let check = GammaCheck::compute(p, &g, &traces).unwrap();
        assert!(check.agreed().is_some(), "{check:?}");
    }
}

#[test]
fn g_is_integral_away_from_two() {
    let g = g_series(300);
    for (_, c) in g.iter() {
        let mut d = c.denom().clone();
        while (&d % 2u32) == BigInt::from(0) {
            d /= 2u32;
        }
        assert_eq!(d, BigInt::from(1));
    }
}
