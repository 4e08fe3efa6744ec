//! The modular objects attached to the (17, 6, 72) sequence, all as series in
//! `w = e^{pi i tau}` (so `q = w^2`):
//!
//! * `t`, the eta quotient `eta(2t) eta(6t)^5 / (eta(t)^5 eta(3t))`
//! * `s = sqrt(t)`, normalized to `s = w + ...`
//! * `P = sum (-1)^n F(n) t^n`, a weight one form
//! * `g = P * w ds/dw = sum c_n w^n`, the weight three cusp form
//! * `j = E_4^3 / Delta`

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::eta::{eta_quotient, eta_quotient_q, EtaProduct};
use super::series::QSeries;
use crate::error::{Error, Result};

fn mul_trunc(a: &[BigInt], b: &[BigInt], len: usize) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); len];
    for (i, x) in a.iter().enumerate().take(len) {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate().take(len - i) {
            if !y.is_zero() {
                out[i + j] += x * y;
            }
        }
    }
    out
}

/// Inverse of an integer series with constant term 1.
fn inverse_unit(a: &[BigInt], len: usize) -> Vec<BigInt> {
    assert!(a[0].is_one(), "unit series must start with 1");
    let mut inv = vec![BigInt::zero(); len];
    inv[0] = BigInt::one();
    for k in 1..len {
        let mut acc = BigInt::zero();
        for i in 1..=k.min(a.len() - 1) {
            if !a[i].is_zero() {
                acc += &a[i] * &inv[k - i];
            }
        }
        inv[k] = -acc;
    }
    inv
}

fn theta_int(a: &[BigInt]) -> Vec<BigInt> {
    a.iter()
        .enumerate()
        .map(|(n, c)| c * BigInt::from(n))
        .collect()
}

fn add_scaled(acc: &mut [BigInt], a: &[BigInt], k: i64) {
    for (x, y) in acc.iter_mut().zip(a) {
        *x += y * k;
    }
}

/// `t` in `q`, `len` coefficients starting at `q^0` (so `t[0] = 0`, `t[1] = 1`).
pub fn t_q_integers(len: usize) -> Vec<BigInt> {
    let (lead, body) =
        eta_quotient_q(&EtaProduct::hauptmodul_t(), len).expect("t is an integral eta quotient");
    debug_assert_eq!(lead, 1);
    let mut t = vec![BigInt::zero(); len];
    let n = len.saturating_sub(1);
    if n > 0 {
        t[1..=n].clone_from_slice(&body[..n]);
    }
    t
}

/// `t` in `w`, known mod `w^precision`.
pub fn t_series(precision: i64) -> QSeries {
    eta_quotient(&EtaProduct::hauptmodul_t(), precision).expect("t has integral w-exponent")
}

/// `s = sqrt(t) = w + ...`, known mod `w^precision`.
pub fn s_series(precision: i64) -> QSeries {
    t_series(precision + 1)
        .sqrt()
        .expect("t = w^2 (1 + ...) has a square root")
}

/// `P(q) = sum (-1)^n F(n) t(q)^n` as integers in `q`, `len` coefficients.
///
/// Solves the Picard-Fuchs equation
/// `(1+8t)(1+9t) th_t^2 P + t(17+144t) th_t P + 6t(1+12t) P = 0` after the
/// change of variables `th_t = h th_q` with `h = t / th_q t`. The power series
/// solution with constant term 1 is unique, so this is the composition.
pub fn p_q_integers(len: usize) -> Result<Vec<BigInt>> {
    if len == 0 {
        return Ok(Vec::new());
    }
    let t = t_q_integers(len + 1);
    let dt = theta_int(&t);
    // h = t / (q dt/dq); both start at q^1 with coefficient 1
    let t_shift: Vec<BigInt> = t[1..].to_vec();
    let dt_shift: Vec<BigInt> = dt[1..].to_vec();
    let h = mul_trunc(&t_shift, &inverse_unit(&dt_shift, len), len);
    let dh = theta_int(&h);
    let t = &t[..len];
    let t2 = mul_trunc(t, t, len);

    // a2 = 1 + 17 t + 72 t^2, a1 = 17 t + 144 t^2, a0 = 6 t + 72 t^2
    let mut a2 = vec![BigInt::zero(); len];
    a2[0] = BigInt::one();
    add_scaled(&mut a2, t, 17);
    add_scaled(&mut a2, &t2, 72);
    let mut a1 = vec![BigInt::zero(); len];
    add_scaled(&mut a1, t, 17);
    add_scaled(&mut a1, &t2, 144);
    let mut a0 = vec![BigInt::zero(); len];
    add_scaled(&mut a0, t, 6);
    add_scaled(&mut a0, &t2, 72);

    let h2 = mul_trunc(&h, &h, len);
    let lead = mul_trunc(&a2, &h2, len);
    let mut first = mul_trunc(&mul_trunc(&a2, &h, len), &dh, len);
    let a1h = mul_trunc(&a1, &h, len);
    for (x, y) in first.iter_mut().zip(&a1h) {
        *x += y;
    }
    let zeroth = a0;
    debug_assert!(lead[0].is_one() && first[0].is_zero() && zeroth[0].is_zero());

    let mut p = vec![BigInt::zero(); len];
    p[0] = BigInt::one();
    for n in 1..len {
        let mut acc = BigInt::zero();
        for i in 1..=n {
            let m = (n - i) as i64;
            if p[n - i].is_zero() {
                continue;
            }
            let coeff = &lead[i] * (m * m) + &first[i] * m + &zeroth[i];
            if !coeff.is_zero() {
                acc += coeff * &p[n - i];
            }
        }
        let nn = BigInt::from((n * n) as i64);
        let (quot, rem) = (-acc).div_rem(&nn);
        if !rem.is_zero() {
            return Err(Error::InsufficientTruncation(format!(
                "P coefficient {n} is not integral; the operator does not match t"
            )));
        }
        p[n] = quot;
    }
    Ok(p)
}

/// `P` in `w`, known mod `w^precision`.
pub fn p_series(precision: i64) -> QSeries {
    let len = ((precision + 1) / 2).max(0) as usize;
    let p = p_q_integers(len).expect("Picard-Fuchs recursion is integral");
    QSeries::from_integers(0, &p, len as i64)
        .compose_even()
        .truncate(precision)
}

/// `P` by composing the power series `sum (-1)^n F(n) t^n` with `t(q)`
/// directly; quadratic per term and only meant for modest precision.
pub fn p_series_by_composition(precision: i64) -> QSeries {
    let n_max = (precision / 2).max(0) as usize;
    let coeffs: Vec<BigRational> = crate::sequences::f_values(n_max)
        .into_iter()
        .enumerate()
        .map(|(n, f)| BigRational::from_integer(if n % 2 == 0 { f } else { -f }))
        .collect();
    let t = t_series(precision);
    QSeries::compose(&coeffs, &t, precision).expect("t has positive valuation")
}

/// `g = P * theta_w(s) = sum c_n w^n`, known mod `w^precision`.
pub fn g_series(precision: i64) -> QSeries {
    let s = s_series(precision);
    let p = p_series(precision);
    p.mul(&s.theta()).truncate(precision)
}

/// `sigma_3(n)` for `n >= 1`.
fn sigma3(n: u64) -> BigInt {
    let mut total = BigInt::zero();
    let mut d = 1;
    while d * d <= n {
        if n.is_multiple_of(d) {
            total += BigInt::from(d).pow(3);
            let e = n / d;
            if e != d {
                total += BigInt::from(e).pow(3);
            }
        }
        d += 1;
    }
    total
}

/// `E_4 = 1 + 240 sum sigma_3(n) q^n` in `w`.
pub fn e4_series(precision: i64) -> QSeries {
    let len = ((precision + 1) / 2).max(0) as usize;
    let coeffs: Vec<BigInt> = (0..len as u64)
        .map(|n| {
            if n == 0 {
                BigInt::one()
            } else {
                sigma3(n) * 240
            }
        })
        .collect();
    QSeries::from_integers(0, &coeffs, len as i64)
        .compose_even()
        .truncate(precision)
}

/// `j = E_4^3 / Delta = w^-2 + 744 + 196884 w^2 + ...`, known mod `w^precision`.
pub fn j_series(precision: i64) -> QSeries {
    // 1/Delta loses two orders on each side of the unit part
    let e4 = e4_series(precision + 4);
    let delta = eta_quotient(&EtaProduct::delta(), precision + 4).expect("Delta is integral");
    e4.pow(3)
        .truncate(precision + 4)
        .div(&delta)
        .expect("Delta is nonzero")
        .truncate(precision)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;

    #[test]
    fn g_leading_coefficients() {
        let g = g_series(12);
        assert_eq!(g.coeff(1), rat(1, 1));
        assert_eq!(g.coeff(3), rat(3, 2));
        assert_eq!(g.coeff(5), rat(-9, 8));
        assert_eq!(g.coeff(7), rat(-85, 16));
        assert_eq!(g.coeff(9), rat(-981, 128));
        for e in (0..12).step_by(2) {
            assert_eq!(g.coeff(e), rat(0, 1));
        }
    }

    #[test]
    fn s_branch() {
        let s = s_series(20);
        assert_eq!(s.leading(), Some((1, &rat(1, 1))));
        assert_eq!(s.precision(), 20);
        assert!(s.iter().all(|(e, _)| e % 2 == 1));
    }

    #[test]
    fn p_by_ode_equals_composition() {
        let fast = p_series(160);
        let slow = p_series_by_composition(160);
        assert_eq!(fast, slow);
    }

    #[test]
    fn j_leading_terms() {
        let j = j_series(30);
        assert_eq!(j.valuation(), Some(-2));
        assert_eq!(j.coeff(-2), rat(1, 1));
        assert_eq!(j.coeff(0), rat(744, 1));
        assert_eq!(j.coeff(2), rat(196884, 1));
        assert_eq!(j.coeff(4), rat(21493760, 1));
        assert_eq!(j.precision(), 30);
    }

    #[test]
    fn sigma3_values() {
        assert_eq!(sigma3(1), BigInt::from(1));
        assert_eq!(sigma3(4), BigInt::from(1 + 8 + 64));
        assert_eq!(sigma3(6), BigInt::from(1 + 8 + 27 + 216));
    }
}
