use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Sums many rationals while reducing only once at the end.
#[derive(Clone, Debug)]
pub(crate) struct RatAccumulator {
    num: BigInt,
    den: BigInt,
}

impl RatAccumulator {
    pub(crate) fn new() -> Self {
        Self {
            num: BigInt::zero(),
            den: BigInt::one(),
        }
    }

    /// Adds `num / den` with `den > 0`, not necessarily reduced.
    pub(crate) fn add_fraction(&mut self, num: BigInt, den: &BigInt) {
        if den == &self.den {
            self.num += num;
            return;
        }
        let (q, r) = self.den.div_rem(den);
        if r.is_zero() {
            self.num += num * q;
            return;
        }
        let g = self.den.gcd(den);
        let scale_self = den / &g;
        let scale_other = &self.den / &g;
        self.num = &self.num * &scale_self + num * scale_other;
        self.den *= scale_self;
    }

    pub(crate) fn add_product(&mut self, a: &BigRational, b: &BigRational) {
        self.add_fraction(a.numer() * b.numer(), &(a.denom() * b.denom()));
    }

    pub(crate) fn finish(self) -> BigRational {
        BigRational::new(self.num, self.den)
    }
}

/// Truncated Laurent series with exact rational coefficients, known modulo
/// `x^precision`. Only nonzero coefficients are stored.
///
/// The variable is `w = e^{pi i tau}` for modular objects; the same type also
/// carries plain power series in `t`.
#[derive(Clone, PartialEq, Eq)]
pub struct QSeries {
    coeffs: BTreeMap<i64, BigRational>,
    precision: i64,
}

impl fmt::Debug for QSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for QSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (e, c) in self.coeffs.iter().take(8) {
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            write!(f, "({c})*x^{e}")?;
        }
        if first {
            f.write_str("0")?;
        }
        write!(f, " + O(x^{})", self.precision)
    }
}

impl QSeries {
    pub fn zero(precision: i64) -> Self {
        Self {
            coeffs: BTreeMap::new(),
            precision,
        }
    }

    pub fn one(precision: i64) -> Self {
        Self::monomial(0, BigRational::one(), precision)
    }

    pub fn monomial(exponent: i64, coeff: BigRational, precision: i64) -> Self {
        Self::from_coeffs([(exponent, coeff)], precision)
    }

    /// Drops zero coefficients and anything at or past `precision`.
    pub fn from_coeffs(
        coeffs: impl IntoIterator<Item = (i64, BigRational)>,
        precision: i64,
    ) -> Self {
        let mut map: BTreeMap<i64, BigRational> = BTreeMap::new();
        for (e, c) in coeffs {
            if e < precision && !c.is_zero() {
                let slot = map.entry(e).or_insert_with(BigRational::zero);
                *slot += c;
                if slot.is_zero() {
                    map.remove(&e);
                }
            }
        }
        Self {
            coeffs: map,
            precision,
        }
    }

    /// `sum_k coeffs[k] x^(offset + k)`.
    pub fn from_dense(offset: i64, coeffs: Vec<BigRational>, precision: i64) -> Self {
        Self::from_coeffs(
            coeffs
                .into_iter()
                .enumerate()
                .map(|(k, c)| (offset + k as i64, c)),
            precision,
        )
    }

    pub fn from_integers(offset: i64, coeffs: &[BigInt], precision: i64) -> Self {
        Self::from_coeffs(
            coeffs
                .iter()
                .enumerate()
                .map(|(k, c)| (offset + k as i64, BigRational::from_integer(c.clone()))),
            precision,
        )
    }

    pub fn precision(&self) -> i64 {
        self.precision
    }

    pub fn coeff(&self, exponent: i64) -> BigRational {
        self.coeffs
            .get(&exponent)
            .cloned()
            .unwrap_or_else(BigRational::zero)
    }

    pub fn coeff_ref(&self, exponent: i64) -> Option<&BigRational> {
        self.coeffs.get(&exponent)
    }

    /// Nonzero coefficients in increasing exponent order.
    pub fn iter(&self) -> impl Iterator<Item = (i64, &BigRational)> {
        self.coeffs.iter().map(|(e, c)| (*e, c))
    }

    /// Lowest exponent with a nonzero coefficient.
    pub fn valuation(&self) -> Option<i64> {
        self.coeffs.keys().next().copied()
    }

    pub fn leading(&self) -> Option<(i64, &BigRational)> {
        self.coeffs.iter().next().map(|(e, c)| (*e, c))
    }

    /// True when every known coefficient vanishes.
    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    fn valuation_or_precision(&self) -> i64 {
        self.valuation().unwrap_or(self.precision)
    }

    /// Forgets everything at or beyond `precision`.
    pub fn truncate(&self, precision: i64) -> Self {
        let precision = precision.min(self.precision);
        Self {
            coeffs: self
                .coeffs
                .range(..precision)
                .map(|(e, c)| (*e, c.clone()))
                .collect(),
            precision,
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let precision = self.precision.min(other.precision);
        Self::from_coeffs(
            self.iter().chain(other.iter()).map(|(e, c)| (e, c.clone())),
            precision,
        )
    }

    pub fn neg(&self) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(|(e, c)| (*e, -c)).collect(),
            precision: self.precision,
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn scale(&self, factor: &BigRational) -> Self {
        if factor.is_zero() {
            return Self::zero(self.precision);
        }
        Self {
            coeffs: self.coeffs.iter().map(|(e, c)| (*e, c * factor)).collect(),
            precision: self.precision,
        }
    }

    /// Multiplication by `x^k`.
    pub fn shift(&self, k: i64) -> Self {
        Self {
            coeffs: self
                .coeffs
                .iter()
                .map(|(e, c)| (e + k, c.clone()))
                .collect(),
            precision: self.precision + k,
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let va = self.valuation_or_precision();
        let vb = other.valuation_or_precision();
        let precision = (self.precision + vb).min(other.precision + va);
        if self.is_zero() || other.is_zero() {
            return Self::zero(precision);
        }
        let base = va + vb;
        let len = (precision - base).max(0) as usize;
        let mut acc: Vec<Option<RatAccumulator>> = vec![None; len];
        let rhs: Vec<(i64, &BigRational)> = other.iter().collect();
        for (ea, ca) in self.iter() {
            for &(eb, cb) in &rhs {
                let e = ea + eb;
                if e >= precision {
                    break;
                }
                acc[(e - base) as usize]
                    .get_or_insert_with(RatAccumulator::new)
                    .add_product(ca, cb);
            }
        }
        Self::from_coeffs(
            acc.into_iter()
                .enumerate()
                .filter_map(|(k, a)| a.map(|a| (base + k as i64, a.finish()))),
            precision,
        )
    }

    /// Multiplicative inverse of a series whose leading coefficient is at
    /// exponent 0 and equal to 1 is the common case; any nonzero series works.
    pub fn inverse(&self) -> Result<Self> {
        let (v, lead) = self.leading().ok_or(Error::DivisionByZeroSeries)?;
        let lead_inv = lead.recip();
        // unit part u = x^{-v} self / lead, known mod x^{precision - v}
        let unit_prec = self.precision - v;
        let unit: Vec<(i64, BigRational)> =
            self.iter().map(|(e, c)| (e - v, c * &lead_inv)).collect();
        let n = unit_prec.max(0) as usize;
        let mut inv: Vec<BigRational> = Vec::with_capacity(n);
        for k in 0..n {
            if k == 0 {
                inv.push(BigRational::one());
                continue;
            }
            let mut acc = RatAccumulator::new();
            for (e, c) in &unit {
                let e = *e as usize;
                if e == 0 {
                    continue;
                }
                if e > k {
                    break;
                }
                if !inv[k - e].is_zero() {
                    acc.add_product(c, &inv[k - e]);
                }
            }
            inv.push(-acc.finish());
        }
        Ok(Self::from_dense(0, inv, unit_prec)
            .scale(&lead_inv)
            .shift(-v))
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        Ok(self.mul(&other.inverse()?))
    }

    /// Square root with positive leading coefficient.
    pub fn sqrt(&self) -> Result<Self> {
        let (v, lead) = self.leading().ok_or(Error::DivisionByZeroSeries)?;
        if v % 2 != 0 {
            return Err(Error::OddValuationSqrt(v));
        }
        let root_lead =
            rational_sqrt(lead).ok_or_else(|| Error::NonSquareLeading(lead.to_string()))?;
        let lead_inv = lead.recip();
        let unit_prec = (self.precision - v).max(0);
        let unit: Vec<(i64, BigRational)> =
            self.iter().map(|(e, c)| (e - v, c * &lead_inv)).collect();
        let n = unit_prec as usize;
        let mut dense_unit = vec![BigRational::zero(); n];
        for (e, c) in unit {
            dense_unit[e as usize] = c;
        }
        let half = BigRational::new(BigInt::one(), BigInt::from(2));
        let mut root: Vec<BigRational> = Vec::with_capacity(n);
        let mut support: Vec<usize> = Vec::new();
        #[allow(clippy::needless_range_loop)]
        for k in 0..n {
            if k == 0 {
                root.push(BigRational::one());
                continue;
            }
            // 2 r_k = u_k - sum_{0<i<k} r_i r_{k-i}
            let mut acc = RatAccumulator::new();
            for &i in &support {
                if i >= k {
                    break;
                }
                let j = k - i;
                if j < k && !root[j].is_zero() {
                    acc.add_product(&root[i], &root[j]);
                }
            }
            let rk = (&dense_unit[k] - acc.finish()) * &half;
            if !rk.is_zero() {
                support.push(k);
            }
            root.push(rk);
        }
        Ok(Self::from_dense(0, root, unit_prec)
            .scale(&root_lead)
            .shift(v / 2))
    }

    /// `x d/dx`.
    pub fn theta(&self) -> Self {
        Self::from_coeffs(
            self.iter()
                .map(|(e, c)| (e, c * BigRational::from_integer(e.into()))),
            self.precision,
        )
    }

    /// `d/dx`; loses one term of precision.
    pub fn derivative(&self) -> Self {
        Self::from_coeffs(
            self.iter()
                .map(|(e, c)| (e - 1, c * BigRational::from_integer(e.into()))),
            self.precision - 1,
        )
    }

    /// Substitutes `x -> x^2`, turning a series in `q` into one in `w`.
    pub fn compose_even(&self) -> Self {
        Self {
            coeffs: self
                .coeffs
                .iter()
                .map(|(e, c)| (2 * e, c.clone()))
                .collect(),
            precision: 2 * self.precision,
        }
    }

    /// `self^k` for `k >= 0`.
    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::one(i64::MAX / 4);
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul(&base);
            }
            k >>= 1;
            if k > 0 {
                base = base.mul(&base);
            }
        }
        if acc.precision == i64::MAX / 4 {
            acc.precision = self.precision.max(0);
        }
        acc
    }

    /// `sum_n coeffs[n] inner^n` for `inner` of positive valuation, by Horner.
    pub fn compose(coeffs: &[BigRational], inner: &Self, precision: i64) -> Result<Self> {
        match inner.valuation() {
            Some(v) if v <= 0 => {
                return Err(Error::Usage(format!(
                    "composition needs positive inner valuation, got {v}"
                )))
            }
            _ => {}
        }
        let precision = precision.min(inner.precision);
        let mut acc = Self::zero(precision);
        for c in coeffs.iter().rev() {
            acc = acc.mul(inner).truncate(precision);
            acc = acc.add(&Self::monomial(0, c.clone(), precision));
        }
        Ok(acc)
    }
}

/// Square root in Q when both numerator and denominator are perfect squares.
pub(crate) fn rational_sqrt(x: &BigRational) -> Option<BigRational> {
    if x.is_negative() {
        return None;
    }
    let n = x.numer().sqrt();
    let d = x.denom().sqrt();
    (&n * &n == *x.numer() && &d * &d == *x.denom()).then(|| BigRational::new(n, d))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;

    fn series(pairs: &[(i64, i64, i64)], prec: i64) -> QSeries {
        QSeries::from_coeffs(pairs.iter().map(|&(e, n, d)| (e, rat(n, d))), prec)
    }

    #[test]
    fn sqrt_binomial() {
        // sqrt(w^2 (1 + w^2)) = w + w^3/2 - w^5/8 + w^7/16 - ...
        let x = series(&[(2, 1, 1), (4, 1, 1)], 12);
        let r = x.sqrt().unwrap();
        assert_eq!(r.precision(), 11);
        assert_eq!(r.coeff(1), rat(1, 1));
        assert_eq!(r.coeff(3), rat(1, 2));
        assert_eq!(r.coeff(5), rat(-1, 8));
        assert_eq!(r.coeff(7), rat(1, 16));
        assert_eq!(r.coeff(9), rat(-5, 128));
        assert_eq!(r.mul(&r), x.truncate(r.mul(&r).precision()));
    }

    #[test]
    fn sqrt_errors() {
        assert!(matches!(
            series(&[(1, 1, 1)], 5).sqrt(),
            Err(Error::OddValuationSqrt(1))
        ));
        assert!(matches!(
            series(&[(0, 2, 1)], 5).sqrt(),
            Err(Error::NonSquareLeading(_))
        ));
        assert!(matches!(
            QSeries::zero(5).sqrt(),
            Err(Error::DivisionByZeroSeries)
        ));
        assert!(QSeries::zero(5).inverse().is_err());
        assert_eq!(series(&[(0, 9, 4)], 5).sqrt().unwrap().coeff(0), rat(3, 2));
    }

    #[test]
    fn theta_of_monomial() {
        for k in -3..10 {
            let m = QSeries::monomial(k, rat(1, 1), 20);
            assert_eq!(m.theta(), QSeries::monomial(k, rat(k, 1), 20));
        }
    }

    #[test]
    fn division_tracks_valuation() {
        let a = series(&[(3, 1, 1), (4, 2, 1)], 10);
        let b = series(&[(1, 2, 1), (2, 1, 1)], 10);
        let q = a.div(&b).unwrap();
        assert_eq!(q.valuation(), Some(2));
        // b known mod x^10 with valuation 1: unit part mod x^9; quotient exact to x^{min(10, 9+3)-1}
        assert_eq!(q.precision(), 9);
        let back = q.mul(&b);
        assert_eq!(back, a.truncate(back.precision()));
    }

    #[test]
    fn laurent_inverse() {
        let x = series(&[(2, 1, 1), (3, -24, 1)], 20);
        let inv = x.inverse().unwrap();
        assert_eq!(inv.valuation(), Some(-2));
        assert_eq!(inv.coeff(-1), rat(24, 1));
        let one = inv.mul(&x);
        assert_eq!(one, QSeries::one(one.precision()));
    }

    #[test]
    fn compose_and_pow() {
        // 1/(1 - x) composed with x + x^2
        let inner = series(&[(1, 1, 1), (2, 1, 1)], 8);
        let geo: Vec<BigRational> = (0..8).map(|_| rat(1, 1)).collect();
        let c = QSeries::compose(&geo, &inner, 8).unwrap();
        let expect = QSeries::one(8).sub(&inner).inverse().unwrap();
        assert_eq!(c, expect.truncate(8));
        let sq = inner.pow(2);
        assert_eq!(sq, inner.mul(&inner));
    }

    #[test]
    fn accumulator_mixed_denominators() {
        let mut acc = RatAccumulator::new();
        acc.add_product(&rat(1, 3), &rat(1, 2));
        acc.add_product(&rat(1, 4), &rat(1, 1));
        acc.add_product(&rat(-5, 12), &rat(1, 1));
        assert_eq!(acc.finish(), rat(0, 1));
    }
}
