use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::Zero;

use super::series::QSeries;
use crate::error::{Error, Result};

/// `prod eta(m tau)^e` as a list of `(m, e)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EtaProduct {
    pub factors: Vec<(u64, i64)>,
}

impl EtaProduct {
    pub fn new(factors: impl IntoIterator<Item = (u64, i64)>) -> Self {
        Self {
            factors: factors.into_iter().collect(),
        }
    }

    /// `t = eta(2 tau) eta(6 tau)^5 / (eta(tau)^5 eta(3 tau))`.
    pub fn hauptmodul_t() -> Self {
        Self::new([(2, 1), (6, 5), (1, -5), (3, -1)])
    }

    /// `Delta = eta(tau)^24`.
    pub fn delta() -> Self {
        Self::new([(1, 24)])
    }

    /// Leading exponent in `w`: `sum m e / 12`.
    pub fn leading_w_exponent(&self) -> Result<i64> {
        let total: i64 = self.factors.iter().map(|&(m, e)| m as i64 * e).sum();
        if total % 12 != 0 {
            return Err(Error::FractionalEtaExponent(total));
        }
        Ok(total / 12)
    }

    /// Product of two quotients, merging equal multipliers.
    pub fn mul(&self, other: &Self) -> Self {
        let mut merged: BTreeMap<u64, i64> = BTreeMap::new();
        for &(m, e) in self.factors.iter().chain(&other.factors) {
            *merged.entry(m).or_default() += e;
        }
        Self::new(merged.into_iter().filter(|&(_, e)| e != 0))
    }
}

impl fmt::Display for EtaProduct {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .factors
            .iter()
            .map(|(m, e)| format!("eta({m}t)^{e}"))
            .collect();
        f.write_str(&parts.join(" "))
    }
}

/// Coefficients of `prod_(m, e) prod_{n >= 1} (1 - q^{mn})^e` modulo `q^len`.
pub fn euler_product(factors: &[(u64, i64)], len: usize) -> Vec<BigInt> {
    let mut c = vec![BigInt::zero(); len];
    if len == 0 {
        return c;
    }
    c[0] = BigInt::from(1);
    for &(m, e) in factors {
        let m = m as usize;
        let mut step = m;
        while step < len {
            if e > 0 {
                for _ in 0..e {
                    // multiply by (1 - q^step)
                    for k in (step..len).rev() {
                        let (lo, hi) = c.split_at_mut(k);
                        hi[0] -= &lo[k - step];
                    }
                }
            } else {
                for _ in 0..(-e) {
                    // divide by (1 - q^step)
                    for k in step..len {
                        let (lo, hi) = c.split_at_mut(k);
                        hi[0] += &lo[k - step];
                    }
                }
            }
            step += m;
        }
    }
    c
}

/// The eta quotient as a series in `w = e^{pi i tau}`, known mod `w^precision`.
pub fn eta_quotient(product: &EtaProduct, precision: i64) -> Result<QSeries> {
    let lead = product.leading_w_exponent()?;
    // q-terms needed: lead + 2k < precision
    let len = ((precision - lead + 1) / 2).max(0) as usize;
    let body = euler_product(&product.factors, len);
    Ok(QSeries::from_integers(0, &body, len as i64)
        .compose_even()
        .shift(lead)
        .truncate(precision))
}

/// Integer q-expansion of an eta quotient with `sum m e = 24 * lead`, as
/// `(lead_q_exponent, coefficients)` with `len` coefficients.
pub fn eta_quotient_q(product: &EtaProduct, len: usize) -> Result<(i64, Vec<BigInt>)> {
    let total: i64 = product.factors.iter().map(|&(m, e)| m as i64 * e).sum();
    if total % 24 != 0 {
        return Err(Error::FractionalEtaExponent(total));
    }
    Ok((total / 24, euler_product(&product.factors, len)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;
    use num_rational::BigRational;

    #[test]
    fn leading_terms() {
        let t = eta_quotient(&EtaProduct::hauptmodul_t(), 12).unwrap();
        assert_eq!(t.leading(), Some((2, &rat(1, 1))));
        // Delta = q prod (1 - q^n)^24 = w^2 - 24 w^4 + 252 w^6 - ...
        let d = eta_quotient(&EtaProduct::delta(), 12).unwrap();
        assert_eq!(d.leading(), Some((2, &rat(1, 1))));
        assert_eq!(d.coeff(4), rat(-24, 1));
        assert_eq!(d.coeff(6), rat(252, 1));
        assert_eq!(d.coeff(8), rat(-1472, 1));
        assert!(matches!(
            EtaProduct::new([(1, 1)]).leading_w_exponent(),
            Err(Error::FractionalEtaExponent(1))
        ));
    }

    #[test]
    fn t_first_coefficients() {
        // t = q + 5q^2 + 19q^3 + ... from the product directly
        let t = eta_quotient(&EtaProduct::hauptmodul_t(), 10).unwrap();
        let got: Vec<BigRational> = (0..10).map(|e| t.coeff(e)).collect();
        assert_eq!(got[2], rat(1, 1));
        assert_eq!(got[4], rat(5, 1));
        assert_eq!(got[6], rat(19, 1));
        assert!((1..10).step_by(2).all(|e| t.coeff(e) == rat(0, 1)));
    }

    #[test]
    fn products_multiply() {
        let a = EtaProduct::new([(1, 2), (2, -1)]);
        let b = EtaProduct::new([(2, 1), (3, 4)]);
        assert_eq!(a.mul(&b), EtaProduct::new([(1, 2), (3, 4)]));
    }
}
