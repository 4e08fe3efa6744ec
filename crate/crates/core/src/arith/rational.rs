use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Arbitrary precision rational, always kept in lowest terms with a positive
/// denominator (`num_rational` normalizes on every operation).
pub type ExactRational = BigRational;

/// Shorthand for a small rational constant.
pub fn rat(num: i64, den: i64) -> ExactRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

/// A p-adic valuation, where zero has valuation `Infinite`.
///
/// Ordered so that every finite value is below `Infinite`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Valuation {
    Finite(i64),
    Infinite,
}

impl Valuation {
    pub fn is_infinite(self) -> bool {
        matches!(self, Valuation::Infinite)
    }

    pub fn finite(self) -> Option<i64> {
        match self {
            Valuation::Finite(v) => Some(v),
            Valuation::Infinite => None,
        }
    }
}

impl PartialOrd for Valuation {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Valuation {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Valuation::Finite(a), Valuation::Finite(b)) => a.cmp(b),
            (Valuation::Finite(_), Valuation::Infinite) => Ordering::Less,
            (Valuation::Infinite, Valuation::Finite(_)) => Ordering::Greater,
            (Valuation::Infinite, Valuation::Infinite) => Ordering::Equal,
        }
    }
}

impl fmt::Display for Valuation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Valuation::Finite(v) => write!(f, "{v}"),
            Valuation::Infinite => f.write_str("inf"),
        }
    }
}

/// Exponent of `p` in a nonzero integer; `None` for zero.
pub fn int_valuation(n: &BigInt, p: u64) -> Option<u64> {
    if n.is_zero() {
        return None;
    }
    let p = BigInt::from(p);
    let mut n = n.abs();
    let mut v = 0;
    loop {
        let (q, r) = n.div_rem(&p);
        if !r.is_zero() {
            return Some(v);
        }
        n = q;
        v += 1;
    }
}

/// `v_p(x) = v_p(numerator) - v_p(denominator)`, `Infinite` at zero.
pub fn padic_valuation(x: &ExactRational, p: u64) -> Valuation {
    match int_valuation(x.numer(), p) {
        None => Valuation::Infinite,
        Some(vn) => {
            let vd = int_valuation(x.denom(), p).unwrap_or(0);
            Valuation::Finite(vn as i64 - vd as i64)
        }
    }
}

/// Image of `x` in `Z / modulus`, in `[0, modulus)`. `None` when the
/// denominator is not invertible modulo `modulus`.
pub fn rational_mod(x: &ExactRational, modulus: &BigInt) -> Option<BigInt> {
    let den = x.denom().mod_floor(modulus);
    let ext = den.extended_gcd(modulus);
    if !ext.gcd.is_one() {
        return None;
    }
    let inv = ext.x.mod_floor(modulus);
    Some((x.numer() * inv).mod_floor(modulus))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn valuation_examples() {
        assert_eq!(padic_valuation(&rat(-9, 8), 5), Valuation::Finite(0));
        assert_eq!(padic_valuation(&rat(50, 3), 5), Valuation::Finite(2));
        assert_eq!(padic_valuation(&rat(0, 1), 7), Valuation::Infinite);
        assert_eq!(padic_valuation(&rat(3, 50), 5), Valuation::Finite(-2));
        assert_eq!(padic_valuation(&rat(-25, 8), 5), Valuation::Finite(2));
    }

    #[test]
    fn valuation_order() {
        assert!(Valuation::Finite(1_000_000) < Valuation::Infinite);
        assert!(Valuation::Finite(-3) < Valuation::Finite(2));
        assert!(Valuation::Infinite >= Valuation::Infinite);
    }

    #[test]
    fn reduction_mod_prime_power() {
        // 8^{-1} = 22 mod 25, so -9/8 = -198 = 2 mod 25
        assert_eq!(
            rational_mod(&rat(-9, 8), &BigInt::from(25)),
            Some(BigInt::from(2))
        );
        // 16^{-1} = 46 mod 49, -85/16 = 10 mod 49
        assert_eq!(
            rational_mod(&rat(-85, 16), &BigInt::from(49)),
            Some(BigInt::from(10))
        );
        assert_eq!(rational_mod(&rat(1, 5), &BigInt::from(25)), None);
    }
}
