use std::fmt;

use crate::error::{usage, Result};

/// Jacobi symbol `(a / n)` for odd positive `n`; the Legendre symbol when `n`
/// is prime.
pub fn kronecker_symbol(a: i64, n: i64) -> Result<i8> {
    if n <= 0 || n % 2 == 0 {
        return Err(usage(format!(
            "symbol ({a}/{n}) needs an odd positive modulus"
        )));
    }
    let mut a = a.rem_euclid(n);
    let mut n = n;
    let mut sign = 1i8;
    while a != 0 {
        while a % 2 == 0 {
            a /= 2;
            if matches!(n % 8, 3 | 5) {
                sign = -sign;
            }
        }
        std::mem::swap(&mut a, &mut n);
        if a % 4 == 3 && n % 4 == 3 {
            sign = -sign;
        }
        a %= n;
    }
    Ok(if n == 1 { sign } else { 0 })
}

/// A quadratic character unramified outside {2, 3}, written as exponents over
/// the basis `((-1/.), (2/.), (3/.))`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct QuadraticCharacter {
    pub exponents: [u8; 3],
}

impl QuadraticCharacter {
    pub const BASIS: [i64; 3] = [-1, 2, 3];

    pub fn new(e1: u8, e2: u8, e3: u8) -> Self {
        Self {
            exponents: [e1 & 1, e2 & 1, e3 & 1],
        }
    }

    pub fn trivial() -> Self {
        Self::new(0, 0, 0)
    }

    /// All eight characters, trivial first, in lexicographic exponent order.
    pub fn all() -> Vec<Self> {
        (0..8u8)
            .map(|bits| Self::new(bits >> 2, bits >> 1, bits))
            .collect()
    }

    pub fn is_trivial(&self) -> bool {
        self.exponents == [0, 0, 0]
    }

    /// Group law: componentwise addition mod 2.
    pub fn compose(&self, other: &Self) -> Self {
        Self::new(
            self.exponents[0] ^ other.exponents[0],
            self.exponents[1] ^ other.exponents[1],
            self.exponents[2] ^ other.exponents[2],
        )
    }

    /// The integer `d` with `chi = (d / .)` on primes > 3.
    pub fn discriminant_like(&self) -> i64 {
        self.exponents
            .iter()
            .zip(Self::BASIS)
            .filter(|(e, _)| **e == 1)
            .map(|(_, b)| b)
            .product()
    }
}

impl fmt::Display for QuadraticCharacter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c] = self.exponents;
        write!(f, "({a},{b},{c})")
    }
}

/// `chi(p)` for a prime `p > 3`.
pub fn char_value(chi: &QuadraticCharacter, p: u64) -> Result<i8> {
    if p.is_multiple_of(2) || p.is_multiple_of(3) {
        return Err(usage(format!("character value at {p}: need gcd(p, 6) = 1")));
    }
    let mut value = 1i8;
    for (e, b) in chi.exponents.iter().zip(QuadraticCharacter::BASIS) {
        if *e == 1 {
            value *= kronecker_symbol(b, p as i64)?;
        }
    }
    Ok(value)
}
