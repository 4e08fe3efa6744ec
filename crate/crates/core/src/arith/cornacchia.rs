use std::fmt;

use num_integer::Roots;

use super::field::is_prime;
use super::sqrt::sqrt_mod_prime;
use super::symbols::kronecker_symbol;
use crate::error::{usage, Result};

/// `p = a^2 + d * b^2` with `a, b >= 0`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct QuadFormRepresentation {
    pub a: u64,
    pub b: u64,
    pub d: u64,
    pub p: u64,
}

impl fmt::Display for QuadFormRepresentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} = {}^2 + {}*{}^2", self.p, self.a, self.d, self.b)
    }
}

/// Cornacchia's algorithm for `p = a^2 + d b^2`, `p` an odd prime not
/// dividing `d`. Returns `Ok(None)` when no representation exists.
///
/// For `d = 1` the result is normalized so that `a` is odd.
pub fn cornacchia(p: u64, d: u64) -> Result<Option<QuadFormRepresentation>> {
    if p == 2 || !is_prime(p) {
        return Err(usage(format!("cornacchia: {p} is not an odd prime")));
    }
    if d == 0 || d.is_multiple_of(p) {
        return Err(usage(format!(
            "cornacchia: need p = {p} not dividing d = {d}"
        )));
    }
    let minus_d = -((d % p) as i64);
    if kronecker_symbol(minus_d, p as i64)? != 1 {
        return Ok(None);
    }
    let mut r0 = sqrt_mod_prime(minus_d, p).expect("residue has a root");
    if 2 * r0 < p {
        r0 = p - r0;
    }
    let (mut a, mut b) = (p, r0);
    let bound = p.sqrt();
    while b > bound {
        (a, b) = (b, a % b);
    }
    let rest = p - b * b;
    if !rest.is_multiple_of(d) {
        return Ok(None);
    }
    let c = rest / d;
    let s = c.sqrt();
    if s * s != c {
        return Ok(None);
    }
    let (mut x, mut y) = (b, s);
    if d == 1 && x % 2 == 0 {
        std::mem::swap(&mut x, &mut y);
    }
    Ok(Some(QuadFormRepresentation { a: x, b: y, d, p }))
}

/// `p = a^2 + d b^2` by trying every `a, b <= sqrt(p)`; the pair with the
/// smallest `b`. For `d = 1` the odd square comes first.
pub fn cornacchia_exhaustive(p: u64, d: u64) -> Option<(u64, u64)> {
    for b in 0..=p.sqrt() {
        for a in 0..=p.sqrt() {
            if a * a + d * b * b == p {
                return Some(if d == 1 && a % 2 == 0 { (b, a) } else { (a, b) });
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::primes_in;

    #[test]
    fn examples() {
        let r = cornacchia(7, 6).unwrap().unwrap();
        assert_eq!((r.a, r.b), (1, 1));
        assert_eq!(cornacchia(5, 6).unwrap(), None);
        let r = cornacchia(5, 1).unwrap().unwrap();
        assert_eq!((r.a, r.b), (1, 2));
        let r = cornacchia(31, 6).unwrap().unwrap();
        assert_eq!((r.a, r.b), (5, 1));
        assert!(cornacchia(3, 6).is_err());
        assert!(cornacchia(9, 1).is_err());
    }

    #[test]
    fn matches_double_loop_below_2000() {
        for p in primes_in(3, 2000) {
            for d in [1u64, 2, 3, 5, 6, 7] {
                if d % p == 0 {
                    continue;
                }
                let fast = cornacchia(p, d).unwrap();
                let slow = cornacchia_exhaustive(p, d);
                assert_eq!(fast.is_some(), slow.is_some(), "p={p} d={d}");
                if let Some(r) = fast {
                    assert_eq!(r.a * r.a + d * r.b * r.b, p);
                }
            }
        }
    }

    #[test]
    fn sum_of_two_squares_has_odd_a() {
        for p in primes_in(3, 3000).into_iter().filter(|p| p % 4 == 1) {
            let r = cornacchia(p, 1).unwrap().unwrap();
            assert_eq!(r.a % 2, 1);
            assert_eq!(r.a * r.a + r.b * r.b, p);
        }
    }
}
