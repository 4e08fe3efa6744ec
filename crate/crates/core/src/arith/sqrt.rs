use super::field::{FiniteField, PrimeField};

/// Square root in any finite field of odd order by Tonelli-Shanks, using the
/// field's smallest-index nonresidue. `None` when `x` is not a square.
pub fn sqrt_in_field<F: FiniteField>(field: &F, x: F::Elem) -> Option<F::Elem> {
    if field.is_zero(x) {
        return Some(x);
    }
    if !field.is_square(x) {
        return None;
    }
    let one = field.one();
    let mut odd = field.order() - 1;
    let mut two_adic = 0u32;
    while odd.is_multiple_of(2) {
        odd /= 2;
        two_adic += 1;
    }

    let mut c = field.pow(field.smallest_nonresidue(), odd);
    let mut root = field.pow(x, odd.div_ceil(2));
    let mut t = field.pow(x, odd);
    let mut m = two_adic;
    while t != one {
        // least i with t^(2^i) = 1; i < m because x is a square
        let mut i = 0;
        let mut probe = t;
        while probe != one {
            probe = field.mul(probe, probe);
            i += 1;
        }
        let mut b = c;
        for _ in 0..(m - i - 1) {
            b = field.mul(b, b);
        }
        root = field.mul(root, b);
        c = field.mul(b, b);
        t = field.mul(t, c);
        m = i;
    }
    Some(root)
}

/// Square root of `a` modulo an odd prime `p`, as the smaller of the two roots.
pub fn sqrt_mod_prime(a: i64, p: u64) -> Option<u64> {
    let field = PrimeField::new(p).ok()?;
    let r = sqrt_in_field(&field, field.elem(a))?.residue();
    Some(r.min((p - r) % p))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{primes_in, QuadExtField};
    use std::collections::BTreeSet;

    #[test]
    fn examples_in_f7() {
        let f = PrimeField::new(7).unwrap();
        let r = sqrt_in_field(&f, f.elem(4)).unwrap().residue();
        assert!(r == 2 || r == 5);
        assert_eq!(sqrt_in_field(&f, f.elem(3)), None);
        assert_eq!(sqrt_mod_prime(4, 7), Some(2));
    }

    #[test]
    fn generator_of_f25_with_d3() {
        let f = QuadExtField::with_nonresidue(5, 3).unwrap();
        let w = f.gen();
        let exhaustive = f.elements().any(|y| f.mul(y, y) == w);
        let root = sqrt_in_field(&f, w);
        assert_eq!(root.is_some(), exhaustive);
        if let Some(y) = root {
            assert_eq!(f.mul(y, y), w);
        }
    }

    fn check_field<F: FiniteField>(f: &F) {
        let squares: BTreeSet<F::Elem> = f.elements().map(|y| f.mul(y, y)).collect();
        for x in f.elements() {
            match sqrt_in_field(f, x) {
                Some(y) => {
                    assert_eq!(f.mul(y, y), x);
                    assert!(squares.contains(&x));
                }
                None => assert!(!squares.contains(&x)),
            }
        }
    }

    #[test]
    fn exhaustive_prime_fields() {
        for p in primes_in(3, 400) {
            check_field(&PrimeField::new(p).unwrap());
        }
        // a few with large two-adic part of p - 1
        for p in [257u64, 3329, 7681, 9473] {
            check_field(&PrimeField::new(p).unwrap());
        }
    }

    #[test]
    fn exhaustive_quadratic_extensions() {
        for p in primes_in(3, 97) {
            check_field(&QuadExtField::new(p).unwrap());
        }
    }
}
