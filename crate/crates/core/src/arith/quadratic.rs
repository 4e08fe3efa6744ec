use super::field::FiniteField;

/// Number of distinct roots of `a x^2 + b x + c` in the field.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum QuadraticRoots {
    Count(u8),
    /// The polynomial vanishes identically; every one of the `q` elements is a root.
    AllElements(u64),
}

impl QuadraticRoots {
    /// Number of solutions, counting the degenerate case as the field size.
    pub fn solutions(self) -> u64 {
        match self {
            QuadraticRoots::Count(n) => n as u64,
            QuadraticRoots::AllElements(q) => q,
        }
    }
}

pub fn count_quadratic_roots<F: FiniteField>(
    field: &F,
    a: F::Elem,
    b: F::Elem,
    c: F::Elem,
) -> QuadraticRoots {
    if field.is_zero(a) {
        return if !field.is_zero(b) {
            QuadraticRoots::Count(1)
        } else if !field.is_zero(c) {
            QuadraticRoots::Count(0)
        } else {
            QuadraticRoots::AllElements(field.order())
        };
    }
    let four = field.from_i64(4);
    let disc = field.sub(field.mul(b, b), field.mul(four, field.mul(a, c)));
    if field.is_zero(disc) {
        QuadraticRoots::Count(1)
    } else if field.is_square(disc) {
        QuadraticRoots::Count(2)
    } else {
        QuadraticRoots::Count(0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{PrimeField, QuadExtField};

    fn exhaustive<F: FiniteField>(f: &F, a: F::Elem, b: F::Elem, c: F::Elem) -> u64 {
        f.elements()
            .filter(|&x| {
                let v = f.add(f.mul(f.add(f.mul(a, x), b), x), c);
                f.is_zero(v)
            })
            .count() as u64
    }

    #[test]
    fn examples() {
        let f = PrimeField::new(7).unwrap();
        let e = |v| f.elem(v);
        assert_eq!(
            count_quadratic_roots(&f, e(1), e(0), e(-4)),
            QuadraticRoots::Count(2)
        );
        // x^2 = -3 = 4 mod 7 has the roots 2 and 5
        assert_eq!(
            count_quadratic_roots(&f, e(1), e(0), e(3)),
            QuadraticRoots::Count(2)
        );
        assert_eq!(exhaustive(&f, e(1), e(0), e(3)), 2);
        let f5 = PrimeField::new(5).unwrap();
        assert_eq!(
            count_quadratic_roots(&f5, f5.elem(0), f5.elem(0), f5.elem(0)),
            QuadraticRoots::AllElements(5)
        );
    }

    #[test]
    fn all_triples_small_primes() {
        for p in [3u64, 5, 7, 11, 13] {
            let f = PrimeField::new(p).unwrap();
            for a in f.elements() {
                for b in f.elements() {
                    for c in f.elements() {
                        let fast = count_quadratic_roots(&f, a, b, c).solutions();
                        assert_eq!(fast, exhaustive(&f, a, b, c), "p={p} ({a},{b},{c})");
                    }
                }
            }
        }
    }

    #[test]
    fn sampled_triples_over_f9() {
        let f = QuadExtField::new(3).unwrap();
        for a in f.elements() {
            for b in f.elements() {
                for c in f.elements() {
                    assert_eq!(
                        count_quadratic_roots(&f, a, b, c).solutions(),
                        exhaustive(&f, a, b, c)
                    );
                }
            }
        }
    }
}
