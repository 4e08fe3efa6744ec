//! Apery-like sequences: the closed-form sporadic sequence `F(n)` for the
//! triple (17, 6, 72), Apery's `a_n` and `b_n`, Franel numbers, and the
//! three-term recurrence family
//!
//! ```text
//! (n+1)^2 u_{n+1} = (A n^2 + A n + B) u_n - C n^2 u_{n-1},   u_{-1} = 0, u_0 = 1
//! ```
//!
//! together with a bounded search for triples with integral solutions.

use std::fmt;
use std::ops::RangeInclusive;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rayon::prelude::*;

/// Coefficients `(A, B, C)` of one member of the recurrence family.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RecurrenceTriple {
    pub a: i64,
    pub b: i64,
    pub c: i64,
}

impl RecurrenceTriple {
    pub const fn new(a: i64, b: i64, c: i64) -> Self {
        Self { a, b, c }
    }

    /// The six sporadic triples.
    pub const SPORADIC: [RecurrenceTriple; 6] = [
        RecurrenceTriple::new(0, 0, -16),
        RecurrenceTriple::new(7, 2, -8),
        RecurrenceTriple::new(9, 3, 27),
        RecurrenceTriple::new(10, 3, 9),
        RecurrenceTriple::new(12, 4, 32),
        RecurrenceTriple::new(17, 6, 72),
    ];

    /// Apery's `b_n`.
    pub const APERY_B: RecurrenceTriple = RecurrenceTriple::new(11, 3, -1);

    /// The triple whose solution is `F(n)`.
    pub const F: RecurrenceTriple = RecurrenceTriple::new(17, 6, 72);

    /// `C (A^2 - 4C) != 0`.
    pub fn is_nondegenerate(&self) -> bool {
        self.c != 0 && self.a * self.a - 4 * self.c != 0
    }

    fn step_coeffs(&self, n: i64) -> (BigInt, BigInt, BigInt) {
        let lead = BigInt::from((n + 1) * (n + 1));
        let mid = BigInt::from(self.a * n * n + self.a * n + self.b);
        let back = BigInt::from(self.c * n * n);
        (lead, mid, back)
    }
}

impl fmt::Display for RecurrenceTriple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{})", self.a, self.b, self.c)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SequenceSource {
    Recurrence(RecurrenceTriple),
    ClosedForm(&'static str),
}

/// `u_0 .. u_N` of a sequence, exact.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SequencePrefix {
    pub values: Vec<BigRational>,
    pub integral: bool,
    pub source: SequenceSource,
}

impl SequencePrefix {
    fn from_values(values: Vec<BigRational>, source: SequenceSource) -> Self {
        let integral = values.iter().all(|v| v.is_integer());
        Self {
            values,
            integral,
            source,
        }
    }

    /// The values as integers, if the prefix is integral.
    pub fn integers(&self) -> Option<Vec<BigInt>> {
        self.integral
            .then(|| self.values.iter().map(|v| v.to_integer()).collect())
    }
}

/// `C(n, 0), C(n, 1), ..., C(n, n)`.
pub fn binomial_row(n: u64) -> Vec<BigInt> {
    let mut row = Vec::with_capacity(n as usize + 1);
    let mut c = BigInt::one();
    row.push(c.clone());
    for k in 0..n {
        c = c * BigInt::from(n - k) / BigInt::from(k + 1);
        row.push(c.clone());
    }
    row
}

pub fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut c = BigInt::one();
    for i in 0..k {
        c = c * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    c
}

/// Franel number `f_k = sum_j C(k, j)^3`.
pub fn franel(k: u64) -> BigInt {
    binomial_row(k).iter().map(|c| c * c * c).sum()
}

/// `F(n) = sum_k (-1)^k 8^(n-k) C(n, k) f_k`, summed directly.
pub fn f_closed(n: u64) -> BigInt {
    let row = binomial_row(n);
    let mut total = BigInt::zero();
    let mut eight_pow = BigInt::one();
    // iterate k from n down so the power of 8 grows
    for k in (0..=n).rev() {
        let term = &eight_pow * &row[k as usize] * franel(k);
        if k % 2 == 0 {
            total += term;
        } else {
            total -= term;
        }
        eight_pow *= 8;
    }
    total
}

/// `b_n = sum_k C(n,k)^2 C(n+k,k)`.
pub fn apery_b(n: u64) -> BigInt {
    let row = binomial_row(n);
    (0..=n)
        .map(|k| &row[k as usize] * &row[k as usize] * binomial(n + k, k))
        .sum()
}

/// `a_n = sum_k C(n,k)^2 C(n+k,k)^2`.
pub fn apery_a(n: u64) -> BigInt {
    let row = binomial_row(n);
    (0..=n)
        .map(|k| {
            let c = &row[k as usize] * binomial(n + k, k);
            &c * &c
        })
        .sum()
}

/// `u_0 ..= u_N` of the recurrence, in exact rationals.
pub fn zagier_u(triple: RecurrenceTriple, depth: usize) -> SequencePrefix {
    let mut values: Vec<BigRational> = Vec::with_capacity(depth + 1);
    values.push(BigRational::one());
    let mut prev = BigRational::zero();
    for n in 0..depth {
        let (lead, mid, back) = triple.step_coeffs(n as i64);
        let cur = values[n].clone();
        let next = (BigRational::from_integer(mid) * &cur
            - BigRational::from_integer(back) * &prev)
            / BigRational::from_integer(lead);
        prev = cur;
        values.push(next);
    }
    SequencePrefix::from_values(values, SequenceSource::Recurrence(triple))
}

/// `u_0 ..= u_N` in integers, or `None` at the first non-integral term.
pub fn integral_prefix(triple: RecurrenceTriple, depth: usize) -> Option<Vec<BigInt>> {
    let mut values = Vec::with_capacity(depth + 1);
    values.push(BigInt::one());
    let mut prev = BigInt::zero();
    for n in 0..depth {
        let (lead, mid, back) = triple.step_coeffs(n as i64);
        let num = mid * &values[n] - back * &prev;
        let (q, r) = num.div_rem(&lead);
        if !r.is_zero() {
            return None;
        }
        prev = values[n].clone();
        values.push(q);
    }
    Some(values)
}

/// `F(0) ..= F(n_max)` via the (17, 6, 72) recurrence.
pub fn f_values(n_max: usize) -> Vec<BigInt> {
    integral_prefix(RecurrenceTriple::F, n_max).expect("F(n) is integral")
}

/// One triple with an integral prefix.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct SearchHit {
    pub triple: RecurrenceTriple,
    pub nondegenerate: bool,
    pub depth: usize,
}

/// All triples in the box whose `u_0 ..= u_depth` are integers, in
/// lexicographic `(A, B, C)` order.
pub fn search_integral(
    a_range: RangeInclusive<i64>,
    b_range: RangeInclusive<i64>,
    c_range: RangeInclusive<i64>,
    depth: usize,
) -> Vec<SearchHit> {
    let a_values: Vec<i64> = a_range.collect();
    let mut hits: Vec<SearchHit> = a_values
        .par_iter()
        .flat_map_iter(|&a| {
            let c_range = c_range.clone();
            b_range.clone().flat_map(move |b| {
                c_range.clone().filter_map(move |c| {
                    let triple = RecurrenceTriple::new(a, b, c);
                    integral_prefix(triple, depth).map(|_| SearchHit {
                        triple,
                        nondegenerate: triple.is_nondegenerate(),
                        depth,
                    })
                })
            })
        })
        .collect();
    hits.sort();
    hits
}

/// Rows `A,B,C,nondegenerate,depth` with a header line.
pub fn search_hits_csv(hits: &[SearchHit]) -> String {
    let mut out = String::from("A,B,C,nondegenerate,depth\n");
    for h in hits {
        out.push_str(&format!(
            "{},{},{},{},{}\n",
            h.triple.a, h.triple.b, h.triple.c, h.nondegenerate, h.depth
        ));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn closed_form_examples() {
        assert_eq!(f_closed(0), BigInt::from(1));
        assert_eq!(f_closed(2), BigInt::from(42));
        assert_eq!(f_closed(3), BigInt::from(312));
        assert_eq!(apery_b(2), BigInt::from(19));
        assert_eq!(apery_b(3), BigInt::from(147));
        assert_eq!(franel(3), BigInt::from(56));
        assert_eq!(apery_a(0), BigInt::from(1));
        assert_eq!(apery_a(1), BigInt::from(5));
        assert_eq!(apery_a(2), BigInt::from(73));
    }

    #[test]
    fn recurrence_examples() {
        let f = zagier_u(RecurrenceTriple::F, 4);
        assert_eq!(f.integers().unwrap(), ints(&[1, 6, 42, 312, 2394]));
        let b = zagier_u(RecurrenceTriple::APERY_B, 2);
        assert_eq!(b.integers().unwrap(), ints(&[1, 3, 19]));
        let c = zagier_u(RecurrenceTriple::new(0, 0, -16), 6);
        assert_eq!(c.integers().unwrap(), ints(&[1, 0, 4, 0, 36, 0, 400]));
        // squared central binomials interleaved with zeros
        for (n, v) in zagier_u(RecurrenceTriple::new(0, 0, -16), 40)
            .values
            .iter()
            .enumerate()
        {
            let expect = if n % 2 == 1 {
                BigInt::zero()
            } else {
                let c = binomial(n as u64, n as u64 / 2);
                &c * &c
            };
            assert_eq!(v.to_integer(), expect);
        }
    }

    #[test]
    fn apery_b_recurrence_matches_sum() {
        let pre = zagier_u(RecurrenceTriple::APERY_B, 60).integers().unwrap();
        for (n, v) in pre.iter().enumerate() {
            assert_eq!(*v, apery_b(n as u64));
        }
    }

    #[test]
    fn triple_one_one_one() {
        // u_1 = 1, u_2 = (3*1 - 1*1)/4 = 1/2
        let pre = zagier_u(RecurrenceTriple::new(1, 1, 1), 5);
        assert!(!pre.integral);
        assert_eq!(pre.values[2], BigRational::new(1.into(), 2.into()));
        let hits = search_integral(1..=1, 1..=1, 1..=1, 5);
        assert_eq!(hits.is_empty(), !pre.integral);
    }

    #[test]
    fn nondegeneracy() {
        assert!(RecurrenceTriple::F.is_nondegenerate());
        assert!(!RecurrenceTriple::new(4, 1, 4).is_nondegenerate());
        assert!(!RecurrenceTriple::new(3, 1, 0).is_nondegenerate());
    }

    #[test]
    fn empty_box() {
        #[allow(clippy::reversed_empty_ranges)]
        let hits = search_integral(3..=2, 0..=1, 0..=1, 10);
        assert!(hits.is_empty());
    }

    #[test]
    fn csv_format() {
        let hits = search_integral(17..=17, 6..=6, 72..=72, 12);
        assert_eq!(
            search_hits_csv(&hits),
            "A,B,C,nondegenerate,depth\n17,6,72,true,12\n"
        );
    }

    #[test]
    fn ratio_band_for_f() {
        let f = f_values(200);
        for n in 5..200 {
            assert!(f[n] > BigInt::zero());
            let r = BigRational::new(f[n + 1].clone(), f[n].clone());
            assert!(
                r >= BigRational::from_integer(6.into())
                    && r <= BigRational::from_integer(10.into())
            );
        }
    }
}
