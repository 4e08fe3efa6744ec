use std::fmt;
use std::hash::Hash;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{usage, Result};

/// Trial-division primality; every modulus used here is far below `2^32`.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n.is_multiple_of(2) {
        return n == 2;
    }
    let mut d = 3;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

/// Primes in the closed interval `[lo, hi]`.
pub fn primes_in(lo: u64, hi: u64) -> Vec<u64> {
    (lo..=hi).filter(|&n| is_prime(n)).collect()
}

fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % m;
        }
        base = base * base % m;
        exp >>= 1;
    }
    acc
}

/// Element of `F_p`, carrying its modulus.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PrimeFieldElem {
    residue: u64,
    modulus: u64,
}

impl PrimeFieldElem {
    pub fn new(value: i64, modulus: u64) -> Self {
        Self {
            residue: value.rem_euclid(modulus as i64) as u64,
            modulus,
        }
    }

    pub fn residue(&self) -> u64 {
        self.residue
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn is_zero(&self) -> bool {
        self.residue == 0
    }

    pub fn pow(&self, e: u64) -> Self {
        Self {
            residue: pow_mod(self.residue, e, self.modulus),
            modulus: self.modulus,
        }
    }

    pub fn inv(&self) -> Option<Self> {
        (!self.is_zero()).then(|| self.pow(self.modulus - 2))
    }
}

impl fmt::Debug for PrimeFieldElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (mod {})", self.residue, self.modulus)
    }
}

impl fmt::Display for PrimeFieldElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.residue)
    }
}

impl Add for PrimeFieldElem {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        debug_assert_eq!(self.modulus, rhs.modulus);
        let s = self.residue + rhs.residue;
        Self {
            residue: if s >= self.modulus {
                s - self.modulus
            } else {
                s
            },
            modulus: self.modulus,
        }
    }
}

impl Sub for PrimeFieldElem {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        debug_assert_eq!(self.modulus, rhs.modulus);
        Self {
            residue: if self.residue >= rhs.residue {
                self.residue - rhs.residue
            } else {
                self.residue + self.modulus - rhs.residue
            },
            modulus: self.modulus,
        }
    }
}

impl Neg for PrimeFieldElem {
    type Output = Self;
    fn neg(self) -> Self {
        Self {
            residue: if self.residue == 0 {
                0
            } else {
                self.modulus - self.residue
            },
            modulus: self.modulus,
        }
    }
}

impl Mul for PrimeFieldElem {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        debug_assert_eq!(self.modulus, rhs.modulus);
        Self {
            residue: self.residue * rhs.residue % self.modulus,
            modulus: self.modulus,
        }
    }
}

/// Element `a + b*w` of `F_p[w] / (w^2 - d)`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct QuadExtElem {
    pub a: PrimeFieldElem,
    pub b: PrimeFieldElem,
    pub d: PrimeFieldElem,
}

impl QuadExtElem {
    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn norm(&self) -> PrimeFieldElem {
        self.a * self.a - self.d * self.b * self.b
    }

    pub fn conj(&self) -> Self {
        Self {
            b: -self.b,
            ..*self
        }
    }

    pub fn inv(&self) -> Option<Self> {
        let n = self.norm().inv()?;
        let c = self.conj();
        Some(Self {
            a: c.a * n,
            b: c.b * n,
            d: self.d,
        })
    }

    pub fn pow(&self, mut e: u64) -> Self {
        let mut base = *self;
        let mut acc = Self {
            a: PrimeFieldElem::new(1, self.a.modulus),
            b: PrimeFieldElem::new(0, self.a.modulus),
            d: self.d,
        };
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base;
            }
            base = base * base;
            e >>= 1;
        }
        acc
    }
}

impl fmt::Debug for QuadExtElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}+{}w (w^2={}, mod {})",
            self.a, self.b, self.d, self.a.modulus
        )
    }
}

impl fmt::Display for QuadExtElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}+{}w", self.a, self.b)
    }
}

impl Add for QuadExtElem {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        Self {
            a: self.a + rhs.a,
            b: self.b + rhs.b,
            d: self.d,
        }
    }
}

impl Sub for QuadExtElem {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        Self {
            a: self.a - rhs.a,
            b: self.b - rhs.b,
            d: self.d,
        }
    }
}

impl Neg for QuadExtElem {
    type Output = Self;
    fn neg(self) -> Self {
        Self {
            a: -self.a,
            b: -self.b,
            d: self.d,
        }
    }
}

impl Mul for QuadExtElem {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        debug_assert_eq!(self.d, rhs.d);
        Self {
            a: self.a * rhs.a + self.d * self.b * rhs.b,
            b: self.a * rhs.b + self.b * rhs.a,
            d: self.d,
        }
    }
}

/// A finite field of odd characteristic, as a context object handing out
/// elements. Elements are enumerated by an index in `0..order()`.
pub trait FiniteField: Send + Sync {
    type Elem: Copy + Eq + Ord + Hash + fmt::Debug + fmt::Display + Send + Sync;

    fn characteristic(&self) -> u64;
    fn order(&self) -> u64;
    #[allow(clippy::wrong_self_convention)]
    fn from_i64(&self, v: i64) -> Self::Elem;
    fn add(&self, a: Self::Elem, b: Self::Elem) -> Self::Elem;
    fn sub(&self, a: Self::Elem, b: Self::Elem) -> Self::Elem;
    fn mul(&self, a: Self::Elem, b: Self::Elem) -> Self::Elem;
    fn neg(&self, a: Self::Elem) -> Self::Elem;
    fn inv(&self, a: Self::Elem) -> Option<Self::Elem>;
    fn element(&self, index: u64) -> Self::Elem;
    fn index(&self, a: Self::Elem) -> u64;

    fn zero(&self) -> Self::Elem {
        self.from_i64(0)
    }

    fn one(&self) -> Self::Elem {
        self.from_i64(1)
    }

    fn is_zero(&self, a: Self::Elem) -> bool {
        a == self.zero()
    }

    fn pow(&self, a: Self::Elem, mut e: u64) -> Self::Elem {
        let mut base = a;
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// Euler's criterion; zero counts as a square.
    fn is_square(&self, a: Self::Elem) -> bool {
        self.is_zero(a) || self.pow(a, (self.order() - 1) / 2) == self.one()
    }

    /// The nonresidue with the smallest index.
    fn smallest_nonresidue(&self) -> Self::Elem {
        (1..self.order())
            .map(|i| self.element(i))
            .find(|&e| !self.is_square(e))
            .expect("every field of odd order has a nonresidue")
    }

    fn elements(&self) -> Box<dyn Iterator<Item = Self::Elem> + '_> {
        Box::new((0..self.order()).map(move |i| self.element(i)))
    }

    /// `is_square` for every element, indexed by `index()`.
    fn square_table(&self) -> Vec<bool> {
        let mut table = vec![false; self.order() as usize];
        for e in self.elements() {
            let sq = self.mul(e, e);
            table[self.index(sq) as usize] = true;
        }
        table
    }
}

/// The prime field `F_p`, `p` odd.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PrimeField {
    p: u64,
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self> {
        if !is_prime(p) || p == 2 {
            return Err(usage(format!("{p} is not an odd prime")));
        }
        if p >= 1 << 31 {
            return Err(usage(format!("modulus {p} is too large")));
        }
        Ok(Self { p })
    }

    pub fn elem(&self, v: i64) -> PrimeFieldElem {
        PrimeFieldElem::new(v, self.p)
    }
}

impl FiniteField for PrimeField {
    type Elem = PrimeFieldElem;

    fn characteristic(&self) -> u64 {
        self.p
    }
    fn order(&self) -> u64 {
        self.p
    }
    fn from_i64(&self, v: i64) -> PrimeFieldElem {
        PrimeFieldElem::new(v, self.p)
    }
    fn add(&self, a: PrimeFieldElem, b: PrimeFieldElem) -> PrimeFieldElem {
        a + b
    }
    fn sub(&self, a: PrimeFieldElem, b: PrimeFieldElem) -> PrimeFieldElem {
        a - b
    }
    fn mul(&self, a: PrimeFieldElem, b: PrimeFieldElem) -> PrimeFieldElem {
        a * b
    }
    fn neg(&self, a: PrimeFieldElem) -> PrimeFieldElem {
        -a
    }
    fn inv(&self, a: PrimeFieldElem) -> Option<PrimeFieldElem> {
        a.inv()
    }
    fn element(&self, index: u64) -> PrimeFieldElem {
        PrimeFieldElem {
            residue: index,
            modulus: self.p,
        }
    }
    fn index(&self, a: PrimeFieldElem) -> u64 {
        a.residue
    }
    fn pow(&self, a: PrimeFieldElem, e: u64) -> PrimeFieldElem {
        a.pow(e)
    }
}

/// `F_{p^2} = F_p[w] / (w^2 - d)` for a nonresidue `d`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct QuadExtField {
    p: u64,
    d: PrimeFieldElem,
}

impl QuadExtField {
    /// Uses the smallest positive nonresidue mod `p`.
    pub fn new(p: u64) -> Result<Self> {
        let base = PrimeField::new(p)?;
        let d = base.smallest_nonresidue();
        Ok(Self { p, d })
    }

    pub fn with_nonresidue(p: u64, d: i64) -> Result<Self> {
        let base = PrimeField::new(p)?;
        let d = base.elem(d);
        if base.is_square(d) {
            return Err(usage(format!("{d} is a square mod {p}")));
        }
        Ok(Self { p, d })
    }

    pub fn nonresidue(&self) -> PrimeFieldElem {
        self.d
    }

    pub fn elem(&self, a: i64, b: i64) -> QuadExtElem {
        QuadExtElem {
            a: PrimeFieldElem::new(a, self.p),
            b: PrimeFieldElem::new(b, self.p),
            d: self.d,
        }
    }

    /// The generator `w` with `w^2 = d`.
    pub fn gen(&self) -> QuadExtElem {
        self.elem(0, 1)
    }

    /// The p-power map.
    pub fn frobenius(&self, x: QuadExtElem) -> QuadExtElem {
        x.pow(self.p)
    }
}

impl FiniteField for QuadExtField {
    type Elem = QuadExtElem;

    fn characteristic(&self) -> u64 {
        self.p
    }
    fn order(&self) -> u64 {
        self.p * self.p
    }
    fn from_i64(&self, v: i64) -> QuadExtElem {
        self.elem(v, 0)
    }
    fn add(&self, a: QuadExtElem, b: QuadExtElem) -> QuadExtElem {
        a + b
    }
    fn sub(&self, a: QuadExtElem, b: QuadExtElem) -> QuadExtElem {
        a - b
    }
    fn mul(&self, a: QuadExtElem, b: QuadExtElem) -> QuadExtElem {
        a * b
    }
    fn neg(&self, a: QuadExtElem) -> QuadExtElem {
        -a
    }
    fn inv(&self, a: QuadExtElem) -> Option<QuadExtElem> {
        a.inv()
    }
    fn element(&self, index: u64) -> QuadExtElem {
        self.elem((index % self.p) as i64, (index / self.p) as i64)
    }
    fn index(&self, a: QuadExtElem) -> u64 {
        a.a.residue() + a.b.residue() * self.p
    }
    fn pow(&self, a: QuadExtElem, e: u64) -> QuadExtElem {
        a.pow(e)
    }
    /// `x` is a square in `F_{p^2}` iff its norm is a square in `F_p`.
    fn is_square(&self, a: QuadExtElem) -> bool {
        let n = a.norm();
        n.is_zero() || n.pow((self.p - 1) / 2).residue() == 1
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primes() {
        assert_eq!(primes_in(1, 30), vec![2, 3, 5, 7, 11, 13, 17, 19, 23, 29]);
        assert!(PrimeField::new(9).is_err());
        assert!(PrimeField::new(2).is_err());
    }

    #[test]
    fn smallest_nonresidue_choice() {
        assert_eq!(QuadExtField::new(5).unwrap().nonresidue().residue(), 2);
        assert_eq!(QuadExtField::new(7).unwrap().nonresidue().residue(), 3);
        assert_eq!(QuadExtField::new(17).unwrap().nonresidue().residue(), 3);
        assert!(QuadExtField::with_nonresidue(7, 2).is_err());
    }

    #[test]
    fn quad_ext_is_a_field() {
        for p in [3u64, 5, 7, 11] {
            let f = QuadExtField::new(p).unwrap();
            let one = f.one();
            for x in f.elements().skip(1) {
                let y = f.inv(x).unwrap();
                assert_eq!(f.mul(x, y), one);
                assert_eq!(f.pow(x, f.order() - 1), one);
            }
            // norm-based square test agrees with Euler's criterion
            for x in f.elements() {
                let euler = f.is_zero(x) || f.pow(x, (f.order() - 1) / 2) == one;
                assert_eq!(f.is_square(x), euler);
            }
            // Frobenius is a field automorphism of order 2 fixing F_p
            for x in f.elements() {
                assert_eq!(f.frobenius(f.frobenius(x)), x);
            }
            let fixed = f.elements().filter(|&x| f.frobenius(x) == x).count() as u64;
            assert_eq!(fixed, p);
        }
    }

    #[test]
    fn square_table_matches_euler() {
        let f = PrimeField::new(13).unwrap();
        let table = f.square_table();
        for x in f.elements() {
            assert_eq!(table[f.index(x) as usize], f.is_square(x));
        }
        assert_eq!(table.iter().filter(|s| **s).count(), 7);
    }
}
