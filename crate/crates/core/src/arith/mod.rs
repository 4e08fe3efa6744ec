//! Exact and modular arithmetic: rationals, residue symbols, finite fields of
//! order `p` and `p^2`, square roots, and binary quadratic form representations.

mod cornacchia;
mod field;
mod quadratic;
mod rational;
mod sqrt;
mod symbols;

pub use cornacchia::{cornacchia, cornacchia_exhaustive, QuadFormRepresentation};
pub use field::{
    is_prime, primes_in, FiniteField, PrimeField, PrimeFieldElem, QuadExtElem, QuadExtField,
};
pub use quadratic::{count_quadratic_roots, QuadraticRoots};
pub use rational::{int_valuation, padic_valuation, rat, rational_mod, ExactRational, Valuation};
pub use sqrt::{sqrt_in_field, sqrt_mod_prime};
pub use symbols::{char_value, kronecker_symbol, QuadraticCharacter};
