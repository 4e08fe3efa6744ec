//! Exhaustive `O(q^2)` reference computations.

use super::cubic::{projective_points, TernaryCubic};
use super::fiber::{fiber_shape, Cover, FiberParameter, FiberShape};
use crate::arith::{FiniteField, QuadExtField};
use crate::error::Result;

/// Projective points of a cubic, by scanning all of `P^2(F_q)`.
pub fn brute_count<F: FiniteField>(field: &F, cubic: &TernaryCubic<F::Elem>) -> u64 {
    projective_points(field)
        .into_iter()
        .filter(|&p| field.is_zero(cubic.eval(field, p)))
        .count() as u64
}

/// The plane cubic over a parameter.
pub fn fiber_cubic<F: FiniteField>(
    field: &F,
    param: FiberParameter<F::Elem>,
    cover: Cover,
) -> TernaryCubic<F::Elem> {
    fiber_shape(field, param, cover).cubic(field)
}

/// Parameters `u in F_p` (plus `inf`) whose fiber has a singular point over
/// `F_{p^2}`, found by evaluating the gradient at every point of `P^2(F_{p^2})`.
///
/// Returns indices into `F_p`, with `p` standing for `inf`.
pub fn singular_params_by_scan(p: u64, cover: Cover) -> Result<Vec<u64>> {
    let big = QuadExtField::new(p)?;
    let points = projective_points(&big);
    let mut out = Vec::new();
    for index in 0..=p {
        let param = if index == p {
            FiberParameter::Infinity
        } else {
            FiberParameter::Finite(big.from_i64(index as i64))
        };
        let cubic = match fiber_shape(&big, param, cover) {
            FiberShape::Triangle => TernaryCubic::triangle(&big),
            FiberShape::Cubic(c) => TernaryCubic::fiber(&big, c),
        };
        let partials: Vec<TernaryCubic<_>> = (0..3).map(|v| cubic.partial(&big, v)).collect();
        let singular = points.iter().any(|&pt| {
            partials.iter().all(|d| big.is_zero(d.eval(&big, pt)))
                && big.is_zero(cubic.eval(&big, pt))
        });
        if singular {
            out.push(index);
        }
    }
    Ok(out)
}
