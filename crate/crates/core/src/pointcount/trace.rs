use std::collections::{BTreeMap, BTreeSet};
use std::sync::Mutex;

use rayon::prelude::*;

use super::fiber::{
    fiber_data, fiber_shape, is_singular_c, Cover, FiberClassification, FiberKind, FiberParameter,
    FiberShape,
};
use crate::arith::{is_prime, kronecker_symbol, FiniteField, PrimeField, QuadExtField};
use crate::error::{usage, Result};

/// Local data of one fiber in a trace computation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiberTrace {
    pub param: String,
    pub kind: FiberKind,
    pub local_trace: i64,
}

/// Frobenius trace on the fibration over `F_q`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TraceResult {
    pub q: u64,
    pub cover: Cover,
    /// `-sum` of the local traces.
    pub a: i64,
    /// Fibers in parameter order, finite values first, `inf` last.
    pub per_fiber: Vec<FiberTrace>,
}

/// Trace over an explicit field. Smooth fibers sharing a cubic are counted once.
pub fn surface_trace_in<F: FiniteField>(field: &F, cover: Cover) -> Result<TraceResult> {
    let squares = field.square_table();
    let params: Vec<FiberParameter<F::Elem>> = field
        .elements()
        .map(FiberParameter::Finite)
        .chain(std::iter::once(FiberParameter::Infinity))
        .collect();

    let mut distinct = BTreeSet::new();
    for &param in &params {
        if let FiberShape::Cubic(c) = fiber_shape(field, param, cover) {
            if !is_singular_c(field, c) {
                distinct.insert(c);
            }
        }
    }
    let counts: BTreeMap<F::Elem, FiberClassification> = distinct
        .into_iter()
        .collect::<Vec<_>>()
        .into_par_iter()
        .map(|c| {
            // any parameter with this c gives the same fiber; count via c directly
            let points = super::fiber::count_cubic_points(field, &squares, c);
            let kind = FiberKind::Smooth { points };
            (
                c,
                FiberClassification {
                    kind,
                    local_trace: field.order() as i64 + 1 - points as i64,
                    components: 1,
                    kodaira_index: None,
                },
            )
        })
        .collect();

    let mut per_fiber = Vec::with_capacity(params.len());
    let mut total = 0i64;
    for param in params {
        let data = match fiber_shape(field, param, cover) {
            FiberShape::Cubic(c) if counts.contains_key(&c) => counts[&c],
            _ => fiber_data(field, &squares, param, cover)?,
        };
        total += data.local_trace;
        per_fiber.push(FiberTrace {
            param: param.to_string(),
            kind: data.kind,
            local_trace: data.local_trace,
        });
    }
    Ok(TraceResult {
        q: field.order(),
        cover,
        a: -total,
        per_fiber,
    })
}

/// `q = p` or `q = p^2` with `p > 3` prime.
pub fn surface_trace(q: u64, cover: Cover) -> Result<TraceResult> {
    if q.is_multiple_of(2) || q.is_multiple_of(3) {
        return Err(usage(format!("q = {q} must be coprime to 6")));
    }
    if is_prime(q) {
        return surface_trace_in(&PrimeField::new(q)?, cover);
    }
    let r = (q as f64).sqrt().round() as u64;
    if let Some(p) = (r.saturating_sub(1)..=r + 1).find(|&p| p * p == q && is_prime(p)) {
        return surface_trace_in(&QuadExtField::new(p)?, cover);
    }
    Err(usage(format!(
        "q = {q} is neither a prime nor the square of a prime"
    )))
}

/// Anything that can supply traces `A_q`, e.g. with caching in front.
pub trait TraceSource: Sync {
    fn trace(&self, q: u64, cover: Cover) -> Result<i64>;
}

/// Computes every trace from scratch.
#[derive(Clone, Copy, Debug, Default)]
pub struct DirectTraces;

impl TraceSource for DirectTraces {
    fn trace(&self, q: u64, cover: Cover) -> Result<i64> {
        Ok(surface_trace(q, cover)?.a)
    }
}

/// Remembers traces for the lifetime of the value.
#[derive(Debug, Default)]
pub struct MemoTraces {
    seen: Mutex<BTreeMap<(u64, Cover), i64>>,
}

impl TraceSource for MemoTraces {
    fn trace(&self, q: u64, cover: Cover) -> Result<i64> {
        if let Some(a) = self.seen.lock().expect("unpoisoned").get(&(q, cover)) {
            return Ok(*a);
        }
        let a = surface_trace(q, cover)?.a;
        self.seen.lock().expect("unpoisoned").insert((q, cover), a);
        Ok(a)
    }
}

/// `(A_p^2 - A_{p^2}) / 2` for the two-cover.
pub fn rho_det(p: u64) -> Result<i64> {
    rho_det_with(&DirectTraces, p)
}

pub fn rho_det_with(traces: &dyn TraceSource, p: u64) -> Result<i64> {
    if !is_prime(p) || p <= 3 {
        return Err(usage(format!("rho_det needs a prime p > 3, got {p}")));
    }
    let a_p = traces.trace(p, Cover::Two)?;
    let a_p2 = traces.trace(p * p, Cover::Two)?;
    Ok((a_p * a_p - a_p2) / 2)
}

/// `(-24/p) p^2`.
pub fn expected_det(p: u64) -> Result<i64> {
    Ok(kronecker_symbol(-24, p as i64)? as i64 * (p * p) as i64)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trace_at_seven() {
        let t = surface_trace(7, Cover::Two).unwrap();
        assert_eq!(t.a, 10);
        assert_eq!(t.per_fiber.len(), 8);
        assert_eq!(t.a, -t.per_fiber.iter().map(|f| f.local_trace).sum::<i64>());
    }

    #[test]
    fn trace_at_five() {
        assert_eq!(surface_trace(5, Cover::Two).unwrap().a, 2);
    }

    #[test]
    fn determinants() {
        assert_eq!(rho_det(7).unwrap(), 49);
        assert_eq!(rho_det(5).unwrap(), expected_det(5).unwrap());
        // -24 = 1 mod 5
        assert_eq!(expected_det(5).unwrap(), 25);
    }

    #[test]
    fn rejects_bad_q() {
        assert!(surface_trace(9, Cover::Two).is_err());
        assert!(surface_trace(15, Cover::Two).is_err());
        assert!(surface_trace(35, Cover::Two).is_err());
    }
}
