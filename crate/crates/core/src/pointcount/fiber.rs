use std::fmt;

use super::cubic::{tangent_cone_discriminant, TernaryCubic};
use crate::arith::{sqrt_in_field, FiniteField};
use crate::error::{usage, Error, Result};

/// Base change of the `t`-line: `t = s^2` for the two-cover, `t = u^3` for
/// the three-cover.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Cover {
    Two,
    Three,
}

impl Cover {
    pub fn exponent(self) -> u32 {
        match self {
            Cover::Two => 2,
            Cover::Three => 3,
        }
    }

    pub fn from_exponent(e: u32) -> Result<Self> {
        match e {
            2 => Ok(Cover::Two),
            3 => Ok(Cover::Three),
            _ => Err(usage(format!("cover exponent must be 2 or 3, got {e}"))),
        }
    }
}

impl fmt::Display for Cover {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.exponent())
    }
}

/// A point of the parameter line `P^1(F_q)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum FiberParameter<E> {
    Finite(E),
    Infinity,
}

impl<E: fmt::Display> fmt::Display for FiberParameter<E> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FiberParameter::Finite(e) => write!(f, "{e}"),
            FiberParameter::Infinity => write!(f, "inf"),
        }
    }
}

/// The plane cubic over a parameter value.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FiberShape<E> {
    /// `xyz = 0`, over parameter 0.
    Triangle,
    /// `(x+y)(x+z)(y+z) = c xyz` with `c = 8 + 1/t`.
    Cubic(E),
}

impl<E: Copy> FiberShape<E> {
    pub fn cubic<F: FiniteField<Elem = E>>(&self, field: &F) -> TernaryCubic<E> {
        match *self {
            FiberShape::Triangle => TernaryCubic::triangle(field),
            FiberShape::Cubic(c) => TernaryCubic::fiber(field, c),
        }
    }
}

pub fn fiber_shape<F: FiniteField>(
    field: &F,
    param: FiberParameter<F::Elem>,
    cover: Cover,
) -> FiberShape<F::Elem> {
    match param {
        FiberParameter::Infinity => FiberShape::Cubic(field.from_i64(8)),
        FiberParameter::Finite(u) => match field.inv(field.pow(u, cover.exponent() as u64)) {
            None => FiberShape::Triangle,
            Some(inv_t) => FiberShape::Cubic(field.add(field.from_i64(8), inv_t)),
        },
    }
}

/// Whether the cubic `(x+y)(x+z)(y+z) = c xyz` is singular.
pub fn is_singular_c<F: FiniteField>(field: &F, c: F::Elem) -> bool {
    c == field.from_i64(8) || field.is_zero(c) || c == field.from_i64(-1)
}

pub fn is_singular<F: FiniteField>(field: &F, shape: &FiberShape<F::Elem>) -> bool {
    match shape {
        FiberShape::Triangle => true,
        FiberShape::Cubic(c) => is_singular_c(field, *c),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FiberKind {
    Smooth { points: u64 },
    Multiplicative { split: bool },
    Additive,
}

impl fmt::Display for FiberKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FiberKind::Smooth { points } => write!(f, "smooth({points})"),
            FiberKind::Multiplicative { split: true } => write!(f, "split"),
            FiberKind::Multiplicative { split: false } => write!(f, "nonsplit"),
            FiberKind::Additive => write!(f, "additive"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FiberClassification {
    pub kind: FiberKind,
    pub local_trace: i64,
    /// Number of geometric components of the plane cubic, all defined over `F_q`.
    pub components: u32,
    /// Kodaira `I_n` index of the surface fiber, as known metadata.
    pub kodaira_index: Option<u32>,
}

fn local_trace_of(kind: FiberKind, q: u64) -> i64 {
    match kind {
        FiberKind::Smooth { points } => q as i64 + 1 - points as i64,
        FiberKind::Multiplicative { split: true } => 1,
        FiberKind::Multiplicative { split: false } => -1,
        FiberKind::Additive => 0,
    }
}

/// Number of roots of `a x^2 + b x + c`, with squareness read from a table.
#[inline]
fn roots<F: FiniteField>(field: &F, squares: &[bool], a: F::Elem, b: F::Elem, c: F::Elem) -> u64 {
    if field.is_zero(a) {
        return if !field.is_zero(b) {
            1
        } else if field.is_zero(c) {
            field.order()
        } else {
            0
        };
    }
    let disc = field.sub(
        field.mul(b, b),
        field.mul(field.from_i64(4), field.mul(a, c)),
    );
    if field.is_zero(disc) {
        1
    } else if squares[field.index(disc) as usize] {
        2
    } else {
        0
    }
}

/// `#{(x:y:z) : (x+y)(x+z)(y+z) = c xyz}` in `O(q)`, solving for `x` over each
/// `(y:z)`. `squares` is the field's square table.
pub fn count_cubic_points<F: FiniteField>(field: &F, squares: &[bool], c: F::Elem) -> u64 {
    let one = field.one();
    // (1:0:0) lies on every such cubic
    let mut total = 1;
    // (y:z) = (1:0): x^2 + x = 0
    total += roots(field, squares, one, one, field.zero());
    for y in field.elements() {
        // z = 1: (y+1) x^2 + ((y+1)^2 - c y) x + (y+1) y = 0
        let y1 = field.add(y, one);
        let b = field.sub(field.mul(y1, y1), field.mul(c, y));
        total += roots(field, squares, y1, b, field.mul(y1, y));
    }
    total
}

/// Point count of a smooth fiber.
pub fn count_fiber<F: FiniteField>(
    field: &F,
    param: FiberParameter<F::Elem>,
    cover: Cover,
) -> Result<u64> {
    let shape = fiber_shape(field, param, cover);
    match shape {
        FiberShape::Cubic(c) if !is_singular_c(field, c) => {
            Ok(count_cubic_points(field, &field.square_table(), c))
        }
        _ => Err(Error::SingularFiber(param.to_string())),
    }
}

/// A cubic containing four points of a line contains the line.
fn contains_line<F: FiniteField>(
    field: &F,
    cubic: &TernaryCubic<F::Elem>,
    p: [F::Elem; 3],
    d: [F::Elem; 3],
) -> bool {
    (0..4).all(|k| {
        let k = field.from_i64(k);
        let pt = [0, 1, 2].map(|i| field.add(p[i], field.mul(k, d[i])));
        field.is_zero(cubic.eval(field, pt))
    }) && field.is_zero(cubic.eval(field, d))
}

fn node_kind<F: FiniteField>(
    field: &F,
    cubic: &TernaryCubic<F::Elem>,
    node: [F::Elem; 3],
) -> FiberKind {
    debug_assert!(cubic.is_singular_at(field, node));
    let disc = tangent_cone_discriminant(field, cubic, node);
    if field.is_zero(disc) {
        FiberKind::Additive
    } else {
        FiberKind::Multiplicative {
            split: field.is_square(disc),
        }
    }
}

fn kodaira_metadata(cover: Cover, special: Special) -> u32 {
    match (cover, special) {
        (Cover::Two, Special::Zero) => 12,
        (Cover::Two, Special::Infinity) => 2,
        (Cover::Three, Special::Zero) => 18,
        (Cover::Three, Special::Infinity) => 3,
        (_, Special::ThreeLines) => 3,
        (_, Special::LineConic) => 2,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Special {
    Zero,
    Infinity,
    ThreeLines,
    LineConic,
}

/// Reduction type and local trace of a singular fiber.
pub fn classify_fiber<F: FiniteField>(
    field: &F,
    param: FiberParameter<F::Elem>,
    cover: Cover,
) -> Result<FiberClassification> {
    let shape = fiber_shape(field, param, cover);
    let cubic = shape.cubic(field);
    let (zero, one) = (field.zero(), field.one());
    let m1 = field.from_i64(-1);
    let (special, kind, components) = match shape {
        FiberShape::Triangle => {
            let lines_ok = contains_line(field, &cubic, [zero, zero, one], [zero, one, zero])
                && contains_line(field, &cubic, [zero, zero, one], [one, zero, zero])
                && contains_line(field, &cubic, [zero, one, zero], [one, zero, zero]);
            assert!(lines_ok, "xyz = 0 is three rational lines");
            (Special::Zero, FiberKind::Multiplicative { split: true }, 3)
        }
        FiberShape::Cubic(c) if field.is_zero(c) => {
            // x+y = 0, x+z = 0, y+z = 0
            let lines_ok = contains_line(field, &cubic, [zero, zero, one], [one, m1, zero])
                && contains_line(field, &cubic, [zero, one, zero], [one, zero, m1])
                && contains_line(field, &cubic, [one, zero, zero], [zero, one, m1]);
            assert!(lines_ok, "c = 0 fiber is three rational lines");
            (
                Special::ThreeLines,
                FiberKind::Multiplicative { split: true },
                3,
            )
        }
        FiberShape::Cubic(c) if c == m1 => {
            // (x+y+z)(xy+yz+zx): a line and a conic meeting where x^2+xy+y^2 = 0
            assert!(
                contains_line(field, &cubic, [zero, one, m1], [one, zero, m1]),
                "c = -1 fiber contains x+y+z = 0"
            );
            let kind = match sqrt_in_field(field, field.from_i64(-3)) {
                Some(root) => {
                    let half = field.inv(field.from_i64(2)).expect("odd characteristic");
                    let r = field.mul(field.sub(root, one), half);
                    let node = [r, one, field.sub(m1, r)];
                    node_kind(field, &cubic, node)
                }
                None => FiberKind::Multiplicative { split: false },
            };
            (Special::LineConic, kind, 2)
        }
        FiberShape::Cubic(c) if c == field.from_i64(8) => {
            let kind = node_kind(field, &cubic, [one, one, one]);
            (Special::Infinity, kind, 1)
        }
        FiberShape::Cubic(_) => return Err(Error::SmoothFiber(param.to_string())),
    };
    Ok(FiberClassification {
        kind,
        local_trace: local_trace_of(kind, field.order()),
        components,
        kodaira_index: Some(kodaira_metadata(cover, special)),
    })
}

/// Classification of any fiber: counted when smooth, classified when singular.
pub fn fiber_data<F: FiniteField>(
    field: &F,
    squares: &[bool],
    param: FiberParameter<F::Elem>,
    cover: Cover,
) -> Result<FiberClassification> {
    match fiber_shape(field, param, cover) {
        FiberShape::Cubic(c) if !is_singular_c(field, c) => {
            let kind = FiberKind::Smooth {
                points: count_cubic_points(field, squares, c),
            };
            Ok(FiberClassification {
                kind,
                local_trace: local_trace_of(kind, field.order()),
                components: 1,
                kodaira_index: None,
            })
        }
        _ => classify_fiber(field, param, cover),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::PrimeField;

    #[test]
    fn f7_special_fibers() {
        let f = PrimeField::new(7).unwrap();
        let zero = classify_fiber(&f, FiberParameter::Finite(f.elem(0)), Cover::Two).unwrap();
        assert_eq!(zero.kind, FiberKind::Multiplicative { split: true });
        assert_eq!(zero.local_trace, 1);
        let inf = classify_fiber(&f, FiberParameter::Infinity, Cover::Two).unwrap();
        // -3 = 4 = 2^2 mod 7
        assert_eq!(inf.kind, FiberKind::Multiplicative { split: true });
    }

    #[test]
    fn smooth_fiber_is_not_classified() {
        let f = PrimeField::new(7).unwrap();
        assert!(matches!(
            classify_fiber(&f, FiberParameter::Finite(f.elem(1)), Cover::Two),
            Err(Error::SmoothFiber(_))
        ));
        assert!(matches!(
            count_fiber(&f, FiberParameter::Infinity, Cover::Two),
            Err(Error::SingularFiber(_))
        ));
    }

    #[test]
    fn nonsplit_at_p5() {
        // -3 is not a square mod 5
        let f = PrimeField::new(5).unwrap();
        let inf = classify_fiber(&f, FiberParameter::Infinity, Cover::Two).unwrap();
        assert_eq!(inf.kind, FiberKind::Multiplicative { split: false });
        assert_eq!(inf.local_trace, -1);
    }
}
