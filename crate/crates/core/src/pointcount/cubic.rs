use crate::arith::FiniteField;

/// A homogeneous cubic `sum c_{ijk} x^i y^j z^k` over a finite field.
#[derive(Clone, Debug)]
pub struct TernaryCubic<E> {
    pub terms: Vec<([u32; 3], E)>,
}

fn mono_pow<F: FiniteField>(field: &F, v: F::Elem, e: u32) -> F::Elem {
    field.pow(v, e as u64)
}

impl<E: Copy> TernaryCubic<E> {
    /// `(x+y)(x+z)(y+z) - c xyz`.
    pub fn fiber<F: FiniteField<Elem = E>>(field: &F, c: E) -> Self {
        let one = field.one();
        let mut terms: Vec<([u32; 3], E)> = [
            [2, 1, 0],
            [2, 0, 1],
            [1, 2, 0],
            [0, 2, 1],
            [1, 0, 2],
            [0, 1, 2],
        ]
        .into_iter()
        .map(|m| (m, one))
        .collect();
        terms.push(([1, 1, 1], field.sub(field.from_i64(2), c)));
        Self { terms }
    }

    /// `xyz`.
    pub fn triangle<F: FiniteField<Elem = E>>(field: &F) -> Self {
        Self {
            terms: vec![([1, 1, 1], field.one())],
        }
    }

    pub fn eval<F: FiniteField<Elem = E>>(&self, field: &F, p: [E; 3]) -> E {
        let mut acc = field.zero();
        for (m, c) in &self.terms {
            let mut v = *c;
            for (coord, e) in p.iter().zip(m) {
                if *e > 0 {
                    v = field.mul(v, mono_pow(field, *coord, *e));
                }
            }
            acc = field.add(acc, v);
        }
        acc
    }

    /// Partial derivative in variable `var`.
    pub fn partial<F: FiniteField<Elem = E>>(&self, field: &F, var: usize) -> Self {
        let terms = self
            .terms
            .iter()
            .filter(|(m, _)| m[var] > 0)
            .map(|(m, c)| {
                let mut m2 = *m;
                m2[var] -= 1;
                (m2, field.mul(*c, field.from_i64(m[var] as i64)))
            })
            .collect();
        Self { terms }
    }

    pub fn gradient<F: FiniteField<Elem = E>>(&self, field: &F, p: [E; 3]) -> [E; 3] {
        [0, 1, 2].map(|v| self.partial(field, v).eval(field, p))
    }

    pub fn hessian<F: FiniteField<Elem = E>>(&self, field: &F, p: [E; 3]) -> [[E; 3]; 3] {
        let first: Vec<Self> = (0..3).map(|v| self.partial(field, v)).collect();
        [0, 1, 2].map(|i| [0, 1, 2].map(|j| first[i].partial(field, j).eval(field, p)))
    }

    pub fn is_singular_at<F: FiniteField<Elem = E>>(&self, field: &F, p: [E; 3]) -> bool {
        self.gradient(field, p).iter().all(|g| field.is_zero(*g))
    }
}

/// Representatives of every point of `P^2(F_q)`.
pub fn projective_points<F: FiniteField>(field: &F) -> Vec<[F::Elem; 3]> {
    let (zero, one) = (field.zero(), field.one());
    let mut pts = Vec::with_capacity((field.order() * field.order() + field.order() + 1) as usize);
    for x in field.elements() {
        for y in field.elements() {
            pts.push([x, y, one]);
        }
    }
    for x in field.elements() {
        pts.push([x, one, zero]);
    }
    pts.push([one, zero, zero]);
    pts
}

/// Discriminant of the tangent cone of a cubic at a singular point: the
/// Hessian quadratic form restricted to a plane complementary to the point.
pub fn tangent_cone_discriminant<F: FiniteField>(
    field: &F,
    cubic: &TernaryCubic<F::Elem>,
    point: [F::Elem; 3],
) -> F::Elem {
    let h = cubic.hessian(field, point);
    let pivot = point
        .iter()
        .position(|c| !field.is_zero(*c))
        .expect("projective point has a nonzero coordinate");
    let others: Vec<usize> = (0..3).filter(|&i| i != pivot).collect();
    let (u, v) = (others[0], others[1]);
    // Q(a e_u + b e_v) = h_uu a^2 + 2 h_uv ab + h_vv b^2
    let a = h[u][u];
    let b = field.add(h[u][v], h[u][v]);
    let c = h[v][v];
    let four = field.from_i64(4);
    field.sub(field.mul(b, b), field.mul(four, field.mul(a, c)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::PrimeField;

    #[test]
    fn node_of_c8_fiber() {
        let f = PrimeField::new(7).unwrap();
        let cubic = TernaryCubic::fiber(&f, f.elem(8));
        let p = [f.one(), f.one(), f.one()];
        assert!(f.is_zero(cubic.eval(&f, p)));
        assert!(cubic.is_singular_at(&f, p));
        // quadratic part 2X^2 - 2XY + 2Y^2 has discriminant -12
        assert_eq!(tangent_cone_discriminant(&f, &cubic, p), f.elem(-12 * 4));
    }

    #[test]
    fn point_count_of_plane() {
        let f = PrimeField::new(5).unwrap();
        assert_eq!(projective_points(&f).len(), 31);
    }
}
