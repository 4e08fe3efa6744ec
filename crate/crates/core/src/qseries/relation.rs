use num_rational::BigRational;
use num_traits::{One, Zero};

use super::modular::{j_series, s_series};
use super::series::QSeries;
use crate::arith::rat;
use crate::error::{Error, Result};

/// A polynomial relation `sum a[l][k] s^k j^l = 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SjRelation {
    /// `coeffs[l][k]` multiplies `s^k j^l`.
    pub coeffs: Vec<Vec<BigRational>>,
    /// Order in `w` to which the relation was checked after it was found.
    pub verified_to: i64,
}

impl SjRelation {
    pub fn deg_j(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn deg_s(&self) -> usize {
        self.coeffs
            .iter()
            .filter_map(|row| row.iter().rposition(|c| !c.is_zero()))
            .max()
            .unwrap_or(0)
    }

    /// Evaluates the relation on given `s` and `j` series.
    pub fn evaluate(&self, s: &QSeries, j: &QSeries) -> QSeries {
        evaluate_bivariate(&self.coeffs, s, j)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RelationSearch {
    Found(SjRelation),
    NoneInBounds,
}

fn evaluate_bivariate(coeffs: &[Vec<BigRational>], s: &QSeries, j: &QSeries) -> QSeries {
    let mut total: Option<QSeries> = None;
    let mut j_pow = QSeries::one(s.precision().max(j.precision()) + 64);
    for row in coeffs {
        let poly = evaluate_poly(row, s);
        let term = poly.mul(&j_pow);
        total = Some(match total {
            None => term,
            Some(acc) => acc.add(&term),
        });
        j_pow = j_pow.mul(j);
    }
    total.unwrap_or_else(|| QSeries::zero(s.precision()))
}

/// Horner evaluation of `sum coeffs[k] s^k`.
fn evaluate_poly(coeffs: &[BigRational], s: &QSeries) -> QSeries {
    let mut acc = QSeries::zero(s.precision());
    for c in coeffs.iter().rev() {
        acc = acc
            .mul(s)
            .add(&QSeries::monomial(0, c.clone(), s.precision()));
    }
    acc
}

/// Column-by-column elimination. Returns the first column that depends on the
/// earlier ones, with the dependency written over all columns seen so far.
fn first_dependency(columns: &[Vec<BigRational>]) -> Option<Vec<BigRational>> {
    // each basis entry: reduced vector, its pivot row, and its expression in
    // the original columns
    let mut basis: Vec<(Vec<BigRational>, usize, Vec<BigRational>)> = Vec::new();
    for (idx, col) in columns.iter().enumerate() {
        let mut v = col.clone();
        let mut expr = vec![BigRational::zero(); columns.len()];
        expr[idx] = BigRational::one();
        for (b, pivot, bexpr) in &basis {
            if v[*pivot].is_zero() {
                continue;
            }
            let factor = &v[*pivot] / &b[*pivot];
            for (x, y) in v.iter_mut().zip(b) {
                if !y.is_zero() {
                    *x -= &factor * y;
                }
            }
            for (x, y) in expr.iter_mut().zip(bexpr) {
                if !y.is_zero() {
                    *x -= &factor * y;
                }
            }
        }
        match v.iter().position(|x| !x.is_zero()) {
            None => {
                expr.truncate(idx + 1);
                return Some(expr);
            }
            Some(pivot) => basis.push((v, pivot, expr)),
        }
    }
    None
}

/// Searches for a polynomial relation between `s` and `j` with
/// `deg_s(rel) <= deg_s`, `deg_j(rel) <= deg_j`, using `w`-expansions known
/// mod `w^precision`.
///
/// Monomials are ordered by `j`-degree, then `s`-degree, and the first
/// dependent one fixes the relation, so the result has minimal `j`-degree and,
/// within it, minimal `s`-degree of the top `j`-coefficient. The relation is
/// then re-checked to twice the precision.
pub fn derive_sj_relation(deg_s: usize, deg_j: usize, precision: i64) -> Result<RelationSearch> {
    let needed = 2 * (deg_s as i64 + 13 * deg_j as i64);
    if precision <= needed {
        return Err(Error::InsufficientTruncation(format!(
            "s-j relation with deg_s <= {deg_s}, deg_j <= {deg_j} needs precision > {needed}, got {precision}"
        )));
    }
    let s = s_series(precision);
    let j = j_series(precision);
    let low = -2 * deg_j as i64;

    let mut s_pows = vec![QSeries::one(precision)];
    for k in 1..=deg_s {
        s_pows.push(s_pows[k - 1].mul(&s));
    }
    let mut columns = Vec::new();
    let mut labels = Vec::new();
    let mut j_pow = QSeries::one(precision);
    for l in 0..=deg_j {
        for (k, sp) in s_pows.iter().enumerate() {
            let m = sp.mul(&j_pow);
            // every column must be known on the same window [low, top)
            let top = m.precision();
            if top <= 0 {
                return Err(Error::InsufficientTruncation(format!(
                    "s^{k} j^{l} known only below w^{top}"
                )));
            }
            columns.push(m);
            labels.push((l, k));
        }
        j_pow = j_pow.mul(&j);
    }
    let top = columns
        .iter()
        .map(QSeries::precision)
        .min()
        .unwrap_or(precision);
    let dense: Vec<Vec<BigRational>> = columns
        .iter()
        .map(|c| (low..top).map(|e| c.coeff(e)).collect())
        .collect();

    let Some(expr) = first_dependency(&dense) else {
        return Ok(RelationSearch::NoneInBounds);
    };

    let used_j = labels[expr.len() - 1].0;
    let mut coeffs = vec![vec![BigRational::zero(); deg_s + 1]; used_j + 1];
    for (c, &(l, k)) in expr.iter().zip(&labels) {
        coeffs[l][k] = c.clone();
    }
    normalize(&mut coeffs);

    let check = 2 * precision;
    let residual = evaluate_bivariate(&coeffs, &s_series(check), &j_series(check));
    if !residual.is_zero() {
        return Err(Error::InsufficientTruncation(format!(
            "relation found at precision {precision} fails at {:?}",
            residual.valuation()
        )));
    }
    Ok(RelationSearch::Found(SjRelation {
        coeffs,
        verified_to: residual.precision(),
    }))
}

/// Scales so the highest power of `s` in the `j^0` part has coefficient 1.
fn normalize(coeffs: &mut [Vec<BigRational>]) {
    let pivot = coeffs
        .iter()
        .flat_map(|row| row.iter().rev())
        .find(|c| !c.is_zero())
        .cloned();
    if let Some(p) = pivot {
        for row in coeffs.iter_mut() {
            for c in row.iter_mut() {
                *c = &*c / &p;
            }
        }
    }
}

fn poly_mul(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (k, y) in b.iter().enumerate() {
            out[i + k] += x * y;
        }
    }
    out
}

fn poly_pow(a: &[BigRational], e: u32) -> Vec<BigRational> {
    let mut acc = vec![BigRational::one()];
    for _ in 0..e {
        acc = poly_mul(&acc, a);
    }
    acc
}

/// A candidate relation between `s` and `j`, kept for comparison with the
/// derived one:
///
/// `(s^2 - 1/6)^3 (s^6 - 7/2 s^4 + 3/4 s^2 - 1/24)^3
///   + 1/72 (s - 1/3)^2 (s + 1/3)^2 s^12 (s^2 - 1/8)^3 j = 0`.
pub fn printed_relation() -> Vec<Vec<BigRational>> {
    let zero = || rat(0, 1);
    let a = poly_pow(&[rat(-1, 6), zero(), rat(1, 1)], 3);
    let b = poly_pow(
        &[
            rat(-1, 24),
            zero(),
            rat(3, 4),
            zero(),
            rat(-7, 2),
            zero(),
            rat(1, 1),
        ],
        3,
    );
    let j0 = poly_mul(&a, &b);
    let mut j1 = vec![rat(1, 72)];
    j1 = poly_mul(&j1, &poly_pow(&[rat(-1, 3), rat(1, 1)], 2));
    j1 = poly_mul(&j1, &poly_pow(&[rat(1, 3), rat(1, 1)], 2));
    let mut s12 = vec![zero(); 13];
    s12[12] = rat(1, 1);
    j1 = poly_mul(&j1, &s12);
    j1 = poly_mul(&j1, &poly_pow(&[rat(-1, 8), zero(), rat(1, 1)], 3));
    vec![j0, j1]
}

/// The printed relation evaluated on the `w`-expansions of `s` and `j`.
pub fn printed_relation_residual(precision: i64) -> QSeries {
    evaluate_bivariate(
        &printed_relation(),
        &s_series(precision),
        &j_series(precision),
    )
}

/// Plain-text rendering of a relation, one `j`-power per line.
pub fn format_relation(coeffs: &[Vec<BigRational>]) -> String {
    let mut out = String::new();
    for (l, row) in coeffs.iter().enumerate() {
        let terms: Vec<String> = row
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| format!("({c})*s^{k}"))
            .collect();
        out.push_str(&format!("j^{l}: {}\n", terms.join(" + ")));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn int(v: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(v))
    }

    #[test]
    fn trivial_bounds_have_no_relation() {
        assert_eq!(
            derive_sj_relation(0, 0, 20).unwrap(),
            RelationSearch::NoneInBounds
        );
        assert_eq!(
            derive_sj_relation(6, 0, 40).unwrap(),
            RelationSearch::NoneInBounds
        );
    }

    #[test]
    fn insufficient_precision_is_an_error() {
        assert!(matches!(
            derive_sj_relation(24, 1, 60),
            Err(Error::InsufficientTruncation(_))
        ));
    }

    #[test]
    fn printed_relation_constant_term() {
        let r = printed_relation_residual(16);
        // (-1/6)^3 (-1/24)^3 = 1/12^6 survives at w^0
        assert_eq!(r.valuation(), Some(0));
        assert_eq!(r.coeff(0), rat(1, 2_985_984));
    }

    #[test]
    fn first_dependency_finds_kernel() {
        let cols = vec![
            vec![int(1), int(0)],
            vec![int(0), int(1)],
            vec![int(2), int(3)],
        ];
        let e = first_dependency(&cols).unwrap();
        assert_eq!(e, vec![int(-2), int(-3), int(1)]);
    }
}
