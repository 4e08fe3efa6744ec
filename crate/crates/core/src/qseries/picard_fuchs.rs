use num_bigint::BigInt;
use num_rational::BigRational;

use super::series::QSeries;
use crate::sequences::{f_closed, RecurrenceTriple};

/// A linear differential operator `sum_j t^j Q_j(D)` with integer polynomial
/// coefficients `Q_j`, where `D` is either `t d/dt` or `d/dt`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ThetaOperator {
    /// `terms[j][k]` is the coefficient of `t^j D^k`.
    pub terms: Vec<Vec<i64>>,
}

impl ThetaOperator {
    /// `(8t+1)(9t+1) D^2 + t(144t+17) D + 6t(12t+1)`, expanded.
    pub fn f_sequence() -> Self {
        Self {
            terms: vec![vec![0, 0, 1], vec![6, 17, 17], vec![72, 144, 72]],
        }
    }

    /// Applies the operator reading `D` as `t d/dt`.
    pub fn apply_theta(&self, p: &QSeries) -> QSeries {
        let mut derivs = vec![p.clone()];
        let order = self.terms.iter().map(Vec::len).max().unwrap_or(0);
        for k in 1..order {
            derivs.push(derivs[k - 1].theta());
        }
        self.combine(&derivs)
    }

    /// Applies the operator reading `D` as the ordinary derivative `d/dt`.
    pub fn apply_ordinary(&self, p: &QSeries) -> QSeries {
        let mut derivs = vec![p.clone()];
        let order = self.terms.iter().map(Vec::len).max().unwrap_or(0);
        for k in 1..order {
            derivs.push(derivs[k - 1].derivative());
        }
        self.combine(&derivs)
    }

    fn combine(&self, derivs: &[QSeries]) -> QSeries {
        let precision = derivs.iter().map(QSeries::precision).min().unwrap_or(0);
        let mut total = QSeries::zero(precision);
        for (j, poly) in self.terms.iter().enumerate() {
            for (k, &c) in poly.iter().enumerate() {
                if c != 0 {
                    let term = derivs[k]
                        .scale(&BigRational::from_integer(BigInt::from(c)))
                        .shift(j as i64)
                        .truncate(precision);
                    total = total.add(&term);
                }
            }
        }
        total
    }

    /// Reads off the three-term recurrence for `u_n = (-1)^n [t^n] P` when
    /// the operator has the shape `D^2 + t Q_1(D) + t^2 Q_2(D)`.
    pub fn recurrence(&self) -> Option<RecurrenceTriple> {
        if self.terms.len() != 3 || self.terms[0] != [0, 0, 1] {
            return None;
        }
        let q1 = &self.terms[1];
        let q2 = &self.terms[2];
        // Q_1(n) = A n^2 + A n + B
        let (b, a) = (q1[0], q1[1]);
        if q1.len() != 3 || q1[2] != a {
            return None;
        }
        // Q_2(n - 1) = C n^2
        let (c0, c1, c2) = (q2[0], q2[1], q2[2]);
        let shifted = [c0 - c1 + c2, c1 - 2 * c2, c2];
        if shifted[0] != 0 || shifted[1] != 0 {
            return None;
        }
        Some(RecurrenceTriple::new(a, b, shifted[2]))
    }
}

/// `sum_{n < precision} (-1)^n F(n) t^n` using the closed form for `F`.
pub fn p_in_t(precision: i64) -> QSeries {
    QSeries::from_coeffs(
        (0..precision.max(0)).map(|n| {
            let f = f_closed(n as u64);
            (
                n,
                BigRational::from_integer(if n % 2 == 0 { f } else { -f }),
            )
        }),
        precision,
    )
}

/// Residuals of the Picard-Fuchs operator on `P(t)` under both readings.
#[derive(Clone, Debug)]
pub struct PicardFuchsCheck {
    pub theta_residual: QSeries,
    pub ordinary_residual: QSeries,
}

impl PicardFuchsCheck {
    pub fn theta_vanishes(&self) -> bool {
        self.theta_residual.is_zero()
    }
}

/// Applies the operator to `P(t)` known mod `t^precision`.
pub fn verify_picard_fuchs(precision: i64) -> PicardFuchsCheck {
    let op = ThetaOperator::f_sequence();
    let p = p_in_t(precision);
    PicardFuchsCheck {
        theta_residual: op.apply_theta(&p),
        ordinary_residual: op.apply_ordinary(&p),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;

    #[test]
    fn theta_reading_vanishes() {
        let check = verify_picard_fuchs(60);
        assert!(check.theta_vanishes());
        assert_eq!(check.theta_residual.precision(), 60);
        assert_eq!(check.theta_residual.coeff(0), rat(0, 1));
    }

    #[test]
    fn ordinary_reading_fails_at_constant_term() {
        let check = verify_picard_fuchs(10);
        // P''(0) = 2 * F(2)
        assert_eq!(check.ordinary_residual.coeff(0), rat(84, 1));
    }

    #[test]
    fn extracted_recurrence() {
        assert_eq!(
            ThetaOperator::f_sequence().recurrence(),
            Some(RecurrenceTriple::F)
        );
        let apery = ThetaOperator {
            terms: vec![vec![0, 0, 1], vec![3, 11, 11], vec![-1, -2, -1]],
        };
        assert_eq!(apery.recurrence(), Some(RecurrenceTriple::APERY_B));
    }
}
