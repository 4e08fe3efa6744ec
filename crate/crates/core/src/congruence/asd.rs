use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use super::report::{CongruenceReport, ReportRow, Status};
use crate::arith::{padic_valuation, Valuation};

/// Required valuation `e(r) = k r`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ExponentRule {
    pub per_step: i64,
}

impl ExponentRule {
    /// Weight three forms: `e(r) = 2r`.
    pub const WEIGHT_THREE: Self = Self { per_step: 2 };
    /// `e(r) = r`.
    pub const LINEAR: Self = Self { per_step: 1 };

    pub fn required(self, r: u32) -> i64 {
        self.per_step * r as i64
    }
}

/// A sequence `c_0, c_1, ...` known for indices below `known`.
pub trait Coefficients {
    fn known(&self) -> u64;
    fn get(&self, n: u64) -> BigRational;
}

impl Coefficients for crate::qseries::QSeries {
    fn known(&self) -> u64 {
        self.precision().max(0) as u64
    }

    fn get(&self, n: u64) -> BigRational {
        self.coeff(n as i64)
    }
}

impl Coefficients for [BigRational] {
    fn known(&self) -> u64 {
        self.len() as u64
    }

    fn get(&self, n: u64) -> BigRational {
        self[n as usize].clone()
    }
}

/// Checks `v_p(c_{m p^r} - A c_{m p^{r-1}} + B c_{m p^{r-2}}) >= e(r)` for every
/// `m` in `ms` and `1 <= r <= r_max`. Indices `m p^{r-2}` with `r = 1` are
/// treated as zero.
#[allow(clippy::too_many_arguments)]
pub fn check_three_term<C: Coefficients + ?Sized>(
    family: &str,
    coeffs: &C,
    p: u64,
    a: &BigInt,
    b: &BigInt,
    ms: &[u64],
    r_max: u32,
    rule: ExponentRule,
) -> CongruenceReport {
    let mut rows = Vec::new();
    let a = BigRational::from_integer(a.clone());
    let b = BigRational::from_integer(b.clone());
    for &m in ms {
        for r in 1..=r_max {
            let required = Valuation::Finite(rule.required(r));
            let top = m * p.pow(r);
            if top >= coeffs.known() {
                rows.push(
                    ReportRow::valuation(
                        family,
                        p,
                        Some(m),
                        Some(r),
                        required,
                        Valuation::Finite(0),
                        format!("needs c_{top}, known below {}", coeffs.known()),
                    )
                    .with_status(Status::InsufficientData),
                );
                continue;
            }
            let c0 = coeffs.get(top);
            let c1 = coeffs.get(m * p.pow(r - 1));
            let c2 = if r >= 2 {
                coeffs.get(m * p.pow(r - 2))
            } else {
                BigRational::zero()
            };
            let negative = [&c0, &c1, &c2]
                .into_iter()
                .any(|c| padic_valuation(c, p) < Valuation::Finite(0));
            let value = &c0 - &a * &c1 + &b * &c2;
            let achieved = padic_valuation(&value, p);
            let row = ReportRow::valuation(
                family,
                p,
                Some(m),
                Some(r),
                required,
                achieved,
                format!("A={a} B={b}"),
            );
            rows.push(if negative {
                row.with_status(Status::Anomaly)
            } else {
                row
            });
        }
    }
    CongruenceReport::new(rows)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;

    #[test]
    fn p5_first_step() {
        // c_1 = 1, c_5 = -9/8; c_5 - 2 c_1 = -25/8
        let mut c = vec![rat(0, 1); 6];
        c[1] = rat(1, 1);
        c[5] = rat(-9, 8);
        let rep = check_three_term(
            "t",
            c.as_slice(),
            5,
            &BigInt::from(2),
            &BigInt::from(25),
            &[1],
            2,
            ExponentRule::WEIGHT_THREE,
        );
        assert_eq!(rep.rows[0].achieved, Valuation::Finite(2));
        assert!(rep.rows[0].passed());
        assert_eq!(rep.rows[1].status, Status::InsufficientData);
        assert!(!rep.all_pass());
    }

    #[test]
    fn negative_valuation_is_anomaly() {
        let mut c = vec![rat(0, 1); 6];
        c[1] = rat(1, 5);
        let rep = check_three_term(
            "t",
            c.as_slice(),
            5,
            &BigInt::from(0),
            &BigInt::from(0),
            &[1],
            1,
            ExponentRule::LINEAR,
        );
        assert_eq!(rep.rows[0].status, Status::Anomaly);
    }
}
