use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::Zero;
use rayon::prelude::*;

use super::asd::{check_three_term, ExponentRule};
use super::gamma::{gamma_extract, gamma_small};
use super::report::{CongruenceReport, ReportRow, Status};
use crate::arith::{
    char_value, cornacchia, int_valuation, kronecker_symbol, padic_valuation, primes_in, rat,
    QuadraticCharacter, Valuation,
};
use crate::error::{usage, Error, Result};
use crate::pointcount::{expected_det, rho_det_with, Cover, TraceSource};
use crate::qseries::QSeries;
use crate::sequences::{apery_b, f_values};

fn symbol(a: i64, p: u64) -> i64 {
    kronecker_symbol(a, p as i64).expect("odd prime modulus") as i64
}

fn int_diff_valuation(x: &BigInt, y: &BigInt, p: u64) -> Valuation {
    match int_valuation(&(x - y), p) {
        None => Valuation::Infinite,
        Some(v) => Valuation::Finite(v as i64),
    }
}

fn need_series(g: &QSeries, needed: i64) -> Result<()> {
    if g.precision() < needed {
        return Err(Error::SeriesTooShort {
            needed,
            have: g.precision(),
        });
    }
    Ok(())
}

/// `F((p-1)/2) = gamma(p) mod p` for every odd prime `p <= p_max`, with
/// `gamma` extracted from `g`.
pub fn verify_theorem1(p_max: u64, g: &QSeries) -> Result<CongruenceReport> {
    need_series(g, p_max as i64 + 1)?;
    let f = f_values(((p_max.max(3) - 1) / 2) as usize);
    let mut rows = Vec::new();
    for p in primes_in(3, p_max) {
        let fv = &f[((p - 1) / 2) as usize];
        let gamma = match gamma_small(p) {
            Some(v) => Some(v),
            None => gamma_extract(p, g)?.map(|v| v.value),
        };
        let row = match gamma {
            Some(gv) => ReportRow::valuation(
                "theorem1",
                p,
                None,
                None,
                Valuation::Finite(1),
                int_diff_valuation(fv, &BigInt::from(gv), p),
                format!(
                    "F mod p = {}, gamma = {gv}, gamma mod p = {}",
                    fv % p,
                    gv.rem_euclid(p as i64)
                ),
            ),
            None => ReportRow::valuation(
                "theorem1",
                p,
                None,
                None,
                Valuation::Finite(1),
                Valuation::Finite(0),
                "no gamma with |gamma| <= 2p matches c_p mod p^2".to_string(),
            )
            .with_status(Status::Anomaly),
        };
        rows.push(row);
    }
    Ok(CongruenceReport::new(rows))
}

/// `b_{(p-1)/2} = 4a^2 - 2p mod p` when `p = a^2 + b^2` with `a` odd, and
/// `0 mod p` when `p = 3 mod 4`.
pub fn verify_stienstra_beukers(p_min: u64, p_max: u64) -> Result<CongruenceReport> {
    let mut rows = Vec::new();
    for p in primes_in(p_min.max(5), p_max) {
        let b = apery_b((p - 1) / 2);
        let (target, detail) = match cornacchia(p, 1)? {
            Some(rep) => {
                let a = rep.a as i64;
                (4 * a * a - 2 * p as i64, format!("a = {a}"))
            }
            None => (0, "p = 3 mod 4".to_string()),
        };
        rows.push(ReportRow::valuation(
            "stienstra-beukers",
            p,
            None,
            None,
            Valuation::Finite(1),
            int_diff_valuation(&b, &BigInt::from(target), p),
            format!(
                "{detail}, b mod p = {}, target mod p = {}",
                &b % p,
                target.rem_euclid(p as i64)
            ),
        ));
    }
    Ok(CongruenceReport::new(rows))
}

/// The `(m, r)` grid: odd `m <= m_max`, `1 <= r <= r_max`, restricted to
/// `m p^r < limit`.
pub fn odd_ms(m_max: u64) -> Vec<u64> {
    (1..=m_max).step_by(2).collect()
}

fn grid_for(p: u64, ms: &[u64], r_max: u32, limit: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    for &m in ms {
        for r in 1..=r_max {
            if m * p.pow(r) < limit {
                out.push((m, r));
            }
        }
    }
    out
}

fn three_term_on_grid<C: super::asd::Coefficients + ?Sized>(
    family: &str,
    coeffs: &C,
    p: u64,
    a: &BigInt,
    b: &BigInt,
    grid: &[(u64, u32)],
    rule: ExponentRule,
) -> CongruenceReport {
    let mut report = CongruenceReport::default();
    for &(m, r) in grid {
        let rep = check_three_term(family, coeffs, p, a, b, &[m], r, rule);
        report
            .rows
            .extend(rep.rows.into_iter().filter(|row| row.r == Some(r)));
    }
    report
}

/// Weight three ASD relations for the coefficients of `g`, with `A = A_p` and
/// `B = det` from point counts, over odd `m <= m_max`, `r <= r_max` and
/// `m p^r` within the series.
pub fn verify_asd(
    g: &QSeries,
    primes: &[u64],
    m_max: u64,
    r_max: u32,
    traces: &dyn TraceSource,
) -> Result<CongruenceReport> {
    let ms = odd_ms(m_max);
    let limit = g.precision().max(0) as u64;
    let parts: Vec<Result<CongruenceReport>> = primes
        .par_iter()
        .map(|&p| {
            let a = BigInt::from(traces.trace(p, Cover::Two)?);
            let b = BigInt::from(rho_det_with(traces, p)?);
            let grid = grid_for(p, &ms, r_max, limit);
            Ok(three_term_on_grid(
                "asd",
                g,
                p,
                &a,
                &b,
                &grid,
                ExponentRule::WEIGHT_THREE,
            ))
        })
        .collect();
    let mut report = CongruenceReport::default();
    for part in parts {
        report.extend(part?);
    }
    Ok(report.sorted())
}

/// `b_{2n+1} = (-1)^n F(n)`, `b_{2n} = 0`, for indices below `len`.
pub fn transfer_sequence(len: usize) -> Vec<BigRational> {
    let f = f_values(len / 2);
    (0..len)
        .map(|k| {
            if k % 2 == 0 {
                BigRational::zero()
            } else {
                let n = (k - 1) / 2;
                let v = BigRational::from_integer(f[n].clone());
                if n % 2 == 0 {
                    v
                } else {
                    -v
                }
            }
        })
        .collect()
}

/// The `e(r) = r` three-term congruence on [`transfer_sequence`] with
/// `alpha_p = A_p` and `beta_p = det`.
pub fn verify_beukers_transfer(
    len: usize,
    primes: &[u64],
    m_max: u64,
    r_max: u32,
    traces: &dyn TraceSource,
) -> Result<CongruenceReport> {
    let b = transfer_sequence(len);
    let ms = odd_ms(m_max);
    let mut report = CongruenceReport::default();
    for &p in primes {
        let alpha = BigInt::from(traces.trace(p, Cover::Two)?);
        let beta = BigInt::from(rho_det_with(traces, p)?);
        let grid = grid_for(p, &ms, r_max, len as u64);
        report.extend(three_term_on_grid(
            "beukers-transfer",
            b.as_slice(),
            p,
            &alpha,
            &beta,
            &grid,
            ExponentRule::LINEAR,
        ));
    }
    Ok(report.sorted())
}

/// Character sign pattern `((-1/p), (2/p), (3/p))`.
pub fn sign_pattern(p: u64) -> [i8; 3] {
    QuadraticCharacter::BASIS.map(|b| symbol(b, p) as i8)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SerreFaltings {
    pub report: CongruenceReport,
    pub patterns: Vec<(u64, [i8; 3])>,
    pub covered: usize,
}

impl SerreFaltings {
    pub fn all_pass(&self) -> bool {
        self.report.all_pass() && self.covered == 8
    }
}

/// On the primes `31 <= p <= 73`: the sign patterns of the three basis
/// characters, `A_p = (-1/p) gamma(p)` and `det = (-24/p) p^2`.
pub fn serre_faltings_table(g: &QSeries, traces: &dyn TraceSource) -> Result<SerreFaltings> {
    serre_faltings_on(&primes_in(31, 73), g, traces)
}

pub fn serre_faltings_on(
    primes: &[u64],
    g: &QSeries,
    traces: &dyn TraceSource,
) -> Result<SerreFaltings> {
    let max = primes.iter().copied().max().unwrap_or(0);
    need_series(g, max as i64 + 1)?;
    let rows: Vec<Result<Vec<ReportRow>>> = primes
        .par_iter()
        .map(|&p| {
            let a = traces.trace(p, Cover::Two)?;
            let gamma = gamma_extract(p, g)?.map(|v| v.value);
            let trace_row = match gamma {
                Some(gv) => {
                    let predicted = symbol(-1, p) * gv;
                    ReportRow::valuation(
                        "serre-faltings-trace",
                        p,
                        None,
                        None,
                        Valuation::Infinite,
                        int_diff_valuation(&BigInt::from(a), &BigInt::from(predicted), p),
                        format!("A_p = {a}, (-1/p) gamma = {predicted}"),
                    )
                }
                None => ReportRow::valuation(
                    "serre-faltings-trace",
                    p,
                    None,
                    None,
                    Valuation::Infinite,
                    Valuation::Finite(0),
                    format!("A_p = {a}, gamma not extractable"),
                )
                .with_status(Status::Anomaly),
            };
            let det = rho_det_with(traces, p)?;
            let want = expected_det(p)?;
            let det_row = ReportRow::valuation(
                "serre-faltings-det",
                p,
                None,
                None,
                Valuation::Infinite,
                int_diff_valuation(&BigInt::from(det), &BigInt::from(want), p),
                format!("det = {det}, (-24/p) p^2 = {want}"),
            );
            Ok(vec![trace_row, det_row])
        })
        .collect();
    let mut report = CongruenceReport::default();
    for r in rows {
        report.rows.extend(r?);
    }
    let patterns: Vec<(u64, [i8; 3])> = primes.iter().map(|&p| (p, sign_pattern(p))).collect();
    let covered = patterns
        .iter()
        .map(|(_, s)| *s)
        .collect::<BTreeSet<_>>()
        .len();
    Ok(SerreFaltings {
        report: report.sorted(),
        patterns,
        covered,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TwistOutcome {
    /// The twisted relation fails at `(p, m, r)`.
    Witness {
        p: u64,
        m: u64,
        r: u32,
        achieved: Valuation,
    },
    /// Every searched prime with `chi(p) = -1` has `A_p = 0`, so the twisted
    /// and untwisted relations coincide.
    SelfTwist { checked: Vec<u64> },
    /// Neither a witness nor self-twist behaviour.
    NotFound,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwistWitness {
    pub chi: QuadraticCharacter,
    pub outcome: TwistOutcome,
}

impl TwistWitness {
    pub fn is_anomaly(&self) -> bool {
        matches!(self.outcome, TwistOutcome::NotFound)
    }
}

impl fmt::Display for TwistWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.outcome {
            TwistOutcome::Witness { p, m, r, achieved } => write!(
                f,
                "{}: witness (p, m, r) = ({p}, {m}, {r}), twisted valuation {achieved} < 2",
                self.chi
            ),
            TwistOutcome::SelfTwist { checked } => write!(
                f,
                "{}: self-twist, A_p = 0 at all {} primes with chi(p) = -1 up to the bound",
                self.chi,
                checked.len()
            ),
            TwistOutcome::NotFound => write!(f, "{}: ANOMALY, no witness found", self.chi),
        }
    }
}

/// For each nontrivial character `chi`, looks for the first prime `p >= 5`
/// with `chi(p) = -1` where `c_p = chi(p) A_p mod p^2` fails.
pub fn twist_elimination(
    g: &QSeries,
    p_search_max: u64,
    traces: &dyn TraceSource,
) -> Result<Vec<TwistWitness>> {
    need_series(g, p_search_max as i64 + 1)?;
    let primes = primes_in(5, p_search_max);
    let mut out = Vec::new();
    for chi in QuadraticCharacter::all()
        .into_iter()
        .filter(|c| !c.is_trivial())
    {
        let mut checked = Vec::new();
        let mut outcome = None;
        for &p in &primes {
            let value = char_value(&chi, p)? as i64;
            if value != -1 {
                continue;
            }
            let a = traces.trace(p, Cover::Two)?;
            let twisted = g.coeff(p as i64) - rat(value * a, 1);
            let achieved = padic_valuation(&twisted, p);
            if achieved < Valuation::Finite(2) {
                outcome = Some(TwistOutcome::Witness {
                    p,
                    m: 1,
                    r: 1,
                    achieved,
                });
                break;
            }
            if a != 0 {
                outcome = Some(TwistOutcome::NotFound);
                break;
            }
            checked.push(p);
        }
        let outcome = match outcome {
            Some(o) => o,
            None if checked.is_empty() => TwistOutcome::NotFound,
            None => TwistOutcome::SelfTwist { checked },
        };
        out.push(TwistWitness { chi, outcome });
    }
    Ok(out)
}

/// Twist outcomes as report rows; a row passes when the character is
/// eliminated (witness) or shown to be a self-twist.
pub fn twist_report(witnesses: &[TwistWitness]) -> CongruenceReport {
    let rows = witnesses
        .iter()
        .map(|w| {
            let family = format!("twist{}", w.chi);
            match &w.outcome {
                TwistOutcome::Witness { p, m, r, achieved } => ReportRow {
                    family,
                    p: *p,
                    m: Some(*m),
                    r: Some(*r),
                    required: Valuation::Finite(2),
                    achieved: *achieved,
                    status: Status::Pass,
                    detail: "twisted relation fails: witness".to_string(),
                },
                TwistOutcome::SelfTwist { checked } => ReportRow {
                    family,
                    p: checked.last().copied().unwrap_or(0),
                    m: None,
                    r: None,
                    required: Valuation::Finite(2),
                    achieved: Valuation::Infinite,
                    status: Status::Pass,
                    detail: format!("self-twist: A_p = 0 at {} primes", checked.len()),
                },
                TwistOutcome::NotFound => ReportRow {
                    family,
                    p: 0,
                    m: None,
                    r: None,
                    required: Valuation::Finite(2),
                    achieved: Valuation::Infinite,
                    status: Status::Anomaly,
                    detail: "no witness and not a self-twist".to_string(),
                },
            }
        })
        .collect();
    CongruenceReport::new(rows)
}

/// `F((p-1)/3) = A_p mod p` on the three-cover, for primes `p = 1 mod 3`.
///
/// Each prime also gets a `three-cover-sum` row for
/// `A_p = F((p-1)/3) + F(2(p-1)/3) mod p`, which is what the fiberwise Hasse
/// invariants predict for the full trace.
pub fn verify_three_cover(p_max: u64, traces: &dyn TraceSource) -> Result<CongruenceReport> {
    let primes: Vec<u64> = primes_in(7, p_max)
        .into_iter()
        .filter(|p| p % 3 == 1)
        .collect();
    let f = f_values((2 * p_max.max(1) / 3) as usize);
    let rows: Vec<Result<[ReportRow; 2]>> = primes
        .par_iter()
        .map(|&p| {
            let a = BigInt::from(traces.trace(p, Cover::Three)?);
            let third = ((p - 1) / 3) as usize;
            let (f1, f2) = (&f[third], &f[2 * third]);
            Ok([
                ReportRow::valuation(
                    "three-cover",
                    p,
                    None,
                    None,
                    Valuation::Finite(1),
                    int_diff_valuation(f1, &a, p),
                    format!(
                        "F((p-1)/3) mod p = {}, A_p = {a}, A_p mod p = {}",
                        f1 % p,
                        a.mod_floor(&BigInt::from(p))
                    ),
                ),
                ReportRow::valuation(
                    "three-cover-sum",
                    p,
                    None,
                    None,
                    Valuation::Finite(1),
                    int_diff_valuation(&(f1 + f2), &a, p),
                    format!("F(2(p-1)/3) mod p = {}", f2 % p),
                ),
            ])
        })
        .collect();
    let mut out = Vec::new();
    for r in rows {
        out.extend(r?);
    }
    Ok(CongruenceReport::new(out).sorted())
}

/// `(k-1)(g-1) + (k-2) r1 / 2 + (k-1) r2 / 2 + sum (e_i - 1) / (2 e_i)` for
/// odd `k`, with `r1` regular and `r2` irregular cusps.
pub fn dim_cusp_forms(
    k: u64,
    genus: u64,
    regular: u64,
    irregular: u64,
    elliptic: &[u64],
) -> Result<BigRational> {
    if k.is_multiple_of(2) {
        return Err(usage(format!("weight must be odd, got {k}")));
    }
    if elliptic.contains(&0) {
        return Err(usage("elliptic orders must be positive"));
    }
    let k = k as i64;
    let mut d = rat((k - 1) * (genus as i64 - 1), 1)
        + rat((k - 2) * regular as i64, 2)
        + rat((k - 1) * irregular as i64, 2);
    for &e in elliptic {
        d += rat(e as i64 - 1, 2 * e as i64);
    }
    Ok(d)
}

/// Whether `x^3 + 3x - 2` has no root mod `p`, i.e. is irreducible over `F_p`.
pub fn cubic_inert_check(p: u64) -> bool {
    (0..p).all(|x| !(x * x * x + 3 * x + 2 * p - 2).is_multiple_of(p))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pointcount::MemoTraces;
    use crate::qseries::g_series;

    #[test]
    fn theorem1_small() {
        let g = g_series(40);
        let rep = verify_theorem1(37, &g).unwrap();
        assert!(rep.all_pass(), "{}", rep.to_text());
        assert_eq!(rep.rows[0].p, 3);
    }

    #[test]
    fn stienstra_beukers_small() {
        let rep = verify_stienstra_beukers(5, 40).unwrap();
        assert!(rep.all_pass(), "{}", rep.to_text());
        assert_eq!(apery_b(3), BigInt::from(147));
    }

    #[test]
    fn asd_small() {
        let g = g_series(200);
        let rep = verify_asd(&g, &[5, 7], 9, 2, &MemoTraces::default()).unwrap();
        assert!(rep.all_pass(), "{}", rep.to_text());
        assert!(rep.rows.iter().any(|r| r.p == 7 && r.r == Some(2)));
    }

    #[test]
    fn twists_at_small_bound() {
        let g = g_series(60);
        let w = twist_elimination(&g, 59, &MemoTraces::default()).unwrap();
        assert_eq!(w.len(), 7);
        let two = w
            .iter()
            .find(|w| w.chi == QuadraticCharacter::new(0, 1, 0))
            .unwrap();
        assert!(matches!(two.outcome, TwistOutcome::Witness { p: 5, .. }));
        let minus_one = w
            .iter()
            .find(|w| w.chi == QuadraticCharacter::new(1, 0, 0))
            .unwrap();
        assert!(matches!(
            minus_one.outcome,
            TwistOutcome::Witness { p: 7, .. }
        ));
        let cm = w
            .iter()
            .find(|w| w.chi == QuadraticCharacter::new(1, 1, 1))
            .unwrap();
        assert!(matches!(cm.outcome, TwistOutcome::SelfTwist { .. }));
    }

    #[test]
    fn dims() {
        assert_eq!(dim_cusp_forms(3, 0, 6, 0, &[]).unwrap(), rat(1, 1));
        assert_eq!(dim_cusp_forms(3, 1, 0, 0, &[]).unwrap(), rat(0, 1));
        assert_eq!(dim_cusp_forms(5, 0, 6, 0, &[]).unwrap(), rat(5, 1));
        assert!(dim_cusp_forms(4, 0, 6, 0, &[]).is_err());
    }

    #[test]
    fn inertness() {
        assert!(cubic_inert_check(7));
        assert!(!cubic_inert_check(2));
        assert!(!cubic_inert_check(3));
    }

    #[test]
    fn three_cover_small() {
        let rep = verify_three_cover(31, &MemoTraces::default()).unwrap();
        assert_eq!(rep.rows.len(), 8);
        assert!(rep
            .rows
            .iter()
            .filter(|r| r.family == "three-cover-sum")
            .all(|r| r.passed()));
        let literal: Vec<bool> = rep
            .rows
            .iter()
            .filter(|r| r.family == "three-cover")
            .map(|r| r.passed())
            .collect();
        assert_eq!(literal, [true, false, false, false]);
    }
}
