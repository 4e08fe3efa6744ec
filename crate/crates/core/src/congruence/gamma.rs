use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigInt;
use num_traits::ToPrimitive;

use crate::arith::{cornacchia, is_prime, kronecker_symbol, rational_mod};
use crate::error::{usage, Error, Result};
use crate::pointcount::{Cover, TraceSource};
use crate::qseries::QSeries;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum GammaSource {
    Extraction,
    PointCount,
    Cm,
    /// Read off the leading coefficients of the weight three form.
    Known,
}

impl fmt::Display for GammaSource {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            GammaSource::Extraction => "extraction",
            GammaSource::PointCount => "pointcount",
            GammaSource::Cm => "cm",
            GammaSource::Known => "known",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GammaValue {
    pub p: u64,
    pub value: i64,
    pub sources: BTreeSet<GammaSource>,
}

/// `gamma(2) = -2`, `gamma(3) = 3`; the lifting bound does not apply there.
pub fn gamma_small(p: u64) -> Option<i64> {
    match p {
        2 => Some(-2),
        3 => Some(3),
        _ => None,
    }
}

fn symbol(a: i64, p: u64) -> i64 {
    kronecker_symbol(a, p as i64).expect("odd prime modulus") as i64
}

/// The integer `gamma` with `|gamma| <= 2p` and `gamma = (-1/p) c_p mod p^2`.
///
/// `Ok(None)` when no integer lies in that band.
pub fn gamma_extract(p: u64, g: &QSeries) -> Result<Option<GammaValue>> {
    if p < 5 || !is_prime(p) {
        return Err(usage(format!(
            "gamma extraction needs a prime p >= 5, got {p}"
        )));
    }
    if g.precision() <= p as i64 {
        return Err(Error::SeriesTooShort {
            needed: p as i64 + 1,
            have: g.precision(),
        });
    }
    let modulus = BigInt::from(p * p);
    let c = rational_mod(&g.coeff(p as i64), &modulus)
        .ok_or_else(|| usage(format!("c_{p} is not {p}-integral")))?;
    let residue = (c * symbol(-1, p))
        .to_i64()
        .expect("below p^2")
        .rem_euclid((p * p) as i64);
    let bound = 2 * p as i64;
    let lifted = [residue, residue - (p * p) as i64]
        .into_iter()
        .find(|v| v.abs() <= bound);
    Ok(lifted.map(|value| GammaValue {
        p,
        value,
        sources: BTreeSet::from([GammaSource::Extraction]),
    }))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CmGamma {
    Value(i64),
    /// `p` is split in `Q(sqrt(-6))` but not by a principal ideal.
    Undetermined,
}

impl fmt::Display for CmGamma {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CmGamma::Value(v) => write!(f, "{v}"),
            CmGamma::Undetermined => f.write_str("undetermined"),
        }
    }
}

/// `2(a^2 - 6b^2)` when `p = a^2 + 6b^2`, `0` when `(-6/p) = -1`.
pub fn gamma_cm(p: u64) -> Result<CmGamma> {
    if p < 5 || !is_prime(p) {
        return Err(usage(format!("CM value needs a prime p >= 5, got {p}")));
    }
    if let Some(rep) = cornacchia(p, 6)? {
        let (a, b) = (rep.a as i64, rep.b as i64);
        return Ok(CmGamma::Value(2 * (a * a - 6 * b * b)));
    }
    if symbol(-6, p) == -1 {
        Ok(CmGamma::Value(0))
    } else {
        Ok(CmGamma::Undetermined)
    }
}

/// The vanishing classes mod 24 as listed with the CM formula, taken literally.
pub const LITERAL_VANISHING_CLASSES: [u64; 6] = [5, 11, 13, 17, 19, 23];

/// `(-1/p) A_p` from the point count on the two-cover.
pub fn gamma_from_trace(traces: &dyn TraceSource, p: u64) -> Result<i64> {
    Ok(symbol(-1, p) * traces.trace(p, Cover::Two)?)
}

/// All three sources for one prime.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GammaCheck {
    pub p: u64,
    pub extraction: Option<i64>,
    pub pointcount: i64,
    pub cm: CmGamma,
}

impl GammaCheck {
    pub fn compute(p: u64, g: &QSeries, traces: &dyn TraceSource) -> Result<Self> {
        Ok(Self {
            p,
            extraction: gamma_extract(p, g)?.map(|v| v.value),
            pointcount: gamma_from_trace(traces, p)?,
            cm: gamma_cm(p)?,
        })
    }

    /// The agreed value, if every available source agrees.
    pub fn agreed(&self) -> Option<GammaValue> {
        let ext = self.extraction?;
        if ext != self.pointcount {
            return None;
        }
        let mut sources = BTreeSet::from([GammaSource::Extraction, GammaSource::PointCount]);
        match self.cm {
            CmGamma::Value(v) if v != ext => return None,
            CmGamma::Value(_) => {
                sources.insert(GammaSource::Cm);
            }
            CmGamma::Undetermined => {}
        }
        Some(GammaValue {
            p: self.p,
            value: ext,
            sources,
        })
    }

    /// Whether the literal vanishing list predicts `gamma = 0 mod p` here, and
    /// whether that prediction holds.
    pub fn literal_reading(&self) -> Option<bool> {
        LITERAL_VANISHING_CLASSES
            .contains(&(self.p % 24))
            .then(|| self.pointcount.rem_euclid(self.p as i64) == 0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pointcount::DirectTraces;
    use crate::qseries::g_series;

    #[test]
    fn extraction_small_primes() {
        let g = g_series(12);
        assert_eq!(gamma_extract(5, &g).unwrap().unwrap().value, 2);
        assert_eq!(gamma_extract(7, &g).unwrap().unwrap().value, -10);
        assert!(matches!(
            gamma_extract(13, &g),
            Err(Error::SeriesTooShort { .. })
        ));
    }

    #[test]
    fn cm_values() {
        assert_eq!(gamma_cm(7).unwrap(), CmGamma::Value(-10));
        assert_eq!(gamma_cm(31).unwrap(), CmGamma::Value(38));
        assert_eq!(gamma_cm(13).unwrap(), CmGamma::Value(0));
        assert_eq!(gamma_cm(5).unwrap(), CmGamma::Undetermined);
        assert_eq!(gamma_cm(11).unwrap(), CmGamma::Undetermined);
    }

    #[test]
    fn three_sources_agree_at_small_primes() {
        let g = g_series(40);
        for p in [5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
            let check = GammaCheck::compute(p, &g, &DirectTraces).unwrap();
            assert!(check.agreed().is_some(), "{check:?}");
        }
    }
}
