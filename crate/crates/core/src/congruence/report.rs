use std::fmt;

use serde::Serialize;

use crate::arith::Valuation;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Pass,
    Fail,
    /// The coefficients needed for the row are beyond the series truncation.
    InsufficientData,
    /// Something the check assumes does not hold (e.g. a coefficient that is
    /// not `p`-integral).
    Anomaly,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "pass",
            Status::Fail => "FAIL",
            Status::InsufficientData => "insufficient-data",
            Status::Anomaly => "ANOMALY",
        })
    }
}

/// One checked instance: `v_p(expression) >= required`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReportRow {
    pub family: String,
    pub p: u64,
    pub m: Option<u64>,
    pub r: Option<u32>,
    pub required: Valuation,
    pub achieved: Valuation,
    pub status: Status,
    pub detail: String,
}

impl ReportRow {
    /// A valuation check; status follows from the two valuations.
    pub fn valuation(
        family: &str,
        p: u64,
        m: Option<u64>,
        r: Option<u32>,
        required: Valuation,
        achieved: Valuation,
        detail: String,
    ) -> Self {
        let status = if achieved >= required {
            Status::Pass
        } else {
            Status::Fail
        };
        Self {
            family: family.to_string(),
            p,
            m,
            r,
            required,
            achieved,
            status,
            detail,
        }
    }

    pub fn with_status(mut self, status: Status) -> Self {
        self.status = status;
        self
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
}

/// Structured form of a row: `{family, p, m, r, required, achieved, pass}`.
#[derive(Clone, Debug, Serialize)]
pub struct RowRecord {
    pub family: String,
    pub p: u64,
    pub m: Option<u64>,
    pub r: Option<u32>,
    pub required: String,
    pub achieved: String,
    pub pass: bool,
}

impl From<&ReportRow> for RowRecord {
    fn from(row: &ReportRow) -> Self {
        Self {
            family: row.family.clone(),
            p: row.p,
            m: row.m,
            r: row.r,
            required: row.required.to_string(),
            achieved: row.achieved.to_string(),
            pass: row.passed(),
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CongruenceReport {
    pub rows: Vec<ReportRow>,
}

impl CongruenceReport {
    pub fn new(rows: Vec<ReportRow>) -> Self {
        Self { rows }
    }

    pub fn all_pass(&self) -> bool {
        self.rows.iter().all(ReportRow::passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &ReportRow> {
        self.rows.iter().filter(|r| !r.passed())
    }

    pub fn extend(&mut self, other: CongruenceReport) {
        self.rows.extend(other.rows);
    }

    /// Rows sorted by `(family, p, m, r)`.
    pub fn sorted(mut self) -> Self {
        self.rows
            .sort_by(|a, b| (&a.family, a.p, a.m, a.r).cmp(&(&b.family, b.p, b.m, b.r)));
        self
    }
}

fn opt<T: fmt::Display>(v: &Option<T>) -> String {
    v.as_ref().map_or_else(|| "-".to_string(), T::to_string)
}

impl CongruenceReport {
    pub fn to_text(&self) -> String {
        let mut out = format!(
            "{:<22} {:>5} {:>5} {:>3} {:>8} {:>8}  {:<17} {}\n",
            "family", "p", "m", "r", "required", "achieved", "status", "detail"
        );
        for row in &self.rows {
            out.push_str(&format!(
                "{:<22} {:>5} {:>5} {:>3} {:>8} {:>8}  {:<17} {}\n",
                row.family,
                row.p,
                opt(&row.m),
                opt(&row.r),
                row.required.to_string(),
                row.achieved.to_string(),
                row.status.to_string(),
                row.detail
            ));
        }
        out
    }

    /// One JSON object per line.
    pub fn to_records(&self) -> String {
        self.rows
            .iter()
            .map(|r| serde_json::to_string(&RowRecord::from(r)).expect("plain record") + "\n")
            .collect()
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("family,p,m,r,required,achieved,pass\n");
        for row in &self.rows {
            let rec = RowRecord::from(row);
            out.push_str(&format!(
                "{},{},{},{},{},{},{}\n",
                rec.family,
                rec.p,
                rec.m.map_or(String::new(), |v| v.to_string()),
                rec.r.map_or(String::new(), |v| v.to_string()),
                rec.required,
                rec.achieved,
                rec.pass
            ));
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn status_follows_valuations() {
        let row = ReportRow::valuation(
            "x",
            5,
            Some(1),
            Some(1),
            Valuation::Finite(2),
            Valuation::Infinite,
            String::new(),
        );
        assert!(row.passed());
        let row = ReportRow::valuation(
            "x",
            5,
            None,
            None,
            Valuation::Finite(2),
            Valuation::Finite(1),
            String::new(),
        );
        assert_eq!(row.status, Status::Fail);
    }

    #[test]
    fn record_line() {
        let rep = CongruenceReport::new(vec![ReportRow::valuation(
            "asd",
            7,
            Some(1),
            Some(1),
            Valuation::Finite(2),
            Valuation::Finite(2),
            String::new(),
        )]);
        assert_eq!(
            rep.to_records(),
            "{\"family\":\"asd\",\"p\":7,\"m\":1,\"r\":1,\"required\":\"2\",\"achieved\":\"2\",\"pass\":true}\n"
        );
        assert_eq!(rep.to_csv().lines().nth(1), Some("asd,7,1,1,2,2,true"));
    }
}
