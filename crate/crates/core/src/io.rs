//! Text surfaces: rational JSON encoding, `A:B[:step]` ranges and the
//! convergence-table CSV.

use std::io::{Read, Write};
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::asym::{ConvergenceRow, Formula};
use crate::binomstats::{decimal_string, parse_rational, ExactRational};
use crate::{Error, Result};

/// Significant digits of the `decimal` field next to exact rationals.
pub const DECIMAL_DIGITS: usize = 15;

/// Wire form of an exact rational: decimal strings for both parts (so no
/// JSON reader rounds them) plus a convenience decimal rendering.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RationalJson {
    pub num: String,
    pub den: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub decimal: Option<String>,
}

impl RationalJson {
    pub fn from_rational(r: &ExactRational) -> Self {
        RationalJson {
            num: r.numer().to_string(),
            den: r.denom().to_string(),
            decimal: Some(decimal_string(r, DECIMAL_DIGITS)),
        }
    }

    /// The `decimal` field is informational and ignored here.
    pub fn to_rational(&self) -> Result<ExactRational> {
        parse_rational(&format!("{}/{}", self.num, self.den))
    }
}

/// `#[serde(with = "crate::io::rational_json")]` for [`ExactRational`].
pub mod rational_json {
    use serde::{de::Error as _, Deserialize, Deserializer, Serialize, Serializer};

    use super::RationalJson;
    use crate::binomstats::ExactRational;

    pub fn serialize<S: Serializer>(r: &ExactRational, s: S) -> Result<S::Ok, S::Error> {
        RationalJson::from_rational(r).serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<ExactRational, D::Error> {
        RationalJson::deserialize(d)?
            .to_rational()
            .map_err(D::Error::custom)
    }

    /// Same encoding for `Option<ExactRational>`, absent as `null`.
    pub mod option {
        use super::*;

        pub fn serialize<S: Serializer>(r: &Option<ExactRational>, s: S) -> Result<S::Ok, S::Error> {
            r.as_ref().map(RationalJson::from_rational).serialize(s)
        }

        pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<ExactRational>, D::Error> {
            Option::<RationalJson>::deserialize(d)?
                .map(|j| j.to_rational().map_err(D::Error::custom))
                .transpose()
        }
    }
}

/// Inclusive arithmetic range `A:B[:step]`; `B` itself is included when
/// `B - A` is a multiple of `step`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct NRange {
    pub start: usize,
    pub end: usize,
    pub step: usize,
}

impl NRange {
    pub fn values(&self) -> impl Iterator<Item = usize> {
        (self.start..=self.end).step_by(self.step)
    }

    pub fn len(&self) -> usize {
        (self.end - self.start) / self.step + 1
    }

    pub fn is_empty(&self) -> bool {
        false
    }
}

impl FromStr for NRange {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.trim().split(':').collect();
        let num = |p: &str| {
            p.trim()
                .parse::<usize>()
                .map_err(|_| Error::parse(format!("bad range bound {p:?} in {s:?}")))
        };
        let (start, end, step) = match parts.as_slice() {
            [a, b] => (num(a)?, num(b)?, 1),
            [a, b, c] => (num(a)?, num(b)?, num(c)?),
            _ => return Err(Error::parse(format!("expected A:B or A:B:step, got {s:?}"))),
        };
        if step == 0 {
            return Err(Error::parse("range step must be positive"));
        }
        if start > end {
            return Err(Error::parse(format!("range start {start} exceeds end {end}")));
        }
        Ok(NRange { start, end, step })
    }
}

pub const TABLE_COLUMNS: [&str; 7] =
    ["n", "exact_num", "exact_den", "exact_decimal", "approx", "ratio", "formula"];

#[derive(Debug, Serialize, Deserialize)]
struct CsvRow {
    n: usize,
    exact_num: Option<String>,
    exact_den: Option<String>,
    exact_decimal: Option<String>,
    approx: f64,
    ratio: Option<f64>,
    formula: Formula,
}

/// Writes rows with header [`TABLE_COLUMNS`]; absent values are empty
/// fields. Floats use the shortest representation that parses back exactly.
pub fn write_table_csv<W: Write>(rows: &[ConvergenceRow], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    for row in rows {
        let exact = row.exact.as_ref().map(RationalJson::from_rational);
        w.serialize(CsvRow {
            n: row.n,
            exact_num: exact.as_ref().map(|e| e.num.clone()),
            exact_den: exact.as_ref().map(|e| e.den.clone()),
            exact_decimal: exact.and_then(|e| e.decimal),
            approx: row.approx,
            ratio: row.ratio,
            formula: row.formula,
        })
        .map_err(|e| Error::parse(format!("CSV write: {e}")))?;
    }
    if rows.is_empty() {
        w.write_record(TABLE_COLUMNS)
            .map_err(|e| Error::parse(format!("CSV write: {e}")))?;
    }
    w.flush().map_err(|e| Error::parse(format!("CSV write: {e}")))?;
    Ok(())
}

pub fn table_csv_string(rows: &[ConvergenceRow]) -> String {
    let mut buf = Vec::new();
    write_table_csv(rows, &mut buf).expect("writing to memory");
    String::from_utf8(buf).expect("CSV is UTF-8")
}

/// Parses what [`write_table_csv`] emits.
pub fn read_table_csv<R: Read>(input: R) -> Result<Vec<ConvergenceRow>> {
    let mut r = csv::Reader::from_reader(input);
    let header = r
        .headers()
        .map_err(|e| Error::parse(format!("CSV header: {e}")))?;
    if header.iter().ne(TABLE_COLUMNS) {
        return Err(Error::parse(format!("unexpected CSV header {header:?}")));
    }
    let mut rows = Vec::new();
    for rec in r.deserialize::<CsvRow>() {
        let rec = rec.map_err(|e| Error::parse(format!("CSV row: {e}")))?;
        let exact = match (rec.exact_num, rec.exact_den) {
            (Some(num), Some(den)) => Some(
                RationalJson {
                    num,
                    den,
                    decimal: None,
                }
                .to_rational()?,
            ),
            (None, None) => None,
            _ => return Err(Error::parse("exact_num and exact_den must both be present or both empty")),
        };
        rows.push(ConvergenceRow {
            n: rec.n,
            exact,
            approx: rec.approx,
            ratio: rec.ratio,
            formula: rec.formula,
        });
    }
    Ok(rows)
}
