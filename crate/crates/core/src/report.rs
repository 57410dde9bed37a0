//! Serialization helpers and the metadata header carried by every report.

use std::collections::BTreeMap;

use num_bigint::{BigInt, BigUint};
use serde::{Serialize, Serializer};

use crate::highprec::Precision;
use crate::search::SolutionTuple;

/// Big integers are written as decimal strings so JSON consumers never lose digits.
pub fn ser_biguint<S: Serializer>(v: &BigUint, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_string())
}

pub fn ser_bigint<S: Serializer>(v: &BigInt, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_string())
}

/// Output format shared by the library reports and the CLI.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Table,
    Json,
    Csv,
}

impl std::str::FromStr for Format {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "table" => Ok(Format::Table),
            "json" => Ok(Format::Json),
            "csv" => Ok(Format::Csv),
            other => Err(format!("unknown format '{other}' (expected table, json or csv)")),
        }
    }
}

/// Provenance block attached to every report. Contains no timestamps, so equal
/// configurations give byte-identical output.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ReportHeader {
    pub tool: &'static str,
    pub version: &'static str,
    pub precision: Precision,
    /// Free-form run configuration, keys sorted.
    pub config: BTreeMap<String, serde_json::Value>,
}

impl ReportHeader {
    pub fn new(precision: Precision) -> Self {
        ReportHeader {
            tool: env!("CARGO_PKG_NAME"),
            version: env!("CARGO_PKG_VERSION"),
            precision,
            config: BTreeMap::new(),
        }
    }

    pub fn with(mut self, key: &str, value: impl Serialize) -> Self {
        self.config
            .insert(key.to_string(), serde_json::to_value(value).expect("serializable config"));
        self
    }

    /// `# key: value` lines for CSV and table output.
    pub fn comment_lines(&self) -> String {
        let mut s = format!(
            "# tool: {} {}\n# precision: {}\n",
            self.tool, self.version, self.precision
        );
        for (k, v) in &self.config {
            match v {
                serde_json::Value::String(text) => s.push_str(&format!("# {k}: {text}\n")),
                other => s.push_str(&format!("# {k}: {other}\n")),
            }
        }
        s
    }
}

/// A header plus a payload; serialized as `{"meta": ..., "data": ...}`.
#[derive(Clone, Debug, Serialize)]
pub struct Report<T: Serialize> {
    pub meta: ReportHeader,
    pub data: T,
}

impl<T: Serialize> Report<T> {
    pub fn new(meta: ReportHeader, data: T) -> Self {
        Report { meta, data }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }
}

/// Solutions as CSV with columns `n,m,l,a,b,value,trivial`, preceded by `#` header lines.
pub fn solutions_csv(meta: &ReportHeader, rows: &[SolutionTuple]) -> String {
    let mut s = meta.comment_lines();
    s.push_str("n,m,l,a,b,value,trivial\n");
    for t in rows {
        s.push_str(&format!("{},{},{},{},{},{},{}\n", t.n, t.m, t.ell, t.a, t.b, t.value, t.trivial));
    }
    s
}

/// Solutions as a fixed-width text table. No rows gives an empty string.
pub fn solutions_table(meta: &ReportHeader, rows: &[SolutionTuple]) -> String {
    if rows.is_empty() {
        return String::new();
    }
    let mut s = meta.comment_lines();
    let w = rows.iter().map(|t| t.value.to_string().len()).max().unwrap_or(5).max(5);
    s.push_str(&format!("{:>4} {:>4} {:>3} {:>3} {:>4} {:>w$} trivial\n", "n", "m", "l", "a", "b", "value"));
    for t in rows {
        s.push_str(&format!(
            "{:>4} {:>4} {:>3} {:>3} {:>4} {:>w$} {}\n",
            t.n, t.m, t.ell, t.a, t.b, t.value, t.trivial
        ));
    }
    s
}

/// Solutions in `format`. JSON is `{"meta": ..., "data": [...]}`.
pub fn render_solutions(meta: &ReportHeader, rows: &[SolutionTuple], format: Format) -> String {
    match format {
        Format::Json => Report::new(meta.clone(), rows).to_json(),
        Format::Csv => solutions_csv(meta, rows),
        Format::Table => solutions_table(meta, rows),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn csv_has_header_and_columns() {
        let meta = ReportHeader::new(Precision::digits(50)).with("nmax", 9);
        let rows = vec![SolutionTuple::new(8, 7, 4, 1, 2)];
        let csv = solutions_csv(&meta, &rows);
        let lines: Vec<&str> = csv.lines().collect();
        assert!(lines[0].starts_with("# tool: narayana"));
        assert!(lines.contains(&"n,m,l,a,b,value,trivial"));
        assert_eq!(*lines.last().unwrap(), "8,7,4,1,2,15,false");
    }

    #[test]
    fn json_keys() {
        let meta = ReportHeader::new(Precision::digits(50));
        let rows = vec![SolutionTuple::new(8, 7, 4, 1, 2)];
        let v: serde_json::Value = serde_json::from_str(&render_solutions(&meta, &rows, Format::Json)).unwrap();
        let row = &v["data"][0];
        assert_eq!(row["l"], 4);
        assert_eq!(row["value"], "15");
        assert_eq!(v["meta"]["precision"], 50);
    }
}
