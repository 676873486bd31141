use std::io::{self, Write};

use serde::ser::{SerializeMap, SerializeSeq};
use serde::{Serialize, Serializer};

use crate::args::Format;

const SIGNIFICANT_DIGITS: usize = 12;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Cell {
    Int(i64),
    Num(f64),
}

impl Cell {
    fn csv(self) -> String {
        match self {
            Cell::Int(v) => v.to_string(),
            Cell::Num(v) => format_significant(v, SIGNIFICANT_DIGITS),
        }
    }
}

impl Serialize for Cell {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match *self {
            Cell::Int(v) => s.serialize_i64(v),
            Cell::Num(v) => s.serialize_f64(v),
        }
    }
}

/// Rows under a fixed header.
#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn new(columns: Vec<&'static str>) -> Self {
        Self {
            columns,
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }
}

struct Record<'a> {
    columns: &'a [&'static str],
    row: &'a [Cell],
}

impl Serialize for Record<'_> {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut map = s.serialize_map(Some(self.columns.len()))?;
        for (k, v) in self.columns.iter().zip(self.row) {
            map.serialize_entry(k, v)?;
        }
        map.end()
    }
}

impl Serialize for Table {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(self.rows.len()))?;
        for row in &self.rows {
            seq.serialize_element(&Record {
                columns: &self.columns,
                row,
            })?;
        }
        seq.end()
    }
}

/// Run parameters and diagnostics.
#[derive(Debug, Clone, Default, Serialize)]
pub struct Meta {
    pub subcommand: &'static str,
    pub steps: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub walk: Option<String>,
    pub sign: Option<String>,
    pub initial: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub normalize_each_step: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub view: Option<String>,
    /// Norm of the raw image at each step, before any renormalization.
    pub prior_norms: Vec<f64>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub survival: Vec<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sampling: Option<SamplingMeta>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub fitted_log_log_slope: Option<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct SamplingMeta {
    pub samples: u64,
    pub seed: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub same: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub different: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub position_points: Option<u64>,
}

#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub meta: Meta,
    pub data: Table,
}

impl Report {
    /// CSV comment lines appended after the data rows.
    fn comments(&self) -> Vec<String> {
        let mut out = Vec::new();
        if let Some(s) = self.meta.sampling {
            let mut line = format!("# samples={} seed={}", s.samples, s.seed);
            if let (Some(same), Some(diff), Some(points)) = (s.same, s.different, s.position_points)
            {
                line.push_str(&format!(
                    " same={same} different={diff} position_points={points}"
                ));
            }
            out.push(line);
        }
        if let Some(slope) = self.meta.fitted_log_log_slope {
            out.push(format!(
                "# fitted_log_log_slope={}",
                format_significant(slope, SIGNIFICANT_DIGITS)
            ));
        }
        out
    }

    pub fn write<W: Write>(&self, format: Format, mut w: W) -> io::Result<()> {
        match format {
            Format::Csv => {
                writeln!(w, "{}", self.data.columns.join(","))?;
                for row in &self.data.rows {
                    let cells: Vec<String> = row.iter().map(|c| c.csv()).collect();
                    writeln!(w, "{}", cells.join(","))?;
                }
                for line in self.comments() {
                    writeln!(w, "{line}")?;
                }
            }
            Format::Json => {
                serde_json::to_writer_pretty(&mut w, self)?;
                writeln!(w)?;
            }
        }
        w.flush()
    }
}

/// `%g`-style formatting with `digits` significant digits.
pub fn format_significant(v: f64, digits: usize) -> String {
    if v == 0.0 {
        return "0".to_owned();
    }
    if !v.is_finite() {
        return v.to_string();
    }
    let sci = format!("{:.*e}", digits - 1, v);
    let (mantissa, exp) = sci.split_once('e').expect("exponent present");
    let exp: i32 = exp.parse().expect("integer exponent");
    if (-5..digits as i32).contains(&exp) {
        let decimals = (digits as i32 - 1 - exp).max(0) as usize;
        trim_zeros(format!("{v:.decimals$}"))
    } else {
        format!("{}e{exp}", trim_zeros(mantissa.to_owned()))
    }
}

fn trim_zeros(s: String) -> String {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.').to_owned()
    } else {
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn significant_digits() {
        assert_eq!(format_significant(0.5, 12), "0.5");
        assert_eq!(format_significant(1.0 / 3.0, 12), "0.333333333333");
        assert_eq!(format_significant(2.0 / 3.0, 12), "0.666666666667");
        assert_eq!(format_significant(1.0, 12), "1");
        assert_eq!(format_significant(-1.5, 12), "-1.5");
        assert_eq!(format_significant(1.0e-7 / 3.0, 12), "3.33333333333e-8");
        assert_eq!(format_significant(123456.5, 12), "123456.5");
        assert_eq!(format_significant(9.9999999999999e-1, 12), "1");
        assert_eq!(format_significant(1.0e15, 12), "1e15");
        assert_eq!(format_significant(0.0, 12), "0");
    }

    #[test]
    fn csv_layout() {
        let mut t = Table::new(vec!["position", "probability"]);
        t.push(vec![Cell::Int(-1), Cell::Num(0.25)]);
        t.push(vec![Cell::Int(1), Cell::Num(0.75)]);
        let report = Report {
            meta: Meta {
                subcommand: "single",
                fitted_log_log_slope: Some(2.0),
                ..Meta::default()
            },
            data: t,
        };
        let mut buf = Vec::new();
        report.write(Format::Csv, &mut buf).unwrap();
        assert_eq!(
            String::from_utf8(buf).unwrap(),
            "position,probability\n-1,0.25\n1,0.75\n# fitted_log_log_slope=2\n"
        );
    }

    #[test]
    fn json_keeps_column_order() {
        let mut t = Table::new(vec!["x1", "x2", "probability"]);
        t.push(vec![Cell::Int(0), Cell::Int(0), Cell::Num(1.0)]);
        let report = Report {
            meta: Meta::default(),
            data: t,
        };
        let v = serde_json::to_string(&report).unwrap();
        assert!(
            v.contains(r#""data":[{"x1":0,"x2":0,"probability":1.0}]"#),
            "{v}"
        );
    }
}
