//! Output formats shared by the commands.
//!
//! Exact rationals are always rendered as `p/q` with a 12-significant-digit
//! decimal companion; decimals are never used for verdicts. CSV and JSON
//! field names and order are stable across releases.

use clap::ValueEnum;
use serde::Serialize;
use ucf_core::bounds::CheckOutcome;
use ucf_core::rational::{decimal_approx, ratio_string, Rational};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Human,
    Csv,
    Md,
    Json,
}

/// An exact rational with its decimal companion.
#[derive(Debug, Clone, Serialize, PartialEq, Eq)]
pub struct RationalField {
    pub exact: String,
    pub decimal: String,
}

impl RationalField {
    pub fn new(r: &Rational) -> Self {
        RationalField {
            exact: ratio_string(r),
            decimal: decimal_approx(r, 12),
        }
    }

    pub fn display(&self) -> String {
        format!("{} ({})", self.exact, self.decimal)
    }
}

/// A certified check verdict with its certificate.
#[derive(Debug, Clone, Serialize)]
pub struct OutcomeField {
    pub verdict: String,
    pub equality: bool,
    pub certificate: String,
}

impl OutcomeField {
    pub fn new(out: &CheckOutcome) -> Self {
        OutcomeField {
            verdict: out.verdict.to_string(),
            equality: out.equality,
            certificate: out.certificate.clone(),
        }
    }
}

pub fn csv_quote(field: &str) -> String {
    if field.contains([',', '"', '\n']) {
        format!("\"{}\"", field.replace('"', "\"\""))
    } else {
        field.to_string()
    }
}

fn md_escape(field: &str) -> String {
    field.replace('|', "\\|")
}

/// Simple fixed-header table renderer for the csv/md/human formats.
pub struct Table {
    pub headers: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(headers: &[&str]) -> Self {
        Table {
            headers: headers.iter().map(|s| s.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<String>) {
        debug_assert_eq!(row.len(), self.headers.len());
        self.rows.push(row);
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        out.push_str(
            &self
                .headers
                .iter()
                .map(|h| csv_quote(h))
                .collect::<Vec<_>>()
                .join(","),
        );
        out.push('\n');
        for row in &self.rows {
            out.push_str(&row.iter().map(|c| csv_quote(c)).collect::<Vec<_>>().join(","));
            out.push('\n');
        }
        out
    }

    pub fn to_md(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!(
            "| {} |\n",
            self.headers.iter().map(|h| md_escape(h)).collect::<Vec<_>>().join(" | ")
        ));
        out.push_str(&format!(
            "|{}\n",
            self.headers.iter().map(|_| " --- |").collect::<String>()
        ));
        for row in &self.rows {
            out.push_str(&format!(
                "| {} |\n",
                row.iter().map(|c| md_escape(c)).collect::<Vec<_>>().join(" | ")
            ));
        }
        out
    }

    pub fn to_human(&self) -> String {
        let mut widths: Vec<usize> = self.headers.iter().map(|h| h.len()).collect();
        for row in &self.rows {
            for (i, cell) in row.iter().enumerate() {
                widths[i] = widths[i].max(cell.len());
            }
        }
        let fmt_row = |cells: &[String]| -> String {
            cells
                .iter()
                .enumerate()
                .map(|(i, c)| format!("{:<width$}", c, width = widths[i]))
                .collect::<Vec<_>>()
                .join("  ")
                .trim_end()
                .to_string()
        };
        let mut out = fmt_row(&self.headers);
        out.push('\n');
        for row in &self.rows {
            out.push_str(&fmt_row(row));
            out.push('\n');
        }
        out
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Csv => self.to_csv(),
            Format::Md => self.to_md(),
            Format::Human | Format::Json => self.to_human(),
        }
    }
}

/// Key-value rendering for scalar report sections.
pub fn key_values(format: Format, pairs: &[(&str, String)]) -> String {
    match format {
        Format::Csv => {
            let mut out = String::from("field,value\n");
            for (k, v) in pairs {
                out.push_str(&format!("{},{}\n", csv_quote(k), csv_quote(v)));
            }
            out
        }
        Format::Md => {
            let mut out = String::from("| field | value |\n| --- | --- |\n");
            for (k, v) in pairs {
                out.push_str(&format!("| {} | {} |\n", md_escape(k), md_escape(v)));
            }
            out
        }
        Format::Human | Format::Json => {
            let width = pairs.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
            let mut out = String::new();
            for (k, v) in pairs {
                out.push_str(&format!("{:<width$}  {}\n", k, v, width = width));
            }
            out
        }
    }
}

pub fn to_json_string<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("report structs serialize");
    s.push('\n');
    s
}

pub fn opt_f64(x: Option<f64>) -> String {
    x.map(|v| v.to_string()).unwrap_or_default()
}

#[cfg(test)]
mod tests {
    use super::*;
    use ucf_core::rational::ratio_u64;

    #[test]
    fn rational_field_round() {
        let f = RationalField::new(&ratio_u64(4, 9));
        assert_eq!(f.exact, "4/9");
        assert_eq!(f.decimal, "0.444444444444");
    }

    #[test]
    fn csv_quoting() {
        assert_eq!(csv_quote("plain"), "plain");
        assert_eq!(csv_quote("a,b"), "\"a,b\"");
        assert_eq!(csv_quote("say \"hi\""), "\"say \"\"hi\"\"\"");
    }

    #[test]
    fn table_shapes() {
        let mut t = Table::new(&["n", "value"]);
        t.push(vec!["1".into(), "1/2".into()]);
        assert_eq!(t.to_csv(), "n,value\n1,1/2\n");
        assert!(t.to_md().starts_with("| n | value |"));
        assert_eq!(t.to_human(), "n  value\n1  1/2\n");
    }
}
