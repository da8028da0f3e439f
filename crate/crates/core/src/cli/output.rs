use std::fs::File;
use std::io::{self, BufWriter, Write};

use serde::ser::{SerializeMap, Serializer};
use serde::Serialize;

use super::{CliError, Format, SweepRow, SweepSpec};
use crate::field::Method;

const SIGNIFICANT: usize = 12;

/// `%.12g`: 12 significant digits, trailing zeros dropped, exponent form
/// outside `1e-4 ≤ |x| < 1e12`.
pub fn format_number(x: f64) -> String {
    if !x.is_finite() {
        return x.to_string();
    }
    if x == 0.0 {
        return "0".to_owned();
    }
    let sci = format!("{:.*e}", SIGNIFICANT - 1, x);
    let (mantissa, exp) = sci.split_once('e').expect("exponent");
    let exp: i32 = exp.parse().expect("integer exponent");
    if exp < -4 || exp >= SIGNIFICANT as i32 {
        let mantissa = strip_zeros(mantissa);
        let sign = if exp < 0 { '-' } else { '+' };
        format!("{mantissa}e{sign}{:02}", exp.abs())
    } else {
        let decimals = (SIGNIFICANT as i32 - 1 - exp).max(0) as usize;
        strip_zeros(&format!("{x:.decimals$}")).to_owned()
    }
}

fn strip_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

fn column_name(method: Method) -> &'static str {
    match method {
        Method::Exact => "eta_exact",
        Method::Macdonald => "eta_macdonald",
        Method::Airy => "eta_airy",
        Method::Auto => "eta_auto",
    }
}

fn header(spec: &SweepSpec) -> Vec<&'static str> {
    let mut cols = vec!["y_over_H", "M"];
    cols.extend(spec.methods.iter().map(|&m| column_name(m)));
    if spec.requests(Method::Exact) {
        cols.push("exact_err");
    }
    cols
}

// Cells in header order; `None` is an empty cell.
fn row_values(row: &SweepRow, spec: &SweepSpec) -> Vec<Option<f64>> {
    let mut out = vec![Some(row.y_over_h), Some(row.mach)];
    out.extend(
        spec.methods
            .iter()
            .map(|m| row.cells.get(m).and_then(|c| c.value())),
    );
    if spec.requests(Method::Exact) {
        out.push(row.exact_err);
    }
    out
}

struct JsonRow<'a> {
    keys: &'a [&'static str],
    values: Vec<Option<f64>>,
}

impl Serialize for JsonRow<'_> {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut map = s.serialize_map(Some(self.keys.len()))?;
        for (k, v) in self.keys.iter().zip(&self.values) {
            // Round through the 12-digit text so JSON carries the same value as CSV.
            let rounded = v.map(|x| format_number(x).parse::<f64>().expect("round trip"));
            map.serialize_entry(k, &rounded)?;
        }
        map.end()
    }
}

/// Writes rows in the spec's format to an arbitrary sink.
pub fn write_rows<W: Write>(rows: &[SweepRow], spec: &SweepSpec, mut w: W) -> io::Result<()> {
    let keys = header(spec);
    match spec.output.format {
        Format::Csv => {
            writeln!(w, "{}", keys.join(","))?;
            for row in rows {
                let line: Vec<String> = row_values(row, spec)
                    .into_iter()
                    .map(|v| v.map(format_number).unwrap_or_default())
                    .collect();
                writeln!(w, "{}", line.join(","))?;
            }
        }
        Format::Json => {
            let json: Vec<JsonRow> = rows
                .iter()
                .map(|row| JsonRow {
                    keys: &keys,
                    values: row_values(row, spec),
                })
                .collect();
            serde_json::to_writer_pretty(&mut w, &json).map_err(io::Error::from)?;
            writeln!(w)?;
        }
    }
    w.flush()
}

/// Writes rows to `spec.output.path`, or standard output when unset.
pub fn write_output(rows: &[SweepRow], spec: &SweepSpec) -> Result<(), CliError> {
    let result = match &spec.output.path {
        Some(path) => File::create(path)
            .and_then(|f| write_rows(rows, spec, BufWriter::new(f)))
            .map_err(|source| CliError::Io {
                context: format!("writing {}", path.display()),
                source,
            }),
        None => write_rows(rows, spec, io::stdout().lock()).map_err(|source| CliError::Io {
            context: "writing standard output".into(),
            source,
        }),
    };
    result
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn general_format() {
        let cases = [
            (0.0, "0"),
            (1.0, "1"),
            (0.52, "0.52"),
            (-0.025126937354504626, "-0.0251269373545"),
            (3.0, "3"),
            (1.0e-5, "1e-05"),
            (-9.2135694265e-5, "-9.2135694265e-05"),
            (123456789012.0, "123456789012"),
            (1234567890123.0, "1.23456789012e+12"),
            (0.0001, "0.0001"),
            (2.5e-300, "2.5e-300"),
        ];
        for (x, s) in cases {
            assert_eq!(format_number(x), s, "{x:e}");
        }
    }
}
