use std::fmt;
use std::io::{self, Write};
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::StatsReport;
use crate::error::{invalid, Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ReportFormat {
    #[default]
    Json,
    Csv,
}

impl fmt::Display for ReportFormat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ReportFormat::Json => "json",
            ReportFormat::Csv => "csv",
        })
    }
}

impl FromStr for ReportFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "json" => Ok(ReportFormat::Json),
            "csv" => Ok(ReportFormat::Csv),
            other => Err(invalid(format!("unknown report format {other:?}"))),
        }
    }
}

/// JSON formatter printing every float with 17 significant digits.
#[derive(Debug, Default)]
struct SigDigits17 {
    inner: serde_json::ser::PrettyFormatter<'static>,
}

impl serde_json::ser::Formatter for SigDigits17 {
    fn write_f64<W: ?Sized + Write>(&mut self, w: &mut W, value: f64) -> io::Result<()> {
        write!(w, "{value:.16e}")
    }

    fn write_f32<W: ?Sized + Write>(&mut self, w: &mut W, value: f32) -> io::Result<()> {
        self.write_f64(w, f64::from(value))
    }

    fn begin_array<W: ?Sized + Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.inner.begin_array(w)
    }

    fn end_array<W: ?Sized + Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.inner.end_array(w)
    }

    fn begin_array_value<W: ?Sized + Write>(&mut self, w: &mut W, first: bool) -> io::Result<()> {
        self.inner.begin_array_value(w, first)
    }

    fn end_array_value<W: ?Sized + Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.inner.end_array_value(w)
    }

    fn begin_object<W: ?Sized + Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.inner.begin_object(w)
    }

    fn end_object<W: ?Sized + Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.inner.end_object(w)
    }

    fn begin_object_key<W: ?Sized + Write>(&mut self, w: &mut W, first: bool) -> io::Result<()> {
        self.inner.begin_object_key(w, first)
    }

    fn begin_object_value<W: ?Sized + Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.inner.begin_object_value(w)
    }

    fn end_object_value<W: ?Sized + Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.inner.end_object_value(w)
    }
}

/// Serializes any value as pretty JSON with 17-significant-digit floats and
/// a trailing newline.
pub fn write_json<T: Serialize, W: Write + ?Sized>(value: &T, out: &mut W) -> Result<()> {
    let mut ser = serde_json::Serializer::with_formatter(&mut *out, SigDigits17::default());
    value
        .serialize(&mut ser)
        .map_err(|e| Error::Io(e.to_string()))?;
    out.write_all(b"\n")?;
    Ok(())
}

fn csv_number(x: f64) -> String {
    if x.is_finite() {
        format!("{x:.16e}")
    } else if x.is_nan() {
        "nan".into()
    } else if x > 0.0 {
        "inf".into()
    } else {
        "-inf".into()
    }
}

/// Writes the report: the full document as JSON, or the histogram table
/// `bin_left,bin_right,count,density,gamma_density` as CSV (the last column
/// is empty when no gamma fit exists).
pub fn emit_report<W: Write + ?Sized>(report: &StatsReport, format: ReportFormat, out: &mut W) -> Result<()> {
    match format {
        ReportFormat::Json => write_json(report, out),
        ReportFormat::Csv => {
            let h = &report.histogram;
            writeln!(out, "bin_left,bin_right,count,density,gamma_density")?;
            for i in 0..h.bins() {
                let gamma = h
                    .gamma_density
                    .as_ref()
                    .map(|g| csv_number(g[i]))
                    .unwrap_or_default();
                writeln!(
                    out,
                    "{},{},{},{},{}",
                    csv_number(h.edges[i]),
                    csv_number(h.edges[i + 1]),
                    h.counts[i],
                    csv_number(h.density[i]),
                    gamma
                )?;
            }
            Ok(())
        }
    }
}

/// [`emit_report`] into a byte vector.
pub fn render_report(report: &StatsReport, format: ReportFormat) -> Result<Vec<u8>> {
    let mut buf = Vec::new();
    emit_report(report, format, &mut buf)?;
    Ok(buf)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn floats_have_seventeen_digits() {
        let mut buf = Vec::new();
        write_json(&vec![0.1f64, 1.0 / 3.0, 0.0, f64::NAN], &mut buf).unwrap();
        let s = String::from_utf8(buf).unwrap();
        assert!(s.contains("1.0000000000000001e-1"), "{s}");
        assert!(s.contains("3.3333333333333331e-1"), "{s}");
        assert!(s.contains("0.0000000000000000e0"), "{s}");
        assert!(s.contains("null"), "{s}");
        let back: Vec<Option<f64>> = serde_json::from_str(&s).unwrap();
        assert_eq!(back[1], Some(1.0 / 3.0));
    }

    #[test]
    fn format_parsing() {
        assert_eq!("JSON".parse::<ReportFormat>().unwrap(), ReportFormat::Json);
        assert_eq!("csv".parse::<ReportFormat>().unwrap(), ReportFormat::Csv);
        assert!("xml".parse::<ReportFormat>().is_err());
    }
}
