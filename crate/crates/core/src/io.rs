//! File formats: tab-separated sample files and `p,q` curve CSVs.

use std::fs;
use std::io::Write;
use std::path::Path;

use crate::error::{Error, Result};
use crate::estimators::{Hypothesis, LabeledSample};
use crate::roc_core::{ExtendedRatio, MonotoneCurve};

/// Formats `x` with `sig` significant digits in plain decimal notation.
pub fn format_sig(x: f64, sig: usize) -> String {
    if x == 0.0 {
        return "0".into();
    }
    if !x.is_finite() {
        return if x.is_nan() { "nan".into() } else if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    let magnitude = x.abs().log10().floor() as i64;
    let decimals = (sig as i64 - 1 - magnitude).max(0) as usize;
    format!("{x:.decimals$}")
}

/// Parses one ratio field: a nonnegative decimal or `inf` (any case).
pub fn parse_ratio(field: &str) -> std::result::Result<ExtendedRatio, String> {
    if field.eq_ignore_ascii_case("inf") {
        return Ok(ExtendedRatio::INFINITY);
    }
    let x: f64 = field
        .parse()
        .map_err(|_| format!("cannot parse ratio {field:?}"))?;
    if !x.is_finite() {
        return Err(format!("ratio {field:?}: use \"inf\" for an infinite ratio"));
    }
    ExtendedRatio::new(x).map_err(|e| e.to_string())
}

/// Parses `label<TAB>ratio` lines; blank lines and `#` comments are skipped.
pub fn parse_samples(text: &str) -> Result<Vec<LabeledSample>> {
    let mut out = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let trimmed = raw.trim_end_matches('\r');
        if trimmed.trim().is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let err = |reason: String| Error::Parse { line, reason };
        let mut fields = trimmed.split('\t');
        let (Some(label), Some(ratio), None) = (fields.next(), fields.next(), fields.next()) else {
            return Err(err(format!("expected \"label<TAB>ratio\", got {trimmed:?}")));
        };
        let label = match label.trim() {
            "0" => Hypothesis::H0,
            "1" => Hypothesis::H1,
            other => return Err(err(format!("label must be 0 or 1, got {other:?}"))),
        };
        let ratio = parse_ratio(ratio.trim()).map_err(err)?;
        out.push(LabeledSample { label, ratio });
    }
    Ok(out)
}

pub fn read_samples(path: &Path) -> Result<Vec<LabeledSample>> {
    parse_samples(&fs::read_to_string(path)?)
}

pub fn write_curve_csv<W: Write>(curve: &MonotoneCurve, mut out: W) -> std::io::Result<()> {
    writeln!(out, "p,q")?;
    for &(p, q) in curve.vertices() {
        writeln!(out, "{},{}", format_sig(p, 17), format_sig(q, 17))?;
    }
    Ok(())
}

/// Parses a `p,q` curve CSV. Monotonicity failures name the offending line.
pub fn parse_curve_csv(text: &str) -> Result<MonotoneCurve> {
    let mut lines = text.lines().enumerate();
    match lines.next() {
        Some((_, h)) if h.trim() == "p,q" => {}
        other => {
            return Err(Error::Parse {
                line: 1,
                reason: format!("expected header \"p,q\", got {:?}", other.map(|(_, h)| h)),
            })
        }
    }
    let mut vertices = Vec::new();
    let mut line_of = Vec::new();
    for (i, raw) in lines {
        let line = i + 1;
        let row = raw.trim();
        if row.is_empty() {
            continue;
        }
        let parse = |s: Option<&str>| -> Result<f64> {
            s.map(str::trim)
                .and_then(|s| s.parse::<f64>().ok())
                .ok_or_else(|| Error::Parse {
                    line,
                    reason: format!("expected two numbers \"p,q\", got {row:?}"),
                })
        };
        let mut fields = row.split(',');
        let p = parse(fields.next())?;
        let q = parse(fields.next())?;
        if fields.next().is_some() {
            return Err(Error::Parse {
                line,
                reason: format!("too many fields in {row:?}"),
            });
        }
        vertices.push((p, q));
        line_of.push(line);
    }
    MonotoneCurve::new(vertices).map_err(|e| match e {
        Error::InvalidCurve { index, reason } => {
            let line = line_of.get(index).copied().unwrap_or(1);
            Error::InvalidCurve {
                index,
                reason: format!("line {line}: {reason}"),
            }
        }
        other => other,
    })
}

pub fn read_curve_csv(path: &Path) -> Result<MonotoneCurve> {
    parse_curve_csv(&fs::read_to_string(path)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sig_formatting() {
        assert_eq!(format_sig(0.0, 17), "0");
        assert_eq!(format_sig(1.0, 17), "1.0000000000000000");
        assert_eq!(format_sig(1.0 / 3.0, 17), "0.33333333333333331");
        assert_eq!(format_sig(0.5, 12), "0.500000000000");
        let x = 0.073_262_555_554_936_7;
        assert_eq!(format_sig(x, 17).parse::<f64>().unwrap(), x);
    }

    #[test]
    fn parses_samples() {
        let s = parse_samples("# header\n0\t0.5\n\n1\tINF\n1\t2\r\n").unwrap();
        assert_eq!(s.len(), 3);
        assert_eq!(s[0].label, Hypothesis::H0);
        assert!(s[1].ratio.is_infinite());
        assert_eq!(s[2].ratio.value(), 2.0);
    }

    #[test]
    fn sample_errors_name_the_line() {
        for (text, line) in [
            ("0\t1\n2\t1\n", 2),
            ("0\t1\n1\t-3\n", 2),
            ("0 1\n", 1),
            ("0\tinfinity\n", 1),
            ("0\tnan\n", 1),
            ("\n\n1\t1\t1\n", 3),
        ] {
            match parse_samples(text) {
                Err(Error::Parse { line: l, .. }) => assert_eq!(l, line, "{text:?}"),
                other => panic!("{text:?}: {other:?}"),
            }
        }
    }

    #[test]
    fn curve_csv_round_trip() {
        let c = MonotoneCurve::new(vec![(0.0, 0.1), (1.0 / 3.0, 2.0 / 3.0), (1.0, 1.0)]).unwrap();
        let mut buf = Vec::new();
        write_curve_csv(&c, &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert!(text.starts_with("p,q\n0,0.10000000000000001\n"));
        assert_eq!(parse_curve_csv(&text).unwrap(), c);
    }

    #[test]
    fn curve_csv_errors() {
        assert!(matches!(parse_curve_csv("x,y\n0,0\n1,1\n"), Err(Error::Parse { line: 1, .. })));
        assert!(matches!(parse_curve_csv("p,q\n0,0\nabc\n"), Err(Error::Parse { line: 3, .. })));
        match parse_curve_csv("p,q\n0,0\n0.5,0.8\n0.6,0.2\n1,1\n") {
            Err(Error::InvalidCurve { index: 2, reason }) => assert!(reason.contains("line 4")),
            other => panic!("{other:?}"),
        }
    }
}
