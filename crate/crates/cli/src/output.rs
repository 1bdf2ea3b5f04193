//! Diff-stable text output: numbers rounded to 12 significant digits.

use std::fmt::Write as _;
use std::fs;
use std::io::{self, Write};
use std::path::Path;

use anyhow::{Context, Result};
use quditmap_core::region::RegionSample;

/// `x` rounded to 12 significant digits, printed in plain decimal notation
/// for magnitudes in `[1e-4, 1e15)` and in exponent notation otherwise.
pub fn fmt_num(x: f64) -> String {
    if !x.is_finite() {
        return x.to_string();
    }
    let rounded: f64 = format!("{x:.11e}")
        .parse()
        .expect("round trip of formatted float");
    if rounded == 0.0 {
        return "0".to_string();
    }
    let mag = rounded.abs();
    if (1e-4..1e15).contains(&mag) {
        rounded.to_string()
    } else {
        format!("{rounded:e}")
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

pub fn render_samples(samples: &[RegionSample], format: Format) -> String {
    let mut out = String::new();
    if format == Format::Csv {
        out.push_str("alpha,beta,gamma,class\n");
    }
    for s in samples {
        let (a, b, g) = (fmt_num(s.alpha), fmt_num(s.beta), fmt_num(s.gamma));
        match format {
            Format::Csv => writeln!(out, "{a},{b},{g},{}", s.class),
            Format::Json => writeln!(
                out,
                "{{\"alpha\":{a},\"beta\":{b},\"gamma\":{g},\"class\":\"{}\"}}",
                s.class
            ),
        }
        .expect("writing to a String");
    }
    out
}

/// Writes to `path`, or to standard output when no path is given.
pub fn emit(path: Option<&Path>, text: &str) -> Result<()> {
    match path {
        Some(p) => fs::write(p, text).with_context(|| format!("cannot write {}", p.display())),
        None => {
            let mut stdout = io::stdout().lock();
            stdout.write_all(text.as_bytes())?;
            stdout.flush()?;
            Ok(())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use quditmap_core::region::RegionClass;

    #[test]
    fn number_formatting() {
        assert_eq!(fmt_num(0.0), "0");
        assert_eq!(fmt_num(-0.0), "0");
        assert_eq!(fmt_num(1.0), "1");
        assert_eq!(fmt_num(0.1 + 0.2), "0.3");
        assert_eq!(fmt_num(-1.0 / 3.0), "-0.333333333333");
        assert_eq!(fmt_num(2.5e-17), "2.5e-17");
        assert_eq!(fmt_num(1e-300 * 1e-300), "0");
    }

    #[test]
    fn csv_and_json_rows() {
        let s = [RegionSample {
            alpha: 1.0,
            beta: -0.5,
            gamma: 0.0,
            class: RegionClass::Detected,
        }];
        assert_eq!(
            render_samples(&s, Format::Csv),
            "alpha,beta,gamma,class\n1,-0.5,0,detected\n"
        );
        assert_eq!(
            render_samples(&s, Format::Json),
            "{\"alpha\":1,\"beta\":-0.5,\"gamma\":0,\"class\":\"detected\"}\n"
        );
    }
}
