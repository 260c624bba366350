use std::fmt::Write as _;
use std::io::Write;

use serde::Serialize;

use crate::error::{CliError, CliResult};

/// `x` with 7 significant digits, trailing zeros dropped.
pub fn sig7(x: f64) -> String {
    if !x.is_finite() {
        return if x.is_nan() { "nan".into() } else if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    if x == 0.0 {
        return "0".into();
    }
    let exp = x.abs().log10().floor() as i32;
    if !(-5..15).contains(&exp) {
        return format!("{x:.6e}");
    }
    let decimals = (6 - exp).max(0) as usize;
    let s = format!("{x:.decimals$}");
    // Rounding can carry into a new digit (9.9999999 → 10.000000); reformat once.
    let carried = s.parse::<f64>().map_or(false, |r| r.abs() >= 10f64.powi(exp + 1));
    let s = if carried && decimals > 0 {
        format!("{x:.prec$}", prec = decimals - 1)
    } else {
        s
    };
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.').to_string()
    } else {
        s
    }
}

/// CSV with a header row. Cells are already formatted.
pub struct Csv {
    text: String,
}

impl Csv {
    pub fn new(header: &[&str]) -> Self {
        Csv {
            text: header.join(",") + "\n",
        }
    }

    pub fn row(&mut self, cells: &[String]) {
        let _ = writeln!(self.text, "{}", cells.join(","));
    }

    pub fn numbers(&mut self, xs: &[f64]) {
        self.row(&xs.iter().map(|&x| sig7(x)).collect::<Vec<_>>());
    }

    /// Starts a further table after a blank line.
    pub fn section(&mut self, header: &[&str]) {
        self.text.push('\n');
        self.text.push_str(&header.join(","));
        self.text.push('\n');
    }

    pub fn finish(self) -> String {
        self.text
    }
}

pub fn json<T: Serialize>(value: &T) -> CliResult<String> {
    serde_json::to_string_pretty(value)
        .map(|s| s + "\n")
        .map_err(|e| CliError::Numerical(format!("cannot encode output: {e}")))
}

/// Writes to `path`, or standard output when absent.
pub fn emit(text: &str, path: Option<&str>) -> CliResult<()> {
    match path {
        Some(p) => std::fs::write(p, text).map_err(|e| CliError::Data(format!("cannot write {p}: {e}"))),
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(text.as_bytes())
                .and_then(|_| out.flush())
                .map_err(|e| CliError::Data(format!("cannot write output: {e}")))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn seven_significant_digits() {
        assert_eq!(sig7(1.0 / 3.0), "0.3333333");
        assert_eq!(sig7(2.0 / 3.0), "0.6666667");
        assert_eq!(sig7(0.5), "0.5");
        assert_eq!(sig7(1.0), "1");
        assert_eq!(sig7(0.0), "0");
        assert_eq!(sig7(832.17384), "832.1738");
        assert_eq!(sig7(-414.08694), "-414.0869");
        assert_eq!(sig7(9.99999999), "10");
        assert_eq!(sig7(1234567.8), "1234568");
        assert_eq!(sig7(1.5e-9), "1.500000e-9");
        assert_eq!(sig7(f64::INFINITY), "inf");
    }

    #[test]
    fn csv_layout() {
        let mut c = Csv::new(&["a", "b"]);
        c.numbers(&[0.0, 1.0 / 3.0]);
        c.section(&["z"]);
        c.row(&["x".into()]);
        assert_eq!(c.finish(), "a,b\n0,0.3333333\n\nz\nx\n");
    }
}
