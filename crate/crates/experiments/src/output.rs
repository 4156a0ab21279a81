//! Plain CSV with `#` header metadata. Reals carry 17 significant digits.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use crate::error::Result;

pub fn real(x: f64) -> String {
    format!("{x:.16e}")
}

/// Accumulates one CSV file in memory; written in one go.
#[derive(Debug, Default)]
pub struct Csv {
    text: String,
}

impl Csv {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn comment(&mut self, line: impl AsRef<str>) -> &mut Self {
        let _ = writeln!(self.text, "# {}", line.as_ref());
        self
    }

    pub fn header(&mut self, columns: &[&str]) -> &mut Self {
        let _ = writeln!(self.text, "{}", columns.join(","));
        self
    }

    pub fn row(&mut self, fields: &[String]) -> &mut Self {
        let _ = writeln!(self.text, "{}", fields.join(","));
        self
    }

    pub fn as_str(&self) -> &str {
        &self.text
    }

    pub fn write(&self, path: &Path) -> Result<()> {
        fs::write(path, &self.text)?;
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn seventeen_significant_digits() {
        assert_eq!(real(std::f64::consts::LN_2), "6.9314718055994529e-1");
        assert_eq!(real(0.0), "0.0000000000000000e0");
        assert_eq!(real(-2.5), "-2.5000000000000000e0");
        for x in [0.1, 1.0 / 3.0, 1e-300, 123456.789] {
            assert_eq!(real(x).parse::<f64>().unwrap(), x);
        }
    }

    #[test]
    fn layout() {
        let mut c = Csv::new();
        c.comment("N=3")
            .header(&["a", "b"])
            .row(&["1".into(), real(0.5)]);
        assert_eq!(c.as_str(), "# N=3\na,b\n1,5.0000000000000000e-1\n");
    }
}
