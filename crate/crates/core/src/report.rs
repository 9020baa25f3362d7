//! Line-oriented `key = value` output shared by the metrics harness and
//! the timing bench, stable enough for CI greps.

use std::fmt::{self, Display};
use std::io::{self, Write};

/// Ordered key/value lines.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Report {
    lines: Vec<(String, String)>,
}

impl Report {
    pub fn new() -> Self {
        Report::default()
    }

    pub fn push(&mut self, key: impl Into<String>, value: impl Display) {
        self.lines.push((key.into(), value.to_string()));
    }

    /// Floats are fixed to six decimals so reports diff cleanly.
    pub fn push_f64(&mut self, key: impl Into<String>, value: f64) {
        self.lines.push((key.into(), format!("{value:.6}")));
    }

    pub fn get(&self, key: &str) -> Option<&str> {
        self.lines.iter().find(|(k, _)| k == key).map(|(_, v)| v.as_str())
    }

    pub fn lines(&self) -> impl Iterator<Item = (&str, &str)> {
        self.lines.iter().map(|(k, v)| (k.as_str(), v.as_str()))
    }

    pub fn write_to(&self, mut sink: impl Write) -> io::Result<()> {
        for (k, v) in &self.lines {
            writeln!(sink, "{k} = {v}")?;
        }
        Ok(())
    }
}

impl Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, v) in &self.lines {
            writeln!(f, "{k} = {v}")?;
        }
        Ok(())
    }
}
