//! Plain-text output: the fixed-width θ printout and line-oriented `key=value` reports.

use std::fmt::Write as _;
use std::io;
use std::path::Path;

use crate::numerics::RMatrix8;

/// `%9.4f`, with values that round to zero printed without a sign.
pub fn fixed(x: f64) -> String {
    let s = format!("{x:9.4}");
    if s.trim() == "-0.0000" {
        format!("{:9.4}", 0.0)
    } else {
        s
    }
}

/// Eight lines of eight space-separated `%9.4f` values.
pub fn format_matrix(m: &RMatrix8) -> String {
    let mut out = String::new();
    for row in m {
        let cells: Vec<String> = row.iter().map(|&x| fixed(x)).collect();
        out.push_str(&cells.join(" "));
        out.push('\n');
    }
    out
}

/// Full-precision value for machine reports. `Display` for `f64` never uses a locale.
pub fn machine(x: f64) -> String {
    if x == 0.0 {
        "0".to_string()
    } else {
        format!("{x:.12e}")
    }
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct Report {
    lines: Vec<(String, String)>,
}

impl Report {
    pub fn new() -> Self {
        Report::default()
    }

    pub fn put(&mut self, key: impl Into<String>, value: impl ToString) {
        self.lines.push((key.into(), value.to_string()));
    }

    pub fn put_f64(&mut self, key: impl Into<String>, value: f64) {
        self.put(key, machine(value));
    }

    pub fn put_matrix(&mut self, prefix: &str, m: &RMatrix8) {
        for (c, row) in m.iter().enumerate() {
            for (d, &x) in row.iter().enumerate() {
                self.put_f64(format!("{prefix}.{c}.{d}"), x);
            }
        }
    }

    pub fn get(&self, key: &str) -> Option<&str> {
        self.lines
            .iter()
            .find(|(k, _)| k == key)
            .map(|(_, v)| v.as_str())
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        for (k, v) in &self.lines {
            let _ = writeln!(out, "{k}={v}");
        }
        out
    }

    pub fn write_to(&self, path: &Path) -> io::Result<()> {
        std::fs::write(path, self.render())
    }
}

/// Parses `key=value` lines, skipping blank lines.
pub fn parse_report(text: &str) -> Vec<(String, String)> {
    text.lines()
        .filter(|l| !l.trim().is_empty())
        .filter_map(|l| l.split_once('='))
        .map(|(k, v)| (k.to_string(), v.to_string()))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fixed_width() {
        assert_eq!(fixed(2.0), "   2.0000");
        assert_eq!(fixed(-1.5), "  -1.5000");
        assert_eq!(fixed(-1e-12), "   0.0000");
        assert_eq!(fixed(0.12345), "   0.1235");
    }

    #[test]
    fn matrix_layout() {
        let mut m = [[0.0; 8]; 8];
        m[0][0] = 2.0;
        let s = format_matrix(&m);
        assert_eq!(s.lines().count(), 8);
        assert!(s.lines().all(|l| l.len() == 8 * 9 + 7));
        assert!(s.starts_with("   2.0000    0.0000"));
    }

    #[test]
    fn report_round_trip() {
        let mut r = Report::new();
        r.put("verdict", "isomorphic");
        r.put_f64("eigenvalue.0", 2.0);
        r.put_f64("eigenvalue.1", 0.0);
        let text = r.render();
        assert_eq!(
            text,
            "verdict=isomorphic\neigenvalue.0=2.000000000000e0\neigenvalue.1=0\n"
        );
        let parsed = parse_report(&text);
        assert_eq!(parsed.len(), 3);
        assert_eq!(parsed[0], ("verdict".to_string(), "isomorphic".to_string()));
        let v: f64 = parsed[1].1.parse().unwrap();
        assert_eq!(v, 2.0);
        assert_eq!(r.get("eigenvalue.1"), Some("0"));
    }
}
