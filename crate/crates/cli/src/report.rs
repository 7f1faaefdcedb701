//! Line-record reports with text and CSV renderings.

use std::fmt::Write as _;
use std::io::{self, Write};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum OutputFormat {
    #[default]
    Text,
    Csv,
}

/// A named group of rows sharing one set of columns.
#[derive(Clone, Debug, PartialEq)]
pub struct Table {
    pub name: String,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<String>>,
    /// Render as an aligned table in text mode instead of `key=value` lines.
    pub aligned: bool,
}

impl Table {
    pub fn new(name: &str, columns: &[&str]) -> Self {
        Self { name: name.into(), columns: columns.iter().map(|c| c.to_string()).collect(), rows: Vec::new(), aligned: false }
    }

    pub fn aligned(mut self) -> Self {
        self.aligned = true;
        self
    }

    pub fn push(&mut self, row: Vec<String>) {
        debug_assert_eq!(row.len(), self.columns.len(), "row width for table {}", self.name);
        self.rows.push(row);
    }
}

/// Everything a subcommand emits, in order.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct Report {
    pub tables: Vec<Table>,
    /// Failed assertions, one machine-parsable line each.
    pub failures: Vec<String>,
}

impl Report {
    pub fn table(&mut self, t: Table) {
        self.tables.push(t);
    }

    /// Records a single-row table.
    pub fn record(&mut self, name: &str, fields: &[(&str, String)]) {
        let mut t = Table::new(name, &fields.iter().map(|(k, _)| *k).collect::<Vec<_>>());
        t.push(fields.iter().map(|(_, v)| v.clone()).collect());
        self.tables.push(t);
    }

    pub fn fail(&mut self, line: impl Into<String>) {
        self.failures.push(line.into());
    }

    /// Adds a failure line unless `ok`.
    pub fn assert(&mut self, ok: bool, line: impl FnOnce() -> String) {
        if !ok {
            self.failures.push(line());
        }
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn render(&self, format: OutputFormat) -> String {
        match format {
            OutputFormat::Text => self.render_text(),
            OutputFormat::Csv => self.render_csv(),
        }
    }

    fn render_text(&self) -> String {
        let mut out = String::new();
        for t in &self.tables {
            if t.aligned {
                render_aligned(&mut out, t);
                continue;
            }
            for row in &t.rows {
                out.push_str(&t.name);
                for (c, v) in t.columns.iter().zip(row) {
                    let _ = write!(out, " {c}={}", quote_text(v));
                }
                out.push('\n');
            }
        }
        for f in &self.failures {
            let _ = writeln!(out, "FAIL {f}");
        }
        let _ = writeln!(out, "status={}", if self.passed() { "PASS" } else { "FAIL" });
        out
    }

    fn render_csv(&self) -> String {
        let mut out = String::new();
        for t in &self.tables {
            let _ = writeln!(out, "# {}", t.name);
            let _ = writeln!(out, "{}", t.columns.iter().map(|c| quote_csv(c)).collect::<Vec<_>>().join(","));
            for row in &t.rows {
                let _ = writeln!(out, "{}", row.iter().map(|c| quote_csv(c)).collect::<Vec<_>>().join(","));
            }
        }
        out.push_str("# failures\nfailure\n");
        for f in &self.failures {
            let _ = writeln!(out, "{}", quote_csv(f));
        }
        let _ = writeln!(out, "# status\nstatus\n{}", if self.passed() { "PASS" } else { "FAIL" });
        out
    }

    pub fn write_to(&self, format: OutputFormat, w: &mut dyn Write) -> io::Result<()> {
        w.write_all(self.render(format).as_bytes())
    }
}

fn render_aligned(out: &mut String, t: &Table) {
    let widths: Vec<usize> = (0..t.columns.len())
        .map(|i| t.rows.iter().map(|r| r[i].chars().count()).chain([t.columns[i].chars().count()]).max().unwrap_or(0))
        .collect();
    let line = |out: &mut String, cells: &[String]| {
        let padded: Vec<String> = cells.iter().zip(&widths).map(|(c, w)| format!("{c:>w$}")).collect();
        let _ = writeln!(out, "{}", padded.join("  ").trim_end());
    };
    let _ = writeln!(out, "[{}]", t.name);
    line(out, &t.columns);
    for r in &t.rows {
        line(out, r);
    }
}

fn quote_text(v: &str) -> String {
    if v.is_empty() || v.contains(char::is_whitespace) || v.contains('"') {
        format!("\"{}\"", v.replace('"', "\\\""))
    } else {
        v.to_string()
    }
}

fn quote_csv(v: &str) -> String {
    if v.contains([',', '"', '\n']) {
        format!("\"{}\"", v.replace('"', "\"\""))
    } else {
        v.to_string()
    }
}

/// Fixed-width scientific formatting for floats in reports.
pub fn sci(x: f64) -> String {
    format!("{x:.12e}")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> Report {
        let mut r = Report::default();
        r.record("algebra", &[("name", "h3".into()), ("ref", "a b".into())]);
        let mut t = Table::new("points", &["x", "value"]).aligned();
        t.push(vec!["0".into(), "1.5".into()]);
        t.push(vec!["10".into(), "-2".into()]);
        r.table(t);
        r
    }

    #[test]
    fn text_records_and_status() {
        let mut r = sample();
        assert_eq!(
            r.render(OutputFormat::Text),
            "algebra name=h3 ref=\"a b\"\n[points]\n x  value\n 0    1.5\n10     -2\nstatus=PASS\n"
        );
        r.fail("check=a1 left=X");
        assert!(r.render(OutputFormat::Text).ends_with("FAIL check=a1 left=X\nstatus=FAIL\n"));
    }

    #[test]
    fn csv_sections() {
        let mut r = sample();
        r.fail("x,y");
        let csv = r.render(OutputFormat::Csv);
        assert!(csv.starts_with("# algebra\nname,ref\nh3,a b\n# points\nx,value\n0,1.5\n"));
        assert!(csv.contains("# failures\nfailure\n\"x,y\"\n"));
        assert!(csv.ends_with("# status\nstatus\nFAIL\n"));
    }
}
