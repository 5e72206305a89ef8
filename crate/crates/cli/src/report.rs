//! Run reports: an ordered list of `key=value` lines written next to the
//! other artifacts and echoed to stdout.
//!
//! Every command records the same preamble (command name, input path and
//! digest, parameters), then its metrics and pass flags. Metrics are printed
//! with 17 significant digits so a rerun with identical inputs produces a
//! byte-identical report apart from the trailing `wall_ms` line.

use std::fmt::Display;
use std::fmt::Write as _;
use std::path::Path;
use std::time::Instant;

use anyhow::{Context, Result};

pub const REPORT_FILE: &str = "report.txt";

pub struct RunReport {
    entries: Vec<(String, String)>,
    flags: Vec<bool>,
    started: Instant,
}

impl RunReport {
    pub fn new(command: &str) -> Self {
        let mut report = RunReport {
            entries: Vec::new(),
            flags: Vec::new(),
            started: Instant::now(),
        };
        report.set("command", command);
        report
    }

    /// Records a plain key (parameters, counts, paths).
    pub fn set(&mut self, key: &str, value: impl Display) {
        self.entries.push((key.to_string(), value.to_string()));
    }

    /// Records a real-valued metric in full precision. Non-finite metrics
    /// indicate a computation bug, never a property failure, so they are
    /// rejected loudly instead of being written out.
    pub fn set_metric(&mut self, key: &str, value: f64) {
        assert!(value.is_finite(), "metric {key} is not finite: {value}");
        self.entries.push((key.to_string(), format!("{value:.16e}")));
    }

    /// Records a pass/fail flag. The process exit status is 0 iff every
    /// flag recorded here is true.
    pub fn set_flag(&mut self, key: &str, value: bool) {
        self.flags.push(value);
        self.entries.push((key.to_string(), value.to_string()));
    }

    pub fn all_pass(&self) -> bool {
        self.flags.iter().all(|&f| f)
    }

    /// One `key=value` line per entry, with the elapsed wall time appended
    /// as the final line.
    pub fn render(&self) -> String {
        let mut out = String::new();
        for (key, value) in &self.entries {
            let _ = writeln!(out, "{key}={value}");
        }
        let _ = writeln!(out, "wall_ms={}", self.started.elapsed().as_millis());
        out
    }

    /// Looks up an entry by key (latest wins). Used by tests.
    pub fn get(&self, key: &str) -> Option<&str> {
        self.entries
            .iter()
            .rev()
            .find(|(k, _)| k == key)
            .map(|(_, v)| v.as_str())
    }

    /// Renders once, writes `report.txt` into `dir` and hands the same text
    /// back for echoing, so the file and stdout never disagree on `wall_ms`.
    pub fn write_rendered(&self, dir: &Path) -> Result<String> {
        let text = self.render();
        let path = dir.join(REPORT_FILE);
        std::fs::write(&path, &text)
            .with_context(|| format!("cannot write report {}", path.display()))?;
        Ok(text)
    }
}
