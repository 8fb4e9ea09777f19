use std::io::Write;

use serde_json::Value;

use crate::Format;

/// Writes either human text or JSON lines to stdout, never both.
pub struct Output {
    format: Format,
    stdout: std::io::Stdout,
}

impl Output {
    pub fn new(format: Format) -> Self {
        Output { format, stdout: std::io::stdout() }
    }

    pub fn records(&self) -> bool {
        self.format == Format::Records
    }

    /// Emits `text` in human mode.
    pub fn human(&mut self, text: impl AsRef<str>) {
        if !self.records() {
            let _ = writeln!(self.stdout.lock(), "{}", text.as_ref());
        }
    }

    /// Emits `record` as a single JSON line in records mode.
    pub fn record(&mut self, record: Value) {
        if self.records() {
            let _ = writeln!(self.stdout.lock(), "{record}");
        }
    }
}
