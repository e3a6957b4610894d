//! Report plumbing: headers echoing the effective configuration, CSV
//! writing with LF endings and exact float round-trips.

use crate::config::{CliError, RunConfig};
use std::fmt::Write as _;
use std::io::Write as _;

pub use slelab_core::csvfmt::fmt_f64;

/// `# key=value` header block naming the command and the configuration.
pub fn header(command: &str, config: &RunConfig) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "# slelab {command}");
    for line in config.header_lines() {
        let _ = writeln!(s, "# {line}");
    }
    s
}

/// A CSV document under construction: header block, one column row, data
/// rows, optional footers.
pub struct Csv {
    buf: String,
}

impl Csv {
    pub fn new(command: &str, config: &RunConfig, columns: &[&str]) -> Self {
        let mut buf = header(command, config);
        buf.push_str(&columns.join(","));
        buf.push('\n');
        Csv { buf }
    }

    pub fn row(&mut self, fields: &[String]) {
        self.buf.push_str(&fields.join(","));
        self.buf.push('\n');
    }

    pub fn footer(&mut self, line: &str) {
        self.buf.push_str("# ");
        self.buf.push_str(line);
        self.buf.push('\n');
    }

    pub fn into_string(self) -> String {
        self.buf
    }
}

/// Write to `--out` when given, otherwise to stdout.
pub fn emit(out: &Option<String>, text: &str) -> Result<(), CliError> {
    match out {
        Some(path) => std::fs::write(path, text).map_err(|e| CliError::Io(format!("{path}: {e}"))),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout
                .write_all(text.as_bytes())
                .map_err(|e| CliError::Io(e.to_string()))
        }
    }
}

/// Write to an explicit path.
pub fn emit_to(path: &str, text: &str) -> Result<(), CliError> {
    std::fs::write(path, text).map_err(|e| CliError::Io(format!("{path}: {e}")))
}
