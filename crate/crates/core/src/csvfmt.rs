//! Text formatting for CSV output: 17-significant-digit decimal floats
//! that re-parse to the original bits, LF line endings.

/// Format an `f64` with 17 significant digits (`d.dddddddddddddddde±ee`).
/// `f64::from_str` recovers the exact value.
pub fn fmt_f64(x: f64) -> String {
    format!("{:.16e}", x)
}

/// Parse a float written by [`fmt_f64`] (plain `f64` syntax).
pub fn parse_f64(s: &str) -> Option<f64> {
    s.trim().parse().ok()
}
