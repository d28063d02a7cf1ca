//! Stable numeric formatting for the CSV output: golden files must not
//! change bytes across runs or platforms.

use cvqfi_core::ScanRow;

/// Shortest decimal representation of `x` after rounding to 12
/// significant digits. Plain notation in the human range, exponent
/// notation outside it, `-0` normalized to `0`.
pub fn format_number(x: f64) -> String {
    if x == 0.0 {
        return "0".to_owned();
    }
    let rounded: f64 = format!("{x:.11e}").parse().expect("formatted floats parse");
    if rounded == 0.0 {
        return "0".to_owned();
    }
    let magnitude = rounded.abs();
    if (1e-4..1e15).contains(&magnitude) {
        format!("{rounded}")
    } else {
        format!("{rounded:e}")
    }
}

/// Header line of the scan CSV, without the newline.
pub const SCAN_CSV_HEADER: &str = "theta,entropy,qfi_single,qfi_common,qfi_differential";

/// Renders scan rows as CSV: fixed header, '\n' line endings, one row per
/// grid point, every value through [`format_number`].
pub fn scan_csv(rows: &[ScanRow]) -> String {
    let mut out = String::with_capacity(64 * (rows.len() + 1));
    out.push_str(SCAN_CSV_HEADER);
    out.push('\n');
    for row in rows {
        out.push_str(&format_number(row.theta));
        out.push(',');
        out.push_str(&format_number(row.entropy));
        out.push(',');
        out.push_str(&format_number(row.qfi_single));
        out.push(',');
        out.push_str(&format_number(row.qfi_common));
        out.push(',');
        out.push_str(&format_number(row.qfi_differential));
        out.push('\n');
    }
    out
}
