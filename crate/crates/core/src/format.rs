//! Output number formatting shared by the CSV and JSON writers.

/// Rounds to 15 significant digits. Non-finite values pass through.
pub fn round15(value: f64) -> f64 {
    if !value.is_finite() || value == 0.0 {
        return value;
    }
    format!("{value:.14e}").parse().unwrap_or(value)
}

/// Shortest representation of `value` rounded to 15 significant digits.
pub fn sig15(value: f64) -> String {
    let rounded = round15(value);
    if rounded == 0.0 {
        // drop the sign of negative zero
        return "0".to_string();
    }
    let magnitude = rounded.abs();
    if (1e-5..1e16).contains(&magnitude) {
        format!("{rounded}")
    } else {
        format!("{rounded:e}")
    }
}
