//! Display rounding for reported ratios.

/// Rounds half away from zero to two decimals.
///
/// Values such as `0.885` are not exactly representable, so the scaled value
/// is nudged by a relative `1e-9` before rounding to keep ties rounding up.
pub fn round_half_up_2(x: f64) -> f64 {
    let scaled = x * 100.0;
    let nudge = scaled.abs().max(1.0) * 1e-9;
    let rounded = (scaled + nudge.copysign(scaled)).round() / 100.0;
    // avoid printing "-0.00"
    rounded + 0.0
}

/// Two-decimal text used as the display companion of a ratio.
pub fn format_ratio(x: f64) -> String {
    format!("{:.2}", round_half_up_2(x))
}
