//! Locale-free numeric formatting for CSV and reports.

/// Formats `x` with `digits` significant digits: fixed notation for
/// moderate exponents, scientific otherwise, trailing zeros stripped.
pub fn sig(x: f64, digits: usize) -> String {
    debug_assert!(digits >= 1);
    if x == 0.0 {
        return "0".to_string();
    }
    if !x.is_finite() {
        return x.to_string();
    }
    let sci = format!("{:.*e}", digits - 1, x);
    let (mantissa, exponent) = sci.split_once('e').expect("scientific notation");
    let exp: i32 = exponent.parse().expect("numeric exponent");
    if exp < -4 || exp >= digits as i32 {
        let mantissa = mantissa.trim_end_matches('0').trim_end_matches('.');
        format!("{mantissa}e{exp}")
    } else {
        let frac = (digits as i32 - 1 - exp).max(0) as usize;
        let fixed = format!("{x:.frac$}");
        fixed.trim_end_matches('0').trim_end_matches('.').to_string()
    }
}

/// CSV convention: floats carry 12 significant digits so a re-parse
/// reproduces the in-memory value to printed precision.
pub fn csv_float(x: f64) -> String {
    sig(x, 12)
}
