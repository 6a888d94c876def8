//! Deterministic number formatting for CSV artifacts.
//!
//! [`fmt6`] renders a float with six significant digits, trimming trailing
//! zeros, switching to exponent form outside `1e-4..1e6` (the behaviour of C
//! `%.6g`, except the exponent carries no zero padding). Byte-identical
//! output for identical inputs is what the artifact determinism guarantees
//! rest on.

/// Six-significant-digit rendering of `x`.
pub fn fmt6(x: f64) -> String {
    if x == 0.0 {
        return "0".to_string();
    }
    if x.is_nan() {
        return "nan".to_string();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf" } else { "-inf" }.to_string();
    }
    let sci = format!("{:.5e}", x);
    let (_, exp) = sci.split_once('e').expect("scientific format");
    let exp: i32 = exp.parse().expect("exponent");
    if (-4..6).contains(&exp) {
        let prec = (5 - exp).max(0) as usize;
        trim_zeros(format!("{x:.prec$}"))
    } else {
        let (mant, _) = sci.split_once('e').expect("scientific format");
        format!("{}e{}", trim_zeros(mant.to_string()), exp)
    }
}

fn trim_zeros(mut s: String) -> String {
    if s.contains('.') {
        while s.ends_with('0') {
            s.pop();
        }
        if s.ends_with('.') {
            s.pop();
        }
    }
    s
}
