//! Locale-independent significant-digit formatting, in the style of C's `%.Ng`.

/// Significant digits used for all report and CLI output.
pub const REPORT_DIGITS: usize = 12;

/// Formats `x` with `digits` significant digits, trailing zeros removed.
///
/// Uses fixed notation when the decimal exponent lies in `-5..digits`,
/// scientific (`1.5e-7`) otherwise.
pub fn fmt_sig(x: f64, digits: usize) -> String {
    let digits = digits.max(1);
    if x == 0.0 {
        return "0".to_string();
    }
    if !x.is_finite() {
        return x.to_string();
    }
    let sci = format!("{:.*e}", digits - 1, x);
    let (mantissa, exp) = sci.split_once('e').expect("exponent form");
    let exp: i32 = exp.parse().expect("integer exponent");
    if exp < -5 || exp >= digits as i32 {
        format!("{}e{}", trim_zeros(mantissa), exp)
    } else {
        let decimals = (digits as i32 - 1 - exp) as usize;
        trim_zeros(&format!("{x:.decimals$}")).to_string()
    }
}

/// `x` rounded to `digits` significant digits.
pub fn round_sig(x: f64, digits: usize) -> f64 {
    if x.is_finite() {
        fmt_sig(x, digits).parse().expect("formatted float parses")
    } else {
        x
    }
}

fn trim_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn twelve_digits() {
        assert_eq!(fmt_sig(12.0 * 2f64.sqrt(), 12), "16.9705627485");
        assert_eq!(fmt_sig(8.0, 12), "8");
        assert_eq!(fmt_sig(-0.5, 12), "-0.5");
        assert_eq!(fmt_sig(0.0, 12), "0");
        assert_eq!(fmt_sig(-0.0, 12), "0");
        assert_eq!(fmt_sig(1.0 / 3.0, 12), "0.333333333333");
        assert_eq!(fmt_sig(1.5e-7, 12), "1.5e-7");
        assert_eq!(fmt_sig(1.0e-5, 12), "0.00001");
        assert_eq!(fmt_sig(123456789012345.0, 12), "1.23456789012e14");
        assert_eq!(fmt_sig(9.999999999999995, 12), "10");
        assert_eq!(fmt_sig(f64::NAN, 12), "NaN");
    }

    #[test]
    fn seventeen_digits_round_trip() {
        for x in [0.1, 2f64.sqrt(), -1e-300, 6.02214076e23, 1.0 / 7.0] {
            assert_eq!(fmt_sig(x, 17).parse::<f64>().unwrap(), x);
        }
    }

    #[test]
    fn rounding() {
        assert_eq!(round_sig(16.970562748477143, 12), 16.9705627485);
        assert!(round_sig(f64::NAN, 12).is_nan());
    }
}
