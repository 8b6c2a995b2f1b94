//! Fixed significant-digit formatting in the style of C's `%.Ng`.

/// Formats `x` with `digits` significant digits, trailing zeros removed.
/// Scientific notation is used when the decimal exponent is below -4 or at
/// least `digits`.
pub fn fmt_sig(x: f64, digits: usize) -> String {
    assert!(digits >= 1, "need at least one significant digit");
    if x == 0.0 {
        return "0".to_string();
    }
    if !x.is_finite() {
        return x.to_string();
    }
    let sci = format!("{:.*e}", digits - 1, x);
    let (mantissa, exp) = sci.split_once('e').expect("`e` formatting has an exponent");
    let exp: i32 = exp.parse().expect("exponent is an integer");
    if exp < -4 || exp >= digits as i32 {
        let sign = if exp < 0 { '-' } else { '+' };
        format!("{}e{sign}{:02}", trim_zeros(mantissa), exp.abs())
    } else {
        let decimals = (digits as i32 - 1 - exp).max(0) as usize;
        trim_zeros(&format!("{x:.decimals$}")).to_string()
    }
}

fn trim_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

/// `x` rounded to `digits` significant digits.
pub fn round_sig(x: f64, digits: usize) -> f64 {
    fmt_sig(x, digits).parse().unwrap_or(x)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn matches_printf_g() {
        let cases = [
            (0.0, 6, "0"),
            (1.0, 6, "1"),
            (0.5, 12, "0.5"),
            (1.0 / 7.0, 12, "0.142857142857"),
            (1.0 / 7.0, 6, "0.142857"),
            (0.017_014_477_9, 6, "0.0170145"),
            (1e-5, 6, "1e-05"),
            (1.234_567_8e-7, 4, "1.235e-07"),
            (123_456_789.0, 6, "1.23457e+08"),
            (999_999.5, 6, "1e+06"),
            (-2.5, 6, "-2.5"),
            (3e9, 12, "3000000000"),
            (0.000_123_4, 6, "0.0001234"),
        ];
        for (x, d, want) in cases {
            assert_eq!(fmt_sig(x, d), want, "x={x} digits={d}");
        }
    }

    #[test]
    fn rounding_is_idempotent() {
        for x in [1.0 / 3.0, 0.549_382_1e-3, 918.0 / 1602.0, 1.234e-11] {
            let r = round_sig(x, 12);
            assert_eq!(round_sig(r, 12), r);
            assert_eq!(fmt_sig(r, 12), fmt_sig(x, 12));
        }
    }
}
