//! Directed decimal rendering of binary64 values.
//!
//! Every finite double has a terminating decimal expansion of at most 767
//! significant digits; `{:e}` with a large precision prints it exactly, and
//! truncation plus an optional carry then rounds it in a chosen direction.

const EXACT_DIGITS: usize = 800;

/// Largest decimal with `sig` significant digits that is `<= x`.
pub fn format_down(x: f64, sig: usize) -> String {
    format_directed(x, sig, false)
}

/// Smallest decimal with `sig` significant digits that is `>= x`.
pub fn format_up(x: f64, sig: usize) -> String {
    format_directed(x, sig, true)
}

fn format_directed(x: f64, sig: usize, up: bool) -> String {
    assert!(sig >= 1);
    if x.is_nan() {
        return "nan".into();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    if x == 0.0 {
        return "0".into();
    }
    let negative = x < 0.0;
    let exact = format!("{:.*e}", EXACT_DIGITS, x.abs());
    let (mantissa, exp) = exact.split_once('e').expect("exponent marker");
    let mut exp: i32 = exp.parse().expect("exponent");
    let all: Vec<u8> = mantissa
        .bytes()
        .filter(|b| b.is_ascii_digit())
        .map(|b| b - b'0')
        .collect();
    let keep = sig.min(all.len());
    let mut digits = all[..keep].to_vec();
    let inexact = all[keep..].iter().any(|&d| d != 0);
    // Magnitude rounds away from zero when heading up on a positive value or
    // down on a negative one.
    if inexact && (up != negative) {
        let mut i = digits.len();
        loop {
            if i == 0 {
                digits.insert(0, 1);
                digits.pop();
                exp += 1;
                break;
            }
            i -= 1;
            if digits[i] == 9 {
                digits[i] = 0;
            } else {
                digits[i] += 1;
                break;
            }
        }
    }
    while digits.len() > 1 && *digits.last().unwrap() == 0 {
        digits.pop();
    }
    let body = render(&digits, exp);
    if negative {
        format!("-{body}")
    } else {
        body
    }
}

/// Digits `d0.d1d2...` times `10^exp`, plain notation for moderate
/// exponents and scientific otherwise.
fn render(digits: &[u8], exp: i32) -> String {
    let s: String = digits.iter().map(|d| char::from(b'0' + d)).collect();
    if (-6..=20).contains(&exp) {
        if exp < 0 {
            format!("0.{}{}", "0".repeat((-exp - 1) as usize), s)
        } else {
            let int_len = exp as usize + 1;
            if s.len() <= int_len {
                format!("{}{}", s, "0".repeat(int_len - s.len()))
            } else {
                format!("{}.{}", &s[..int_len], &s[int_len..])
            }
        }
    } else if s.len() == 1 {
        format!("{s}e{exp}")
    } else {
        format!("{}.{}e{}", &s[..1], &s[1..], exp)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exact_values_print_unchanged() {
        assert_eq!(format_down(0.3125, 17), "0.3125");
        assert_eq!(format_up(0.3125, 17), "0.3125");
        assert_eq!(format_up(23.0, 5), "23");
        assert_eq!(format_down(-1.5, 3), "-1.5");
        assert_eq!(format_down(1e-30, 3), "1e-30");
    }

    #[test]
    fn inexact_values_round_outward() {
        // 0.1 as a double is 0.1000000000000000055511151231257827...
        assert_eq!(format_down(0.1, 17), "0.1");
        assert_eq!(format_up(0.1, 17), "0.10000000000000001");
        assert_eq!(format_down(-0.1, 17), "-0.10000000000000001");
        assert_eq!(format_up(-0.1, 17), "-0.1");
        assert_eq!(format_up(0.99999, 3), "1");
        assert_eq!(format_up(9.99e25, 2), "1e26");
    }

    #[test]
    fn directed_strings_bracket_the_value() {
        for &x in &[std::f64::consts::PI, -2.0f64.sqrt(), 1.0 / 3.0, 6.02e23, 1.6e-19] {
            for sig in [3, 8, 17] {
                let lo: f64 = format_down(x, sig).parse().unwrap();
                let hi: f64 = format_up(x, sig).parse().unwrap();
                assert!(lo <= x && x <= hi, "{x} sig {sig}: {lo} {hi}");
            }
        }
    }
}
