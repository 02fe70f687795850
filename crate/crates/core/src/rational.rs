//! Exact rational helpers: parsing, the `num/den` wire format and a
//! rounded decimal rendering.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};

/// Arbitrary-precision rational used throughout the crate.
pub type Ratio = BigRational;

pub fn int(v: i64) -> Ratio {
    Ratio::from_integer(BigInt::from(v))
}

pub fn frac(n: i64, d: i64) -> Ratio {
    Ratio::new(BigInt::from(n), BigInt::from(d))
}

/// `base^exp` for a possibly negative exponent. `0^0 = 1`.
pub fn powi(base: &Ratio, exp: i64) -> Ratio {
    if exp >= 0 {
        num_traits::pow(base.clone(), exp as usize)
    } else {
        num_traits::pow(base.recip(), (-exp) as usize)
    }
}

/// Parses `a/b`, a signed integer or a plain decimal such as `0.25`.
pub fn parse_ratio(text: &str) -> Result<Ratio> {
    let s = text.trim();
    let bad = || Error::invalid(format!("cannot parse rational {text:?} (expected e.g. 1/2, 3 or 0.25)"));
    if s.is_empty() {
        return Err(bad());
    }
    if let Some((n, d)) = s.split_once('/') {
        let n: BigInt = parse_int(n).ok_or_else(bad)?;
        let d: BigInt = parse_int(d).ok_or_else(bad)?;
        if d.is_zero() {
            return Err(Error::invalid(format!("zero denominator in {text:?}")));
        }
        return Ok(Ratio::new(n, d));
    }
    if let Some((whole, fracpart)) = s.split_once('.') {
        if fracpart.is_empty() || !fracpart.bytes().all(|b| b.is_ascii_digit()) {
            return Err(bad());
        }
        let negative = whole.starts_with('-');
        let whole_digits = whole.trim_start_matches(['-', '+']);
        if !whole_digits.bytes().all(|b| b.is_ascii_digit()) || whole.len() - whole_digits.len() > 1 {
            return Err(bad());
        }
        let digits = format!("{whole_digits}{fracpart}");
        let mut n: BigInt = digits.parse().map_err(|_| bad())?;
        if negative {
            n = -n;
        }
        let d = num_traits::pow(BigInt::from(10), fracpart.len());
        return Ok(Ratio::new(n, d));
    }
    Ok(Ratio::from_integer(parse_int(s).ok_or_else(bad)?))
}

fn parse_int(s: &str) -> Option<BigInt> {
    let t = s.trim();
    let digits = t.strip_prefix(['-', '+']).unwrap_or(t);
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    t.parse().ok()
}

/// Wire format: always `numerator/denominator`, denominator positive.
pub fn to_wire(r: &Ratio) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// Human format: integers print bare, everything else as `num/den`.
pub fn to_display(r: &Ratio) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        to_wire(r)
    }
}

/// Decimal rendering rounded (half away from zero) to `sig` significant
/// digits. Uses plain notation for moderate magnitudes and `e` notation
/// otherwise.
pub fn to_decimal(r: &Ratio, sig: usize) -> String {
    assert!(sig >= 1);
    if r.is_zero() {
        return "0".to_string();
    }
    let negative = r.is_negative();
    let num = r.numer().abs();
    let den = r.denom().clone();

    // exponent e with 10^e <= |r| < 10^(e+1)
    let mut e = num.to_string().len() as i64 - den.to_string().len() as i64;
    let ten = BigInt::from(10);
    let cmp_pow = |e: i64| -> bool {
        // |r| >= 10^e ?
        if e >= 0 {
            num >= &den * num_traits::pow(ten.clone(), e as usize)
        } else {
            &num * num_traits::pow(ten.clone(), (-e) as usize) >= den
        }
    };
    while !cmp_pow(e) {
        e -= 1;
    }
    while cmp_pow(e + 1) {
        e += 1;
    }

    // scaled = round(|r| * 10^(sig-1-e))
    let shift = sig as i64 - 1 - e;
    let (sn, sd) = if shift >= 0 {
        (&num * num_traits::pow(ten.clone(), shift as usize), den.clone())
    } else {
        (num.clone(), &den * num_traits::pow(ten.clone(), (-shift) as usize))
    };
    let (q, rem) = sn.div_rem(&sd);
    let mut mant = if &rem * 2 >= sd { q + 1 } else { q };
    if mant.to_string().len() > sig {
        mant /= 10;
        e += 1;
    }
    let mut digits = mant.to_string();
    // strip trailing zeros of the mantissa
    while digits.len() > 1 && digits.ends_with('0') {
        digits.pop();
    }

    let body = if (-6..21).contains(&e) {
        if e >= 0 {
            let int_len = e as usize + 1;
            if digits.len() <= int_len {
                format!("{digits}{}", "0".repeat(int_len - digits.len()))
            } else {
                format!("{}.{}", &digits[..int_len], &digits[int_len..])
            }
        } else {
            format!("0.{}{digits}", "0".repeat((-e - 1) as usize))
        }
    } else if digits.len() == 1 {
        format!("{digits}e{e}")
    } else {
        format!("{}.{}e{e}", &digits[..1], &digits[1..])
    };
    if negative {
        format!("-{body}")
    } else {
        body
    }
}

pub(crate) fn serde_ratio<S: serde::Serializer>(r: &Ratio, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&to_wire(r))
}

pub(crate) fn serde_ratios<S: serde::Serializer>(v: &[Ratio], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(to_wire))
}

/// Lossy conversion, adequate for thresholds and reporting.
pub fn to_f64(r: &Ratio) -> f64 {
    use num_traits::ToPrimitive;
    if let Some(v) = r.to_f64() {
        if v.is_finite() {
            return v;
        }
    }
    // fall back on a scaled division for very large numerators/denominators
    let n = r.numer();
    let d = r.denom();
    let shift = n.bits().max(d.bits()).saturating_sub(1000);
    let n = (n >> shift).to_f64().unwrap_or(0.0);
    let d = (d >> shift).to_f64().unwrap_or(f64::INFINITY);
    n / d
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_forms() {
        assert_eq!(parse_ratio("1/2").unwrap(), frac(1, 2));
        assert_eq!(parse_ratio(" 6/4 ").unwrap(), frac(3, 2));
        assert_eq!(parse_ratio("-3").unwrap(), int(-3));
        assert_eq!(parse_ratio("0.25").unwrap(), frac(1, 4));
        assert_eq!(parse_ratio("-1.5").unwrap(), frac(-3, 2));
        for bad in ["", "1/0", "a", "1/", "/2", "1.2.3", "--1", "0.", "1/-", "+-1"] {
            assert!(parse_ratio(bad).is_err(), "{bad}");
        }
    }

    #[test]
    fn wire_and_display() {
        assert_eq!(to_wire(&int(4)), "4/1");
        assert_eq!(to_display(&int(4)), "4");
        assert_eq!(to_display(&frac(-2, 6)), "-1/3");
    }

    #[test]
    fn decimal_rounding() {
        assert_eq!(to_decimal(&frac(1, 3), 12), "0.333333333333");
        assert_eq!(to_decimal(&frac(2, 3), 12), "0.666666666667");
        assert_eq!(to_decimal(&int(6), 12), "6");
        assert_eq!(to_decimal(&frac(27, 2), 12), "13.5");
        assert_eq!(to_decimal(&frac(-1, 8), 2), "-0.13");
        assert_eq!(to_decimal(&int(999_999), 3), "1000000");
        assert_eq!(to_decimal(&frac(1, 10_000_000), 12), "1e-7");
        let abra: Ratio = parse_ratio("3670344487444778").unwrap();
        assert_eq!(to_decimal(&abra, 12), "3670344487440000");
        let huge = powi(&int(26), 30);
        assert_eq!(to_decimal(&huge, 12), "2.81319890128e42");
    }

    #[test]
    fn float_fallback() {
        let tiny = powi(&int(10), -400) * powi(&int(10), 399);
        assert!((to_f64(&tiny) - 0.1).abs() < 1e-12);
        let wide = Ratio::new(
            num_traits::pow(BigInt::from(10), 400),
            num_traits::pow(BigInt::from(10), 399) * 4,
        );
        assert!((to_f64(&wide) - 2.5).abs() < 1e-12);
    }
}
