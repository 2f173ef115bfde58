//! Exact rational helpers: factorials, Pochhammer symbols, parsing.

use rug::{Integer, Rational};

use crate::error::{Error, Result};

pub fn r(n: i64) -> Rational {
    Rational::from(n)
}

pub fn q(num: i64, den: i64) -> Rational {
    Rational::from((num, den))
}

/// Rising factorial a(a+1)...(a+k-1).
pub fn rising(a: &Rational, k: usize) -> Rational {
    let mut acc = Rational::from(1);
    let mut t = a.clone();
    for _ in 0..k {
        acc *= &t;
        t += 1;
    }
    acc
}

/// Falling factorial a(a-1)...(a-k+1).
pub fn falling(a: &Rational, k: usize) -> Rational {
    let mut acc = Rational::from(1);
    let mut t = a.clone();
    for _ in 0..k {
        acc *= &t;
        t -= 1;
    }
    acc
}

pub fn rising_all(a: &[Rational], k: usize) -> Rational {
    a.iter().fold(Rational::from(1), |acc, x| acc * rising(x, k))
}

pub fn factorial(k: usize) -> Integer {
    Integer::from(Integer::factorial(k as u32))
}

pub fn binomial(n: usize, k: usize) -> Integer {
    if k > n {
        return Integer::new();
    }
    Integer::from(Integer::binomial_u(n as u32, k as u32))
}

/// n(n-1)...(n-k+1) for integer n.
pub fn falling_int(n: usize, k: usize) -> Integer {
    if k > n {
        return Integer::new();
    }
    let mut acc = Integer::from(1);
    for j in 0..k {
        acc *= (n - j) as u64;
    }
    acc
}

pub fn pow(x: &Rational, k: usize) -> Rational {
    let mut acc = Rational::from(1);
    for _ in 0..k {
        acc *= x;
    }
    acc
}

/// True when `x` lies in {0, -1, ..., -m}.
pub fn is_nonpositive_int_above(x: &Rational, m: usize) -> bool {
    if *x.denom() != 1 || *x.numer() > 0 {
        return false;
    }
    let v = Integer::from(-x.numer());
    v <= m as u64
}

pub fn as_integer(x: &Rational) -> Option<i64> {
    if *x.denom() == 1 {
        x.numer().to_i64()
    } else {
        None
    }
}

/// Accepts `p`, `p/q` and plain decimals such as `-0.45` or `1e-3`, all converted exactly.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    if s.is_empty() {
        return Err(Error::Parse("empty rational".into()));
    }
    if let Ok(v) = s.parse::<Rational>() {
        return Ok(v);
    }
    let (mant, exp) = match s.find(['e', 'E']) {
        Some(i) => (&s[..i], s[i + 1..].parse::<i32>().map_err(|_| bad(s))?),
        None => (s, 0),
    };
    let (neg, mant) = match mant.strip_prefix('-') {
        Some(m) => (true, m),
        None => (false, mant.strip_prefix('+').unwrap_or(mant)),
    };
    let (int_part, frac_part) = mant.split_once('.').unwrap_or((mant, ""));
    if int_part.is_empty() && frac_part.is_empty() {
        return Err(bad(s));
    }
    if !int_part.chars().chain(frac_part.chars()).all(|c| c.is_ascii_digit()) {
        return Err(bad(s));
    }
    let digits = format!("{int_part}{frac_part}");
    let mut v = Rational::from(digits.parse::<Integer>().map_err(|_| bad(s))?);
    let shift = exp - frac_part.len() as i32;
    let ten = Rational::from(10);
    if shift >= 0 {
        v *= pow(&ten, shift as usize);
    } else {
        v /= pow(&ten, (-shift) as usize);
    }
    Ok(if neg { -v } else { v })
}

fn bad(s: &str) -> Error {
    Error::Parse(format!("not a rational number: '{s}'"))
}

/// Comma separated list of rationals; an empty string yields an empty list.
pub fn parse_list(s: &str) -> Result<Vec<Rational>> {
    if s.trim().is_empty() {
        return Ok(Vec::new());
    }
    s.split(',').map(parse_rational).collect()
}

pub fn to_f64(x: &Rational) -> f64 {
    x.to_f64()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pochhammer_values() {
        assert_eq!(rising(&r(3), 2), 12);
        assert_eq!(rising(&q(7, 3), 0), 1);
        assert_eq!(falling(&r(5), 2), 20);
        assert_eq!(rising(&r(-3), 4), 0);
        assert_eq!(falling_int(5, 2), 20);
    }

    #[test]
    fn parses_fractions_and_decimals() {
        assert_eq!(parse_rational("3/7").unwrap(), q(3, 7));
        assert_eq!(parse_rational("-0.45").unwrap(), q(-9, 20));
        assert_eq!(parse_rational("1e-3").unwrap(), q(1, 1000));
        assert_eq!(parse_rational("2.5E2").unwrap(), r(250));
        assert!(parse_rational("abc").is_err());
        assert_eq!(parse_list("1/2, 3/7").unwrap(), vec![q(1, 2), q(3, 7)]);
        assert!(parse_list("").unwrap().is_empty());
    }

    #[test]
    fn nonpositive_integer_window() {
        assert!(is_nonpositive_int_above(&r(0), 3));
        assert!(is_nonpositive_int_above(&r(-3), 3));
        assert!(!is_nonpositive_int_above(&r(-4), 3));
        assert!(!is_nonpositive_int_above(&q(-1, 2), 3));
        assert!(!is_nonpositive_int_above(&r(1), 3));
    }
}
