use std::fmt;
use std::str::FromStr;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::{Error, Result};

/// Arbitrary-precision rational; always in lowest terms with positive
/// denominator.
pub type ExactRational = BigRational;

pub fn rational(num: i64, den: i64) -> ExactRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

pub fn from_biguint_ratio(num: BigUint, den: BigUint) -> ExactRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

/// Natural log of a positive big integer without overflowing `f64`.
pub fn ln_biguint(x: &BigUint) -> f64 {
    let bits = x.bits();
    if bits <= 1000 {
        return x.to_f64().expect("fits").ln();
    }
    let shift = bits - 64;
    (x >> shift).to_f64().expect("fits").ln() + shift as f64 * std::f64::consts::LN_2
}

/// Natural log of a positive rational.
pub fn ln_rational(r: &ExactRational) -> f64 {
    assert!(r.is_positive(), "ln of a non-positive rational");
    ln_biguint(r.numer().magnitude()) - ln_biguint(r.denom().magnitude())
}

/// Nearest `f64`; values beyond the `f64` range go through the log.
pub fn to_f64(r: &ExactRational) -> f64 {
    match r.to_f64() {
        Some(v) if v.is_finite() && (v != 0.0 || r.is_zero()) => v,
        _ if r.is_zero() => 0.0,
        _ => {
            let mag = ln_rational(&r.abs()).exp();
            if r.is_negative() {
                -mag
            } else {
                mag
            }
        }
    }
}

fn pow10(e: i64) -> ExactRational {
    let p = BigInt::from(10u32).pow(e.unsigned_abs() as u32);
    if e >= 0 {
        BigRational::from_integer(p)
    } else {
        BigRational::new(BigInt::one(), p)
    }
}

/// Decimal rendering rounded to `sig` significant digits (half up).
///
/// Positional notation for magnitudes in `[1e-6, 1e15)`, scientific
/// otherwise; trailing fractional zeros are trimmed.
pub fn decimal_string(r: &ExactRational, sig: usize) -> String {
    assert!(sig >= 1);
    if r.is_zero() {
        return "0".to_string();
    }
    let x = r.abs();
    let mut e = (ln_rational(&x) / std::f64::consts::LN_10).floor() as i64;
    while pow10(e) > x {
        e -= 1;
    }
    while pow10(e + 1) <= x {
        e += 1;
    }
    let scaled = &x * pow10(sig as i64 - 1 - e) + BigRational::new(BigInt::one(), BigInt::from(2));
    let mut digits = scaled.floor().to_integer();
    if digits == BigInt::from(10u32).pow(sig as u32) {
        digits /= 10;
        e += 1;
    }
    let digits = digits.to_string();
    let sign = if r.is_negative() { "-" } else { "" };

    let body = if (-6..15).contains(&e) {
        if e >= 0 {
            let int_len = e as usize + 1;
            let (int_part, frac) = if int_len >= digits.len() {
                (format!("{digits}{}", "0".repeat(int_len - digits.len())), "")
            } else {
                (digits[..int_len].to_string(), &digits[int_len..])
            };
            join_fraction(&int_part, frac)
        } else {
            let frac = format!("{}{digits}", "0".repeat((-e - 1) as usize));
            join_fraction("0", &frac)
        }
    } else {
        format!("{}e{e}", join_fraction(&digits[..1], &digits[1..]))
    };
    format!("{sign}{body}")
}

fn join_fraction(int_part: &str, frac: &str) -> String {
    let frac = frac.trim_end_matches('0');
    if frac.is_empty() {
        int_part.to_string()
    } else {
        format!("{int_part}.{frac}")
    }
}

/// `x` rounded to `sig` significant digits.
pub fn round_sig(x: f64, sig: usize) -> f64 {
    if !x.is_finite() || x == 0.0 {
        return x;
    }
    format!("{:.*e}", sig.saturating_sub(1), x)
        .parse()
        .expect("formatted float parses")
}

/// Bernoulli parameter `q` in `(0, 1)`.
///
/// `"a/b"` parses as an exact rational (with its nearest float alongside);
/// a decimal such as `"0.3"` parses as a float only, so routines that need
/// exact arithmetic refuse it.
#[derive(Debug, Clone, PartialEq)]
pub struct QParam {
    value: f64,
    exact: Option<ExactRational>,
}

impl QParam {
    pub fn exact(q: ExactRational) -> Result<Self> {
        if !(q.is_positive() && q < BigRational::one()) {
            return Err(Error::domain(format!("q = {q} is outside (0, 1)")));
        }
        Ok(QParam {
            value: to_f64(&q),
            exact: Some(q),
        })
    }

    pub fn float(q: f64) -> Result<Self> {
        check_open_unit(q)?;
        Ok(QParam {
            value: q,
            exact: None,
        })
    }

    pub fn one_half() -> Self {
        Self::exact(rational(1, 2)).expect("1/2 is in range")
    }

    pub fn value(&self) -> f64 {
        self.value
    }

    pub fn as_exact(&self) -> Option<&ExactRational> {
        self.exact.as_ref()
    }

    pub fn require_exact(&self) -> Result<&ExactRational> {
        self.exact.as_ref().ok_or_else(|| {
            Error::domain(format!(
                "q = {} is a decimal; exact computations need q written as a/b",
                self.value
            ))
        })
    }

    pub fn is_one_half(&self) -> bool {
        match &self.exact {
            Some(q) => *q == rational(1, 2),
            None => self.value == 0.5,
        }
    }
}

pub(crate) fn check_open_unit(q: f64) -> Result<()> {
    if q > 0.0 && q < 1.0 {
        Ok(())
    } else {
        Err(Error::domain(format!("q = {q} is outside (0, 1)")))
    }
}

pub(crate) fn check_open_unit_exact(q: &ExactRational) -> Result<()> {
    if q.is_positive() && *q < BigRational::one() {
        Ok(())
    } else {
        Err(Error::domain(format!("q = {q} is outside (0, 1)")))
    }
}

fn parse_integer(s: &str) -> Result<BigInt> {
    let digits = s.strip_prefix(['+', '-']).unwrap_or(s);
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return Err(Error::parse(format!("{s:?} is not an integer")));
    }
    s.parse().map_err(|_| Error::parse(format!("{s:?} is not an integer")))
}

/// Parses `"a/b"` into a reduced rational.
pub fn parse_rational(s: &str) -> Result<ExactRational> {
    let (a, b) = s
        .split_once('/')
        .ok_or_else(|| Error::parse(format!("{s:?} is not of the form a/b")))?;
    let (num, den) = (parse_integer(a.trim())?, parse_integer(b.trim())?);
    if den.is_zero() {
        return Err(Error::parse("zero denominator"));
    }
    Ok(BigRational::new(num, den))
}

impl FromStr for QParam {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.contains('/') {
            return Self::exact(parse_rational(s)?);
        }
        let is_decimal = !s.is_empty()
            && s.bytes()
                .all(|b| b.is_ascii_digit() || matches!(b, b'.' | b'e' | b'E' | b'+' | b'-'));
        if !is_decimal {
            return Err(Error::parse(format!("{s:?} is neither a/b nor a decimal")));
        }
        let v: f64 = s
            .parse()
            .map_err(|_| Error::parse(format!("{s:?} is not a decimal")))?;
        Self::float(v)
    }
}

impl fmt::Display for QParam {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.exact {
            Some(q) => write!(f, "{q}"),
            None => write!(f, "{}", self.value),
        }
    }
}

/// Numerator and denominator of a probability `a/b` as naturals.
pub(crate) fn split_probability(q: &ExactRational) -> (BigUint, BigUint) {
    let (num, den) = (q.numer(), q.denom());
    debug_assert!(num.sign() == Sign::Plus && den.sign() == Sign::Plus);
    debug_assert!(num.gcd(den).is_one());
    (num.magnitude().clone(), den.magnitude().clone())
}
