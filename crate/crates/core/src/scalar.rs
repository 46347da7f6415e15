//! Scalars: the Gaussian rationals ℚ(i), and the field-with-involution trait
//! the matrix layer is generic over.
//!
//! A scalar is an exact complex number `a + b·i` with rational `a`, `b`.
//! Rationals are arbitrary-precision and always kept in normal form (reduced,
//! strictly positive denominator), so scalar equality is structural and all
//! field axioms hold exactly. The text syntax is `a/b`, `a/b+c/d*i`, `i`,
//! `-i`, `3`, `-2/5*i`; denominators may be omitted when they are 1 and
//! whitespace is ignored.

use std::fmt;
use std::ops::Neg;

use num_bigint::BigInt;
use num_complex::Complex;
use num_rational::BigRational;
use num_traits::{Num, One, Signed, Zero};
use thiserror::Error;

/// A field equipped with an involution.
///
/// The elimination routines in [`crate::matrix`] are generic over this trait;
/// the production instantiation is [`Scalar`].
pub trait StarField: Num + Clone + Neg<Output = Self> + fmt::Display {
    /// The involution of the field; complex conjugation for ℚ(i).
    fn conj(&self) -> Self;
}

/// Exact rationals with arbitrary-precision numerator and denominator.
pub type Rational = BigRational;

/// The Gaussian rationals ℚ(i).
pub type Scalar = Complex<Rational>;

impl StarField for Scalar {
    fn conj(&self) -> Self {
        Complex::conj(self)
    }
}

/// The rational `num/den`. Panics if `den` is zero.
pub fn rational(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// The integer `n` as a scalar.
pub fn int(n: i64) -> Scalar {
    Complex::new(rational(n, 1), Rational::zero())
}

/// The real scalar `num/den`.
pub fn ratio(num: i64, den: i64) -> Scalar {
    Complex::new(rational(num, den), Rational::zero())
}

/// The purely imaginary scalar `(num/den)·i`.
pub fn imag(num: i64, den: i64) -> Scalar {
    Complex::new(Rational::zero(), rational(num, den))
}

/// Renders a rational in the `a/b` syntax, omitting the denominator when 1.
pub fn format_rational(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Renders a scalar in the canonical text syntax.
///
/// The output is a normal form: [`parse_scalar`] ∘ `format_scalar` is the
/// identity, and `format_scalar` ∘ [`parse_scalar`] is the identity on
/// strings that are already in this form.
pub fn format_scalar(s: &Scalar) -> String {
    if s.im.is_zero() {
        return format_rational(&s.re);
    }
    let imag_part = |r: &Rational| {
        if r.is_one() {
            "i".to_string()
        } else {
            format!("{}*i", format_rational(r))
        }
    };
    if s.re.is_zero() {
        return if s.im.is_one() {
            "i".to_string()
        } else if (-&s.im).is_one() {
            "-i".to_string()
        } else {
            format!("{}*i", format_rational(&s.im))
        };
    }
    if s.im.is_negative() {
        format!("{}-{}", format_rational(&s.re), imag_part(&-&s.im))
    } else {
        format!("{}+{}", format_rational(&s.re), imag_part(&s.im))
    }
}

/// Failure to read a scalar from text.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("invalid scalar `{text}`: {msg}")]
pub struct ParseScalarError {
    pub text: String,
    pub msg: String,
}

/// Parses the scalar text syntax. Whitespace-insensitive.
pub fn parse_scalar(text: &str) -> Result<Scalar, ParseScalarError> {
    let err = |msg: &str| ParseScalarError {
        text: text.trim().to_string(),
        msg: msg.to_string(),
    };
    let compact: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    if compact.is_empty() {
        return Err(err("empty"));
    }
    let bytes = compact.as_bytes();
    let mut pos = 0;
    let mut re: Option<Rational> = None;
    let mut im: Option<Rational> = None;
    while pos < bytes.len() {
        let mut negate = false;
        if bytes[pos] == b'+' || bytes[pos] == b'-' {
            negate = bytes[pos] == b'-';
            pos += 1;
        } else if pos > 0 {
            return Err(err("expected `+` or `-` between terms"));
        }
        let start = pos;
        while pos < bytes.len() && (bytes[pos].is_ascii_digit() || bytes[pos] == b'/') {
            pos += 1;
        }
        let coef_text = &compact[start..pos];
        let mut imaginary = false;
        if pos < bytes.len() && bytes[pos] == b'*' {
            if coef_text.is_empty() {
                return Err(err("`*` without a coefficient"));
            }
            pos += 1;
            if pos < bytes.len() && bytes[pos] == b'i' {
                imaginary = true;
                pos += 1;
            } else {
                return Err(err("expected `i` after `*`"));
            }
        } else if pos < bytes.len() && bytes[pos] == b'i' {
            imaginary = true;
            pos += 1;
        }
        let coef = if coef_text.is_empty() {
            if !imaginary {
                return Err(err("expected a number or `i`"));
            }
            Rational::one()
        } else {
            parse_rational_text(coef_text).map_err(|m| err(&m))?
        };
        let value = if negate { -coef } else { coef };
        let slot = if imaginary { &mut im } else { &mut re };
        if slot.is_some() {
            return Err(err(if imaginary {
                "duplicate imaginary part"
            } else {
                "duplicate real part"
            }));
        }
        *slot = Some(value);
    }
    Ok(Complex::new(
        re.unwrap_or_else(Rational::zero),
        im.unwrap_or_else(Rational::zero),
    ))
}

fn parse_rational_text(s: &str) -> Result<Rational, String> {
    let mut parts = s.split('/');
    let numer_text = parts.next().unwrap();
    let numer: BigInt = numer_text
        .parse()
        .map_err(|_| format!("invalid integer `{numer_text}`"))?;
    match parts.next() {
        None => Ok(Rational::from_integer(numer)),
        Some(denom_text) => {
            if parts.next().is_some() {
                return Err("too many `/`".to_string());
            }
            let denom: BigInt = denom_text
                .parse()
                .map_err(|_| format!("invalid integer `{denom_text}`"))?;
            if denom.is_zero() {
                return Err("zero denominator".to_string());
            }
            Ok(Rational::new(numer, denom))
        }
    }
}
