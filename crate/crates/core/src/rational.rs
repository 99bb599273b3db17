//! Exact scalars: rationals, Gaussian rationals and their text encoding.

use num_bigint::BigInt;
use num_complex::Complex;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Rational = BigRational;
pub type GaussianRational = Complex<BigRational>;

pub fn rat(n: i64, d: i64) -> Rational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    BigRational::from_integer(BigInt::from(n))
}

/// Parses `"p/q"`, `"p"` or `"-p/q"`. A zero denominator is a parse error.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let n: BigInt = num
        .parse()
        .map_err(|_| Error::Parse(format!("invalid rational numerator in {s:?}")))?;
    let d: BigInt = den
        .parse()
        .map_err(|_| Error::Parse(format!("invalid rational denominator in {s:?}")))?;
    if d.is_zero() {
        return Err(Error::Parse(format!("zero denominator in rational {s:?}")));
    }
    Ok(BigRational::new(n, d))
}

/// Canonical `"num/den"` form (always with a slash, denominator positive).
pub fn format_rational(r: &Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

pub fn rational_to_f64(r: &Rational) -> f64 {
    use num_traits::ToPrimitive;
    r.to_f64().unwrap_or_else(|| {
        // numerator/denominator too large for direct conversion
        let n = r.numer().to_f64().unwrap_or(f64::NAN);
        let d = r.denom().to_f64().unwrap_or(f64::NAN);
        n / d
    })
}

/// Least common multiple of the denominators, so that `lcm * row` is integral.
pub fn denominator_lcm<'a>(values: impl IntoIterator<Item = &'a Rational>) -> BigInt {
    values
        .into_iter()
        .fold(BigInt::one(), |acc, v| acc.lcm(v.denom()))
}

pub fn gaussian(re: Rational, im: Rational) -> GaussianRational {
    Complex::new(re, im)
}

pub fn is_gaussian_zero(z: &GaussianRational) -> bool {
    z.re.is_zero() && z.im.is_zero()
}

/// `i^k` as a Gaussian rational.
pub fn i_pow(k: usize) -> GaussianRational {
    match k % 4 {
        0 => gaussian(int(1), int(0)),
        1 => gaussian(int(0), int(1)),
        2 => gaussian(int(-1), int(0)),
        _ => gaussian(int(0), int(-1)),
    }
}

pub fn abs_max<'a>(values: impl IntoIterator<Item = &'a Rational>) -> Rational {
    values
        .into_iter()
        .map(|v| v.abs())
        .fold(Rational::zero(), |a, b| if b > a { b } else { a })
}
