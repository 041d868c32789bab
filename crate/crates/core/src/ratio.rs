//! Helpers for exact rational scalars and the single float-to-exact boundary.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::{Error, Result};

/// Shorthand for a rational from an integer pair.
pub fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// Shorthand for an integer rational.
pub fn rint(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

pub fn to_f64(q: &BigRational) -> f64 {
    q.to_f64().unwrap_or(f64::NAN)
}

/// Snap a float to the simplest rational within `tol`, by truncating the
/// continued-fraction expansion. This is the only place floats become exact
/// values; everything downstream of it is honest rational arithmetic.
pub fn rationalize(x: f64, tol: f64) -> Result<BigRational> {
    if !x.is_finite() {
        return Err(Error::InvalidArgument(format!("cannot rationalize {x}")));
    }
    if x == 0.0 {
        return Ok(BigRational::zero());
    }
    let negative = x < 0.0;
    let target = x.abs();
    // Convergents p/q of the continued fraction of |x|.
    let (mut p0, mut q0) = (BigInt::one(), BigInt::zero());
    let (mut p1, mut q1) = (BigInt::from(target.floor() as i64), BigInt::one());
    let mut rem = target - target.floor();
    for _ in 0..64 {
        let approx = BigRational::new(p1.clone(), q1.clone());
        if (to_f64(&approx) - target).abs() <= tol * target.max(1.0) {
            break;
        }
        if rem.abs() < f64::EPSILON {
            break;
        }
        let inv = 1.0 / rem;
        let a = BigInt::from(inv.floor() as i64);
        rem = inv - inv.floor();
        let p2 = &a * &p1 + &p0;
        let q2 = &a * &q1 + &q0;
        p0 = std::mem::replace(&mut p1, p2);
        q0 = std::mem::replace(&mut q1, q2);
    }
    let mut out = BigRational::new(p1, q1);
    if negative {
        out = -out;
    }
    Ok(out)
}

/// Parse "3", "-3/2" or a decimal like "0.75" into an exact rational.
pub fn parse_rational(s: &str) -> Result<BigRational> {
    let s = s.trim();
    if let Some((num, den)) = s.split_once('/') {
        let n: BigInt = num
            .trim()
            .parse()
            .map_err(|_| Error::InvalidArgument(format!("bad rational: {s}")))?;
        let d: BigInt = den
            .trim()
            .parse()
            .map_err(|_| Error::InvalidArgument(format!("bad rational: {s}")))?;
        if d.is_zero() {
            return Err(Error::InvalidArgument(format!("zero denominator: {s}")));
        }
        return Ok(BigRational::new(n, d));
    }
    if let Some((int_part, frac_part)) = s.split_once('.') {
        let digits = frac_part.len() as u32;
        let sign = if int_part.trim_start().starts_with('-') { -1 } else { 1 };
        let whole: BigInt = if int_part.is_empty() || int_part == "-" {
            BigInt::zero()
        } else {
            int_part
                .parse()
                .map_err(|_| Error::InvalidArgument(format!("bad rational: {s}")))?
        };
        let frac: BigInt = frac_part
            .parse()
            .map_err(|_| Error::InvalidArgument(format!("bad rational: {s}")))?;
        let scale = BigInt::from(10u32).pow(digits);
        let total = whole * &scale + BigInt::from(sign) * frac;
        return Ok(BigRational::new(total, scale));
    }
    let n: BigInt = s
        .parse()
        .map_err(|_| Error::InvalidArgument(format!("bad rational: {s}")))?;
    Ok(BigRational::from_integer(n))
}

/// Render a rational as "p/q" (or "p" when integral) for reports.
pub fn format_rational(q: &BigRational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// True if the rational is a (possibly negative) integer.
pub fn is_integer(q: &BigRational) -> bool {
    q.is_integer()
}

/// Extract an i64 from an integral rational.
pub fn as_i64(q: &BigRational) -> Option<i64> {
    if q.is_integer() {
        q.numer().to_i64()
    } else {
        None
    }
}
