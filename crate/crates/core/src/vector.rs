//! Exact rational coordinate vectors in the ambient Euclidean space.

use std::fmt;
use std::ops::{Add, Index, Mul, Neg, Sub};

use num_rational::BigRational;
use num_traits::Zero;

use crate::ratio::{self, parse_rational};
use crate::{Error, Result};

/// A vector with exact rational coordinates. Weights, evaluation points and
/// roots are all `RatVec`s of the ambient dimension of their root system.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RatVec(pub Vec<BigRational>);

impl RatVec {
    pub fn zero(dim: usize) -> Self {
        RatVec(vec![BigRational::zero(); dim])
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn from_i64(coords: &[i64]) -> Self {
        RatVec(coords.iter().map(|&c| ratio::rint(c)).collect())
    }

    /// Parse "1,0,-1" or "1/2,3,-2/3".
    pub fn parse(s: &str) -> Result<Self> {
        let coords: Result<Vec<_>> = s.split(',').map(parse_rational).collect();
        Ok(RatVec(coords?))
    }

    pub fn dot(&self, other: &RatVec) -> BigRational {
        assert_eq!(self.dim(), other.dim(), "dot of mismatched dimensions");
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| a * b)
            .fold(BigRational::zero(), |acc, t| acc + t)
    }

    pub fn scale(&self, c: &BigRational) -> RatVec {
        RatVec(self.0.iter().map(|a| a * c).collect())
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    pub fn to_f64(&self) -> Vec<f64> {
        self.0.iter().map(ratio::to_f64).collect()
    }

    /// Rationalize a float vector through the continued-fraction snap.
    pub fn from_f64(coords: &[f64], tol: f64) -> Result<Self> {
        let v: Result<Vec<_>> = coords.iter().map(|&x| ratio::rationalize(x, tol)).collect();
        Ok(RatVec(v?))
    }

    pub fn check_dim(&self, expected: usize) -> Result<()> {
        if self.dim() != expected {
            return Err(Error::DimensionMismatch { expected, got: self.dim() });
        }
        Ok(())
    }
}

impl Index<usize> for RatVec {
    type Output = BigRational;
    fn index(&self, i: usize) -> &BigRational {
        &self.0[i]
    }
}

impl Add for &RatVec {
    type Output = RatVec;
    fn add(self, other: &RatVec) -> RatVec {
        assert_eq!(self.dim(), other.dim());
        RatVec(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }
}

impl Sub for &RatVec {
    type Output = RatVec;
    fn sub(self, other: &RatVec) -> RatVec {
        assert_eq!(self.dim(), other.dim());
        RatVec(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }
}

impl Neg for &RatVec {
    type Output = RatVec;
    fn neg(self) -> RatVec {
        RatVec(self.0.iter().map(|a| -a).collect())
    }
}

impl Mul<&RatVec> for &BigRational {
    type Output = RatVec;
    fn mul(self, v: &RatVec) -> RatVec {
        v.scale(self)
    }
}

impl fmt::Debug for RatVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{}", ratio::format_rational(c))?;
        }
        write!(f, ")")
    }
}

impl fmt::Display for RatVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|c| ratio::format_rational(c)).collect();
        write!(f, "{}", parts.join(","))
    }
}

/// Dot product of float vectors, for evaluation paths.
pub fn fdot(a: &[f64], b: &[f64]) -> f64 {
    debug_assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratio::rat;

    #[test]
    fn parse_and_dot() {
        let a = RatVec::parse("1,0,-1").unwrap();
        let b = RatVec::parse("1/2,3,1/2").unwrap();
        assert_eq!(a.dot(&b), rat(0, 1));
        assert_eq!(a.dot(&a), rat(2, 1));
    }

    #[test]
    fn arithmetic() {
        let a = RatVec::from_i64(&[2, 1]);
        let b = RatVec::from_i64(&[1, 1]);
        assert_eq!(&a - &b, RatVec::from_i64(&[1, 0]));
        assert_eq!(&a + &b, RatVec::from_i64(&[3, 2]));
        assert_eq!(-&a, RatVec::from_i64(&[-2, -1]));
        assert_eq!(a.scale(&rat(1, 2)), RatVec::parse("1,1/2").unwrap());
    }
}
