//! Exact rational scalars and points, plus their `"p/q"` text form.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::lattice::LatticePoint;

pub type Q = BigRational;

pub fn q_int(v: i64) -> Q {
    Q::from_integer(BigInt::from(v))
}

pub fn q_frac(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

/// Serializes a rational as `"p/q"`; the denominator is always written.
pub fn format_q(v: &Q) -> String {
    format!("{}/{}", v.numer(), v.denom())
}

/// Parses `"p/q"` or a bare integer `"p"`.
pub fn parse_q(s: &str) -> Result<Q> {
    let s = s.trim();
    let bad = || Error::Parse(format!("not a rational: {s:?}"));
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            Ok(Q::new(n, d))
        }
        None => Ok(Q::from_integer(s.parse().map_err(|_| bad())?)),
    }
}

/// A point of the plane with exact rational coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct QPoint {
    pub x: Q,
    pub y: Q,
}

impl QPoint {
    pub fn new(x: Q, y: Q) -> Self {
        Self { x, y }
    }

    pub fn zero() -> Self {
        Self::new(Q::zero(), Q::zero())
    }

    pub fn from_ints(x: i64, y: i64) -> Self {
        Self::new(q_int(x), q_int(y))
    }

    pub fn from_lattice(p: LatticePoint) -> Self {
        Self::from_ints(p.x, p.y)
    }

    pub fn scale(&self, t: &Q) -> Self {
        Self::new(&self.x * t, &self.y * t)
    }

    /// `self + t * dir`.
    pub fn offset(&self, t: &Q, dir: LatticePoint) -> Self {
        Self::new(
            &self.x + t * q_int(dir.x),
            &self.y + t * q_int(dir.y),
        )
    }

    /// Cross product with an integer direction.
    pub fn cross_dir(&self, dir: LatticePoint) -> Q {
        &self.x * q_int(dir.y) - &self.y * q_int(dir.x)
    }

    pub fn max_abs(&self) -> Q {
        let (a, b) = (self.x.abs(), self.y.abs());
        if a > b {
            a
        } else {
            b
        }
    }

    pub fn to_strings(&self) -> [String; 2] {
        [format_q(&self.x), format_q(&self.y)]
    }
}

impl fmt::Display for QPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

impl Add for &QPoint {
    type Output = QPoint;
    fn add(self, rhs: &QPoint) -> QPoint {
        QPoint::new(&self.x + &rhs.x, &self.y + &rhs.y)
    }
}

impl Sub for &QPoint {
    type Output = QPoint;
    fn sub(self, rhs: &QPoint) -> QPoint {
        QPoint::new(&self.x - &rhs.x, &self.y - &rhs.y)
    }
}

impl Neg for &QPoint {
    type Output = QPoint;
    fn neg(self) -> QPoint {
        QPoint::new(-&self.x, -&self.y)
    }
}

impl Mul<&Q> for &QPoint {
    type Output = QPoint;
    fn mul(self, rhs: &Q) -> QPoint {
        self.scale(rhs)
    }
}

/// `n!` as a big integer.
pub fn factorial(n: u64) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * BigInt::from(k))
}

/// Binomial coefficient with the convention `C(n, k) = 0` outside `0 <= k <= n`.
pub fn binomial(n: i64, k: i64) -> BigInt {
    if k < 0 || n < 0 || k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn q_text_form() {
        assert_eq!(format_q(&q_frac(6, -4)), "-3/2");
        assert_eq!(format_q(&q_int(5)), "5/1");
        assert_eq!(parse_q("-3/2").unwrap(), q_frac(-3, 2));
        assert_eq!(parse_q(" 7 ").unwrap(), q_int(7));
        assert!(parse_q("1/0").is_err());
        assert!(parse_q("x").is_err());
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(5, 2), BigInt::from(10));
        assert_eq!(binomial(5, 6), BigInt::zero());
        assert_eq!(binomial(0, 0), BigInt::one());
        assert_eq!(binomial(3, -1), BigInt::zero());
        assert_eq!(factorial(5), BigInt::from(120));
    }
}
