//! Exact arithmetic in `Q(w)` with `w^2 = -5`, and 2x2 matrices over it.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// `a + b w`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QuadInt {
    pub a: BigRational,
    pub b: BigRational,
}

fn q(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

impl QuadInt {
    pub fn new(a: BigRational, b: BigRational) -> Self {
        QuadInt { a, b }
    }

    pub fn int(a: i64, b: i64) -> Self {
        QuadInt { a: q(a), b: q(b) }
    }

    /// `(a + b w) / den`.
    pub fn frac(a: i64, b: i64, den: i64) -> Self {
        let d = q(den);
        QuadInt {
            a: q(a) / &d,
            b: q(b) / d,
        }
    }

    pub fn zero() -> Self {
        Self::int(0, 0)
    }

    pub fn one() -> Self {
        Self::int(1, 0)
    }

    pub fn w() -> Self {
        Self::int(0, 1)
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn conj(&self) -> Self {
        QuadInt {
            a: self.a.clone(),
            b: -self.b.clone(),
        }
    }

    /// `a^2 + 5 b^2`.
    pub fn norm(&self) -> BigRational {
        &self.a * &self.a + q(5) * &self.b * &self.b
    }

    pub fn inverse(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::Domain("zero has no inverse".into()));
        }
        let n = self.norm();
        let c = self.conj();
        Ok(QuadInt {
            a: c.a / &n,
            b: c.b / n,
        })
    }
}

impl Add for &QuadInt {
    type Output = QuadInt;
    fn add(self, o: &QuadInt) -> QuadInt {
        QuadInt {
            a: &self.a + &o.a,
            b: &self.b + &o.b,
        }
    }
}

impl Sub for &QuadInt {
    type Output = QuadInt;
    fn sub(self, o: &QuadInt) -> QuadInt {
        QuadInt {
            a: &self.a - &o.a,
            b: &self.b - &o.b,
        }
    }
}

impl Mul for &QuadInt {
    type Output = QuadInt;
    fn mul(self, o: &QuadInt) -> QuadInt {
        QuadInt {
            a: &self.a * &o.a - q(5) * &self.b * &o.b,
            b: &self.a * &o.b + &self.b * &o.a,
        }
    }
}

impl Neg for &QuadInt {
    type Output = QuadInt;
    fn neg(self) -> QuadInt {
        QuadInt {
            a: -self.a.clone(),
            b: -self.b.clone(),
        }
    }
}

impl fmt::Display for QuadInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.b.is_zero() {
            return write!(f, "{}", self.a);
        }
        let wterm = if self.b.is_one() {
            "w".to_string()
        } else if (-&self.b).is_one() {
            "-w".to_string()
        } else {
            format!("{}w", self.b)
        };
        if self.a.is_zero() {
            write!(f, "{wterm}")
        } else if self.b.is_negative() {
            write!(f, "{}{wterm}", self.a)
        } else {
            write!(f, "{}+{wterm}", self.a)
        }
    }
}

/// `[[m00, m01], [m10, m11]]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Matrix2(pub [[QuadInt; 2]; 2]);

impl Matrix2 {
    pub fn new(m00: QuadInt, m01: QuadInt, m10: QuadInt, m11: QuadInt) -> Self {
        Matrix2([[m00, m01], [m10, m11]])
    }

    pub fn identity() -> Self {
        Self::new(QuadInt::one(), QuadInt::zero(), QuadInt::zero(), QuadInt::one())
    }

    pub fn det(&self) -> QuadInt {
        let m = &self.0;
        &(&m[0][0] * &m[1][1]) - &(&m[0][1] * &m[1][0])
    }

    pub fn inverse(&self) -> Result<Self> {
        let inv = self.det().inverse()?;
        let m = &self.0;
        Ok(Self::new(
            &m[1][1] * &inv,
            &(-&m[0][1]) * &inv,
            &(-&m[1][0]) * &inv,
            &m[0][0] * &inv,
        ))
    }

    pub fn pow(&self, k: i64) -> Result<Self> {
        let base = if k < 0 { self.inverse()? } else { self.clone() };
        let mut out = Self::identity();
        for _ in 0..k.unsigned_abs() {
            out = &out * &base;
        }
        Ok(out)
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity()
    }
}

impl Mul for &Matrix2 {
    type Output = Matrix2;
    fn mul(self, o: &Matrix2) -> Matrix2 {
        let (x, y) = (&self.0, &o.0);
        let e = |i: usize, j: usize| &(&x[i][0] * &y[0][j]) + &(&x[i][1] * &y[1][j]);
        Matrix2::new(e(0, 0), e(0, 1), e(1, 0), e(1, 1))
    }
}

impl fmt::Display for Matrix2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let m = &self.0;
        write!(f, "[[{}, {}], [{}, {}]]", m[0][0], m[0][1], m[1][0], m[1][1])
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn w_squares_to_minus_five() {
        let w = QuadInt::w();
        assert_eq!(&w * &w, QuadInt::int(-5, 0));
        let x = QuadInt::frac(1, 1, 2);
        assert_eq!(&x * &x.inverse().unwrap(), QuadInt::one());
        assert_eq!(x.to_string(), "1/2+1/2w");
        assert_eq!(QuadInt::int(3, -2).to_string(), "3-2w");
    }

    #[test]
    fn matrix_inverse_and_powers() {
        let m = Matrix2::new(
            QuadInt::int(1, 1),
            QuadInt::int(2, 0),
            QuadInt::int(0, 0),
            QuadInt::int(1, -1),
        );
        assert!((&m * &m.inverse().unwrap()).is_identity());
        assert_eq!(m.pow(-2).unwrap(), m.inverse().unwrap().pow(2).unwrap());
        assert!(m.pow(0).unwrap().is_identity());
        assert_eq!(m.det(), QuadInt::int(6, 0));
    }
}
