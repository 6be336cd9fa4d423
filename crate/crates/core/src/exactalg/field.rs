//! Field arithmetic used by the elimination routines.
//!
//! A [`Field`] is a value carrying whatever context the arithmetic needs
//! (the modulus for `F_p`, nothing for `Q`); elements are plain data. Code
//! that is generic over the ground field is written against this trait and
//! dispatched at runtime through [`with_field`].

use std::fmt::Debug;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use super::domain::{CoefficientDomain, Prime};
use crate::error::{Error, Result};

#[allow(clippy::wrong_self_convention)]
pub trait Field: Sync + Send {
    type Elem: Clone + PartialEq + Debug + Send + Sync;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    /// Multiplicative inverse. Panics on zero.
    fn inv(&self, a: &Self::Elem) -> Self::Elem;
    fn from_int(&self, n: &BigInt) -> Self::Elem;
    /// Image of a rational number; fails when the denominator vanishes.
    fn from_rational(&self, q: &BigRational) -> Result<Self::Elem>;
    fn domain(&self) -> CoefficientDomain;

    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.add(a, &self.neg(b))
    }

    fn from_i64(&self, n: i64) -> Self::Elem {
        self.from_int(&BigInt::from(n))
    }
}

/// The prime field `F_p`.
#[derive(Clone, Copy, Debug)]
pub struct Fp {
    p: u64,
}

impl Fp {
    pub fn new(p: Prime) -> Self {
        Fp { p: u64::from(p.get()) }
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }
}

impl Field for Fp {
    type Elem = u64;

    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        1
    }
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }
    fn add(&self, a: &u64, b: &u64) -> u64 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }
    fn neg(&self, a: &u64) -> u64 {
        if *a == 0 {
            0
        } else {
            self.p - a
        }
    }
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        a * b % self.p
    }
    fn inv(&self, a: &u64) -> u64 {
        assert!(*a != 0, "inverse of zero in F_{}", self.p);
        // Fermat
        let mut base = *a;
        let mut e = self.p - 2;
        let mut acc = 1;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base % self.p;
            }
            base = base * base % self.p;
            e >>= 1;
        }
        acc
    }
    fn from_int(&self, n: &BigInt) -> u64 {
        let p = BigInt::from(self.p);
        n.mod_floor(&p).to_u64().expect("residue fits in u64")
    }
    fn from_rational(&self, q: &BigRational) -> Result<u64> {
        let den = self.from_int(q.denom());
        if den == 0 {
            return Err(Error::Domain(format!("denominator of {q} vanishes in F_{}", self.p)));
        }
        Ok(self.mul(&self.from_int(q.numer()), &self.inv(&den)))
    }
    fn domain(&self) -> CoefficientDomain {
        CoefficientDomain::PrimeField(Prime::new(self.p).expect("modulus is prime"))
    }
    fn from_i64(&self, n: i64) -> u64 {
        n.rem_euclid(self.p as i64) as u64
    }
}

/// The rational numbers with arbitrary-precision numerators and denominators.
#[derive(Clone, Copy, Debug, Default)]
pub struct Rat;

impl Field for Rat {
    type Elem = BigRational;

    fn zero(&self) -> BigRational {
        BigRational::zero()
    }
    fn one(&self) -> BigRational {
        BigRational::one()
    }
    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }
    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }
    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }
    fn sub(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a - b
    }
    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }
    fn inv(&self, a: &BigRational) -> BigRational {
        assert!(!a.is_zero(), "inverse of zero in Q");
        a.recip()
    }
    fn from_int(&self, n: &BigInt) -> BigRational {
        BigRational::from_integer(n.clone())
    }
    fn from_rational(&self, q: &BigRational) -> Result<BigRational> {
        Ok(q.clone())
    }
    fn domain(&self) -> CoefficientDomain {
        CoefficientDomain::Rationals
    }
}

/// A computation that is generic over the ground field.
pub trait FieldTask {
    type Output;
    fn run<F: Field>(self, field: &F) -> Self::Output;
}

/// Runs `task` over the field named by `domain`.
pub fn with_field<T: FieldTask>(domain: CoefficientDomain, op: &'static str, task: T) -> Result<T::Output> {
    match domain {
        CoefficientDomain::Rationals => Ok(task.run(&Rat)),
        CoefficientDomain::PrimeField(p) => Ok(task.run(&Fp::new(p))),
        CoefficientDomain::Integers => Err(Error::UnsupportedDomain {
            op,
            domain: domain.to_string(),
        }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fp_arithmetic() {
        let f = Fp::new(Prime::new(7).unwrap());
        for a in 1..7u64 {
            assert_eq!(f.mul(&a, &f.inv(&a)), 1);
            assert_eq!(f.add(&a, &f.neg(&a)), 0);
        }
        assert_eq!(f.from_i64(-1), 6);
        assert_eq!(f.from_int(&BigInt::from(-15)), 6);
        let half = BigRational::new(BigInt::from(1), BigInt::from(2));
        assert_eq!(f.from_rational(&half).unwrap(), 4);
        let f2 = Fp::new(Prime::new(2).unwrap());
        assert!(f2.from_rational(&half).is_err());
    }

    #[test]
    fn dispatch_rejects_integers() {
        struct Char;
        impl FieldTask for Char {
            type Output = u32;
            fn run<F: Field>(self, field: &F) -> u32 {
                field.domain().characteristic()
            }
        }
        assert_eq!(with_field(CoefficientDomain::Rationals, "t", Char).unwrap(), 0);
        assert_eq!(
            with_field(CoefficientDomain::prime_field(5).unwrap(), "t", Char).unwrap(),
            5
        );
        assert!(matches!(
            with_field(CoefficientDomain::Integers, "t", Char),
            Err(Error::UnsupportedDomain { .. })
        ));
    }
}
