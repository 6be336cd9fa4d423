use std::fmt;
use std::str::FromStr;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

/// A prime modulus, checked at construction. Bounded by `2^31` so that
/// products of residues fit in a `u64`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Prime(u32);

impl Prime {
    pub fn new(p: u64) -> Result<Self> {
        if p >= 1 << 31 || !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        Ok(Prime(p as u32))
    }

    pub fn get(self) -> u32 {
        self.0
    }
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Ground ring for a computation. Everything is exact.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CoefficientDomain {
    Integers,
    Rationals,
    PrimeField(Prime),
}

impl CoefficientDomain {
    pub fn prime_field(p: u64) -> Result<Self> {
        Ok(CoefficientDomain::PrimeField(Prime::new(p)?))
    }

    pub fn is_field(self) -> bool {
        !matches!(self, CoefficientDomain::Integers)
    }

    /// Characteristic of the domain (0 for `Z` and `Q`).
    pub fn characteristic(self) -> u32 {
        match self {
            CoefficientDomain::PrimeField(p) => p.get(),
            _ => 0,
        }
    }

    /// Short symbol used when printing groups: `Z`, `Q`, `F3`.
    pub fn symbol(self) -> String {
        self.to_string()
    }
}

impl fmt::Display for CoefficientDomain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CoefficientDomain::Integers => write!(f, "Z"),
            CoefficientDomain::Rationals => write!(f, "Q"),
            CoefficientDomain::PrimeField(p) => write!(f, "F{}", p.get()),
        }
    }
}

impl FromStr for CoefficientDomain {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        match t {
            "Z" | "ZZ" | "z" => Ok(CoefficientDomain::Integers),
            "Q" | "QQ" | "q" => Ok(CoefficientDomain::Rationals),
            _ => {
                let digits = t
                    .strip_prefix("GF")
                    .or_else(|| t.strip_prefix('F'))
                    .or_else(|| t.strip_prefix('f'))
                    .ok_or_else(|| Error::parse(0, format!("unknown coefficient domain `{t}`")))?;
                let p: u64 = digits
                    .parse()
                    .map_err(|_| Error::parse(0, format!("unknown coefficient domain `{t}`")))?;
                CoefficientDomain::prime_field(p)
            }
        }
    }
}

impl Serialize for CoefficientDomain {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primes_are_checked() {
        assert!(Prime::new(2).is_ok());
        assert!(Prime::new(3).is_ok());
        assert!(Prime::new(65537).is_ok());
        assert_eq!(Prime::new(1), Err(Error::NotPrime(1)));
        assert_eq!(Prime::new(9), Err(Error::NotPrime(9)));
        assert!(Prime::new(1 << 31).is_err());
    }

    #[test]
    fn parse_and_print() {
        for s in ["Z", "Q", "F2", "F3", "F101"] {
            let d: CoefficientDomain = s.parse().unwrap();
            assert_eq!(d.to_string(), s);
        }
        assert!("F4".parse::<CoefficientDomain>().is_err());
        assert!("R".parse::<CoefficientDomain>().is_err());
        assert_eq!("GF3".parse::<CoefficientDomain>().unwrap().characteristic(), 3);
    }
}
