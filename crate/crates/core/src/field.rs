//! Coefficient fields for the algebra `kQ/I`.
//!
//! Every scalar is carried as a [`BigRational`]. Over a prime field the
//! stored value is always the canonical integer representative in `[0, p)`,
//! so plain rational arithmetic followed by [`Field::normalize`] implements
//! arithmetic mod `p`.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub type Scalar = BigRational;

pub fn int(n: i64) -> Scalar {
    BigRational::from_integer(BigInt::from(n))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum Field {
    #[default]
    Rational,
    Prime(u64),
}

impl Field {
    pub fn prime(p: u64) -> Result<Field> {
        if p < 2 || !is_prime(p) {
            return Err(Error::InvalidField(format!("{p} is not prime")));
        }
        Ok(Field::Prime(p))
    }

    pub fn characteristic(&self) -> u64 {
        match self {
            Field::Rational => 0,
            Field::Prime(p) => *p,
        }
    }

    /// Maps an arbitrary rational into the field. Fails when a denominator
    /// vanishes mod `p`.
    pub fn from_rational(&self, x: &Scalar) -> Result<Scalar> {
        match self {
            Field::Rational => Ok(x.clone()),
            Field::Prime(p) => {
                let p = BigInt::from(*p);
                let den = x.denom().mod_floor(&p);
                if den.is_zero() {
                    return Err(Error::InvalidField(format!("coefficient {x} has a denominator divisible by {p}")));
                }
                let num = x.numer().mod_floor(&p);
                let inv = mod_inverse(&den, &p);
                Ok(BigRational::from_integer((num * inv).mod_floor(&p)))
            }
        }
    }

    #[inline]
    pub fn normalize(&self, x: Scalar) -> Scalar {
        match self {
            Field::Rational => x,
            Field::Prime(_) => self
                .from_rational(&x)
                .expect("prime-field arithmetic produced a non-invertible denominator"),
        }
    }

    #[inline]
    pub fn add(&self, a: &Scalar, b: &Scalar) -> Scalar {
        self.normalize(a + b)
    }

    #[inline]
    pub fn sub(&self, a: &Scalar, b: &Scalar) -> Scalar {
        self.normalize(a - b)
    }

    #[inline]
    pub fn mul(&self, a: &Scalar, b: &Scalar) -> Scalar {
        self.normalize(a * b)
    }

    #[inline]
    pub fn neg(&self, a: &Scalar) -> Scalar {
        self.normalize(-a)
    }

    /// Multiplicative inverse. Panics on zero.
    pub fn inv(&self, a: &Scalar) -> Scalar {
        assert!(!a.is_zero(), "inverse of zero");
        match self {
            Field::Rational => a.recip(),
            Field::Prime(p) => {
                let p = BigInt::from(*p);
                BigRational::from_integer(mod_inverse(&a.to_integer().mod_floor(&p), &p))
            }
        }
    }

    pub fn div(&self, a: &Scalar, b: &Scalar) -> Scalar {
        self.mul(a, &self.inv(b))
    }

    pub fn label(&self) -> String {
        self.to_string()
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Rational => write!(f, "Q"),
            Field::Prime(p) => write!(f, "Fp:{p}"),
        }
    }
}

impl FromStr for Field {
    type Err = Error;

    fn from_str(s: &str) -> Result<Field> {
        let t = s.trim();
        if t.eq_ignore_ascii_case("q") {
            return Ok(Field::Rational);
        }
        let rest = t
            .strip_prefix("Fp:")
            .or_else(|| t.strip_prefix("fp:"))
            .or_else(|| t.strip_prefix("F"))
            .ok_or_else(|| Error::InvalidField(format!("expected `Q` or `Fp:<p>`, got `{s}`")))?;
        let p: u64 = rest.parse().map_err(|_| Error::InvalidField(format!("bad prime in `{s}`")))?;
        Field::prime(p)
    }
}

fn mod_inverse(a: &BigInt, p: &BigInt) -> BigInt {
    let g = a.extended_gcd(p);
    debug_assert!(g.gcd.is_one());
    g.x.mod_floor(p)
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d.saturating_mul(d) <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Renders a scalar the way the DSL reads it back (`3`, `-1/2`).
pub fn format_scalar(x: &Scalar) -> String {
    if x.is_integer() {
        x.to_integer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

pub fn scalar_to_f64(x: &Scalar) -> f64 {
    x.numer().to_f64().unwrap_or(f64::NAN) / x.denom().to_f64().unwrap_or(f64::NAN)
}

pub fn is_unit_int(x: &BigInt) -> bool {
    x.abs().is_one()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_field_reduces_fractions() {
        let f = Field::prime(7).unwrap();
        let half = BigRational::new(BigInt::from(1), BigInt::from(2));
        assert_eq!(f.from_rational(&half).unwrap(), int(4));
        assert_eq!(f.mul(&int(4), &int(2)), int(1));
        assert_eq!(f.neg(&int(3)), int(4));
        assert_eq!(f.inv(&int(3)), int(5));
    }

    #[test]
    fn prime_field_rejects_bad_denominator() {
        let f = Field::prime(3).unwrap();
        let x = BigRational::new(BigInt::from(1), BigInt::from(6));
        assert!(f.from_rational(&x).is_err());
    }

    #[test]
    fn parse_labels() {
        assert_eq!("Q".parse::<Field>().unwrap(), Field::Rational);
        assert_eq!("Fp:5".parse::<Field>().unwrap(), Field::Prime(5));
        assert!("Fp:6".parse::<Field>().is_err());
        assert_eq!(Field::Prime(5).to_string(), "Fp:5");
    }
}
