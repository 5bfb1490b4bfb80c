use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Field elements are stored as rationals. Over a prime field every element
/// is kept reduced to an integer in `0..p`.
pub type Scalar = BigRational;

/// Coefficient field: the rationals or a prime field `F_p`.
///
/// The caller picks the characteristic. Nothing here checks whether `p` is
/// banal for any group; that is a modelling decision made upstream.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FieldSpec {
    #[default]
    Rationals,
    Prime(u64),
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::Rationals => write!(f, "Q"),
            FieldSpec::Prime(p) => write!(f, "F_{p}"),
        }
    }
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

impl FieldSpec {
    pub fn prime(p: u64) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::InvalidField(format!("{p} is not prime")));
        }
        // products of two reduced residues must fit comfortably
        if p > u32::MAX as u64 {
            return Err(Error::InvalidField(format!("{p} exceeds the supported prime size")));
        }
        Ok(FieldSpec::Prime(p))
    }

    pub fn characteristic(&self) -> u64 {
        match self {
            FieldSpec::Rationals => 0,
            FieldSpec::Prime(p) => *p,
        }
    }

    pub fn zero(&self) -> Scalar {
        Scalar::zero()
    }

    pub fn one(&self) -> Scalar {
        Scalar::one()
    }

    pub fn from_i64(&self, v: i64) -> Scalar {
        self.reduce(Scalar::from_integer(BigInt::from(v)))
    }

    /// Map an arbitrary rational into the field. Fails over `F_p` when the
    /// denominator is divisible by `p`.
    pub fn try_reduce(&self, x: Scalar) -> Result<Scalar> {
        match self {
            FieldSpec::Rationals => Ok(x),
            FieldSpec::Prime(p) => {
                let pb = BigInt::from(*p);
                let den = x.denom().mod_floor(&pb);
                if den.is_zero() {
                    return Err(Error::InvalidField(format!("{x} has no image in F_{p}")));
                }
                let num = x.numer().mod_floor(&pb);
                let den_inv = modinv(den.to_u64().unwrap_or(0), *p);
                let v = (num.to_u64().unwrap_or(0) as u128 * den_inv as u128 % *p as u128) as u64;
                Ok(Scalar::from_integer(BigInt::from(v)))
            }
        }
    }

    pub(crate) fn reduce(&self, x: Scalar) -> Scalar {
        match self {
            FieldSpec::Rationals => x,
            FieldSpec::Prime(_) => self.try_reduce(x).expect("element already defined over the prime field"),
        }
    }

    pub fn add(&self, a: &Scalar, b: &Scalar) -> Scalar {
        match self {
            FieldSpec::Rationals => a + b,
            FieldSpec::Prime(p) => small(modp(a, *p) + modp(b, *p), *p),
        }
    }

    pub fn sub(&self, a: &Scalar, b: &Scalar) -> Scalar {
        match self {
            FieldSpec::Rationals => a - b,
            FieldSpec::Prime(p) => small(modp(a, *p) + *p - modp(b, *p), *p),
        }
    }

    pub fn neg(&self, a: &Scalar) -> Scalar {
        match self {
            FieldSpec::Rationals => -a,
            FieldSpec::Prime(p) => small(*p - modp(a, *p), *p),
        }
    }

    pub fn mul(&self, a: &Scalar, b: &Scalar) -> Scalar {
        match self {
            FieldSpec::Rationals => a * b,
            FieldSpec::Prime(p) => {
                let v = modp(a, *p) as u128 * modp(b, *p) as u128 % *p as u128;
                Scalar::from_integer(BigInt::from(v as u64))
            }
        }
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(&self, a: &Scalar) -> Option<Scalar> {
        if a.is_zero() {
            return None;
        }
        match self {
            FieldSpec::Rationals => Some(a.recip()),
            FieldSpec::Prime(p) => Some(Scalar::from_integer(BigInt::from(modinv(modp(a, *p), *p)))),
        }
    }

    pub fn div(&self, a: &Scalar, b: &Scalar) -> Option<Scalar> {
        self.inv(b).map(|bi| self.mul(a, &bi))
    }
}

fn modp(a: &Scalar, p: u64) -> u64 {
    debug_assert!(a.is_integer());
    let v = a.numer().mod_floor(&BigInt::from(p));
    v.to_u64().expect("reduced residue fits u64")
}

fn small(v: u64, p: u64) -> Scalar {
    Scalar::from_integer(BigInt::from(v % p))
}

fn modinv(a: u64, p: u64) -> u64 {
    // extended Euclid on i128
    let (mut r0, mut r1) = (a as i128, p as i128);
    let (mut s0, mut s1) = (1i128, 0i128);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (s0, s1) = (s1, s0 - q * s1);
    }
    debug_assert_eq!(r0, 1);
    s0.rem_euclid(p as i128) as u64
}

/// Parse `"a/b"`, `"a"` or a plain integer string into a rational.
pub fn parse_rational(s: &str) -> Result<Scalar> {
    let s = s.trim();
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let n: BigInt = n.parse().map_err(|_| Error::Invalid(format!("bad rational {s:?}")))?;
    let d: BigInt = d.parse().map_err(|_| Error::Invalid(format!("bad rational {s:?}")))?;
    if d.is_zero() {
        return Err(Error::Invalid(format!("zero denominator in {s:?}")));
    }
    Ok(Scalar::new(n, d))
}

/// Canonical `"num/den"` rendering; integers print without a denominator.
pub fn format_rational(x: &Scalar) -> String {
    if x.is_integer() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

pub fn rat(n: i64, d: i64) -> Scalar {
    Scalar::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Scalar {
    Scalar::from_integer(BigInt::from(n))
}

/// Integer power of a rational, negative exponents allowed for nonzero base.
pub fn rat_pow(x: &Scalar, k: i64) -> Scalar {
    if k >= 0 {
        num_traits::pow(x.clone(), k as usize)
    } else {
        num_traits::pow(x.recip(), k.unsigned_abs() as usize)
    }
}

/// Exact square root of a nonnegative rational, if it is a perfect square.
pub fn rat_sqrt(x: &Scalar) -> Option<Scalar> {
    if x.is_negative() {
        return None;
    }
    let n = x.numer().sqrt();
    let d = x.denom().sqrt();
    if &(&n * &n) == x.numer() && &(&d * &d) == x.denom() {
        Some(Scalar::new(n, d))
    } else {
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_field_arithmetic() {
        let f = FieldSpec::prime(7).unwrap();
        let a = f.from_i64(5);
        let b = f.from_i64(4);
        assert_eq!(f.add(&a, &b), int(2));
        assert_eq!(f.sub(&b, &a), int(6));
        assert_eq!(f.mul(&a, &b), int(6));
        assert_eq!(f.mul(&a, &f.inv(&a).unwrap()), int(1));
        assert_eq!(f.try_reduce(rat(1, 2)).unwrap(), int(4));
        assert!(f.try_reduce(rat(1, 7)).is_err());
        assert_eq!(f.from_i64(-1), int(6));
    }

    #[test]
    fn rejects_composite_characteristic() {
        assert!(FieldSpec::prime(9).is_err());
        assert!(FieldSpec::prime(1).is_err());
        assert_eq!(FieldSpec::prime(2).unwrap().characteristic(), 2);
    }

    #[test]
    fn rational_parsing() {
        assert_eq!(parse_rational("-3/6").unwrap(), rat(-1, 2));
        assert_eq!(format_rational(&rat(4, 2)), "2");
        assert_eq!(format_rational(&rat(-1, 3)), "-1/3");
        assert!(parse_rational("1/0").is_err());
        assert_eq!(rat_sqrt(&rat(9, 4)), Some(rat(3, 2)));
        assert_eq!(rat_sqrt(&int(2)), None);
        assert_eq!(rat_pow(&int(2), -2), rat(1, 4));
    }
}
