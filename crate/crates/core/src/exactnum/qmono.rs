use std::cmp::Ordering;
use std::fmt;

use num_traits::{One, Zero};

use super::field::{format_rational, rat_pow, rat_sqrt, Scalar};
use crate::error::{Error, Result};

/// Formal scalar `c · t^m` where `t` is a square root of `q`.
///
/// These tag Frobenius eigenvalues: `q^k` is `(1, 2k)` and the character
/// `|.|^{k/2}` evaluated on a geometric Frobenius is `(1, -k)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct QMonomial {
    c: Scalar,
    m: i64,
}

impl QMonomial {
    pub fn new(c: Scalar, m: i64) -> Result<Self> {
        if c.is_zero() {
            return Err(Error::Invalid("q-monomial with zero coefficient".into()));
        }
        Ok(QMonomial { c, m })
    }

    pub fn unit() -> Self {
        QMonomial { c: Scalar::one(), m: 0 }
    }

    /// `t^m` with coefficient 1.
    pub fn t_pow(m: i64) -> Self {
        QMonomial { c: Scalar::one(), m }
    }

    /// `q^k`.
    pub fn q_pow(k: i64) -> Self {
        Self::t_pow(2 * k)
    }

    /// Value on a geometric Frobenius of the character `|.|^{k/2}`.
    pub fn norm_power(k: i64) -> Self {
        Self::t_pow(-k)
    }

    pub fn c(&self) -> &Scalar {
        &self.c
    }

    pub fn m(&self) -> i64 {
        self.m
    }

    pub fn mul(&self, other: &QMonomial) -> QMonomial {
        QMonomial { c: &self.c * &other.c, m: self.m + other.m }
    }

    pub fn inv(&self) -> QMonomial {
        QMonomial { c: self.c.recip(), m: -self.m }
    }

    pub fn pow(&self, k: i64) -> QMonomial {
        QMonomial { c: rat_pow(&self.c, k), m: self.m * k }
    }

    /// `self · q^k`.
    pub fn shift_q(&self, k: i64) -> QMonomial {
        QMonomial { c: self.c.clone(), m: self.m + 2 * k }
    }

    /// Whether `self` and `other` differ by an integral power of `q`
    /// (same tag ladder).
    pub fn same_ladder(&self, other: &QMonomial) -> bool {
        self.c == other.c && (self.m - other.m).rem_euclid(2) == 0
    }

    /// Evaluate at a numeric `q`; odd powers of `t` need `q` to be a square.
    pub fn eval(&self, q: &Scalar) -> Result<Scalar> {
        let t_part = if self.m % 2 == 0 {
            rat_pow(q, self.m / 2)
        } else {
            let t = rat_sqrt(q).ok_or_else(|| {
                Error::NeedsNumericQ(format!("t^{} needs sqrt(q) but q = {} is not a rational square", self.m, q))
            })?;
            rat_pow(&t, self.m)
        };
        Ok(&self.c * t_part)
    }

    /// Weight of the tag when `c = ±1`; `None` otherwise.
    pub fn weight(&self) -> Option<i64> {
        if self.c == Scalar::one() || self.c == -Scalar::one() {
            Some(self.m)
        } else {
            None
        }
    }
}

impl Ord for QMonomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.m.cmp(&other.m).then_with(|| self.c.cmp(&other.c))
    }
}

impl PartialOrd for QMonomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for QMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", format_rational(&self.c), self.m)
    }
}
