use std::fmt;

use num_traits::Zero;

use super::field::{format_rational, FieldSpec, Scalar};

/// Univariate polynomial over a field, coefficients lowest degree first,
/// without trailing zeros.
#[derive(Clone, PartialEq, Eq)]
pub struct Poly {
    field: FieldSpec,
    coeffs: Vec<Scalar>,
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cs: Vec<String> = self.coeffs.iter().map(format_rational).collect();
        write!(f, "Poly[{}]({})", self.field, cs.join(", "))
    }
}

impl Poly {
    pub fn new(field: FieldSpec, coeffs: Vec<Scalar>) -> Self {
        let mut p = Poly { field, coeffs: coeffs.into_iter().map(|c| field.reduce(c)).collect() };
        p.trim();
        p
    }

    pub fn zero(field: FieldSpec) -> Self {
        Poly { field, coeffs: Vec::new() }
    }

    pub fn constant(field: FieldSpec, c: Scalar) -> Self {
        Self::new(field, vec![c])
    }

    pub fn one(field: FieldSpec) -> Self {
        Self::constant(field, field.one())
    }

    /// `T - c`.
    pub fn linear_root(field: FieldSpec, c: Scalar) -> Self {
        Self::new(field, vec![field.neg(&field.reduce(c)), field.one()])
    }

    /// `T^k`.
    pub fn monomial(field: FieldSpec, k: usize) -> Self {
        let mut cs = vec![Scalar::zero(); k + 1];
        cs[k] = field.one();
        Self::new(field, cs)
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn coeffs(&self) -> &[Scalar] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_nonzero_constant(&self) -> bool {
        self.degree() == Some(0)
    }

    fn lead(&self) -> &Scalar {
        self.coeffs.last().expect("nonzero polynomial")
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let f = self.field;
        let n = self.coeffs.len().max(other.coeffs.len());
        let z = Scalar::zero();
        let cs = (0..n)
            .map(|i| f.add(self.coeffs.get(i).unwrap_or(&z), other.coeffs.get(i).unwrap_or(&z)))
            .collect();
        Poly::new(f, cs)
    }

    pub fn scale(&self, s: &Scalar) -> Poly {
        Poly::new(self.field, self.coeffs.iter().map(|c| self.field.mul(c, s)).collect())
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        self.add(&other.scale(&self.field.neg(&self.field.one())))
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        let f = self.field;
        if self.is_zero() || other.is_zero() {
            return Poly::zero(f);
        }
        let mut cs = vec![Scalar::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                cs[i + j] = f.add(&cs[i + j], &f.mul(a, b));
            }
        }
        Poly::new(f, cs)
    }

    /// Euclidean division; panics on division by zero.
    pub fn div_rem(&self, divisor: &Poly) -> (Poly, Poly) {
        let f = self.field;
        let dd = divisor.degree().expect("division by the zero polynomial");
        let lead_inv = f.inv(divisor.lead()).expect("nonzero leading coefficient");
        let mut rem = self.clone();
        let mut quot = vec![Scalar::zero(); self.coeffs.len().saturating_sub(dd).max(1)];
        while let Some(rd) = rem.degree() {
            if rd < dd {
                break;
            }
            let coef = f.mul(rem.lead(), &lead_inv);
            let shift = rd - dd;
            quot[shift] = coef.clone();
            let mut sub = vec![Scalar::zero(); shift];
            sub.extend(divisor.coeffs.iter().map(|c| f.mul(c, &coef)));
            rem = rem.sub(&Poly::new(f, sub));
        }
        (Poly::new(f, quot), rem)
    }

    pub fn monic(&self) -> Poly {
        if self.is_zero() {
            return self.clone();
        }
        let inv = self.field.inv(self.lead()).expect("nonzero");
        self.scale(&inv)
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, other: &Poly) -> Poly {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Whether `self·R[T] + other·R[T] = R[T]`.
    pub fn comaximal_with(&self, other: &Poly) -> bool {
        self.gcd(other).is_nonzero_constant()
    }

    pub fn eval(&self, x: &Scalar) -> Scalar {
        let f = self.field;
        self.coeffs.iter().rev().fold(Scalar::zero(), |acc, c| f.add(&f.mul(&acc, x), c))
    }

    /// Horner evaluation in any ring given by its operations.
    pub fn eval_with<T: Clone>(&self, x: &T, one: T, add: impl Fn(&T, &T) -> T, mul: impl Fn(&T, &T) -> T, scale: impl Fn(&T, &Scalar) -> T) -> T {
        let mut acc: Option<T> = None;
        for c in self.coeffs.iter().rev() {
            let term = scale(&one, c);
            acc = Some(match acc {
                None => term,
                Some(a) => add(&mul(&a, x), &term),
            });
        }
        acc.unwrap_or_else(|| scale(&one, &Scalar::zero()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::field::int;

    const Q: FieldSpec = FieldSpec::Rationals;

    #[test]
    fn gcd_of_coprime_linear_factors() {
        let a = Poly::linear_root(Q, int(1));
        let b = Poly::linear_root(Q, int(2));
        assert!(a.comaximal_with(&b));
        assert!(!a.mul(&b).comaximal_with(&a));
        assert_eq!(a.mul(&b).gcd(&b.mul(&b)), b);
    }

    #[test]
    fn division_identity() {
        let a = Poly::new(Q, vec![int(1), int(2), int(3), int(4)]);
        let b = Poly::new(Q, vec![int(-1), int(1)]);
        let (qq, r) = a.div_rem(&b);
        assert_eq!(qq.mul(&b).add(&r), a);
        assert_eq!(r.eval(&int(0)), a.eval(&int(1)));
    }

    #[test]
    fn linear_factors_collapse_mod_p() {
        let f = FieldSpec::prime(3).unwrap();
        let a = Poly::linear_root(f, int(1));
        let b = Poly::linear_root(f, int(4));
        assert!(!a.comaximal_with(&b));
    }
}
