use std::collections::BTreeMap;

use num_traits::{One, Zero};

use super::decompose::is_isomorphic;
use super::rep::WDRep;
use crate::error::{ensure, Error, Result};
use crate::exactnum::{FieldSpec, Matrix, QMonomial, Scalar};

const Q: FieldSpec = FieldSpec::Rationals;

/// Matrix whose entries are zero or a single q-monomial.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FormalMatrix {
    pub entries: Vec<Vec<Option<QMonomial>>>,
}

impl FormalMatrix {
    pub fn eval(&self, q: &Scalar) -> Result<Matrix> {
        let rows = self
            .entries
            .iter()
            .map(|row| {
                row.iter()
                    .map(|e| match e {
                        None => Ok(Scalar::zero()),
                        Some(t) => t.eval(q),
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        let cols = self.entries.first().map_or(0, |r| r.len());
        Matrix::from_rows_with_cols(Q, rows, cols)
    }
}

/// `exp(M)` for nilpotent `M`.
pub fn exp_nilpotent(m: &Matrix) -> Matrix {
    let n = m.rows();
    let mut acc = Matrix::identity(Q, n);
    let mut term = Matrix::identity(Q, n);
    for k in 1..=n {
        term = term.mul(m).scale(&Scalar::new(1.into(), (k as i64).into()));
        if term.is_zero() {
            break;
        }
        acc = acc.add(&term);
    }
    acc
}

/// `log(u)` for unipotent `u`.
pub fn log_unipotent(u: &Matrix) -> Matrix {
    let n = u.rows();
    let x = u.sub(&Matrix::identity(Q, n));
    let mut acc = Matrix::zeros(Q, n, n);
    let mut pow = Matrix::identity(Q, n);
    for k in 1..=n {
        pow = pow.mul(&x);
        if pow.is_zero() {
            break;
        }
        let sign = if k % 2 == 1 { 1 } else { -1 };
        acc = acc.add(&pow.scale(&Scalar::new(sign.into(), (k as i64).into())));
    }
    acc
}

/// `u^r = exp(r·log u)` for unipotent `u` and rational `r`.
pub fn unipotent_power(u: &Matrix, r: &Scalar) -> Matrix {
    exp_nilpotent(&log_unipotent(u).scale(r))
}

/// `σ(w) = σ^{ss}(w)·exp(a·N)` for `w` with `ν(w) = n`, `t_μ(i_φ(w)) = a`,
/// with eigenvalues kept formal.
pub fn evaluate_formal(rep: &WDRep, n: i64, a: &Scalar) -> FormalMatrix {
    let e = exp_nilpotent(&rep.n().scale(a));
    let entries = (0..rep.dim())
        .map(|i| {
            let lam = rep.tags()[i].pow(n);
            (0..rep.dim())
                .map(|j| {
                    let x = e.get(i, j);
                    (!x.is_zero()).then(|| QMonomial::new(lam.c() * x, lam.m()).expect("nonzero"))
                })
                .collect()
        })
        .collect();
    FormalMatrix { entries }
}

/// Numeric `σ(w)` over `Q`. Without `q` this only succeeds when every tag is
/// free of `t`.
pub fn evaluate_at(rep: &WDRep, n: i64, a: &Scalar, q: Option<&Scalar>) -> Result<Matrix> {
    let formal = evaluate_formal(rep, n, a);
    match q {
        Some(q) => {
            ensure!(!q.is_zero(), Error::Invalid("q must be nonzero".into()));
            formal.eval(q)
        }
        None if rep.tags().iter().all(|t| t.m() == 0) => formal.eval(&Scalar::one()),
        None => Err(Error::NeedsNumericQ("tags involve powers of q".into())),
    }
}

/// Re-express the representation with respect to the Frobenius lift
/// `iφ`, where `t_μ(i) = a`: the new Frobenius is `Φ' = exp(aN)·F`.
///
/// The conjugating element `u^{q/(1-q)}` (with `u = exp(aN)`) is checked
/// to carry `Φ'` back to `F`; the returned representation is rebuilt
/// from the eigenspaces of `Φ'` and must be isomorphic to the input.
pub fn change_frobenius(rep: &WDRep, a: &Scalar, q: &Scalar) -> Result<WDRep> {
    ensure!(!q.is_one(), Error::Invalid("q_num = 1 is not allowed".into()));
    ensure!(!q.is_zero(), Error::Invalid("q_num = 0 is not allowed".into()));
    let dim = rep.dim();
    let f = rep.frobenius_at(q)?;
    let u = exp_nilpotent(&rep.n().scale(a));
    let phi = u.mul(&f);

    let r = q / (Scalar::one() - q);
    let g = unipotent_power(&u, &r);
    let ginv = g.inverse().ok_or_else(|| Error::Invariant("unipotent power not invertible".into()))?;
    ensure!(
        g.mul(&phi).mul(&ginv) == f,
        Error::Invariant("u^{q/(1-q)} does not conjugate the new Frobenius to the old one".into())
    );

    let mut values: BTreeMap<Scalar, QMonomial> = BTreeMap::new();
    for t in rep.blocks().keys() {
        let v = t.eval(q)?;
        if let Some(prev) = values.insert(v.clone(), t.clone()) {
            return Err(Error::Precondition(format!(
                "tags {prev} and {t} both evaluate to {v} at q = {q}"
            )));
        }
    }
    let mut cols = Vec::with_capacity(dim);
    let mut tags = Vec::with_capacity(dim);
    for (v, t) in &values {
        let shifted = phi.sub(&Matrix::identity(Q, dim).scale(v));
        for k in shifted.kernel_basis() {
            cols.push(k);
            tags.push(t.clone());
        }
    }
    ensure!(
        cols.len() == dim,
        Error::Invariant("new Frobenius is not semisimple with the expected eigenvalues".into())
    );
    let p = Matrix::from_columns(Q, dim, &cols);
    let pinv = p.inverse().ok_or_else(|| Error::Invariant("eigenvectors do not span".into()))?;
    let n_new = pinv.mul(rep.n()).mul(&p);
    let out = WDRep::from_graded(tags, n_new).map_err(|e| Error::Invariant(format!("rebuilt N: {e}")))?;
    ensure!(
        is_isomorphic(&out, rep),
        Error::Invariant("change of Frobenius altered the isomorphism class".into())
    );
    Ok(out)
}

/// Check the homomorphism law `σ(n1,a1)·σ(n2,a2) = σ(n1+n2, q^{n2}·a1 + a2)`
/// at a numeric `q`.
pub fn check_cocycle(rep: &WDRep, q: &Scalar, (n1, a1): (i64, &Scalar), (n2, a2): (i64, &Scalar)) -> Result<bool> {
    let lhs = evaluate_at(rep, n1, a1, Some(q))?.mul(&evaluate_at(rep, n2, a2, Some(q))?);
    let a = crate::exactnum::rat_pow(q, n2) * a1 + a2;
    let rhs = evaluate_at(rep, n1 + n2, &a, Some(q))?;
    Ok(lhs == rhs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::{int, rat};

    #[test]
    fn log_inverts_exp() {
        let n = Matrix::from_i64(Q, &[&[0, 1, 0], &[0, 0, 1], &[0, 0, 0]]);
        let u = exp_nilpotent(&n.scale(&rat(3, 2)));
        assert_eq!(log_unipotent(&u), n.scale(&rat(3, 2)));
        assert_eq!(unipotent_power(&u, &int(2)), u.mul(&u));
        assert_eq!(unipotent_power(&u, &int(-1)), u.inverse().unwrap());
    }
}
