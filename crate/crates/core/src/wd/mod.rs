//! Weil–Deligne representations with q-monomial Frobenius eigenvalues.
//!
//! Conventions: a geometric Frobenius `φ` has `|φ| = q^{-1}`, so the
//! character `|.|^{k/2}` takes the value [`QMonomial::norm_power`]`(k)` =
//! `t^{-k}` on `φ`. Twisting by that character is `twist(rep, norm_power(k))`.

mod decompose;
mod evaluate;
mod rep;
mod subset;

pub use decompose::{assemble, decompose, is_isomorphic, IndecompSummand};
pub use evaluate::{
    change_frobenius, check_cocycle, evaluate_at, evaluate_formal, exp_nilpotent, log_unipotent, unipotent_power,
    FormalMatrix,
};
pub use rep::WDRep;
pub use subset::SubsetI;

use crate::error::{ensure, Error, Result};
use crate::exactnum::{FieldSpec, Matrix, QMonomial};

const Q: FieldSpec = FieldSpec::Rationals;

/// `τ_I`: basis `e_0, …, e_{d-1}`, `e_i` at tag `q^i`, and
/// `N e_i = e_{i-1}` exactly for `i ∈ Ī^c`.
pub fn make_tau(i: &SubsetI) -> WDRep {
    let d = i.d() as usize;
    let chain = i.bar().complement();
    let mut n = Matrix::zeros(Q, d, d);
    for x in chain.members() {
        let x = x as usize;
        n.set(x - 1, x, Q.one());
    }
    let tags = (0..d as i64).map(QMonomial::q_pow).collect();
    WDRep::from_graded(tags, n).expect("tau_I lowers tags")
}

/// `Sp(n)` with graded pieces at `twist·q^0, …, twist·q^{n-1}`.
pub fn sp(n: usize, twist: &QMonomial) -> Result<WDRep> {
    ensure!(n >= 1, Error::Invalid("Sp(n) needs n >= 1".into()));
    let mut m = Matrix::zeros(Q, n, n);
    for k in 1..n {
        m.set(k - 1, k, Q.one());
    }
    let tags = (0..n as i64).map(|k| twist.shift_q(k)).collect();
    WDRep::from_graded(tags, m)
}

pub fn direct_sum(a: &WDRep, b: &WDRep) -> WDRep {
    a.direct_sum(b)
}

pub fn tensor(a: &WDRep, b: &WDRep) -> WDRep {
    a.tensor(b)
}

pub fn dual(a: &WDRep) -> WDRep {
    a.dual()
}

pub fn twist(a: &WDRep, tag: &QMonomial) -> WDRep {
    a.twist(tag)
}

/// The graded module `e_0, …, e_{d-1}` with `e_i` at tag `q^{-i}` and
/// `N e_i = e_{i+1}` exactly when `i+1 ∈ I^c` (cup product with the
/// inertia class).
pub fn ext_ladder(i: &SubsetI) -> WDRep {
    let d = i.d() as usize;
    let ic = i.complement();
    let mut n = Matrix::zeros(Q, d, d);
    for k in 0..d.saturating_sub(1) {
        if ic.contains(k as u32 + 1) {
            n.set(k + 1, k, Q.one());
        }
    }
    let tags = (0..d as i64).map(|k| QMonomial::q_pow(-k)).collect();
    WDRep::from_graded(tags, n).expect("ladder lowers tags")
}

/// Undo the realization twist: reverse the basis and multiply tags by
/// `q^{d-1}`. On `ext_ladder(I)` this returns exactly `make_tau(I)`.
pub fn normalize_ladder(ladder: &WDRep) -> WDRep {
    let d = ladder.dim();
    let mut n = Matrix::zeros(Q, d, d);
    for r in 0..d {
        for c in 0..d {
            n.set(d - 1 - r, d - 1 - c, ladder.n().get(r, c).clone());
        }
    }
    let shift = QMonomial::q_pow(d as i64 - 1);
    let tags = ladder.tags().iter().rev().map(|t| t.mul(&shift)).collect();
    WDRep::from_graded(tags, n).expect("normalized ladder lowers tags")
}

/// Build the Ext ladder for `I` and assert that it realizes
/// `τ_I ⊗ |.|^{d-1}`; also asserts the normalized ladder equals `τ_I`.
pub fn ext_ladder_to_wd(i: &SubsetI) -> Result<WDRep> {
    let d = i.d() as i64;
    let ladder = ext_ladder(i);
    let tau = make_tau(i);
    let target = tau.twist(&QMonomial::norm_power(2 * (d - 1)));
    ensure!(
        is_isomorphic(&ladder, &target),
        Error::Invariant(format!("Ext ladder for {i} is not isomorphic to tau_I twisted by |.|^(d-1)"))
    );
    ensure!(
        normalize_ladder(&ladder) == tau,
        Error::Invariant(format!("normalized Ext ladder for {i} differs from tau_I"))
    );
    Ok(ladder)
}

/// The twist `|.|^{(d-1)/2}` attached to `τ_I` by the Langlands assignment.
pub fn langlands_twist(d: u32) -> QMonomial {
    QMonomial::norm_power(d as i64 - 1)
}

#[cfg(test)]
mod tests;
