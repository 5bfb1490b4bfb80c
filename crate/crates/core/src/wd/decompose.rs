use std::fmt;

use super::rep::WDRep;
use super::sp;
use crate::exactnum::{Matrix, QMonomial};

/// A twist of `Sp(length)`: graded pieces at `start_tag·q^0, …,
/// start_tag·q^{length-1}`, with `N` lowering towards `start_tag`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IndecompSummand {
    pub start_tag: QMonomial,
    pub length: usize,
}

impl fmt::Display for IndecompSummand {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Sp({})@{}", self.length, self.start_tag)
    }
}

impl IndecompSummand {
    pub fn to_rep(&self) -> WDRep {
        sp(self.length, &self.start_tag).expect("positive length")
    }
}

/// Graded Jordan decomposition along tag ladders.
///
/// With `r(b, k)` the rank of `N^k` on the `b`-block, the number of strings
/// occupying exactly the tags `b·q^{-k}, …, b` is
/// `r(b,k) - r(b,k+1) - r(bq,k+1) + r(bq,k+2)`.
pub fn decompose(rep: &WDRep) -> Vec<IndecompSummand> {
    let dim = rep.dim();
    let mut powers = vec![Matrix::identity(rep.n().field(), dim)];
    for k in 1..=dim + 1 {
        let next = powers[k - 1].mul(rep.n());
        powers.push(next);
    }
    let rank = |b: &QMonomial, k: usize| -> usize {
        if k > dim {
            return 0;
        }
        let (Some((c0, cl)), Some((r0, rl))) = (rep.block_range(b), rep.block_range(&b.shift_q(-(k as i64)))) else {
            return 0;
        };
        powers[k].block(r0, c0, rl, cl).rank()
    };
    let mut out = Vec::new();
    for top in rep.blocks().keys() {
        let up = top.shift_q(1);
        for k in 0..dim {
            let count = (rank(top, k) + rank(&up, k + 2)) as i64 - (rank(top, k + 1) + rank(&up, k + 1)) as i64;
            debug_assert!(count >= 0, "negative string count");
            for _ in 0..count {
                out.push(IndecompSummand { start_tag: top.shift_q(-(k as i64)), length: k + 1 });
            }
        }
    }
    out.sort();
    out
}

/// Complete isomorphism invariant in the Frobenius-semisimple tag model.
pub fn is_isomorphic(a: &WDRep, b: &WDRep) -> bool {
    a.blocks() == b.blocks() && decompose(a) == decompose(b)
}

/// Direct sum of the listed special representations.
pub fn assemble(summands: &[IndecompSummand]) -> WDRep {
    summands.iter().fold(WDRep::zero(), |acc, s| acc.direct_sum(&s.to_rep()))
}
