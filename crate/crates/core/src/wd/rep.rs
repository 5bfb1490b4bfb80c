use std::collections::BTreeMap;
use std::fmt;

use num_traits::Zero;

use crate::error::{ensure, Error, Result};
use crate::exactnum::{int, rat, FieldSpec, Matrix, QMonomial, Scalar};

const Q: FieldSpec = FieldSpec::Rationals;

/// Frobenius-semisimple Weil–Deligne representation over `Q` whose
/// Frobenius eigenvalues are q-monomial tags.
///
/// Stored as the list of basis tags (sorted, so each eigenspace is a
/// contiguous block) and the total nilpotent `N` in that basis. `N` maps the
/// `λ`-block into the `λ·q^{-1}`-block, which is the relation
/// `F N F^{-1} = q^{-1} N` in this graded model.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct WDRep {
    tags: Vec<QMonomial>,
    n: Matrix,
}

impl fmt::Debug for WDRep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tags: Vec<String> = self.tags.iter().map(|t| t.to_string()).collect();
        write!(f, "WDRep {{ tags: [{}], N: {:?} }}", tags.join(" "), self.n)
    }
}

impl WDRep {
    /// Build from arbitrary basis tags and the total `N` in that basis. The
    /// basis is reordered by tag (stably).
    pub fn from_graded(tags: Vec<QMonomial>, n: Matrix) -> Result<Self> {
        let dim = tags.len();
        ensure!(
            n.shape() == (dim, dim),
            Error::Dimension(format!("N is {}x{} but there are {dim} basis tags", n.rows(), n.cols()))
        );
        ensure!(n.field() == Q, Error::FieldMismatch("Weil–Deligne data must be rational".into()));
        for i in 0..dim {
            for j in 0..dim {
                if !n.get(i, j).is_zero() {
                    ensure!(
                        tags[i] == tags[j].shift_q(-1),
                        Error::Invalid(format!(
                            "N sends tag {} to tag {}; it must lower tags by q^-1",
                            tags[j], tags[i]
                        ))
                    );
                }
            }
        }
        let mut order: Vec<usize> = (0..dim).collect();
        order.sort_by(|&a, &b| tags[a].cmp(&tags[b]));
        let mut m = Matrix::zeros(Q, dim, dim);
        for (ni, &oi) in order.iter().enumerate() {
            for (nj, &oj) in order.iter().enumerate() {
                m.set(ni, nj, n.get(oi, oj).clone());
            }
        }
        let sorted = order.iter().map(|&i| tags[i].clone()).collect();
        Ok(WDRep { tags: sorted, n: m })
    }

    /// Build from block data: eigenspace dimensions and, for each source tag
    /// `λ`, the block `V_λ → V_{λq^{-1}}`.
    pub fn from_blocks(blocks: &BTreeMap<QMonomial, usize>, n_blocks: &BTreeMap<QMonomial, Matrix>) -> Result<Self> {
        let mut tags = Vec::new();
        let mut offset = BTreeMap::new();
        for (t, &k) in blocks {
            ensure!(k > 0, Error::Invalid(format!("block at tag {t} has dimension 0")));
            offset.insert(t.clone(), tags.len());
            tags.extend(std::iter::repeat_n(t.clone(), k));
        }
        let dim = tags.len();
        let mut n = Matrix::zeros(Q, dim, dim);
        for (src, m) in n_blocks {
            let target = src.shift_q(-1);
            let (Some(&c0), Some(&sdim)) = (offset.get(src), blocks.get(src)) else {
                ensure!(m.is_zero(), Error::Invalid(format!("N block from absent tag {src}")));
                continue;
            };
            let (Some(&r0), Some(&tdim)) = (offset.get(&target), blocks.get(&target)) else {
                ensure!(m.is_zero(), Error::Invalid(format!("N block from {src} into absent tag {target}")));
                continue;
            };
            ensure!(
                m.shape() == (tdim, sdim),
                Error::Dimension(format!(
                    "N block from {src} is {}x{}, expected {tdim}x{sdim}",
                    m.rows(),
                    m.cols()
                ))
            );
            n.set_block(r0, c0, m);
        }
        Self::from_graded(tags, n)
    }

    pub fn zero() -> Self {
        WDRep { tags: Vec::new(), n: Matrix::zeros(Q, 0, 0) }
    }

    /// One-dimensional representation with the given Frobenius tag.
    pub fn line(tag: QMonomial) -> Self {
        WDRep { tags: vec![tag], n: Matrix::zeros(Q, 1, 1) }
    }

    pub fn dim(&self) -> usize {
        self.tags.len()
    }

    /// Basis tags in basis order (nondecreasing).
    pub fn tags(&self) -> &[QMonomial] {
        &self.tags
    }

    /// Total nilpotent operator.
    pub fn n(&self) -> &Matrix {
        &self.n
    }

    /// Eigenspace dimensions by tag.
    pub fn blocks(&self) -> BTreeMap<QMonomial, usize> {
        let mut b = BTreeMap::new();
        for t in &self.tags {
            *b.entry(t.clone()).or_insert(0) += 1;
        }
        b
    }

    /// `(offset, dim)` of the `λ`-block, if present.
    pub fn block_range(&self, tag: &QMonomial) -> Option<(usize, usize)> {
        let start = self.tags.iter().position(|t| t == tag)?;
        let len = self.tags[start..].iter().take_while(|t| *t == tag).count();
        Some((start, len))
    }

    /// The block of `N` from `V_λ` to `V_{λq^{-1}}`; `None` if either tag is
    /// absent.
    pub fn n_block(&self, tag: &QMonomial) -> Option<Matrix> {
        let (c0, cl) = self.block_range(tag)?;
        let (r0, rl) = self.block_range(&tag.shift_q(-1))?;
        Some(self.n.block(r0, c0, rl, cl))
    }

    /// All nonzero `N` blocks keyed by source tag.
    pub fn n_blocks(&self) -> BTreeMap<QMonomial, Matrix> {
        self.blocks()
            .keys()
            .filter_map(|t| self.n_block(t).filter(|m| !m.is_zero()).map(|m| (t.clone(), m)))
            .collect()
    }

    /// Frobenius `σ^{ss}(φ)` evaluated at a numeric `q`.
    pub fn frobenius_at(&self, q: &Scalar) -> Result<Matrix> {
        let mut f = Matrix::zeros(Q, self.dim(), self.dim());
        for (i, t) in self.tags.iter().enumerate() {
            f.set(i, i, t.eval(q)?);
        }
        Ok(f)
    }

    /// Check `F N F^{-1} = q^{-1} N`: formally on every entry of `N`, and by
    /// reconstructing the total matrices at a numeric `q`.
    pub fn check_monod(&self) -> Result<()> {
        for i in 0..self.dim() {
            for j in 0..self.dim() {
                if !self.n.get(i, j).is_zero() && self.tags[i] != self.tags[j].shift_q(-1) {
                    return Err(Error::Invariant(format!("N entry ({i},{j}) does not lower the tag by q^-1")));
                }
            }
        }
        ensure!(self.n.is_nilpotent(), Error::Invariant("N is not nilpotent".into()));
        let q = int(4);
        let f = self.frobenius_at(&q)?;
        let finv = f.inverse().ok_or_else(|| Error::Invariant("Frobenius not invertible".into()))?;
        let lhs = f.mul(&self.n).mul(&finv);
        ensure!(
            lhs == self.n.scale(&rat(1, 4)),
            Error::Invariant("F N F^-1 differs from q^-1 N at q = 4".into())
        );
        Ok(())
    }

    pub fn direct_sum(&self, other: &WDRep) -> WDRep {
        let mut tags = self.tags.clone();
        tags.extend(other.tags.iter().cloned());
        let n = Matrix::block_diag(&[&self.n, &other.n], Q);
        Self::from_graded(tags, n).expect("sum of valid representations")
    }

    /// Tensor product: tags multiply, `N = N⊗1 + 1⊗N`.
    pub fn tensor(&self, other: &WDRep) -> WDRep {
        let mut tags = Vec::with_capacity(self.dim() * other.dim());
        for a in &self.tags {
            for b in &other.tags {
                tags.push(a.mul(b));
            }
        }
        let n = self
            .n
            .kron(&Matrix::identity(Q, other.dim()))
            .add(&Matrix::identity(Q, self.dim()).kron(&other.n));
        Self::from_graded(tags, n).expect("tensor of valid representations")
    }

    /// Contragredient: tags invert and `N ↦ -Nᵀ`.
    pub fn dual(&self) -> WDRep {
        let tags = self.tags.iter().map(|t| t.inv()).collect();
        Self::from_graded(tags, self.n.transpose().neg()).expect("dual of a valid representation")
    }

    /// Multiply every tag by `tag` (tensor with a line).
    pub fn twist(&self, tag: &QMonomial) -> WDRep {
        WDRep { tags: self.tags.iter().map(|t| t.mul(tag)).collect(), n: self.n.clone() }
    }

    /// Block-wise base change: `N_λ ↦ g_{λq^{-1}} N_λ g_λ^{-1}`. Blocks
    /// without an entry in `g` keep the identity.
    pub fn conjugate_blocks(&self, g: &BTreeMap<QMonomial, Matrix>) -> Result<WDRep> {
        let mut total = Matrix::identity(Q, self.dim());
        for (t, m) in g {
            let (o, l) = self
                .block_range(t)
                .ok_or_else(|| Error::Invalid(format!("base change for absent tag {t}")))?;
            ensure!(m.shape() == (l, l), Error::Dimension(format!("base change at {t} must be {l}x{l}")));
            total.set_block(o, o, m);
        }
        let inv = total
            .inverse()
            .ok_or_else(|| Error::Invalid("base change is not invertible".into()))?;
        Ok(WDRep { tags: self.tags.clone(), n: total.mul(&self.n).mul(&inv) })
    }
}
