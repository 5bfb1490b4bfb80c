use std::collections::BTreeMap;
use std::sync::Arc;

use super::complex::{BoundedComplex, LinCohomology};
use super::module::{AModule, ModMap};
use super::resolution::{lift_cocycle, ProjReplacement};
use crate::error::{ensure, Error, Result};
use crate::exactnum::{Matrix, Scalar, Vector};

/// `Hom^•(P, Y)` for a projective replacement `P` and a complex `Y`, with
/// `Hom^n = Π_k Hom(P^k, Y^{k+n})` in generator-image coordinates and
/// `(Df)^k = d f^k - (-1)^n f^{k+1} d`.
#[derive(Debug, Clone, Copy)]
pub struct HomComplex<'a> {
    pub p: &'a ProjReplacement,
    pub y: &'a BoundedComplex,
}

impl<'a> HomComplex<'a> {
    pub fn new(p: &'a ProjReplacement, y: &'a BoundedComplex) -> Self {
        HomComplex { p, y }
    }

    fn degrees(&self, n: i64) -> Vec<i64> {
        let Some((ylo, yhi)) = self.y.support() else {
            return Vec::new();
        };
        let lo = self.p.lo().max(ylo - n);
        let hi = self.p.hi().min(yhi - n);
        (lo..=hi).collect()
    }

    /// `(k, offset, length)` of each block of `Hom^n`.
    fn blocks(&self, n: i64) -> Vec<(i64, usize, usize)> {
        let mut off = 0;
        self.degrees(n)
            .into_iter()
            .map(|k| {
                let len = self.p.term(k).hom_dim(&self.y.term(k + n));
                let b = (k, off, len);
                off += len;
                b
            })
            .collect()
    }

    pub fn dim(&self, n: i64) -> usize {
        self.blocks(n).iter().map(|b| b.2).sum()
    }

    /// Whether `H^n` is computed exactly (the replacement reaches deep enough).
    pub fn is_exact_in(&self, n: i64) -> bool {
        match self.y.support() {
            None => true,
            Some((ylo, _)) => self.p.knows(ylo - n - 1),
        }
    }

    pub fn to_maps(&self, n: i64, coords: &[Scalar]) -> BTreeMap<i64, ModMap> {
        self.blocks(n)
            .into_iter()
            .map(|(k, off, len)| (k, self.p.term(k).hom_from_coords(&self.y.term(k + n), &coords[off..off + len])))
            .collect()
    }

    pub fn coords_of(&self, n: i64, maps: &BTreeMap<i64, ModMap>) -> Vector {
        let f = self.y.field();
        let mut out = Vec::with_capacity(self.dim(n));
        for (k, _, len) in self.blocks(n) {
            match maps.get(&k) {
                Some(m) => out.extend(self.p.term(k).coords_of(m)),
                None => out.extend(std::iter::repeat_n(f.zero(), len)),
            }
        }
        out
    }

    /// Matrix of `D: Hom^n → Hom^{n+1}`.
    pub fn differential(&self, n: i64) -> Matrix {
        let f = self.y.field();
        let src = self.blocks(n);
        let tgt = self.blocks(n + 1);
        let cols = src.iter().map(|b| b.2).sum();
        let rows = tgt.iter().map(|b| b.2).sum();
        let mut m = Matrix::zeros(f, rows, cols);
        let sign = if n.rem_euclid(2) == 0 { f.one() } else { f.neg(&f.one()) };
        let find = |k: i64| src.iter().find(|b| b.0 == k).copied();
        for &(k, row_off, _) in &tgt {
            let pk = self.p.term(k);
            let yk = self.y.term(k + n);
            let y_next = self.y.term(k + n + 1);
            let dy = self.y.diff(k + n);
            let dp = self.p.diff(k);
            let toff = pk.coord_offsets(&y_next);
            let same = find(k);
            let above = find(k + 1);
            let soff = pk.coord_offsets(&yk);
            for i in 0..pk.rank() {
                let (v, g) = pk.generator(i);
                let r0 = row_off + toff[i];
                if let Some((_, c0, _)) = same {
                    m.set_block(r0, c0 + soff[i], &dy.comps[v]);
                }
                if let Some((_, c0, len)) = above {
                    let dg = dp.comps[v].mul_vec(&g);
                    let ev = self.p.term(k + 1).eval_matrix(&y_next, v, &dg);
                    debug_assert_eq!(ev.cols(), len);
                    let blk = m.block(r0, c0, ev.rows(), len).sub(&ev.scale(&sign));
                    m.set_block(r0, c0, &blk);
                }
            }
        }
        m
    }

    pub fn cohomology(&self, n: i64) -> Result<LinCohomology> {
        ensure!(
            self.is_exact_in(n),
            Error::Precondition(format!("replacement too short for Hom-cohomology in degree {n}"))
        );
        Ok(LinCohomology::new(&self.differential(n - 1), &self.differential(n)))
    }
}

/// `Hom_D(X, Y[n]) = H^n Hom^•(P_X, Y)` with a basis of classes.
#[derive(Debug, Clone)]
pub struct HomGroup {
    pub px: Arc<ProjReplacement>,
    pub y: BoundedComplex,
    pub n: i64,
    coh: LinCohomology,
}

impl HomGroup {
    pub fn new(px: Arc<ProjReplacement>, y: BoundedComplex, n: i64) -> Result<Self> {
        let coh = HomComplex::new(&px, &y).cohomology(n)?;
        Ok(HomGroup { px, y, n, coh })
    }

    pub fn complex(&self) -> HomComplex<'_> {
        HomComplex::new(&self.px, &self.y)
    }

    pub fn dim(&self) -> usize {
        self.coh.dim()
    }

    pub fn cohomology(&self) -> &LinCohomology {
        &self.coh
    }

    /// Cocycle representing the class with coordinates `c`.
    pub fn cocycle(&self, c: &[Scalar]) -> BTreeMap<i64, ModMap> {
        self.complex().to_maps(self.n, &self.coh.rep_of(c))
    }

    pub fn basis_cocycle(&self, i: usize) -> BTreeMap<i64, ModMap> {
        self.complex().to_maps(self.n, self.coh.rep(i))
    }

    pub fn class_of(&self, maps: &BTreeMap<i64, ModMap>) -> Result<Vector> {
        self.coh.class(&self.complex().coords_of(self.n, maps))
    }

    pub fn unit(&self, i: usize) -> Vector {
        let f = self.y.field();
        (0..self.dim()).map(|j| if i == j { f.one() } else { f.zero() }).collect()
    }
}

/// `g ∘ f` for `f ∈ Hom_D(X, Y[n])` and `g ∈ Hom_D(Y, Z[m])`, expressed in
/// `out = Hom_D(X, Z[n+m])`. Requires `g.px` to replace `f.y` and
/// `out.px` to agree with `f.px` wherever `f` lives.
pub fn compose(f: &HomGroup, fc: &[Scalar], g: &HomGroup, gc: &[Scalar], out: &HomGroup) -> Result<Vector> {
    ensure!(out.n == f.n + g.n, Error::Invalid("degree mismatch in composition".into()));
    ensure!(g.px.target().terms() == f.y.terms(), Error::Invalid("middle objects differ".into()));
    ensure!(out.y.terms() == g.y.terms(), Error::Invalid("target objects differ".into()));
    for k in f.px.lo().max(out.px.lo())..=f.px.hi().min(out.px.hi()) {
        ensure!(
            f.px.term(k).gens() == out.px.term(k).gens(),
            Error::Invalid("source replacements differ".into())
        );
    }
    let (n, m) = (f.n, g.n);
    let alpha = f.cocycle(fc);
    let beta = g.cocycle(gc);
    let Some((zlo, _)) = out.y.support() else {
        return Ok(Vec::new());
    };
    let kmin = out.px.lo().max(zlo - n - m);
    let lifted = lift_cocycle(&out.px, &g.px, n, &alpha, kmin)?;
    let mut prod = BTreeMap::new();
    for (k, a) in &lifted {
        if let Some(b) = beta.get(&(k + n)) {
            prod.insert(*k, b.compose(a));
        }
    }
    out.class_of(&prod)
}

/// `Ext^k(M, N)` for `k ≤ kmax`, sharing one resolution of `M`.
#[derive(Debug, Clone)]
pub struct ExtGroups {
    pub groups: Vec<HomGroup>,
}

impl ExtGroups {
    pub fn new(m: &AModule, n: &AModule, kmax: usize) -> Result<Self> {
        let px = Arc::new(ProjReplacement::new(&BoundedComplex::single(m, 0), -(kmax as i64) - 1));
        Self::with_replacement(px, n, kmax)
    }

    pub fn with_replacement(px: Arc<ProjReplacement>, n: &AModule, kmax: usize) -> Result<Self> {
        let y = BoundedComplex::single(n, 0);
        let groups = (0..=kmax as i64).map(|k| HomGroup::new(px.clone(), y.clone(), k)).collect::<Result<_>>()?;
        Ok(ExtGroups { groups })
    }

    pub fn dims(&self) -> Vec<usize> {
        self.groups.iter().map(HomGroup::dim).collect()
    }
}

/// `dim Ext^k(M, N)` for `0 ≤ k ≤ kmax`.
pub fn ext_dims(m: &AModule, n: &AModule, kmax: usize) -> Result<Vec<usize>> {
    Ok(ExtGroups::new(m, n, kmax)?.dims())
}

/// An element of `Ext^k(M, N)`.
#[derive(Debug, Clone)]
pub struct ExtElement {
    pub source: AModule,
    pub target: AModule,
    pub degree: usize,
    pub coords: Vector,
}

impl ExtElement {
    fn group(&self, depth: usize) -> Result<HomGroup> {
        let px = Arc::new(ProjReplacement::new(&BoundedComplex::single(&self.source, 0), -(depth as i64) - 1));
        HomGroup::new(px, BoundedComplex::single(&self.target, 0), self.degree as i64)
    }

    /// Basis element `i` of `Ext^k(M, N)`.
    pub fn basis(m: &AModule, n: &AModule, k: usize, i: usize) -> Result<Self> {
        let e = ExtElement { source: m.clone(), target: n.clone(), degree: k, coords: Vec::new() };
        let g = e.group(k)?;
        ensure!(i < g.dim(), Error::Invalid(format!("Ext^{k} has dimension {}", g.dim())));
        Ok(ExtElement { coords: g.unit(i), ..e })
    }

    /// The identity of `M` in `Ext^0(M, M)`.
    pub fn identity(m: &AModule) -> Result<Self> {
        let e = ExtElement { source: m.clone(), target: m.clone(), degree: 0, coords: Vec::new() };
        let g = e.group(0)?;
        let px = g.px.clone();
        let eps = BTreeMap::from([(0, px.eps(0))]);
        let coords = g.class_of(&eps)?;
        Ok(ExtElement { coords, ..e })
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(num_traits::Zero::is_zero)
    }
}

/// Yoneda product `β ∪ α ∈ Ext^{a+b}(M, P)` of `α ∈ Ext^a(M, N)` and
/// `β ∈ Ext^b(N, P)`, computed as `β ∘ α̃` for a lift `α̃: P_M → P_N[a]`.
pub fn yoneda_compose(alpha: &ExtElement, beta: &ExtElement) -> Result<ExtElement> {
    ensure!(
        alpha.target == beta.source,
        Error::Invalid("Yoneda product: target of the first class is not the source of the second".into())
    );
    let total = alpha.degree + beta.degree;
    let fa = alpha.group(alpha.degree)?;
    let gb = beta.group(beta.degree)?;
    let out_px = Arc::new(ProjReplacement::new(&BoundedComplex::single(&alpha.source, 0), -(total as i64) - 1));
    let out = HomGroup::new(out_px, BoundedComplex::single(&beta.target, 0), total as i64)?;
    let coords = compose(&fa, &alpha.coords, &gb, &beta.coords, &out)?;
    Ok(ExtElement { source: alpha.source.clone(), target: beta.target.clone(), degree: total, coords })
}
