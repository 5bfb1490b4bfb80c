//! Monodromy and weight filtrations.

use rand::Rng;

use crate::error::{ensure, Error, Result};
use crate::exactnum::{FieldSpec, Matrix, Subspace, Vector};
use crate::wd::WDRep;

/// Finite increasing filtration `F_k` of `field^ambient`: `F_k = 0` for
/// `k < lo`, `F_k` listed for `lo ≤ k < lo + len`, and full above.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Filtration {
    field: FieldSpec,
    ambient: usize,
    lo: i64,
    spaces: Vec<Subspace>,
}

impl Filtration {
    /// Build from consecutive spaces starting at index `lo`; checks
    /// monotonicity and normalizes away redundant zero and full entries.
    pub fn new(field: FieldSpec, ambient: usize, lo: i64, spaces: Vec<Subspace>) -> Result<Self> {
        for s in &spaces {
            ensure!(
                s.ambient() == ambient,
                Error::Dimension(format!("subspace of dim-{} space in a filtration of dim-{ambient}", s.ambient()))
            );
        }
        for w in spaces.windows(2) {
            ensure!(w[0].is_subspace_of(&w[1]), Error::Invalid("filtration is not increasing".into()));
        }
        let mut f = Filtration { field, ambient, lo, spaces };
        f.normalize();
        Ok(f)
    }

    fn normalize(&mut self) {
        if self.ambient == 0 {
            self.spaces.clear();
            self.lo = 0;
            return;
        }
        if !self.spaces.last().is_some_and(|s| s.is_full()) {
            self.spaces.push(Subspace::full(self.field, self.ambient));
        }
        while self.spaces.len() >= 2 && self.spaces[self.spaces.len() - 2].is_full() {
            self.spaces.pop();
        }
        let lead = self.spaces.iter().take_while(|s| s.is_zero()).count();
        self.spaces.drain(..lead);
        self.lo += lead as i64;
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    /// `F_k`.
    pub fn get(&self, k: i64) -> Subspace {
        if k < self.lo {
            return Subspace::zero(self.field, self.ambient);
        }
        match self.spaces.get((k - self.lo) as usize) {
            Some(s) => s.clone(),
            None => Subspace::full(self.field, self.ambient),
        }
    }

    /// Smallest `k` with `F_k ≠ 0` (0 for the zero space).
    pub fn min_index(&self) -> i64 {
        self.lo
    }

    /// Smallest `k` with `F_k` full.
    pub fn max_index(&self) -> i64 {
        self.lo + self.spaces.len().saturating_sub(1) as i64
    }

    /// `dim Gr_k = dim F_k - dim F_{k-1}`.
    pub fn gr_dim(&self, k: i64) -> usize {
        self.get(k).dim() - self.get(k - 1).dim()
    }

    /// `(k, dim Gr_k)` for every `k` with nonzero graded piece.
    pub fn jumps(&self) -> Vec<(i64, usize)> {
        if self.ambient == 0 {
            return Vec::new();
        }
        (self.min_index()..=self.max_index())
            .map(|k| (k, self.gr_dim(k)))
            .filter(|&(_, g)| g > 0)
            .collect()
    }

    /// Replace `F_k` by `u`; fails if the result is not a filtration.
    pub fn with_replaced(&self, k: i64, u: Subspace) -> Result<Filtration> {
        let lo = self.min_index().min(k) - 1;
        let hi = self.max_index().max(k) + 1;
        let spaces = (lo..=hi).map(|i| if i == k { u.clone() } else { self.get(i) }).collect();
        Filtration::new(self.field, self.ambient, lo, spaces)
    }

    /// Random filtration differing from `self` in exactly one index `k`,
    /// with `F_{k-1} ⊆ U ⊆ F_{k+1}` and `U ≠ F_k`. `None` if no index
    /// leaves room.
    pub fn mutate<R: Rng>(&self, rng: &mut R) -> Option<(i64, Filtration)> {
        let candidates: Vec<i64> = (self.min_index() - 1..=self.max_index() + 1)
            .filter(|&k| self.get(k + 1).dim() > self.get(k - 1).dim())
            .collect();
        if candidates.is_empty() {
            return None;
        }
        for _ in 0..64 {
            let k = candidates[rng.gen_range(0..candidates.len())];
            let (below, above) = (self.get(k - 1), self.get(k + 1));
            let target = rng.gen_range(below.dim()..=above.dim());
            let basis = above.basis();
            let mut u = below.clone();
            while u.dim() < target {
                let coeffs: Vec<_> = basis.iter().map(|_| self.field.from_i64(rng.gen_range(-3..=3))).collect();
                let v: Vector = (0..self.ambient)
                    .map(|c| {
                        basis.iter().zip(&coeffs).fold(self.field.zero(), |acc, (b, x)| {
                            self.field.add(&acc, &self.field.mul(x, &b[c]))
                        })
                    })
                    .collect();
                u = u.sum(&Subspace::span(self.field, self.ambient, &[v])).expect("same ambient");
            }
            if u != self.get(k) {
                let f = self.with_replaced(k, u).expect("sandwiched subspace keeps monotonicity");
                return Some((k, f));
            }
        }
        None
    }
}

/// Result of testing the two characterizing properties of the monodromy
/// filtration (centered at `center`).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MonodromyProperties {
    /// `N·F_k ⊆ F_{k-2}` for every `k`.
    pub lowers_by_two: bool,
    /// `N^i: Gr_{center+i} → Gr_{center-i}` is an isomorphism for `i ≥ 0`.
    pub hard_lefschetz: bool,
}

impl MonodromyProperties {
    pub fn both(&self) -> bool {
        self.lowers_by_two && self.hard_lefschetz
    }
}

/// Rank of the map `Gr_a → Gr_b` induced by `m` (which must send `F_a`
/// into `F_b` and `F_{a-1}` into `F_{b-1}`).
fn induced_rank(f: &Filtration, m: &Matrix, a: i64, b: i64) -> usize {
    let img = f.get(a).map(m);
    let base = f.get(b - 1);
    img.sum(&base).expect("same ambient").dim() - base.dim()
}

/// Test both characterizing properties of `f` as the monodromy filtration
/// of `n`, with symmetry centered at `center` (0 for `M`; `j` for a weight
/// filtration in degree `j`).
pub fn check_monodromy_properties(n: &Matrix, f: &Filtration, center: i64) -> MonodromyProperties {
    let lo = f.min_index() - 2;
    let hi = f.max_index() + 2;
    let lowers_by_two = (lo..=hi).all(|k| f.get(k).map(n).is_subspace_of(&f.get(k - 2)));
    let span = (hi - center).max(center - lo).max(0);
    let mut hard_lefschetz = lowers_by_two;
    let mut power = Matrix::identity(n.field(), n.rows());
    for i in 0..=span {
        if !hard_lefschetz {
            break;
        }
        let (a, b) = (center + i, center - i);
        let (ga, gb) = (f.gr_dim(a), f.gr_dim(b));
        hard_lefschetz = ga == gb && induced_rank(f, &power, a, b) == ga;
        power = power.mul(n);
    }
    MonodromyProperties { lowers_by_two, hard_lefschetz }
}

/// `M_k = Σ_{j ≥ max(0,-k)} (ker N^{k+j+1} ∩ im N^j)`, verified post hoc
/// against the characterizing properties.
pub fn monodromy_filtration(n: &Matrix) -> Result<Filtration> {
    ensure!(n.rows() == n.cols(), Error::Dimension("N must be square".into()));
    ensure!(n.is_nilpotent(), Error::NotNilpotent);
    let dim = n.rows() as i64;
    let field = n.field();
    let mut powers = vec![Matrix::identity(field, n.rows())];
    for k in 1..=(2 * dim + 2) as usize {
        powers.push(powers[k - 1].mul(n));
    }
    let kernels: Vec<Subspace> = powers.iter().map(Subspace::kernel).collect();
    let images: Vec<Subspace> = powers.iter().map(Subspace::image).collect();
    let mut spaces = Vec::new();
    for k in -dim..=dim {
        let mut acc = Subspace::zero(field, n.rows());
        for j in 0.max(-k)..=dim {
            let kidx = (k + j + 1) as usize;
            let piece = kernels[kidx].intersect(&images[j as usize])?;
            acc = acc.sum(&piece)?;
        }
        spaces.push(acc);
    }
    let f = Filtration::new(field, n.rows(), -dim, spaces)?;
    let props = check_monodromy_properties(n, &f, 0);
    ensure!(
        props.both(),
        Error::Invariant(format!("monodromy filtration fails its characterization: {props:?}"))
    );
    Ok(f)
}

/// `W_w` = span of the basis vectors whose tag has weight `≤ w`.
pub fn weight_filtration(rep: &WDRep) -> Result<Filtration> {
    let weights = weights(rep)?;
    let field = rep.n().field();
    let dim = rep.dim();
    let (Some(&lo), Some(&hi)) = (weights.iter().min(), weights.iter().max()) else {
        return Filtration::new(field, 0, 0, Vec::new());
    };
    let spaces = (lo..=hi)
        .map(|w| {
            let vecs: Vec<Vector> = (0..dim)
                .filter(|&i| weights[i] <= w)
                .map(|i| {
                    let mut v = vec![field.zero(); dim];
                    v[i] = field.one();
                    v
                })
                .collect();
            Subspace::span(field, dim, &vecs)
        })
        .collect();
    Filtration::new(field, dim, lo, spaces)
}

fn weights(rep: &WDRep) -> Result<Vec<i64>> {
    rep.tags()
        .iter()
        .map(|t| t.weight().ok_or_else(|| Error::WeightUndefined(format!("tag {t}"))))
        .collect()
}

/// The weight if `rep` is pure, i.e. its weight filtration has one jump.
pub fn pure_weight(rep: &WDRep) -> Result<Option<i64>> {
    let jumps = weight_filtration(rep)?.jumps();
    Ok(match jumps.as_slice() {
        [(w, _)] => Some(*w),
        _ => None,
    })
}

/// Outcome of the monodromy-weight test in degree `j`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MwReport {
    pub holds: bool,
    /// `M_i = W_{i+j}` for all `i`.
    pub via_equality: bool,
    /// `N^i: Gr_W^{j+i} → Gr_W^{j-i}` is an isomorphism for all `i ≥ 0`.
    pub via_iso: bool,
}

pub fn mw_check(rep: &WDRep, j: i64) -> Result<MwReport> {
    let w = weight_filtration(rep)?;
    let m = monodromy_filtration(rep.n())?;
    let lo = m.min_index().min(w.min_index() - j) - 1;
    let hi = m.max_index().max(w.max_index() - j) + 1;
    let via_equality = (lo..=hi).all(|i| m.get(i) == w.get(i + j));
    let via_iso = check_monodromy_properties(rep.n(), &w, j).both();
    ensure!(
        via_equality == via_iso,
        Error::Invariant(format!("monodromy-weight forms disagree: equality {via_equality}, iso {via_iso}"))
    );
    Ok(MwReport { holds: via_equality, via_equality, via_iso })
}
