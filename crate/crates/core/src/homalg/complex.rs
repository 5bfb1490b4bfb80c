use std::sync::Arc;

use super::algebra::PresentedAlgebra;
use super::module::{subquotient, AModule, ModMap, Subquotient};
use crate::error::{ensure, Error, Result};
use crate::exactnum::{FieldSpec, Matrix, Scalar, Subspace, Vector};

/// Cochain complex of modules `X^lo → … → X^hi`, zero outside.
#[derive(Debug, Clone)]
pub struct BoundedComplex {
    alg: Arc<PresentedAlgebra>,
    lo: i64,
    terms: Vec<AModule>,
    /// `diffs[i]: X^{lo+i} → X^{lo+i+1}`, one fewer than `terms`.
    diffs: Vec<ModMap>,
}

impl BoundedComplex {
    pub fn new(alg: Arc<PresentedAlgebra>, lo: i64, terms: Vec<AModule>, diffs: Vec<ModMap>) -> Result<Self> {
        ensure!(
            diffs.len() + 1 == terms.len() || (terms.is_empty() && diffs.is_empty()),
            Error::Dimension(format!("{} terms need {} differentials", terms.len(), terms.len().saturating_sub(1)))
        );
        for (i, d) in diffs.iter().enumerate() {
            ensure!(
                d.is_hom(&terms[i], &terms[i + 1]),
                Error::Invalid(format!("d^{} is not a module homomorphism", lo + i as i64))
            );
        }
        for (i, w) in diffs.windows(2).enumerate() {
            ensure!(
                w[1].compose(&w[0]).is_zero(),
                Error::Invalid(format!("d^{} ∘ d^{} ≠ 0", lo + i as i64 + 1, lo + i as i64))
            );
        }
        Ok(BoundedComplex { alg, lo, terms, diffs })
    }

    pub fn zero(alg: Arc<PresentedAlgebra>) -> Self {
        BoundedComplex { alg, lo: 0, terms: Vec::new(), diffs: Vec::new() }
    }

    /// `M[-degree]`: the module alone in `degree`.
    pub fn single(m: &AModule, degree: i64) -> Self {
        BoundedComplex { alg: m.algebra().clone(), lo: degree, terms: vec![m.clone()], diffs: Vec::new() }
    }

    pub fn algebra(&self) -> &Arc<PresentedAlgebra> {
        &self.alg
    }

    pub fn field(&self) -> FieldSpec {
        self.alg.field()
    }

    /// Lowest stored degree.
    pub fn lo(&self) -> i64 {
        self.lo
    }

    /// Highest stored degree (`lo - 1` when empty).
    pub fn hi(&self) -> i64 {
        self.lo + self.terms.len() as i64 - 1
    }

    /// Degrees with a nonzero term, as `(min, max)`.
    pub fn support(&self) -> Option<(i64, i64)> {
        let nz: Vec<i64> = (self.lo..=self.hi()).filter(|&k| !self.term(k).is_zero()).collect();
        Some((*nz.first()?, *nz.last()?))
    }

    pub fn term(&self, k: i64) -> AModule {
        self.stored(k).cloned().unwrap_or_else(|| AModule::zero(self.alg.clone()))
    }

    fn stored(&self, k: i64) -> Option<&AModule> {
        (k >= self.lo).then(|| self.terms.get((k - self.lo) as usize)).flatten()
    }

    pub fn diff(&self, k: i64) -> ModMap {
        if k >= self.lo {
            if let Some(d) = self.diffs.get((k - self.lo) as usize) {
                return d.clone();
            }
        }
        ModMap::zero(&self.term(k), &self.term(k + 1))
    }

    pub fn terms(&self) -> &[AModule] {
        &self.terms
    }

    /// `H^k` as `ker d^k / im d^{k-1}`, with the quotient map on cycles.
    pub fn cohomology(&self, k: i64) -> Subquotient {
        let x = self.term(k);
        let z: Vec<Subspace> = self.diff(k).comps.iter().map(Subspace::kernel).collect();
        let b = self.diff(k - 1).image();
        subquotient(&x, &z, &b).expect("cycles and boundaries are submodules")
    }

    /// Degrees with nonzero cohomology.
    pub fn cohomology_degrees(&self) -> Vec<i64> {
        (self.lo..=self.hi()).filter(|&k| !self.cohomology(k).module.is_zero()).collect()
    }

    pub fn is_acyclic(&self) -> bool {
        self.cohomology_degrees().is_empty()
    }

    /// Degreewise direct sum.
    pub fn direct_sum(parts: &[&BoundedComplex]) -> BoundedComplex {
        let alg = parts[0].alg.clone();
        let lo = parts.iter().map(|c| c.lo).min().unwrap_or(0);
        let hi = parts.iter().map(|c| c.hi()).max().unwrap_or(lo - 1);
        let terms: Vec<AModule> = (lo..=hi)
            .map(|k| {
                let ts: Vec<AModule> = parts.iter().map(|c| c.term(k)).collect();
                AModule::direct_sum(&ts.iter().collect::<Vec<_>>())
            })
            .collect();
        let f = alg.field();
        let diffs = (lo..hi)
            .map(|k| {
                let ds: Vec<ModMap> = parts.iter().map(|c| c.diff(k)).collect();
                ModMap {
                    comps: (0..alg.n_vertices())
                        .map(|v| Matrix::block_diag(&ds.iter().map(|d| &d.comps[v]).collect::<Vec<_>>(), f))
                        .collect(),
                }
            })
            .collect();
        BoundedComplex { alg, lo, terms, diffs }
    }

    /// `⊕_q H^q(X)[-q]` with zero differential.
    pub fn split_form(&self) -> BoundedComplex {
        let parts: Vec<BoundedComplex> =
            (self.lo..=self.hi()).map(|k| BoundedComplex::single(&self.cohomology(k).module, k)).collect();
        if parts.is_empty() {
            return BoundedComplex::zero(self.alg.clone());
        }
        BoundedComplex::direct_sum(&parts.iter().collect::<Vec<_>>())
    }

    /// Whether `f = (f^k)` over `lo..=hi` commutes with the differentials
    /// (as a degree-0 map `self → other`).
    pub fn is_chain_map(&self, other: &BoundedComplex, f: &[(i64, ModMap)]) -> bool {
        let get = |k: i64| {
            f.iter().find(|(j, _)| *j == k).map(|(_, m)| m.clone()).unwrap_or_else(|| ModMap::zero(&self.term(k), &other.term(k)))
        };
        let lo = self.lo.min(other.lo) - 1;
        let hi = self.hi().max(other.hi()) + 1;
        (lo..=hi).all(|k| {
            let fk = get(k);
            fk.is_hom(&self.term(k), &other.term(k)) && other.diff(k).compose(&fk) == get(k + 1).compose(&self.diff(k))
        })
    }
}

/// Cochain complex of vector spaces `V^lo → … → V^hi`.
#[derive(Debug, Clone, PartialEq)]
pub struct VectorComplex {
    pub field: FieldSpec,
    pub lo: i64,
    pub dims: Vec<usize>,
    /// `diffs[i]: V^{lo+i} → V^{lo+i+1}` (`dims[i+1] x dims[i]`).
    pub diffs: Vec<Matrix>,
}

impl VectorComplex {
    pub fn new(field: FieldSpec, lo: i64, dims: Vec<usize>, diffs: Vec<Matrix>) -> Result<Self> {
        ensure!(
            diffs.len() + 1 == dims.len() || (dims.is_empty() && diffs.is_empty()),
            Error::Dimension("one differential between consecutive terms".into())
        );
        for (i, d) in diffs.iter().enumerate() {
            ensure!(
                d.shape() == (dims[i + 1], dims[i]),
                Error::Dimension(format!("differential {i} has shape {:?}", d.shape()))
            );
        }
        for (i, w) in diffs.windows(2).enumerate() {
            ensure!(
                w[1].mul(&w[0]).is_zero(),
                Error::Invariant(format!("d∘d ≠ 0 at degree {}", lo + i as i64))
            );
        }
        Ok(VectorComplex { field, lo, dims, diffs })
    }

    pub fn dim(&self, k: i64) -> usize {
        if k < self.lo {
            return 0;
        }
        self.dims.get((k - self.lo) as usize).copied().unwrap_or(0)
    }

    fn diff_rank(&self, k: i64) -> usize {
        if k < self.lo {
            return 0;
        }
        self.diffs.get((k - self.lo) as usize).map_or(0, Matrix::rank)
    }

    /// `dim H^k`.
    pub fn cohomology_dim(&self, k: i64) -> usize {
        self.dim(k) - self.diff_rank(k) - self.diff_rank(k - 1)
    }

    /// `(k, dim H^k)` for every degree with nonzero cohomology.
    pub fn cohomology_dims(&self) -> Vec<(i64, usize)> {
        (self.lo..self.lo + self.dims.len() as i64)
            .map(|k| (k, self.cohomology_dim(k)))
            .filter(|&(_, h)| h > 0)
            .collect()
    }

    pub fn is_acyclic(&self) -> bool {
        self.cohomology_dims().is_empty()
    }

    pub fn euler_characteristic(&self) -> i64 {
        (self.lo..self.lo + self.dims.len() as i64).map(|k| if k % 2 == 0 { 1 } else { -1 } * self.dim(k) as i64).sum()
    }
}

/// `ker D / im D'` for `D': V_{n-1} → V_n`, `D: V_n → V_{n+1}`, with
/// coordinates on the classes.
#[derive(Debug, Clone)]
pub struct LinCohomology {
    cycles: Subspace,
    boundaries: Subspace,
    reps: Vec<Vector>,
    /// Rows give class coordinates of an ambient vector (valid on cycles).
    coord: Matrix,
}

impl LinCohomology {
    pub fn new(prev: &Matrix, next: &Matrix) -> Self {
        let f = next.field();
        let cycles = Subspace::kernel(next);
        let boundaries = Subspace::image(prev);
        debug_assert!(boundaries.is_subspace_of(&cycles));
        let reps = cycles.complement_basis(&boundaries);
        let n = next.cols();
        let mut cols = boundaries.basis();
        let nb = cols.len();
        cols.extend(reps.iter().cloned());
        cols.extend(Subspace::full(f, n).complement_basis(&cycles));
        let inv = Matrix::from_columns(f, n, &cols).inverse().expect("adapted basis");
        let coord = inv.block(nb, 0, reps.len(), n);
        LinCohomology { cycles, boundaries, reps, coord }
    }

    pub fn dim(&self) -> usize {
        self.reps.len()
    }

    /// Cocycle representing basis class `i`.
    pub fn rep(&self, i: usize) -> &Vector {
        &self.reps[i]
    }

    /// Cocycle representing the class with the given coordinates.
    pub fn rep_of(&self, coords: &[Scalar]) -> Vector {
        let f = self.cycles.field();
        let n = self.cycles.ambient();
        let mut out = vec![f.zero(); n];
        for (r, c) in self.reps.iter().zip(coords) {
            for (o, x) in out.iter_mut().zip(r) {
                *o = f.add(o, &f.mul(c, x));
            }
        }
        out
    }

    pub fn is_cocycle(&self, z: &[Scalar]) -> bool {
        self.cycles.contains(z)
    }

    pub fn is_coboundary(&self, z: &[Scalar]) -> bool {
        self.boundaries.contains(z)
    }

    /// Class coordinates of a cocycle.
    pub fn class(&self, z: &[Scalar]) -> Result<Vector> {
        ensure!(self.is_cocycle(z), Error::Invariant("not a cocycle".into()));
        Ok(self.coord.mul_vec(z))
    }
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;
    use crate::exactnum::int;
    use crate::homalg::module::ProjModule;

    const Q: FieldSpec = FieldSpec::Rationals;

    /// `P_2 → P_3` over `Λ_3` (1-based vertices), the generator going to
    /// the arrow path.
    pub(crate) fn ladder_two_term() -> BoundedComplex {
        let a = Arc::new(PresentedAlgebra::koszul_ladder(Q, 3).unwrap());
        let p1 = ProjModule::indecomposable(a.clone(), 1).unwrap();
        let p2 = ProjModule::indecomposable(a.clone(), 2).unwrap();
        let d = p1.hom_from_generators(&p2.module, &[vec![int(1)]]);
        BoundedComplex::new(a, 0, vec![p1.module.clone(), p2.module.clone()], vec![d]).unwrap()
    }

    #[test]
    fn two_term_ladder_complex() {
        let x = ladder_two_term();
        assert_eq!(x.cohomology_degrees(), vec![0, 1]);
        assert_eq!(x.cohomology(0).module.dims(), &[1, 0, 0]);
        assert_eq!(x.cohomology(1).module.dims(), &[0, 0, 1]);
        let split = x.split_form();
        assert_eq!(split.cohomology_degrees(), vec![0, 1]);
        assert!(x.is_chain_map(&x, &[(0, ModMap::identity(&x.term(0))), (1, ModMap::identity(&x.term(1)))]));
        assert!(!x.is_chain_map(&x, &[(0, ModMap::identity(&x.term(0)))]));
    }

    #[test]
    fn vector_complex_cohomology() {
        let d = Matrix::from_i64(Q, &[&[1], &[1]]);
        let c = VectorComplex::new(Q, 0, vec![1, 2], vec![d]).unwrap();
        assert_eq!(c.cohomology_dims(), vec![(1, 1)]);
        assert_eq!(c.euler_characteristic(), -1);
        let bad = Matrix::from_i64(Q, &[&[1, 0]]);
        let dd = Matrix::from_i64(Q, &[&[1], &[0]]);
        assert!(VectorComplex::new(Q, 0, vec![1, 2, 1], vec![dd, bad]).is_err());
    }

    #[test]
    fn lin_cohomology_classes() {
        let prev = Matrix::from_i64(Q, &[&[1], &[0], &[0]]);
        let next = Matrix::from_i64(Q, &[&[0, 0, 1]]);
        let h = LinCohomology::new(&prev, &next);
        assert_eq!(h.dim(), 1);
        assert!(h.is_coboundary(&[int(5), int(0), int(0)]));
        let c = h.class(&[int(3), int(2), int(0)]).unwrap();
        assert_eq!(h.rep_of(&c).iter().skip(1).cloned().collect::<Vec<_>>(), vec![int(2), int(0)]);
        assert!(h.class(&[int(0), int(0), int(1)]).is_err());
    }
}
