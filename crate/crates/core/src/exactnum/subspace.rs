use num_traits::Zero;

use super::field::{FieldSpec, Scalar};
use super::matrix::{Matrix, Vector};
use crate::error::{ensure, Error, Result};

/// Linear subspace of `field^ambient`, stored by the nonzero rows of its
/// reduced row echelon basis. Two subspaces are equal iff these canonical
/// bases are equal, so the derived `PartialEq` is subspace equality.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Subspace {
    ambient: usize,
    basis: Matrix,
}

impl Subspace {
    pub fn zero(field: FieldSpec, ambient: usize) -> Self {
        Subspace { ambient, basis: Matrix::zeros(field, 0, ambient) }
    }

    pub fn full(field: FieldSpec, ambient: usize) -> Self {
        Subspace { ambient, basis: Matrix::identity(field, ambient) }
    }

    /// Span of the given vectors.
    pub fn span(field: FieldSpec, ambient: usize, vectors: &[Vector]) -> Self {
        let rows: Vec<Vec<Scalar>> = vectors.to_vec();
        for v in &rows {
            assert_eq!(v.len(), ambient, "vector outside the ambient space");
        }
        let m = Matrix::from_rows_with_cols(field, rows, ambient).expect("field elements");
        Self::from_row_matrix(&m)
    }

    fn from_row_matrix(m: &Matrix) -> Self {
        let r = m.rref();
        let k = r.pivots.len();
        Subspace { ambient: m.cols(), basis: r.matrix.block(0, 0, k, m.cols()) }
    }

    /// Column space of `m`.
    pub fn image(m: &Matrix) -> Self {
        Self::from_row_matrix(&m.transpose())
    }

    /// Null space of `m`.
    pub fn kernel(m: &Matrix) -> Self {
        Self::span(m.field(), m.cols(), &m.kernel_basis())
    }

    pub fn field(&self) -> FieldSpec {
        self.basis.field()
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.rows()
    }

    pub fn is_zero(&self) -> bool {
        self.dim() == 0
    }

    pub fn is_full(&self) -> bool {
        self.dim() == self.ambient
    }

    /// Canonical basis vectors (rows of the reduced echelon form).
    pub fn basis(&self) -> Vec<Vector> {
        self.basis.to_rows()
    }

    /// Canonical basis as the rows of a matrix.
    pub fn basis_matrix(&self) -> &Matrix {
        &self.basis
    }

    fn check_ambient(&self, other: &Subspace) -> Result<()> {
        ensure!(
            self.ambient == other.ambient,
            Error::Dimension(format!("ambient mismatch: {} vs {}", self.ambient, other.ambient))
        );
        ensure!(self.field() == other.field(), Error::FieldMismatch("subspaces over different fields".into()));
        Ok(())
    }

    pub fn contains(&self, v: &[Scalar]) -> bool {
        assert_eq!(v.len(), self.ambient);
        if v.iter().all(|x| x.is_zero()) {
            return true;
        }
        let row = Matrix::from_rows_with_cols(self.field(), vec![v.to_vec()], self.ambient).expect("field element");
        self.basis.vstack(&row).rank() == self.dim()
    }

    pub fn is_subspace_of(&self, other: &Subspace) -> bool {
        self.ambient == other.ambient && self.basis().iter().all(|v| other.contains(v))
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace> {
        self.check_ambient(other)?;
        Ok(Self::from_row_matrix(&self.basis.vstack(&other.basis)))
    }

    /// Linear functionals (as row vectors) whose common zero set is `self`.
    pub fn annihilator(&self) -> Vec<Vector> {
        self.basis.kernel_basis()
    }

    /// `A ∩ B`, computed as the common kernel of both annihilators.
    pub fn intersect(&self, other: &Subspace) -> Result<Subspace> {
        self.check_ambient(other)?;
        let mut rows = self.annihilator();
        rows.extend(other.annihilator());
        let m = Matrix::from_rows_with_cols(self.field(), rows, self.ambient)?;
        Ok(Subspace::kernel(&m))
    }

    /// Image of the subspace under `m` (an `r x ambient` matrix).
    pub fn map(&self, m: &Matrix) -> Subspace {
        assert_eq!(m.cols(), self.ambient, "map domain mismatch");
        let imgs: Vec<Vector> = self.basis().iter().map(|v| m.mul_vec(v)).collect();
        Subspace::span(self.field(), m.rows(), &imgs)
    }

    /// `{ v : m v ∈ self }` for an `ambient x c` matrix `m`.
    pub fn preimage(&self, m: &Matrix) -> Subspace {
        assert_eq!(m.rows(), self.ambient, "map codomain mismatch");
        let ann = self.annihilator();
        if ann.is_empty() {
            return Subspace::full(self.field(), m.cols());
        }
        let c = Matrix::from_rows_with_cols(self.field(), ann, self.ambient).expect("field");
        Subspace::kernel(&c.mul(m))
    }

    /// Vectors extending a basis of `sub` to a basis of `self`; they project
    /// to a basis of `self / sub`. Requires `sub ⊆ self`.
    pub fn complement_basis(&self, sub: &Subspace) -> Vec<Vector> {
        debug_assert!(sub.is_subspace_of(self));
        let mut cols = sub.basis();
        let k = cols.len();
        let own = self.basis();
        cols.extend(own.iter().cloned());
        let m = Matrix::from_columns(self.field(), self.ambient, &cols);
        m.rref().pivots.into_iter().filter(|&p| p >= k).map(|p| own[p - k].clone()).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::field::int;

    const Q: FieldSpec = FieldSpec::Rationals;

    fn v(xs: &[i64]) -> Vector {
        xs.iter().map(|&x| int(x)).collect()
    }

    #[test]
    fn intersection_with_itself() {
        let a = Subspace::span(Q, 3, &[v(&[1, 2, 3]), v(&[0, 1, 1])]);
        assert_eq!(a.intersect(&a).unwrap(), a);
    }

    #[test]
    fn complementary_lines_meet_in_zero() {
        let a = Subspace::span(Q, 2, &[v(&[1, 0])]);
        let b = Subspace::span(Q, 2, &[v(&[1, 1])]);
        assert!(a.intersect(&b).unwrap().is_zero());
    }

    #[test]
    fn ambient_mismatch_is_an_error() {
        let a = Subspace::full(Q, 2);
        let b = Subspace::full(Q, 3);
        assert!(matches!(a.intersect(&b), Err(Error::Dimension(_))));
    }

    #[test]
    fn canonical_bases_make_equality_basis_independent() {
        let a = Subspace::span(Q, 3, &[v(&[1, 1, 0]), v(&[0, 1, 1])]);
        let b = Subspace::span(Q, 3, &[v(&[1, 2, 1]), v(&[1, 0, -1])]);
        assert_eq!(a, b);
    }

    #[test]
    fn preimage_and_map() {
        let n = Matrix::from_i64(Q, &[&[0, 1, 0], &[0, 0, 1], &[0, 0, 0]]);
        let line = Subspace::span(Q, 3, &[v(&[1, 0, 0])]);
        let pre = line.preimage(&n);
        assert_eq!(pre, Subspace::span(Q, 3, &[v(&[1, 0, 0]), v(&[0, 1, 0])]));
        assert_eq!(pre.map(&n), line);
    }

    #[test]
    fn complement_projects_to_quotient_basis() {
        let big = Subspace::full(Q, 3);
        let small = Subspace::span(Q, 3, &[v(&[1, 1, 1])]);
        let c = big.complement_basis(&small);
        assert_eq!(c.len(), 2);
        let all = small.sum(&Subspace::span(Q, 3, &c)).unwrap();
        assert!(all.is_full());
    }
}
