use crate::error::{ensure, Error, Result};
use crate::exactnum::{int, FieldSpec, Matrix};

/// A cell together with its codimension-one faces and incidence signs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrientedCell {
    /// `(index among the cells one dimension down, sign)`.
    pub faces: Vec<(usize, i8)>,
}

/// Finite oriented Δ-complex: cells per dimension with signed incidences,
/// and an optional `±1` coloring of the top cells.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrientedComplex {
    cells: Vec<Vec<OrientedCell>>,
    coloring: Option<Vec<i8>>,
}

impl OrientedComplex {
    /// Validates indices, signs and `∂ ∘ ∂ = 0`.
    pub fn new(cells: Vec<Vec<OrientedCell>>, coloring: Option<Vec<i8>>) -> Result<Self> {
        for (k, level) in cells.iter().enumerate() {
            for (i, c) in level.iter().enumerate() {
                if k == 0 {
                    ensure!(c.faces.is_empty(), Error::Invalid(format!("vertex {i} has faces")));
                }
                for &(f, s) in &c.faces {
                    ensure!(s == 1 || s == -1, Error::Invalid(format!("sign {s} on cell {i} of dimension {k}")));
                    ensure!(
                        k > 0 && f < cells[k - 1].len(),
                        Error::Invalid(format!("cell {i} of dimension {k} has a missing face {f}"))
                    );
                }
            }
        }
        if let Some(col) = &coloring {
            let top = cells.last().map_or(0, Vec::len);
            ensure!(col.len() == top, Error::Dimension(format!("{} colors for {top} top cells", col.len())));
            ensure!(col.iter().all(|&c| c == 1 || c == -1), Error::Invalid("colors must be ±1".into()));
        }
        let cx = OrientedComplex { cells, coloring };
        for k in 2..cx.cells.len() {
            ensure!(
                cx.boundary(k - 1).mul(&cx.boundary(k)).is_zero(),
                Error::Invariant(format!("∂∘∂ ≠ 0 in dimension {k}"))
            );
        }
        Ok(cx)
    }

    pub fn dim(&self) -> usize {
        self.cells.len().saturating_sub(1)
    }

    pub fn count(&self, k: usize) -> usize {
        self.cells.get(k).map_or(0, Vec::len)
    }

    pub fn cells(&self, k: usize) -> &[OrientedCell] {
        self.cells.get(k).map_or(&[], Vec::as_slice)
    }

    pub fn coloring(&self) -> Option<&[i8]> {
        self.coloring.as_deref()
    }

    /// Matrix of `∂_k`: rows are `(k-1)`-cells, columns `k`-cells.
    pub fn boundary(&self, k: usize) -> Matrix {
        let f = FieldSpec::Rationals;
        let rows = if k == 0 { 0 } else { self.count(k - 1) };
        let mut m = Matrix::zeros(f, rows, self.count(k));
        for (j, c) in self.cells(k).iter().enumerate() {
            for &(i, s) in &c.faces {
                let v = f.add(m.get(i, j), &int(s as i64));
                m.set(i, j, v);
            }
        }
        m
    }

    /// Rational Betti numbers of the cellular chain complex.
    pub fn betti_numbers(&self) -> Vec<usize> {
        (0..self.cells.len())
            .map(|k| {
                let z = self.count(k) - self.boundary(k).rank();
                let b = if k + 1 < self.cells.len() { self.boundary(k + 1).rank() } else { 0 };
                z - b
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cycle(n: usize) -> OrientedComplex {
        let verts = vec![OrientedCell { faces: vec![] }; n];
        let edges = (0..n).map(|i| OrientedCell { faces: vec![((i + 1) % n, 1), (i, -1)] }).collect();
        OrientedComplex::new(vec![verts, edges], None).unwrap()
    }

    #[test]
    fn cycle_homology() {
        assert_eq!(cycle(3).betti_numbers(), vec![1, 1]);
        assert_eq!(cycle(2).betti_numbers(), vec![1, 1]);
    }

    #[test]
    fn incoherent_signs_rejected() {
        let verts = vec![OrientedCell { faces: vec![] }; 3];
        let edges = vec![
            OrientedCell { faces: vec![(1, 1), (0, -1)] },
            OrientedCell { faces: vec![(2, 1), (1, -1)] },
            OrientedCell { faces: vec![(2, 1), (0, -1)] },
        ];
        let tri = vec![OrientedCell { faces: vec![(0, 1), (1, 1), (2, 1)] }];
        let err = OrientedComplex::new(vec![verts, edges, tri], None).unwrap_err();
        assert!(err.is_invariant());
    }
}
