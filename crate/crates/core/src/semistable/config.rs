use std::collections::BTreeMap;

use super::betti::{BettiPoly, QPoly};
use super::oriented::{OrientedCell, OrientedComplex};
use crate::error::{ensure, Error, Result};

/// A connected component of a stratum `Y_J = ∩_{j ∈ J} Y_j`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StratumCell {
    /// The index set `J`, increasing.
    pub support: Vec<usize>,
    /// For each position `i` of `support`, the cell of `Y_{J \ {J_i}}`
    /// containing this one, with the orientation sign `ε`.
    pub faces: Vec<(usize, i8)>,
    /// Even Betti numbers of the cell, of dimension `n + 1 - |J|`.
    pub betti: BettiPoly,
}

/// Dual complex of a strictly semistable special fiber of relative
/// dimension `n`: `cells[m - 1]` lists the connected components of
/// `Y^(m)`. Several cells may share a support (a Δ-complex).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SemistableConfig {
    n: usize,
    components: usize,
    cells: Vec<Vec<StratumCell>>,
}

impl SemistableConfig {
    pub fn new(n: usize, components: usize, cells: Vec<Vec<StratumCell>>) -> Result<Self> {
        ensure!(components > 0, Error::Invalid("no components".into()));
        ensure!(
            !cells.is_empty() && cells.len() <= n + 1,
            Error::Invalid(format!("{} strata levels for relative dimension {n}", cells.len()))
        );
        ensure!(
            cells[0].len() == components,
            Error::Invalid(format!("{} component cells for {components} components", cells[0].len()))
        );
        for (m0, level) in cells.iter().enumerate() {
            let m = m0 + 1;
            for (idx, c) in level.iter().enumerate() {
                let at = || format!("cell {idx} of Y^({m})");
                ensure!(c.support.len() == m, Error::Invalid(format!("{}: support size {}", at(), c.support.len())));
                ensure!(
                    c.support.windows(2).all(|w| w[0] < w[1]) && c.support.iter().all(|&j| j < components),
                    Error::Invalid(format!("{}: support {:?} not increasing in range", at(), c.support))
                );
                if m == 1 {
                    ensure!(c.support == vec![idx], Error::Invalid(format!("component cell {idx} has support {:?}", c.support)));
                    ensure!(c.faces.is_empty(), Error::Invalid(format!("{}: components have no faces", at())));
                } else {
                    ensure!(c.faces.len() == m, Error::Invalid(format!("{}: {} faces", at(), c.faces.len())));
                    for (i, &(f, s)) in c.faces.iter().enumerate() {
                        ensure!(s == 1 || s == -1, Error::Invalid(format!("{}: sign {s}", at())));
                        let face = cells[m0 - 1].get(f).ok_or_else(|| Error::Invalid(format!("{}: missing face {f}", at())))?;
                        let mut expect = c.support.clone();
                        expect.remove(i);
                        ensure!(
                            face.support == expect,
                            Error::Invalid(format!("{}: face {i} has support {:?}", at(), face.support))
                        );
                    }
                }
                let b = &c.betti;
                ensure!(
                    b.h.len() == n + 2 - m,
                    Error::Invalid(format!("{}: Betti data of dimension {} instead of {}", at(), b.dim(), n + 1 - m))
                );
                ensure!(b.h[0] == QPoly::constant(1), Error::Invalid(format!("{}: h^0 must be 1 for a connected stratum", at())));
                ensure!(b.is_palindromic(), Error::Invalid(format!("{}: Betti data violates Poincaré symmetry", at())));
                ensure!(b.has_nonnegative_coeffs(), Error::Invalid(format!("{}: negative Betti data", at())));
            }
        }
        let cfg = SemistableConfig { n, components, cells };
        cfg.oriented()?;
        Ok(cfg)
    }

    /// Build from a simplicial complex (one cell per support) with the
    /// standard signs `(-1)^i`, closing the given simplices under faces.
    pub fn from_simplices(n: usize, components: usize, simplices: &[Vec<usize>], betti: impl Fn(&[usize]) -> BettiPoly) -> Result<Self> {
        let mut by_size: Vec<BTreeMap<Vec<usize>, ()>> = vec![BTreeMap::new(); n + 1];
        for i in 0..components {
            by_size[0].insert(vec![i], ());
        }
        for s in simplices {
            let mut s = s.clone();
            s.sort_unstable();
            s.dedup();
            ensure!(!s.is_empty() && s.len() <= n + 1, Error::Invalid(format!("simplex {s:?} has the wrong size")));
            for mask in 1u32..(1 << s.len()) {
                let sub: Vec<usize> = (0..s.len()).filter(|i| mask & (1 << i) != 0).map(|i| s[i]).collect();
                by_size[sub.len() - 1].insert(sub, ());
            }
        }
        while by_size.len() > 1 && by_size.last().is_some_and(BTreeMap::is_empty) {
            by_size.pop();
        }
        let index: Vec<BTreeMap<Vec<usize>, usize>> =
            by_size.iter().map(|lvl| lvl.keys().enumerate().map(|(i, k)| (k.clone(), i)).collect()).collect();
        let cells = by_size
            .iter()
            .enumerate()
            .map(|(m0, lvl)| {
                lvl.keys()
                    .map(|sup| {
                        let faces = if m0 == 0 {
                            Vec::new()
                        } else {
                            (0..sup.len())
                                .map(|i| {
                                    let mut f = sup.clone();
                                    f.remove(i);
                                    (index[m0 - 1][&f], if i % 2 == 0 { 1 } else { -1 })
                                })
                                .collect()
                        };
                        StratumCell { support: sup.clone(), faces, betti: betti(sup) }
                    })
                    .collect()
            })
            .collect();
        Self::new(n, components, cells)
    }

    /// The full `n`-simplex: `n + 1` components meeting in one point, every
    /// stratum `Y_J` a projective space.
    pub fn simplex(n: usize) -> Result<Self> {
        Self::from_simplices(n, n + 1, &[(0..=n).collect()], |s| BettiPoly::projective_space(n + 1 - s.len()))
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn components(&self) -> usize {
        self.components
    }

    /// Cells of `Y^(m)`, empty when `m` is out of range.
    pub fn cells(&self, m: usize) -> &[StratumCell] {
        if m == 0 {
            return &[];
        }
        self.cells.get(m - 1).map_or(&[], Vec::as_slice)
    }

    pub fn levels(&self) -> &[Vec<StratumCell>] {
        &self.cells
    }

    /// The dual complex, with `Y^(m)` cells in dimension `m - 1`.
    pub fn oriented(&self) -> Result<OrientedComplex> {
        let cells = self
            .cells
            .iter()
            .map(|lvl| lvl.iter().map(|c| OrientedCell { faces: c.faces.clone() }).collect())
            .collect();
        OrientedComplex::new(cells, None)
    }

    /// `Σ_{cells of Y^(m)} h^k`.
    pub fn stratum_betti(&self, m: usize, k: usize) -> QPoly {
        self.cells(m).iter().fold(QPoly::zero(), |acc, c| acc.add(&c.betti.degree(k)))
    }
}
