use std::collections::BTreeMap;

use super::betti::{BettiPoly, QPoly};
use super::config::SemistableConfig;
use crate::error::{ensure, Error, Result};
use crate::exactnum::{int, FieldSpec, Matrix, Subspace};

/// One summand `H^{degree}(Y^(m))(-twist)` of an `E₁` term.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct E1Piece {
    pub m: usize,
    pub degree: usize,
    pub twist: i64,
}

/// `E₁^{p,s}` with `p = -r`, `s = q + r`: total degree `p + s = q`,
/// Frobenius weight `s`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct E1Entry {
    pub p: i64,
    pub s: i64,
    pub weight: i64,
    pub dim: QPoly,
    pub pieces: Vec<E1Piece>,
}

/// Nonzero terms of the weight spectral sequence's first page.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct E1Page {
    pub n: usize,
    pub entries: BTreeMap<(i64, i64), E1Entry>,
}

impl E1Page {
    pub fn dim(&self, p: i64, s: i64) -> QPoly {
        self.entries.get(&(p, s)).map(|e| e.dim.clone()).unwrap_or_default()
    }
}

/// `E₁^{-r,q+r} = ⊕_{k ≥ max(0,-r)} H^{q-r-2k}(Y^(r+2k+1))(-r-k)`.
pub fn e1_page(cfg: &SemistableConfig) -> E1Page {
    let n = cfg.n() as i64;
    let mut entries = BTreeMap::new();
    for r in -n..=n {
        for q in 0..=2 * n {
            let mut dim = QPoly::zero();
            let mut pieces = Vec::new();
            let mut k = 0.max(-r);
            while r + 2 * k < n + 1 {
                let m = r + 2 * k + 1;
                let degree = q - r - 2 * k;
                if m >= 1 && degree >= 0 {
                    let d = cfg.stratum_betti(m as usize, degree as usize);
                    if !d.is_zero() {
                        dim = dim.add(&d);
                        pieces.push(E1Piece { m: m as usize, degree: degree as usize, twist: r + k });
                    }
                }
                k += 1;
            }
            if !dim.is_zero() {
                entries.insert((-r, q + r), E1Entry { p: -r, s: q + r, weight: q + r, dim, pieces });
            }
        }
    }
    E1Page { n: cfg.n(), entries }
}

/// The two corner differentials, in the bases given by the cells.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CornerComplexes {
    /// `d₁^{-n,2n}: H⁰(Y^(n+1)) → H²(Y^(n))`, a sum of Gysin maps; rows are
    /// the curves of `Y^(n)`, columns the points of `Y^(n+1)`.
    pub gysin: Matrix,
    /// `d₁^{n-1,0}: H⁰(Y^(n)) → H⁰(Y^(n+1))`, a sum of restrictions.
    pub restriction: Matrix,
}

fn corner_precondition(cfg: &SemistableConfig) -> Result<()> {
    ensure!(cfg.n() >= 1, Error::Precondition("corner complexes need relative dimension ≥ 1".into()));
    let curve = BettiPoly::from_constants(&[1, 1]);
    for (i, c) in cfg.cells(cfg.n()).iter().enumerate() {
        ensure!(
            c.betti == curve,
            Error::Precondition(format!("curve {i} of Y^({}) has H² not spanned by its fundamental class", cfg.n()))
        );
    }
    Ok(())
}

/// Build both corner matrices independently and check that they are
/// adjoint (transposes of each other).
pub fn corner_complexes(cfg: &SemistableConfig) -> Result<CornerComplexes> {
    corner_precondition(cfg)?;
    let f = FieldSpec::Rationals;
    let n = cfg.n();
    let curves = cfg.cells(n);
    let points = cfg.cells(n + 1);
    // Gysin: push each point into the curves through it.
    let mut gysin = Matrix::zeros(f, curves.len(), points.len());
    for (j, p) in points.iter().enumerate() {
        for &(c, s) in &p.faces {
            let v = f.add(gysin.get(c, j), &int(s as i64));
            gysin.set(c, j, v);
        }
    }
    // Restriction: for each curve, collect the points lying on it.
    let mut on_curve: BTreeMap<usize, Vec<(usize, i8)>> = BTreeMap::new();
    for (j, p) in points.iter().enumerate() {
        for &(c, s) in &p.faces {
            on_curve.entry(c).or_default().push((j, s));
        }
    }
    let mut restriction = Matrix::zeros(f, points.len(), curves.len());
    for (c, pts) in on_curve {
        for (j, s) in pts {
            let v = f.add(restriction.get(j, c), &int(s as i64));
            restriction.set(j, c, v);
        }
    }
    ensure!(
        gysin == restriction.transpose(),
        Error::Invariant("Gysin and restriction corners are not adjoint".into())
    );
    Ok(CornerComplexes { gysin, restriction })
}

/// Second page: complete when `n = 1`, otherwise the two corners only.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct E2Page {
    pub n: usize,
    pub entries: BTreeMap<(i64, i64), usize>,
    pub complete: bool,
}

impl E2Page {
    /// `dim Gr^W_w H^k`, read off `E₂ = E_∞` (complete pages only).
    pub fn abutment(&self) -> Option<BTreeMap<i64, BTreeMap<i64, usize>>> {
        if !self.complete {
            return None;
        }
        let mut out: BTreeMap<i64, BTreeMap<i64, usize>> = BTreeMap::new();
        for (&(p, s), &d) in &self.entries {
            if d > 0 {
                *out.entry(p + s).or_default().entry(s).or_default() += d;
            }
        }
        Some(out)
    }
}

pub fn e2_page(cfg: &SemistableConfig) -> Result<E2Page> {
    let c = corner_complexes(cfg)?;
    let n = cfg.n() as i64;
    let (curves, points) = (c.gysin.rows(), c.gysin.cols());
    let mut entries = BTreeMap::new();
    entries.insert((-n, 2 * n), points - c.gysin.rank());
    entries.insert((n, 0), points - c.restriction.rank());
    if n == 1 {
        entries.insert((0, 2), curves - c.gysin.rank());
        entries.insert((0, 0), curves - c.restriction.rank());
        let h1 = cfg.stratum_betti(1, 1);
        entries.insert((0, 1), h1.as_constant().unwrap_or(0) as usize);
    }
    Ok(E2Page { n: cfg.n(), entries, complete: n == 1 })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NnonnulReport {
    /// `dim ker d₁^{-n,2n}`.
    pub ker_dim: usize,
    /// `dim Gr^W_{2n} H^n`, from `E₂^{-n,2n}`.
    pub grw_top_dim: usize,
    /// Rank of `N^n: E₂^{-n,2n} → E₂^{n,0}`, the identity on
    /// `H⁰(Y^(n+1))` taken from `ker` to `coker`.
    pub n_power_rank: usize,
    pub n_power_nonzero: bool,
    pub equivalences_ok: bool,
}

pub fn nnonnul_check(cfg: &SemistableConfig) -> Result<NnonnulReport> {
    let c = corner_complexes(cfg)?;
    let e2 = e2_page(cfg)?;
    let n = cfg.n() as i64;
    let ker = Subspace::kernel(&c.gysin);
    let im = Subspace::image(&c.restriction);
    let n_power_rank = ker.sum(&im)?.dim() - im.dim();
    let ker_dim = ker.dim();
    let grw_top_dim = e2.entries[&(-n, 2 * n)];
    let n_power_nonzero = n_power_rank > 0;
    let equivalences_ok = (ker_dim > 0) == (grw_top_dim > 0) && (ker_dim > 0) == n_power_nonzero;
    Ok(NnonnulReport { ker_dim, grw_top_dim, n_power_rank, n_power_nonzero, equivalences_ok })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_component_is_its_own_cohomology() {
        let cfg = SemistableConfig::from_simplices(2, 1, &[], |_| BettiPoly::projective_space(2)).unwrap();
        let e1 = e1_page(&cfg);
        assert!(e1.entries.keys().all(|&(p, _)| p == 0));
        assert_eq!(e1.dim(0, 2), QPoly::constant(1));
        assert_eq!(e1.dim(0, 4), QPoly::constant(1));
        assert_eq!(e1.dim(0, 1), QPoly::zero());
    }

    #[test]
    fn simplex_corners_are_boundary_matrices() {
        let cfg = SemistableConfig::simplex(2).unwrap();
        let c = corner_complexes(&cfg).unwrap();
        assert_eq!(c.gysin.shape(), (3, 1));
        assert_eq!(c.restriction.shape(), (1, 3));
        assert_eq!(c.gysin.column(0), vec![int(1), int(-1), int(1)]);
        let r = nnonnul_check(&cfg).unwrap();
        assert_eq!(r.ker_dim, 0);
        assert!(r.equivalences_ok);
    }

    #[test]
    fn weights_match_labels_and_odd_terms_vanish() {
        let cfg = SemistableConfig::simplex(3).unwrap();
        let e1 = e1_page(&cfg);
        for e in e1.entries.values() {
            assert_eq!(e.weight, e.s);
            let q = e.p + e.s;
            let r = -e.p;
            assert_eq!((q - r).rem_euclid(2), 0);
            for pc in &e.pieces {
                assert_eq!(pc.degree as i64 + 2 * pc.twist, e.weight);
            }
        }
    }

    #[test]
    fn corners_need_positive_relative_dimension() {
        let cfg0 = SemistableConfig::from_simplices(0, 1, &[], |_| BettiPoly::point()).unwrap();
        assert!(matches!(corner_complexes(&cfg0), Err(Error::Precondition(_))));
    }
}
