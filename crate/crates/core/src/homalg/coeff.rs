//! Complexes attached to coefficient systems on finite posets and on the
//! subset category of a finite totally ordered set.

use std::collections::BTreeMap;

use super::complex::VectorComplex;
use crate::error::{ensure, Error, Result};
use crate::exactnum::{FieldSpec, Matrix};

/// Finite partial order on `0..n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Poset {
    le: Vec<Vec<bool>>,
}

impl Poset {
    /// Reflexive-transitive closure of `relations` (`(a, b)` means `a ≤ b`).
    pub fn new(n: usize, relations: &[(usize, usize)]) -> Result<Self> {
        let mut le = vec![vec![false; n]; n];
        for (i, row) in le.iter_mut().enumerate() {
            row[i] = true;
        }
        for &(a, b) in relations {
            ensure!(a < n && b < n, Error::Invalid(format!("relation ({a}, {b}) outside 0..{n}")));
            le[a][b] = true;
        }
        for k in 0..n {
            for i in 0..n {
                if le[i][k] {
                    for j in 0..n {
                        if le[k][j] {
                            le[i][j] = true;
                        }
                    }
                }
            }
        }
        for i in 0..n {
            for j in 0..i {
                ensure!(!(le[i][j] && le[j][i]), Error::Invalid(format!("cycle through {i} and {j}")));
            }
        }
        Ok(Poset { le })
    }

    pub fn len(&self) -> usize {
        self.le.len()
    }

    pub fn is_empty(&self) -> bool {
        self.le.is_empty()
    }

    pub fn le(&self, a: usize, b: usize) -> bool {
        self.le[a][b]
    }

    pub fn least(&self) -> Option<usize> {
        (0..self.len()).find(|&z| (0..self.len()).all(|x| self.le[z][x]))
    }

    pub fn maximum(&self) -> Option<usize> {
        (0..self.len()).find(|&m| (0..self.len()).all(|x| self.le[x][m]))
    }

    /// Pairs `a < b` with nothing strictly between.
    pub fn covers(&self) -> Vec<(usize, usize)> {
        let n = self.len();
        let lt = |a: usize, b: usize| a != b && self.le[a][b];
        let mut out = Vec::new();
        for a in 0..n {
            for b in 0..n {
                if lt(a, b) && !(0..n).any(|c| lt(a, c) && lt(c, b)) {
                    out.push((a, b));
                }
            }
        }
        out
    }

    /// Totally ordered subsets of `elements` with `k + 1` members, each
    /// listed increasingly.
    fn chains(&self, elements: &[usize], k: usize) -> Vec<Vec<usize>> {
        let mut out = Vec::new();
        let mut stack: Vec<Vec<usize>> = elements.iter().map(|&e| vec![e]).collect();
        while let Some(c) = stack.pop() {
            if c.len() == k + 1 {
                out.push(c);
                continue;
            }
            let top = *c.last().expect("nonempty");
            for &e in elements {
                if e != top && self.le[top][e] {
                    let mut next = c.clone();
                    next.push(e);
                    stack.push(next);
                }
            }
        }
        out.sort();
        out
    }
}

/// Covariant functor from a finite poset to vector spaces.
#[derive(Debug, Clone)]
pub struct PosetSystem {
    field: FieldSpec,
    poset: Poset,
    dims: Vec<usize>,
    /// `V_a → V_b` for every `a ≤ b`.
    maps: BTreeMap<(usize, usize), Matrix>,
}

impl PosetSystem {
    /// Extend the maps given on covering pairs to all comparable pairs,
    /// checking that every composite agrees.
    pub fn new(field: FieldSpec, poset: Poset, dims: Vec<usize>, cover_maps: BTreeMap<(usize, usize), Matrix>) -> Result<Self> {
        let n = poset.len();
        ensure!(dims.len() == n, Error::Dimension(format!("{} dimensions for {n} elements", dims.len())));
        let covers = poset.covers();
        for &(a, b) in &covers {
            let m = cover_maps.get(&(a, b)).ok_or_else(|| Error::Invalid(format!("missing map for {a} ≤ {b}")))?;
            ensure!(
                m.shape() == (dims[b], dims[a]),
                Error::Dimension(format!("map {a} → {b} has shape {:?}", m.shape()))
            );
        }
        ensure!(
            cover_maps.keys().all(|k| covers.contains(k)),
            Error::Invalid("maps supplied for non-covering pairs".into())
        );
        let mut maps: BTreeMap<(usize, usize), Matrix> = (0..n).map(|a| ((a, a), Matrix::identity(field, dims[a]))).collect();
        // Process pairs by increasing interval length so both halves exist.
        let mut pairs: Vec<(usize, usize)> = (0..n)
            .flat_map(|a| (0..n).map(move |b| (a, b)))
            .filter(|&(a, b)| a != b && poset.le(a, b))
            .collect();
        let interval = |a: usize, b: usize| (0..n).filter(|&c| poset.le(a, c) && poset.le(c, b)).count();
        pairs.sort_by_key(|&(a, b)| interval(a, b));
        for (a, b) in pairs {
            let mut value: Option<Matrix> = None;
            for &(c, e) in &covers {
                if c == a && poset.le(e, b) {
                    let m = maps[&(e, b)].mul(&cover_maps[&(a, e)]);
                    match &value {
                        None => value = Some(m),
                        Some(v) => ensure!(
                            *v == m,
                            Error::Invariant(format!("transition maps from {a} to {b} do not commute"))
                        ),
                    }
                }
            }
            maps.insert((a, b), value.expect("a < b has a cover above a"));
        }
        Ok(PosetSystem { field, poset, dims, maps })
    }

    /// The constant system `k^dim` with identity transitions.
    pub fn constant(field: FieldSpec, poset: Poset, dim: usize) -> Self {
        let n = poset.len();
        let maps = poset.covers().into_iter().map(|p| (p, Matrix::identity(field, dim))).collect();
        Self::new(field, poset, vec![dim; n], maps).expect("identities commute")
    }

    pub fn poset(&self) -> &Poset {
        &self.poset
    }

    pub fn map(&self, a: usize, b: usize) -> Option<&Matrix> {
        self.maps.get(&(a, b))
    }
}

/// The cochain complex `V_Z → ⊕_{X ≠ Z} V_X → ⊕_{chains of length 2} V_{max} → …`,
/// with `V_Z` in degree 0, and `ε_{S,S'} = (-1)^{#{X ∈ S : X ≤ X'}}` for
/// `S' = S ∪ {X'}`.
pub fn poset_cochain_complex(sys: &PosetSystem) -> Result<VectorComplex> {
    let f = sys.field;
    let p = &sys.poset;
    let z = p.least().ok_or_else(|| Error::Invalid("poset has no least element".into()))?;
    let rest: Vec<usize> = (0..p.len()).filter(|&x| x != z).collect();
    let mut levels: Vec<Vec<Vec<usize>>> = vec![vec![vec![z]]];
    for k in 0.. {
        let c = p.chains(&rest, k);
        if c.is_empty() {
            break;
        }
        levels.push(c);
    }
    let top = |s: &Vec<usize>| *s.last().expect("nonempty");
    let offsets = |lvl: &Vec<Vec<usize>>| -> (Vec<usize>, usize) {
        let mut off = Vec::with_capacity(lvl.len());
        let mut acc = 0;
        for s in lvl {
            off.push(acc);
            acc += sys.dims[top(s)];
        }
        (off, acc)
    };
    let mut dims = Vec::new();
    let mut diffs = Vec::new();
    for (k, lvl) in levels.iter().enumerate() {
        let (src_off, src_dim) = offsets(lvl);
        dims.push(src_dim);
        let Some(next) = levels.get(k + 1) else { break };
        let (tgt_off, tgt_dim) = offsets(next);
        let mut d = Matrix::zeros(f, tgt_dim, src_dim);
        for (i, s) in lvl.iter().enumerate() {
            for (j, t) in next.iter().enumerate() {
                let block = if k == 0 {
                    sys.maps[&(z, top(t))].clone()
                } else {
                    if !s.iter().all(|x| t.contains(x)) {
                        continue;
                    }
                    let added = *t.iter().find(|x| !s.contains(x)).expect("one new element");
                    let rank = s.iter().filter(|&&x| p.le(x, added)).count();
                    let m = &sys.maps[&(top(s), top(t))];
                    if rank % 2 == 0 {
                        m.clone()
                    } else {
                        m.neg()
                    }
                };
                d.set_block(tgt_off[j], src_off[i], &block);
            }
        }
        diffs.push(d);
    }
    VectorComplex::new(f, 0, dims, diffs)
}

/// Contravariant functor on the subsets of `E = {0, …, n-1}` (as bit masks),
/// given by its maps `V(I) → V(I \ {e})`.
#[derive(Debug, Clone)]
pub struct SimplexSystem {
    field: FieldSpec,
    n: usize,
    dims: Vec<usize>,
    faces: BTreeMap<(u32, u32), Matrix>,
}

impl SimplexSystem {
    pub fn new(field: FieldSpec, n: usize, dims: Vec<usize>, faces: BTreeMap<(u32, u32), Matrix>) -> Result<Self> {
        ensure!(n <= 16, Error::Invalid(format!("|E| = {n} is too large")));
        ensure!(dims.len() == 1 << n, Error::Dimension(format!("expected {} dimensions", 1usize << n)));
        for big in 0u32..(1 << n) {
            for e in 0..n {
                if big & (1 << e) == 0 {
                    continue;
                }
                let small = big & !(1 << e);
                let m = faces.get(&(big, small)).ok_or_else(|| Error::Invalid(format!("missing face map {big:#b} → {small:#b}")))?;
                ensure!(
                    m.shape() == (dims[small as usize], dims[big as usize]),
                    Error::Dimension(format!("face map {big:#b} → {small:#b}"))
                );
            }
        }
        // Removing e then e' must agree with removing e' then e.
        for big in 0u32..(1 << n) {
            for e in 0..n {
                for g in e + 1..n {
                    let (be, bg) = (1u32 << e, 1u32 << g);
                    if big & be == 0 || big & bg == 0 {
                        continue;
                    }
                    let a = faces[&(big & !be, big & !be & !bg)].mul(&faces[&(big, big & !be)]);
                    let b = faces[&(big & !bg, big & !be & !bg)].mul(&faces[&(big, big & !bg)]);
                    ensure!(a == b, Error::Invariant(format!("face maps of {big:#b} do not commute")));
                }
            }
        }
        Ok(SimplexSystem { field, n, dims, faces })
    }

    pub fn constant(field: FieldSpec, n: usize, dim: usize) -> Result<Self> {
        ensure!(n <= 16, Error::Invalid(format!("|E| = {n} is too large")));
        let mut faces = BTreeMap::new();
        for big in 0u32..(1 << n) {
            for e in 0..n {
                if big & (1 << e) != 0 {
                    faces.insert((big, big & !(1 << e)), Matrix::identity(field, dim));
                }
            }
        }
        Self::new(field, n, vec![dim; 1 << n], faces)
    }
}

/// The chain complex `V(E) → … → ⊕_{|I|=1} V(I) → V(∅)` with
/// `ε(I', I) = (-1)^{#{i ∈ I' : i ≤ e}}` for `I = I' ⊔ {e}`. Chain degree
/// `m` sits in cohomological degree `-m`, so `H_m = H^{-m}`.
pub fn simplex_chain_complex(sys: &SimplexSystem) -> Result<VectorComplex> {
    let f = sys.field;
    let n = sys.n;
    let by_size: Vec<Vec<u32>> = (0..=n).map(|k| (0u32..(1 << n)).filter(|m| m.count_ones() as usize == k).collect()).collect();
    let offsets = |lvl: &[u32]| -> (BTreeMap<u32, usize>, usize) {
        let mut off = BTreeMap::new();
        let mut acc = 0;
        for &m in lvl {
            off.insert(m, acc);
            acc += sys.dims[m as usize];
        }
        (off, acc)
    };
    let mut dims = Vec::new();
    let mut diffs = Vec::new();
    for size in (0..=n).rev() {
        let (src_off, src_dim) = offsets(&by_size[size]);
        dims.push(src_dim);
        if size == 0 {
            break;
        }
        let (tgt_off, tgt_dim) = offsets(&by_size[size - 1]);
        let mut d = Matrix::zeros(f, tgt_dim, src_dim);
        for &big in &by_size[size] {
            for e in 0..n {
                if big & (1 << e) == 0 {
                    continue;
                }
                let small = big & !(1 << e);
                let below = (small & ((1u32 << (e + 1)) - 1)).count_ones();
                let m = &sys.faces[&(big, small)];
                let block = if below.is_multiple_of(2) { m.clone() } else { m.neg() };
                d.set_block(tgt_off[&small], src_off[&big], &block);
            }
        }
        diffs.push(d);
    }
    VectorComplex::new(f, -(n as i64), dims, diffs)
}

#[cfg(test)]
mod tests {
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    use super::*;

    const Q: FieldSpec = FieldSpec::Rationals;

    #[test]
    fn constant_simplex_system_is_acyclic() {
        for n in 1..=5 {
            let c = simplex_chain_complex(&SimplexSystem::constant(Q, n, 1).unwrap()).unwrap();
            assert!(c.is_acyclic(), "n = {n}");
            assert_eq!(c.dim(0), 1);
            assert_eq!(c.dim(-(n as i64)), 1);
        }
    }

    #[test]
    fn empty_set_keeps_coefficients() {
        let c = simplex_chain_complex(&SimplexSystem::constant(Q, 0, 3).unwrap()).unwrap();
        assert_eq!(c.cohomology_dims(), vec![(0, 3)]);
    }

    #[test]
    fn non_commuting_faces_rejected() {
        let mut faces = BTreeMap::new();
        faces.insert((0b11, 0b10), Matrix::from_i64(Q, &[&[1]]));
        faces.insert((0b11, 0b01), Matrix::from_i64(Q, &[&[1]]));
        faces.insert((0b10, 0b00), Matrix::from_i64(Q, &[&[1]]));
        faces.insert((0b01, 0b00), Matrix::from_i64(Q, &[&[2]]));
        let err = SimplexSystem::new(Q, 2, vec![1; 4], faces).unwrap_err();
        assert!(err.is_invariant());
    }

    #[test]
    fn poset_needs_least_element() {
        let p = Poset::new(2, &[]).unwrap();
        let sys = PosetSystem::constant(Q, p, 1);
        assert!(matches!(poset_cochain_complex(&sys), Err(Error::Invalid(_))));
    }

    #[test]
    fn cyclic_relations_rejected() {
        assert!(Poset::new(2, &[(0, 1), (1, 0)]).is_err());
    }

    #[test]
    fn chain_poset_complex() {
        // 0 < 1 < 2: chains in {1, 2} are {1}, {2}, {1, 2}.
        let p = Poset::new(3, &[(0, 1), (1, 2)]).unwrap();
        let c = poset_cochain_complex(&PosetSystem::constant(Q, p, 1)).unwrap();
        assert_eq!((c.dim(0), c.dim(1), c.dim(2)), (1, 2, 1));
        assert!(c.is_acyclic());
    }

    #[test]
    fn poset_without_maximum_has_homology() {
        // Z below two incomparable atoms: nerve is two points.
        let p = Poset::new(3, &[(0, 1), (0, 2)]).unwrap();
        let c = poset_cochain_complex(&PosetSystem::constant(Q, p, 1)).unwrap();
        assert_eq!(c.cohomology_dims(), vec![(1, 1)]);
    }

    #[test]
    fn random_posets_with_maximum_are_acyclic() {
        let mut rng = ChaCha8Rng::seed_from_u64(12);
        for _ in 0..30 {
            let n = rng.gen_range(2..=7);
            let p = crate::gen::random_poset_with_maximum(&mut rng, n);
            assert_eq!(p.maximum(), Some(n - 1));
            let dim = rng.gen_range(1..=2);
            assert!(poset_cochain_complex(&PosetSystem::constant(Q, p, dim)).unwrap().is_acyclic());
        }
    }

    #[test]
    fn nonconstant_poset_system() {
        // Z → A → M and Z → B → M with a scaling on one side.
        let p = Poset::new(4, &[(0, 1), (0, 2), (1, 3), (2, 3)]).unwrap();
        let id = Matrix::identity(Q, 1);
        let two = Matrix::from_i64(Q, &[&[2]]);
        let half = Matrix::from_rows(Q, vec![vec![crate::exactnum::rat(1, 2)]]).unwrap();
        let maps = BTreeMap::from([((0, 1), two.clone()), ((1, 3), half), ((0, 2), id.clone()), ((2, 3), id.clone())]);
        let sys = PosetSystem::new(Q, p.clone(), vec![1; 4], maps).unwrap();
        assert_eq!(sys.map(0, 3), Some(&id));
        assert!(poset_cochain_complex(&sys).unwrap().is_acyclic());
        let bad = BTreeMap::from([((0, 1), two), ((1, 3), id.clone()), ((0, 2), id.clone()), ((2, 3), id)]);
        assert!(PosetSystem::new(Q, p, vec![1; 4], bad).unwrap_err().is_invariant());
    }
}
