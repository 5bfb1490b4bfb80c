use std::collections::HashMap;
use std::sync::Arc;

use super::algebra::{Path, PresentedAlgebra};
use crate::error::{ensure, Error, Result};
use crate::exactnum::{FieldSpec, Matrix, Subspace, Vector};

/// Representation of the quiver satisfying the relations: a space per
/// vertex and a `dim(target) x dim(source)` matrix per arrow.
#[derive(Debug, Clone)]
pub struct AModule {
    alg: Arc<PresentedAlgebra>,
    dims: Vec<usize>,
    maps: Vec<Matrix>,
}

impl PartialEq for AModule {
    fn eq(&self, other: &Self) -> bool {
        self.dims == other.dims && self.maps == other.maps
    }
}

impl AModule {
    pub fn new(alg: Arc<PresentedAlgebra>, dims: Vec<usize>, maps: Vec<Matrix>) -> Result<Self> {
        ensure!(
            dims.len() == alg.n_vertices(),
            Error::Dimension(format!("{} vertex dimensions for {} vertices", dims.len(), alg.n_vertices()))
        );
        ensure!(
            maps.len() == alg.arrows().len(),
            Error::Dimension(format!("{} arrow matrices for {} arrows", maps.len(), alg.arrows().len()))
        );
        for (a, m) in alg.arrows().iter().zip(&maps) {
            ensure!(
                m.shape() == (dims[a.target], dims[a.source]),
                Error::Dimension(format!(
                    "arrow {} needs a {}x{} matrix, got {}x{}",
                    a.name,
                    dims[a.target],
                    dims[a.source],
                    m.rows(),
                    m.cols()
                ))
            );
            ensure!(m.field() == alg.field(), Error::FieldMismatch(format!("arrow {} matrix", a.name)));
        }
        let module = AModule { alg, dims, maps };
        for r in module.alg.relations() {
            let source = module.alg.arrows()[r[0]].source;
            ensure!(
                module.arrows_action(source, r).is_zero(),
                Error::Invalid(format!("relation {r:?} does not act by zero"))
            );
        }
        Ok(module)
    }

    pub fn zero(alg: Arc<PresentedAlgebra>) -> Self {
        let dims = vec![0; alg.n_vertices()];
        let maps = alg.arrows().iter().map(|_| Matrix::zeros(alg.field(), 0, 0)).collect();
        AModule { alg, dims, maps }
    }

    /// The simple module at vertex `v`.
    pub fn simple(alg: Arc<PresentedAlgebra>, v: usize) -> Result<Self> {
        ensure!(v < alg.n_vertices(), Error::Invalid(format!("no vertex {v}")));
        let mut dims = vec![0; alg.n_vertices()];
        dims[v] = 1;
        let maps = alg
            .arrows()
            .iter()
            .map(|a| Matrix::zeros(alg.field(), dims[a.target], dims[a.source]))
            .collect();
        Ok(AModule { alg, dims, maps })
    }

    pub fn algebra(&self) -> &Arc<PresentedAlgebra> {
        &self.alg
    }

    pub fn field(&self) -> FieldSpec {
        self.alg.field()
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn dim_at(&self, v: usize) -> usize {
        self.dims[v]
    }

    pub fn total_dim(&self) -> usize {
        self.dims.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.total_dim() == 0
    }

    pub fn map(&self, arrow: usize) -> &Matrix {
        &self.maps[arrow]
    }

    pub fn maps(&self) -> &[Matrix] {
        &self.maps
    }

    fn arrows_action(&self, source: usize, arrows: &[usize]) -> Matrix {
        let mut m = Matrix::identity(self.field(), self.dims[source]);
        for &a in arrows {
            m = self.maps[a].mul(&m);
        }
        m
    }

    /// Action of a path: product of its arrow matrices in traversal order.
    pub fn path_action(&self, p: &Path) -> Matrix {
        self.arrows_action(p.source, &p.arrows)
    }

    /// Block direct sum.
    pub fn direct_sum(mods: &[&AModule]) -> AModule {
        let alg = mods.first().map(|m| m.alg.clone()).expect("at least one summand");
        let f = alg.field();
        let dims = (0..alg.n_vertices()).map(|v| mods.iter().map(|m| m.dims[v]).sum()).collect();
        let maps = (0..alg.arrows().len())
            .map(|a| {
                let blocks: Vec<&Matrix> = mods.iter().map(|m| &m.maps[a]).collect();
                Matrix::block_diag(&blocks, f)
            })
            .collect();
        AModule { alg, dims, maps }
    }

    /// Radical `rad M`: at each vertex, the sum of the images of the
    /// incoming arrows.
    pub fn radical(&self) -> Vec<Subspace> {
        let f = self.field();
        (0..self.dims.len())
            .map(|v| {
                let mut acc = Subspace::zero(f, self.dims[v]);
                for (ai, a) in self.alg.arrows().iter().enumerate() {
                    if a.target == v {
                        acc = acc.sum(&Subspace::image(&self.maps[ai])).expect("same ambient");
                    }
                }
                acc
            })
            .collect()
    }

    fn is_submodule(&self, spaces: &[Subspace]) -> bool {
        self.alg
            .arrows()
            .iter()
            .enumerate()
            .all(|(ai, a)| spaces[a.source].map(&self.maps[ai]).is_subspace_of(&spaces[a.target]))
    }
}

/// Module homomorphism, one matrix per vertex.
#[derive(Debug, Clone, PartialEq)]
pub struct ModMap {
    pub comps: Vec<Matrix>,
}

impl ModMap {
    pub fn zero(src: &AModule, tgt: &AModule) -> ModMap {
        let f = src.field();
        ModMap { comps: src.dims.iter().zip(&tgt.dims).map(|(&s, &t)| Matrix::zeros(f, t, s)).collect() }
    }

    pub fn identity(m: &AModule) -> ModMap {
        ModMap { comps: m.dims.iter().map(|&d| Matrix::identity(m.field(), d)).collect() }
    }

    /// `self ∘ g`.
    pub fn compose(&self, g: &ModMap) -> ModMap {
        ModMap { comps: self.comps.iter().zip(&g.comps).map(|(a, b)| a.mul(b)).collect() }
    }

    pub fn add(&self, g: &ModMap) -> ModMap {
        ModMap { comps: self.comps.iter().zip(&g.comps).map(|(a, b)| a.add(b)).collect() }
    }

    pub fn sub(&self, g: &ModMap) -> ModMap {
        ModMap { comps: self.comps.iter().zip(&g.comps).map(|(a, b)| a.sub(b)).collect() }
    }

    pub fn neg(&self) -> ModMap {
        ModMap { comps: self.comps.iter().map(Matrix::neg).collect() }
    }

    pub fn scale(&self, s: &crate::exactnum::Scalar) -> ModMap {
        ModMap { comps: self.comps.iter().map(|a| a.scale(s)).collect() }
    }

    pub fn is_zero(&self) -> bool {
        self.comps.iter().all(Matrix::is_zero)
    }

    /// Shapes match and the map commutes with every arrow.
    pub fn is_hom(&self, src: &AModule, tgt: &AModule) -> bool {
        self.comps.len() == src.dims.len()
            && self.comps.iter().enumerate().all(|(v, c)| c.shape() == (tgt.dims[v], src.dims[v]))
            && src.alg.arrows().iter().enumerate().all(|(ai, a)| {
                tgt.maps[ai].mul(&self.comps[a.source]) == self.comps[a.target].mul(&src.maps[ai])
            })
    }

    /// `(f_1, …, f_n): ⊕ M_i → N`.
    pub fn hstack(maps: &[&ModMap]) -> ModMap {
        let n = maps[0].comps.len();
        ModMap { comps: (0..n).map(|v| hcat(maps.iter().map(|m| &m.comps[v]))).collect() }
    }

    /// `(f_1; …; f_n): M → ⊕ N_i`.
    pub fn vstack(maps: &[&ModMap]) -> ModMap {
        let n = maps[0].comps.len();
        ModMap { comps: (0..n).map(|v| vcat(maps.iter().map(|m| &m.comps[v]))).collect() }
    }

    pub fn kernel(&self, src: &AModule) -> Subquotient {
        let f = src.field();
        let big: Vec<Subspace> = self.comps.iter().map(Subspace::kernel).collect();
        let small: Vec<Subspace> = src.dims.iter().map(|&d| Subspace::zero(f, d)).collect();
        subquotient(src, &big, &small).expect("kernels are submodules")
    }

    pub fn image(&self) -> Vec<Subspace> {
        self.comps.iter().map(Subspace::image).collect()
    }
}

fn hcat<'a>(ms: impl Iterator<Item = &'a Matrix>) -> Matrix {
    ms.fold(None, |acc: Option<Matrix>, m| Some(acc.map_or_else(|| m.clone(), |a| a.hstack(m)))).expect("nonempty")
}

fn vcat<'a>(ms: impl Iterator<Item = &'a Matrix>) -> Matrix {
    ms.fold(None, |acc: Option<Matrix>, m| Some(acc.map_or_else(|| m.clone(), |a| a.vstack(m)))).expect("nonempty")
}

/// `big / small` for submodules `small ⊆ big` of `ambient`.
///
/// `basis[v]` holds representatives in `big` (columns, ambient coordinates)
/// of a basis of the quotient; `proj[v]` is a linear map on the ambient
/// space that agrees on `big` with the quotient map. With `small = 0`,
/// `basis` is the inclusion of a submodule.
#[derive(Debug, Clone)]
pub struct Subquotient {
    pub module: AModule,
    pub basis: Vec<Matrix>,
    pub proj: Vec<Matrix>,
}

impl Subquotient {
    /// Inclusion `module → ambient` (meaningful when `small = 0`).
    pub fn inclusion(&self) -> ModMap {
        ModMap { comps: self.basis.clone() }
    }

    /// The quotient map restricted to `big`, extended linearly.
    pub fn projection(&self) -> ModMap {
        ModMap { comps: self.proj.clone() }
    }
}

pub fn subquotient(ambient: &AModule, big: &[Subspace], small: &[Subspace]) -> Result<Subquotient> {
    let f = ambient.field();
    let nv = ambient.dims.len();
    ensure!(big.len() == nv && small.len() == nv, Error::Dimension("one subspace per vertex".into()));
    for v in 0..nv {
        ensure!(small[v].is_subspace_of(&big[v]), Error::Invalid("small is not inside big".into()));
    }
    ensure!(
        ambient.is_submodule(big) && ambient.is_submodule(small),
        Error::Invalid("subspaces are not stable under the arrows".into())
    );
    let mut basis = Vec::with_capacity(nv);
    let mut proj = Vec::with_capacity(nv);
    for v in 0..nv {
        let d = ambient.dims[v];
        let c = big[v].complement_basis(&small[v]);
        let rest = Subspace::full(f, d).complement_basis(&big[v]);
        let mut cols = small[v].basis();
        let (s, k) = (cols.len(), c.len());
        cols.extend(c.iter().cloned());
        cols.extend(rest);
        let inv = Matrix::from_columns(f, d, &cols).inverse().expect("adapted basis");
        proj.push(inv.block(s, 0, k, d));
        basis.push(Matrix::from_columns(f, d, &c));
    }
    let maps = ambient
        .alg
        .arrows()
        .iter()
        .enumerate()
        .map(|(ai, a)| proj[a.target].mul(&ambient.maps[ai]).mul(&basis[a.source]))
        .collect();
    let dims = basis.iter().map(Matrix::cols).collect();
    let module = AModule { alg: ambient.alg.clone(), dims, maps };
    Ok(Subquotient { module, basis, proj })
}

/// Direct sum `⊕ P_{v_i}` of indecomposable projectives with its chosen
/// generators `e_{v_i}`. The basis of the summand `P_{v_i}` at vertex `w`
/// is the set of nonzero paths from `v_i` to `w`.
#[derive(Debug, Clone)]
pub struct ProjModule {
    pub module: AModule,
    gens: Vec<usize>,
    /// Basis at each vertex: (summand, path).
    layout: Vec<Vec<(usize, Path)>>,
    /// Position of each generator in the basis at its vertex.
    gen_pos: Vec<usize>,
    /// Offset of each generator's image in hom coordinates, per target
    /// module, is computed from `gens` on demand.
    index: HashMap<(usize, Path), usize>,
}

impl ProjModule {
    pub fn free(alg: Arc<PresentedAlgebra>, gens: &[usize]) -> Result<Self> {
        let nv = alg.n_vertices();
        ensure!(gens.iter().all(|&g| g < nv), Error::Invalid("generator at an unknown vertex".into()));
        let mut layout: Vec<Vec<(usize, Path)>> = vec![Vec::new(); nv];
        let mut index = HashMap::new();
        for (i, &v) in gens.iter().enumerate() {
            for p in alg.paths_from(v) {
                index.insert((i, p.clone()), layout[p.target].len());
                layout[p.target].push((i, p.clone()));
            }
        }
        let gen_pos = gens.iter().enumerate().map(|(i, &v)| index[&(i, Path::trivial(v))]).collect();
        let f = alg.field();
        let maps = alg
            .arrows()
            .iter()
            .enumerate()
            .map(|(ai, a)| {
                let mut m = Matrix::zeros(f, layout[a.target].len(), layout[a.source].len());
                let step = Path { source: a.source, target: a.target, arrows: vec![ai] };
                for (col, (i, p)) in layout[a.source].iter().enumerate() {
                    if let Some(q) = alg.concat(p, &step) {
                        m.set(index[&(*i, q)], col, f.one());
                    }
                }
                m
            })
            .collect();
        let dims = layout.iter().map(Vec::len).collect();
        let module = AModule { alg, dims, maps };
        Ok(ProjModule { module, gens: gens.to_vec(), layout, gen_pos, index })
    }

    pub fn indecomposable(alg: Arc<PresentedAlgebra>, v: usize) -> Result<Self> {
        Self::free(alg, &[v])
    }

    pub fn gens(&self) -> &[usize] {
        &self.gens
    }

    pub fn rank(&self) -> usize {
        self.gens.len()
    }

    /// Generator `i` as (vertex, basis vector).
    pub fn generator(&self, i: usize) -> (usize, Vector) {
        let v = self.gens[i];
        let f = self.module.field();
        let mut x = vec![f.zero(); self.module.dims[v]];
        x[self.gen_pos[i]] = f.one();
        (v, x)
    }

    /// Offsets of each generator image inside hom coordinates into `n`.
    pub fn coord_offsets(&self, n: &AModule) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.gens.len() + 1);
        let mut acc = 0;
        for &v in &self.gens {
            out.push(acc);
            acc += n.dims[v];
        }
        out.push(acc);
        out
    }

    /// Dimension of `Hom(P, N) = ⊕ e_{v_i} N`.
    pub fn hom_dim(&self, n: &AModule) -> usize {
        self.gens.iter().map(|&v| n.dims[v]).sum()
    }

    /// The homomorphism sending generator `i` to `images[i] ∈ e_{v_i} N`.
    pub fn hom_from_generators(&self, n: &AModule, images: &[Vector]) -> ModMap {
        let f = n.field();
        let comps = self
            .layout
            .iter()
            .enumerate()
            .map(|(w, basis)| {
                let cols: Vec<Vector> =
                    basis.iter().map(|(i, p)| n.path_action(p).mul_vec(&images[*i])).collect();
                Matrix::from_columns(f, n.dims[w], &cols)
            })
            .collect();
        ModMap { comps }
    }

    /// Homomorphism from flat hom coordinates.
    pub fn hom_from_coords(&self, n: &AModule, coords: &[crate::exactnum::Scalar]) -> ModMap {
        let off = self.coord_offsets(n);
        let images: Vec<Vector> = (0..self.gens.len()).map(|i| coords[off[i]..off[i + 1]].to_vec()).collect();
        self.hom_from_generators(n, &images)
    }

    /// Flat hom coordinates (generator images) of `f: P → N`.
    pub fn coords_of(&self, f: &ModMap) -> Vector {
        self.gens
            .iter()
            .enumerate()
            .flat_map(|(i, &v)| f.comps[v].column(self.gen_pos[i]))
            .collect()
    }

    /// The linear map `coords(f) ↦ f(y)` for `y ∈ P` at vertex `w`.
    pub fn eval_matrix(&self, n: &AModule, w: usize, y: &[crate::exactnum::Scalar]) -> Matrix {
        use num_traits::Zero;
        let f = n.field();
        let off = self.coord_offsets(n);
        let mut out = Matrix::zeros(f, n.dims[w], off[self.gens.len()]);
        for (b, (i, p)) in self.layout[w].iter().enumerate() {
            if y[b].is_zero() {
                continue;
            }
            let act = n.path_action(p).scale(&y[b]);
            let mut blk = out.block(0, off[*i], n.dims[w], act.cols());
            blk = blk.add(&act);
            out.set_block(0, off[*i], &blk);
        }
        out
    }

    /// Index of a basis element (summand, path) at the path's target.
    pub fn basis_index(&self, summand: usize, p: &Path) -> Option<usize> {
        self.index.get(&(summand, p.clone())).copied()
    }
}

/// Projective cover `P → M`: one generator per basis vector of a
/// complement of `rad M`.
pub fn projective_cover(m: &AModule) -> (ProjModule, ModMap) {
    padded_cover(m, Vec::new())
}

/// Projective cover plus extra generators with the given images; still
/// surjective, no longer minimal when `extra` is nonempty.
pub fn padded_cover(m: &AModule, extra: Vec<(usize, Vector)>) -> (ProjModule, ModMap) {
    let f = m.field();
    let rad = m.radical();
    let mut gens = Vec::new();
    let mut images = Vec::new();
    for (v, r) in rad.iter().enumerate() {
        for x in Subspace::full(f, m.dims[v]).complement_basis(r) {
            gens.push(v);
            images.push(x);
        }
    }
    for (v, x) in extra {
        gens.push(v);
        images.push(x);
    }
    let p = ProjModule::free(m.alg.clone(), &gens).expect("valid vertices");
    let eps = p.hom_from_generators(m, &images);
    (p, eps)
}

/// Basis of `Hom_A(M, N)`.
pub fn hom_space(m: &AModule, n: &AModule) -> Vec<ModMap> {
    let f = m.field();
    let nv = m.dims.len();
    let mut off = vec![0; nv + 1];
    for v in 0..nv {
        off[v + 1] = off[v] + n.dims[v] * m.dims[v];
    }
    let unknowns = off[nv];
    let var = |v: usize, r: usize, c: usize| off[v] + r * m.dims[v] + c;
    let mut rows: Vec<Vector> = Vec::new();
    for (ai, a) in m.alg.arrows().iter().enumerate() {
        let (s, t) = (a.source, a.target);
        let (na, ma) = (&n.maps[ai], &m.maps[ai]);
        for r in 0..n.dims[t] {
            for c in 0..m.dims[s] {
                let mut eq = vec![f.zero(); unknowns];
                for k in 0..n.dims[s] {
                    let x = f.add(&eq[var(s, k, c)], na.get(r, k));
                    eq[var(s, k, c)] = x;
                }
                for k in 0..m.dims[t] {
                    let x = f.sub(&eq[var(t, r, k)], ma.get(k, c));
                    eq[var(t, r, k)] = x;
                }
                rows.push(eq);
            }
        }
    }
    let sys = Matrix::from_rows_with_cols(f, rows, unknowns).expect("field");
    sys.kernel_basis()
        .into_iter()
        .map(|x| ModMap {
            comps: (0..nv)
                .map(|v| {
                    let mut c = Matrix::zeros(f, n.dims[v], m.dims[v]);
                    for r in 0..n.dims[v] {
                        for k in 0..m.dims[v] {
                            c.set(r, k, x[var(v, r, k)].clone());
                        }
                    }
                    c
                })
                .collect(),
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    const Q: FieldSpec = FieldSpec::Rationals;

    fn ladder(d: usize) -> Arc<PresentedAlgebra> {
        Arc::new(PresentedAlgebra::koszul_ladder(Q, d).unwrap())
    }

    #[test]
    fn ladder_projectives_have_length_two() {
        let a = ladder(4);
        for v in 0..4 {
            let p = ProjModule::indecomposable(a.clone(), v).unwrap();
            let expected = if v == 0 { 1 } else { 2 };
            assert_eq!(p.module.total_dim(), expected);
            assert!(AModule::new(a.clone(), p.module.dims.clone(), p.module.maps.clone()).is_ok());
        }
    }

    #[test]
    fn relations_are_enforced() {
        let a = Arc::new(PresentedAlgebra::dual_numbers(Q).unwrap());
        let bad = AModule::new(a.clone(), vec![3], vec![Matrix::from_i64(Q, &[&[0, 1, 0], &[0, 0, 1], &[0, 0, 0]])]);
        assert!(bad.is_err());
        let free = ProjModule::indecomposable(a, 0).unwrap();
        assert_eq!(free.module.total_dim(), 2);
    }

    #[test]
    fn cover_of_simple_is_indecomposable_projective() {
        let a = ladder(3);
        for v in 0..3 {
            let s = AModule::simple(a.clone(), v).unwrap();
            let (p, eps) = projective_cover(&s);
            assert_eq!(p.gens(), &[v]);
            assert!(eps.is_hom(&p.module, &s));
            let k = eps.kernel(&p.module);
            let expected = if v == 0 { 0 } else { 1 };
            assert_eq!(k.module.total_dim(), expected);
            assert!(k.inclusion().is_hom(&k.module, &p.module));
        }
    }

    #[test]
    fn hom_space_dimensions() {
        let a = ladder(3);
        let p: Vec<ProjModule> = (0..3).map(|v| ProjModule::indecomposable(a.clone(), v).unwrap()).collect();
        for i in 0..3 {
            for j in 0..3 {
                let h = hom_space(&p[i].module, &p[j].module);
                assert_eq!(h.len(), p[i].hom_dim(&p[j].module), "Hom(P{i}, P{j})");
                for f in &h {
                    assert!(f.is_hom(&p[i].module, &p[j].module));
                }
            }
        }
    }

    #[test]
    fn generator_homs_round_trip() {
        let a = ladder(4);
        let p = ProjModule::free(a.clone(), &[3, 1, 2]).unwrap();
        let n = ProjModule::free(a, &[2, 3]).unwrap();
        let dim = p.hom_dim(&n.module);
        for k in 0..dim {
            let mut coords = vec![Q.zero(); dim];
            coords[k] = Q.one();
            let f = p.hom_from_coords(&n.module, &coords);
            assert!(f.is_hom(&p.module, &n.module));
            assert_eq!(p.coords_of(&f), coords);
            for w in 0..4 {
                for b in 0..p.module.dim_at(w) {
                    let mut y = vec![Q.zero(); p.module.dim_at(w)];
                    y[b] = Q.one();
                    assert_eq!(p.eval_matrix(&n.module, w, &y).mul_vec(&coords), f.comps[w].mul_vec(&y));
                }
            }
        }
    }

    #[test]
    fn quotient_by_radical_is_top() {
        let a = ladder(3);
        let p = ProjModule::free(a, &[2, 1]).unwrap();
        let rad = p.module.radical();
        let full: Vec<Subspace> = p.module.dims.iter().map(|&d| Subspace::full(Q, d)).collect();
        let top = subquotient(&p.module, &full, &rad).unwrap();
        assert_eq!(top.module.dims, vec![0, 1, 1]);
        assert!(top.projection().is_hom(&p.module, &top.module));
    }
}
