use std::collections::BTreeMap;
use std::sync::Arc;

use num_traits::Zero;

use super::complex::BoundedComplex;
use super::ext::{compose, ext_dims, HomComplex, HomGroup};
use super::module::{AModule, ModMap};
use super::resolution::{lift_cocycle, ProjReplacement};
use super::PresentedAlgebra;
use crate::error::{ensure, Error, Result};
use crate::exactnum::{FieldSpec, Matrix, Poly, Scalar, Subspace, Vector};

/// Degree-0 map between complexes, one module map per degree; missing
/// degrees are zero.
pub type ChainMap = BTreeMap<i64, ModMap>;

/// Linear system in a block of unknowns, assembled row by row.
struct LinSys {
    field: FieldSpec,
    nvars: usize,
    rows: Vec<Vector>,
    rhs: Vec<Scalar>,
}

impl LinSys {
    fn new(field: FieldSpec, nvars: usize) -> Self {
        LinSys { field, nvars, rows: Vec::new(), rhs: Vec::new() }
    }

    /// Add the equations `Σ blocks_i · x[off_i..] = rhs`.
    fn add(&mut self, blocks: &[(usize, &Matrix)], rhs: Option<&[Scalar]>) {
        let f = self.field;
        let n = blocks.first().map_or(0, |b| b.1.rows());
        for r in 0..n {
            let mut row = vec![f.zero(); self.nvars];
            for (off, m) in blocks {
                for c in 0..m.cols() {
                    row[off + c] = f.add(&row[off + c], m.get(r, c));
                }
            }
            self.rows.push(row);
            self.rhs.push(rhs.map_or_else(|| f.zero(), |b| b[r].clone()));
        }
    }

    fn matrix(&self) -> Matrix {
        Matrix::from_rows_with_cols(self.field, self.rows.clone(), self.nvars).expect("field")
    }

    fn solve(&self) -> Option<Vector> {
        self.matrix().solve(&self.rhs)
    }

    fn homogeneous(&self) -> Vec<Vector> {
        self.matrix().kernel_basis()
    }
}

/// `H^q(f)` on the cohomology module for a chain map `f: X → X`.
pub fn induced_on_cohomology(x: &BoundedComplex, f: &ChainMap, q: i64) -> ModMap {
    let h = x.cohomology(q);
    let fq = f.get(&q).cloned().unwrap_or_else(|| ModMap::zero(&x.term(q), &x.term(q)));
    ModMap { comps: (0..h.proj.len()).map(|v| h.proj[v].mul(&fq.comps[v]).mul(&h.basis[v])).collect() }
}

fn full_chain_map(x: &BoundedComplex, f: &ChainMap) -> ChainMap {
    (x.lo()..=x.hi())
        .map(|k| (k, f.get(&k).cloned().unwrap_or_else(|| ModMap::zero(&x.term(k), &x.term(k)))))
        .collect()
}

/// `P(φ)` for a chain endomorphism `φ`.
pub fn poly_of_chain_map(x: &BoundedComplex, phi: &ChainMap, p: &Poly) -> ChainMap {
    let phi = full_chain_map(x, phi);
    let one: ChainMap = (x.lo()..=x.hi()).map(|k| (k, ModMap::identity(&x.term(k)))).collect();
    let zip = |a: &ChainMap, b: &ChainMap, op: &dyn Fn(&ModMap, &ModMap) -> ModMap| -> ChainMap {
        a.iter().map(|(k, m)| (*k, op(m, &b[k]))).collect()
    };
    p.eval_with(
        &phi,
        one,
        |a, b| zip(a, b, &|m, n| m.add(n)),
        |a, b| zip(a, b, &|m, n| m.compose(n)),
        |a, s| a.iter().map(|(k, m)| (*k, m.scale(s))).collect(),
    )
}

fn poly_of_modmap(m: &AModule, f: &ModMap, p: &Poly) -> ModMap {
    p.eval_with(f, ModMap::identity(m), ModMap::add, ModMap::compose, ModMap::scale)
}

/// Minimal polynomial of the operator with the given vertex components.
pub fn min_poly(field: FieldSpec, comps: &[Matrix]) -> Poly {
    let blocks: Vec<&Matrix> = comps.iter().collect();
    let t = Matrix::block_diag(&blocks, field);
    let n = t.rows();
    if n == 0 {
        return Poly::one(field);
    }
    let flat = |m: &Matrix| -> Vector { m.to_rows().concat() };
    let mut powers = vec![flat(&Matrix::identity(field, n))];
    let mut cur = Matrix::identity(field, n);
    loop {
        cur = cur.mul(&t);
        let target = flat(&cur);
        let basis = Matrix::from_columns(field, n * n, &powers);
        if let Some(c) = basis.solve(&target) {
            let mut coeffs: Vec<Scalar> = c.iter().map(|x| field.neg(x)).collect();
            coeffs.push(field.one());
            return Poly::new(field, coeffs);
        }
        powers.push(target);
    }
}

/// Basis of the strict chain endomorphisms of `x`.
pub fn chain_endomorphisms(x: &BoundedComplex) -> Vec<ChainMap> {
    let f = x.field();
    let alg = x.algebra().clone();
    let nv = alg.n_vertices();
    let degrees: Vec<i64> = (x.lo()..=x.hi()).collect();
    let mut off: BTreeMap<(i64, usize), usize> = BTreeMap::new();
    let mut nvars = 0;
    for &k in &degrees {
        for v in 0..nv {
            off.insert((k, v), nvars);
            let d = x.term(k).dim_at(v);
            nvars += d * d;
        }
    }
    let mut rows: Vec<Vector> = Vec::new();
    // Coefficients of (A U B)[i][j] for an unknown square block U.
    let mut add_aub = |terms: &[(&Matrix, usize, usize, &Matrix, bool)]| {
        let (r, c) = (terms[0].0.rows(), terms[0].3.cols());
        for i in 0..r {
            for j in 0..c {
                let mut row = vec![f.zero(); nvars];
                for (a, o, ucols, b, neg) in terms {
                    for k in 0..a.cols() {
                        for l in 0..b.rows() {
                            let coef = f.mul(a.get(i, k), b.get(l, j));
                            let idx = o + k * ucols + l;
                            row[idx] = if *neg { f.sub(&row[idx], &coef) } else { f.add(&row[idx], &coef) };
                        }
                    }
                }
                rows.push(row);
            }
        }
    };
    for &k in &degrees {
        let xk = x.term(k);
        for (ai, a) in alg.arrows().iter().enumerate() {
            let (s, t) = (a.source, a.target);
            let ma = xk.map(ai);
            let id_s = Matrix::identity(f, xk.dim_at(s));
            let id_t = Matrix::identity(f, xk.dim_at(t));
            add_aub(&[
                (ma, off[&(k, s)], xk.dim_at(s), &id_s, false),
                (&id_t, off[&(k, t)], xk.dim_at(t), ma, true),
            ]);
        }
        if k < x.hi() {
            let d = x.diff(k);
            let xn = x.term(k + 1);
            for v in 0..nv {
                let id_k = Matrix::identity(f, xk.dim_at(v));
                let id_n = Matrix::identity(f, xn.dim_at(v));
                add_aub(&[
                    (&d.comps[v], off[&(k, v)], xk.dim_at(v), &id_k, false),
                    (&id_n, off[&(k + 1, v)], xn.dim_at(v), &d.comps[v], true),
                ]);
            }
        }
    }
    let sys = Matrix::from_rows_with_cols(f, rows, nvars).expect("field");
    sys.kernel_basis()
        .into_iter()
        .map(|sol| {
            degrees
                .iter()
                .map(|&k| {
                    let xk = x.term(k);
                    let comps = (0..nv)
                        .map(|v| {
                            let d = xk.dim_at(v);
                            let o = off[&(k, v)];
                            let mut m = Matrix::zeros(f, d, d);
                            for r in 0..d {
                                for c in 0..d {
                                    m.set(r, c, sol[o + r * d + c].clone());
                                }
                            }
                            m
                        })
                        .collect();
                    (k, ModMap { comps })
                })
                .collect()
        })
        .collect()
}

/// `End_D(X)` in degrees `n_min..=n_max`, all computed from one
/// projective replacement.
#[derive(Debug, Clone)]
pub struct DerivedEnd {
    pub px: Arc<ProjReplacement>,
    pub groups: BTreeMap<i64, HomGroup>,
}

impl DerivedEnd {
    pub fn dims(&self) -> BTreeMap<i64, usize> {
        self.groups.iter().map(|(n, g)| (*n, g.dim())).collect()
    }

    pub fn group(&self, n: i64) -> Result<&HomGroup> {
        self.groups.get(&n).ok_or_else(|| Error::Precondition(format!("degree {n} was not computed")))
    }

    /// `g ∘ f` for classes `f` of degree `n` and `g` of degree `m`.
    pub fn compose(&self, (m, g): (i64, &[Scalar]), (n, f): (i64, &[Scalar])) -> Result<Vector> {
        compose(self.group(n)?, f, self.group(m)?, g, self.group(n + m)?)
    }

    /// The identity of `X` (degree 0).
    pub fn identity(&self) -> Result<Vector> {
        let g = self.group(0)?;
        let eps: ChainMap = (self.px.lo()..=self.px.hi()).map(|k| (k, self.px.eps(k))).collect();
        g.class_of(&eps)
    }

    /// Structure constants: for basis classes `e_{n,i}`, `e_{m,j}` with
    /// `n + m` computed, the coordinates of `e_{m,j} ∘ e_{n,i}`.
    pub fn multiplication_table(&self) -> Result<Vec<((i64, usize), (i64, usize), Vector)>> {
        let mut out = Vec::new();
        for (&n, gn) in &self.groups {
            for (&m, gm) in &self.groups {
                if !self.groups.contains_key(&(n + m)) {
                    continue;
                }
                for i in 0..gn.dim() {
                    for j in 0..gm.dim() {
                        let c = self.compose((m, &gm.unit(j)), (n, &gn.unit(i)))?;
                        out.push(((m, j), (n, i), c));
                    }
                }
            }
        }
        Ok(out)
    }
}

/// `End_D(X)` in degrees from `lo - hi` to `max_degree` (default: the
/// amplitude plus the global dimension bound, or plus 2 when unknown).
pub fn derived_end(x: &BoundedComplex, max_degree: Option<i64>) -> Result<DerivedEnd> {
    let Some((lo, hi)) = x.support() else {
        let px = Arc::new(ProjReplacement::new(x, 0));
        return Ok(DerivedEnd { px, groups: BTreeMap::new() });
    };
    let gl = x.algebra().gl_dim_bound().map_or(2, |g| g as i64);
    let top = max_degree.unwrap_or(hi - lo + gl);
    let px = Arc::new(ProjReplacement::new(x, lo - top - 1));
    let groups = (lo - hi..=top)
        .map(|n| Ok((n, HomGroup::new(px.clone(), x.clone(), n)?)))
        .collect::<Result<_>>()?;
    Ok(DerivedEnd { px, groups })
}

/// Outcome of comparing `End_D(⊕ S_i[-(i-1)])` over `Λ_d` with the
/// triangular matrix algebra `T_d`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TriangularReport {
    pub d: usize,
    pub dims: BTreeMap<i64, usize>,
    /// The matrix units `E_{ji}` (`j ≤ i`) form a basis of degree 0.
    pub basis_ok: bool,
    /// `E_{ab} ∘ E_{ce} = δ_{bc} E_{ae}` and `Σ E_{ii} = 1`.
    pub table_ok: bool,
}

impl TriangularReport {
    pub fn holds(&self) -> bool {
        self.basis_ok && self.table_ok && self.dims.iter().all(|(&n, &k)| if n == 0 { k == self.d * (self.d + 1) / 2 } else { k == 0 })
    }
}

/// `⊕_{i=1..d} S_i[-(i-1)]` over `Λ_d`.
pub fn ladder_sum_complex(field: FieldSpec, d: usize) -> Result<BoundedComplex> {
    let alg = Arc::new(PresentedAlgebra::koszul_ladder(field, d)?);
    let parts: Vec<BoundedComplex> = (0..d)
        .map(|k| Ok(BoundedComplex::single(&AModule::simple(alg.clone(), k)?, k as i64)))
        .collect::<Result<_>>()?;
    Ok(BoundedComplex::direct_sum(&parts.iter().collect::<Vec<_>>()))
}

/// `A →x A` over `k[x]/(x²)` in degrees 0, 1.
pub fn dual_numbers_complex(field: FieldSpec) -> Result<BoundedComplex> {
    let a = Arc::new(PresentedAlgebra::dual_numbers(field)?);
    let p = super::ProjModule::indecomposable(a.clone(), 0)?;
    let x_gen = p.module.map(0).mul_vec(&p.generator(0).1);
    let d = p.hom_from_generators(&p.module, &[x_gen]);
    BoundedComplex::new(a, 0, vec![p.module.clone(), p.module.clone()], vec![d])
}

pub fn ladder_triangular_check(field: FieldSpec, d: usize) -> Result<TriangularReport> {
    let x = ladder_sum_complex(field, d)?;
    let end = derived_end(&x, None)?;
    let g0 = end.group(0)?;
    let f = field;
    let zero = vec![f.zero(); g0.dim()];
    // Idempotent onto the summand in degree k.
    let pi: Vec<Vector> = (0..d as i64)
        .map(|k| g0.class_of(&BTreeMap::from([(k, end.px.eps(k))])))
        .collect::<Result<_>>()?;
    let mul = |a: &Vector, b: &Vector| end.compose((0, a), (0, b));
    // β_k: a nonzero element of π_{k-1} · End · π_k.
    let mut beta: Vec<Vector> = vec![zero.clone()];
    for k in 1..d {
        let mut found = None;
        for i in 0..g0.dim() {
            let t = mul(&mul(&pi[k - 1], &g0.unit(i))?, &pi[k])?;
            if t.iter().any(|x| !x.is_zero()) {
                found = Some(t);
                break;
            }
        }
        beta.push(found.ok_or_else(|| Error::Invariant(format!("no nonzero map from summand {k} to {}", k - 1)))?);
    }
    // E[(j, i)] for j ≤ i: the map from summand i to summand j.
    let mut e: BTreeMap<(usize, usize), Vector> = BTreeMap::new();
    for i in 0..d {
        e.insert((i, i), pi[i].clone());
        for j in (0..i).rev() {
            let v = mul(&e[&(j, i - 1)], &beta[i])?;
            e.insert((j, i), v);
        }
    }
    let units: Vec<Vector> = e.values().cloned().collect();
    let rank = Subspace::span(f, g0.dim(), &units).dim();
    let basis_ok = rank == units.len() && rank == g0.dim();
    let mut table_ok = true;
    let id = end.identity()?;
    let sum_pi = pi.iter().fold(zero.clone(), |acc, p| acc.iter().zip(p).map(|(a, b)| f.add(a, b)).collect());
    table_ok &= sum_pi == id;
    for (&(a, b), x) in &e {
        for (&(c, w), y) in &e {
            let prod = mul(x, y)?;
            let expected = if b == c { e[&(a, w)].clone() } else { zero.clone() };
            table_ok &= prod == expected;
        }
    }
    Ok(TriangularReport { d, dims: end.dims(), basis_ok, table_ok })
}

/// Result of the splitting search.
#[derive(Debug, Clone)]
pub struct SplitReport {
    pub splittable: bool,
    /// `α_q: P^q → H^q(X)` inducing the identity on cohomology.
    pub witness: Option<ChainMap>,
    /// First degree where no such `α_q` exists.
    pub obstruction_degree: Option<i64>,
}

fn replacement_for_splitting(x: &BoundedComplex) -> Option<ProjReplacement> {
    x.support().map(|(lo, _)| ProjReplacement::new(x, lo - 1))
}

/// Unknowns `α_q ∈ Hom(P^q, H^q)` (first block) plus `extra` more;
/// equations `α_q ∘ d^{q-1} = 0` and `α_q|_{Z^q(P)} = π ∘ ε`.
fn splitting_equations(px: &ProjReplacement, x: &BoundedComplex, q: i64, extra: usize) -> (LinSys, AModule, usize) {
    let h = x.cohomology(q);
    let hm = h.module.clone();
    let pq = px.term(q);
    let alen = pq.hom_dim(&hm);
    let mut sys = LinSys::new(x.field(), alen + extra);
    let below = px.term(q - 1);
    for i in 0..below.rank() {
        let (v, g) = below.generator(i);
        let dg = px.diff(q - 1).comps[v].mul_vec(&g);
        sys.add(&[(0, &pq.eval_matrix(&hm, v, &dg))], None);
    }
    let nv = x.algebra().n_vertices();
    for w in 0..nv {
        for z in px.diff(q).comps[w].kernel_basis() {
            let target = h.proj[w].mul_vec(&px.eps(q).comps[w].mul_vec(&z));
            sys.add(&[(0, &pq.eval_matrix(&hm, w, &z))], Some(&target));
        }
    }
    (sys, hm, alen)
}

/// Decide whether `X ≅ ⊕ H^q(X)[-q]` by searching for a chain map from a
/// projective replacement inducing the identity on cohomology.
pub fn is_splittable(x: &BoundedComplex) -> Result<SplitReport> {
    let Some(px) = replacement_for_splitting(x) else {
        return Ok(SplitReport { splittable: true, witness: Some(ChainMap::new()), obstruction_degree: None });
    };
    let mut witness = ChainMap::new();
    for q in x.cohomology_degrees() {
        let (sys, hm, _) = splitting_equations(&px, x, q, 0);
        match sys.solve() {
            Some(sol) => {
                witness.insert(q, px.term(q).hom_from_coords(&hm, &sol));
            }
            None => {
                return Ok(SplitReport { splittable: false, witness: None, obstruction_degree: Some(q) });
            }
        }
    }
    Ok(SplitReport { splittable: true, witness: Some(witness), obstruction_degree: None })
}

/// `Ext^{l-q+1}(H^l, H^q) = 0` for every pair of degrees with `l - q + 1 ≥ 0`.
pub fn scindage_criterion(x: &BoundedComplex) -> Result<bool> {
    let degs = x.cohomology_degrees();
    let hs: BTreeMap<i64, AModule> = degs.iter().map(|&q| (q, x.cohomology(q).module)).collect();
    for (&l, hl) in &hs {
        for (&q, hq) in &hs {
            let e = l - q + 1;
            if e < 0 {
                continue;
            }
            if ext_dims(hl, hq, e as usize)?[e as usize] != 0 {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// A splitting `α` diagonalizing `φ`.
#[derive(Debug, Clone)]
pub struct PhiSplitting {
    /// `α_q: P^q → H^q(X)`.
    pub alpha: ChainMap,
    /// Every other splitting with the same property is homotopic to `α`.
    pub unique: bool,
}

#[derive(Debug, Clone)]
pub struct ActionPhiReport {
    /// `P(φ) = 0` in `End_D(X)`, with `P = Π P_q`.
    pub annihilation: bool,
    /// Coordinates of `h ∈ Hom^{-1}(P_X, X)` with `D h = P(φ) ∘ ε`.
    pub homotopy: Vector,
    /// The `P_q` (over degrees with nonzero cohomology) are pairwise comaximal.
    pub comaximal: bool,
    pub splitting: Option<PhiSplitting>,
}

/// Check `P(φ) = 0` and, under pairwise comaximality, construct the
/// unique splitting conjugating `φ` to `⊕ H^q(φ)[-q]`.
pub fn actionphi_split(x: &BoundedComplex, phi: &ChainMap, polys: &BTreeMap<i64, Poly>) -> Result<ActionPhiReport> {
    let f = x.field();
    ensure!(
        x.is_chain_map(x, &phi.iter().map(|(k, m)| (*k, m.clone())).collect::<Vec<_>>()),
        Error::Precondition("φ is not a chain endomorphism".into())
    );
    let degs = x.cohomology_degrees();
    let one = Poly::one(f);
    let poly = |q: i64| polys.get(&q).cloned().unwrap_or_else(|| one.clone());
    for &q in &degs {
        let h = x.cohomology(q).module;
        let hphi = induced_on_cohomology(x, phi, q);
        ensure!(
            poly_of_modmap(&h, &hphi, &poly(q)).is_zero(),
            Error::Precondition(format!("P_{q}(H^{q}(φ)) ≠ 0"))
        );
    }
    let Some(px) = replacement_for_splitting(x) else {
        return Ok(ActionPhiReport { annihilation: true, homotopy: Vec::new(), comaximal: true, splitting: None });
    };

    let total = degs.iter().fold(Poly::one(f), |acc, &q| acc.mul(&poly(q)));
    let pphi = poly_of_chain_map(x, phi, &total);
    let cocycle: ChainMap = (px.lo()..=px.hi())
        .filter_map(|k| pphi.get(&k).map(|m| (k, m.compose(&px.eps(k)))))
        .collect();
    let hc = HomComplex::new(&px, x);
    let c = hc.coords_of(0, &cocycle);
    let homotopy = hc
        .differential(-1)
        .solve(&c)
        .ok_or_else(|| Error::Invariant("P(φ) is not null-homotopic".into()))?;

    let comaximal = degs
        .iter()
        .enumerate()
        .all(|(i, &p)| degs[i + 1..].iter().all(|&q| poly(p).comaximal_with(&poly(q))));
    if !comaximal {
        return Ok(ActionPhiReport { annihilation: true, homotopy, comaximal, splitting: None });
    }

    let phi_eps: ChainMap = (px.lo()..=px.hi())
        .filter_map(|k| phi.get(&k).map(|m| (k, m.compose(&px.eps(k)))))
        .collect();
    let phi_lift = lift_cocycle(&px, &px, 0, &phi_eps, px.lo())?;
    let mut alpha = ChainMap::new();
    let mut unique = true;
    for &q in &degs {
        let pq = px.term(q);
        let pn = px.term(q + 1);
        let hq = x.cohomology(q).module;
        let hlen = pn.hom_dim(&hq);
        let (mut sys, hm, alen) = splitting_equations(&px, x, q, hlen);
        let hphi = induced_on_cohomology(x, phi, q);
        let lift_q = phi_lift.get(&q).cloned().unwrap_or_else(|| ModMap::zero(&pq.module, &pq.module));
        let aoff = pq.coord_offsets(&hm);
        // α_q φ̃ - H^q(φ) α_q - h d = 0 on each generator of P^q.
        let mut hd_rows: Vec<Matrix> = Vec::new();
        for i in 0..pq.rank() {
            let (v, g) = pq.generator(i);
            let phig = lift_q.comps[v].mul_vec(&g);
            let mut a_block = pq.eval_matrix(&hm, v, &phig);
            let sel = hphi.comps[v].clone();
            let cur = a_block.block(0, aoff[i], sel.rows(), sel.cols()).sub(&sel);
            a_block.set_block(0, aoff[i], &cur);
            let dg = px.diff(q).comps[v].mul_vec(&g);
            let hd = pn.eval_matrix(&hm, v, &dg);
            sys.add(&[(0, &a_block), (alen, &hd.neg())], None);
            hd_rows.push(hd);
        }
        let sol = sys
            .solve()
            .ok_or_else(|| Error::Invariant(format!("no splitting diagonalizes φ in degree {q}")))?;
        alpha.insert(q, pq.hom_from_coords(&hm, &sol[..alen]));
        // Homogeneous α-parts must be of the form h'∘d (null-homotopic).
        let hd_all = hd_rows
            .iter()
            .fold(Matrix::zeros(f, 0, hlen), |acc, m| acc.vstack(m));
        let nullhom = Subspace::image(&hd_all);
        for k in sys.homogeneous() {
            unique &= nullhom.contains(&k[..alen]);
        }
    }
    ensure!(unique, Error::Invariant("diagonalizing splitting is not unique".into()));
    Ok(ActionPhiReport { annihilation: true, homotopy, comaximal, splitting: Some(PhiSplitting { alpha, unique }) })
}

/// Check that `α: P_X → ⊕ H^q[-q]` conjugates `φ` to `⊕ H^q(φ)`, i.e.
/// `α φ̃ - H(φ) α` is null-homotopic, and that it induces the identity.
pub fn verify_phi_splitting(x: &BoundedComplex, phi: &ChainMap, alpha: &ChainMap) -> Result<bool> {
    let Some(px) = replacement_for_splitting(x) else {
        return Ok(alpha.is_empty());
    };
    let split = x.split_form();
    let hc = HomComplex::new(&px, &split);
    let coh = hc.cohomology(0)?;
    let a = hc.coords_of(0, alpha);
    if !coh.is_cocycle(&a) {
        return Ok(false);
    }
    for q in x.cohomology_degrees() {
        let h = x.cohomology(q);
        let zq: Vec<Subspace> = px.diff(q).comps.iter().map(Subspace::kernel).collect();
        for (w, z) in zq.iter().enumerate() {
            for v in z.basis() {
                let lhs = alpha[&q].comps[w].mul_vec(&v);
                let rhs = h.proj[w].mul_vec(&px.eps(q).comps[w].mul_vec(&v));
                if lhs != rhs {
                    return Ok(false);
                }
            }
        }
    }
    let phi_eps: ChainMap = (px.lo()..=px.hi())
        .filter_map(|k| phi.get(&k).map(|m| (k, m.compose(&px.eps(k)))))
        .collect();
    let lift = lift_cocycle(&px, &px, 0, &phi_eps, px.lo())?;
    let mut diff = ChainMap::new();
    for (q, aq) in alpha {
        let hphi = induced_on_cohomology(x, phi, *q);
        let l = lift.get(q).cloned().unwrap_or_else(|| ModMap::zero(&px.term(*q).module, &px.term(*q).module));
        diff.insert(*q, aq.compose(&l).sub(&hphi.compose(aq)));
    }
    Ok(coh.is_coboundary(&hc.coords_of(0, &diff)))
}

#[cfg(test)]
mod tests;
