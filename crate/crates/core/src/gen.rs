//! Seeded random instance generators shared by tests and the acceptance
//! battery.

use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::Rng;

use crate::exactnum::{int, FieldSpec, Matrix, QMonomial, Scalar};
use crate::homalg::{
    chain_endomorphisms, hom_space, induced_on_cohomology, AModule, BoundedComplex, ChainMap, ModMap, Poset, PresentedAlgebra,
    ProjModule,
};
use crate::wd::WDRep;

const Q: FieldSpec = FieldSpec::Rationals;

pub fn small_int<R: Rng>(rng: &mut R, bound: i64) -> Scalar {
    int(rng.gen_range(-bound..=bound))
}

pub fn random_matrix<R: Rng>(rng: &mut R, rows: usize, cols: usize, bound: i64) -> Matrix {
    let mut m = Matrix::zeros(Q, rows, cols);
    for r in 0..rows {
        for c in 0..cols {
            m.set(r, c, small_int(rng, bound));
        }
    }
    m
}

/// Random invertible matrix with small integer entries.
pub fn random_invertible<R: Rng>(rng: &mut R, n: usize) -> Matrix {
    loop {
        let m = random_matrix(rng, n, n, 2);
        if m.rank() == n {
            return m;
        }
    }
}

/// Random nilpotent `g U g^{-1}` with `U` strictly upper triangular with
/// random sparsity, so all Jordan types occur.
pub fn random_nilpotent<R: Rng>(rng: &mut R, n: usize) -> Matrix {
    let mut u = Matrix::zeros(Q, n, n);
    let density: f64 = rng.gen_range(0.0..1.0);
    for r in 0..n {
        for c in r + 1..n {
            if rng.gen_bool(density) {
                u.set(r, c, small_int(rng, 2));
            }
        }
    }
    let g = random_invertible(rng, n);
    g.mul(&u).mul(&g.inverse().expect("invertible"))
}

/// Random Weil–Deligne representation of dimension `1..=max_dim`. With
/// `unit_tags` every tag has coefficient `±1`; otherwise coefficients come
/// from `{±1, 2, 1/2}`.
pub fn random_rep<R: Rng>(rng: &mut R, max_dim: usize, unit_tags: bool) -> WDRep {
    let dim = rng.gen_range(1..=max_dim);
    let coeffs: Vec<Scalar> = if unit_tags {
        vec![int(1), int(-1)]
    } else {
        vec![int(1), int(-1), int(2), Scalar::new(1.into(), 2.into())]
    };
    let n_ladders = rng.gen_range(1..=2);
    let ladders: Vec<(Scalar, i64)> = (0..n_ladders)
        .map(|_| (coeffs.choose(rng).expect("nonempty").clone(), rng.gen_range(-2..=1)))
        .collect();
    let tags: Vec<QMonomial> = (0..dim)
        .map(|_| {
            let (c, m0) = ladders.choose(rng).expect("nonempty");
            QMonomial::new(c.clone(), m0 + 2 * rng.gen_range(0..=3)).expect("nonzero")
        })
        .collect();
    let density: f64 = rng.gen_range(0.2..1.0);
    let mut n = Matrix::zeros(Q, dim, dim);
    for i in 0..dim {
        for j in 0..dim {
            if tags[i] == tags[j].shift_q(-1) && rng.gen_bool(density) {
                n.set(i, j, small_int(rng, 2));
            }
        }
    }
    WDRep::from_graded(tags, n).expect("generated N lowers tags")
}

/// Random sum of simples and indecomposable projectives over `alg`,
/// disguised by a random base change at every vertex.
pub fn random_module<R: Rng>(rng: &mut R, alg: &Arc<PresentedAlgebra>, max_summands: usize) -> AModule {
    let count = rng.gen_range(0..=max_summands);
    let mut parts = Vec::with_capacity(count);
    for _ in 0..count {
        let v = rng.gen_range(0..alg.n_vertices());
        parts.push(if rng.gen_bool(0.5) {
            AModule::simple(alg.clone(), v).expect("vertex")
        } else {
            ProjModule::indecomposable(alg.clone(), v).expect("vertex").module
        });
    }
    if parts.is_empty() {
        return AModule::zero(alg.clone());
    }
    let m = AModule::direct_sum(&parts.iter().collect::<Vec<_>>());
    base_change(rng, &m)
}

/// Isomorphic copy of `m` under random invertible maps at each vertex.
pub fn base_change<R: Rng>(rng: &mut R, m: &AModule) -> AModule {
    let g: Vec<Matrix> = m.dims().iter().map(|&d| random_invertible(rng, d)).collect();
    let ginv: Vec<Matrix> = g.iter().map(|x| x.inverse().expect("invertible")).collect();
    let maps = m
        .algebra()
        .arrows()
        .iter()
        .enumerate()
        .map(|(ai, a)| g[a.target].mul(m.map(ai)).mul(&ginv[a.source]))
        .collect();
    AModule::new(m.algebra().clone(), m.dims().to_vec(), maps).expect("base change keeps relations")
}

fn random_combination<R: Rng>(rng: &mut R, basis: &[ModMap], src: &AModule, tgt: &AModule) -> ModMap {
    basis
        .iter()
        .fold(ModMap::zero(src, tgt), |acc, b| acc.add(&b.scale(&small_int(rng, 2))))
}

/// Random complex `X^0 → … → X^{len-1}` over `alg`: terms from
/// [`random_module`], each differential a random homomorphism killing
/// the previous one.
pub fn random_complex<R: Rng>(rng: &mut R, alg: &Arc<PresentedAlgebra>, len: usize, max_summands: usize) -> BoundedComplex {
    let terms: Vec<AModule> = (0..len).map(|_| random_module(rng, alg, max_summands)).collect();
    let mut diffs: Vec<ModMap> = Vec::new();
    for i in 0..len.saturating_sub(1) {
        let (src, tgt) = (&terms[i], &terms[i + 1]);
        let basis = hom_space(src, tgt);
        let d = match diffs.last() {
            None => random_combination(rng, &basis, src, tgt),
            Some(prev) => {
                // Coefficients c with (Σ c_j b_j) ∘ prev = 0.
                let cols: Vec<Vec<Scalar>> = basis
                    .iter()
                    .map(|b| b.compose(prev).comps.iter().flat_map(|c| c.to_rows().concat()).collect())
                    .collect();
                let rows = cols.first().map_or(0, Vec::len);
                let sys = Matrix::from_columns(Q, rows, &cols);
                let ker = sys.kernel_basis();
                let good: Vec<ModMap> = ker
                    .iter()
                    .map(|c| {
                        basis.iter().zip(c).fold(ModMap::zero(src, tgt), |acc, (b, x)| acc.add(&b.scale(x)))
                    })
                    .collect();
                random_combination(rng, &good, src, tgt)
            }
        };
        diffs.push(d);
    }
    BoundedComplex::new(alg.clone(), 0, terms, diffs).expect("d∘d = 0 by construction")
}

fn zero_chain_map(x: &BoundedComplex) -> ChainMap {
    (x.lo()..=x.hi()).map(|k| (k, ModMap::zero(&x.term(k), &x.term(k)))).collect()
}

fn add_scaled(out: &mut ChainMap, b: &ChainMap, c: &Scalar) {
    for (k, m) in b {
        let cur = out[k].add(&m.scale(c));
        out.insert(*k, cur);
    }
}

/// Random chain endomorphism of `x`, a small-integer combination of a basis.
pub fn random_chain_endo<R: Rng>(rng: &mut R, x: &BoundedComplex) -> ChainMap {
    let mut out = zero_chain_map(x);
    for b in &chain_endomorphisms(x) {
        let c = small_int(rng, 3);
        add_scaled(&mut out, b, &c);
    }
    out
}

/// Random chain endomorphism acting by zero on every `H^q`.
pub fn random_ghost<R: Rng>(rng: &mut R, x: &BoundedComplex) -> ChainMap {
    let basis = chain_endomorphisms(x);
    let degs = x.cohomology_degrees();
    let cols: Vec<Vec<Scalar>> = basis
        .iter()
        .map(|b| {
            degs.iter()
                .flat_map(|&q| induced_on_cohomology(x, b, q).comps.iter().flat_map(|c| c.to_rows().concat()).collect::<Vec<_>>())
                .collect()
        })
        .collect();
    let rows = cols.first().map_or(0, Vec::len);
    let ker = Matrix::from_columns(Q, rows, &cols).kernel_basis();
    let mut out = zero_chain_map(x);
    for v in &ker {
        let c = small_int(rng, 3);
        for (b, w) in basis.iter().zip(v) {
            add_scaled(&mut out, b, &Q.mul(&c, w));
        }
    }
    out
}

/// Random poset on `0..n` with least element 0 and maximum `n - 1`.
pub fn random_poset_with_maximum<R: Rng>(rng: &mut R, n: usize) -> Poset {
    let mut rel = vec![(0, n - 1)];
    for a in 1..n.saturating_sub(1) {
        rel.push((0, a));
        rel.push((a, n - 1));
        for b in a + 1..n - 1 {
            if rng.gen_bool(0.3) {
                rel.push((a, b));
            }
        }
    }
    Poset::new(n, &rel).expect("acyclic by construction")
}
