//! Fixed-seed inputs shared by the benchmarks.

use std::sync::Arc;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use weilmono_core::semistable::{mumford_from_graph, Multigraph};
use weilmono_core::{gen, AModule, FieldSpec, Matrix, PresentedAlgebra, SemistableConfig, WDRep};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn square_matrix(n: usize) -> Matrix {
    gen::random_matrix(&mut rng(n as u64), n, n, 9)
}

pub fn nilpotent(n: usize) -> Matrix {
    gen::random_nilpotent(&mut rng(n as u64), n)
}

pub fn reps(count: usize, max_dim: usize) -> Vec<WDRep> {
    let mut r = rng(7);
    (0..count).map(|_| gen::random_rep(&mut r, max_dim, true)).collect()
}

pub fn ladder(d: usize) -> Arc<PresentedAlgebra> {
    Arc::new(PresentedAlgebra::koszul_ladder(FieldSpec::Rationals, d).expect("ladder algebra"))
}

pub fn simples(alg: &Arc<PresentedAlgebra>) -> Vec<AModule> {
    (0..alg.n_vertices()).map(|v| AModule::simple(alg.clone(), v).expect("simple module")).collect()
}

/// Dual graph with `v` vertices on a cycle plus `extra` chords from vertex 0.
pub fn mumford(v: usize, extra: usize) -> SemistableConfig {
    let mut edges: Vec<(usize, usize)> = (0..v).map(|i| (i, (i + 1) % v)).collect();
    edges.extend((0..extra).map(|k| (0, 1 + k % (v - 1))));
    mumford_from_graph(&Multigraph::new(v, edges).expect("graph")).expect("configuration")
}
