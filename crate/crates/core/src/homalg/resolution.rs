use std::collections::BTreeMap;
use std::sync::Arc;

use super::algebra::PresentedAlgebra;
use super::complex::BoundedComplex;
use rand::{Rng, RngCore};

use super::module::{padded_cover, AModule, ModMap, ProjModule};
use crate::error::{ensure, Error, Result};
use crate::exactnum::Vector;

/// Bounded-above complex of projectives `P` with a quasi-isomorphism
/// `ε: P → X`, computed in degrees `lo..=hi`.
///
/// Built top-down: `P^k` is the projective cover of
/// `W_k = {(p, x) ∈ Z^{k+1}(P) ⊕ X^k : ε(p) = d x}`, with `d_P` and `ε`
/// the two projections. When `complete` is false the true replacement
/// continues below `lo`; everything at or above `lo` is final.
#[derive(Debug, Clone)]
pub struct ProjReplacement {
    alg: Arc<PresentedAlgebra>,
    lo: i64,
    terms: Vec<ProjModule>,
    /// `diffs[i]: P^{lo+i} → P^{lo+i+1}`.
    diffs: Vec<ModMap>,
    eps: Vec<ModMap>,
    complete: bool,
    target: BoundedComplex,
}

impl ProjReplacement {
    /// Replace `x`, computing every `P^k` with `k ≥ min_degree`.
    pub fn new(x: &BoundedComplex, min_degree: i64) -> Self {
        Self::build(x, min_degree, None)
    }

    /// A non-minimal replacement: each cover gets up to two extra random
    /// generators. Terms differ from [`ProjReplacement::new`]; cohomology of
    /// Hom complexes must not.
    pub fn randomized(x: &BoundedComplex, min_degree: i64, rng: &mut dyn RngCore) -> Self {
        Self::build(x, min_degree, Some(rng))
    }

    fn build(x: &BoundedComplex, min_degree: i64, mut rng: Option<&mut dyn RngCore>) -> Self {
        let alg = x.algebra().clone();
        let empty = ProjModule::free(alg.clone(), &[]).expect("no generators");
        let Some((bottom, top)) = x.support() else {
            return ProjReplacement {
                alg,
                lo: min_degree.max(0),
                terms: Vec::new(),
                diffs: Vec::new(),
                eps: Vec::new(),
                complete: true,
                target: x.clone(),
            };
        };
        // Descending lists, reversed at the end.
        let mut terms: Vec<ProjModule> = Vec::new();
        let mut diffs: Vec<ModMap> = Vec::new();
        let mut eps: Vec<ModMap> = Vec::new();
        let mut k = top;
        let mut complete = false;
        loop {
            if k < min_degree {
                break;
            }
            let (above, d_above, eps_above) = match terms.last() {
                Some(p) => (p.clone(), diffs.last().cloned().expect("diff"), eps.last().cloned().expect("eps")),
                None => (empty.clone(), ModMap::zero(&empty.module, &empty.module), ModMap::zero(&empty.module, &x.term(k + 1))),
            };
            let z = d_above.kernel(&above.module);
            let xk = x.term(k);
            let s = AModule::direct_sum(&[&z.module, &xk]);
            let phi = ModMap::hstack(&[&eps_above.compose(&z.inclusion()), &x.diff(k).neg()]);
            let w = phi.kernel(&s);
            if w.module.is_zero() && k <= bottom {
                complete = true;
                break;
            }
            let extra = match rng.as_deref_mut() {
                Some(r) => random_elements(&w.module, r),
                None => Vec::new(),
            };
            let (p, cover) = padded_cover(&w.module, extra);
            let to_s = w.inclusion().compose(&cover);
            let nv = alg.n_vertices();
            let mut first = Vec::with_capacity(nv);
            let mut second = Vec::with_capacity(nv);
            for v in 0..nv {
                let c = &to_s.comps[v];
                let zd = z.module.dim_at(v);
                first.push(c.block(0, 0, zd, c.cols()));
                second.push(c.block(zd, 0, c.rows() - zd, c.cols()));
            }
            let d = z.inclusion().compose(&ModMap { comps: first });
            terms.push(p);
            diffs.push(d);
            eps.push(ModMap { comps: second });
            k -= 1;
        }
        terms.reverse();
        diffs.reverse();
        eps.reverse();
        ProjReplacement { alg, lo: k + 1, terms, diffs, eps, complete, target: x.clone() }
    }

    pub fn algebra(&self) -> &Arc<PresentedAlgebra> {
        &self.alg
    }

    /// Lowest computed degree.
    pub fn lo(&self) -> i64 {
        self.lo
    }

    pub fn hi(&self) -> i64 {
        self.lo + self.terms.len() as i64 - 1
    }

    /// True when `P^k = 0` for all `k < lo`.
    pub fn is_complete(&self) -> bool {
        self.complete
    }

    /// The replaced complex `X`.
    pub fn target(&self) -> &BoundedComplex {
        &self.target
    }

    /// Whether `P^k` is known (computed, or zero by completeness).
    pub fn knows(&self, k: i64) -> bool {
        k >= self.lo || self.complete
    }

    pub fn term(&self, k: i64) -> ProjModule {
        match self.index(k) {
            Some(i) => self.terms[i].clone(),
            None => ProjModule::free(self.alg.clone(), &[]).expect("no generators"),
        }
    }

    fn index(&self, k: i64) -> Option<usize> {
        (k >= self.lo && k <= self.hi()).then_some((k - self.lo) as usize)
    }

    /// `d^k: P^k → P^{k+1}`.
    pub fn diff(&self, k: i64) -> ModMap {
        match self.index(k) {
            Some(i) => self.diffs[i].clone(),
            None => ModMap::zero(&self.term(k).module, &self.term(k + 1).module),
        }
    }

    /// `ε^k: P^k → X^k`.
    pub fn eps(&self, k: i64) -> ModMap {
        match self.index(k) {
            Some(i) => self.eps[i].clone(),
            None => ModMap::zero(&self.term(k).module, &self.target.term(k)),
        }
    }

    /// The computed part of `P` as a complex of modules.
    pub fn as_complex(&self) -> BoundedComplex {
        if self.terms.is_empty() {
            return BoundedComplex::zero(self.alg.clone());
        }
        let terms = self.terms.iter().map(|p| p.module.clone()).collect();
        let diffs = self.diffs[..self.diffs.len() - 1].to_vec();
        BoundedComplex::new(self.alg.clone(), self.lo, terms, diffs).expect("replacement is a complex")
    }

    /// Ranks of the terms, `(degree, generator vertices)`.
    pub fn shape(&self) -> Vec<(i64, Vec<usize>)> {
        self.terms.iter().enumerate().map(|(i, p)| (self.lo + i as i64, p.gens().to_vec())).collect()
    }
}

fn random_elements(m: &AModule, rng: &mut dyn RngCore) -> Vec<(usize, Vector)> {
    let f = m.field();
    let live: Vec<usize> = (0..m.dims().len()).filter(|&v| m.dim_at(v) > 0).collect();
    if live.is_empty() {
        return Vec::new();
    }
    (0..rng.gen_range(0..=2))
        .map(|_| {
            let v = live[rng.gen_range(0..live.len())];
            (v, (0..m.dim_at(v)).map(|_| f.from_i64(rng.gen_range(-2..=2))).collect())
        })
        .collect()
}

/// Minimal projective resolution `P^{-L} → … → P^0 → M` (degrees ≤ 0).
pub fn projective_resolution(m: &AModule, length: usize) -> ProjReplacement {
    ProjReplacement::new(&BoundedComplex::single(m, 0), -(length as i64))
}

/// Lift a cocycle `α ∈ Hom^n(P_X, Y)` (components `α^k: P_X^k → Y^{k+n}`)
/// to a chain map `α̃: P_X → P_Y[n]` with `ε_Y ∘ α̃ = α`, for all `k ≥ kmin`.
pub fn lift_cocycle(
    px: &ProjReplacement,
    py: &ProjReplacement,
    n: i64,
    alpha: &BTreeMap<i64, ModMap>,
    kmin: i64,
) -> Result<BTreeMap<i64, ModMap>> {
    ensure!(px.knows(kmin), Error::Precondition(format!("source replacement stops above degree {kmin}")));
    let sign = if n.rem_euclid(2) == 0 { 1 } else { -1 };
    let f = px.algebra().field();
    let y = py.target();
    let mut out: BTreeMap<i64, ModMap> = BTreeMap::new();
    for k in (kmin..=px.hi()).rev() {
        let pk = px.term(k);
        let qk = py.term(k + n);
        let mut images: Vec<Vector> = Vec::with_capacity(pk.rank());
        let above = out.get(&(k + 1));
        for i in 0..pk.rank() {
            let (v, g) = pk.generator(i);
            let dg = px.diff(k).comps[v].mul_vec(&g);
            let mut p = match above {
                Some(m) => m.comps[v].mul_vec(&dg),
                None => vec![f.zero(); py.term(k + n + 1).module.dim_at(v)],
            };
            if sign < 0 {
                p = p.iter().map(|x| f.neg(x)).collect();
            }
            let x = match alpha.get(&k) {
                Some(a) => a.comps[v].mul_vec(&g),
                None => vec![f.zero(); y.term(k + n).dim_at(v)],
            };
            if !py.knows(k + n) {
                return Err(Error::Precondition(format!("target replacement stops above degree {}", k + n)));
            }
            let sys = py.diff(k + n).comps[v].vstack(&py.eps(k + n).comps[v]);
            let mut rhs = p;
            rhs.extend(x);
            let z = sys
                .solve(&rhs)
                .ok_or_else(|| Error::Invariant(format!("cocycle does not lift at degree {k}")))?;
            images.push(z);
        }
        out.insert(k, pk.hom_from_generators(&qk.module, &images));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::FieldSpec;

    const Q: FieldSpec = FieldSpec::Rationals;

    fn check_quasi_iso(r: &ProjReplacement) {
        let p = r.as_complex();
        let x = r.target();
        for k in r.lo() + 1..=x.hi().max(r.hi()) {
            let hp = p.cohomology(k).module.dims().to_vec();
            let hx = x.cohomology(k).module.dims().to_vec();
            assert_eq!(hp, hx, "cohomology mismatch at {k}");
        }
        for k in r.lo()..=r.hi() {
            let lhs = x.diff(k).compose(&r.eps(k));
            let rhs = r.eps(k + 1).compose(&r.diff(k));
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn projective_has_length_zero_resolution() {
        let a = Arc::new(PresentedAlgebra::koszul_ladder(Q, 4).unwrap());
        for v in 0..4 {
            let p = ProjModule::indecomposable(a.clone(), v).unwrap();
            let r = projective_resolution(&p.module, 5);
            assert!(r.is_complete());
            assert_eq!(r.shape(), vec![(0, vec![v])]);
        }
    }

    #[test]
    fn ladder_simple_top_resolution() {
        for d in 1..=5 {
            let a = Arc::new(PresentedAlgebra::koszul_ladder(Q, d).unwrap());
            let s = AModule::simple(a, d - 1).unwrap();
            let r = projective_resolution(&s, d + 2);
            assert!(r.is_complete());
            let expected: Vec<(i64, Vec<usize>)> = (0..d).map(|i| (-(i as i64), vec![d - 1 - i])).rev().collect();
            assert_eq!(r.shape(), expected);
            check_quasi_iso(&r);
        }
    }

    #[test]
    fn dual_numbers_resolution_is_periodic() {
        let a = Arc::new(PresentedAlgebra::dual_numbers(Q).unwrap());
        let s = AModule::simple(a, 0).unwrap();
        let r = projective_resolution(&s, 6);
        assert!(!r.is_complete());
        assert_eq!(r.lo(), -6);
        assert!(r.shape().iter().all(|(_, g)| g == &vec![0]));
        check_quasi_iso(&r);
    }

    #[test]
    fn randomized_replacements_are_quasi_isomorphisms() {
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        let x = crate::homalg::complex::tests::ladder_two_term();
        for _ in 0..10 {
            let r = ProjReplacement::randomized(&x, -6, &mut rng);
            check_quasi_iso(&r);
        }
    }

    #[test]
    fn two_term_complex_replacement() {
        let x = crate::homalg::complex::tests::ladder_two_term();
        let r = ProjReplacement::new(&x, -10);
        assert!(r.is_complete());
        check_quasi_iso(&r);
    }
}
