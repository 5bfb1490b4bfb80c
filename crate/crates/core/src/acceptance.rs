//! The twelve acceptance criteria, each with its time limit. Shared by the
//! `acceptance` test target and `weilmono suite acceptance`.

use std::collections::BTreeMap;
use std::sync::Arc;
use std::time::{Duration, Instant};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::exactnum::{int, rat, FieldSpec, Poly, QMonomial};
use crate::filtration::{check_monodromy_properties, monodromy_filtration, mw_check};
use crate::gen;
use crate::homalg::{
    actionphi_split, dual_numbers_complex, ext_dims, induced_on_cohomology, is_splittable, ladder_triangular_check,
    min_poly, poset_cochain_complex, scindage_criterion, simplex_chain_complex, verify_phi_splitting,
    yoneda_compose, AModule, ChainMap, ExtElement, ModMap, PosetSystem, PresentedAlgebra, SimplexSystem,
};
use crate::semistable::{
    apartment, apartment_check, bn_betti, connected_multigraphs, corner_complexes, mumford_from_graph, nnonnul_check,
    QPoly, SemistableConfig,
};
use crate::wd::{change_frobenius, ext_ladder_to_wd, is_isomorphic, langlands_twist, make_tau, sp, SubsetI};

const Q: FieldSpec = FieldSpec::Rationals;

pub struct Criterion {
    pub id: u8,
    pub name: &'static str,
    pub limit: Duration,
    run: fn() -> Result<String>,
}

#[derive(Debug, Clone)]
pub struct Outcome {
    pub id: u8,
    pub name: &'static str,
    pub passed: bool,
    pub elapsed: Duration,
    pub limit: Duration,
    /// Counts on success, the first failure otherwise.
    pub detail: String,
}

impl Outcome {
    pub fn line(&self) -> String {
        format!(
            "criterion {:>2} {:<34} {} ({:.2}s / {}s) {}",
            self.id,
            self.name,
            if self.passed { "PASS" } else { "FAIL" },
            self.elapsed.as_secs_f64(),
            self.limit.as_secs(),
            self.detail
        )
    }
}

impl Criterion {
    pub fn run(&self) -> Outcome {
        let start = Instant::now();
        let res = (self.run)();
        let elapsed = start.elapsed();
        let (passed, detail) = match res {
            Ok(d) if elapsed < self.limit => (true, d),
            Ok(d) => (false, format!("{d}; over the time limit")),
            Err(e) => (false, e.to_string()),
        };
        Outcome { id: self.id, name: self.name, passed, elapsed, limit: self.limit, detail }
    }
}

pub fn criteria() -> Vec<Criterion> {
    let c = |id, name, secs, run| Criterion { id, name, limit: Duration::from_secs(secs), run };
    vec![
        c(1, "tau validity", 5, tau_validity),
        c(2, "duality law", 5, duality_law),
        c(3, "Frobenius-lift independence", 10, frobenius_lift),
        c(4, "Ext ladder realization", 5, ladder_realization),
        c(5, "monodromy filtration", 30, monodromy),
        c(6, "monodromy-weight equivalence", 30, mw_equivalence),
        c(7, "Ext ladder over the ladder algebra", 60, ext_ladder_algebra),
        c(8, "splitting lemmas", 120, splitting),
        c(9, "corners and monodromy", 30, corners),
        c(10, "apartment", 10, apartment_lemma),
        c(11, "B^n recursion", 10, bn_recursion),
        c(12, "poset machinery", 20, posets),
    ]
}

pub fn run_all() -> Vec<Outcome> {
    criteria().iter().map(Criterion::run).collect()
}

fn check(cond: bool, msg: impl FnOnce() -> String) -> Result<()> {
    if cond {
        Ok(())
    } else {
        Err(Error::Invariant(msg()))
    }
}

fn tau_validity() -> Result<String> {
    let mut count = 0;
    for d in 1..=6 {
        for i in SubsetI::all(d)? {
            make_tau(&i).check_monod()?;
            count += 1;
        }
    }
    Ok(format!("{count} subsets"))
}

fn duality_law() -> Result<String> {
    let mut count = 0;
    for d in 1..=5 {
        let tw = langlands_twist(d);
        for i in SubsetI::all(d)? {
            let lhs = make_tau(&i).twist(&tw).dual();
            let rhs = make_tau(&i.bar()).twist(&tw);
            check(is_isomorphic(&lhs, &rhs), || format!("duality fails for {i}"))?;
            count += 1;
        }
    }
    Ok(format!("{count} subsets"))
}

fn frobenius_lift() -> Result<String> {
    let mut rng = ChaCha8Rng::seed_from_u64(0xF20B);
    let qs = [int(2), int(3), int(5), rat(1, 2), rat(2, 3), int(-3)];
    for _ in 0..50 {
        let d = rng.gen_range(1..=4);
        let all = SubsetI::all(d)?;
        let i = all.choose(&mut rng).expect("nonempty");
        let a = rat(rng.gen_range(-6..=6), rng.gen_range(1..=4));
        let q = qs.choose(&mut rng).expect("nonempty");
        let tau = make_tau(i);
        let out = change_frobenius(&tau, &a, q)?;
        check(is_isomorphic(&out, &tau), || format!("class changed for I = {i}, a = {a}, q = {q}"))?;
    }
    Ok("50 triples".into())
}

fn ladder_realization() -> Result<String> {
    let mut count = 0;
    for d in 1..=5 {
        for i in SubsetI::all(d)? {
            let target = make_tau(&i).twist(&QMonomial::norm_power(2 * (d as i64 - 1)));
            check(is_isomorphic(&ext_ladder_to_wd(&i)?, &target), || format!("ladder for {i}"))?;
            count += 1;
        }
    }
    Ok(format!("{count} subsets"))
}

fn monodromy() -> Result<String> {
    let mut rng = ChaCha8Rng::seed_from_u64(0x3013);
    for k in 0..500 {
        let n = gen::random_nilpotent(&mut rng, 1 + k % 8);
        let m = monodromy_filtration(&n)?;
        check(check_monodromy_properties(&n, &m, 0).both(), || format!("instance {k}"))?;
    }
    let mut mutated = 0;
    while mutated < 50 {
        let dim = rng.gen_range(2..=8);
        let n = gen::random_nilpotent(&mut rng, dim);
        let m = monodromy_filtration(&n)?;
        if let Some((k, bad)) = m.mutate(&mut rng) {
            check(!check_monodromy_properties(&n, &bad, 0).both(), || format!("mutation at index {k} survived"))?;
            mutated += 1;
        }
    }
    Ok("500 filtrations, 50 mutations rejected".into())
}

fn mw_equivalence() -> Result<String> {
    let mut rng = ChaCha8Rng::seed_from_u64(0x3036);
    let mut holds = 0;
    for _ in 0..500 {
        let rep = gen::random_rep(&mut rng, 8, true);
        let j = rng.gen_range(-3..=8);
        // Disagreement between the two forms surfaces as an invariant error.
        if mw_check(&rep, j)?.holds {
            holds += 1;
        }
    }
    for d in 1..=6 {
        check(mw_check(&sp(d, &QMonomial::unit())?, d as i64 - 1)?.holds, || format!("Sp({d}) in degree {}", d - 1))?;
    }
    Ok(format!("500 reps ({holds} pure of the tested weight), Sp(1..6)"))
}

fn ext_ladder_algebra() -> Result<String> {
    for d in 1..=5 {
        let a = Arc::new(PresentedAlgebra::koszul_ladder(Q, d)?);
        let s: Vec<AModule> = (0..d).map(|v| AModule::simple(a.clone(), v)).collect::<Result<_>>()?;
        for i in 0..d {
            for j in 0..d {
                let dims = ext_dims(&s[i], &s[j], d)?;
                let expect: Vec<usize> = (0..=d).map(|k| usize::from(j + k == i)).collect();
                check(dims == expect, || format!("d={d}: Ext(S_{i}, S_{j}) = {dims:?}"))?;
            }
        }
        let gens: Vec<ExtElement> = (1..d).map(|i| ExtElement::basis(&s[i], &s[i - 1], 1, 0)).collect::<Result<_>>()?;
        // Products along the whole ladder, from the top simple down.
        let mut acc = gens.last().cloned();
        for g in gens.iter().rev().skip(1) {
            let p = yoneda_compose(acc.as_ref().expect("nonempty"), g)?;
            check(!p.is_zero(), || format!("d={d}: ladder product of degree {} vanished", p.degree))?;
            acc = Some(p);
        }
        let tri = ladder_triangular_check(Q, d)?;
        check(tri.holds(), || format!("d={d}: derived endomorphisms {tri:?}"))?;
    }
    Ok("d = 1..5".into())
}

fn splitting() -> Result<String> {
    let ladders: Vec<Arc<PresentedAlgebra>> =
        (2..=4).map(|d| PresentedAlgebra::koszul_ladder(Q, d).map(Arc::new)).collect::<Result<_>>()?;
    let mut rng = ChaCha8Rng::seed_from_u64(0x5C1D);
    let mut positive = 0;
    for k in 0..200 {
        let x = gen::random_complex(&mut rng, &ladders[k % 3], 1 + (k / 3) % 3, 3);
        if scindage_criterion(&x)? {
            positive += 1;
            let r = is_splittable(&x)?;
            check(r.splittable, || format!("corpus complex {k} meets the criterion but does not split"))?;
            let id: ChainMap = (x.lo()..=x.hi()).map(|q| (q, ModMap::identity(&x.term(q)))).collect();
            let w = r.witness.as_ref().expect("splittable has a witness");
            check(verify_phi_splitting(&x, &id, w)?, || format!("corpus complex {k}: bad witness"))?;
        }
    }
    check(!is_splittable(&dual_numbers_complex(Q)?)?.splittable, || "k[x]/(x²) complex reported split".into())?;

    let mut instances = 0;
    let mut unique = 0;
    while instances < 100 {
        let (d, len) = (rng.gen_range(0..2), rng.gen_range(1..=3));
        let x = gen::random_complex(&mut rng, &ladders[d], len, 3);
        if x.cohomology_degrees().is_empty() {
            continue;
        }
        let phi = if instances % 4 == 3 { gen::random_ghost(&mut rng, &x) } else { gen::random_chain_endo(&mut rng, &x) };
        let polys: BTreeMap<i64, Poly> = x
            .cohomology_degrees()
            .into_iter()
            .map(|q| (q, min_poly(Q, &induced_on_cohomology(&x, &phi, q).comps)))
            .collect();
        let r = actionphi_split(&x, &phi, &polys)?;
        check(r.annihilation, || format!("instance {instances}: P(φ) not null-homotopic"))?;
        if r.comaximal {
            let s = r.splitting.as_ref().ok_or_else(|| Error::Invariant(format!("instance {instances}: no splitting")))?;
            check(s.unique && verify_phi_splitting(&x, &phi, &s.alpha)?, || format!("instance {instances}: splitting"))?;
            unique += 1;
        }
        instances += 1;
    }
    Ok(format!("{positive}/200 meet the criterion, 100 instances ({unique} comaximal)"))
}

fn corners() -> Result<String> {
    let graphs = connected_multigraphs(8);
    let mut configs = 0;
    for g in &graphs {
        let cfg = mumford_from_graph(g)?;
        if g.edges.is_empty() {
            continue;
        }
        let r = nnonnul_check(&cfg)?;
        check(r.equivalences_ok, || format!("{g:?}: {r:?}"))?;
        check(r.n_power_nonzero == (g.first_betti() > 0), || format!("{g:?}: N ≠ 0 iff the graph has a cycle"))?;
        check(r.ker_dim == g.first_betti(), || format!("{g:?}: kernel {} for genus {}", r.ker_dim, g.first_betti()))?;
        configs += 1;
    }
    for d in 2..=4 {
        let cfg = apartment(d)?.config()?;
        let r = nnonnul_check(&cfg)?;
        check(r.equivalences_ok, || format!("apartment d={d}: {r:?}"))?;
        configs += 1;
    }
    for n in 1..=4 {
        corner_complexes(&SemistableConfig::simplex(n)?)?;
        configs += 1;
    }
    Ok(format!("{} multigraph classes, {configs} configurations", graphs.len()))
}

fn apartment_lemma() -> Result<String> {
    let mut out = Vec::new();
    for d in 2..=4 {
        let c = apartment_check(d)?;
        let fact: usize = (1..=d).product();
        check(c.alcoves == fact, || format!("d={d}: {} alcoves", c.alcoves))?;
        check(c.in_kernel, || format!("d={d}: indicator not in the kernel"))?;
        check(c.self_pairing == fact as i64, || format!("d={d}: self pairing {}", c.self_pairing))?;
        check(c.bipartite && c.parity_is_sign, || format!("d={d}: coloring {c:?}"))?;
        out.push(format!("d={d}: {fact}"));
    }
    Ok(out.join(", "))
}

/// `#P²(F_q)` by counting nonzero vectors of `F_q³` up to scalars.
fn p2_points(q: i64) -> i64 {
    (q * q * q - 1) / (q - 1)
}

fn bn_recursion() -> Result<String> {
    let b1 = bn_betti(1).full();
    check(b1 == vec![QPoly::constant(1), QPoly::zero(), QPoly::constant(1)], || format!("h(B¹) = {b1:?}"))?;
    let h2 = bn_betti(2).degree(2);
    check(h2 == QPoly::new(vec![2, 1, 1]), || format!("h²(B²) = {h2}"))?;
    for q in [2, 3, 4, 5, 7, 8, 9] {
        check(h2.eval(q) == 1 + p2_points(q), || format!("h²(B²) at q = {q}"))?;
    }
    for n in 0..=6 {
        let b = bn_betti(n);
        check(b.is_palindromic(), || format!("B^{n} not palindromic"))?;
        let full = b.full();
        check(full.iter().skip(1).step_by(2).all(QPoly::is_zero), || format!("B^{n} has odd cohomology"))?;
    }
    Ok("n = 0..6".into())
}

fn posets() -> Result<String> {
    for e in 1..=6 {
        let c = simplex_chain_complex(&SimplexSystem::constant(Q, e, 1)?)?;
        check(c.is_acyclic(), || format!("|E| = {e}: not acyclic"))?;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0x9053);
    for k in 0..100 {
        let n = rng.gen_range(2..=8);
        let p = gen::random_poset_with_maximum(&mut rng, n);
        let dim = rng.gen_range(1..=2);
        check(poset_cochain_complex(&PosetSystem::constant(Q, p, dim))?.is_acyclic(), || format!("poset {k}"))?;
    }
    Ok("|E| = 1..6, 100 posets".into())
}
