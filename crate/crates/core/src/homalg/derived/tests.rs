use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::*;
use crate::exactnum::int;
use crate::gen;
use crate::homalg::complex::tests::ladder_two_term;

const Q: FieldSpec = FieldSpec::Rationals;

fn ladder(d: usize) -> Arc<PresentedAlgebra> {
    Arc::new(PresentedAlgebra::koszul_ladder(Q, d).unwrap())
}

fn min_polys(x: &BoundedComplex, phi: &ChainMap) -> BTreeMap<i64, Poly> {
    x.cohomology_degrees()
        .into_iter()
        .map(|q| (q, min_poly(Q, &induced_on_cohomology(x, phi, q).comps)))
        .collect()
}

#[test]
fn triangular_algebra_for_small_ladders() {
    for d in 1..=4 {
        let r = ladder_triangular_check(Q, d).unwrap();
        assert!(r.holds(), "d = {d}: {r:?}");
        assert_eq!(r.dims[&0], d * (d + 1) / 2);
    }
}

#[test]
fn derived_end_of_module_is_ext_algebra() {
    let a = ladder(3);
    let s = AModule::simple(a.clone(), 2).unwrap();
    let end = derived_end(&BoundedComplex::single(&s, 0), Some(3)).unwrap();
    assert_eq!(end.dims(), BTreeMap::from([(0, 1), (1, 0), (2, 0), (3, 0)]));
    let id = end.identity().unwrap();
    assert_eq!(end.compose((0, &id), (0, &id)).unwrap(), id);
    let dn = Arc::new(PresentedAlgebra::dual_numbers(Q).unwrap());
    let k = AModule::simple(dn, 0).unwrap();
    let end = derived_end(&BoundedComplex::single(&k, 0), Some(4)).unwrap();
    assert!(end.dims().values().all(|&d| d == 1));
    let table = end.multiplication_table().unwrap();
    assert!(table.iter().all(|(_, _, c)| c.iter().any(|x| !x.is_zero())));
}

#[test]
fn min_poly_of_simple_operators() {
    let j = Matrix::from_i64(Q, &[&[2, 1], &[0, 2]]);
    let p = min_poly(Q, &[j.clone(), Matrix::from_i64(Q, &[&[3]])]);
    // (T - 2)² (T - 3)
    let expected = Poly::linear_root(Q, int(2)).mul(&Poly::linear_root(Q, int(2))).mul(&Poly::linear_root(Q, int(3)));
    assert_eq!(p, expected);
    assert_eq!(min_poly(Q, &[]), Poly::one(Q));
}

#[test]
fn chain_endomorphisms_are_chain_maps() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..20 {
        let x = gen::random_complex(&mut rng, &ladder(3), 3, 2);
        for f in chain_endomorphisms(&x) {
            assert!(x.is_chain_map(&x, &f.into_iter().collect::<Vec<_>>()));
        }
    }
}

#[test]
fn ladder_two_term_is_not_split() {
    let x = ladder_two_term();
    let r = is_splittable(&x).unwrap();
    assert!(!r.splittable);
    assert_eq!(r.obstruction_degree, Some(0));
    assert!(!scindage_criterion(&x).unwrap());
    assert!(is_splittable(&x.split_form()).unwrap().splittable);
}

#[test]
fn ladder_two_term_endomorphisms_act_by_one_scalar() {
    let x = ladder_two_term();
    let basis = chain_endomorphisms(&x);
    assert!(!basis.is_empty());
    for f in &basis {
        let h0 = induced_on_cohomology(&x, f, 0);
        let h1 = induced_on_cohomology(&x, f, 1);
        assert_eq!(h0.comps[0].get(0, 0), h1.comps[2].get(0, 0));
    }
    // With equal scalars the polynomials can never be comaximal.
    let phi = basis[0].iter().map(|(k, m)| (*k, m.scale(&int(3)))).collect::<ChainMap>();
    let polys = min_polys(&x, &phi);
    let r = actionphi_split(&x, &phi, &polys).unwrap();
    assert!(r.annihilation);
    assert!(!r.comaximal);
    assert!(r.splitting.is_none());
}

#[test]
fn dual_numbers_complex_is_not_split() {
    let x = dual_numbers_complex(Q).unwrap();
    assert_eq!(x.cohomology_degrees(), vec![0, 1]);
    assert!(!is_splittable(&x).unwrap().splittable);
    assert!(!scindage_criterion(&x).unwrap());
}

#[test]
fn criterion_implies_splittable_on_corpus() {
    let mut rng = ChaCha8Rng::seed_from_u64(77);
    let mut positive = 0;
    let mut nonsplit = 0;
    for i in 0..200 {
        let d = 2 + i % 3;
        let len = 1 + (i / 3) % 3;
        let x = gen::random_complex(&mut rng, &ladder(d), len, 3);
        let crit = scindage_criterion(&x).unwrap();
        let r = is_splittable(&x).unwrap();
        if crit {
            positive += 1;
            assert!(r.splittable, "case {i}");
        }
        if r.splittable {
            let id: ChainMap = (x.lo()..=x.hi()).map(|k| (k, ModMap::identity(&x.term(k)))).collect();
            assert!(verify_phi_splitting(&x, &id, r.witness.as_ref().unwrap()).unwrap(), "case {i}");
        } else {
            nonsplit += 1;
        }
    }
    assert!(positive >= 50, "only {positive} complexes met the criterion");
    let _ = nonsplit;
}

#[test]
fn split_complex_with_distinct_scalars() {
    let x = ladder_sum_complex(Q, 3).unwrap();
    let phi: ChainMap = (0..3).map(|k| (k, ModMap::identity(&x.term(k)).scale(&int(k + 1)))).collect();
    let polys: BTreeMap<i64, Poly> = (0..3).map(|k| (k, Poly::linear_root(Q, int(k + 1)))).collect();
    let r = actionphi_split(&x, &phi, &polys).unwrap();
    assert!(r.comaximal);
    let s = r.splitting.unwrap();
    assert!(s.unique);
    for k in 0..3 {
        // The obvious splitting: the augmentation itself.
        let px = ProjReplacement::new(&x, -1);
        assert_eq!(s.alpha[&k].compose(&ModMap::identity(&px.term(k).module)), px.eps(k));
    }
    assert!(verify_phi_splitting(&x, &phi, &s.alpha).unwrap());
}

#[test]
fn wrong_polynomial_is_a_precondition_failure() {
    let x = ladder_sum_complex(Q, 2).unwrap();
    let phi: ChainMap = (0..2).map(|k| (k, ModMap::identity(&x.term(k)).scale(&int(2)))).collect();
    let polys = BTreeMap::from([(0, Poly::linear_root(Q, int(1)))]);
    assert!(matches!(actionphi_split(&x, &phi, &polys), Err(Error::Precondition(_))));
    let two_term = ladder_two_term();
    let not_chain = BTreeMap::from([(0, ModMap::identity(&two_term.term(0)))]);
    assert!(matches!(actionphi_split(&two_term, &not_chain, &BTreeMap::new()), Err(Error::Precondition(_))));
}

#[test]
fn nilpotent_action_is_null_homotopic() {
    let mut rng = ChaCha8Rng::seed_from_u64(31);
    let mut checked = 0;
    for _ in 0..80 {
        let x = gen::random_complex(&mut rng, &ladder(3), 3, 3);
        let degs = x.cohomology_degrees();
        if degs.is_empty() {
            continue;
        }
        let phi = gen::random_ghost(&mut rng, &x);
        if phi.values().all(ModMap::is_zero) {
            continue;
        }
        let polys: BTreeMap<i64, Poly> =
            degs.iter().map(|&q| (q, Poly::monomial(Q, x.cohomology(q).module.total_dim()))).collect();
        let r = actionphi_split(&x, &phi, &polys).unwrap();
        assert!(r.annihilation);
        checked += 1;
    }
    assert!(checked >= 10, "only {checked} nonzero ghost maps");
}

#[test]
fn actionphi_on_random_instances() {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let mut instances = 0;
    let mut split = 0;
    while instances < 100 {
        let d = rng.gen_range(2..=3);
        let len = rng.gen_range(1..=3);
        let x = gen::random_complex(&mut rng, &ladder(d), len, 3);
        if x.cohomology_degrees().is_empty() {
            continue;
        }
        let phi = gen::random_chain_endo(&mut rng, &x);
        let polys = min_polys(&x, &phi);
        let r = actionphi_split(&x, &phi, &polys).unwrap();
        assert!(r.annihilation);
        if let Some(s) = &r.splitting {
            assert!(s.unique);
            assert!(verify_phi_splitting(&x, &phi, &s.alpha).unwrap());
            split += 1;
        } else {
            assert!(!r.comaximal);
        }
        instances += 1;
    }
    assert!(split >= 20, "only {split} comaximal instances");
}
