use std::collections::BTreeMap;

use num_traits::Zero;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::*;
use crate::exactnum::{int, rat, Scalar};
use crate::gen;

fn qm(c: i64, m: i64) -> QMonomial {
    QMonomial::new(int(c), m).unwrap()
}

fn s(d: u32, xs: &[u32]) -> SubsetI {
    SubsetI::new(d, xs).unwrap()
}

fn summ(c: i64, m: i64, length: usize) -> IndecompSummand {
    IndecompSummand { start_tag: qm(c, m), length }
}

/// Oracle for partial-permutation nilpotents: follow `N` from each basis
/// vector that is not hit, counting chain lengths.
fn chain_oracle(rep: &WDRep) -> Vec<IndecompSummand> {
    let d = rep.dim();
    let n = rep.n();
    let target = |j: usize| (0..d).find(|&i| !n.get(i, j).is_zero());
    let hit: Vec<bool> = (0..d).map(|i| (0..d).any(|j| !n.get(i, j).is_zero())).collect();
    let mut out = Vec::new();
    for top in 0..d {
        if hit[top] {
            continue;
        }
        let (mut cur, mut len) = (top, 1);
        while let Some(next) = target(cur) {
            cur = next;
            len += 1;
        }
        out.push(IndecompSummand { start_tag: rep.tags()[cur].clone(), length: len });
    }
    out.sort();
    out
}

/// Ungraded Jordan type of a nilpotent from its rank sequence.
fn jordan_type(n: &Matrix) -> Vec<usize> {
    let dim = n.rows();
    let mut ranks = vec![dim];
    let mut p = Matrix::identity(n.field(), dim);
    for _ in 0..=dim {
        p = p.mul(n);
        ranks.push(p.rank());
    }
    ranks.push(0);
    let mut sizes = Vec::new();
    for k in 1..=dim {
        let count = ranks[k - 1] + ranks[k + 1] - 2 * ranks[k];
        sizes.extend(std::iter::repeat_n(k, count));
    }
    sizes.sort();
    sizes
}

fn lengths(v: &[IndecompSummand]) -> Vec<usize> {
    let mut l: Vec<usize> = v.iter().map(|s| s.length).collect();
    l.sort();
    l
}

#[test]
fn tau_small_cases() {
    let t1 = make_tau(&s(1, &[]));
    assert_eq!(t1.dim(), 1);
    assert_eq!(t1.tags(), &[qm(1, 0)]);
    assert!(t1.n().is_zero());

    let t2 = make_tau(&s(2, &[]));
    assert_eq!(t2.n(), &Matrix::from_i64(FieldSpec::Rationals, &[&[0, 1], &[0, 0]]));
    assert_eq!(t2.tags(), &[qm(1, 0), qm(1, 2)]);
    assert_eq!(decompose(&t2), vec![summ(1, 0, 2)]);

    assert_eq!(decompose(&make_tau(&s(3, &[1]))), vec![summ(1, 0, 2), summ(1, 4, 1)]);
    assert_eq!(decompose(&make_tau(&s(4, &[]))), vec![summ(1, 0, 4)]);
    assert_eq!(decompose(&make_tau(&s(4, &[2]))), vec![summ(1, 0, 2), summ(1, 4, 2)]);
}

#[test]
fn tau_satisfies_monod_and_matches_chain_oracle() {
    for d in 1..=6 {
        for i in SubsetI::all(d).unwrap() {
            let t = make_tau(&i);
            t.check_monod().unwrap();
            assert_eq!(decompose(&t), chain_oracle(&t), "{i}");
            assert!(is_isomorphic(&assemble(&decompose(&t)), &t));
        }
    }
}

#[test]
fn sp_examples() {
    assert_eq!(sp(1, &QMonomial::unit()).unwrap(), WDRep::line(QMonomial::unit()));
    for d in 1..=5 {
        assert!(is_isomorphic(&sp(d as usize, &QMonomial::unit()).unwrap(), &make_tau(&s(d, &[]))));
    }
    let sp2 = sp(2, &QMonomial::unit()).unwrap();
    assert!(is_isomorphic(&sp2.dual(), &sp(2, &qm(1, -2)).unwrap()));
    assert!(sp(0, &QMonomial::unit()).is_err());
}

#[test]
fn tensor_examples() {
    let sp2 = sp(2, &QMonomial::unit()).unwrap();
    let t = sp2.tensor(&sp2);
    assert_eq!(lengths(&decompose(&t)), vec![1, 3]);
    assert_eq!(lengths(&decompose(&t)), jordan_type(t.n()));
    let line = WDRep::line(QMonomial::unit());
    for i in SubsetI::all(4).unwrap() {
        let tau = make_tau(&i);
        assert!(is_isomorphic(&tau.tensor(&line), &tau));
    }
}

#[test]
fn duality_law_with_norm_character() {
    for d in 1..=5 {
        let tw = langlands_twist(d);
        for i in SubsetI::all(d).unwrap() {
            let lhs = make_tau(&i).twist(&tw).dual();
            let rhs = make_tau(&i.bar()).twist(&tw);
            assert!(is_isomorphic(&lhs, &rhs), "{i}");
        }
    }
}

#[test]
fn duality_law_fails_with_positive_twist_sign() {
    for d in 2..=5 {
        let tw = QMonomial::t_pow(d as i64 - 1);
        for i in SubsetI::all(d).unwrap() {
            let lhs = make_tau(&i).twist(&tw).dual();
            let rhs = make_tau(&i.bar()).twist(&tw);
            assert!(!is_isomorphic(&lhs, &rhs), "{i}");
        }
    }
}

#[test]
fn taus_are_pairwise_distinct() {
    for d in 1..=5 {
        let all = SubsetI::all(d).unwrap();
        for a in &all {
            for b in &all {
                assert_eq!(is_isomorphic(&make_tau(a), &make_tau(b)), a == b);
            }
        }
    }
}

#[test]
fn isomorphism_survives_blockwise_base_change() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..40 {
        let rep = gen::random_rep(&mut rng, 7, false);
        let g: BTreeMap<QMonomial, Matrix> =
            rep.blocks().into_iter().map(|(t, k)| (t, gen::random_invertible(&mut rng, k))).collect();
        let conj = rep.conjugate_blocks(&g).unwrap();
        conj.check_monod().unwrap();
        assert!(is_isomorphic(&rep, &conj));
        assert_eq!(lengths(&decompose(&rep)), jordan_type(rep.n()));
    }
}

#[test]
fn sp2_is_not_two_lines() {
    let sp2 = sp(2, &QMonomial::unit()).unwrap();
    let lines = sp(1, &QMonomial::unit()).unwrap().direct_sum(&sp(1, &qm(1, 2)).unwrap());
    assert_eq!(sp2.blocks(), lines.blocks());
    assert!(!is_isomorphic(&sp2, &lines));
}

#[test]
fn zero_n_decomposes_into_lines() {
    let mut blocks = BTreeMap::new();
    blocks.insert(QMonomial::unit(), 2);
    let rep = WDRep::from_blocks(&blocks, &BTreeMap::new()).unwrap();
    assert_eq!(decompose(&rep), vec![summ(1, 0, 1), summ(1, 0, 1)]);
}

#[test]
fn rejects_non_lowering_n() {
    let n = Matrix::from_i64(FieldSpec::Rationals, &[&[0, 1], &[0, 0]]);
    assert!(WDRep::from_graded(vec![qm(1, 2), qm(1, 0)], n.clone()).is_err());
    assert!(WDRep::from_graded(vec![qm(1, 0), qm(1, 2)], n).is_ok());
}

#[test]
fn evaluation_examples() {
    let sp2 = sp(2, &QMonomial::unit()).unwrap();
    let q = int(5);
    assert_eq!(evaluate_at(&sp2, 0, &int(0), Some(&q)).unwrap(), Matrix::identity(FieldSpec::Rationals, 2));
    assert_eq!(
        evaluate_at(&sp2, 1, &int(0), Some(&q)).unwrap(),
        Matrix::from_i64(FieldSpec::Rationals, &[&[1, 0], &[0, 5]])
    );
    assert_eq!(
        evaluate_at(&sp2, 0, &int(1), Some(&q)).unwrap(),
        Matrix::from_i64(FieldSpec::Rationals, &[&[1, 1], &[0, 1]])
    );
    let formal = evaluate_formal(&sp2, 1, &int(0));
    assert_eq!(formal.entries[1][1], Some(qm(1, 2)));
    assert!(matches!(evaluate_at(&sp2, 1, &int(0), None), Err(Error::NeedsNumericQ(_))));
    let unram = WDRep::line(qm(3, 0));
    assert_eq!(*evaluate_at(&unram, 2, &int(0), None).unwrap().get(0, 0), int(9));
}

#[test]
fn cocycle_identity_on_random_pairs() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    use rand::Rng;
    let q = int(4);
    for _ in 0..100 {
        let rep = gen::random_rep(&mut rng, 5, false);
        let (n1, n2) = (rng.gen_range(-3..=3), rng.gen_range(-3..=3));
        let (a1, a2) = (rat(rng.gen_range(-5..=5), rng.gen_range(1..=4)), rat(rng.gen_range(-5..=5), rng.gen_range(1..=4)));
        assert!(check_cocycle(&rep, &q, (n1, &a1), (n2, &a2)).unwrap());
    }
}

#[test]
fn cocycle_fails_with_inverse_power() {
    let rep = sp(2, &QMonomial::unit()).unwrap();
    let q = int(4);
    let lhs = evaluate_at(&rep, 0, &int(1), Some(&q)).unwrap().mul(&evaluate_at(&rep, 1, &int(0), Some(&q)).unwrap());
    let wrong = evaluate_at(&rep, 1, &rat(1, 4), Some(&q)).unwrap();
    assert_ne!(lhs, wrong);
}

#[test]
fn change_frobenius_examples() {
    let sp3 = sp(3, &QMonomial::unit()).unwrap();
    assert_eq!(change_frobenius(&sp3, &int(0), &int(4)).unwrap(), sp3);
    let out = change_frobenius(&sp3, &int(1), &int(4)).unwrap();
    assert!(is_isomorphic(&out, &sp3));
    assert!(matches!(change_frobenius(&sp3, &int(1), &int(1)), Err(Error::Invalid(_))));
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    use rand::Rng;
    for d in 1..=4 {
        for i in SubsetI::all(d).unwrap() {
            let a = rat(rng.gen_range(-6..=6), rng.gen_range(1..=3));
            let q = [int(2), int(3), int(4), rat(1, 3)][rng.gen_range(0..4)].clone();
            assert!(is_isomorphic(&change_frobenius(&make_tau(&i), &a, &q).unwrap(), &make_tau(&i)));
        }
    }
}

#[test]
fn change_frobenius_rejects_colliding_tags() {
    let rep = WDRep::line(qm(4, 0)).direct_sum(&WDRep::line(qm(1, 2)));
    assert!(matches!(change_frobenius(&rep, &int(1), &int(4)), Err(Error::Precondition(_))));
}

#[test]
fn ext_ladder_examples() {
    for d in 1..=5 {
        for i in SubsetI::all(d).unwrap() {
            let ladder = ext_ladder_to_wd(&i).unwrap();
            ladder.check_monod().unwrap();
        }
    }
    let full = ext_ladder_to_wd(&SubsetI::empty(4).unwrap()).unwrap();
    assert_eq!(decompose(&full), vec![summ(1, -6, 4)]);
    let none = ext_ladder_to_wd(&SubsetI::full(4).unwrap()).unwrap();
    assert!(none.n().is_zero());
    let mut expected: Vec<QMonomial> = (0..4).map(|i| qm(1, -2 * i)).collect();
    expected.sort();
    assert_eq!(none.tags(), expected.as_slice());
    let normalized: Vec<QMonomial> = normalize_ladder(&none).tags().to_vec();
    assert_eq!(normalized, (0..4).map(|i| qm(1, 2 * i)).collect::<Vec<_>>());
    ext_ladder_to_wd(&s(4, &[1, 3])).unwrap();
}

fn arb_rep() -> impl Strategy<Value = WDRep> {
    (any::<u64>(), 1usize..=6).prop_map(|(seed, dim)| gen::random_rep(&mut ChaCha8Rng::seed_from_u64(seed), dim, false))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn dual_is_an_involution(rep in arb_rep()) {
        prop_assert!(is_isomorphic(&rep.dual().dual(), &rep));
        rep.dual().check_monod().unwrap();
    }

    #[test]
    fn decompose_is_additive(a in arb_rep(), b in arb_rep()) {
        let mut union = decompose(&a);
        union.extend(decompose(&b));
        union.sort();
        prop_assert_eq!(decompose(&a.direct_sum(&b)), union);
    }

    #[test]
    fn tensor_distributes(a in arb_rep(), b in arb_rep(), c in arb_rep()) {
        let lhs = a.tensor(&b.direct_sum(&c));
        let rhs = a.tensor(&b).direct_sum(&a.tensor(&c));
        lhs.check_monod().unwrap();
        prop_assert!(is_isomorphic(&lhs, &rhs));
    }

    #[test]
    fn reassembly_recovers_input(a in arb_rep()) {
        prop_assert!(is_isomorphic(&assemble(&decompose(&a)), &a));
        let total: usize = decompose(&a).iter().map(|s| s.length).sum();
        prop_assert_eq!(total, a.dim());
    }

    #[test]
    fn qmonomial_group_laws(c1 in 1i64..5, m1 in -4i64..4, c2 in -4i64..-1, m2 in -4i64..4, k in -3i64..3) {
        let x = QMonomial::new(Scalar::from_integer(c1.into()), m1).unwrap();
        let y = QMonomial::new(Scalar::from_integer(c2.into()), m2).unwrap();
        prop_assert_eq!(x.mul(&y), y.mul(&x));
        prop_assert_eq!(x.mul(&x.inv()), QMonomial::unit());
        prop_assert_eq!(x.mul(&y).pow(k), x.pow(k).mul(&y.pow(k)));
        prop_assert_eq!(x.mul(&y).mul(&x), x.mul(&y.mul(&x)));
    }
}
