use std::sync::Arc;

use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use weilmono_cli::codec::*;
use weilmono_core::filtration::monodromy_filtration;
use weilmono_core::semistable::{bn_betti, mumford_from_graph, Multigraph};
use weilmono_core::wd::decompose;
use weilmono_core::{gen, FieldSpec, Filtration, Matrix, PresentedAlgebra, QMonomial, Subspace};

fn field_strategy() -> impl Strategy<Value = FieldSpec> {
    prop_oneof![Just(FieldSpec::Rationals), Just(FieldSpec::Prime(2)), Just(FieldSpec::Prime(7))]
}

fn reparse<T: serde::Serialize + for<'de> serde::Deserialize<'de>>(x: &T) -> T {
    let text = serde_json::to_string(x).unwrap();
    serde_json::from_str(&text).unwrap()
}

fn random_filtration(rng: &mut ChaCha8Rng, f: FieldSpec, n: usize) -> Filtration {
    let mut m = Matrix::zeros(f, n, n);
    for r in 0..n {
        for c in 0..n {
            m.set(r, c, f.from_i64(rng.gen_range(-4..=4)));
        }
    }
    let rows = m.to_rows();
    let mut cut: Vec<usize> = (0..3).map(|_| rng.gen_range(0..=n)).collect();
    cut.sort();
    let subs = cut.iter().chain(std::iter::once(&n)).map(|&k| Subspace::span(f, n, &rows[..k])).collect();
    Filtration::new(f, n, rng.gen_range(-3..=3), subs).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn scalars_round_trip(f in field_strategy(), a in -50i64..50, b in 1i64..20) {
        let x = match f {
            FieldSpec::Rationals => weilmono_core::exactnum::rat(a, b),
            _ => f.from_i64(a),
        };
        let j = ScalarJson::encode(&x);
        prop_assert_eq!(reparse(&j).decode(f).unwrap(), x);
    }

    #[test]
    fn tags_round_trip(c in 1i64..9, d in 1i64..9, neg in any::<bool>(), m in -6i64..6) {
        let t = QMonomial::new(weilmono_core::exactnum::rat(if neg { -c } else { c }, d), m).unwrap();
        prop_assert_eq!(reparse(&TagJson::encode(&t)).decode().unwrap(), t);
    }

    #[test]
    fn reps_round_trip(seed in any::<u64>(), unit in any::<bool>()) {
        let rep = gen::random_rep(&mut ChaCha8Rng::seed_from_u64(seed), 5, unit);
        let back = reparse(&WdRepJson::encode(&rep)).decode().unwrap();
        prop_assert_eq!(&back, &rep);
        for s in decompose(&rep) {
            prop_assert_eq!(reparse(&SummandJson::encode(&s)).decode().unwrap(), s);
        }
    }

    #[test]
    fn filtrations_round_trip(f in field_strategy(), seed in any::<u64>(), n in 1usize..5) {
        let filt = random_filtration(&mut ChaCha8Rng::seed_from_u64(seed), f, n);
        prop_assert_eq!(reparse(&FiltrationJson::encode(&filt, true)).decode().unwrap(), filt);
    }

    #[test]
    fn monodromy_filtrations_round_trip(seed in any::<u64>(), n in 1usize..6) {
        let nil = gen::random_nilpotent(&mut ChaCha8Rng::seed_from_u64(seed), n);
        let m = monodromy_filtration(&nil).unwrap();
        prop_assert_eq!(reparse(&FiltrationJson::encode(&m, true)).decode().unwrap(), m);
    }

    #[test]
    fn modules_and_complexes_round_trip(seed in any::<u64>(), d in 1usize..=4, len in 1usize..4) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let alg = Arc::new(PresentedAlgebra::koszul_ladder(FieldSpec::Rationals, d).unwrap());
        let m = gen::random_module(&mut rng, &alg, 3);
        let mj = ModuleJson::encode(&m);
        prop_assert_eq!(ModuleJson::encode(&reparse(&mj).decode(&alg).unwrap()), mj);

        let x = gen::random_complex(&mut rng, &alg, len, 2);
        let xj = ComplexJson::encode(&x);
        let back = reparse(&xj).decode().unwrap();
        prop_assert_eq!(ComplexJson::encode(&back), xj);

        let phi = gen::random_chain_endo(&mut rng, &x);
        let pj = encode_chain_map(&phi);
        prop_assert_eq!(decode_chain_map(&reparse(&pj), &back).unwrap(), phi);
    }

    #[test]
    fn configs_round_trip(v in 1usize..5, raw in prop::collection::vec((0usize..5, 0usize..5), 0..6)) {
        let mut edges: Vec<(usize, usize)> = (1..v).map(|i| (i - 1, i)).collect();
        edges.extend(raw.into_iter().map(|(a, b)| (a % v, b % v)).filter(|(a, b)| a != b));
        let cfg = mumford_from_graph(&Multigraph::new(v, edges).unwrap()).unwrap();
        prop_assert_eq!(reparse(&ConfigJson::encode(&cfg)).decode().unwrap(), cfg);
    }

    #[test]
    fn betti_round_trips(n in 0usize..8) {
        let b = bn_betti(n);
        prop_assert_eq!(reparse(&BettiJson::encode(&b)).decode().unwrap(), b);
    }
}

#[test]
fn presets_decode() {
    for p in [json!({"preset": "ladder", "d": 3}), json!({"preset": "dual_numbers", "field": "F_3"}), json!({"preset": "semisimple", "d": 2})] {
        let a: AlgebraJson = from_value(p, "algebra").unwrap();
        let alg = a.decode().unwrap();
        let again: AlgebraJson = from_value(to_value(&AlgebraJson::encode(&alg)), "algebra").unwrap();
        assert_eq!(again.decode().unwrap().n_vertices(), alg.n_vertices());
    }
}

#[test]
fn malformed_inputs_are_rejected() {
    let bad: Vec<(Value, &str)> = vec![
        (json!({"blocks": [{"c": "0", "m": 0, "dim": 1}]}), "zero eigenvalue"),
        (json!({"blocks": [{"c": "1", "m": 0, "dim": 1}], "extra": 1}), "unknown field"),
        (json!({"blocks": [{"c": "1.5", "m": 0, "dim": 1}]}), "float string"),
        (json!({"blocks": [{"c": "1", "m": 0, "dim": 1}, {"c": "1", "m": 2, "dim": 1}],
                "N": [{"from_tag": {"c": "1", "m": 0}, "matrix": [["1"]]}]}), "N leaving the blocks"),
    ];
    for (v, why) in bad {
        let parsed: anyhow::Result<WdRepJson> = from_value(v, "rep");
        assert!(parsed.and_then(|j| j.decode()).is_err(), "{why} accepted");
    }
    assert!(decode_field("F_4").is_err());
    assert!(decode_field("R").is_err());
    assert!(from_value::<BettiJson>(json!({"h": [1, 1, 1]}), "betti").unwrap().decode().is_err());
    assert!(from_value::<ConfigJson>(json!({"n": 1, "components": 1}), "cfg").unwrap().decode().is_err());
}
