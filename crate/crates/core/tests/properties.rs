mod common;

use std::collections::BTreeMap;
use std::sync::Arc;

use proptest::prelude::*;

use common::*;
use quivercalc::io::{parse_quiver, parse_rep, parse_root, quiver_to_json, rep_to_json, root_to_json};
use quivercalc::linalg::{Field, Matrix, PrimeField, Rationals};
use quivercalc::order::poset_filtration;
use quivercalc::quiver::{QuiverSpec, Subquiver};
use quivercalc::reflection::{phi_minus, phi_plus};
use quivercalc::rep::{decompose, direct_sum, is_isomorphic, AnyRepresentation, Representation, Window};
use quivercalc::roots::{
    enumerate_positive_roots, indecomposable_from_root, is_positive_definite, tits_form_limit, tits_value, ExtendedInt,
    RootVector,
};

/// A random finite Dynkin quiver: vertex i > 0 hangs off some earlier
/// vertex, and trees that are not positive definite are dropped.
fn tree_strategy() -> impl Strategy<Value = Arc<QuiverSpec>> {
    (1usize..7)
        .prop_flat_map(|n| (Just(n), proptest::collection::vec((any::<prop::sample::Index>(), any::<bool>()), n - 1)))
        .prop_map(|(n, parents)| {
            let mut b = QuiverSpec::builder("T");
            for i in 0..n {
                b = b.vertex(&format!("v{i}"));
            }
            for (i, (p, out)) in parents.iter().enumerate() {
                let (child, parent) = (format!("v{}", i + 1), format!("v{}", p.index(i + 1)));
                b = if *out {
                    b.arrow(&format!("e{i}"), &parent, &child)
                } else {
                    b.arrow(&format!("e{i}"), &child, &parent)
                };
            }
            Arc::new(b.build().unwrap())
        })
        .prop_filter("Dynkin", |s| is_positive_definite(s).positive_definite)
}

fn small_rep(spec: Arc<QuiverSpec>, dims: Vec<usize>, entries: Vec<i64>) -> Representation<Rationals> {
    let window = Window::full(spec, 0);
    let mut it = entries.into_iter().cycle();
    let maps = window
        .arrows()
        .iter()
        .map(|a| {
            let (r, c) = (dims[a.target], dims[a.source]);
            let data = (0..r * c).map(|_| Rationals.from_i64(it.next().unwrap_or(0))).collect();
            Matrix::from_data(&Rationals, r, c, data)
        })
        .collect();
    Representation::new(&Rationals, window, dims, maps).unwrap()
}

fn rep_strategy() -> impl Strategy<Value = Representation<Rationals>> {
    tree_strategy().prop_flat_map(|spec| {
        let n = spec.vertices.len();
        (Just(spec), proptest::collection::vec(0usize..3, n), proptest::collection::vec(-2i64..=2, 1..24))
            .prop_map(|(s, d, e)| small_rep(s, d, e))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn quiver_documents_round_trip(spec in tree_strategy(), prefix in "[oi]{0,4}", tail in prop::bool::ANY) {
        let mut b = QuiverSpec::builder("R").vertices(&spec.vertices.iter().map(String::as_str).collect::<Vec<_>>());
        for a in &spec.arrows {
            b = b.arrow(&a.id, &a.source, &a.target);
        }
        let with_ray = b.ray("r", "v0", &prefix, if tail { 'o' } else { 'i' }).build().unwrap();
        for s in [(*spec).clone(), with_ray] {
            let back = parse_quiver(&quiver_to_json(&s).to_string()).unwrap();
            prop_assert_eq!(back, s);
        }
    }

    #[test]
    fn root_documents_round_trip(a in 0i64..3, b in 0i64..3, t in 0i64..3) {
        let spec = a_inf_inf();
        let n = RootVector::from_pairs(spec.clone(), &[("0", a), ("r#2", b)], &[("s", t)]).unwrap();
        let back = parse_root(&spec, &root_to_json(&n).to_string()).unwrap();
        prop_assert_eq!(back, n);
    }

    #[test]
    fn rep_documents_round_trip(v in rep_strategy()) {
        let text = rep_to_json(&v).to_string();
        match parse_rep(&text, None).unwrap() {
            AnyRepresentation::Rational(back) => prop_assert!(back == v),
            AnyRepresentation::Prime(_) => prop_assert!(false, "field changed"),
        }
    }

    #[test]
    fn prime_field_reps_round_trip(entries in proptest::collection::vec(0i64..7, 6)) {
        let f = PrimeField::new(7).unwrap();
        let spec = path(3, &[true, false]);
        let window = Window::full(spec, 0);
        let m = |k: usize| Matrix::from_data(&f, 2, 1, vec![f.from_i64(entries[k]), f.from_i64(entries[k + 1])]);
        let v = Representation::new(&f, window, vec![1, 2, 1], vec![m(0), m(2)]).unwrap();
        match parse_rep(&rep_to_json(&v).to_string(), None).unwrap() {
            AnyRepresentation::Prime(back) => prop_assert!(back == v),
            AnyRepresentation::Rational(_) => prop_assert!(false, "field changed"),
        }
    }

    /// On a finite quiver the limit is the value on the whole quiver, and any
    /// full subquiver containing the support sees the same value.
    #[test]
    fn tits_restricts_to_finite_quivers(spec in tree_strategy(), labels in proptest::collection::vec(0i64..4, 6)) {
        let values: BTreeMap<String, i64> = spec.vertices.iter().cloned().zip(labels).collect();
        let n = RootVector::new(spec.clone(), values.clone(), BTreeMap::new()).unwrap();
        let whole = Subquiver::full(&spec, spec.vertices.iter().cloned()).unwrap();
        let q = tits_value(&n, &whole).unwrap();
        prop_assert_eq!(tits_form_limit(&n), ExtendedInt::Finite(q));
        let supp: Vec<String> = values.iter().filter(|(_, x)| **x != 0).map(|(v, _)| v.clone()).collect();
        let sub = Subquiver::full(&spec, supp).unwrap();
        prop_assert_eq!(tits_value(&n, &sub).unwrap(), q);
    }

    #[test]
    fn reflection_is_an_involution_off_simples(spec in tree_strategy(), pick in any::<prop::sample::Index>()) {
        let roots = enumerate_positive_roots(&spec, 0).unwrap();
        let n = &roots[pick.index(roots.len())];
        let v = indecomposable_from_root(&Rationals, n).unwrap();
        for i in spec.vertices.iter().filter(|i| spec.is_sink(i).unwrap()) {
            let simple = v.dims_named().len() == 1 && v.dim(i) == Some(1);
            if simple {
                continue;
            }
            let back = phi_minus(&phi_plus(&v, i).unwrap(), i).unwrap();
            prop_assert!(is_isomorphic(&back, &v).unwrap());
        }
    }

    #[test]
    fn decompose_splits_direct_sums(spec in tree_strategy(), picks in proptest::collection::vec(any::<prop::sample::Index>(), 1..4)) {
        let roots = enumerate_positive_roots(&spec, 0).unwrap();
        let parts: Vec<_> = picks.iter().map(|p| indecomposable_from_root(&Rationals, &roots[p.index(roots.len())]).unwrap()).collect();
        let refs: Vec<_> = parts.iter().collect();
        let sum = direct_sum(&Rationals, parts[0].window(), &refs).unwrap();
        let d = decompose(&sum);
        prop_assert!(d.witness.is_isomorphism());
        prop_assert_eq!(d.summands.len(), parts.len());
    }

    #[test]
    fn decomposition_preserves_dimension(v in rep_strategy()) {
        let d = decompose(&v);
        prop_assert!(d.witness.is_isomorphism());
        let mut total = vec![0usize; v.dims().len()];
        for s in &d.summands {
            for (t, x) in total.iter_mut().zip(s.dims()) {
                *t += x;
            }
        }
        prop_assert_eq!(&total[..], v.dims());
    }

    #[test]
    fn filtration_is_monotone_and_audited(v in rep_strategy(), seed in any::<u64>()) {
        let f = poset_filtration(&v, seed).unwrap();
        prop_assert!(f.audit.passed(), "{:?}", f.audit);
        for c in &f.classes {
            for (below, at) in c.f_below_dims.iter().zip(&c.f_dims) {
                prop_assert!(below <= at);
            }
        }
    }
}
