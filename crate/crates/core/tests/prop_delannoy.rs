use proptest::prelude::*;
use riordan_core::delannoy::{
    canonicalize, delannoy_number, enumerate_paths, equivalence_classes, path_weight, weight_by_classes,
    weight_closed, weight_recursive, PathWord,
};
use riordan_core::poly::WeightPoly;
use riordan_core::rational::rat;
use riordan_core::Rational;

fn pair() -> impl Strategy<Value = (Rational, Rational)> {
    ((-3i64..=3, 1i64..=3), (-3i64..=3, 1i64..=3)).prop_map(|((p, q), (r, s))| (rat(p, q), rat(r, s)))
}

fn word() -> impl Strategy<Value = PathWord> {
    prop::collection::vec(prop::sample::select(vec!['H', 'V', 'D']), 0..10)
        .prop_map(|s| PathWord::new(&s.into_iter().collect::<String>()).unwrap())
}

proptest! {
    #[test]
    fn weights_are_symmetric_and_evaluators_agree(n in 0usize..6, m in 0usize..6, (a, b) in pair()) {
        let w = weight_closed(n, m, &a, &b);
        prop_assert_eq!(&w, &weight_closed(m, n, &a, &b));
        prop_assert_eq!(&w, &weight_recursive(n, m, &a, &b));
        prop_assert_eq!(&w, &weight_by_classes(n, m, &a, &b).unwrap());
    }

    #[test]
    fn symbolic_weight_specializes(n in 0usize..6, m in 0usize..6, (a, b) in pair()) {
        let poly = weight_closed(n, m, &WeightPoly::a(), &WeightPoly::b());
        prop_assert_eq!(poly.eval(&a, &b), weight_closed(n, m, &a, &b));
    }

    #[test]
    fn canonical_form_is_a_class_invariant(w in word()) {
        let rep = canonicalize(&w);
        prop_assert_eq!(rep.endpoint(), w.endpoint());
        prop_assert_eq!(canonicalize(&rep.word()), rep.clone());
        // Swapping any adjacent HV stays in the class.
        let s = w.as_str();
        if let Some(i) = s.find("HV") {
            let swapped = format!("{}VH{}", &s[..i], &s[i + 2..]);
            prop_assert_eq!(canonicalize(&PathWord::new(&swapped).unwrap()), rep.clone());
        }
        let one = rat(1, 1);
        prop_assert_eq!(path_weight(&w, &one, &one), one);
    }

    #[test]
    fn classes_partition_the_paths(n in 0usize..5, m in 0usize..5) {
        let paths = enumerate_paths(n, m).unwrap();
        prop_assert_eq!(num_bigint::BigInt::from(paths.len()), delannoy_number(n, m));
        let classes = equivalence_classes(n, m);
        let total: num_bigint::BigInt = classes.iter().map(|c| c.class_size()).sum();
        prop_assert_eq!(total, delannoy_number(n, m));
        for p in &paths {
            prop_assert!(classes.contains(&canonicalize(p)));
        }
    }
}
