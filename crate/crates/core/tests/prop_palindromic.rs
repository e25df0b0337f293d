mod common;

use common::strategies::{matrix, nonzero_rational, rational};
use proptest::prelude::*;
use riordan_core::palindromic::{
    closed_form_entry, construct, criterion_bivariate_swap, criterion_columns_equal_diagonals, extract_params,
    is_palindromic, kim_params, kim_to_params, row_poly_recurrence, row_poly_recurrence_long, KimParams,
    PalindromicParams,
};

const N: usize = 8;

fn params() -> impl Strategy<Value = PalindromicParams> {
    (nonzero_rational(), nonzero_rational(), rational()).prop_map(|(a, b, c)| PalindromicParams::new(a, b, c).unwrap())
}

proptest! {
    #[test]
    fn constructed_rows_are_palindromes(p in params()) {
        let m = construct(&p, N).unwrap();
        for row in m.rows() {
            prop_assert!(row.iter().eq(row.iter().rev()));
        }
        prop_assert_eq!(extract_params(&m).unwrap(), p);
    }

    #[test]
    fn criteria_agree(m in matrix(5)) {
        let a = is_palindromic(&m, 5).unwrap().is_palindromic();
        prop_assert_eq!(a, criterion_columns_equal_diagonals(&m, 5).unwrap());
        prop_assert_eq!(a, criterion_bivariate_swap(&m, 5).unwrap());
    }

    #[test]
    fn counterexample_is_a_real_asymmetry(m in matrix(6)) {
        let check = is_palindromic(&m, 6).unwrap();
        if let Some((n, k)) = check.counterexample {
            prop_assert_ne!(&m.rows()[n][k], &m.rows()[n][n - k]);
        }
    }

    #[test]
    fn closed_form_and_recurrences(p in params()) {
        let m = construct(&p, N).unwrap();
        for n in 0..N {
            for k in 0..=n {
                prop_assert_eq!(&closed_form_entry(&p, n, k).value, &m.rows()[n][k]);
            }
            prop_assert!(closed_form_entry(&p, n, n + 1).above_diagonal);
        }
        let rec = row_poly_recurrence(&p, N);
        let long = row_poly_recurrence_long(&p, N);
        for n in 0..N {
            prop_assert_eq!(rec[n].coeffs(), &m.rows()[n][..]);
            prop_assert_eq!(long[n].coeffs(), &m.rows()[n][..]);
        }
    }

    #[test]
    fn kim_round_trips(p in params(), d0 in nonzero_rational(), h1 in nonzero_rational(), h2 in rational()) {
        prop_assert_eq!(kim_to_params(&kim_params(&p)), p.clone());
        let k = KimParams::new(d0, h1, h2).unwrap();
        prop_assert_eq!(kim_params(&kim_to_params(&k)), k.clone());
        prop_assert_eq!(k.matrix(N).unwrap().to_dense(), construct(&kim_to_params(&k), N).unwrap().to_dense());
    }
}
