mod common;

use betti_split::enumerate::{decompositions, splitting_probability, Kind, SampleMode};
use betti_split::format::{complex_to_json, parse_complex, parse_complex_auto, write_complex};
use betti_split::hochster::{alexander_dual_ideal, complex_from_ideal, graded_betti};
use betti_split::homology::reduced_betti_all;
use betti_split::splitting::{
    is_betti_splitting_direct, is_betti_splitting_recursive, is_homology_splitting,
    mayer_vietoris_maps_vanish,
};
use betti_split::{Field, SimplicialComplex, SparseIntMatrix};
use common::*;
use proptest::prelude::*;

fn complex_strategy(max_n: usize, max_facets: usize) -> impl Strategy<Value = SimplicialComplex> {
    (2..=max_n).prop_flat_map(move |n| {
        let facet = proptest::collection::btree_set(1..=n, 1..=n.min(4));
        proptest::collection::vec(facet, 1..=max_facets).prop_map(move |facets| {
            let lists: Vec<Vec<usize>> = facets
                .into_iter()
                .map(|f| f.into_iter().collect())
                .collect();
            SimplicialComplex::new(&lists, Some(n)).unwrap()
        })
    })
}

fn field_strategy() -> impl Strategy<Value = Field> {
    prop_oneof![Just(Field::Q), Just(Field::Prime(2)), Just(Field::Prime(3))]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn homology_agrees_with_oracle(c in complex_strategy(7, 7), field in field_strategy()) {
        let got = reduced_betti_all(&c, field);
        prop_assert_eq!(got.as_slice().to_vec(), oracle_betti(&c, field));
    }

    #[test]
    fn euler_characteristic(c in complex_strategy(8, 8), field in field_strategy()) {
        let f = c.f_vector();
        let chi: i64 = f.iter().enumerate().map(|(i, &x)| if i % 2 == 1 { x as i64 } else { -(x as i64) }).sum();
        prop_assert_eq!(reduced_betti_all(&c, field).alternating_sum(), chi);
    }

    #[test]
    fn graded_table_agrees_with_oracle(c in complex_strategy(6, 5), field in field_strategy()) {
        let table = graded_betti(&c, field);
        let oracle = oracle_graded_betti(&c, field);
        for (i, row) in oracle.iter().enumerate() {
            for (j, &v) in row.iter().enumerate() {
                prop_assert_eq!(table.graded(i as isize, j as isize), v);
            }
        }
    }

    #[test]
    fn splitting_checks_are_consistent(c in complex_strategy(6, 6), field in field_strategy()) {
        prop_assume!(c.facet_count() >= 2);
        for d in decompositions(&c).unwrap() {
            let direct = is_betti_splitting_direct(&c, &d, field).unwrap().verdict;
            let recursive = is_betti_splitting_recursive(&c, &d, field).unwrap().verdict;
            let hom = is_homology_splitting(&c, &d, field).unwrap().verdict;
            let mv = mayer_vietoris_maps_vanish(&c, &d, field).unwrap().verdict;
            prop_assert_eq!(direct, recursive);
            prop_assert_eq!(hom, mv);
            prop_assert!(!direct || hom);
        }
    }

    #[test]
    fn betti_probability_below_homology(c in complex_strategy(6, 6), field in field_strategy()) {
        prop_assume!(c.facet_count() >= 2);
        let b = splitting_probability(&c, field, Kind::Betti, SampleMode::Exact, 20).unwrap();
        let h = splitting_probability(&c, field, Kind::Homology, SampleMode::Exact, 20).unwrap();
        prop_assert_eq!(b.total, h.total);
        prop_assert!(b.hits <= h.hits);
    }

    #[test]
    fn dual_round_trip(c in complex_strategy(8, 6)) {
        prop_assume!(c.facets().iter().all(|f| f.len() < c.n()));
        let ideal = alexander_dual_ideal(&c).unwrap();
        prop_assert_eq!(complex_from_ideal(&ideal).unwrap(), c);
    }

    #[test]
    fn text_and_json_round_trip(c in complex_strategy(10, 8)) {
        prop_assert_eq!(&parse_complex(&write_complex(&c)).unwrap(), &c);
        prop_assert_eq!(&parse_complex_auto(&complex_to_json(&c).to_string()).unwrap(), &c);
    }

    #[test]
    fn sparse_rank_agrees_with_dense(
        rows in 1usize..9,
        cols in 1usize..9,
        seed in proptest::collection::vec(-3i64..=3, 81),
        field in field_strategy(),
    ) {
        let m: Vec<Vec<i64>> = (0..rows).map(|r| (0..cols).map(|c| seed[r * 9 + c]).collect()).collect();
        prop_assert_eq!(SparseIntMatrix::from_dense(&m).rank(field), dense_rank(&m, field));
    }
}
