mod common;

use betti_split::hochster::graded_betti;
use betti_split::homology::reduced_betti_all;
use betti_split::{corpus, Face, Field, SparseIntMatrix};
use common::*;

const FIELDS: [Field; 4] = [Field::Q, Field::Prime(2), Field::Prime(3), Field::Prime(5)];

#[test]
fn oracle_ranks_on_known_matrices() {
    let m = vec![vec![1, 1], vec![1, -1]];
    assert_eq!(dense_rank_q(&m), 2);
    assert_eq!(dense_rank_p(&m, 2), 1);
    let singular = vec![vec![1, 2, 3], vec![4, 5, 6], vec![7, 8, 9]];
    assert_eq!(dense_rank_q(&singular), 2);
    assert_eq!(dense_rank_p(&singular, 3), 1);
}

#[test]
fn homology_matches_oracle_on_corpus() {
    for name in corpus::list() {
        let c = corpus::load(name).unwrap().complex;
        for field in FIELDS {
            assert_eq!(
                reduced_betti_all(&c, field).as_slice(),
                oracle_betti(&c, field).as_slice(),
                "{name} over {field}"
            );
        }
    }
}

#[test]
fn graded_betti_matches_oracle_on_corpus() {
    for name in [
        "rp2",
        "s2",
        "s3",
        "paper-ex-2-3",
        "three-triangles",
        "torus7",
    ] {
        let c = corpus::load(name).unwrap().complex;
        for field in [Field::Q, Field::Prime(2)] {
            let table = graded_betti(&c, field);
            let oracle = oracle_graded_betti(&c, field);
            for (i, row) in oracle.iter().enumerate() {
                for (j, &v) in row.iter().enumerate() {
                    assert_eq!(
                        table.graded(i as isize, j as isize),
                        v,
                        "{name} {field} ({i},{j})"
                    );
                }
            }
        }
    }
}

#[test]
fn links_match_oracle() {
    let c = corpus::load("klein").unwrap().complex;
    for face in c.faces() {
        let vs: Vec<usize> = face.vertices().collect();
        assert_eq!(
            c.link(face).unwrap(),
            oracle_link(&c, &vs).unwrap(),
            "link of {face}"
        );
    }
    let missing = Face::from_vertices([1, 2, 3, 4]).unwrap();
    assert!(c.link(missing).is_err());
    assert!(oracle_link(&c, &[1, 2, 3, 4]).is_none());
}

#[test]
fn sparse_rank_on_structured_matrices() {
    // i64 overflow forces the arbitrary precision path
    let big = 3_000_000_007i64;
    let m = vec![
        vec![big, big - 1, 7],
        vec![big - 2, big, 11],
        vec![5, 3, big],
    ];
    let sparse = SparseIntMatrix::from_dense(&m);
    for field in [
        Field::Q,
        Field::Prime(2),
        Field::Prime(65537),
        Field::Prime(2_147_483_647),
    ] {
        assert_eq!(sparse.rank(field), dense_rank(&m, field), "{field}");
    }
}
