//! Slow, independent reference implementations used to check the library.
#![allow(dead_code, clippy::needless_range_loop)]

use std::collections::BTreeSet;

use betti_split::{Field, SimplicialComplex};
use num_rational::BigRational;
use num_traits::{One, Zero};

/// Rank by textbook Gaussian elimination over ℚ with exact rationals.
pub fn dense_rank_q(m: &[Vec<i64>]) -> usize {
    let mut a: Vec<Vec<BigRational>> = m
        .iter()
        .map(|row| {
            row.iter()
                .map(|&x| BigRational::from_integer(x.into()))
                .collect()
        })
        .collect();
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..rows).find(|&r| !a[r][c].is_zero()) else {
            continue;
        };
        a.swap(rank, p);
        let inv = BigRational::one() / a[rank][c].clone();
        for r in 0..rows {
            if r != rank && !a[r][c].is_zero() {
                let factor = a[r][c].clone() * inv.clone();
                for k in c..cols {
                    let sub = factor.clone() * a[rank][k].clone();
                    a[r][k] -= sub;
                }
            }
        }
        rank += 1;
    }
    rank
}

/// Rank by Gaussian elimination modulo a prime `p`.
pub fn dense_rank_p(m: &[Vec<i64>], p: u64) -> usize {
    let p = p as i128;
    let mut a: Vec<Vec<i128>> = m
        .iter()
        .map(|row| row.iter().map(|&x| (x as i128).rem_euclid(p)).collect())
        .collect();
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let inverse = |x: i128| -> i128 {
        // Fermat
        let (mut base, mut e, mut acc) = (x, p - 2, 1i128);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base % p;
            }
            base = base * base % p;
            e >>= 1;
        }
        acc
    };
    let mut rank = 0;
    for c in 0..cols {
        let Some(piv) = (rank..rows).find(|&r| a[r][c] != 0) else {
            continue;
        };
        a.swap(rank, piv);
        let inv = inverse(a[rank][c]);
        for r in 0..rows {
            if r != rank && a[r][c] != 0 {
                let f = a[r][c] * inv % p;
                for k in c..cols {
                    a[r][k] = (a[r][k] - f * a[rank][k]).rem_euclid(p);
                }
            }
        }
        rank += 1;
    }
    rank
}

pub fn dense_rank(m: &[Vec<i64>], field: Field) -> usize {
    match field {
        Field::Rationals => dense_rank_q(m),
        Field::Prime(p) => dense_rank_p(m, p as u64),
    }
}

/// All faces as sorted vertex lists, generated from the facets by brute force.
pub fn all_faces(complex: &SimplicialComplex) -> BTreeSet<Vec<usize>> {
    let mut out = BTreeSet::new();
    for facet in complex.facet_lists() {
        let k = facet.len();
        for bits in 0u64..(1 << k) {
            out.insert(
                (0..k)
                    .filter(|i| bits >> i & 1 == 1)
                    .map(|i| facet[i])
                    .collect(),
            );
        }
    }
    out
}

/// Reduced Betti numbers from `k = −1` through dense boundary matrices.
pub fn oracle_betti(complex: &SimplicialComplex, field: Field) -> Vec<usize> {
    let faces = all_faces(complex);
    let top = faces.iter().map(Vec::len).max().unwrap_or(0);
    let by_size: Vec<Vec<Vec<usize>>> = (0..=top)
        .map(|s| faces.iter().filter(|f| f.len() == s).cloned().collect())
        .collect();
    // ranks[s] = rank of the boundary from faces of size s to size s − 1
    let mut ranks = vec![0; top + 2];
    for s in 1..=top {
        let rows = &by_size[s - 1];
        let cols = &by_size[s];
        let mut m = vec![vec![0i64; cols.len()]; rows.len()];
        for (c, face) in cols.iter().enumerate() {
            for drop in 0..face.len() {
                let mut g = face.clone();
                g.remove(drop);
                let r = rows.binary_search(&g).expect("boundary face present");
                m[r][c] = if drop % 2 == 0 { 1 } else { -1 };
            }
        }
        ranks[s] = dense_rank(&m, field);
    }
    (0..=top)
        .map(|s| by_size[s].len() - ranks[s] - ranks[s + 1])
        .collect()
}

/// Link of a face given as a vertex list, by brute force over all faces.
pub fn oracle_link(complex: &SimplicialComplex, face: &[usize]) -> Option<SimplicialComplex> {
    let faces = all_faces(complex);
    if !faces.contains(face) {
        return None;
    }
    let link: Vec<Vec<usize>> = faces
        .iter()
        .filter(|g| g.iter().all(|v| !face.contains(v)))
        .filter(|g| {
            let mut u: Vec<usize> = g.iter().chain(face).copied().collect();
            u.sort();
            faces.contains(&u)
        })
        .cloned()
        .collect();
    Some(SimplicialComplex::new(&link, Some(complex.n())).expect("link is a complex"))
}

/// `β_{i,j}(I*_Δ)` for `0 ≤ i, j ≤ n` by summing link homology over faces.
pub fn oracle_graded_betti(complex: &SimplicialComplex, field: Field) -> Vec<Vec<usize>> {
    let n = complex.n();
    let mut table = vec![vec![0; n + 1]; n + 1];
    for face in all_faces(complex) {
        let j = n - face.len();
        let link = oracle_link(complex, &face).unwrap();
        let betti = oracle_betti(&link, field);
        // betti[k + 1] = β̃_k; β_{i,j} collects β̃_{i−1}, i.e. betti[i]
        for (i, &b) in betti.iter().enumerate() {
            if i <= n {
                table[i][j] += b;
            }
        }
    }
    table
}

pub fn cx(facets: &[&[usize]], n: usize) -> SimplicialComplex {
    let lists: Vec<Vec<usize>> = facets.iter().map(|f| f.to_vec()).collect();
    SimplicialComplex::new(&lists, Some(n)).unwrap()
}
