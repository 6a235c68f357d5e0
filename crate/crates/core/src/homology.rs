//! Reduced simplicial homology over a field.
//!
//! The chain complex is augmented: `C_{-1}` is spanned by the empty face and
//! `∂_0` sends every vertex to it, so `β̃_{-1}` comes out of the same rank
//! formula as every other degree.

use std::sync::OnceLock;

use dashmap::DashMap;
use serde::Serialize;

use crate::complex::{Face, SimplicialComplex};
use crate::exactla::{Field, SparseIntMatrix};

/// Faces per dimension plus the signed boundary matrices.
#[derive(Clone, Debug)]
pub struct ChainComplexData {
    /// `bases[k + 1]` lists the `k`-faces in lexicographic order.
    bases: Vec<Vec<Face>>,
    /// `boundaries[k]` is `∂_k : C_k → C_{k-1}` for `k = 0..=dim`.
    boundaries: Vec<SparseIntMatrix>,
}

impl ChainComplexData {
    pub fn new(complex: &SimplicialComplex) -> Self {
        let bases = complex.faces_by_dim();
        let mut boundaries = Vec::with_capacity(bases.len().saturating_sub(1));
        for k in 1..bases.len() {
            let lower = &bases[k - 1];
            let columns = bases[k]
                .iter()
                .map(|face| {
                    let mut col: Vec<(usize, i64)> = face
                        .boundary_faces()
                        .enumerate()
                        .map(|(i, g)| {
                            let row = lower.binary_search(&g).expect("boundary face present");
                            (row, if i % 2 == 0 { 1 } else { -1 })
                        })
                        .collect();
                    col.sort_by_key(|e| e.0);
                    col
                })
                .collect();
            boundaries.push(SparseIntMatrix::from_columns(bases[k - 1].len(), columns));
        }
        ChainComplexData { bases, boundaries }
    }

    /// Top dimension (`-1` for `{∅}`).
    pub fn dim(&self) -> isize {
        self.bases.len() as isize - 2
    }

    /// Basis of `C_k`; empty outside `[-1, dim]`.
    pub fn basis(&self, k: isize) -> &[Face] {
        if k < -1 || k > self.dim() {
            &[]
        } else {
            &self.bases[(k + 1) as usize]
        }
    }

    /// `∂_k`, or `None` when `k` is outside `[0, dim]`.
    pub fn boundary(&self, k: isize) -> Option<&SparseIntMatrix> {
        if k < 0 || k > self.dim() {
            None
        } else {
            Some(&self.boundaries[k as usize])
        }
    }

    fn boundary_rank(&self, k: isize, field: Field) -> usize {
        self.boundary(k).map_or(0, |m| m.rank(field))
    }

    /// `β̃_k = dim C_k − rank ∂_k − rank ∂_{k+1}`.
    pub fn reduced_betti(&self, k: isize, field: Field) -> usize {
        if k < -1 || k > self.dim() {
            return 0;
        }
        self.basis(k).len() - self.boundary_rank(k, field) - self.boundary_rank(k + 1, field)
    }

    /// All reduced Betti numbers, computing each boundary rank once.
    pub fn reduced_betti_all(&self, field: Field) -> BettiNumbers {
        let ranks: Vec<usize> = self.boundaries.iter().map(|m| m.rank(field)).collect();
        let rank = |k: isize| -> usize {
            if k < 0 || k as usize >= ranks.len() {
                0
            } else {
                ranks[k as usize]
            }
        };
        let values = (-1..=self.dim())
            .map(|k| self.basis(k).len() - rank(k) - rank(k + 1))
            .collect();
        BettiNumbers(values)
    }
}

/// Reduced Betti numbers `β̃_{-1}, β̃_0, …, β̃_dim`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(transparent)]
pub struct BettiNumbers(Vec<usize>);

impl BettiNumbers {
    pub fn from_vec(values: Vec<usize>) -> Self {
        BettiNumbers(values)
    }

    /// `β̃_k`, zero outside the stored range.
    pub fn get(&self, k: isize) -> usize {
        if k < -1 {
            return 0;
        }
        self.0.get((k + 1) as usize).copied().unwrap_or(0)
    }

    /// Values indexed from `k = -1`.
    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    /// Highest stored degree.
    pub fn top(&self) -> isize {
        self.0.len() as isize - 2
    }

    /// `Σ (−1)^k β̃_k` over `k ≥ -1`.
    pub fn alternating_sum(&self) -> i64 {
        self.0
            .iter()
            .enumerate()
            .map(|(i, &b)| if i % 2 == 1 { b as i64 } else { -(b as i64) })
            .sum()
    }
}

type CacheKey = (Field, usize, Box<[Face]>);

const CACHE_LIMIT: usize = 1 << 18;

fn cache() -> &'static DashMap<CacheKey, BettiNumbers> {
    static CACHE: OnceLock<DashMap<CacheKey, BettiNumbers>> = OnceLock::new();
    CACHE.get_or_init(DashMap::new)
}

/// Drops every memoized homology result.
pub fn clear_cache() {
    cache().clear();
}

/// All reduced Betti numbers of `complex`, memoized per (facet list, field).
pub fn reduced_betti_all(complex: &SimplicialComplex, field: Field) -> BettiNumbers {
    let key: CacheKey = (field, complex.n(), complex.facets().into());
    if let Some(hit) = cache().get(&key) {
        return hit.clone();
    }
    let value = compute_betti(complex, field);
    let cache = cache();
    if cache.len() >= CACHE_LIMIT {
        cache.clear();
    }
    cache.insert(key, value.clone());
    value
}

/// Same as [`reduced_betti_all`] without touching the cache; meant for the
/// many one-off subcomplexes produced by decomposition scans.
pub fn reduced_betti_all_uncached(complex: &SimplicialComplex, field: Field) -> BettiNumbers {
    compute_betti(complex, field)
}

fn compute_betti(complex: &SimplicialComplex, field: Field) -> BettiNumbers {
    // cheap closed forms before building any matrix
    if complex.is_irrelevant() {
        return BettiNumbers(vec![1]);
    }
    if complex.facet_count() == 1 {
        return BettiNumbers(vec![0; (complex.dim() + 2) as usize]);
    }
    if complex.dim() == 0 {
        return BettiNumbers(vec![0, complex.facet_count() - 1]);
    }
    ChainComplexData::new(complex).reduced_betti_all(field)
}

/// `β̃_k(Δ; field)`; zero for `k > dim Δ` and `k < -1`.
pub fn reduced_betti(complex: &SimplicialComplex, k: isize, field: Field) -> usize {
    reduced_betti_all(complex, field).get(k)
}

/// True iff every `β̃_k`, `k ≥ 0`, vanishes. `{∅}` is not acyclic in this sense
/// only through `β̃_{-1}`, which is ignored here.
pub fn is_acyclic(complex: &SimplicialComplex, field: Field) -> bool {
    let b = reduced_betti_all(complex, field);
    (0..=b.top()).all(|k| b.get(k) == 0)
}
