//! Scans over all standard decompositions of a complex.
//!
//! Decomposition number `k` (for `0 ≤ k < 2^(m−1) − 1`) puts facet 0 and the
//! facets selected by the bits of `k` (shifted by one) into the first part, so
//! each unordered bipartition appears exactly once.

use std::fmt;

use num_rational::Ratio;
use petgraph::unionfind::UnionFind;
use rand::seq::index;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::complex::{Face, SimplicialComplex, StandardDecomposition};
use crate::error::{Error, Result};
use crate::exactla::Field;
use crate::homology::reduced_betti;
use crate::splitting::{
    essential_facets, is_betti_splitting_direct, is_betti_splitting_recursive,
    is_homology_splitting,
};

/// Default facet budget for exhaustive scans.
pub const DEFAULT_BUDGET: usize = 20;

/// Largest facet count whose decompositions can be enumerated.
pub const MAX_ENUMERATION_FACETS: usize = 63;

/// `2^(m−1) − 1`, the number of standard decompositions of a complex with `m` facets.
pub fn decomposition_count(m: usize) -> u64 {
    assert!(m <= 64, "at most 64 facets");
    if m < 2 {
        0
    } else {
        (1u64 << (m - 1)) - 1
    }
}

fn enumerable(complex: &SimplicialComplex) -> Result<usize> {
    let m = complex.facet_count();
    if m < 2 {
        return Err(Error::SingleFacet);
    }
    if m > MAX_ENUMERATION_FACETS {
        return Err(Error::TooManyFacets(m));
    }
    Ok(m)
}

fn nth(k: u64, m: usize) -> StandardDecomposition {
    StandardDecomposition::from_mask_unchecked(1 | (k << 1), m)
}

/// Deterministic stream of all standard decompositions.
#[derive(Clone, Debug)]
pub struct Decompositions {
    next: u64,
    end: u64,
    m: usize,
}

impl Iterator for Decompositions {
    type Item = StandardDecomposition;

    fn next(&mut self) -> Option<Self::Item> {
        (self.next < self.end).then(|| {
            self.next += 1;
            nth(self.next - 1, self.m)
        })
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let left = usize::try_from(self.end - self.next).unwrap_or(usize::MAX);
        (left, Some(left))
    }
}

pub fn decompositions(complex: &SimplicialComplex) -> Result<Decompositions> {
    let m = enumerable(complex)?;
    Ok(Decompositions {
        next: 0,
        end: decomposition_count(m),
        m,
    })
}

/// Result of a scan for a decomposition with a given property.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ScanResult {
    pub witness: Option<StandardDecomposition>,
    /// Decompositions examined (all of them when there is no witness).
    pub scanned: u64,
}

/// Facet masks of the vertices and edges of a 2-dimensional complex, used to
/// read off the graph `Δ₁ ∩ Δ₂` for each decomposition without building it.
struct SkeletonMasks {
    vertices: Vec<(usize, u64)>,
    edges: Vec<(usize, usize, u64)>,
}

impl SkeletonMasks {
    fn new(complex: &SimplicialComplex) -> Self {
        let facets = complex.facets();
        let mut vertices = Vec::new();
        for v in complex.vertex_support().vertices() {
            let mask = mask_of(facets, Face::singleton(v));
            vertices.push((v, mask));
        }
        let mut edges = Vec::new();
        for (a, &(u, _)) in vertices.iter().enumerate() {
            for &(v, _) in &vertices[a + 1..] {
                let mask = mask_of(facets, Face::singleton(u).union(Face::singleton(v)));
                if mask != 0 {
                    edges.push((u, v, mask));
                }
            }
        }
        SkeletonMasks { vertices, edges }
    }

    /// `β̃₁` of the intersection graph: `E − V + c`.
    fn cycle_rank(&self, part1: u64, part2: u64, n: usize) -> usize {
        let shared = |mask: u64| mask & part1 != 0 && mask & part2 != 0;
        let mut uf = UnionFind::<usize>::new(n + 1);
        let mut vertex_count = 0;
        for &(_, mask) in &self.vertices {
            vertex_count += usize::from(shared(mask));
        }
        if vertex_count == 0 {
            return 0;
        }
        let mut edge_count = 0;
        let mut merges = 0;
        for &(u, v, mask) in &self.edges {
            if shared(mask) {
                edge_count += 1;
                merges += usize::from(uf.union(u, v));
            }
        }
        let components = vertex_count - merges;
        edge_count + components - vertex_count
    }
}

fn mask_of(facets: &[Face], face: Face) -> u64 {
    facets
        .iter()
        .enumerate()
        .filter(|(_, f)| face.is_subset_of(**f))
        .fold(0, |acc, (i, _)| acc | 1 << i)
}

fn full_mask(m: usize) -> u64 {
    if m == 64 {
        u64::MAX
    } else {
        (1u64 << m) - 1
    }
}

/// `β̃_{d−1}(Δ₁ ∩ Δ₂)` computed through the general homology path.
fn intersection_betti(
    complex: &SimplicialComplex,
    decomposition: &StandardDecomposition,
    field: Field,
) -> usize {
    let (_, _, inter) = decomposition
        .pieces(complex)
        .expect("decomposition of this complex");
    reduced_betti(&inter, complex.dim() - 1, field)
}

/// Scans for the first decomposition with `β̃_{d−1}(Δ₁ ∩ Δ₂; field) = 0`,
/// `d = dim Δ ≥ 1`. Two-dimensional complexes take a union–find fast path.
pub fn is_trivially_decomposable(complex: &SimplicialComplex, field: Field) -> Result<ScanResult> {
    let d = complex.dim();
    if d < 1 {
        return Err(Error::DimensionTooSmall {
            required: 1,
            actual: d,
        });
    }
    let m = enumerable(complex)?;
    let total = decomposition_count(m);
    let found = if d == 2 {
        let masks = SkeletonMasks::new(complex);
        let full = full_mask(m);
        let n = complex.n();
        (0..total).into_par_iter().find_first(|&k| {
            let p1 = 1 | (k << 1);
            masks.cycle_rank(p1, full & !p1, n) == 0
        })
    } else {
        (0..total)
            .into_par_iter()
            .find_first(|&k| intersection_betti(complex, &nth(k, m), field) == 0)
    };
    Ok(match found {
        Some(k) => ScanResult {
            witness: Some(nth(k, m)),
            scanned: k + 1,
        },
        None => ScanResult {
            witness: None,
            scanned: total,
        },
    })
}

/// Same scan as [`is_trivially_decomposable`] but always through homology.
pub fn is_trivially_decomposable_general(
    complex: &SimplicialComplex,
    field: Field,
) -> Result<ScanResult> {
    let d = complex.dim();
    if d < 1 {
        return Err(Error::DimensionTooSmall {
            required: 1,
            actual: d,
        });
    }
    let m = enumerable(complex)?;
    let total = decomposition_count(m);
    let found = (0..total)
        .into_par_iter()
        .find_first(|&k| intersection_betti(complex, &nth(k, m), field) == 0);
    Ok(match found {
        Some(k) => ScanResult {
            witness: Some(nth(k, m)),
            scanned: k + 1,
        },
        None => ScanResult {
            witness: None,
            scanned: total,
        },
    })
}

/// `β̃_1` of `Δ₁ ∩ Δ₂` for a 2-dimensional complex, via union–find only.
pub fn intersection_cycle_rank(
    complex: &SimplicialComplex,
    decomposition: &StandardDecomposition,
) -> Result<usize> {
    if complex.dim() != 2 {
        return Err(Error::DimensionTooSmall {
            required: 2,
            actual: complex.dim(),
        });
    }
    decomposition.part1_facets(complex)?;
    let p1 = decomposition.mask();
    let p2 = full_mask(complex.facet_count()) & !p1;
    Ok(SkeletonMasks::new(complex).cycle_rank(p1, p2, complex.n()))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Kind {
    Betti,
    Homology,
    Facet,
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Kind::Betti => "betti",
            Kind::Homology => "homology",
            Kind::Facet => "facet",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum SampleMode {
    Exact,
    Sampled { size: u64, seed: u64 },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ProbabilityReport {
    pub kind: Kind,
    pub field: Field,
    pub mode: SampleMode,
    /// Size of the scanned population: all decompositions, all facets, or the sample.
    pub total: u64,
    pub hits: u64,
    #[serde(serialize_with = "ratio_string")]
    pub ratio: Ratio<u64>,
}

fn ratio_string<S: serde::Serializer>(
    r: &Ratio<u64>,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&r.to_string())
}

impl ProbabilityReport {
    pub fn as_f64(&self) -> f64 {
        *self.ratio.numer() as f64 / *self.ratio.denom() as f64
    }
}

/// Options for the exhaustive searches.
#[derive(Clone, Copy, Debug)]
pub struct ScanOptions {
    /// Largest facet count accepted by exact scans.
    pub budget: usize,
    /// Skip the Betti scan when a failed trivially-decomposable scan already
    /// rules out every splitting.
    pub prune: bool,
}

impl Default for ScanOptions {
    fn default() -> Self {
        ScanOptions {
            budget: DEFAULT_BUDGET,
            prune: true,
        }
    }
}

fn passes(
    complex: &SimplicialComplex,
    decomposition: &StandardDecomposition,
    field: Field,
    kind: Kind,
) -> bool {
    let hom = is_homology_splitting(complex, decomposition, field)
        .expect("decomposition of this complex")
        .verdict;
    // a Betti splitting is in particular a homology splitting, so the cheap
    // check filters out most decompositions before the graded tables are built
    match kind {
        Kind::Homology => hom,
        _ => {
            hom && is_betti_splitting_direct(complex, decomposition, field)
                .expect("decomposition of this complex")
                .verdict
        }
    }
}

/// Fraction of standard decompositions that are Betti (or homology) splittings.
pub fn splitting_probability(
    complex: &SimplicialComplex,
    field: Field,
    kind: Kind,
    mode: SampleMode,
    budget: usize,
) -> Result<ProbabilityReport> {
    if kind == Kind::Facet {
        return facet_splitting_probability(complex, field);
    }
    let m = enumerable(complex)?;
    let population = decomposition_count(m);
    let indices: Vec<u64> = match mode {
        SampleMode::Exact => {
            if m > budget {
                return Err(Error::BudgetExceeded { facets: m, budget });
            }
            (0..population).collect()
        }
        SampleMode::Sampled { size, seed } => {
            if size == 0 {
                return Err(Error::InvalidDecomposition(
                    "sample size must be positive".into(),
                ));
            }
            let amount = size.min(population) as usize;
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut picked: Vec<u64> = index::sample(&mut rng, population as usize, amount)
                .into_iter()
                .map(|i| i as u64)
                .collect();
            picked.sort_unstable();
            picked
        }
    };
    let total = indices.len() as u64;
    let hits = indices
        .par_iter()
        .filter(|&&k| passes(complex, &nth(k, m), field, kind))
        .count() as u64;
    Ok(ProbabilityReport {
        kind,
        field,
        mode,
        total,
        hits,
        ratio: Ratio::new(hits, total),
    })
}

/// Fraction of facets `F` for which `⟨G ≠ F⟩ ∪ ⟨F⟩` is a Betti splitting.
pub fn facet_splitting_probability(
    complex: &SimplicialComplex,
    field: Field,
) -> Result<ProbabilityReport> {
    enumerable(complex)?;
    let hits = complex
        .facets()
        .par_iter()
        .filter(|&&f| {
            let d = complex.remove_facet(f).expect("facet of this complex");
            passes(complex, &d, field, Kind::Betti)
        })
        .count() as u64;
    let total = complex.facet_count() as u64;
    Ok(ProbabilityReport {
        kind: Kind::Facet,
        field,
        mode: SampleMode::Exact,
        total,
        hits,
        ratio: Ratio::new(hits, total),
    })
}

/// Outcome of [`admits_betti_splitting`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExistenceReport {
    pub witness: Option<StandardDecomposition>,
    /// Non-existence was settled by the trivially-decomposable scan alone.
    pub pruned: bool,
    /// Decompositions put through a full Betti check.
    pub checked: u64,
}

/// Searches for a Betti splitting. Facet removals of essential top facets
/// are tried first, then every decomposition in counter order. A witness is
/// re-verified with the link-wise checker before it is returned.
pub fn admits_betti_splitting(
    complex: &SimplicialComplex,
    field: Field,
    options: ScanOptions,
) -> Result<ExistenceReport> {
    let m = enumerable(complex)?;
    if m > options.budget {
        return Err(Error::BudgetExceeded {
            facets: m,
            budget: options.budget,
        });
    }
    let d = complex.dim();
    if options.prune && d >= 2 && reduced_betti(complex, d, field) == 0 {
        // a homology splitting, hence any Betti splitting, forces a trivially
        // decomposable complex when top homology vanishes
        if is_trivially_decomposable(complex, field)?.witness.is_none() {
            return Ok(ExistenceReport {
                witness: None,
                pruned: true,
                checked: 0,
            });
        }
    }
    let mut checked = 0;
    let mut witness = None;
    for facet in essential_facets(complex, field) {
        let dec = complex.remove_facet(facet)?;
        checked += 1;
        if passes(complex, &dec, field, Kind::Betti) {
            witness = Some(dec);
            break;
        }
    }
    if witness.is_none() {
        let total = decomposition_count(m);
        let found = (0..total)
            .into_par_iter()
            .find_first(|&k| passes(complex, &nth(k, m), field, Kind::Betti));
        checked += found.map_or(total, |k| k + 1);
        witness = found.map(|k| nth(k, m));
    }
    if let Some(dec) = witness {
        if !is_betti_splitting_recursive(complex, &dec, field)?.verdict {
            return Err(Error::WitnessMismatch(format!(
                "part {:?} passes the graded check but fails link by link",
                dec.part1_indices()
            )));
        }
    }
    Ok(ExistenceReport {
        witness,
        pruned: false,
        checked,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cx(facets: &[&[usize]]) -> SimplicialComplex {
        let lists: Vec<Vec<usize>> = facets.iter().map(|f| f.to_vec()).collect();
        SimplicialComplex::new(&lists, None).unwrap()
    }

    #[test]
    fn counts_and_uniqueness() {
        let c = cx(&[&[1, 2], &[2, 3], &[3, 4], &[4, 5], &[5, 1]]);
        let all: Vec<_> = decompositions(&c).unwrap().collect();
        assert_eq!(all.len(), 15);
        let mut masks: Vec<u64> = all.iter().map(|d| d.mask()).collect();
        masks.dedup();
        assert_eq!(masks.len(), 15);
        assert!(all.iter().all(|d| d.mask() & 1 == 1 && d.mask() != 31));
        assert_eq!(decompositions(&cx(&[&[1, 2], &[2, 3]])).unwrap().count(), 1);
        assert_eq!(
            decompositions(&cx(&[&[1, 2]])).unwrap_err(),
            Error::SingleFacet
        );
    }

    #[test]
    fn three_triangles_witness() {
        let c = cx(&[&[1, 2, 3], &[3, 4, 5], &[2, 4, 6]]);
        let r = is_trivially_decomposable(&c, Field::Q).unwrap();
        let w = r.witness.unwrap();
        assert_eq!(intersection_cycle_rank(&c, &w).unwrap(), 0);
        assert_eq!(r, is_trivially_decomposable_general(&c, Field::Q).unwrap());
    }

    #[test]
    fn fast_path_matches_homology() {
        let c = cx(&[
            &[1, 2, 3],
            &[1, 3, 4],
            &[1, 4, 5],
            &[1, 2, 5],
            &[2, 3, 5],
            &[3, 4, 5],
        ]);
        for d in decompositions(&c).unwrap() {
            assert_eq!(
                intersection_cycle_rank(&c, &d).unwrap(),
                intersection_betti(&c, &d, Field::Q),
                "{:?}",
                d.part1_indices()
            );
        }
    }

    #[test]
    fn two_edges_always_split() {
        let c = cx(&[&[1, 2], &[2, 3]]);
        let r = splitting_probability(&c, Field::Q, Kind::Homology, SampleMode::Exact, 20).unwrap();
        assert_eq!((r.hits, r.total), (1, 1));
    }

    #[test]
    fn budget_is_enforced() {
        let facets: Vec<Vec<usize>> = (1..=22).map(|i| vec![i, i + 1]).collect();
        let c = SimplicialComplex::new(&facets, None).unwrap();
        assert!(matches!(
            splitting_probability(&c, Field::Q, Kind::Betti, SampleMode::Exact, 20),
            Err(Error::BudgetExceeded {
                facets: 22,
                budget: 20
            })
        ));
        let r = splitting_probability(
            &c,
            Field::Q,
            Kind::Homology,
            SampleMode::Sampled { size: 16, seed: 7 },
            20,
        )
        .unwrap();
        assert_eq!(r.total, 16);
        assert!(r.hits <= r.total);
        assert_eq!(r.ratio, Ratio::new(r.hits, 16));
    }

    #[test]
    fn sampling_is_reproducible() {
        let c = cx(&[
            &[1, 2, 3],
            &[2, 3, 4],
            &[2, 4, 5],
            &[3, 4, 5],
            &[1, 5, 6],
            &[4, 6, 7],
        ]);
        let mode = SampleMode::Sampled { size: 10, seed: 42 };
        let a = splitting_probability(&c, Field::Q, Kind::Betti, mode, 20).unwrap();
        let b = splitting_probability(&c, Field::Q, Kind::Betti, mode, 20).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn existence_on_a_small_complex() {
        let c = cx(&[&[1, 2, 3], &[2, 3, 4], &[2, 4, 5], &[3, 4, 5]]);
        let r = admits_betti_splitting(&c, Field::Q, ScanOptions::default()).unwrap();
        assert!(r.witness.is_some());
    }
}
