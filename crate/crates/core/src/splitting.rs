//! Verdicts on a given standard decomposition `Δ = Δ₁ ∪ Δ₂`.
//!
//! * homology splitting: `β̃_k(Δ) = β̃_k(Δ₁) + β̃_k(Δ₂) + β̃_{k-1}(Δ₁ ∩ Δ₂)` for all
//!   `k ≥ 0`, or `Δ₁ ∩ Δ₂ = {∅}`;
//! * Betti splitting, checked directly on the four graded Betti tables of the
//!   dual ideals, or recursively as a homology splitting of every link
//!   `lk_Δ F = lk_Δ₁ F ∪ lk_Δ₂ F` with `F ∈ Δ₁ ∩ Δ₂`;
//! * vanishing of the maps `H̃_k(Δ₁ ∩ Δ₂) → H̃_k(Δ₁) ⊕ H̃_k(Δ₂)`.

use std::fmt;

use rayon::prelude::*;
use serde::Serialize;

use crate::complex::{Face, SimplicialComplex, StandardDecomposition};
use crate::error::{Error, Result};
use crate::exactla::{Field, SparseIntMatrix};
use crate::hochster::graded_betti;
use crate::homology::{
    reduced_betti, reduced_betti_all, reduced_betti_all_uncached, BettiNumbers, ChainComplexData,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Mode {
    Homology,
    BettiDirect,
    BettiRecursive,
    MayerVietoris,
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::Homology => "homology",
            Mode::BettiDirect => "betti_direct",
            Mode::BettiRecursive => "betti_recursive",
            Mode::MayerVietoris => "mayer_vietoris",
        })
    }
}

/// Evidence that a decomposition fails.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Witness {
    /// `β_{i,j}(I*_Δ) ≠ β_{i,j}(I*_Δ₁) + β_{i,j}(I*_Δ₂) + β_{i-1,j}(I*_{Δ₁∩Δ₂})`.
    Degree {
        i: usize,
        j: usize,
        whole: usize,
        part1: usize,
        part2: usize,
        intersection: usize,
    },
    /// `β̃_k(Δ) ≠ β̃_k(Δ₁) + β̃_k(Δ₂) + β̃_{k-1}(Δ₁∩Δ₂)`.
    Homology {
        k: isize,
        whole: usize,
        part1: usize,
        part2: usize,
        intersection: usize,
    },
    /// The link of `face` fails the homology-splitting equation in degree `k`.
    Face {
        face: Face,
        k: isize,
        whole: usize,
        part1: usize,
        part2: usize,
        intersection: usize,
    },
    /// The Mayer–Vietoris map in degree `k` has rank `rank > 0`.
    MapRank { k: isize, rank: usize },
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Witness::Degree {
                i,
                j,
                whole,
                part1,
                part2,
                intersection,
            } => write!(
                f,
                "(i, j) = ({i}, {j}): {whole} != {part1} + {part2} + {intersection}"
            ),
            Witness::Homology {
                k,
                whole,
                part1,
                part2,
                intersection,
            } => {
                write!(f, "k = {k}: {whole} != {part1} + {part2} + {intersection}")
            }
            Witness::Face {
                face,
                k,
                whole,
                part1,
                part2,
                intersection,
            } => write!(
                f,
                "link of {face}, k = {k}: {whole} != {part1} + {part2} + {intersection}"
            ),
            Witness::MapRank { k, rank } => write!(f, "k = {k}: map has rank {rank}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SplittingReport {
    pub verdict: bool,
    pub mode: Mode,
    pub field: Field,
    /// `Δ₁ ∩ Δ₂ = {∅}`.
    pub trivial_intersection: bool,
    pub witness: Option<Witness>,
}

impl SplittingReport {
    fn from_witness(mode: Mode, field: Field, trivial: bool, witness: Option<Witness>) -> Self {
        SplittingReport {
            verdict: witness.is_none(),
            mode,
            field,
            trivial_intersection: trivial,
            witness,
        }
    }
}

struct CoverFailure {
    k: isize,
    whole: usize,
    part1: usize,
    part2: usize,
    intersection: usize,
}

/// Checks the homology-splitting equation for `whole = a ∪ b` with `inter = a ∩ b`.
fn cover_failure(
    whole: &SimplicialComplex,
    a: &SimplicialComplex,
    b: &SimplicialComplex,
    inter: &SimplicialComplex,
    field: Field,
) -> Option<CoverFailure> {
    if inter.is_irrelevant() {
        return None;
    }
    let bw = reduced_betti_all(whole, field);
    let ba = reduced_betti_all_uncached(a, field);
    let bb = reduced_betti_all_uncached(b, field);
    let bi = reduced_betti_all_uncached(inter, field);
    let top = bw.top().max(ba.top()).max(bb.top()).max(bi.top() + 1);
    (0..=top).find_map(|k| {
        let (w, p1, p2, x) = (bw.get(k), ba.get(k), bb.get(k), bi.get(k - 1));
        (w != p1 + p2 + x).then_some(CoverFailure {
            k,
            whole: w,
            part1: p1,
            part2: p2,
            intersection: x,
        })
    })
}

/// Homology splitting of a standard decomposition.
pub fn is_homology_splitting(
    complex: &SimplicialComplex,
    decomposition: &StandardDecomposition,
    field: Field,
) -> Result<SplittingReport> {
    let (a, b, i) = decomposition.pieces(complex)?;
    let witness = cover_failure(complex, &a, &b, &i, field).map(|c| Witness::Homology {
        k: c.k,
        whole: c.whole,
        part1: c.part1,
        part2: c.part2,
        intersection: c.intersection,
    });
    Ok(SplittingReport::from_witness(
        Mode::Homology,
        field,
        i.is_irrelevant(),
        witness,
    ))
}

/// Betti splitting checked on the graded Betti tables of `I*_Δ`, `I*_Δ₁`,
/// `I*_Δ₂` and `I*_{Δ₁∩Δ₂} = I*_Δ₁ ∩ I*_Δ₂`. The witness is the first failing
/// `(i, j)` in row-major order.
pub fn is_betti_splitting_direct(
    complex: &SimplicialComplex,
    decomposition: &StandardDecomposition,
    field: Field,
) -> Result<SplittingReport> {
    let (a, b, i) = decomposition.pieces(complex)?;
    let tw = graded_betti(complex, field);
    let ta = graded_betti(&a, field);
    let tb = graded_betti(&b, field);
    let ti = graded_betti(&i, field);
    let n = complex.n() as isize;
    let mut witness = None;
    'outer: for row in 0..=n {
        for col in 0..=n {
            let (w, p1, p2, x) = (
                tw.graded(row, col),
                ta.graded(row, col),
                tb.graded(row, col),
                ti.graded(row - 1, col),
            );
            if w != p1 + p2 + x {
                witness = Some(Witness::Degree {
                    i: row as usize,
                    j: col as usize,
                    whole: w,
                    part1: p1,
                    part2: p2,
                    intersection: x,
                });
                break 'outer;
            }
        }
    }
    Ok(SplittingReport::from_witness(
        Mode::BettiDirect,
        field,
        i.is_irrelevant(),
        witness,
    ))
}

/// Faces of `complex` ordered by size, then lexicographically; `∅` first.
fn faces_by_size(complex: &SimplicialComplex) -> Vec<Face> {
    let mut faces = complex.faces();
    faces.sort_by(|x, y| x.len().cmp(&y.len()).then(x.cmp(y)));
    faces
}

/// Betti splitting checked link by link: every face `F` of `Δ₁ ∩ Δ₂`,
/// starting with `∅`, must give a homology splitting of `lk_Δ F`.
pub fn is_betti_splitting_recursive(
    complex: &SimplicialComplex,
    decomposition: &StandardDecomposition,
    field: Field,
) -> Result<SplittingReport> {
    let (a, b, i) = decomposition.pieces(complex)?;
    let faces = faces_by_size(&i);
    let witness = faces.par_iter().find_map_first(|&face| {
        let whole = complex.link(face).expect("face of Δ₁ ∩ Δ₂ lies in Δ");
        let la = a.link(face).expect("face of Δ₁");
        let lb = b.link(face).expect("face of Δ₂");
        let li = i.link(face).expect("face of Δ₁ ∩ Δ₂");
        cover_failure(&whole, &la, &lb, &li, field).map(|c| Witness::Face {
            face,
            k: c.k,
            whole: c.whole,
            part1: c.part1,
            part2: c.part2,
            intersection: c.intersection,
        })
    });
    Ok(SplittingReport::from_witness(
        Mode::BettiRecursive,
        field,
        i.is_irrelevant(),
        witness,
    ))
}

/// Ranks of `φ_k : H̃_k(Δ₁ ∩ Δ₂) → H̃_k(Δ₁) ⊕ H̃_k(Δ₂)` for `k = 0..=dim(Δ₁ ∩ Δ₂)`.
///
/// With `ι` the inclusion of chains and `B = im ∂^{Δ₁}_{k+1} ⊕ im ∂^{Δ₂}_{k+1}`,
/// `ι(C_k) ∩ B = ι(Z_k) ∩ B`, which gives
/// `rank φ_k = rank[ι | B] − rank B − rank ∂^{Δ₁∩Δ₂}_k`.
pub fn mayer_vietoris_ranks(
    complex: &SimplicialComplex,
    decomposition: &StandardDecomposition,
    field: Field,
) -> Result<Vec<usize>> {
    let (a, b, i) = decomposition.pieces(complex)?;
    if i.is_irrelevant() {
        return Ok(Vec::new());
    }
    let ca = ChainComplexData::new(&a);
    let cb = ChainComplexData::new(&b);
    let ci = ChainComplexData::new(&i);
    let mut ranks = Vec::new();
    for k in 0..=ci.dim() {
        let basis_a = ca.basis(k);
        let basis_b = cb.basis(k);
        let offset = basis_a.len();
        let rows = offset + basis_b.len();
        let mut columns: Vec<Vec<(usize, i64)>> = Vec::new();
        let mut rank_boundaries = 0;
        if let Some(m) = ca.boundary(k + 1) {
            rank_boundaries += m.rank(field);
            columns.extend((0..m.cols()).map(|c| m.column(c).to_vec()));
        }
        if let Some(m) = cb.boundary(k + 1) {
            rank_boundaries += m.rank(field);
            columns.extend(
                (0..m.cols()).map(|c| m.column(c).iter().map(|&(r, v)| (r + offset, v)).collect()),
            );
        }
        for face in ci.basis(k) {
            let ra = basis_a
                .binary_search(face)
                .expect("intersection face lies in Δ₁");
            let rb = basis_b
                .binary_search(face)
                .expect("intersection face lies in Δ₂");
            columns.push(vec![(ra, 1), (rb + offset, 1)]);
        }
        let augmented = SparseIntMatrix::from_columns(rows, columns);
        let rank_inter = ci.boundary(k).map_or(0, |m| m.rank(field));
        ranks.push(augmented.rank(field) - rank_boundaries - rank_inter);
    }
    Ok(ranks)
}

/// True iff every Mayer–Vietoris map `φ_k`, `k ≥ 0`, vanishes.
pub fn mayer_vietoris_maps_vanish(
    complex: &SimplicialComplex,
    decomposition: &StandardDecomposition,
    field: Field,
) -> Result<SplittingReport> {
    let ranks = mayer_vietoris_ranks(complex, decomposition, field)?;
    let trivial = ranks.is_empty();
    let witness = ranks
        .iter()
        .enumerate()
        .find(|(_, &r)| r != 0)
        .map(|(k, &rank)| Witness::MapRank {
            k: k as isize,
            rank,
        });
    Ok(SplittingReport::from_witness(
        Mode::MayerVietoris,
        field,
        trivial,
        witness,
    ))
}

/// Runs the check selected by `mode`.
pub fn check(
    complex: &SimplicialComplex,
    decomposition: &StandardDecomposition,
    field: Field,
    mode: Mode,
) -> Result<SplittingReport> {
    match mode {
        Mode::Homology => is_homology_splitting(complex, decomposition, field),
        Mode::BettiDirect => is_betti_splitting_direct(complex, decomposition, field),
        Mode::BettiRecursive => is_betti_splitting_recursive(complex, decomposition, field),
        Mode::MayerVietoris => mayer_vietoris_maps_vanish(complex, decomposition, field),
    }
}

/// Reduced Betti numbers of `Δ` and of `Δ ∖ {F}` for a facet `F`.
pub fn facet_removal_pattern(
    complex: &SimplicialComplex,
    facet: Face,
    field: Field,
) -> Result<(BettiNumbers, BettiNumbers)> {
    let after = complex.delete_facet(facet)?;
    Ok((
        reduced_betti_all(complex, field),
        reduced_betti_all(&after, field),
    ))
}

/// Whether removing `facet` drops `β̃_{dim F}` by one and leaves every other
/// degree unchanged, i.e. whether `facet` lies on a cycle of its own dimension.
pub fn removal_pattern_holds(before: &BettiNumbers, after: &BettiNumbers, d: isize) -> bool {
    let top = before.top().max(after.top());
    (-1..=top).all(|k| {
        if k == d {
            before.get(k) >= 1 && after.get(k) == before.get(k) - 1
        } else {
            after.get(k) == before.get(k)
        }
    })
}

/// Whether `facet` is essential over `field`, tested in its own dimension.
pub fn is_essential(complex: &SimplicialComplex, facet: Face, field: Field) -> Result<bool> {
    let d = facet.dim();
    let after = match complex.delete_facet(facet) {
        Ok(after) => after,
        // nothing left: the facet is the empty face or a lone vertex
        Err(Error::VoidComplex) => return Ok(false),
        Err(e) => return Err(e),
    };
    let before_d = reduced_betti(complex, d, field);
    let essential = before_d >= 1 && reduced_betti(&after, d, field) + 1 == before_d;
    debug_assert_eq!(
        essential,
        removal_pattern_holds(
            &reduced_betti_all(complex, field),
            &reduced_betti_all(&after, field),
            d
        ),
        "drop test and full pattern disagree for {facet}"
    );
    Ok(essential)
}

/// Essential facets of top dimension `d = dim Δ`.
pub fn essential_facets(complex: &SimplicialComplex, field: Field) -> Vec<Face> {
    let d = complex.dim();
    if d < 0 {
        return Vec::new();
    }
    let top: Vec<Face> = complex
        .facets()
        .iter()
        .copied()
        .filter(|f| f.dim() == d)
        .collect();
    top.into_par_iter()
        .filter(|f| is_essential(complex, *f, field).expect("facet of the complex"))
        .collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Orientability {
    Orientable,
    NonOrientable,
    NotApplicable,
}

impl fmt::Display for Orientability {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Orientability::Orientable => "orientable",
            Orientability::NonOrientable => "non_orientable",
            Orientability::NotApplicable => "not_applicable",
        })
    }
}

/// Orientability of a connected closed pseudomanifold, read off `β̃_d(Δ; ℚ)`.
pub fn orientability(complex: &SimplicialComplex) -> Orientability {
    if !complex.is_closed_pseudomanifold() {
        return Orientability::NotApplicable;
    }
    let betti = reduced_betti_all(complex, Field::Q);
    if complex.dim() >= 1 && betti.get(0) != 0 {
        return Orientability::NotApplicable;
    }
    if betti.get(complex.dim()) != 0 {
        Orientability::Orientable
    } else {
        Orientability::NonOrientable
    }
}
