//! Alexander dual ideals and their graded Betti numbers via Hochster's formula.
//!
//! `β_{i,a}(I*_Δ)` is nonzero only when `supp(a) = [n] ∖ G` for a face `G`,
//! where it equals `β̃_{i-1}(lk_Δ G)`. Tables are assembled from link homology
//! only; no free resolution is ever built.

use std::collections::BTreeMap;
use std::fmt;

use rayon::prelude::*;
use serde::Serialize;

use crate::complex::{Face, SimplicialComplex};
use crate::error::{Error, Result};
use crate::exactla::Field;
use crate::homology::reduced_betti_all;

/// A squarefree monomial ideal in `n` variables, stored by the supports of its
/// minimal generators.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MonomialIdeal {
    n: usize,
    generators: Vec<Face>,
}

impl MonomialIdeal {
    /// Validates that the generators are nonempty, inside `[n]`, and form an antichain.
    pub fn new(n: usize, generators: Vec<Face>) -> Result<Self> {
        if n > crate::complex::MAX_VERTICES {
            return Err(Error::GroundSetTooLarge(n));
        }
        let full = Face::full(n);
        let mut generators = generators;
        generators.sort();
        generators.dedup();
        for g in &generators {
            if g.is_empty() {
                return Err(Error::EmptyGenerator);
            }
            if !g.is_subset_of(full) {
                return Err(Error::VertexOutOfRange {
                    vertex: g.max_vertex(),
                    n,
                });
            }
        }
        for a in &generators {
            for b in &generators {
                if a != b && a.is_subset_of(*b) {
                    return Err(Error::NotAntichain(*a, *b));
                }
            }
        }
        Ok(MonomialIdeal { n, generators })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn generators(&self) -> &[Face] {
        &self.generators
    }
}

impl fmt::Display for MonomialIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, g) in self.generators.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            let vars: Vec<String> = g.vertices().map(|v| format!("x{v}")).collect();
            f.write_str(&vars.join("*"))?;
        }
        f.write_str(")")
    }
}

/// `I*_Δ = (x_{[n]∖F} : F ∈ 𝓕(Δ))`.
pub fn alexander_dual_ideal(complex: &SimplicialComplex) -> Result<MonomialIdeal> {
    let n = complex.n();
    let mut generators = Vec::with_capacity(complex.facet_count());
    for f in complex.facets() {
        let g = f.complement(n);
        if g.is_empty() {
            return Err(Error::UnitIdeal(*f));
        }
        generators.push(g);
    }
    generators.sort();
    // complements of an antichain form an antichain
    Ok(MonomialIdeal { n, generators })
}

/// The unique complex `Δ` on `[n]` with `I*_Δ = I`.
pub fn complex_from_ideal(ideal: &MonomialIdeal) -> Result<SimplicialComplex> {
    let n = ideal.n;
    if ideal.generators.is_empty() {
        return Err(Error::VoidComplex);
    }
    let mut facets = Vec::with_capacity(ideal.generators.len());
    for g in &ideal.generators {
        if g.is_empty() {
            return Err(Error::EmptyGenerator);
        }
        facets.push(g.complement(n));
    }
    SimplicialComplex::from_faces(facets, Some(n))
}

/// Graded and multigraded Betti numbers of `I*_Δ`.
///
/// The multigraded part is keyed by the face `G` with `supp(a) = [n] ∖ G`;
/// only nonzero entries are stored.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BettiTable {
    n: usize,
    /// `graded[i][j]` for `0 <= i, j <= n`.
    graded: Vec<Vec<usize>>,
    #[serde(skip)]
    multigraded: BTreeMap<(usize, Face), usize>,
}

/// One nonzero graded entry, as emitted in JSON output.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct BettiEntry {
    pub i: usize,
    pub j: usize,
    pub value: usize,
}

impl BettiTable {
    pub fn n(&self) -> usize {
        self.n
    }

    /// `β_{i,j}`; zero outside `[0, n]²` (and for negative `i`).
    pub fn graded(&self, i: isize, j: isize) -> usize {
        if i < 0 || j < 0 || i as usize > self.n || j as usize > self.n {
            return 0;
        }
        self.graded[i as usize][j as usize]
    }

    /// `β_{i,a}` with `supp(a) = [n] ∖ face`.
    pub fn multigraded(&self, i: usize, face: Face) -> usize {
        self.multigraded.get(&(i, face)).copied().unwrap_or(0)
    }

    pub fn multigraded_entries(&self) -> impl Iterator<Item = (usize, Face, usize)> + '_ {
        self.multigraded.iter().map(|(&(i, g), &v)| (i, g, v))
    }

    /// `β_i = Σ_j β_{i,j}`.
    pub fn total(&self, i: usize) -> usize {
        self.graded.get(i).map_or(0, |row| row.iter().sum())
    }

    /// Nonzero graded entries in `(i, j)` order.
    pub fn entries(&self) -> Vec<BettiEntry> {
        let mut out = Vec::new();
        for (i, row) in self.graded.iter().enumerate() {
            for (j, &value) in row.iter().enumerate() {
                if value != 0 {
                    out.push(BettiEntry { i, j, value });
                }
            }
        }
        out
    }

    /// Largest homological index with a nonzero entry.
    pub fn length(&self) -> Option<usize> {
        (0..=self.n).rev().find(|&i| self.total(i) != 0)
    }

    /// Aligned text rendering: one row per `i`, one column per `j`, `.` for zero.
    pub fn to_text(&self) -> String {
        let last = self.length().unwrap_or(0);
        let cells: Vec<Vec<String>> = (0..=last)
            .map(|i| {
                (0..=self.n)
                    .map(|j| match self.graded[i][j] {
                        0 => ".".to_string(),
                        v => v.to_string(),
                    })
                    .collect()
            })
            .collect();
        let width = cells
            .iter()
            .flatten()
            .map(String::len)
            .chain((0..=self.n).map(|j| j.to_string().len()))
            .max()
            .unwrap_or(1);
        let label = (last.to_string().len() + 1).max(4);
        let mut out = format!("{:>label$}", "i\\j");
        for j in 0..=self.n {
            out.push_str(&format!(" {j:>width$}"));
        }
        out.push('\n');
        for (i, row) in cells.iter().enumerate() {
            out.push_str(&format!("{:>label$}", format!("{i}:")));
            for c in row {
                out.push_str(&format!(" {c:>width$}"));
            }
            out.push('\n');
        }
        out.push_str(&format!("{:>label$}", "total:"));
        let totals: Vec<String> = (0..=last).map(|i| self.total(i).to_string()).collect();
        out.push_str(&format!(" {}\n", totals.join(" ")));
        out
    }
}

/// Betti table of `I*_Δ` over `field`, one link homology computation per face.
pub fn graded_betti(complex: &SimplicialComplex, field: Field) -> BettiTable {
    let n = complex.n();
    let faces = complex.faces();
    let per_face: Vec<(Face, Vec<(usize, usize)>)> = faces
        .par_iter()
        .map(|&g| {
            let link = complex.link(g).expect("face of the complex");
            let betti = reduced_betti_all(&link, field);
            let nonzero = (-1..=betti.top())
                .filter_map(|k| {
                    let v = betti.get(k);
                    (v != 0).then_some(((k + 1) as usize, v))
                })
                .collect();
            (g, nonzero)
        })
        .collect();
    let mut graded = vec![vec![0usize; n + 1]; n + 1];
    let mut multigraded = BTreeMap::new();
    for (g, entries) in per_face {
        let j = n - g.len();
        for (i, v) in entries {
            if i <= n {
                graded[i][j] += v;
                multigraded.insert((i, g), v);
            }
        }
    }
    BettiTable {
        n,
        graded,
        multigraded,
    }
}

/// `β_i(I*_Δ)`.
pub fn total_betti(table: &BettiTable, i: usize) -> usize {
    table.total(i)
}

/// `(f_{-1}, f_0, …, f_d)`.
pub fn f_vector(complex: &SimplicialComplex) -> Vec<usize> {
    complex.f_vector()
}
