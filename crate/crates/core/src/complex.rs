//! Abstract simplicial complexes on the ground set `[n]`, `n <= 64`.
//!
//! Faces are bitmasks (bit `v - 1` stands for vertex `v`). A complex is stored
//! by its facets, kept as an antichain in lexicographic order of their sorted
//! vertex lists, together with the explicit ground-set size `n`.

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Largest supported ground set.
pub const MAX_VERTICES: usize = 64;

/// A finite set of vertices drawn from `[1, 64]`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Face(u64);

impl Face {
    pub const EMPTY: Face = Face(0);

    pub fn from_bits(bits: u64) -> Self {
        Face(bits)
    }

    pub fn bits(self) -> u64 {
        self.0
    }

    /// Builds a face from 1-based vertex labels. Duplicates collapse.
    pub fn from_vertices<I: IntoIterator<Item = usize>>(vertices: I) -> Result<Self> {
        let mut bits = 0u64;
        for v in vertices {
            if v == 0 {
                return Err(Error::ZeroVertex);
            }
            if v > MAX_VERTICES {
                return Err(Error::GroundSetTooLarge(v));
            }
            bits |= 1 << (v - 1);
        }
        Ok(Face(bits))
    }

    /// The full simplex `[n]`.
    pub fn full(n: usize) -> Self {
        if n >= 64 {
            Face(u64::MAX)
        } else {
            Face((1u64 << n) - 1)
        }
    }

    pub fn singleton(v: usize) -> Self {
        debug_assert!((1..=MAX_VERTICES).contains(&v));
        Face(1 << (v - 1))
    }

    /// Number of vertices.
    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    /// `|F| - 1`; the empty face has dimension -1.
    pub fn dim(self) -> isize {
        self.len() as isize - 1
    }

    pub fn contains(self, v: usize) -> bool {
        (1..=MAX_VERTICES).contains(&v) && self.0 & (1 << (v - 1)) != 0
    }

    pub fn is_subset_of(self, other: Face) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn union(self, other: Face) -> Face {
        Face(self.0 | other.0)
    }

    pub fn intersection(self, other: Face) -> Face {
        Face(self.0 & other.0)
    }

    pub fn difference(self, other: Face) -> Face {
        Face(self.0 & !other.0)
    }

    /// Complement inside `[n]`.
    pub fn complement(self, n: usize) -> Face {
        Face(Face::full(n).0 & !self.0)
    }

    pub fn max_vertex(self) -> usize {
        64 - self.0.leading_zeros() as usize
    }

    /// Vertices in increasing order.
    pub fn vertices(self) -> Vertices {
        Vertices(self.0)
    }

    /// All subsets of this face, including the empty face and the face itself.
    pub fn subfaces(self) -> impl Iterator<Item = Face> {
        let full = self.0;
        let mut next = Some(full);
        std::iter::from_fn(move || {
            let cur = next?;
            next = if cur == 0 {
                None
            } else {
                Some((cur - 1) & full)
            };
            Some(Face(cur))
        })
    }

    /// The codimension-one faces, in the order of the omitted vertex.
    pub fn boundary_faces(self) -> impl Iterator<Item = Face> {
        self.vertices().map(move |v| Face(self.0 & !(1 << (v - 1))))
    }
}

/// Iterator over the vertices of a [`Face`].
#[derive(Clone)]
pub struct Vertices(u64);

impl Iterator for Vertices {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let v = self.0.trailing_zeros() as usize;
        self.0 &= self.0 - 1;
        Some(v + 1)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let n = self.0.count_ones() as usize;
        (n, Some(n))
    }
}

impl ExactSizeIterator for Vertices {}

impl Ord for Face {
    /// Lexicographic order on sorted vertex lists, so `12 < 123 < 124 < 13`.
    fn cmp(&self, other: &Self) -> Ordering {
        let diff = self.0 ^ other.0;
        if diff == 0 {
            return Ordering::Equal;
        }
        let low = diff.trailing_zeros();
        // below `low` both faces agree; the one owning `low` continues with it
        let (owner, other_bits, ord) = if self.0 & (1 << low) != 0 {
            (self.0, other.0, Ordering::Less)
        } else {
            (other.0, self.0, Ordering::Greater)
        };
        debug_assert!(owner & (1 << low) != 0);
        if low == 63 || other_bits >> (low + 1) == 0 {
            // the other face ended: it is a proper prefix
            ord.reverse()
        } else {
            ord
        }
    }
}

impl PartialOrd for Face {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Face {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, v) in self.vertices().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{v}")?;
        }
        f.write_str("}")
    }
}

impl fmt::Debug for Face {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Serialize for Face {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_seq(self.vertices())
    }
}

impl<'de> Deserialize<'de> for Face {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let vs = Vec::<usize>::deserialize(deserializer)?;
        Face::from_vertices(vs).map_err(serde::de::Error::custom)
    }
}

/// Keeps only inclusion-maximal faces, deduplicated and sorted.
pub fn maximalize(mut faces: Vec<Face>) -> Vec<Face> {
    faces.sort_by_key(|f| std::cmp::Reverse(f.len()));
    faces.dedup();
    let mut kept: Vec<Face> = Vec::with_capacity(faces.len());
    for f in faces {
        if !kept.iter().any(|k| f.is_subset_of(*k)) {
            kept.push(f);
        }
    }
    kept.sort();
    kept
}

/// An abstract simplicial complex on `[n]`, given by its facets.
#[derive(Clone, PartialEq, Eq, Hash, Serialize)]
pub struct SimplicialComplex {
    n: usize,
    facets: Vec<Face>,
}

impl SimplicialComplex {
    /// Builds a complex from vertex lists. Non-maximal and duplicate faces are
    /// dropped; `n` defaults to the largest vertex that appears.
    pub fn new(facet_list: &[Vec<usize>], n: Option<usize>) -> Result<Self> {
        let faces = facet_list
            .iter()
            .map(|f| Face::from_vertices(f.iter().copied()))
            .collect::<Result<Vec<_>>>()?;
        Self::from_faces(faces, n)
    }

    pub fn from_faces(faces: Vec<Face>, n: Option<usize>) -> Result<Self> {
        if faces.is_empty() {
            return Err(Error::VoidComplex);
        }
        let max_vertex = faces.iter().map(|f| f.max_vertex()).max().unwrap_or(0);
        let n = match n {
            Some(n) if n > MAX_VERTICES => return Err(Error::GroundSetTooLarge(n)),
            Some(n) if max_vertex > n => {
                return Err(Error::VertexOutOfRange {
                    vertex: max_vertex,
                    n,
                })
            }
            Some(n) => n,
            None => max_vertex,
        };
        Ok(SimplicialComplex {
            n,
            facets: maximalize(faces),
        })
    }

    /// The complex `{∅}` on `[n]`.
    pub fn irrelevant(n: usize) -> Self {
        SimplicialComplex {
            n,
            facets: vec![Face::EMPTY],
        }
    }

    /// The full simplex on `[n]`.
    pub fn simplex(n: usize) -> Self {
        SimplicialComplex {
            n,
            facets: vec![Face::full(n)],
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn facets(&self) -> &[Face] {
        &self.facets
    }

    pub fn facet_count(&self) -> usize {
        self.facets.len()
    }

    pub fn dim(&self) -> isize {
        self.facets.iter().map(|f| f.dim()).max().unwrap_or(-1)
    }

    /// True for the complex `{∅}`.
    pub fn is_irrelevant(&self) -> bool {
        self.facets.len() == 1 && self.facets[0].is_empty()
    }

    pub fn is_pure(&self) -> bool {
        let d = self.dim();
        self.facets.iter().all(|f| f.dim() == d)
    }

    pub fn contains_face(&self, face: Face) -> bool {
        self.facets.iter().any(|f| face.is_subset_of(*f))
    }

    pub fn facet_index(&self, face: Face) -> Option<usize> {
        self.facets.binary_search(&face).ok()
    }

    /// Vertices appearing in some facet.
    pub fn vertex_support(&self) -> Face {
        self.facets.iter().fold(Face::EMPTY, |acc, f| acc.union(*f))
    }

    /// Every face, sorted lexicographically, including `∅`.
    pub fn faces(&self) -> Vec<Face> {
        let mut out: Vec<Face> = self.facets.iter().flat_map(|f| f.subfaces()).collect();
        out.sort_unstable_by_key(|f| f.bits());
        out.dedup();
        out.sort_unstable();
        out
    }

    /// Faces grouped by dimension: entry `k + 1` holds the `k`-faces in lexicographic order.
    pub fn faces_by_dim(&self) -> Vec<Vec<Face>> {
        let d = self.dim();
        let mut by_dim = vec![Vec::new(); (d + 2) as usize];
        for f in self.faces() {
            by_dim[f.len()].push(f);
        }
        by_dim
    }

    /// `(f_{-1}, f_0, ..., f_d)`.
    pub fn f_vector(&self) -> Vec<usize> {
        self.faces_by_dim().iter().map(Vec::len).collect()
    }

    /// The link `{G ∈ Δ : G ∪ F ∈ Δ, G ∩ F = ∅}` on the same ground set.
    pub fn link(&self, face: Face) -> Result<SimplicialComplex> {
        let faces: Vec<Face> = self
            .facets
            .iter()
            .filter(|g| face.is_subset_of(**g))
            .map(|g| g.difference(face))
            .collect();
        if faces.is_empty() {
            return Err(Error::NotAFace(face));
        }
        Ok(SimplicialComplex {
            n: self.n,
            facets: maximalize(faces),
        })
    }

    /// Face-wise intersection.
    pub fn intersect(&self, other: &SimplicialComplex) -> Result<SimplicialComplex> {
        if self.n != other.n {
            return Err(Error::GroundSetMismatch(self.n, other.n));
        }
        let mut faces = Vec::with_capacity(self.facets.len() * other.facets.len());
        for f in &self.facets {
            for g in &other.facets {
                faces.push(f.intersection(*g));
            }
        }
        Ok(SimplicialComplex {
            n: self.n,
            facets: maximalize(faces),
        })
    }

    /// Subcomplex generated by the facets selected in `mask` (bit `i` = facet `i`).
    pub(crate) fn subcomplex_by_mask(&self, mask: u64) -> SimplicialComplex {
        let facets = self
            .facets
            .iter()
            .enumerate()
            .filter(|(i, _)| mask >> i & 1 == 1)
            .map(|(_, f)| *f)
            .collect();
        SimplicialComplex { n: self.n, facets }
    }

    /// `Δ ∖ {F}` for a facet `F`: every face except `F` itself.
    pub fn delete_facet(&self, facet: Face) -> Result<SimplicialComplex> {
        if self.facet_index(facet).is_none() {
            return Err(Error::NotAFacet(facet));
        }
        let mut faces: Vec<Face> = self
            .facets
            .iter()
            .copied()
            .filter(|g| *g != facet)
            .collect();
        faces.extend(facet.boundary_faces());
        if faces.is_empty() {
            // deleting the only vertex-free facet leaves nothing
            return Err(Error::VoidComplex);
        }
        Ok(SimplicialComplex {
            n: self.n,
            facets: maximalize(faces),
        })
    }

    /// The decomposition `⟨G ≠ F⟩ ∪ ⟨F⟩`.
    pub fn remove_facet(&self, facet: Face) -> Result<StandardDecomposition> {
        let idx = self.facet_index(facet).ok_or(Error::NotAFacet(facet))?;
        if self.facets.len() < 2 {
            return Err(Error::SingleFacet);
        }
        StandardDecomposition::from_mask(self, 1u64 << idx)
    }

    /// Cone over this complex with apex `n + 1`, on ground set `[n + 1]`.
    pub fn cone(&self) -> Result<SimplicialComplex> {
        let apex = self.n + 1;
        if apex > MAX_VERTICES {
            return Err(Error::GroundSetTooLarge(apex));
        }
        let a = Face::singleton(apex);
        let mut facets: Vec<Face> = self.facets.iter().map(|f| f.union(a)).collect();
        facets.sort();
        Ok(SimplicialComplex { n: apex, facets })
    }

    /// Checks purity and that every codimension-one face lies in exactly two facets.
    pub fn pseudomanifold_violation(&self) -> Option<PseudomanifoldViolation> {
        let d = self.dim();
        if d < 0 {
            return Some(PseudomanifoldViolation::Empty);
        }
        if let Some(f) = self.facets.iter().find(|f| f.dim() != d) {
            return Some(PseudomanifoldViolation::Impure { facet: *f, dim: d });
        }
        let mut ridges: std::collections::BTreeMap<Face, usize> = Default::default();
        for f in &self.facets {
            for r in f.boundary_faces() {
                *ridges.entry(r).or_default() += 1;
            }
        }
        ridges
            .into_iter()
            .find(|(_, c)| *c != 2)
            .map(|(ridge, count)| PseudomanifoldViolation::Ridge { ridge, count })
    }

    pub fn is_closed_pseudomanifold(&self) -> bool {
        self.pseudomanifold_violation().is_none()
    }

    /// Vertex lists of the facets.
    pub fn facet_lists(&self) -> Vec<Vec<usize>> {
        self.facets.iter().map(|f| f.vertices().collect()).collect()
    }
}

impl fmt::Debug for SimplicialComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "⟨")?;
        for (i, facet) in self.facets.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{facet}")?;
        }
        write!(f, "⟩ on [{}]", self.n)
    }
}

/// Why a complex is not a closed pseudomanifold.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum PseudomanifoldViolation {
    Empty,
    Impure { facet: Face, dim: isize },
    Ridge { ridge: Face, count: usize },
}

/// An unordered bipartition of the facets of a complex into two nonempty parts.
///
/// Stored as a bitmask over facet indices; bit 0 (the lexicographically least
/// facet) always belongs to `part1`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize)]
pub struct StandardDecomposition {
    part1: u64,
    facet_count: usize,
}

impl StandardDecomposition {
    pub fn from_mask(complex: &SimplicialComplex, part1: u64) -> Result<Self> {
        let m = complex.facet_count();
        if m < 2 {
            return Err(Error::SingleFacet);
        }
        if m > 64 {
            return Err(Error::TooManyFacets(m));
        }
        let full = if m == 64 { u64::MAX } else { (1u64 << m) - 1 };
        if part1 & !full != 0 {
            return Err(Error::InvalidDecomposition(format!(
                "facet index out of range (complex has {m} facets)"
            )));
        }
        if part1 == 0 || part1 == full {
            return Err(Error::InvalidDecomposition(
                "both parts must be nonempty".into(),
            ));
        }
        let part1 = if part1 & 1 == 1 { part1 } else { full & !part1 };
        Ok(StandardDecomposition {
            part1,
            facet_count: m,
        })
    }

    /// Builds the decomposition whose one part consists of the given facet indices.
    pub fn from_indices(complex: &SimplicialComplex, indices: &[usize]) -> Result<Self> {
        let mut mask = 0u64;
        for &i in indices {
            if i >= complex.facet_count() || i >= 64 {
                return Err(Error::InvalidDecomposition(format!(
                    "facet index {i} out of range (complex has {} facets)",
                    complex.facet_count()
                )));
            }
            mask |= 1 << i;
        }
        Self::from_mask(complex, mask)
    }

    /// Builds the decomposition whose one part consists of the given facets.
    pub fn from_facets(complex: &SimplicialComplex, part: &[Face]) -> Result<Self> {
        let indices = part
            .iter()
            .map(|f| complex.facet_index(*f).ok_or(Error::NotAFacet(*f)))
            .collect::<Result<Vec<_>>>()?;
        Self::from_indices(complex, &indices)
    }

    pub(crate) fn from_mask_unchecked(part1: u64, facet_count: usize) -> Self {
        debug_assert!(part1 & 1 == 1);
        StandardDecomposition { part1, facet_count }
    }

    pub fn mask(&self) -> u64 {
        self.part1
    }

    pub fn facet_count(&self) -> usize {
        self.facet_count
    }

    fn full(&self) -> u64 {
        if self.facet_count == 64 {
            u64::MAX
        } else {
            (1u64 << self.facet_count) - 1
        }
    }

    pub fn part1_indices(&self) -> Vec<usize> {
        (0..self.facet_count)
            .filter(|i| self.part1 >> i & 1 == 1)
            .collect()
    }

    pub fn part2_indices(&self) -> Vec<usize> {
        (0..self.facet_count)
            .filter(|i| self.part1 >> i & 1 == 0)
            .collect()
    }

    fn check(&self, complex: &SimplicialComplex) -> Result<()> {
        if complex.facet_count() != self.facet_count {
            return Err(Error::InvalidDecomposition(format!(
                "decomposition covers {} facets, complex has {}",
                self.facet_count,
                complex.facet_count()
            )));
        }
        Ok(())
    }

    pub fn part1_facets(&self, complex: &SimplicialComplex) -> Result<Vec<Face>> {
        self.check(complex)?;
        Ok(self
            .part1_indices()
            .into_iter()
            .map(|i| complex.facets[i])
            .collect())
    }

    pub fn part2_facets(&self, complex: &SimplicialComplex) -> Result<Vec<Face>> {
        self.check(complex)?;
        Ok(self
            .part2_indices()
            .into_iter()
            .map(|i| complex.facets[i])
            .collect())
    }

    /// The subcomplexes `(Δ₁, Δ₂)`.
    pub fn parts(
        &self,
        complex: &SimplicialComplex,
    ) -> Result<(SimplicialComplex, SimplicialComplex)> {
        self.check(complex)?;
        Ok((
            complex.subcomplex_by_mask(self.part1),
            complex.subcomplex_by_mask(self.full() & !self.part1),
        ))
    }

    /// `(Δ₁, Δ₂, Δ₁ ∩ Δ₂)`.
    pub fn pieces(
        &self,
        complex: &SimplicialComplex,
    ) -> Result<(SimplicialComplex, SimplicialComplex, SimplicialComplex)> {
        let (a, b) = self.parts(complex)?;
        let i = a.intersect(&b)?;
        Ok((a, b, i))
    }
}
