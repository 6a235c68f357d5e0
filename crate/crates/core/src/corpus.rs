//! Built-in triangulations with expected invariants.
//!
//! Every entry is checked against its expected record (f-vector, reduced
//! Betti numbers over ℚ, 𝔽₂, 𝔽₃, 𝔽₅, pseudomanifold and orientability flags)
//! the first time it is loaded.

use std::collections::BTreeMap;
use std::sync::OnceLock;

use serde::Serialize;

use crate::complex::SimplicialComplex;
use crate::error::{Error, Result};
use crate::exactla::Field;
use crate::format::parse_complex;
use crate::homology::{reduced_betti_all, BettiNumbers};
use crate::splitting::{orientability, Orientability};

/// Fields every entry is validated over.
pub const CORPUS_FIELDS: [Field; 4] = [Field::Q, Field::Prime(2), Field::Prime(3), Field::Prime(5)];

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Expected {
    pub vertices: usize,
    pub facets: usize,
    pub f_vector: Vec<usize>,
    /// Reduced Betti numbers from `k = −1`, one vector per entry of [`CORPUS_FIELDS`].
    pub betti: BTreeMap<Field, BettiNumbers>,
    pub closed_pseudomanifold: bool,
    pub orientability: Orientability,
}

#[derive(Clone, Debug, Serialize)]
pub struct CorpusEntry {
    pub name: &'static str,
    pub description: &'static str,
    pub complex: SimplicialComplex,
    pub expected: Expected,
}

struct Raw {
    name: &'static str,
    description: &'static str,
    text: &'static str,
    f_vector: &'static [usize],
    /// Betti vectors over Q, F2, F3, F5.
    betti: [&'static [usize]; 4],
    closed_pseudomanifold: bool,
    orientability: Orientability,
}

use Orientability::{NonOrientable, NotApplicable, Orientable};

const RAW: &[Raw] = &[
    Raw {
        name: "rp2",
        description: "real projective plane, 6 vertices",
        text: include_str!("../corpus/rp2.cplx"),
        f_vector: &[1, 6, 15, 10],
        betti: [&[0, 0, 0, 0], &[0, 0, 1, 1], &[0, 0, 0, 0], &[0, 0, 0, 0]],
        closed_pseudomanifold: true,
        orientability: NonOrientable,
    },
    Raw {
        name: "torus7",
        description: "vertex-transitive torus, 7 vertices",
        text: include_str!("../corpus/torus7.cplx"),
        f_vector: &[1, 7, 21, 14],
        betti: [&[0, 0, 2, 1]; 4],
        closed_pseudomanifold: true,
        orientability: Orientable,
    },
    Raw {
        name: "klein",
        description: "Klein bottle, 8 vertices",
        text: include_str!("../corpus/klein.cplx"),
        f_vector: &[1, 8, 24, 16],
        betti: [&[0, 0, 1, 0], &[0, 0, 2, 1], &[0, 0, 1, 0], &[0, 0, 1, 0]],
        closed_pseudomanifold: true,
        orientability: NonOrientable,
    },
    Raw {
        name: "dunce-hat",
        description: "dunce hat, 8 vertices",
        text: include_str!("../corpus/dunce-hat.cplx"),
        f_vector: &[1, 8, 24, 17],
        betti: [&[0, 0, 0, 0]; 4],
        closed_pseudomanifold: false,
        orientability: NotApplicable,
    },
    Raw {
        name: "moore3",
        description: "mod 3 Moore space, 9 vertices",
        text: include_str!("../corpus/moore3.cplx"),
        f_vector: &[1, 9, 27, 19],
        betti: [&[0, 0, 0, 0], &[0, 0, 0, 0], &[0, 0, 1, 1], &[0, 0, 0, 0]],
        closed_pseudomanifold: false,
        orientability: NotApplicable,
    },
    Raw {
        name: "s2",
        description: "boundary of the tetrahedron",
        text: include_str!("../corpus/s2.cplx"),
        f_vector: &[1, 4, 6, 4],
        betti: [&[0, 0, 0, 1]; 4],
        closed_pseudomanifold: true,
        orientability: Orientable,
    },
    Raw {
        name: "s3",
        description: "boundary of the 4-simplex",
        text: include_str!("../corpus/s3.cplx"),
        f_vector: &[1, 5, 10, 10, 5],
        betti: [&[0, 0, 0, 0, 1]; 4],
        closed_pseudomanifold: true,
        orientability: Orientable,
    },
    Raw {
        name: "paper-ex-2-3",
        description: "four triangles <123,234,245,345> on 5 vertices",
        text: include_str!("../corpus/paper-ex-2-3.cplx"),
        f_vector: &[1, 5, 8, 4],
        betti: [&[0, 0, 0, 0]; 4],
        closed_pseudomanifold: false,
        orientability: NotApplicable,
    },
    Raw {
        name: "three-triangles",
        description: "three triangles <123,345,246> around a hollow loop",
        text: include_str!("../corpus/three-triangles.cplx"),
        f_vector: &[1, 6, 9, 3],
        betti: [&[0, 0, 1, 0]; 4],
        closed_pseudomanifold: false,
        orientability: NotApplicable,
    },
];

/// Names of all entries in a fixed order.
pub fn list() -> Vec<&'static str> {
    RAW.iter().map(|r| r.name).collect()
}

/// One-line description of an entry.
pub fn describe(name: &str) -> Result<&'static str> {
    RAW.iter()
        .find(|r| r.name == name)
        .map(|r| r.description)
        .ok_or_else(|| Error::UnknownCorpusEntry(name.to_string()))
}

fn build(raw: &Raw) -> Result<CorpusEntry> {
    let invalid = |message: String| Error::CorpusValidation {
        name: raw.name.to_string(),
        message,
    };
    let complex = parse_complex(raw.text).map_err(|e| invalid(e.to_string()))?;
    let expected = Expected {
        vertices: raw.f_vector[1],
        facets: complex.facet_count(),
        f_vector: raw.f_vector.to_vec(),
        betti: CORPUS_FIELDS
            .iter()
            .zip(raw.betti)
            .map(|(f, b)| (*f, BettiNumbers::from_vec(b.to_vec())))
            .collect(),
        closed_pseudomanifold: raw.closed_pseudomanifold,
        orientability: raw.orientability,
    };
    validate(raw.name, &complex, &expected).map_err(invalid)?;
    Ok(CorpusEntry {
        name: raw.name,
        description: raw.description,
        complex,
        expected,
    })
}

/// Recomputes every invariant in `expected` and reports the first mismatch.
pub fn validate(
    name: &str,
    complex: &SimplicialComplex,
    expected: &Expected,
) -> std::result::Result<(), String> {
    let f = complex.f_vector();
    if f != expected.f_vector {
        return Err(format!("f-vector {f:?}, expected {:?}", expected.f_vector));
    }
    if complex.n() != expected.vertices {
        return Err(format!(
            "ground set of size {}, expected {}",
            complex.n(),
            expected.vertices
        ));
    }
    for (field, betti) in &expected.betti {
        let got = reduced_betti_all(complex, *field);
        if &got != betti {
            return Err(format!(
                "betti over {field}: {:?}, expected {:?}",
                got.as_slice(),
                betti.as_slice()
            ));
        }
    }
    if complex.is_closed_pseudomanifold() != expected.closed_pseudomanifold {
        return Err("pseudomanifold flag mismatch".into());
    }
    let o = orientability(complex);
    if o != expected.orientability {
        return Err(format!(
            "orientability {o}, expected {}",
            expected.orientability
        ));
    }
    let sizes: &[(&str, usize, usize)] = &[
        ("rp2", 6, 10),
        ("klein", 8, 16),
        ("dunce-hat", 8, 17),
        ("moore3", 9, 19),
    ];
    if let Some(&(_, v, m)) = sizes.iter().find(|s| s.0 == name) {
        if complex.n() != v || complex.facet_count() != m {
            return Err(format!(
                "size ({}, {}), expected ({v}, {m})",
                complex.n(),
                complex.facet_count()
            ));
        }
    }
    Ok(())
}

fn validated() -> &'static [Result<CorpusEntry>] {
    static ENTRIES: OnceLock<Vec<Result<CorpusEntry>>> = OnceLock::new();
    ENTRIES.get_or_init(|| RAW.iter().map(build).collect())
}

/// Loads and validates an entry.
pub fn load(name: &str) -> Result<CorpusEntry> {
    let idx = RAW
        .iter()
        .position(|r| r.name == name)
        .ok_or_else(|| Error::UnknownCorpusEntry(name.to_string()))?;
    validated()[idx].clone()
}

/// Raw `.cplx` text of an entry, as shipped.
pub fn source(name: &str) -> Result<&'static str> {
    RAW.iter()
        .find(|r| r.name == name)
        .map(|r| r.text)
        .ok_or_else(|| Error::UnknownCorpusEntry(name.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_entry_validates() {
        for name in list() {
            let entry = load(name).unwrap_or_else(|e| panic!("{e}"));
            assert_eq!(entry.name, name);
        }
    }

    #[test]
    fn unknown_name() {
        assert_eq!(
            load("nope").unwrap_err(),
            Error::UnknownCorpusEntry("nope".into())
        );
    }

    #[test]
    fn corrupt_data_is_caught() {
        let entry = load("torus7").unwrap();
        let mut expected = entry.expected.clone();
        expected
            .betti
            .insert(Field::Q, BettiNumbers::from_vec(vec![0, 0, 1, 1]));
        assert!(validate("torus7", &entry.complex, &expected).is_err());
    }
}
