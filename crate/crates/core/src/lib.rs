//! Simplicial complexes, exact reduced homology, graded Betti numbers of
//! Alexander dual ideals, and Betti splittings of standard decompositions.
//!
//! ```
//! use betti_split::{corpus, splitting, Field, StandardDecomposition};
//!
//! let cx = corpus::load("paper-ex-2-3").unwrap().complex;
//! let split = StandardDecomposition::from_indices(&cx, &[0, 2]).unwrap();
//! let report = splitting::is_betti_splitting_direct(&cx, &split, Field::Q).unwrap();
//! assert!(!report.verdict);
//! ```

pub mod complex;
pub mod corpus;
pub mod enumerate;
pub mod error;
pub mod exactla;
pub mod format;
pub mod hochster;
pub mod homology;
pub mod splitting;

pub use complex::{Face, PseudomanifoldViolation, SimplicialComplex, StandardDecomposition};
pub use error::{Error, Result};
pub use exactla::{Field, SparseIntMatrix};
pub use hochster::{BettiTable, MonomialIdeal};
pub use homology::BettiNumbers;
pub use splitting::{Mode, Orientability, SplittingReport, Witness};
