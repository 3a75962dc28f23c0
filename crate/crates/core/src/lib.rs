//! Graded Betti numbers of numerical semigroup rings `k[S]`, computed from
//! the reduced homology of squarefree divisor complexes, and a checker for
//! the relation `β_{i,s}(S') = β_{i,s+(i+1)n_1}(S)` between an Arf semigroup
//! `S` and its blowup `S'` when both have multiplicity `n_1`.
//!
//! ```
//! use arf_betti::{graded_betti, FieldSpec, NumericalSemigroup};
//!
//! let s: NumericalSemigroup = "3,4,5".parse().unwrap();
//! let table = graded_betti(&s, FieldSpec::Rationals).unwrap();
//! assert_eq!(table.get(1, 8), 1);
//! assert_eq!(table.get(2, 14), 1);
//! ```

pub mod arf;
pub mod betti;
pub mod cli;
pub mod complex;
pub mod error;
pub mod homology;
pub mod linalg;
pub mod semigroup;
pub mod verify;

use num_bigint::BigInt;

pub use arf::{
    arf_closure, arf_violation, blowup, enumerate_arf, is_arf, multiplicity_sequence, quotient,
    same_multiplicity_blowup, ArfWitness,
};
pub use betti::{graded_betti, graded_betti_direct, BettiTable};
pub use complex::{squarefree_divisor_complex, Face, SimplicialComplex};
pub use error::{Error, PreconditionReason, Result};
pub use homology::{reduced_homology_dims, FieldSpec, HomologyDims};
pub use linalg::SparseMatrix;
pub use semigroup::NumericalSemigroup;
pub use verify::{check_propositions, check_theorem, classify_unmatched_faces, sweep};

/// Version stamped into every JSON document the crate emits.
pub const SCHEMA_VERSION: u32 = 1;

/// Boundary matrices as produced by the complex builders.
pub type IntMatrix = SparseMatrix<i64>;
/// Fallback width for fraction-free elimination.
pub type WideIntMatrix = SparseMatrix<i128>;
pub type BigIntMatrix = SparseMatrix<BigInt>;
/// Residues in `GF(p)`.
pub type ModMatrix = SparseMatrix<u32>;
