//! Insertion block complexes of finite word sets.
//!
//! A set of words over a finite alphabet carries a natural cell structure:
//! its blocks, expressions x₀(1,a₁)x₁…(1,aₘ)xₘ encoding m independent
//! single-symbol insertions, glued along their faces. This crate builds
//! that complex, computes its exact homology over Z and Z₂, classifies
//! blocks up to isomorphism in dimensions ≤ 4, translates cubical
//! complexes into word sets with matching homology, and machine-checks the
//! structural theorems behind all of it.
//!
//! Entry points:
//! - [`word`]: words, the subword order, run-length structure, embeddings.
//! - [`block`]: the block calculus (canonical form, validity, faces).
//! - [`isomorphism`]: block isomorphism and the dimension ≤ 4 classification.
//! - [`complex`]: insertion graphs and complexes of word sets.
//! - [`chain`] / [`homology`]: boundary operator, Smith normal form, Betti
//!   numbers and torsion.
//! - [`cubical`]: elementary cubes, subdivision, and the word translation.
//! - [`verify`]: exhaustive and randomized theorem checks.
//!
//! ```
//! use insertion_complex::complex::{build_complex, WordSet};
//! use insertion_complex::homology::homology_z;
//!
//! // the four words of the minimal 1-cycle form a circle
//! let ws = WordSet::from_texts(["a", "ab", "ba", "b"]).unwrap();
//! let complex = build_complex(&ws, None);
//! let h = homology_z(complex.cells()).unwrap();
//! assert_eq!(h.betti(), vec![1, 1]);
//! assert_eq!(h.euler, 0);
//! ```

pub mod block;
pub mod chain;
pub mod complex;
pub mod cubical;
pub mod homology;
pub mod isomorphism;
pub mod matrix;
pub mod verify;
pub mod word;

pub use block::{parse_block, Block, BlockError, IndexSelection};
pub use chain::{boundary_block, boundary_chain, link_chain, star_chain, Chain};
pub use complex::{build_complex, insertion_graph, BlockComplex, InsertionComplex, WordSet};
pub use homology::{homology_z, homology_z2, HomologyResult};
pub use isomorphism::{classify, isomorphic, BlockClass, Transform};
pub use word::{Alphabet, Symbol, Word};
