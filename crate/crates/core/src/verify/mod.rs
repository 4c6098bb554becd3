//! Machine checks for the structural theorems: the six minimal 1-cycle
//! families, vanishing homology of subword intervals, shared-edge squares
//! and forbidden patterns, the minimal-sphere skeleton search, and the
//! word-equation systems behind the cycle classification.

pub mod cycles;
pub mod nullhom;
pub mod random;
pub mod sphere;
pub mod squares;
pub mod wordeq;

use thiserror::Error;

use crate::block::BlockError;
use crate::homology::HomologyError;
use crate::word::WordError;

pub use cycles::{
    all_words_up_to, brute_force_cycle_classification, cycle_family_words, family_min_t,
    match_cycle_family, CycleMatch, CycleScanReport,
};
pub use nullhom::{check_null_homology, NullHomologyReport};
pub use sphere::{search_min_sphere, SkeletonPattern, SphereSearchReport};
pub use squares::{forbidden_pattern_scan, squares_sharing_edges, ForbiddenViolation, SharedSquares};
pub use wordeq::{check_word_equation_lemma, WordEquationReport};

#[derive(Debug, Error)]
pub enum VerifyError {
    #[error("cycle family {family} does not exist (families are 1..=6)")]
    UnknownFamily { family: usize },
    #[error("t = {t} is below the legal minimum {min} for cycle family {family}")]
    FamilyRange { family: usize, t: usize, min: usize },
    #[error("guard exceeded: {what} = {got}, limit {limit}")]
    Guard {
        what: &'static str,
        got: usize,
        limit: usize,
    },
    #[error("blocks must be valid 2-blocks, got dimension {dim}")]
    NotASquare { dim: usize },
    #[error(transparent)]
    Word(#[from] WordError),
    #[error(transparent)]
    Block(#[from] BlockError),
    #[error(transparent)]
    Homology(#[from] HomologyError),
}
