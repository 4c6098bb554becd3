//! Vanishing homology of subword intervals.
//!
//! When the minimum word embeds uniquely into the maximum word, the
//! interval complex is connected with no homology above degree zero; that
//! case is asserted. Without unique embedding the statement is only
//! conjectured, so the outcome is reported but never asserted.

use serde::Serialize;

use crate::complex::{build_complex, WordSet};
use crate::homology::{homology_z, HomologyResult};
use crate::verify::VerifyError;
use crate::word::{subword_interval, Alphabet, Word};

#[derive(Clone, Debug, Serialize)]
pub struct NullHomologyReport {
    pub min_word: String,
    pub max_word: String,
    pub unique_embedding: bool,
    pub interval_size: usize,
    pub homology: HomologyResult,
    pub trivial: bool,
    /// True when the theorem applies (unique embedding): a nontrivial
    /// result is then a verification failure.
    pub asserted: bool,
}

impl NullHomologyReport {
    /// False only when an asserted case came out nontrivial.
    pub fn passed(&self) -> bool {
        !self.asserted || self.trivial
    }
}

/// Builds Sub(w_m, w_M), computes its homology, and reports whether the
/// vanishing theorem applies and holds.
pub fn check_null_homology(
    alphabet: &Alphabet,
    w_min: &Word,
    w_max: &Word,
    interval_guard: usize,
) -> Result<NullHomologyReport, VerifyError> {
    let words = subword_interval(w_min, w_max, interval_guard)?;
    let interval_size = words.len();
    let ws = WordSet::new(alphabet.clone(), words);
    let complex = build_complex(&ws, None);
    let homology = homology_z(complex.cells())?;
    let unique = w_min.embeds_uniquely_into(w_max);
    Ok(NullHomologyReport {
        min_word: alphabet.display_word(w_min),
        max_word: alphabet.display_word(w_max),
        unique_embedding: unique,
        interval_size,
        trivial: homology.is_trivial(),
        asserted: unique,
        homology,
    })
}
