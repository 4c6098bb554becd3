//! Graded boundary matrices and exact homology over Z and Z₂.
//!
//! Betti numbers come from ranks of consecutive boundary matrices, torsion
//! from the invariant factors of the Smith normal form. H₀ is unreduced:
//! betti₀ counts connected components, and "trivial homology" means
//! betti₀ = 1 with everything above zero.

use num_bigint::BigInt;
use num_traits::Zero;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::block::BlockError;
use crate::chain::{boundary_block, Chain};
use crate::complex::BlockComplex;
use crate::matrix::{smith_normal_form, Bitrix, IntMatrix};

#[derive(Debug, Error)]
pub enum HomologyError {
    #[error("dimension {k} out of range for this complex")]
    DimensionOutOfRange { k: usize },
    #[error("chain is not supported on the complex")]
    UnsupportedChain,
    #[error("torsion coefficient exceeds u64")]
    TorsionOverflow,
    #[error(transparent)]
    Block(#[from] BlockError),
}

/// Homology of one dimension: free rank plus invariant factors > 1.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DimensionHomology {
    pub k: usize,
    pub betti: usize,
    pub torsion: Vec<u64>,
}

/// Per-dimension homology with the Euler characteristic of the carrier.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HomologyResult {
    pub dims: Vec<DimensionHomology>,
    pub euler: i64,
}

impl HomologyResult {
    pub fn betti(&self) -> Vec<usize> {
        self.dims.iter().map(|d| d.betti).collect()
    }

    pub fn is_torsion_free(&self) -> bool {
        self.dims.iter().all(|d| d.torsion.is_empty())
    }

    /// betti₀ = 1 and everything above zero, no torsion.
    pub fn is_trivial(&self) -> bool {
        self.is_torsion_free()
            && self
                .dims
                .iter()
                .all(|d| if d.k == 0 { d.betti == 1 } else { d.betti == 0 })
            && self.dims.first().is_some_and(|d| d.betti == 1)
    }

    /// Compact text like `(1, 0, 1)` or `(1, 1+Z/2)`.
    pub fn summary(&self) -> String {
        let parts: Vec<String> = self
            .dims
            .iter()
            .map(|d| {
                let mut s = d.betti.to_string();
                for t in &d.torsion {
                    s.push_str(&format!("+Z/{t}"));
                }
                s
            })
            .collect();
        format!("({})", parts.join(", "))
    }
}

/// The matrix of ∂_k: columns are the k-blocks, rows the (k−1)-blocks, in
/// the complex's deterministic order.
pub fn boundary_matrix(complex: &BlockComplex, k: usize) -> Result<IntMatrix, HomologyError> {
    let dim = complex.dim().unwrap_or(0);
    if k == 0 || k > dim {
        return Err(HomologyError::DimensionOutOfRange { k });
    }
    let rows = complex.count_of_dim(k - 1);
    let cols = complex.count_of_dim(k);
    let mut m = IntMatrix::zeros(rows, cols);
    for (j, b) in complex.blocks_of_dim(k).iter().enumerate() {
        let boundary = boundary_block(b)?;
        for (facet, coeff) in boundary.terms() {
            let i = complex
                .index_of(facet)
                .expect("facets of complex blocks lie in the complex");
            m.add_to(i, j, &BigInt::from(coeff));
        }
    }
    Ok(m)
}

/// Shared reduction pipeline: `counts[k]` generators in dimension k and
/// `mats[k-1]` = ∂_k for k = 1..counts.len().
pub fn homology_from_matrices(counts: &[usize], mats: &[IntMatrix]) -> HomologyResult {
    let n = counts.len();
    debug_assert_eq!(mats.len(), n.saturating_sub(1));
    let mut ranks = vec![0usize; n + 1];
    let mut torsion: Vec<Vec<u64>> = vec![Vec::new(); n + 1];
    for (i, m) in mats.iter().enumerate() {
        let snf = smith_normal_form(m, false, false);
        ranks[i + 1] = snf.rank;
        torsion[i + 1] = snf
            .torsion()
            .iter()
            .map(|t| u64::try_from(t).expect("torsion coefficient exceeds u64"))
            .collect();
    }
    let dims = (0..n)
        .map(|k| DimensionHomology {
            k,
            betti: counts[k] - ranks[k] - ranks[k + 1],
            torsion: torsion[k + 1].clone(),
        })
        .collect();
    let euler = counts
        .iter()
        .enumerate()
        .map(|(k, &c)| if k % 2 == 0 { c as i64 } else { -(c as i64) })
        .sum();
    HomologyResult { dims, euler }
}

/// Exact homology over Z of a block complex.
pub fn homology_z(complex: &BlockComplex) -> Result<HomologyResult, HomologyError> {
    let counts = complex.counts();
    let mats = (1..counts.len())
        .map(|k| boundary_matrix(complex, k))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(homology_from_matrices(&counts, &mats))
}

/// Per-dimension Betti numbers over the two-element field.
pub fn homology_z2(complex: &BlockComplex) -> Result<Vec<usize>, HomologyError> {
    let counts = complex.counts();
    let n = counts.len();
    let mut ranks = vec![0usize; n + 1];
    for (k, rank) in ranks.iter_mut().enumerate().take(n).skip(1) {
        *rank = Bitrix::from_int(&boundary_matrix(complex, k)?).rank();
    }
    Ok((0..n).map(|k| counts[k] - ranks[k] - ranks[k + 1]).collect())
}

/// True iff the boundary of the chain vanishes.
pub fn is_cycle(chain: &Chain) -> Result<bool, HomologyError> {
    Ok(crate::chain::boundary_chain(chain)?.is_zero())
}

/// True iff some integer chain one dimension up has boundary `chain`;
/// decided through the Smith normal form of ∂_{k+1}.
pub fn is_boundary(complex: &BlockComplex, chain: &Chain) -> Result<bool, HomologyError> {
    if chain.is_zero() {
        return Ok(true);
    }
    for (b, _) in chain.terms() {
        if !complex.contains(b) {
            return Err(HomologyError::UnsupportedChain);
        }
    }
    let k = chain.dim().expect("nonzero chain has a dimension");
    let dim = complex.dim().unwrap_or(0);
    if k == dim {
        // no (k+1)-blocks: only the zero chain bounds
        return Ok(false);
    }
    let m = boundary_matrix(complex, k + 1)?;
    let snf = smith_normal_form(&m, true, false);
    let u = snf.row_trans.as_ref().expect("requested transform");
    let mut target = vec![BigInt::zero(); complex.count_of_dim(k)];
    for (b, coeff) in chain.terms() {
        target[complex.index_of(b).expect("checked support")] = BigInt::from(coeff);
    }
    let transformed = u.mul_vec(&target);
    for (i, value) in transformed.iter().enumerate() {
        if i < snf.rank {
            if !(value % &snf.diag[i]).is_zero() {
                return Ok(false);
            }
        } else if !value.is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// A basis of the k-cycle space, from the column transform of the Smith
/// normal form of ∂_k.
pub fn cycle_basis(complex: &BlockComplex, k: usize) -> Result<Vec<Chain>, HomologyError> {
    let blocks = complex.blocks_of_dim(k);
    if blocks.is_empty() {
        return Ok(Vec::new());
    }
    if k == 0 {
        // every 0-chain is a cycle
        return Ok(blocks
            .iter()
            .map(|b| Chain::from_terms([(b.clone(), 1)]))
            .collect());
    }
    let m = boundary_matrix(complex, k)?;
    let snf = smith_normal_form(&m, false, true);
    let v = snf.col_trans.as_ref().expect("requested transform");
    let mut out = Vec::new();
    for j in snf.rank..m.cols() {
        let mut chain = Chain::zero();
        for (i, b) in blocks.iter().enumerate() {
            let coeff = v.get(i, j);
            if !coeff.is_zero() {
                let c = i64::try_from(coeff).map_err(|_| HomologyError::TorsionOverflow)?;
                chain.add_term(b.clone(), c);
            }
        }
        debug_assert!(is_cycle(&chain)?);
        out.push(chain);
    }
    Ok(out)
}

/// Sign coherence: consecutive boundary matrices compose to zero.
pub fn check_boundary_composition(complex: &BlockComplex) -> Result<bool, HomologyError> {
    let dim = complex.dim().unwrap_or(0);
    for k in 2..=dim {
        let a = boundary_matrix(complex, k - 1)?;
        let b = boundary_matrix(complex, k)?;
        if !a.mul(&b).is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::{build_complex, WordSet};
    use crate::matrix::rank_z;

    fn complex_of(texts: &[&str]) -> crate::complex::InsertionComplex {
        let ws = WordSet::from_texts(texts.iter().copied()).unwrap();
        build_complex(&ws, None)
    }

    #[test]
    fn circle_fixture() {
        let k = complex_of(&["a", "ab", "ba", "b"]);
        let h = homology_z(k.cells()).unwrap();
        assert_eq!(h.betti(), vec![1, 1]);
        assert!(h.is_torsion_free());
        assert_eq!(h.euler, 0);
        assert_eq!(homology_z2(k.cells()).unwrap(), vec![1, 1]);
        assert_eq!(h.summary(), "(1, 1)");
    }

    #[test]
    fn sphere_fixture() {
        let k = complex_of(&["a", "aa", "b", "bb", "ab", "ba", "bab", "aba"]);
        assert_eq!(k.cells().counts(), vec![8, 12, 6]);
        let h = homology_z(k.cells()).unwrap();
        assert_eq!(h.betti(), vec![1, 0, 1]);
        assert!(h.is_torsion_free());
        assert_eq!(h.euler, 2);
        assert_eq!(homology_z2(k.cells()).unwrap(), vec![1, 0, 1]);
        assert!(check_boundary_composition(k.cells()).unwrap());
    }

    #[test]
    fn contractible_fixtures() {
        let k = complex_of(&["_", "a", "b", "ab", "ba"]);
        let h = homology_z(k.cells()).unwrap();
        assert_eq!(h.betti(), vec![1, 0, 0]);
        assert!(h.is_trivial());

        let k = complex_of(&["_", "a", "b", "c", "ab", "ac", "bc", "abc"]);
        let h = homology_z(k.cells()).unwrap();
        assert_eq!(h.betti(), vec![1, 0, 0, 0]);
        assert!(h.is_trivial());
    }

    #[test]
    fn empty_and_singleton() {
        let ws = WordSet::new(crate::word::Alphabet::new([]).unwrap(), []);
        let k = build_complex(&ws, None);
        let h = homology_z(k.cells()).unwrap();
        assert!(h.betti().is_empty());
        assert_eq!(h.euler, 0);

        let k = complex_of(&["abc"]);
        let h = homology_z(k.cells()).unwrap();
        assert_eq!(h.betti(), vec![1]);
        assert_eq!(homology_z2(k.cells()).unwrap(), vec![1]);
    }

    #[test]
    fn boundary_matrix_shape_and_rank() {
        let k = complex_of(&["a", "ab", "ba", "b"]);
        let m = boundary_matrix(k.cells(), 1).unwrap();
        assert_eq!((m.rows(), m.cols()), (4, 4));
        assert_eq!(rank_z(&m), 3);
        assert!(boundary_matrix(k.cells(), 2).is_err());
    }

    #[test]
    fn cycle_and_boundary_queries() {
        let k = complex_of(&["a", "ab", "ba", "b"]);
        let cycles = cycle_basis(k.cells(), 1).unwrap();
        assert_eq!(cycles.len(), 1, "single independent 1-cycle");
        let gamma = &cycles[0];
        assert!(is_cycle(gamma).unwrap());
        assert!(!is_boundary(k.cells(), gamma).unwrap(), "no 2-blocks exist");

        // the boundary of any square is a cycle and a boundary
        let k = complex_of(&["_", "a", "b", "ab", "ba"]);
        let square = k.cells().blocks_of_dim(2)[0].clone();
        let b = boundary_block(&square).unwrap();
        assert!(is_cycle(&b).unwrap());
        assert!(is_boundary(k.cells(), &b).unwrap());
        assert!(is_boundary(k.cells(), &Chain::zero()).unwrap());

        // chains must be supported on the complex
        let other = complex_of(&["c", "cc"]);
        let stray = Chain::from_terms([(other.cells().blocks_of_dim(1)[0].clone(), 1)]);
        assert!(matches!(
            is_boundary(k.cells(), &stray),
            Err(HomologyError::UnsupportedChain)
        ));
    }

    #[test]
    fn euler_characteristic_matches_betti_alternation() {
        for texts in [
            vec!["a", "ab", "ba", "b"],
            vec!["_", "a", "b", "ab", "ba"],
            vec!["a", "aa", "b", "bb", "ab", "ba", "bab", "aba"],
            vec!["_", "a", "b", "c", "ab", "ac", "bc", "abc"],
        ] {
            let k = complex_of(&texts);
            let h = homology_z(k.cells()).unwrap();
            let alt: i64 = h
                .dims
                .iter()
                .map(|d| if d.k % 2 == 0 { d.betti as i64 } else { -(d.betti as i64) })
                .sum();
            assert_eq!(h.euler, alt, "torsion cancels in the alternating sum");
        }
    }

    #[test]
    fn z2_betti_dominates_z_betti() {
        for texts in [
            vec!["a", "ab", "ba", "b"],
            vec!["a", "aa", "b", "bb", "ab", "ba", "bab", "aba"],
        ] {
            let k = complex_of(&texts);
            let hz = homology_z(k.cells()).unwrap();
            let h2 = homology_z2(k.cells()).unwrap();
            for (d, &b2) in hz.dims.iter().zip(&h2) {
                assert!(b2 >= d.betti);
            }
        }
    }

    #[test]
    fn report_serialization_shape() {
        let k = complex_of(&["a", "ab", "ba", "b"]);
        let h = homology_z(k.cells()).unwrap();
        let json = serde_json::to_value(&h).unwrap();
        assert_eq!(json["euler"], 0);
        assert_eq!(json["dims"][0]["k"], 0);
        assert_eq!(json["dims"][0]["betti"], 1);
        assert_eq!(json["dims"][0]["torsion"], serde_json::json!([]));
    }
}
