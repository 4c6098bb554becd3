//! Integer chains of blocks, the boundary operator, and the star/link
//! machinery for chains.
//!
//! The boundary of an m-block is the signed sum over its edges of upper
//! facet minus lower facet, with sign (−1)^{i+1}; absent lower facets
//! contribute nothing. The alternating per-edge sign is what makes ∂∂ = 0.

use std::collections::BTreeMap;

use crate::block::{Block, BlockError};
use crate::word::{Alphabet, Word};

/// A formal integer sum of canonical valid blocks of one dimension.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Chain {
    terms: BTreeMap<Block, i64>,
}

impl Chain {
    pub fn zero() -> Self {
        Chain::default()
    }

    pub fn from_terms<I: IntoIterator<Item = (Block, i64)>>(terms: I) -> Self {
        let mut c = Chain::zero();
        for (b, k) in terms {
            c.add_term(b, k);
        }
        c
    }

    /// Adds `coeff`·`block`, dropping the term if it cancels. All terms of a
    /// chain must share one dimension.
    pub fn add_term(&mut self, block: Block, coeff: i64) {
        use std::collections::btree_map::Entry;
        if coeff == 0 {
            return;
        }
        if let Some(d) = self.dim() {
            assert_eq!(d, block.dim(), "chain terms must share one dimension");
        }
        match self.terms.entry(block) {
            Entry::Vacant(e) => {
                e.insert(coeff);
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += coeff;
                if *e.get() == 0 {
                    e.remove();
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Common dimension of the terms; `None` for the zero chain.
    pub fn dim(&self) -> Option<usize> {
        self.terms.keys().next().map(|b| b.dim())
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Block, i64)> {
        self.terms.iter().map(|(b, &k)| (b, k))
    }

    pub fn coeff(&self, block: &Block) -> i64 {
        self.terms.get(block).copied().unwrap_or(0)
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn scale(&self, k: i64) -> Chain {
        if k == 0 {
            return Chain::zero();
        }
        Chain {
            terms: self.terms.iter().map(|(b, &v)| (b.clone(), v * k)).collect(),
        }
    }

    pub fn add(&self, other: &Chain) -> Chain {
        let mut out = self.clone();
        for (b, k) in other.terms() {
            out.add_term(b.clone(), k);
        }
        out
    }

    pub fn sub(&self, other: &Chain) -> Chain {
        self.add(&other.scale(-1))
    }

    /// Serialized as a list of (coefficient, block text) pairs.
    pub fn to_json(&self, alphabet: &Alphabet) -> serde_json::Value {
        serde_json::Value::Array(
            self.terms()
                .map(|(b, k)| serde_json::json!([k, b.display(alphabet)]))
                .collect(),
        )
    }
}

/// ∂σ = Σᵢ (−1)^{i+1} [upper facet i − lower facet i]; requires a valid
/// block of dimension ≥ 1. Never zero.
pub fn boundary_block(block: &Block) -> Result<Chain, BlockError> {
    if block.dim() == 0 {
        return Err(BlockError::ZeroDimensional);
    }
    let mut out = Chain::zero();
    for (i, upper, lower) in block.facet_pairs()? {
        let sign = if i % 2 == 1 { 1 } else { -1 };
        out.add_term(upper, sign);
        if let Some(lower) = lower {
            out.add_term(lower, -sign);
        }
    }
    debug_assert!(!out.is_zero(), "boundaries of positive-dim blocks are nonzero");
    Ok(out)
}

/// Linear extension of the boundary to chains; 0-chains map to zero.
pub fn boundary_chain(chain: &Chain) -> Result<Chain, BlockError> {
    let mut out = Chain::zero();
    for (b, k) in chain.terms() {
        if b.dim() == 0 {
            continue;
        }
        out = out.add(&boundary_block(b)?.scale(k));
    }
    Ok(out)
}

/// The sub-sum of terms whose block has `w` among its vertices.
pub fn star_chain(chain: &Chain, w: &Word) -> Chain {
    Chain::from_terms(
        chain
            .terms()
            .filter(|(b, _)| b.vertices().contains(w))
            .map(|(b, k)| (b.clone(), k)),
    )
}

/// ∂(star of `w` in the chain).
pub fn link_chain(chain: &Chain, w: &Word) -> Result<Chain, BlockError> {
    boundary_chain(&star_chain(chain, w))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::block::parse_block;
    use crate::word::Alphabet;
    use proptest::prelude::*;

    fn abc() -> Alphabet {
        Alphabet::new("abc".chars()).unwrap()
    }

    fn blk(al: &Alphabet, s: &str) -> Block {
        parse_block(al, s).unwrap()
    }

    #[test]
    fn boundary_of_square() {
        let al = abc();
        let s = blk(&al, "(a)(b)");
        let b = boundary_block(&s).unwrap();
        let expect = Chain::from_terms([
            (blk(&al, "a(b)"), 1),
            (blk(&al, "(b)"), -1),
            (blk(&al, "(a)b"), -1),
            (blk(&al, "(a)"), 1),
        ]);
        assert_eq!(b, expect);
        assert!(boundary_chain(&b).unwrap().is_zero());
    }

    #[test]
    fn boundary_of_edge() {
        let al = abc();
        let s = blk(&al, "b(a)c");
        let b = boundary_block(&s).unwrap();
        let expect = Chain::from_terms([
            (Block::word(al.parse_word("bac").unwrap()), 1),
            (Block::word(al.parse_word("bc").unwrap()), -1),
        ]);
        assert_eq!(b, expect);
    }

    #[test]
    fn boundary_with_missing_lower_facet() {
        let al = abc();
        let s = blk(&al, "(a)b(a)");
        let b = boundary_block(&s).unwrap();
        let expect = Chain::from_terms([
            (blk(&al, "ab(a)"), 1),
            (blk(&al, "b(a)"), -1),
            (blk(&al, "(a)ba"), -1),
            (blk(&al, "(a)b"), 1),
        ]);
        assert_eq!(b, expect);
    }

    #[test]
    fn boundary_squares_to_zero_on_cube() {
        let al = abc();
        let s = blk(&al, "(a)(b)(c)");
        let b = boundary_block(&s).unwrap();
        assert_eq!(b.len(), 6, "three upper and three lower facets");
        assert!(boundary_chain(&b).unwrap().is_zero());
    }

    #[test]
    fn alternating_sign_is_required() {
        // with a constant sign per block the double boundary does not vanish
        let al = abc();
        let s = blk(&al, "(a)(b)(c)");
        let mut constant_sign = Chain::zero();
        for (_, upper, lower) in s.facet_pairs().unwrap() {
            constant_sign.add_term(upper, 1);
            if let Some(lower) = lower {
                constant_sign.add_term(lower, -1);
            }
        }
        assert!(!boundary_chain(&constant_sign).unwrap().is_zero());
    }

    #[test]
    fn linearity_and_zero_cases() {
        let al = abc();
        let s = blk(&al, "(a)(b)");
        let b1 = boundary_chain(&Chain::from_terms([(s.clone(), 2)])).unwrap();
        let b2 = boundary_block(&s).unwrap().scale(2);
        assert_eq!(b1, b2);
        assert!(boundary_chain(&Chain::zero()).unwrap().is_zero());
        assert!(boundary_block(&Block::word(Word::empty())).is_err());
    }

    #[test]
    fn chain_serialization() {
        let al = abc();
        let c = Chain::from_terms([
            (blk(&al, "a(b)"), -2),
            (blk(&al, "(a)b"), 1),
        ]);
        assert_eq!(
            c.to_json(&al).to_string(),
            r#"[[1,"(a)b"],[-2,"a(b)"]]"#
        );
    }

    #[test]
    fn star_and_link() {
        let al = abc();
        let s = blk(&al, "(a)(b)");
        let g = Chain::from_terms([(s.clone(), 1)]);
        let w = al.parse_word("ab").unwrap();
        assert_eq!(star_chain(&g, &w), g, "w is a vertex of the only block");
        let absent = al.parse_word("cc").unwrap();
        assert!(star_chain(&g, &absent).is_zero());
        assert_eq!(link_chain(&g, &w).unwrap(), boundary_block(&s).unwrap());
    }

    fn arb_valid_block() -> impl Strategy<Value = Block> {
        let word = proptest::collection::vec(0u8..3, 0..=4).prop_map(|v| {
            Word::from_symbols(v.into_iter().map(crate::word::Symbol).collect())
        });
        (
            word.clone(),
            proptest::collection::vec(
                (0u8..3).prop_flat_map(move |a| {
                    proptest::collection::vec(0u8..3, 0..=4).prop_map(move |v| {
                        (
                            crate::word::Symbol(a),
                            Word::from_symbols(v.into_iter().map(crate::word::Symbol).collect()),
                        )
                    })
                }),
                1..=5,
            ),
        )
            .prop_map(|(h, s)| Block::new(h, s).canonicalize())
            .prop_filter("valid blocks only", |b| b.is_valid())
    }

    proptest! {
        #[test]
        fn boundary_boundary_zero(b in arb_valid_block()) {
            let db = boundary_block(&b).unwrap();
            prop_assert!(boundary_chain(&db).unwrap().is_zero());
        }
    }
}
