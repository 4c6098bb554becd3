//! Block isomorphism and the classification of valid blocks in dimensions
//! 0 through 4.
//!
//! Two valid m-blocks are isomorphic when some permutation of their edges
//! carries the vertex-coincidence pattern of one onto the other; the pattern
//! (which subsets `I ⊆ [m]` produce equal vertices) is a complete invariant.
//! Isomorphism is decided by a backtracking permutation search pruned with a
//! cheap fingerprint of the pattern.

use std::collections::HashMap;
use std::sync::OnceLock;

use crate::block::{Block, BlockError};
use crate::word::{Symbol, Word};

/// The vertex-coincidence pattern of an m-block: for each of the 2^m index
/// masks, the id of its vertex-equality class (ids numbered by first
/// occurrence in mask order).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VertexPattern {
    dim: usize,
    group: Vec<u16>,
    classes: usize,
}

impl VertexPattern {
    pub fn of(block: &Block) -> VertexPattern {
        let m = block.dim();
        let mut group = Vec::with_capacity(1 << m);
        let mut ids: HashMap<Word, u16> = HashMap::new();
        for mask in 0..(1u64 << m) {
            let v = block.vertex_mask(mask);
            let next = ids.len() as u16;
            group.push(*ids.entry(v).or_insert(next));
        }
        let classes = ids.len();
        VertexPattern {
            dim: m,
            group,
            classes,
        }
    }

    pub fn classes(&self) -> usize {
        self.classes
    }

    /// Invariant fingerprint: the multiset, over vertex classes, of the
    /// sorted mask-popcount profiles. Isomorphic blocks agree on it.
    fn fingerprint(&self) -> Vec<Vec<u32>> {
        let mut per_class: Vec<Vec<u32>> = vec![Vec::new(); self.classes];
        for (mask, &g) in self.group.iter().enumerate() {
            per_class[g as usize].push((mask as u64).count_ones());
        }
        for p in &mut per_class {
            p.sort_unstable();
        }
        per_class.sort_unstable();
        per_class
    }
}

fn apply_perm_to_mask(mask: usize, perm: &[usize]) -> usize {
    let mut out = 0;
    for (from, &to) in perm.iter().enumerate() {
        if mask >> from & 1 == 1 {
            out |= 1 << to;
        }
    }
    out
}

/// Checks the pattern condition on all mask pairs within the assigned
/// prefix that involve the newest index.
fn partial_consistent(p1: &VertexPattern, p2: &VertexPattern, perm: &[usize]) -> bool {
    let k = perm.len();
    if k == 0 {
        return true;
    }
    let newest = 1usize << (k - 1);
    for rest in 0..newest {
        let x = newest | rest;
        let px = apply_perm_to_mask(x, perm);
        for y in 0..(1usize << k) {
            let py = apply_perm_to_mask(y, perm);
            if (p1.group[x] == p1.group[y]) != (p2.group[px] == p2.group[py]) {
                return false;
            }
        }
    }
    true
}

fn search_perm(
    p1: &VertexPattern,
    p2: &VertexPattern,
    used: &mut [bool],
    perm: &mut Vec<usize>,
) -> bool {
    let m = p1.dim;
    if perm.len() == m {
        return true;
    }
    for cand in 0..m {
        if used[cand] {
            continue;
        }
        perm.push(cand);
        used[cand] = true;
        if partial_consistent(p1, p2, perm) && search_perm(p1, p2, used, perm) {
            return true;
        }
        perm.pop();
        used[cand] = false;
    }
    false
}

/// A witnessing edge permutation carrying σ₁'s vertex-coincidence pattern
/// onto σ₂'s, or `None` if the blocks are not isomorphic. The returned
/// vector maps edge k+1 of σ₁ to edge `perm[k]`+1 of σ₂ (0-based storage).
pub fn isomorphic(b1: &Block, b2: &Block) -> Result<Option<Vec<usize>>, BlockError> {
    if !b1.is_valid() || !b2.is_valid() {
        return Err(BlockError::InvalidBlock);
    }
    Ok(isomorphic_patterns(
        &VertexPattern::of(&b1.canonicalize()),
        &VertexPattern::of(&b2.canonicalize()),
    ))
}

/// Pattern-level isomorphism search; see [`isomorphic`].
pub fn isomorphic_patterns(p1: &VertexPattern, p2: &VertexPattern) -> Option<Vec<usize>> {
    if p1.dim != p2.dim || p1.classes != p2.classes {
        return None;
    }
    if p1.fingerprint() != p2.fingerprint() {
        return None;
    }
    let mut used = vec![false; p1.dim];
    let mut perm = Vec::with_capacity(p1.dim);
    if search_perm(p1, p2, &mut used, &mut perm) {
        Some(perm)
    } else {
        None
    }
}

/// One of the transformations that produce isomorphic blocks (and chain
/// isomorphisms at the word-set level).
#[derive(Clone, Debug)]
pub enum Transform {
    /// `perm[s]` replaces symbol `s`; must be a permutation of the alphabet.
    SymbolPermutation(Vec<Symbol>),
    /// Prepend and append fixed words.
    Affix(Word, Word),
    /// Reverse all words; edge i maps to edge m+1−i.
    Reverse,
}

impl Transform {
    pub fn apply_block(&self, b: &Block) -> Block {
        match self {
            Transform::SymbolPermutation(p) => b.permute_symbols(p),
            Transform::Affix(w0, w1) => b.affix(w0, w1),
            Transform::Reverse => b.reverse(),
        }
    }

    pub fn apply_word(&self, w: &Word) -> Word {
        match self {
            Transform::SymbolPermutation(p) => {
                Word::from_symbols(w.symbols().iter().map(|s| p[s.index()]).collect())
            }
            Transform::Affix(w0, w1) => w0.concat(w).concat(w1),
            Transform::Reverse => w.reverse(),
        }
    }
}

/// The isomorphism class of a valid block of dimension ≤ 4: 1 class each in
/// dimensions 0–2, 2 classes in dimension 3, 6 in dimension 4.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlockClass {
    pub dimension: usize,
    /// 1-based index of the representative within its dimension.
    pub index: usize,
    pub representative: Block,
}

impl BlockClass {
    /// Stable label such as `3.2`.
    pub fn label(&self) -> String {
        format!("{}.{}", self.dimension, self.index)
    }
}

/// Classifier holding the representative blocks and their precomputed
/// vertex patterns.
pub struct Classifier {
    reps: Vec<Vec<(Block, VertexPattern)>>,
}

fn rep_block(parts: &[(i8, &str)]) -> Block {
    // parts: (-1, "ab…") literal over symbols a=0, b=1; (0, "a") edge
    let mut head = Word::empty();
    let mut steps: Vec<(Symbol, Word)> = Vec::new();
    let sym = |c: u8| Symbol(c - b'a');
    for &(kind, text) in parts {
        if kind == 0 {
            steps.push((sym(text.as_bytes()[0]), Word::empty()));
        } else {
            let seg = steps.last_mut().map(|(_, x)| x).unwrap_or(&mut head);
            for &c in text.as_bytes() {
                seg.push(sym(c));
            }
        }
    }
    Block::new(head, steps)
}

impl Default for Classifier {
    fn default() -> Self {
        Self::new()
    }
}

impl Classifier {
    pub fn new() -> Self {
        let e = |c: &'static str| (0i8, c);
        let l = |t: &'static str| (-1i8, t);
        let reps_by_dim: Vec<Vec<Block>> = vec![
            vec![rep_block(&[l("")])],
            vec![rep_block(&[e("a")])],
            vec![rep_block(&[e("a"), l("b"), e("a")])],
            vec![
                rep_block(&[e("a"), e("b"), e("a")]),
                rep_block(&[e("a"), l("b"), e("a"), l("b"), e("a")]),
            ],
            vec![
                rep_block(&[e("a"), e("b"), e("a"), e("b")]),
                rep_block(&[e("a"), e("b"), e("a"), l("b"), e("a")]),
                rep_block(&[e("a"), e("b"), l("aa"), e("b"), e("a")]),
                rep_block(&[e("a"), e("b"), l("a"), e("b"), e("a")]),
                rep_block(&[e("a"), e("b"), l("ab"), e("a"), e("b")]),
                rep_block(&[e("a"), l("b"), e("a"), l("b"), e("a"), l("b"), e("a")]),
            ],
        ];
        let reps = reps_by_dim
            .into_iter()
            .map(|blocks| {
                blocks
                    .into_iter()
                    .map(|b| {
                        debug_assert!(b.is_canonical() && b.is_valid());
                        let p = VertexPattern::of(&b);
                        (b, p)
                    })
                    .collect()
            })
            .collect();
        Classifier { reps }
    }

    pub fn representatives(&self, dim: usize) -> impl Iterator<Item = &Block> {
        self.reps[dim].iter().map(|(b, _)| b)
    }

    /// The unique representative class of a valid block of dimension ≤ 4.
    pub fn classify(&self, block: &Block) -> Result<BlockClass, BlockError> {
        if !block.is_valid() {
            return Err(BlockError::InvalidBlock);
        }
        let dim = block.dim();
        if dim > 4 {
            return Err(BlockError::DimensionUnsupported { dim });
        }
        let pattern = VertexPattern::of(&block.canonicalize());
        for (i, (rep, rep_pattern)) in self.reps[dim].iter().enumerate() {
            if isomorphic_patterns(&pattern, rep_pattern).is_some() {
                return Ok(BlockClass {
                    dimension: dim,
                    index: i + 1,
                    representative: rep.clone(),
                });
            }
        }
        // a counterexample to the classification theorems
        Err(BlockError::NoMatchingClass { dim })
    }
}

static CLASSIFIER: OnceLock<Classifier> = OnceLock::new();

/// Classifies against the shared representative table.
pub fn classify(block: &Block) -> Result<BlockClass, BlockError> {
    CLASSIFIER.get_or_init(Classifier::new).classify(block)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::block::parse_block;
    use crate::word::Alphabet;

    fn abc() -> Alphabet {
        Alphabet::new("abc".chars()).unwrap()
    }

    fn blk(al: &Alphabet, s: &str) -> Block {
        parse_block(al, s).unwrap()
    }

    #[test]
    fn isomorphic_examples() {
        let al = abc();
        // both have all 8 vertices distinct
        let pi = isomorphic(&blk(&al, "(a)(b)(c)"), &blk(&al, "(a)b(a)b(a)"))
            .unwrap()
            .expect("isomorphic");
        assert_eq!(pi, vec![0, 1, 2], "identity witness");

        let six1 = blk(&al, "(a)(b)(a)(b)(a)(b)");
        let six2 = blk(&al, "(a)(b)(c)(a)(b)(c)");
        assert!(isomorphic(&six1, &six2).unwrap().is_none());

        let s = blk(&al, "a(b)(a)ba");
        assert_eq!(isomorphic(&s, &s).unwrap(), Some(vec![0, 1]));

        assert!(isomorphic(&blk(&al, "(a)(a)"), &blk(&al, "(a)(b)")).is_err());
    }

    #[test]
    fn transforms_preserve_isomorphism() {
        let al = abc();
        let s = blk(&al, "(a)b(a)");
        let swapped = Transform::SymbolPermutation(vec![Symbol(1), Symbol(0), Symbol(2)]);
        let t = swapped.apply_block(&s);
        assert_eq!(t, blk(&al, "(b)a(b)"));
        assert!(isomorphic(&s, &t).unwrap().is_some());

        let affixed = Transform::Affix(al.parse_word("ca").unwrap(), al.parse_word("b").unwrap());
        let t = affixed.apply_block(&s);
        assert!(isomorphic(&s, &t).unwrap().is_some());

        let rev = Transform::Reverse.apply_block(&blk(&al, "(a)b"));
        assert_eq!(rev, blk(&al, "b(a)"));
        let rev = Transform::Reverse.apply_block(&s);
        assert!(isomorphic(&s, &rev).unwrap().is_some());
    }

    #[test]
    fn classify_examples() {
        let al = abc();
        let c = classify(&blk(&al, "(a)(b)")).unwrap();
        assert_eq!((c.dimension, c.index), (2, 1));
        assert_eq!(c.representative, blk(&al, "(a)b(a)"));

        let c = classify(&blk(&al, "(a)(b)(c)")).unwrap();
        assert_eq!((c.dimension, c.index), (3, 2), "all-distinct 3-block");

        let c = classify(&blk(&al, "(a)(b)(a)")).unwrap();
        assert_eq!((c.dimension, c.index), (3, 1));

        let c = classify(&blk(&al, "(a)(b)(a)(b)")).unwrap();
        assert_eq!((c.dimension, c.index), (4, 1));
        assert_eq!(c.label(), "4.1");

        assert!(matches!(
            classify(&blk(&al, "(a)(b)(c)(a)(b)")),
            Err(BlockError::DimensionUnsupported { dim: 5 })
        ));
    }

    #[test]
    fn representatives_pairwise_non_isomorphic() {
        let cl = Classifier::new();
        for dim in 0..=4 {
            let reps: Vec<&Block> = cl.representatives(dim).collect();
            for i in 0..reps.len() {
                for j in 0..reps.len() {
                    let iso = isomorphic(reps[i], reps[j]).unwrap().is_some();
                    assert_eq!(iso, i == j, "dim {dim}: reps {i} vs {j}");
                }
            }
        }
    }

    #[test]
    fn dim4_representative_coincidences() {
        // coincidence counts drawn from the classification analysis:
        // σ̄₁ has the most coincident vertices, σ̄₆ none
        let cl = Classifier::new();
        let classes: Vec<usize> = cl
            .representatives(4)
            .map(|b| VertexPattern::of(b).classes())
            .collect();
        assert_eq!(classes.len(), 6);
        // all 16 masks distinct for σ̄₆
        assert_eq!(classes[5], 16);
        // σ̄₅ merges exactly one pair
        assert_eq!(classes[4], 15);
        assert!(classes[0] < classes[1]);
    }
}
