//! The block calculus: m-dimensional blocks x₀(1,a₁)x₁…(1,aₘ)xₘ, their
//! equivalence and canonical form, validity, vertices, sub-blocks, and
//! facets.
//!
//! A block encodes m independent single-symbol insertions carrying its
//! minimum word to its maximum word. Equivalent blocks (same vertex map) have
//! a unique canonical representative: no segment may begin with the symbol
//! inserted just before it. All structural operations live here; isomorphism
//! and classification are in [`crate::isomorphism`].

use std::collections::BTreeSet;
use std::fmt;

use thiserror::Error;

use crate::word::{Alphabet, Symbol, Word, EMPTY_WORD_TEXT};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum BlockError {
    #[error("index {index} out of range for a block of dimension {dim}")]
    IndexOutOfRange { index: usize, dim: usize },
    #[error("upper and lower index sets overlap at {index}")]
    OverlappingIndices { index: usize },
    #[error("operation requires a valid block")]
    InvalidBlock,
    #[error("operation requires a block of dimension ≥ 1")]
    ZeroDimensional,
    #[error("classification covers dimensions 0 through 4, got {dim}")]
    DimensionUnsupported { dim: usize },
    #[error("valid {dim}-block matches no classification representative")]
    NoMatchingClass { dim: usize },
    #[error("block at {pos}: {msg}")]
    Parse { pos: usize, msg: String },
}

/// A pair of disjoint index sets selecting a sub-block: `upper` indices are
/// realized as symbols, `lower` indices are deleted.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct IndexSelection {
    pub upper: BTreeSet<usize>,
    pub lower: BTreeSet<usize>,
}

impl IndexSelection {
    pub fn new<U, L>(upper: U, lower: L) -> Result<Self, BlockError>
    where
        U: IntoIterator<Item = usize>,
        L: IntoIterator<Item = usize>,
    {
        let upper: BTreeSet<usize> = upper.into_iter().collect();
        let lower: BTreeSet<usize> = lower.into_iter().collect();
        if let Some(&i) = upper.intersection(&lower).next() {
            return Err(BlockError::OverlappingIndices { index: i });
        }
        Ok(IndexSelection { upper, lower })
    }
}

/// An m-dimensional block x₀(1,a₁)x₁…(1,aₘ)xₘ. Indices of edges are
/// 1-based in the public API, matching the usual notation.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Block {
    head: Word,
    steps: Vec<(Symbol, Word)>,
}

impl fmt::Debug for Block {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "B[{:?}", self.head)?;
        for (a, x) in &self.steps {
            write!(f, "({:?}){:?}", a, x)?;
        }
        write!(f, "]")
    }
}

impl Block {
    pub fn word(w: Word) -> Self {
        Block {
            head: w,
            steps: Vec::new(),
        }
    }

    pub fn new(head: Word, steps: Vec<(Symbol, Word)>) -> Self {
        Block { head, steps }
    }

    pub fn dim(&self) -> usize {
        self.steps.len()
    }

    pub fn head(&self) -> &Word {
        &self.head
    }

    pub fn steps(&self) -> &[(Symbol, Word)] {
        &self.steps
    }

    /// Inserted symbol of the i-th edge (1-based).
    pub fn edge_symbol(&self, i: usize) -> Symbol {
        self.steps[i - 1].0
    }

    /// Segment xᵢ (0-based; segment 0 is the head).
    pub fn segment(&self, i: usize) -> &Word {
        if i == 0 {
            &self.head
        } else {
            &self.steps[i - 1].1
        }
    }

    /// The vertex v_I: realize insertions at indices in `realize`
    /// (1-based), skip the rest.
    pub fn vertex<I: IntoIterator<Item = usize>>(
        &self,
        realize: I,
    ) -> Result<Word, BlockError> {
        let mut mask = 0u64;
        for i in realize {
            if i == 0 || i > self.dim() {
                return Err(BlockError::IndexOutOfRange {
                    index: i,
                    dim: self.dim(),
                });
            }
            mask |= 1 << (i - 1);
        }
        Ok(self.vertex_mask(mask))
    }

    /// Vertex by bitmask; bit i−1 set realizes edge i.
    pub fn vertex_mask(&self, mask: u64) -> Word {
        let mut w = self.head.clone();
        for (k, (a, x)) in self.steps.iter().enumerate() {
            if mask >> k & 1 == 1 {
                w.push(*a);
            }
            w.extend(x);
        }
        w
    }

    pub fn min_word(&self) -> Word {
        self.vertex_mask(0)
    }

    pub fn max_word(&self) -> Word {
        self.vertex_mask((1u64 << self.dim()) - 1)
    }

    /// The deduplicated vertex set `{v_I : I ⊆ [m]}`.
    pub fn vertices(&self) -> BTreeSet<Word> {
        let mut out = BTreeSet::new();
        for mask in 0..(1u64 << self.dim()) {
            out.insert(self.vertex_mask(mask));
        }
        out
    }

    /// The raw sub-block σ(I⁺,I⁻): neither canonicalized nor
    /// validity-checked.
    pub fn sub_block(&self, sel: &IndexSelection) -> Result<Block, BlockError> {
        for &i in sel.upper.iter().chain(sel.lower.iter()) {
            if i == 0 || i > self.dim() {
                return Err(BlockError::IndexOutOfRange {
                    index: i,
                    dim: self.dim(),
                });
            }
        }
        let mut head = self.head.clone();
        let mut steps: Vec<(Symbol, Word)> = Vec::new();
        for (k, (a, x)) in self.steps.iter().enumerate() {
            let i = k + 1;
            if sel.upper.contains(&i) {
                // realize the symbol into the running segment
                let seg = steps.last_mut().map(|(_, s)| s).unwrap_or(&mut head);
                seg.push(*a);
                seg.extend(x);
            } else if sel.lower.contains(&i) {
                let seg = steps.last_mut().map(|(_, s)| s).unwrap_or(&mut head);
                seg.extend(x);
            } else {
                steps.push((*a, x.clone()));
            }
        }
        Ok(Block { head, steps })
    }

    /// True iff no segment xᵢ (i ≥ 1) begins with its edge symbol aᵢ.
    pub fn is_canonical(&self) -> bool {
        self.steps.iter().all(|(a, x)| x.first() != Some(*a))
    }

    /// The unique canonical representative of this block's equivalence
    /// class: maximal runs of each aᵢ are moved left across edge i,
    /// processing edges right to left. Idempotent.
    pub fn canonicalize(&self) -> Block {
        if self.is_canonical() {
            return self.clone();
        }
        let mut b = self.clone();
        for i in (0..b.steps.len()).rev() {
            let a = b.steps[i].0;
            let x = &mut b.steps[i].1;
            let t = x.symbols().iter().take_while(|&&s| s == a).count();
            if t == 0 {
                continue;
            }
            let rest = Word::from_symbols(x.symbols()[t..].to_vec());
            *x = rest;
            let dest = if i == 0 {
                &mut b.head
            } else {
                &mut b.steps[i - 1].1
            };
            for _ in 0..t {
                dest.push(a);
            }
        }
        debug_assert!(b.is_canonical());
        b
    }

    /// Equivalence: identical vertex maps, decided by canonical forms.
    pub fn equivalent(&self, other: &Block) -> bool {
        self.canonicalize() == other.canonicalize()
    }

    /// Validity, computed on the canonical form: invalid iff two adjacent
    /// edges insert the same symbol with nothing between them.
    pub fn is_valid(&self) -> bool {
        let c = self.canonicalize();
        !c.steps
            .windows(2)
            .any(|p| p[0].1.is_empty() && p[0].0 == p[1].0)
    }

    /// Upper facet σ({i},∅); always valid and canonical for valid σ.
    pub fn upper_facet(&self, i: usize) -> Result<Block, BlockError> {
        if !self.is_valid() {
            return Err(BlockError::InvalidBlock);
        }
        let sel = IndexSelection::new([i], [])?;
        let raw = self.sub_block(&sel)?;
        let canon = raw.canonicalize();
        debug_assert_eq!(canon, raw, "upper facets of valid blocks are canonical");
        Ok(canon)
    }

    /// Lower facet σ(∅,{i}) canonicalized, or `None` when invalid.
    pub fn lower_facet(&self, i: usize) -> Result<Option<Block>, BlockError> {
        if !self.is_valid() {
            return Err(BlockError::InvalidBlock);
        }
        let sel = IndexSelection::new([], [i])?;
        let raw = self.sub_block(&sel)?;
        if raw.is_valid() {
            Ok(Some(raw.canonicalize()))
        } else {
            Ok(None)
        }
    }

    /// All valid canonical sub-blocks σ(I⁺,I⁻), deduplicated. Contains σ
    /// itself and all its vertices as 0-blocks; closed under taking faces.
    pub fn faces(&self) -> Result<BTreeSet<Block>, BlockError> {
        if !self.is_valid() {
            return Err(BlockError::InvalidBlock);
        }
        let m = self.dim();
        let mut out = BTreeSet::new();
        // each index independently: keep the edge, realize it, or delete it
        let mut choice = vec![0u8; m];
        loop {
            let mut sel = IndexSelection::default();
            for (k, &c) in choice.iter().enumerate() {
                match c {
                    1 => {
                        sel.upper.insert(k + 1);
                    }
                    2 => {
                        sel.lower.insert(k + 1);
                    }
                    _ => {}
                }
            }
            let raw = self.sub_block(&sel)?;
            if raw.is_valid() {
                out.insert(raw.canonicalize());
            }
            // advance the ternary counter
            let mut k = 0;
            loop {
                if k == m {
                    return Ok(out);
                }
                choice[k] += 1;
                if choice[k] < 3 {
                    break;
                }
                choice[k] = 0;
                k += 1;
            }
        }
    }

    /// True iff `face` equals some valid canonical sub-block of `self`;
    /// both must be valid and `self` canonical for a meaningful answer.
    pub fn has_face(&self, face: &Block) -> Result<bool, BlockError> {
        if face.dim() > self.dim() {
            return Ok(false);
        }
        Ok(self.faces()?.contains(face))
    }

    /// Boundary facets with signs: (i, upper, lower-if-valid) for each edge.
    pub(crate) fn facet_pairs(&self) -> Result<Vec<(usize, Block, Option<Block>)>, BlockError> {
        (1..=self.dim())
            .map(|i| Ok((i, self.upper_facet(i)?, self.lower_facet(i)?)))
            .collect()
    }

    /// Appends prefix and suffix words; the result is canonicalized.
    pub fn affix(&self, prefix: &Word, suffix: &Word) -> Block {
        let mut head = prefix.clone();
        head.extend(&self.head);
        let mut steps = self.steps.clone();
        if let Some((_, last)) = steps.last_mut() {
            last.extend(suffix);
        } else {
            head.extend(suffix);
        }
        Block { head, steps }.canonicalize()
    }

    /// Reverses every segment and the edge order; canonicalized.
    pub fn reverse(&self) -> Block {
        let m = self.dim();
        if m == 0 {
            return Block::word(self.head.reverse());
        }
        let head = self.steps[m - 1].1.reverse();
        let steps = (0..m)
            .rev()
            .map(|k| {
                let x = if k == 0 { &self.head } else { &self.steps[k - 1].1 };
                (self.steps[k].0, x.reverse())
            })
            .collect();
        Block { head, steps }.canonicalize()
    }

    /// Applies a symbol permutation (`perm[s]` replaces symbol `s`).
    pub fn permute_symbols(&self, perm: &[Symbol]) -> Block {
        let map_word = |w: &Word| {
            Word::from_symbols(w.symbols().iter().map(|s| perm[s.index()]).collect())
        };
        let b = Block {
            head: map_word(&self.head),
            steps: self
                .steps
                .iter()
                .map(|(a, x)| (perm[a.index()], map_word(x)))
                .collect(),
        };
        debug_assert_eq!(b.is_canonical(), self.is_canonical());
        b
    }

    /// Renders the block grammar: literals as word text, edges as `(c)`;
    /// the empty 0-block renders as `_`.
    pub fn display(&self, alphabet: &Alphabet) -> String {
        if self.dim() == 0 && self.head.is_empty() {
            return EMPTY_WORD_TEXT.to_string();
        }
        let mut s = String::new();
        let render = |w: &Word, s: &mut String| {
            for &sym in w.symbols() {
                s.push(alphabet.char_of(sym));
            }
        };
        render(&self.head, &mut s);
        for (a, x) in &self.steps {
            s.push('(');
            s.push(alphabet.char_of(*a));
            s.push(')');
            render(x, &mut s);
        }
        s
    }
}

/// Every canonical valid block over the first `num_symbols` symbols whose
/// maximum word has length at most `max_word_len`.
///
/// A block is its maximum word with the inserted positions marked, so the
/// enumeration walks all (word, marking) pairs and keeps the canonical valid
/// ones. Order is deterministic: by word length, word, then marking.
pub fn enumerate_canonical_valid_blocks(num_symbols: u8, max_word_len: usize) -> Vec<Block> {
    assert!(max_word_len <= 16, "enumeration is exponential in word length");
    let base = num_symbols as u64;
    let mut out = Vec::new();
    for len in 0..=max_word_len {
        let mut word = vec![Symbol(0); len];
        let count = base.pow(len as u32);
        for code in 0..count {
            let mut c = code;
            for slot in word.iter_mut() {
                *slot = Symbol((c % base) as u8);
                c /= base;
            }
            for marks in 0..(1u32 << len) {
                let mut head = Word::empty();
                let mut steps: Vec<(Symbol, Word)> = Vec::new();
                for (i, &s) in word.iter().enumerate() {
                    if marks >> i & 1 == 1 {
                        steps.push((s, Word::empty()));
                    } else {
                        match steps.last_mut() {
                            Some((_, x)) => x.push(s),
                            None => head.push(s),
                        }
                    }
                }
                let b = Block::new(head, steps);
                if b.is_canonical() && b.is_valid() {
                    out.push(b);
                }
            }
        }
    }
    out
}

/// Parses the block grammar `item+` with `item := literal | '(' symbol ')'`.
/// Adjacent literals concatenate; `_` is an empty literal; a block with no
/// edges is a 0-block. The result is returned as written (not
/// canonicalized); round-trips exactly on canonical blocks.
pub fn parse_block(alphabet: &Alphabet, text: &str) -> Result<Block, BlockError> {
    let mut head = Word::empty();
    let mut steps: Vec<(Symbol, Word)> = Vec::new();
    let mut chars = text.char_indices().peekable();
    let parse_err = |pos: usize, msg: &str| BlockError::Parse {
        pos,
        msg: msg.to_string(),
    };
    if text.is_empty() {
        return Err(parse_err(0, "empty block expression"));
    }
    while let Some((pos, c)) = chars.next() {
        match c {
            '(' => {
                let (spos, sym) = chars
                    .next()
                    .ok_or_else(|| parse_err(pos, "unclosed '('"))?;
                if sym == '(' || sym == ')' {
                    return Err(parse_err(spos, "expected a symbol inside '(…)'"));
                }
                let sym = alphabet
                    .symbol_of(sym)
                    .map_err(|e| parse_err(spos, &e.to_string()))?;
                match chars.next() {
                    Some((_, ')')) => {}
                    Some((p, _)) => return Err(parse_err(p, "expected ')'")),
                    None => return Err(parse_err(pos, "unclosed '('")),
                }
                steps.push((sym, Word::empty()));
            }
            ')' => return Err(parse_err(pos, "unmatched ')'")),
            '_' => {
                // explicit empty literal; nothing to append
            }
            '#' => return Err(parse_err(pos, "'#' is not a block character")),
            c if c.is_whitespace() => {
                return Err(parse_err(pos, "whitespace inside a block expression"))
            }
            c => {
                let sym = alphabet
                    .symbol_of(c)
                    .map_err(|e| parse_err(pos, &e.to_string()))?;
                match steps.last_mut() {
                    Some((_, x)) => x.push(sym),
                    None => head.push(sym),
                }
            }
        }
    }
    Ok(Block::new(head, steps))
}
