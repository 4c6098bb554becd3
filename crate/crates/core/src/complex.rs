//! Word sets, the insertion graph, and the insertion block complex.
//!
//! The complex of a word set W holds every valid canonical block all of
//! whose vertices lie in W, graded by dimension. Enumeration walks ordered
//! word pairs (u, v) with u a subword of v and realizes each embedding of u
//! into v as a candidate block; candidates are canonicalized, validity- and
//! support-checked, and deduplicated. Block order within a dimension is
//! lexicographic on canonical text, so downstream matrices and reports are
//! reproducible byte for byte.

use std::collections::{HashMap, HashSet};

use rayon::prelude::*;
use serde::Deserialize;
use thiserror::Error;

use crate::block::{Block, BlockError};
use crate::isomorphism::Transform;
use crate::word::{word_order, Alphabet, Symbol, Word, WordError, EMPTY_WORD_TEXT};

#[derive(Debug, Error)]
pub enum ComplexError {
    #[error(transparent)]
    Word(#[from] WordError),
    #[error(transparent)]
    Block(#[from] BlockError),
    #[error("line {line}: {source}")]
    AtLine {
        line: usize,
        #[source]
        source: WordError,
    },
    #[error("invalid word-set document: {0}")]
    Document(String),
}

/// A deduplicated set of words with its induced alphabet.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WordSet {
    alphabet: Alphabet,
    words: Vec<Word>,
    index: HashSet<Word>,
}

impl WordSet {
    pub fn new<I: IntoIterator<Item = Word>>(alphabet: Alphabet, words: I) -> Self {
        let mut words: Vec<Word> = words.into_iter().collect();
        words.sort_unstable_by(word_order);
        words.dedup();
        let index = words.iter().cloned().collect();
        WordSet {
            alphabet,
            words,
            index,
        }
    }

    /// Builds a set from word texts, inferring the alphabet.
    pub fn from_texts<'a, I>(texts: I) -> Result<Self, WordError>
    where
        I: IntoIterator<Item = &'a str> + Clone,
    {
        let alphabet = Alphabet::infer(texts.clone())?;
        let words = texts
            .into_iter()
            .map(|t| alphabet.parse_word(t))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(WordSet::new(alphabet, words))
    }

    /// Parses the plain-text format: one word per line, `_` for the empty
    /// word, `#` starts a comment, blank lines ignored.
    pub fn parse_text(text: &str) -> Result<Self, ComplexError> {
        let mut entries: Vec<(usize, &str)> = Vec::new();
        for (lineno, line) in text.lines().enumerate() {
            let line = line.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            entries.push((lineno + 1, line));
        }
        let alphabet = Alphabet::infer(entries.iter().map(|&(_, t)| t))
            .map_err(ComplexError::Word)?;
        let mut words = Vec::with_capacity(entries.len());
        for (line, t) in entries {
            let w = alphabet
                .parse_word(t)
                .map_err(|source| ComplexError::AtLine { line, source })?;
            words.push(w);
        }
        Ok(WordSet::new(alphabet, words))
    }

    /// Parses the structured format `{"words": [..]}` where `""` denotes
    /// the empty word.
    pub fn parse_json(text: &str) -> Result<Self, ComplexError> {
        #[derive(Deserialize)]
        struct Doc {
            words: Vec<String>,
        }
        let doc: Doc =
            serde_json::from_str(text).map_err(|e| ComplexError::Document(e.to_string()))?;
        let alphabet =
            Alphabet::infer(doc.words.iter().map(|s| s.as_str()).filter(|s| !s.is_empty()))?;
        let mut words = Vec::with_capacity(doc.words.len());
        for s in &doc.words {
            if s.is_empty() {
                words.push(Word::empty());
            } else if s == EMPTY_WORD_TEXT {
                return Err(ComplexError::Document(
                    "use \"\" for the empty word in structured documents".into(),
                ));
            } else {
                words.push(alphabet.parse_word(s)?);
            }
        }
        Ok(WordSet::new(alphabet, words))
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "words": self
                .words
                .iter()
                .map(|w| {
                    if w.is_empty() {
                        String::new()
                    } else {
                        self.alphabet.display_word(w)
                    }
                })
                .collect::<Vec<_>>()
        })
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn words(&self) -> &[Word] {
        &self.words
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    pub fn contains(&self, w: &Word) -> bool {
        self.index.contains(w)
    }

    /// Applies a word-level transform to every member; the alphabet is
    /// carried over unchanged.
    pub fn transform(&self, t: &Transform) -> WordSet {
        WordSet::new(
            self.alphabet.clone(),
            self.words.iter().map(|w| t.apply_word(w)),
        )
    }

    pub fn max_len(&self) -> usize {
        self.words.iter().map(Word::len).max().unwrap_or(0)
    }

    pub fn min_len(&self) -> usize {
        self.words.iter().map(Word::len).min().unwrap_or(0)
    }
}

/// A directed insertion edge with its canonical 1-block.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InsertionEdge {
    pub from: Word,
    pub to: Word,
    pub block: Block,
}

/// The insertion graph Γ(W): an edge wherever one word is the other plus a
/// single inserted symbol. Bipartite by length parity and acyclic, since
/// every edge increases length by one.
#[derive(Clone, Debug)]
pub struct InsertionGraph {
    words: Vec<Word>,
    edges: Vec<InsertionEdge>,
}

impl InsertionGraph {
    pub fn words(&self) -> &[Word] {
        &self.words
    }

    pub fn edges(&self) -> &[InsertionEdge] {
        &self.edges
    }

    /// Partition of the nodes by length parity; every edge crosses it.
    pub fn bipartition(&self) -> (Vec<&Word>, Vec<&Word>) {
        self.words.iter().partition(|w| w.len() % 2 == 0)
    }

    /// DOT digraph with word-text labels.
    pub fn to_dot(&self, alphabet: &Alphabet) -> String {
        let quote = |w: &Word| {
            let text = alphabet.display_word(w);
            format!("\"{}\"", text.replace('\\', "\\\\").replace('"', "\\\""))
        };
        let mut out = String::from("digraph insertion {\n");
        for w in &self.words {
            out.push_str(&format!("  {};\n", quote(w)));
        }
        for e in &self.edges {
            out.push_str(&format!("  {} -> {};\n", quote(&e.from), quote(&e.to)));
        }
        out.push_str("}\n");
        out
    }
}

/// Builds the insertion graph of a word set.
pub fn insertion_graph(ws: &WordSet) -> InsertionGraph {
    let mut edges = Vec::new();
    for u in ws.words() {
        for v in ws.words() {
            if v.len() != u.len() + 1 {
                continue;
            }
            let decomps = u.insertion_decompositions(v);
            if let Some((x, a, y)) = decomps.into_iter().next() {
                let block = Block::new(x, vec![(a, y)]).canonicalize();
                edges.push(InsertionEdge {
                    from: u.clone(),
                    to: v.clone(),
                    block,
                });
            }
        }
    }
    debug_assert!(edges.iter().all(|e| e.to.len() == e.from.len() + 1));
    InsertionGraph {
        words: ws.words().to_vec(),
        edges,
    }
}

/// A face-closed, graded, deduplicated collection of canonical valid
/// blocks; the chain-complex carrier shared by word-set and face
/// complexes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlockComplex {
    blocks: Vec<Vec<Block>>,
    index: Vec<HashMap<Block, usize>>,
}

impl BlockComplex {
    /// Grades, sorts (by canonical text), and indexes a face-closed block
    /// collection.
    pub fn from_closed_blocks<I: IntoIterator<Item = Block>>(
        alphabet: &Alphabet,
        blocks: I,
    ) -> Self {
        let mut by_dim: Vec<Vec<Block>> = Vec::new();
        let mut seen: HashSet<Block> = HashSet::new();
        for b in blocks {
            debug_assert!(b.is_canonical() && b.is_valid());
            if !seen.insert(b.clone()) {
                continue;
            }
            let d = b.dim();
            if by_dim.len() <= d {
                by_dim.resize(d + 1, Vec::new());
            }
            by_dim[d].push(b);
        }
        for level in &mut by_dim {
            level.sort_by_cached_key(|b| b.display(alphabet));
        }
        let index = by_dim
            .iter()
            .map(|level| {
                level
                    .iter()
                    .enumerate()
                    .map(|(i, b)| (b.clone(), i))
                    .collect()
            })
            .collect();
        BlockComplex {
            blocks: by_dim,
            index,
        }
    }

    /// Largest dimension with any block; `None` when empty.
    pub fn dim(&self) -> Option<usize> {
        (!self.blocks.is_empty()).then(|| self.blocks.len() - 1)
    }

    pub fn blocks_of_dim(&self, k: usize) -> &[Block] {
        self.blocks.get(k).map(Vec::as_slice).unwrap_or(&[])
    }

    pub fn count_of_dim(&self, k: usize) -> usize {
        self.blocks_of_dim(k).len()
    }

    pub fn counts(&self) -> Vec<usize> {
        self.blocks.iter().map(Vec::len).collect()
    }

    pub fn total(&self) -> usize {
        self.blocks.iter().map(Vec::len).sum()
    }

    pub fn iter(&self) -> impl Iterator<Item = &Block> {
        self.blocks.iter().flatten()
    }

    pub fn contains(&self, b: &Block) -> bool {
        self.index
            .get(b.dim())
            .is_some_and(|level| level.contains_key(b))
    }

    pub fn index_of(&self, b: &Block) -> Option<usize> {
        self.index.get(b.dim()).and_then(|level| level.get(b)).copied()
    }
}

/// The insertion block complex of a word set.
#[derive(Clone, Debug)]
pub struct InsertionComplex {
    words: WordSet,
    cells: BlockComplex,
    vertex_index: HashMap<Word, Vec<(usize, usize)>>,
}

impl InsertionComplex {
    pub fn words(&self) -> &WordSet {
        &self.words
    }

    pub fn alphabet(&self) -> &Alphabet {
        self.words.alphabet()
    }

    pub fn cells(&self) -> &BlockComplex {
        &self.cells
    }

    pub fn dim(&self) -> Option<usize> {
        self.cells.dim()
    }

    /// (dimension, index) of every block having `w` among its vertices.
    pub fn blocks_containing(&self, w: &Word) -> &[(usize, usize)] {
        self.vertex_index.get(w).map(Vec::as_slice).unwrap_or(&[])
    }

    /// Blocks that are not proper faces of any other block, in grading
    /// order.
    pub fn maximal_blocks(&self) -> Result<Vec<Block>, BlockError> {
        let mut proper_faces: HashSet<Block> = HashSet::new();
        for b in self.cells.iter() {
            for f in b.faces()? {
                if f != *b {
                    proper_faces.insert(f);
                }
            }
        }
        Ok(self
            .cells
            .iter()
            .filter(|b| !proper_faces.contains(*b))
            .cloned()
            .collect())
    }
}

/// Every embedding of `u` into `v` as a marked-position set, rendered as a
/// raw block: marked positions of `v` become edges, the rest concatenate
/// into segments.
fn embedding_blocks(u: &Word, v: &Word) -> Vec<Block> {
    let d = v.len() - u.len();
    let mut out = Vec::new();
    let us = u.symbols();
    let vs = v.symbols();
    // choice stack: at v-position p having matched m symbols of u
    fn rec(
        us: &[Symbol],
        vs: &[Symbol],
        p: usize,
        matched: usize,
        marks_left: usize,
        marks: &mut Vec<usize>,
        out: &mut Vec<Block>,
    ) {
        let remaining = vs.len() - p;
        if remaining < (us.len() - matched) + marks_left {
            return;
        }
        if p == vs.len() {
            debug_assert!(matched == us.len() && marks_left == 0);
            let mut head = Word::empty();
            let mut steps: Vec<(Symbol, Word)> = Vec::new();
            let mut next_mark = 0;
            for (i, &s) in vs.iter().enumerate() {
                if next_mark < marks.len() && marks[next_mark] == i {
                    steps.push((s, Word::empty()));
                    next_mark += 1;
                } else {
                    match steps.last_mut() {
                        Some((_, x)) => x.push(s),
                        None => head.push(s),
                    }
                }
            }
            out.push(Block::new(head, steps));
            return;
        }
        if matched < us.len() && vs[p] == us[matched] {
            rec(us, vs, p + 1, matched + 1, marks_left, marks, out);
        }
        if marks_left > 0 {
            marks.push(p);
            rec(us, vs, p + 1, matched, marks_left - 1, marks, out);
            marks.pop();
        }
    }
    rec(us, vs, 0, 0, d, &mut Vec::new(), &mut out);
    out
}

/// Builds the insertion block complex of `ws`, up to `max_dim` (default:
/// the length spread of the set, the hard upper bound on block dimension).
pub fn build_complex(ws: &WordSet, max_dim: Option<usize>) -> InsertionComplex {
    let spread = ws.max_len().saturating_sub(ws.min_len());
    let bound = max_dim.unwrap_or(spread).min(spread);

    let pairs: Vec<(&Word, &Word)> = ws
        .words()
        .iter()
        .flat_map(|u| {
            ws.words().iter().filter_map(move |v| {
                let d = v.len().checked_sub(u.len())?;
                (d >= 1 && d <= bound && u.is_subword_of(v)).then_some((u, v))
            })
        })
        .collect();

    let candidates: Vec<Block> = pairs
        .par_iter()
        .flat_map_iter(|(u, v)| {
            embedding_blocks(u, v).into_iter().filter_map(|raw| {
                let b = raw.canonicalize();
                if !b.is_valid() {
                    return None;
                }
                let m = b.dim();
                for mask in 1..(1u64 << m) - 1 {
                    if !ws.contains(&b.vertex_mask(mask)) {
                        return None;
                    }
                }
                Some(b)
            })
        })
        .collect();

    let mut blocks: HashSet<Block> = candidates.into_iter().collect();
    for w in ws.words() {
        blocks.insert(Block::word(w.clone()));
    }

    // face-closure pass: faces of supported blocks are supported
    let snapshot: Vec<Block> = blocks.iter().cloned().collect();
    for b in &snapshot {
        for f in b.faces().expect("complex blocks are valid") {
            let fresh = blocks.insert(f);
            debug_assert!(!fresh, "enumeration already closed under faces");
        }
    }

    debug_assert!(blocks.len() <= 1 << ws.len().min(40), "|C(W)| ≤ 2^|W|");
    #[cfg(debug_assertions)]
    {
        // vertex determinacy: no two distinct blocks share a vertex set
        let mut by_vertices: HashMap<Vec<Word>, &Block> = HashMap::new();
        for b in &blocks {
            let vs: Vec<Word> = b.vertices().into_iter().collect();
            if let Some(other) = by_vertices.insert(vs, b) {
                panic!("distinct blocks share a vertex set: {other:?} vs {b:?}");
            }
        }
    }

    let cells = BlockComplex::from_closed_blocks(ws.alphabet(), blocks);
    let mut vertex_index: HashMap<Word, Vec<(usize, usize)>> = HashMap::new();
    for (d, level) in cells.blocks.iter().enumerate() {
        for (i, b) in level.iter().enumerate() {
            for v in b.vertices() {
                vertex_index.entry(v).or_default().push((d, i));
            }
        }
    }
    InsertionComplex {
        words: ws.clone(),
        cells,
        vertex_index,
    }
}
