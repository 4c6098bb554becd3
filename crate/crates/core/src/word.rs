//! Words over a finite alphabet, the subword partial order, run-length
//! structure, and power-embedding counts.
//!
//! Symbols are interned per dataset: an [`Alphabet`] maps printable
//! characters to small integer ids, and a [`Word`] is a sequence of those
//! ids. All operations here are pure functions on immutable values.

use std::collections::HashSet;
use std::fmt;

use thiserror::Error;

/// Characters that can never be part of a word: they are reserved by the
/// text syntax shared by all file formats and the CLI.
pub const RESERVED_CHARS: [char; 4] = ['(', ')', '#', '_'];

/// Placeholder for the empty word in the shared text syntax.
pub const EMPTY_WORD_TEXT: &str = "_";

#[derive(Debug, Error, PartialEq, Eq)]
pub enum WordError {
    #[error("character {ch:?} at position {pos} is not a word character")]
    BadChar { ch: char, pos: usize },
    #[error("symbol {ch:?} is not in the alphabet")]
    UnknownSymbol { ch: char },
    #[error("alphabet holds at most 255 symbols")]
    AlphabetTooLarge,
    #[error("word interval base {max_len} exceeds the guard of {limit} symbols")]
    IntervalGuard { max_len: usize, limit: usize },
    #[error("{small:?} is not a subword of {large:?}")]
    NotASubword { small: String, large: String },
}

fn is_word_char(c: char) -> bool {
    !c.is_whitespace() && !c.is_control() && !RESERVED_CHARS.contains(&c)
}

/// An interned symbol: an index into an [`Alphabet`].
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Symbol(pub u8);

impl fmt::Debug for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "s{}", self.0)
    }
}

impl Symbol {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

/// The symbol table of a dataset. Symbols are sorted by character so that
/// id order and display order agree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Alphabet {
    chars: Vec<char>,
}

impl Alphabet {
    /// Builds an alphabet from the distinct word characters of `text`,
    /// sorted. Reserved characters are rejected.
    pub fn new<I: IntoIterator<Item = char>>(chars: I) -> Result<Self, WordError> {
        let mut cs: Vec<char> = Vec::new();
        for c in chars {
            if !is_word_char(c) {
                return Err(WordError::BadChar { ch: c, pos: 0 });
            }
            cs.push(c);
        }
        cs.sort_unstable();
        cs.dedup();
        if cs.len() > 255 {
            return Err(WordError::AlphabetTooLarge);
        }
        Ok(Alphabet { chars: cs })
    }

    /// The alphabet covering every word character used in `texts`,
    /// ignoring the empty-word placeholder.
    pub fn infer<'a, I: IntoIterator<Item = &'a str>>(texts: I) -> Result<Self, WordError> {
        let mut cs = Vec::new();
        for t in texts {
            if t == EMPTY_WORD_TEXT {
                continue;
            }
            cs.extend(t.chars());
        }
        Alphabet::new(cs)
    }

    pub fn len(&self) -> usize {
        self.chars.len()
    }

    pub fn is_empty(&self) -> bool {
        self.chars.is_empty()
    }

    pub fn symbols(&self) -> impl Iterator<Item = Symbol> + '_ {
        (0..self.chars.len()).map(|i| Symbol(i as u8))
    }

    pub fn char_of(&self, s: Symbol) -> char {
        self.chars[s.index()]
    }

    pub fn symbol_of(&self, c: char) -> Result<Symbol, WordError> {
        match self.chars.binary_search(&c) {
            Ok(i) => Ok(Symbol(i as u8)),
            Err(_) => Err(WordError::UnknownSymbol { ch: c }),
        }
    }

    /// Parses the shared word text syntax: `_` is the empty word, any other
    /// string is a sequence of word characters from this alphabet.
    pub fn parse_word(&self, text: &str) -> Result<Word, WordError> {
        if text == EMPTY_WORD_TEXT {
            return Ok(Word::empty());
        }
        let mut syms = Vec::with_capacity(text.len());
        for (pos, c) in text.chars().enumerate() {
            if !is_word_char(c) {
                return Err(WordError::BadChar { ch: c, pos });
            }
            syms.push(self.symbol_of(c)?);
        }
        Ok(Word::from_symbols(syms))
    }

    pub fn display_word(&self, w: &Word) -> String {
        if w.is_empty() {
            return EMPTY_WORD_TEXT.to_string();
        }
        w.symbols().iter().map(|&s| self.char_of(s)).collect()
    }
}

/// A finite symbol sequence, possibly empty.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Word(Vec<Symbol>);

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "w[")?;
        for s in &self.0 {
            write!(f, "{}", s.0)?;
        }
        write!(f, "]")
    }
}

/// The unique decomposition a_1^{r_1} … a_k^{r_k} with positive counts and
/// distinct adjacent symbols.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RunLengthForm {
    pub runs: Vec<(Symbol, usize)>,
}

impl RunLengthForm {
    /// Rebuilds the source word.
    pub fn to_word(&self) -> Word {
        let mut syms = Vec::new();
        for &(s, r) in &self.runs {
            syms.extend(std::iter::repeat_n(s, r));
        }
        Word::from_symbols(syms)
    }
}

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn from_symbols(syms: Vec<Symbol>) -> Self {
        Word(syms)
    }

    pub fn single(s: Symbol) -> Self {
        Word(vec![s])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn symbols(&self) -> &[Symbol] {
        &self.0
    }

    pub fn first(&self) -> Option<Symbol> {
        self.0.first().copied()
    }

    /// Concatenation; the empty word is the identity.
    pub fn concat(&self, other: &Word) -> Word {
        let mut syms = Vec::with_capacity(self.len() + other.len());
        syms.extend_from_slice(&self.0);
        syms.extend_from_slice(&other.0);
        Word(syms)
    }

    pub fn push(&mut self, s: Symbol) {
        self.0.push(s);
    }

    pub fn extend(&mut self, other: &Word) {
        self.0.extend_from_slice(&other.0);
    }

    pub fn reverse(&self) -> Word {
        Word(self.0.iter().rev().copied().collect())
    }

    pub fn repeat(&self, n: usize) -> Word {
        let mut syms = Vec::with_capacity(self.len() * n);
        for _ in 0..n {
            syms.extend_from_slice(&self.0);
        }
        Word(syms)
    }

    /// True iff `self` can be obtained from `v` by deleting symbols; this is
    /// the subword partial order.
    pub fn is_subword_of(&self, v: &Word) -> bool {
        if self.len() > v.len() {
            return false;
        }
        let mut it = v.0.iter();
        self.0.iter().all(|s| it.any(|t| t == s))
    }

    pub fn run_length(&self) -> RunLengthForm {
        let mut runs: Vec<(Symbol, usize)> = Vec::new();
        for &s in &self.0 {
            match runs.last_mut() {
                Some((t, r)) if *t == s => *r += 1,
                _ => runs.push((s, 1)),
            }
        }
        RunLengthForm { runs }
    }

    /// Every triple (x, a, y) with `self` = xy and `v` = xay, one per split
    /// position. Empty iff (self, v) is not an insertion-graph edge.
    pub fn insertion_decompositions(&self, v: &Word) -> Vec<(Word, Symbol, Word)> {
        let mut out = Vec::new();
        if v.len() != self.len() + 1 {
            return out;
        }
        for i in 0..=self.len() {
            if self.0[..i] == v.0[..i] && self.0[i..] == v.0[i + 1..] {
                out.push((
                    Word(self.0[..i].to_vec()),
                    v.0[i],
                    Word(self.0[i..].to_vec()),
                ));
            }
        }
        out
    }

    /// Number of power sequences (q_i) with 0 ≤ q_i ≤ r_i realizing `self`
    /// inside the run-length form of `v`. Zero iff not a subword.
    pub fn count_power_embeddings(&self, v: &Word) -> usize {
        let runs = v.run_length();
        let u = &self.0;
        // ways[j] = number of ways to produce u[..j] from the runs seen so far
        let mut ways = vec![0usize; u.len() + 1];
        ways[0] = 1;
        for &(a, r) in &runs.runs {
            let mut next = ways.clone(); // q = 0
            for q in 1..=r {
                let mut shifted = vec![0usize; u.len() + 1];
                for j in 0..u.len().saturating_sub(q - 1) {
                    if ways[j] > 0 && j + q <= u.len() && u[j..j + q].iter().all(|&s| s == a) {
                        shifted[j + q] = ways[j];
                    }
                }
                for (n, s) in next.iter_mut().zip(shifted) {
                    *n += s;
                }
            }
            ways = next;
        }
        ways[u.len()]
    }

    /// True iff exactly one power sequence realizes `self` inside `v`.
    pub fn embeds_uniquely_into(&self, v: &Word) -> bool {
        self.count_power_embeddings(v) == 1
    }
}

/// Default guard for [`subword_interval`]: enumeration is exponential in the
/// length of the larger word.
pub const DEFAULT_INTERVAL_GUARD: usize = 20;

/// The set {w : w_m ≤ w ≤ w_M} in the subword order, deduplicated.
///
/// Enumerates run-power profiles of `w_M` (every subword arises as one) and
/// filters by `w_m ≤ w`. Refuses inputs longer than `guard` symbols.
pub fn subword_interval(w_m: &Word, w_max: &Word, guard: usize) -> Result<Vec<Word>, WordError> {
    if w_max.len() > guard {
        return Err(WordError::IntervalGuard {
            max_len: w_max.len(),
            limit: guard,
        });
    }
    if !w_m.is_subword_of(w_max) {
        return Err(WordError::NotASubword {
            small: format!("{w_m:?}"),
            large: format!("{w_max:?}"),
        });
    }
    let runs = w_max.run_length().runs;
    let mut seen: HashSet<Word> = HashSet::new();
    let mut out = Vec::new();
    let mut stack: Vec<Symbol> = Vec::new();
    fn rec(
        runs: &[(Symbol, usize)],
        i: usize,
        stack: &mut Vec<Symbol>,
        w_m: &Word,
        seen: &mut HashSet<Word>,
        out: &mut Vec<Word>,
    ) {
        if i == runs.len() {
            let w = Word::from_symbols(stack.clone());
            if w_m.is_subword_of(&w) && seen.insert(w.clone()) {
                out.push(w);
            }
            return;
        }
        let (a, r) = runs[i];
        for q in 0..=r {
            stack.extend(std::iter::repeat_n(a, q));
            rec(runs, i + 1, stack, w_m, seen, out);
            stack.truncate(stack.len() - q);
        }
    }
    rec(&runs, 0, &mut stack, w_m, &mut seen, &mut out);
    out.sort_unstable_by(word_order);
    Ok(out)
}

/// Deterministic ordering used everywhere words are listed: by length, then
/// lexicographically by symbol id (= by character, since ids follow chars).
pub fn word_order(a: &Word, b: &Word) -> std::cmp::Ordering {
    a.len().cmp(&b.len()).then_with(|| a.cmp(b))
}

/// True iff uv = vu.
pub fn commutes(u: &Word, v: &Word) -> bool {
    u.concat(v) == v.concat(u)
}

/// The shortest z with w = z^k for some k ≥ 1; the root of the empty word is
/// the empty word.
pub fn primitive_root(w: &Word) -> Word {
    let n = w.len();
    if n == 0 {
        return Word::empty();
    }
    for p in 1..=n {
        if !n.is_multiple_of(p) {
            continue;
        }
        let candidate = &w.symbols()[..p];
        if w.symbols().chunks(p).all(|c| c == candidate) {
            return Word::from_symbols(candidate.to_vec());
        }
    }
    w.clone()
}

/// Longest common prefix length across a nonempty slice of words.
pub fn common_prefix_len(words: &[Word]) -> usize {
    let Some(first) = words.first() else { return 0 };
    let mut n = first.len();
    for w in &words[1..] {
        let mut k = 0;
        while k < n && k < w.len() && w.symbols()[k] == first.symbols()[k] {
            k += 1;
        }
        n = k;
    }
    n
}

/// Longest common suffix length across a nonempty slice of words.
pub fn common_suffix_len(words: &[Word]) -> usize {
    let Some(first) = words.first() else { return 0 };
    let mut n = first.len();
    for w in &words[1..] {
        let mut k = 0;
        while k < n
            && k < w.len()
            && w.symbols()[w.len() - 1 - k] == first.symbols()[first.len() - 1 - k]
        {
            k += 1;
        }
        n = k;
    }
    n
}
