//! Seeded generators for randomized checks. Every generator is driven by a
//! ChaCha stream cipher, so a seed fully determines a run on any platform.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::block::Block;
use crate::complex::WordSet;
use crate::cubical::{Cube, CubicalComplex, Interval};
use crate::word::{Alphabet, Symbol, Word};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_word(rng: &mut ChaCha8Rng, num_symbols: u8, max_len: usize) -> Word {
    let len = rng.random_range(0..=max_len);
    Word::from_symbols(
        (0..len)
            .map(|_| Symbol(rng.random_range(0..num_symbols)))
            .collect(),
    )
}

fn random_nonempty_word(rng: &mut ChaCha8Rng, num_symbols: u8, max_len: usize) -> Word {
    loop {
        let w = random_word(rng, num_symbols, max_len);
        if !w.is_empty() {
            return w;
        }
    }
}

/// A canonical valid block with the given dimension bound; segments are
/// short words over the first `num_symbols` symbols.
pub fn random_valid_block(
    rng: &mut ChaCha8Rng,
    max_dim: usize,
    num_symbols: u8,
    max_segment: usize,
) -> Block {
    loop {
        let dim = rng.random_range(1..=max_dim);
        let head = random_word(rng, num_symbols, max_segment);
        let steps = (0..dim)
            .map(|_| {
                (
                    Symbol(rng.random_range(0..num_symbols)),
                    random_word(rng, num_symbols, max_segment),
                )
            })
            .collect();
        let b = Block::new(head, steps).canonicalize();
        if b.is_valid() {
            return b;
        }
    }
}

/// Applies up to `shuffles` legal run moves to an equivalent raw
/// representation: copies of the inserted symbol may cross their own edge
/// in either direction.
pub fn random_equivalent_rewrite(rng: &mut ChaCha8Rng, block: &Block, shuffles: usize) -> Block {
    let mut head = block.head().clone();
    let mut steps: Vec<(Symbol, Word)> = block.steps().to_vec();
    let m = steps.len();
    if m == 0 {
        return block.clone();
    }
    for _ in 0..shuffles {
        let i = rng.random_range(0..m);
        let a = steps[i].0;
        if rng.random_bool(0.5) {
            // move trailing copies of a from the left segment rightward
            let left = if i == 0 { &head } else { &steps[i - 1].1 };
            let run = left
                .symbols()
                .iter()
                .rev()
                .take_while(|&&s| s == a)
                .count();
            if run == 0 {
                continue;
            }
            let k = rng.random_range(1..=run);
            let left = if i == 0 { &mut head } else { &mut steps[i - 1].1 };
            let cut = left.len() - k;
            *left = Word::from_symbols(left.symbols()[..cut].to_vec());
            let mut moved = Word::from_symbols(vec![a; k]);
            moved.extend(&steps[i].1);
            steps[i].1 = moved;
        } else {
            // move leading copies of a from the right segment leftward
            let run = steps[i].1.symbols().iter().take_while(|&&s| s == a).count();
            if run == 0 {
                continue;
            }
            let k = rng.random_range(1..=run);
            steps[i].1 = Word::from_symbols(steps[i].1.symbols()[k..].to_vec());
            let left = if i == 0 { &mut head } else { &mut steps[i - 1].1 };
            for _ in 0..k {
                left.push(a);
            }
        }
    }
    Block::new(head, steps)
}

/// A word set over the first `num_symbols` symbols.
pub fn random_word_set(
    rng: &mut ChaCha8Rng,
    num_symbols: u8,
    max_words: usize,
    max_len: usize,
) -> WordSet {
    let chars: String = ('a'..).take(num_symbols as usize).collect();
    let alphabet = Alphabet::new(chars.chars()).expect("ascii alphabet");
    let count = rng.random_range(1..=max_words);
    let words = (0..count).map(|_| random_word(rng, num_symbols, max_len));
    WordSet::new(alphabet, words.collect::<Vec<_>>())
}

/// A pair (w_m, w_M) with w_m embedding uniquely into w_M and |w_M| ≤
/// `max_len`.
pub fn random_unique_embedding_pair(
    rng: &mut ChaCha8Rng,
    num_symbols: u8,
    max_len: usize,
) -> (Word, Word) {
    loop {
        let w_max = random_nonempty_word(rng, num_symbols, max_len);
        // sample a run-power subword
        let runs = w_max.run_length().runs;
        let mut w_min = Word::empty();
        for &(s, r) in &runs {
            let q = rng.random_range(0..=r);
            for _ in 0..q {
                w_min.push(s);
            }
        }
        if w_min.embeds_uniquely_into(&w_max) {
            return (w_min, w_max);
        }
    }
}

/// A cubical complex with at most `max_cubes` cells after face closure.
pub fn random_cubical_complex(
    rng: &mut ChaCha8Rng,
    ambient: usize,
    max_cubes: usize,
) -> CubicalComplex {
    loop {
        let generators = rng.random_range(1..=3);
        let cubes: Vec<Cube> = (0..generators)
            .map(|_| {
                Cube::new(
                    (0..ambient)
                        .map(|_| {
                            let k = rng.random_range(0..3i64);
                            if rng.random_bool(0.5) {
                                Interval::Span(k)
                            } else {
                                Interval::Point(k)
                            }
                        })
                        .collect(),
                )
            })
            .collect();
        let complex = CubicalComplex::new(ambient, cubes).expect("matching ambient");
        if complex.len() <= max_cubes {
            return complex;
        }
    }
}
