//! The six families of minimal nontrivial 1-cycles and the exhaustive
//! 4-word classification scan.
//!
//! Every 4-word set with H₁ ≠ 0 reduces, by stripping common affixes and
//! optionally reversing and/or swapping the two symbols, to one of the
//! families V₁..V₆. Matching compares affix-stripped cores, which is
//! invariant under common affixes on either side. Note V₆(t) equals
//! a·V₅(t−1)·b word for word, so V₁..V₅ already cover every class and the
//! matcher reports V₆ instances as V₅ reductions.

use rayon::prelude::*;
use serde::Serialize;

use crate::complex::{build_complex, WordSet};
use crate::homology::homology_z;
use crate::isomorphism::Transform;
use crate::verify::VerifyError;
use crate::word::{common_prefix_len, common_suffix_len, Alphabet, Symbol, Word};

fn family_alphabet() -> Alphabet {
    Alphabet::new("ab".chars()).expect("fixed alphabet")
}

const A: Symbol = Symbol(0);
const B: Symbol = Symbol(1);

fn ab_power(t: usize) -> Word {
    let mut w = Word::empty();
    for _ in 0..t {
        w.push(A);
        w.push(B);
    }
    w
}

fn prepend(s: Symbol, w: &Word) -> Word {
    Word::single(s).concat(w)
}

fn append(w: &Word, s: Symbol) -> Word {
    let mut out = w.clone();
    out.push(s);
    out
}

/// Minimal legal parameter for each family (families are 1-based).
pub fn family_min_t(family: usize) -> Option<usize> {
    match family {
        1 | 3 | 6 => Some(1),
        2 => Some(2),
        4 | 5 => Some(0),
        _ => None,
    }
}

/// The four words of cycle family `family` at parameter `t`, over {a, b}.
pub fn cycle_family_words(family: usize, t: usize) -> Result<WordSet, VerifyError> {
    let min = family_min_t(family).ok_or(VerifyError::UnknownFamily { family })?;
    if t < min {
        return Err(VerifyError::FamilyRange { family, t, min });
    }
    let core = ab_power(t);
    let next = ab_power(t + 1);
    let words = match family {
        1 => vec![
            core.clone(),
            prepend(A, &core),
            append(&core, A),
            next.clone(),
        ],
        2 => vec![
            core.clone(),
            prepend(A, &core),
            append(&core, B),
            next.clone(),
        ],
        3 => vec![
            core.clone(),
            append(&core, A),
            prepend(B, &core),
            next.clone(),
        ],
        4 => vec![
            append(&core, A),
            prepend(B, &append(&core, A)),
            next.clone(),
            prepend(B, &core),
        ],
        5 => vec![
            next.clone(),
            append(&next, A),
            prepend(B, &next),
            prepend(B, &append(&core, A)),
        ],
        6 => vec![
            next.clone(),
            prepend(A, &next),
            append(&next, B),
            prepend(A, &append(&core, B)),
        ],
        _ => unreachable!("family validated above"),
    };
    Ok(WordSet::new(family_alphabet(), words))
}

/// A successful reduction of a 4-word set onto a family.
#[derive(Clone, Debug, Serialize)]
pub struct CycleMatch {
    pub family: usize,
    pub t: usize,
    pub reversed: bool,
    pub swapped: bool,
    /// Common affixes stripped from the (possibly reversed/swapped) set.
    pub prefix: String,
    pub suffix: String,
}

fn strip_common_affixes(words: &[Word]) -> (Word, Word, Vec<Word>) {
    let p = common_prefix_len(words);
    let s = common_suffix_len(words);
    // prefix and suffix cannot overlap: the shortest member bounds both
    let shortest = words.iter().map(Word::len).min().unwrap_or(0);
    let s = s.min(shortest - p.min(shortest));
    let prefix = Word::from_symbols(words[0].symbols()[..p].to_vec());
    let suffix =
        Word::from_symbols(words[0].symbols()[words[0].len() - s..].to_vec());
    let cores = words
        .iter()
        .map(|w| Word::from_symbols(w.symbols()[p..w.len() - s].to_vec()))
        .collect();
    (prefix, suffix, cores)
}

fn sorted(mut words: Vec<Word>) -> Vec<Word> {
    words.sort_unstable_by(crate::word::word_order);
    words
}

/// Tries affix-stripping plus optional reverse and symbol swap to carry the
/// 4-word set onto some family V₁..V₆ with parameter ≤ `max_t`.
pub fn match_cycle_family(ws: &WordSet, max_t: usize) -> Option<CycleMatch> {
    if ws.len() != 4 || ws.alphabet().len() > 2 {
        return None;
    }
    // stripped cores of every family instance in range, precomputed
    let mut family_cores: Vec<(usize, usize, Vec<Word>)> = Vec::new();
    for family in 1..=6 {
        let min = family_min_t(family).expect("valid family");
        for t in min..=max_t {
            let v = cycle_family_words(family, t).expect("in-range parameters");
            let (_, _, cores) = strip_common_affixes(v.words());
            family_cores.push((family, t, sorted(cores)));
        }
    }
    let swap = Transform::SymbolPermutation(vec![B, A]);
    for reversed in [false, true] {
        for swapped in [false, true] {
            let mut words: Vec<Word> = ws.words().to_vec();
            if reversed {
                words = words.iter().map(Word::reverse).collect();
            }
            if swapped {
                words = words.iter().map(|w| swap.apply_word(w)).collect();
            }
            let (prefix, suffix, cores) = strip_common_affixes(&words);
            let cores = sorted(cores);
            for (family, t, expect) in &family_cores {
                if cores == *expect {
                    let al = family_alphabet();
                    return Some(CycleMatch {
                        family: *family,
                        t: *t,
                        reversed,
                        swapped,
                        prefix: al.display_word(&prefix),
                        suffix: al.display_word(&suffix),
                    });
                }
            }
        }
    }
    None
}

/// All words over the alphabet with length ≤ `max_len`, in deterministic
/// order.
pub fn all_words_up_to(alphabet: &Alphabet, max_len: usize) -> Vec<Word> {
    let n = alphabet.len() as u64;
    let mut out = Vec::new();
    for len in 0..=max_len {
        let count = n.pow(len as u32);
        for code in 0..count {
            let mut c = code;
            let mut w = Word::empty();
            for _ in 0..len {
                w.push(Symbol((c % n) as u8));
                c /= n;
            }
            out.push(w);
        }
    }
    out.sort_unstable_by(crate::word::word_order);
    out
}

/// Outcome of the exhaustive 4-word scan.
#[derive(Clone, Debug, Serialize)]
pub struct CycleScanReport {
    pub max_len: usize,
    pub subsets_checked: u64,
    pub hits: Vec<(Vec<String>, CycleMatch)>,
    /// Sets with H₁ ≠ 0 that no reduction matched; empty when the
    /// classification theorem holds.
    pub unmatched: Vec<Vec<String>>,
}

const CYCLE_SCAN_GUARD: usize = 10;

/// Enumerates every 4-word subset of {a,b}^{≤max_len}, keeps those whose
/// complex has H₁ ≠ 0, and reduces each onto a family.
pub fn brute_force_cycle_classification(max_len: usize) -> Result<CycleScanReport, VerifyError> {
    if max_len > CYCLE_SCAN_GUARD {
        return Err(VerifyError::Guard {
            what: "cycle scan max_len",
            got: max_len,
            limit: CYCLE_SCAN_GUARD,
        });
    }
    let alphabet = family_alphabet();
    let words = all_words_up_to(&alphabet, max_len);
    let n = words.len();

    // a 4-word set can only carry a 1-cycle if its insertion graph is the
    // 4-cycle: four edges, each vertex of degree two
    let quick_cycle_check = |quad: &[&Word; 4]| -> bool {
        let mut degree = [0u8; 4];
        let mut edges = 0;
        for i in 0..4 {
            for j in 0..4 {
                if quad[j].len() == quad[i].len() + 1
                    && !quad[i].insertion_decompositions(quad[j]).is_empty()
                {
                    degree[i] += 1;
                    degree[j] += 1;
                    edges += 1;
                }
            }
        }
        edges == 4 && degree.iter().all(|&d| d == 2)
    };

    let results: Vec<(Vec<String>, Option<CycleMatch>)> = (0..n)
        .into_par_iter()
        .flat_map_iter(|i| {
            let words = &words;
            let alphabet = &alphabet;
            let mut local = Vec::new();
            for j in (i + 1)..n {
                for k in (j + 1)..n {
                    for l in (k + 1)..n {
                        let quad = [&words[i], &words[j], &words[k], &words[l]];
                        if !quick_cycle_check(&quad) {
                            continue;
                        }
                        let ws = WordSet::new(
                            alphabet.clone(),
                            quad.iter().map(|w| (*w).clone()),
                        );
                        let complex = build_complex(&ws, None);
                        let h = homology_z(complex.cells()).expect("valid complex");
                        let h1_nonzero = h
                            .dims
                            .iter()
                            .any(|d| d.k == 1 && (d.betti > 0 || !d.torsion.is_empty()));
                        if !h1_nonzero {
                            continue;
                        }
                        let texts: Vec<String> =
                            quad.iter().map(|w| alphabet.display_word(w)).collect();
                        local.push((texts, match_cycle_family(&ws, max_len)));
                    }
                }
            }
            local
        })
        .collect();

    let subsets_checked = (n as u64) * (n as u64 - 1) * (n as u64 - 2) * (n as u64 - 3) / 24;
    let mut hits = Vec::new();
    let mut unmatched = Vec::new();
    for (texts, matched) in results {
        match matched {
            Some(m) => hits.push((texts, m)),
            None => unmatched.push(texts),
        }
    }
    hits.sort_by(|a, b| a.0.cmp(&b.0));
    unmatched.sort();
    Ok(CycleScanReport {
        max_len,
        subsets_checked,
        hits,
        unmatched,
    })
}
