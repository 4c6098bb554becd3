//! Brute-force solving of the two simultaneous word-equation systems
//! behind the 1-cycle classification, checked against their closed-form
//! solution families.
//!
//! System one: xaybz = x'ay'bz' with xyz = x'y'z'. System two: the same
//! with the inserted symbols crossed, xaybz = x'by'az'. Solutions are
//! compared up to a common prefix on (x, x'), a common suffix on (z, z'),
//! and swapping the primed side.

use serde::Serialize;

use crate::verify::cycles::all_words_up_to;
use crate::verify::VerifyError;
use crate::word::{Alphabet, Symbol, Word};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EquationSolution {
    pub x: Word,
    pub y: Word,
    pub z: Word,
    pub xp: Word,
    pub yp: Word,
    pub zp: Word,
}

fn is_power_of(w: &Word, s: Symbol) -> bool {
    w.symbols().iter().all(|&t| t == s)
}

/// True iff `w` = (ab)^t for some t ≥ 0.
fn is_alternating(w: &Word, a: Symbol, b: Symbol) -> Option<usize> {
    if !w.len().is_multiple_of(2) {
        return None;
    }
    for (i, &s) in w.symbols().iter().enumerate() {
        let expect = if i % 2 == 0 { a } else { b };
        if s != expect {
            return None;
        }
    }
    Some(w.len() / 2)
}

fn strip_affixes(sol: &EquationSolution) -> EquationSolution {
    let p = crate::word::common_prefix_len(&[sol.x.clone(), sol.xp.clone()]);
    let s = crate::word::common_suffix_len(&[sol.z.clone(), sol.zp.clone()]);
    let cut = |w: &Word, from: usize, upto: usize| Word::from_symbols(w.symbols()[from..upto].to_vec());
    EquationSolution {
        x: cut(&sol.x, p, sol.x.len()),
        y: sol.y.clone(),
        z: cut(&sol.z, 0, sol.z.len() - s),
        xp: cut(&sol.xp, p, sol.xp.len()),
        yp: sol.yp.clone(),
        zp: cut(&sol.zp, 0, sol.zp.len() - s),
    }
}

fn swap_sides(sol: &EquationSolution) -> EquationSolution {
    EquationSolution {
        x: sol.xp.clone(),
        y: sol.yp.clone(),
        z: sol.zp.clone(),
        xp: sol.x.clone(),
        yp: sol.y.clone(),
        zp: sol.z.clone(),
    }
}

/// S₁: x = 1, y = a^r γ b^s, z = 1 against x' = a^r, y' = γ, z' = b^s.
fn matches_s1(s: &EquationSolution, a: Symbol, b: Symbol) -> bool {
    s.x.is_empty()
        && s.z.is_empty()
        && is_power_of(&s.xp, a)
        && is_power_of(&s.zp, b)
        && s.y == s.xp.concat(&s.yp).concat(&s.zp)
}

/// S₂: x = 1, y = a^r, z = (ab)^t b^s against x' = a^r (ab)^t, y' = b^s,
/// z' = 1.
fn matches_s2(s: &EquationSolution, a: Symbol, b: Symbol) -> bool {
    if !(s.x.is_empty() && s.zp.is_empty() && is_power_of(&s.y, a) && is_power_of(&s.yp, b)) {
        return false;
    }
    let r = s.y.len();
    if s.xp.len() < r || s.xp.symbols()[..r] != *s.y.symbols() {
        return false;
    }
    let mid = Word::from_symbols(s.xp.symbols()[r..].to_vec());
    if is_alternating(&mid, a, b).is_none() {
        return false;
    }
    let mut expect_z = mid;
    expect_z.extend(&s.yp);
    s.z == expect_z
}

/// S₃: x = 1, y = a^r γ, z = b^s against x' = a^r, y' = γ b^s, z' = 1.
fn matches_s3(s: &EquationSolution, a: Symbol, b: Symbol) -> bool {
    if !(s.x.is_empty() && s.zp.is_empty() && is_power_of(&s.xp, a) && is_power_of(&s.z, b)) {
        return false;
    }
    let r = s.xp.len();
    let sfx = s.z.len();
    if s.y.len() < r || s.yp.len() < sfx {
        return false;
    }
    if s.y.symbols()[..r] != *s.xp.symbols() {
        return false;
    }
    if s.yp.symbols()[s.yp.len() - sfx..] != *s.z.symbols() {
        return false;
    }
    s.y.symbols()[r..] == s.yp.symbols()[..s.yp.len() - sfx]
}

/// S'₂: x = 1, y = a^r, z = (ab)^t a^{s+1} against x' = a^{r+1} (ba)^t,
/// y' = a^s, z' = 1.
fn matches_s2_crossed(s: &EquationSolution, a: Symbol, b: Symbol) -> bool {
    if !(s.x.is_empty() && s.zp.is_empty() && is_power_of(&s.y, a) && is_power_of(&s.yp, a)) {
        return false;
    }
    let r = s.y.len();
    if s.xp.len() < r + 1 || !s.xp.symbols()[..r + 1].iter().all(|&c| c == a) {
        return false;
    }
    let mid = Word::from_symbols(s.xp.symbols()[r + 1..].to_vec());
    let Some(t) = is_alternating(&mid, b, a) else {
        return false;
    };
    // z = (ab)^t a^{s+1}
    let mut expect_z = Word::empty();
    for _ in 0..t {
        expect_z.push(a);
        expect_z.push(b);
    }
    for _ in 0..=s.yp.len() {
        expect_z.push(a);
    }
    s.z == expect_z
}

#[derive(Clone, Debug, Serialize)]
pub struct WordEquationReport {
    pub max_len: usize,
    pub same_order_solutions: u64,
    pub crossed_solutions: u64,
    /// Solutions matching none of the stated families; empty when the
    /// lemma holds.
    pub unmatched: Vec<String>,
}

fn brute_force_solutions(
    words: &[Word],
    a: Symbol,
    b: Symbol,
    crossed: bool,
) -> Vec<EquationSolution> {
    let mut out = Vec::new();
    for x in words {
        for y in words {
            for z in words {
                let w = x.concat(y).concat(z);
                let mut u = x.clone();
                u.push(a);
                u.extend(y);
                u.push(b);
                u.extend(z);
                let (c, d) = if crossed { (b, a) } else { (a, b) };
                for i in 0..=w.len() {
                    for j in i..=w.len() {
                        let xp = Word::from_symbols(w.symbols()[..i].to_vec());
                        let yp = Word::from_symbols(w.symbols()[i..j].to_vec());
                        let zp = Word::from_symbols(w.symbols()[j..].to_vec());
                        let mut v = xp.clone();
                        v.push(c);
                        v.extend(&yp);
                        v.push(d);
                        v.extend(&zp);
                        if v == u {
                            out.push(EquationSolution {
                                x: x.clone(),
                                y: y.clone(),
                                z: z.clone(),
                                xp,
                                yp,
                                zp,
                            });
                        }
                    }
                }
            }
        }
    }
    out
}

fn matches_any(sol: &EquationSolution, a: Symbol, b: Symbol, crossed: bool) -> bool {
    let normal = strip_affixes(sol);
    let swapped = strip_affixes(&swap_sides(sol));
    if crossed {
        // S'₁ and S'₃ force a = b, so with distinct symbols only S'₂
        // occurs; swapping sides of xaybz = x'by'az' exchanges the roles
        matches_s2_crossed(&normal, a, b) || matches_s2_crossed(&swapped, b, a)
    } else {
        matches_s1(&normal, a, b)
            || matches_s1(&swapped, a, b)
            || matches_s2(&normal, a, b)
            || matches_s2(&swapped, a, b)
            || matches_s3(&normal, a, b)
            || matches_s3(&swapped, a, b)
    }
}

const WORDEQ_GUARD: usize = 5;

/// Brute-forces both systems over {a, b} with segment lengths ≤ `max_len`
/// and matches every solution against the closed families.
pub fn check_word_equation_lemma(max_len: usize) -> Result<WordEquationReport, VerifyError> {
    if max_len > WORDEQ_GUARD {
        return Err(VerifyError::Guard {
            what: "word-equation segment length",
            got: max_len,
            limit: WORDEQ_GUARD,
        });
    }
    let alphabet = Alphabet::new("ab".chars()).expect("fixed alphabet");
    let words = all_words_up_to(&alphabet, max_len);
    let a = Symbol(0);
    let b = Symbol(1);
    let mut unmatched = Vec::new();
    let mut describe = |sol: &EquationSolution, tag: &str| {
        let d = |w: &Word| alphabet.display_word(w);
        unmatched.push(format!(
            "{tag}: x={} y={} z={} x'={} y'={} z'={}",
            d(&sol.x),
            d(&sol.y),
            d(&sol.z),
            d(&sol.xp),
            d(&sol.yp),
            d(&sol.zp)
        ));
    };

    let same_order = brute_force_solutions(&words, a, b, false);
    for sol in &same_order {
        if !matches_any(sol, a, b, false) {
            describe(sol, "same-order");
        }
    }
    let crossed = brute_force_solutions(&words, a, b, true);
    for sol in &crossed {
        if !matches_any(sol, a, b, true) {
            describe(sol, "crossed");
        }
    }
    Ok(WordEquationReport {
        max_len,
        same_order_solutions: same_order.len() as u64,
        crossed_solutions: crossed.len() as u64,
        unmatched,
    })
}
