//! Squares sharing two edges, and the forbidden square configurations that
//! no word set can realize.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::block::Block;
use crate::complex::InsertionComplex;
use crate::verify::VerifyError;
use crate::word::{Symbol, Word};

/// The two possible shapes of a distinct pair of valid squares sharing two
/// edges.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SharedSquares {
    /// σ₁ = x(1,a)(1,b)y and σ₂ = x(1,b)(1,a)y: same corners, the two
    /// squares share both lower edges.
    Swap { x: Word, y: Word, a: Symbol, b: Symbol },
    /// σ₁ = x(1,a)(1,b)ay and σ₂ = xa(1,b)(1,a)y (`first_is_outer` says
    /// whether σ₁ plays the first role); one lower and one upper edge are
    /// shared.
    Shifted {
        x: Word,
        y: Word,
        a: Symbol,
        b: Symbol,
        first_is_outer: bool,
    },
}

/// The four boundary edges of a valid square, as canonical 1-blocks.
fn square_edges(square: &Block) -> Vec<Block> {
    let mut out = Vec::with_capacity(4);
    for i in 1..=2 {
        out.push(square.upper_facet(i).expect("valid square"));
        out.push(
            square
                .lower_facet(i)
                .expect("valid square")
                .expect("1-blocks are always valid"),
        );
    }
    out
}

/// Writes a canonical square as x(1,a)(1,b)y if possible: the middle
/// segment must be a power of the second inserted symbol.
fn as_flat_square(square: &Block) -> Option<(Word, Symbol, Symbol, Word)> {
    let steps = square.steps();
    let (a, mid) = (&steps[0].0, &steps[0].1);
    let (b, tail) = (&steps[1].0, &steps[1].1);
    if mid.symbols().iter().all(|s| s == b) {
        Some((square.head().clone(), *a, *b, mid.concat(tail)))
    } else {
        None
    }
}

/// Classifies how two distinct valid squares share exactly two edges, or
/// returns `None` when they do not.
pub fn squares_sharing_edges(
    s1: &Block,
    s2: &Block,
) -> Result<Option<SharedSquares>, VerifyError> {
    for s in [s1, s2] {
        if s.dim() != 2 {
            return Err(VerifyError::NotASquare { dim: s.dim() });
        }
        if !s.is_valid() {
            return Err(VerifyError::Block(
                crate::block::BlockError::InvalidBlock,
            ));
        }
    }
    let c1 = s1.canonicalize();
    let c2 = s2.canonicalize();
    if c1 == c2 {
        return Ok(None);
    }
    let e1 = square_edges(&c1);
    let e2 = square_edges(&c2);
    let shared = e1.iter().filter(|e| e2.contains(e)).count();
    if shared != 2 {
        return Ok(None);
    }

    // swap form: both flatten over the same corners
    if let (Some((x1, a1, b1, y1)), Some((x2, a2, b2, y2))) =
        (as_flat_square(&c1), as_flat_square(&c2))
    {
        if x1 == x2 && y1 == y2 && a1 == b2 && b1 == a2 && a1 != b1 {
            let rebuilt = Block::new(
                x1.clone(),
                vec![(b1, Word::empty()), (a1, y1.clone())],
            )
            .canonicalize();
            if rebuilt == c2 {
                return Ok(Some(SharedSquares::Swap {
                    x: x1,
                    y: y1,
                    a: a1,
                    b: b1,
                }));
            }
        }
    }

    // shifted form, trying both orderings
    for (outer, inner, first_is_outer) in [(&c1, &c2, true), (&c2, &c1, false)] {
        let Some((x, a, b, rest)) = as_flat_square(outer) else {
            continue;
        };
        if rest.first() != Some(a) {
            continue;
        }
        let y = Word::from_symbols(rest.symbols()[1..].to_vec());
        let mut shifted_head = x.clone();
        shifted_head.push(a);
        let candidate = Block::new(
            shifted_head,
            vec![(b, Word::empty()), (a, y.clone())],
        )
        .canonicalize();
        if candidate == *inner {
            return Ok(Some(SharedSquares::Shifted {
                x,
                y,
                a,
                b,
                first_is_outer,
            }));
        }
    }
    Ok(None)
}

/// One of the three square configurations impossible in a real complex.
#[derive(Clone, Debug, Serialize)]
pub struct ForbiddenViolation {
    pub condition: usize,
    pub squares: Vec<String>,
}

/// A square abstracted to its corner data: (bottom, {mid, mid}, top).
pub(crate) type AbstractSquare<T> = (T, (T, T), T);

/// Scans abstract squares for the three forbidden configurations; returns
/// the condition number and participating square indices of the first hit.
pub(crate) fn scan_abstract_squares<T: Ord + Clone>(
    squares: &[AbstractSquare<T>],
) -> Option<(usize, Vec<usize>)> {
    // condition 1: same mid pair and top, different bottom
    let mut by_mid_top: BTreeMap<((T, T), T), usize> = BTreeMap::new();
    for (i, (v0, mids, v3)) in squares.iter().enumerate() {
        if let Some(&j) = by_mid_top.get(&(mids.clone(), v3.clone())) {
            if squares[j].0 != *v0 {
                return Some((1, vec![j, i]));
            }
        } else {
            by_mid_top.insert((mids.clone(), v3.clone()), i);
        }
    }
    // conditions 2 and 3: within one (bottom, top) group the mid pairs
    // form a triangle or a 4-cycle
    let mut groups: BTreeMap<(T, T), Vec<usize>> = BTreeMap::new();
    for (i, (v0, _, v3)) in squares.iter().enumerate() {
        groups.entry((v0.clone(), v3.clone())).or_default().push(i);
    }
    for group in groups.values() {
        let edge = |i: usize| -> (T, T) { squares[i].1.clone() };
        let touches = |e: &(T, T), v: &T| e.0 == *v || e.1 == *v;
        let other = |e: &(T, T), v: &T| if e.0 == *v { e.1.clone() } else { e.0.clone() };
        // triangles
        for (p, &i) in group.iter().enumerate() {
            for (q, &j) in group.iter().enumerate().skip(p + 1) {
                let (ei, ej) = (edge(i), edge(j));
                let shared: Vec<&T> = [&ei.0, &ei.1]
                    .into_iter()
                    .filter(|v| touches(&ej, v))
                    .collect();
                if shared.len() != 1 {
                    continue;
                }
                let (u, w) = (other(&ei, shared[0]), other(&ej, shared[0]));
                for &k in group.iter().skip(q + 1) {
                    let ek = edge(k);
                    if touches(&ek, &u) && touches(&ek, &w) {
                        return Some((2, vec![i, j, k]));
                    }
                }
            }
        }
        // 4-cycles
        let m = group.len();
        for p in 0..m {
            for q in (p + 1)..m {
                for r in (q + 1)..m {
                    for s in (r + 1)..m {
                        let idx = [group[p], group[q], group[r], group[s]];
                        if edges_form_four_cycle(&[edge(idx[0]), edge(idx[1]), edge(idx[2]), edge(idx[3])]) {
                            return Some((3, idx.to_vec()));
                        }
                    }
                }
            }
        }
    }
    None
}

fn edges_form_four_cycle<T: Ord + Clone>(edges: &[(T, T); 4]) -> bool {
    // every endpoint appears exactly twice and the edges are connected
    let mut endpoints: Vec<T> = Vec::new();
    for (u, v) in edges {
        if u == v {
            return false;
        }
        endpoints.push(u.clone());
        endpoints.push(v.clone());
    }
    endpoints.sort();
    let mut counts: Vec<(T, usize)> = Vec::new();
    for e in endpoints {
        match counts.last_mut() {
            Some((v, c)) if *v == e => *c += 1,
            _ => counts.push((e, 1)),
        }
    }
    if counts.len() != 4 || counts.iter().any(|(_, c)| *c != 2) {
        return false;
    }
    // four distinct vertices of degree two: a 4-cycle or two disjoint
    // 2-cycles; the latter needs repeated edges, excluded by distinctness
    let mut sorted_edges: Vec<(T, T)> = edges
        .iter()
        .map(|(u, v)| {
            if u <= v {
                (u.clone(), v.clone())
            } else {
                (v.clone(), u.clone())
            }
        })
        .collect();
    sorted_edges.sort();
    sorted_edges.windows(2).all(|w| w[0] != w[1])
}

/// Scans the squares of a real complex for forbidden configurations; the
/// result is empty for every complex built from a word set.
pub fn forbidden_pattern_scan(complex: &InsertionComplex) -> Vec<ForbiddenViolation> {
    let squares: Vec<AbstractSquare<Word>> = complex
        .cells()
        .blocks_of_dim(2)
        .iter()
        .map(|b| {
            let m1 = b.vertex_mask(0b01);
            let m2 = b.vertex_mask(0b10);
            let mids = if m1 <= m2 { (m1, m2) } else { (m2, m1) };
            (b.min_word(), mids, b.max_word())
        })
        .collect();
    let mut out = Vec::new();
    if let Some((condition, indices)) = scan_abstract_squares(&squares) {
        let al = complex.alphabet();
        out.push(ForbiddenViolation {
            condition,
            squares: indices
                .iter()
                .map(|&i| complex.cells().blocks_of_dim(2)[i].display(al))
                .collect(),
        });
    }
    out
}
