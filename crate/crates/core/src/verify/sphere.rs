//! Exhaustive search over abstract 2-complexes on few vertices for
//! sphere-like second homology.
//!
//! Skeleton candidates are length-graded bipartite digraphs: vertices carry
//! levels (word lengths up to a shift), edges go one level up, and squares
//! attach to (bottom, {mid, mid}, top) quadruples spanning two levels.
//! Square subsets with nonzero H₂ over Z₂ are pruned by the forbidden
//! configurations and by the single-inserted-symbol argument; surviving
//! patterns are reported for inspection. With five vertices nothing
//! survives, the computational half of the minimal-2-sphere bound.

use std::collections::BTreeSet;

use rayon::prelude::*;
use serde::Serialize;

use crate::matrix::Bitrix;
use crate::verify::squares::{scan_abstract_squares, AbstractSquare};
use crate::verify::VerifyError;

/// An abstract skeleton with an attached square set that survived all
/// pruning.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct SkeletonPattern {
    /// Number of vertices per level, bottom first.
    pub levels: Vec<usize>,
    /// Level of each vertex id.
    pub level_of: Vec<usize>,
    pub edges: Vec<(usize, usize)>,
    pub squares: Vec<(usize, (usize, usize), usize)>,
    /// Betti numbers of the abstract complex over Z₂.
    pub betti_z2: Vec<usize>,
}

#[derive(Clone, Debug, Serialize)]
pub struct SphereSearchReport {
    pub n: usize,
    pub graphs_scanned: u64,
    pub square_sets_scanned: u64,
    pub with_nonzero_h2: u64,
    pub pruned_forbidden: u64,
    pub pruned_single_symbol: u64,
    /// Deduplicated (up to within-level relabeling) surviving patterns.
    pub survivors: Vec<SkeletonPattern>,
}

const SEARCH_GUARD: usize = 7;

/// Compositions of n into at least `min_parts` positive parts.
fn compositions(n: usize, min_parts: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut current = Vec::new();
    fn rec(rest: usize, current: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if rest == 0 {
            out.push(current.clone());
            return;
        }
        for part in 1..=rest {
            current.push(part);
            rec(rest - part, current, out);
            current.pop();
        }
    }
    rec(n, &mut current, &mut out);
    out.retain(|c| c.len() >= min_parts);
    out
}

struct LevelLayout {
    levels: Vec<usize>,
    level_of: Vec<usize>,
    /// Edge slots between consecutive levels, as (from, to) vertex ids.
    slots: Vec<(usize, usize)>,
}

fn layout(levels: &[usize]) -> LevelLayout {
    let mut level_of = Vec::new();
    let mut starts = Vec::new();
    let mut next = 0;
    for (l, &size) in levels.iter().enumerate() {
        starts.push(next);
        for _ in 0..size {
            level_of.push(l);
            next += 1;
        }
    }
    let mut slots = Vec::new();
    for l in 0..levels.len().saturating_sub(1) {
        for u in starts[l]..starts[l] + levels[l] {
            for v in starts[l + 1]..starts[l + 1] + levels[l + 1] {
                slots.push((u, v));
            }
        }
    }
    LevelLayout {
        levels: levels.to_vec(),
        level_of,
        slots,
    }
}

/// Candidate squares of a graph: bottoms two levels below tops with at
/// least two common neighbors.
fn candidate_squares(
    n: usize,
    level_of: &[usize],
    edges: &[(usize, usize)],
) -> Vec<AbstractSquare<usize>> {
    let has_edge = |u: usize, v: usize| edges.contains(&(u, v));
    let mut out = Vec::new();
    for b in 0..n {
        for t in 0..n {
            if level_of[t] != level_of[b] + 2 {
                continue;
            }
            let mids: Vec<usize> = (0..n)
                .filter(|&m| has_edge(b, m) && has_edge(m, t))
                .collect();
            for i in 0..mids.len() {
                for j in (i + 1)..mids.len() {
                    out.push((b, (mids[i], mids[j]), t));
                }
            }
        }
    }
    out
}

/// Z₂ Betti numbers of the abstract 2-complex.
fn abstract_betti_z2(
    n: usize,
    edges: &[(usize, usize)],
    squares: &[AbstractSquare<usize>],
) -> Vec<usize> {
    let edge_index = |u: usize, v: usize| edges.iter().position(|&e| e == (u, v)).expect("edge");
    let mut d1 = Bitrix::zeros(n, edges.len());
    for (j, &(u, v)) in edges.iter().enumerate() {
        d1.set(u, j, true);
        d1.set(v, j, true);
    }
    let mut d2 = Bitrix::zeros(edges.len(), squares.len());
    for (j, &(b, (m1, m2), t)) in squares.iter().enumerate() {
        for (u, v) in [(b, m1), (b, m2), (m1, t), (m2, t)] {
            d2.set(edge_index(u, v), j, true);
        }
    }
    let r1 = d1.rank();
    let r2 = d2.rank();
    vec![
        n - r1,
        edges.len() - r1 - r2,
        squares.len() - r2,
    ]
}

/// Minimum forced structure of inserted symbols: squares force the cross
/// pairing (bottom→m₁ with m₂→top, bottom→m₂ with m₁→top); returns the
/// number of symbol classes among square edges after merging.
fn forced_symbol_classes(
    edges: &[(usize, usize)],
    squares: &[AbstractSquare<usize>],
) -> usize {
    let edge_index = |u: usize, v: usize| edges.iter().position(|&e| e == (u, v)).expect("edge");
    let mut parent: Vec<usize> = (0..edges.len()).collect();
    fn find(parent: &mut Vec<usize>, x: usize) -> usize {
        if parent[x] != x {
            let root = find(parent, parent[x]);
            parent[x] = root;
        }
        parent[x]
    }
    let mut used: BTreeSet<usize> = BTreeSet::new();
    for &(b, (m1, m2), t) in squares {
        let e = [
            edge_index(b, m1),
            edge_index(b, m2),
            edge_index(m1, t),
            edge_index(m2, t),
        ];
        used.extend(e);
        for (x, y) in [(e[0], e[3]), (e[1], e[2])] {
            let (rx, ry) = (find(&mut parent, x), find(&mut parent, y));
            parent[rx] = ry;
        }
    }
    let roots: BTreeSet<usize> = used.iter().map(|&e| find(&mut parent, e)).collect();
    roots.len()
}

/// Relabeled edge and square lists used to deduplicate survivors.
type PatternEncoding = (Vec<(usize, usize)>, Vec<AbstractSquare<usize>>);

/// Canonical encoding under within-level vertex relabeling, for survivor
/// deduplication.
fn canonical_encoding(p: &SkeletonPattern) -> PatternEncoding {
    let mut level_members: Vec<Vec<usize>> = vec![Vec::new(); p.levels.len()];
    for (v, &l) in p.level_of.iter().enumerate() {
        level_members[l].push(v);
    }
    let mut best: Option<PatternEncoding> = None;
    // all products of per-level permutations
    fn perms(items: &[usize]) -> Vec<Vec<usize>> {
        if items.is_empty() {
            return vec![Vec::new()];
        }
        let mut out = Vec::new();
        for (i, &x) in items.iter().enumerate() {
            let mut rest = items.to_vec();
            rest.remove(i);
            for mut tail in perms(&rest) {
                tail.insert(0, x);
                out.push(tail);
            }
        }
        out
    }
    fn product(
        levels: &[Vec<Vec<usize>>],
        idx: usize,
        map: &mut Vec<usize>,
        p: &SkeletonPattern,
        best: &mut Option<PatternEncoding>,
        members: &[Vec<usize>],
    ) {
        if idx == levels.len() {
            let mut edges: Vec<(usize, usize)> =
                p.edges.iter().map(|&(u, v)| (map[u], map[v])).collect();
            edges.sort_unstable();
            let mut squares: Vec<AbstractSquare<usize>> = p
                .squares
                .iter()
                .map(|&(b, (m1, m2), t)| {
                    let (x, y) = (map[m1], map[m2]);
                    (map[b], (x.min(y), x.max(y)), map[t])
                })
                .collect();
            squares.sort_unstable();
            let cand = (edges, squares);
            if best.as_ref().is_none_or(|b| cand < *b) {
                *best = Some(cand);
            }
            return;
        }
        for perm in &levels[idx] {
            for (slot, &v) in members[idx].iter().enumerate() {
                map[v] = perm[slot];
            }
            product(levels, idx + 1, map, p, best, members);
        }
    }
    let all_perms: Vec<Vec<Vec<usize>>> = level_members.iter().map(|m| perms(m)).collect();
    let mut map = vec![0usize; p.level_of.len()];
    product(&all_perms, 0, &mut map, p, &mut best, &level_members);
    best.expect("at least the identity relabeling")
}

/// Runs the abstract search on `n` vertices. Guarded at n ≤ 7; with n ≤ 5
/// no pattern survives.
pub fn search_min_sphere(n: usize) -> Result<SphereSearchReport, VerifyError> {
    if n > SEARCH_GUARD {
        return Err(VerifyError::Guard {
            what: "sphere search vertices",
            got: n,
            limit: SEARCH_GUARD,
        });
    }
    let profiles = compositions(n, 3);
    let per_profile: Vec<SphereSearchReport> = profiles
        .par_iter()
        .map(|levels| {
            let layout = layout(levels);
            let slots = layout.slots.len();
            let mut report = SphereSearchReport {
                n,
                graphs_scanned: 0,
                square_sets_scanned: 0,
                with_nonzero_h2: 0,
                pruned_forbidden: 0,
                pruned_single_symbol: 0,
                survivors: Vec::new(),
            };
            let mut seen: BTreeSet<PatternEncoding> = BTreeSet::new();
            for edge_mask in 0u64..(1u64 << slots) {
                report.graphs_scanned += 1;
                let edges: Vec<(usize, usize)> = layout
                    .slots
                    .iter()
                    .enumerate()
                    .filter(|&(i, _)| edge_mask >> i & 1 == 1)
                    .map(|(_, &e)| e)
                    .collect();
                let candidates = candidate_squares(n, &layout.level_of, &edges);
                // a Z₂-dependent square set needs at least three members
                if candidates.len() < 3 {
                    continue;
                }
                for square_mask in 1u64..(1u64 << candidates.len()) {
                    if (square_mask.count_ones() as usize) < 3 {
                        continue;
                    }
                    report.square_sets_scanned += 1;
                    let squares: Vec<AbstractSquare<usize>> = candidates
                        .iter()
                        .enumerate()
                        .filter(|&(i, _)| square_mask >> i & 1 == 1)
                        .map(|(_, s)| *s)
                        .collect();
                    let betti = abstract_betti_z2(n, &edges, &squares);
                    if betti[2] == 0 {
                        continue;
                    }
                    report.with_nonzero_h2 += 1;
                    if scan_abstract_squares(&squares).is_some() {
                        report.pruned_forbidden += 1;
                        continue;
                    }
                    if forced_symbol_classes(&edges, &squares) <= 1 {
                        report.pruned_single_symbol += 1;
                        continue;
                    }
                    let pattern = SkeletonPattern {
                        levels: layout.levels.clone(),
                        level_of: layout.level_of.clone(),
                        edges: edges.clone(),
                        squares: squares.clone(),
                        betti_z2: betti,
                    };
                    if seen.insert(canonical_encoding(&pattern)) {
                        report.survivors.push(pattern);
                    }
                }
            }
            report
        })
        .collect();

    let mut total = SphereSearchReport {
        n,
        graphs_scanned: 0,
        square_sets_scanned: 0,
        with_nonzero_h2: 0,
        pruned_forbidden: 0,
        pruned_single_symbol: 0,
        survivors: Vec::new(),
    };
    for r in per_profile {
        total.graphs_scanned += r.graphs_scanned;
        total.square_sets_scanned += r.square_sets_scanned;
        total.with_nonzero_h2 += r.with_nonzero_h2;
        total.pruned_forbidden += r.pruned_forbidden;
        total.pruned_single_symbol += r.pruned_single_symbol;
        total.survivors.extend(r.survivors);
    }
    total.survivors.sort();
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn compositions_count() {
        // compositions of 5 into ≥ 3 parts: 2^4 − 1 − 4 = 11
        assert_eq!(compositions(5, 3).len(), 11);
        assert_eq!(compositions(3, 3), vec![vec![1, 1, 1]]);
    }

    #[test]
    fn no_pattern_with_four_vertices() {
        let report = search_min_sphere(4).unwrap();
        assert_eq!(report.with_nonzero_h2, 0, "too few vertices for any 2-cycle");
        assert!(report.survivors.is_empty());
    }

    #[test]
    fn five_vertices_all_forbidden() {
        let report = search_min_sphere(5).unwrap();
        assert!(report.with_nonzero_h2 > 0, "the (1,3,1) profile has kernels");
        assert_eq!(
            report.with_nonzero_h2,
            report.pruned_forbidden,
            "every candidate dies by the forbidden patterns"
        );
        assert!(report.survivors.is_empty());
    }

    #[test]
    fn guard_is_enforced() {
        assert!(matches!(
            search_min_sphere(8),
            Err(VerifyError::Guard { .. })
        ));
    }

    #[test]
    fn abstract_betti_of_octahedron_pattern() {
        // the 8-word minimal sphere as an abstract pattern:
        // levels (2, 4, 2), all 12 edges, 6 squares
        let level_of = [0, 0, 1, 1, 1, 1, 2, 2];
        let edges: Vec<(usize, usize)> = vec![
            (0, 2), (0, 3), (0, 4), (1, 3), (1, 4), (1, 5),
            (2, 6), (3, 6), (4, 6), (3, 7), (4, 7), (5, 7),
        ];
        let squares: Vec<AbstractSquare<usize>> = vec![
            (0, (2, 3), 6), (0, (2, 4), 6), (0, (3, 4), 7),
            (1, (3, 4), 6), (1, (3, 5), 7), (1, (4, 5), 7),
        ];
        assert_eq!(abstract_betti_z2(8, &edges, &squares), vec![1, 0, 1]);
        assert_eq!(level_of.len(), 8);
        assert!(scan_abstract_squares(&squares).is_none());
        assert!(forced_symbol_classes(&edges, &squares) >= 2);
    }
}
