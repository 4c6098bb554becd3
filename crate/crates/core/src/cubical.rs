//! Elementary cubes, cubical complexes, the doubled barycentric
//! subdivision, and the translation of cubical complexes into word sets
//! with matching homology.
//!
//! The translation sends a vertex (m₁,…,m_d) of the subdivided complex to
//! the word a b^{m₁} a b^{m₂} … a b^{m_d}, and a cube to the block with an
//! edge (1,b) wherever a coordinate spans an interval. Both constructions
//! here are exercised against each other: cubical homology is the
//! independent oracle for the word-set route.

use std::collections::BTreeSet;

use serde::Deserialize;
use thiserror::Error;

use crate::block::Block;
use crate::complex::WordSet;
use crate::homology::{homology_from_matrices, HomologyResult};
use crate::matrix::IntMatrix;
use crate::word::{Alphabet, Symbol, Word};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CubicalError {
    #[error("cube has ambient dimension {got}, complex expects {expected}")]
    AmbientMismatch { expected: usize, got: usize },
    #[error("vertex coordinate {coord} is negative")]
    NegativeCoordinate { coord: i64 },
    #[error("boundary of a 0-dimensional cube")]
    ZeroDimensional,
    #[error("invalid cubical document: {0}")]
    Document(String),
}

/// An elementary interval: a lattice point {k} or a unit span [k, k+1].
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Interval {
    Point(i64),
    Span(i64),
}

impl Interval {
    pub fn lo(self) -> i64 {
        match self {
            Interval::Point(k) | Interval::Span(k) => k,
        }
    }

    pub fn is_degenerate(self) -> bool {
        matches!(self, Interval::Point(_))
    }
}

/// A product of elementary intervals; dimension counts the spans.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Cube {
    intervals: Vec<Interval>,
}

impl Cube {
    pub fn new(intervals: Vec<Interval>) -> Self {
        Cube { intervals }
    }

    pub fn vertex(coords: &[i64]) -> Self {
        Cube {
            intervals: coords.iter().map(|&k| Interval::Point(k)).collect(),
        }
    }

    pub fn ambient(&self) -> usize {
        self.intervals.len()
    }

    pub fn intervals(&self) -> &[Interval] {
        &self.intervals
    }

    pub fn dim(&self) -> usize {
        self.intervals.iter().filter(|i| !i.is_degenerate()).count()
    }

    /// Coordinates when the cube is a vertex.
    pub fn coords(&self) -> Option<Vec<i64>> {
        self.intervals
            .iter()
            .map(|i| match i {
                Interval::Point(k) => Some(*k),
                Interval::Span(_) => None,
            })
            .collect()
    }

    /// The 2^dim corner vertices.
    pub fn corners(&self) -> Vec<Cube> {
        let spans: Vec<usize> = self
            .intervals
            .iter()
            .enumerate()
            .filter(|(_, i)| !i.is_degenerate())
            .map(|(k, _)| k)
            .collect();
        (0..(1usize << spans.len()))
            .map(|mask| {
                let mut ivs = self.intervals.clone();
                for (bit, &slot) in spans.iter().enumerate() {
                    let k = ivs[slot].lo();
                    ivs[slot] = Interval::Point(k + (mask >> bit & 1) as i64);
                }
                Cube::new(ivs)
            })
            .collect()
    }

    /// Codimension-1 faces: each span collapsed to either end.
    pub fn facets(&self) -> Vec<Cube> {
        let mut out = Vec::new();
        for (slot, iv) in self.intervals.iter().enumerate() {
            if let Interval::Span(k) = iv {
                for end in [*k, *k + 1] {
                    let mut ivs = self.intervals.clone();
                    ivs[slot] = Interval::Point(end);
                    out.push(Cube::new(ivs));
                }
            }
        }
        out
    }

    /// True iff every interval of `self` sits inside the matching interval
    /// of `other`.
    pub fn is_face_of(&self, other: &Cube) -> bool {
        self.ambient() == other.ambient()
            && self
                .intervals
                .iter()
                .zip(&other.intervals)
                .all(|(f, g)| match (f, g) {
                    (Interval::Point(a), Interval::Point(b)) => a == b,
                    (Interval::Point(a), Interval::Span(b)) => *a == *b || *a == *b + 1,
                    (Interval::Span(a), Interval::Span(b)) => a == b,
                    (Interval::Span(_), Interval::Point(_)) => false,
                })
    }

    /// Signed cubical boundary by the product formula: the j-th span
    /// contributes (−1)^{j+1} (top end − bottom end).
    pub fn boundary(&self) -> Result<Vec<(Cube, i64)>, CubicalError> {
        if self.dim() == 0 {
            return Err(CubicalError::ZeroDimensional);
        }
        let mut out = Vec::new();
        let mut j = 0;
        for (slot, iv) in self.intervals.iter().enumerate() {
            if let Interval::Span(k) = iv {
                j += 1;
                let sign = if j % 2 == 1 { 1 } else { -1 };
                let mut hi = self.intervals.clone();
                hi[slot] = Interval::Point(*k + 1);
                let mut lo = self.intervals.clone();
                lo[slot] = Interval::Point(*k);
                out.push((Cube::new(hi), sign));
                out.push((Cube::new(lo), -sign));
            }
        }
        Ok(out)
    }
}

/// A face-closed set of elementary cubes in a fixed ambient dimension.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CubicalComplex {
    ambient: usize,
    cubes: BTreeSet<Cube>,
}

impl CubicalComplex {
    /// Builds the complex generated by `cubes`: the input plus all faces.
    pub fn new<I: IntoIterator<Item = Cube>>(
        ambient: usize,
        cubes: I,
    ) -> Result<Self, CubicalError> {
        let mut queue: Vec<Cube> = Vec::new();
        for c in cubes {
            if c.ambient() != ambient {
                return Err(CubicalError::AmbientMismatch {
                    expected: ambient,
                    got: c.ambient(),
                });
            }
            queue.push(c);
        }
        let mut set = BTreeSet::new();
        while let Some(c) = queue.pop() {
            if !set.insert(c.clone()) {
                continue;
            }
            queue.extend(c.facets());
        }
        Ok(CubicalComplex {
            ambient,
            cubes: set,
        })
    }

    /// The full unit cube `[0,1]^d` and all its faces.
    pub fn solid_cube(d: usize) -> CubicalComplex {
        let top = Cube::new(vec![Interval::Span(0); d]);
        CubicalComplex::new(d, [top]).expect("ambient matches")
    }

    /// The boundary of the unit cube `[0,1]^d`: all 3^d − 1 proper faces.
    pub fn cube_boundary_complex(d: usize) -> CubicalComplex {
        let top = Cube::new(vec![Interval::Span(0); d]);
        CubicalComplex::new(d, top.facets()).expect("ambient matches")
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn cubes(&self) -> impl Iterator<Item = &Cube> {
        self.cubes.iter()
    }

    pub fn len(&self) -> usize {
        self.cubes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cubes.is_empty()
    }

    pub fn contains(&self, c: &Cube) -> bool {
        self.cubes.contains(c)
    }

    pub fn dim(&self) -> Option<usize> {
        self.cubes.iter().map(Cube::dim).max()
    }

    pub fn vertices(&self) -> Vec<Vec<i64>> {
        self.cubes
            .iter()
            .filter(|c| c.dim() == 0)
            .map(|c| c.coords().expect("vertices have coordinates"))
            .collect()
    }

    /// Translates the whole complex so every coordinate is nonnegative,
    /// by the minimal per-axis shift.
    pub fn shift_nonnegative(&self) -> CubicalComplex {
        if self.cubes.is_empty() {
            return self.clone();
        }
        let mut mins = vec![i64::MAX; self.ambient];
        for c in &self.cubes {
            for (i, iv) in c.intervals().iter().enumerate() {
                mins[i] = mins[i].min(iv.lo());
            }
        }
        let shifted = self.cubes.iter().map(|c| {
            Cube::new(
                c.intervals()
                    .iter()
                    .zip(&mins)
                    .map(|(iv, &m)| {
                        let d = if m < 0 { -m } else { 0 };
                        match iv {
                            Interval::Point(k) => Interval::Point(k + d),
                            Interval::Span(k) => Interval::Span(k + d),
                        }
                    })
                    .collect(),
            )
        });
        CubicalComplex {
            ambient: self.ambient,
            cubes: shifted.collect(),
        }
    }

    /// The barycentric subdivision stretched by 2: one vertex 2·bar(C) per
    /// cube C (coordinates even on degenerate axes, odd on spanning ones),
    /// one cube per face pair F ⊆ G.
    pub fn subdivide_2sd(&self) -> CubicalComplex {
        let mut out = BTreeSet::new();
        for g in &self.cubes {
            let spans: Vec<usize> = g
                .intervals()
                .iter()
                .enumerate()
                .filter(|(_, iv)| !iv.is_degenerate())
                .map(|(i, _)| i)
                .collect();
            // choose, per spanning axis of G, the sub-interval of F:
            // bottom point, top point, or the span itself
            let n = spans.len();
            let mut choice = vec![0u8; n];
            loop {
                let mut ivs: Vec<Interval> = g
                    .intervals()
                    .iter()
                    .map(|iv| match iv {
                        Interval::Point(k) => Interval::Point(2 * k),
                        Interval::Span(k) => Interval::Point(2 * k + 1),
                    })
                    .collect();
                for (&slot, &c) in spans.iter().zip(&choice) {
                    let k = g.intervals()[slot].lo();
                    ivs[slot] = match c {
                        0 => Interval::Span(2 * k),      // F picks the bottom point
                        1 => Interval::Span(2 * k + 1),  // F picks the top point
                        _ => Interval::Point(2 * k + 1), // F keeps the span
                    };
                }
                out.insert(Cube::new(ivs));
                let mut i = 0;
                let wrapped = loop {
                    if i == n {
                        break true;
                    }
                    choice[i] += 1;
                    if choice[i] < 3 {
                        break false;
                    }
                    choice[i] = 0;
                    i += 1;
                };
                if wrapped {
                    break;
                }
            }
        }
        let done = CubicalComplex {
            ambient: self.ambient,
            cubes: out,
        };
        debug_assert!(done
            .cubes
            .iter()
            .flat_map(|c| c.facets())
            .all(|f| done.contains(&f)));
        done
    }

    /// Exact Z homology of the cubical chain complex; shares the reduction
    /// pipeline with block homology.
    pub fn homology_z(&self) -> HomologyResult {
        let dim = self.dim().map_or(0, |d| d + 1);
        let mut graded: Vec<Vec<&Cube>> = vec![Vec::new(); dim];
        for c in &self.cubes {
            graded[c.dim()].push(c);
        }
        let counts: Vec<usize> = graded.iter().map(Vec::len).collect();
        let index_of = |c: &Cube, level: &[&Cube]| {
            level
                .binary_search_by(|probe| (*probe).cmp(c))
                .expect("faces of complex cubes lie in the complex")
        };
        let mats: Vec<IntMatrix> = (1..dim)
            .map(|k| {
                let mut m = IntMatrix::zeros(counts[k - 1], counts[k]);
                for (j, c) in graded[k].iter().enumerate() {
                    for (f, coeff) in c.boundary().expect("dim ≥ 1") {
                        let i = index_of(&f, &graded[k - 1]);
                        m.add_to(i, j, &num_bigint::BigInt::from(coeff));
                    }
                }
                m
            })
            .collect();
        homology_from_matrices(&counts, &mats)
    }
}

/// The two-symbol alphabet used by the word translation.
pub fn cubical_alphabet() -> Alphabet {
    Alphabet::new("ab".chars()).expect("fixed alphabet")
}

const SYM_A: Symbol = Symbol(0);
const SYM_B: Symbol = Symbol(1);

/// Ψ on vertices: (m₁,…,m_d) ↦ a b^{m₁} a b^{m₂} … a b^{m_d}.
pub fn psi_vertex(coords: &[i64]) -> Result<Word, CubicalError> {
    let mut w = Word::empty();
    for &m in coords {
        if m < 0 {
            return Err(CubicalError::NegativeCoordinate { coord: m });
        }
        w.push(SYM_A);
        for _ in 0..m {
            w.push(SYM_B);
        }
    }
    Ok(w)
}

/// Ψ on cubes: spans become (1,b) edges after their b-run. The image is
/// valid, canonical, and dimension-preserving, with V(Ψ(C)) = Ψ(V(C)).
pub fn psi_cube(cube: &Cube) -> Result<Block, CubicalError> {
    let mut head = Word::empty();
    let mut steps: Vec<(Symbol, Word)> = Vec::new();
    let push_sym = |steps: &mut Vec<(Symbol, Word)>, head: &mut Word, s: Symbol| {
        match steps.last_mut() {
            Some((_, x)) => x.push(s),
            None => head.push(s),
        }
    };
    for iv in cube.intervals() {
        let m = iv.lo();
        if m < 0 {
            return Err(CubicalError::NegativeCoordinate { coord: m });
        }
        push_sym(&mut steps, &mut head, SYM_A);
        for _ in 0..m {
            push_sym(&mut steps, &mut head, SYM_B);
        }
        if !iv.is_degenerate() {
            steps.push((SYM_B, Word::empty()));
        }
    }
    let b = Block::new(head, steps);
    debug_assert!(b.is_canonical() && b.is_valid());
    debug_assert_eq!(b.dim(), cube.dim());
    Ok(b)
}

/// Word set whose insertion complex has the homology of `K`: Ψ applied to
/// the vertices of the shifted, doubled barycentric subdivision.
pub fn cubical_to_words(k: &CubicalComplex) -> Result<WordSet, CubicalError> {
    let subdivided = k.shift_nonnegative().subdivide_2sd();
    let words = subdivided
        .vertices()
        .into_iter()
        .map(|coords| psi_vertex(&coords))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(WordSet::new(cubical_alphabet(), words))
}

/// Word set realizing the homology of the k-sphere: the translated
/// boundary of the (k+1)-cube, 3^{k+1} − 1 words.
pub fn sphere_words(k: usize) -> WordSet {
    let boundary = CubicalComplex::cube_boundary_complex(k + 1);
    cubical_to_words(&boundary).expect("boundary coordinates are nonnegative")
}

/// Parses the structured cubical format
/// `{"ambient": d, "cubes": [[[k] or [k, k+1], …], …]}`.
pub fn parse_cubical_json(text: &str) -> Result<CubicalComplex, CubicalError> {
    #[derive(Deserialize)]
    struct Doc {
        ambient: usize,
        cubes: Vec<Vec<Vec<i64>>>,
    }
    let doc: Doc =
        serde_json::from_str(text).map_err(|e| CubicalError::Document(e.to_string()))?;
    let mut cubes = Vec::with_capacity(doc.cubes.len());
    for c in &doc.cubes {
        let ivs = c
            .iter()
            .map(|iv| match iv.as_slice() {
                [k] => Ok(Interval::Point(*k)),
                [k, hi] if *hi == *k + 1 => Ok(Interval::Span(*k)),
                other => Err(CubicalError::Document(format!(
                    "interval must be [k] or [k, k+1], got {other:?}"
                ))),
            })
            .collect::<Result<Vec<_>, _>>()?;
        cubes.push(Cube::new(ivs));
    }
    CubicalComplex::new(doc.ambient, cubes)
}

/// Serializes a complex in the structured cubical format.
pub fn cubical_to_json(k: &CubicalComplex) -> serde_json::Value {
    let cubes: Vec<Vec<Vec<i64>>> = k
        .cubes()
        .map(|c| {
            c.intervals()
                .iter()
                .map(|iv| match iv {
                    Interval::Point(k) => vec![*k],
                    Interval::Span(k) => vec![*k, *k + 1],
                })
                .collect()
        })
        .collect();
    serde_json::json!({ "ambient": k.ambient(), "cubes": cubes })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chain::{boundary_block, Chain};
    use crate::complex::build_complex;
    use crate::homology::homology_z;

    #[test]
    fn interval_boundary() {
        let edge = Cube::new(vec![Interval::Span(3)]);
        let b = edge.boundary().unwrap();
        assert_eq!(
            b,
            vec![
                (Cube::vertex(&[4]), 1),
                (Cube::vertex(&[3]), -1),
            ]
        );
        assert!(Cube::vertex(&[0]).boundary().is_err());
    }

    #[test]
    fn degenerate_factor_boundary() {
        let c = Cube::new(vec![Interval::Point(5), Interval::Span(0)]);
        let b = c.boundary().unwrap();
        assert_eq!(
            b,
            vec![
                (Cube::new(vec![Interval::Point(5), Interval::Point(1)]), 1),
                (Cube::new(vec![Interval::Point(5), Interval::Point(0)]), -1),
            ]
        );
    }

    #[test]
    fn square_boundary_squares_to_zero() {
        let sq = Cube::new(vec![Interval::Span(0), Interval::Span(0)]);
        let mut acc: std::collections::BTreeMap<Cube, i64> = Default::default();
        for (f, s) in sq.boundary().unwrap() {
            for (v, t) in f.boundary().unwrap() {
                *acc.entry(v).or_insert(0) += s * t;
            }
        }
        assert!(acc.values().all(|&v| v == 0));
    }

    #[test]
    fn face_relation() {
        let sq = Cube::new(vec![Interval::Span(0), Interval::Span(1)]);
        for c in sq.corners() {
            assert!(c.is_face_of(&sq));
        }
        for f in sq.facets() {
            assert!(f.is_face_of(&sq));
            assert!(!sq.is_face_of(&f));
        }
        assert!(sq.is_face_of(&sq));
        let far = Cube::vertex(&[7, 7]);
        assert!(!far.is_face_of(&sq));
        // complexes are closed under the face relation
        let k = CubicalComplex::solid_cube(2);
        for c in k.cubes() {
            for f in c.facets() {
                assert!(k.contains(&f));
            }
        }
    }

    #[test]
    fn closure_and_counts() {
        let solid = CubicalComplex::solid_cube(2);
        assert_eq!(solid.len(), 9, "4 vertices, 4 edges, 1 square");
        let boundary = CubicalComplex::cube_boundary_complex(3);
        assert_eq!(boundary.len(), 26, "3^3 − 1 proper faces");
    }

    #[test]
    fn subdivision_of_segment() {
        let k = CubicalComplex::solid_cube(1);
        let sd = k.subdivide_2sd();
        let expect: BTreeSet<Cube> = [
            Cube::vertex(&[0]),
            Cube::vertex(&[1]),
            Cube::vertex(&[2]),
            Cube::new(vec![Interval::Span(0)]),
            Cube::new(vec![Interval::Span(1)]),
        ]
        .into_iter()
        .collect();
        assert_eq!(sd.cubes().cloned().collect::<BTreeSet<_>>(), expect);
    }

    #[test]
    fn subdivision_of_point_and_square() {
        let k = CubicalComplex::new(1, [Cube::vertex(&[0])]).unwrap();
        let sd = k.subdivide_2sd();
        assert_eq!(sd.len(), 1);
        assert_eq!(sd.vertices(), vec![vec![0]]);

        let sd = CubicalComplex::solid_cube(2).subdivide_2sd();
        let count_dim = |d: usize| sd.cubes().filter(|c| c.dim() == d).count();
        assert_eq!(count_dim(0), 9);
        assert_eq!(count_dim(1), 12);
        assert_eq!(count_dim(2), 4);
    }

    #[test]
    fn psi_examples() {
        let al = cubical_alphabet();
        assert_eq!(al.display_word(&psi_vertex(&[0, 2, 1]).unwrap()), "aabbab");
        assert_eq!(al.display_word(&psi_vertex(&[0, 0]).unwrap()), "aa");
        assert!(psi_vertex(&[-1]).is_err());

        let c = Cube::new(vec![Interval::Point(0), Interval::Span(1)]);
        let b = psi_cube(&c).unwrap();
        assert_eq!(b.display(&al), "aab(b)");
        assert_eq!(b.dim(), 1);
        // V(Ψ(C)) = Ψ(V(C))
        let image_corners: BTreeSet<Word> = c
            .corners()
            .iter()
            .map(|v| psi_vertex(&v.coords().unwrap()).unwrap())
            .collect();
        assert_eq!(b.vertices(), image_corners);
    }

    #[test]
    fn psi_is_a_chain_map() {
        let cubes = [
            Cube::new(vec![Interval::Span(0), Interval::Span(1)]),
            Cube::new(vec![Interval::Point(2), Interval::Span(0), Interval::Span(1)]),
            Cube::new(vec![Interval::Span(1), Interval::Point(0), Interval::Span(2)]),
            Cube::new(vec![Interval::Span(0), Interval::Span(0), Interval::Span(0)]),
        ];
        for c in cubes {
            let lhs = boundary_block(&psi_cube(&c).unwrap()).unwrap();
            let mut rhs = Chain::zero();
            for (f, s) in c.boundary().unwrap() {
                rhs.add_term(psi_cube(&f).unwrap(), s);
            }
            assert_eq!(lhs, rhs, "∂Ψ(C) = Ψ(∂C) for {c:?}");
        }
    }

    #[test]
    fn cubical_homology_oracle_values() {
        let h = CubicalComplex::cube_boundary_complex(2).homology_z();
        assert_eq!(h.betti(), vec![1, 1]);
        for d in 1..=3 {
            let h = CubicalComplex::solid_cube(d).homology_z();
            assert!(h.is_trivial(), "solid cube is contractible");
        }
        let h = CubicalComplex::cube_boundary_complex(3).homology_z();
        assert_eq!(h.betti(), vec![1, 0, 1]);
        assert!(h.is_torsion_free());
    }

    #[test]
    fn words_match_cubical_homology() {
        let k = CubicalComplex::cube_boundary_complex(2);
        let ws = cubical_to_words(&k).unwrap();
        assert_eq!(ws.len(), 8);
        let complex = build_complex(&ws, None);
        let h = homology_z(complex.cells()).unwrap();
        assert_eq!(h.betti(), k.homology_z().betti());

        // a single vertex translates to a^d
        let k = CubicalComplex::new(2, [Cube::vertex(&[1, 1])]).unwrap();
        let ws = cubical_to_words(&k).unwrap();
        assert_eq!(ws.len(), 1);
        assert_eq!(ws.alphabet().display_word(&ws.words()[0]), "abbabb");
    }

    #[test]
    fn sphere_word_counts() {
        assert_eq!(sphere_words(0).len(), 2);
        assert_eq!(sphere_words(1).len(), 8);
        assert_eq!(sphere_words(2).len(), 26);
        // two isolated points
        let ws = sphere_words(0);
        let complex = build_complex(&ws, None);
        let h = homology_z(complex.cells()).unwrap();
        assert_eq!(h.betti(), vec![2]);
    }

    #[test]
    fn negative_coordinates_are_shifted() {
        let k = CubicalComplex::new(1, [Cube::new(vec![Interval::Span(-2)])]).unwrap();
        let ws = cubical_to_words(&k).unwrap();
        assert_eq!(ws.len(), 3);
        let complex = build_complex(&ws, None);
        assert!(homology_z(complex.cells()).unwrap().is_trivial());
    }

    #[test]
    fn json_round_trip() {
        let k = CubicalComplex::cube_boundary_complex(2);
        let text = cubical_to_json(&k).to_string();
        let back = parse_cubical_json(&text).unwrap();
        assert_eq!(k, back);
        assert!(parse_cubical_json(r#"{"ambient": 1, "cubes": [[[0, 2]]]}"#).is_err());
        assert!(parse_cubical_json(r#"{"ambient": 2, "cubes": [[[0]]]}"#).is_err());
    }
}
