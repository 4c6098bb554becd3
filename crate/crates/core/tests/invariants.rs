//! Cross-module invariants on randomly generated inputs, plus the star and
//! link behavior of cycles on the minimal sphere.

use insertion_complex::chain::{link_chain, star_chain};
use insertion_complex::complex::{build_complex, insertion_graph, WordSet};
use insertion_complex::homology::{
    check_boundary_composition, cycle_basis, homology_z, homology_z2, is_boundary, is_cycle,
};
use insertion_complex::verify::random;

#[test]
fn star_and_link_of_sphere_cycle() {
    // the minimal homological 2-sphere has a generating 2-cycle; for a
    // cycle, the link of any vertex contains no block touching that vertex
    let ws = WordSet::from_texts(
        ["a", "aa", "b", "bb", "ab", "ba", "bab", "aba"].iter().copied(),
    )
    .unwrap();
    let complex = build_complex(&ws, None);
    let cycles = cycle_basis(complex.cells(), 2).unwrap();
    assert_eq!(cycles.len(), 1, "H2 = Z gives one independent 2-cycle");
    let gamma = &cycles[0];
    assert_eq!(gamma.len(), 6, "the cycle uses all six squares");
    assert!(is_cycle(gamma).unwrap());
    assert!(!is_boundary(complex.cells(), gamma).unwrap());

    let al = ws.alphabet();
    for text in ["aba", "bab", "a", "ab"] {
        let w = al.parse_word(text).unwrap();
        let star = star_chain(gamma, &w);
        assert!(!star.is_zero(), "every vertex lies on the sphere");
        let link = link_chain(gamma, &w).unwrap();
        let star_of_link = star_chain(&link, &w);
        assert!(
            star_of_link.is_zero(),
            "link of {text} still touches {text}"
        );
    }
}

#[test]
fn boundary_matrices_compose_to_zero_on_random_sets() {
    let mut rng = random::rng(21);
    for _ in 0..30 {
        let ws = random::random_word_set(&mut rng, 3, 8, 5);
        let complex = build_complex(&ws, None);
        assert!(check_boundary_composition(complex.cells()).unwrap());
    }
}

#[test]
fn boundary_matrix_entries_are_signs() {
    use insertion_complex::homology::boundary_matrix;
    use num_bigint::BigInt;
    let mut rng = random::rng(25);
    for _ in 0..20 {
        let ws = random::random_word_set(&mut rng, 2, 10, 5);
        let complex = build_complex(&ws, None);
        for k in 1..complex.cells().counts().len() {
            let m = boundary_matrix(complex.cells(), k).unwrap();
            let one = BigInt::from(1);
            let neg = BigInt::from(-1);
            for i in 0..m.rows() {
                for j in 0..m.cols() {
                    let v = m.get(i, j);
                    assert!(
                        *v == one || *v == neg || num_traits::Zero::is_zero(v),
                        "entry ({i},{j}) of boundary {k} is {v}"
                    );
                }
            }
        }
    }
}

#[test]
fn euler_characteristic_equals_betti_alternation() {
    let mut rng = random::rng(22);
    for _ in 0..30 {
        let ws = random::random_word_set(&mut rng, 2, 10, 5);
        let complex = build_complex(&ws, None);
        let h = homology_z(complex.cells()).unwrap();
        let alternating: i64 = h
            .dims
            .iter()
            .map(|d| {
                if d.k % 2 == 0 {
                    d.betti as i64
                } else {
                    -(d.betti as i64)
                }
            })
            .sum();
        assert_eq!(h.euler, alternating);
    }
}

#[test]
fn z2_betti_dominates_on_random_sets() {
    let mut rng = random::rng(23);
    for _ in 0..30 {
        let ws = random::random_word_set(&mut rng, 2, 8, 5);
        let complex = build_complex(&ws, None);
        let hz = homology_z(complex.cells()).unwrap();
        let h2 = homology_z2(complex.cells()).unwrap();
        for (d, b2) in hz.dims.iter().zip(&h2) {
            assert!(*b2 >= d.betti);
        }
    }
}

#[test]
fn block_boundaries_are_boundaries() {
    use insertion_complex::chain::boundary_block;
    let mut rng = random::rng(26);
    for _ in 0..20 {
        let ws = random::random_word_set(&mut rng, 2, 10, 4);
        let complex = build_complex(&ws, None);
        for k in 1..complex.cells().counts().len() {
            for b in complex.cells().blocks_of_dim(k) {
                let c = boundary_block(b).unwrap();
                assert!(is_cycle(&c).unwrap());
                assert!(is_boundary(complex.cells(), &c).unwrap());
            }
        }
    }
}

#[test]
fn maximal_blocks_of_the_sphere_are_its_squares() {
    let ws = WordSet::from_texts(
        ["a", "aa", "b", "bb", "ab", "ba", "bab", "aba"].iter().copied(),
    )
    .unwrap();
    let complex = build_complex(&ws, None);
    let maximal = complex.maximal_blocks().unwrap();
    assert_eq!(maximal.len(), 6);
    assert!(maximal.iter().all(|b| b.dim() == 2));
}

#[test]
fn graph_is_length_graded_and_complex_is_bounded() {
    let mut rng = random::rng(24);
    for _ in 0..30 {
        let ws = random::random_word_set(&mut rng, 3, 8, 5);
        let g = insertion_graph(&ws);
        for e in g.edges() {
            assert_eq!(e.to.len(), e.from.len() + 1, "edges increase length by 1");
            assert_eq!(e.block.min_word(), e.from);
            assert_eq!(e.block.max_word(), e.to);
        }
        let complex = build_complex(&ws, None);
        if ws.len() <= 20 {
            assert!(
                (complex.cells().total() as u128) <= 1u128 << ws.len(),
                "|C(W)| exceeds 2^|W|"
            );
        }
        // the 1-skeleton agrees with the graph
        assert_eq!(complex.cells().count_of_dim(1), g.edges().len());
    }
}
