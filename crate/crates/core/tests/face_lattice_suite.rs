mod common;

use std::collections::HashSet;

use poset_assoc::face_lattice::face_factors;
use poset_assoc::{
    enumerate_tubings, f_vector, face_lattice, face_product_decomposition, lattices_equivalent,
    permutohedron_f_vector, permutohedron_lattice, two_face_census, Poset, Tubing,
};

fn f_poly(p: &Poset) -> Vec<u64> {
    f_vector(p).unwrap().counts().to_vec()
}

#[test]
fn rank_counts_are_the_f_vector() {
    for p in common::corpus(5) {
        let l = face_lattice(&p).unwrap();
        assert_eq!(l.f_vector(), f_vector(&p).unwrap());
        // every edge has exactly two vertices
        let sets = l.vertex_sets();
        for (face, set) in l.faces().iter().zip(&sets) {
            if face.dim == 1 {
                assert_eq!(set.count_ones(..), 2);
            }
        }
    }
    for n in 1..=5 {
        assert_eq!(
            permutohedron_lattice(n).f_vector(),
            permutohedron_f_vector(n)
        );
    }
}

/// Each face is the product of the associahedra of its factors, so the face
/// counts of the interval above a tubing multiply out.
#[test]
fn faces_are_products_of_factor_associahedra() {
    for p in common::corpus(5) {
        let d = p.len() - 2;
        let all: Vec<Tubing> = enumerate_tubings(&p).unwrap().collect();
        for t in &all {
            let mut interval = vec![0u64; d - t.len() + 1];
            for u in all.iter().filter(|u| t.is_subset(u)) {
                interval[d - u.len()] += 1;
            }
            let product = face_product_decomposition(&p, t)
                .unwrap()
                .iter()
                .map(f_poly)
                .fold(vec![1], |acc, f| common::poly_mul(&acc, &f));
            assert_eq!(product, interval, "{p:?} {t:?}");
            let factors = face_factors(&p, t).unwrap();
            assert_eq!(factors.len(), t.len() + 1);
            let dims: usize = factors
                .iter()
                .map(|f| f.poset.len().saturating_sub(2))
                .sum();
            let ones = factors.iter().filter(|f| f.poset.len() == 1).count();
            assert_eq!(ones, 0);
            assert_eq!(dims, d - t.len());
        }
    }
}

#[test]
fn graded_with_middle_singleton_is_a_permutohedron() {
    for (m, n) in [(1, 1), (2, 1), (1, 2), (2, 2)] {
        let p = common::graded(&[m, 1, n]);
        let l = face_lattice(&p).unwrap();
        assert!(
            lattices_equivalent(&l, &permutohedron_lattice(m + n)),
            "({m},1,{n})"
        );
        assert_eq!(f_vector(&p).unwrap(), permutohedron_f_vector(m + n));
    }
}

#[test]
fn same_f_vector_different_lattice() {
    let a = face_lattice(&common::graded(&[1, 2, 2])).unwrap();
    let b = permutohedron_lattice(4);
    assert_eq!(a.rank_counts(), b.rank_counts());
    assert!(!lattices_equivalent(&a, &b));
    assert!(!lattices_equivalent(&b, &a));
    assert!(lattices_equivalent(&a, &a));
}

#[test]
fn equivalence_follows_isomorphism() {
    let corpus = common::corpus(5);
    let lattices: Vec<_> = corpus.iter().map(|p| face_lattice(p).unwrap()).collect();
    for i in 0..corpus.len() {
        for j in 0..corpus.len() {
            let eq = lattices_equivalent(&lattices[i], &lattices[j]);
            assert_eq!(eq, lattices_equivalent(&lattices[j], &lattices[i]));
            if i == j {
                assert!(eq);
            }
            if eq {
                assert_eq!(lattices[i].rank_counts(), lattices[j].rank_counts());
                assert_eq!(lattices[i].polygon_census(), lattices[j].polygon_census());
            }
        }
    }
}

#[test]
fn permutohedra_have_only_squares_and_hexagons() {
    for n in 3..=5 {
        let census = permutohedron_lattice(n).polygon_census();
        let kinds: HashSet<usize> = census.sizes().iter().copied().collect();
        assert!(kinds.is_subset(&HashSet::from([4, 6])), "n={n}: {kinds:?}");
    }
}

#[test]
fn octagon_face_on_graded_poset() {
    let census = two_face_census(&common::graded(&[1, 2, 2])).unwrap();
    assert!(census.contains(8));
    assert!(census.sizes().iter().all(|&s| s >= 4));
    // chain associahedra only have squares and pentagons
    let kinds: HashSet<usize> = two_face_census(&common::chain(5))
        .unwrap()
        .sizes()
        .iter()
        .copied()
        .collect();
    assert_eq!(kinds, HashSet::from([4, 5]));
}
