#![allow(dead_code)]

pub mod oracle;

use poset_assoc::catalog::connected_posets_in_range;
use poset_assoc::{complete_graded, Composition, Poset};

pub fn graded(parts: &[usize]) -> Poset {
    complete_graded(&Composition::new(parts.to_vec()).unwrap()).unwrap()
}

pub fn chain(n: usize) -> Poset {
    Poset::chain((0..n).map(|i| format!("c{i}")).collect()).unwrap()
}

/// Connected posets with 2..=max elements, one per isomorphism class.
pub fn corpus(max: usize) -> Vec<Poset> {
    connected_posets_in_range(2, max)
}

/// Multiply polynomials given as coefficient lists.
pub fn poly_mul(a: &[u64], b: &[u64]) -> Vec<u64> {
    let mut out = vec![0; a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}
