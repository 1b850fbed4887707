//! Exhaustive lists of small posets up to isomorphism.

use std::collections::BTreeMap;

use crate::poset::{CanonicalForm, Poset};

fn element_labels(n: usize) -> Vec<String> {
    (0..n).map(|i| format!("p{i}")).collect()
}

/// One representative per isomorphism class of posets on `n` elements,
/// labeled `p0, p1, ...`, ordered by canonical form.
///
/// Every poset arises from a smaller one by adding a new maximal element on
/// top of a down-closed set, so classes are grown one element at a time.
pub fn posets_up_to_iso(n: usize) -> Vec<Poset> {
    let mut level: BTreeMap<CanonicalForm, Poset> = BTreeMap::new();
    let empty = Poset::antichain(Vec::new()).expect("empty poset");
    level.insert(empty.canonical_form(), empty);
    for size in 1..=n {
        let mut next = BTreeMap::new();
        for p in level.values() {
            for ideal in p.ground().subsets() {
                let down_closed = p.strictly_below_any(ideal).is_subset(ideal);
                if !down_closed {
                    continue;
                }
                let new = size - 1;
                let mut pairs: Vec<(usize, usize)> = p.covers();
                pairs.extend(ideal.iter().map(|i| (i, new)));
                let q = Poset::from_relations(element_labels(size), &pairs)
                    .expect("adding a maximal element keeps the order acyclic");
                next.entry(q.canonical_form()).or_insert(q);
            }
        }
        level = next;
    }
    level.into_values().collect()
}

/// Connected posets on `n` elements up to isomorphism.
pub fn connected_posets_up_to_iso(n: usize) -> Vec<Poset> {
    posets_up_to_iso(n)
        .into_iter()
        .filter(Poset::is_connected)
        .collect()
}

/// Connected posets with `min..=max` elements, grouped by size in increasing order.
pub fn connected_posets_in_range(min: usize, max: usize) -> Vec<Poset> {
    (min..=max).flat_map(connected_posets_up_to_iso).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn known_counts() {
        // OEIS A000112 and A000608
        let all: Vec<usize> = (0..=5).map(|n| posets_up_to_iso(n).len()).collect();
        assert_eq!(all, vec![1, 1, 2, 5, 16, 63]);
        let connected: Vec<usize> = (1..=5)
            .map(|n| connected_posets_up_to_iso(n).len())
            .collect();
        assert_eq!(connected, vec![1, 1, 3, 10, 44]);
    }

    #[test]
    fn six_elements() {
        assert_eq!(posets_up_to_iso(6).len(), 318);
        assert_eq!(connected_posets_up_to_iso(6).len(), 238);
    }
}
