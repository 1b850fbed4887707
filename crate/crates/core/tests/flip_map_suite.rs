//! Exhaustive checks of the flip map and its decomposition on small connected
//! posets.

mod common;

use std::collections::HashSet;

use poset_assoc::comparability::autonomous_subsets;
use poset_assoc::face_lattice::region_quotient;
use poset_assoc::flip_map::{
    classify_tubes, decompose, flip_tubing_with_decomposition, reconstruct,
};
use poset_assoc::{
    enumerate_tubings, flip_tubing, is_proper_tubing, is_weakly_increasing, ElementSet, Error,
    Poset, Tubing,
};

fn cases(max: usize) -> impl Iterator<Item = (Poset, ElementSet)> {
    common::corpus(max).into_iter().flat_map(|p| {
        autonomous_subsets(&p, 2)
            .into_iter()
            .map(move |s| (p.clone(), s))
    })
}

#[test]
fn good_tubes_follow_the_definition() {
    for (p, s) in cases(5) {
        for t in enumerate_tubings(&p).unwrap() {
            let c = classify_tubes(&p, s, &t).unwrap();
            for &tube in t.tubes() {
                let meets = !tube.is_disjoint(s);
                let inside = tube.is_subset(s);
                let covers = s.is_subset(tube);
                let good = !meets || inside || covers;
                assert_eq!(c.good.contains(&tube), good);
            }
            assert_eq!(c.good.len() + c.lower.len() + c.upper.len(), t.len());
        }
    }
}

#[test]
fn decomposition_round_trips_and_partitions() {
    for (p, s) in cases(5) {
        for t in enumerate_tubings(&p).unwrap() {
            let c = match classify_tubes(&p, s, &t) {
                Ok(c) => c,
                Err(Error::StructureViolation(m)) => panic!("structure lemma failed: {m}"),
                Err(e) => panic!("{e}"),
            };
            let d = decompose(&p, s, &c);
            d.validate(&p, s).unwrap();
            let mut rebuilt = reconstruct(&p, s, &d).unwrap();
            let mut bad: Vec<_> = c.bad().collect();
            rebuilt.sort();
            bad.sort();
            assert_eq!(rebuilt, bad, "{p:?} {s:?} {t:?}");
            assert!(is_weakly_increasing(&p, &d.blocks), "{p:?} {t:?}");
            let union = d.blocks.iter().fold(ElementSet::EMPTY, |a, &b| a.union(b));
            assert!(d.blocks.is_empty() || union == s);
        }
    }
}

#[test]
fn flip_is_a_size_preserving_bijection() {
    for (p, s) in cases(5) {
        let q = p.flip(s).unwrap();
        let target: HashSet<Tubing> = enumerate_tubings(&q).unwrap().collect();
        let mut images = HashSet::new();
        for t in enumerate_tubings(&p).unwrap() {
            let image = flip_tubing(&p, s, &t).unwrap();
            assert_eq!(image.len(), t.len());
            assert!(is_proper_tubing(&q, image.tubes()));
            assert!(target.contains(&image));
            assert_eq!(flip_tubing(&q, s, &image).unwrap(), t);
            assert!(images.insert(image), "flip map not injective on {p:?}");
        }
        assert_eq!(images, target);
    }
}

#[test]
fn good_tubes_are_fixed() {
    for (p, s) in cases(5) {
        for t in enumerate_tubings(&p).unwrap() {
            let c = classify_tubes(&p, s, &t).unwrap();
            let image = flip_tubing(&p, s, &t).unwrap();
            for g in &c.good {
                assert!(image.contains(*g));
            }
        }
    }
}

/// Contracting the good tubes inside the smallest good region around `S`
/// commutes with the flip map.
#[test]
fn flip_commutes_with_quotients() {
    let mut nontrivial = 0;
    for (p, s) in cases(5) {
        for t in enumerate_tubings(&p).unwrap() {
            let c = classify_tubes(&p, s, &t).unwrap();
            if c.bad().next().is_none() {
                continue;
            }
            let region = c
                .good
                .iter()
                .copied()
                .chain(std::iter::once(p.ground()))
                .filter(|&g| s.is_subset(g))
                .min_by_key(|g| g.len())
                .unwrap();
            let factor = region_quotient(&p, region, &c.good).unwrap();
            let classes = &factor.classes;
            let project = |x: ElementSet| -> ElementSet {
                let idx: ElementSet = (0..classes.len())
                    .filter(|&i| classes[i].is_subset(x))
                    .collect();
                let lifted = idx
                    .iter()
                    .fold(ElementSet::EMPTY, |a, i| a.union(classes[i]));
                assert_eq!(lifted, x, "tube is not a union of classes");
                idx
            };
            let lift = |x: ElementSet| x.iter().fold(ElementSet::EMPTY, |a, i| a.union(classes[i]));
            let sq = project(s);
            let tq = Tubing::new(c.bad().map(project).collect());
            assert!(is_proper_tubing(&factor.poset, tq.tubes()));
            let flipped_q = factor.poset.flip(sq).unwrap();
            let image_q = flip_tubing(&factor.poset, sq, &tq).unwrap();

            let image = flip_tubing_with_decomposition(&p, s, &t).unwrap();
            let expected_q = region_quotient(&image.flipped, region, &c.good)
                .unwrap()
                .poset;
            assert_eq!(flipped_q, expected_q);

            let mut lifted: Vec<_> = image_q.tubes().iter().map(|&x| lift(x)).collect();
            let mut bad_image: Vec<_> = image
                .tubing
                .tubes()
                .iter()
                .copied()
                .filter(|x| !c.good.contains(x))
                .collect();
            lifted.sort();
            bad_image.sort();
            assert_eq!(lifted, bad_image, "{p:?} S={s:?} T={t:?}");
            nontrivial += 1;
        }
    }
    assert!(nontrivial > 100);
}
