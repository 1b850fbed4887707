//! End-to-end check that flipping an autonomous subset preserves the face
//! counts, with the flip map as the witnessing bijection.

use std::collections::HashSet;

use rayon::prelude::*;

use crate::comparability::autonomous_subsets;
use crate::error::Result;
use crate::flip_map::flip_tubing;
use crate::poset::Poset;
use crate::set::ElementSet;
use crate::tubing::{enumerate_tubings, f_vector, FVector, Tubing};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FlipReport {
    pub subset: ElementSet,
    pub f_original: FVector,
    pub f_flipped: FVector,
    /// Every tubing maps to a tubing with as many tubes.
    pub size_preserved: bool,
    /// Mapping back with the flipped poset returns every tubing.
    pub round_trip: bool,
    /// Images are distinct and exhaust the tubings of the flipped poset.
    pub bijective: bool,
}

impl FlipReport {
    pub fn f_vector_preserved(&self) -> bool {
        self.f_original == self.f_flipped
    }

    pub fn passed(&self) -> bool {
        self.f_vector_preserved() && self.size_preserved && self.round_trip && self.bijective
    }
}

/// Compare `p` with `p.flip(s)` and run the flip map over every tubing.
/// Fails only on input errors (non-autonomous `s`, unsuitable `p`); a broken
/// flip map shows up as `false` fields.
pub fn check_flip(p: &Poset, s: ElementSet) -> Result<FlipReport> {
    let flipped = p.flip(s)?;
    let f_original = f_vector(p)?;
    let f_flipped = f_vector(&flipped)?;
    let mut size_preserved = true;
    let mut round_trip = true;
    let mut images: HashSet<Tubing> = HashSet::new();
    for t in enumerate_tubings(p)? {
        match flip_tubing(p, s, &t) {
            Ok(image) => {
                size_preserved &= image.len() == t.len();
                round_trip &= flip_tubing(&flipped, s, &image).is_ok_and(|back| back == t);
                images.insert(image);
            }
            Err(_) => {
                size_preserved = false;
                round_trip = false;
            }
        }
    }
    let target_count = enumerate_tubings(&flipped)?.count();
    let bijective = round_trip && images.len() == target_count;
    Ok(FlipReport {
        subset: s,
        f_original,
        f_flipped,
        size_preserved,
        round_trip,
        bijective,
    })
}

/// [`check_flip`] for every autonomous subset with at least two elements,
/// in [`autonomous_subsets`] order. Subsets are checked in parallel.
pub fn check_invariance(p: &Poset) -> Result<Vec<FlipReport>> {
    autonomous_subsets(p, 2)
        .into_par_iter()
        .map(|s| check_flip(p, s))
        .collect()
}
