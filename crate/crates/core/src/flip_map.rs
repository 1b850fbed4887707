//! The tube-count preserving bijection between the tubings of `P` and of the
//! poset obtained by flipping an autonomous subset `S`.
//!
//! Tubes that avoid `S`, sit inside `S`, or contain `S` are *good* and are
//! carried over unchanged. The remaining *bad* tubes form two chains, the
//! lower ones (meeting `S` from below) and the upper ones. Each chain is split
//! into its trace outside `S` (a starred nested sequence) and the pieces of `S`
//! it picks up along the way, which together with the untouched rest of `S`
//! give an ordered set partition of `S`. Reversing that partition and
//! rebuilding the chains on the flipped poset gives the image tubing.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::poset::Poset;
use crate::set::ElementSet;
use crate::tubing::{is_proper_tubing, Tube, Tubing};

/// Tubes of a tubing sorted by their relation to an autonomous subset.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TubeClassification {
    pub good: Vec<Tube>,
    /// Strictly increasing under inclusion.
    pub lower: Vec<Tube>,
    /// Strictly increasing under inclusion.
    pub upper: Vec<Tube>,
}

impl TubeClassification {
    pub fn bad(&self) -> impl Iterator<Item = Tube> + '_ {
        self.lower.iter().chain(&self.upper).copied()
    }
}

/// Good: disjoint from `s`, inside `s`, or containing `s`.
pub fn is_good_tube(tube: Tube, s: ElementSet) -> bool {
    tube.is_disjoint(s) || tube.is_subset(s) || s.is_subset(tube)
}

pub fn classify_tubes(p: &Poset, s: ElementSet, t: &Tubing) -> Result<TubeClassification> {
    if !p.is_autonomous(s) {
        return Err(Error::NotAutonomous);
    }
    if !is_proper_tubing(p, t.tubes()) {
        return Err(Error::NotATubing("input to the flip map".into()));
    }
    let mut good = Vec::new();
    let mut lower = Vec::new();
    let mut upper = Vec::new();
    for &tube in t.tubes() {
        if is_good_tube(tube, s) {
            good.push(tube);
            continue;
        }
        let inside = tube.intersection(s);
        let outside = tube.difference(s);
        let is_lower = !p.strictly_below_any(inside).is_disjoint(outside);
        let is_upper = !p.strictly_above_any(inside).is_disjoint(outside);
        match (is_lower, is_upper) {
            (true, false) => lower.push(tube),
            (false, true) => upper.push(tube),
            (true, true) => return Err(Error::StructureViolation("both lower and upper")),
            (false, false) => return Err(Error::StructureViolation("neither lower nor upper")),
        }
    }
    for chain in [&mut lower, &mut upper] {
        chain.sort_by_key(|t| t.len());
        if chain
            .windows(2)
            .any(|w| !(w[0].is_subset(w[1]) && w[0] != w[1]))
        {
            return Err(Error::StructureViolation("not part of a nested chain"));
        }
    }
    Ok(TubeClassification { good, lower, upper })
}

/// One position of a decorated nested sequence.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Decorated {
    pub set: ElementSet,
    pub starred: bool,
}

/// Nested sets with a star mark per position.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct DecoratedSequence(pub Vec<Decorated>);

impl DecoratedSequence {
    pub fn stars(&self) -> usize {
        self.0.iter().filter(|e| e.starred).count()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    fn is_nested(&self) -> bool {
        self.0.windows(2).all(|w| w[0].set.is_subset(w[1].set))
    }
}

/// The triple (lower trace, ordered partition of `S`, upper trace).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Decomposition {
    pub lower: DecoratedSequence,
    /// Ordered set partition of `S`: lower-chain pieces first, then the
    /// untouched remainder (if any), then the upper-chain pieces reversed.
    pub blocks: Vec<ElementSet>,
    pub upper: DecoratedSequence,
    /// Whether a block between the lower and upper pieces holds the part of
    /// `S` no bad tube reaches.
    pub has_middle: bool,
}

impl Decomposition {
    /// Same traces with the block order reversed.
    pub fn reversed(&self) -> Decomposition {
        let mut d = self.clone();
        d.blocks.reverse();
        d
    }

    /// Check the structural invariants against the subset `s` of `p`.
    pub fn validate(&self, p: &Poset, s: ElementSet) -> Result<()> {
        let bad = |msg: &str| Err(Error::MalformedDecomposition(msg.into()));
        let stars = self.lower.stars() + self.upper.stars();
        if stars + usize::from(self.has_middle) != self.blocks.len() {
            return bad("star count does not match block count");
        }
        let mut seen = ElementSet::EMPTY;
        for &b in &self.blocks {
            if b.is_empty() || !b.is_disjoint(seen) {
                return bad("blocks must be nonempty and disjoint");
            }
            seen = seen.union(b);
        }
        if seen != s {
            return bad("blocks do not partition the subset");
        }
        let outside = p.ground().difference(s);
        for seq in [&self.lower, &self.upper] {
            if !seq.is_nested() {
                return bad("sequence is not nested");
            }
            if seq.0.iter().any(|e| !e.set.is_subset(outside)) {
                return bad("sequence set meets the subset");
            }
            if seq.0.iter().any(|e| e.set.is_empty() && !e.starred) {
                return bad("empty set without a star");
            }
        }
        Ok(())
    }

    pub fn to_file(&self, p: &Poset) -> DecompositionFile {
        let seq = |d: &DecoratedSequence| {
            d.0.iter()
                .map(|e| DecoratedFile {
                    set: p.labels_of(e.set),
                    star: e.starred,
                })
                .collect()
        };
        DecompositionFile {
            lower: seq(&self.lower),
            blocks: self.blocks.iter().map(|&b| p.labels_of(b)).collect(),
            upper: seq(&self.upper),
        }
    }

    /// Resolve labels; the middle block is inferred from the star count.
    pub fn from_file(p: &Poset, file: &DecompositionFile) -> Result<Decomposition> {
        let seq = |d: &[DecoratedFile]| {
            d.iter()
                .map(|e| {
                    Ok(Decorated {
                        set: p.subset_of(&e.set)?,
                        starred: e.star,
                    })
                })
                .collect::<Result<Vec<_>>>()
                .map(DecoratedSequence)
        };
        let lower = seq(&file.lower)?;
        let upper = seq(&file.upper)?;
        let blocks = file
            .blocks
            .iter()
            .map(|b| p.subset_of(b))
            .collect::<Result<Vec<_>>>()?;
        let stars = lower.stars() + upper.stars();
        let has_middle = if blocks.len() == stars + 1 {
            true
        } else if blocks.len() == stars {
            false
        } else {
            return Err(Error::MalformedDecomposition(
                "star count does not match block count".into(),
            ));
        };
        Ok(Decomposition {
            lower,
            blocks,
            upper,
            has_middle,
        })
    }
}

/// `{"L": [{"set": [..], "star": bool}], "M": [[..]], "U": [..]}`
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DecompositionFile {
    #[serde(rename = "L")]
    pub lower: Vec<DecoratedFile>,
    #[serde(rename = "M")]
    pub blocks: Vec<Vec<String>>,
    #[serde(rename = "U")]
    pub upper: Vec<DecoratedFile>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DecoratedFile {
    pub set: Vec<String>,
    pub star: bool,
}

/// Split a nested chain into its trace outside `s` and the pieces of `s` it
/// gains at each starred step.
fn split_chain(chain: &[Tube], s: ElementSet) -> (DecoratedSequence, Vec<ElementSet>) {
    let mut prev = ElementSet::EMPTY;
    let mut seq = Vec::with_capacity(chain.len());
    let mut pieces = Vec::new();
    for &tube in chain {
        let gained = tube.difference(prev).intersection(s);
        let starred = !gained.is_empty();
        if starred {
            pieces.push(gained);
        }
        seq.push(Decorated {
            set: tube.difference(s),
            starred,
        });
        prev = tube;
    }
    (DecoratedSequence(seq), pieces)
}

pub fn decompose(p: &Poset, s: ElementSet, classification: &TubeClassification) -> Decomposition {
    debug_assert!(p.is_autonomous(s));
    let (lower, lower_pieces) = split_chain(&classification.lower, s);
    let (upper, upper_pieces) = split_chain(&classification.upper, s);
    let covered = classification
        .bad()
        .fold(ElementSet::EMPTY, |acc, t| acc.union(t));
    let middle = s.difference(covered);
    let mut blocks = lower_pieces;
    if !middle.is_empty() {
        blocks.push(middle);
    }
    blocks.extend(upper_pieces.into_iter().rev());
    Decomposition {
        lower,
        blocks,
        upper,
        has_middle: !middle.is_empty(),
    }
}

/// Rebuild the bad tubes: the lower chain takes blocks from the front of the
/// partition, the upper chain from the back.
pub fn reconstruct(p: &Poset, s: ElementSet, d: &Decomposition) -> Result<Vec<Tube>> {
    d.validate(p, s)?;
    let n = d.blocks.len();
    let mut tubes = Vec::with_capacity(d.lower.len() + d.upper.len());
    let mut grow = |seq: &DecoratedSequence, block_at: &dyn Fn(usize) -> ElementSet| {
        let mut cur = ElementSet::EMPTY;
        let mut star = 0;
        for e in &seq.0 {
            cur = cur.union(e.set);
            if e.starred {
                cur = cur.union(block_at(star));
                star += 1;
            }
            tubes.push(cur);
        }
    };
    grow(&d.lower, &|j| d.blocks[j]);
    grow(&d.upper, &|j| d.blocks[n - 1 - j]);
    Ok(tubes)
}

/// Image of `t` under the flip map for `(p, s)`, as a tubing of `p.flip(s)` on
/// the same element indices. The result is re-validated on the flipped poset.
pub fn flip_tubing(p: &Poset, s: ElementSet, t: &Tubing) -> Result<Tubing> {
    let image = flip_tubing_with_decomposition(p, s, t)?;
    Ok(image.tubing)
}

/// Result of [`flip_tubing_with_decomposition`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FlipImage {
    pub flipped: Poset,
    pub tubing: Tubing,
    /// Decomposition of the bad tubes of the input tubing.
    pub decomposition: Decomposition,
}

pub fn flip_tubing_with_decomposition(p: &Poset, s: ElementSet, t: &Tubing) -> Result<FlipImage> {
    let classification = classify_tubes(p, s, t)?;
    let decomposition = decompose(p, s, &classification);
    let flipped = p.flip(s)?;
    let rebuilt = reconstruct(&flipped, s, &decomposition.reversed())?;
    let tubing = Tubing::new(classification.good.iter().copied().chain(rebuilt).collect());
    if tubing.len() != t.len() || !is_proper_tubing(&flipped, tubing.tubes()) {
        return Err(Error::ImageNotATubing);
    }
    Ok(FlipImage {
        flipped,
        tubing,
        decomposition,
    })
}

/// No element of a later block lies strictly below an element of an earlier one.
pub fn is_weakly_increasing(p: &Poset, blocks: &[ElementSet]) -> bool {
    let mut earlier_down = ElementSet::EMPTY;
    for &b in blocks {
        if !b.is_disjoint(earlier_down) {
            return false;
        }
        earlier_down = earlier_down.union(p.strictly_below_any(b));
    }
    true
}
