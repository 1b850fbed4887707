//! Finite posets over indexed elements and the substitution / flip operations
//! on autonomous subsets.
//!
//! Element identity is the position in [`Poset::labels`]; labels only matter
//! for input and output. [`Poset::dual`] and [`Poset::flip`] keep indices
//! fixed, so subsets and tubings of `P` can be read directly on the flipped
//! poset.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::set::{ElementSet, MAX_ELEMENTS};

/// A finite strict partial order with labeled elements.
///
/// The full relation is kept as one bit row per element (`above[i]` holds every
/// `j` with `i ≺ j`), so comparability queries are a single mask test.
#[derive(Clone)]
pub struct Poset {
    labels: Vec<String>,
    above: Vec<ElementSet>,
    below: Vec<ElementSet>,
    upper_covers: OnceLock<Vec<ElementSet>>,
}

impl PartialEq for Poset {
    fn eq(&self, other: &Self) -> bool {
        self.labels == other.labels && self.above == other.above
    }
}

impl Eq for Poset {}

impl fmt::Debug for Poset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let covers: Vec<_> = self
            .covers()
            .into_iter()
            .map(|(i, j)| format!("{}<{}", self.labels[i], self.labels[j]))
            .collect();
        f.debug_struct("Poset")
            .field("elements", &self.labels)
            .field("covers", &covers)
            .finish()
    }
}

/// On-disk poset description: `{"elements": [...], "relations": [[a, b], ...]}`
/// where each pair means `a ≺ b`. Relations need not be covers.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PosetFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub elements: Vec<String>,
    #[serde(default)]
    pub relations: Vec<(String, String)>,
}

/// Parse a poset from its JSON file form, taking the transitive closure of the
/// listed relations.
pub fn parse_poset(text: &str) -> Result<Poset> {
    let file: PosetFile =
        serde_json::from_str(text).map_err(|e| Error::MalformedInput(e.to_string()))?;
    Poset::from_file(&file)
}

impl Poset {
    /// Build a poset from labels and index pairs `(i, j)` meaning `i ≺ j`.
    /// The relation is closed transitively; a cycle is rejected.
    pub fn from_relations(labels: Vec<String>, relations: &[(usize, usize)]) -> Result<Self> {
        let n = labels.len();
        if n > MAX_ELEMENTS {
            return Err(Error::TooLarge(n));
        }
        let mut seen = HashMap::with_capacity(n);
        for l in &labels {
            if seen.insert(l.as_str(), ()).is_some() {
                return Err(Error::DuplicateElement(l.clone()));
            }
        }
        let mut above = vec![ElementSet::EMPTY; n];
        for &(i, j) in relations {
            if i >= n || j >= n {
                return Err(Error::MalformedInput(format!(
                    "relation ({i}, {j}) out of range for {n} elements"
                )));
            }
            above[i] = above[i].with(j);
        }
        // Warshall over bit rows
        for k in 0..n {
            for i in 0..n {
                if above[i].contains(k) {
                    above[i] = above[i].union(above[k]);
                }
            }
        }
        if let Some(i) = (0..n).find(|&i| above[i].contains(i)) {
            return Err(Error::CyclicRelation(labels[i].clone()));
        }
        Ok(Self::from_closed_rows(labels, above))
    }

    /// `above` must already be irreflexive and transitive.
    fn from_closed_rows(labels: Vec<String>, above: Vec<ElementSet>) -> Self {
        let n = labels.len();
        let mut below = vec![ElementSet::EMPTY; n];
        for (i, row) in above.iter().enumerate() {
            for j in row.iter() {
                below[j] = below[j].with(i);
            }
        }
        Poset {
            labels,
            above,
            below,
            upper_covers: OnceLock::new(),
        }
    }

    pub fn from_file(file: &PosetFile) -> Result<Self> {
        let index: HashMap<&str, usize> = file
            .elements
            .iter()
            .enumerate()
            .map(|(i, l)| (l.as_str(), i))
            .collect();
        if index.len() != file.elements.len() {
            let mut seen = std::collections::HashSet::new();
            let dup = file.elements.iter().find(|l| !seen.insert(l.as_str()));
            return Err(Error::DuplicateElement(dup.cloned().unwrap_or_default()));
        }
        let lookup = |l: &String| {
            index
                .get(l.as_str())
                .copied()
                .ok_or_else(|| Error::UnknownElement(l.clone()))
        };
        let pairs = file
            .relations
            .iter()
            .map(|(a, b)| Ok((lookup(a)?, lookup(b)?)))
            .collect::<Result<Vec<_>>>()?;
        Self::from_relations(file.elements.clone(), &pairs)
    }

    /// File form listing only the covering relations.
    pub fn to_file(&self) -> PosetFile {
        PosetFile {
            name: None,
            elements: self.labels.clone(),
            relations: self
                .covers()
                .into_iter()
                .map(|(i, j)| (self.labels[i].clone(), self.labels[j].clone()))
                .collect(),
        }
    }

    /// The antichain on the given labels.
    pub fn antichain(labels: Vec<String>) -> Result<Self> {
        Self::from_relations(labels, &[])
    }

    /// The chain `labels[0] ≺ labels[1] ≺ ...`.
    pub fn chain(labels: Vec<String>) -> Result<Self> {
        let pairs: Vec<_> = (1..labels.len()).map(|i| (i - 1, i)).collect();
        Self::from_relations(labels, &pairs)
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    /// Resolve labels to a subset, failing on the first unknown label.
    pub fn subset_of<S: AsRef<str>>(&self, labels: &[S]) -> Result<ElementSet> {
        labels.iter().try_fold(ElementSet::EMPTY, |acc, l| {
            let l = l.as_ref();
            self.index_of(l)
                .map(|i| acc.with(i))
                .ok_or_else(|| Error::UnknownElement(l.to_owned()))
        })
    }

    /// Labels of a subset, sorted as strings.
    pub fn labels_of(&self, set: ElementSet) -> Vec<String> {
        let mut out: Vec<String> = set.iter().map(|i| self.labels[i].clone()).collect();
        out.sort();
        out
    }

    pub fn ground(&self) -> ElementSet {
        ElementSet::full(self.len())
    }

    /// `i ≺ j`
    pub fn less(&self, i: usize, j: usize) -> bool {
        self.above[i].contains(j)
    }

    /// `i ⪯ j`
    pub fn leq(&self, i: usize, j: usize) -> bool {
        i == j || self.less(i, j)
    }

    pub fn comparable(&self, i: usize, j: usize) -> bool {
        self.less(i, j) || self.less(j, i)
    }

    /// Elements strictly above `i`.
    pub fn above(&self, i: usize) -> ElementSet {
        self.above[i]
    }

    /// Elements strictly below `i`.
    pub fn below(&self, i: usize) -> ElementSet {
        self.below[i]
    }

    /// Elements strictly above some member of `set`.
    pub fn strictly_above_any(&self, set: ElementSet) -> ElementSet {
        set.iter()
            .fold(ElementSet::EMPTY, |acc, i| acc.union(self.above[i]))
    }

    /// Elements strictly below some member of `set`.
    pub fn strictly_below_any(&self, set: ElementSet) -> ElementSet {
        set.iter()
            .fold(ElementSet::EMPTY, |acc, i| acc.union(self.below[i]))
    }

    fn upper_cover_rows(&self) -> &[ElementSet] {
        self.upper_covers.get_or_init(|| {
            (0..self.len())
                .map(|i| {
                    let up = self.above[i];
                    // j covers i unless some k ≻ i sits below j
                    let skipped = self.strictly_above_any(up);
                    up.difference(skipped)
                })
                .collect()
        })
    }

    /// Elements covering `i`.
    pub fn upper_covers(&self, i: usize) -> ElementSet {
        self.upper_cover_rows()[i]
    }

    /// Elements covered by `i`.
    pub fn lower_covers(&self, i: usize) -> ElementSet {
        let rows = self.upper_cover_rows();
        self.below[i]
            .iter()
            .filter(|&j| rows[j].contains(i))
            .collect()
    }

    /// Neighbours of `i` in the (undirected) Hasse diagram.
    pub fn hasse_neighbors(&self, i: usize) -> ElementSet {
        self.upper_covers(i).union(self.lower_covers(i))
    }

    /// Covering pairs `(i, j)` with `i ⋖ j`, in lexicographic order.
    pub fn covers(&self) -> Vec<(usize, usize)> {
        let rows = self.upper_cover_rows();
        (0..self.len())
            .flat_map(|i| rows[i].iter().map(move |j| (i, j)))
            .collect()
    }

    /// Whether `set` induces a connected subgraph of the Hasse diagram.
    /// The empty set counts as disconnected.
    pub fn is_connected_within(&self, set: ElementSet) -> bool {
        let Some(start) = set.first() else {
            return false;
        };
        let mut reached = ElementSet::singleton(start);
        let mut frontier = reached;
        while !frontier.is_empty() {
            let mut next = ElementSet::EMPTY;
            for i in frontier.iter() {
                next = next.union(self.hasse_neighbors(i));
            }
            frontier = next.intersection(set).difference(reached);
            reached = reached.union(frontier);
        }
        reached == set
    }

    pub fn is_connected(&self) -> bool {
        self.is_connected_within(self.ground())
    }

    /// Whether `set` is order-convex: `x ⪯ y ⪯ z` with `x, z ∈ set` forces `y ∈ set`.
    pub fn is_convex(&self, set: ElementSet) -> bool {
        self.strictly_above_any(set)
            .intersection(self.strictly_below_any(set))
            .is_subset(set)
    }

    /// Induced subposet on `set`, keeping the relative order of indices.
    pub fn restrict(&self, set: ElementSet) -> Poset {
        let idx: Vec<usize> = set.to_vec();
        let labels = idx.iter().map(|&i| self.labels[i].clone()).collect();
        let above = idx
            .iter()
            .map(|&i| {
                idx.iter()
                    .enumerate()
                    .filter(|&(_, &j)| self.less(i, j))
                    .map(|(p, _)| p)
                    .collect()
            })
            .collect();
        Self::from_closed_rows(labels, above)
    }

    /// The dual order on the same indices.
    pub fn dual(&self) -> Poset {
        Self::from_closed_rows(self.labels.clone(), self.below.clone())
    }

    /// Whether every element outside `set` relates to all members of `set` alike.
    pub fn is_autonomous(&self, set: ElementSet) -> bool {
        let outside = self.ground().difference(set);
        let mut members = set.iter();
        let Some(first) = members.next() else {
            return true;
        };
        let up = self.above[first].intersection(outside);
        let down = self.below[first].intersection(outside);
        members.all(|y| {
            self.above[y].intersection(outside) == up && self.below[y].intersection(outside) == down
        })
    }

    /// Reverse the order inside the autonomous subset `set`, leaving every
    /// other relation unchanged.
    pub fn flip(&self, set: ElementSet) -> Result<Poset> {
        if !self.is_autonomous(set) {
            return Err(Error::NotAutonomous);
        }
        let above = (0..self.len())
            .map(|i| {
                if set.contains(i) {
                    let inside = self.below[i].intersection(set);
                    self.above[i].difference(set).union(inside)
                } else {
                    self.above[i]
                }
            })
            .collect();
        Ok(Self::from_closed_rows(self.labels.clone(), above))
    }

    /// Replace element `a` of `self` by the poset `part`.
    ///
    /// The result lists `self`'s remaining elements in order, followed by
    /// `part`'s elements in order.
    pub fn substitute(&self, a: &str, part: &Poset) -> Result<Poset> {
        let ai = self
            .index_of(a)
            .ok_or_else(|| Error::ElementNotFound(a.to_owned()))?;
        let outer: Vec<usize> = (0..self.len()).filter(|&i| i != ai).collect();
        if let Some(l) = part
            .labels
            .iter()
            .find(|l| outer.iter().any(|&i| &self.labels[i] == *l))
        {
            return Err(Error::LabelClash(l.clone()));
        }
        let n = outer.len() + part.len();
        if n > MAX_ELEMENTS {
            return Err(Error::TooLarge(n));
        }
        let k = outer.len();
        let mut labels: Vec<String> = outer.iter().map(|&i| self.labels[i].clone()).collect();
        labels.extend(part.labels.iter().cloned());

        // positions of a's strict up- and down-sets among the outer elements
        let pos_above: ElementSet = (0..k).filter(|&p| self.less(ai, outer[p])).collect();
        let pos_below: ElementSet = (0..k).filter(|&p| self.less(outer[p], ai)).collect();
        let inner = ElementSet::full(n).difference(ElementSet::full(k));

        let mut above = Vec::with_capacity(n);
        for (p, &i) in outer.iter().enumerate() {
            let mut row: ElementSet = (0..k).filter(|&q| self.less(i, outer[q])).collect();
            if pos_below.contains(p) {
                row = row.union(inner);
            }
            above.push(row);
        }
        for s in 0..part.len() {
            let row = ElementSet::from_bits(part.above[s].bits() << k);
            above.push(row.union(pos_above));
        }
        Ok(Self::from_closed_rows(labels, above))
    }

    /// Contract disjoint `classes` (covering a subset of the ground set) to
    /// single elements, listed in the given order. Class `A` lies below class
    /// `B` when some member of `A` lies below some member of `B`, closed
    /// transitively.
    ///
    /// Multi-element classes are labeled by their members' sorted labels
    /// joined with `+`.
    pub fn quotient(&self, classes: &[ElementSet]) -> Result<Poset> {
        let labels = classes
            .iter()
            .map(|&c| self.labels_of(c).join("+"))
            .collect();
        let mut pairs = Vec::new();
        for (a, &ca) in classes.iter().enumerate() {
            let up = self.strictly_above_any(ca);
            for (b, &cb) in classes.iter().enumerate() {
                if a != b && !up.is_disjoint(cb) {
                    pairs.push((a, b));
                }
            }
        }
        Self::from_relations(labels, &pairs).map_err(|e| match e {
            Error::CyclicRelation(_) => Error::QuotientNotPoset,
            other => other,
        })
    }

    /// Collapse `set` to one element, returning the contracted poset and the
    /// index of the new element. When `set` is autonomous, substituting
    /// `self.restrict(set)` back into that element recovers `self` up to
    /// reordering.
    pub fn contract(&self, set: ElementSet) -> Result<(Poset, usize)> {
        let first = set
            .first()
            .ok_or_else(|| Error::MalformedInput("empty set".into()))?;
        let classes: Vec<ElementSet> = (0..self.len())
            .filter(|&i| !set.contains(i) || i == first)
            .map(|i| {
                if i == first {
                    set
                } else {
                    ElementSet::singleton(i)
                }
            })
            .collect();
        let pos = classes.iter().position(|&c| c == set).unwrap();
        Ok((self.quotient(&classes)?, pos))
    }

    /// Canonical form up to isomorphism together with the labeling that
    /// produces it; see [`canonical_labeling`].
    pub fn canonical_form(&self) -> CanonicalForm {
        canonical_labeling(self).0
    }

    /// An order isomorphism `self → other` as an index map, if one exists.
    pub fn isomorphism_to(&self, other: &Poset) -> Option<Vec<usize>> {
        if self.len() != other.len() {
            return None;
        }
        let (ka, pa) = canonical_labeling(self);
        let (kb, pb) = canonical_labeling(other);
        if ka != kb {
            return None;
        }
        let mut map = vec![0; self.len()];
        for (pos, &i) in pa.iter().enumerate() {
            map[i] = pb[pos];
        }
        Some(map)
    }

    pub fn is_isomorphic(&self, other: &Poset) -> bool {
        self.len() == other.len() && self.canonical_form() == other.canonical_form()
    }
}

/// Isomorphism-invariant encoding of a poset's order relation.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalForm(Vec<u32>);

/// Lexicographically least relation encoding over all orderings that respect a
/// stable colour refinement, plus the ordering (`order[pos] = element`).
///
/// The encoding lists, for each position `p`, the relation bits between the
/// element at `p` and every earlier position, so a partial ordering already
/// fixes a prefix of the key and worse branches are cut early. Worst case is
/// still factorial in the size of the largest colour class; intended for the
/// small posets used in searches and catalogues.
pub fn canonical_labeling(p: &Poset) -> (CanonicalForm, Vec<usize>) {
    let n = p.len();
    let colors = refine_colors(p);
    let mut classes: Vec<(usize, usize)> = colors.iter().copied().enumerate().collect();
    classes.sort_by_key(|&(i, c)| (c, i));
    // slot p may only hold an element of colour slot_color[p]
    let slot_color: Vec<usize> = classes.iter().map(|&(_, c)| c).collect();

    let mut search = CanonSearch {
        poset: p,
        colors: &colors,
        slot_color: &slot_color,
        best: None,
        order: Vec::with_capacity(n),
        key: Vec::with_capacity(n),
        used: ElementSet::EMPTY,
    };
    search.run(false);
    let (key, order) = search.best.unwrap_or_default();
    let mut words = slot_color.iter().map(|&c| c as u32).collect::<Vec<_>>();
    words.push(u32::MAX);
    words.extend(key);
    (CanonicalForm(words), order)
}

struct CanonSearch<'a> {
    poset: &'a Poset,
    colors: &'a [usize],
    slot_color: &'a [usize],
    best: Option<(Vec<u32>, Vec<usize>)>,
    order: Vec<usize>,
    key: Vec<u32>,
    used: ElementSet,
}

impl CanonSearch<'_> {
    /// `tied` means the current key prefix equals the best key's prefix.
    fn run(&mut self, tied: bool) {
        let pos = self.order.len();
        if pos == self.poset.len() {
            let better = match &self.best {
                None => true,
                Some((k, _)) => self.key < *k,
            };
            if better {
                self.best = Some((self.key.clone(), self.order.clone()));
            }
            return;
        }
        let want = self.slot_color[pos];
        for e in 0..self.poset.len() {
            if self.used.contains(e) || self.colors[e] != want {
                continue;
            }
            // bit 2q: earlier q below e; bit 2q+1: e below earlier q
            let mut word = 0u32;
            let mut word_hi = 0u32;
            for (q, &f) in self.order.iter().enumerate() {
                let (w, b) = if q < 16 {
                    (&mut word, 2 * q)
                } else {
                    (&mut word_hi, 2 * (q - 16))
                };
                if self.poset.less(f, e) {
                    *w |= 1 << b;
                }
                if self.poset.less(e, f) {
                    *w |= 1 << (b + 1);
                }
            }
            let tied_here = match &self.best {
                None => false,
                Some((k, _)) => {
                    let cmp = if pos == 0 || tied {
                        (word, word_hi).cmp(&(k[2 * pos], k[2 * pos + 1]))
                    } else {
                        std::cmp::Ordering::Less
                    };
                    if cmp == std::cmp::Ordering::Greater {
                        continue;
                    }
                    cmp == std::cmp::Ordering::Equal
                }
            };
            self.order.push(e);
            self.key.push(word);
            self.key.push(word_hi);
            self.used = self.used.with(e);
            self.run(tied_here);
            self.used = self.used.without(e);
            self.key.truncate(2 * pos);
            self.order.pop();
        }
    }
}

/// Colour refinement on the strict order: start from (down-degree,
/// up-degree) and split by the multisets of colours above and below until
/// stable. Colours are ranks in a canonical sort, so they are comparable
/// across isomorphic posets.
fn refine_colors(p: &Poset) -> Vec<usize> {
    let n = p.len();
    let mut colors: Vec<usize> = vec![0; n];
    let mut class_count = if n == 0 { 0 } else { 1 };
    loop {
        let sigs: Vec<(usize, Vec<usize>, Vec<usize>)> = (0..n)
            .map(|i| {
                let mut up: Vec<usize> = p.above(i).iter().map(|j| colors[j]).collect();
                let mut down: Vec<usize> = p.below(i).iter().map(|j| colors[j]).collect();
                up.sort_unstable();
                down.sort_unstable();
                (colors[i], down, up)
            })
            .collect();
        let mut distinct = sigs.clone();
        distinct.sort();
        distinct.dedup();
        let next: Vec<usize> = sigs
            .iter()
            .map(|s| distinct.binary_search(s).unwrap())
            .collect();
        let count = distinct.len();
        colors = next;
        if count == class_count {
            return colors;
        }
        class_count = count;
    }
}

/// A composition `a = (a_1, ..., a_k)` with every part at least 1.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Composition(Vec<usize>);

impl Composition {
    pub fn new(parts: Vec<usize>) -> Result<Self> {
        if parts.is_empty() || parts.contains(&0) {
            return Err(Error::EmptyComposition);
        }
        Ok(Composition(parts))
    }

    pub fn parts(&self) -> &[usize] {
        &self.0
    }

    pub fn total(&self) -> usize {
        self.0.iter().sum()
    }
}

impl FromStr for Composition {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let parts = s
            .split(',')
            .map(|t| {
                t.trim()
                    .parse::<usize>()
                    .map_err(|_| Error::MalformedInput(format!("bad composition part `{t}`")))
            })
            .collect::<Result<Vec<_>>>()?;
        Composition::new(parts)
    }
}

impl fmt::Display for Composition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(ToString::to_string).collect();
        write!(f, "{}", parts.join(","))
    }
}

/// The ordinal sum of antichains of sizes `a_1, ..., a_k`, with elements
/// labeled `x{i}_{j}` (1-based).
pub fn complete_graded(a: &Composition) -> Result<Poset> {
    let n = a.total();
    if n > MAX_ELEMENTS {
        return Err(Error::TooLarge(n));
    }
    let mut labels = Vec::with_capacity(n);
    let mut level = Vec::with_capacity(n);
    for (i, &size) in a.parts().iter().enumerate() {
        for j in 0..size {
            labels.push(format!("x{}_{}", i + 1, j + 1));
            level.push(i);
        }
    }
    let above = (0..n)
        .map(|p| (0..n).filter(|&q| level[q] > level[p]).collect())
        .collect();
    Ok(Poset::from_closed_rows(labels, above))
}
