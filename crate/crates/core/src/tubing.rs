//! Proper tubes and tubings of a connected poset, and the face counts of the
//! poset associahedron they index.
//!
//! A tubing with `k` tubes is a face of codimension `k`, so the polytope has
//! dimension `d = |P| - 2`, its vertices are the tubings with `d` tubes and the
//! empty tubing is the whole polytope.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::poset::Poset;
use crate::set::ElementSet;

/// A set of elements meant to be a proper tube; see [`is_proper_tube`].
pub type Tube = ElementSet;

/// A set of tubes, kept sorted in the canonical tube order.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Tubing(Vec<Tube>);

impl Tubing {
    pub fn new(mut tubes: Vec<Tube>) -> Self {
        tubes.sort();
        tubes.dedup();
        Tubing(tubes)
    }

    pub fn empty() -> Self {
        Tubing(Vec::new())
    }

    pub fn tubes(&self) -> &[Tube] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, t: Tube) -> bool {
        self.0.binary_search(&t).is_ok()
    }

    pub fn is_subset(&self, other: &Tubing) -> bool {
        self.0.iter().all(|&t| other.contains(t))
    }

    /// Copy with tube `t` removed.
    pub fn without(&self, t: Tube) -> Tubing {
        Tubing(self.0.iter().copied().filter(|&u| u != t).collect())
    }

    /// Tube lists as sorted labels, for serialization.
    pub fn to_file(&self, p: &Poset) -> TubingFile {
        TubingFile {
            tubes: self.0.iter().map(|&t| p.labels_of(t)).collect(),
        }
    }

    /// Resolve a tubing file against `p`. Only label resolution is checked;
    /// use [`is_proper_tubing`] for validity.
    pub fn from_file(p: &Poset, file: &TubingFile) -> Result<Tubing> {
        let tubes = file
            .tubes
            .iter()
            .map(|t| p.subset_of(t))
            .collect::<Result<Vec<_>>>()?;
        Ok(Tubing::new(tubes))
    }
}

impl FromIterator<Tube> for Tubing {
    fn from_iter<I: IntoIterator<Item = Tube>>(iter: I) -> Self {
        Tubing::new(iter.into_iter().collect())
    }
}

/// `{"tubes": [["a", "b"], ...]}`
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TubingFile {
    pub tubes: Vec<Vec<String>>,
}

pub fn parse_tubing(p: &Poset, text: &str) -> Result<Tubing> {
    let file: TubingFile =
        serde_json::from_str(text).map_err(|e| Error::MalformedInput(e.to_string()))?;
    Tubing::from_file(p, &file)
}

/// Size in `2..|P|`, convex, and connected in the Hasse diagram.
pub fn is_proper_tube(p: &Poset, members: ElementSet) -> bool {
    members.len() >= 2
        && members.is_subset(p.ground())
        && members != p.ground()
        && p.is_convex(members)
        && p.is_connected_within(members)
}

/// `from` has an arc to `to` when they are disjoint and some element of
/// `from` lies below some element of `to`.
fn has_arc(p: &Poset, from: Tube, to: Tube) -> bool {
    from.is_disjoint(to) && !p.strictly_below_any(to).is_disjoint(from)
}

/// Arcs `(i, j)` of the tube digraph, indexing into `tubes`.
pub fn tube_digraph(p: &Poset, tubes: &[Tube]) -> Vec<(usize, usize)> {
    let mut arcs = Vec::new();
    for (i, &a) in tubes.iter().enumerate() {
        for (j, &b) in tubes.iter().enumerate() {
            if i != j && has_arc(p, a, b) {
                arcs.push((i, j));
            }
        }
    }
    arcs
}

fn is_acyclic(n: usize, arcs: &[(usize, usize)]) -> bool {
    // Kahn
    let mut indegree = vec![0usize; n];
    for &(_, j) in arcs {
        indegree[j] += 1;
    }
    let mut ready: Vec<usize> = (0..n).filter(|&i| indegree[i] == 0).collect();
    let mut removed = 0;
    while let Some(i) = ready.pop() {
        removed += 1;
        for &(a, b) in arcs {
            if a == i {
                indegree[b] -= 1;
                if indegree[b] == 0 {
                    ready.push(b);
                }
            }
        }
    }
    removed == n
}

/// Every member a proper tube, pairwise nested or disjoint, and the tube
/// digraph acyclic.
pub fn is_proper_tubing(p: &Poset, tubes: &[Tube]) -> bool {
    tubes.iter().all(|&t| is_proper_tube(p, t))
        && tubes
            .iter()
            .enumerate()
            .all(|(i, &a)| tubes[i + 1..].iter().all(|&b| a != b && a.is_compatible(b)))
        && is_acyclic(tubes.len(), &tube_digraph(p, tubes))
}

fn check_shape(p: &Poset) -> Result<()> {
    if p.len() < 2 {
        return Err(Error::TooSmall(p.len()));
    }
    if !p.is_connected() {
        return Err(Error::DisconnectedPoset);
    }
    Ok(())
}

/// All proper tubes, in canonical order (size, then member indices).
pub fn enumerate_tubes(p: &Poset) -> Result<Vec<Tube>> {
    check_shape(p)?;
    let mut tubes: Vec<Tube> = p
        .ground()
        .subsets()
        .filter(|&s| is_proper_tube(p, s))
        .collect();
    tubes.sort();
    Ok(tubes)
}

/// Lazy depth-first enumeration of all proper tubings, each exactly once.
///
/// A tubing is extended only by tubes later in the tube order than every tube
/// it already holds, so the first item is the empty tubing and the order is
/// deterministic.
pub struct Tubings<'a> {
    poset: &'a Poset,
    tubes: Vec<Tube>,
    chosen: Vec<usize>,
    // next[k] is the next candidate when extending a tubing of size k
    next: Vec<usize>,
    started: bool,
}

impl<'a> Tubings<'a> {
    fn fits(&self, candidate: usize) -> bool {
        let t = self.tubes[candidate];
        if !self.chosen.iter().all(|&c| self.tubes[c].is_compatible(t)) {
            return false;
        }
        // The current tubing is acyclic, so a new cycle must pass through t:
        // search for a path t -> ... -> t.
        let current: Vec<Tube> = self.chosen.iter().map(|&c| self.tubes[c]).collect();
        let mut reached = vec![false; current.len()];
        let mut stack: Vec<usize> = (0..current.len())
            .filter(|&i| has_arc(self.poset, t, current[i]))
            .collect();
        for &i in &stack {
            reached[i] = true;
        }
        while let Some(i) = stack.pop() {
            if has_arc(self.poset, current[i], t) {
                return false;
            }
            for j in 0..current.len() {
                if !reached[j] && has_arc(self.poset, current[i], current[j]) {
                    reached[j] = true;
                    stack.push(j);
                }
            }
        }
        true
    }

    fn current(&self) -> Tubing {
        Tubing(self.chosen.iter().map(|&c| self.tubes[c]).collect())
    }
}

impl Iterator for Tubings<'_> {
    type Item = Tubing;

    fn next(&mut self) -> Option<Tubing> {
        if !self.started {
            self.started = true;
            return Some(Tubing::empty());
        }
        loop {
            let top = self.next.last_mut()?;
            if *top >= self.tubes.len() {
                self.next.pop();
                self.chosen.pop();
                continue;
            }
            let c = *top;
            *top += 1;
            if self.fits(c) {
                self.chosen.push(c);
                self.next.push(c + 1);
                return Some(self.current());
            }
        }
    }
}

pub fn enumerate_tubings(p: &Poset) -> Result<Tubings<'_>> {
    let tubes = enumerate_tubes(p)?;
    Ok(Tubings {
        poset: p,
        tubes,
        chosen: Vec::new(),
        next: vec![0],
        started: false,
    })
}

/// Tubings with `|P| - 2` tubes, the vertices of the polytope.
pub fn maximal_tubings(p: &Poset) -> Result<Vec<Tubing>> {
    let tubings = enumerate_tubings(p)?;
    let d = p.len() - 2;
    Ok(tubings.filter(|t| t.len() == d).collect())
}

/// Face counts `(f_0, ..., f_d)` indexed by dimension.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct FVector(Vec<u64>);

impl FVector {
    pub fn new(counts: Vec<u64>) -> Self {
        FVector(counts)
    }

    pub fn counts(&self) -> &[u64] {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.len().saturating_sub(1)
    }

    /// `Σ (-1)^i f_i`
    pub fn euler_characteristic(&self) -> i64 {
        self.0
            .iter()
            .enumerate()
            .map(|(i, &f)| if i % 2 == 0 { f as i64 } else { -(f as i64) })
            .sum()
    }

    /// Coefficients of `f(z - 1)` where `f(z) = Σ f_i z^i`.
    pub fn h_vector(&self) -> Vec<i64> {
        h_vector(self)
    }
}

/// `h_k = Σ_i f_i · C(i, k) · (-1)^(i-k)`, the coefficients of `f(z - 1)`.
pub fn h_vector(f: &FVector) -> Vec<i64> {
    let d = f.0.len();
    let mut binom = vec![vec![0i64; d]; d];
    for i in 0..d {
        binom[i][0] = 1;
        for k in 1..=i {
            binom[i][k] = binom[i - 1][k - 1] + binom[i - 1][k];
        }
    }
    (0..d)
        .map(|k| {
            (k..d)
                .map(|i| {
                    let term = f.0[i] as i64 * binom[i][k];
                    if (i - k) % 2 == 0 {
                        term
                    } else {
                        -term
                    }
                })
                .sum()
        })
        .collect()
}

/// `f_i = #{T : |T| = d - i}` with `d = |P| - 2`.
pub fn f_vector(p: &Poset) -> Result<FVector> {
    let tubings = enumerate_tubings(p)?;
    let d = p.len() - 2;
    let mut counts = vec![0u64; d + 1];
    for t in tubings {
        counts[d - t.len()] += 1;
    }
    Ok(FVector(counts))
}
