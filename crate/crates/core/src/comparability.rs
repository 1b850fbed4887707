//! Comparability graphs and flip sequences between posets that share one.

use std::collections::{BTreeSet, HashSet, VecDeque};
use std::fmt;
use std::hash::Hash;

use crate::poset::Poset;
use crate::set::ElementSet;

/// Simple undirected graph joining comparable elements.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ComparabilityGraph {
    vertex_count: usize,
    adjacency: Vec<ElementSet>,
}

impl ComparabilityGraph {
    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn neighbors(&self, v: usize) -> ElementSet {
        self.adjacency[v]
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adjacency[u].contains(v)
    }

    /// Edges `{u, v}` with `u < v`, sorted.
    pub fn edges(&self) -> BTreeSet<(usize, usize)> {
        (0..self.vertex_count)
            .flat_map(|u| {
                self.adjacency[u]
                    .iter()
                    .filter(move |&v| v > u)
                    .map(move |v| (u, v))
            })
            .collect()
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adjacency[v].len()
    }
}

pub fn comparability_graph(p: &Poset) -> ComparabilityGraph {
    ComparabilityGraph {
        vertex_count: p.len(),
        adjacency: (0..p.len()).map(|i| p.above(i).union(p.below(i))).collect(),
    }
}

/// Find a vertex bijection `g1 → g2` preserving adjacency.
///
/// Plain backtracking in vertex order, trying targets in increasing order, so
/// the witness returned is the lexicographically first one. Candidates are
/// pruned by degree and by the sorted multiset of neighbour degrees.
pub fn graphs_isomorphic(g1: &ComparabilityGraph, g2: &ComparabilityGraph) -> Option<Vec<usize>> {
    let n = g1.vertex_count;
    if n != g2.vertex_count {
        return None;
    }
    let profile = |g: &ComparabilityGraph, v: usize| {
        let mut nd: Vec<usize> = g.adjacency[v].iter().map(|u| g.degree(u)).collect();
        nd.sort_unstable();
        (g.degree(v), nd)
    };
    let p1: Vec<_> = (0..n).map(|v| profile(g1, v)).collect();
    let p2: Vec<_> = (0..n).map(|v| profile(g2, v)).collect();
    let mut s1 = p1.clone();
    let mut s2 = p2.clone();
    s1.sort();
    s2.sort();
    if s1 != s2 {
        return None;
    }
    let candidates: Vec<Vec<usize>> = (0..n)
        .map(|v| (0..n).filter(|&w| p1[v] == p2[w]).collect())
        .collect();

    fn extend(
        v: usize,
        g1: &ComparabilityGraph,
        g2: &ComparabilityGraph,
        candidates: &[Vec<usize>],
        map: &mut Vec<usize>,
        used: &mut ElementSet,
    ) -> bool {
        if v == g1.vertex_count {
            return true;
        }
        for &w in &candidates[v] {
            if used.contains(w) {
                continue;
            }
            let consistent = (0..v).all(|u| g1.has_edge(u, v) == g2.has_edge(map[u], w));
            if !consistent {
                continue;
            }
            map.push(w);
            *used = used.with(w);
            if extend(v + 1, g1, g2, candidates, map, used) {
                return true;
            }
            *used = used.without(w);
            map.pop();
        }
        false
    }

    let mut map = Vec::with_capacity(n);
    let mut used = ElementSet::EMPTY;
    extend(0, g1, g2, &candidates, &mut map, &mut used).then_some(map)
}

/// All autonomous subsets with at least `min_size` elements, sorted by size
/// then by member indices. The full ground set is included.
pub fn autonomous_subsets(p: &Poset, min_size: usize) -> Vec<ElementSet> {
    let min_size = min_size.max(1);
    let mut out: Vec<ElementSet> = p
        .ground()
        .subsets()
        .filter(|s| s.len() >= min_size && p.is_autonomous(*s))
        .collect();
    out.sort();
    out
}

/// Autonomous-subset flips carrying one poset to an isomorphic copy of another.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FlipSequence {
    /// Subset flipped at each step, as indices of the source poset.
    pub steps: Vec<ElementSet>,
    /// `witness[i]` is the target element matched with element `i` of the
    /// poset reached after all steps; an isomorphism onto the target.
    pub witness: Vec<usize>,
}

impl FlipSequence {
    /// Apply the steps to `source`.
    pub fn replay(&self, source: &Poset) -> crate::Result<Poset> {
        self.steps
            .iter()
            .try_fold(source.clone(), |p, &s| p.flip(s))
    }
}

/// Why [`flip_sequence`] found nothing.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FlipSearchFailure {
    /// Element counts differ or the comparability graphs are not isomorphic.
    GraphsDiffer,
    /// No sequence of length at most `max_depth` exists.
    DepthExhausted,
}

impl fmt::Display for FlipSearchFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            FlipSearchFailure::GraphsDiffer => "GraphsDiffer",
            FlipSearchFailure::DepthExhausted => "DepthExhausted",
        })
    }
}

/// Breadth-first search over flips of autonomous subsets (size >= 2) from
/// `source`. Moves are tried in [`autonomous_subsets`] order, so the result is
/// a shortest sequence and deterministic.
///
/// When both posets live on the same labels with the same comparability
/// graph, the search must reach `target` exactly. Otherwise isomorphic states
/// are identified and any poset isomorphic to `target` ends the search.
pub fn flip_sequence(
    source: &Poset,
    target: &Poset,
    max_depth: usize,
) -> Result<FlipSequence, FlipSearchFailure> {
    if source.len() != target.len()
        || graphs_isomorphic(&comparability_graph(source), &comparability_graph(target)).is_none()
    {
        return Err(FlipSearchFailure::GraphsDiffer);
    }
    if let Some(by_label) = shared_labels(source, target) {
        let n = source.len();
        let goal: Vec<u32> = (0..n)
            .map(|i| {
                (0..n)
                    .filter(|&j| target.less(by_label[i], by_label[j]))
                    .collect::<ElementSet>()
                    .bits()
            })
            .collect();
        let (_, steps) = search(source, max_depth, labelled_key, goal)
            .ok_or(FlipSearchFailure::DepthExhausted)?;
        return Ok(FlipSequence {
            steps,
            witness: by_label,
        });
    }
    let (end, steps) = search(
        source,
        max_depth,
        Poset::canonical_form,
        target.canonical_form(),
    )
    .ok_or(FlipSearchFailure::DepthExhausted)?;
    let witness = end.isomorphism_to(target).expect("canonical forms agree");
    Ok(FlipSequence { steps, witness })
}

/// `map[i]` is the element of `target` carrying the label of element `i` of
/// `source`, provided the labels agree and so do the comparability graphs.
fn shared_labels(source: &Poset, target: &Poset) -> Option<Vec<usize>> {
    let map: Vec<usize> = source
        .labels()
        .iter()
        .map(|l| target.index_of(l))
        .collect::<Option<_>>()?;
    let n = source.len();
    let same = (0..n)
        .all(|i| (0..n).all(|j| source.comparable(i, j) == target.comparable(map[i], map[j])));
    same.then_some(map)
}

fn labelled_key(p: &Poset) -> Vec<u32> {
    (0..p.len()).map(|i| p.above(i).bits()).collect()
}

fn search<K: Hash + Eq>(
    source: &Poset,
    max_depth: usize,
    key: impl Fn(&Poset) -> K,
    goal: K,
) -> Option<(Poset, Vec<ElementSet>)> {
    struct Node {
        poset: Poset,
        parent: Option<(usize, ElementSet)>,
        depth: usize,
    }
    let mut nodes = vec![Node {
        poset: source.clone(),
        parent: None,
        depth: 0,
    }];
    let start = key(source);
    let mut found = (start == goal).then_some(0);
    let mut seen: HashSet<K> = HashSet::from([start]);
    let mut queue = VecDeque::from([0usize]);

    while let Some(id) = queue.pop_front() {
        if found.is_some() {
            break;
        }
        if nodes[id].depth == max_depth {
            continue;
        }
        for s in autonomous_subsets(&nodes[id].poset, 2) {
            let next = nodes[id].poset.flip(s).expect("autonomous by construction");
            let k = key(&next);
            let hit = k == goal;
            if !seen.insert(k) {
                continue;
            }
            let child = nodes.len();
            nodes.push(Node {
                poset: next,
                parent: Some((id, s)),
                depth: nodes[id].depth + 1,
            });
            if hit {
                found = Some(child);
                break;
            }
            queue.push_back(child);
        }
    }

    let end = found?;
    let mut steps = Vec::new();
    let mut cur = end;
    while let Some((parent, s)) = nodes[cur].parent {
        steps.push(s);
        cur = parent;
    }
    steps.reverse();
    Some((nodes.swap_remove(end).poset, steps))
}
