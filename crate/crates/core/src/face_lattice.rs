//! Face lattices of poset associahedra and permutohedra, combinatorial
//! equivalence, 2-face census and the product structure of faces.

use std::collections::{HashMap, HashSet};

use fixedbitset::FixedBitSet;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::poset::Poset;
use crate::set::ElementSet;
use crate::tubing::{enumerate_tubings, is_proper_tubing, FVector, Tube, Tubing};

/// What a face stands for.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum FaceLabel {
    /// A proper tubing of a poset.
    Tubing(Tubing),
    /// An ordered set partition of `{0, ..., n-1}`.
    Partition(Vec<ElementSet>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Face {
    pub dim: usize,
    pub label: FaceLabel,
}

/// Graded face poset of a polytope, including the polytope itself but not
/// the empty face.
#[derive(Clone, Debug)]
pub struct FaceLattice {
    faces: Vec<Face>,
    /// `(upper, lower)`: face `upper` covers face `lower`.
    covers: Vec<(usize, usize)>,
    dim: usize,
}

impl FaceLattice {
    pub fn faces(&self) -> &[Face] {
        &self.faces
    }

    pub fn covers(&self) -> &[(usize, usize)] {
        &self.covers
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Number of faces of each dimension.
    pub fn rank_counts(&self) -> Vec<u64> {
        let mut counts = vec![0u64; self.dim + 1];
        for f in &self.faces {
            counts[f.dim] += 1;
        }
        counts
    }

    pub fn f_vector(&self) -> FVector {
        FVector::new(self.rank_counts())
    }

    fn vertex_ids(&self) -> Vec<usize> {
        (0..self.faces.len())
            .filter(|&i| self.faces[i].dim == 0)
            .collect()
    }

    /// For every face, the set of vertices weakly below it, as positions in
    /// the list of dimension-0 faces.
    pub fn vertex_sets(&self) -> Vec<FixedBitSet> {
        let vertices = self.vertex_ids();
        let mut position = vec![usize::MAX; self.faces.len()];
        for (k, &v) in vertices.iter().enumerate() {
            position[v] = k;
        }
        let mut down: Vec<Vec<usize>> = vec![Vec::new(); self.faces.len()];
        for &(hi, lo) in &self.covers {
            down[hi].push(lo);
        }
        let mut order: Vec<usize> = (0..self.faces.len()).collect();
        order.sort_by_key(|&i| self.faces[i].dim);
        let mut sets = vec![FixedBitSet::with_capacity(vertices.len()); self.faces.len()];
        for i in order {
            if self.faces[i].dim == 0 {
                sets[i].insert(position[i]);
            } else {
                let mut acc = FixedBitSet::with_capacity(vertices.len());
                for &j in &down[i] {
                    acc.union_with(&sets[j]);
                }
                sets[i] = acc;
            }
        }
        sets
    }

    /// Vertex counts of all 2-dimensional faces.
    pub fn polygon_census(&self) -> PolygonCensus {
        let sets = self.vertex_sets();
        let mut sizes: Vec<usize> = self
            .faces
            .iter()
            .zip(&sets)
            .filter(|(f, _)| f.dim == 2)
            .map(|(_, s)| s.count_ones(..))
            .collect();
        sizes.sort_unstable();
        PolygonCensus(sizes)
    }
}

/// Multiset of polygon sizes, sorted.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(transparent)]
pub struct PolygonCensus(Vec<usize>);

impl PolygonCensus {
    pub fn sizes(&self) -> &[usize] {
        &self.0
    }

    pub fn contains(&self, k: usize) -> bool {
        self.0.contains(&k)
    }

    /// `(size, multiplicity)` pairs in increasing size.
    pub fn histogram(&self) -> Vec<(usize, usize)> {
        let mut out: Vec<(usize, usize)> = Vec::new();
        for &s in &self.0 {
            match out.last_mut() {
                Some((k, c)) if *k == s => *c += 1,
                _ => out.push((s, 1)),
            }
        }
        out
    }
}

/// Tubings of `p` under reverse inclusion.
pub fn face_lattice(p: &Poset) -> Result<FaceLattice> {
    let tubings: Vec<Tubing> = enumerate_tubings(p)?.collect();
    let d = p.len() - 2;
    let index: HashMap<&Tubing, usize> = tubings.iter().enumerate().map(|(i, t)| (t, i)).collect();
    let mut covers = Vec::new();
    for (i, t) in tubings.iter().enumerate() {
        for &tube in t.tubes() {
            covers.push((index[&t.without(tube)], i));
        }
    }
    covers.sort_unstable();
    let faces = tubings
        .iter()
        .map(|t| Face {
            dim: d - t.len(),
            label: FaceLabel::Tubing(t.clone()),
        })
        .collect();
    Ok(FaceLattice {
        faces,
        covers,
        dim: d,
    })
}

/// Ordered set partitions of `{0, ..., n-1}`, in a fixed recursive order.
fn ordered_set_partitions(n: usize) -> Vec<Vec<ElementSet>> {
    fn go(rest: ElementSet, prefix: &mut Vec<ElementSet>, out: &mut Vec<Vec<ElementSet>>) {
        if rest.is_empty() {
            out.push(prefix.clone());
            return;
        }
        let mut firsts: Vec<ElementSet> = rest.subsets().filter(|b| !b.is_empty()).collect();
        firsts.sort();
        for b in firsts {
            prefix.push(b);
            go(rest.difference(b), prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    go(ElementSet::full(n), &mut Vec::new(), &mut out);
    out
}

/// Faces are ordered set partitions of an `n`-set; `k` blocks give dimension
/// `n - k`, and merging two adjacent blocks moves up one dimension.
pub fn permutohedron_lattice(n: usize) -> FaceLattice {
    assert!(n >= 1, "permutohedron needs n >= 1");
    let parts = ordered_set_partitions(n);
    let index: HashMap<&Vec<ElementSet>, usize> =
        parts.iter().enumerate().map(|(i, p)| (p, i)).collect();
    let mut covers = Vec::new();
    for (i, part) in parts.iter().enumerate() {
        for k in 0..part.len().saturating_sub(1) {
            let mut merged = part.clone();
            let right = merged.remove(k + 1);
            merged[k] = merged[k].union(right);
            covers.push((index[&merged], i));
        }
    }
    covers.sort_unstable();
    let faces = parts
        .into_iter()
        .map(|p| Face {
            dim: n - p.len(),
            label: FaceLabel::Partition(p),
        })
        .collect();
    FaceLattice {
        faces,
        covers,
        dim: n - 1,
    }
}

/// `f_i = (n-i)! · S(n, n-i)`, the number of ordered set partitions into
/// `n - i` blocks.
pub fn permutohedron_f_vector(n: usize) -> FVector {
    assert!(n >= 1, "permutohedron needs n >= 1");
    // stirling[j][k] = S(j, k)
    let mut stirling = vec![vec![0u64; n + 1]; n + 1];
    stirling[0][0] = 1;
    for j in 1..=n {
        for k in 1..=j {
            stirling[j][k] = k as u64 * stirling[j - 1][k] + stirling[j - 1][k - 1];
        }
    }
    let factorial = |k: usize| (1..=k as u64).product::<u64>();
    FVector::new(
        (0..n)
            .map(|i| factorial(n - i) * stirling[n][n - i])
            .collect(),
    )
}

/// Vertex counts of the 2-faces of the poset associahedron of `p`.
pub fn two_face_census(p: &Poset) -> Result<PolygonCensus> {
    if p.len() < 4 {
        return Err(Error::TooSmall(p.len()));
    }
    Ok(face_lattice(p)?.polygon_census())
}

struct Incidence {
    /// Vertices on each facet.
    facet_vertices: Vec<FixedBitSet>,
    /// Sorted facets through each vertex.
    vertex_facets: Vec<Vec<usize>>,
    /// `|F ∩ G|` for every facet pair.
    overlap: Vec<Vec<usize>>,
    /// `(rank, vertex set)` of every face.
    faces: Vec<(usize, FixedBitSet)>,
}

fn incidence(l: &FaceLattice) -> Incidence {
    let sets = l.vertex_sets();
    let vertex_count = l.faces.iter().filter(|f| f.dim == 0).count();
    let facet_rank = l.dim.saturating_sub(1);
    let facet_vertices: Vec<FixedBitSet> = l
        .faces
        .iter()
        .zip(&sets)
        .filter(|(f, _)| f.dim == facet_rank)
        .map(|(_, s)| s.clone())
        .collect();
    let mut vertex_facets = vec![Vec::new(); vertex_count];
    for (fi, s) in facet_vertices.iter().enumerate() {
        for v in s.ones() {
            vertex_facets[v].push(fi);
        }
    }
    let overlap = facet_vertices
        .iter()
        .map(|a| {
            facet_vertices
                .iter()
                .map(|b| a.intersection(b).count())
                .collect()
        })
        .collect();
    let faces = l.faces.iter().zip(sets).map(|(f, s)| (f.dim, s)).collect();
    Incidence {
        facet_vertices,
        vertex_facets,
        overlap,
        faces,
    }
}

/// Whether the two lattices are isomorphic as graded posets.
///
/// Searches for a facet bijection that preserves pairwise facet overlaps and
/// carries the family of vertex facet-sets onto the other one; the induced
/// vertex bijection is then checked on every face.
pub fn lattices_equivalent(a: &FaceLattice, b: &FaceLattice) -> bool {
    if a.dim != b.dim || a.rank_counts() != b.rank_counts() {
        return false;
    }
    if a.dim == 0 {
        return true;
    }
    let ia = incidence(a);
    let ib = incidence(b);
    let m = ia.facet_vertices.len();
    let profile = |inc: &Incidence, f: usize| {
        let mut row = inc.overlap[f].clone();
        row.sort_unstable();
        row
    };
    let pa: Vec<_> = (0..m).map(|f| profile(&ia, f)).collect();
    let pb: Vec<_> = (0..m).map(|f| profile(&ib, f)).collect();
    {
        let (mut sa, mut sb) = (pa.clone(), pb.clone());
        sa.sort();
        sb.sort();
        if sa != sb {
            return false;
        }
    }
    let candidates: Vec<Vec<usize>> = (0..m)
        .map(|f| (0..m).filter(|&g| pa[f] == pb[g]).collect())
        .collect();
    let mut target_vertices: Vec<Vec<usize>> = ib.vertex_facets.clone();
    target_vertices.sort();

    let mut search = EquivSearch {
        a: &ia,
        b: &ib,
        candidates: &candidates,
        target_vertices: &target_vertices,
        map: Vec::with_capacity(m),
        used: FixedBitSet::with_capacity(m),
    };
    search.run()
}

struct EquivSearch<'a> {
    a: &'a Incidence,
    b: &'a Incidence,
    candidates: &'a [Vec<usize>],
    target_vertices: &'a [Vec<usize>],
    map: Vec<usize>,
    used: FixedBitSet,
}

impl EquivSearch<'_> {
    fn run(&mut self) -> bool {
        let f = self.map.len();
        if f == self.candidates.len() {
            return self.check_complete();
        }
        for &g in &self.candidates[f] {
            if self.used.contains(g) {
                continue;
            }
            let ok = (0..f).all(|e| self.a.overlap[f][e] == self.b.overlap[g][self.map[e]]);
            if !ok {
                continue;
            }
            self.map.push(g);
            self.used.insert(g);
            if self.run() {
                return true;
            }
            self.used.set(g, false);
            self.map.pop();
        }
        false
    }

    fn check_complete(&self) -> bool {
        let mapped: Vec<Vec<usize>> = self
            .a
            .vertex_facets
            .iter()
            .map(|fs| {
                let mut v: Vec<usize> = fs.iter().map(|&f| self.map[f]).collect();
                v.sort_unstable();
                v
            })
            .collect();
        let mut sorted = mapped.clone();
        sorted.sort();
        if sorted != self.target_vertices {
            return false;
        }
        // vertex bijection through facet sets; distinct vertices of a polytope
        // lie on distinct facet sets
        let by_facets: HashMap<&Vec<usize>, usize> = self
            .b
            .vertex_facets
            .iter()
            .enumerate()
            .map(|(v, fs)| (fs, v))
            .collect();
        if by_facets.len() != self.b.vertex_facets.len() {
            return false;
        }
        let vertex_map: Vec<usize> = mapped.iter().map(|fs| by_facets[fs]).collect();
        let n = vertex_map.len();
        let key = |rank: usize, set: &FixedBitSet| {
            let mut v: Vec<usize> = set.ones().collect();
            v.sort_unstable();
            (rank, v)
        };
        let targets: HashSet<(usize, Vec<usize>)> =
            self.b.faces.iter().map(|(r, s)| key(*r, s)).collect();
        self.a.faces.iter().all(|(r, s)| {
            let mut image = FixedBitSet::with_capacity(n);
            for v in s.ones() {
                image.insert(vertex_map[v]);
            }
            targets.contains(&key(*r, &image))
        })
    }
}

/// One factor of a face: the tube (or whole poset) it comes from, the classes
/// contracted inside it, and the resulting quotient poset.
#[derive(Clone, Debug)]
pub struct FaceFactor {
    pub tube: ElementSet,
    /// Maximal sub-tubes and leftover singletons, ordered by least member.
    pub classes: Vec<ElementSet>,
    pub poset: Poset,
}

/// Quotient of `region` by the maximal tubes of `tubes` strictly inside it.
pub fn region_quotient(p: &Poset, region: ElementSet, tubes: &[Tube]) -> Result<FaceFactor> {
    let inner: Vec<Tube> = tubes
        .iter()
        .copied()
        .filter(|&t| t.is_subset(region) && t != region)
        .collect();
    let maximal: Vec<Tube> = inner
        .iter()
        .copied()
        .filter(|&t| !inner.iter().any(|&u| u != t && t.is_subset(u)))
        .collect();
    let covered = maximal
        .iter()
        .fold(ElementSet::EMPTY, |acc, &t| acc.union(t));
    let mut classes: Vec<ElementSet> = maximal;
    classes.extend(region.difference(covered).iter().map(ElementSet::singleton));
    classes.sort_by_key(|c| c.first());
    let poset = p.quotient(&classes)?;
    Ok(FaceFactor {
        tube: region,
        classes,
        poset,
    })
}

/// All factors `τ / ~_τ` for `τ` in `t` plus the whole poset, in tube order
/// with the whole poset last.
pub fn face_factors(p: &Poset, t: &Tubing) -> Result<Vec<FaceFactor>> {
    if !is_proper_tubing(p, t.tubes()) {
        return Err(Error::NotATubing("face decomposition input".into()));
    }
    t.tubes()
        .iter()
        .copied()
        .chain(std::iter::once(p.ground()))
        .map(|region| region_quotient(p, region, t.tubes()))
        .collect()
}

/// The face of `t` is combinatorially the product of the poset associahedra
/// of these quotients.
pub fn face_product_decomposition(p: &Poset, t: &Tubing) -> Result<Vec<Poset>> {
    Ok(face_factors(p, t)?
        .into_iter()
        .map(|f| f.poset)
        .filter(|q| q.len() >= 2)
        .collect())
}
