//! Tubes and tubings straight from the definitions, on plain index sets.

use std::collections::BTreeSet;

use itertools::Itertools;
use poset_assoc::Poset;

pub type Set = BTreeSet<usize>;

pub struct Oracle {
    n: usize,
    less: Vec<Vec<bool>>,
    hasse: Vec<Vec<usize>>,
}

impl Oracle {
    pub fn new(p: &Poset) -> Self {
        let n = p.len();
        let less: Vec<Vec<bool>> = (0..n)
            .map(|i| (0..n).map(|j| p.less(i, j)).collect())
            .collect();
        let mut hasse = vec![Vec::new(); n];
        for i in 0..n {
            for j in 0..n {
                let covers = less[i][j] && !(0..n).any(|k| less[i][k] && less[k][j]);
                if covers {
                    hasse[i].push(j);
                    hasse[j].push(i);
                }
            }
        }
        Oracle { n, less, hasse }
    }

    pub fn is_tube(&self, t: &Set) -> bool {
        if t.len() < 2 || t.len() >= self.n {
            return false;
        }
        for &x in t {
            for &z in t {
                for y in 0..self.n {
                    if self.less[x][y] && self.less[y][z] && !t.contains(&y) {
                        return false;
                    }
                }
            }
        }
        let start = *t.iter().next().unwrap();
        let mut seen = Set::from([start]);
        let mut stack = vec![start];
        while let Some(v) = stack.pop() {
            for &w in &self.hasse[v] {
                if t.contains(&w) && seen.insert(w) {
                    stack.push(w);
                }
            }
        }
        seen.len() == t.len()
    }

    pub fn tubes(&self) -> Vec<Set> {
        (0..self.n)
            .powerset()
            .map(|v| v.into_iter().collect::<Set>())
            .filter(|t| self.is_tube(t))
            .collect()
    }

    pub fn is_tubing(&self, tubes: &[&Set]) -> bool {
        let k = tubes.len();
        for a in 0..k {
            for b in a + 1..k {
                let (s, t) = (tubes[a], tubes[b]);
                if !(s.is_subset(t) || t.is_subset(s) || s.is_disjoint(t)) {
                    return false;
                }
            }
        }
        // reachability closure of the tube digraph; a cycle means some tube reaches itself
        let mut reach = vec![vec![false; k]; k];
        for a in 0..k {
            for b in 0..k {
                let (s, t) = (tubes[a], tubes[b]);
                reach[a][b] = a != b
                    && s.is_disjoint(t)
                    && s.iter().any(|&x| t.iter().any(|&y| self.less[x][y]));
            }
        }
        for m in 0..k {
            for a in 0..k {
                for b in 0..k {
                    if reach[a][m] && reach[m][b] {
                        reach[a][b] = true;
                    }
                }
            }
        }
        (0..k).all(|a| !reach[a][a])
    }

    /// f-vector by checking every family of tubes of each size.
    pub fn f_vector(&self) -> Vec<u64> {
        let tubes = self.tubes();
        let d = self.n - 2;
        let mut f = vec![0u64; d + 1];
        for size in 0..=d + 1 {
            for combo in tubes.iter().combinations(size) {
                if self.is_tubing(&combo) {
                    assert!(size <= d, "tubing larger than the dimension bound");
                    f[d - size] += 1;
                }
            }
        }
        f
    }
}
