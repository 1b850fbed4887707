//! Acceptance suite: one PASS/FAIL line per criterion, exact values, wall-clock
//! bounds. Exits non-zero if any criterion fails.

mod common;

use std::collections::HashSet;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use common::oracle::Oracle;
use poset_assoc::comparability::autonomous_subsets;
use poset_assoc::flip_map::{decompose, reconstruct};
use poset_assoc::{
    classify_tubes, comparability_graph, enumerate_tubings, f_vector, face_lattice, flip_sequence,
    graphs_isomorphic, is_proper_tubing, is_weakly_increasing, lattices_equivalent,
    maximal_tubings, permutohedron_f_vector, permutohedron_lattice, two_face_census, ElementSet,
    Error, Poset, Tubing,
};

type Check = Result<String, String>;
type Criterion = (&'static str, fn() -> Check, Duration);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn catalan(n: u64) -> u64 {
    (0..n).fold(1, |c, k| c * 2 * (2 * k + 1) / (k + 2))
}

/// Ordered set partitions of an `n`-set into `k` blocks, as surjections onto `k` labels.
fn surjections(n: u32, k: u32) -> u64 {
    (0..(k as u64).pow(n))
        .filter(|&f| {
            let mut hit = 0u32;
            let mut x = f;
            for _ in 0..n {
                hit |= 1 << (x % k as u64);
                x /= k as u64;
            }
            hit.count_ones() == k
        })
        .count() as u64
}

fn criterion_1() -> Check {
    let p = common::chain(4);
    let f = f_vector(&p).map_err(|e| e.to_string())?;
    let oracle = Oracle::new(&p).f_vector();
    ensure(f.counts() == [5, 5, 1], || format!("f = {:?}", f.counts()))?;
    ensure(oracle == [5, 5, 1], || format!("oracle f = {oracle:?}"))?;
    ensure(f.counts()[0] == catalan(3), || {
        "vertex count is not C_3".into()
    })?;
    Ok(format!("f = {:?}, C_3 = {}", f.counts(), catalan(3)))
}

fn criterion_2() -> Check {
    let f = f_vector(&common::graded(&[2, 2])).map_err(|e| e.to_string())?;
    ensure(f.counts() == [8, 8, 1], || {
        format!("f(P22) = {:?}", f.counts())
    })?;
    let census = two_face_census(&common::graded(&[1, 2, 2])).map_err(|e| e.to_string())?;
    ensure(census.contains(8), || {
        format!("census(P122) = {:?}", census.histogram())
    })?;
    let pi = permutohedron_lattice(4).polygon_census();
    ensure(pi.sizes().iter().all(|s| [4, 6].contains(s)), || {
        format!("census(Pi4) = {:?}", pi.histogram())
    })?;
    Ok(format!(
        "f(P22) = {:?}, census(P122) = {:?}, census(Pi4) = {:?}",
        f.counts(),
        census.histogram(),
        pi.histogram()
    ))
}

fn criterion_3() -> Check {
    let p = common::graded(&[2, 1, 2]);
    let l = face_lattice(&p).map_err(|e| e.to_string())?;
    ensure(lattices_equivalent(&l, &permutohedron_lattice(4)), || {
        "not equivalent to Pi4".into()
    })?;
    let f = f_vector(&p).map_err(|e| e.to_string())?;
    let oracle: Vec<u64> = (0..4).map(|i| surjections(4, 4 - i)).collect();
    ensure(f.counts() == [24, 36, 14, 1], || {
        format!("f = {:?}", f.counts())
    })?;
    ensure(f.counts() == &oracle[..], || {
        format!("ordered partitions = {oracle:?}")
    })?;
    ensure(permutohedron_f_vector(4) == f, || {
        "Stirling formula disagrees".into()
    })?;
    Ok(format!("equivalent to Pi4, f = {:?}", f.counts()))
}

fn criterion_4() -> Check {
    let p = common::graded(&[1, 2, 2]);
    let l = face_lattice(&p).map_err(|e| e.to_string())?;
    let pi = permutohedron_lattice(4);
    ensure(!lattices_equivalent(&l, &pi), || {
        "unexpectedly equivalent to Pi4".into()
    })?;
    let f = f_vector(&p).map_err(|e| e.to_string())?;
    let g = f_vector(&common::graded(&[2, 1, 2])).map_err(|e| e.to_string())?;
    ensure(f == g && f == pi.f_vector(), || {
        format!("f(P122) = {:?}", f.counts())
    })?;
    Ok(format!("not equivalent to Pi4, f = {:?}", f.counts()))
}

fn criterion_5() -> Check {
    let corpus = common::corpus(6);
    let mut flips = 0;
    for p in &corpus {
        let f = f_vector(p).map_err(|e| e.to_string())?;
        for s in autonomous_subsets(p, 2) {
            let q = p.flip(s).map_err(|e| e.to_string())?;
            let g = f_vector(&q).map_err(|e| e.to_string())?;
            ensure(f == g, || {
                format!("{p:?} S = {s:?}: {:?} vs {:?}", f.counts(), g.counts())
            })?;
            flips += 1;
        }
    }
    Ok(format!("{} posets, {flips} flips", corpus.len()))
}

fn criterion_6() -> Check {
    let mut checked = 0usize;
    for p in common::corpus(5) {
        for s in autonomous_subsets(&p, 1) {
            let q = p.flip(s).map_err(|e| e.to_string())?;
            let target: HashSet<Tubing> =
                enumerate_tubings(&q).map_err(|e| e.to_string())?.collect();
            let mut images = HashSet::new();
            for t in enumerate_tubings(&p).map_err(|e| e.to_string())? {
                let ctx = || format!("{p:?} S = {s:?} T = {t:?}");
                let image =
                    poset_assoc::flip_tubing(&p, s, &t).map_err(|e| format!("{}: {e}", ctx()))?;
                ensure(image.len() == t.len(), || {
                    format!("size changed: {}", ctx())
                })?;
                ensure(is_proper_tubing(&q, image.tubes()), || {
                    format!("not a tubing: {}", ctx())
                })?;
                for &tube in t.tubes() {
                    let good = tube.is_disjoint(s) || tube.is_subset(s) || s.is_subset(tube);
                    ensure(!good || image.contains(tube), || {
                        format!("good tube moved: {}", ctx())
                    })?;
                }
                let back = poset_assoc::flip_tubing(&q, s, &image)
                    .map_err(|e| format!("{}: {e}", ctx()))?;
                ensure(back == t, || format!("no round trip: {}", ctx()))?;
                images.insert(image);
                checked += 1;
            }
            ensure(images == target, || {
                format!("{p:?} S = {s:?}: image is not all of T(P')")
            })?;
        }
    }
    Ok(format!("{checked} tubings mapped"))
}

fn criterion_7() -> Check {
    let mut checked = 0usize;
    for p in common::corpus(5) {
        for s in autonomous_subsets(&p, 1) {
            for t in enumerate_tubings(&p).map_err(|e| e.to_string())? {
                let ctx = || format!("{p:?} S = {s:?} T = {t:?}");
                let c = match classify_tubes(&p, s, &t) {
                    Ok(c) => c,
                    Err(Error::StructureViolation(m)) => {
                        return Err(format!("structure violation {m}: {}", ctx()))
                    }
                    Err(e) => return Err(format!("{}: {e}", ctx())),
                };
                let d = decompose(&p, s, &c);
                let mut rebuilt = reconstruct(&p, s, &d).map_err(|e| format!("{}: {e}", ctx()))?;
                let mut bad: Vec<_> = c.bad().collect();
                rebuilt.sort();
                bad.sort();
                ensure(rebuilt == bad, || format!("reconstruct differs: {}", ctx()))?;
                let mut union = ElementSet::EMPTY;
                for &b in &d.blocks {
                    ensure(!b.is_empty() && b.is_disjoint(union), || {
                        format!("blocks overlap: {}", ctx())
                    })?;
                    union = union.union(b);
                }
                ensure(union == s, || format!("blocks miss part of S: {}", ctx()))?;
                ensure(is_weakly_increasing(&p, &d.blocks), || {
                    format!("M not weakly increasing: {}", ctx())
                })?;
                checked += 1;
            }
        }
    }
    Ok(format!("{checked} decompositions"))
}

fn criterion_8() -> Check {
    let corpus = common::corpus(6);
    for p in &corpus {
        let d = p.len() - 2;
        let f = f_vector(p).map_err(|e| e.to_string())?;
        ensure(f.euler_characteristic() == 1, || {
            format!("Euler relation fails on {p:?}")
        })?;
        let h = f.h_vector();
        let mut rev = h.clone();
        rev.reverse();
        ensure(h == rev && h.iter().all(|&x| x >= 0), || {
            format!("h = {h:?} on {p:?}")
        })?;
        let vertices = maximal_tubings(p).map_err(|e| e.to_string())?;
        ensure(vertices.len() as u64 == f.counts()[0], || {
            format!("vertex count on {p:?}")
        })?;
        let all: Vec<Tubing> = enumerate_tubings(p).map_err(|e| e.to_string())?.collect();
        for t in &all {
            let maximal = !all.iter().any(|u| u.len() == t.len() + 1 && t.is_subset(u));
            ensure(maximal == (t.len() == d), || format!("{t:?} on {p:?}"))?;
        }
        for v in &vertices {
            let shared = |w: &Tubing| w.tubes().iter().filter(|&&x| v.contains(x)).count();
            let degree = vertices
                .iter()
                .filter(|w| d > 0 && shared(w) + 1 == d)
                .count();
            ensure(degree == d, || {
                format!("vertex {v:?} of {p:?} has degree {degree}")
            })?;
        }
    }
    Ok(format!("{} posets", corpus.len()))
}

fn criterion_9() -> Check {
    let mut pairs = 0;
    for n in 1..=5 {
        let corpus = poset_assoc::catalog::connected_posets_in_range(n, n);
        let graphs: Vec<_> = corpus.iter().map(comparability_graph).collect();
        for i in 0..corpus.len() {
            for j in 0..corpus.len() {
                if graphs_isomorphic(&graphs[i], &graphs[j]).is_none() {
                    continue;
                }
                let (a, b) = (&corpus[i], &corpus[j]);
                let seq = flip_sequence(a, b, 8).map_err(|e| format!("{a:?} -> {b:?}: {e}"))?;
                ensure(seq.steps.len() <= 8, || "sequence too long".into())?;
                let end: Poset = seq.replay(a).map_err(|e| e.to_string())?;
                ensure(end.is_isomorphic(b), || {
                    format!("replay of {a:?} does not reach {b:?}")
                })?;
                pairs += 1;
            }
        }
    }
    Ok(format!("{pairs} ordered pairs"))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 9] = [
        ("pentagon", criterion_1, Duration::from_secs(1)),
        ("octagon pair", criterion_2, Duration::from_secs(5)),
        (
            "P212 is a permutohedron",
            criterion_3,
            Duration::from_secs(10),
        ),
        (
            "P122 is not a permutohedron",
            criterion_4,
            Duration::from_secs(10),
        ),
        (
            "f-vector flip invariance, |P| <= 6",
            criterion_5,
            Duration::from_secs(300),
        ),
        (
            "flip map bijection, |P| <= 5",
            criterion_6,
            Duration::from_secs(120),
        ),
        (
            "decomposition, |P| <= 5",
            criterion_7,
            Duration::from_secs(120),
        ),
        (
            "polytopality invariants, |P| <= 6",
            criterion_8,
            Duration::from_secs(300),
        ),
        (
            "flip sequences, |P| <= 5",
            criterion_9,
            Duration::from_secs(300),
        ),
    ];
    let mut failed = 0;
    for (k, (name, check, limit)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result = check();
        let elapsed = start.elapsed();
        let (verdict, detail) = match result {
            Ok(_) if elapsed > *limit => ("FAIL", format!("took {elapsed:.2?}, limit {limit:?}")),
            Ok(detail) => ("PASS", detail),
            Err(why) => ("FAIL", why),
        };
        if verdict == "FAIL" {
            failed += 1;
        }
        println!(
            "criterion {} [{name}]: {verdict} ({elapsed:.2?}) {detail}",
            k + 1
        );
    }
    println!(
        "acceptance: {} passed, {failed} failed",
        criteria.len() - failed
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
