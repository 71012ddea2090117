#![allow(dead_code)]

use std::collections::BTreeSet;

use fnlab::mapping::{check_star, FnMapping};
use fnlab::poset::{OrderMap, Poset, Subset};
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::Rng;

/// Ids that sort in index order.
pub fn ids(n: usize) -> Vec<String> {
    (0..n).map(|i| format!("e{i:02}")).collect()
}

/// The poset on `n` elements generated by `i <= j` for every set bit of the
/// strict upper triangle, listed row by row.
pub fn poset_from_upper(n: usize, bits: &[bool]) -> Poset {
    let names = ids(n);
    let mut pairs = Vec::new();
    let mut k = 0;
    for i in 0..n {
        for j in i + 1..n {
            if bits[k] {
                pairs.push((names[i].clone(), names[j].clone()));
            }
            k += 1;
        }
    }
    Poset::build(names.clone(), pairs).expect("upper-triangular relations are acyclic")
}

pub fn arb_poset(max: usize) -> impl Strategy<Value = Poset> {
    (1..=max).prop_flat_map(|n| {
        proptest::collection::vec(proptest::bool::weighted(0.3), n * (n - 1) / 2)
            .prop_map(move |bits| poset_from_upper(n, &bits))
    })
}

pub fn random_poset<R: Rng>(rng: &mut R, n: usize, density: f64) -> Poset {
    let bits: Vec<bool> = (0..n * (n.saturating_sub(1)) / 2)
        .map(|_| rng.gen_bool(density))
        .collect();
    poset_from_upper(n, &bits)
}

/// One representative of every isomorphism class of posets on `n` elements.
pub fn all_posets(n: usize) -> Vec<Poset> {
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
        .collect();
    let perms = permutations(n);
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for mask in 0u64..1 << pairs.len() {
        let rel = |i: usize, j: usize| {
            i == j
                || pairs
                    .iter()
                    .position(|&p| p == (i, j))
                    .is_some_and(|k| mask >> k & 1 == 1)
        };
        // only transitive relations, so each poset appears once per labelling
        let transitive =
            (0..n).all(|a| (0..n).all(|b| (0..n).all(|c| !(rel(a, b) && rel(b, c)) || rel(a, c))));
        if !transitive {
            continue;
        }
        let canon = perms
            .iter()
            .map(|p| {
                let mut code = 0u64;
                for a in 0..n {
                    for b in 0..n {
                        code = code << 1 | rel(p[a], p[b]) as u64;
                    }
                }
                code
            })
            .min()
            .unwrap_or(0);
        if seen.insert(canon) {
            let bits: Vec<bool> = pairs.iter().map(|&(i, j)| rel(i, j)).collect();
            out.push(poset_from_upper(n, &bits));
        }
    }
    out
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for k in 0..n {
            let mut q = p.clone();
            q.insert(k, n - 1);
            out.push(q);
        }
    }
    out
}

pub fn random_subset<R: Rng>(rng: &mut R, n: usize, p: f64) -> Subset {
    (0..n).filter(|_| rng.gen_bool(p)).collect()
}

/// Arbitrary sets, with no attempt at (*).
pub fn random_sets<R: Rng>(rng: &mut R, n: usize, p: f64) -> Vec<Subset> {
    (0..n).map(|_| random_subset(rng, n, p)).collect()
}

/// Definitional check of (*): the first `(a, b)` with `a <= b` and no
/// `c ∈ f(a) ∩ f(b)` between them.
pub fn naive_star(p: &Poset, sets: &[Subset]) -> Option<(usize, usize)> {
    let n = p.len();
    for a in 0..n {
        for b in 0..n {
            if !p.le(a, b) {
                continue;
            }
            let found = (0..n)
                .any(|c| sets[a].contains(&c) && sets[b].contains(&c) && p.le(a, c) && p.le(c, b));
            if !found {
                return Some((a, b));
            }
        }
    }
    None
}

/// A random mapping satisfying (*): random extra members, then repairs of
/// every failing pair by a random element between its ends.
pub fn random_star_mapping<R: Rng>(rng: &mut R, p: &Poset, extra: f64) -> FnMapping {
    let n = p.len();
    let mut sets: Vec<Subset> = (0..n)
        .map(|a| {
            let mut s = random_subset(rng, n, extra);
            if rng.gen_bool(0.5) {
                s.insert(a);
            }
            s
        })
        .collect();
    while let Some((a, b)) = naive_star(p, &sets) {
        let between: Vec<usize> = (0..n).filter(|&c| p.le(a, c) && p.le(c, b)).collect();
        let c = *between.choose(rng).expect("a itself lies between");
        sets[a].insert(c);
        sets[b].insert(c);
    }
    let f = FnMapping::tight(p.clone(), sets).expect("sets lie in the carrier");
    debug_assert!(check_star(p, &f).is_ok());
    f
}

/// The subset of `0..n` with the given bit mask.
pub fn mask_to_subset(mask: u64, n: usize) -> Subset {
    (0..n).filter(|&i| mask >> i & 1 == 1).collect()
}

/// Proptest settings for integration tests, which have no source file to
/// store regressions next to.
pub fn cases(n: u32) -> ProptestConfig {
    ProptestConfig {
        cases: n,
        failure_persistence: None,
        ..ProptestConfig::default()
    }
}

/// The least max-size and the least total size over all mappings
/// satisfying (*), by trying every assignment. Only sets containing `a` and
/// otherwise comparable elements are tried: (*) with `a = b` forces
/// `a ∈ f(a)`, and incomparable members never serve as witnesses.
pub fn exhaustive_optimum(p: &Poset) -> (usize, usize) {
    let n = p.len();
    let options: Vec<Vec<Subset>> = (0..n)
        .map(|a| {
            let others: Vec<usize> = (0..n).filter(|&c| c != a && p.comparable(a, c)).collect();
            (0u64..1 << others.len())
                .map(|m| {
                    let mut s: Subset = (0..others.len())
                        .filter(|&k| m >> k & 1 == 1)
                        .map(|k| others[k])
                        .collect();
                    s.insert(a);
                    s
                })
                .collect()
        })
        .collect();
    let mut best = (usize::MAX, usize::MAX);
    let mut choice = vec![0usize; n];
    loop {
        let sets: Vec<Subset> = (0..n).map(|a| options[a][choice[a]].clone()).collect();
        if naive_star(p, &sets).is_none() {
            let max = sets.iter().map(|s| s.len()).max().unwrap_or(0);
            let total = sets.iter().map(|s| s.len()).sum();
            best = (best.0.min(max), best.1.min(total));
        }
        // odometer over the choices
        let mut k = 0;
        loop {
            if k == n {
                return best;
            }
            choice[k] += 1;
            if choice[k] < options[k].len() {
                break;
            }
            choice[k] = 0;
            k += 1;
        }
    }
}

/// A carrier of 1 to 16 elements.
pub fn carrier<R: Rng>(r: &mut R) -> Poset {
    let n = r.gen_range(1..=16);
    let density = r.gen_range(0.05..0.5);
    random_poset(r, n, density)
}

/// A nonempty random subset.
pub fn nonempty_subset<R: Rng>(r: &mut R, n: usize) -> Subset {
    let density = r.gen_range(0.2..0.8);
    let mut a = random_subset(r, n, density);
    if a.is_empty() {
        a.insert(r.gen_range(0..n));
    }
    a
}

/// `A × C` restricted to a random set containing `A × {c0}`, with the
/// inclusion at `c0` and the first projection.
pub fn product_retract<R: Rng>(r: &mut R) -> (OrderMap, OrderMap) {
    let (n, m) = (r.gen_range(1..=5), r.gen_range(1..=3));
    let a = random_poset(r, n, 0.4);
    let c = random_poset(r, m, 0.5);
    let name = |x: usize, y: usize| format!("{}_{}", a.id(x), c.id(y));
    let elems: Vec<(usize, usize)> = (0..a.len())
        .flat_map(|x| (0..c.len()).map(move |y| (x, y)))
        .filter(|&(_, y)| y == 0 || r.gen_bool(0.6))
        .collect();
    let mut pairs = Vec::new();
    for &(x, y) in &elems {
        for &(u, v) in &elems {
            if (x, y) != (u, v) && a.le(x, u) && c.le(y, v) {
                pairs.push((name(x, y), name(u, v)));
            }
        }
    }
    let b = Poset::build(elems.iter().map(|&(x, y)| name(x, y)), pairs).unwrap();
    let i: Vec<(String, String)> = (0..a.len()).map(|x| (a.id(x).into(), name(x, 0))).collect();
    let j: Vec<(String, String)> = elems
        .iter()
        .map(|&(x, y)| (name(x, y), a.id(x).into()))
        .collect();
    (
        OrderMap::from_pairs(a.clone(), b.clone(), &i).unwrap(),
        OrderMap::from_pairs(b, a, &j).unwrap(),
    )
}
