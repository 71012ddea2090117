//! Branch-and-bound search for a smallest FN mapping on a finite poset.
//!
//! Positions are filled in index order. Candidates for `f(a)` are subsets
//! of the elements comparable with `a` that contain `a`, tried by size and
//! then lexicographically. A witness for a pair is always comparable with
//! both ends, so dropping incomparable elements never breaks (*) and only
//! moves a mapping earlier in that order; the first optimum found is
//! therefore the least optimal mapping over all candidates.

use super::{FnMapping, MappingError};
use crate::poset::{Poset, Subset};

/// Default cap on the carrier size accepted by [`synth_min_fn`].
pub const DEFAULT_SYNTH_CAP: usize = 24;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Objective {
    /// `max_a |f(a)|`
    MaxSize,
    /// `Σ_a |f(a)|`
    TotalSize,
}

impl Objective {
    pub fn value(self, f: &FnMapping) -> usize {
        match self {
            Objective::MaxSize => f.max_size(),
            Objective::TotalSize => f.total_size(),
        }
    }
}

impl std::str::FromStr for Objective {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "max" | "max-size" => Ok(Objective::MaxSize),
            "total" | "total-size" => Ok(Objective::TotalSize),
            _ => Err(format!("unknown objective `{s}`")),
        }
    }
}

struct Search<'a> {
    poset: &'a Poset,
    objective: Objective,
    // others[a]: elements other than `a` comparable with it, ascending
    others: Vec<Vec<usize>>,
    // between[a][b]: mask of c with a <= c <= b
    between: Vec<Vec<u32>>,
    chosen: Vec<u32>,
    best: Option<(usize, Vec<u32>)>,
}

/// Advances `idx` to the next `k`-combination of `0..n` in lexicographic
/// order.
fn next_combination(idx: &mut [usize], n: usize) -> bool {
    let k = idx.len();
    for i in (0..k).rev() {
        if idx[i] < n - k + i {
            idx[i] += 1;
            for j in i + 1..k {
                idx[j] = idx[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

impl Search<'_> {
    fn cost(&self, max: usize, total: usize) -> usize {
        match self.objective {
            Objective::MaxSize => max,
            Objective::TotalSize => total,
        }
    }

    fn consistent(&self, a: usize, mask: u32) -> bool {
        (0..a).all(|b| {
            let (lo, hi) = if self.poset.le(a, b) {
                (a, b)
            } else if self.poset.le(b, a) {
                (b, a)
            } else {
                return true;
            };
            mask & self.chosen[b] & self.between[lo][hi] != 0
        })
    }

    fn go(&mut self, a: usize, max: usize, total: usize) {
        let n = self.poset.len();
        if a == n {
            let cost = self.cost(max, total);
            if self.best.as_ref().is_none_or(|(b, _)| cost < *b) {
                self.best = Some((cost, self.chosen.clone()));
            }
            return;
        }
        let others = self.others[a].clone();
        for extra in 0..=others.len() {
            let size = extra + 1;
            let (nmax, ntotal) = (max.max(size), total + size);
            // every later position holds at least its own element
            let bound = self.cost(nmax, ntotal + (n - a - 1));
            if matches!(&self.best, Some((best, _)) if bound >= *best) {
                // sizes only grow from here
                break;
            }
            let mut idx: Vec<usize> = (0..extra).collect();
            loop {
                let mask = idx.iter().fold(1u32 << a, |m, &k| m | 1 << others[k]);
                if self.consistent(a, mask) {
                    self.chosen[a] = mask;
                    self.go(a + 1, nmax, ntotal);
                    if matches!(&self.best, Some((best, _)) if bound >= *best) {
                        break;
                    }
                }
                if !next_combination(&mut idx, others.len()) {
                    break;
                }
            }
        }
        self.chosen[a] = 0;
    }
}

/// A mapping satisfying (*) that minimizes `objective`, ties broken by
/// position-wise (size, lexicographic) order of the sets.
pub fn synth_min_fn(
    poset: &Poset,
    objective: Objective,
    cap: usize,
) -> Result<FnMapping, MappingError> {
    let n = poset.len();
    let cap = cap.min(31);
    if n > cap {
        return Err(MappingError::SizeLimitExceeded { size: n, cap });
    }
    let others = (0..n)
        .map(|a| {
            (0..n)
                .filter(|&c| c != a && poset.comparable(a, c))
                .collect()
        })
        .collect();
    let between = (0..n)
        .map(|a| {
            (0..n)
                .map(|b| {
                    (0..n)
                        .filter(|&c| poset.le(a, c) && poset.le(c, b))
                        .fold(0u32, |m, c| m | 1 << c)
                })
                .collect()
        })
        .collect();
    let mut search = Search {
        poset,
        objective,
        others,
        between,
        chosen: vec![0; n],
        best: None,
    };
    search.go(0, 0, 0);
    let masks = match search.best {
        Some((_, masks)) => masks,
        // only the empty poset has no positions to fill
        None => Vec::new(),
    };
    let sets = masks
        .iter()
        .map(|&m| (0..n).filter(|&c| m >> c & 1 == 1).collect::<Subset>())
        .collect();
    FnMapping::tight(poset.clone(), sets)
}
