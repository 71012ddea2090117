//! Finite partially ordered sets, cones, cofinality and order-preserving maps.
//!
//! Elements are addressed by dense indices `0..len()`. Indices follow the
//! lexicographic order of the element ids, so iterating indices in ascending
//! order is the deterministic tie-breaking order used everywhere else in the
//! crate.

use std::collections::{BTreeSet, HashMap};

use thiserror::Error;

/// A set of element indices of some carrier.
pub type Subset = BTreeSet<usize>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PosetError {
    #[error("unknown element `{0}`")]
    UnknownElement(String),
    #[error("element `{0}` declared twice")]
    DuplicateElement(String),
    #[error("order relation has a cycle through `{0}` and `{1}`")]
    Cycle(String, String),
    #[error("relation is not a partial order: {0}")]
    NotAPartialOrder(String),
    #[error("map is not total: {0}")]
    NotTotal(String),
    #[error("domain mismatch: {0}")]
    DomainMismatch(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Poset {
    ids: Vec<String>,
    // row-major, le[a * n + b] <=> a <= b
    le: Vec<bool>,
}

impl Poset {
    /// Builds a poset from element ids and generating pairs `(a, b)` meaning
    /// `a <= b`. The order is the reflexive-transitive closure of the pairs.
    pub fn build<I, S, P, A, B>(elements: I, pairs: P) -> Result<Self, PosetError>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
        P: IntoIterator<Item = (A, B)>,
        A: AsRef<str>,
        B: AsRef<str>,
    {
        let mut ids: Vec<String> = elements.into_iter().map(Into::into).collect();
        ids.sort();
        if let Some(w) = ids.windows(2).find(|w| w[0] == w[1]) {
            return Err(PosetError::DuplicateElement(w[0].clone()));
        }
        let n = ids.len();
        let index: HashMap<&str, usize> = ids
            .iter()
            .enumerate()
            .map(|(i, s)| (s.as_str(), i))
            .collect();
        let mut le = vec![false; n * n];
        for i in 0..n {
            le[i * n + i] = true;
        }
        for (a, b) in pairs {
            let ia = *index
                .get(a.as_ref())
                .ok_or_else(|| PosetError::UnknownElement(a.as_ref().to_string()))?;
            let ib = *index
                .get(b.as_ref())
                .ok_or_else(|| PosetError::UnknownElement(b.as_ref().to_string()))?;
            le[ia * n + ib] = true;
        }
        // Warshall
        for k in 0..n {
            for i in 0..n {
                if le[i * n + k] {
                    for j in 0..n {
                        if le[k * n + j] {
                            le[i * n + j] = true;
                        }
                    }
                }
            }
        }
        for i in 0..n {
            for j in (i + 1)..n {
                if le[i * n + j] && le[j * n + i] {
                    return Err(PosetError::Cycle(ids[i].clone(), ids[j].clone()));
                }
            }
        }
        Ok(Poset { ids, le })
    }

    /// Builds a poset from an explicit relation matrix over already sorted,
    /// distinct ids. The matrix must already be a partial order.
    pub fn from_relation<F>(ids: Vec<String>, le: F) -> Result<Self, PosetError>
    where
        F: Fn(usize, usize) -> bool,
    {
        if let Some(w) = ids.windows(2).find(|w| w[0] >= w[1]) {
            return Err(PosetError::NotAPartialOrder(format!(
                "ids must be strictly sorted, found `{}` before `{}`",
                w[0], w[1]
            )));
        }
        let n = ids.len();
        let mut rel = vec![false; n * n];
        for a in 0..n {
            for b in 0..n {
                rel[a * n + b] = le(a, b);
            }
        }
        let p = Poset { ids, le: rel };
        p.check_partial_order()?;
        Ok(p)
    }

    /// A chain whose order is the given sequence (first element least).
    pub fn chain<S: AsRef<str>>(elements: &[S]) -> Result<Self, PosetError> {
        let pairs: Vec<(&str, &str)> = elements
            .windows(2)
            .map(|w| (w[0].as_ref(), w[1].as_ref()))
            .collect();
        Poset::build(elements.iter().map(|s| s.as_ref().to_string()), pairs)
    }

    pub fn antichain<S: AsRef<str>>(elements: &[S]) -> Result<Self, PosetError> {
        Poset::build(
            elements.iter().map(|s| s.as_ref().to_string()),
            std::iter::empty::<(&str, &str)>(),
        )
    }

    fn check_partial_order(&self) -> Result<(), PosetError> {
        let n = self.len();
        for a in 0..n {
            if !self.le(a, a) {
                return Err(PosetError::NotAPartialOrder(format!(
                    "`{}` is not reflexive",
                    self.ids[a]
                )));
            }
            for b in 0..n {
                if a != b && self.le(a, b) && self.le(b, a) {
                    return Err(PosetError::Cycle(self.ids[a].clone(), self.ids[b].clone()));
                }
                for c in 0..n {
                    if self.le(a, b) && self.le(b, c) && !self.le(a, c) {
                        return Err(PosetError::NotAPartialOrder(format!(
                            "not transitive at `{}` <= `{}` <= `{}`",
                            self.ids[a], self.ids[b], self.ids[c]
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.ids.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ids.is_empty()
    }

    pub fn ids(&self) -> &[String] {
        &self.ids
    }

    pub fn id(&self, i: usize) -> &str {
        &self.ids[i]
    }

    pub fn index_of(&self, id: &str) -> Result<usize, PosetError> {
        self.ids
            .binary_search_by(|probe| probe.as_str().cmp(id))
            .map_err(|_| PosetError::UnknownElement(id.to_string()))
    }

    /// Resolves a list of ids into a subset.
    pub fn subset_of<S: AsRef<str>>(&self, ids: &[S]) -> Result<Subset, PosetError> {
        ids.iter().map(|s| self.index_of(s.as_ref())).collect()
    }

    pub fn all(&self) -> Subset {
        (0..self.len()).collect()
    }

    #[inline]
    pub fn le(&self, a: usize, b: usize) -> bool {
        self.le[a * self.ids.len() + b]
    }

    #[inline]
    pub fn lt(&self, a: usize, b: usize) -> bool {
        a != b && self.le(a, b)
    }

    pub fn comparable(&self, a: usize, b: usize) -> bool {
        self.le(a, b) || self.le(b, a)
    }

    fn check_subset(&self, s: &Subset) -> Result<(), PosetError> {
        match s.iter().find(|&&x| x >= self.len()) {
            Some(x) => Err(PosetError::UnknownElement(format!("#{x}"))),
            None => Ok(()),
        }
    }

    fn check_elem(&self, b: usize) -> Result<(), PosetError> {
        if b < self.len() {
            Ok(())
        } else {
            Err(PosetError::UnknownElement(format!("#{b}")))
        }
    }

    /// `{a ∈ A : a <= b}`
    pub fn lower_cone(&self, a: &Subset, b: usize) -> Result<Subset, PosetError> {
        self.check_subset(a)?;
        self.check_elem(b)?;
        Ok(a.iter().copied().filter(|&x| self.le(x, b)).collect())
    }

    /// `{a ∈ A : a >= b}`
    pub fn upper_cone(&self, a: &Subset, b: usize) -> Result<Subset, PosetError> {
        self.check_subset(a)?;
        self.check_elem(b)?;
        Ok(a.iter().copied().filter(|&x| self.le(b, x)).collect())
    }

    /// Every member of `s` lies below some member of `u`.
    pub fn is_cofinal(&self, u: &Subset, s: &Subset) -> Result<bool, PosetError> {
        self.check_subset(u)?;
        self.check_subset(s)?;
        Ok(s.iter().all(|&x| u.iter().any(|&y| self.le(x, y))))
    }

    /// Every member of `s` lies above some member of `u`.
    pub fn is_coinitial(&self, u: &Subset, s: &Subset) -> Result<bool, PosetError> {
        self.check_subset(u)?;
        self.check_subset(s)?;
        Ok(s.iter().all(|&x| u.iter().any(|&y| self.le(y, x))))
    }

    pub fn maximal(&self, s: &Subset) -> Subset {
        s.iter()
            .copied()
            .filter(|&x| !s.iter().any(|&y| self.lt(x, y)))
            .collect()
    }

    pub fn minimal(&self, s: &Subset) -> Subset {
        s.iter()
            .copied()
            .filter(|&x| !s.iter().any(|&y| self.lt(y, x)))
            .collect()
    }

    pub fn maximum(&self, s: &Subset) -> Option<usize> {
        s.iter()
            .copied()
            .find(|&x| s.iter().all(|&y| self.le(y, x)))
    }

    pub fn minimum(&self, s: &Subset) -> Option<usize> {
        s.iter()
            .copied()
            .find(|&x| s.iter().all(|&y| self.le(x, y)))
    }

    pub fn is_chain(&self) -> bool {
        (0..self.len()).all(|a| (0..self.len()).all(|b| self.comparable(a, b)))
    }

    /// Elements in increasing order, if the poset is a chain.
    pub fn chain_order(&self) -> Option<Vec<usize>> {
        if !self.is_chain() {
            return None;
        }
        let mut v: Vec<usize> = (0..self.len()).collect();
        v.sort_by_key(|&a| (0..self.len()).filter(|&b| self.lt(b, a)).count());
        Some(v)
    }

    /// The sub-poset induced on `s`, together with the embedding of its
    /// indices into this poset.
    pub fn induced(&self, s: &Subset) -> Result<(Poset, Vec<usize>), PosetError> {
        self.check_subset(s)?;
        // `s` iterates in index order, which is id order, so ids stay sorted
        let embed: Vec<usize> = s.iter().copied().collect();
        let ids = embed.iter().map(|&i| self.ids[i].clone()).collect();
        let p = Poset::from_relation(ids, |a, b| self.le(embed[a], embed[b]))?;
        Ok((p, embed))
    }

    /// True when `self` is (id-wise) a sub-poset of `other` with the induced
    /// order.
    pub fn is_subposet_of(&self, other: &Poset) -> bool {
        let Ok(embed) = self
            .ids
            .iter()
            .map(|id| other.index_of(id))
            .collect::<Result<Vec<_>, _>>()
        else {
            return false;
        };
        (0..self.len())
            .all(|a| (0..self.len()).all(|b| self.le(a, b) == other.le(embed[a], embed[b])))
    }

    /// Embedding of the indices of `self` into `other`, matching by id.
    pub fn embedding_into(&self, other: &Poset) -> Result<Vec<usize>, PosetError> {
        self.ids.iter().map(|id| other.index_of(id)).collect()
    }

    pub fn ids_of<'a>(&'a self, s: &'a Subset) -> impl Iterator<Item = &'a str> + 'a {
        s.iter().map(move |&i| self.ids[i].as_str())
    }

    /// Covering pairs `(a, b)` with `a < b` and nothing strictly between.
    pub fn covers(&self) -> Vec<(usize, usize)> {
        let n = self.len();
        let mut out = Vec::new();
        for a in 0..n {
            for b in 0..n {
                if self.lt(a, b) && !(0..n).any(|c| self.lt(a, c) && self.lt(c, b)) {
                    out.push((a, b));
                }
            }
        }
        out
    }
}

/// A total map between two posets, given as a table over source indices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrderMap {
    source: Poset,
    target: Poset,
    table: Vec<usize>,
}

impl OrderMap {
    pub fn new(source: Poset, target: Poset, table: Vec<usize>) -> Result<Self, PosetError> {
        if table.len() != source.len() {
            return Err(PosetError::NotTotal(format!(
                "table has {} entries for {} source elements",
                table.len(),
                source.len()
            )));
        }
        if let Some(&t) = table.iter().find(|&&t| t >= target.len()) {
            return Err(PosetError::UnknownElement(format!("#{t}")));
        }
        Ok(OrderMap {
            source,
            target,
            table,
        })
    }

    /// Builds a map from `(source id, target id)` pairs.
    pub fn from_pairs<S: AsRef<str>, T: AsRef<str>>(
        source: Poset,
        target: Poset,
        pairs: &[(S, T)],
    ) -> Result<Self, PosetError> {
        let mut table = vec![None; source.len()];
        for (s, t) in pairs {
            let i = source.index_of(s.as_ref())?;
            let j = target.index_of(t.as_ref())?;
            if table[i].replace(j).is_some() {
                return Err(PosetError::DuplicateElement(s.as_ref().to_string()));
            }
        }
        let table = table
            .into_iter()
            .enumerate()
            .map(|(i, t)| t.ok_or_else(|| PosetError::NotTotal(source.id(i).to_string())))
            .collect::<Result<Vec<_>, _>>()?;
        OrderMap::new(source, target, table)
    }

    pub fn identity(p: Poset) -> Self {
        let table = (0..p.len()).collect();
        OrderMap {
            source: p.clone(),
            target: p,
            table,
        }
    }

    /// The inclusion of `source` into `target`, matching ids.
    pub fn inclusion(source: Poset, target: Poset) -> Result<Self, PosetError> {
        let table = source.embedding_into(&target)?;
        OrderMap::new(source, target, table)
    }

    pub fn source(&self) -> &Poset {
        &self.source
    }

    pub fn target(&self) -> &Poset {
        &self.target
    }

    pub fn table(&self) -> &[usize] {
        &self.table
    }

    #[inline]
    pub fn apply(&self, a: usize) -> usize {
        self.table[a]
    }

    pub fn is_monotone(&self) -> bool {
        let n = self.source.len();
        (0..n).all(|a| {
            (0..n).all(|b| !self.source.le(a, b) || self.target.le(self.table[a], self.table[b]))
        })
    }
}

/// True iff `i: A -> B` and `j: B -> A` are order preserving and `j ∘ i = id_A`.
pub fn check_retraction(i: &OrderMap, j: &OrderMap) -> Result<bool, PosetError> {
    if i.target != j.source || i.source != j.target {
        return Err(PosetError::DomainMismatch(
            "expected i: A -> B and j: B -> A".to_string(),
        ));
    }
    let identity = (0..i.source.len()).all(|a| j.apply(i.apply(a)) == a);
    Ok(identity && i.is_monotone() && j.is_monotone())
}
