//! Interval algebras: finite unions of half-open intervals `[x, y)` over a
//! linear order extended by `-inf` and `+inf`.
//!
//! Elements are kept in standard form, a strictly increasing list of
//! endpoints `x_0 < x_1 < ...` read in pairs, so equal point sets have equal
//! representations.

use std::collections::BTreeSet;
use std::fmt;

use num_rational::Rational64;
use thiserror::Error;

use crate::mapping::{
    check_star, verify_star, FiniteOrder, FnMapping, FnOracle, MappingError, Order, StarVerdict,
};
use crate::poset::{Poset, PosetError, Subset};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum IntervalError {
    #[error("element uses points outside the order")]
    OrderMismatch,
    #[error("unknown point `{0}`")]
    UnknownPoint(String),
    #[error("duplicate point `{0}`")]
    DuplicatePoint(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("order has {size} points, above the cap of {cap}")]
    SizeLimitExceeded { size: usize, cap: usize },
    #[error("precondition failed: {0}")]
    PreconditionFailed(String),
    #[error(transparent)]
    Mapping(#[from] MappingError),
    #[error(transparent)]
    Poset(#[from] PosetError),
}

/// A point of the order together with the two sentinels. The derived order
/// puts `NegInf` first and `PosInf` last.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Point<P> {
    NegInf,
    At(P),
    PosInf,
}

impl<P> Point<P> {
    pub fn finite(&self) -> Option<&P> {
        match self {
            Point::At(p) => Some(p),
            _ => None,
        }
    }
}

/// An element of an interval algebra in standard form.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct IntervalElement<P> {
    bounds: Vec<Point<P>>,
}

impl<P: Ord + Clone> IntervalElement<P> {
    pub fn zero() -> Self {
        IntervalElement { bounds: Vec::new() }
    }

    pub fn one() -> Self {
        IntervalElement {
            bounds: vec![Point::NegInf, Point::PosInf],
        }
    }

    /// `[lo, hi)`, empty unless `lo < hi`.
    pub fn interval(lo: Point<P>, hi: Point<P>) -> Self {
        if lo < hi {
            IntervalElement {
                bounds: vec![lo, hi],
            }
        } else {
            Self::zero()
        }
    }

    /// Union of arbitrary intervals, normalized.
    pub fn from_intervals(parts: impl IntoIterator<Item = (Point<P>, Point<P>)>) -> Self {
        parts.into_iter().fold(Self::zero(), |acc, (lo, hi)| {
            acc.union(&Self::interval(lo, hi))
        })
    }

    /// Endpoint list of the standard form, sentinels included.
    pub fn bounds(&self) -> &[Point<P>] {
        &self.bounds
    }

    /// The disjoint intervals of the standard form.
    pub fn intervals(&self) -> impl Iterator<Item = (&Point<P>, &Point<P>)> {
        self.bounds.chunks(2).map(|c| (&c[0], &c[1]))
    }

    pub fn is_zero(&self) -> bool {
        self.bounds.is_empty()
    }

    /// Whether the half-open cell starting at `x` lies in the element.
    pub fn contains(&self, x: &Point<P>) -> bool {
        self.bounds.partition_point(|b| b <= x) % 2 == 1
    }

    pub fn contains_point(&self, p: &P) -> bool {
        self.contains(&Point::At(p.clone()))
    }

    fn combine(&self, other: &Self, op: impl Fn(bool, bool) -> bool) -> Self {
        let cuts: BTreeSet<&Point<P>> = self.bounds.iter().chain(&other.bounds).collect();
        let mut bounds = Vec::new();
        let mut inside = false;
        for x in cuts {
            let now = op(self.contains(x), other.contains(x));
            if now != inside {
                bounds.push(x.clone());
                inside = now;
            }
        }
        IntervalElement { bounds }
    }

    pub fn union(&self, other: &Self) -> Self {
        self.combine(other, |a, b| a || b)
    }

    pub fn intersection(&self, other: &Self) -> Self {
        self.combine(other, |a, b| a && b)
    }

    pub fn complement(&self) -> Self {
        self.combine(&Self::one(), |a, b| !a && b)
    }

    pub fn leq(&self, other: &Self) -> bool {
        self.combine(other, |a, b| a && !b).is_zero()
    }

    /// `ep(b)`: the finite endpoints of the standard form.
    pub fn endpoints(&self) -> BTreeSet<P> {
        self.bounds
            .iter()
            .filter_map(|b| b.finite().cloned())
            .collect()
    }

    /// The least element with endpoints in `grid` that contains `self`: the
    /// union of the grid cells meeting it.
    pub fn outer_approximation(&self, grid: &BTreeSet<P>) -> Self {
        let mut cuts: Vec<Point<P>> = vec![Point::NegInf];
        cuts.extend(grid.iter().cloned().map(Point::At));
        cuts.push(Point::PosInf);
        let cells = cuts.windows(2).filter(|w| {
            self.intervals()
                .any(|(lo, hi)| lo.max(&w[0]) < hi.min(&w[1]))
        });
        Self::from_intervals(
            cells
                .map(|w| (w[0].clone(), w[1].clone()))
                .collect::<Vec<_>>(),
        )
    }

    /// Renders the element with `show` for finite points.
    pub fn display_with(&self, show: impl Fn(&P) -> String) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let pt = |x: &Point<P>| match x {
            Point::NegInf => "-inf".to_string(),
            Point::PosInf => "+inf".to_string(),
            Point::At(p) => show(p),
        };
        self.intervals()
            .map(|(lo, hi)| format!("[{},{})", pt(lo), pt(hi)))
            .collect::<Vec<_>>()
            .join(" ")
    }
}

impl fmt::Display for IntervalElement<Rational64> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display_with(|p| p.to_string()))
    }
}

/// Parses `[a,b) [c,d) ...`, or `0` for the empty element, resolving finite
/// points with `point`.
pub fn parse_intervals<P: Ord + Clone>(
    s: &str,
    point: impl Fn(&str) -> Result<P, IntervalError>,
) -> Result<IntervalElement<P>, IntervalError> {
    let s = s.trim();
    if s.is_empty() || s == "0" {
        return Ok(IntervalElement::zero());
    }
    let end = |x: &str| -> Result<Point<P>, IntervalError> {
        match x.trim() {
            "-inf" => Ok(Point::NegInf),
            "+inf" | "inf" => Ok(Point::PosInf),
            t => point(t).map(Point::At),
        }
    };
    let mut parts = Vec::new();
    let mut rest = s;
    while !rest.is_empty() {
        let body = rest
            .strip_prefix('[')
            .ok_or_else(|| IntervalError::Parse(format!("expected `[` at `{rest}`")))?;
        let close = body
            .find(')')
            .ok_or_else(|| IntervalError::Parse("missing `)`".into()))?;
        let (lo, hi) = body[..close]
            .split_once(',')
            .ok_or_else(|| IntervalError::Parse(format!("missing `,` in `{}`", &body[..close])))?;
        let (lo, hi) = (end(lo)?, end(hi)?);
        if lo >= hi {
            return Err(IntervalError::Parse(format!(
                "empty interval `[{}]`",
                &body[..close]
            )));
        }
        parts.push((lo, hi));
        rest = body[close + 1..].trim_start();
    }
    Ok(IntervalElement::from_intervals(parts))
}

/// Parses a rational interval element; points are integers or `p/q`.
pub fn parse_rational(s: &str) -> Result<IntervalElement<Rational64>, IntervalError> {
    parse_intervals(s, |t| {
        t.parse::<Rational64>()
            .map_err(|_| IntervalError::Parse(format!("bad rational `{t}`")))
    })
}

/// The rational line as an order on interval elements.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct RationalLine;

impl Order for RationalLine {
    type Elem = IntervalElement<Rational64>;

    fn le(&self, a: &Self::Elem, b: &Self::Elem) -> bool {
        a.leq(b)
    }
}

/// A linear order: an explicit finite list or the rationals.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LinearOrder {
    Finite(IntervalAlgebra),
    Rational,
}

/// Largest finite order whose interval algebra may be listed.
pub const MAX_LISTED_POINTS: usize = 16;

/// `Intalg(X)` for a finite linear order `X`, given by its ids in
/// increasing order. Points are positions in that list.
///
/// The atoms are `[-inf, x_0)`, `[x_0, x_1)`, ..., `[x_{n-1}, +inf)`, so the
/// algebra has `2^(n+1)` elements; atom `i` is bit `i` of a mask.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntervalAlgebra {
    ids: Vec<String>,
}

impl IntervalAlgebra {
    pub fn new<S: AsRef<str>>(ids: &[S]) -> Result<Self, IntervalError> {
        let mut seen = BTreeSet::new();
        for id in ids {
            if !seen.insert(id.as_ref()) {
                return Err(IntervalError::DuplicatePoint(id.as_ref().to_string()));
            }
        }
        Ok(IntervalAlgebra {
            ids: ids.iter().map(|s| s.as_ref().to_string()).collect(),
        })
    }

    /// The interval algebra of a chain poset.
    pub fn from_chain(p: &Poset) -> Result<Self, IntervalError> {
        let order = p
            .chain_order()
            .ok_or_else(|| IntervalError::PreconditionFailed("poset is not a chain".into()))?;
        IntervalAlgebra::new(&order.iter().map(|&i| p.id(i)).collect::<Vec<_>>())
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

    pub fn position(&self, id: &str) -> Result<usize, IntervalError> {
        self.ids
            .iter()
            .position(|x| x == id)
            .ok_or_else(|| IntervalError::UnknownPoint(id.to_string()))
    }

    /// The order itself as a chain poset.
    pub fn chain_poset(&self) -> Poset {
        Poset::chain(&self.ids).expect("ids are distinct")
    }

    /// Poset index of each position in [`IntervalAlgebra::chain_poset`].
    pub fn poset_indices(&self) -> Vec<usize> {
        let p = self.chain_poset();
        self.ids
            .iter()
            .map(|id| p.index_of(id).expect("same ids"))
            .collect()
    }

    pub fn check(&self, e: &IntervalElement<usize>) -> Result<(), IntervalError> {
        if e.endpoints().iter().all(|&p| p < self.len()) {
            Ok(())
        } else {
            Err(IntervalError::OrderMismatch)
        }
    }

    pub fn union(
        &self,
        a: &IntervalElement<usize>,
        b: &IntervalElement<usize>,
    ) -> Result<IntervalElement<usize>, IntervalError> {
        self.check(a)?;
        self.check(b)?;
        Ok(a.union(b))
    }

    pub fn intersection(
        &self,
        a: &IntervalElement<usize>,
        b: &IntervalElement<usize>,
    ) -> Result<IntervalElement<usize>, IntervalError> {
        self.check(a)?;
        self.check(b)?;
        Ok(a.intersection(b))
    }

    pub fn complement(
        &self,
        a: &IntervalElement<usize>,
    ) -> Result<IntervalElement<usize>, IntervalError> {
        self.check(a)?;
        Ok(a.complement())
    }

    pub fn leq(
        &self,
        a: &IntervalElement<usize>,
        b: &IntervalElement<usize>,
    ) -> Result<bool, IntervalError> {
        self.check(a)?;
        self.check(b)?;
        Ok(a.leq(b))
    }

    /// Number of atoms, `n + 1`.
    pub fn atoms(&self) -> usize {
        self.len() + 1
    }

    fn cut(&self, x: &Point<usize>) -> usize {
        match x {
            Point::NegInf => 0,
            Point::At(p) => p + 1,
            Point::PosInf => self.len() + 1,
        }
    }

    pub fn to_mask(&self, e: &IntervalElement<usize>) -> u64 {
        e.intervals().fold(0, |m, (lo, hi)| {
            (self.cut(lo)..self.cut(hi)).fold(m, |m, k| m | 1 << k)
        })
    }

    pub fn from_mask(&self, mask: u64) -> IntervalElement<usize> {
        let n = self.len();
        let point = |k: usize| match k {
            0 => Point::NegInf,
            k if k == n + 1 => Point::PosInf,
            k => Point::At(k - 1),
        };
        let mut bounds = Vec::new();
        let mut inside = false;
        for k in 0..=n + 1 {
            let now = k <= n && mask >> k & 1 == 1;
            if now != inside {
                bounds.push(point(k));
                inside = now;
            }
        }
        IntervalElement { bounds }
    }

    pub fn parse(&self, s: &str) -> Result<IntervalElement<usize>, IntervalError> {
        parse_intervals(s, |t| self.position(t))
    }

    pub fn display(&self, e: &IntervalElement<usize>) -> String {
        e.display_with(|&p| self.ids[p].clone())
    }

    /// `[-inf, x)` for position `x`.
    pub fn initial_segment(&self, x: usize) -> IntervalElement<usize> {
        IntervalElement::interval(Point::NegInf, Point::At(x))
    }
}

impl Order for IntervalAlgebra {
    type Elem = IntervalElement<usize>;

    fn le(&self, a: &Self::Elem, b: &Self::Elem) -> bool {
        a.leq(b)
    }
}

impl FiniteOrder for IntervalAlgebra {
    /// All `2^(n+1)` elements, by mask.
    fn elements(&self) -> Vec<Self::Elem> {
        assert!(
            self.len() <= MAX_LISTED_POINTS,
            "interval algebra too large to list"
        );
        let mut out: Vec<_> = (0..1u64 << self.atoms())
            .map(|m| self.from_mask(m))
            .collect();
        out.sort();
        out
    }
}

/// The mapping `g(b) = {c : ep(c) ⊆ D ∪ ep(b)}` for a skeleton `D`.
///
/// The witness for `a <= b` is the outer approximation of `a` on the grid
/// `D ∪ (ep(a) ∩ ep(b))`, offered only when it stays below `b`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DenseMap<P> {
    skeleton: BTreeSet<P>,
}

pub fn dense_wfn_mapping<P: Ord + Clone>(skeleton: BTreeSet<P>) -> DenseMap<P> {
    DenseMap { skeleton }
}

impl<P: Ord + Clone> DenseMap<P> {
    pub fn skeleton(&self) -> &BTreeSet<P> {
        &self.skeleton
    }
}

impl<P, O> FnOracle<O> for DenseMap<P>
where
    P: Ord + Clone,
    O: Order<Elem = IntervalElement<P>>,
{
    fn contains(&self, _order: &O, b: &IntervalElement<P>, c: &IntervalElement<P>) -> bool {
        let eb = b.endpoints();
        c.endpoints()
            .iter()
            .all(|x| self.skeleton.contains(x) || eb.contains(x))
    }

    fn witness(
        &self,
        _order: &O,
        a: &IntervalElement<P>,
        b: &IntervalElement<P>,
    ) -> Option<IntervalElement<P>> {
        let mut grid = self.skeleton.clone();
        grid.extend(a.endpoints().intersection(&b.endpoints()).cloned());
        let c = a.outer_approximation(&grid);
        c.leq(b).then_some(c)
    }
}

/// `g(b) = {c : ep(c) ⊆ ⋃ f[ep(b)]}` for an FN mapping `f` on the order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LiftedMap {
    // f(x) as positions, indexed by position
    values: Vec<BTreeSet<usize>>,
}

impl LiftedMap {
    /// `⋃ f[ep(b)]`
    pub fn grid(&self, b: &IntervalElement<usize>) -> BTreeSet<usize> {
        b.endpoints()
            .iter()
            .flat_map(|&x| self.values[x].iter().copied())
            .collect()
    }
}

impl FnOracle<IntervalAlgebra> for LiftedMap {
    fn contains(
        &self,
        _alg: &IntervalAlgebra,
        b: &IntervalElement<usize>,
        c: &IntervalElement<usize>,
    ) -> bool {
        c.endpoints().is_subset(&self.grid(b))
    }

    /// The outer approximation of `a` on `⋃ f[ep(a)] ∩ ⋃ f[ep(b)]`.
    fn witness(
        &self,
        _alg: &IntervalAlgebra,
        a: &IntervalElement<usize>,
        b: &IntervalElement<usize>,
    ) -> Option<IntervalElement<usize>> {
        let grid: BTreeSet<usize> = self.grid(a).intersection(&self.grid(b)).copied().collect();
        Some(a.outer_approximation(&grid))
    }
}

/// Lifts an FN mapping on the chain `X` to `Intalg(X)`.
pub fn lift_mapping(alg: &IntervalAlgebra, f: &FnMapping) -> Result<LiftedMap, IntervalError> {
    let chain = alg.chain_poset();
    if f.carrier() != &chain {
        return Err(MappingError::CarrierMismatch.into());
    }
    if let StarVerdict::Counterexample(a, b) = verify_star(&chain, f)? {
        return Err(IntervalError::PreconditionFailed(format!(
            "mapping fails (*) at ({}, {})",
            chain.id(a),
            chain.id(b)
        )));
    }
    let index = alg.poset_indices();
    let mut position = vec![0; alg.len()];
    for (pos, &i) in index.iter().enumerate() {
        position[i] = pos;
    }
    let values = index
        .iter()
        .map(|&i| f.get(i).iter().map(|&c| position[c]).collect())
        .collect();
    Ok(LiftedMap { values })
}

/// Projects an FN mapping `g` on `Intalg(X)` to `X`:
/// `f(x) = ⋃ {ep(b) : b ∈ g([-inf, x))}`.
pub fn project_mapping<G: FnOracle<IntervalAlgebra>>(
    alg: &IntervalAlgebra,
    g: &G,
) -> Result<FnMapping, IntervalError> {
    if alg.len() > MAX_LISTED_POINTS {
        return Err(IntervalError::SizeLimitExceeded {
            size: alg.len(),
            cap: MAX_LISTED_POINTS,
        });
    }
    if let StarVerdict::Counterexample(a, b) = check_star(alg, g) {
        return Err(IntervalError::PreconditionFailed(format!(
            "mapping fails (*) at ({}, {})",
            alg.display(&a),
            alg.display(&b)
        )));
    }
    let elements = alg.elements();
    let index = alg.poset_indices();
    let sets = (0..alg.len())
        .map(|x| {
            let seg = alg.initial_segment(x);
            let members = g.members(alg, &seg).unwrap_or_else(|| {
                elements
                    .iter()
                    .filter(|c| g.contains(alg, &seg, c))
                    .cloned()
                    .collect()
            });
            members
                .iter()
                .flat_map(|c| c.endpoints())
                .map(|p| index[p])
                .collect::<Subset>()
        })
        .collect::<Vec<_>>();
    // sets are indexed by position; reorder to poset indices
    let mut by_index = vec![Subset::new(); alg.len()];
    for (pos, s) in sets.into_iter().enumerate() {
        by_index[index[pos]] = s;
    }
    Ok(FnMapping::tight(alg.chain_poset(), by_index)?)
}
