//! FN mappings and the interpolation condition (*): for all `a <= b` there
//! is `c ∈ f(a) ∩ f(b)` with `a <= c <= b`.
//!
//! Extensional mappings ([`FnMapping`]) store `f(a)` explicitly over a
//! [`Poset`]. Intensional mappings implement [`FnOracle`] with a membership
//! predicate and a witness function, so `f(b)` never has to be listed.

mod interpolation;
mod quotient;
mod synth;
mod transfer;

use std::fmt;

use thiserror::Error;

use crate::boolean::{AlgebraError, FiniteBa};
use crate::poset::{Poset, PosetError, Subset};

pub use interpolation::{interpolation_fn_mapping, InterpolationMap};
pub use quotient::{quotient_lift_mapping, quotient_push_mapping, Quotient};
pub use synth::{synth_min_fn, Objective, DEFAULT_SYNTH_CAP};
pub use transfer::{
    chain_union_mapping, enumeration_mapping, extend_mapping, restrict_mapping, retract_transfer,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MappingError {
    #[error("mapping is defined on a different carrier")]
    CarrierMismatch,
    #[error("f({element}) is not a subset of the carrier")]
    NotASubset { element: String },
    #[error("|f({element})| = {size} violates the bound {bound}")]
    BoundViolated {
        element: String,
        size: usize,
        bound: Bound,
    },
    #[error("not an enumeration of the carrier: {0}")]
    NotAnEnumeration(String),
    #[error("carrier has {size} elements, above the cap of {cap}")]
    SizeLimitExceeded { size: usize, cap: usize },
    #[error("witness family invalid: {0}")]
    WitnessInvalid(String),
    #[error("precondition failed: {0}")]
    PreconditionFailed(String),
    #[error("maps do not form a retraction")]
    NotARetraction,
    #[error("carriers do not form an increasing chain: {0}")]
    NotAChain(String),
    #[error("mapping {index} does not extend its predecessor at `{element}`")]
    NotExtending { index: usize, element: String },
    #[error("not an ideal: {0}")]
    NotAnIdeal(String),
    #[error(transparent)]
    Poset(#[from] PosetError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

/// Strict size bound `k` on the sets `f(a)`: `|f(a)| < k`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Bound {
    Finite(usize),
    Infinite,
}

impl Bound {
    pub fn admits(self, size: usize) -> bool {
        match self {
            Bound::Finite(k) => size < k,
            Bound::Infinite => true,
        }
    }

    /// The least bound admitting sets of size `size`.
    pub fn above(size: usize) -> Bound {
        Bound::Finite(size + 1)
    }
}

impl fmt::Display for Bound {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Bound::Finite(k) => write!(f, "{k}"),
            Bound::Infinite => f.write_str("inf"),
        }
    }
}

impl std::str::FromStr for Bound {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "inf" | "∞" => Ok(Bound::Infinite),
            _ => s
                .parse::<usize>()
                .map(Bound::Finite)
                .map_err(|_| format!("bad bound `{s}`")),
        }
    }
}

/// An order relation over some element type.
pub trait Order {
    type Elem: Clone + Eq + Ord + fmt::Debug;

    fn le(&self, a: &Self::Elem, b: &Self::Elem) -> bool;
}

/// An order whose elements can be listed.
pub trait FiniteOrder: Order {
    /// All elements in ascending `Ord` order.
    fn elements(&self) -> Vec<Self::Elem>;
}

impl Order for Poset {
    type Elem = usize;

    fn le(&self, a: &usize, b: &usize) -> bool {
        Poset::le(self, *a, *b)
    }
}

impl FiniteOrder for Poset {
    fn elements(&self) -> Vec<usize> {
        (0..self.len()).collect()
    }
}

/// A mapping `b ↦ f(b)` given by membership and a witness oracle.
pub trait FnOracle<O: Order> {
    /// `c ∈ f(b)`
    fn contains(&self, order: &O, b: &O::Elem, c: &O::Elem) -> bool;

    /// A proposed `c ∈ f(a) ∩ f(b)` with `a <= c <= b`, for `a <= b`.
    fn witness(&self, order: &O, a: &O::Elem, b: &O::Elem) -> Option<O::Elem>;

    /// `f(b)` listed explicitly, when it is small enough to list.
    fn members(&self, _order: &O, _b: &O::Elem) -> Option<Vec<O::Elem>> {
        None
    }

    /// Elements whose generated subalgebra contains `f(b)`; by default the
    /// members themselves.
    fn spanning_set(&self, order: &O, b: &O::Elem) -> Option<Vec<O::Elem>> {
        self.members(order, b)
    }
}

/// Outcome of checking (*).
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum StarVerdict<E> {
    Ok,
    Counterexample(E, E),
}

impl<E> StarVerdict<E> {
    pub fn is_ok(&self) -> bool {
        matches!(self, StarVerdict::Ok)
    }
}

/// Checks (*) for a single pair; pairs with `a ≰ b` hold vacuously.
pub fn check_pair<O: Order, M: FnOracle<O>>(order: &O, f: &M, a: &O::Elem, b: &O::Elem) -> bool {
    if !order.le(a, b) {
        return true;
    }
    match f.witness(order, a, b) {
        Some(c) => {
            order.le(a, &c)
                && order.le(&c, b)
                && f.contains(order, a, &c)
                && f.contains(order, b, &c)
        }
        None => false,
    }
}

/// Checks (*) over every pair of a finite order, returning the first failing
/// pair in lexicographic order.
pub fn check_star<O: FiniteOrder, M: FnOracle<O>>(order: &O, f: &M) -> StarVerdict<O::Elem> {
    let elems = order.elements();
    for a in &elems {
        for b in &elems {
            if !check_pair(order, f, a, b) {
                return StarVerdict::Counterexample(a.clone(), b.clone());
            }
        }
    }
    StarVerdict::Ok
}

/// An extensional mapping: an explicit finite set `f(a)` for every element of
/// a finite poset.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FnMapping {
    carrier: Poset,
    bound: Bound,
    sets: Vec<Subset>,
}

impl FnMapping {
    /// Validates that every `f(a)` lies in the carrier and respects `bound`.
    /// Self-membership `a ∈ f(a)` is a consequence of (*) and is reported by
    /// [`verify_star`] rather than rejected here.
    pub fn new(carrier: Poset, sets: Vec<Subset>, bound: Bound) -> Result<Self, MappingError> {
        if sets.len() != carrier.len() {
            return Err(MappingError::CarrierMismatch);
        }
        for (a, s) in sets.iter().enumerate() {
            if s.iter().any(|&c| c >= carrier.len()) {
                return Err(MappingError::NotASubset {
                    element: carrier.id(a).to_string(),
                });
            }
            if !bound.admits(s.len()) {
                return Err(MappingError::BoundViolated {
                    element: carrier.id(a).to_string(),
                    size: s.len(),
                    bound,
                });
            }
        }
        Ok(FnMapping {
            carrier,
            bound,
            sets,
        })
    }

    /// Builds a mapping with the tightest bound that admits its sets.
    pub fn tight(carrier: Poset, sets: Vec<Subset>) -> Result<Self, MappingError> {
        let max = sets.iter().map(Subset::len).max().unwrap_or(0);
        FnMapping::new(carrier, sets, Bound::above(max))
    }

    /// `f(a)` = the whole carrier, for every `a`.
    pub fn full(carrier: Poset) -> Self {
        let all = carrier.all();
        let sets = vec![all; carrier.len()];
        FnMapping {
            bound: Bound::above(carrier.len()),
            carrier,
            sets,
        }
    }

    /// Builds a mapping from `(element id, value ids)` rows. Elements without
    /// a row get the empty set.
    pub fn from_ids<S: AsRef<str>>(
        carrier: Poset,
        rows: &[(S, Vec<S>)],
        bound: Bound,
    ) -> Result<Self, MappingError> {
        let mut sets = vec![Subset::new(); carrier.len()];
        for (a, vals) in rows {
            let i = carrier.index_of(a.as_ref())?;
            sets[i] = carrier.subset_of(vals)?;
        }
        FnMapping::new(carrier, sets, bound)
    }

    pub fn carrier(&self) -> &Poset {
        &self.carrier
    }

    pub fn bound(&self) -> Bound {
        self.bound
    }

    pub fn get(&self, a: usize) -> &Subset {
        &self.sets[a]
    }

    pub fn sets(&self) -> &[Subset] {
        &self.sets
    }

    pub fn max_size(&self) -> usize {
        self.sets.iter().map(Subset::len).max().unwrap_or(0)
    }

    pub fn total_size(&self) -> usize {
        self.sets.iter().map(Subset::len).sum()
    }

    /// The same sets under a different bound.
    pub fn with_bound(self, bound: Bound) -> Result<Self, MappingError> {
        FnMapping::new(self.carrier, self.sets, bound)
    }

    /// `f(a)` as ids.
    pub fn ids_of(&self, a: usize) -> Vec<&str> {
        self.carrier.ids_of(&self.sets[a]).collect()
    }

    /// Whether `C` is closed under the mapping: `f(c) ⊆ C` for `c ∈ C`.
    pub fn is_closed(&self, c: &Subset) -> bool {
        c.iter().all(|&x| self.sets[x].is_subset(c))
    }

    /// Least superset of `start` closed under the mapping.
    pub fn closure(&self, start: &Subset) -> Subset {
        let mut out = start.clone();
        let mut stack: Vec<usize> = start.iter().copied().collect();
        while let Some(x) = stack.pop() {
            for &y in &self.sets[x] {
                if out.insert(y) {
                    stack.push(y);
                }
            }
        }
        out
    }
}

impl FnOracle<Poset> for FnMapping {
    fn contains(&self, _order: &Poset, b: &usize, c: &usize) -> bool {
        self.sets[*b].contains(c)
    }

    fn witness(&self, order: &Poset, a: &usize, b: &usize) -> Option<usize> {
        self.sets[*a]
            .intersection(&self.sets[*b])
            .copied()
            .find(|&c| order.le(*a, c) && order.le(c, *b))
    }

    fn members(&self, _order: &Poset, b: &usize) -> Option<Vec<usize>> {
        Some(self.sets[*b].iter().copied().collect())
    }
}

impl Order for FiniteBa {
    type Elem = u64;

    fn le(&self, a: &u64, b: &u64) -> bool {
        a & !b == 0
    }
}

/// A mapping on [`FiniteBa::poset`] read on masks.
impl FnOracle<FiniteBa> for FnMapping {
    fn contains(&self, _ba: &FiniteBa, b: &u64, c: &u64) -> bool {
        self.sets[*b as usize].contains(&(*c as usize))
    }

    fn witness(&self, ba: &FiniteBa, a: &u64, b: &u64) -> Option<u64> {
        self.sets[*a as usize]
            .intersection(&self.sets[*b as usize])
            .map(|&c| c as u64)
            .find(|c| Order::le(ba, a, c) && Order::le(ba, c, b))
    }

    fn members(&self, _ba: &FiniteBa, b: &u64) -> Option<Vec<u64>> {
        Some(self.sets[*b as usize].iter().map(|&c| c as u64).collect())
    }
}

/// The mapping `f(b) = whole carrier`, without listing it.
#[derive(Debug, Clone, Copy, Default)]
pub struct FullMapping;

impl<O: Order> FnOracle<O> for FullMapping {
    fn contains(&self, _order: &O, _b: &O::Elem, _c: &O::Elem) -> bool {
        true
    }

    fn witness(&self, _order: &O, a: &O::Elem, _b: &O::Elem) -> Option<O::Elem> {
        Some(a.clone())
    }
}

/// Checks (*) for an extensional mapping on `carrier`.
pub fn verify_star(carrier: &Poset, f: &FnMapping) -> Result<StarVerdict<usize>, MappingError> {
    if f.carrier() != carrier {
        return Err(MappingError::CarrierMismatch);
    }
    Ok(check_star(carrier, f))
}

pub(crate) fn require_star(f: &FnMapping, what: &str) -> Result<(), MappingError> {
    match check_star(f.carrier(), f) {
        StarVerdict::Ok => Ok(()),
        StarVerdict::Counterexample(a, b) => Err(MappingError::PreconditionFailed(format!(
            "{what} fails (*) at ({}, {})",
            f.carrier().id(a),
            f.carrier().id(b)
        ))),
    }
}

/// Per-element cofinal and coinitial families for a subset `A` of a poset
/// `B`: `U(b)` is cofinal in `A↾b` and `V(b)` coinitial in `A↿b`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WitnessFamily {
    carrier: Poset,
    subset: Subset,
    lower: Vec<Subset>,
    upper: Vec<Subset>,
}

impl WitnessFamily {
    pub fn new(
        carrier: Poset,
        subset: Subset,
        lower: Vec<Subset>,
        upper: Vec<Subset>,
    ) -> Result<Self, MappingError> {
        let n = carrier.len();
        if lower.len() != n || upper.len() != n {
            return Err(MappingError::WitnessInvalid(format!(
                "expected {n} entries per side"
            )));
        }
        for b in 0..n {
            let down = carrier.lower_cone(&subset, b)?;
            let up = carrier.upper_cone(&subset, b)?;
            if !lower[b].is_subset(&down) || !carrier.is_cofinal(&lower[b], &down)? {
                return Err(MappingError::WitnessInvalid(format!(
                    "U({}) is not a cofinal subset of the lower cone",
                    carrier.id(b)
                )));
            }
            if !upper[b].is_subset(&up) || !carrier.is_coinitial(&upper[b], &up)? {
                return Err(MappingError::WitnessInvalid(format!(
                    "V({}) is not a coinitial subset of the upper cone",
                    carrier.id(b)
                )));
            }
        }
        Ok(WitnessFamily {
            carrier,
            subset,
            lower,
            upper,
        })
    }

    /// The smallest families: maximal elements of `A↾b` and minimal
    /// elements of `A↿b`.
    pub fn canonical(carrier: Poset, subset: Subset) -> Result<Self, MappingError> {
        let mut lower = Vec::with_capacity(carrier.len());
        let mut upper = Vec::with_capacity(carrier.len());
        for b in 0..carrier.len() {
            lower.push(carrier.maximal(&carrier.lower_cone(&subset, b)?));
            upper.push(carrier.minimal(&carrier.upper_cone(&subset, b)?));
        }
        Ok(WitnessFamily {
            carrier,
            subset,
            lower,
            upper,
        })
    }

    pub fn carrier(&self) -> &Poset {
        &self.carrier
    }

    pub fn subset(&self) -> &Subset {
        &self.subset
    }

    /// `U(b)`
    pub fn lower(&self, b: usize) -> &Subset {
        &self.lower[b]
    }

    /// `V(b)`
    pub fn upper(&self, b: usize) -> &Subset {
        &self.upper[b]
    }

    /// Largest `|U(b)|` or `|V(b)|`.
    pub fn width(&self) -> usize {
        self.lower
            .iter()
            .chain(&self.upper)
            .map(Subset::len)
            .max()
            .unwrap_or(0)
    }
}
