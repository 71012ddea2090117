//! `k`-substructures and relatively complete substructures, with explicit
//! witnesses.
//!
//! `A ⊆ B` is a `k`-substructure when every `b ∈ B` has a cofinal subset
//! `U(b)` of `A↾b = {a ∈ A : a <= b}` and a coinitial subset `V(b)` of
//! `A↿b = {a ∈ A : b <= a}`, both of size below `k`.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use thiserror::Error;

use crate::boolean::{is_closed, AlgebraError, FiniteBa};
use crate::mapping::{verify_star, Bound, FnMapping, MappingError, StarVerdict, WitnessFamily};
use crate::poset::{Poset, PosetError, Subset};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SubstructureError {
    #[error("not a substructure: {0}")]
    NotASubstructure(String),
    #[error("set is not closed: {0}")]
    NotClosed(String),
    #[error("precondition failed: {0}")]
    PreconditionFailed(String),
    #[error("not an increasing chain: {0}")]
    NotAChain(String),
    #[error(transparent)]
    Mapping(#[from] MappingError),
    #[error(transparent)]
    Poset(#[from] PosetError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

/// A poset, optionally carrying the operations of a finite Boolean algebra.
/// For an algebra, poset index `i` is the element with mask `i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Structure {
    poset: Poset,
    algebra: Option<FiniteBa>,
}

impl Structure {
    pub fn poset(poset: Poset) -> Self {
        Structure {
            poset,
            algebra: None,
        }
    }

    pub fn algebra(ba: FiniteBa) -> Result<Self, SubstructureError> {
        Ok(Structure {
            poset: ba.poset()?,
            algebra: Some(ba),
        })
    }

    pub fn order(&self) -> &Poset {
        &self.poset
    }

    pub fn ba(&self) -> Option<&FiniteBa> {
        self.algebra.as_ref()
    }

    /// Checks that `a` lies in the carrier and, for an algebra, is a
    /// subalgebra.
    pub fn check_substructure(&self, a: &Subset) -> Result<(), SubstructureError> {
        if let Some(&x) = a.iter().find(|&&x| x >= self.poset.len()) {
            return Err(SubstructureError::NotASubstructure(format!(
                "index {x} outside the carrier"
            )));
        }
        if let Some(ba) = &self.algebra {
            if !is_closed(ba, &FiniteBa::masks(a)) {
                return Err(SubstructureError::NotASubstructure(
                    "not closed under the algebra operations".into(),
                ));
            }
        }
        Ok(())
    }
}

/// A witness family whose sets all have size below `bound`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubstructureWitness {
    family: WitnessFamily,
    bound: Bound,
}

impl SubstructureWitness {
    pub fn new(family: WitnessFamily, bound: Bound) -> Result<Self, SubstructureError> {
        if !bound.admits(family.width()) {
            return Err(SubstructureError::Mapping(MappingError::WitnessInvalid(
                format!("width {} violates the bound {bound}", family.width()),
            )));
        }
        Ok(SubstructureWitness { family, bound })
    }

    pub fn family(&self) -> &WitnessFamily {
        &self.family
    }

    pub fn bound(&self) -> Bound {
        self.bound
    }

    pub fn carrier(&self) -> &Poset {
        self.family.carrier()
    }

    pub fn subset(&self) -> &Subset {
        self.family.subset()
    }

    /// The same witness read at a weaker bound `k' >= k`.
    pub fn weaken(&self, bound: Bound) -> Result<Self, SubstructureError> {
        if bound < self.bound {
            return Err(SubstructureError::PreconditionFailed(format!(
                "{bound} is below {}",
                self.bound
            )));
        }
        Ok(SubstructureWitness {
            family: self.family.clone(),
            bound,
        })
    }

    /// One `wit <b> U: <ids> V: <ids>` line per element.
    pub fn report(&self) -> String {
        let p = self.carrier();
        let ids = |s: &Subset| p.ids_of(s).collect::<Vec<_>>().join(" ");
        let mut out = String::new();
        for b in 0..p.len() {
            let _ = writeln!(
                out,
                "wit {} U: {} V: {}",
                p.id(b),
                ids(self.family.lower(b)),
                ids(self.family.upper(b))
            );
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SubstructureVerdict {
    Witness(SubstructureWitness),
    /// The first element whose canonical families reach the bound.
    Refutation(usize),
}

/// Decides `A ≤_k B` using the smallest possible families.
pub fn k_substructure_witness(
    b: &Structure,
    a: &Subset,
    k: Bound,
) -> Result<SubstructureVerdict, SubstructureError> {
    b.check_substructure(a)?;
    let family = WitnessFamily::canonical(b.order().clone(), a.clone())?;
    let bad = (0..b.order().len())
        .find(|&x| !k.admits(family.lower(x).len()) || !k.admits(family.upper(x).len()));
    Ok(match bad {
        Some(x) => SubstructureVerdict::Refutation(x),
        None => SubstructureVerdict::Witness(SubstructureWitness { family, bound: k }),
    })
}

/// The maximum of `A↾b`, if it exists.
pub fn lower_projection(b: &Poset, a: &Subset, x: usize) -> Result<Option<usize>, PosetError> {
    Ok(b.maximum(&b.lower_cone(a, x)?))
}

/// The minimum of `A↿b`, if it exists.
pub fn upper_projection(b: &Poset, a: &Subset, x: usize) -> Result<Option<usize>, PosetError> {
    Ok(b.minimum(&b.upper_cone(a, x)?))
}

/// Whether every element has both projections onto `A`.
pub fn is_rel_complete(b: &Poset, a: &Subset) -> Result<bool, PosetError> {
    for x in 0..b.len() {
        if lower_projection(b, a, x)?.is_none() || upper_projection(b, a, x)?.is_none() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// For `C` closed under an FN mapping `g`, the families
/// `U(b) = g(b) ∩ C↾b` and `V(b) = g(b) ∩ C↿b` witness `C ≤_k B`.
pub fn closed_set_is_substructure(
    b: &Structure,
    g: &FnMapping,
    c: &Subset,
    k: Bound,
) -> Result<SubstructureWitness, SubstructureError> {
    let p = b.order();
    if g.carrier() != p {
        return Err(SubstructureError::PreconditionFailed(
            "mapping is defined on a different carrier".into(),
        ));
    }
    if !k.admits(g.max_size()) {
        return Err(SubstructureError::PreconditionFailed(format!(
            "mapping has sets of size {} against the bound {k}",
            g.max_size()
        )));
    }
    if let StarVerdict::Counterexample(x, y) = verify_star(p, g)? {
        return Err(SubstructureError::PreconditionFailed(format!(
            "mapping fails (*) at ({}, {})",
            p.id(x),
            p.id(y)
        )));
    }
    if let Some(&x) = c.iter().find(|&&x| !g.get(x).is_subset(c)) {
        return Err(SubstructureError::NotClosed(format!(
            "f({}) leaves the set",
            p.id(x)
        )));
    }
    b.check_substructure(c).map_err(|e| match e {
        SubstructureError::NotASubstructure(m) => SubstructureError::NotClosed(m),
        e => e,
    })?;
    let mut lower = Vec::with_capacity(p.len());
    let mut upper = Vec::with_capacity(p.len());
    for x in 0..p.len() {
        let gx = g.get(x);
        lower.push(gx.intersection(&p.lower_cone(c, x)?).copied().collect());
        upper.push(gx.intersection(&p.upper_cone(c, x)?).copied().collect());
    }
    let family = WitnessFamily::new(p.clone(), c.clone(), lower, upper)?;
    SubstructureWitness::new(family, k)
}

/// Bound for the union of `m` substructures each below `k`: `m(k-1)+1`.
pub fn union_bound(m: usize, k: Bound) -> Bound {
    match k {
        Bound::Finite(k) => Bound::Finite(m * k.saturating_sub(1) + 1),
        Bound::Infinite => Bound::Infinite,
    }
}

/// Bound for composing `A ≤_k B ≤_k C`: `(k-1)^2+1`.
pub fn composition_bound(k: Bound) -> Bound {
    match k {
        Bound::Finite(k) => Bound::Finite(k.saturating_sub(1).pow(2) + 1),
        Bound::Infinite => Bound::Infinite,
    }
}

/// Witness for the union of an increasing chain of substructures of `B`,
/// with `U(b) = ⋃ U_α(b)` and `V(b) = ⋃ V_α(b)`.
///
/// When `B` is an algebra and every member of the chain is relatively
/// complete, the union is relatively complete too and the returned family
/// holds the two projections.
pub fn chain_union_bound(
    b: &Structure,
    chain: &[SubstructureWitness],
) -> Result<SubstructureWitness, SubstructureError> {
    let first = chain
        .first()
        .ok_or_else(|| SubstructureError::NotAChain("empty chain".into()))?;
    let p = b.order();
    let k = first.bound();
    for (i, w) in chain.iter().enumerate() {
        if w.carrier() != p {
            return Err(SubstructureError::NotAChain(format!(
                "witness {i} lives on a different carrier"
            )));
        }
        if w.bound() != k {
            return Err(SubstructureError::NotAChain(format!(
                "witness {i} has bound {} instead of {k}",
                w.bound()
            )));
        }
    }
    if let Some(i) = chain
        .windows(2)
        .position(|w| !w[0].subset().is_subset(w[1].subset()))
    {
        return Err(SubstructureError::NotAChain(format!(
            "set {i} is not contained in set {}",
            i + 1
        )));
    }
    let union: Subset = chain
        .iter()
        .flat_map(|w| w.subset().iter().copied())
        .collect();
    let bound = union_bound(chain.len(), k);
    if b.ba().is_some() {
        let mut all_rc = true;
        for w in chain {
            all_rc &= is_rel_complete(p, w.subset())?;
        }
        if all_rc && is_rel_complete(p, &union)? {
            let family = WitnessFamily::canonical(p.clone(), union)?;
            return SubstructureWitness::new(family, bound.min(Bound::Finite(2)));
        }
    }
    let mut lower = vec![Subset::new(); p.len()];
    let mut upper = vec![Subset::new(); p.len()];
    for w in chain {
        for x in 0..p.len() {
            lower[x].extend(w.family().lower(x));
            upper[x].extend(w.family().upper(x));
        }
    }
    let family = WitnessFamily::new(p.clone(), union, lower, upper)?;
    SubstructureWitness::new(family, bound)
}

/// From `A ≤_k C` and `A ⊆ B ⊆ C`, a witness for `A ≤_k B` on the sub-poset
/// induced by `B`.
pub fn restrict_witness(
    w: &SubstructureWitness,
    b: &Subset,
) -> Result<SubstructureWitness, SubstructureError> {
    if !w.subset().is_subset(b) {
        return Err(SubstructureError::PreconditionFailed(
            "A is not contained in B".into(),
        ));
    }
    let c = w.carrier();
    let (sub, embed) = c.induced(b)?;
    let back = reindex(&embed, c.len());
    let map = |s: &Subset| -> Subset { s.iter().map(|&x| back[x].expect("A ⊆ B")).collect() };
    let lower = embed.iter().map(|&x| map(w.family().lower(x))).collect();
    let upper = embed.iter().map(|&x| map(w.family().upper(x))).collect();
    let family = WitnessFamily::new(sub, map(w.subset()), lower, upper)?;
    SubstructureWitness::new(family, w.bound())
}

/// From `A ≤_k B` (on the sub-poset induced by `B`) and `B ≤_k C`, a witness
/// for `A ≤ C` at [`composition_bound`]: `U(c) = ⋃ {U_A(u) : u ∈ U_B(c)}`.
pub fn compose_witnesses(
    ab: &SubstructureWitness,
    bc: &SubstructureWitness,
) -> Result<SubstructureWitness, SubstructureError> {
    let c = bc.carrier();
    let (sub, embed) = c.induced(bc.subset())?;
    if ab.carrier() != &sub {
        return Err(SubstructureError::PreconditionFailed(
            "inner witness does not live on B".into(),
        ));
    }
    let back = reindex(&embed, c.len());
    let lift = |s: &Subset| -> BTreeSet<usize> { s.iter().map(|&x| embed[x]).collect() };
    // side: false for the lower families, true for the upper ones
    let through = |x: usize, side: bool| -> Subset {
        let pick = |w: &SubstructureWitness, y: usize| -> Subset {
            if side {
                w.family().upper(y).clone()
            } else {
                w.family().lower(y).clone()
            }
        };
        pick(bc, x)
            .iter()
            .flat_map(|&u| lift(&pick(ab, back[u].expect("U_B(c) ⊆ B"))))
            .collect()
    };
    let lower = (0..c.len()).map(|x| through(x, false)).collect();
    let upper = (0..c.len()).map(|x| through(x, true)).collect();
    let k = ab.bound().max(bc.bound());
    let family = WitnessFamily::new(c.clone(), lift(ab.subset()), lower, upper)?;
    SubstructureWitness::new(family, composition_bound(k))
}

fn reindex(embed: &[usize], n: usize) -> Vec<Option<usize>> {
    let mut back = vec![None; n];
    for (i, &x) in embed.iter().enumerate() {
        back[x] = Some(i);
    }
    back
}
