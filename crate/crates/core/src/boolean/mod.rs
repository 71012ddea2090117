//! Boolean algebras: free algebras on finitely many generators, finite
//! power-set algebras, generated subalgebras and independence.

mod finite;
mod free;

use std::collections::BTreeSet;
use std::fmt::Debug;
use std::hash::Hash;

use thiserror::Error;

pub use finite::{FiniteBa, MAX_ENUMERABLE_ATOMS};
pub use free::{craig_interpolant, parse_element, FreeElement, MAX_ARITY};

/// Default cap on the number of members of a materialized subalgebra.
pub const DEFAULT_SUBALGEBRA_CAP: usize = 1 << 16;

/// Default cap on the size of a family tested for independence.
pub const DEFAULT_FAMILY_CAP: usize = 20;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("arity mismatch: {0} vs {1}")]
    ArityMismatch(usize, usize),
    #[error("arity {0} exceeds the supported maximum")]
    ArityTooLarge(usize),
    #[error("generator x{index} does not exist in arity {arity}")]
    UnknownGenerator { index: usize, arity: usize },
    #[error("bad truth table: {0}")]
    BadTable(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("lower element is not below the upper element")]
    NotBelow,
    #[error("subalgebra would have {size} members, above the cap of {cap}")]
    SizeLimitExceeded { size: u128, cap: usize },
    #[error("family of {size} elements exceeds the cap of {cap}")]
    FamilyTooLarge { size: usize, cap: usize },
    #[error("set is not closed under the Boolean operations: {0}")]
    NotClosed(String),
    #[error("element outside the algebra: {0}")]
    NotAnElement(String),
}

/// The Boolean operations of a concrete algebra.
pub trait BooleanAlgebra {
    type Elem: Clone + Eq + Ord + Hash + Debug;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn meet(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn join(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn complement(&self, a: &Self::Elem) -> Self::Elem;

    fn le(&self, a: &Self::Elem, b: &Self::Elem) -> bool {
        self.meet(a, b) == *a
    }

    fn is_zero(&self, a: &Self::Elem) -> bool {
        *a == self.zero()
    }
}

/// The free algebra on `arity` generators, with [`FreeElement`] members.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FreeAlgebra {
    pub arity: usize,
}

impl FreeAlgebra {
    pub fn new(arity: usize) -> Result<Self, AlgebraError> {
        if arity > MAX_ARITY {
            return Err(AlgebraError::ArityTooLarge(arity));
        }
        Ok(FreeAlgebra { arity })
    }

    pub fn var(&self, i: usize) -> Result<FreeElement, AlgebraError> {
        FreeElement::var(self.arity, i)
    }

    pub fn generators(&self) -> Vec<FreeElement> {
        (0..self.arity)
            .map(|i| FreeElement::var(self.arity, i).expect("index below arity"))
            .collect()
    }

    pub fn parse(&self, s: &str) -> Result<FreeElement, AlgebraError> {
        let e = parse_element(s, self.arity)?;
        if e.arity() != self.arity {
            return Err(AlgebraError::ArityMismatch(self.arity, e.arity()));
        }
        Ok(e)
    }
}

impl BooleanAlgebra for FreeAlgebra {
    type Elem = FreeElement;

    fn zero(&self) -> FreeElement {
        FreeElement::zero(self.arity).expect("arity checked at construction")
    }

    fn one(&self) -> FreeElement {
        FreeElement::one(self.arity).expect("arity checked at construction")
    }

    fn meet(&self, a: &FreeElement, b: &FreeElement) -> FreeElement {
        a.and_unchecked(b)
    }

    fn join(&self, a: &FreeElement, b: &FreeElement) -> FreeElement {
        a.or_unchecked(b)
    }

    fn complement(&self, a: &FreeElement) -> FreeElement {
        a.not()
    }

    fn le(&self, a: &FreeElement, b: &FreeElement) -> bool {
        a.le_unchecked(b)
    }

    fn is_zero(&self, a: &FreeElement) -> bool {
        a.is_zero()
    }
}

/// The atoms of the subalgebra generated by `gens`: the nonzero elementary
/// products, obtained by splitting the unit along each generator in turn.
pub fn generated_atoms<A: BooleanAlgebra>(alg: &A, gens: &[A::Elem]) -> Vec<A::Elem> {
    let mut atoms = vec![alg.one()];
    for g in gens {
        let ng = alg.complement(g);
        let mut next = Vec::with_capacity(atoms.len() * 2);
        for a in &atoms {
            for part in [alg.meet(a, g), alg.meet(a, &ng)] {
                if !alg.is_zero(&part) {
                    next.push(part);
                }
            }
        }
        atoms = next;
    }
    if atoms.iter().all(|a| alg.is_zero(a)) {
        // degenerate algebra, 0 = 1
        return Vec::new();
    }
    atoms.sort();
    atoms
}

/// Least superset of `gens ∪ {0, 1}` closed under meet, join and
/// complement, materialized as a sorted set.
pub fn generate<A: BooleanAlgebra>(
    alg: &A,
    gens: &[A::Elem],
    cap: usize,
) -> Result<BTreeSet<A::Elem>, AlgebraError> {
    let atoms = generated_atoms(alg, gens);
    let size: u128 = if atoms.len() >= 127 {
        u128::MAX
    } else {
        1u128 << atoms.len()
    };
    if size > cap as u128 {
        return Err(AlgebraError::SizeLimitExceeded { size, cap });
    }
    let mut members = BTreeSet::new();
    for mask in 0u64..(size as u64) {
        let mut e = alg.zero();
        for (k, atom) in atoms.iter().enumerate() {
            if mask >> k & 1 == 1 {
                e = alg.join(&e, atom);
            }
        }
        members.insert(e);
    }
    Ok(members)
}

/// Whether `set` contains 0 and 1 and is closed under the three operations.
pub fn is_closed<A: BooleanAlgebra>(alg: &A, set: &BTreeSet<A::Elem>) -> bool {
    set.contains(&alg.zero())
        && set.contains(&alg.one())
        && set.iter().all(|a| {
            set.contains(&alg.complement(a))
                && set
                    .iter()
                    .all(|b| set.contains(&alg.meet(a, b)) && set.contains(&alg.join(a, b)))
        })
}

/// `(b)^1 = b`, `(b)^0 = -b`.
pub fn signed<A: BooleanAlgebra>(alg: &A, b: &A::Elem, sign: bool) -> A::Elem {
    if sign {
        b.clone()
    } else {
        alg.complement(b)
    }
}

/// The elementary product over `family` with the given sign pattern.
pub fn elementary_product<A: BooleanAlgebra>(
    alg: &A,
    family: &[A::Elem],
    pattern: &[bool],
) -> A::Elem {
    family
        .iter()
        .zip(pattern)
        .fold(alg.one(), |acc, (b, &s)| alg.meet(&acc, &signed(alg, b, s)))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Independence {
    Independent,
    /// Sign pattern (`true` = the member itself) of a zero elementary product.
    Dependent {
        pattern: Vec<bool>,
    },
}

impl Independence {
    pub fn is_independent(&self) -> bool {
        matches!(self, Independence::Independent)
    }
}

/// Checks every elementary product over `family` for being nonzero.
///
/// Patterns are explored depth first with the positive sign first, so the
/// reported witness is the first zero product in that order (a zero prefix
/// is completed with positive signs).
pub fn independence<A: BooleanAlgebra>(
    alg: &A,
    family: &[A::Elem],
    cap: usize,
) -> Result<Independence, AlgebraError> {
    if family.len() > cap {
        return Err(AlgebraError::FamilyTooLarge {
            size: family.len(),
            cap,
        });
    }
    fn go<A: BooleanAlgebra>(
        alg: &A,
        family: &[A::Elem],
        acc: &A::Elem,
        pattern: &mut Vec<bool>,
    ) -> bool {
        if alg.is_zero(acc) {
            pattern.resize(family.len(), true);
            return false;
        }
        let depth = pattern.len();
        if depth == family.len() {
            return true;
        }
        for sign in [true, false] {
            pattern.push(sign);
            let next = alg.meet(acc, &signed(alg, &family[depth], sign));
            if !go(alg, family, &next, pattern) {
                return false;
            }
            pattern.pop();
        }
        true
    }
    let mut pattern = Vec::with_capacity(family.len());
    if go(alg, family, &alg.one(), &mut pattern) {
        Ok(Independence::Independent)
    } else {
        Ok(Independence::Dependent { pattern })
    }
}

/// A subalgebra of the free algebra on `arity` generators.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Subalgebra {
    arity: usize,
    members: BTreeSet<FreeElement>,
}

impl Subalgebra {
    /// Validates closure of an explicit member set.
    pub fn new(arity: usize, members: BTreeSet<FreeElement>) -> Result<Self, AlgebraError> {
        let alg = FreeAlgebra::new(arity)?;
        if let Some(e) = members.iter().find(|e| e.arity() != arity) {
            return Err(AlgebraError::ArityMismatch(arity, e.arity()));
        }
        if !is_closed(&alg, &members) {
            return Err(AlgebraError::NotClosed(format!(
                "{} members",
                members.len()
            )));
        }
        Ok(Subalgebra { arity, members })
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn members(&self) -> &BTreeSet<FreeElement> {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, e: &FreeElement) -> bool {
        self.members.contains(e)
    }
}

/// The subalgebra of the free algebra on `arity` generators generated by
/// `gens`.
pub fn generate_subalgebra(
    arity: usize,
    gens: &[FreeElement],
    cap: usize,
) -> Result<Subalgebra, AlgebraError> {
    let alg = FreeAlgebra::new(arity)?;
    if let Some(g) = gens.iter().find(|g| g.arity() != arity) {
        return Err(AlgebraError::ArityMismatch(arity, g.arity()));
    }
    let members = generate(&alg, gens, cap)?;
    Ok(Subalgebra { arity, members })
}

/// Independence test for free-algebra elements with the default cap.
pub fn is_independent(family: &[FreeElement]) -> Result<Independence, AlgebraError> {
    let Some(first) = family.first() else {
        return Ok(Independence::Independent);
    };
    if let Some(e) = family.iter().find(|e| e.arity() != first.arity()) {
        return Err(AlgebraError::ArityMismatch(first.arity(), e.arity()));
    }
    independence(
        &FreeAlgebra::new(first.arity())?,
        family,
        DEFAULT_FAMILY_CAP,
    )
}
