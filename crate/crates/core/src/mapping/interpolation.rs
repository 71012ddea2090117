//! The FN mapping of a free algebra: `f(b)` is the subalgebra generated by
//! the generators `b` depends on, and witnesses are Craig interpolants.

use super::{FiniteOrder, FnOracle, Order};
use crate::boolean::{craig_interpolant, generate, FreeAlgebra, FreeElement};

/// Supports up to this size have `f(b)` listed by [`FnOracle::members`].
const LISTABLE_SUPPORT: usize = 4;

impl Order for FreeAlgebra {
    type Elem = FreeElement;

    fn le(&self, a: &FreeElement, b: &FreeElement) -> bool {
        a.le_unchecked(b)
    }
}

impl FiniteOrder for FreeAlgebra {
    /// All `2^(2^n)` elements; only sensible for `n <= 3`.
    fn elements(&self) -> Vec<FreeElement> {
        assert!(self.arity <= 4, "free algebra too large to list");
        let rows = 1usize << self.arity;
        (0u64..1 << rows)
            .map(|t| FreeElement::from_words(self.arity, vec![t]).expect("table fits"))
            .collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct InterpolationMap {
    pub arity: usize,
}

/// The intensional FN mapping on the free algebra with `n` generators.
pub fn interpolation_fn_mapping(n: usize) -> InterpolationMap {
    InterpolationMap { arity: n }
}

impl FnOracle<FreeAlgebra> for InterpolationMap {
    fn contains(&self, _alg: &FreeAlgebra, b: &FreeElement, c: &FreeElement) -> bool {
        c.support().is_subset(&b.support())
    }

    fn witness(&self, _alg: &FreeAlgebra, a: &FreeElement, b: &FreeElement) -> Option<FreeElement> {
        craig_interpolant(a, b).ok()
    }

    fn members(&self, alg: &FreeAlgebra, b: &FreeElement) -> Option<Vec<FreeElement>> {
        let supp = b.support();
        if supp.len() > LISTABLE_SUPPORT {
            return None;
        }
        let gens: Vec<FreeElement> = supp
            .iter()
            .map(|&i| alg.var(i).expect("support within arity"))
            .collect();
        generate(alg, &gens, 1 << (1 << LISTABLE_SUPPORT))
            .ok()
            .map(|s| s.into_iter().collect())
    }

    /// The generators `b` depends on.
    fn spanning_set(&self, alg: &FreeAlgebra, b: &FreeElement) -> Option<Vec<FreeElement>> {
        b.support().into_iter().map(|i| alg.var(i).ok()).collect()
    }
}
