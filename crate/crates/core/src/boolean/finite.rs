//! Finite Boolean algebras as power sets of a set of atoms. Elements are
//! bit masks over the atoms.

use std::collections::BTreeSet;

use super::{AlgebraError, BooleanAlgebra, FreeElement};
use crate::poset::{Poset, Subset};

/// Largest atom count for which the whole algebra may be listed as a poset.
pub const MAX_ENUMERABLE_ATOMS: usize = 8;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FiniteBa {
    atoms: usize,
}

impl FiniteBa {
    pub fn new(atoms: usize) -> Result<Self, AlgebraError> {
        if atoms == 0 || atoms > 63 {
            return Err(AlgebraError::ArityTooLarge(atoms));
        }
        Ok(FiniteBa { atoms })
    }

    /// The free algebra on `n` generators as the power set of its `2^n`
    /// assignments.
    pub fn free(n: usize) -> Result<Self, AlgebraError> {
        if n > 5 {
            return Err(AlgebraError::ArityTooLarge(n));
        }
        FiniteBa::new(1 << n)
    }

    /// The mask of generator `x_i` in [`FiniteBa::free`].
    pub fn free_generator(n: usize, i: usize) -> Result<u64, AlgebraError> {
        Ok(FreeElement::var(n, i)?.words()[0])
    }

    pub fn atoms(&self) -> usize {
        self.atoms
    }

    pub fn size(&self) -> usize {
        1 << self.atoms
    }

    pub fn full(&self) -> u64 {
        if self.atoms == 64 {
            u64::MAX
        } else {
            (1u64 << self.atoms) - 1
        }
    }

    pub fn contains(&self, e: u64) -> bool {
        e & !self.full() == 0
    }

    /// Element id: the atom mask in binary, most significant atom first, so
    /// that id order and numeric order agree.
    pub fn id(&self, e: u64) -> String {
        format!("{:0width$b}", e, width = self.atoms)
    }

    pub fn parse_id(&self, s: &str) -> Result<u64, AlgebraError> {
        if s.len() != self.atoms || !s.bytes().all(|c| c == b'0' || c == b'1') {
            return Err(AlgebraError::NotAnElement(s.to_string()));
        }
        u64::from_str_radix(s, 2).map_err(|_| AlgebraError::NotAnElement(s.to_string()))
    }

    /// The algebra as a poset; element index `i` is the mask `i`.
    pub fn poset(&self) -> Result<Poset, AlgebraError> {
        if self.atoms > MAX_ENUMERABLE_ATOMS {
            return Err(AlgebraError::SizeLimitExceeded {
                size: 1u128 << self.atoms,
                cap: 1 << MAX_ENUMERABLE_ATOMS,
            });
        }
        let ids = (0..self.size() as u64).map(|e| self.id(e)).collect();
        Ok(Poset::from_relation(ids, |a, b| a & !b == 0).expect("inclusion order"))
    }

    /// Masks of a subset of poset indices.
    pub fn masks(subset: &Subset) -> BTreeSet<u64> {
        subset.iter().map(|&i| i as u64).collect()
    }

    pub fn indices(masks: &BTreeSet<u64>) -> Subset {
        masks.iter().map(|&m| m as usize).collect()
    }

    /// Every subalgebra, each given by its member masks. Subalgebras of a
    /// finite power set correspond to partitions of the atoms.
    pub fn all_subalgebras(&self) -> Vec<BTreeSet<u64>> {
        let mut out = Vec::new();
        let mut blocks: Vec<u64> = Vec::new();
        partitions(self.atoms, 0, &mut blocks, &mut |blocks| {
            let mut members = BTreeSet::new();
            for mask in 0u64..(1 << blocks.len()) {
                let e = blocks
                    .iter()
                    .enumerate()
                    .filter(|(k, _)| mask >> k & 1 == 1)
                    .fold(0, |acc, (_, b)| acc | b);
                members.insert(e);
            }
            out.push(members);
        });
        out
    }
}

fn partitions(n: usize, next: usize, blocks: &mut Vec<u64>, emit: &mut impl FnMut(&[u64])) {
    if next == n {
        emit(blocks);
        return;
    }
    for k in 0..blocks.len() {
        blocks[k] |= 1 << next;
        partitions(n, next + 1, blocks, emit);
        blocks[k] &= !(1 << next);
    }
    blocks.push(1 << next);
    partitions(n, next + 1, blocks, emit);
    blocks.pop();
}

impl BooleanAlgebra for FiniteBa {
    type Elem = u64;

    fn zero(&self) -> u64 {
        0
    }

    fn one(&self) -> u64 {
        self.full()
    }

    fn meet(&self, a: &u64, b: &u64) -> u64 {
        a & b
    }

    fn join(&self, a: &u64, b: &u64) -> u64 {
        a | b
    }

    fn complement(&self, a: &u64) -> u64 {
        !a & self.full()
    }

    fn le(&self, a: &u64, b: &u64) -> bool {
        a & !b == 0
    }

    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }
}
