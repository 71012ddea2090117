//! FN mappings across the quotient of a finite Boolean algebra by an ideal.
//!
//! Every ideal of a finite algebra is principal, generated by its largest
//! element `i`, and the quotient is the power set of the atoms outside `i`.

use std::collections::BTreeSet;

use super::{FnMapping, MappingError};
use crate::boolean::FiniteBa;
use crate::poset::Subset;

/// The quotient map of a finite algebra by a proper ideal.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Quotient {
    ambient: FiniteBa,
    top: u64,
    target: FiniteBa,
}

impl Quotient {
    /// Validates `ideal` (given by its member masks) and builds the quotient.
    pub fn new(ambient: FiniteBa, ideal: &BTreeSet<u64>) -> Result<Self, MappingError> {
        if let Some(&x) = ideal.iter().find(|&&x| !ambient.contains(x)) {
            return Err(MappingError::NotAnIdeal(format!(
                "{x:#b} is not an element"
            )));
        }
        if !ideal.contains(&0) {
            return Err(MappingError::NotAnIdeal("missing 0".into()));
        }
        let top = ideal.iter().fold(0, |acc, &x| acc | x);
        if top == ambient.full() {
            return Err(MappingError::NotAnIdeal("ideal is not proper".into()));
        }
        if !ideal.contains(&top) {
            return Err(MappingError::NotAnIdeal("not closed under joins".into()));
        }
        // the members must be exactly the elements below `top`
        let below = 1usize << top.count_ones();
        if ideal.len() != below {
            return Err(MappingError::NotAnIdeal("not downward closed".into()));
        }
        let kept = ambient.atoms() - top.count_ones() as usize;
        let target = FiniteBa::new(kept)?;
        Ok(Quotient {
            ambient,
            top,
            target,
        })
    }

    /// The principal ideal below `top`.
    pub fn principal(ambient: FiniteBa, top: u64) -> Result<Self, MappingError> {
        let mut ideal = BTreeSet::new();
        let mut s = top;
        loop {
            ideal.insert(s);
            if s == 0 {
                break;
            }
            s = (s - 1) & top;
        }
        Quotient::new(ambient, &ideal)
    }

    pub fn ambient(&self) -> &FiniteBa {
        &self.ambient
    }

    pub fn target(&self) -> &FiniteBa {
        &self.target
    }

    /// The largest element of the ideal.
    pub fn top(&self) -> u64 {
        self.top
    }

    /// `[x]`: the atoms of `x` outside the ideal, packed.
    pub fn class(&self, x: u64) -> u64 {
        let mut out = 0;
        let mut k = 0;
        for atom in 0..self.ambient.atoms() {
            if self.top >> atom & 1 == 0 {
                out |= (x >> atom & 1) << k;
                k += 1;
            }
        }
        out
    }

    /// The least representative of a class.
    pub fn section(&self, y: u64) -> u64 {
        let mut out = 0;
        let mut k = 0;
        for atom in 0..self.ambient.atoms() {
            if self.top >> atom & 1 == 0 {
                out |= (y >> k & 1) << atom;
                k += 1;
            }
        }
        out
    }

    /// All representatives of a class.
    pub fn members(&self, y: u64) -> Vec<u64> {
        let base = self.section(y);
        let mut out = Vec::with_capacity(1 << self.top.count_ones());
        let mut s = self.top;
        loop {
            out.push(base | s);
            if s == 0 {
                break;
            }
            s = (s - 1) & self.top;
        }
        out.sort_unstable();
        out
    }
}

/// Pushes an FN mapping `g` on `B` to `B/I`:
/// `g'([x]) = {[y] : y ∈ g(z), [z] = [x]}`.
pub fn quotient_push_mapping(q: &Quotient, g: &FnMapping) -> Result<FnMapping, MappingError> {
    let ambient = q.ambient().poset()?;
    if g.carrier() != &ambient {
        return Err(MappingError::CarrierMismatch);
    }
    let target = q.target().poset()?;
    let mut sets = vec![Subset::new(); target.len()];
    for z in 0..ambient.len() {
        let cls = q.class(z as u64) as usize;
        sets[cls].extend(g.get(z).iter().map(|&y| q.class(y as u64) as usize));
    }
    FnMapping::tight(target, sets)
}

/// Lifts an FN mapping `f` on `B/I` to `B`: `f'(x) = {z : [z] ∈ f([x])}`.
pub fn quotient_lift_mapping(q: &Quotient, f: &FnMapping) -> Result<FnMapping, MappingError> {
    let target = q.target().poset()?;
    if f.carrier() != &target {
        return Err(MappingError::CarrierMismatch);
    }
    let ambient = q.ambient().poset()?;
    let sets = (0..ambient.len())
        .map(|x| {
            f.get(q.class(x as u64) as usize)
                .iter()
                .flat_map(|&y| q.members(y as u64))
                .map(|z| z as usize)
                .collect()
        })
        .collect();
    FnMapping::tight(ambient, sets)
}
