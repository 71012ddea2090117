//! Constructions moving FN mappings between structures.

use std::collections::BTreeSet;

use super::{require_star, FnMapping, MappingError, WitnessFamily};
use crate::poset::{check_retraction, OrderMap, Poset, Subset};

/// `f(b_α) = {b_β : β <= α}` for an enumeration `b_0, b_1, ...` of the
/// carrier.
pub fn enumeration_mapping(carrier: &Poset, order: &[usize]) -> Result<FnMapping, MappingError> {
    let n = carrier.len();
    if order.len() != n {
        return Err(MappingError::NotAnEnumeration(format!(
            "{} entries for {n} elements",
            order.len()
        )));
    }
    let mut seen = vec![false; n];
    for &x in order {
        if x >= n || std::mem::replace(&mut seen[x], true) {
            return Err(MappingError::NotAnEnumeration(format!(
                "element #{x} repeated or unknown"
            )));
        }
    }
    let mut sets = vec![Subset::new(); n];
    let mut prefix = Subset::new();
    for &x in order {
        prefix.insert(x);
        sets[x] = prefix.clone();
    }
    FnMapping::tight(carrier.clone(), sets)
}

/// Pulls an FN mapping `g` on `B` back to the subset `A`:
/// `f(a) = ⋃ {U(b) : b ∈ g(a)}`.
///
/// The result lives on the sub-poset induced by `A` and satisfies (*) when
/// `g` does.
pub fn restrict_mapping(
    b: &Poset,
    a: &Subset,
    g: &FnMapping,
    w: &WitnessFamily,
) -> Result<FnMapping, MappingError> {
    if g.carrier() != b {
        return Err(MappingError::CarrierMismatch);
    }
    if w.carrier() != b || w.subset() != a {
        return Err(MappingError::WitnessInvalid(
            "family was built for a different pair of structures".into(),
        ));
    }
    let (sub, embed) = b.induced(a)?;
    let back = inverse(&embed, b.len());
    let sets = embed
        .iter()
        .map(|&x| {
            g.get(x)
                .iter()
                .flat_map(|&y| w.lower(y).iter())
                .map(|&u| back[u].expect("U(b) lies inside A"))
                .collect()
        })
        .collect();
    FnMapping::tight(sub, sets)
}

/// Extends an FN mapping `f` on `A` to `B`, using an FN mapping `g` on `B`:
/// `g̃(b) = f(b)` on `A` and `g(b) ∪ ⋃ {f(c) : c ∈ U(b) ∪ V(b)}` elsewhere.
pub fn extend_mapping(
    b: &Poset,
    a: &Subset,
    f: &FnMapping,
    g: &FnMapping,
    w: &WitnessFamily,
) -> Result<FnMapping, MappingError> {
    if g.carrier() != b {
        return Err(MappingError::CarrierMismatch);
    }
    let (sub, embed) = b.induced(a)?;
    if f.carrier() != &sub {
        return Err(MappingError::CarrierMismatch);
    }
    if w.carrier() != b || w.subset() != a {
        return Err(MappingError::WitnessInvalid(
            "family was built for a different pair of structures".into(),
        ));
    }
    require_star(f, "mapping on the substructure")?;
    require_star(g, "mapping on the ambient structure")?;
    let back = inverse(&embed, b.len());
    let lift = |c: usize| -> Subset { f.get(c).iter().map(|&y| embed[y]).collect() };
    let sets = (0..b.len())
        .map(|x| match back[x] {
            Some(c) => lift(c),
            None => {
                let mut s = g.get(x).clone();
                for &c in w.lower(x).iter().chain(w.upper(x)) {
                    s.extend(lift(back[c].expect("witnesses lie inside A")));
                }
                s
            }
        })
        .collect();
    FnMapping::tight(b.clone(), sets)
}

/// Transfers an FN mapping `g` on `B` to a retract `A`: `f(a) = j[g(i(a))]`.
pub fn retract_transfer(
    g: &FnMapping,
    i: &OrderMap,
    j: &OrderMap,
) -> Result<FnMapping, MappingError> {
    if !check_retraction(i, j).unwrap_or(false) {
        return Err(MappingError::NotARetraction);
    }
    if g.carrier() != i.target() {
        return Err(MappingError::CarrierMismatch);
    }
    require_star(g, "mapping on the ambient structure")?;
    let sets = (0..i.source().len())
        .map(|a| g.get(i.apply(a)).iter().map(|&y| j.apply(y)).collect())
        .collect();
    FnMapping::tight(i.source().clone(), sets)
}

/// Union of an increasing chain of mappings, each extending its predecessor.
pub fn chain_union_mapping(mappings: &[FnMapping]) -> Result<FnMapping, MappingError> {
    let (top, rest) = mappings
        .split_last()
        .ok_or_else(|| MappingError::NotAChain("empty chain".into()))?;
    for (k, pair) in mappings.windows(2).enumerate() {
        let (lo, hi) = (&pair[0], &pair[1]);
        if !lo.carrier().is_subposet_of(hi.carrier()) {
            return Err(MappingError::NotAChain(format!(
                "carrier {k} is not a sub-poset of carrier {}",
                k + 1
            )));
        }
        for x in 0..lo.carrier().len() {
            let id = lo.carrier().id(x);
            let y = hi.carrier().index_of(id)?;
            let a: BTreeSet<&str> = lo.ids_of(x).into_iter().collect();
            let b: BTreeSet<&str> = hi.ids_of(y).into_iter().collect();
            if a != b {
                return Err(MappingError::NotExtending {
                    index: k + 1,
                    element: id.to_string(),
                });
            }
        }
    }
    let carrier = top.carrier();
    let mut sets = top.sets().to_vec();
    for m in rest {
        let embed = m.carrier().embedding_into(carrier)?;
        for (x, &y) in embed.iter().enumerate() {
            sets[y].extend(m.get(x).iter().map(|&c| embed[c]));
        }
    }
    FnMapping::tight(carrier.clone(), sets)
}

fn inverse(embed: &[usize], n: usize) -> Vec<Option<usize>> {
    let mut back = vec![None; n];
    for (i, &x) in embed.iter().enumerate() {
        back[x] = Some(i);
    }
    back
}
