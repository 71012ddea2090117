//! Line-oriented text formats. `#` starts a comment everywhere.
//!
//! ```text
//! poset            fnmap k=3            ordmap           linord
//! elem a           map a : a            a -> a           elem lo
//! elem b           map b : a b          b -> a           elem hi
//! le a b
//! ```

use std::fmt::Write as _;

use thiserror::Error;

use crate::interval::{IntervalAlgebra, IntervalError};
use crate::mapping::{Bound, FnMapping, MappingError};
use crate::poset::{OrderMap, Poset, PosetError, Subset};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TextError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("missing `{0}` header")]
    MissingHeader(&'static str),
    #[error(transparent)]
    Poset(#[from] PosetError),
    #[error(transparent)]
    Mapping(#[from] MappingError),
    #[error(transparent)]
    Interval(#[from] IntervalError),
}

fn syntax(line: usize, message: impl Into<String>) -> TextError {
    TextError::Syntax {
        line,
        message: message.into(),
    }
}

/// Non-empty lines with comments stripped, numbered from 1.
fn lines(s: &str) -> impl Iterator<Item = (usize, &str)> {
    s.lines().enumerate().filter_map(|(i, l)| {
        let l = l.split('#').next().unwrap_or("").trim();
        (!l.is_empty()).then_some((i + 1, l))
    })
}

/// Splits off the header line, which must start with `name`, and returns
/// the rest of the header line.
fn header<'a>(
    it: &mut impl Iterator<Item = (usize, &'a str)>,
    name: &'static str,
) -> Result<&'a str, TextError> {
    match it.next() {
        Some((_, l)) if l.split_whitespace().next() == Some(name) => Ok(l[name.len()..].trim()),
        _ => Err(TextError::MissingHeader(name)),
    }
}

pub fn parse_poset(s: &str) -> Result<Poset, TextError> {
    let mut it = lines(s);
    header(&mut it, "poset")?;
    let mut elems = Vec::new();
    let mut pairs = Vec::new();
    for (n, l) in it {
        let words: Vec<&str> = l.split_whitespace().collect();
        match words.as_slice() {
            ["elem", id] => elems.push(id.to_string()),
            ["le", a, b] => pairs.push((a.to_string(), b.to_string())),
            _ => {
                return Err(syntax(
                    n,
                    format!("expected `elem <id>` or `le <id> <id>`, got `{l}`"),
                ))
            }
        }
    }
    Ok(Poset::build(elems, pairs)?)
}

/// Writes the elements and the covering pairs.
pub fn write_poset(p: &Poset) -> String {
    let mut out = String::from("poset\n");
    for id in p.ids() {
        let _ = writeln!(out, "elem {id}");
    }
    for (a, b) in p.covers() {
        let _ = writeln!(out, "le {} {}", p.id(a), p.id(b));
    }
    out
}

/// Whitespace-separated ids.
pub fn parse_subset(p: &Poset, s: &str) -> Result<Subset, TextError> {
    Ok(p.subset_of(&s.split_whitespace().collect::<Vec<_>>())?)
}

pub fn write_subset(p: &Poset, s: &Subset) -> String {
    p.ids_of(s).collect::<Vec<_>>().join(" ")
}

/// Parses a mapping on `carrier`; elements without a `map` line get the
/// empty set.
pub fn parse_mapping(s: &str, carrier: &Poset) -> Result<FnMapping, TextError> {
    let mut it = lines(s);
    let rest = header(&mut it, "fnmap")?;
    let bound = match rest.strip_prefix("k=") {
        Some(k) => k.trim().parse::<Bound>().map_err(|e| syntax(1, e))?,
        None if rest.is_empty() => Bound::Infinite,
        None => return Err(syntax(1, format!("expected `k=<bound>`, got `{rest}`"))),
    };
    let mut sets = vec![Subset::new(); carrier.len()];
    let mut seen = vec![false; carrier.len()];
    for (n, l) in it {
        let body = l
            .strip_prefix("map ")
            .ok_or_else(|| syntax(n, format!("expected `map <id> : <ids>`, got `{l}`")))?;
        let (id, ids) = body
            .split_once(':')
            .ok_or_else(|| syntax(n, "missing `:`"))?;
        let a = carrier.index_of(id.trim())?;
        if std::mem::replace(&mut seen[a], true) {
            return Err(syntax(n, format!("second `map` line for `{}`", id.trim())));
        }
        sets[a] = parse_subset(carrier, ids)?;
    }
    Ok(FnMapping::new(carrier.clone(), sets, bound)?)
}

pub fn write_mapping(f: &FnMapping) -> String {
    let mut out = format!("fnmap k={}\n", f.bound());
    let p = f.carrier();
    for a in 0..p.len() {
        let _ = writeln!(out, "map {} : {}", p.id(a), write_subset(p, f.get(a)));
    }
    out
}

/// An order-preserving map given by `<id> -> <id>` lines.
pub fn parse_ordmap(s: &str, source: &Poset, target: &Poset) -> Result<OrderMap, TextError> {
    let mut it = lines(s);
    header(&mut it, "ordmap")?;
    let mut pairs = Vec::new();
    for (n, l) in it {
        let (a, b) = l
            .split_once("->")
            .ok_or_else(|| syntax(n, format!("expected `<id> -> <id>`, got `{l}`")))?;
        pairs.push((a.trim().to_string(), b.trim().to_string()));
    }
    Ok(OrderMap::from_pairs(
        source.clone(),
        target.clone(),
        &pairs,
    )?)
}

pub fn write_ordmap(m: &OrderMap) -> String {
    let mut out = String::from("ordmap\n");
    for (a, &b) in m.table().iter().enumerate() {
        let _ = writeln!(out, "{} -> {}", m.source().id(a), m.target().id(b));
    }
    out
}

/// A finite linear order: `elem` lines from least to greatest.
pub fn parse_linord(s: &str) -> Result<IntervalAlgebra, TextError> {
    let mut it = lines(s);
    header(&mut it, "linord")?;
    let mut ids = Vec::new();
    for (n, l) in it {
        match l.split_whitespace().collect::<Vec<_>>().as_slice() {
            ["elem", id] => ids.push(id.to_string()),
            _ => return Err(syntax(n, format!("expected `elem <id>`, got `{l}`"))),
        }
    }
    Ok(IntervalAlgebra::new(&ids)?)
}

pub fn write_linord(alg: &IntervalAlgebra) -> String {
    let mut out = String::from("linord\n");
    for id in alg.ids() {
        let _ = writeln!(out, "elem {id}");
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    const DIAMOND: &str = "# a diamond\nposet\nelem bot\nelem l\nelem r\nelem top\n\
        le bot l\nle bot r  # two covers\nle l top\nle r top\n";

    #[test]
    fn poset_round_trip() {
        let p = parse_poset(DIAMOND).unwrap();
        assert_eq!(p.len(), 4);
        assert!(p.le(p.index_of("bot").unwrap(), p.index_of("top").unwrap()));
        assert_eq!(parse_poset(&write_poset(&p)).unwrap(), p);
        assert!(matches!(
            parse_poset("poset\nelem a\nlt a b\n"),
            Err(TextError::Syntax { line: 3, .. })
        ));
        assert_eq!(
            parse_poset("elem a\n"),
            Err(TextError::MissingHeader("poset"))
        );
        assert!(parse_poset("poset\nelem a\nle a b\n").is_err());
    }

    #[test]
    fn mapping_round_trip() {
        let p = parse_poset(DIAMOND).unwrap();
        let f = parse_mapping("fnmap k=3\nmap bot : bot\nmap top : bot top\n", &p).unwrap();
        assert_eq!(f.bound(), Bound::Finite(3));
        assert!(f.get(p.index_of("l").unwrap()).is_empty());
        assert_eq!(parse_mapping(&write_mapping(&f), &p).unwrap(), f);
        assert!(parse_mapping("fnmap k=2\nmap top : bot top\n", &p).is_err());
        assert!(parse_mapping("fnmap k=inf\nmap x : bot\n", &p).is_err());
        assert!(parse_mapping("fnmap\nmap bot : bot\nmap bot : bot\n", &p).is_err());
    }

    #[test]
    fn ordmap_and_linord() {
        let a = Poset::chain(&["a", "b"]).unwrap();
        let m = parse_ordmap("ordmap\na -> a\nb -> a\n", &a, &a).unwrap();
        assert_eq!(m.table(), [0, 0]);
        assert_eq!(parse_ordmap(&write_ordmap(&m), &a, &a).unwrap(), m);
        let l = parse_linord("linord\nelem z\nelem y\n").unwrap();
        assert_eq!(l.ids(), ["z", "y"]);
        assert_eq!(parse_linord(&write_linord(&l)).unwrap(), l);
        assert!(parse_linord("linord\nelem z\nelem z\n").is_err());
    }
}
