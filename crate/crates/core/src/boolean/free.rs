//! Elements of the free Boolean algebra on `n` generators, stored as truth
//! tables of `2^n` bits.
//!
//! Bit `i` of the table is the value under the assignment whose bit `k` is
//! the value of generator `x_k`.

use std::collections::BTreeSet;
use std::fmt;

use super::AlgebraError;

/// Largest supported generator count for a single element.
pub const MAX_ARITY: usize = 24;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FreeElement {
    arity: usize,
    words: Vec<u64>,
}

fn word_count(arity: usize) -> usize {
    if arity <= 6 {
        1
    } else {
        1 << (arity - 6)
    }
}

fn tail_mask(arity: usize) -> u64 {
    if arity >= 6 {
        u64::MAX
    } else {
        (1u64 << (1 << arity)) - 1
    }
}

// positions whose index has bit `i` clear, for i < 6
const LOW_MASKS: [u64; 6] = [
    0x5555_5555_5555_5555,
    0x3333_3333_3333_3333,
    0x0f0f_0f0f_0f0f_0f0f,
    0x00ff_00ff_00ff_00ff,
    0x0000_ffff_0000_ffff,
    0x0000_0000_ffff_ffff,
];

impl FreeElement {
    fn check_arity(arity: usize) -> Result<(), AlgebraError> {
        if arity > MAX_ARITY {
            Err(AlgebraError::ArityTooLarge(arity))
        } else {
            Ok(())
        }
    }

    pub fn zero(arity: usize) -> Result<Self, AlgebraError> {
        Self::check_arity(arity)?;
        Ok(FreeElement {
            arity,
            words: vec![0; word_count(arity)],
        })
    }

    pub fn one(arity: usize) -> Result<Self, AlgebraError> {
        Ok(Self::zero(arity)?.not())
    }

    /// The generator `x_i`.
    pub fn var(arity: usize, i: usize) -> Result<Self, AlgebraError> {
        if i >= arity {
            return Err(AlgebraError::UnknownGenerator { index: i, arity });
        }
        Self::from_fn(arity, |asg| asg >> i & 1 == 1)
    }

    /// Builds the element whose value under assignment `asg` is `f(asg)`.
    pub fn from_fn<F: Fn(usize) -> bool>(arity: usize, f: F) -> Result<Self, AlgebraError> {
        let mut e = Self::zero(arity)?;
        for asg in 0..(1usize << arity) {
            if f(asg) {
                e.words[asg >> 6] |= 1 << (asg & 63);
            }
        }
        Ok(e)
    }

    /// Builds an element from raw table words (little-endian bit order).
    pub fn from_words(arity: usize, words: Vec<u64>) -> Result<Self, AlgebraError> {
        Self::check_arity(arity)?;
        if words.len() != word_count(arity) {
            return Err(AlgebraError::BadTable(format!(
                "expected {} words for arity {arity}, got {}",
                word_count(arity),
                words.len()
            )));
        }
        if words[0] & !tail_mask(arity) != 0 {
            return Err(AlgebraError::BadTable(format!(
                "table has bits beyond 2^{arity} entries"
            )));
        }
        Ok(FreeElement { arity, words })
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn words(&self) -> &[u64] {
        &self.words
    }

    #[inline]
    pub fn eval(&self, asg: usize) -> bool {
        self.words[asg >> 6] >> (asg & 63) & 1 == 1
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn is_one(&self) -> bool {
        self.not().is_zero()
    }

    /// Number of satisfying assignments.
    pub fn count_ones(&self) -> u64 {
        self.words.iter().map(|w| w.count_ones() as u64).sum()
    }

    pub fn not(&self) -> Self {
        let mask = tail_mask(self.arity);
        FreeElement {
            arity: self.arity,
            words: self.words.iter().map(|&w| !w & mask).collect(),
        }
    }

    fn zip(&self, other: &Self, op: impl Fn(u64, u64) -> u64) -> Self {
        debug_assert_eq!(self.arity, other.arity);
        FreeElement {
            arity: self.arity,
            words: self
                .words
                .iter()
                .zip(&other.words)
                .map(|(&a, &b)| op(a, b))
                .collect(),
        }
    }

    fn same_arity(&self, other: &Self) -> Result<(), AlgebraError> {
        if self.arity == other.arity {
            Ok(())
        } else {
            Err(AlgebraError::ArityMismatch(self.arity, other.arity))
        }
    }

    pub fn and(&self, other: &Self) -> Result<Self, AlgebraError> {
        self.same_arity(other)?;
        Ok(self.zip(other, |a, b| a & b))
    }

    pub fn or(&self, other: &Self) -> Result<Self, AlgebraError> {
        self.same_arity(other)?;
        Ok(self.zip(other, |a, b| a | b))
    }

    pub fn xor(&self, other: &Self) -> Result<Self, AlgebraError> {
        self.same_arity(other)?;
        Ok(self.zip(other, |a, b| a ^ b))
    }

    pub fn leq(&self, other: &Self) -> Result<bool, AlgebraError> {
        self.same_arity(other)?;
        Ok(self.le_unchecked(other))
    }

    pub(crate) fn and_unchecked(&self, other: &Self) -> Self {
        self.zip(other, |a, b| a & b)
    }

    pub(crate) fn or_unchecked(&self, other: &Self) -> Self {
        self.zip(other, |a, b| a | b)
    }

    pub(crate) fn le_unchecked(&self, other: &Self) -> bool {
        self.words
            .iter()
            .zip(&other.words)
            .all(|(&a, &b)| a & !b == 0)
    }

    /// The two cofactors with respect to generator `i`, each still of full
    /// arity: `(f[x_i := 0], f[x_i := 1])`.
    pub fn cofactors(&self, i: usize) -> (Self, Self) {
        assert!(i < self.arity, "generator {i} out of range");
        let mut lo = self.clone();
        let mut hi = self.clone();
        if i < 6 {
            let m = LOW_MASKS[i];
            let s = 1u32 << i;
            for (k, &w) in self.words.iter().enumerate() {
                let z = w & m;
                let o = w & !m;
                lo.words[k] = z | (z << s);
                hi.words[k] = o | (o >> s);
            }
            lo.words[0] &= tail_mask(self.arity);
            hi.words[0] &= tail_mask(self.arity);
        } else {
            let stride = 1usize << (i - 6);
            for k in 0..self.words.len() {
                if k & stride == 0 {
                    let (a, b) = (self.words[k], self.words[k + stride]);
                    lo.words[k] = a;
                    lo.words[k + stride] = a;
                    hi.words[k] = b;
                    hi.words[k + stride] = b;
                }
            }
        }
        (lo, hi)
    }

    /// Whether flipping generator `i` changes the value for some assignment.
    pub fn depends_on(&self, i: usize) -> bool {
        let (lo, hi) = self.cofactors(i);
        lo != hi
    }

    /// Generators the element essentially depends on.
    pub fn support(&self) -> BTreeSet<usize> {
        (0..self.arity).filter(|&i| self.depends_on(i)).collect()
    }

    /// Existential projection: eliminates every generator not in `keep` by
    /// disjunction over its values.
    pub fn exists_except(&self, keep: &BTreeSet<usize>) -> Self {
        let mut e = self.clone();
        for i in (0..self.arity).filter(|i| !keep.contains(i)) {
            let (lo, hi) = e.cofactors(i);
            e = lo.or_unchecked(&hi);
        }
        e
    }

    /// Universal projection: eliminates every generator not in `keep` by
    /// conjunction over its values.
    pub fn forall_except(&self, keep: &BTreeSet<usize>) -> Self {
        let mut e = self.clone();
        for i in (0..self.arity).filter(|i| !keep.contains(i)) {
            let (lo, hi) = e.cofactors(i);
            e = lo.and_unchecked(&hi);
        }
        e
    }

    /// Re-expresses the element over `target_arity` generators, sending
    /// generator `k` to generator `positions[k]`.
    pub fn lift(&self, positions: &[usize], target_arity: usize) -> Result<Self, AlgebraError> {
        if positions.len() != self.arity {
            return Err(AlgebraError::ArityMismatch(positions.len(), self.arity));
        }
        if let Some(&p) = positions.iter().find(|&&p| p >= target_arity) {
            return Err(AlgebraError::UnknownGenerator {
                index: p,
                arity: target_arity,
            });
        }
        FreeElement::from_fn(target_arity, |asg| {
            let src = positions
                .iter()
                .enumerate()
                .fold(0usize, |acc, (k, &p)| acc | ((asg >> p & 1) << k));
            self.eval(src)
        })
    }

    /// Hex encoding of the table, most significant entry first.
    pub fn to_hex(&self) -> String {
        let digits = ((1usize << self.arity) / 4).max(1);
        let mut s = String::with_capacity(digits);
        for d in (0..digits).rev() {
            let bit = d * 4;
            let nib = (self.words[bit >> 6] >> (bit & 63)) & 0xf;
            s.push(char::from_digit(nib as u32, 16).unwrap());
        }
        s
    }

    pub fn from_hex(arity: usize, hex: &str) -> Result<Self, AlgebraError> {
        Self::check_arity(arity)?;
        let digits = ((1usize << arity) / 4).max(1);
        let hex = hex.trim_start_matches("0x");
        if hex.len() > digits {
            return Err(AlgebraError::BadTable(format!(
                "{} hex digits for arity {arity} (at most {digits})",
                hex.len()
            )));
        }
        let mut words = vec![0u64; word_count(arity)];
        for (d, c) in hex.chars().rev().enumerate() {
            let nib = c
                .to_digit(16)
                .ok_or_else(|| AlgebraError::BadTable(format!("bad hex digit `{c}`")))?
                as u64;
            let bit = d * 4;
            words[bit >> 6] |= nib << (bit & 63);
        }
        FreeElement::from_words(arity, words)
    }

    /// A readable expression: a constant, or a sum of minterms over the
    /// support (complemented when that is shorter).
    pub fn to_expr(&self) -> String {
        if self.is_zero() {
            return "0".into();
        }
        if self.is_one() {
            return "1".into();
        }
        let supp: Vec<usize> = self.support().into_iter().collect();
        let rows: Vec<(usize, bool)> = (0..1usize << supp.len())
            .map(|r| {
                let asg = supp
                    .iter()
                    .enumerate()
                    .fold(0usize, |acc, (k, &v)| acc | ((r >> k & 1) << v));
                (r, self.eval(asg))
            })
            .collect();
        let trues = rows.iter().filter(|r| r.1).count();
        let negate = trues * 2 > rows.len();
        let terms: Vec<String> = rows
            .iter()
            .filter(|r| r.1 != negate)
            .map(|&(r, _)| {
                supp.iter()
                    .enumerate()
                    .map(|(k, v)| {
                        if r >> k & 1 == 1 {
                            format!("x{v}")
                        } else {
                            format!("!x{v}")
                        }
                    })
                    .collect::<Vec<_>>()
                    .join("&")
            })
            .collect();
        let body = terms.join(" | ");
        if negate {
            if terms.len() == 1 && supp.len() == 1 {
                // a single negated literal
                if let Some(stripped) = body.strip_prefix('!') {
                    return stripped.to_string();
                }
                return format!("!{body}");
            }
            format!("!({body})")
        } else {
            body
        }
    }
}

impl fmt::Debug for FreeElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "n={};tt:{}", self.arity, self.to_hex())
    }
}

impl fmt::Display for FreeElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_expr())
    }
}

/// The strongest interpolant of `a <= b`: the existential projection of `a`
/// onto the generators shared by the supports of `a` and `b`.
pub fn craig_interpolant(a: &FreeElement, b: &FreeElement) -> Result<FreeElement, AlgebraError> {
    if !a.leq(b)? {
        return Err(AlgebraError::NotBelow);
    }
    let shared: BTreeSet<usize> = a.support().intersection(&b.support()).copied().collect();
    Ok(a.exists_except(&shared))
}

/// Parses an element of the free algebra on `arity` generators.
///
/// Accepted forms: an expression over `x<k>`, `0`, `1`, `!`, `&`, `^`, `|`
/// and parentheses (binding tightest to loosest in that order), or a raw
/// table `tt:<hex>`. Either may carry an `n=<k>;` prefix overriding `arity`.
pub fn parse_element(input: &str, arity: usize) -> Result<FreeElement, AlgebraError> {
    let s = input.trim();
    let (arity, body) = match s.strip_prefix("n=") {
        Some(rest) => {
            let (num, body) = rest
                .split_once(';')
                .ok_or_else(|| AlgebraError::Parse("expected `;` after `n=<k>`".into()))?;
            let n = num
                .trim()
                .parse::<usize>()
                .map_err(|_| AlgebraError::Parse(format!("bad arity `{num}`")))?;
            (n, body.trim())
        }
        None => (arity, s),
    };
    FreeElement::check_arity(arity)?;
    if let Some(hex) = body.strip_prefix("tt:") {
        return FreeElement::from_hex(arity, hex.trim());
    }
    let mut p = ExprParser {
        src: body.as_bytes(),
        pos: 0,
        arity,
    };
    let e = p.or_expr()?;
    p.skip_ws();
    if p.pos != p.src.len() {
        return Err(AlgebraError::Parse(format!(
            "unexpected `{}` at offset {}",
            p.src[p.pos] as char, p.pos
        )));
    }
    Ok(e)
}

struct ExprParser<'a> {
    src: &'a [u8],
    pos: usize,
    arity: usize,
}

impl ExprParser<'_> {
    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn eat(&mut self, c: u8) -> bool {
        self.skip_ws();
        if self.src.get(self.pos) == Some(&c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn or_expr(&mut self) -> Result<FreeElement, AlgebraError> {
        let mut e = self.xor_expr()?;
        while self.eat(b'|') {
            e = e.or_unchecked(&self.xor_expr()?);
        }
        Ok(e)
    }

    fn xor_expr(&mut self) -> Result<FreeElement, AlgebraError> {
        let mut e = self.and_expr()?;
        while self.eat(b'^') {
            e = e.zip(&self.and_expr()?, |a, b| a ^ b);
        }
        Ok(e)
    }

    fn and_expr(&mut self) -> Result<FreeElement, AlgebraError> {
        let mut e = self.unary()?;
        while self.eat(b'&') {
            e = e.and_unchecked(&self.unary()?);
        }
        Ok(e)
    }

    fn unary(&mut self) -> Result<FreeElement, AlgebraError> {
        if self.eat(b'!') {
            return Ok(self.unary()?.not());
        }
        self.atom()
    }

    fn atom(&mut self) -> Result<FreeElement, AlgebraError> {
        self.skip_ws();
        match self.src.get(self.pos) {
            Some(b'(') => {
                self.pos += 1;
                let e = self.or_expr()?;
                if !self.eat(b')') {
                    return Err(AlgebraError::Parse(format!(
                        "expected `)` at offset {}",
                        self.pos
                    )));
                }
                Ok(e)
            }
            Some(b'0') => {
                self.pos += 1;
                FreeElement::zero(self.arity)
            }
            Some(b'1') => {
                self.pos += 1;
                FreeElement::one(self.arity)
            }
            Some(b'x') => {
                self.pos += 1;
                let start = self.pos;
                while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
                    self.pos += 1;
                }
                let digits = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
                let i = digits.parse::<usize>().map_err(|_| {
                    AlgebraError::Parse(format!("expected generator index at offset {start}"))
                })?;
                FreeElement::var(self.arity, i)
            }
            Some(&c) => Err(AlgebraError::Parse(format!(
                "unexpected `{}` at offset {}",
                c as char, self.pos
            ))),
            None => Err(AlgebraError::Parse("unexpected end of input".into())),
        }
    }
}
