//! Two constructions on free algebras: the subalgebra of elements that agree
//! on the two constant assignments, with the check that its pieces
//! `B ∩ Fr(Y)` are not small substructures, and the extraction of an
//! independent family from an FN mapping.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

use thiserror::Error;

use crate::boolean::{
    generate, independence, AlgebraError, BooleanAlgebra, FreeElement, Independence,
    DEFAULT_FAMILY_CAP,
};
use crate::mapping::{FnOracle, Order};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConstructionError {
    #[error("precondition failed: {0}")]
    PreconditionFailed(String),
    #[error("{0} candidate elements exceed the enumeration cap")]
    SizeLimitExceeded(String),
    #[error("no element survives the scan")]
    EmptyResult,
    #[error("mapping cannot list f(b)")]
    NotEnumerable,
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

/// Membership in `B = {b : b ∈ U1 ⇔ b ∈ U2}`, where `U1` and `U2` are the
/// ultrafilters generated by the generators and by their complements: `b`
/// takes the same value at the all-true and the all-false assignment.
pub fn engelking_member(m: usize, b: &FreeElement) -> Result<bool, AlgebraError> {
    if b.arity() != m {
        return Err(AlgebraError::ArityMismatch(m, b.arity()));
    }
    Ok(b.eval((1usize << m) - 1) == b.eval(0))
}

/// Largest `|Y' ∪ {x0}|` accepted by [`engelking_witness_check`].
pub const MAX_WITNESS_SPAN: usize = 5;

/// Parameters of the witness check: `Y ⊆ X = {x_0, ..., x_{m-1}}`,
/// `Y' ⊆ Y`, `x0 ∈ Y`, distinct `x1, x2 ∉ Y` and distinct `y1, y2 ∈ Y ∖ Y'`
/// other than `x0`. Generators are given by index.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct EngelkingParams {
    pub m: usize,
    pub y: BTreeSet<usize>,
    pub y_prime: BTreeSet<usize>,
    pub x0: usize,
    pub x1: usize,
    pub x2: usize,
    pub y1: usize,
    pub y2: usize,
}

impl EngelkingParams {
    pub fn validate(&self) -> Result<(), ConstructionError> {
        let fail = |s: &str| Err(ConstructionError::PreconditionFailed(s.into()));
        let all = [self.x0, self.x1, self.x2, self.y1, self.y2];
        if all.iter().chain(&self.y).any(|&i| i >= self.m) {
            return fail("generator index out of range");
        }
        if !self.y.contains(&self.x0) {
            return fail("x0 must lie in Y");
        }
        if self.x1 == self.x2 || self.y.contains(&self.x1) || self.y.contains(&self.x2) {
            return fail("x1 and x2 must be distinct and outside Y");
        }
        if !self.y_prime.is_subset(&self.y) {
            return fail("Y' must be a subset of Y");
        }
        if self.y1 == self.y2 {
            return fail("y1 and y2 must be distinct");
        }
        for yi in [self.y1, self.y2] {
            if !self.y.contains(&yi) || self.y_prime.contains(&yi) || yi == self.x0 {
                return fail("y1 and y2 must lie in Y outside Y' and differ from x0");
            }
        }
        let span = self.y_prime.len() + usize::from(!self.y_prime.contains(&self.x0));
        if span > MAX_WITNESS_SPAN {
            return Err(ConstructionError::SizeLimitExceeded(format!(
                "Fr(Y' ∪ {{x0}}) with {span} generators"
            )));
        }
        Ok(())
    }
}

/// Outcome of [`engelking_witness_check`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EngelkingReport {
    /// `b = x0 + x1 + -x2`
    pub b: String,
    /// `d = x0 · y1 · -y2`
    pub d: String,
    pub b_member: bool,
    /// Elements `c ∈ B ∩ Fr(Y' ∪ {x0})` with `c <= b`.
    pub candidates: usize,
    /// Every candidate lies strictly below `x0`.
    pub strictly_below_x0: bool,
    pub d_member: bool,
    pub d_below_b: bool,
    /// `d` is incomparable with every nonzero candidate.
    pub incomparable: bool,
}

impl EngelkingReport {
    pub fn passed(&self) -> bool {
        self.b_member
            && self.strictly_below_x0
            && self.d_member
            && self.d_below_b
            && self.incomparable
    }

    pub fn report(&self) -> String {
        let yn = |v: bool| if v { "pass" } else { "fail" };
        let mut out = String::new();
        let _ = writeln!(out, "b: {} member: {}", self.b, yn(self.b_member));
        let _ = writeln!(out, "candidates: {}", self.candidates);
        let _ = writeln!(out, "strictly-below-x0: {}", yn(self.strictly_below_x0));
        let _ = writeln!(
            out,
            "d: {} member: {} below-b: {}",
            self.d,
            yn(self.d_member),
            yn(self.d_below_b)
        );
        let _ = writeln!(out, "incomparable: {}", yn(self.incomparable));
        let _ = writeln!(out, "result: {}", yn(self.passed()));
        out
    }
}

/// Checks that `B ∩ Fr(Y)` is not a small substructure at `b = x0+x1+-x2`:
/// every `c ∈ B ∩ Fr(Y' ∪ {x0})` below `b` lies strictly below `x0`, while
/// `d = x0·y1·-y2 ∈ B` lies below `b` and is incomparable with each nonzero
/// such `c`.
///
/// Works in the free algebra on the generators involved, which embeds in
/// `Fr(m)` preserving both constant assignments. The candidates are the
/// elements of `Fr(Y' ∪ {x0})` below the universal projection of `b`.
pub fn engelking_witness_check(p: &EngelkingParams) -> Result<EngelkingReport, ConstructionError> {
    p.validate()?;
    // local generators: the span T first, then the rest
    let mut span: Vec<usize> = p.y_prime.iter().copied().collect();
    if !p.y_prime.contains(&p.x0) {
        span.push(p.x0);
    }
    let mut locals = span.clone();
    locals.extend([p.x1, p.x2, p.y1, p.y2]);
    let n = locals.len();
    let var = |g: usize| {
        let i = locals
            .iter()
            .position(|&x| x == g)
            .expect("listed generator");
        FreeElement::var(n, i).expect("local arity")
    };
    let member = |e: &FreeElement| e.eval((1usize << n) - 1) == e.eval(0);
    let (x0, x1, x2, y1, y2) = (var(p.x0), var(p.x1), var(p.x2), var(p.y1), var(p.y2));
    let b = x0.or(&x1)?.or(&x2.not())?;
    let d = x0.and(&y1)?.and(&y2.not())?;

    let t = span.len();
    let keep: BTreeSet<usize> = (0..t).collect();
    let cap = b.forall_except(&keep);
    // the projection as a table over the span
    let top = (0..1usize << t).fold(0u64, |m, a| m | (u64::from(cap.eval(a)) << a));
    let minterms: Vec<FreeElement> = (0..1usize << t)
        .map(|a| FreeElement::from_fn(n, |asg| asg & ((1 << t) - 1) == a).expect("local arity"))
        .collect();

    let mut report = EngelkingReport {
        b: format!("x{}|x{}|!x{}", p.x0, p.x1, p.x2),
        d: format!("x{}&x{}&!x{}", p.x0, p.y1, p.y2),
        b_member: member(&b),
        candidates: 0,
        strictly_below_x0: true,
        d_member: member(&d),
        d_below_b: d.leq(&b)?,
        incomparable: true,
    };
    // walk the submasks of `top`, updating `c` by the minterms that change
    let mut sub = top;
    let mut c = minterms
        .iter()
        .enumerate()
        .filter(|(a, _)| top >> a & 1 == 1)
        .fold(FreeElement::zero(n)?, |acc, (_, m)| {
            acc.or(m).expect("same arity")
        });
    loop {
        if member(&c) {
            debug_assert!(c.leq(&b)?);
            report.candidates += 1;
            if !(c.leq(&x0)? && c != x0) {
                report.strictly_below_x0 = false;
            }
            if !c.is_zero() && (c.leq(&d)? || d.leq(&c)?) {
                report.incomparable = false;
            }
        }
        if sub == 0 {
            break;
        }
        let next = (sub - 1) & top;
        let mut diff = sub ^ next;
        while diff != 0 {
            let a = diff.trailing_zeros() as usize;
            c = c.xor(&minterms[a])?;
            diff &= diff - 1;
        }
        sub = next;
    }
    Ok(report)
}

/// One kept element of the scan, with the largest elements of the previous
/// closure below it and below its complement.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExtractionStep<E> {
    pub element: E,
    pub lower: Vec<E>,
    pub lower_complement: Vec<E>,
    /// Size of the closure before the element was added.
    pub closure_size: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IndependenceCertificate<E> {
    pub steps: Vec<ExtractionStep<E>>,
    pub family: Vec<E>,
    /// Elements removed from the chosen bucket before the oracle passed.
    pub dropped: Vec<E>,
}

impl<E> IndependenceCertificate<E> {
    pub fn report(&self, show: impl Fn(&E) -> String) -> String {
        let list = |v: &[E]| v.iter().map(&show).collect::<Vec<_>>().join(" ");
        let mut out = String::new();
        for s in &self.steps {
            let _ = writeln!(
                out,
                "keep {} I: {} J: {}",
                show(&s.element),
                list(&s.lower),
                list(&s.lower_complement)
            );
        }
        let _ = writeln!(out, "family: {}", list(&self.family));
        if self.dropped.is_empty() {
            out.push_str("oracle: pass\n");
        } else {
            let _ = writeln!(out, "oracle: fallback({})", list(&self.dropped));
        }
        out
    }
}

/// Closure of `gens` under `f` and the Boolean operations, as a set.
fn close<A, M>(
    alg: &A,
    f: &M,
    gens: &mut Vec<<A as BooleanAlgebra>::Elem>,
    cap: usize,
) -> Result<BTreeSet<<A as BooleanAlgebra>::Elem>, ConstructionError>
where
    A: BooleanAlgebra + Order<Elem = <A as BooleanAlgebra>::Elem>,
    M: FnOracle<A>,
{
    let mut listed: BTreeSet<_> = gens.iter().cloned().collect();
    loop {
        let set = generate(alg, gens, cap)?;
        let mut grew = false;
        for e in &set {
            for g in f
                .spanning_set(alg, e)
                .ok_or(ConstructionError::NotEnumerable)?
            {
                if !set.contains(&g) && listed.insert(g.clone()) {
                    gens.push(g);
                    grew = true;
                }
            }
        }
        if !grew {
            return Ok(set);
        }
    }
}

fn join_below<A: BooleanAlgebra>(alg: &A, set: &BTreeSet<A::Elem>, x: &A::Elem) -> A::Elem {
    set.iter()
        .filter(|c| alg.le(c, x))
        .fold(alg.zero(), |acc, c| alg.join(&acc, c))
}

/// Scans `xs` in order, keeping each element outside the closure of the
/// kept ones under `f` and the Boolean operations, buckets the kept elements
/// by the pair of largest closure elements below them and their complements,
/// and returns the largest bucket once it passes the independence oracle.
///
/// If the oracle fails, trailing members are dropped until it passes.
pub fn extract_independent<A, M>(
    alg: &A,
    f: &M,
    xs: &[<A as BooleanAlgebra>::Elem],
    cap: usize,
) -> Result<IndependenceCertificate<<A as BooleanAlgebra>::Elem>, ConstructionError>
where
    A: BooleanAlgebra + Order<Elem = <A as BooleanAlgebra>::Elem>,
    M: FnOracle<A>,
{
    let mut gens = Vec::new();
    let mut closure = close(alg, f, &mut gens, cap)?;
    let mut steps = Vec::new();
    for (k, x) in xs.iter().enumerate() {
        if closure.contains(x) {
            continue;
        }
        steps.push(ExtractionStep {
            element: x.clone(),
            lower: vec![join_below(alg, &closure, x)],
            lower_complement: vec![join_below(
                alg,
                &closure,
                &BooleanAlgebra::complement(alg, x),
            )],
            closure_size: closure.len(),
        });
        // the last closure is never consulted
        if k + 1 < xs.len() {
            gens.push(x.clone());
            closure = close(alg, f, &mut gens, cap)?;
        }
    }
    if steps.is_empty() {
        return Err(ConstructionError::EmptyResult);
    }
    // buckets in order of creation
    let mut order: Vec<(&Vec<_>, &Vec<_>)> = Vec::new();
    let mut buckets: BTreeMap<(&Vec<_>, &Vec<_>), Vec<usize>> = BTreeMap::new();
    for (i, s) in steps.iter().enumerate() {
        let key = (&s.lower, &s.lower_complement);
        let entry = buckets.entry(key).or_default();
        if entry.is_empty() {
            order.push(key);
        }
        entry.push(i);
    }
    let best = order
        .iter()
        .fold(None::<&Vec<usize>>, |best, key| {
            let b = &buckets[key];
            match best {
                Some(cur) if cur.len() >= b.len() => Some(cur),
                _ => Some(b),
            }
        })
        .expect("at least one bucket");
    let mut family: Vec<_> = best.iter().map(|&i| steps[i].element.clone()).collect();
    let mut dropped = Vec::new();
    loop {
        let verdict = independence(alg, &family, DEFAULT_FAMILY_CAP.max(family.len()))?;
        if verdict == Independence::Independent {
            break;
        }
        dropped.push(family.pop().expect("the empty family is independent"));
    }
    dropped.reverse();
    Ok(IndependenceCertificate {
        steps,
        family,
        dropped,
    })
}
