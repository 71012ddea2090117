//! Acceptance run: one `criterion N: pass|fail (...)` line per criterion.
//! Exits nonzero if any criterion fails.

mod common;

use std::collections::{BTreeSet, HashMap};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use common::{
    all_posets, carrier, exhaustive_optimum, ids, naive_star, nonempty_subset, product_retract,
    random_poset, random_sets, random_star_mapping,
};
use fnlab::boolean::{
    craig_interpolant, independence, FiniteBa, FreeAlgebra, FreeElement, DEFAULT_FAMILY_CAP,
    DEFAULT_SUBALGEBRA_CAP,
};
use fnlab::constructions::{
    engelking_member, engelking_witness_check, extract_independent, ConstructionError,
    EngelkingParams,
};
use fnlab::game::{
    bundled_adversaries, chain_adversary, closure_strategy, play, rc_closure_strategy,
    ChainAdversary, GameConfig, Mover,
};
use fnlab::interval::{
    dense_wfn_mapping, lift_mapping, project_mapping, IntervalAlgebra, IntervalElement, Point,
};
use fnlab::mapping::{
    chain_union_mapping, check_pair, check_star, enumeration_mapping, extend_mapping,
    interpolation_fn_mapping, quotient_lift_mapping, quotient_push_mapping, restrict_mapping,
    retract_transfer, synth_min_fn, verify_star, Bound, FnMapping, FnOracle, FullMapping,
    Objective, Quotient, StarVerdict, WitnessFamily, DEFAULT_SYNTH_CAP,
};
use fnlab::poset::{Poset, Subset};
use fnlab::substructure::{is_rel_complete, Structure};
use num_rational::Rational64;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn passes(f: &FnMapping) -> bool {
    verify_star(f.carrier(), f)
        .map(|v| v.is_ok())
        .unwrap_or(false)
}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn verifier_equivalence() -> Outcome {
    let start = Instant::now();
    let counts: Vec<usize> = (1..=5).map(|n| all_posets(n).len()).collect();
    ensure(counts == [1, 2, 5, 16, 63], || {
        format!("poset counts {counts:?}")
    })?;
    let mut r = rng(1);
    let mut checked = 0;
    let mut failing = 0;
    for n in 1..=5 {
        for p in all_posets(n) {
            for k in 0..200 {
                // half arbitrary sets, half repaired ones, so both verdicts occur
                let sets = if k % 2 == 0 {
                    let density = r.gen_range(0.0..1.0);
                    random_sets(&mut r, n, density)
                } else {
                    let f = random_star_mapping(&mut r, &p, 0.2);
                    (0..n).map(|a| f.get(a).clone()).collect()
                };
                let f = FnMapping::tight(p.clone(), sets.clone()).map_err(|e| e.to_string())?;
                let got = verify_star(&p, &f).map_err(|e| e.to_string())?;
                let want = naive_star(&p, &sets);
                ensure(got.is_ok() == want.is_none(), || {
                    format!("disagreement on {p:?} with {sets:?}")
                })?;
                if let StarVerdict::Counterexample(a, b) = got {
                    ensure(p.le(a, b) && !check_pair(&p, &f, &a, &b), || {
                        format!("bad counterexample ({a}, {b})")
                    })?;
                    failing += 1;
                }
                checked += 1;
            }
        }
    }
    let t = start.elapsed();
    ensure(t < Duration::from_secs(60), || format!("took {t:?}"))?;
    Ok(format!(
        "{checked} mappings on 87 posets with 1..5 elements, {failing} failing"
    ))
}

/// An element of `Fr(n)` depending on a random subset of the generators.
fn element_with_random_support(r: &mut ChaCha8Rng, n: usize) -> FreeElement {
    let table: Vec<bool> = (0..1usize << n).map(|_| r.gen()).collect();
    let keep: BTreeSet<usize> = (0..n).filter(|_| r.gen_bool(0.6)).collect();
    FreeElement::from_fn(n, |a| table[a])
        .expect("arity within range")
        .exists_except(&keep)
}

fn interpolation() -> Outcome {
    let start = Instant::now();
    let mut r = rng(2);
    let mut pairs = 0;
    for n in 4..=10 {
        let alg = FreeAlgebra::new(n).map_err(|e| e.to_string())?;
        let f = interpolation_fn_mapping(n);
        for _ in 0..1000 {
            let b = element_with_random_support(&mut r, n);
            let a = b
                .and(&element_with_random_support(&mut r, n))
                .expect("same arity");
            let c = f.witness(&alg, &a, &b).ok_or("no witness")?;
            let shared: BTreeSet<usize> = a.support().intersection(&b.support()).copied().collect();
            ensure(
                a.leq(&c).unwrap() && c.leq(&b).unwrap() && c.support().is_subset(&shared),
                || format!("bad witness at n = {n}: {} <= {}", a.to_expr(), b.to_expr()),
            )?;
            ensure(craig_interpolant(&a, &b).ok() == Some(c), || {
                "witness is not the interpolant".into()
            })?;
            ensure(check_pair(&alg, &f, &a, &b), || "check_pair fails".into())?;
            pairs += 1;
        }
    }
    let t = start.elapsed();
    ensure(t < Duration::from_secs(60), || format!("took {t:?}"))?;
    Ok(format!("{pairs} pairs on Fr(4..10)"))
}

fn transfers() -> Outcome {
    const N: usize = 500;
    let mut r = rng(3);
    let mut count = |name: &str, f: &mut dyn FnMut(&mut ChaCha8Rng) -> Result<bool, String>| {
        for i in 0..N {
            ensure(f(&mut r)?, || format!("{name}: instance {i} fails (*)"))?;
        }
        Ok::<(), String>(())
    };
    let s = |e: fnlab::mapping::MappingError| e.to_string();
    count("enumeration", &mut |r| {
        let p = carrier(r);
        let mut order: Vec<usize> = (0..p.len()).collect();
        order.shuffle(r);
        Ok(passes(&enumeration_mapping(&p, &order).map_err(s)?))
    })?;
    count("restrict", &mut |r| {
        let b = carrier(r);
        let a = nonempty_subset(r, b.len());
        let g = random_star_mapping(r, &b, 0.15);
        let w = WitnessFamily::canonical(b.clone(), a.clone()).map_err(s)?;
        Ok(passes(&restrict_mapping(&b, &a, &g, &w).map_err(s)?))
    })?;
    count("extend", &mut |r| {
        let b = carrier(r);
        let a = nonempty_subset(r, b.len());
        let (sub, _) = b.induced(&a).map_err(|e| e.to_string())?;
        let f = random_star_mapping(r, &sub, 0.15);
        let g = random_star_mapping(r, &b, 0.15);
        let w = WitnessFamily::canonical(b.clone(), a.clone()).map_err(s)?;
        Ok(passes(&extend_mapping(&b, &a, &f, &g, &w).map_err(s)?))
    })?;
    count("retract", &mut |r| {
        let (i, j) = product_retract(r);
        let g = random_star_mapping(r, i.target(), 0.15);
        Ok(passes(&retract_transfer(&g, &i, &j).map_err(s)?))
    })?;
    count("chain union", &mut |r| {
        let top = carrier(r);
        let mut sets = vec![top.all()];
        for _ in 0..r.gen_range(0..4) {
            let smaller: Subset = sets
                .last()
                .unwrap()
                .iter()
                .copied()
                .filter(|_| r.gen_bool(0.7))
                .collect();
            if smaller.is_empty() {
                break;
            }
            sets.push(smaller);
        }
        sets.reverse();
        let posets: Vec<Poset> = sets.iter().map(|x| top.induced(x).unwrap().0).collect();
        let mut chain = vec![random_star_mapping(r, &posets[0], 0.15)];
        for k in 1..posets.len() {
            let inner = posets[k]
                .subset_of(posets[k - 1].ids())
                .map_err(|e| e.to_string())?;
            let g = random_star_mapping(r, &posets[k], 0.15);
            let w = WitnessFamily::canonical(posets[k].clone(), inner.clone()).map_err(s)?;
            chain.push(
                extend_mapping(&posets[k], &inner, chain.last().unwrap(), &g, &w).map_err(s)?,
            );
        }
        Ok(passes(&chain_union_mapping(&chain).map_err(s)?))
    })?;
    count("quotient push", &mut |r| {
        let ba = FiniteBa::new(r.gen_range(1..=4)).unwrap();
        let q = Quotient::principal(ba.clone(), r.gen_range(0..ba.full())).map_err(s)?;
        let g = random_star_mapping(r, &ba.poset().unwrap(), 0.1);
        Ok(passes(&quotient_push_mapping(&q, &g).map_err(s)?))
    })?;
    count("quotient lift", &mut |r| {
        let ba = FiniteBa::new(r.gen_range(1..=4)).unwrap();
        let q = Quotient::principal(ba.clone(), r.gen_range(0..ba.full())).map_err(s)?;
        let f = random_star_mapping(r, &q.target().poset().unwrap(), 0.1);
        Ok(passes(&quotient_lift_mapping(&q, &f).map_err(s)?))
    })?;
    Ok(format!(
        "{N} instances each of enumeration, restrict, extend, retract, chain union, quotient push, quotient lift"
    ))
}

fn synthesis() -> Outcome {
    let mut posets = 0;
    for n in 1..=5 {
        for p in all_posets(n) {
            let (max, total) = exhaustive_optimum(&p);
            let f = synth_min_fn(&p, Objective::MaxSize, DEFAULT_SYNTH_CAP)
                .map_err(|e| e.to_string())?;
            ensure(passes(&f) && f.max_size() == max, || {
                format!("max-size {} vs {max} on {p:?}", f.max_size())
            })?;
            let f = synth_min_fn(&p, Objective::TotalSize, DEFAULT_SYNTH_CAP)
                .map_err(|e| e.to_string())?;
            ensure(passes(&f) && f.total_size() == total, || {
                format!("total {} vs {total} on {p:?}", f.total_size())
            })?;
            posets += 1;
        }
    }
    let chain = Poset::chain(&ids(3)).unwrap();
    let anti = Poset::antichain(&ids(3)).unwrap();
    let chain_max = synth_min_fn(&chain, Objective::MaxSize, DEFAULT_SYNTH_CAP)
        .unwrap()
        .max_size();
    let anti_max = synth_min_fn(&anti, Objective::MaxSize, DEFAULT_SYNTH_CAP)
        .unwrap()
        .max_size();
    ensure(chain_max == 2 && exhaustive_optimum(&chain).0 == 2, || {
        format!("3-chain optimum {chain_max}")
    })?;
    ensure(anti_max == 1 && exhaustive_optimum(&anti).0 == 1, || {
        format!("antichain optimum {anti_max}")
    })?;
    Ok(format!(
        "{posets} posets match the exhaustive optimum; 3-chain 2, antichain 1"
    ))
}

fn arb_rational(r: &mut ChaCha8Rng) -> Rational64 {
    Rational64::new(r.gen_range(-12..=12), r.gen_range(1..=4))
}

fn arb_parts(r: &mut ChaCha8Rng) -> Vec<(Point<Rational64>, Point<Rational64>)> {
    let point = |r: &mut ChaCha8Rng| match r.gen_range(0..10) {
        0 => Point::NegInf,
        1 => Point::PosInf,
        _ => Point::At(arb_rational(r)),
    };
    (0..r.gen_range(0..5))
        .map(|_| (point(r), point(r)))
        .collect()
}

fn in_parts(parts: &[(Point<Rational64>, Point<Rational64>)], x: Rational64) -> bool {
    let x = Point::At(x);
    parts.iter().any(|(lo, hi)| lo <= &x && &x < hi)
}

fn interval_algebra() -> Outcome {
    let mut r = rng(5);
    let mut points = 0;
    while points < 10_000 {
        let (pa, pb) = (arb_parts(&mut r), arb_parts(&mut r));
        let a = IntervalElement::from_intervals(pa.clone());
        let b = IntervalElement::from_intervals(pb.clone());
        let (u, i, c) = (a.union(&b), a.intersection(&b), a.complement());
        let mut cuts: Vec<Rational64> = a.endpoints().union(&b.endpoints()).copied().collect();
        cuts.extend((0..10).map(|_| arb_rational(&mut r)));
        let mut a_minus_b = false;
        for x in cuts
            .iter()
            .copied()
            .chain(cuts.windows(2).map(|w| (w[0] + w[1]) / 2))
        {
            let (ina, inb) = (in_parts(&pa, x), in_parts(&pb, x));
            ensure(
                a.contains_point(&x) == ina
                    && u.contains_point(&x) == (ina || inb)
                    && i.contains_point(&x) == (ina && inb)
                    && c.contains_point(&x) == !ina,
                || format!("mismatch at {x} for {a} and {b}"),
            )?;
            a_minus_b |= ina && !inb;
            points += 1;
        }
        ensure(!a.leq(&b) || !a_minus_b, || {
            format!("{a} <= {b} with a point of a outside b")
        })?;
    }
    let mut lifted = 0;
    let mut projected = 0;
    for n in 1..=6 {
        let alg = IntervalAlgebra::new(&ids(n)).unwrap();
        let chain = alg.chain_poset();
        let mut sources: Vec<FnMapping> =
            vec![enumeration_mapping(&chain, &(0..n).collect::<Vec<_>>()).unwrap()];
        sources.extend((0..20).map(|_| random_star_mapping(&mut r, &chain, 0.2)));
        sources.push(synth_min_fn(&chain, Objective::MaxSize, DEFAULT_SYNTH_CAP).unwrap());
        for f in &sources {
            let g = lift_mapping(&alg, f).map_err(|e| e.to_string())?;
            ensure(check_star(&alg, &g).is_ok(), || {
                format!("lift fails on {n} points")
            })?;
            lifted += 1;
            ensure(
                passes(&project_mapping(&alg, &g).map_err(|e| e.to_string())?),
                || "projection of a lift fails".into(),
            )?;
            projected += 1;
        }
        ensure(
            passes(&project_mapping(&alg, &FullMapping).map_err(|e| e.to_string())?),
            || "projection of the full map fails".into(),
        )?;
        projected += 1;
        for mask in 0u64..1 << n {
            let g = dense_wfn_mapping(
                (0..n)
                    .filter(|&i| mask >> i & 1 == 1)
                    .collect::<BTreeSet<_>>(),
            );
            if check_star(&alg, &g).is_ok() {
                ensure(
                    passes(&project_mapping(&alg, &g).map_err(|e| e.to_string())?),
                    || "projection of a dense map fails".into(),
                )?;
                projected += 1;
            }
        }
    }
    Ok(format!(
        "{points} rational points, 0 mismatches; {lifted} lifts and {projected} projections on 1..6 points pass"
    ))
}

fn games() -> Outcome {
    let mut r = rng(6);
    let mut structures: Vec<(Structure, FnMapping)> = Vec::new();
    for n in 1..=5 {
        for p in all_posets(n) {
            structures.push((
                Structure::poset(p.clone()),
                random_star_mapping(&mut r, &p, 0.1),
            ));
            let f = synth_min_fn(&p, Objective::MaxSize, DEFAULT_SYNTH_CAP).unwrap();
            structures.push((Structure::poset(p), f));
        }
    }
    for _ in 0..200 {
        let n = r.gen_range(6..=16);
        let density = r.gen_range(0.05..0.5);
        let p = random_poset(&mut r, n, density);
        structures.push((
            Structure::poset(p.clone()),
            random_star_mapping(&mut r, &p, 0.1),
        ));
    }
    for atoms in 1..=4 {
        let ba = FiniteBa::new(atoms).unwrap();
        let p = ba.poset().unwrap();
        for _ in 0..10 {
            structures.push((
                Structure::algebra(ba.clone()).unwrap(),
                random_star_mapping(&mut r, &p, 0.1),
            ));
        }
        structures.push((Structure::algebra(ba).unwrap(), FnMapping::full(p)));
    }
    let mut plays = 0;
    for (k, (s, f)) in structures.iter().enumerate() {
        for rounds in [1, 2, 3, 5, 8, 13, 20] {
            let cfg = GameConfig::new(s.clone(), rounds, Bound::Infinite, f.bound())
                .map_err(|e| e.to_string())?;
            for mut first in bundled_adversaries(k as u64) {
                let mut second = closure_strategy(f.clone()).map_err(|e| e.to_string())?;
                let t = play(&cfg, first.as_mut(), &mut second).map_err(|e| e.to_string())?;
                ensure(t.verdict.is_win() && t.chain_holds(), || {
                    format!("closure lost to {}:\n{}", first.name(), t.report(&cfg))
                })?;
                plays += 1;
            }
        }
    }
    let mut climbs = 0;
    for n in 1..=100 {
        let p = Poset::chain(&ids(n)).unwrap();
        let order = p.chain_order().unwrap();
        let f = enumeration_mapping(&p, &order).unwrap();
        let cfg = GameConfig::new(Structure::poset(p), 20, Bound::Infinite, f.bound()).unwrap();
        let t = play(
            &cfg,
            &mut chain_adversary(),
            &mut closure_strategy(f).unwrap(),
        )
        .map_err(|e| e.to_string())?;
        let mut before = Subset::new();
        for (mover, after) in &t.moves {
            if *mover == Mover::I && after != &before {
                ensure(
                    ChainAdversary::sup_below_top(&order, after)
                        > ChainAdversary::sup_below_top(&order, &before),
                    || format!("supremum did not rise on the {n}-chain"),
                )?;
                climbs += 1;
            }
            before = after.clone();
        }
    }
    Ok(format!(
        "closure won {plays}/{plays} plays on {} structures; {climbs} chain moves all raise the supremum",
        structures.len()
    ))
}

/// Every parameter tuple with `5 <= m <= 9` and `|Y'| <= 3`, judged through
/// a memo keyed by the data the check reads.
fn witness_tuples() -> Result<(usize, usize), String> {
    type Key = (BTreeSet<usize>, usize, usize, usize, usize);
    let mut memo: HashMap<Key, bool> = HashMap::new();
    let mut tuples = 0;
    for m in 5..=9usize {
        for x0 in 0..m {
            for x1 in 0..m {
                for x2 in 0..m {
                    for y1 in 0..m {
                        for y2 in 0..m {
                            let five = [x0, x1, x2, y1, y2];
                            if five.iter().collect::<BTreeSet<_>>().len() < 5 {
                                continue;
                            }
                            let rest: Vec<usize> = (0..m).filter(|v| !five.contains(v)).collect();
                            for extra in 0u32..1 << rest.len() {
                                let mut y: BTreeSet<usize> = [x0, y1, y2].into();
                                y.extend(
                                    (0..rest.len())
                                        .filter(|&i| extra >> i & 1 == 1)
                                        .map(|i| rest[i]),
                                );
                                let pool: Vec<usize> =
                                    y.iter().copied().filter(|&v| v != y1 && v != y2).collect();
                                for sel in 0u32..1 << pool.len() {
                                    if sel.count_ones() > 3 {
                                        continue;
                                    }
                                    let y_prime: BTreeSet<usize> = (0..pool.len())
                                        .filter(|&i| sel >> i & 1 == 1)
                                        .map(|i| pool[i])
                                        .collect();
                                    let mut span = y_prime.clone();
                                    span.insert(x0);
                                    let key = (span, x1, x2, y1, y2);
                                    let ok = match memo.get(&key) {
                                        Some(&ok) => ok,
                                        None => {
                                            let p = EngelkingParams {
                                                m,
                                                y: y.clone(),
                                                y_prime,
                                                x0,
                                                x1,
                                                x2,
                                                y1,
                                                y2,
                                            };
                                            let rep = engelking_witness_check(&p)
                                                .map_err(|e| e.to_string())?;
                                            memo.insert(key, rep.passed());
                                            rep.passed()
                                        }
                                    };
                                    ensure(ok, || {
                                        format!("check fails at m = {m}, x0 = {x0}, x1 = {x1}, x2 = {x2}, y1 = {y1}, y2 = {y2}")
                                    })?;
                                    tuples += 1;
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    Ok((tuples, memo.len()))
}

fn engelking() -> Outcome {
    let mut r = rng(7);
    for m in 1..=12 {
        let top = (1usize << m) - 1;
        let member = |r: &mut ChaCha8Rng| {
            let table: Vec<bool> = (0..1usize << m).map(|_| r.gen()).collect();
            FreeElement::from_fn(m, |a| if a == top { table[0] } else { table[a] }).unwrap()
        };
        for _ in 0..1000 {
            let (a, b) = (member(&mut r), member(&mut r));
            let all = [
                a.and(&b).unwrap(),
                a.or(&b).unwrap(),
                a.not(),
                FreeElement::zero(m).unwrap(),
            ];
            ensure(
                engelking_member(m, &a).unwrap()
                    && all.iter().all(|e| engelking_member(m, e).unwrap()),
                || format!("member closure fails at m = {m}"),
            )?;
        }
    }
    for m in 3..=12 {
        let x = |i: usize| FreeElement::var(m, i).unwrap();
        let b = x(0).or(&x(1)).unwrap().or(&x(2).not()).unwrap();
        ensure(engelking_member(m, &b).unwrap(), || {
            format!("b not in B at m = {m}")
        })?;
        ensure(!engelking_member(m, &x(0)).unwrap(), || {
            format!("x0 in B at m = {m}")
        })?;
    }
    let (tuples, distinct) = witness_tuples()?;
    Ok(format!(
        "member closure on 1000 pairs for m = 1..12; b in B, x0 not in B; witness check passes on all {tuples} tuples ({distinct} distinct checks)"
    ))
}

fn extraction() -> Outcome {
    let mut r = rng(8);
    let mut families = 0;
    let mut fallbacks = 0;
    for _ in 0..1000 {
        let n = r.gen_range(1..=4);
        let alg = FreeAlgebra::new(n).unwrap();
        let xs: Vec<FreeElement> = (0..r.gen_range(1..=12))
            .map(|_| {
                let table: Vec<bool> = (0..1usize << n).map(|_| r.gen()).collect();
                let keep: BTreeSet<usize> = (0..n).filter(|_| r.gen_bool(0.4)).collect();
                FreeElement::from_fn(n, |a| table[a])
                    .unwrap()
                    .exists_except(&keep)
            })
            .collect();
        let cert = match extract_independent(
            &alg,
            &interpolation_fn_mapping(n),
            &xs,
            DEFAULT_SUBALGEBRA_CAP,
        ) {
            Ok(cert) => cert,
            Err(ConstructionError::EmptyResult) => continue,
            Err(e) => return Err(e.to_string()),
        };
        ensure(
            independence(&alg, &cert.family, DEFAULT_FAMILY_CAP)
                .unwrap()
                .is_independent(),
            || "emitted family is dependent".into(),
        )?;
        families += 1;
        fallbacks += usize::from(!cert.dropped.is_empty());
    }
    for atoms in 1..=4 {
        let ba = FiniteBa::new(atoms).unwrap();
        let p = ba.poset().unwrap();
        for _ in 0..100 {
            let f = random_star_mapping(&mut r, &p, 0.05);
            let xs: Vec<u64> = (0..r.gen_range(1..=8))
                .map(|_| r.gen_range(0..=ba.full()))
                .collect();
            let cert = match extract_independent(&ba, &f, &xs, DEFAULT_SUBALGEBRA_CAP) {
                Ok(cert) => cert,
                Err(ConstructionError::EmptyResult) => continue,
                Err(e) => return Err(e.to_string()),
            };
            ensure(
                independence(&ba, &cert.family, DEFAULT_FAMILY_CAP)
                    .unwrap()
                    .is_independent(),
                || "emitted family is dependent".into(),
            )?;
            families += 1;
            fallbacks += usize::from(!cert.dropped.is_empty());
        }
    }
    let alg = FreeAlgebra::new(4).unwrap();
    let gens: Vec<FreeElement> = (0..4).map(|i| FreeElement::var(4, i).unwrap()).collect();
    let cert = extract_independent(
        &alg,
        &interpolation_fn_mapping(4),
        &gens,
        DEFAULT_SUBALGEBRA_CAP,
    )
    .map_err(|e| e.to_string())?;
    ensure(cert.family.len() == 4, || {
        format!("Fr(4) family of size {}", cert.family.len())
    })?;
    Ok(format!(
        "{families} families independent, {fallbacks} needed the fallback; Fr(4) generators give 4"
    ))
}

fn relative_completeness() -> Outcome {
    let mut subs = 0;
    // the one-element algebra is degenerate and not represented
    for atoms in 1..=4 {
        let ba = FiniteBa::new(atoms).map_err(|e| e.to_string())?;
        let p = ba.poset().map_err(|e| e.to_string())?;
        for sub in ba.all_subalgebras() {
            ensure(
                is_rel_complete(&p, &FiniteBa::indices(&sub)).unwrap(),
                || format!("subalgebra {sub:?} of the {atoms}-atom algebra is not rc"),
            )?;
            subs += 1;
        }
        let cfg = GameConfig::new(
            Structure::algebra(ba).unwrap(),
            5,
            Bound::Infinite,
            Bound::Finite(2),
        )
        .unwrap();
        for mut first in bundled_adversaries(atoms as u64) {
            let t = play(&cfg, first.as_mut(), &mut rc_closure_strategy())
                .map_err(|e| e.to_string())?;
            ensure(t.verdict.is_win(), || "rc-closure lost".into())?;
        }
    }
    Ok(format!(
        "{subs} subalgebras of the algebras with 1..16 elements are rc"
    ))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 9] = [
        ("verifier equivalence", verifier_equivalence),
        ("interpolation", interpolation),
        ("transfers", transfers),
        ("synthesis", synthesis),
        ("interval algebra", interval_algebra),
        ("games", games),
        ("engelking", engelking),
        ("extraction", extraction),
        ("relative completeness", relative_completeness),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let (verdict, detail) = match run() {
            Ok(d) => ("pass", d),
            Err(d) => {
                failed += 1;
                ("fail", d)
            }
        };
        println!(
            "criterion {}: {verdict} ({name}: {detail}; {:.1?})",
            i + 1,
            start.elapsed()
        );
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
