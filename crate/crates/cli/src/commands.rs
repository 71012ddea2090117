use std::collections::BTreeSet;
use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use anyhow::{anyhow, bail, Context, Result};
use num_rational::Rational64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use fnlab::boolean::{FiniteBa, FreeAlgebra, FreeElement, DEFAULT_SUBALGEBRA_CAP};
use fnlab::constructions::{
    engelking_member, engelking_witness_check, extract_independent, EngelkingParams,
};
use fnlab::game::{
    chain_adversary, closure_strategy, play, rc_closure_strategy, FixedStrategy, GameConfig,
    PassStrategy, RandomStrategy, Strategy, SweepStrategy,
};
use fnlab::interval::{
    dense_wfn_mapping, lift_mapping, parse_rational, project_mapping, IntervalAlgebra,
    IntervalElement, RationalLine,
};
use fnlab::mapping::{
    chain_union_mapping, check_pair, check_star, enumeration_mapping, extend_mapping,
    interpolation_fn_mapping, quotient_lift_mapping, quotient_push_mapping, restrict_mapping,
    retract_transfer, synth_min_fn, verify_star, Bound, FnMapping, FnOracle, FullMapping,
    Objective, Order, Quotient, StarVerdict, WitnessFamily,
};
use fnlab::poset::{Poset, Subset};
use fnlab::substructure::{
    closed_set_is_substructure, k_substructure_witness, lower_projection, upper_projection,
    Structure, SubstructureVerdict,
};
use fnlab::text::{
    parse_linord, parse_mapping, parse_ordmap, parse_poset, parse_subset, write_mapping,
};

use crate::{
    CarrierArgs, Command, EngelkingCommand, Format, IntalgCommand, IntalgOp, LineArgs,
    ProjectSource, TransferCommand,
};

/// What a command prints and its exit code.
pub struct Outcome {
    pub text: String,
    pub code: u8,
}

impl Outcome {
    fn ok(text: String) -> Self {
        Outcome { text, code: 0 }
    }

    fn fail(text: String) -> Self {
        Outcome { text, code: 1 }
    }
}

pub fn run(cmd: Command) -> Result<Outcome> {
    match cmd {
        Command::Verify {
            poset,
            ba,
            map,
            samples,
        } => verify(poset.as_deref(), ba, &map, samples),
        Command::Synth {
            carrier,
            objective,
            cap,
        } => {
            let s = load_structure(&carrier)?;
            let objective = match objective.as_str() {
                "max" => Objective::MaxSize,
                "total" => Objective::TotalSize,
                o => bail!("unknown objective `{o}` (expected `max` or `total`)"),
            };
            let f = synth_min_fn(s.order(), objective, cap)?;
            Ok(Outcome::ok(write_mapping(&f)))
        }
        Command::Witness {
            carrier,
            subset,
            k,
            map,
            projections,
        } => witness(&carrier, &subset, &k, map.as_deref(), projections),
        Command::Transfer(t) => transfer(t),
        Command::Intalg(c) => intalg(c),
        Command::Game {
            carrier,
            rounds,
            move_bound,
            k,
            first,
            second,
            map,
            format,
        } => {
            let s = load_structure(&carrier)?;
            let cfg = GameConfig::new(s, rounds, parse_bound(&move_bound)?, parse_bound(&k)?)?;
            let mut one = first_player(&cfg, &first)?;
            let mut two: Box<dyn Strategy> = match second.as_str() {
                "closure" => {
                    let path = map
                        .as_deref()
                        .ok_or_else(|| anyhow!("`--second closure` needs --map"))?;
                    let f = parse_mapping(&read(path)?, cfg.structure.order())?;
                    Box::new(closure_strategy(f)?)
                }
                "rc-closure" => Box::new(rc_closure_strategy()),
                o => bail!("unknown strategy `{o}` for II"),
            };
            let t = play(&cfg, one.as_mut(), two.as_mut())?;
            let text = match format {
                Format::Human => t.report(&cfg),
                Format::Tsv => t.tsv(&cfg),
            };
            Ok(Outcome {
                text,
                code: if t.verdict.is_win() { 0 } else { 1 },
            })
        }
        Command::Engelking(c) => engelking(c),
        Command::Independent {
            free,
            ba,
            map,
            elements,
        } => independent(free, ba, map.as_deref(), &elements),
    }
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn load_poset(path: &Path) -> Result<Poset> {
    parse_poset(&read(path)?).with_context(|| format!("in {}", path.display()))
}

fn load_structure(c: &CarrierArgs) -> Result<Structure> {
    match (&c.poset, c.ba) {
        (Some(p), None) => Ok(Structure::poset(load_poset(p)?)),
        (None, Some(n)) => Ok(Structure::algebra(FiniteBa::new(n)?)?),
        _ => bail!("give exactly one of --poset and --ba"),
    }
}

fn load_mapping(path: &Path, carrier: &Poset) -> Result<FnMapping> {
    parse_mapping(&read(path)?, carrier).with_context(|| format!("in {}", path.display()))
}

fn parse_bound(s: &str) -> Result<Bound> {
    s.parse::<Bound>()
        .map_err(|e| anyhow!("bad bound `{s}`: {e}"))
}

/// Seed for randomized commands, from `FNLAB_SEED`.
fn seed() -> Result<u64> {
    match std::env::var("FNLAB_SEED") {
        Ok(s) => s
            .trim()
            .parse()
            .map_err(|_| anyhow!("FNLAB_SEED must be an unsigned integer, got `{s}`")),
        Err(_) => Ok(0),
    }
}

/// Splits on commas and whitespace.
fn words(s: &str) -> impl Iterator<Item = &str> {
    s.split(|c: char| c == ',' || c.is_whitespace())
        .filter(|w| !w.is_empty())
}

fn verify(poset: Option<&Path>, ba: Option<usize>, map: &str, samples: usize) -> Result<Outcome> {
    if let Some(spec) = map.strip_prefix("interpolation:") {
        if poset.is_some() || ba.is_some() {
            bail!("the interpolation mapping lives on its own free algebra");
        }
        let n: usize = spec
            .strip_prefix("n=")
            .and_then(|n| n.parse().ok())
            .ok_or_else(|| anyhow!("expected `interpolation:n=<k>`, got `{map}`"))?;
        return verify_interpolation(n, samples);
    }
    let s = match (poset, ba) {
        (Some(p), None) => Structure::poset(load_poset(p)?),
        (None, Some(n)) => Structure::algebra(FiniteBa::new(n)?)?,
        _ => bail!("give one of --poset and --ba"),
    };
    let f = load_mapping(Path::new(map), s.order())?;
    Ok(match verify_star(s.order(), &f)? {
        StarVerdict::Ok => Outcome::ok("ok\n".into()),
        StarVerdict::Counterexample(a, b) => Outcome::fail(format!(
            "counterexample: {} {}\n",
            s.order().id(a),
            s.order().id(b)
        )),
    })
}

/// Exhaustive up to three generators, sampled above.
fn verify_interpolation(n: usize, samples: usize) -> Result<Outcome> {
    let alg = FreeAlgebra::new(n)?;
    let f = interpolation_fn_mapping(n);
    let show = |a: &FreeElement, b: &FreeElement| {
        Outcome::fail(format!("counterexample: {} {}\n", a.to_hex(), b.to_hex()))
    };
    if n <= 3 {
        return Ok(match check_star(&alg, &f) {
            StarVerdict::Ok => Outcome::ok("ok\n".into()),
            StarVerdict::Counterexample(a, b) => show(&a, &b),
        });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed()?);
    let words = (1usize << n).div_ceil(64);
    let random = |rng: &mut ChaCha8Rng| -> Result<FreeElement> {
        Ok(FreeElement::from_words(
            n,
            (0..words).map(|_| rng.gen()).collect(),
        )?)
    };
    for _ in 0..samples {
        let a = random(&mut rng)?;
        let b = a.or(&random(&mut rng)?)?;
        if !check_pair(&alg, &f, &a, &b) {
            return Ok(show(&a, &b));
        }
    }
    Ok(Outcome::ok(format!("ok ({samples} sampled pairs)\n")))
}

fn witness(
    carrier: &CarrierArgs,
    subset: &str,
    k: &str,
    map: Option<&Path>,
    projections: bool,
) -> Result<Outcome> {
    let s = load_structure(carrier)?;
    let p = s.order();
    let a = parse_subset(p, subset)?;
    let k = parse_bound(k)?;
    let mut out = String::new();
    if projections {
        let show = |x: Option<usize>| x.map_or("-".to_string(), |x| p.id(x).to_string());
        for x in 0..p.len() {
            let _ = writeln!(
                out,
                "proj {} lower: {} upper: {}",
                p.id(x),
                show(lower_projection(p, &a, x)?),
                show(upper_projection(p, &a, x)?)
            );
        }
    }
    if let Some(path) = map {
        let g = load_mapping(path, p)?;
        let w = closed_set_is_substructure(&s, &g, &a, k)?;
        out.push_str(&w.report());
        return Ok(Outcome::ok(out));
    }
    Ok(match k_substructure_witness(&s, &a, k)? {
        SubstructureVerdict::Witness(w) => {
            out.push_str(&w.report());
            Outcome::ok(out)
        }
        SubstructureVerdict::Refutation(x) => {
            let _ = writeln!(out, "refutation: {}", p.id(x));
            Outcome::fail(out)
        }
    })
}

fn transfer(t: TransferCommand) -> Result<Outcome> {
    let f = match t {
        TransferCommand::Enumerate { carrier, order } => {
            let s = load_structure(&carrier)?;
            let p = s.order();
            let order = match order {
                Some(o) => words(&o)
                    .map(|id| p.index_of(id))
                    .collect::<Result<Vec<_>, _>>()?,
                None => (0..p.len()).collect(),
            };
            enumeration_mapping(p, &order)?
        }
        TransferCommand::Restrict {
            carrier,
            subset,
            map,
        } => {
            let s = load_structure(&carrier)?;
            let p = s.order();
            let a = parse_subset(p, &subset)?;
            let g = load_mapping(&map, p)?;
            let w = WitnessFamily::canonical(p.clone(), a.clone())?;
            restrict_mapping(p, &a, &g, &w)?
        }
        TransferCommand::Extend {
            carrier,
            subset,
            inner,
            map,
        } => {
            let s = load_structure(&carrier)?;
            let p = s.order();
            let a = parse_subset(p, &subset)?;
            let (sub, _) = p.induced(&a)?;
            let f = load_mapping(&inner, &sub)?;
            let g = load_mapping(&map, p)?;
            let w = WitnessFamily::canonical(p.clone(), a.clone())?;
            extend_mapping(p, &a, &f, &g, &w)?
        }
        TransferCommand::Retract {
            source,
            target,
            i,
            j,
            map,
        } => {
            let a = load_poset(&source)?;
            let b = load_poset(&target)?;
            let i = parse_ordmap(&read(&i)?, &a, &b)?;
            let j = parse_ordmap(&read(&j)?, &b, &a)?;
            let g = load_mapping(&map, &b)?;
            retract_transfer(&g, &i, &j)?
        }
        TransferCommand::Chain { links } => {
            let chain = links
                .iter()
                .map(|l| {
                    let (pos, map) = l
                        .split_once(':')
                        .ok_or_else(|| anyhow!("expected `<poset>:<mapping>`, got `{l}`"))?;
                    let p = load_poset(Path::new(pos))?;
                    load_mapping(Path::new(map), &p)
                })
                .collect::<Result<Vec<_>>>()?;
            chain_union_mapping(&chain)?
        }
        TransferCommand::QuotientPush { ba, ideal, map } => {
            let q = quotient(ba, &ideal)?;
            let g = load_mapping(&map, &q.ambient().poset()?)?;
            quotient_push_mapping(&q, &g)?
        }
        TransferCommand::QuotientLift { ba, ideal, map } => {
            let q = quotient(ba, &ideal)?;
            let f = load_mapping(&map, &q.target().poset()?)?;
            quotient_lift_mapping(&q, &f)?
        }
    };
    Ok(Outcome::ok(write_mapping(&f)))
}

fn quotient(atoms: usize, ideal: &str) -> Result<Quotient> {
    let ba = FiniteBa::new(atoms)?;
    let members = words(ideal)
        .map(|id| ba.parse_id(id))
        .collect::<Result<BTreeSet<u64>, _>>()?;
    Ok(Quotient::new(ba, &members)?)
}

enum Line {
    Finite(IntervalAlgebra),
    Rational,
}

fn load_line(l: &LineArgs) -> Result<Line> {
    match (&l.linord, l.rational) {
        (Some(p), false) => Ok(Line::Finite(parse_linord(&read(p)?)?)),
        (None, true) => Ok(Line::Rational),
        _ => bail!("give one of --linord and --rational"),
    }
}

fn load_alg(path: &Path) -> Result<IntervalAlgebra> {
    parse_linord(&read(path)?).with_context(|| format!("in {}", path.display()))
}

/// Runs an operation on interval elements; `a ∖ b` is the counterexample
/// to `a <= b`.
fn interval_op<P: Ord + Clone>(
    op: IntalgOp,
    a: &IntervalElement<P>,
    b: Option<&IntervalElement<P>>,
    show: impl Fn(&IntervalElement<P>) -> String,
) -> Result<Outcome> {
    let need = || b.ok_or_else(|| anyhow!("this operation takes two elements"));
    Ok(match op {
        IntalgOp::Union => Outcome::ok(format!("{}\n", show(&a.union(need()?)))),
        IntalgOp::Intersection => Outcome::ok(format!("{}\n", show(&a.intersection(need()?)))),
        IntalgOp::Complement => {
            if b.is_some() {
                bail!("complement takes one element");
            }
            Outcome::ok(format!("{}\n", show(&a.complement())))
        }
        IntalgOp::Leq => {
            let b = need()?;
            if a.leq(b) {
                Outcome::ok("true\n".into())
            } else {
                Outcome::fail(format!(
                    "false\ncounterexample: {}\n",
                    show(&a.intersection(&b.complement()))
                ))
            }
        }
    })
}

fn intalg(c: IntalgCommand) -> Result<Outcome> {
    match c {
        IntalgCommand::Ops { line, op, a, b } => match load_line(&line)? {
            Line::Finite(alg) => {
                let a = alg.parse(&a)?;
                let b = b.map(|b| alg.parse(&b)).transpose()?;
                interval_op(op, &a, b.as_ref(), |e| alg.display(e))
            }
            Line::Rational => {
                let a = parse_rational(&a)?;
                let b = b.map(|b| parse_rational(&b)).transpose()?;
                interval_op(op, &a, b.as_ref(), |e| e.to_string())
            }
        },
        IntalgCommand::Ep { line, a } => {
            let ep: Vec<String> = match load_line(&line)? {
                Line::Finite(alg) => alg
                    .parse(&a)?
                    .endpoints()
                    .iter()
                    .map(|&x| alg.ids()[x].clone())
                    .collect(),
                Line::Rational => parse_rational(&a)?
                    .endpoints()
                    .iter()
                    .map(|x| x.to_string())
                    .collect(),
            };
            Ok(Outcome::ok(format!("{}\n", ep.join(" "))))
        }
        IntalgCommand::DenseMap {
            line,
            skeleton,
            pair,
        } => match load_line(&line)? {
            Line::Finite(alg) => {
                let d = words(&skeleton)
                    .map(|id| alg.position(id))
                    .collect::<Result<BTreeSet<_>, _>>()?;
                let g = dense_wfn_mapping(d);
                match pair {
                    Some(p) => {
                        let (a, b) = (alg.parse(&p[0])?, alg.parse(&p[1])?);
                        dense_pair(&alg, &g, &a, &b, |e| alg.display(e))
                    }
                    None => Ok(star_outcome(check_star(&alg, &g), |e| alg.display(e))),
                }
            }
            Line::Rational => {
                let d = words(&skeleton)
                    .map(|t| {
                        t.parse::<Rational64>()
                            .map_err(|_| anyhow!("bad rational `{t}`"))
                    })
                    .collect::<Result<BTreeSet<_>>>()?;
                let g = dense_wfn_mapping(d);
                let p = pair.ok_or_else(|| {
                    anyhow!("the rational algebra is infinite; check a single --pair")
                })?;
                let (a, b) = (parse_rational(&p[0])?, parse_rational(&p[1])?);
                dense_pair(&RationalLine, &g, &a, &b, |e| e.to_string())
            }
        },
        IntalgCommand::Lift { linord, map } => {
            let alg = load_alg(&linord)?;
            let f = load_mapping(&map, &alg.chain_poset())?;
            let g = lift_mapping(&alg, &f)?;
            Ok(star_outcome(check_star(&alg, &g), |e| alg.display(e)))
        }
        IntalgCommand::Project {
            linord,
            from,
            skeleton,
            map,
        } => {
            let alg = load_alg(&linord)?;
            let f = match from {
                ProjectSource::Full => project_mapping(&alg, &FullMapping)?,
                ProjectSource::Dense => {
                    let s = skeleton.ok_or_else(|| anyhow!("`--from dense` needs --skeleton"))?;
                    let d = words(&s)
                        .map(|id| alg.position(id))
                        .collect::<Result<BTreeSet<_>, _>>()?;
                    project_mapping(&alg, &dense_wfn_mapping(d))?
                }
                ProjectSource::Lift => {
                    let path = map.ok_or_else(|| anyhow!("`--from lift` needs --map"))?;
                    let f = load_mapping(&path, &alg.chain_poset())?;
                    project_mapping(&alg, &lift_mapping(&alg, &f)?)?
                }
            };
            Ok(Outcome::ok(write_mapping(&f)))
        }
    }
}

fn star_outcome<E>(v: StarVerdict<E>, show: impl Fn(&E) -> String) -> Outcome {
    match v {
        StarVerdict::Ok => Outcome::ok("ok\n".into()),
        StarVerdict::Counterexample(a, b) => {
            Outcome::fail(format!("counterexample: {} | {}\n", show(&a), show(&b)))
        }
    }
}

fn dense_pair<O, M>(
    order: &O,
    g: &M,
    a: &O::Elem,
    b: &O::Elem,
    show: impl Fn(&O::Elem) -> String,
) -> Result<Outcome>
where
    O: Order,
    M: FnOracle<O>,
{
    if !order.le(a, b) {
        bail!(
            "the pair is not ordered: {} is not below {}",
            show(a),
            show(b)
        );
    }
    Ok(match g.witness(order, a, b) {
        Some(c) if check_pair(order, g, a, b) => Outcome::ok(format!("witness: {}\n", show(&c))),
        _ => Outcome::fail(format!("counterexample: {} | {}\n", show(a), show(b))),
    })
}

fn first_player(cfg: &GameConfig, name: &str) -> Result<Box<dyn Strategy>> {
    Ok(match name {
        "pass" => Box::new(PassStrategy),
        "sweep" => Box::new(SweepStrategy),
        "random" => Box::new(RandomStrategy { seed: seed()? }),
        "chain" => Box::new(chain_adversary()),
        _ => match name.strip_prefix("fixed:") {
            Some(ids) => {
                let p = cfg.structure.order();
                let set = words(ids)
                    .map(|id| p.index_of(id))
                    .collect::<Result<Subset, _>>()?;
                Box::new(FixedStrategy { set })
            }
            None => bail!("unknown strategy `{name}` for I"),
        },
    })
}

fn index_set(s: &str) -> Result<BTreeSet<usize>> {
    words(s)
        .map(|w| {
            w.trim_start_matches('x')
                .parse()
                .map_err(|_| anyhow!("bad generator `{w}`"))
        })
        .collect()
}

fn engelking(c: EngelkingCommand) -> Result<Outcome> {
    match c {
        EngelkingCommand::Member { m, expr } => {
            let e = FreeAlgebra::new(m)?.parse(&expr)?;
            Ok(if engelking_member(m, &e)? {
                Outcome::ok("member: true\n".into())
            } else {
                Outcome::fail(format!("member: false\nrefutation: {}\n", e.to_expr()))
            })
        }
        EngelkingCommand::WitnessCheck {
            m,
            y,
            y_prime,
            x0,
            x1,
            x2,
            y1,
            y2,
        } => {
            let params = EngelkingParams {
                m,
                y: index_set(&y)?,
                y_prime: index_set(&y_prime)?,
                x0,
                x1,
                x2,
                y1,
                y2,
            };
            let r = engelking_witness_check(&params)?;
            let mut text = r.report();
            Ok(if r.passed() {
                Outcome::ok(text)
            } else {
                let _ = writeln!(text, "refutation: {}", r.b);
                Outcome::fail(text)
            })
        }
    }
}

fn independent(
    free: Option<usize>,
    ba: Option<usize>,
    map: Option<&Path>,
    elements: &str,
) -> Result<Outcome> {
    let items = elements.split(';').map(str::trim).filter(|s| !s.is_empty());
    let text = match (free, ba, map) {
        (Some(n), None, None) => {
            let alg = FreeAlgebra::new(n)?;
            let xs = items.map(|s| alg.parse(s)).collect::<Result<Vec<_>, _>>()?;
            let f = interpolation_fn_mapping(n);
            extract_independent(&alg, &f, &xs, DEFAULT_SUBALGEBRA_CAP)?.report(|e| e.to_expr())
        }
        (None, Some(n), Some(path)) => {
            let alg = FiniteBa::new(n)?;
            let f = load_mapping(path, &alg.poset()?)?;
            let xs = items
                .map(|s| alg.parse_id(s))
                .collect::<Result<Vec<_>, _>>()?;
            extract_independent(&alg, &f, &xs, DEFAULT_SUBALGEBRA_CAP)?.report(|&e| alg.id(e))
        }
        _ => bail!("give --free <n>, or --ba <n> with --map"),
    };
    Ok(Outcome::ok(text))
}
