//! The closure game on a finite structure: players I and II alternately
//! enlarge a set, `X_0 ⊆ Y_0 ⊆ X_1 ⊆ Y_1 ⊆ ...`, and II wins when the final
//! union is a `k`-substructure.
//!
//! Moves are the accumulated sets themselves and must stay below the move
//! bound `s`. The verdict is taken after a fixed number of rounds.

use std::fmt;
use std::fmt::Write as _;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::boolean::{generate, FiniteBa, DEFAULT_SUBALGEBRA_CAP};
use crate::mapping::{verify_star, Bound, FnMapping, StarVerdict};
use crate::poset::Subset;
use crate::substructure::{
    k_substructure_witness, Structure, SubstructureError, SubstructureVerdict, SubstructureWitness,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Mover {
    I,
    II,
}

impl fmt::Display for Mover {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mover::I => "I",
            Mover::II => "II",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StrategyKind {
    /// Depends on the current accumulated set only.
    Simple,
    /// May depend on the whole history.
    General,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GameError {
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
    #[error("strategy `{name}` moves for player {actual}, expected {expected}")]
    WrongMover {
        name: String,
        expected: Mover,
        actual: Mover,
    },
    #[error("illegal move by {mover} (`{name}`) in round {round}: {reason}")]
    IllegalMove {
        mover: Mover,
        name: String,
        round: usize,
        reason: String,
    },
    #[error("closure has {size} elements, against the move bound {bound}")]
    ClosureExceedsBound { size: usize, bound: Bound },
    #[error("carrier is not a linear order")]
    NotALinearOrder,
    #[error("generated subalgebra exceeds the size cap")]
    SizeLimitExceeded,
    #[error("precondition failed: {0}")]
    PreconditionFailed(String),
    #[error(transparent)]
    Substructure(#[from] SubstructureError),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GameConfig {
    pub structure: Structure,
    pub rounds: usize,
    /// Every move has size below `move_bound`.
    pub move_bound: Bound,
    /// II wins when the union is a `verdict_bound`-substructure.
    pub verdict_bound: Bound,
}

impl GameConfig {
    pub fn new(
        structure: Structure,
        rounds: usize,
        move_bound: Bound,
        verdict_bound: Bound,
    ) -> Result<Self, GameError> {
        if rounds == 0 {
            return Err(GameError::InvalidConfig("at least one round".into()));
        }
        if move_bound < Bound::Finite(2) {
            return Err(GameError::InvalidConfig("move bound below 2".into()));
        }
        Ok(GameConfig {
            structure,
            rounds,
            move_bound,
            verdict_bound,
        })
    }
}

pub trait Strategy {
    fn name(&self) -> String;
    fn mover(&self) -> Mover;
    fn kind(&self) -> StrategyKind {
        StrategyKind::Simple
    }
    /// The next accumulated set, given earlier moves and the current set.
    fn respond(
        &mut self,
        cfg: &GameConfig,
        history: &[Subset],
        current: &Subset,
    ) -> Result<Subset, GameError>;
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    Win(SubstructureWitness),
    /// The union misses the bound at this element.
    Refuted(usize),
    /// On an algebra, the union is not a subalgebra.
    NotASubalgebra,
}

impl Verdict {
    pub fn is_win(&self) -> bool {
        matches!(self, Verdict::Win(_))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GameTranscript {
    pub moves: Vec<(Mover, Subset)>,
    pub union: Subset,
    pub verdict: Verdict,
}

impl GameTranscript {
    /// `X_0 ⊆ Y_0 ⊆ X_1 ⊆ ...`
    pub fn chain_holds(&self) -> bool {
        self.moves.windows(2).all(|w| w[0].1.is_subset(&w[1].1))
    }

    /// Human-readable transcript: one line per half-move, then the verdict.
    pub fn report(&self, cfg: &GameConfig) -> String {
        let p = cfg.structure.order();
        let ids = |s: &Subset| p.ids_of(s).collect::<Vec<_>>().join(" ");
        let mut out = String::new();
        for (m, s) in &self.moves {
            let _ = writeln!(out, "{m}: {}", ids(s));
        }
        match &self.verdict {
            Verdict::Win(w) => {
                out.push_str("verdict: win\n");
                out.push_str(&w.report());
            }
            Verdict::Refuted(b) => {
                let _ = writeln!(out, "verdict: lose\nrefutation: {}", p.id(*b));
            }
            Verdict::NotASubalgebra => {
                out.push_str("verdict: lose\nrefutation: not-a-subalgebra\n");
            }
        }
        out
    }

    /// Tab-separated transcript: `round mover ids`, then `verdict` lines.
    pub fn tsv(&self, cfg: &GameConfig) -> String {
        let p = cfg.structure.order();
        let mut out = String::new();
        for (i, (m, s)) in self.moves.iter().enumerate() {
            let _ = writeln!(
                out,
                "{}\t{m}\t{}",
                i / 2,
                p.ids_of(s).collect::<Vec<_>>().join(",")
            );
        }
        match &self.verdict {
            Verdict::Win(_) => out.push_str("verdict\twin\n"),
            Verdict::Refuted(b) => {
                let _ = writeln!(out, "verdict\tlose\t{}", p.id(*b));
            }
            Verdict::NotASubalgebra => out.push_str("verdict\tlose\tnot-a-subalgebra\n"),
        }
        out
    }
}

fn check_move(
    cfg: &GameConfig,
    strategy: &dyn Strategy,
    round: usize,
    before: &Subset,
    after: &Subset,
) -> Result<(), GameError> {
    let illegal = |reason: String| GameError::IllegalMove {
        mover: strategy.mover(),
        name: strategy.name(),
        round,
        reason,
    };
    if !before.is_subset(after) {
        return Err(illegal("move drops earlier elements".into()));
    }
    if after.iter().any(|&x| x >= cfg.structure.order().len()) {
        return Err(illegal("move leaves the carrier".into()));
    }
    if !cfg.move_bound.admits(after.len()) {
        return Err(illegal(format!(
            "move of size {} against the bound {}",
            after.len(),
            cfg.move_bound
        )));
    }
    Ok(())
}

/// Plays `cfg.rounds` rounds of I against II and judges the union.
pub fn play(
    cfg: &GameConfig,
    first: &mut dyn Strategy,
    second: &mut dyn Strategy,
) -> Result<GameTranscript, GameError> {
    for (s, expected) in [(&*first, Mover::I), (&*second, Mover::II)] {
        if s.mover() != expected {
            return Err(GameError::WrongMover {
                name: s.name(),
                expected,
                actual: s.mover(),
            });
        }
    }
    let mut history: Vec<Subset> = Vec::with_capacity(2 * cfg.rounds);
    let mut moves = Vec::with_capacity(2 * cfg.rounds);
    let mut current = Subset::new();
    for round in 0..cfg.rounds {
        for mover in [Mover::I, Mover::II] {
            let s: &mut dyn Strategy = match mover {
                Mover::I => &mut *first,
                Mover::II => &mut *second,
            };
            let next = s.respond(cfg, &history, &current)?;
            check_move(cfg, s, round, &current, &next)?;
            history.push(next.clone());
            moves.push((mover, next.clone()));
            current = next;
        }
    }
    let verdict = match k_substructure_witness(&cfg.structure, &current, cfg.verdict_bound) {
        Ok(SubstructureVerdict::Witness(w)) => Verdict::Win(w),
        Ok(SubstructureVerdict::Refutation(b)) => Verdict::Refuted(b),
        Err(SubstructureError::NotASubstructure(_)) => Verdict::NotASubalgebra,
        Err(e) => return Err(e.into()),
    };
    Ok(GameTranscript {
        moves,
        union: current,
        verdict,
    })
}

fn subalgebra_of(ba: &FiniteBa, s: &Subset) -> Result<Subset, GameError> {
    let gens: Vec<u64> = s.iter().map(|&x| x as u64).collect();
    let members =
        generate(ba, &gens, DEFAULT_SUBALGEBRA_CAP).map_err(|_| GameError::SizeLimitExceeded)?;
    Ok(FiniteBa::indices(&members))
}

/// II answers with the least superset closed under `f` and, on an algebra,
/// under the Boolean operations.
#[derive(Debug, Clone)]
pub struct ClosureStrategy {
    f: FnMapping,
}

pub fn closure_strategy(f: FnMapping) -> Result<ClosureStrategy, GameError> {
    if let StarVerdict::Counterexample(a, b) =
        verify_star(f.carrier(), &f).map_err(SubstructureError::from)?
    {
        return Err(GameError::PreconditionFailed(format!(
            "mapping fails (*) at ({}, {})",
            f.carrier().id(a),
            f.carrier().id(b)
        )));
    }
    Ok(ClosureStrategy { f })
}

impl ClosureStrategy {
    pub fn close(&self, structure: &Structure, start: &Subset) -> Result<Subset, GameError> {
        let mut y = start.clone();
        loop {
            let before = y.len();
            y = self.f.closure(&y);
            if let Some(ba) = structure.ba() {
                y = subalgebra_of(ba, &y)?;
            }
            if y.len() == before {
                return Ok(y);
            }
        }
    }
}

impl Strategy for ClosureStrategy {
    fn name(&self) -> String {
        "closure".into()
    }

    fn mover(&self) -> Mover {
        Mover::II
    }

    fn respond(
        &mut self,
        cfg: &GameConfig,
        _history: &[Subset],
        current: &Subset,
    ) -> Result<Subset, GameError> {
        if self.f.carrier() != cfg.structure.order() {
            return Err(GameError::PreconditionFailed(
                "mapping is defined on a different carrier".into(),
            ));
        }
        let y = self.close(&cfg.structure, current)?;
        if !cfg.move_bound.admits(y.len()) {
            return Err(GameError::ClosureExceedsBound {
                size: y.len(),
                bound: cfg.move_bound,
            });
        }
        Ok(y)
    }
}

/// II answers with the subalgebra generated by the current set.
#[derive(Debug, Clone, Copy, Default)]
pub struct RcClosureStrategy;

pub fn rc_closure_strategy() -> RcClosureStrategy {
    RcClosureStrategy
}

impl Strategy for RcClosureStrategy {
    fn name(&self) -> String {
        "rc-closure".into()
    }

    fn mover(&self) -> Mover {
        Mover::II
    }

    fn respond(
        &mut self,
        cfg: &GameConfig,
        _history: &[Subset],
        current: &Subset,
    ) -> Result<Subset, GameError> {
        let ba = cfg
            .structure
            .ba()
            .ok_or_else(|| GameError::PreconditionFailed("carrier is not an algebra".into()))?;
        subalgebra_of(ba, current)
    }
}

/// I adds the least element strictly above the largest non-top element
/// played so far, passing once no such element is left below the top.
#[derive(Debug, Clone, Copy, Default)]
pub struct ChainAdversary;

pub fn chain_adversary() -> ChainAdversary {
    ChainAdversary
}

impl ChainAdversary {
    /// The largest element of `s` other than the top, in chain position.
    pub fn sup_below_top(order: &[usize], s: &Subset) -> Option<usize> {
        let top = order.len().checked_sub(1)?;
        order[..top].iter().rposition(|x| s.contains(x))
    }
}

impl Strategy for ChainAdversary {
    fn name(&self) -> String {
        "chain".into()
    }

    fn mover(&self) -> Mover {
        Mover::I
    }

    fn respond(
        &mut self,
        cfg: &GameConfig,
        _history: &[Subset],
        current: &Subset,
    ) -> Result<Subset, GameError> {
        let order = cfg
            .structure
            .order()
            .chain_order()
            .filter(|o| !o.is_empty())
            .ok_or(GameError::NotALinearOrder)?;
        let next = match Self::sup_below_top(&order, current) {
            Some(pos) => pos + 1,
            None => 0,
        };
        let mut x = current.clone();
        if next + 1 < order.len() && cfg.move_bound.admits(current.len() + 1) {
            x.insert(order[next]);
        }
        Ok(x)
    }
}

/// Adversary that never adds anything.
#[derive(Debug, Clone, Copy, Default)]
pub struct PassStrategy;

impl Strategy for PassStrategy {
    fn name(&self) -> String {
        "pass".into()
    }

    fn mover(&self) -> Mover {
        Mover::I
    }

    fn respond(
        &mut self,
        _: &GameConfig,
        _: &[Subset],
        current: &Subset,
    ) -> Result<Subset, GameError> {
        Ok(current.clone())
    }
}

/// Adversary that plays a fixed set in the first round and passes after.
#[derive(Debug, Clone)]
pub struct FixedStrategy {
    pub set: Subset,
}

impl Strategy for FixedStrategy {
    fn name(&self) -> String {
        "fixed".into()
    }

    fn mover(&self) -> Mover {
        Mover::I
    }

    fn respond(
        &mut self,
        _: &GameConfig,
        _: &[Subset],
        current: &Subset,
    ) -> Result<Subset, GameError> {
        Ok(current.union(&self.set).copied().collect())
    }
}

/// Adversary adding the least index not yet played.
#[derive(Debug, Clone, Copy, Default)]
pub struct SweepStrategy;

impl Strategy for SweepStrategy {
    fn name(&self) -> String {
        "sweep".into()
    }

    fn mover(&self) -> Mover {
        Mover::I
    }

    fn respond(
        &mut self,
        cfg: &GameConfig,
        _: &[Subset],
        current: &Subset,
    ) -> Result<Subset, GameError> {
        let mut x = current.clone();
        if cfg.move_bound.admits(x.len() + 1) {
            if let Some(e) = (0..cfg.structure.order().len()).find(|e| !x.contains(e)) {
                x.insert(e);
            }
        }
        Ok(x)
    }
}

/// Adversary adding one to three random elements, drawn from a generator
/// seeded by the seed and the current set, so it stays a simple strategy.
#[derive(Debug, Clone, Copy)]
pub struct RandomStrategy {
    pub seed: u64,
}

impl Strategy for RandomStrategy {
    fn name(&self) -> String {
        format!("random:{}", self.seed)
    }

    fn mover(&self) -> Mover {
        Mover::I
    }

    fn respond(
        &mut self,
        cfg: &GameConfig,
        _: &[Subset],
        current: &Subset,
    ) -> Result<Subset, GameError> {
        let stream = current.iter().fold(current.len() as u64, |h, &x| {
            h.rotate_left(7) ^ (x as u64 + 1)
        });
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        rng.set_stream(stream);
        let mut fresh: Vec<usize> = (0..cfg.structure.order().len())
            .filter(|e| !current.contains(e))
            .collect();
        fresh.shuffle(&mut rng);
        let want = rng.gen_range(1..=3);
        let mut x = current.clone();
        for e in fresh.into_iter().take(want) {
            if !cfg.move_bound.admits(x.len() + 1) {
                break;
            }
            x.insert(e);
        }
        Ok(x)
    }
}

/// The adversaries shipped with the library, for a given seed.
pub fn bundled_adversaries(seed: u64) -> Vec<Box<dyn Strategy>> {
    vec![
        Box::new(PassStrategy),
        Box::new(SweepStrategy),
        Box::new(RandomStrategy { seed }),
        Box::new(RandomStrategy {
            seed: seed.wrapping_add(1),
        }),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mapping::{enumeration_mapping, synth_min_fn, Objective, DEFAULT_SYNTH_CAP};
    use crate::poset::Poset;

    fn config(structure: Structure, rounds: usize, k: Bound) -> GameConfig {
        GameConfig::new(structure, rounds, Bound::Infinite, k).unwrap()
    }

    #[test]
    fn closure_against_a_single_move() {
        let p = Poset::chain(&["a", "b", "c"]).unwrap();
        let f = FnMapping::full(p.clone());
        let cfg = config(Structure::poset(p.clone()), 1, f.bound());
        let mut one = FixedStrategy { set: [1].into() };
        let t = play(&cfg, &mut one, &mut closure_strategy(f).unwrap()).unwrap();
        assert!(t.verdict.is_win());
        assert!(t.chain_holds());
    }

    #[test]
    fn empty_play() {
        let p = Poset::chain(&["a", "b"]).unwrap();
        let cfg = config(Structure::poset(p), 3, Bound::Finite(2));
        let mut s = PassStrategy;
        struct Idle;
        impl Strategy for Idle {
            fn name(&self) -> String {
                "idle".into()
            }
            fn mover(&self) -> Mover {
                Mover::II
            }
            fn respond(
                &mut self,
                _: &GameConfig,
                _: &[Subset],
                c: &Subset,
            ) -> Result<Subset, GameError> {
                Ok(c.clone())
            }
        }
        let t = play(&cfg, &mut s, &mut Idle).unwrap();
        assert!(t.union.is_empty());
        assert!(t.verdict.is_win());

        let ba = Structure::algebra(FiniteBa::new(2).unwrap()).unwrap();
        let cfg = config(ba, 2, Bound::Finite(2));
        let t = play(&cfg, &mut PassStrategy, &mut Idle).unwrap();
        assert_eq!(t.verdict, Verdict::NotASubalgebra);
    }

    #[test]
    fn chain_adversary_against_closure() {
        let p = Poset::chain(&["a", "b", "c"]).unwrap();
        let f = synth_min_fn(&p, Objective::MaxSize, DEFAULT_SYNTH_CAP).unwrap();
        let cfg = config(Structure::poset(p), 4, f.bound());
        let t = play(
            &cfg,
            &mut chain_adversary(),
            &mut closure_strategy(f).unwrap(),
        )
        .unwrap();
        assert!(t.verdict.is_win());
    }

    #[test]
    fn closure_steps() {
        let p = Poset::chain(&["a", "b", "c"]).unwrap();
        let f = FnMapping::from_ids(
            p.clone(),
            &[
                ("a", vec!["a", "b"]),
                ("b", vec!["b"]),
                ("c", vec!["b", "c"]),
            ],
            Bound::Infinite,
        )
        .unwrap();
        let s = closure_strategy(f).unwrap();
        let st = Structure::poset(p);
        assert_eq!(s.close(&st, &[0].into()).unwrap(), Subset::from([0, 1]));
        assert_eq!(s.close(&st, &[0, 1].into()).unwrap(), Subset::from([0, 1]));
        assert_eq!(s.close(&st, &Subset::new()).unwrap(), Subset::new());

        let ba = FiniteBa::new(2).unwrap();
        let bst = Structure::algebra(ba).unwrap();
        let g = FnMapping::from_ids(
            bst.order().clone(),
            &[
                ("00", vec!["00", "11"]),
                ("01", vec!["00", "01", "11"]),
                ("10", vec!["00", "10", "11"]),
                ("11", vec!["11"]),
            ],
            Bound::Infinite,
        )
        .unwrap();
        let s = closure_strategy(g).unwrap();
        assert_eq!(s.close(&bst, &Subset::new()).unwrap(), Subset::from([0, 3]));

        let tight = GameConfig::new(bst.clone(), 1, Bound::Finite(2), Bound::Finite(2)).unwrap();
        let mut s = s;
        assert!(matches!(
            s.respond(&tight, &[], &Subset::new()),
            Err(GameError::ClosureExceedsBound { .. })
        ));
    }

    #[test]
    fn chain_adversary_moves() {
        let ids: Vec<String> = (0..20).map(|i| format!("p{i:02}")).collect();
        let p = Poset::chain(&ids).unwrap();
        let order = p.chain_order().unwrap();
        let cfg = config(Structure::poset(p.clone()), 8, Bound::Infinite);
        let t = play(&cfg, &mut chain_adversary(), &mut PassStrategy2).unwrap();
        let sups: Vec<usize> = t
            .moves
            .iter()
            .step_by(2)
            .map(|(_, s)| ChainAdversary::sup_below_top(&order, s).unwrap())
            .collect();
        assert_eq!(sups, (0..8).collect::<Vec<_>>());

        // co-top already played: pass
        let mut c = chain_adversary();
        let s: Subset = [order[18]].into();
        assert_eq!(c.respond(&cfg, &[], &s).unwrap(), s);

        let anti = Poset::antichain(&["a", "b"]).unwrap();
        let cfg = config(Structure::poset(anti), 1, Bound::Infinite);
        assert_eq!(
            c.respond(&cfg, &[], &Subset::new()),
            Err(GameError::NotALinearOrder)
        );
    }

    struct PassStrategy2;
    impl Strategy for PassStrategy2 {
        fn name(&self) -> String {
            "pass".into()
        }
        fn mover(&self) -> Mover {
            Mover::II
        }
        fn respond(
            &mut self,
            _: &GameConfig,
            _: &[Subset],
            c: &Subset,
        ) -> Result<Subset, GameError> {
            Ok(c.clone())
        }
    }

    #[test]
    fn rc_closure() {
        let ba = FiniteBa::free(2).unwrap();
        let st = Structure::algebra(ba).unwrap();
        let cfg = config(st.clone(), 1, Bound::Finite(2));
        let x0 = FiniteBa::free_generator(2, 0).unwrap() as usize;
        let mut s = rc_closure_strategy();
        assert_eq!(s.respond(&cfg, &[], &[x0].into()).unwrap().len(), 4);
        assert_eq!(
            s.respond(&cfg, &[], &Subset::new()).unwrap(),
            Subset::from([0, 15])
        );
        let all = st.order().all();
        assert_eq!(s.respond(&cfg, &[], &all).unwrap(), all);
    }

    #[test]
    fn illegal_and_wrong_movers() {
        let p = Poset::chain(&["a", "b", "c"]).unwrap();
        let cfg = GameConfig::new(
            Structure::poset(p.clone()),
            2,
            Bound::Finite(2),
            Bound::Finite(2),
        )
        .unwrap();
        let f = enumeration_mapping(&p, &[0, 1, 2]).unwrap();
        let mut big = FixedStrategy { set: [0, 1].into() };
        assert!(matches!(
            play(&cfg, &mut big, &mut closure_strategy(f.clone()).unwrap()),
            Err(GameError::IllegalMove {
                mover: Mover::I,
                ..
            })
        ));
        assert!(matches!(
            play(&cfg, &mut closure_strategy(f).unwrap(), &mut PassStrategy2),
            Err(GameError::WrongMover { .. })
        ));
        assert!(GameConfig::new(Structure::poset(p), 0, Bound::Infinite, Bound::Infinite).is_err());
    }

    #[test]
    fn transcript_formats() {
        let p = Poset::chain(&["a", "b"]).unwrap();
        let f = FnMapping::full(p.clone());
        let cfg = config(Structure::poset(p), 1, f.bound());
        let mut one = FixedStrategy { set: [0].into() };
        let t = play(&cfg, &mut one, &mut closure_strategy(f).unwrap()).unwrap();
        assert!(t.report(&cfg).starts_with("I: a\nII: a b\nverdict: win\n"));
        assert_eq!(t.tsv(&cfg), "0\tI\ta\n0\tII\ta,b\nverdict\twin\n");
    }

    #[test]
    fn random_adversary_is_simple() {
        let p = Poset::antichain(&(0..10).map(|i| i.to_string()).collect::<Vec<_>>()).unwrap();
        let cfg = config(Structure::poset(p), 5, Bound::Infinite);
        let mut r = RandomStrategy { seed: 7 };
        let s: Subset = [1, 4].into();
        let a = r.respond(&cfg, &[], &s).unwrap();
        let b = r.respond(&cfg, &[Subset::new()], &s).unwrap();
        assert_eq!(a, b);
        assert!(s.is_subset(&a) && a.len() > s.len());
    }
}
