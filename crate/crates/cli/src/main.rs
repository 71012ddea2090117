//! `fnlab`: verify, synthesize and transfer FN mappings, play closure games
//! and check the free-algebra constructions from the command line.
//!
//! Exit codes: 0 on success (a witness or a passing check), 1 when a
//! counterexample or refutation is printed, 2 on usage or input errors.

mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(name = "fnlab", version, about = "Finite-scale Freese-Nation toolkit")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

/// The structure a command works on: a poset file or a finite Boolean
/// algebra given by its number of atoms.
#[derive(Args, Debug, Clone)]
#[group(required = true, multiple = false)]
pub struct CarrierArgs {
    /// Poset file (`poset` / `elem` / `le` lines).
    #[arg(long)]
    pub poset: Option<PathBuf>,
    /// Power-set algebra with this many atoms; elements are bit strings.
    #[arg(long)]
    pub ba: Option<usize>,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Human,
    Tsv,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Check condition (*) for a mapping.
    Verify {
        #[arg(long)]
        poset: Option<PathBuf>,
        #[arg(long, conflicts_with = "poset")]
        ba: Option<usize>,
        /// Mapping file, or `interpolation:n=<k>` for the free algebra.
        #[arg(long)]
        map: String,
        /// Random pairs checked when the free algebra is too large to list.
        #[arg(long, default_value_t = 1000)]
        samples: usize,
    },
    /// Search for a smallest mapping satisfying (*).
    Synth {
        #[command(flatten)]
        carrier: CarrierArgs,
        /// `max` (largest set) or `total` (sum of sizes).
        #[arg(long, default_value = "max")]
        objective: String,
        #[arg(long, default_value_t = fnlab::mapping::DEFAULT_SYNTH_CAP)]
        cap: usize,
    },
    /// Decide whether a subset is a k-substructure and print the witness.
    Witness {
        #[command(flatten)]
        carrier: CarrierArgs,
        /// Whitespace-separated ids of the subset.
        #[arg(long, allow_hyphen_values = true)]
        subset: String,
        /// Strict size bound, a number or `inf`.
        #[arg(long)]
        k: String,
        /// Use the families `g(b) ∩ C↾b` of a mapping the subset is closed under.
        #[arg(long)]
        map: Option<PathBuf>,
        /// Also print both projections of every element.
        #[arg(long)]
        projections: bool,
    },
    /// Build mappings from other mappings.
    #[command(subcommand)]
    Transfer(TransferCommand),
    /// Interval algebras.
    #[command(subcommand)]
    Intalg(IntalgCommand),
    /// Play the closure game.
    Game {
        #[command(flatten)]
        carrier: CarrierArgs,
        #[arg(long, default_value_t = 4)]
        rounds: usize,
        /// Every move has size below this bound (`inf` for none).
        #[arg(long, default_value = "inf")]
        move_bound: String,
        /// II wins when the union is a k-substructure for this k.
        #[arg(long)]
        k: String,
        /// Player I: `pass`, `sweep`, `random`, `chain` or `fixed:<ids,...>`.
        #[arg(long, default_value = "sweep")]
        first: String,
        /// Player II: `closure` (needs --map) or `rc-closure`.
        #[arg(long, default_value = "closure")]
        second: String,
        #[arg(long)]
        map: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "human")]
        format: Format,
    },
    /// The subalgebra of elements agreeing on the two constant assignments.
    #[command(subcommand)]
    Engelking(EngelkingCommand),
    /// Extract an independent family using an FN mapping.
    Independent {
        /// Work in the free algebra on this many generators, with the
        /// interpolation mapping.
        #[arg(long, conflicts_with_all = ["ba", "map"])]
        free: Option<usize>,
        #[arg(long)]
        ba: Option<usize>,
        /// Mapping file on the algebra given by --ba.
        #[arg(long, requires = "ba")]
        map: Option<PathBuf>,
        /// Elements in scan order, separated by `;` (expressions or ids).
        #[arg(long, allow_hyphen_values = true)]
        elements: String,
    },
}

#[derive(Subcommand, Debug)]
pub enum TransferCommand {
    /// `f(b_α) = {b_β : β <= α}` for an enumeration of the carrier.
    Enumerate {
        #[command(flatten)]
        carrier: CarrierArgs,
        /// Ids in enumeration order; defaults to id order.
        #[arg(long)]
        order: Option<String>,
    },
    /// Pull a mapping back to a subset.
    Restrict {
        #[command(flatten)]
        carrier: CarrierArgs,
        #[arg(long, allow_hyphen_values = true)]
        subset: String,
        #[arg(long)]
        map: PathBuf,
    },
    /// Extend a mapping on a subset to the whole carrier.
    Extend {
        #[command(flatten)]
        carrier: CarrierArgs,
        #[arg(long, allow_hyphen_values = true)]
        subset: String,
        /// Mapping on the subset.
        #[arg(long)]
        inner: PathBuf,
        /// Mapping on the carrier.
        #[arg(long)]
        map: PathBuf,
    },
    /// Move a mapping to a retract `j ∘ i = id`.
    Retract {
        /// The retract A.
        #[arg(long)]
        source: PathBuf,
        /// The ambient poset B.
        #[arg(long)]
        target: PathBuf,
        /// `ordmap` file for `i: A -> B`.
        #[arg(long)]
        i: PathBuf,
        /// `ordmap` file for `j: B -> A`.
        #[arg(long)]
        j: PathBuf,
        /// Mapping on B.
        #[arg(long)]
        map: PathBuf,
    },
    /// Union of an increasing chain of mappings.
    Chain {
        /// `<poset file>:<mapping file>`, in increasing order.
        #[arg(long = "link", required = true)]
        links: Vec<String>,
    },
    /// Push a mapping on an algebra to its quotient by an ideal.
    QuotientPush {
        #[arg(long)]
        ba: usize,
        /// Members of the ideal, as ids.
        #[arg(long)]
        ideal: String,
        #[arg(long)]
        map: PathBuf,
    },
    /// Lift a mapping on the quotient back to the algebra.
    QuotientLift {
        #[arg(long)]
        ba: usize,
        #[arg(long)]
        ideal: String,
        /// Mapping on the quotient algebra.
        #[arg(long)]
        map: PathBuf,
    },
}

/// The linear order of an interval-algebra command.
#[derive(Args, Debug, Clone)]
#[group(required = true, multiple = false)]
pub struct LineArgs {
    /// `linord` file with the points in increasing order.
    #[arg(long)]
    pub linord: Option<PathBuf>,
    /// Use the rational line.
    #[arg(long)]
    pub rational: bool,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum IntalgOp {
    Union,
    Intersection,
    Complement,
    Leq,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum ProjectSource {
    Full,
    Dense,
    Lift,
}

#[derive(Subcommand, Debug)]
pub enum IntalgCommand {
    /// Boolean operations on interval elements.
    Ops {
        #[command(flatten)]
        line: LineArgs,
        #[arg(long, value_enum)]
        op: IntalgOp,
        #[arg(allow_hyphen_values = true)]
        a: String,
        #[arg(allow_hyphen_values = true)]
        b: Option<String>,
    },
    /// End points of the standard representation.
    Ep {
        #[command(flatten)]
        line: LineArgs,
        #[arg(allow_hyphen_values = true)]
        a: String,
    },
    /// The skeleton mapping `g(b) = {c : ep(c) ⊆ D ∪ ep(b)}`.
    DenseMap {
        #[command(flatten)]
        line: LineArgs,
        /// Skeleton points D.
        #[arg(long, allow_hyphen_values = true)]
        skeleton: String,
        /// Check one pair `a <= b` instead of the whole algebra.
        #[arg(long, num_args = 2, allow_hyphen_values = true)]
        pair: Option<Vec<String>>,
    },
    /// Lift a mapping on a finite order to its interval algebra and check it.
    Lift {
        #[arg(long)]
        linord: PathBuf,
        #[arg(long)]
        map: PathBuf,
    },
    /// Project a mapping on the interval algebra down to the order.
    Project {
        #[arg(long)]
        linord: PathBuf,
        #[arg(long, value_enum, default_value = "full")]
        from: ProjectSource,
        /// Skeleton for `--from dense`.
        #[arg(long)]
        skeleton: Option<String>,
        /// Mapping on the order for `--from lift`.
        #[arg(long)]
        map: Option<PathBuf>,
    },
}

#[derive(Subcommand, Debug)]
pub enum EngelkingCommand {
    /// Membership of an element of Fr(m).
    Member {
        #[arg(long)]
        m: usize,
        #[arg(long, allow_hyphen_values = true)]
        expr: String,
    },
    /// Check that `B ∩ Fr(Y)` fails to be a small substructure at `x0+x1+-x2`.
    WitnessCheck {
        #[arg(long)]
        m: usize,
        /// Generator indices of Y.
        #[arg(long)]
        y: String,
        /// Generator indices of Y' ⊆ Y.
        #[arg(long, default_value = "")]
        y_prime: String,
        #[arg(long)]
        x0: usize,
        #[arg(long)]
        x1: usize,
        #[arg(long)]
        x2: usize,
        #[arg(long)]
        y1: usize,
        #[arg(long)]
        y2: usize,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::run(cli.command) {
        Ok(out) => {
            print!("{}", out.text);
            ExitCode::from(out.code)
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
