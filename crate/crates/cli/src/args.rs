use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use seqgme::scenario::DEFAULT_MAX_ROUNDS;
use seqgme::{GeneratorKind, IntervalMode, S1Mode, ScenarioConfig, StateFamily};

use crate::error::{CliError, CliResult};
use crate::grid::{GridSpec, List};

const GRID_HELP: &str = "First-round sharpness grid start:stop:step. The grid has \
round((stop-start)/step)+1 points start+i*step, so stop is included when it lies within \
half a step of the lattice; an overshooting last point is replaced by stop. Points must lie in (0,1].";

#[derive(Parser, Debug)]
#[command(
    name = "seqgme",
    version,
    about = "Sequential detection of genuine multipartite entanglement with recycled qubits"
)]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalArgs,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct GlobalArgs {
    /// Output file; standard output when omitted.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Worker threads for sweep and crossval; 0 means one per core.
    #[arg(long, global = true, env = "SEQGME_THREADS", default_value_t = 0)]
    pub threads: usize,
    #[arg(long, global = true, default_value_t = 1e-10)]
    pub tol: f64,
    /// File of `key = value` lines, one flag per line (e.g. `n = 4`,
    /// `with-oracle = true`). Flags on the command line take precedence.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    /// Record the wall-clock time in the metadata. Outputs are then no
    /// longer byte-identical between runs.
    #[arg(long, global = true)]
    pub timestamp: bool,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Generate one sharpness sequence and its per-round quantities.
    #[command(args_override_self = true)]
    Sequence(SequenceArgs),
    /// Detection counts over a grid of first-round sharpness values.
    #[command(args_override_self = true)]
    Sweep(SweepArgs),
    /// Compare dense simulation with the analytic expectation values.
    #[command(args_override_self = true)]
    Crossval(CrossvalArgs),
    /// Minimum witness value over sampled biseparable states.
    #[command(args_override_self = true)]
    Bisep(BisepArgs),
    /// Search for a first-round sharpness reaching a target detection count.
    #[command(args_override_self = true)]
    Probe(ProbeArgs),
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Sequence(_) => "sequence",
            Command::Sweep(_) => "sweep",
            Command::Crossval(_) => "crossval",
            Command::Bisep(_) => "bisep",
            Command::Probe(_) => "probe",
        }
    }
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum FamilyKind {
    Ghz,
    Gghz,
    Mixed,
}

#[derive(Args, Debug, Clone)]
pub struct FamilyArgs {
    #[arg(long, value_enum, default_value_t = FamilyKind::Ghz)]
    pub family: FamilyKind,
    /// Weight of |0..0> in the generalized GHZ component.
    #[arg(long)]
    pub a: Option<f64>,
    /// Weight of the generalized GHZ component (mixed family).
    #[arg(long)]
    pub p1: Option<f64>,
    /// Weight of |0..0><0..0| (mixed family); the rest goes to |1..1><1..1|.
    #[arg(long)]
    pub p2: Option<f64>,
    /// How <S1> of the initial state is obtained for non-GHZ families.
    #[arg(long, default_value = "oracle")]
    pub s1_mode: S1Mode,
}

impl FamilyArgs {
    pub fn family(&self) -> CliResult<StateFamily> {
        let need = |v: Option<f64>, name: &str| {
            v.ok_or_else(|| CliError::Usage(format!("--family {:?} needs --{name}", self.family)))
        };
        let f = match self.family {
            FamilyKind::Ghz => StateFamily::Ghz,
            FamilyKind::Gghz => StateFamily::GeneralizedGhz { a: need(self.a, "a")? },
            FamilyKind::Mixed => StateFamily::MixedGghz {
                p1: need(self.p1, "p1")?,
                p2: self.p2.unwrap_or(0.0),
                a: need(self.a, "a")?,
            },
        };
        f.validate()?;
        Ok(f)
    }
}

#[derive(Args, Debug, Clone)]
pub struct ScenarioArgs {
    #[command(flatten)]
    pub family: FamilyArgs,
    /// Margin ε by which each generated witness value stays negative.
    #[arg(long, default_value_t = 0.01)]
    pub epsilon: f64,
    /// Detection interval: open (0,1) or half-open (0,1].
    #[arg(long, default_value = "open")]
    pub interval: IntervalMode,
    #[arg(long, default_value_t = DEFAULT_MAX_ROUNDS)]
    pub max_rounds: usize,
}

impl ScenarioArgs {
    /// Configuration with recycled qubits `{1..n0}`.
    pub fn config(&self, n: usize, n0: usize, lambda1: f64) -> CliResult<ScenarioConfig> {
        Ok(ScenarioConfig::new(n, n0, lambda1, self.epsilon)?
            .with_family(self.family.family()?)?
            .with_max_rounds(self.max_rounds)?
            .with_s1_mode(self.family.s1_mode)
            .with_interval(self.interval))
    }
}

/// Which recycled-qubit counts to run for each qubit count.
#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum N0Mode {
    /// Only N0 = N.
    All,
    /// Every N0 from 1 to N.
    Each,
}

#[derive(Args, Debug, Clone)]
pub struct HierarchyArgs {
    /// Recycled-qubit counts; entries above N are skipped for that N.
    #[arg(long, conflicts_with = "n0_mode")]
    pub n0: Option<List<usize>>,
    #[arg(long, value_enum)]
    pub n0_mode: Option<N0Mode>,
}

impl HierarchyArgs {
    pub fn levels(&self, n: usize) -> Vec<usize> {
        match (&self.n0, self.n0_mode) {
            (Some(list), _) => list.0.iter().copied().filter(|&m| m >= 1 && m <= n).collect(),
            (None, Some(N0Mode::All)) => vec![n],
            (None, _) => (1..=n).collect(),
        }
    }
}

#[derive(Args, Debug, Clone)]
pub struct SequenceArgs {
    #[arg(long)]
    pub n: usize,
    /// Number of recycled qubits, taken as {1..n0}.
    #[arg(long, required_unless_present = "recycled")]
    pub n0: Option<usize>,
    /// Explicit 1-based recycled qubits, e.g. `1,3`.
    #[arg(long)]
    pub recycled: Option<List<usize>>,
    #[arg(long)]
    pub lambda1: f64,
    /// Generator formula; defaults to general (GHZ) or mixed-family.
    #[arg(long)]
    pub generator: Option<GeneratorKind>,
    /// Also evaluate every witness on the dense simulated state.
    #[arg(long)]
    pub with_oracle: bool,
    /// Raise the dense-simulation limit from 10 to 12 qubits.
    #[arg(long)]
    pub allow_large: bool,
    #[command(flatten)]
    pub scenario: ScenarioArgs,
}

#[derive(Args, Debug, Clone)]
pub struct SweepArgs {
    #[arg(long)]
    pub n: List<usize>,
    #[command(flatten)]
    pub hierarchy: HierarchyArgs,
    #[arg(long, help = GRID_HELP)]
    pub grid: GridSpec,
    /// Write a gnuplot script with one step curve per (N, N0).
    #[arg(long)]
    pub emit_plot: Option<PathBuf>,
    #[command(flatten)]
    pub scenario: ScenarioArgs,
}

#[derive(Args, Debug, Clone)]
pub struct CrossvalArgs {
    #[arg(long, default_value_t = 3)]
    pub n_min: usize,
    #[arg(long, default_value_t = 6)]
    pub n_max: usize,
    /// Rounds compared per sequence.
    #[arg(long, default_value_t = 5)]
    pub k_max: usize,
    /// Random sharpness sequences per (N, N0).
    #[arg(long, default_value_t = 10)]
    pub seeds: usize,
    /// Also compare the Kraus and expanded channel forms on random states.
    #[arg(long)]
    pub channels: bool,
    #[arg(long)]
    pub allow_large: bool,
    #[command(flatten)]
    pub family: FamilyArgs,
}

#[derive(Args, Debug, Clone)]
pub struct BisepArgs {
    #[arg(long)]
    pub n: usize,
    /// Product states per bipartition, and random mixtures in addition.
    #[arg(long, default_value_t = 1000)]
    pub samples: usize,
    /// Witness sharpness values.
    #[arg(long, default_value = "0.25,0.5,1.0")]
    pub lambda: List<f64>,
    /// Recycled-qubit counts of the witnesses; all 1..N by default.
    #[arg(long)]
    pub n0: Option<List<usize>>,
    /// Product states per random mixture.
    #[arg(long, default_value_t = 3)]
    pub mixture_components: usize,
    /// Also report the witness on the GHZ state.
    #[arg(long)]
    pub control_ghz: bool,
    #[arg(long)]
    pub allow_large: bool,
}

#[derive(Args, Debug, Clone)]
pub struct ProbeArgs {
    #[arg(long, default_value = "3")]
    pub n: List<usize>,
    #[command(flatten)]
    pub hierarchy: HierarchyArgs,
    #[arg(long, default_value_t = 8)]
    pub target: usize,
    #[command(flatten)]
    pub scenario: ScenarioArgs,
}
