use std::path::PathBuf;

use clap::{ArgAction, Args, Parser, Subcommand, ValueEnum};
use qwalk_core::{BellState, CoinState, InitialSpec, SignVariant};

/// Seed used by sampling mode when `--seed` is not given.
pub const DEFAULT_SEED: u64 = 0x5eed_2024;

/// Discrete-time quantum walk simulator.
#[derive(Debug, Parser)]
#[command(name = "qwalk", version, about)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Single-particle walk.
    Single(SingleArgs),
    /// Two coin-entangled particles walking independently.
    Pair(PairArgs),
    /// Two entangled particles constrained to stay co-located.
    Bec(BecArgs),
    /// Unbiased classical random walk.
    Classical(ClassicalArgs),
    /// Probability of finding both particles at the same site, for every step count.
    Coincidence(CoincidenceArgs),
    /// Position variance for every step count, with a log-log slope fit.
    VarianceScan(ScanArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Sign {
    Plus,
    Minus,
}

impl From<Sign> for SignVariant {
    fn from(s: Sign) -> Self {
        match s {
            Sign::Plus => SignVariant::Plus,
            Sign::Minus => SignVariant::Minus,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Initial {
    Zero,
    One,
    Plus,
    Minus,
    PlusI,
    PsiPlus,
    PsiMinus,
    PhiPlus,
    PhiMinus,
    PsiI,
}

impl From<Initial> for InitialSpec {
    fn from(i: Initial) -> Self {
        match i {
            Initial::Zero => InitialSpec::Coin(CoinState::Zero),
            Initial::One => InitialSpec::Coin(CoinState::One),
            Initial::Plus => InitialSpec::Coin(CoinState::Plus),
            Initial::Minus => InitialSpec::Coin(CoinState::Minus),
            Initial::PlusI => InitialSpec::Coin(CoinState::PlusI),
            Initial::PsiPlus => InitialSpec::Pair(BellState::PsiPlus),
            Initial::PsiMinus => InitialSpec::Pair(BellState::PsiMinus),
            Initial::PhiPlus => InitialSpec::Pair(BellState::PhiPlus),
            Initial::PhiMinus => InitialSpec::Pair(BellState::PhiMinus),
            Initial::PsiI => InitialSpec::Pair(BellState::PsiI),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Walk {
    Hadamard,
    Coinless,
    Extended,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ScanWalk {
    Hadamard,
    Coinless,
    Extended,
    Classical,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

/// What a two-particle run emits.
#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum View {
    /// `x1,x2,probability` for every nonzero joint entry.
    Joint,
    /// `position,marginal,diagonal`: one particle's marginal and `P(x, x)`.
    Marginal,
}

#[derive(Debug, Clone, Args)]
pub struct Output {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    /// Output file (standard output if omitted).
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct Sampling {
    /// Draw this many measurement outcomes from the exact distribution.
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    pub samples: Option<u64>,
    /// Random seed for sampling.
    #[arg(long, default_value_t = DEFAULT_SEED)]
    pub seed: u64,
}

#[derive(Debug, Clone, Args)]
pub struct SingleArgs {
    #[arg(long)]
    pub steps: usize,
    #[arg(long, value_enum, default_value_t = Walk::Hadamard)]
    pub walk: Walk,
    #[arg(long, value_enum, default_value_t = Initial::PlusI)]
    pub initial: Initial,
    #[arg(long, value_enum, default_value_t = Sign::Plus)]
    pub sign: Sign,
    #[arg(long, action = ArgAction::Set, default_value_t = true)]
    pub normalize_each_step: bool,
    #[command(flatten)]
    pub sampling: Sampling,
    #[command(flatten)]
    pub output: Output,
}

#[derive(Debug, Clone, Args)]
pub struct PairArgs {
    #[arg(long)]
    pub steps: usize,
    #[arg(long, value_enum, default_value_t = Initial::PsiI)]
    pub initial: Initial,
    #[arg(long, value_enum, default_value_t = Sign::Plus)]
    pub sign: Sign,
    #[arg(long, action = ArgAction::Set, default_value_t = true)]
    pub normalize_each_step: bool,
    #[arg(long, value_enum, default_value_t = View::Joint)]
    pub view: View,
    #[command(flatten)]
    pub sampling: Sampling,
    #[command(flatten)]
    pub output: Output,
}

#[derive(Debug, Clone, Args)]
pub struct BecArgs {
    #[arg(long)]
    pub steps: usize,
    #[arg(long, value_enum, default_value_t = Initial::PsiI)]
    pub initial: Initial,
    #[arg(long, value_enum, default_value_t = View::Joint)]
    pub view: View,
    #[command(flatten)]
    pub sampling: Sampling,
    #[command(flatten)]
    pub output: Output,
}

#[derive(Debug, Clone, Args)]
pub struct ClassicalArgs {
    #[arg(long)]
    pub steps: usize,
    #[command(flatten)]
    pub sampling: Sampling,
    #[command(flatten)]
    pub output: Output,
}

#[derive(Debug, Clone, Args)]
pub struct CoincidenceArgs {
    #[arg(long)]
    pub steps: usize,
    #[arg(long, value_enum, default_value_t = Initial::PsiI)]
    pub initial: Initial,
    #[arg(long, value_enum, default_value_t = Sign::Plus)]
    pub sign: Sign,
    #[arg(long, action = ArgAction::Set, default_value_t = true)]
    pub normalize_each_step: bool,
    #[command(flatten)]
    pub output: Output,
}

#[derive(Debug, Clone, Args)]
pub struct ScanArgs {
    #[arg(long)]
    pub steps: usize,
    #[arg(long, value_enum, default_value_t = ScanWalk::Hadamard)]
    pub walk: ScanWalk,
    #[arg(long, value_enum, default_value_t = Initial::PlusI)]
    pub initial: Initial,
    #[arg(long, value_enum, default_value_t = Sign::Plus)]
    pub sign: Sign,
    #[arg(long, action = ArgAction::Set, default_value_t = true)]
    pub normalize_each_step: bool,
    /// Smallest step count included in the slope fit.
    #[arg(long, default_value_t = 10)]
    pub fit_from: usize,
    #[command(flatten)]
    pub output: Output,
}
