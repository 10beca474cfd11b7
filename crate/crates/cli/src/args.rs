use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(name = "sheafsym", version, about = "Symbol combinatorics for character sheaves of classical groups")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

/// Group and cuspidal data shared by most verbs.
#[derive(Debug, Clone, Default, Args)]
pub struct CtxArgs {
    /// Group type: B, C or D.
    #[arg(long = "type")]
    pub group: Option<String>,
    #[arg(long)]
    pub n: Option<u32>,
    #[arg(long)]
    pub a: Option<u32>,
    #[arg(long)]
    pub b: Option<u32>,
    #[arg(long)]
    pub t: Option<u32>,
    /// identity, gamma_a, gamma_b, gamma_ab or gamma_n.
    #[arg(long)]
    pub twist: Option<String>,
    /// Type C block: 4t+1 or 4t-1.
    #[arg(long)]
    pub d: Option<String>,
}

#[derive(Debug, Clone, Args)]
pub struct PairArgs {
    /// The two labels, left factor first.
    #[arg(long, num_args = 2, value_names = ["LEFT", "RIGHT"], required = true, allow_hyphen_values = true)]
    pub pair: Vec<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SideArg {
    First,
    Second,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    #[value(name = "b_prime")]
    BPrime,
    #[value(name = "a_prime")]
    APrime,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ReadingArg {
    Printed,
    Alternate,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    Appendix,
    Oracle,
    Properties,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Normalized form of a symbol or Springer symbol.
    Normalize {
        symbol: String,
    },
    Rank {
        symbol: String,
    },
    Defect {
        symbol: String,
    },
    /// a-value of a symbol.
    Avalue {
        symbol: String,
    },
    /// b-value of a Springer symbol, or b^d of a defect-0 label with --type.
    Bvalue {
        symbol: String,
        #[command(flatten)]
        ctx: CtxArgs,
    },
    /// dim 𝔅ᵤ and the class dimension for a Springer symbol.
    Springer {
        symbol: String,
        #[command(flatten)]
        ctx: CtxArgs,
    },
    /// The generalized Springer map on a defect-0 label.
    Delta {
        symbol: String,
        #[command(flatten)]
        ctx: CtxArgs,
    },
    /// Induce an irreducible of a reflection subgroup.
    Induce {
        /// bxb_in_b, dxd_in_d, h_twisted, d_in_b, dxb_in_b or bxd_in_b.
        #[arg(long)]
        shape: String,
        #[arg(long, value_enum, default_value = "alternate")]
        reading: ReadingArg,
        #[command(flatten)]
        pair: PairArgs,
    },
    /// d-minimal constituents of an induced character.
    Dminimal {
        #[command(flatten)]
        ctx: CtxArgs,
        #[command(flatten)]
        pair: PairArgs,
    },
    Oplus {
        #[command(flatten)]
        ctx: CtxArgs,
        #[command(flatten)]
        pair: PairArgs,
        /// Common bottom length; the smallest admissible one by default.
        #[arg(long)]
        p: Option<usize>,
    },
    Boxplus {
        #[command(flatten)]
        ctx: CtxArgs,
        #[command(flatten)]
        pair: PairArgs,
        #[arg(long)]
        p: Option<usize>,
    },
    /// Size of 𝒥 for the similarity classes of a pair.
    Jset {
        #[command(flatten)]
        ctx: CtxArgs,
        #[command(flatten)]
        pair: PairArgs,
        /// Also list the members.
        #[arg(long)]
        members: bool,
    },
    /// Characteristic function value at a split element.
    Charvalue {
        #[command(flatten)]
        ctx: CtxArgs,
        #[command(flatten)]
        pair: PairArgs,
    },
    /// Lower one entry of one factor by 1 in every legal way.
    Restrict {
        #[arg(long, value_enum)]
        side: SideArg,
        #[command(flatten)]
        pair: PairArgs,
    },
    /// The φ-built test family against its inequalities and the golden table.
    Xifamily {
        #[command(flatten)]
        ctx: CtxArgs,
        #[arg(long, value_enum, default_value = "b_prime")]
        mode: ModeArg,
    },
    /// Run a verification battery.
    Verify {
        #[arg(value_enum)]
        suite: Suite,
        #[command(flatten)]
        ctx: CtxArgs,
    },
}
