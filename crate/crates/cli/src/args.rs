use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(name = "ufact", version, about = "Factorization lengths, zero-sum sequences and ultraproduct transfer")]
pub struct Cli {
    #[command(flatten)]
    pub config: RunConfig,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct RunConfig {
    /// Search nodes allowed per operation.
    #[arg(long, global = true, env = "UF_NODE_BUDGET", default_value_t = ufact::DEFAULT_NODE_BUDGET,
          value_parser = clap::value_parser!(u64).range(1..))]
    pub budget: u64,
    /// Seed for randomized commands.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, global = true, value_enum, default_value_t = Output::Json)]
    pub output: Output,
    /// Worker threads; 0 uses every core.
    #[arg(long, global = true, default_value_t = 0)]
    pub threads: usize,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Output {
    Json,
    Text,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Minimal zero-sum sequences of a group, or the atoms dividing an element.
    Atoms {
        #[arg(long, conflicts_with_all = ["monoid", "element"])]
        group: Option<String>,
        /// Longest sequence listed with --group; defaults to the Davenport constant.
        #[arg(long)]
        max_len: Option<usize>,
        #[arg(long, requires = "element")]
        monoid: Option<String>,
        #[arg(long, requires = "monoid", allow_hyphen_values = true)]
        element: Option<String>,
    },
    /// Every factorization of an element up to a length bound.
    Factorize(ElementArgs),
    /// The multiset of lengths of an element.
    Lengths(ElementArgs),
    /// The Davenport constant of a finite abelian group.
    Davenport {
        #[arg(long)]
        group: String,
    },
    /// Searches B(G) for an element with a prescribed set of lengths.
    Realize {
        #[arg(long)]
        group: String,
        /// Comma-separated lengths, e.g. 2,3.
        #[arg(long)]
        lengths: String,
        #[arg(long)]
        max_seq_len: Option<usize>,
    },
    /// Groups up to an order where a set of lengths is not realized.
    Exceptional {
        #[arg(long)]
        lengths: String,
        #[arg(long)]
        order_bound: u32,
        #[arg(long)]
        max_seq_len: Option<usize>,
    },
    /// Ultraproduct transfer questions for element families.
    #[command(subcommand)]
    Ultra(UltraCommand),
    /// First-order sentences over finite groups.
    #[command(subcommand)]
    Fol(FolCommand),
    /// Łoś conformance over random sentences.
    Los {
        /// Comma-separated groups, e.g. c2,c3,c4.
        #[arg(long)]
        groups: String,
        #[arg(long, default_value_t = 50)]
        sentences: usize,
        #[arg(long, default_value_t = 3)]
        depth: usize,
    },
    /// Protoproducts, degrees and divisor theory of block monoids.
    #[command(subcommand)]
    Proto(ProtoCommand),
    /// A difference of prime powers with many prime divisors.
    Gap {
        #[arg(long)]
        k: usize,
    },
    /// Runs the acceptance criteria.
    Selftest {
        /// Run only this criterion.
        #[arg(long)]
        criterion: Option<u32>,
    },
}

#[derive(Args, Debug)]
pub struct ElementArgs {
    #[arg(long)]
    pub monoid: String,
    #[arg(long, allow_hyphen_values = true)]
    pub element: String,
    /// Longest factorization considered; defaults to every length.
    #[arg(long)]
    pub max_len: Option<u64>,
}

#[derive(Args, Debug)]
pub struct FamilyArgs {
    /// Family as JSON or a short form such as prime_power_ramp:2.
    #[arg(long, conflicts_with_all = ["monoid", "element", "pre", "period"])]
    pub family: Option<String>,
    /// Component monoid for a constant (--element) or periodic (--period) family.
    #[arg(long)]
    pub monoid: Option<String>,
    #[arg(long, conflicts_with_all = ["pre", "period"], allow_hyphen_values = true)]
    pub element: Option<String>,
    /// Elements before the period, separated by `;`.
    #[arg(long, allow_hyphen_values = true)]
    pub pre: Option<String>,
    /// Repeating elements, separated by `;`.
    #[arg(long, allow_hyphen_values = true)]
    pub period: Option<String>,
    /// `frechet` or `principal:SIZE:SELECTED`.
    #[arg(long, default_value = "frechet")]
    pub mode: String,
}

#[derive(Subcommand, Debug)]
pub enum UltraCommand {
    IsUnit(FamilyArgs),
    IsAtom(FamilyArgs),
    LengthMult {
        #[command(flatten)]
        family: FamilyArgs,
        #[arg(long)]
        length: u64,
    },
    LengthContains {
        #[command(flatten)]
        family: FamilyArgs,
        #[arg(long)]
        length: u64,
    },
    InHa {
        #[command(flatten)]
        family: FamilyArgs,
        #[arg(long, default_value_t = 20)]
        n_max: u64,
    },
    /// Realizes a multiset of lengths through truncation families.
    Realize {
        /// Multiset such as 2=2,3=inf.
        #[arg(long)]
        target: String,
        /// Also search witnesses in B(G) for the first indices.
        #[arg(long)]
        realizer_group: Option<String>,
        #[arg(long, default_value_t = 4)]
        indices: usize,
    },
    Degree {
        #[command(flatten)]
        family: FamilyArgs,
        #[arg(long, value_enum, default_value_t = DegreeKind::Canonical)]
        degree: DegreeKind,
    },
    InProto {
        #[command(flatten)]
        family: FamilyArgs,
        #[arg(long, value_enum, default_value_t = DegreeKind::Canonical)]
        degree: DegreeKind,
    },
}

#[derive(ValueEnum, Debug, Clone, Copy)]
pub enum DegreeKind {
    SequenceLength,
    Canonical,
}

#[derive(Subcommand, Debug)]
pub enum FolCommand {
    Eval {
        #[arg(long)]
        sentence: String,
        #[arg(long)]
        group: String,
    },
    Los {
        #[arg(long)]
        groups: String,
        #[arg(long)]
        selected: usize,
        #[arg(long)]
        sentence: String,
    },
}

#[derive(Subcommand, Debug)]
pub enum ProtoCommand {
    /// Checks B(G) against the bounded-degree slice of its protoproduct.
    Iso {
        #[arg(long)]
        group: String,
        #[arg(long)]
        bound: u64,
        #[arg(long, default_value = "frechet")]
        mode: String,
    },
    DivisorClosed {
        #[arg(long)]
        monoid: String,
        #[arg(long, value_enum, default_value_t = DegreeKind::Canonical)]
        degree: DegreeKind,
        #[arg(long)]
        bound: u64,
    },
    Gcd {
        #[arg(long)]
        group: String,
        #[arg(long, default_value_t = 4)]
        max_len: usize,
    },
    Theory {
        #[arg(long)]
        group: String,
        #[arg(long)]
        element: String,
    },
    Gap {
        #[arg(long)]
        k: usize,
    },
}
