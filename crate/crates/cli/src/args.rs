use clap::{Args, Parser, Subcommand, ValueEnum};
use dcount_core::verify::{Fault, Suite};
use dcount_core::{Budgets, Domain, FieldSpec, MethodChoice};

#[derive(Parser, Debug)]
#[command(
    name = "dcount",
    version,
    about = "Exact counts of solutions of a_1 x_1 + ... + a_k x_k = b with all x_i distinct"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Count solutions for one target.
    Count(CountArgs),
    /// Count solutions for every target, one row per b.
    Table(TableArgs),
    /// Cross-check all engines, closed forms and identities.
    Verify(VerifyArgs),
    /// Permutation polynomials of F_q of reduced degree at most q - 3 fixing 0.
    Census(CensusArgs),
    /// Time each engine across k.
    Bench(BenchArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Args, Debug)]
#[group(required = true, multiple = false)]
pub struct StructureArgs {
    /// Finite field: `p`, `p^m` or `p^m:c0,...,cm`.
    #[arg(long)]
    pub field: Option<FieldSpec>,
    /// Residue ring Z/nZ.
    #[arg(long)]
    pub ring: Option<u64>,
}

#[derive(Args, Debug)]
pub struct BudgetArgs {
    /// Injective tuples brute force may enumerate.
    #[arg(long)]
    pub budget_brute: Option<u64>,
    /// Largest k for the sieve DP.
    #[arg(long)]
    pub budget_sieve_k: Option<usize>,
    /// Largest k for set-partition enumeration.
    #[arg(long)]
    pub budget_partition_k: Option<usize>,
    /// Largest k for the F_q^* reduction.
    #[arg(long)]
    pub budget_units_k: Option<usize>,
}

impl BudgetArgs {
    pub fn budgets(&self) -> Budgets {
        let d = Budgets::default();
        Budgets {
            brute_tuples: self.budget_brute.unwrap_or(d.brute_tuples),
            sieve_k: self.budget_sieve_k.unwrap_or(d.sieve_k),
            partition_k: self.budget_partition_k.unwrap_or(d.partition_k),
            units_k: self.budget_units_k.unwrap_or(d.units_k),
        }
    }
}

#[derive(Args, Debug)]
pub struct CountArgs {
    #[command(flatten)]
    pub structure: StructureArgs,
    /// Comma-separated coefficient encodings.
    #[arg(long, value_delimiter = ',', required = true)]
    pub coeffs: Vec<u64>,
    #[arg(long)]
    pub target: u64,
    #[arg(long, default_value = "full")]
    pub domain: Domain,
    #[arg(long, default_value = "auto")]
    pub method: MethodChoice,
    #[command(flatten)]
    pub budgets: BudgetArgs,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
}

#[derive(Args, Debug)]
pub struct TableArgs {
    #[command(flatten)]
    pub structure: StructureArgs,
    #[arg(long, value_delimiter = ',', required = true)]
    pub coeffs: Vec<u64>,
    /// Only `full` is supported.
    #[arg(long, default_value = "full")]
    pub domain: Domain,
    #[arg(long, default_value = "auto")]
    pub method: MethodChoice,
    #[command(flatten)]
    pub budgets: BudgetArgs,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    /// Largest field order in the sampled F_q suites.
    #[arg(long, default_value_t = 9)]
    pub max_q: u32,
    /// Largest modulus in the exhaustive Z/nZ sweep.
    #[arg(long, default_value_t = 12)]
    pub max_n: u64,
    /// Largest k in the sampled F_q suites.
    #[arg(long, default_value_t = 5)]
    pub max_k: usize,
    /// Instances per (q, k) in the sampled suites.
    #[arg(long, default_value_t = 200)]
    pub samples: usize,
    #[arg(long, default_value_t = 42)]
    pub seed: u64,
    /// Largest modulus drawn for the Z/nZ closed form.
    #[arg(long, default_value_t = 30)]
    pub bibak_max_n: u64,
    /// Accepted draws for the Z/nZ closed form.
    #[arg(long, default_value_t = 500)]
    pub bibak_samples: usize,
    /// Suites to run (comma-separated); all by default.
    #[arg(long, value_delimiter = ',')]
    pub suite: Vec<Suite>,
    /// Include every check in the report, not only mismatches.
    #[arg(long)]
    pub full_report: bool,
    #[arg(long, hide = true)]
    pub inject_fault: Option<Fault>,
    #[command(flatten)]
    pub budgets: BudgetArgs,
}

#[derive(Args, Debug)]
pub struct CensusArgs {
    /// Field order (a prime power, at most 13).
    #[arg(long)]
    pub q: u64,
    #[command(flatten)]
    pub budgets: BudgetArgs,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
}

#[derive(Args, Debug)]
pub struct BenchArgs {
    #[arg(long, default_value = "3^2")]
    pub field: FieldSpec,
    #[arg(long, default_value_t = 2)]
    pub min_k: usize,
    #[arg(long, default_value_t = 12)]
    pub max_k: usize,
    /// Engines to time (comma-separated).
    #[arg(long, value_delimiter = ',', default_value = "brute,recurrence,sieve,partition")]
    pub methods: Vec<MethodChoice>,
    /// Seed for the coefficient draws.
    #[arg(long, default_value_t = 42)]
    pub seed: u64,
    #[command(flatten)]
    pub budgets: BudgetArgs,
}
