use clap::{Args, Parser};
use std::path::PathBuf;

pub const DEFAULT_CACHE_DIR: &str = "./pfcache";

#[derive(Debug, Clone, Parser)]
#[command(
    name = "pfq",
    version,
    about = "Exact certificates for Pfaffian quartic threefolds"
)]
pub struct Cli {
    /// One of: pfaffian-identity, jacobian-span, smoothness, curve-invariants,
    /// slice-degree, resolution-cohomology, chern, zero-locus, kernel-sample,
    /// ci-quartic, audit.
    pub certificate: String,
    #[command(flatten)]
    pub config: Config,
}

#[derive(Debug, Clone, Args)]
pub struct Config {
    /// Skew matrix JSON file (default: the shipped M0).
    #[arg(long)]
    pub matrix: Option<PathBuf>,
    /// Claimed Pfaffian, as a file or a polynomial string.
    #[arg(long)]
    pub expect: Option<String>,
    /// Polynomial, as a file or a string.
    #[arg(long)]
    pub poly: Option<String>,
    /// Comma-separated variable names for --poly and --expect (default x1..x5).
    #[arg(long, value_delimiter = ',')]
    pub vars: Vec<String>,
    /// Ideal JSON file or builtin name.
    #[arg(long)]
    pub ideal: Option<String>,
    /// Complex JSON file or builtin name.
    #[arg(long)]
    pub complex: Option<String>,
    /// Prime(s), repeatable or comma-separated.
    #[arg(long = "prime", value_delimiter = ',')]
    pub primes: Vec<u64>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Last degree of the reported Hilbert function table.
    #[arg(long, default_value_t = 10)]
    pub tmax: u64,
    /// Sample count (kernel-sample) or number of consecutive seeds
    /// (curve-invariants, slice-degree).
    #[arg(long)]
    pub count: Option<usize>,
    /// Write the report here instead of stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, default_value = DEFAULT_CACHE_DIR)]
    pub cache_dir: PathBuf,
    /// Do not read or write the Gröbner basis cache.
    #[arg(long)]
    pub no_cache: bool,
    /// c_1 = k H.
    #[arg(long, allow_hyphen_values = true)]
    pub k: Option<i64>,
    /// c_2 = alpha l.
    #[arg(long, allow_hyphen_values = true)]
    pub alpha: Option<i64>,
    /// Twist: E(n) for chern, a single column for resolution-cohomology.
    #[arg(long, allow_hyphen_values = true)]
    pub twist: Option<i64>,
    /// Dimension of the scheme for slice-degree (default known for builtins).
    #[arg(long)]
    pub dim: Option<usize>,
}

impl Default for Config {
    fn default() -> Self {
        Self {
            matrix: None,
            expect: None,
            poly: None,
            vars: Vec::new(),
            ideal: None,
            complex: None,
            primes: Vec::new(),
            seed: 0,
            tmax: 10,
            count: None,
            out: None,
            cache_dir: PathBuf::from(DEFAULT_CACHE_DIR),
            no_cache: false,
            k: None,
            alpha: None,
            twist: None,
            dim: None,
        }
    }
}
