//! Command-line flags and their validation into a [`RunConfig`].

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use hecke_core::iwahori::DEFAULT_MAX_SUPPORT;
use hecke_core::{BasedRootDatum, Coweight, Error, Family, Result, ScalarDomain, TwistConfig};

#[derive(Parser, Debug)]
#[command(name = "hecke", version, about = "Hecke polynomials, Satake transforms and Cayley-Hamilton checks")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Describe a root datum: roots, Weyl group order, minuscule coweights.
    Datum(Flags),
    /// Compute the Hecke polynomial of a minuscule cocharacter.
    Poly(Flags),
    /// Run a verification suite, one JSON report per line.
    Verify {
        #[arg(value_enum)]
        suite: Suite,
        #[command(flatten)]
        flags: Flags,
    },
    /// Evaluate the polynomial's coefficients at one Satake parameter.
    Eval(Flags),
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    Ch,
    Inertia,
    Satake,
    Newton,
    Modell,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Basis {
    Satake,
    DoubleCoset,
}

#[derive(Args, Debug, Clone)]
pub struct Flags {
    /// GL, SL, PGL or Sp.
    #[arg(long)]
    pub family: Option<String>,
    /// Matrix size n of the group (GL_n, SL_n, PGL_n, Sp_n with n even).
    #[arg(long)]
    pub rank: Option<usize>,
    /// Cocharacter as comma-separated integers.
    #[arg(long, allow_hyphen_values = true)]
    pub mu: Option<String>,
    /// paper, classical or exp=<int>.
    #[arg(long, default_value = "paper")]
    pub twist: String,
    #[arg(long, default_value_t = 1, allow_hyphen_values = true)]
    pub e_over_f: i64,
    /// formal, rat:v=<r> or ell=<p>,v=<r>[,q=<s>].
    #[arg(long, default_value = "ell=11,v=4")]
    pub field: String,
    #[arg(long, value_enum, default_value = "satake")]
    pub basis: Basis,
    #[arg(long)]
    pub trials: Option<u64>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Write output here instead of standard output.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Largest affine Hecke support allowed in an intermediate product.
    #[arg(long, default_value_t = DEFAULT_MAX_SUPPORT)]
    pub max_support: usize,
    /// Sup-norm bound on dominant weights for `verify satake` and `datum`.
    #[arg(long, default_value_t = 1)]
    pub max_norm: i64,
    /// Matrix size for `verify inertia`.
    #[arg(long)]
    pub d: Option<usize>,
    /// Satake parameter entries for `eval`, comma-separated.
    #[arg(long, allow_hyphen_values = true)]
    pub param: Option<String>,
    /// Record wall-clock time per report (output is then not reproducible).
    #[arg(long)]
    pub timing: bool,
}

/// Validated settings for one run.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub datum: Option<BasedRootDatum>,
    pub mu: Option<Coweight>,
    pub twist: TwistConfig,
    pub e_over_f: i64,
    pub domain: ScalarDomain,
    pub basis: Basis,
    pub trials: u64,
    pub seed: u64,
    pub out: Option<PathBuf>,
    pub max_support: usize,
    pub max_norm: i64,
    pub d: usize,
    pub param: Option<Vec<String>>,
    pub timing: bool,
}

impl RunConfig {
    pub fn from_flags(flags: &Flags, default_trials: u64) -> Result<Self> {
        let datum = match (&flags.family, flags.rank) {
            (Some(f), Some(n)) => Some(BasedRootDatum::build_standard(f.parse::<Family>()?, n)?),
            (Some(f), None) => {
                f.parse::<Family>()?;
                return Err(Error::Unsupported("--rank is required with --family".into()));
            }
            (None, Some(_)) => return Err(Error::Unsupported("--family is required with --rank".into())),
            (None, None) => None,
        };
        let mu = match &flags.mu {
            Some(s) => {
                let mu: Coweight = s.parse()?;
                if let Some(d) = &datum {
                    d.check_dim(&mu)?;
                }
                Some(mu)
            }
            None => None,
        };
        if flags.max_norm < 0 {
            return Err(Error::Unsupported("--max-norm must be non-negative".into()));
        }
        let param = flags.param.as_ref().map(|p| p.split(',').map(|x| x.trim().to_string()).collect());
        Ok(Self {
            datum,
            mu,
            twist: flags.twist.parse()?,
            e_over_f: flags.e_over_f,
            domain: flags.field.parse()?,
            basis: flags.basis,
            trials: flags.trials.unwrap_or(default_trials),
            seed: flags.seed,
            out: flags.out.clone(),
            max_support: flags.max_support,
            max_norm: flags.max_norm,
            d: flags.d.unwrap_or(4),
            param,
            timing: flags.timing,
        })
    }

    pub fn datum(&self) -> Result<&BasedRootDatum> {
        self.datum.as_ref().ok_or_else(|| Error::Unsupported("--family and --rank are required".into()))
    }

    pub fn mu(&self) -> Result<&Coweight> {
        self.mu.as_ref().ok_or_else(|| Error::Unsupported("--mu is required".into()))
    }
}
