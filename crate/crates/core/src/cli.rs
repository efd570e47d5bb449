//! Command-line front end. `main` lives in `src/bin/quadrics.rs`; everything
//! here writes into a buffer so it can be driven from tests.

use std::fmt::Write as _;

use clap::{ArgGroup, Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigUint;

use crate::error::{Error, Result};
use crate::muinv::{count_mu_involutions, Composition, MuInvolution};
use crate::perm::Permutation;
use crate::poset::{self, d_set, d_set_mu, WeakOrderPoset, DEFAULT_CHAIN_LIMIT, DEFAULT_MAX_N};
use crate::schubert::{self, ExponentMode};

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_RESOURCE: i32 = 3;

/// Largest `n` for chain listing and conjecture checks without `--limit`.
pub const DEFAULT_HEAVY_MAX_N: usize = 8;

#[derive(Debug, Parser)]
#[command(
    name = "quadrics",
    version,
    about = "Weak order on mu-involutions, W-sets and Schubert restriction classes"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Dot,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ExponentArg {
    /// Sum of floor(mu_i / 2): the double-edge count
    DoubleEdges,
    /// floor(n / 2) for every composition
    Uniform,
}

impl From<ExponentArg> for ExponentMode {
    fn from(a: ExponentArg) -> Self {
        match a {
            ExponentArg::DoubleEdges => ExponentMode::DoubleEdges,
            ExponentArg::Uniform => ExponentMode::Uniform,
        }
    }
}

#[derive(Debug, Args)]
#[command(group(ArgGroup::new("size").required(true).args(["mu", "n"])))]
pub struct SizeArgs {
    /// Composition, e.g. 3,1
    #[arg(long)]
    pub mu: Option<Composition>,
    /// Size n, meaning mu = (n) or all compositions of n
    #[arg(long)]
    pub n: Option<usize>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// List I_mu with ranks and double-edge counts
    Enumerate {
        #[arg(long)]
        mu: Composition,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
        /// Largest n to build
        #[arg(long, default_value_t = DEFAULT_MAX_N)]
        limit: usize,
    },
    /// Export the Hasse diagram
    Poset {
        #[arg(long)]
        mu: Composition,
        #[arg(long, value_enum, default_value = "dot")]
        format: Format,
        #[arg(long, default_value_t = DEFAULT_MAX_N)]
        limit: usize,
    },
    /// W-set of a mu-involution such as 432|1
    Wset {
        #[arg(long)]
        pi: String,
        /// Composition the bars must match
        #[arg(long)]
        mu: Option<Composition>,
        /// Print W(Y_pi) = W(pi)^-1 instead
        #[arg(long)]
        inverse: bool,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
        #[arg(long, default_value_t = DEFAULT_MAX_N)]
        limit: usize,
    },
    /// D_n or D_mu
    Dset {
        #[command(flatten)]
        size: SizeArgs,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Number of maximal chains; --list enumerates them
    Chains {
        #[arg(long)]
        mu: Composition,
        #[arg(long)]
        list: bool,
        /// Largest n to build (listing defaults to 8)
        #[arg(long)]
        limit: Option<usize>,
    },
    /// Run every check on one composition, or on all compositions of n
    Verify {
        #[command(flatten)]
        size: SizeArgs,
        #[arg(long, default_value_t = DEFAULT_MAX_N)]
        limit: usize,
    },
    /// Schubert polynomial of a permutation
    Schubert {
        #[arg(long)]
        w: Permutation,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Restriction class 2^e * sum of Schubert polynomials over D_mu inverses
    Restrict {
        #[arg(long)]
        mu: Composition,
        #[arg(long, value_enum, default_value = "double-edges")]
        exponent_mode: ExponentArg,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
        #[arg(long, default_value_t = DEFAULT_MAX_N)]
        limit: usize,
    },
    /// Compare the restriction class of mu = (n) with the product of binomials
    Conjecture {
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
        #[arg(long, default_value_t = DEFAULT_HEAVY_MAX_N)]
        limit: usize,
    },
    /// Compare the two exponent conventions for the restriction class
    Exponents {
        #[command(flatten)]
        size: SizeArgs,
    },
}

fn bound(n: usize, limit: usize, estimate: impl FnOnce() -> String) -> Result<()> {
    if n > limit {
        return Err(Error::ResourceBound {
            n,
            limit,
            estimate: estimate(),
        });
    }
    Ok(())
}

fn json<T: serde::Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("serializable output")
}

fn bracketed(items: &[String]) -> String {
    items.iter().map(|s| format!("[{s}]\n")).collect()
}

fn size_compositions(size: &SizeArgs, all_of_n: bool) -> Result<Vec<Composition>> {
    match (&size.mu, size.n) {
        (Some(mu), None) => Ok(vec![mu.clone()]),
        (None, Some(n)) if all_of_n => {
            if n == 0 {
                return Err(Error::Parse("n must be positive".into()));
            }
            Ok(Composition::all(n))
        }
        (None, Some(n)) => Ok(vec![Composition::single(n)?]),
        _ => Err(Error::Parse("give exactly one of --mu and --n".into())),
    }
}

/// Runs one command, returning the exit status and appending output to `out`.
pub fn run(cli: &Cli, out: &mut String) -> Result<i32> {
    match &cli.command {
        Command::Enumerate { mu, format, limit } => {
            let poset = WeakOrderPoset::build(mu, *limit)?;
            let mut rows: Vec<(MuInvolution, usize)> = (0..poset.len())
                .map(|id| (poset.node(id), poset.rank_of(id)))
                .collect();
            rows.sort_by(|a, b| a.0.perm().cmp(b.0.perm()));
            match format {
                Format::Json => {
                    let items: Vec<serde_json::Value> = rows
                        .iter()
                        .map(|(pi, rank)| {
                            serde_json::json!({
                                "id": pi.to_string(),
                                "mu": pi.mu().parts(),
                                "word": pi.perm().to_vec(),
                                "rank": rank,
                                "dcount": pi.double_edge_count(),
                            })
                        })
                        .collect();
                    out.push_str(&json(&items));
                    out.push('\n');
                }
                _ => {
                    for (pi, rank) in &rows {
                        let _ = writeln!(out, "[{pi}]\t{rank}\t{}", pi.double_edge_count());
                    }
                }
            }
            Ok(EXIT_PASS)
        }
        Command::Poset { mu, format, limit } => {
            let poset = WeakOrderPoset::build(mu, *limit)?;
            match format {
                Format::Dot => out.push_str(&poset.to_dot()),
                Format::Json => {
                    out.push_str(&poset.to_json());
                    out.push('\n');
                }
                Format::Text => {
                    for e in poset.edges() {
                        let mult = match e.multiplicity {
                            poset::Multiplicity::Single => "single",
                            poset::Multiplicity::Double => "double",
                        };
                        let _ = writeln!(
                            out,
                            "[{}] -s{}-> [{}]\t{mult}",
                            poset.node(e.source),
                            e.label,
                            poset.node(e.target)
                        );
                    }
                }
            }
            Ok(EXIT_PASS)
        }
        Command::Wset {
            pi,
            mu,
            inverse,
            format,
            limit,
        } => {
            let pi: MuInvolution = pi.parse()?;
            if let Some(mu) = mu {
                if pi.mu() != mu {
                    return Err(Error::Parse(format!(
                        "{pi} has shape {} but --mu is {mu}",
                        pi.mu()
                    )));
                }
            }
            let poset = WeakOrderPoset::build(pi.mu(), *limit)?;
            let w = poset.w_set(&pi)?;
            let elements = if *inverse {
                w.inverse_elements()
            } else {
                w.elements
            };
            write_perm_set(out, &elements, *format, None);
            Ok(EXIT_PASS)
        }
        Command::Dset { size, format } => {
            let (elements, mu) = match (&size.mu, size.n) {
                (Some(mu), _) => (d_set_mu(mu), Some(mu.clone())),
                (None, Some(n)) => (d_set(n), None),
                _ => unreachable!("clap enforces the group"),
            };
            write_perm_set(out, &elements, *format, mu.as_ref());
            Ok(EXIT_PASS)
        }
        Command::Chains { mu, list, limit } => {
            let default = if *list {
                DEFAULT_HEAVY_MAX_N
            } else {
                DEFAULT_MAX_N
            };
            let poset = WeakOrderPoset::build(mu, limit.unwrap_or(default))?;
            if *list {
                for chain in poset.maximal_chains(DEFAULT_CHAIN_LIMIT)? {
                    let _ = writeln!(out, "{}", chain.word());
                }
            } else {
                let _ = writeln!(out, "{}", poset.count_maximal_chains());
            }
            Ok(EXIT_PASS)
        }
        Command::Verify { size, limit } => {
            let mut ok = true;
            for mu in size_compositions(size, true)? {
                let report = poset::verify_all(&mu, *limit)?;
                ok &= report.passed();
                let _ = writeln!(out, "== mu = {mu}");
                out.push_str(&report.to_string());
            }
            let _ = writeln!(out, "{}", if ok { "ALL PASS" } else { "FAILURES" });
            Ok(if ok { EXIT_PASS } else { EXIT_FAIL })
        }
        Command::Schubert { w, format } => {
            let class = schubert::schubert(w);
            match format {
                Format::Json => {
                    out.push_str(&json(&serde_json::json!({
                        "w": w.to_vec(),
                        "poly": class.poly,
                    })));
                    out.push('\n');
                }
                _ => {
                    let _ = writeln!(out, "{}", class.poly);
                }
            }
            Ok(EXIT_PASS)
        }
        Command::Restrict {
            mu,
            exponent_mode,
            format,
            limit,
        } => {
            bound(mu.n(), *limit, || d_set_mu(mu).len().to_string())?;
            let poly = schubert::restriction_class(mu, (*exponent_mode).into());
            match format {
                Format::Json => {
                    out.push_str(&json(&poly));
                    out.push('\n');
                }
                _ => {
                    let _ = writeln!(out, "{poly}");
                }
            }
            Ok(EXIT_PASS)
        }
        Command::Conjecture { n, format, limit } => {
            bound(*n, *limit, || poset::double_factorial_below(*n).to_string())?;
            let report = schubert::check_conjecture(*n);
            match format {
                Format::Json => {
                    out.push_str(&json(&report));
                    out.push('\n');
                }
                _ => {
                    let _ = writeln!(out, "{report}");
                }
            }
            Ok(if report.passed() {
                EXIT_PASS
            } else {
                EXIT_FAIL
            })
        }
        Command::Exponents { size } => {
            for mu in size_compositions(size, true)? {
                bound(mu.n(), DEFAULT_MAX_N, || {
                    count_mu_involutions(&mu).to_string()
                })?;
                let _ = writeln!(out, "{}", schubert::compare_exponent_conventions(&mu));
            }
            Ok(EXIT_PASS)
        }
    }
}

fn write_perm_set(
    out: &mut String,
    elements: &[Permutation],
    format: Format,
    mu: Option<&Composition>,
) {
    match format {
        Format::Json => {
            let words: Vec<Vec<usize>> = elements.iter().map(Permutation::to_vec).collect();
            out.push_str(&json(&words));
            out.push('\n');
        }
        _ => {
            let shown: Vec<String> = elements
                .iter()
                .map(|w| match mu {
                    Some(mu) => MuInvolution::from_parts(mu.clone(), w.clone()).to_string(),
                    None => w.to_string(),
                })
                .collect();
            out.push_str(&bracketed(&shown));
        }
    }
}

/// Parses `args` (including the program name) and runs. Returns the exit
/// status, standard output and standard error.
pub fn main_with_args<I, T>(args: I) -> (i32, String, String)
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() {
                EXIT_USAGE
            } else {
                EXIT_PASS
            };
            let text = e.render().to_string();
            return if e.use_stderr() {
                (code, String::new(), text)
            } else {
                (code, text, String::new())
            };
        }
    };
    let mut out = String::new();
    match run(&cli, &mut out) {
        Ok(code) => (code, out, String::new()),
        Err(e) => {
            let code = match e {
                Error::ResourceBound { .. } | Error::ChainLimit { .. } => EXIT_RESOURCE,
                _ => EXIT_USAGE,
            };
            (code, out, format!("error: {e}\n"))
        }
    }
}

/// Total number of reduced words over a permutation set.
pub fn reduced_word_total(set: &[Permutation]) -> BigUint {
    set.iter().map(Permutation::count_reduced_words).sum()
}
