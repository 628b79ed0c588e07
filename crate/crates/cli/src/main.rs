//! Batch front-end for the leecode library: analyze code files, print
//! bound tables, reproduce bound-comparison grids, and run density
//! experiments. Output goes to stdout; diagnostics go to stderr with a
//! nonzero exit code, and nothing partial is printed on fatal errors.

mod render;
mod report;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use leecode::bounds;
use leecode::density::{self, AttainBound, Event};
use leecode::weights::Limits;
use leecode::{CodeFile, LinearCode, Modulus};
use std::path::PathBuf;

#[derive(Parser)]
#[command(name = "leecode", version, about = "Lee-metric linear codes over Z/p^sZ")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Enumeration cap: computations touching more codewords report
    /// per-field errors instead of running away.
    #[arg(long, global = true, default_value_t = 1 << 24)]
    cap: u128,
    /// Node budget for the rank-r subcode searches.
    #[arg(long, global = true, default_value_t = 50_000_000)]
    budget: u64,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Subcommand)]
enum Command {
    /// Structural analysis of a code file: subtype, distances, weight
    /// hierarchies, filtration profile.
    Analyze { file: PathBuf },
    /// Every distance bound for a code file, sorted by value.
    Bounds { file: PathBuf },
    /// Bound-comparison grid for parameter tuples n,K,q,sigma. Without
    /// arguments, a default set of five tuples is used.
    Table { blocks: Vec<String> },
    /// Density experiments: Monte Carlo estimates and exhaustive censuses.
    Density {
        #[command(subcommand)]
        experiment: DensityCommand,
    },
}

#[derive(Subcommand)]
enum DensityCommand {
    /// Probability that a random free systematic code has an all-unit
    /// tail block, versus the exact closed form.
    EllZero {
        #[arg(long)]
        p: u64,
        #[arg(long, default_value_t = 2)]
        s: u32,
        #[arg(long)]
        rank: usize,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        trials: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Probability of the designated full-valuation tail-row pattern,
    /// versus the exact closed form.
    FullRow {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        s: u32,
        #[arg(long)]
        rank: usize,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        ell: u32,
        #[arg(long)]
        trials: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Monte Carlo frequency of a random code attaining a bound.
    Attain {
        #[arg(long, value_enum)]
        bound: BoundArg,
        #[arg(long)]
        p: u64,
        #[arg(long)]
        s: u32,
        #[arg(long)]
        n: usize,
        /// Comma-separated subtype, e.g. 1,2 for (k_0, k_1) = (1, 2).
        #[arg(long)]
        subtype: String,
        #[arg(long)]
        trials: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Exhaustive census of all systematic generator choices of a
    /// subtype, counting codes that attain a bound.
    Census {
        #[arg(long, value_enum)]
        bound: BoundArg,
        #[arg(long)]
        p: u64,
        #[arg(long)]
        s: u32,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        subtype: String,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum BoundArg {
    Shiromoto,
    Join,
    ColumnCancelling,
}

impl From<BoundArg> for AttainBound {
    fn from(b: BoundArg) -> Self {
        match b {
            BoundArg::Shiromoto => AttainBound::Shiromoto,
            BoundArg::Join => AttainBound::Join,
            BoundArg::ColumnCancelling => AttainBound::ColumnCancelling,
        }
    }
}

fn main() {
    let cli = Cli::parse();
    match run(cli) {
        Ok(output) => print!("{output}"),
        Err(e) => {
            eprintln!("error: {e:#}");
            std::process::exit(1);
        }
    }
}

fn load_code(path: &PathBuf) -> Result<LinearCode> {
    let text = std::fs::read_to_string(path)
        .with_context(|| format!("cannot read {}", path.display()))?;
    let file = CodeFile::from_json(&text)?;
    Ok(file.to_code()?)
}

fn parse_subtype(text: &str) -> Result<Vec<usize>> {
    text.split(',')
        .map(|part| {
            part.trim()
                .parse::<usize>()
                .with_context(|| format!("bad subtype entry {part:?}"))
        })
        .collect()
}

fn run(cli: Cli) -> Result<String> {
    let limits = Limits {
        enumeration_cap: cli.cap,
        search_budget: cli.budget,
    };
    match cli.command {
        Command::Analyze { file } => {
            let code = load_code(&file)?;
            let report = report::analyze(&code, &limits);
            Ok(match cli.format {
                Format::Json => serde_json::to_string_pretty(&report)? + "\n",
                Format::Text => {
                    let rows: Vec<Vec<String>> = render::analyze_fields(&report)
                        .into_iter()
                        .map(|(k, v)| vec![k, v])
                        .collect();
                    render::text_table(&["field", "value"], &rows)
                }
                Format::Csv => {
                    let rows: Vec<Vec<String>> = render::analyze_fields(&report)
                        .into_iter()
                        .map(|(k, v)| vec![k, v])
                        .collect();
                    render::csv_table(&["field", "value"], &rows)?
                }
            })
        }
        Command::Bounds { file } => {
            let code = load_code(&file)?;
            let rows = report::bounds_rows(&code, &limits);
            let header = ["name", "metric", "value", "applicable", "attained", "reason"];
            Ok(match cli.format {
                Format::Json => serde_json::to_string_pretty(&rows)? + "\n",
                Format::Text => render::text_table(&header, &render::bounds_rows_cells(&rows)),
                Format::Csv => render::csv_table(&header, &render::bounds_rows_cells(&rows))?,
            })
        }
        Command::Table { blocks } => {
            let tuples: Vec<(usize, usize, u64, u32)> = if blocks.is_empty() {
                vec![
                    (6, 3, 9, 0),
                    (6, 3, 9, 1),
                    (6, 3, 125, 0),
                    (6, 3, 125, 1),
                    (6, 3, 125, 2),
                ]
            } else {
                blocks.iter().map(|b| parse_block(b)).collect::<Result<_>>()?
            };
            let mut built = Vec::new();
            for (n, k_rank, q, sigma) in tuples {
                let (p, s) = factor_prime_power(q)?;
                let modulus = Modulus::new(p, s)?;
                built.push(bounds::table_block(modulus, n, k_rank, sigma)?);
            }
            Ok(match cli.format {
                Format::Json => serde_json::to_string_pretty(&built)? + "\n",
                Format::Text => {
                    let header =
                        ["(n, K, q, sigma)", "alderson", "shiromoto", "join", "(ell, n')", "filtration"];
                    let rows: Vec<Vec<String>> =
                        built.iter().flat_map(|b| render::table_block_cells(b)).collect();
                    render::text_table(&header, &rows)
                }
                Format::Csv => {
                    let header = [
                        "n", "K", "q", "sigma", "alderson", "shiromoto", "join", "ell", "nprime",
                        "filtration",
                    ];
                    let rows: Vec<Vec<String>> =
                        built.iter().flat_map(|b| render::table_block_csv_rows(b)).collect();
                    render::csv_table(&header, &rows)?
                }
            })
        }
        Command::Density { experiment } => run_density(experiment, cli.format, &limits),
    }
}

fn run_density(cmd: DensityCommand, format: Format, limits: &Limits) -> Result<String> {
    let mc_header = ["event", "params", "exact", "estimate", "stderr", "trials", "seed"];
    match cmd {
        DensityCommand::EllZero {
            p,
            s,
            rank,
            n,
            trials,
            seed,
        } => {
            let event = Event::EllZero { p, s, k_rank: rank, n };
            let mc = density::monte_carlo_probability(&event, trials, seed, limits)?;
            let params = format!("p={p} s={s} K={rank} n={n}");
            emit_mc(format, &mc_header, "ell_zero", &params, &mc)
        }
        DensityCommand::FullRow {
            p,
            s,
            rank,
            n,
            ell,
            trials,
            seed,
        } => {
            let event = Event::FullZeroRow {
                p,
                s,
                k_rank: rank,
                n,
                ell_tilde: ell,
            };
            let mc = density::monte_carlo_probability(&event, trials, seed, limits)?;
            let params = format!("p={p} s={s} K={rank} n={n} ell={ell}");
            emit_mc(format, &mc_header, "full_row", &params, &mc)
        }
        DensityCommand::Attain {
            bound,
            p,
            s,
            n,
            subtype,
            trials,
            seed,
        } => {
            let subtype = parse_subtype(&subtype)?;
            let event = Event::BoundAttainment {
                p,
                s,
                n,
                subtype: subtype.clone(),
                bound: bound.into(),
            };
            let mc = density::monte_carlo_probability(&event, trials, seed, limits)?;
            let params = format!("p={p} s={s} n={n} subtype={subtype:?}");
            emit_mc(format, &mc_header, "bound_attainment", &params, &mc)
        }
        DensityCommand::Census { bound, p, s, n, subtype } => {
            let subtype = parse_subtype(&subtype)?;
            let modulus = Modulus::new(p, s)?;
            let census = density::census_optimal_codes(modulus, n, &subtype, bound.into(), limits)?;
            let params = format!("p={p} s={s} n={n} subtype={subtype:?}");
            let header = ["bound", "params", "total", "attaining", "fraction"];
            Ok(match format {
                Format::Json => serde_json::to_string_pretty(&census)? + "\n",
                Format::Text => {
                    render::text_table(&header, &[render::census_cells(&params, &census)])
                }
                Format::Csv => {
                    render::csv_table(&header, &[render::census_cells(&params, &census)])?
                }
            })
        }
    }
}

fn emit_mc(
    format: Format,
    header: &[&str],
    label: &str,
    params: &str,
    mc: &density::MonteCarloEstimate,
) -> Result<String> {
    Ok(match format {
        Format::Json => serde_json::to_string_pretty(mc)? + "\n",
        Format::Text => render::text_table(header, &[render::monte_carlo_cells(label, params, mc)]),
        Format::Csv => render::csv_table(header, &[render::monte_carlo_cells(label, params, mc)])?,
    })
}

fn parse_block(text: &str) -> Result<(usize, usize, u64, u32)> {
    let parts: Vec<&str> = text.split(',').map(str::trim).collect();
    if parts.len() != 4 {
        bail!("table blocks are n,K,q,sigma; got {text:?}");
    }
    Ok((
        parts[0].parse().context("bad n")?,
        parts[1].parse().context("bad K")?,
        parts[2].parse().context("bad q")?,
        parts[3].parse().context("bad sigma")?,
    ))
}

fn factor_prime_power(q: u64) -> Result<(u64, u32)> {
    if q < 2 {
        bail!("q must be a prime power, got {q}");
    }
    let mut p = 2;
    while p * p <= q {
        if q % p == 0 {
            let mut rest = q;
            let mut s = 0;
            while rest % p == 0 {
                rest /= p;
                s += 1;
            }
            if rest != 1 {
                bail!("{q} is not a prime power");
            }
            return Ok((p, s));
        }
        p += 1;
    }
    Ok((q, 1))
}
