use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use permtail::exact::{cached_distribution, pmf_via_fourier};
use permtail::montecarlo::sample_stats;
use permtail::report::{compare, write_csv, CompareOptions, McOptions};
use permtail::saddle::{solve, DEFAULT_MAX_ORDER};
use permtail::sldp::{expansion_descents, expansion_major};
use permtail::{Error, Statistic};

/// Sharp tail approximations for descents and the major index of random
/// permutations, checked against exact distributions.
#[derive(Parser)]
#[command(name = "permtail", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Csv,
    Json,
    Text,
}

#[derive(Clone, Copy, ValueEnum)]
enum PmfMethod {
    Exact,
    Fourier,
}

#[derive(Subcommand)]
enum Command {
    /// Solve the dual equation and print t_x, sigma_x^2, I(x) and derivative tables.
    Saddle {
        #[arg(long)]
        stat: Statistic,
        #[arg(long)]
        x: f64,
        /// Highest derivative order in the tables.
        #[arg(long, default_value_t = DEFAULT_MAX_ORDER)]
        order: usize,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Approximate log P(tail) for one n.
    Approx {
        #[arg(long)]
        stat: Statistic,
        #[arg(long)]
        x: f64,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 1)]
        order: usize,
    },
    /// Compare exact tails with the approximations over several n.
    Compare {
        #[arg(long)]
        stat: Statistic,
        #[arg(long)]
        x: f64,
        #[arg(long = "n-list", value_delimiter = ',', required = true)]
        n_list: Vec<usize>,
        #[arg(long, default_value_t = 1)]
        order: usize,
        #[arg(long, value_enum, default_value = "csv")]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Directory for cached exact rows (PERMTAIL_CACHE takes precedence).
        #[arg(long)]
        cache_dir: Option<PathBuf>,
        /// Add a Monte Carlo estimate with this many trials per row.
        #[arg(long)]
        trials: Option<u64>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Print the full distribution as CSV rows `k,probability`.
    Pmf {
        #[arg(long)]
        stat: Statistic,
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value = "exact")]
        method: PmfMethod,
        /// Exponential tilt used by the Fourier method.
        #[arg(long, default_value_t = 0.0)]
        tilt: f64,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        cache_dir: Option<PathBuf>,
    },
    /// Sample uniform permutations and report empirical moments and tails.
    Mc {
        #[arg(long)]
        stat: Statistic,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 100_000)]
        trials: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Thresholds m for the frequencies of {X >= m}.
        #[arg(long, value_delimiter = ',')]
        thresholds: Vec<i64>,
    },
}

fn output(path: Option<&PathBuf>) -> Result<Box<dyn Write>, Error> {
    Ok(match path {
        Some(p) => {
            Box::new(BufWriter::new(File::create(p).map_err(|e| {
                Error::InvalidArgument(format!("{}: {e}", p.display()))
            })?))
        }
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

fn io_err(e: io::Error) -> Error {
    Error::InvalidArgument(format!("write failed: {e}"))
}

fn cache_dir(flag: Option<PathBuf>) -> Option<PathBuf> {
    std::env::var_os("PERMTAIL_CACHE")
        .map(PathBuf::from)
        .or(flag)
}

fn print_json(out: &mut dyn Write, value: &impl serde::Serialize) -> Result<(), Error> {
    serde_json::to_writer_pretty(&mut *out, value)
        .map_err(|e| Error::InvalidArgument(e.to_string()))?;
    writeln!(out).map_err(io_err)
}

fn run(cli: Cli) -> Result<(), Error> {
    match cli.command {
        Command::Saddle {
            stat,
            x,
            order,
            format,
        } => {
            let sp = solve(stat, x, order)?;
            let mut out = output(None)?;
            match format {
                Format::Text => {
                    writeln!(out, "statistic  {}", sp.statistic).map_err(io_err)?;
                    writeln!(out, "x          {}", sp.x).map_err(io_err)?;
                    writeln!(out, "t_x        {:.17e}", sp.t_x).map_err(io_err)?;
                    writeln!(out, "sigma2     {:.17e}", sp.sigma2).map_err(io_err)?;
                    writeln!(out, "rate       {:.17e}", sp.rate).map_err(io_err)?;
                    for k in 0..=sp.max_order() {
                        write!(out, "ell_D({k})   {:>24.17e}", sp.ell_d[k]).map_err(io_err)?;
                        if stat == Statistic::MajorIndex {
                            write!(
                                out,
                                "  ell_M({k}) {:>24.17e}  H({k}) {:>24.17e}",
                                sp.ell_m[k], sp.h[k]
                            )
                            .map_err(io_err)?;
                        }
                        writeln!(out).map_err(io_err)?;
                    }
                }
                _ => print_json(&mut out, &sp)?,
            }
            out.flush().map_err(io_err)
        }
        Command::Approx { stat, x, n, order } => {
            let sp = solve(stat, x, DEFAULT_MAX_ORDER.max(2 * order + 3))?;
            let approx = match stat {
                Statistic::Descents => expansion_descents(&sp, n, order)?,
                Statistic::MajorIndex => expansion_major(&sp, n, order)?,
            };
            let mut out = output(None)?;
            print_json(&mut out, &approx)?;
            out.flush().map_err(io_err)
        }
        Command::Compare {
            stat,
            x,
            n_list,
            order,
            format,
            out,
            cache_dir: dir,
            trials,
            seed,
        } => {
            let opts = CompareOptions {
                max_order: order,
                cache_dir: cache_dir(dir),
                mc: trials.map(|trials| McOptions { trials, seed }),
            };
            let rows = compare(stat, x, &n_list, &opts)?;
            let mut w = output(out.as_ref())?;
            match format {
                Format::Json => print_json(&mut w, &rows)?,
                _ => write_csv(&mut w, &rows)?,
            }
            w.flush().map_err(io_err)
        }
        Command::Pmf {
            stat,
            n,
            method,
            tilt,
            out,
            cache_dir: dir,
        } => {
            let probs = match method {
                PmfMethod::Exact => {
                    cached_distribution(stat, n, cache_dir(dir).as_deref())?.probabilities()
                }
                PmfMethod::Fourier => {
                    if stat != Statistic::MajorIndex {
                        return Err(Error::InvalidArgument(
                            "the Fourier method is implemented for --stat major".into(),
                        ));
                    }
                    let f = pmf_via_fourier(n, tilt)?;
                    if let Some(m) = f.max_negative_mass {
                        eprintln!(
                            "warning: Fourier inversion produced negative mass down to -{m:e}"
                        );
                    }
                    f.pmf
                }
            };
            let mut w = output(out.as_ref())?;
            writeln!(w, "k,probability").map_err(io_err)?;
            for (k, p) in probs.iter().enumerate() {
                writeln!(w, "{k},{p}").map_err(io_err)?;
            }
            w.flush().map_err(io_err)
        }
        Command::Mc {
            stat,
            n,
            trials,
            seed,
            thresholds,
        } => {
            let s = sample_stats(stat, n, trials, seed, &thresholds)?;
            let tails: Vec<_> = s
                .tail_hits
                .keys()
                .map(|&t| {
                    let (p, se) = s.tail_frequency(t).expect("threshold was sampled");
                    json!({ "threshold": t, "probability": p, "std_error": se })
                })
                .collect();
            let nt = s.trials as f64;
            let report = json!({
                "statistic": s.statistic,
                "n": s.n,
                "trials": s.trials,
                "seed": s.seed,
                "mean": s.mean,
                "mean_std_error": (s.variance / nt).sqrt(),
                "variance": s.variance,
                "tail_hits": s.tail_hits,
                "tail_frequencies": tails,
            });
            let mut out = output(None)?;
            print_json(&mut out, &report)?;
            out.flush().map_err(io_err)
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
