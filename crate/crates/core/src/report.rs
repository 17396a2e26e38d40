//! Side-by-side comparison of exact tails and their approximations.

use std::io::{Read, Write};
use std::path::PathBuf;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::exact::{cached_distribution, threshold};
use crate::montecarlo::sample_stats;
use crate::saddle::{solve, DEFAULT_MAX_ORDER};
use crate::sldp::{expansion_descents, expansion_major, TailApprox};
use crate::{Error, Result, Statistic};

/// Column order of the CSV table.
pub const CSV_HEADER: [&str; 9] = [
    "stat",
    "n",
    "x",
    "threshold",
    "exact_log",
    "sldp0_log",
    "sldp1_log",
    "ratio0",
    "ratio1",
];

const NA: &str = "NA";

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct McEstimate {
    pub trials: u64,
    pub seed: u64,
    pub probability: f64,
    pub std_error: f64,
}

/// One `(statistic, n, x)` line. Missing values (empty tail, bracket out of
/// regime, order not requested) are `None`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ComparisonRow {
    pub statistic: Statistic,
    pub n: usize,
    pub x: f64,
    pub threshold: i64,
    pub exact_log: Option<f64>,
    pub sldp0_log: Option<f64>,
    pub sldp1_log: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sldp2_log: Option<f64>,
    pub ratio0: Option<f64>,
    pub ratio1: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ratio2: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mc_estimate: Option<McEstimate>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct McOptions {
    pub trials: u64,
    pub seed: u64,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct CompareOptions {
    /// Highest approximation order (2 is available for descents only).
    pub max_order: usize,
    pub cache_dir: Option<PathBuf>,
    pub mc: Option<McOptions>,
}

fn approx(
    statistic: Statistic,
    sp: &crate::saddle::SaddlePoint,
    n: usize,
    p: usize,
) -> Result<Option<f64>> {
    let r: Result<TailApprox> = match statistic {
        Statistic::Descents => expansion_descents(sp, n, p),
        Statistic::MajorIndex => expansion_major(sp, n, p),
    };
    match r {
        Ok(a) => Ok(Some(a.value_log)),
        Err(Error::NonPositiveBracket { .. }) => Ok(None),
        Err(e) => Err(e),
    }
}

fn ratio(exact: Option<f64>, approx: Option<f64>) -> Option<f64> {
    match (exact, approx) {
        (Some(e), Some(a)) if e.is_finite() && a.is_finite() => Some((e - a).exp()),
        _ => None,
    }
}

/// Builds one row per `n`, in input order. Rows are computed in parallel.
pub fn compare(
    statistic: Statistic,
    x: f64,
    ns: &[usize],
    opts: &CompareOptions,
) -> Result<Vec<ComparisonRow>> {
    let max_allowed = match statistic {
        Statistic::Descents => 2,
        Statistic::MajorIndex => crate::sldp::major::MAX_ORDER,
    };
    if opts.max_order > max_allowed {
        return Err(Error::Order {
            requested: opts.max_order,
            max: max_allowed,
        });
    }
    let sp = solve(statistic, x, DEFAULT_MAX_ORDER.max(2 * opts.max_order + 3))?;
    ns.par_iter()
        .map(|&n| {
            let dist = cached_distribution(statistic, n, opts.cache_dir.as_deref())?;
            let thr = threshold(statistic, n, x);
            let exact_log = match dist.tail_at(thr) {
                Ok(t) => Some(t.log_value),
                Err(Error::EmptyTail { .. }) => None,
                Err(e) => return Err(e),
            };
            let mut logs = [None; 3];
            for (p, slot) in logs.iter_mut().enumerate().take(opts.max_order.max(1) + 1) {
                if p <= max_allowed {
                    *slot = approx(statistic, &sp, n, p)?;
                }
            }
            let sldp2_log = if opts.max_order >= 2 { logs[2] } else { None };
            let mc_estimate = match opts.mc {
                Some(mc) => {
                    let s = sample_stats(statistic, n, mc.trials, mc.seed, &[thr])?;
                    let (probability, std_error) =
                        s.tail_frequency(thr).expect("threshold was sampled");
                    Some(McEstimate {
                        trials: mc.trials,
                        seed: mc.seed,
                        probability,
                        std_error,
                    })
                }
                None => None,
            };
            Ok(ComparisonRow {
                statistic,
                n,
                x,
                threshold: thr,
                exact_log,
                sldp0_log: logs[0],
                sldp1_log: logs[1],
                sldp2_log,
                ratio0: ratio(exact_log, logs[0]),
                ratio1: ratio(exact_log, logs[1]),
                ratio2: ratio(exact_log, sldp2_log),
                mc_estimate,
            })
        })
        .collect()
}

fn fmt_opt(v: Option<f64>) -> String {
    // `Display` for f64 prints the shortest string that parses back exactly.
    v.map_or_else(|| NA.to_string(), |v| v.to_string())
}

fn csv_err(e: csv::Error) -> Error {
    Error::InvalidArgument(format!("CSV: {e}"))
}

pub fn write_csv<W: Write>(out: W, rows: &[ComparisonRow]) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(CSV_HEADER).map_err(csv_err)?;
    for r in rows {
        w.write_record([
            r.statistic.name().to_string(),
            r.n.to_string(),
            r.x.to_string(),
            r.threshold.to_string(),
            fmt_opt(r.exact_log),
            fmt_opt(r.sldp0_log),
            fmt_opt(r.sldp1_log),
            fmt_opt(r.ratio0),
            fmt_opt(r.ratio1),
        ])
        .map_err(csv_err)?;
    }
    w.flush()
        .map_err(|e| Error::InvalidArgument(format!("CSV: {e}")))
}

/// Parses a table produced by [`write_csv`]. Columns outside the CSV schema
/// come back as `None`.
pub fn read_csv<R: Read>(input: R) -> Result<Vec<ComparisonRow>> {
    let mut rdr = csv::Reader::from_reader(input);
    let header = rdr.headers().map_err(csv_err)?.clone();
    if header.iter().ne(CSV_HEADER) {
        return Err(Error::InvalidArgument(format!(
            "unexpected CSV header {header:?}"
        )));
    }
    let bad = |what: &str, v: &str| Error::InvalidArgument(format!("CSV: bad {what} `{v}`"));
    let float = |v: &str| -> Result<Option<f64>> {
        if v == NA {
            Ok(None)
        } else {
            v.parse().map(Some).map_err(|_| bad("number", v))
        }
    };
    rdr.records()
        .map(|rec| {
            let rec = rec.map_err(csv_err)?;
            let f = |i: usize| &rec[i];
            Ok(ComparisonRow {
                statistic: f(0).parse().map_err(|_| bad("statistic", f(0)))?,
                n: f(1).parse().map_err(|_| bad("n", f(1)))?,
                x: f(2).parse().map_err(|_| bad("x", f(2)))?,
                threshold: f(3).parse().map_err(|_| bad("threshold", f(3)))?,
                exact_log: float(f(4))?,
                sldp0_log: float(f(5))?,
                sldp1_log: float(f(6))?,
                sldp2_log: None,
                ratio0: float(f(7))?,
                ratio1: float(f(8))?,
                ratio2: None,
                mc_estimate: None,
            })
        })
        .collect()
}
