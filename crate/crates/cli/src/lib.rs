//! Command-line front end for `cyclofact`.
//!
//! [`RunConfig`] is the parsed command line; [`run`] executes it and writes the
//! resulting document. Every JSON document is the serialization of a library
//! result type or of one of the report types below, so it parses back.

use std::fs::File;
use std::io::{self, Write};
use std::num::NonZeroUsize;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use cyclofact::elasticity::{
    construct_elasticity, elasticity_scan, ConstructionBudget, ElasticityTarget, ScanRow,
};
use cyclofact::minimal_pair::minimal_pair_of_rational;
use cyclofact::omega::{omega_interval_atom, omega_lower_bound, IntervalMonoid};
use cyclofact::parse::parse_poly;
use cyclofact::rational::{format_rat, parse_rat};
use cyclofact::serial::{big_num, big_num_vec, rat_str};
use cyclofact::{minimal_pair, Error, Factorization, Rat, RationalBase, DEFAULT_ORACLE_CAP};
use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

#[derive(Debug, Parser)]
#[command(name = "cyclofact", version, about = "Exact factorization invariants of N0[q] and interval monoids")]
pub struct RunConfig {
    #[command(subcommand)]
    pub command: Command,

    /// State budget of the enumeration oracle.
    #[arg(long, global = true, env = "CYCLOFACT_ORACLE_CAP", default_value_t = DEFAULT_ORACLE_CAP,
          value_parser = positive)]
    pub oracle_cap: usize,

    /// Document format; scans default to CSV, everything else to JSON.
    #[arg(long, global = true, value_enum)]
    pub output: Option<Output>,

    /// Write the document here instead of standard output.
    #[arg(long = "out", global = true)]
    pub out_path: Option<PathBuf>,

    /// Worker threads for scans.
    #[arg(long, global = true)]
    pub threads: Option<NonZeroUsize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Output {
    Json,
    Csv,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Minimal pair of a monic rational polynomial, or of X - q.
    MinimalPair {
        /// Polynomial such as "X^2 - 3X + 1".
        #[arg(required_unless_present = "rational", conflicts_with = "rational")]
        polynomial: Option<String>,
        #[arg(long, value_parser = rational)]
        rational: Option<Rat>,
    },
    /// Decide membership in N0[q] and return a witness.
    Member {
        #[arg(long, value_parser = rational)]
        q: Rat,
        #[arg(long, value_parser = rational)]
        value: Rat,
    },
    /// Minimum- and maximum-length factorizations, or all of them.
    Factorize {
        #[arg(long, value_parser = rational)]
        q: Rat,
        #[arg(long, value_parser = rational)]
        value: Rat,
        #[arg(long)]
        enumerate: bool,
    },
    /// Extreme lengths and elasticity, optionally with the full length set.
    Lengths {
        #[arg(long, value_parser = rational)]
        q: Rat,
        #[arg(long, value_parser = rational)]
        value: Rat,
        #[arg(long)]
        enumerate: bool,
    },
    /// Elasticity of every element up to a bound.
    ElasticityScan {
        #[arg(long, value_parser = rational)]
        q: Rat,
        #[arg(long, value_parser = rational)]
        bound: Rat,
        /// Largest number of elements tabulated.
        #[arg(long, default_value_t = 1_000_000, value_parser = positive)]
        scan_cap: usize,
    },
    /// Certificate for an element with elasticity exactly s/t.
    ConstructElasticity {
        #[arg(long, value_parser = rational)]
        q: Rat,
        #[arg(long, value_parser = rational)]
        target: Rat,
        #[arg(long, default_value_t = 200, value_parser = positive)]
        scan_cap: usize,
        #[arg(long, default_value_t = 1000)]
        max_shifts: u64,
    },
    /// Omega value of an atom of the interval monoid generated by [1, q].
    OmegaInterval {
        #[arg(long, value_parser = rational)]
        q: Rat,
        #[arg(long, value_parser = rational)]
        atom: Rat,
    },
    /// Certificate that omega(q^k) exceeds K in N0[q] for 0 < q < 1.
    Antiprime {
        #[arg(long, value_parser = rational)]
        q: Rat,
        #[arg(long)]
        k: usize,
        #[arg(long = "K")]
        bound: u64,
    },
}

fn rational(s: &str) -> Result<Rat, String> {
    parse_rat(s).map_err(|e| e.to_string())
}

fn positive(s: &str) -> Result<usize, String> {
    match s.parse::<usize>() {
        Ok(0) => Err("must be positive".into()),
        Ok(n) => Ok(n),
        Err(e) => Err(e.to_string()),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MembershipReport {
    #[serde(with = "rat_str")]
    pub q: Rat,
    #[serde(with = "rat_str")]
    pub value: Rat,
    pub member: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<Factorization>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FactorizationReport {
    #[serde(with = "rat_str")]
    pub q: Rat,
    #[serde(with = "rat_str")]
    pub value: Rat,
    pub min_factorization: Factorization,
    pub max_factorization: Factorization,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub factorizations: Option<Vec<Factorization>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LengthReport {
    #[serde(with = "rat_str")]
    pub q: Rat,
    #[serde(with = "rat_str")]
    pub value: Rat,
    #[serde(with = "big_num")]
    pub min_length: BigUint,
    #[serde(with = "big_num")]
    pub max_length: BigUint,
    #[serde(with = "rat_str")]
    pub elasticity: Rat,
    #[serde(default, skip_serializing_if = "Option::is_none", with = "opt_lengths")]
    pub length_set: Option<Vec<BigUint>>,
    pub min_factorization: Factorization,
}

mod opt_lengths {
    use super::*;
    use serde::{Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &Option<Vec<BigUint>>, s: S) -> Result<S::Ok, S::Error> {
        match v {
            Some(v) => big_num_vec::serialize(v, s),
            None => s.serialize_none(),
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<Vec<BigUint>>, D::Error> {
        #[derive(Deserialize)]
        struct Wrap(#[serde(with = "big_num_vec")] Vec<BigUint>);
        Ok(Option::<Wrap>::deserialize(d)?.map(|w| w.0))
    }
}

/// Error document written to standard error.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ErrorReport {
    pub error: String,
    pub message: String,
}

/// A failed run: its exit code and error document.
#[derive(Debug)]
pub struct Failure {
    pub code: u8,
    pub report: ErrorReport,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Self {
            code: 1,
            report: ErrorReport {
                error: "usage".into(),
                message: message.into(),
            },
        }
    }

    fn io(e: io::Error) -> Self {
        Self {
            code: 1,
            report: ErrorReport {
                error: "io".into(),
                message: e.to_string(),
            },
        }
    }

    /// Library error raised while handling `flag`.
    fn domain(e: Error, flag: &str) -> Self {
        let kind = match &e {
            Error::Regime(_) => "regime",
            Error::NotMember { .. } => "not_member",
            Error::OracleBudgetExhausted { .. } | Error::ScanCapExhausted { .. } => "budget",
            Error::Parse(_) => "parse",
            _ => "domain",
        };
        let message = match &e {
            Error::ScanCapExhausted { residue_table, .. } => format!(
                "{flag}: {e}; partial residue table {}",
                serde_json::to_string(residue_table.as_ref()).unwrap_or_default()
            ),
            _ => format!("{flag}: {e}"),
        };
        Self {
            code: if e.is_budget() { 2 } else { 1 },
            report: ErrorReport {
                error: kind.into(),
                message,
            },
        }
    }
}

/// Exit status of a successful run whose output is partial.
pub const EXIT_PARTIAL: u8 = 2;

/// Runs the configured command, returning the exit code on success.
pub fn run(config: &RunConfig) -> Result<u8, Failure> {
    let pool = {
        let mut builder = rayon::ThreadPoolBuilder::new();
        if let Some(n) = config.threads {
            builder = builder.num_threads(n.get());
        }
        builder
            .build()
            .map_err(|e| Failure::usage(format!("--threads: {e}")))?
    };
    pool.install(|| execute(config))
}

fn execute(config: &RunConfig) -> Result<u8, Failure> {
    let output = config.output.unwrap_or(match config.command {
        Command::ElasticityScan { .. } => Output::Csv,
        _ => Output::Json,
    });
    if output == Output::Csv && !matches!(config.command, Command::ElasticityScan { .. }) {
        return Err(Failure::usage("--output: csv is only available for elasticity-scan"));
    }
    let cap = config.oracle_cap;
    let mut sink = open(config.out_path.as_ref())?;

    match &config.command {
        Command::MinimalPair {
            polynomial,
            rational,
        } => {
            let pair = match (polynomial, rational) {
                (Some(text), _) => {
                    let f = parse_poly(text).map_err(|e| Failure::domain(e, "POLYNOMIAL"))?;
                    minimal_pair(&f).map_err(|e| Failure::domain(e, "POLYNOMIAL"))?
                }
                (None, Some(q)) => {
                    minimal_pair_of_rational(q).map_err(|e| Failure::domain(e, "--rational"))?
                }
                (None, None) => unreachable!("clap requires one of them"),
            };
            emit_json(&mut sink, &pair)
        }
        Command::Member { q, value } => {
            let base = factorization_base(q)?;
            let witness = base
                .is_member(value)
                .map_err(|e| Failure::domain(e, "--value"))?;
            emit_json(
                &mut sink,
                &MembershipReport {
                    q: q.clone(),
                    value: value.clone(),
                    member: witness.is_some(),
                    witness,
                },
            )
        }
        Command::Factorize { q, value, enumerate } => {
            let base = factorization_base(q)?;
            let witness = require_member(&base, value)?;
            let factorizations = if *enumerate {
                let all = base
                    .enumerate_factorizations(value, cap)
                    .map_err(|e| Failure::domain(e, "--oracle-cap"))?;
                Some(all.into_iter().collect())
            } else {
                None
            };
            emit_json(
                &mut sink,
                &FactorizationReport {
                    q: q.clone(),
                    value: value.clone(),
                    min_factorization: base.up_normal_form(&witness),
                    max_factorization: base.down_normal_form(&witness),
                    factorizations,
                },
            )
        }
        Command::Lengths { q, value, enumerate } => {
            let base = factorization_base(q)?;
            let witness = require_member(&base, value)?;
            let stats = base
                .length_stats(value, enumerate.then_some(cap))
                .map_err(|e| Failure::domain(e, "--oracle-cap"))?;
            emit_json(
                &mut sink,
                &LengthReport {
                    q: q.clone(),
                    value: value.clone(),
                    min_length: stats.min_len,
                    max_length: stats.max_len,
                    elasticity: stats.elasticity,
                    length_set: stats.length_set,
                    min_factorization: base.up_normal_form(&witness),
                },
            )
        }
        Command::ElasticityScan { q, bound, scan_cap } => {
            let base = factorization_base(q)?;
            if *bound < Rat::from_integer(0.into()) {
                return Err(Failure::usage("--bound: must be nonnegative"));
            }
            let table = elasticity_scan(&base, bound, *scan_cap);
            match output {
                Output::Json => emit_json(&mut sink, &table)?,
                Output::Csv => emit_csv(&mut sink, &table.rows, table.complete)?,
            };
            Ok(if table.complete { 0 } else { EXIT_PARTIAL })
        }
        Command::ConstructElasticity {
            q,
            target,
            scan_cap,
            max_shifts,
        } => {
            let base = factorization_base(q)?;
            let target = target_of(target)?;
            let budget = ConstructionBudget {
                scan_cap: *scan_cap,
                max_shifts: *max_shifts,
                ..ConstructionBudget::default()
            };
            let cert = construct_elasticity(&base, target, &budget)
                .map_err(|e| Failure::domain(e, "--scan-cap"))?;
            emit_json(&mut sink, &cert)
        }
        Command::OmegaInterval { q, atom } => {
            let monoid = IntervalMonoid::new(q.clone()).map_err(|e| Failure::domain(e, "--q"))?;
            let report =
                omega_interval_atom(&monoid, atom).map_err(|e| Failure::domain(e, "--atom"))?;
            emit_json(&mut sink, &report)
        }
        Command::Antiprime { q, k, bound } => {
            let flag = if *bound == 0 { "--K" } else { "--q" };
            let witness = omega_lower_bound(q, *k, *bound).map_err(|e| Failure::domain(e, flag))?;
            emit_json(&mut sink, &witness)
        }
    }
}

fn factorization_base(q: &Rat) -> Result<RationalBase, Failure> {
    RationalBase::new(q.clone()).map_err(|e| Failure::domain(e, "--q"))
}

fn require_member(base: &RationalBase, value: &Rat) -> Result<Factorization, Failure> {
    if value == &Rat::from_integer(0.into()) {
        return Err(Failure::usage("--value: zero has no factorization lengths"));
    }
    base.is_member(value)
        .map_err(|e| Failure::domain(e, "--value"))?
        .ok_or_else(|| {
            Failure::domain(
                Error::NotMember {
                    q: format_rat(base.q()),
                    value: format_rat(value),
                },
                "--value",
            )
        })
}

fn target_of(r: &Rat) -> Result<ElasticityTarget, Failure> {
    let bad = || Failure::usage(format!("--target: expected s/t with s >= t >= 1, got {}", format_rat(r)));
    let s = u64::try_from(r.numer()).map_err(|_| bad())?;
    let t = u64::try_from(r.denom()).map_err(|_| bad())?;
    ElasticityTarget::new(s, t).map_err(|_| bad())
}

fn open(path: Option<&PathBuf>) -> Result<Box<dyn Write>, Failure> {
    Ok(match path {
        Some(p) => Box::new(io::BufWriter::new(File::create(p).map_err(Failure::io)?)),
        None => Box::new(io::BufWriter::new(io::stdout().lock())),
    })
}

fn emit_json<T: Serialize>(sink: &mut dyn Write, doc: &T) -> Result<u8, Failure> {
    let text = serde_json::to_string_pretty(doc).expect("report types serialize");
    writeln!(sink, "{text}").and_then(|_| sink.flush()).map_err(Failure::io)?;
    Ok(0)
}

/// Rows in value order, then a manifest row `manifest,<complete|partial>,<rows>,,`.
fn emit_csv(sink: &mut dyn Write, rows: &[ScanRow], complete: bool) -> Result<u8, Failure> {
    let mut w = csv::Writer::from_writer(sink);
    let err = |e: csv::Error| Failure::io(io::Error::other(e));
    w.write_record(["value_num", "value_den", "min_len", "max_len", "elasticity"])
        .map_err(err)?;
    for r in rows {
        w.write_record([
            r.value.numer().to_string(),
            r.value.denom().to_string(),
            r.min_len.to_string(),
            r.max_len.to_string(),
            format_rat(&r.elasticity),
        ])
        .map_err(err)?;
    }
    let status = if complete { "complete" } else { "partial" };
    w.write_record(["manifest", status, &rows.len().to_string(), "", ""])
        .map_err(err)?;
    w.flush().map_err(Failure::io)?;
    Ok(0)
}
