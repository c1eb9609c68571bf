//! Batch entry point for the relation lab.
//!
//! Two modes share one flag surface: a randomized suite over registered
//! relations (`--suite all`, optionally restricted with `--relation`), and a
//! single evaluation on operator files (`--relation` plus `--state`,
//! `--channel`, `--povm`).  Exit codes: 0 all pass, 1 relation failure,
//! 2 usage or parse problem, 3 evaluator abort.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;

use triq::entropy::LogBase;
use triq::io;
use triq::lab::{
    assemble_instance, evaluate, example_suite, run_suite, RelationId, SuiteConfig, SuiteReport,
    Tolerances,
};
use triq::Error;

#[derive(Parser, Debug)]
#[command(name = "triq", version, about = "Randomized verification suites for quantum information measures")]
struct Cli {
    /// Suite to run: "all" (randomized) or "examples" (fixed worked cases).
    #[arg(long, default_value = "all")]
    suite: String,

    /// Restrict the suite to these relations, or name the relation for a
    /// single file-based evaluation. Repeatable.
    #[arg(long)]
    relation: Vec<String>,

    /// Dimension triple d_a,d_b,d_c. Repeatable; default 2,2,2 2,3,4 3,3,3.
    #[arg(long, value_name = "DA,DB,DC")]
    dims: Vec<String>,

    /// Random trials per relation per dimension triple.
    #[arg(long, default_value_t = 100)]
    trials: usize,

    #[arg(long, default_value_t = 42)]
    seed: u64,

    /// Absolute slack allowed on equality links.
    #[arg(long, value_name = "EPS")]
    tolerance_eq: Option<f64>,

    /// Negative slack allowed on inequality links.
    #[arg(long, value_name = "EPS")]
    tolerance_ineq: Option<f64>,

    /// Logarithm base for every entropy: "2" (bits) or "e" (nats).
    #[arg(long, value_name = "BASE")]
    log_base: Option<String>,

    /// Report path; defaults to report.json or report.csv per --format.
    #[arg(long)]
    out: Option<PathBuf>,

    /// Report format.
    #[arg(long, default_value = "json", value_parser = ["json", "csv"])]
    format: String,

    /// State file for single evaluation mode.
    #[arg(long)]
    state: Option<PathBuf>,

    /// Channel file for single evaluation mode.
    #[arg(long)]
    channel: Option<PathBuf>,

    /// POVM file for single evaluation mode; repeatable, order matters.
    #[arg(long)]
    povm: Vec<PathBuf>,

    /// Tolerance for both link types in single evaluation mode.
    #[arg(long, value_name = "EPS")]
    tolerance: Option<f64>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            match e {
                Error::Abort(_) | Error::Domain { .. } | Error::Unsupported(_) => ExitCode::from(3),
                _ => ExitCode::from(2),
            }
        }
    }
}

fn dispatch(cli: &Cli) -> Result<bool, Error> {
    let log_base = parse_log_base(cli.log_base.as_deref())?;
    if cli.state.is_some() || cli.channel.is_some() || !cli.povm.is_empty() {
        eval_one(cli, log_base)
    } else {
        run(cli, log_base)
    }
}

fn parse_log_base(flag: Option<&str>) -> Result<LogBase, Error> {
    match flag {
        None | Some("2") => Ok(LogBase::Two),
        Some("e") => Ok(LogBase::E),
        Some(other) => Err(Error::BadParameter(format!(
            "log base must be 2 or e, got `{other}`"
        ))),
    }
}

fn parse_relations(names: &[String]) -> Result<Vec<RelationId>, Error> {
    names
        .iter()
        .map(|name| {
            RelationId::from_name(name).ok_or_else(|| {
                Error::BadParameter(format!(
                    "unknown relation `{name}`; known: {}",
                    RelationId::ALL.map(|r| r.name()).join(", ")
                ))
            })
        })
        .collect()
}

fn parse_dims(flags: &[String]) -> Result<Vec<(usize, usize, usize)>, Error> {
    flags
        .iter()
        .map(|raw| {
            let parts: Vec<usize> = raw
                .split(',')
                .map(|p| p.trim().parse::<usize>())
                .collect::<Result<_, _>>()
                .map_err(|_| {
                    Error::BadParameter(format!("dims triple `{raw}` is not three integers"))
                })?;
            match parts[..] {
                [a, b, c] => Ok((a, b, c)),
                _ => Err(Error::BadParameter(format!(
                    "dims triple `{raw}` must have exactly three entries"
                ))),
            }
        })
        .collect()
}

fn run(cli: &Cli, log_base: LogBase) -> Result<bool, Error> {
    let report = match cli.suite.as_str() {
        "all" => {
            let defaults = SuiteConfig::default();
            let config = SuiteConfig {
                suite_label: "all".into(),
                relations: if cli.relation.is_empty() {
                    RelationId::ALL.to_vec()
                } else {
                    parse_relations(&cli.relation)?
                },
                dims: if cli.dims.is_empty() {
                    defaults.dims
                } else {
                    parse_dims(&cli.dims)?
                },
                trials: cli.trials,
                seed: cli.seed,
                tolerances: Tolerances {
                    equality: cli
                        .tolerance_eq
                        .unwrap_or(defaults.tolerances.equality),
                    inequality: cli
                        .tolerance_ineq
                        .unwrap_or(defaults.tolerances.inequality),
                },
                log_base,
            };
            run_suite(&config)?
        }
        "examples" | "paper-examples" => {
            if log_base != LogBase::Two {
                return Err(Error::BadParameter(
                    "the worked examples are stated in bits; they do not take --log-base e"
                        .into(),
                ));
            }
            example_suite()?
        }
        other => {
            return Err(Error::BadParameter(format!(
                "unknown suite `{other}`; use all or examples"
            )));
        }
    };

    for block in &report.relations {
        println!(
            "{}: {}/{} pass, min slack {:+.3e}, worst seed {}",
            block.relation,
            block.aggregate.passes,
            block.aggregate.evaluations,
            block.aggregate.min_slack,
            block.aggregate.worst_seed
        );
    }
    let all_pass = report.all_pass();
    println!("suite {}: {}", cli.suite, if all_pass { "PASS" } else { "FAIL" });

    write_report(cli, &report)?;
    Ok(all_pass)
}

fn write_report(cli: &Cli, report: &SuiteReport) -> Result<(), Error> {
    let default_name = if cli.format == "csv" { "report.csv" } else { "report.json" };
    let path = cli
        .out
        .clone()
        .unwrap_or_else(|| PathBuf::from(default_name));
    let contents = if cli.format == "csv" {
        report.to_csv()
    } else {
        report.to_json()
    };
    io::atomic_write(&path, &contents)
}

fn eval_one(cli: &Cli, log_base: LogBase) -> Result<bool, Error> {
    let relation = match &cli.relation[..] {
        [name] => RelationId::from_name(name).ok_or_else(|| {
            Error::BadParameter(format!("unknown relation `{name}`"))
        })?,
        _ => {
            return Err(Error::BadParameter(
                "single evaluation mode needs exactly one --relation".into(),
            ));
        }
    };
    triq::entropy::set_log_base(log_base);

    let state = cli.state.as_deref().map(io::read_state).transpose()?;
    let channel = cli.channel.as_deref().map(io::read_channel).transpose()?;
    let povms = cli
        .povm
        .iter()
        .map(|p| io::read_povm(p))
        .collect::<Result<Vec<_>, _>>()?;

    let tolerances = match cli.tolerance {
        Some(eps) => Tolerances { equality: eps, inequality: eps },
        None => Tolerances::default(),
    };
    let inst = assemble_instance(relation, state, channel, povms)?;
    let result = evaluate(relation, &inst, &tolerances)?;
    println!(
        "{} [{}]: lhs {:.12e} rhs {:.12e} slack {:+.3e} {}",
        result.relation,
        result.link,
        result.lhs,
        result.rhs,
        result.slack,
        if result.pass { "PASS" } else { "FAIL" }
    );
    Ok(result.pass)
}
