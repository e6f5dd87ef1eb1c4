use std::io::{self, Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use modarr::arrangement::period_data;
use modarr::athanasiadis::{bma_spec, closed_form_constituents, qbar, table_row, BmaTableRow};
use modarr::charqp::characteristic_quasipoly;
use modarr::exactla::{modular_divisors, smith_normal_form};
use modarr::oracle::count_complement;
use modarr::poset::{intersection_poset, poset_min_period};
use modarr::{ArrangementSpec, Error, Limits};
use serde::Serialize;

#[derive(Parser, Debug)]
#[command(
    name = "modarr",
    version,
    about = "Counting and periodicity for integral arrangements modulo q"
)]
struct Cli {
    #[command(flatten)]
    config: RunConfig,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct RunConfig {
    /// Worker threads, 0 for one per core.
    #[arg(long, global = true, env = "MODARR_THREADS", default_value_t = 0)]
    threads: usize,
    /// Maximum number of column subsets visited by one enumeration.
    #[arg(long, global = true, default_value_t = Limits::DEFAULT_SUBSET_CAP, value_parser = clap::value_parser!(u64).range(1..))]
    subset_cap: u64,
    /// Maximum number of points q^m enumerated for one modulus.
    #[arg(long, global = true, default_value_t = Limits::DEFAULT_POINT_CAP, value_parser = clap::value_parser!(u64).range(1..))]
    point_cap: u64,
    /// Output format; CSV is available for count, period and bma --table.
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    /// Reserved for reproducible randomized runs; no subcommand draws randomness.
    #[arg(long, global = true)]
    seed: Option<u64>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Smith normal form of the coefficient matrix or a column selection.
    Snf {
        /// Arrangement JSON file, or - for stdin.
        spec: PathBuf,
        /// Comma-separated 1-based hyperplane indices.
        #[arg(long, value_delimiter = ',')]
        subset: Option<Vec<usize>>,
        /// Append the constants as a last row.
        #[arg(long)]
        augmented: bool,
        /// Also reduce the divisors modulo q.
        #[arg(long)]
        q: Option<u64>,
    },
    /// Characteristic quasi-polynomial, one constituent per divisor of rho0.
    Charpoly { spec: PathBuf },
    /// Number of points of Z_q^m on no hyperplane, by enumeration.
    Count {
        spec: PathBuf,
        #[arg(long, conflicts_with = "range", required_unless_present = "range")]
        q: Option<u64>,
        /// Inclusive range A..B of moduli.
        #[arg(long)]
        range: Option<String>,
    },
    /// The constants rho0, q0, q1 and q*.
    Period { spec: PathBuf },
    /// Intersection poset of the reduction modulo q.
    Poset {
        spec: PathBuf,
        #[arg(long)]
        q: u64,
    },
    /// Smallest period of the poset sequence observed over a window past q*.
    PosetPeriod {
        spec: PathBuf,
        /// Number of moduli scanned, default 2 rho0.
        #[arg(long)]
        window: Option<u64>,
    },
    /// The deformed type-B arrangement with constants 0..=a.
    Bma {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        a: u64,
        /// Write the arrangement JSON to this file.
        #[arg(long)]
        spec_out: Option<PathBuf>,
        /// Print the two closed-form constituents.
        #[arg(long)]
        closed_form: bool,
        /// Print the greatest modulus where the closed form fails.
        #[arg(long)]
        qbar: bool,
        /// Print the CSV row m,a,q0,bound,qbar.
        #[arg(long)]
        table: bool,
        /// Lift the subset and sweep caps for the large rows.
        #[arg(long)]
        long_running: bool,
    },
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::ResourceLimit { .. } => 3,
        Error::Internal(_) => 1,
        _ => 2,
    }
}

fn read_spec(path: &PathBuf) -> Result<ArrangementSpec, Error> {
    let text = if path.as_os_str() == "-" {
        let mut s = String::new();
        io::stdin()
            .read_to_string(&mut s)
            .map_err(|e| Error::InvalidInput(format!("stdin: {e}")))?;
        s
    } else {
        std::fs::read_to_string(path).map_err(|e| Error::InvalidInput(format!("{}: {e}", path.display())))?
    };
    ArrangementSpec::from_json(&text)
}

fn json<T: Serialize>(value: &T) -> String {
    serde_json::to_string(value).expect("serializable")
}

fn zero_based(subset: &[usize], n: usize) -> Result<Vec<usize>, Error> {
    subset
        .iter()
        .map(|&j| {
            if j == 0 || j > n {
                Err(Error::InvalidSubset(format!("index {j} out of range 1..={n}")))
            } else {
                Ok(j - 1)
            }
        })
        .collect()
}

fn parse_range(text: &str) -> Result<(u64, u64), Error> {
    let bad = || Error::InvalidInput(format!("range: expected A..B, got {text:?}"));
    let (a, b) = text.split_once("..").ok_or_else(bad)?;
    let (a, b): (u64, u64) = (
        a.trim().parse().map_err(|_| bad())?,
        b.trim().parse().map_err(|_| bad())?,
    );
    if a < 1 || a > b {
        return Err(bad());
    }
    Ok((a, b))
}

fn no_csv(what: &str, format: Option<Format>) -> Result<(), Error> {
    if format == Some(Format::Csv) {
        return Err(Error::InvalidInput(format!(
            "format: CSV output is not available for {what}"
        )));
    }
    Ok(())
}

#[derive(Serialize)]
struct SnfReport {
    rows: usize,
    cols: usize,
    rank: usize,
    divisors: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    modular: Option<ModularReport>,
}

#[derive(Serialize)]
struct ModularReport {
    q: u64,
    divisors: Vec<u64>,
}

#[derive(Serialize)]
struct CountReport {
    q: u64,
    count: u64,
}

#[derive(Serialize)]
struct QbarReport {
    m: usize,
    a: u64,
    qbar: u64,
}

fn execute(cli: Cli, out: &mut Vec<String>) -> Result<(), Error> {
    let cfg = &cli.config;
    let base = Limits {
        subset_cap: cfg.subset_cap,
        point_cap: cfg.point_cap,
        ..Limits::default()
    };
    match cli.command {
        Command::Snf {
            spec,
            subset,
            augmented,
            q,
        } => {
            no_csv("snf", cfg.format)?;
            let s = read_spec(&spec)?;
            let cols = match subset {
                Some(j) => s.normalize_subset(&zero_based(&j, s.n())?)?,
                None => (0..s.n()).collect(),
            };
            let m = if augmented {
                s.augmented_submatrix(&cols)
            } else {
                s.coefficient_submatrix(&cols)
            };
            let snf = smith_normal_form(&m, false);
            let modular = match q {
                Some(q) => Some(ModularReport {
                    q,
                    divisors: modular_divisors(&m, q)?.values().to_vec(),
                }),
                None => None,
            };
            out.push(json(&SnfReport {
                rows: m.rows(),
                cols: m.cols(),
                rank: snf.rank(),
                divisors: snf.divisors().iter().map(ToString::to_string).collect(),
                modular,
            }));
        }
        Command::Charpoly { spec } => {
            no_csv("charpoly", cfg.format)?;
            let qp = characteristic_quasipoly(&read_spec(&spec)?, &base)?;
            out.push(json(&qp.to_report()));
        }
        Command::Count { spec, q, range } => {
            let s = read_spec(&spec)?;
            match (q, range) {
                (Some(q), _) => {
                    let count = count_complement(&s, q, &base)?;
                    match cfg.format {
                        Some(Format::Csv) => out.extend(["q,count".to_string(), format!("{q},{count}")]),
                        _ => out.push(json(&CountReport { q, count })),
                    }
                }
                (None, Some(r)) => {
                    let (a, b) = parse_range(&r)?;
                    let rows = (a..=b)
                        .map(|q| count_complement(&s, q, &base).map(|count| CountReport { q, count }))
                        .collect::<Result<Vec<_>, _>>()?;
                    match cfg.format {
                        Some(Format::Json) => out.push(json(&rows)),
                        _ => {
                            out.push("q,count".into());
                            out.extend(rows.iter().map(|r| format!("{},{}", r.q, r.count)));
                        }
                    }
                }
                (None, None) => unreachable!("clap requires --q or --range"),
            }
        }
        Command::Period { spec } => {
            let p = period_data(&read_spec(&spec)?, &base)?;
            match cfg.format {
                Some(Format::Csv) => {
                    out.push("rho0,q0,q1,qstar".into());
                    out.push(format!("{},{},{},{}", p.rho0, p.q0, p.q1, p.qstar));
                }
                _ => out.push(json(&p)),
            }
        }
        Command::Poset { spec, q } => {
            no_csv("poset", cfg.format)?;
            let p = intersection_poset(&read_spec(&spec)?, q, &base)?;
            out.push(json(&p.to_report()));
        }
        Command::PosetPeriod { spec, window } => {
            no_csv("poset-period", cfg.format)?;
            let s = read_spec(&spec)?;
            let window = match window {
                Some(w) => w,
                None => 2 * period_data(&s, &base)?.rho0,
            };
            out.push(json(&poset_min_period(&s, window, &base)?));
        }
        Command::Bma {
            m,
            a,
            spec_out,
            closed_form,
            qbar: want_qbar,
            table,
            long_running,
        } => {
            let limits = if long_running {
                Limits {
                    point_cap: cfg.point_cap,
                    ..Limits::long_running()
                }
            } else {
                base
            };
            let s = bma_spec(m, a)?;
            if let Some(path) = &spec_out {
                std::fs::write(path, s.to_json() + "\n")
                    .map_err(|e| Error::InvalidInput(format!("{}: {e}", path.display())))?;
            }
            if !(closed_form || want_qbar || table || spec_out.is_some()) {
                out.push(s.to_json());
            }
            if closed_form {
                no_csv("bma --closed-form", cfg.format)?;
                out.push(json(&closed_form_constituents(m, a)?));
            }
            if want_qbar {
                no_csv("bma --qbar", cfg.format)?;
                out.push(json(&QbarReport {
                    m,
                    a,
                    qbar: qbar(m, a, &limits)?,
                }));
            }
            if table {
                let row = table_row(m, a, &limits)?;
                match cfg.format {
                    Some(Format::Json) => out.push(json(&row)),
                    _ => out.extend([BmaTableRow::csv_header().to_string(), row.to_csv()]),
                }
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if cli.config.threads > 0 {
        // only fails if a pool already exists, which cannot happen here
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(cli.config.threads)
            .build_global();
    }
    let mut out = Vec::new();
    match execute(cli, &mut out) {
        Ok(()) => {
            let mut stdout = io::stdout().lock();
            for line in out {
                if writeln!(stdout, "{line}").is_err() {
                    return ExitCode::from(1);
                }
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
