use clap::{Args, Parser, Subcommand};

use cpident::report::{
    parse_int_list, roots_table, run_bench, run_verify, write_report, OutputFormat, RunConfig,
    Suite,
};
use cpident::Error;

#[derive(Parser)]
#[command(name = "cpident", version, about = "exact verification of chiral Potts polynomial identities")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run verification suites over an (N, L, Q) grid
    Verify(VerifyArgs),
    /// Print certified roots and B_k values for one (N, L, Q)
    Roots(RootsArgs),
    /// Time the brute-force route against the generating-function route
    Bench(BenchArgs),
}

#[derive(Args)]
struct GridArgs {
    /// Values of N: comma list and/or ranges, e.g. 2,3 or 2..4
    #[arg(long = "N", value_name = "LIST")]
    n: String,
    /// Values of L: comma list and/or ranges, e.g. 2..6
    #[arg(long = "L", value_name = "LIST")]
    l: String,
    /// Values of Q: 'all' or a comma list
    #[arg(long = "Q", value_name = "LIST", default_value = "all")]
    q: String,
}

#[derive(Args)]
struct VerifyArgs {
    #[command(flatten)]
    grid: GridArgs,
    /// Suites to run (repeatable); default: all
    #[arg(long, value_name = "NAME")]
    suite: Vec<String>,
    /// Working precision in bits (>= 128)
    #[arg(long, default_value_t = 128)]
    prec: u32,
    /// Worker threads (default: CPIDENT_THREADS or all cores)
    #[arg(long)]
    threads: Option<usize>,
    /// Seed for sampled checks
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Output format: json, csv, text
    #[arg(long, default_value = "json")]
    format: String,
    /// Output path (default: stdout)
    #[arg(long)]
    out: Option<String>,
}

#[derive(Args)]
struct RootsArgs {
    #[command(flatten)]
    grid: GridArgs,
    /// Working precision in bits (>= 128)
    #[arg(long, default_value_t = 128)]
    prec: u32,
}

#[derive(Args)]
struct BenchArgs {
    /// Value of N
    #[arg(long = "N", value_name = "INT")]
    n: u32,
    /// Value of L
    #[arg(long = "L", value_name = "INT")]
    l: usize,
    /// Timing repetitions (median reported)
    #[arg(long, default_value_t = 5)]
    reps: usize,
}

fn default_threads() -> usize {
    std::env::var("CPIDENT_THREADS")
        .ok()
        .and_then(|s| s.parse().ok())
        .unwrap_or_else(|| {
            std::thread::available_parallelism()
                .map(|x| x.get())
                .unwrap_or(1)
        })
}

fn parse_q(s: &str) -> Result<Option<Vec<u32>>, Error> {
    if s == "all" {
        Ok(None)
    } else {
        Ok(Some(
            parse_int_list(s)?.into_iter().map(|x| x as u32).collect(),
        ))
    }
}

fn run(cli: Cli) -> Result<bool, Error> {
    match cli.command {
        Command::Verify(a) => {
            let suites = if a.suite.is_empty() {
                Suite::ALL.to_vec()
            } else {
                a.suite
                    .iter()
                    .map(|s| Suite::parse(s))
                    .collect::<Result<Vec<_>, _>>()?
            };
            let config = RunConfig {
                n_list: parse_int_list(&a.grid.n)?
                    .into_iter()
                    .map(|x| x as u32)
                    .collect(),
                l_list: parse_int_list(&a.grid.l)?
                    .into_iter()
                    .map(|x| x as usize)
                    .collect(),
                q_list: parse_q(&a.grid.q)?,
                suites,
                precision_bits: a.prec,
                threads: a.threads.unwrap_or_else(default_threads),
                seed: a.seed,
                format: OutputFormat::parse(&a.format)?,
                out: a.out.clone(),
            };
            let report = run_verify(&config)?;
            write_report(&report, config.format, config.out.as_deref())?;
            Ok(report.all_pass())
        }
        Command::Roots(a) => {
            let ns = parse_int_list(&a.grid.n)?;
            let ls = parse_int_list(&a.grid.l)?;
            let qsel = parse_q(&a.grid.q)?;
            for &n in &ns {
                for &l in &ls {
                    let qs: Vec<u32> = match &qsel {
                        Some(v) => v.iter().copied().filter(|&q| q < n as u32).collect(),
                        None => (0..n as u32).collect(),
                    };
                    for q in qs {
                        print!("{}", roots_table(n as u32, l as usize, q, a.prec)?);
                    }
                }
            }
            Ok(true)
        }
        Command::Bench(a) => {
            let r = run_bench(a.n, a.l, a.reps)?;
            println!("{}", serde_json::to_string_pretty(&r)?);
            let speedup: f64 = r.speedup.parse().unwrap_or(0.0);
            if speedup < 10.0 {
                eprintln!(
                    "warning: generating-function speedup {:.2}x is below the 10x target",
                    speedup
                );
            }
            Ok(true)
        }
    }
}

fn main() {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => std::process::exit(0),
        Ok(false) => std::process::exit(1),
        Err(e @ Error::Config(_)) => {
            eprintln!("error: {}", e);
            std::process::exit(2);
        }
        Err(e) => {
            eprintln!("error: {}", e);
            std::process::exit(1);
        }
    }
}
