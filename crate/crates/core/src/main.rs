use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use zeta_gaps::cli::{run_report, run_scan, run_verify, ScanConfig, Suite};
use zeta_gaps::theoremlab::solve_c0;
use zeta_gaps::Error;

const EXIT_VERIFY_FAILED: u8 = 1;
const EXIT_COMPLETENESS: u8 = 2;
const EXIT_IO: u8 = 3;
const EXIT_USAGE: u8 = 64;
const EXIT_DATA_FORMAT: u8 = 65;

#[derive(Parser)]
#[command(name = "zeta-gaps", version, about = "Zeros of zeta and zeta', counting checks and gap statistics")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Scan a height range: locate zeros of zeta and zeta', pair them, and
    /// write zeros.csv, zeta_prime_zeros.csv and pairs.csv
    Scan(CommonFlags),
    /// Run a verification suite (lemma1|lemma2|lemma3|kernels|counting|constants|all)
    Verify {
        suite: String,
        #[command(flatten)]
        flags: CommonFlags,
    },
    /// Summarize a finished scan directory into summary.json and ratios.csv
    Report { dir: PathBuf },
    /// Print the solved constants c0 and 1/c0
    Constants,
}

#[derive(Args)]
struct CommonFlags {
    /// Flat key=value config file; flags given here override it
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long)]
    t_min: Option<f64>,
    #[arg(long)]
    t_max: Option<f64>,
    #[arg(long)]
    sigma_max: Option<f64>,
    /// Absolute tolerance for special-function evaluation
    #[arg(long)]
    tol: Option<f64>,
    /// Worker threads; falls back to ZETA_GAPS_THREADS, then 1
    #[arg(long)]
    threads: Option<usize>,
    /// Seed for randomized property checks
    #[arg(long)]
    seed: Option<u64>,
    /// Output format: csv or json
    #[arg(long)]
    format: Option<String>,
    /// Output directory
    #[arg(long)]
    out: Option<PathBuf>,
}

impl CommonFlags {
    fn resolve(&self) -> Result<ScanConfig, Error> {
        let mut cfg = ScanConfig::default();
        if let Some(path) = &self.config {
            cfg.load_file(path)?;
        }
        if self.threads.is_none() && self.config.is_none() {
            if let Ok(v) = std::env::var("ZETA_GAPS_THREADS") {
                cfg.apply_kv("threads", &v)?;
            }
        }
        let kv = |v: &Option<f64>| v.map(|x| x.to_string());
        for (key, val) in [
            ("t_min", kv(&self.t_min)),
            ("t_max", kv(&self.t_max)),
            ("sigma_max", kv(&self.sigma_max)),
            ("tol", kv(&self.tol)),
            ("threads", self.threads.map(|x| x.to_string())),
            ("seed", self.seed.map(|x| x.to_string())),
            ("format", self.format.clone()),
            ("out", self.out.as_ref().map(|p| p.display().to_string())),
        ] {
            if let Some(val) = val {
                cfg.apply_kv(key, &val)?;
            }
        }
        cfg.validate()?;
        Ok(cfg)
    }
}

fn exit_code_for(e: &Error) -> u8 {
    match e {
        Error::Precondition(_) | Error::NonFinite(_) => EXIT_USAGE,
        Error::Io(_) => EXIT_IO,
        Error::DataFormat(_) => EXIT_DATA_FORMAT,
        _ => EXIT_COMPLETENESS,
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // clap help/version are success paths
            use clap::error::ErrorKind;
            let _ = e.print();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => ExitCode::SUCCESS,
                _ => ExitCode::from(EXIT_USAGE),
            };
        }
    };

    let outcome: Result<u8, Error> = match cli.command {
        Command::Scan(flags) => flags.resolve().and_then(|cfg| {
            let result = run_scan(&cfg)?;
            eprintln!(
                "scan complete: {} zeta zeros, {} zeta' zeros, {} pairs -> {}",
                result.zeros.len(),
                result.zeta_prime_zeros.len(),
                result.pairs.len(),
                cfg.out_dir.display()
            );
            Ok(0)
        }),
        Command::Verify { suite, flags } => {
            let suite = match Suite::parse(&suite) {
                Ok(s) => s,
                Err(e) => {
                    eprintln!("error: {e}");
                    return ExitCode::from(EXIT_USAGE);
                }
            };
            flags.resolve().and_then(|cfg| {
                let report = run_verify(&cfg, suite)?;
                for c in &report.checks {
                    println!(
                        "{}: value {} bound {} -> {}",
                        c.name,
                        c.value,
                        c.bound,
                        if c.pass { "pass" } else { "FAIL" }
                    );
                }
                Ok(if report.passed { 0 } else { EXIT_VERIFY_FAILED })
            })
        }
        Command::Report { dir } => run_report(&dir).map(|summary| {
            println!(
                "{} pairs; max ratio_thm {}; fraction within hypothesis {}",
                summary.pairs_count, summary.ratio_thm_max, summary.fraction_within_hypothesis
            );
            0
        }),
        Command::Constants => solve_c0(0.25, 0.0).map(|s| {
            println!(
                "{{\"c0\": {}, \"implied_constant\": {}, \"residual\": {}}}",
                s.c0, s.implied_constant, s.residual
            );
            0
        }),
    };

    match outcome {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code_for(&e))
        }
    }
}
