//! Command-line driver: selects a verification suite by name, runs it on
//! the configured lattices, and reports every check with exact rationals.
//!
//! Exit status: 0 all checks pass, 1 at least one check fails,
//! 2 configuration or input error.

use clap::{Parser, ValueEnum};
use hk4::suites::{run, to_json, SuiteConfig};
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Parser, Debug)]
#[command(
    name = "hk4",
    about = "Exact-rational verification of the cohomology calculus of hyperkähler fourfolds",
    long_about = None
)]
struct Args {
    /// Suite to run: fourier | k3 | k3hilb | fano | abelian | mck | all
    #[arg(long)]
    suite: String,

    /// Lattice rank (fourfold suites default 23, surface suites 22)
    #[arg(long)]
    rank: Option<usize>,

    /// Fujiki scale c_F as a rational "p/q" (default 1, or the gram-file header)
    #[arg(long)]
    fujiki: Option<String>,

    /// Gram-matrix file for the quadratic form (fourfold or surface)
    #[arg(long)]
    gram: Option<PathBuf>,

    /// Intersection-form file for the cubic fourfold (fano suite)
    #[arg(long)]
    b0: Option<PathBuf>,

    /// Index of the h² slot in the b0 file (default 0, or the file header)
    #[arg(long = "h2-index")]
    h2_index: Option<usize>,

    /// Abelian dimension bound (runs d = 1..=dim, capped at 2)
    #[arg(long, default_value_t = 2)]
    dim: u32,

    /// Largest modified-diagonal order to attempt (abelian suite)
    #[arg(long = "max-m", default_value_t = 5)]
    max_m: u32,

    /// Seed for every randomized check
    #[arg(long, default_value_t = 1)]
    seed: u64,

    /// Number of random candidates in the uniqueness check
    #[arg(long, default_value_t = 100)]
    samples: usize,

    /// Output format
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,

    /// Also run the dimension-3 projector table (abelian suite)
    #[arg(long = "enable-d3", default_value_t = false)]
    enable_d3: bool,
}

fn main() -> ExitCode {
    let args = Args::parse();
    let fujiki = match &args.fujiki {
        None => None,
        Some(s) => match hk4::rat::parse_rat(s) {
            Some(x) => Some(x),
            None => {
                report_error(args.format, &format!("invalid rational '{s}' for --fujiki"));
                return ExitCode::from(2);
            }
        },
    };
    let cfg = SuiteConfig {
        suite: args.suite,
        rank: args.rank,
        fujiki,
        gram: args.gram,
        b0: args.b0,
        h2_index: args.h2_index,
        dim: args.dim,
        max_m: args.max_m,
        seed: args.seed,
        samples: args.samples,
        enable_d3: args.enable_d3,
    };
    match run(&cfg) {
        Ok(report) => {
            match args.format {
                Format::Text => {
                    println!("suite: {}", report.suite);
                    print!("{}", report.render_text());
                }
                Format::Json => {
                    println!(
                        "{}",
                        serde_json::to_string_pretty(&to_json(&cfg, &report)).expect("serialize")
                    );
                }
            }
            if report.all_passed() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            report_error(args.format, &e.to_string());
            ExitCode::from(2)
        }
    }
}

fn report_error(format: Format, message: &str) {
    match format {
        Format::Text => eprintln!("error: {message}"),
        Format::Json => eprintln!(
            "{}",
            serde_json::json!({ "error": message })
        ),
    }
}
