//! `galois`: build, enumerate, mine and verify concept lattices.
//!
//! Exit codes: 0 success, 1 I/O failure, 2 bad input or flags, 3 a builder
//! disagreed with the oracle.

use std::io::{self, Read, Write};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use galois_core::formats::{parse_csv, parse_cxt, parse_fimi, write_cxt, write_lattice, LatticeDocument, OutputKind};
use galois_core::generate::{fuzz_case, random_context};
use galois_core::verify::{check_context_with, Builders, CheckReport, Thresholds};
use galois_core::{complete_bottom, Algorithm, BottomMode, BuildStats, ConceptLattice, Context, IcebergMode, LatticeBuilder};
use rayon::prelude::*;
use serde::Serialize;

#[derive(Parser)]
#[command(name = "galois", version, about = "Concept lattices of binary relations")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build the concept lattice.
    Lattice {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long, value_enum, default_value = "condensed")]
        algo: AlgoArg,
        #[arg(long, value_enum, default_value = "natural")]
        bottom: BottomArg,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// List every concept once, without the order relation.
    Concepts {
        #[command(flatten)]
        input: InputArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Build the lattice of concepts with support at least K.
    Iceberg {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long, default_value_t = 1)]
        min_support: usize,
        #[arg(long, value_enum, default_value = "extent-dict")]
        mode: ModeArg,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Compare every builder with the brute-force oracle.
    Check {
        #[command(flatten)]
        input: InputArgs,
        /// Check N generated contexts instead of the input.
        #[arg(long, value_name = "N")]
        fuzz: Option<usize>,
        #[arg(long, default_value_t = 10)]
        max_n: usize,
        #[arg(long, default_value_t = 10)]
        max_m: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Drop one edge from every lattice before comparing (exercises the mismatch path).
        #[arg(long, hide = true)]
        inject_fault: bool,
    },
    /// Write a random context in cxt format.
    Gen {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        m: usize,
        #[arg(long)]
        density: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Time both lattice builders and compare their touch counters.
    Bench {
        #[command(flatten)]
        input: InputArgs,
        /// Generate an n-object context instead of reading input.
        #[arg(long)]
        n: Option<usize>,
        #[arg(long, default_value_t = 29)]
        m: usize,
        #[arg(long, default_value_t = 0.3)]
        density: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Args)]
struct InputArgs {
    /// Input file, or `-` for standard input.
    #[arg(long, default_value = "-")]
    input: String,
    #[arg(long, value_enum, default_value = "cxt")]
    format: FormatArg,
    /// FIMI only: number of items (attribute ids `0..K`).
    #[arg(long, value_name = "K")]
    items: Option<usize>,
}

#[derive(Args)]
struct OutputArgs {
    #[arg(long, value_enum, default_value = "text")]
    out: OutArg,
    /// Write build counters as JSON to standard error.
    #[arg(long)]
    stats: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Cxt,
    Fimi,
    Csv,
}

#[derive(Clone, Copy, ValueEnum)]
enum AlgoArg {
    Basic,
    Condensed,
}

#[derive(Clone, Copy, ValueEnum)]
enum BottomArg {
    Natural,
    Completed,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    ExtentDict,
    IntentDict,
}

#[derive(Clone, Copy, ValueEnum)]
enum OutArg {
    Text,
    Json,
    Dot,
}

/// A failure carrying its exit code.
struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn io(context: &str, e: io::Error) -> Self {
        Self {
            code: 1,
            message: format!("{context}: {e}"),
        }
    }

    fn input(e: galois_core::Error) -> Self {
        Self {
            code: 2,
            message: e.to_string(),
        }
    }
}

type CmdResult = Result<ExitCode, Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => code,
        Err(f) => {
            eprintln!("galois: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn run(command: Command) -> CmdResult {
    match command {
        Command::Lattice {
            input,
            algo,
            bottom,
            output,
        } => {
            let ctx = read_context(&input)?;
            let algorithm = match algo {
                AlgoArg::Basic => Algorithm::Basic,
                AlgoArg::Condensed => Algorithm::Condensed,
            };
            let (mut lat, stats) = LatticeBuilder::new(&ctx).algorithm(algorithm).build();
            if let BottomArg::Completed = bottom {
                lat = complete_bottom(lat, &ctx);
            }
            emit(&lat, &ctx, algorithm.name(), &stats, &output)
        }
        Command::Concepts { input, output } => {
            let ctx = read_context(&input)?;
            let (concepts, stats) = LatticeBuilder::new(&ctx).enumerate();
            let lat = ConceptLattice {
                top_id: (!concepts.is_empty()).then_some(0),
                concepts,
                edges: Vec::new(),
                bottom_id: None,
                bottom_mode: BottomMode::Natural,
            };
            emit(&lat, &ctx, "enumerate", &stats, &output)
        }
        Command::Iceberg {
            input,
            min_support,
            mode,
            output,
        } => {
            let ctx = read_context(&input)?;
            let (mode, name) = match mode {
                ModeArg::ExtentDict => (IcebergMode::ExtentDict, "iceberg-extent-dict"),
                ModeArg::IntentDict => (IcebergMode::IntentDict, "iceberg-intent-dict"),
            };
            let (lat, stats) = LatticeBuilder::new(&ctx)
                .iceberg(min_support, mode)
                .map_err(Failure::input)?;
            emit(&lat, &ctx, name, &stats, &output)
        }
        Command::Check {
            input,
            fuzz,
            max_n,
            max_m,
            seed,
            inject_fault,
        } => {
            let builders = if inject_fault { faulty_builders() } else { Builders::standard() };
            match fuzz {
                Some(count) => check_fuzz(count, max_n, max_m, seed, &builders),
                None => {
                    let ctx = read_context(&input)?;
                    let report = check_context_with(&ctx, &builders, Thresholds::One).map_err(Failure::input)?;
                    let line = verdict_line(&report);
                    println!("{line}");
                    Ok(exit_for(report.passed()))
                }
            }
        }
        Command::Gen { n, m, density, seed } => {
            let ctx = random_context(n, m, density, seed).map_err(Failure::input)?;
            write_stdout(&write_cxt(&ctx))?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Bench {
            input,
            n,
            m,
            density,
            seed,
        } => {
            let ctx = match n {
                Some(n) => random_context(n, m, density, seed).map_err(Failure::input)?,
                None => read_context(&input)?,
            };
            let report = bench(&ctx);
            let mut text = serde_json::to_string_pretty(&report).expect("report serializes");
            text.push('\n');
            write_stdout(&text)?;
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn read_context(args: &InputArgs) -> Result<Context, Failure> {
    let mut text = String::new();
    if args.input == "-" {
        io::stdin()
            .read_to_string(&mut text)
            .map_err(|e| Failure::io("standard input", e))?;
    } else {
        text = std::fs::read_to_string(&args.input).map_err(|e| Failure::io(&args.input, e))?;
    }
    let parsed = match args.format {
        FormatArg::Cxt => parse_cxt(&text),
        FormatArg::Fimi => parse_fimi(&text, args.items),
        FormatArg::Csv => parse_csv(&text),
    };
    if args.items.is_some() && !matches!(args.format, FormatArg::Fimi) {
        return Err(Failure {
            code: 2,
            message: "--items only applies to --format fimi".to_string(),
        });
    }
    parsed.map_err(|e| Failure {
        code: 2,
        message: format!("{}: {e}", args.input),
    })
}

fn write_stdout(text: &str) -> Result<(), Failure> {
    let mut out = io::stdout().lock();
    out.write_all(text.as_bytes())
        .and_then(|_| out.flush())
        .map_err(|e| Failure::io("standard output", e))
}

fn emit(lat: &ConceptLattice, ctx: &Context, algorithm: &str, stats: &BuildStats, output: &OutputArgs) -> CmdResult {
    let doc = LatticeDocument::from_lattice(lat, ctx, algorithm, None);
    let kind = match output.out {
        OutArg::Text => OutputKind::Text,
        OutArg::Json => OutputKind::Json,
        OutArg::Dot => OutputKind::Dot,
    };
    write_stdout(&write_lattice(&doc, kind))?;
    if output.stats {
        let text = serde_json::to_string(stats).expect("stats serialize");
        writeln!(io::stderr(), "{text}").map_err(|e| Failure::io("standard error", e))?;
    }
    Ok(ExitCode::SUCCESS)
}

fn exit_for(passed: bool) -> ExitCode {
    if passed {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(3)
    }
}

fn verdict_line(report: &CheckReport) -> String {
    match &report.mismatch {
        None => format!("PASS {} concepts, {} edges", report.concepts, report.edges),
        Some(m) => format!("FAIL {m}"),
    }
}

fn check_fuzz(count: usize, max_n: usize, max_m: usize, seed: u64, builders: &Builders) -> CmdResult {
    let lines: Vec<Result<(bool, String), Failure>> = (0..count)
        .into_par_iter()
        .map(|k| {
            let case = fuzz_case(k, max_n, max_m, seed);
            let ctx = &case.context;
            let report = check_context_with(ctx, builders, Thresholds::One).map_err(Failure::input)?;
            let line = format!(
                "case {k} (n={}, m={}, density={}): {}",
                ctx.n(),
                ctx.m(),
                case.density,
                verdict_line(&report)
            );
            Ok((report.passed(), line))
        })
        .collect();
    let mut out = String::new();
    let mut failed = 0;
    for line in lines {
        let (passed, line) = line?;
        failed += usize::from(!passed);
        out.push_str(&line);
        out.push('\n');
    }
    if failed == 0 {
        out.push_str(&format!("PASS {count} cases\n"));
    } else {
        out.push_str(&format!("FAIL {failed} of {count} cases\n"));
    }
    write_stdout(&out)?;
    Ok(exit_for(failed == 0))
}

fn faulty_builders() -> Builders {
    Builders {
        lattice: |ctx, alg| {
            let mut lat = LatticeBuilder::new(ctx).algorithm(alg).build().0;
            lat.edges.pop();
            lat
        },
        ..Builders::standard()
    }
}

#[derive(Serialize)]
struct BenchRun {
    seconds: f64,
    concepts: usize,
    edges: usize,
    touches: u64,
}

#[derive(Serialize)]
struct BenchReport {
    n: usize,
    m: usize,
    incidences: usize,
    basic: BenchRun,
    condensed: BenchRun,
    /// Condensed touches over basic touches.
    touch_ratio: Option<f64>,
}

fn bench(ctx: &Context) -> BenchReport {
    let run = |alg| {
        let start = Instant::now();
        let (lat, stats) = LatticeBuilder::new(ctx).algorithm(alg).build();
        BenchRun {
            seconds: start.elapsed().as_secs_f64(),
            concepts: lat.concepts.len(),
            edges: lat.edges.len(),
            touches: stats.total_touches,
        }
    };
    let basic = run(Algorithm::Basic);
    let condensed = run(Algorithm::Condensed);
    BenchReport {
        n: ctx.n(),
        m: ctx.m(),
        incidences: ctx.incidence_count(),
        touch_ratio: (basic.touches > 0).then(|| condensed.touches as f64 / basic.touches as f64),
        basic,
        condensed,
    }
}
