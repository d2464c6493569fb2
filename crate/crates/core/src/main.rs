use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use incapax::cli::report::{analyze, AnalyzeOptions, ChannelSpec};
use incapax::cli::verify::run_checks;
use incapax::cli::zoo::ZOO;
use incapax::cli::{exit_code, superoperator_from_json, EXIT_INPUT, EXIT_NUMERICAL};
use incapax::forbidden::{classify_linear_map, span_if_check, CommutationStatus, DEFAULT_SAMPLE_COUNT};
use incapax::locc::{falsification_probe, nondistillability_report, LoccProtocol, ProbeFamily};
use incapax::{Error, Tolerances};

#[derive(Parser)]
#[command(name = "incapax", version, about = "Zero-capacity certificates for quantum channels")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the PPT and antidegradability tests and classify the channel.
    Analyze(AnalyzeArgs),
    /// Registered channel families.
    Zoo {
        #[command(subcommand)]
        action: ZooAction,
    },
    /// Run the built-in property checks.
    Verify {
        #[arg(long, env = "INCAPAX_SEED", default_value_t = 0)]
        seed: u64,
        #[arg(long, value_enum, default_value_t = Output::Text)]
        output: Output,
    },
    /// Classify a linear map given as a JSON superoperator.
    ClassifyMap {
        #[arg(long)]
        map: PathBuf,
        #[arg(long, default_value_t = DEFAULT_SAMPLE_COUNT)]
        samples: usize,
        #[arg(long, env = "INCAPAX_SEED", default_value_t = 0)]
        seed: u64,
        #[arg(long, value_enum, default_value_t = Output::Json)]
        output: Output,
    },
    /// Distillation evidence for the Choi matrix of a channel.
    DistillCheck(DistillArgs),
}

#[derive(Subcommand)]
enum ZooAction {
    List {
        #[arg(long, value_enum, default_value_t = Output::Text)]
        output: Output,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Output {
    Json,
    Text,
}

#[derive(Args)]
struct ChannelArgs {
    /// JSON channel file; may be repeated.
    #[arg(long)]
    channel: Vec<PathBuf>,
    /// Zoo channel name.
    #[arg(long)]
    zoo: Option<String>,
    /// Zoo parameter `key=value`; may be repeated.
    #[arg(long = "param", value_parser = parse_param)]
    params: Vec<(String, f64)>,
}

impl ChannelArgs {
    fn specs(&self) -> Result<Vec<ChannelSpec>, Error> {
        let mut specs: Vec<ChannelSpec> = self.channel.iter().map(ChannelSpec::file).collect();
        match &self.zoo {
            Some(name) => {
                let pairs: Vec<(&str, f64)> = self.params.iter().map(|(k, v)| (k.as_str(), *v)).collect();
                specs.push(ChannelSpec::zoo(name, &pairs));
            }
            None if !self.params.is_empty() => {
                return Err(Error::Malformed("--param requires --zoo".into()));
            }
            None => {}
        }
        if specs.is_empty() {
            return Err(Error::Malformed("give --channel or --zoo".into()));
        }
        Ok(specs)
    }
}

#[derive(Args)]
struct AnalyzeArgs {
    #[command(flatten)]
    channel: ChannelArgs,
    /// Sets the Hermiticity, positivity, trace and completeness tolerances.
    #[arg(long)]
    tol: Option<f64>,
    #[arg(long, default_value_t = incapax::antideg::DEFAULT_MAX_ITER)]
    max_iter: usize,
    #[arg(long, env = "INCAPAX_SEED", default_value_t = 0)]
    seed: u64,
    #[arg(long, value_enum, default_value_t = Output::Json)]
    output: Output,
    /// Omit timing information so reruns are byte-identical.
    #[arg(long)]
    deterministic: bool,
}

#[derive(Args)]
struct DistillArgs {
    #[command(flatten)]
    channel: ChannelArgs,
    /// Number of random protocols in the falsification probe.
    #[arg(long, default_value_t = 50)]
    protocols: usize,
    /// Random pure states per residual estimate.
    #[arg(long, default_value_t = 16)]
    samples: usize,
    #[arg(long, env = "INCAPAX_SEED", default_value_t = 0)]
    seed: u64,
    #[arg(long, value_enum, default_value_t = Output::Json)]
    output: Output,
}

fn parse_param(s: &str) -> Result<(String, f64), String> {
    let (k, v) = s.split_once('=').ok_or_else(|| format!("expected key=value, got '{s}'"))?;
    let v: f64 = v.trim().parse().map_err(|_| format!("'{v}' is not a number"))?;
    Ok((k.trim().to_string(), v))
}

fn print_json<T: Serialize>(value: &T) -> Result<(), Error> {
    println!("{}", serde_json::to_string_pretty(value)?);
    Ok(())
}

fn run_analyze(args: &AnalyzeArgs) -> Result<(), Error> {
    let specs = args.channel.specs()?;
    let tol = match args.tol {
        Some(t) if !(t > 0.0 && t.is_finite()) => {
            return Err(Error::ParameterOutOfRange(format!("tolerance {t} must be positive")))
        }
        Some(t) => Tolerances { herm: t, psd: t, tr: t, tp: t },
        None => Tolerances::default(),
    };
    let opts = AnalyzeOptions {
        tol,
        max_iter: args.max_iter,
        seed: args.seed,
        deterministic: args.deterministic,
        ..Default::default()
    };
    let reports = std::thread::scope(|s| {
        let handles: Vec<_> = specs.iter().map(|spec| s.spawn(|| analyze(spec, &opts))).collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("analysis thread panicked"))
            .collect::<Result<Vec<_>, Error>>()
    })?;
    match args.output {
        Output::Json if reports.len() == 1 => print_json(&reports[0]),
        Output::Json => print_json(&reports),
        Output::Text => {
            for (i, r) in reports.iter().enumerate() {
                if i > 0 {
                    println!();
                }
                print!("{}", r.to_text());
            }
            Ok(())
        }
    }
}

#[derive(Serialize)]
struct MapVerdict {
    status: CommutationStatus,
    residual: f64,
    span_residual: f64,
    samples_used: usize,
    sampling_incomplete: bool,
    witness_min_eig: Option<f64>,
    witness_unitary: Option<Vec<Vec<[f64; 2]>>>,
}

fn run_classify(map: &PathBuf, samples: usize, seed: u64, output: Output) -> Result<(), Error> {
    let r = superoperator_from_json(map)?;
    let d = r.dim_in();
    let v = classify_linear_map(&r, d, samples, seed)?;
    let span = span_if_check(&r, d)?;
    let verdict = MapVerdict {
        status: v.status,
        residual: v.residual,
        span_residual: span.residual(),
        samples_used: v.samples_used,
        sampling_incomplete: v.sampling_incomplete,
        witness_min_eig: v.witness_min_eig,
        witness_unitary: v.witness_unitary.as_ref().map(|u| {
            (0..u.rows())
                .map(|i| (0..u.cols()).map(|j| [u[(i, j)].re, u[(i, j)].im]).collect())
                .collect()
        }),
    };
    match output {
        Output::Json => print_json(&verdict),
        Output::Text => {
            println!("status          {:?}", verdict.status);
            println!("fit residual    {:.3e}", verdict.residual);
            println!("span residual   {:.3e}", verdict.span_residual);
            match verdict.witness_min_eig {
                Some(e) => println!("witness         found after {} samples (min Choi eig {e:.3e})", verdict.samples_used),
                None if verdict.sampling_incomplete => {
                    println!("witness         none in {} samples (sampling-incomplete)", verdict.samples_used)
                }
                None => {}
            }
            Ok(())
        }
    }
}

#[derive(Serialize)]
struct DistillOutput {
    channel: String,
    teleportation: Option<incapax::locc::NondistillabilityReport>,
    probe: incapax::locc::ProbeSummary,
}

fn run_distill(args: &DistillArgs) -> Result<(), Error> {
    let specs = args.channel.specs()?;
    let tol = Tolerances::default();
    let mut outputs = Vec::new();
    for spec in &specs {
        let (name, ch) = spec.resolve(&tol)?;
        let teleportation = if ch.dim_in() == ch.dim_out() {
            Some(nondistillability_report(&ch, &LoccProtocol::teleportation(ch.dim_in())?, args.samples, args.seed)?)
        } else {
            None
        };
        let probe = falsification_probe(&ch, ProbeFamily::Generic, args.protocols, args.samples, args.seed)?;
        outputs.push(DistillOutput { channel: name, teleportation, probe });
    }
    match args.output {
        Output::Json if outputs.len() == 1 => print_json(&outputs[0]),
        Output::Json => print_json(&outputs),
        Output::Text => {
            for o in &outputs {
                println!("channel           {}", o.channel);
                if let Some(t) = &o.teleportation {
                    println!("teleportation     {}", t.narrative);
                }
                let p = &o.probe;
                println!(
                    "probe             {} protocols, residual in [{:.3e}, {:.3e}], extraction CP: {}",
                    p.protocols, p.min_residual, p.max_residual, p.all_extractions_cp
                );
                println!("                  {}", p.note);
            }
            Ok(())
        }
    }
}

fn run() -> Result<i32, Error> {
    let cli = Cli::parse();
    match cli.command {
        Command::Analyze(args) => run_analyze(&args).map(|_| 0),
        Command::Zoo { action: ZooAction::List { output } } => {
            match output {
                Output::Json => print_json(&ZOO)?,
                Output::Text => {
                    for e in ZOO {
                        println!("{:<24} {:<22} {}", e.name, e.params.join(","), e.description);
                    }
                }
            }
            Ok(0)
        }
        Command::Verify { seed, output } => {
            let checks = run_checks(seed);
            match output {
                Output::Json => print_json(&checks)?,
                Output::Text => {
                    for c in &checks {
                        let mark = if c.passed { "PASS" } else { "FAIL" };
                        println!("{mark} {:<24} {:>12.3e}  {}", c.name, c.value, c.detail);
                    }
                }
            }
            Ok(if checks.iter().all(|c| c.passed) { 0 } else { EXIT_NUMERICAL })
        }
        Command::ClassifyMap { map, samples, seed, output } => run_classify(&map, samples, seed, output).map(|_| 0),
        Command::DistillCheck(args) => run_distill(&args).map(|_| 0),
    }
}

fn main() -> ExitCode {
    match run() {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {e}");
            let code = exit_code(&e);
            debug_assert!(code == EXIT_INPUT || code == EXIT_NUMERICAL);
            ExitCode::from(code as u8)
        }
    }
}
