use std::io::Write;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use anyhow::{bail, Context};
use clap::{Args, Parser, Subcommand};

use grapgt::{
    mine, num2cat, set_thresholds, synth, CsvOptions, Dataset, MiningConfig, Semantics,
    ThresholdMode, UserThresholds,
};

mod bench;

/// Gradual pattern mining with per-attribute gradualness thresholds.
#[derive(Parser)]
#[command(name = "grapgt", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the per-attribute gradualness thresholds of a dataset
    Thresholds(ThresholdsArgs),
    /// Print the +/-/o sign table of a temporally ordered dataset
    Transform(TransformArgs),
    /// Mine frequent gradual patterns
    Mine(MineArgs),
    /// Generate a seeded synthetic dataset as CSV
    Generate(GenerateArgs),
    /// Run a benchmark sweep described by a JSON config file
    Bench(BenchArgs),
}

#[derive(Args)]
struct InputArgs {
    /// Input CSV with a header row of attribute names
    input: PathBuf,
    /// Field delimiter
    #[arg(long, default_value = ",")]
    delimiter: char,
}

#[derive(Args)]
struct ThresholdArgs {
    /// Threshold mode: none, sd, cv, gap-mean, gap-sd, user
    #[arg(long, default_value = "none")]
    mode: String,
    #[arg(long, default_value_t = 1.0)]
    k1: f64,
    #[arg(long, default_value_t = 0.0)]
    k2: f64,
    /// Two-column CSV `attribute,sigma` (required for --mode user)
    #[arg(long)]
    user_file: Option<PathBuf>,
}

impl ThresholdArgs {
    fn mode(&self) -> anyhow::Result<ThresholdMode> {
        Ok(ThresholdMode::from_str(&self.mode)?)
    }

    fn user(&self) -> anyhow::Result<Option<UserThresholds>> {
        match &self.user_file {
            None => Ok(None),
            Some(path) => {
                let file = std::fs::File::open(path)
                    .with_context(|| format!("opening {}", path.display()))?;
                Ok(Some(UserThresholds::from_csv_reader(file)?))
            }
        }
    }
}

#[derive(Args)]
struct ThresholdsArgs {
    #[command(flatten)]
    input: InputArgs,
    #[command(flatten)]
    thresholds: ThresholdArgs,
}

#[derive(Args)]
struct TransformArgs {
    #[command(flatten)]
    input: InputArgs,
    #[command(flatten)]
    thresholds: ThresholdArgs,
}

#[derive(Args)]
struct MineArgs {
    #[command(flatten)]
    input: InputArgs,
    #[command(flatten)]
    thresholds: ThresholdArgs,
    /// Support semantics: graph or temporal
    #[arg(long, default_value = "graph")]
    semantics: String,
    /// Minimum support in (0, 1]
    #[arg(long)]
    min_supp: f64,
    /// Maximum pattern size
    #[arg(long)]
    max_len: Option<usize>,
    /// Report only closed patterns (temporal semantics)
    #[arg(long)]
    closed_only: bool,
    /// Suppress size-1 patterns in the output
    #[arg(long)]
    no_singletons: bool,
    /// Disable the dataset-reduction prune (temporal semantics)
    #[arg(long)]
    no_property1_prune: bool,
    /// Declare that the row order is NOT meaningful
    #[arg(long)]
    no_temporal_order: bool,
    /// Output format: json or csv
    #[arg(long, default_value = "json")]
    format: String,
    /// Worker pool size for candidate evaluation
    #[arg(long, env = "GRAPGT_WORKERS", default_value_t = 1)]
    workers: usize,
    /// Output path, '-' for stdout
    #[arg(long, default_value = "-")]
    output: String,
}

#[derive(Args)]
struct GenerateArgs {
    #[arg(long)]
    rows: usize,
    #[arg(long)]
    attrs: usize,
    /// Number of attribute groups sharing one latent trend
    #[arg(long, default_value_t = 1)]
    signal_groups: usize,
    /// Gaussian noise amplitude relative to each attribute's span
    #[arg(long, default_value_t = 0.0)]
    noise: f64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Output path, '-' for stdout
    #[arg(long, default_value = "-")]
    output: String,
}

#[derive(Args)]
struct BenchArgs {
    /// JSON config listing datasets and mining configurations
    config: PathBuf,
    /// Output path for the report CSV, '-' for stdout
    #[arg(long, default_value = "-")]
    output: String,
}

fn load_dataset(input: &InputArgs, temporal_order: bool) -> anyhow::Result<Dataset> {
    let opts = CsvOptions {
        delimiter: input.delimiter as u8,
        temporal_order,
    };
    Dataset::from_csv_path(&input.input, &opts)
        .with_context(|| format!("loading {}", input.input.display()))
}

fn write_output(target: &str, content: &str) -> anyhow::Result<()> {
    if target == "-" {
        std::io::stdout().write_all(content.as_bytes())?;
    } else {
        std::fs::write(target, content).with_context(|| format!("writing {target}"))?;
    }
    Ok(())
}

fn cmd_thresholds(args: &ThresholdsArgs) -> anyhow::Result<()> {
    let d = load_dataset(&args.input, false)?;
    let t = set_thresholds(
        &d,
        args.thresholds.mode()?,
        args.thresholds.k1,
        args.thresholds.k2,
        args.thresholds.user()?.as_ref(),
    )?;
    let mut out = String::new();
    for (name, sigma) in d.attribute_names().iter().zip(t.sigmas()) {
        out.push_str(&format!("{name} {sigma:.6}\n"));
    }
    write_output("-", &out)
}

fn cmd_transform(args: &TransformArgs) -> anyhow::Result<()> {
    let d = load_dataset(&args.input, true)?;
    let t = set_thresholds(
        &d,
        args.thresholds.mode()?,
        args.thresholds.k1,
        args.thresholds.k2,
        args.thresholds.user()?.as_ref(),
    )?;
    let table = num2cat(&d, &t)?;
    write_output("-", &table.to_csv_string())
}

fn cmd_mine(args: &MineArgs) -> anyhow::Result<()> {
    let d = load_dataset(&args.input, !args.no_temporal_order)?;
    let mut cfg = MiningConfig::new(args.min_supp, Semantics::from_str(&args.semantics)?);
    cfg.threshold_mode = args.thresholds.mode()?;
    cfg.k1 = args.thresholds.k1;
    cfg.k2 = args.thresholds.k2;
    cfg.user_thresholds = args.thresholds.user()?;
    cfg.max_len = args.max_len;
    cfg.closed_only = args.closed_only;
    cfg.enable_property1_prune = !args.no_property1_prune;
    cfg.workers = args.workers.max(1);

    let result = mine(&d, &cfg)?;

    let min_size = if args.no_singletons { 2 } else { 1 };
    let content = match args.format.as_str() {
        "json" => result.to_json(min_size),
        "csv" => result.to_csv(min_size),
        other => bail!("unknown format '{other}' (expected json or csv)"),
    };
    write_output(&args.output, &content)?;

    let mem = result
        .stats
        .peak_memory_bytes
        .map(|b| format!("{:.1} MiB", b as f64 / (1024.0 * 1024.0)))
        .unwrap_or_else(|| "n/a".into());
    eprintln!(
        "mined {} patterns in {:.1} ms (peak memory ~{mem}, approximate)",
        result.patterns.len(),
        result.stats.wall_time_ms
    );
    Ok(())
}

fn cmd_generate(args: &GenerateArgs) -> anyhow::Result<()> {
    let cfg = synth::SynthConfig {
        rows: args.rows,
        attrs: args.attrs,
        signal_groups: args.signal_groups,
        noise: args.noise,
        seed: args.seed,
    };
    let (dataset, _) = synth::generate(&cfg)?;
    write_output(&args.output, &dataset.to_csv_string())
}

fn cmd_bench(args: &BenchArgs) -> anyhow::Result<()> {
    let report = bench::run(&args.config)?;
    write_output(&args.output, &report)
}

fn run() -> anyhow::Result<()> {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            e.print().expect("writing usage message");
            std::process::exit(code);
        }
    };
    match &cli.command {
        Command::Thresholds(args) => cmd_thresholds(args),
        Command::Transform(args) => cmd_transform(args),
        Command::Mine(args) => cmd_mine(args),
        Command::Generate(args) => cmd_generate(args),
        Command::Bench(args) => cmd_bench(args),
    }
}

/// Exit codes: 0 success, 1 user/data error, 2 internal invariant violation.
fn main() {
    let code = match std::panic::catch_unwind(run) {
        Ok(Ok(())) => 0,
        Ok(Err(err)) => {
            eprintln!("error: {err:#}");
            1
        }
        Err(_) => {
            eprintln!("internal error: invariant violation");
            2
        }
    };
    std::process::exit(code);
}

// Referenced from bench.rs
pub(crate) fn dataset_from_path(path: &Path, temporal: bool) -> anyhow::Result<Dataset> {
    let opts = CsvOptions {
        delimiter: b',',
        temporal_order: temporal,
    };
    Dataset::from_csv_path(path, &opts).with_context(|| format!("loading {}", path.display()))
}
