use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand};

use bevtrack_core::baseversion::{parse_scene, read_tracking_output, write_scene, write_tracking_output};
use bevtrack_core::motion::{evaluate_motion, MotionEvalConfig};
use bevtrack_core::tracker::{run_scene, TrackerConfig};
use bevtrack_harness::{clear_counts, format_table, generate_scenario, run_ablation, ScenarioSpec};

/// 3D multi-object tracking over BaseVersion scene files.
#[derive(Parser)]
#[command(name = "bevtrack", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the tracker over a scene and write NDJSON tracking output.
    Track {
        /// Input scene JSON.
        #[arg(long)]
        scene: PathBuf,
        /// Tracker config JSON; defaults apply when omitted.
        #[arg(long)]
        config: Option<PathBuf>,
        /// Output NDJSON path.
        #[arg(long)]
        out: PathBuf,
    },
    /// Generate a synthetic scenario: ground truth and detected scenes.
    Generate {
        /// Scenario spec JSON.
        #[arg(long)]
        spec: PathBuf,
        /// Directory receiving gt.json and detections.json.
        #[arg(long)]
        out_dir: PathBuf,
    },
    /// Score tracking output against ground truth with the motion metrics.
    EvalMotion {
        #[command(flatten)]
        eval: EvalArgs,
        /// Average per trajectory instead of pooling samples.
        #[arg(long)]
        trajectory_weighted: bool,
    },
    /// Score tracking output against ground truth with CLEAR counts.
    EvalClear {
        #[command(flatten)]
        eval: EvalArgs,
        /// Center-distance match gate in meters.
        #[arg(long, default_value_t = 2.0)]
        match_distance: f64,
    },
    /// Sweep cost functions and the image-plane rescue stage over a scenario.
    Ablate {
        /// Scenario spec JSON.
        #[arg(long)]
        spec: PathBuf,
        /// Tracker config JSON used as the sweep baseline.
        #[arg(long)]
        config: Option<PathBuf>,
        /// Emit rows as JSON instead of a table.
        #[arg(long)]
        json: bool,
    },
    /// Print the default tracker configuration as JSON.
    Config,
}

#[derive(Args)]
struct EvalArgs {
    /// Ground-truth scene JSON.
    #[arg(long)]
    gt: PathBuf,
    /// Tracking output NDJSON.
    #[arg(long)]
    tracked: PathBuf,
}

fn main() -> ExitCode {
    env_logger::init();
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 2,
            };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}

fn load_config(path: &Option<PathBuf>) -> Result<TrackerConfig> {
    let Some(path) = path else { return Ok(TrackerConfig::default()) };
    let text = std::fs::read_to_string(path)
        .with_context(|| format!("reading config {}", path.display()))?;
    let config: TrackerConfig =
        serde_json::from_str(&text).with_context(|| format!("parsing config {}", path.display()))?;
    config.validate()?;
    Ok(config)
}

fn run(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Track { scene, config, out } => {
            let config = load_config(&config)?;
            let scene = parse_scene(&scene)?;
            let output = run_scene(&scene, &config)?;
            write_tracking_output(&output, &out)?;
            eprintln!("wrote {} frames to {}", output.len(), out.display());
        }
        Command::Generate { spec, out_dir } => {
            let text = std::fs::read_to_string(&spec)
                .with_context(|| format!("reading spec {}", spec.display()))?;
            let spec: ScenarioSpec = serde_json::from_str(&text)
                .with_context(|| format!("parsing spec {}", spec.display()))?;
            let scenario = generate_scenario(&spec).map_err(anyhow::Error::msg)?;
            std::fs::create_dir_all(&out_dir)
                .with_context(|| format!("creating {}", out_dir.display()))?;
            write_scene(&scenario.ground_truth, out_dir.join("gt.json"))?;
            write_scene(&scenario.detections, out_dir.join("detections.json"))?;
            eprintln!(
                "wrote {} frames to {}/{{gt,detections}}.json",
                scenario.ground_truth.frames.len(),
                out_dir.display()
            );
        }
        Command::EvalMotion { eval, trajectory_weighted } => {
            let gt = parse_scene(&eval.gt)?;
            let tracked = read_tracking_output(&eval.tracked)?;
            let cfg = MotionEvalConfig { trajectory_weighted, ..MotionEvalConfig::default() };
            let report = evaluate_motion(&gt, &tracked, &cfg)?;
            println!("{}", serde_json::to_string_pretty(&report)?);
        }
        Command::EvalClear { eval, match_distance } => {
            let gt = parse_scene(&eval.gt)?;
            let tracked = read_tracking_output(&eval.tracked)?;
            let distance = bevtrack_core::PerCategory::uniform(match_distance);
            let counts = clear_counts(&gt, &tracked, &distance);
            println!("{}", serde_json::to_string_pretty(&counts)?);
        }
        Command::Ablate { spec, config, json } => {
            let text = std::fs::read_to_string(&spec)
                .with_context(|| format!("reading spec {}", spec.display()))?;
            let spec: ScenarioSpec = serde_json::from_str(&text)
                .with_context(|| format!("parsing spec {}", spec.display()))?;
            let base = load_config(&config)?;
            let scenario = generate_scenario(&spec).map_err(anyhow::Error::msg)?;
            let rows = run_ablation(
                &scenario.ground_truth,
                &scenario.detections,
                &base,
                &MotionEvalConfig::default(),
            )?;
            if json {
                println!("{}", serde_json::to_string_pretty(&rows)?);
            } else {
                print!("{}", format_table(&rows));
            }
        }
        Command::Config => {
            println!("{}", serde_json::to_string_pretty(&TrackerConfig::default())?);
        }
    }
    Ok(())
}
