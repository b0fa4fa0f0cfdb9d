//! radsig: command-line front end for the radiomic biomarker pipeline.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use radsig_core::error::{Error, ErrorCategory};
use radsig_core::pipeline::{
    run_build, run_extract, run_simulate, run_transfer, write_report, PipelineConfig,
};
use radsig_core::synth::SimulateSpec;

const EXIT_CONFIG: u8 = 2;
const EXIT_IO: u8 = 3;
const EXIT_NUMERIC: u8 = 4;

#[derive(Parser)]
#[command(
    name = "radsig",
    version,
    about = "Radiomic biomarkers: extraction, lasso selection, cross-cohort evaluation"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Common {
    /// Pipeline configuration JSON; omitted fields take defaults.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Output directory.
    #[arg(long)]
    out: PathBuf,
}

#[derive(Subcommand)]
enum Command {
    /// Extract the feature table for every study in a cohort manifest.
    Extract {
        #[command(flatten)]
        common: Common,
        /// Cohort manifest JSON.
        #[arg(long)]
        manifest: PathBuf,
    },
    /// Build a biomarker from a feature CSV (time-based training split).
    Build {
        #[command(flatten)]
        common: Common,
        /// Feature table CSV.
        #[arg(long)]
        features: PathBuf,
        /// Seed for fold assignment; required to keep runs reproducible.
        #[arg(long)]
        seed: u64,
        /// Cohort id recorded in the model; defaults to the CSV file stem.
        #[arg(long)]
        cohort_id: Option<String>,
    },
    /// Evaluate biomarkers across cohorts: AUC matrix and DeLong tests.
    Transfer {
        #[command(flatten)]
        common: Common,
        /// Model JSON files, one per source cohort.
        #[arg(long, num_args = 2.., required = true)]
        models: Vec<PathBuf>,
        /// Feature CSVs, one per validation cohort, same order as --models.
        #[arg(long, num_args = 2.., required = true)]
        features: Vec<PathBuf>,
    },
    /// Generate synthetic cohorts (feature tables or voxel phantoms).
    Simulate {
        #[command(flatten)]
        common: Common,
        /// Seed re-keying the whole simulation; required.
        #[arg(long)]
        seed: u64,
        /// Simulation spec JSON; defaults to the three-cohort experiment.
        #[arg(long)]
        spec: Option<PathBuf>,
    },
    /// Summarize a transfer run directory as text.
    Report {
        /// Directory holding auc_matrix.csv and delong_tests.csv.
        #[arg(long)]
        run: PathBuf,
        /// Where to write report.txt; defaults to the run directory.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Pipeline configuration JSON (for the significance threshold).
        #[arg(long)]
        config: Option<PathBuf>,
    },
}

fn load_config(path: &Option<PathBuf>) -> Result<PipelineConfig, Error> {
    match path {
        Some(p) => PipelineConfig::load(p),
        None => Ok(PipelineConfig::default()),
    }
}

fn run(cli: Cli) -> Result<(), Error> {
    match cli.command {
        Command::Extract { common, manifest } => {
            let config = load_config(&common.config)?;
            let csv = run_extract(&manifest, &common.out, &config)?;
            println!("wrote {}", csv.display());
        }
        Command::Build {
            common,
            features,
            seed,
            cohort_id,
        } => {
            let config = load_config(&common.config)?;
            let cohort = cohort_id.unwrap_or_else(|| {
                features
                    .file_stem()
                    .map(|s| s.to_string_lossy().into_owned())
                    .unwrap_or_else(|| "cohort".to_string())
            });
            let model = run_build(&features, &common.out, &config, seed, &cohort)?;
            println!("wrote {}", model.display());
        }
        Command::Transfer {
            common,
            models,
            features,
        } => {
            let config = load_config(&common.config)?;
            let matrix = run_transfer(&models, &features, &common.out, &config)?;
            for (m, id) in matrix.model_ids.iter().enumerate() {
                let row: Vec<String> = matrix.auc[m].iter().map(|a| format!("{a:.4}")).collect();
                println!("{id}: [{}]", row.join(", "));
            }
            println!("wrote {}", common.out.display());
        }
        Command::Simulate { common, seed, spec } => {
            let parsed = match spec {
                Some(path) => {
                    let text =
                        std::fs::read_to_string(&path).map_err(|e| Error::io(&path, e))?;
                    Some(serde_json::from_str::<SimulateSpec>(&text).map_err(|e| {
                        Error::Json {
                            path: Some(path.clone()),
                            source: e,
                        }
                    })?)
                }
                None => None,
            };
            let written = run_simulate(parsed, &common.out, seed)?;
            for path in written {
                println!("wrote {}", path.display());
            }
        }
        Command::Report { run, out, config } => {
            let alpha = load_config(&config)?.evaluation.alpha;
            let out_dir = out.unwrap_or_else(|| run.clone());
            let text = write_report(&run, &out_dir, alpha)?;
            print!("{text}");
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            let mut source = std::error::Error::source(&e);
            while let Some(s) = source {
                eprintln!("  caused by: {s}");
                source = s.source();
            }
            ExitCode::from(match e.category() {
                ErrorCategory::Config => EXIT_CONFIG,
                ErrorCategory::Io => EXIT_IO,
                ErrorCategory::Numeric => EXIT_NUMERIC,
            })
        }
    }
}
