//! End-to-end pipeline runs behind the CLI subcommands.
//!
//! Every run echoes its effective configuration into the output directory
//! and writes only deterministic content, so identical inputs and seeds
//! reproduce every artifact byte for byte.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::features::{extract_study, FeatureCatalogConfig};
use crate::rng::split_seed;
use crate::selection::{build_biomarker, BiomarkerModel, CvCurve, FitOptions, SelectionConfig};
use crate::stats::{split_table, transfer_matrix, TransferMatrix};
use crate::study::{load_manifest, load_study};
use crate::synth::{make_cohort, write_phantom_cohort, SimulateSpec};
use crate::table::FeatureTable;

pub const FEATURES_CSV: &str = "features.csv";
pub const MODEL_JSON: &str = "model.json";
pub const CV_CURVE_CSV: &str = "cv_curve.csv";
pub const SPLIT_JSON: &str = "split.json";
pub const AUC_MATRIX_CSV: &str = "auc_matrix.csv";
pub const DELONG_TESTS_CSV: &str = "delong_tests.csv";
pub const ROC_POINTS_CSV: &str = "roc_points.csv";
pub const REPORT_TXT: &str = "report.txt";
pub const EXTRACT_ERRORS_LOG: &str = "extract_errors.log";

/// Evaluation knobs shared by transfer and report.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EvalConfig {
    #[serde(default = "default_split_ratio")]
    pub split_ratio: f64,
    /// Significance threshold flagged in reports.
    #[serde(default = "default_alpha")]
    pub alpha: f64,
    /// Also write per-model ROC points for external plotting.
    #[serde(default)]
    pub roc_points: bool,
}

fn default_split_ratio() -> f64 {
    0.7
}
fn default_alpha() -> f64 {
    0.05
}

impl Default for EvalConfig {
    fn default() -> Self {
        EvalConfig {
            split_ratio: default_split_ratio(),
            alpha: default_alpha(),
            roc_points: false,
        }
    }
}

/// The full declarative configuration accepted by `--config`.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct PipelineConfig {
    pub catalog: FeatureCatalogConfig,
    pub selection: SelectionConfig,
    pub evaluation: EvalConfig,
}

impl PipelineConfig {
    pub fn load(path: &Path) -> Result<Self> {
        let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        serde_json::from_str(&text).map_err(|e| Error::Json {
            path: Some(path.into()),
            source: e,
        })
    }
}

fn ensure_dir(dir: &Path) -> Result<()> {
    fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))
}

fn write_text(path: &Path, text: &str) -> Result<()> {
    fs::write(path, text).map_err(|e| Error::io(path, e))
}

fn echo_config<T: Serialize>(out_dir: &Path, name: &str, config: &T) -> Result<()> {
    let text = serde_json::to_string_pretty(config)?;
    write_text(&out_dir.join(name), &text)
}

/// Extracts features for every study in the manifest into `features.csv`.
///
/// Failing studies are recorded in `extract_errors.log` and the run errors
/// out after attempting every study.
pub fn run_extract(
    manifest_path: &Path,
    out_dir: &Path,
    config: &PipelineConfig,
) -> Result<PathBuf> {
    ensure_dir(out_dir)?;
    echo_config(out_dir, "extract_config.json", config)?;
    let entries = load_manifest(manifest_path)?;
    let base_dir = manifest_path.parent().unwrap_or(Path::new("."));

    let results: Vec<(String, Result<crate::features::FeatureVector<f64>>)> = entries
        .par_iter()
        .map(|entry| {
            let row = load_study::<f64>(entry, base_dir)
                .and_then(|study| extract_study(&study, &config.catalog));
            (entry.id.clone(), row)
        })
        .collect();

    let failures: Vec<(&String, &Error)> = results
        .iter()
        .filter_map(|(id, r)| r.as_ref().err().map(|e| (id, e)))
        .collect();
    if !failures.is_empty() {
        let mut log = String::new();
        for (id, e) in &failures {
            writeln!(log, "{id}: {e}").unwrap();
        }
        write_text(&out_dir.join(EXTRACT_ERRORS_LOG), &log)?;
        return Err(Error::Manifest {
            reason: format!(
                "{} of {} studies failed extraction; see {}",
                failures.len(),
                results.len(),
                out_dir.join(EXTRACT_ERRORS_LOG).display()
            ),
        });
    }

    let mut feature_names: Option<Vec<String>> = None;
    let mut values = Vec::new();
    let mut ids = Vec::new();
    let mut visits = Vec::new();
    let mut labels = Vec::new();
    for (entry, (_, row)) in entries.iter().zip(results) {
        let vector = row.expect("failures handled above");
        match &feature_names {
            None => feature_names = Some(vector.names()),
            Some(names) if *names == vector.names() => {}
            Some(_) => {
                return Err(Error::CatalogMismatch {
                    reason: format!("study '{}' produced a different catalog", entry.id),
                })
            }
        }
        ids.push(entry.id.clone());
        visits.push(entry.visit_time.clone());
        labels.push(entry.label);
        values.extend(vector.values());
    }
    let table = FeatureTable::new(ids, visits, labels, feature_names.unwrap(), values)?;
    let csv_path = out_dir.join(FEATURES_CSV);
    table.write_csv(&csv_path)?;
    Ok(csv_path)
}

/// Trains a biomarker on the time-based training split of a feature CSV.
pub fn run_build(
    features_csv: &Path,
    out_dir: &Path,
    config: &PipelineConfig,
    seed: u64,
    cohort_id: &str,
) -> Result<PathBuf> {
    ensure_dir(out_dir)?;
    let mut effective = config.clone();
    effective.selection.seed = seed;
    echo_config(out_dir, "build_config.json", &effective)?;

    let table = FeatureTable::<f64>::read_csv(features_csv)?;
    let (train, _val, split) = split_table(&table, effective.evaluation.split_ratio)?;
    write_text(
        &out_dir.join(SPLIT_JSON),
        &serde_json::to_string_pretty(&split)?,
    )?;

    let (model, curve) = build_biomarker(
        &train,
        &effective.selection,
        cohort_id,
        &FitOptions::default(),
    )?;
    let model_path = out_dir.join(MODEL_JSON);
    model.write_json(&model_path)?;
    write_text(&out_dir.join(CV_CURVE_CSV), &cv_curve_csv(&curve))?;
    Ok(model_path)
}

fn cv_curve_csv(curve: &CvCurve<f64>) -> String {
    let mut out = String::from("lambda,mean_loss,se_loss,chosen\n");
    for (i, &lam) in curve.lambdas.iter().enumerate() {
        writeln!(
            out,
            "{:.16e},{:.16e},{:.16e},{}",
            lam,
            curve.mean_loss[i],
            curve.se_loss[i],
            (i == curve.chosen_index) as u8
        )
        .unwrap();
    }
    out
}

/// Scores every model on every cohort's validation split and writes the AUC
/// matrix and DeLong tables.
pub fn run_transfer(
    model_paths: &[PathBuf],
    feature_paths: &[PathBuf],
    out_dir: &Path,
    config: &PipelineConfig,
) -> Result<TransferMatrix<f64>> {
    if model_paths.len() != feature_paths.len() || model_paths.len() < 2 {
        return Err(Error::InvalidParam {
            what: "transfer needs matching model and cohort lists (>= 2 entries)".into(),
        });
    }
    ensure_dir(out_dir)?;
    echo_config(out_dir, "transfer_config.json", config)?;

    let mut models = Vec::new();
    for path in model_paths {
        let model = BiomarkerModel::<f64>::read_json(path)?;
        models.push((model.provenance.cohort_id.clone(), model));
    }
    let mut cohorts = Vec::new();
    for path in feature_paths {
        let table = FeatureTable::<f64>::read_csv(path)?;
        let (_train, val, _split) = split_table(&table, config.evaluation.split_ratio)?;
        let id = path
            .file_stem()
            .map(|s| s.to_string_lossy().into_owned())
            .unwrap_or_else(|| "cohort".to_string());
        cohorts.push((id, val));
    }

    let matrix = transfer_matrix(&models, &cohorts)?;
    write_text(&out_dir.join(AUC_MATRIX_CSV), &auc_matrix_csv(&matrix))?;
    write_text(
        &out_dir.join(DELONG_TESTS_CSV),
        &delong_tests_csv(&matrix, config.evaluation.alpha),
    )?;
    if config.evaluation.roc_points {
        write_text(&out_dir.join(ROC_POINTS_CSV), &roc_points_csv(&matrix, &cohorts)?)?;
    }
    Ok(matrix)
}

fn auc_matrix_csv(matrix: &TransferMatrix<f64>) -> String {
    let mut out = String::from("source_cohort");
    for c in &matrix.cohort_ids {
        write!(out, ",{c}").unwrap();
    }
    out.push('\n');
    for (m, model_id) in matrix.model_ids.iter().enumerate() {
        write!(out, "{model_id}").unwrap();
        for c in 0..matrix.cohort_ids.len() {
            write!(out, ",{:.16e}", matrix.auc[m][c]).unwrap();
        }
        out.push('\n');
    }
    out
}

fn delong_tests_csv(matrix: &TransferMatrix<f64>, alpha: f64) -> String {
    let mut out =
        String::from("validation_cohort,model_a,model_b,auc_a,auc_b,delta,variance,z,p,significant,degenerate\n");
    for (c, cohort_id) in matrix.cohort_ids.iter().enumerate() {
        for test in &matrix.tests[c] {
            let (a, b) = (
                &matrix.model_ids[test.model_a],
                &matrix.model_ids[test.model_b],
            );
            match &test.result {
                Some(r) => writeln!(
                    out,
                    "{cohort_id},{a},{b},{:.16e},{:.16e},{:.16e},{:.16e},{:.16e},{:.16e},{},0",
                    r.auc_a,
                    r.auc_b,
                    r.difference,
                    r.variance,
                    r.z,
                    r.p,
                    (r.p < alpha) as u8
                )
                .unwrap(),
                None => writeln!(out, "{cohort_id},{a},{b},,,,,,,0,1").unwrap(),
            }
        }
    }
    out
}

fn roc_points_csv(
    matrix: &TransferMatrix<f64>,
    cohorts: &[(String, FeatureTable<f64>)],
) -> Result<String> {
    let mut out = String::from("model,cohort,fpr,tpr\n");
    for (m, model_id) in matrix.model_ids.iter().enumerate() {
        for (c, (cohort_id, table)) in cohorts.iter().enumerate() {
            let scores: Vec<f64> = matrix.scores[m][c].clone();
            let roc = crate::stats::roc_analysis::<f64>(&scores, table.labels())?;
            for (fpr, tpr) in roc.points {
                writeln!(out, "{model_id},{cohort_id},{fpr:.16e},{tpr:.16e}").unwrap();
            }
        }
    }
    Ok(out)
}

/// Simulation entry point: feature cohorts to CSV, phantom cohorts to raw
/// volumes + manifests. Returns the written cohort artifact paths.
///
/// The master seed re-keys each cohort: file-provided specs get
/// `seed + split(master, index)`, so a run is fully pinned by `--seed`.
pub fn run_simulate(
    spec: Option<SimulateSpec>,
    out_dir: &Path,
    master_seed: u64,
) -> Result<Vec<PathBuf>> {
    ensure_dir(out_dir)?;
    let effective = match spec {
        None => SimulateSpec::default_feature_experiment(master_seed),
        Some(SimulateSpec::FeatureCohorts { mut cohorts }) => {
            for (i, c) in cohorts.iter_mut().enumerate() {
                c.seed = c.seed.wrapping_add(split_seed(master_seed, i as u64));
            }
            SimulateSpec::FeatureCohorts { cohorts }
        }
        Some(SimulateSpec::PhantomCohorts { mut cohorts }) => {
            for (i, c) in cohorts.iter_mut().enumerate() {
                c.seed = c.seed.wrapping_add(split_seed(master_seed, i as u64));
            }
            SimulateSpec::PhantomCohorts { cohorts }
        }
    };
    echo_config(out_dir, "simulate_spec.json", &effective)?;

    let mut written = Vec::new();
    match &effective {
        SimulateSpec::FeatureCohorts { cohorts } => {
            for spec in cohorts {
                let table = make_cohort(spec)?;
                let path = out_dir.join(format!("{}.csv", spec.cohort_id));
                table.write_csv(&path)?;
                written.push(path);
            }
        }
        SimulateSpec::PhantomCohorts { cohorts } => {
            for spec in cohorts {
                let dir = out_dir.join(&spec.cohort_id);
                let manifest = write_phantom_cohort(&dir, spec)?;
                written.push(manifest);
            }
        }
    }
    Ok(written)
}

/// Renders the human-readable summary of a transfer run directory.
pub fn run_report(run_dir: &Path, alpha: f64) -> Result<String> {
    let auc_path = run_dir.join(AUC_MATRIX_CSV);
    let tests_path = run_dir.join(DELONG_TESTS_CSV);
    let auc_text = fs::read_to_string(&auc_path).map_err(|e| Error::io(&auc_path, e))?;
    let tests_text = fs::read_to_string(&tests_path).map_err(|e| Error::io(&tests_path, e))?;

    let mut lines = auc_text.lines();
    let header = lines.next().ok_or_else(|| Error::Csv {
        path: auc_path.clone(),
        line: 1,
        reason: "empty AUC matrix".into(),
    })?;
    let cohort_ids: Vec<&str> = header.split(',').skip(1).collect();

    let mut out = String::new();
    out.push_str("radsig transfer report\n");
    out.push_str("======================\n\n");
    out.push_str("validation AUC (rows = biomarker source, columns = validation cohort)\n\n");
    write!(out, "  {:<10}", "source").unwrap();
    for c in &cohort_ids {
        write!(out, "{c:>10}").unwrap();
    }
    out.push('\n');
    for (idx, line) in lines.enumerate() {
        if line.is_empty() {
            continue;
        }
        let mut fields = line.split(',');
        let model = fields.next().ok_or_else(|| Error::Csv {
            path: auc_path.clone(),
            line: idx + 2,
            reason: "missing source cohort".into(),
        })?;
        write!(out, "  {model:<10}").unwrap();
        for f in fields {
            let v: f64 = f.parse().map_err(|_| Error::Csv {
                path: auc_path.clone(),
                line: idx + 2,
                reason: "malformed AUC".into(),
            })?;
            write!(out, "{v:>10.4}").unwrap();
        }
        out.push('\n');
    }

    writeln!(
        out,
        "\npairwise DeLong tests per validation cohort (alpha = {alpha}, * = significant)\n"
    )
    .unwrap();
    for (idx, line) in tests_text.lines().enumerate().skip(1) {
        if line.is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split(',').collect();
        if fields.len() != 11 {
            return Err(Error::Csv {
                path: tests_path.clone(),
                line: idx + 1,
                reason: "expected 11 columns".into(),
            });
        }
        let (cohort, a, b) = (fields[0], fields[1], fields[2]);
        if fields[10] == "1" {
            writeln!(out, "  [{cohort}] {a} vs {b}: no detectable difference").unwrap();
        } else {
            let delta: f64 = fields[5].parse().unwrap_or(f64::NAN);
            let z: f64 = fields[7].parse().unwrap_or(f64::NAN);
            let p: f64 = fields[8].parse().unwrap_or(f64::NAN);
            let star = if p < alpha { " *" } else { "" };
            writeln!(
                out,
                "  [{cohort}] {a} vs {b}: delta = {delta:+.4}, z = {z:+.3}, p = {p:.4}{star}"
            )
            .unwrap();
        }
    }
    Ok(out)
}

/// Writes the report into the run directory and returns its text.
pub fn write_report(run_dir: &Path, out_dir: &Path, alpha: f64) -> Result<String> {
    ensure_dir(out_dir)?;
    echo_config(out_dir, "report_config.json", &serde_json::json!({ "alpha": alpha }))?;
    let text = run_report(run_dir, alpha)?;
    write_text(&out_dir.join(REPORT_TXT), &text)?;
    Ok(text)
}
