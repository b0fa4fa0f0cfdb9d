//! Time-based cohort splitting.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::Real;
use crate::study::parse_visit_time;
use crate::table::FeatureTable;

/// A 7:3-style train/validation split ordered by visit time.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CohortSplit {
    /// All patient ids sorted by (visit time, id).
    pub ordered_ids: Vec<String>,
    pub train_ids: Vec<String>,
    pub val_ids: Vec<String>,
    pub ratio: f64,
    /// Row indices into the original table, same order as the id lists.
    pub train_rows: Vec<usize>,
    pub val_rows: Vec<usize>,
}

/// Splits patients by visit time: the earliest `round(ratio*n)` go to
/// training (round half up), the rest to validation. Ties in time break by
/// id, so the split is independent of input row order.
pub fn split_by_time(
    ids: &[String],
    visit_times: &[String],
    labels: &[u8],
    ratio: f64,
) -> Result<CohortSplit> {
    let n = ids.len();
    if visit_times.len() != n || labels.len() != n {
        return Err(Error::InvalidParam {
            what: "ids, visit_times and labels must have equal length".into(),
        });
    }
    if n < 4 {
        return Err(Error::TooFewSamples { needed: 4, got: n });
    }
    if !(ratio > 0.0 && ratio < 1.0) {
        return Err(Error::InvalidParam {
            what: format!("split ratio must lie in (0, 1), got {ratio}"),
        });
    }
    let mut keyed: Vec<(usize, chrono::NaiveDateTime)> = Vec::with_capacity(n);
    for i in 0..n {
        keyed.push((i, parse_visit_time(&visit_times[i])?));
    }
    keyed.sort_by(|a, b| a.1.cmp(&b.1).then_with(|| ids[a.0].cmp(&ids[b.0])));

    let n_train = (ratio * n as f64 + 0.5).floor() as usize;
    if n_train == 0 || n_train >= n {
        return Err(Error::InvalidParam {
            what: format!("ratio {ratio} leaves an empty split for n = {n}"),
        });
    }

    let ordered_ids: Vec<String> = keyed.iter().map(|&(i, _)| ids[i].clone()).collect();
    let train_rows: Vec<usize> = keyed[..n_train].iter().map(|&(i, _)| i).collect();
    let val_rows: Vec<usize> = keyed[n_train..].iter().map(|&(i, _)| i).collect();
    let train_labels: Vec<u8> = train_rows.iter().map(|&i| labels[i]).collect();
    if !train_labels.contains(&0) || !train_labels.contains(&1) {
        return Err(Error::SingleClass.in_context("training part of the time split"));
    }

    Ok(CohortSplit {
        train_ids: train_rows.iter().map(|&i| ids[i].clone()).collect(),
        val_ids: val_rows.iter().map(|&i| ids[i].clone()).collect(),
        ordered_ids,
        ratio,
        train_rows,
        val_rows,
    })
}

/// Splits a feature table into (train, validation) tables.
pub fn split_table<R: Real>(
    table: &FeatureTable<R>,
    ratio: f64,
) -> Result<(FeatureTable<R>, FeatureTable<R>, CohortSplit)> {
    let split = split_by_time(table.ids(), table.visit_times(), table.labels(), ratio)?;
    let train = table.select_rows(&split.train_rows)?;
    let val = table.select_rows(&split.val_rows)?;
    Ok((train, val, split))
}
