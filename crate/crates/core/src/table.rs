//! Patient-by-feature tables and their CSV serialization.
//!
//! The CSV layout is `id,visit_time,label,<feature columns...>` with values
//! printed to 17 significant digits so an f64 survives a write/read cycle
//! bit for bit.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use crate::error::{Error, Result};
use crate::scalar::Real;
use crate::study::parse_visit_time;

#[derive(Debug, Clone, PartialEq)]
pub struct FeatureTable<R: Real> {
    ids: Vec<String>,
    visit_times: Vec<String>,
    labels: Vec<u8>,
    feature_names: Vec<String>,
    /// Row-major `n x p`.
    values: Vec<R>,
}

impl<R: Real> FeatureTable<R> {
    pub fn new(
        ids: Vec<String>,
        visit_times: Vec<String>,
        labels: Vec<u8>,
        feature_names: Vec<String>,
        values: Vec<R>,
    ) -> Result<Self> {
        let n = ids.len();
        if visit_times.len() != n || labels.len() != n {
            return Err(Error::InvalidParam {
                what: "ids, visit_times and labels must have equal length".into(),
            });
        }
        if values.len() != n * feature_names.len() {
            return Err(Error::InvalidParam {
                what: format!(
                    "value buffer holds {} cells, table needs {} x {}",
                    values.len(),
                    n,
                    feature_names.len()
                ),
            });
        }
        if labels.iter().any(|&l| l > 1) {
            return Err(Error::InvalidParam {
                what: "labels must be 0 or 1".into(),
            });
        }
        for field in ids.iter().chain(&visit_times).chain(&feature_names) {
            if field.contains(',') || field.contains('\n') {
                return Err(Error::InvalidParam {
                    what: format!("'{field}' contains a CSV separator"),
                });
            }
        }
        Ok(FeatureTable {
            ids,
            visit_times,
            labels,
            feature_names,
            values,
        })
    }

    pub fn n_rows(&self) -> usize {
        self.ids.len()
    }

    pub fn n_features(&self) -> usize {
        self.feature_names.len()
    }

    pub fn ids(&self) -> &[String] {
        &self.ids
    }

    pub fn visit_times(&self) -> &[String] {
        &self.visit_times
    }

    pub fn labels(&self) -> &[u8] {
        &self.labels
    }

    pub fn feature_names(&self) -> &[String] {
        &self.feature_names
    }

    pub fn row(&self, i: usize) -> &[R] {
        let p = self.n_features();
        &self.values[i * p..(i + 1) * p]
    }

    pub fn value(&self, row: usize, col: usize) -> R {
        self.values[row * self.n_features() + col]
    }

    pub fn column(&self, col: usize) -> Vec<R> {
        (0..self.n_rows()).map(|i| self.value(i, col)).collect()
    }

    pub fn column_index(&self, name: &str) -> Option<usize> {
        self.feature_names.iter().position(|n| n == name)
    }

    /// A new table with the given rows, in the given order.
    pub fn select_rows(&self, rows: &[usize]) -> Result<Self> {
        let p = self.n_features();
        let mut values = Vec::with_capacity(rows.len() * p);
        let mut ids = Vec::with_capacity(rows.len());
        let mut visits = Vec::with_capacity(rows.len());
        let mut labels = Vec::with_capacity(rows.len());
        for &r in rows {
            ids.push(self.ids[r].clone());
            visits.push(self.visit_times[r].clone());
            labels.push(self.labels[r]);
            values.extend_from_slice(self.row(r));
        }
        FeatureTable::new(ids, visits, labels, self.feature_names().to_vec(), values)
    }

    /// Rows reordered by ascending patient id: the canonical order that makes
    /// model fitting independent of input row order.
    pub fn sorted_by_id(&self) -> Result<Self> {
        let mut order: Vec<usize> = (0..self.n_rows()).collect();
        order.sort_by(|&a, &b| self.ids[a].cmp(&self.ids[b]));
        self.select_rows(&order)
    }

    /// Multiplies one raw column by a scalar (test hook for invariance checks).
    pub fn scale_column(&mut self, col: usize, factor: R) {
        let p = self.n_features();
        for i in 0..self.ids.len() {
            self.values[i * p + col] *= factor;
        }
    }

    pub fn to_csv_string(&self) -> String {
        let mut out = String::new();
        out.push_str("id,visit_time,label");
        for name in &self.feature_names {
            out.push(',');
            out.push_str(name);
        }
        out.push('\n');
        for i in 0..self.n_rows() {
            write!(out, "{},{},{}", self.ids[i], self.visit_times[i], self.labels[i]).unwrap();
            for &v in self.row(i) {
                write!(out, ",{:.16e}", v.as_f64()).unwrap();
            }
            out.push('\n');
        }
        out
    }

    pub fn write_csv(&self, path: &Path) -> Result<()> {
        fs::write(path, self.to_csv_string()).map_err(|e| Error::io(path, e))
    }

    pub fn read_csv(path: &Path) -> Result<Self> {
        let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Self::from_csv_str(&text, path)
    }

    pub fn from_csv_str(text: &str, path: &Path) -> Result<Self> {
        let bad = |line: usize, reason: &str| Error::Csv {
            path: path.into(),
            line,
            reason: reason.into(),
        };
        let mut lines = text.lines().enumerate();
        let (_, header) = lines.next().ok_or_else(|| bad(1, "empty file"))?;
        let mut cols = header.split(',');
        if cols.next() != Some("id")
            || cols.next() != Some("visit_time")
            || cols.next() != Some("label")
        {
            return Err(bad(1, "header must start with id,visit_time,label"));
        }
        let feature_names: Vec<String> = cols.map(str::to_string).collect();

        let mut ids = Vec::new();
        let mut visits = Vec::new();
        let mut labels = Vec::new();
        let mut values = Vec::new();
        for (idx, line) in lines {
            if line.is_empty() {
                continue;
            }
            let lineno = idx + 1;
            let mut fields = line.split(',');
            let id = fields.next().ok_or_else(|| bad(lineno, "missing id"))?;
            let visit = fields.next().ok_or_else(|| bad(lineno, "missing visit_time"))?;
            parse_visit_time(visit).map_err(|_| bad(lineno, "unparseable visit_time"))?;
            let label: u8 = fields
                .next()
                .and_then(|f| f.parse().ok())
                .ok_or_else(|| bad(lineno, "label must be 0 or 1"))?;
            let mut count = 0usize;
            for f in fields {
                let v: f64 = f
                    .parse()
                    .map_err(|_| bad(lineno, "malformed feature value"))?;
                if !v.is_finite() {
                    return Err(bad(lineno, "non-finite feature value"));
                }
                values.push(R::c(v));
                count += 1;
            }
            if count != feature_names.len() {
                return Err(bad(lineno, "wrong number of feature columns"));
            }
            ids.push(id.to_string());
            visits.push(visit.to_string());
            labels.push(label);
        }
        FeatureTable::new(ids, visits, labels, feature_names, values)
    }
}
