//! Per-alternative plot data: one CSV per alternative comparing it with the
//! ideal solutions, criterion by criterion.

use std::fs;
use std::path::{Path, PathBuf};

use crate::io::export::round_to;
use crate::topsis::PipelineTrace;

pub const PLOT_COLUMNS: [&str; 10] = [
    "criterion",
    "alt_truth",
    "alt_indeterminacy",
    "alt_falsity",
    "pis_truth",
    "pis_indeterminacy",
    "pis_falsity",
    "nis_truth",
    "nis_indeterminacy",
    "nis_falsity",
];

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PlotTable {
    pub file_name: String,
    pub contents: String,
}

fn file_stem(name: &str) -> String {
    let stem: String = name
        .chars()
        .map(|c| {
            if c.is_alphanumeric() || c == '-' || c == '_' {
                c
            } else {
                '_'
            }
        })
        .collect();
    if stem.is_empty() {
        "alternative".to_string()
    } else {
        stem
    }
}

/// One table per alternative, in problem order, values of `D*` and the ideals.
pub fn emit_plot_data(trace: &PipelineTrace, precision: usize) -> Vec<PlotTable> {
    let width = trace.alternatives.len().to_string().len().max(2);
    trace
        .alternatives
        .iter()
        .enumerate()
        .map(|(i, name)| {
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(PLOT_COLUMNS).expect("in-memory write");
            for (j, criterion) in trace.criteria.iter().enumerate() {
                let mut record = vec![criterion.clone()];
                for x in [trace.weighted_matrix.get(i, j), trace.pis[j], trace.nis[j]] {
                    record.extend(
                        x.components()
                            .iter()
                            .map(|v| round_to(*v, precision).to_string()),
                    );
                }
                w.write_record(&record).expect("in-memory write");
            }
            let bytes = w.into_inner().expect("in-memory flush");
            PlotTable {
                file_name: format!("{:0width$}_{}.csv", i + 1, file_stem(name)),
                contents: String::from_utf8(bytes).expect("csv output is utf-8"),
            }
        })
        .collect()
}

/// Writes the plot tables into `dir`, creating it if needed.
pub fn write_plot_data(
    trace: &PipelineTrace,
    dir: &Path,
    precision: usize,
) -> std::io::Result<Vec<PathBuf>> {
    fs::create_dir_all(dir)?;
    emit_plot_data(trace, precision)
        .into_iter()
        .map(|t| {
            let path = dir.join(&t.file_name);
            fs::write(&path, t.contents)?;
            Ok(path)
        })
        .collect()
}
