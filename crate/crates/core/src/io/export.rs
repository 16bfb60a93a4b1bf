//! Machine-readable trace export (JSON).

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::svn::{Distance, SvnNumber};
use crate::topsis::{rank, CriterionKind, PipelineTrace, RankingEntry, SvnMatrix, WeightSource};

pub const TRACE_SCHEMA: &str = "svn-topsis-trace/1";
pub const DEFAULT_EXPORT_PRECISION: usize = 4;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExportedRank {
    pub name: String,
    pub closeness: f64,
    pub rank: usize,
    pub tied: bool,
}

/// Every trace field rounded to `precision` decimals. Field order is fixed,
/// so identical traces serialize to identical bytes.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TraceExport {
    pub schema: String,
    pub tool_version: String,
    pub input_digest: String,
    pub precision: usize,
    pub dm_weight_source: WeightSource,
    pub distance: Distance,
    pub decision_makers: Vec<String>,
    pub criteria: Vec<String>,
    pub kinds: Vec<CriterionKind>,
    pub alternatives: Vec<String>,
    pub dm_weights: Vec<f64>,
    pub aggregated_matrix: Vec<Vec<[f64; 3]>>,
    pub criteria_weights: Vec<[f64; 3]>,
    pub weighted_matrix: Vec<Vec<[f64; 3]>>,
    pub pis: Vec<[f64; 3]>,
    pub nis: Vec<[f64; 3]>,
    pub sep_plus: Vec<f64>,
    pub sep_minus: Vec<f64>,
    pub closeness: Vec<f64>,
    pub ranking: Vec<ExportedRank>,
}

/// `sha256:<hex>` of the problem text.
pub fn input_digest(text: &str) -> String {
    let hash = Sha256::digest(text.as_bytes());
    let hex: String = hash.iter().map(|b| format!("{b:02x}")).collect();
    format!("sha256:{hex}")
}

pub fn round_to(x: f64, precision: usize) -> f64 {
    let scale = 10f64.powi(precision as i32);
    let r = (x * scale).round() / scale;
    // avoid emitting -0.0
    if r == 0.0 {
        0.0
    } else {
        r
    }
}

fn triple(x: &SvnNumber, p: usize) -> [f64; 3] {
    x.components().map(|v| round_to(v, p))
}

fn triples(xs: &[SvnNumber], p: usize) -> Vec<[f64; 3]> {
    xs.iter().map(|x| triple(x, p)).collect()
}

fn matrix(m: &SvnMatrix, p: usize) -> Vec<Vec<[f64; 3]>> {
    m.iter_rows().map(|row| triples(row, p)).collect()
}

fn reals(xs: &[f64], p: usize) -> Vec<f64> {
    xs.iter().map(|x| round_to(*x, p)).collect()
}

impl TraceExport {
    pub fn from_trace(trace: &PipelineTrace, precision: usize, input_digest: &str) -> Self {
        let p = precision;
        TraceExport {
            schema: TRACE_SCHEMA.to_string(),
            tool_version: env!("CARGO_PKG_VERSION").to_string(),
            input_digest: input_digest.to_string(),
            precision,
            dm_weight_source: trace.dm_weight_source,
            distance: trace.distance,
            decision_makers: trace.decision_makers.clone(),
            criteria: trace.criteria.clone(),
            kinds: trace.kinds.clone(),
            alternatives: trace.alternatives.clone(),
            dm_weights: reals(&trace.dm_weights, p),
            aggregated_matrix: matrix(&trace.aggregated_matrix, p),
            criteria_weights: triples(&trace.criteria_weights, p),
            weighted_matrix: matrix(&trace.weighted_matrix, p),
            pis: triples(&trace.pis, p),
            nis: triples(&trace.nis, p),
            sep_plus: reals(&trace.sep_plus, p),
            sep_minus: reals(&trace.sep_minus, p),
            closeness: reals(&trace.closeness, p),
            ranking: trace
                .ranking
                .iter()
                .map(|e| ExportedRank {
                    name: e.name.clone(),
                    closeness: round_to(e.closeness, p),
                    rank: e.rank,
                    tied: e.tied,
                })
                .collect(),
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("export is always serializable");
        s.push('\n');
        s
    }

    pub fn from_json(text: &str) -> Result<Self, serde_json::Error> {
        serde_json::from_str(text)
    }

    /// Ranks the exported closeness column again.
    pub fn rerank(&self) -> Vec<RankingEntry> {
        rank(&self.closeness, &self.alternatives)
    }
}

/// Serializes a trace for machine consumption.
pub fn emit_trace_export(trace: &PipelineTrace, precision: usize, input_digest: &str) -> String {
    TraceExport::from_trace(trace, precision, input_digest).to_json()
}
