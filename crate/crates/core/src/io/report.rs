//! Human-readable report.

use std::fmt::Write as _;

use crate::linguistic::LinguisticScale;
use crate::svn::{Distance, SvnNumber};
use crate::topsis::{PipelineTrace, SvnMatrix, WeightSource};

pub const DEFAULT_REPORT_PRECISION: usize = 3;

/// Renders rows as a column-aligned text table. The first column is
/// left-aligned, the rest right-aligned.
pub(crate) fn render_table(headers: &[String], rows: &[Vec<String>]) -> String {
    let cols = headers.len();
    let mut widths: Vec<usize> = headers.iter().map(|h| h.chars().count()).collect();
    for row in rows {
        for (w, cell) in widths.iter_mut().zip(row) {
            *w = (*w).max(cell.chars().count());
        }
    }
    let line = |cells: &[String]| -> String {
        let mut s = String::new();
        for (j, cell) in cells.iter().enumerate().take(cols) {
            if j > 0 {
                s.push_str("  ");
            }
            if j == 0 {
                let _ = write!(s, "{cell:<w$}", w = widths[j]);
            } else {
                let _ = write!(s, "{cell:>w$}", w = widths[j]);
            }
        }
        s.truncate(s.trim_end().len());
        s.push('\n');
        s
    };
    let mut out = line(headers);
    let rule: Vec<String> = widths.iter().map(|w| "-".repeat(*w)).collect();
    out.push_str(&line(&rule));
    for row in rows {
        out.push_str(&line(row));
    }
    out
}

fn heading(out: &mut String, title: &str) {
    let _ = writeln!(out, "\n{title}\n{}", "=".repeat(title.chars().count()));
}

fn svn_cell(x: &SvnNumber, p: usize) -> String {
    format!("{x:.p$}")
}

fn matrix_table(trace: &PipelineTrace, m: &SvnMatrix, p: usize) -> String {
    let mut headers = vec![String::new()];
    headers.extend(trace.criteria.iter().cloned());
    let rows: Vec<Vec<String>> = trace
        .alternatives
        .iter()
        .zip(m.iter_rows())
        .map(|(name, row)| {
            std::iter::once(name.clone())
                .chain(row.iter().map(|x| svn_cell(x, p)))
                .collect()
        })
        .collect();
    render_table(&headers, &rows)
}

/// Full report of a pipeline run, numbers rounded to `precision` decimals.
pub fn emit_report(trace: &PipelineTrace, precision: usize) -> String {
    let p = precision;
    let mut out = String::new();
    let _ = writeln!(
        out,
        "SVN-TOPSIS evaluation: {} alternatives, {} criteria, {} decision makers",
        trace.alternatives.len(),
        trace.criteria.len(),
        trace.decision_makers.len()
    );
    let distance = match trace.distance {
        Distance::Euclidean => "euclidean",
        Distance::Normalized => "euclidean, normalized by criterion count",
    };
    let _ = writeln!(out, "Separation measure: {distance}");

    let source = match trace.dm_weight_source {
        WeightSource::Formula => "derived from importance terms",
        WeightSource::Override => "supplied override",
    };
    heading(&mut out, &format!("Decision-maker weights ({source})"));
    let headers = vec!["Decision maker".to_string(), "Weight".to_string()];
    let rows: Vec<Vec<String>> = trace
        .decision_makers
        .iter()
        .zip(&trace.dm_weights)
        .map(|(name, w)| vec![name.clone(), format!("{w:.prec$}", prec = p + 1)])
        .collect();
    out.push_str(&render_table(&headers, &rows));

    heading(&mut out, "Aggregated decision matrix D");
    out.push_str(&matrix_table(trace, &trace.aggregated_matrix, p));

    heading(&mut out, "Criteria weights W");
    let headers = ["Criterion", "Kind", "Weight"].map(String::from).to_vec();
    let rows: Vec<Vec<String>> = trace
        .criteria
        .iter()
        .zip(&trace.kinds)
        .zip(&trace.criteria_weights)
        .map(|((name, kind), w)| vec![name.clone(), kind.as_str().to_string(), svn_cell(w, p)])
        .collect();
    out.push_str(&render_table(&headers, &rows));

    heading(&mut out, "Weighted decision matrix D*");
    out.push_str(&matrix_table(trace, &trace.weighted_matrix, p));

    heading(&mut out, "Ideal solutions");
    let headers = ["Criterion", "Kind", "PIS", "NIS"]
        .map(String::from)
        .to_vec();
    let rows: Vec<Vec<String>> = (0..trace.criteria.len())
        .map(|j| {
            vec![
                trace.criteria[j].clone(),
                trace.kinds[j].as_str().to_string(),
                svn_cell(&trace.pis[j], p),
                svn_cell(&trace.nis[j], p),
            ]
        })
        .collect();
    out.push_str(&render_table(&headers, &rows));

    heading(&mut out, "Separations, closeness and ranking");
    let headers = ["Alternative", "s+", "s-", "CC", "Rank"]
        .map(String::from)
        .to_vec();
    let mut any_tie = false;
    let rows: Vec<Vec<String>> = trace
        .ranking
        .iter()
        .map(|e| {
            any_tie |= e.tied;
            let rank = if e.tied {
                format!("{}=", e.rank)
            } else {
                e.rank.to_string()
            };
            vec![
                e.name.clone(),
                format!("{:.p$}", trace.sep_plus[e.index]),
                format!("{:.p$}", trace.sep_minus[e.index]),
                format!("{:.p$}", e.closeness),
                rank,
            ]
        })
        .collect();
    out.push_str(&render_table(&headers, &rows));
    if any_tie {
        out.push_str("(= marks alternatives tied on closeness)\n");
    }

    let order: Vec<&str> = trace.ranking.iter().map(|e| e.name.as_str()).collect();
    let _ = writeln!(out, "\nPreference order: {}", order.join(" > "));
    out
}

/// Table of a scale's terms, for the `scales` command.
pub fn emit_scale(scale: &LinguisticScale, title: &str) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "{title} [{}]", scale.name());
    let headers = vec!["Linguistic term".to_string(), "SVN number".to_string()];
    let rows: Vec<Vec<String>> = scale
        .terms()
        .iter()
        .map(|t| vec![t.to_string(), format!("{:.2}", t.value)])
        .collect();
    out.push_str(&render_table(&headers, &rows));
    out
}
