//! Shared test support: a straight-line reference implementation working on
//! plain `f64` triples, and a seeded generator of random problems.

#![allow(dead_code)]

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use svn_topsis::topsis::{Alternative, Criterion, CriterionKind, DecisionMaker, DecisionProblem};

pub type Triple = [f64; 3];

pub const WEIGHT_TERMS: [(&str, Triple); 5] = [
    ("VI", [0.90, 0.10, 0.10]),
    ("I", [0.75, 0.25, 0.20]),
    ("M", [0.50, 0.50, 0.50]),
    ("UI", [0.35, 0.75, 0.80]),
    ("VUI", [0.10, 0.90, 0.90]),
];

pub const RATING_TERMS: [(&str, &str, Triple); 11] = [
    ("EG", "EH", [1.00, 0.00, 0.00]),
    ("VVG", "VVH", [0.90, 0.10, 0.10]),
    ("VG", "VH", [0.80, 0.15, 0.20]),
    ("G", "H", [0.70, 0.25, 0.30]),
    ("MG", "MH", [0.60, 0.35, 0.40]),
    ("M", "F", [0.50, 0.50, 0.50]),
    ("MB", "ML", [0.40, 0.65, 0.60]),
    ("B", "L", [0.30, 0.75, 0.70]),
    ("VB", "VL", [0.20, 0.85, 0.80]),
    ("VVB", "VVL", [0.10, 0.90, 0.90]),
    ("EB", "EL", [0.00, 1.00, 1.00]),
];

pub fn weight_value(label: &str) -> Triple {
    let key = label.trim().to_ascii_uppercase();
    WEIGHT_TERMS
        .iter()
        .find(|(abbrev, _)| *abbrev == key)
        .unwrap_or_else(|| panic!("unknown weight term {label}"))
        .1
}

pub fn rating_value(label: &str) -> Triple {
    let key = label.trim().to_ascii_uppercase();
    RATING_TERMS
        .iter()
        .find(|(good, high, _)| *good == key || *high == key)
        .unwrap_or_else(|| panic!("unknown rating term {label}"))
        .2
}

/// Plain-data view of a problem, by term label.
#[derive(Debug, Clone)]
pub struct RawProblem {
    pub dm_terms: Vec<String>,
    /// `n x k`
    pub criteria_terms: Vec<Vec<String>>,
    /// `m x n x k`
    pub ratings: Vec<Vec<Vec<String>>>,
    pub benefit: Vec<bool>,
    pub dm_override: Option<Vec<f64>>,
    pub normalized: bool,
}

#[derive(Debug, Clone)]
pub struct OracleTrace {
    pub dm_weights: Vec<f64>,
    pub d: Vec<Vec<Triple>>,
    pub w: Vec<Triple>,
    pub dstar: Vec<Vec<Triple>>,
    pub pis: Vec<Triple>,
    pub nis: Vec<Triple>,
    pub sep_plus: Vec<f64>,
    pub sep_minus: Vec<f64>,
    pub cc: Vec<f64>,
    /// `(alternative index, rank)` in preference order.
    pub ranking: Vec<(usize, usize)>,
}

pub fn oracle_dm_weights(terms: &[Triple]) -> Vec<f64> {
    let mut raw = Vec::new();
    for t in terms {
        let (a, b, c) = (t[0], t[1], t[2]);
        raw.push(a + b * (a / (a + c)));
    }
    let mut total = 0.0;
    for r in &raw {
        total += r;
    }
    raw.iter().map(|r| r / total).collect()
}

pub fn oracle_wa(values: &[Triple], weights: &[f64]) -> Triple {
    let (mut p1, mut p2, mut p3) = (1.0, 1.0, 1.0);
    for (v, w) in values.iter().zip(weights) {
        p1 *= (1.0 - v[0]).powf(*w);
        p2 *= v[1].powf(*w);
        p3 *= v[2].powf(*w);
    }
    [1.0 - p1, p2, p3]
}

pub fn oracle_mul(x: Triple, y: Triple) -> Triple {
    [
        x[0] * y[0],
        x[1] + y[1] - x[1] * y[1],
        x[2] + y[2] - x[2] * y[2],
    ]
}

pub fn oracle_add(x: Triple, y: Triple) -> Triple {
    [x[0] + y[0] - x[0] * y[0], x[1] * y[1], x[2] * y[2]]
}

pub fn oracle_sep(u: &[Triple], v: &[Triple], normalized: bool) -> f64 {
    let mut sum = 0.0;
    for (x, y) in u.iter().zip(v) {
        for q in 0..3 {
            sum += (x[q] - y[q]) * (x[q] - y[q]);
        }
    }
    let denom = if normalized {
        3.0 * u.len() as f64
    } else {
        3.0
    };
    (sum / denom).sqrt()
}

/// Column-wise ideals of `dstar`; a cost column gets its best and worst swapped.
pub fn oracle_ideals(dstar: &[Vec<Triple>], benefit: &[bool]) -> (Vec<Triple>, Vec<Triple>) {
    let mut pis = Vec::new();
    let mut nis = Vec::new();
    for (j, is_benefit) in benefit.iter().enumerate() {
        let mut best = [f64::NEG_INFINITY, f64::INFINITY, f64::INFINITY];
        let mut worst = [f64::INFINITY, f64::NEG_INFINITY, f64::NEG_INFINITY];
        for row in dstar {
            let x = row[j];
            best[0] = best[0].max(x[0]);
            best[1] = best[1].min(x[1]);
            best[2] = best[2].min(x[2]);
            worst[0] = worst[0].min(x[0]);
            worst[1] = worst[1].max(x[1]);
            worst[2] = worst[2].max(x[2]);
        }
        if *is_benefit {
            pis.push(best);
            nis.push(worst);
        } else {
            pis.push(worst);
            nis.push(best);
        }
    }
    (pis, nis)
}

/// Dense ranking by descending closeness, ties within 1e-12 of the group leader.
pub fn oracle_rank(cc: &[f64]) -> Vec<(usize, usize)> {
    let mut order: Vec<usize> = (0..cc.len()).collect();
    order.sort_by(|&x, &y| cc[y].partial_cmp(&cc[x]).unwrap());
    let mut out = Vec::new();
    let mut leader = f64::NAN;
    let mut rank = 0;
    for i in order {
        if rank == 0 || (leader - cc[i]).abs() > 1e-12 {
            rank += 1;
            leader = cc[i];
        }
        out.push((i, rank));
    }
    out
}

/// Runs every step; `None` when some alternative has both separations zero.
pub fn oracle_run(raw: &RawProblem) -> Option<OracleTrace> {
    let dm_weights = match &raw.dm_override {
        Some(w) => w.clone(),
        None => {
            let terms: Vec<Triple> = raw.dm_terms.iter().map(|t| weight_value(t)).collect();
            oracle_dm_weights(&terms)
        }
    };
    let d: Vec<Vec<Triple>> = raw
        .ratings
        .iter()
        .map(|alt| {
            alt.iter()
                .map(|cell| {
                    let vals: Vec<Triple> = cell.iter().map(|t| rating_value(t)).collect();
                    oracle_wa(&vals, &dm_weights)
                })
                .collect()
        })
        .collect();
    let w: Vec<Triple> = raw
        .criteria_terms
        .iter()
        .map(|row| {
            let vals: Vec<Triple> = row.iter().map(|t| weight_value(t)).collect();
            oracle_wa(&vals, &dm_weights)
        })
        .collect();
    let dstar: Vec<Vec<Triple>> = d
        .iter()
        .map(|row| {
            row.iter()
                .zip(&w)
                .map(|(x, wj)| oracle_mul(*wj, *x))
                .collect()
        })
        .collect();
    let (pis, nis) = oracle_ideals(&dstar, &raw.benefit);
    let sep_plus: Vec<f64> = dstar
        .iter()
        .map(|r| oracle_sep(r, &pis, raw.normalized))
        .collect();
    let sep_minus: Vec<f64> = dstar
        .iter()
        .map(|r| oracle_sep(r, &nis, raw.normalized))
        .collect();
    let mut cc = Vec::new();
    for (p, q) in sep_plus.iter().zip(&sep_minus) {
        if p + q <= 0.0 {
            return None;
        }
        cc.push(q / (p + q));
    }
    let ranking = oracle_rank(&cc);
    Some(OracleTrace {
        dm_weights,
        d,
        w,
        dstar,
        pis,
        nis,
        sep_plus,
        sep_minus,
        cc,
        ranking,
    })
}

/// A random problem in both representations.
#[derive(Debug, Clone)]
pub struct Generated {
    pub problem: DecisionProblem,
    pub raw: RawProblem,
}

fn pick_rating<R: Rng>(rng: &mut R) -> String {
    let (good, high, _) = RATING_TERMS[rng.random_range(0..RATING_TERMS.len())];
    let label = if rng.random_bool(0.5) { good } else { high };
    if rng.random_bool(0.1) {
        label.to_ascii_lowercase()
    } else {
        label.to_string()
    }
}

fn pick_weight<R: Rng>(rng: &mut R) -> String {
    WEIGHT_TERMS[rng.random_range(0..WEIGHT_TERMS.len())]
        .0
        .to_string()
}

pub struct Bounds {
    pub max_dms: usize,
    pub max_criteria: usize,
    pub min_alternatives: usize,
    pub max_alternatives: usize,
}

pub const SMALL: Bounds = Bounds {
    max_dms: 6,
    max_criteria: 8,
    min_alternatives: 2,
    max_alternatives: 8,
};

pub fn generate<R: Rng>(rng: &mut R, bounds: &Bounds) -> Generated {
    let k = rng.random_range(1..=bounds.max_dms);
    let n = rng.random_range(1..=bounds.max_criteria);
    let m = rng.random_range(bounds.min_alternatives..=bounds.max_alternatives);

    let dm_terms: Vec<String> = (0..k).map(|_| pick_weight(rng)).collect();
    let criteria_terms: Vec<Vec<String>> = (0..n)
        .map(|_| (0..k).map(|_| pick_weight(rng)).collect())
        .collect();
    let benefit: Vec<bool> = (0..n).map(|_| rng.random_bool(0.6)).collect();
    let ratings: Vec<Vec<Vec<String>>> = (0..m)
        .map(|_| {
            (0..n)
                .map(|_| (0..k).map(|_| pick_rating(rng)).collect())
                .collect()
        })
        .collect();
    let dm_override = if rng.random_bool(0.25) {
        let raw: Vec<f64> = (0..k).map(|_| rng.random_range(0.05..1.0)).collect();
        let total: f64 = raw.iter().sum();
        Some(raw.iter().map(|w| w / total).collect())
    } else {
        None
    };
    let normalized = rng.random_bool(0.25);

    let mut problem = DecisionProblem::new(
        dm_terms
            .iter()
            .enumerate()
            .map(|(t, term)| DecisionMaker {
                name: format!("DM{}", t + 1),
                importance: term.clone(),
            })
            .collect(),
        criteria_terms
            .iter()
            .zip(&benefit)
            .enumerate()
            .map(|(j, (terms, b))| Criterion {
                name: format!("C{}", j + 1),
                kind: if *b {
                    CriterionKind::Benefit
                } else {
                    CriterionKind::Cost
                },
                importance: terms.clone(),
            })
            .collect(),
        ratings
            .iter()
            .enumerate()
            .map(|(i, r)| Alternative {
                name: format!("A{}", i + 1),
                ratings: r.clone(),
            })
            .collect(),
    );
    problem.dm_weight_override = dm_override.clone();

    Generated {
        problem,
        raw: RawProblem {
            dm_terms,
            criteria_terms,
            ratings,
            benefit,
            dm_override,
            normalized,
        },
    }
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// The supplier-selection example in raw form.
pub fn supplier_raw(dm_override: Option<Vec<f64>>) -> RawProblem {
    let s = |xs: &[&str]| xs.iter().map(|x| x.to_string()).collect::<Vec<_>>();
    RawProblem {
        dm_terms: s(&["VI", "I", "M", "UI"]),
        criteria_terms: vec![
            s(&["VI", "VI", "VI", "I"]),
            s(&["I", "M", "M", "I"]),
            s(&["VI", "VI", "I", "VI"]),
            s(&["I", "I", "M", "UI"]),
            s(&["M", "M", "VI", "VI"]),
        ],
        ratings: vec![
            vec![
                s(&["VG", "MG", "VG", "G"]),
                s(&["G", "G", "MG", "G"]),
                s(&["MG", "MG", "M", "M"]),
                s(&["G", "M", "MG", "M"]),
                s(&["M", "MH", "VH", "M"]),
            ],
            vec![
                s(&["G", "VG", "MG", "MG"]),
                s(&["VG", "MG", "M", "MG"]),
                s(&["VG", "G", "VG", "VG"]),
                s(&["VG", "VG", "M", "G"]),
                s(&["VH", "M", "H", "H"]),
            ],
            vec![
                s(&["M", "G", "MG", "M"]),
                s(&["M", "VG", "G", "G"]),
                s(&["M", "G", "MG", "MG"]),
                s(&["MG", "MG", "MG", "MG"]),
                s(&["H", "H", "M", "MH"]),
            ],
            vec![
                s(&["G", "MG", "G", "MG"]),
                s(&["MG", "M", "VG", "M"]),
                s(&["G", "MG", "G", "MG"]),
                s(&["M", "MB", "MG", "VG"]),
                s(&["M", "M", "MH", "H"]),
            ],
            vec![
                s(&["MG", "G", "VG", "VG"]),
                s(&["G", "G", "MG", "VG"]),
                s(&["MG", "G", "VG", "G"]),
                s(&["MG", "G", "VG", "G"]),
                s(&["H", "VH", "VH", "VH"]),
            ],
        ],
        benefit: vec![true, true, true, true, false],
        dm_override,
        normalized: false,
    }
}

pub fn fixture_text(name: &str) -> String {
    let path = format!("{}/fixtures/{name}", env!("CARGO_MANIFEST_DIR"));
    std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{path}: {e}"))
}

pub fn fixture_problem(name: &str) -> DecisionProblem {
    svn_topsis::io::parse_problem(&fixture_text(name))
        .expect("fixture parses")
        .problem
}

pub fn triple_diff(a: Triple, b: Triple) -> f64 {
    (0..3).map(|q| (a[q] - b[q]).abs()).fold(0.0, f64::max)
}

/// Largest absolute difference between a library trace and the oracle, or
/// a description of the first structural mismatch.
pub fn compare_traces(
    trace: &svn_topsis::topsis::PipelineTrace,
    oracle: &OracleTrace,
) -> Result<f64, String> {
    let mut worst: f64 = 0.0;
    let mut scalar = |label: &str, a: &[f64], b: &[f64]| -> Result<(), String> {
        if a.len() != b.len() {
            return Err(format!("{label}: length {} vs {}", a.len(), b.len()));
        }
        for (x, y) in a.iter().zip(b) {
            worst = worst.max((x - y).abs());
        }
        Ok(())
    };
    scalar("dm_weights", &trace.dm_weights, &oracle.dm_weights)?;
    scalar("sep_plus", &trace.sep_plus, &oracle.sep_plus)?;
    scalar("sep_minus", &trace.sep_minus, &oracle.sep_minus)?;
    scalar("closeness", &trace.closeness, &oracle.cc)?;

    let flat = |rows: Vec<Vec<svn_topsis::SvnNumber>>| -> Vec<Triple> {
        rows.into_iter().flatten().map(|x| x.components()).collect()
    };
    let pairs: [(&str, Vec<Triple>, Vec<Triple>); 5] = [
        (
            "aggregated",
            flat(trace.aggregated_matrix.to_rows()),
            oracle.d.concat(),
        ),
        (
            "criteria weights",
            trace
                .criteria_weights
                .iter()
                .map(|x| x.components())
                .collect(),
            oracle.w.clone(),
        ),
        (
            "weighted",
            flat(trace.weighted_matrix.to_rows()),
            oracle.dstar.concat(),
        ),
        (
            "pis",
            trace.pis.iter().map(|x| x.components()).collect(),
            oracle.pis.clone(),
        ),
        (
            "nis",
            trace.nis.iter().map(|x| x.components()).collect(),
            oracle.nis.clone(),
        ),
    ];
    for (label, a, b) in pairs {
        if a.len() != b.len() {
            return Err(format!("{label}: length {} vs {}", a.len(), b.len()));
        }
        for (x, y) in a.iter().zip(&b) {
            worst = worst.max(triple_diff(*x, *y));
        }
    }

    let ranking: Vec<(usize, usize)> = trace.ranking.iter().map(|e| (e.index, e.rank)).collect();
    if ranking != oracle.ranking {
        return Err(format!(
            "ranking {ranking:?} vs oracle {:?}",
            oracle.ranking
        ));
    }
    Ok(worst)
}
