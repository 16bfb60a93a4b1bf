//! The SVN-TOPSIS group decision procedure.
//!
//! Steps, in order:
//! 1. decision-maker weights from their importance terms,
//! 2. aggregated decision matrix `D` (weighted average over decision makers),
//! 3. criteria weights `W` (same aggregation over criterion importance),
//! 4. weighted matrix `D* = D (x) W`,
//! 5. positive and negative ideal solutions,
//! 6. separations of every alternative from both ideals,
//! 7. closeness coefficients,
//! 8. ranking by descending closeness.
//!
//! Each step is exposed on its own and [`run_pipeline`] chains them, keeping
//! every intermediate in a [`PipelineTrace`].

use serde::{Deserialize, Serialize};

use crate::error::{PipelineError, Step, SvnError};
use crate::exec::Execution;
use crate::linguistic::{builtin_rating_scale, builtin_weight_scale, LinguisticScale};
use crate::svn::{separation_with, weighted_average, Distance, SvnNumber};

/// Closeness coefficients closer than this are reported as a tie.
pub const TIE_TOLERANCE: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CriterionKind {
    Benefit,
    Cost,
}

impl CriterionKind {
    pub fn as_str(self) -> &'static str {
        match self {
            CriterionKind::Benefit => "benefit",
            CriterionKind::Cost => "cost",
        }
    }

    pub fn flipped(self) -> Self {
        match self {
            CriterionKind::Benefit => CriterionKind::Cost,
            CriterionKind::Cost => CriterionKind::Benefit,
        }
    }
}

impl std::str::FromStr for CriterionKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim().to_ascii_lowercase().as_str() {
            "benefit" => Ok(CriterionKind::Benefit),
            "cost" => Ok(CriterionKind::Cost),
            other => Err(format!(
                "criterion kind must be \"benefit\" or \"cost\", got {other:?}"
            )),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct DecisionMaker {
    pub name: String,
    /// Term from the weight scale.
    pub importance: String,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Criterion {
    pub name: String,
    pub kind: CriterionKind,
    /// One weight-scale term per decision maker.
    pub importance: Vec<String>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Alternative {
    pub name: String,
    /// Rating-scale terms, one row per criterion and one column per decision maker.
    pub ratings: Vec<Vec<String>>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct DecisionProblem {
    pub decision_makers: Vec<DecisionMaker>,
    pub criteria: Vec<Criterion>,
    pub alternatives: Vec<Alternative>,
    pub weight_scale: LinguisticScale,
    pub rating_scale: LinguisticScale,
    /// Used verbatim (not renormalized) in place of the derived weights.
    pub dm_weight_override: Option<Vec<f64>>,
}

/// A problem with every term resolved to its SVN number.
#[derive(Debug, Clone, PartialEq)]
pub struct ResolvedProblem {
    /// `k` decision-maker importances.
    pub dm_importance: Vec<SvnNumber>,
    /// `n x k` criterion importances.
    pub criteria_importance: Vec<Vec<SvnNumber>>,
    /// `m x n x k` ratings.
    pub ratings: Vec<Vec<Vec<SvnNumber>>>,
    pub kinds: Vec<CriterionKind>,
}

impl DecisionProblem {
    /// Problem with the built-in scales and no weight override.
    pub fn new(
        decision_makers: Vec<DecisionMaker>,
        criteria: Vec<Criterion>,
        alternatives: Vec<Alternative>,
    ) -> Self {
        DecisionProblem {
            decision_makers,
            criteria,
            alternatives,
            weight_scale: builtin_weight_scale(),
            rating_scale: builtin_rating_scale(),
            dm_weight_override: None,
        }
    }

    pub fn dimensions(&self) -> (usize, usize, usize) {
        (
            self.alternatives.len(),
            self.criteria.len(),
            self.decision_makers.len(),
        )
    }

    /// Checks dimensions and the override, and resolves every term.
    pub fn resolve(&self) -> Result<ResolvedProblem, PipelineError> {
        let (m, n, k) = self.dimensions();
        if k == 0 {
            return Err(PipelineError::EmptyProblem("decision makers"));
        }
        if n == 0 {
            return Err(PipelineError::EmptyProblem("criteria"));
        }
        if m == 0 {
            return Err(PipelineError::EmptyProblem("alternatives"));
        }
        if let Some(weights) = &self.dm_weight_override {
            check_override(weights, k)?;
        }

        let lookup = |scale: &LinguisticScale, label: &str, context: &dyn Fn() -> String| {
            scale
                .resolve(label)
                .map_err(|source| PipelineError::Lookup {
                    context: context(),
                    source,
                })
        };

        let dm_importance = self
            .decision_makers
            .iter()
            .map(|dm| {
                lookup(&self.weight_scale, &dm.importance, &|| {
                    format!("decision maker {:?}", dm.name)
                })
            })
            .collect::<Result<Vec<_>, _>>()?;

        let criteria_importance = self
            .criteria
            .iter()
            .map(|c| {
                if c.importance.len() != k {
                    return Err(PipelineError::Dimension {
                        step: Step::CriteriaWeights,
                        message: format!(
                            "criterion {:?} has {} importance terms for {k} decision makers",
                            c.name,
                            c.importance.len()
                        ),
                    });
                }
                c.importance
                    .iter()
                    .map(|t| lookup(&self.weight_scale, t, &|| format!("criterion {:?}", c.name)))
                    .collect()
            })
            .collect::<Result<Vec<_>, _>>()?;

        let ratings = self
            .alternatives
            .iter()
            .map(|alt| {
                if alt.ratings.len() != n {
                    return Err(PipelineError::Dimension {
                        step: Step::AggregateDecisions,
                        message: format!(
                            "alternative {:?} has {} rating rows for {n} criteria",
                            alt.name,
                            alt.ratings.len()
                        ),
                    });
                }
                alt.ratings
                    .iter()
                    .zip(&self.criteria)
                    .map(|(row, crit)| {
                        if row.len() != k {
                            return Err(PipelineError::Dimension {
                                step: Step::AggregateDecisions,
                                message: format!(
                                    "alternative {:?}, criterion {:?}: {} ratings for {k} decision makers",
                                    alt.name,
                                    crit.name,
                                    row.len()
                                ),
                            });
                        }
                        row.iter()
                            .map(|t| {
                                lookup(
                                    &self.rating_scale,
                                    t,
                                    &|| format!("alternative {:?}, criterion {:?}", alt.name, crit.name),
                                )
                            })
                            .collect()
                    })
                    .collect()
            })
            .collect::<Result<Vec<_>, _>>()?;

        Ok(ResolvedProblem {
            dm_importance,
            criteria_importance,
            ratings,
            kinds: self.criteria.iter().map(|c| c.kind).collect(),
        })
    }
}

fn check_override(weights: &[f64], k: usize) -> Result<(), PipelineError> {
    if weights.len() != k {
        return Err(PipelineError::InvalidOverride(format!(
            "{} weights given for {k} decision makers",
            weights.len()
        )));
    }
    if let Some(w) = weights.iter().find(|w| !(**w > 0.0 && w.is_finite())) {
        return Err(PipelineError::InvalidOverride(format!(
            "weights must be positive, got {w}"
        )));
    }
    Ok(())
}

/// Row-major matrix of SVN numbers.
#[derive(Debug, Clone, PartialEq)]
pub struct SvnMatrix {
    rows: usize,
    cols: usize,
    data: Vec<SvnNumber>,
}

impl SvnMatrix {
    pub fn from_rows(rows: Vec<Vec<SvnNumber>>) -> Result<Self, SvnError> {
        let cols = rows.first().map_or(0, Vec::len);
        if let Some(bad) = rows.iter().find(|r| r.len() != cols) {
            return Err(SvnError::LengthMismatch {
                left: cols,
                right: bad.len(),
            });
        }
        Ok(SvnMatrix {
            rows: rows.len(),
            cols,
            data: rows.into_iter().flatten().collect(),
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> SvnNumber {
        assert!(
            i < self.rows && j < self.cols,
            "index ({i}, {j}) out of bounds"
        );
        self.data[i * self.cols + j]
    }

    pub fn row(&self, i: usize) -> &[SvnNumber] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn iter_rows(&self) -> impl Iterator<Item = &[SvnNumber]> {
        (0..self.rows).map(move |i| self.row(i))
    }

    pub fn column(&self, j: usize) -> impl Iterator<Item = SvnNumber> + '_ {
        (0..self.rows).map(move |i| self.get(i, j))
    }

    pub fn to_rows(&self) -> Vec<Vec<SvnNumber>> {
        self.iter_rows().map(<[SvnNumber]>::to_vec).collect()
    }
}

impl Serialize for SvnMatrix {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        self.to_rows().serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for SvnMatrix {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let rows = Vec::<Vec<SvnNumber>>::deserialize(deserializer)?;
        SvnMatrix::from_rows(rows).map_err(serde::de::Error::custom)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IdealSolutions {
    pub pis: Vec<SvnNumber>,
    pub nis: Vec<SvnNumber>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RankingEntry {
    pub name: String,
    /// Position of the alternative in the problem.
    pub index: usize,
    pub closeness: f64,
    /// 1-based dense rank; tied alternatives share a rank.
    pub rank: usize,
    pub tied: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum WeightSource {
    /// Derived from decision-maker importance terms.
    Formula,
    /// Supplied explicitly.
    Override,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct PipelineOptions {
    pub distance: Distance,
    pub execution: Execution,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PipelineTrace {
    pub decision_makers: Vec<String>,
    pub alternatives: Vec<String>,
    pub criteria: Vec<String>,
    pub kinds: Vec<CriterionKind>,
    pub dm_weight_source: WeightSource,
    pub distance: Distance,
    pub dm_weights: Vec<f64>,
    pub aggregated_matrix: SvnMatrix,
    pub criteria_weights: Vec<SvnNumber>,
    pub weighted_matrix: SvnMatrix,
    pub pis: Vec<SvnNumber>,
    pub nis: Vec<SvnNumber>,
    pub sep_plus: Vec<f64>,
    pub sep_minus: Vec<f64>,
    pub closeness: Vec<f64>,
    pub ranking: Vec<RankingEntry>,
}

/// Step 1: `delta_t = (a_t + b_t a_t / (a_t + c_t)) / sum over all decision makers`.
pub fn dm_weights(importance: &[SvnNumber]) -> Result<Vec<f64>, PipelineError> {
    let step = Step::DecisionMakerWeights;
    if importance.is_empty() {
        return Err(PipelineError::EmptyProblem("decision makers"));
    }
    let raw = importance
        .iter()
        .enumerate()
        .map(|(index, x)| {
            let (a, b, c) = (x.truth(), x.indeterminacy(), x.falsity());
            if a + c == 0.0 {
                return Err(PipelineError::SingularDecisionMaker { step, index });
            }
            Ok(a + b * (a / (a + c)))
        })
        .collect::<Result<Vec<f64>, _>>()?;
    let total: f64 = raw.iter().sum();
    if total == 0.0 {
        return Err(PipelineError::Domain {
            step,
            source: SvnError::ZeroWeights,
        });
    }
    Ok(raw.into_iter().map(|r| r / total).collect())
}

fn check_weights(step: Step, dm_weights: &[f64], k: usize) -> Result<(), PipelineError> {
    if dm_weights.len() != k {
        return Err(PipelineError::Dimension {
            step,
            message: format!(
                "{} decision-maker weights for {k} opinions",
                dm_weights.len()
            ),
        });
    }
    Ok(())
}

/// Step 2: weighted average of the decision makers' ratings for every cell.
///
/// `ratings[i][j][t]` is decision maker `t`'s rating of alternative `i` on criterion `j`.
pub fn aggregate_decisions(
    ratings: &[Vec<Vec<SvnNumber>>],
    dm_weights: &[f64],
) -> Result<SvnMatrix, PipelineError> {
    aggregate_decisions_in(Execution::default(), ratings, dm_weights)
}

fn aggregate_decisions_in(
    exec: Execution,
    ratings: &[Vec<Vec<SvnNumber>>],
    dm_weights: &[f64],
) -> Result<SvnMatrix, PipelineError> {
    let step = Step::AggregateDecisions;
    let n = ratings.first().map_or(0, Vec::len);
    for (i, row) in ratings.iter().enumerate() {
        if row.len() != n {
            return Err(PipelineError::Dimension {
                step,
                message: format!("alternative #{i} has {} criteria, expected {n}", row.len()),
            });
        }
        for cell in row {
            check_weights(step, dm_weights, cell.len())?;
        }
    }
    let rows = exec.try_map_range(ratings.len(), |i| {
        ratings[i]
            .iter()
            .map(|cell| weighted_average(cell, dm_weights))
            .collect::<Result<Vec<_>, _>>()
    });
    let rows = rows.map_err(|source| PipelineError::Domain { step, source })?;
    SvnMatrix::from_rows(rows).map_err(|source| PipelineError::Domain { step, source })
}

/// Step 3: weighted average of each criterion's importance over decision makers.
///
/// `importance[j][t]` is decision maker `t`'s importance for criterion `j`.
pub fn criteria_weights(
    importance: &[Vec<SvnNumber>],
    dm_weights: &[f64],
) -> Result<Vec<SvnNumber>, PipelineError> {
    let step = Step::CriteriaWeights;
    importance
        .iter()
        .map(|row| {
            check_weights(step, dm_weights, row.len())?;
            weighted_average(row, dm_weights)
                .map_err(|source| PipelineError::Domain { step, source })
        })
        .collect()
}

/// Step 4: `d*_ij = w_j (x) d_ij`.
pub fn weight_matrix(d: &SvnMatrix, w: &[SvnNumber]) -> Result<SvnMatrix, PipelineError> {
    weight_matrix_in(Execution::default(), d, w)
}

fn weight_matrix_in(
    exec: Execution,
    d: &SvnMatrix,
    w: &[SvnNumber],
) -> Result<SvnMatrix, PipelineError> {
    if d.cols() != w.len() {
        return Err(PipelineError::Dimension {
            step: Step::WeightMatrix,
            message: format!("{} criteria weights for {} columns", w.len(), d.cols()),
        });
    }
    let data = exec
        .map_range(d.rows(), |i| {
            d.row(i)
                .iter()
                .zip(w)
                .map(|(dij, wj)| *wj * *dij)
                .collect::<Vec<_>>()
        })
        .into_iter()
        .flatten()
        .collect();
    Ok(SvnMatrix {
        rows: d.rows(),
        cols: d.cols(),
        data,
    })
}

/// Step 5: columnwise componentwise extrema.
///
/// Benefit columns take `(max a, min b, min c)` as the positive ideal and
/// `(min a, max b, max c)` as the negative one; cost columns swap the two.
pub fn ideal_solutions(
    dstar: &SvnMatrix,
    kinds: &[CriterionKind],
) -> Result<IdealSolutions, PipelineError> {
    let step = Step::IdealSolutions;
    if dstar.cols() != kinds.len() {
        return Err(PipelineError::Dimension {
            step,
            message: format!(
                "{} criterion kinds for {} columns",
                kinds.len(),
                dstar.cols()
            ),
        });
    }
    if dstar.rows() == 0 {
        return Err(PipelineError::EmptyProblem("alternatives"));
    }
    let (pis, nis) = kinds
        .iter()
        .enumerate()
        .map(|(j, kind)| {
            let mut hi = [f64::NEG_INFINITY; 3];
            let mut lo = [f64::INFINITY; 3];
            for x in dstar.column(j) {
                for (q, v) in x.components().into_iter().enumerate() {
                    hi[q] = hi[q].max(v);
                    lo[q] = lo[q].min(v);
                }
            }
            let best = SvnNumber::from_parts(hi[0], lo[1], lo[2]);
            let worst = SvnNumber::from_parts(lo[0], hi[1], hi[2]);
            match kind {
                CriterionKind::Benefit => (best, worst),
                CriterionKind::Cost => (worst, best),
            }
        })
        .unzip();
    Ok(IdealSolutions { pis, nis })
}

/// Step 6: separation of every row of `D*` from both ideals.
pub fn separations(
    dstar: &SvnMatrix,
    ideal: &IdealSolutions,
    distance: Distance,
) -> Result<(Vec<f64>, Vec<f64>), PipelineError> {
    separations_in(Execution::default(), dstar, ideal, distance)
}

fn separations_in(
    exec: Execution,
    dstar: &SvnMatrix,
    ideal: &IdealSolutions,
    distance: Distance,
) -> Result<(Vec<f64>, Vec<f64>), PipelineError> {
    let step = Step::Separations;
    if ideal.pis.len() != dstar.cols() || ideal.nis.len() != dstar.cols() {
        return Err(PipelineError::Dimension {
            step,
            message: format!(
                "ideal solutions of length {}/{} for {} columns",
                ideal.pis.len(),
                ideal.nis.len(),
                dstar.cols()
            ),
        });
    }
    let pairs = exec.try_map_range(dstar.rows(), |i| {
        let row = dstar.row(i);
        Ok::<_, SvnError>((
            separation_with(row, &ideal.pis, distance)?,
            separation_with(row, &ideal.nis, distance)?,
        ))
    });
    let pairs = pairs.map_err(|source| PipelineError::Domain { step, source })?;
    Ok(pairs.into_iter().unzip())
}

/// Step 7: `CC_i = s_i^- / (s_i^+ + s_i^-)`.
pub fn closeness(s_plus: &[f64], s_minus: &[f64]) -> Result<Vec<f64>, PipelineError> {
    let step = Step::Closeness;
    if s_plus.len() != s_minus.len() {
        return Err(PipelineError::Dimension {
            step,
            message: format!("{} vs {} separations", s_plus.len(), s_minus.len()),
        });
    }
    s_plus
        .iter()
        .zip(s_minus)
        .enumerate()
        .map(|(index, (&plus, &minus))| {
            let total = plus + minus;
            if total <= 0.0 || !total.is_finite() {
                return Err(PipelineError::DegenerateAlternative { step, index });
            }
            Ok((minus / total).clamp(0.0, 1.0))
        })
        .collect()
}

/// Step 8: descending order of closeness; stable, so ties keep input order.
pub fn rank<S: AsRef<str>>(closeness: &[f64], names: &[S]) -> Vec<RankingEntry> {
    assert_eq!(closeness.len(), names.len(), "one name per alternative");
    let mut order: Vec<usize> = (0..closeness.len()).collect();
    order.sort_by(|&x, &y| closeness[y].total_cmp(&closeness[x]));

    let mut entries: Vec<RankingEntry> = Vec::with_capacity(order.len());
    let mut group_start = 0;
    for (pos, &index) in order.iter().enumerate() {
        let cc = closeness[index];
        let joins_group = pos > 0 && entries[group_start].closeness - cc <= TIE_TOLERANCE;
        if !joins_group {
            group_start = pos;
        }
        let rank = if joins_group {
            entries[group_start].rank
        } else {
            entries.last().map_or(1, |e| e.rank + 1)
        };
        if joins_group {
            for e in &mut entries[group_start..] {
                e.tied = true;
            }
        }
        entries.push(RankingEntry {
            name: names[index].as_ref().to_string(),
            index,
            closeness: cc,
            rank,
            tied: joins_group,
        });
    }
    entries
}

pub fn run_pipeline(problem: &DecisionProblem) -> Result<PipelineTrace, PipelineError> {
    run_pipeline_with(problem, &PipelineOptions::default())
}

pub fn run_pipeline_with(
    problem: &DecisionProblem,
    options: &PipelineOptions,
) -> Result<PipelineTrace, PipelineError> {
    let exec = options.execution;
    let resolved = problem.resolve()?;

    let (dm_weight_source, weights) = match &problem.dm_weight_override {
        Some(w) => (WeightSource::Override, w.clone()),
        None => (WeightSource::Formula, dm_weights(&resolved.dm_importance)?),
    };
    let aggregated_matrix = aggregate_decisions_in(exec, &resolved.ratings, &weights)?;
    let criteria_weights = criteria_weights(&resolved.criteria_importance, &weights)?;
    let weighted_matrix = weight_matrix_in(exec, &aggregated_matrix, &criteria_weights)?;
    let ideal = ideal_solutions(&weighted_matrix, &resolved.kinds)?;
    let (sep_plus, sep_minus) = separations_in(exec, &weighted_matrix, &ideal, options.distance)?;
    let closeness = closeness(&sep_plus, &sep_minus)?;

    let alternatives: Vec<String> = problem
        .alternatives
        .iter()
        .map(|a| a.name.clone())
        .collect();
    let ranking = rank(&closeness, &alternatives);

    Ok(PipelineTrace {
        decision_makers: problem
            .decision_makers
            .iter()
            .map(|d| d.name.clone())
            .collect(),
        alternatives,
        criteria: problem.criteria.iter().map(|c| c.name.clone()).collect(),
        kinds: resolved.kinds,
        dm_weight_source,
        distance: options.distance,
        dm_weights: weights,
        aggregated_matrix,
        criteria_weights,
        weighted_matrix,
        pis: ideal.pis,
        nis: ideal.nis,
        sep_plus,
        sep_minus,
        closeness,
        ranking,
    })
}

/// Evaluates independent problems, in parallel across problems when requested.
pub fn run_batch(
    problems: &[DecisionProblem],
    options: &PipelineOptions,
) -> Vec<Result<PipelineTrace, PipelineError>> {
    let inner = PipelineOptions {
        execution: Execution::Sequential,
        ..*options
    };
    options
        .execution
        .map_slice(problems, |p| run_pipeline_with(p, &inner))
}
