use std::fmt;

use thiserror::Error;

/// Which membership degree of an SVN number a diagnostic refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Component {
    Truth,
    Indeterminacy,
    Falsity,
}

impl fmt::Display for Component {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Component::Truth => "truth",
            Component::Indeterminacy => "indeterminacy",
            Component::Falsity => "falsity",
        })
    }
}

/// Errors raised by the neutrosophic algebra.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum SvnError {
    #[error("{component} degree {value} is outside [0, 1]")]
    OutOfRange { component: Component, value: f64 },
    #[error("scalar multiplier must be positive and finite, got {0}")]
    NonPositiveScalar(f64),
    #[error("weight #{index} is {weight}; weights must be finite and nonnegative")]
    InvalidWeight { index: usize, weight: f64 },
    #[error("cannot aggregate an empty list")]
    EmptyAggregation,
    #[error("all aggregation weights are zero")]
    ZeroWeights,
    #[error("vectors differ in length ({left} vs {right})")]
    LengthMismatch { left: usize, right: usize },
    #[error("separation of empty vectors is undefined")]
    EmptyVector,
}

/// A linguistic term that is not a member of the scale it was looked up in.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("unknown term {label:?} in scale {scale:?}")]
pub struct LookupError {
    pub scale: String,
    pub label: String,
}

/// Problems with constructing a linguistic scale.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum ScaleError {
    #[error("scale {scale:?} has no terms")]
    Empty { scale: String },
    #[error("scale {scale:?}: label {label:?} is defined more than once")]
    DuplicateLabel {
        scale: String,
        label: String,
        /// Position of the term repeating the label.
        term: usize,
    },
    #[error("scale {scale:?}: term #{} has an empty label", term + 1)]
    MissingLabel { scale: String, term: usize },
    #[error("scale {scale:?}: term {label:?}: {source}")]
    InvalidValue {
        scale: String,
        label: String,
        source: SvnError,
    },
}

/// Pipeline step, used to give errors context.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Step {
    DecisionMakerWeights,
    AggregateDecisions,
    CriteriaWeights,
    WeightMatrix,
    IdealSolutions,
    Separations,
    Closeness,
}

impl fmt::Display for Step {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Step::DecisionMakerWeights => "step 1 (decision-maker weights)",
            Step::AggregateDecisions => "step 2 (aggregated decision matrix)",
            Step::CriteriaWeights => "step 3 (criteria weights)",
            Step::WeightMatrix => "step 4 (weighted decision matrix)",
            Step::IdealSolutions => "step 5 (ideal solutions)",
            Step::Separations => "step 6 (separation measures)",
            Step::Closeness => "step 7 (closeness coefficients)",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum PipelineError {
    #[error("{context}: {source}")]
    Lookup {
        context: String,
        source: LookupError,
    },
    #[error("{step}: dimension mismatch: {message}")]
    Dimension { step: Step, message: String },
    #[error("problem has no {0}")]
    EmptyProblem(&'static str),
    #[error("{step}: decision maker #{index} has truth + falsity = 0, weight formula is singular")]
    SingularDecisionMaker { step: Step, index: usize },
    #[error("{step}: alternative #{index} coincides with both ideal solutions")]
    DegenerateAlternative { step: Step, index: usize },
    #[error("invalid decision-maker weight override: {0}")]
    InvalidOverride(String),
    #[error("{step}: {source}")]
    Domain { step: Step, source: SvnError },
}

impl PipelineError {
    /// True for numeric-domain failures, false for input validation failures.
    pub fn is_numeric(&self) -> bool {
        matches!(
            self,
            PipelineError::SingularDecisionMaker { .. }
                | PipelineError::DegenerateAlternative { .. }
                | PipelineError::Domain { .. }
        )
    }
}

/// Problem-file diagnostics. Every variant carries a 1-based line number.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum ParseError {
    #[error("line {line}, column {column}: syntax error: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("line {line} [{section}]: unknown term {label:?} in scale {scale:?}")]
    UnknownTerm {
        line: usize,
        section: String,
        scale: String,
        label: String,
    },
    #[error("line {line} [{section}]: dimension mismatch: {message}")]
    Dimension {
        line: usize,
        section: String,
        message: String,
    },
    #[error("line {line} [{section}]: invalid scale: {source}")]
    InvalidScale {
        line: usize,
        section: String,
        source: ScaleError,
    },
    #[error("line {line} [{section}]: {message}")]
    Invalid {
        line: usize,
        section: String,
        message: String,
    },
}

impl ScaleError {
    /// Index of the offending term, when there is one.
    pub fn term(&self) -> Option<usize> {
        match self {
            ScaleError::DuplicateLabel { term, .. } | ScaleError::MissingLabel { term, .. } => {
                Some(*term)
            }
            _ => None,
        }
    }
}

impl ParseError {
    pub fn line(&self) -> usize {
        match self {
            ParseError::Syntax { line, .. }
            | ParseError::UnknownTerm { line, .. }
            | ParseError::Dimension { line, .. }
            | ParseError::InvalidScale { line, .. }
            | ParseError::Invalid { line, .. } => *line,
        }
    }
}
