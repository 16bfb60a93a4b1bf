//! Single-valued neutrosophic (SVN) arithmetic and SVN-TOPSIS group decision making.
//!
//! Decision makers rate alternatives against criteria using linguistic terms.
//! Each term maps to an [`SvnNumber`] through a [`LinguisticScale`]; the
//! [`topsis`] pipeline aggregates the opinions, builds positive and negative
//! ideal solutions and ranks alternatives by relative closeness.
//!
//! ```
//! use svn_topsis::io::parse_problem;
//! use svn_topsis::topsis::run_pipeline;
//!
//! let file = parse_problem(include_str!("../fixtures/supplier_selection.toml")).unwrap();
//! let trace = run_pipeline(&file.problem).unwrap();
//! assert_eq!(trace.ranking.len(), 5);
//! ```

pub mod error;
pub mod exec;
pub mod io;
pub mod linguistic;
pub mod svn;
pub mod topsis;

pub use error::{LookupError, ParseError, PipelineError, ScaleError, Step, SvnError};
pub use exec::Execution;
pub use linguistic::{builtin_rating_scale, builtin_weight_scale, resolve_term, LinguisticScale};
pub use svn::{separation, separation_with, svnwa, Distance, SvnNumber, WeightedSvn};
pub use topsis::{
    run_batch, run_pipeline, run_pipeline_with, CriterionKind, DecisionProblem, PipelineOptions,
    PipelineTrace, RankingEntry,
};
