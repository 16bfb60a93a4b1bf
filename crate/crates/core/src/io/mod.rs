//! Problem files, reports, trace exports and plot data.

pub mod export;
pub mod plot;
pub mod problem;
pub mod report;

pub use export::{emit_trace_export, input_digest, TraceExport, DEFAULT_EXPORT_PRECISION};
pub use plot::{emit_plot_data, write_plot_data, PlotTable};
pub use problem::{parse_problem, serialize_problem, FileOptions, ProblemFile};
pub use report::{emit_report, emit_scale, DEFAULT_REPORT_PRECISION};
