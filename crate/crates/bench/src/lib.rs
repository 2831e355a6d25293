//! Experiment harness for the `nsht` solvers: residual traces, phase
//! transitions, parameter sweeps and noisy recovery over seeded Gaussian
//! problems, with CSV output and JSON provenance.

pub mod certify;
pub mod cli;
pub mod format;
pub mod output;
pub mod run;
pub mod seed;
pub mod spec;

pub use run::{run_grid, run_trace, run_trace_on, CellRecord, TraceReport, TraceRow};
pub use spec::{ExperimentKind, ExperimentSpec, Preset, SpecOverrides};
