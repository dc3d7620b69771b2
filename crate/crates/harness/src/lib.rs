//! Scenario harness for the tracking pipeline: synthetic scene generation,
//! CLEAR-style scoring, and configuration sweeps.

pub mod ablate;
pub mod clear;
pub mod scenario;

pub use ablate::{format_table, run_ablation, AblationRow};
pub use clear::{clear_counts, ClearCounts};
pub use scenario::{
    front_camera, generate_scenario, DepthErrorInjection, FpPlacement, GeneratedScenario,
    MotionModel, ObjectSpec, ScenarioSpec,
};
