//! bevtrack-core: CPU-only 3D multi-object tracking by detection.
//!
//! The pipeline tracks 7-DOF boxes in global coordinates with three decoupled
//! Kalman filters per object (position, size, heading), associates detections
//! to tracks with a rotated-IoU similarity blended over forward and backward
//! constant-velocity predictions, and falls back to an image-plane matching
//! stage for detections with large depth errors. A metrics module scores the
//! smoothness and accuracy of estimated velocities.

pub mod association;
pub mod baseversion;
pub mod config;
pub mod filters;
pub mod geometry;
pub mod motion;
pub mod tracker;

pub use baseversion::{
    parse_scene, read_tracking_output, serialize_scene, write_scene, write_tracking_output,
    Category, DetectionBox, FrameRecord, LifecycleState, OutputFrame, ParseError, SceneRecord,
    TrackedBox,
};
pub use association::{two_stage_match, AssocConfig, CostKind, MatchSet};
pub use config::PerCategory;
pub use geometry::{Box7, GeometryError, IouWeights, Rect2D};
pub use motion::{evaluate_motion, MotionError, MotionEvalConfig, MotionReport};
pub use tracker::{run_scene, TrackError, Tracker, TrackerConfig};
