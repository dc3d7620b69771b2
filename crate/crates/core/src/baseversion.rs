//! The BaseVersion scene format and the tracking output format.
//!
//! A scene is a single JSON document: ordered frames, each carrying global
//! 7-DOF detections plus coordinate-frame bookkeeping (ego pose, optional
//! camera calibrations). Tracking output is NDJSON, one frame per line.
//! Field names and layout are documented in FORMATS.md at the repository
//! root.
//!
//! Parsing is strict: syntax problems, schema problems and value-level
//! invariant problems are reported as distinct error kinds so callers can
//! tell a truncated file from a bad quaternion.

use std::fmt;
use std::path::Path;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::geometry::{wrap_angle, Box7};

#[derive(Debug, Error)]
pub enum ParseError {
    #[error("failed to read {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("malformed document: {0}")]
    MalformedDocument(String),
    #[error("schema violation: {0}")]
    SchemaViolation(String),
    #[error("invariant violation at {location}: {message}")]
    InvariantViolation { location: String, message: String },
    #[error("duplicate track id {track_id} in frame {frame_index}")]
    DuplicateTrackId { track_id: u64, frame_index: u64 },
}

/// Closed category vocabulary shared by every scene.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Category {
    Car,
    Truck,
    Bus,
    Trailer,
    Motorcycle,
    Bicycle,
    Pedestrian,
    Cyclist,
}

impl Category {
    pub const ALL: [Category; 8] = [
        Category::Car,
        Category::Truck,
        Category::Bus,
        Category::Trailer,
        Category::Motorcycle,
        Category::Bicycle,
        Category::Pedestrian,
        Category::Cyclist,
    ];

    /// Vulnerable road users get the shorter track lifecycle.
    pub fn is_vulnerable(&self) -> bool {
        matches!(
            self,
            Category::Pedestrian | Category::Cyclist | Category::Bicycle | Category::Motorcycle
        )
    }

    pub fn name(&self) -> &'static str {
        match self {
            Category::Car => "car",
            Category::Truck => "truck",
            Category::Bus => "bus",
            Category::Trailer => "trailer",
            Category::Motorcycle => "motorcycle",
            Category::Bicycle => "bicycle",
            Category::Pedestrian => "pedestrian",
            Category::Cyclist => "cyclist",
        }
    }
}

impl fmt::Display for Category {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// One detection in global coordinates.
///
/// `global_yaw` is authoritative for heading; the quaternion is carried for
/// round-tripping and validated for consistency on parse. The `*_measured`
/// flags record whether velocity/acceleration were present in the source
/// document or zero-defaulted.
#[derive(Debug, Clone, PartialEq)]
pub struct DetectionBox {
    pub score: f64,
    pub category: Category,
    pub global_xyz: [f64; 3],
    pub lwh: [f64; 3],
    /// Unit quaternion, [w, x, y, z].
    pub global_orientation: [f64; 4],
    pub global_yaw: f64,
    pub global_velocity: [f64; 2],
    pub global_acceleration: [f64; 2],
    pub velocity_measured: bool,
    pub acceleration_measured: bool,
}

impl DetectionBox {
    pub fn box7(&self) -> Box7 {
        Box7 {
            x: self.global_xyz[0],
            y: self.global_xyz[1],
            z: self.global_xyz[2],
            l: self.lwh[0],
            w: self.lwh[1],
            h: self.lwh[2],
            theta: self.global_yaw,
        }
    }

    pub fn speed(&self) -> f64 {
        self.global_velocity[0].hypot(self.global_velocity[1])
    }

    /// Quaternion for a pure yaw rotation, [w, x, y, z].
    pub fn orientation_from_yaw(yaw: f64) -> [f64; 4] {
        [(yaw / 2.0).cos(), 0.0, 0.0, (yaw / 2.0).sin()]
    }
}

/// Pinhole camera: intrinsics plus the rigid transform from global
/// coordinates into the camera frame (z forward, x right, y down).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CameraCalib {
    pub camera_id: String,
    pub intrinsics: [[f64; 3]; 3],
    pub global_to_camera: [[f64; 4]; 4],
    /// [width, height] in pixels.
    pub image_size: [u32; 2],
}

impl CameraCalib {
    pub fn fx(&self) -> f64 {
        self.intrinsics[0][0]
    }

    pub fn fy(&self) -> f64 {
        self.intrinsics[1][1]
    }

    pub fn cx(&self) -> f64 {
        self.intrinsics[0][2]
    }

    pub fn cy(&self) -> f64 {
        self.intrinsics[1][2]
    }

    pub fn global_to_camera_point(&self, p: [f64; 3]) -> [f64; 3] {
        let m = &self.global_to_camera;
        let mut out = [0.0; 3];
        for (r, row) in m.iter().take(3).enumerate() {
            out[r] = row[0] * p[0] + row[1] * p[1] + row[2] * p[2] + row[3];
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct FrameRecord {
    pub frame_index: u64,
    pub timestamp: f64,
    pub token: String,
    pub detections: Vec<DetectionBox>,
    pub ego_to_global: [[f64; 4]; 4],
    pub camera_calibrations: Vec<CameraCalib>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SceneRecord {
    pub scene_id: String,
    pub frames: Vec<FrameRecord>,
}

// Serde mirror of the on-disk layout. Absent velocity/acceleration parse as
// None and serialize back as null, which keeps round-trips byte-stable.
#[derive(Serialize, Deserialize)]
struct RawScene {
    scene_id: String,
    frames: Vec<RawFrame>,
}

#[derive(Serialize, Deserialize)]
struct RawFrame {
    frame_index: u64,
    timestamp: f64,
    token: String,
    detections: Vec<RawBox>,
    ego_to_global: [[f64; 4]; 4],
    #[serde(default)]
    camera_calibrations: Vec<CameraCalib>,
}

#[derive(Serialize, Deserialize)]
struct RawBox {
    detection_score: f64,
    category: Category,
    global_xyz: [f64; 3],
    lwh: [f64; 3],
    global_orientation: [f64; 4],
    global_yaw: f64,
    #[serde(default)]
    global_velocity: Option<[f64; 2]>,
    #[serde(default)]
    global_acceleration: Option<[f64; 2]>,
}

pub fn parse_scene(path: impl AsRef<Path>) -> Result<SceneRecord, ParseError> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path).map_err(|source| ParseError::Io {
        path: path.display().to_string(),
        source,
    })?;
    parse_scene_str(&text)
}

pub fn parse_scene_str(text: &str) -> Result<SceneRecord, ParseError> {
    let value: serde_json::Value =
        serde_json::from_str(text).map_err(|e| ParseError::MalformedDocument(e.to_string()))?;
    let raw: RawScene =
        serde_json::from_value(value).map_err(|e| ParseError::SchemaViolation(e.to_string()))?;
    validate_and_convert(raw)
}

fn validate_and_convert(raw: RawScene) -> Result<SceneRecord, ParseError> {
    let mut frames = Vec::with_capacity(raw.frames.len());
    let mut prev: Option<(u64, f64)> = None;
    for rf in raw.frames {
        if let Some((prev_index, prev_ts)) = prev {
            if rf.frame_index <= prev_index {
                return Err(ParseError::SchemaViolation(format!(
                    "frames out of order: frame_index {} follows {}",
                    rf.frame_index, prev_index
                )));
            }
            if rf.timestamp <= prev_ts {
                return Err(ParseError::SchemaViolation(format!(
                    "frames out of order: timestamp {} follows {}",
                    rf.timestamp, prev_ts
                )));
            }
        }
        prev = Some((rf.frame_index, rf.timestamp));
        frames.push(validate_frame(rf)?);
    }
    Ok(SceneRecord { scene_id: raw.scene_id, frames })
}

fn validate_frame(rf: RawFrame) -> Result<FrameRecord, ParseError> {
    let at_frame = |message: String| ParseError::InvariantViolation {
        location: format!("frame {}", rf.frame_index),
        message,
    };
    if !(rf.timestamp.is_finite() && rf.timestamp >= 0.0) {
        return Err(at_frame(format!("timestamp must be non-negative, got {}", rf.timestamp)));
    }
    check_rotation_block(&rf.ego_to_global)
        .map_err(|m| at_frame(format!("ego_to_global {m}")))?;
    for cam in &rf.camera_calibrations {
        if cam.fx() <= 0.0 || cam.fy() <= 0.0 {
            return Err(at_frame(format!(
                "camera {} focal lengths must be positive",
                cam.camera_id
            )));
        }
        if cam.image_size[0] == 0 || cam.image_size[1] == 0 {
            return Err(at_frame(format!(
                "camera {} image_size must be positive",
                cam.camera_id
            )));
        }
    }
    let mut detections = Vec::with_capacity(rf.detections.len());
    for (i, rb) in rf.detections.into_iter().enumerate() {
        detections.push(validate_box(rb, rf.frame_index, i)?);
    }
    Ok(FrameRecord {
        frame_index: rf.frame_index,
        timestamp: rf.timestamp,
        token: rf.token,
        detections,
        ego_to_global: rf.ego_to_global,
        camera_calibrations: rf.camera_calibrations,
    })
}

fn validate_box(rb: RawBox, frame_index: u64, det_index: usize) -> Result<DetectionBox, ParseError> {
    let fail = |message: String| ParseError::InvariantViolation {
        location: format!("frame {frame_index}, detection {det_index}"),
        message,
    };
    if !(rb.detection_score >= 0.0 && rb.detection_score <= 1.0) {
        return Err(fail(format!("detection_score must lie in [0, 1], got {}", rb.detection_score)));
    }
    if rb.lwh.iter().any(|v| !(v.is_finite() && *v > 0.0)) {
        return Err(fail(format!("lwh must be strictly positive, got {:?}", rb.lwh)));
    }
    let pi = std::f64::consts::PI;
    if !(rb.global_yaw > -pi && rb.global_yaw <= pi) {
        return Err(fail(format!("global_yaw must lie in (-pi, pi], got {}", rb.global_yaw)));
    }
    let [qw, qx, qy, qz] = rb.global_orientation;
    let norm = (qw * qw + qx * qx + qy * qy + qz * qz).sqrt();
    if (norm - 1.0).abs() > 1e-6 {
        return Err(fail(format!("global_orientation must be a unit quaternion, norm {norm}")));
    }
    let yaw_from_quat = (2.0 * (qw * qz + qx * qy)).atan2(1.0 - 2.0 * (qy * qy + qz * qz));
    if wrap_angle(yaw_from_quat - rb.global_yaw).abs() > 1e-4 {
        return Err(fail(format!(
            "global_yaw {} inconsistent with quaternion yaw {}",
            rb.global_yaw, yaw_from_quat
        )));
    }
    if rb.global_velocity.is_none() {
        log::warn!(
            "frame {frame_index}, detection {det_index}: global_velocity absent, defaulting to zero"
        );
    }
    if rb.global_acceleration.is_none() {
        log::warn!(
            "frame {frame_index}, detection {det_index}: global_acceleration absent, defaulting to zero"
        );
    }
    Ok(DetectionBox {
        score: rb.detection_score,
        category: rb.category,
        global_xyz: rb.global_xyz,
        lwh: rb.lwh,
        global_orientation: rb.global_orientation,
        global_yaw: rb.global_yaw,
        global_velocity: rb.global_velocity.unwrap_or([0.0, 0.0]),
        global_acceleration: rb.global_acceleration.unwrap_or([0.0, 0.0]),
        velocity_measured: rb.global_velocity.is_some(),
        acceleration_measured: rb.global_acceleration.is_some(),
    })
}

// Max deviation of R^T R from identity over the 3x3 rotation block.
fn check_rotation_block(m: &[[f64; 4]; 4]) -> Result<(), String> {
    let mut worst = 0.0f64;
    for i in 0..3 {
        for j in 0..3 {
            let dot: f64 = (0..3).map(|k| m[k][i] * m[k][j]).sum();
            let target = if i == j { 1.0 } else { 0.0 };
            worst = worst.max((dot - target).abs());
        }
    }
    if worst > 1e-6 {
        Err(format!("rotation block is not orthonormal (deviation {worst:.2e})"))
    } else {
        Ok(())
    }
}

fn to_raw(scene: &SceneRecord) -> RawScene {
    RawScene {
        scene_id: scene.scene_id.clone(),
        frames: scene
            .frames
            .iter()
            .map(|f| RawFrame {
                frame_index: f.frame_index,
                timestamp: f.timestamp,
                token: f.token.clone(),
                detections: f
                    .detections
                    .iter()
                    .map(|b| RawBox {
                        detection_score: b.score,
                        category: b.category,
                        global_xyz: b.global_xyz,
                        lwh: b.lwh,
                        global_orientation: b.global_orientation,
                        global_yaw: b.global_yaw,
                        global_velocity: b.velocity_measured.then_some(b.global_velocity),
                        global_acceleration: b
                            .acceleration_measured
                            .then_some(b.global_acceleration),
                    })
                    .collect(),
                ego_to_global: f.ego_to_global,
                camera_calibrations: f.camera_calibrations.clone(),
            })
            .collect(),
    }
}

/// Canonical serialization: pretty-printed JSON, stable field order, trailing
/// newline. `parse_scene_str(serialize_scene(s))` reproduces `s` exactly.
pub fn serialize_scene(scene: &SceneRecord) -> String {
    let mut s = serde_json::to_string_pretty(&to_raw(scene)).expect("scene serialization");
    s.push('\n');
    s
}

pub fn write_scene(scene: &SceneRecord, path: impl AsRef<Path>) -> Result<(), ParseError> {
    let path = path.as_ref();
    std::fs::write(path, serialize_scene(scene)).map_err(|source| ParseError::Io {
        path: path.display().to_string(),
        source,
    })
}

/// Track lifecycle as visible in the output stream. Coasted boxes (emitted
/// for a frame the track was not matched in) are tagged `lost`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum LifecycleState {
    Tentative,
    Confirmed,
    Lost,
}

/// One tracked box as emitted per frame. Velocity and acceleration are the
/// tracker's estimates, not the raw detection values.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrackedBox {
    pub track_id: u64,
    pub category: Category,
    pub global_xyz: [f64; 3],
    pub lwh: [f64; 3],
    pub global_yaw: f64,
    pub score: f64,
    pub velocity: [f64; 2],
    pub acceleration: [f64; 2],
    pub state: LifecycleState,
}

/// One NDJSON line of tracking output.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OutputFrame {
    pub scene_id: String,
    pub frame_index: u64,
    pub timestamp: f64,
    pub boxes: Vec<TrackedBox>,
}

/// Serializes tracking output as NDJSON, one frame object per line.
/// Rejects frames containing a repeated track id.
pub fn serialize_tracking_output(frames: &[OutputFrame]) -> Result<String, ParseError> {
    let mut out = String::new();
    for frame in frames {
        let mut seen = std::collections::BTreeSet::new();
        for b in &frame.boxes {
            if !seen.insert(b.track_id) {
                return Err(ParseError::DuplicateTrackId {
                    track_id: b.track_id,
                    frame_index: frame.frame_index,
                });
            }
        }
        out.push_str(&serde_json::to_string(frame).expect("output frame serialization"));
        out.push('\n');
    }
    Ok(out)
}

pub fn write_tracking_output(frames: &[OutputFrame], path: impl AsRef<Path>) -> Result<(), ParseError> {
    let path = path.as_ref();
    let text = serialize_tracking_output(frames)?;
    std::fs::write(path, text).map_err(|source| ParseError::Io {
        path: path.display().to_string(),
        source,
    })
}

pub fn read_tracking_output(path: impl AsRef<Path>) -> Result<Vec<OutputFrame>, ParseError> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path).map_err(|source| ParseError::Io {
        path: path.display().to_string(),
        source,
    })?;
    parse_tracking_output_str(&text)
}

pub fn parse_tracking_output_str(text: &str) -> Result<Vec<OutputFrame>, ParseError> {
    let mut frames = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        if line.trim().is_empty() {
            continue;
        }
        let value: serde_json::Value = serde_json::from_str(line).map_err(|e| {
            ParseError::MalformedDocument(format!("line {}: {e}", lineno + 1))
        })?;
        let frame: OutputFrame = serde_json::from_value(value).map_err(|e| {
            ParseError::SchemaViolation(format!("line {}: {e}", lineno + 1))
        })?;
        frames.push(frame);
    }
    Ok(frames)
}

/// The identity pose, for scenes expressed directly in global coordinates.
pub fn identity_pose() -> [[f64; 4]; 4] {
    let mut m = [[0.0; 4]; 4];
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = 1.0;
    }
    m
}
