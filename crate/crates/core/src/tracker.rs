//! Track lifecycle and the per-frame tracking step.
//!
//! Each frame: snapshot every track's last filtered box for association,
//! advance the filters to the new timestamp, prune and de-duplicate the
//! detections, run the two-stage matcher, then apply the match result:
//! matched tracks absorb their detection, missed tracks coast until their
//! miss budget runs out, and leftover detections seed new tracks.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::association::{two_stage_match, AssocConfig, TrackState};
use crate::baseversion::{
    Category, DetectionBox, FrameRecord, LifecycleState, OutputFrame, SceneRecord, TrackedBox,
};
use crate::config::PerCategory;
use crate::filters::{NoiseConfig, TrackFilters};
use crate::geometry::{ro_iou, GeometryError};

#[derive(Debug, Error)]
pub enum TrackError {
    #[error("frame {frame_index}: timestamp {timestamp} does not advance past {previous}")]
    NonMonotonicTimestamp { frame_index: u64, timestamp: f64, previous: f64 },
    #[error("invalid tracker config: {0}")]
    InvalidConfig(String),
    #[error(transparent)]
    Geometry(#[from] GeometryError),
}

/// Birth, confirmation and death policy.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LifecycleConfig {
    /// Consecutive-hit count at which a tentative track becomes confirmed.
    /// The spawning detection counts as the first hit.
    pub confirm_hits: PerCategory<u32>,
    /// A track is deleted once its miss streak exceeds this.
    pub max_misses: PerCategory<u32>,
    /// Detections scoring below this are discarded before matching.
    pub score_threshold: f64,
    /// Unmatched detections need at least this score to start a track.
    pub spawn_threshold: f64,
    /// Rotated-IoU above which a lower-scoring same-category detection is
    /// suppressed.
    pub nms_iou_threshold: f64,
}

impl Default for LifecycleConfig {
    fn default() -> Self {
        let mut max_misses = PerCategory::uniform(3);
        for cat in [
            Category::Pedestrian,
            Category::Cyclist,
            Category::Bicycle,
            Category::Motorcycle,
        ] {
            max_misses = max_misses.with_override(cat, 2);
        }
        LifecycleConfig {
            confirm_hits: PerCategory::uniform(2),
            max_misses,
            score_threshold: 0.3,
            spawn_threshold: 0.3,
            nms_iou_threshold: 0.7,
        }
    }
}

impl LifecycleConfig {
    pub fn validate(&self) -> Result<(), String> {
        let hits =
            std::iter::once(self.confirm_hits.default).chain(self.confirm_hits.overrides.values().copied());
        for h in hits {
            if h == 0 {
                return Err("confirm_hits must be at least 1".into());
            }
        }
        for (name, v) in [
            ("score_threshold", self.score_threshold),
            ("spawn_threshold", self.spawn_threshold),
        ] {
            if !(0.0..=1.0).contains(&v) {
                return Err(format!("{name} must lie in [0, 1], got {v}"));
            }
        }
        if !(self.nms_iou_threshold > 0.0 && self.nms_iou_threshold <= 1.0) {
            return Err(format!(
                "nms_iou_threshold must lie in (0, 1], got {}",
                self.nms_iou_threshold
            ));
        }
        Ok(())
    }
}

/// Switches that change what the tracker consumes and emits, not how it
/// matches.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RuntimeConfig {
    /// Use camera calibrations for the image-plane rescue stage.
    pub rv_enabled: bool,
    /// Also emit confirmed tracks that missed this frame, flagged `lost`.
    pub emit_coasted: bool,
}

impl Default for RuntimeConfig {
    fn default() -> Self {
        RuntimeConfig { rv_enabled: true, emit_coasted: false }
    }
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(default)]
pub struct TrackerConfig {
    pub lifecycle: LifecycleConfig,
    pub association: AssocConfig,
    pub noise: NoiseConfig,
    pub runtime: RuntimeConfig,
}

impl TrackerConfig {
    pub fn validate(&self) -> Result<(), TrackError> {
        self.lifecycle.validate().map_err(TrackError::InvalidConfig)?;
        self.association.validate().map_err(TrackError::InvalidConfig)?;
        self.noise.validate().map_err(TrackError::InvalidConfig)?;
        Ok(())
    }
}

#[derive(Debug)]
struct Track {
    id: u64,
    category: Category,
    filters: TrackFilters,
    state: LifecycleState,
    hits: u32,
    misses: u32,
    last_detection: DetectionBox,
    updated_this_frame: bool,
}

impl Track {
    /// Association view: the last filtered box and planar velocity.
    fn assoc_state(&self) -> TrackState {
        let [x, y] = self.filters.position.position();
        let [l, w] = self.filters.size.lw();
        TrackState {
            id: self.id,
            category: self.category,
            box7: crate::geometry::Box7::new(
                x,
                y,
                self.last_detection.global_xyz[2],
                l,
                w,
                self.last_detection.lwh[2],
                self.filters.heading.yaw(),
            ),
            velocity: self.filters.position.velocity(),
        }
    }

    fn emit(&self) -> TrackedBox {
        let [x, y] = self.filters.position.position();
        let [l, w] = self.filters.size.lw();
        TrackedBox {
            track_id: self.id,
            category: self.category,
            global_xyz: [x, y, self.last_detection.global_xyz[2]],
            lwh: [l, w, self.last_detection.lwh[2]],
            global_yaw: self.filters.heading.yaw(),
            score: self.last_detection.score,
            velocity: self.filters.position.velocity(),
            acceleration: self.filters.position.acceleration(),
            state: if self.updated_this_frame {
                LifecycleState::Confirmed
            } else {
                LifecycleState::Lost
            },
        }
    }
}

pub struct Tracker {
    config: TrackerConfig,
    scene_id: String,
    tracks: Vec<Track>,
    next_id: u64,
    last_timestamp: Option<f64>,
}

impl Tracker {
    pub fn new(config: TrackerConfig, scene_id: impl Into<String>) -> Result<Self, TrackError> {
        config.validate()?;
        Ok(Tracker {
            config,
            scene_id: scene_id.into(),
            tracks: Vec::new(),
            next_id: 1,
            last_timestamp: None,
        })
    }

    pub fn active_tracks(&self) -> usize {
        self.tracks.len()
    }

    /// Process one frame and return the confirmed tracks visible in it.
    pub fn step(&mut self, frame: &FrameRecord) -> Result<OutputFrame, TrackError> {
        let dt = match self.last_timestamp {
            Some(prev) if frame.timestamp <= prev => {
                return Err(TrackError::NonMonotonicTimestamp {
                    frame_index: frame.frame_index,
                    timestamp: frame.timestamp,
                    previous: prev,
                });
            }
            Some(prev) => frame.timestamp - prev,
            None => 0.0,
        };
        self.last_timestamp = Some(frame.timestamp);

        let assoc_states: Vec<TrackState> = self.tracks.iter().map(Track::assoc_state).collect();

        if dt > 0.0 {
            for t in &mut self.tracks {
                let noise = self.config.noise.per_category.get(t.category);
                t.filters.predict(dt, noise);
            }
        }

        let dets = preprocess(&frame.detections, &self.config.lifecycle)?;
        let no_cams: Vec<crate::baseversion::CameraCalib> = Vec::new();
        let cameras = if self.config.runtime.rv_enabled {
            frame.camera_calibrations.as_slice()
        } else {
            no_cams.as_slice()
        };
        let matches = two_stage_match(&dets, &assoc_states, cameras, dt, &self.config.association)?;

        for t in &mut self.tracks {
            t.updated_this_frame = false;
        }
        for (det_idx, track_id) in &matches.pairs {
            let det = &dets[*det_idx];
            let track = self
                .tracks
                .iter_mut()
                .find(|t| t.id == *track_id)
                .expect("matched track id is live");
            track.filters.update(det, &self.config.noise);
            track.last_detection = det.clone();
            track.hits += 1;
            track.misses = 0;
            track.updated_this_frame = true;
            if track.state == LifecycleState::Tentative
                && track.hits >= *self.config.lifecycle.confirm_hits.get(track.category)
            {
                track.state = LifecycleState::Confirmed;
            }
        }
        for id in &matches.unmatched_tracks {
            let track = self
                .tracks
                .iter_mut()
                .find(|t| t.id == *id)
                .expect("unmatched track id is live");
            track.misses += 1;
        }
        let max_misses = &self.config.lifecycle.max_misses;
        self.tracks.retain(|t| t.misses <= *max_misses.get(t.category));

        for det_idx in &matches.unmatched_detections {
            let det = &dets[*det_idx];
            if det.score < self.config.lifecycle.spawn_threshold {
                continue;
            }
            let hits = 1;
            let state = if hits >= *self.config.lifecycle.confirm_hits.get(det.category) {
                LifecycleState::Confirmed
            } else {
                LifecycleState::Tentative
            };
            self.tracks.push(Track {
                id: self.next_id,
                category: det.category,
                filters: TrackFilters::init_from_detection(det, &self.config.noise),
                state,
                hits,
                misses: 0,
                last_detection: det.clone(),
                updated_this_frame: true,
            });
            self.next_id += 1;
        }

        let boxes = self
            .tracks
            .iter()
            .filter(|t| t.state == LifecycleState::Confirmed)
            .filter(|t| t.updated_this_frame || self.config.runtime.emit_coasted)
            .map(Track::emit)
            .collect();
        Ok(OutputFrame {
            scene_id: self.scene_id.clone(),
            frame_index: frame.frame_index,
            timestamp: frame.timestamp,
            boxes,
        })
    }
}

/// Run a whole scene through a fresh tracker.
pub fn run_scene(scene: &SceneRecord, config: &TrackerConfig) -> Result<Vec<OutputFrame>, TrackError> {
    let mut tracker = Tracker::new(config.clone(), &scene.scene_id)?;
    scene.frames.iter().map(|f| tracker.step(f)).collect()
}

/// Score gate followed by per-category non-maximum suppression (rotated IoU,
/// highest score wins, ties broken by input order).
fn preprocess(
    dets: &[DetectionBox],
    lifecycle: &LifecycleConfig,
) -> Result<Vec<DetectionBox>, GeometryError> {
    let mut order: Vec<usize> = (0..dets.len())
        .filter(|&i| dets[i].score >= lifecycle.score_threshold)
        .collect();
    order.sort_by(|&a, &b| {
        dets[b].score.partial_cmp(&dets[a].score).unwrap().then(a.cmp(&b))
    });
    let mut kept: Vec<usize> = Vec::with_capacity(order.len());
    'candidates: for i in order {
        for &k in &kept {
            if dets[k].category == dets[i].category
                && ro_iou(&dets[k].box7(), &dets[i].box7())? > lifecycle.nms_iou_threshold
            {
                continue 'candidates;
            }
        }
        kept.push(i);
    }
    // Restore input order so that downstream indices are reproducible.
    kept.sort_unstable();
    Ok(kept.into_iter().map(|i| dets[i].clone()).collect())
}
