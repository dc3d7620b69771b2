//! Synthetic scenario generation.
//!
//! A scenario scripts a handful of objects with analytic motion, then renders
//! two scenes from it: noise-free ground truth (scores 1.0, true velocities)
//! and a detector feed with Gaussian position/yaw/velocity noise, dropouts,
//! Poisson clutter, and optional scripted depth errors that displace a
//! detection along its camera ray. Everything is driven by one seeded RNG, so
//! equal specs produce bit-identical scenes.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal, Poisson};
use serde::{Deserialize, Serialize};

use bevtrack_core::baseversion::{
    identity_pose, CameraCalib, Category, DetectionBox, FrameRecord, SceneRecord,
};
use bevtrack_core::geometry::wrap_angle;

/// Scripted motion of one object. Speeds in m/s, angles in radians.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum MotionModel {
    ConstantVelocity { speed: f64 },
    ConstantTurn { speed: f64, yaw_rate: f64 },
    /// Straight-line motion whose speed rises linearly from `base_speed` to
    /// `peak_speed` at `peak_time` and falls back, a triangular bump of the
    /// given half width. Produces the speed peaks the delay metric needs.
    SpeedBump { base_speed: f64, peak_speed: f64, peak_time: f64, half_width: f64 },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ObjectSpec {
    pub category: Category,
    pub start_xy: [f64; 2],
    /// Initial heading, radians.
    pub heading: f64,
    pub motion: MotionModel,
    #[serde(default = "default_lwh")]
    pub lwh: [f64; 3],
}

fn default_lwh() -> [f64; 3] {
    [4.5, 2.0, 1.6]
}

/// Scripted displacement of one detection along its camera ray: the image
/// projection stays put while the 3D position jumps by `meters`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DepthErrorInjection {
    pub frame: u64,
    pub object: usize,
    pub meters: f64,
}

/// Where clutter appears: spread over the scene extent, or hugging the
/// scripted objects (which stresses shape- and distance-sensitive matching).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize, Default)]
#[serde(rename_all = "snake_case")]
pub enum FpPlacement {
    #[default]
    Uniform,
    NearObjects,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScenarioSpec {
    pub scene_id: String,
    /// Seconds.
    pub duration: f64,
    /// Frames per second.
    pub frame_rate: f64,
    pub objects: Vec<ObjectSpec>,
    /// Per-axis Gaussian noise on detected positions, meters.
    #[serde(default)]
    pub pos_noise_sigma: f64,
    /// Gaussian noise on detected yaw, radians.
    #[serde(default)]
    pub yaw_noise_sigma: f64,
    /// Per-axis Gaussian noise on detected velocity, m/s.
    #[serde(default)]
    pub vel_noise_sigma: f64,
    /// Probability that an object goes undetected in a frame.
    #[serde(default)]
    pub dropout_prob: f64,
    /// Mean count of false positives per frame (Poisson).
    #[serde(default)]
    pub fp_rate: f64,
    #[serde(default)]
    pub fp_placement: FpPlacement,
    #[serde(default)]
    pub depth_error_injections: Vec<DepthErrorInjection>,
    /// Attach the synthetic front camera to every frame.
    #[serde(default)]
    pub camera: bool,
    pub seed: u64,
}

impl ScenarioSpec {
    pub fn validate(&self) -> Result<(), String> {
        if !(self.duration.is_finite() && self.duration > 0.0) {
            return Err(format!("duration must be positive, got {}", self.duration));
        }
        if !(self.frame_rate.is_finite() && self.frame_rate > 0.0) {
            return Err(format!("frame_rate must be positive, got {}", self.frame_rate));
        }
        for (name, p) in [("dropout_prob", self.dropout_prob)] {
            if !(0.0..=1.0).contains(&p) {
                return Err(format!("{name} must lie in [0, 1], got {p}"));
            }
        }
        if self.fp_rate < 0.0 {
            return Err(format!("fp_rate must be non-negative, got {}", self.fp_rate));
        }
        for inj in &self.depth_error_injections {
            if inj.object >= self.objects.len() {
                return Err(format!(
                    "depth error injection references object {} of {}",
                    inj.object,
                    self.objects.len()
                ));
            }
        }
        Ok(())
    }

    pub fn n_frames(&self) -> usize {
        (self.duration * self.frame_rate).round() as usize + 1
    }
}

/// The synthetic forward-facing camera: 1600x900, focal length 1000 px,
/// mounted 1.5 m up at the origin looking along global +x.
pub fn front_camera() -> CameraCalib {
    CameraCalib {
        camera_id: "cam_front".into(),
        intrinsics: [[1000.0, 0.0, 800.0], [0.0, 1000.0, 450.0], [0.0, 0.0, 1.0]],
        global_to_camera: [
            [0.0, -1.0, 0.0, 0.0],
            [0.0, 0.0, -1.0, 1.5],
            [1.0, 0.0, 0.0, 0.0],
            [0.0, 0.0, 0.0, 1.0],
        ],
        image_size: [1600, 900],
    }
}

const CAMERA_CENTER: [f64; 3] = [0.0, 0.0, 1.5];

/// True kinematic state of one object at one instant.
#[derive(Debug, Clone, Copy)]
struct Kinematics {
    xy: [f64; 2],
    yaw: f64,
    velocity: [f64; 2],
    acceleration: [f64; 2],
}

fn kinematics_at(obj: &ObjectSpec, t: f64) -> Kinematics {
    match obj.motion {
        MotionModel::ConstantVelocity { speed } => {
            let (s, c) = obj.heading.sin_cos();
            Kinematics {
                xy: [obj.start_xy[0] + speed * t * c, obj.start_xy[1] + speed * t * s],
                yaw: obj.heading,
                velocity: [speed * c, speed * s],
                acceleration: [0.0, 0.0],
            }
        }
        MotionModel::ConstantTurn { speed, yaw_rate } => {
            let h = obj.heading + yaw_rate * t;
            let (sh, ch) = h.sin_cos();
            let xy = if yaw_rate.abs() < 1e-12 {
                let (s0, c0) = obj.heading.sin_cos();
                [obj.start_xy[0] + speed * t * c0, obj.start_xy[1] + speed * t * s0]
            } else {
                let (s0, c0) = obj.heading.sin_cos();
                [
                    obj.start_xy[0] + speed / yaw_rate * (sh - s0),
                    obj.start_xy[1] - speed / yaw_rate * (ch - c0),
                ]
            };
            Kinematics {
                xy,
                yaw: wrap_angle(h),
                velocity: [speed * ch, speed * sh],
                acceleration: [-speed * yaw_rate * sh, speed * yaw_rate * ch],
            }
        }
        MotionModel::SpeedBump { base_speed, peak_speed, peak_time, half_width } => {
            let (s, c) = obj.heading.sin_cos();
            let rise = peak_speed - base_speed;
            let speed = base_speed + rise * triangle(t, peak_time, half_width);
            let distance = base_speed * t + rise * triangle_integral(t, peak_time, half_width);
            let slope = triangle_slope(t, peak_time, half_width) * rise;
            Kinematics {
                xy: [obj.start_xy[0] + distance * c, obj.start_xy[1] + distance * s],
                yaw: obj.heading,
                velocity: [speed * c, speed * s],
                acceleration: [slope * c, slope * s],
            }
        }
    }
}

// Unit triangle bump centered at p with half width w.
fn triangle(t: f64, p: f64, w: f64) -> f64 {
    (1.0 - (t - p).abs() / w).max(0.0)
}

fn triangle_slope(t: f64, p: f64, w: f64) -> f64 {
    if t <= p - w || t >= p + w {
        0.0
    } else if t < p {
        1.0 / w
    } else {
        -1.0 / w
    }
}

// Integral of the unit triangle from 0 to t (the bump is assumed to start at
// or after t = 0).
fn triangle_integral(t: f64, p: f64, w: f64) -> f64 {
    let lo = p - w;
    if t <= lo {
        0.0
    } else if t <= p {
        (t - lo) * (t - lo) / (2.0 * w)
    } else if t <= p + w {
        w / 2.0 + (w - (p + w - t) * (p + w - t) / w) / 2.0
    } else {
        w
    }
}

pub struct GeneratedScenario {
    pub ground_truth: SceneRecord,
    pub detections: SceneRecord,
}

/// Renders the ground-truth and detected scenes for a `ScenarioSpec`.
/// Deterministic in the scenario fields, including the seed.
pub fn generate_scenario(spec: &ScenarioSpec) -> Result<GeneratedScenario, String> {
    spec.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let n = spec.n_frames();
    let dt = 1.0 / spec.frame_rate;
    let cams = if spec.camera { vec![front_camera()] } else { Vec::new() };

    // Scene extent for uniform clutter placement.
    let mut bounds = [[f64::INFINITY, f64::NEG_INFINITY]; 2];
    for obj in &spec.objects {
        for i in 0..n {
            let k = kinematics_at(obj, i as f64 * dt);
            for (axis, b) in bounds.iter_mut().enumerate() {
                b[0] = b[0].min(k.xy[axis]);
                b[1] = b[1].max(k.xy[axis]);
            }
        }
    }
    for b in &mut bounds {
        if b[0] > b[1] {
            *b = [-50.0, 50.0];
        }
        b[0] -= 20.0;
        b[1] += 20.0;
    }

    // A zero sigma still consumes draws (keeping the stream layout uniform
    // across specs) but rounds away against any finite coordinate.
    let pos_noise = Normal::new(0.0, spec.pos_noise_sigma.max(1e-300)).unwrap();
    let yaw_noise = Normal::new(0.0, spec.yaw_noise_sigma.max(1e-300)).unwrap();
    let vel_noise = Normal::new(0.0, spec.vel_noise_sigma.max(1e-300)).unwrap();
    let fp_count = (spec.fp_rate > 0.0).then(|| Poisson::new(spec.fp_rate).unwrap());

    let mut gt_frames = Vec::with_capacity(n);
    let mut det_frames = Vec::with_capacity(n);
    for i in 0..n {
        let t = i as f64 * dt;
        let mut gt_dets = Vec::with_capacity(spec.objects.len());
        let mut detections = Vec::new();
        for (oi, obj) in spec.objects.iter().enumerate() {
            let k = kinematics_at(obj, t);
            let z = obj.lwh[2] / 2.0;
            gt_dets.push(make_box(obj.category, [k.xy[0], k.xy[1], z], obj.lwh, k, 1.0));

            if rng.random::<f64>() < spec.dropout_prob {
                continue;
            }
            let noisy = Kinematics {
                xy: [k.xy[0] + pos_noise.sample(&mut rng), k.xy[1] + pos_noise.sample(&mut rng)],
                yaw: wrap_angle(k.yaw + yaw_noise.sample(&mut rng)),
                velocity: [
                    k.velocity[0] + vel_noise.sample(&mut rng),
                    k.velocity[1] + vel_noise.sample(&mut rng),
                ],
                acceleration: k.acceleration,
            };
            let score = rng.random_range(0.6..1.0);
            let mut det =
                make_box(obj.category, [noisy.xy[0], noisy.xy[1], z], obj.lwh, noisy, score);
            if let Some(inj) = spec
                .depth_error_injections
                .iter()
                .find(|inj| inj.frame == i as u64 && inj.object == oi)
            {
                displace_along_ray(&mut det, inj.meters);
            }
            detections.push(det);
        }

        if let Some(fp_count) = &fp_count {
            let count = fp_count.sample(&mut rng) as usize;
            for _ in 0..count {
                detections.push(make_false_positive(spec, &bounds, t, &mut rng));
            }
        }

        let frame = |dets: Vec<DetectionBox>| FrameRecord {
            frame_index: i as u64,
            timestamp: t,
            token: format!("{}-{}", spec.scene_id, i),
            detections: dets,
            ego_to_global: identity_pose(),
            camera_calibrations: cams.clone(),
        };
        gt_frames.push(frame(gt_dets));
        det_frames.push(frame(detections));
    }

    Ok(GeneratedScenario {
        ground_truth: SceneRecord { scene_id: spec.scene_id.clone(), frames: gt_frames },
        detections: SceneRecord {
            scene_id: format!("{}-det", spec.scene_id),
            frames: det_frames,
        },
    })
}

fn make_box(
    category: Category,
    xyz: [f64; 3],
    lwh: [f64; 3],
    k: Kinematics,
    score: f64,
) -> DetectionBox {
    DetectionBox {
        score,
        category,
        global_xyz: xyz,
        lwh,
        global_orientation: DetectionBox::orientation_from_yaw(k.yaw),
        global_yaw: k.yaw,
        global_velocity: k.velocity,
        global_acceleration: k.acceleration,
        velocity_measured: true,
        acceleration_measured: true,
    }
}

fn make_false_positive(
    spec: &ScenarioSpec,
    bounds: &[[f64; 2]; 2],
    t: f64,
    rng: &mut ChaCha8Rng,
) -> DetectionBox {
    let placement =
        if spec.objects.is_empty() { FpPlacement::Uniform } else { spec.fp_placement };
    let xy = match placement {
        FpPlacement::Uniform => [
            rng.random_range(bounds[0][0]..bounds[0][1]),
            rng.random_range(bounds[1][0]..bounds[1][1]),
        ],
        FpPlacement::NearObjects => {
            let obj = &spec.objects[rng.random_range(0..spec.objects.len())];
            let k = kinematics_at(obj, t);
            let r = rng.random_range(3.0..8.0);
            let phi = rng.random_range(0.0..std::f64::consts::TAU);
            [k.xy[0] + r * phi.cos(), k.xy[1] + r * phi.sin()]
        }
    };
    let lwh = [rng.random_range(2.0..6.0), rng.random_range(1.0..2.5), 1.6];
    let yaw = wrap_angle(rng.random_range(-std::f64::consts::PI..std::f64::consts::PI));
    DetectionBox {
        score: rng.random_range(0.1..0.5),
        category: Category::Car,
        global_xyz: [xy[0], xy[1], 0.8],
        lwh,
        global_orientation: DetectionBox::orientation_from_yaw(yaw),
        global_yaw: yaw,
        global_velocity: [0.0, 0.0],
        global_acceleration: [0.0, 0.0],
        velocity_measured: true,
        acceleration_measured: true,
    }
}

// Moves the detection `meters` farther from the camera along the ray through
// its center; its image projection is unchanged.
fn displace_along_ray(det: &mut DetectionBox, meters: f64) {
    let p = det.global_xyz;
    let d = [p[0] - CAMERA_CENTER[0], p[1] - CAMERA_CENTER[1], p[2] - CAMERA_CENTER[2]];
    let norm = (d[0] * d[0] + d[1] * d[1] + d[2] * d[2]).sqrt();
    for (p, di) in det.global_xyz.iter_mut().zip(d) {
        *p += meters * di / norm;
    }
}
