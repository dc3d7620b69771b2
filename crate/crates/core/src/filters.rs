//! Decoupled per-track Kalman filters.
//!
//! Each track runs three independent filters so that a bad size measurement
//! can never perturb the motion estimate and vice versa:
//!
//! * position: constant-acceleration model over {x, y, v_x, v_y, a_x, a_y},
//!   observing planar position and (when measured) velocity;
//! * size: constant-velocity model over {l, w, v_l, v_w}, observing {l, w};
//! * heading: constant-rate model over {theta_p, theta_v, omega_p, omega_v},
//!   observing the box yaw and, above a speed gate, the velocity direction.
//!
//! Heading innovations are wrapped to (-pi, pi] before applying the gain, and
//! every covariance is re-symmetrized after predict and update. Process noise
//! uses the piecewise-white-noise (discrete Wiener) construction.

use nalgebra::{SMatrix, SVector};
use serde::{Deserialize, Serialize};

use crate::baseversion::DetectionBox;
use crate::config::PerCategory;
use crate::geometry::wrap_angle;

/// Noise and initialization variances for one category. All entries are
/// variances (squared units) and must be strictly positive.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FilterNoise {
    /// Jerk variance driving the constant-acceleration position model.
    pub pos_process: f64,
    /// Measurement variance of x and y.
    pub pos_meas_xy: f64,
    /// Measurement variance of v_x and v_y.
    pub pos_meas_vel: f64,
    /// Rate-noise variance of the size model.
    pub size_process: f64,
    /// Measurement variance of l and w. Kept large relative to the process
    /// noise so the size estimate drifts slowly instead of chasing jitter.
    pub size_meas: f64,
    /// Rate-noise variance of the heading model.
    pub heading_process: f64,
    /// Measurement variance of the two heading observations.
    pub heading_meas: f64,
    pub init_pos_var: f64,
    pub init_vel_var: f64,
    pub init_acc_var: f64,
    pub init_size_var: f64,
    pub init_size_rate_var: f64,
    pub init_heading_var: f64,
    pub init_heading_rate_var: f64,
}

impl Default for FilterNoise {
    fn default() -> Self {
        FilterNoise {
            pos_process: 4.0,
            pos_meas_xy: 0.01,
            pos_meas_vel: 0.01,
            size_process: 0.01,
            size_meas: 0.1,
            heading_process: 0.09,
            heading_meas: 0.01,
            init_pos_var: 1.0,
            init_vel_var: 1.0,
            init_acc_var: 100.0,
            init_size_var: 0.25,
            init_size_rate_var: 0.01,
            init_heading_var: 0.25,
            init_heading_rate_var: 0.04,
        }
    }
}

impl FilterNoise {
    pub fn validate(&self) -> Result<(), String> {
        let entries = [
            ("pos_process", self.pos_process),
            ("pos_meas_xy", self.pos_meas_xy),
            ("pos_meas_vel", self.pos_meas_vel),
            ("size_process", self.size_process),
            ("size_meas", self.size_meas),
            ("heading_process", self.heading_process),
            ("heading_meas", self.heading_meas),
            ("init_pos_var", self.init_pos_var),
            ("init_vel_var", self.init_vel_var),
            ("init_acc_var", self.init_acc_var),
            ("init_size_var", self.init_size_var),
            ("init_size_rate_var", self.init_size_rate_var),
            ("init_heading_var", self.init_heading_var),
            ("init_heading_rate_var", self.init_heading_rate_var),
        ];
        for (name, v) in entries {
            if !(v > 0.0 && v.is_finite()) {
                return Err(format!("{name} must be strictly positive, got {v}"));
            }
        }
        Ok(())
    }
}

/// Filter noise per category plus the speed gate below which the velocity
/// direction is treated as unobservable.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NoiseConfig {
    /// Speed (m/s) under which the heading filter drops its velocity-direction
    /// observation row.
    pub v_min: f64,
    pub per_category: PerCategory<FilterNoise>,
}

impl Default for NoiseConfig {
    fn default() -> Self {
        NoiseConfig { v_min: 0.5, per_category: PerCategory::uniform(FilterNoise::default()) }
    }
}

impl NoiseConfig {
    pub fn validate(&self) -> Result<(), String> {
        if !(self.v_min >= 0.0 && self.v_min.is_finite()) {
            return Err(format!("v_min must be non-negative, got {}", self.v_min));
        }
        self.per_category.default.validate()?;
        for (cat, noise) in &self.per_category.overrides {
            noise.validate().map_err(|e| format!("{cat}: {e}"))?;
        }
        Ok(())
    }
}

// Shared measurement update. Plain-form covariance update followed by
// re-symmetrization; S is SPD because R is strictly positive.
fn kalman_update<const S: usize, const M: usize>(
    x: &mut SVector<f64, S>,
    p: &mut SMatrix<f64, S, S>,
    innovation: &SVector<f64, M>,
    h: &SMatrix<f64, M, S>,
    r: &SMatrix<f64, M, M>,
) {
    let s = h * *p * h.transpose() + r;
    let s_inv = s.try_inverse().expect("innovation covariance is invertible");
    let k = *p * h.transpose() * s_inv;
    *x += k * innovation;
    *p = (SMatrix::<f64, S, S>::identity() - k * h) * *p;
    *p = (*p + p.transpose()) * 0.5;
}

fn symmetrize<const S: usize>(p: &mut SMatrix<f64, S, S>) {
    *p = (*p + p.transpose()) * 0.5;
}

/// Constant-acceleration planar motion filter.
/// State ordering: [x, y, v_x, v_y, a_x, a_y].
#[derive(Debug, Clone, PartialEq)]
pub struct PositionFilter {
    x: SVector<f64, 6>,
    p: SMatrix<f64, 6, 6>,
}

impl PositionFilter {
    pub fn init(det: &DetectionBox, noise: &FilterNoise) -> Self {
        let x = SVector::<f64, 6>::from_column_slice(&[
            det.global_xyz[0],
            det.global_xyz[1],
            det.global_velocity[0],
            det.global_velocity[1],
            0.0,
            0.0,
        ]);
        let mut p = SMatrix::<f64, 6, 6>::zeros();
        p[(0, 0)] = noise.init_pos_var;
        p[(1, 1)] = noise.init_pos_var;
        p[(2, 2)] = noise.init_vel_var;
        p[(3, 3)] = noise.init_vel_var;
        p[(4, 4)] = noise.init_acc_var;
        p[(5, 5)] = noise.init_acc_var;
        PositionFilter { x, p }
    }

    pub fn predict(&mut self, dt: f64, noise: &FilterNoise) {
        debug_assert!(dt > 0.0);
        let mut f = SMatrix::<f64, 6, 6>::identity();
        for axis in 0..2 {
            f[(axis, axis + 2)] = dt;
            f[(axis, axis + 4)] = 0.5 * dt * dt;
            f[(axis + 2, axis + 4)] = dt;
        }
        self.x = f * self.x;
        let g = [dt * dt * dt / 6.0, dt * dt / 2.0, dt];
        let mut q = SMatrix::<f64, 6, 6>::zeros();
        for axis in 0..2 {
            for i in 0..3 {
                for j in 0..3 {
                    q[(axis + 2 * i, axis + 2 * j)] = g[i] * g[j] * noise.pos_process;
                }
            }
        }
        self.p = f * self.p * f.transpose() + q;
        symmetrize(&mut self.p);
    }

    /// Measurement update. The velocity rows are gated out when the source
    /// document carried no velocity for this detection.
    pub fn update(&mut self, det: &DetectionBox, noise: &FilterNoise) {
        if det.velocity_measured {
            let mut h = SMatrix::<f64, 4, 6>::zeros();
            for i in 0..4 {
                h[(i, i)] = 1.0;
            }
            let z = SVector::<f64, 4>::from_column_slice(&[
                det.global_xyz[0],
                det.global_xyz[1],
                det.global_velocity[0],
                det.global_velocity[1],
            ]);
            let innovation = z - h * self.x;
            let mut r = SMatrix::<f64, 4, 4>::zeros();
            r[(0, 0)] = noise.pos_meas_xy;
            r[(1, 1)] = noise.pos_meas_xy;
            r[(2, 2)] = noise.pos_meas_vel;
            r[(3, 3)] = noise.pos_meas_vel;
            kalman_update(&mut self.x, &mut self.p, &innovation, &h, &r);
        } else {
            let mut h = SMatrix::<f64, 2, 6>::zeros();
            h[(0, 0)] = 1.0;
            h[(1, 1)] = 1.0;
            let z = SVector::<f64, 2>::from_column_slice(&[det.global_xyz[0], det.global_xyz[1]]);
            let innovation = z - h * self.x;
            let r = SMatrix::<f64, 2, 2>::from_diagonal_element(noise.pos_meas_xy);
            kalman_update(&mut self.x, &mut self.p, &innovation, &h, &r);
        }
    }

    pub fn position(&self) -> [f64; 2] {
        [self.x[0], self.x[1]]
    }

    pub fn velocity(&self) -> [f64; 2] {
        [self.x[2], self.x[3]]
    }

    pub fn acceleration(&self) -> [f64; 2] {
        [self.x[4], self.x[5]]
    }

    pub fn covariance(&self) -> &SMatrix<f64, 6, 6> {
        &self.p
    }
}

/// Constant-velocity size filter. State ordering: [l, w, v_l, v_w].
/// Estimates are clamped strictly positive after every update.
#[derive(Debug, Clone, PartialEq)]
pub struct SizeFilter {
    x: SVector<f64, 4>,
    p: SMatrix<f64, 4, 4>,
}

const MIN_SIZE: f64 = 1e-3;

impl SizeFilter {
    pub fn init(det: &DetectionBox, noise: &FilterNoise) -> Self {
        let x = SVector::<f64, 4>::from_column_slice(&[det.lwh[0], det.lwh[1], 0.0, 0.0]);
        let mut p = SMatrix::<f64, 4, 4>::zeros();
        p[(0, 0)] = noise.init_size_var;
        p[(1, 1)] = noise.init_size_var;
        p[(2, 2)] = noise.init_size_rate_var;
        p[(3, 3)] = noise.init_size_rate_var;
        SizeFilter { x, p }
    }

    pub fn predict(&mut self, dt: f64, noise: &FilterNoise) {
        debug_assert!(dt > 0.0);
        let mut f = SMatrix::<f64, 4, 4>::identity();
        f[(0, 2)] = dt;
        f[(1, 3)] = dt;
        self.x = f * self.x;
        let g = [dt * dt / 2.0, dt];
        let mut q = SMatrix::<f64, 4, 4>::zeros();
        for axis in 0..2 {
            for i in 0..2 {
                for j in 0..2 {
                    q[(axis + 2 * i, axis + 2 * j)] = g[i] * g[j] * noise.size_process;
                }
            }
        }
        self.p = f * self.p * f.transpose() + q;
        symmetrize(&mut self.p);
        self.clamp_positive();
    }

    pub fn update(&mut self, det: &DetectionBox, noise: &FilterNoise) {
        let mut h = SMatrix::<f64, 2, 4>::zeros();
        h[(0, 0)] = 1.0;
        h[(1, 1)] = 1.0;
        let z = SVector::<f64, 2>::from_column_slice(&[det.lwh[0], det.lwh[1]]);
        let innovation = z - h * self.x;
        let r = SMatrix::<f64, 2, 2>::from_diagonal_element(noise.size_meas);
        kalman_update(&mut self.x, &mut self.p, &innovation, &h, &r);
        self.clamp_positive();
    }

    fn clamp_positive(&mut self) {
        self.x[0] = self.x[0].max(MIN_SIZE);
        self.x[1] = self.x[1].max(MIN_SIZE);
    }

    pub fn lw(&self) -> [f64; 2] {
        [self.x[0], self.x[1]]
    }

    pub fn covariance(&self) -> &SMatrix<f64, 4, 4> {
        &self.p
    }
}

/// Constant-rate heading filter over the box yaw (theta_p) and the velocity
/// direction (theta_v). State ordering: [theta_p, theta_v, omega_p, omega_v].
#[derive(Debug, Clone, PartialEq)]
pub struct HeadingFilter {
    x: SVector<f64, 4>,
    p: SMatrix<f64, 4, 4>,
}

impl HeadingFilter {
    pub fn init(det: &DetectionBox, noise: &FilterNoise, v_min: f64) -> Self {
        let theta_p = det.global_yaw;
        // Below the speed gate the velocity direction is noise; seed it from
        // the box yaw instead.
        let theta_v = if det.speed() >= v_min {
            det.global_velocity[1].atan2(det.global_velocity[0])
        } else {
            theta_p
        };
        let x = SVector::<f64, 4>::from_column_slice(&[theta_p, theta_v, 0.0, 0.0]);
        let mut p = SMatrix::<f64, 4, 4>::zeros();
        p[(0, 0)] = noise.init_heading_var;
        p[(1, 1)] = noise.init_heading_var;
        p[(2, 2)] = noise.init_heading_rate_var;
        p[(3, 3)] = noise.init_heading_rate_var;
        HeadingFilter { x, p }
    }

    pub fn predict(&mut self, dt: f64, noise: &FilterNoise) {
        debug_assert!(dt > 0.0);
        let mut f = SMatrix::<f64, 4, 4>::identity();
        f[(0, 2)] = dt;
        f[(1, 3)] = dt;
        self.x = f * self.x;
        self.x[0] = wrap_angle(self.x[0]);
        self.x[1] = wrap_angle(self.x[1]);
        let g = [dt * dt / 2.0, dt];
        let mut q = SMatrix::<f64, 4, 4>::zeros();
        for axis in 0..2 {
            for i in 0..2 {
                for j in 0..2 {
                    q[(axis + 2 * i, axis + 2 * j)] = g[i] * g[j] * noise.heading_process;
                }
            }
        }
        self.p = f * self.p * f.transpose() + q;
        symmetrize(&mut self.p);
    }

    /// Measurement update. Below the speed gate the velocity-direction row is
    /// removed entirely (the observation dimension changes; its variance is
    /// not merely inflated).
    pub fn update(&mut self, det: &DetectionBox, noise: &FilterNoise, v_min: f64) {
        if det.speed() >= v_min {
            let mut h = SMatrix::<f64, 2, 4>::zeros();
            h[(0, 0)] = 1.0;
            h[(1, 1)] = 1.0;
            let theta_v = det.global_velocity[1].atan2(det.global_velocity[0]);
            let predicted = h * self.x;
            let innovation = SVector::<f64, 2>::from_column_slice(&[
                wrap_angle(det.global_yaw - predicted[0]),
                wrap_angle(theta_v - predicted[1]),
            ]);
            let r = SMatrix::<f64, 2, 2>::from_diagonal_element(noise.heading_meas);
            kalman_update(&mut self.x, &mut self.p, &innovation, &h, &r);
        } else {
            let mut h = SMatrix::<f64, 1, 4>::zeros();
            h[(0, 0)] = 1.0;
            let innovation =
                SVector::<f64, 1>::from_column_slice(&[wrap_angle(det.global_yaw - self.x[0])]);
            let r = SMatrix::<f64, 1, 1>::from_diagonal_element(noise.heading_meas);
            kalman_update(&mut self.x, &mut self.p, &innovation, &h, &r);
        }
        self.x[0] = wrap_angle(self.x[0]);
        self.x[1] = wrap_angle(self.x[1]);
    }

    /// Filtered box yaw.
    pub fn yaw(&self) -> f64 {
        self.x[0]
    }

    /// Filtered velocity direction.
    pub fn velocity_direction(&self) -> f64 {
        self.x[1]
    }

    pub fn covariance(&self) -> &SMatrix<f64, 4, 4> {
        &self.p
    }
}

/// The three decoupled filters of one track. Updating any one filter never
/// touches the state of the other two.
#[derive(Debug, Clone, PartialEq)]
pub struct TrackFilters {
    pub position: PositionFilter,
    pub size: SizeFilter,
    pub heading: HeadingFilter,
}

impl TrackFilters {
    pub fn init_from_detection(det: &DetectionBox, cfg: &NoiseConfig) -> Self {
        let noise = cfg.per_category.get(det.category);
        TrackFilters {
            position: PositionFilter::init(det, noise),
            size: SizeFilter::init(det, noise),
            heading: HeadingFilter::init(det, noise, cfg.v_min),
        }
    }

    pub fn predict(&mut self, dt: f64, noise: &FilterNoise) {
        self.position.predict(dt, noise);
        self.size.predict(dt, noise);
        self.heading.predict(dt, noise);
    }

    pub fn update(&mut self, det: &DetectionBox, cfg: &NoiseConfig) {
        let noise = cfg.per_category.get(det.category);
        self.position.update(det, noise);
        self.size.update(det, noise);
        self.heading.update(det, noise, cfg.v_min);
    }
}
