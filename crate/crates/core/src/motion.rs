//! Velocity-quality metrics.
//!
//! Point metrics compare a tracked velocity against ground truth: angular
//! error (wrapped, signed), speed-magnitude error, the inversion rate of
//! large angular errors. Series metrics look at a whole speed trace: its
//! roughness against a Savitzky-Golay smoothed copy, and the frame delay of
//! speed peaks relative to ground truth. `evaluate_motion` runs all of them
//! over a scene and its tracking output.

use std::collections::HashMap;
use std::f64::consts::FRAC_PI_2;

use nalgebra::{DMatrix, DVector};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::baseversion::{OutputFrame, SceneRecord};
use crate::config::PerCategory;
use crate::geometry::wrap_angle;

#[derive(Debug, Error, PartialEq)]
pub enum MotionError {
    #[error("series is empty")]
    EmptySeries,
    #[error("series too short: need at least {needed} samples, got {got}")]
    SeriesTooShort { needed: usize, got: usize },
    #[error("no usable peaks in the reference series")]
    NoPeaks,
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
}

/// Signed angular error in radians, wrapped to (-pi, pi]. A ground truth of
/// 359 degrees against an estimate of 1 degree comes out as -2 degrees, not
/// 358.
pub fn vae(gt_angle: f64, estimated_angle: f64) -> f64 {
    wrap_angle(gt_angle - estimated_angle)
}

/// Speed-magnitude error: | |v_gt| - |v_est| |.
pub fn vne(gt_speed: f64, estimated_speed: f64) -> f64 {
    (gt_speed.abs() - estimated_speed.abs()).abs()
}

/// Splits signed angular errors at the inversion threshold of pi/2.
/// Returns the mean absolute exceedance (None when there is none) and the
/// fraction of samples that exceed.
pub fn vaie_vir(errors: &[f64]) -> (Option<f64>, f64) {
    if errors.is_empty() {
        return (None, 0.0);
    }
    let exceedances: Vec<f64> =
        errors.iter().map(|e| e.abs()).filter(|a| *a > FRAC_PI_2).collect();
    let vir = exceedances.len() as f64 / errors.len() as f64;
    let vaie = if exceedances.is_empty() {
        None
    } else {
        Some(exceedances.iter().sum::<f64>() / exceedances.len() as f64)
    };
    (vaie, vir)
}

/// Savitzky-Golay parameters: odd window length and polynomial order below
/// the window length.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SgParams {
    pub window: usize,
    pub poly_order: usize,
}

impl Default for SgParams {
    fn default() -> Self {
        SgParams { window: 5, poly_order: 2 }
    }
}

impl SgParams {
    pub fn validate(&self) -> Result<(), MotionError> {
        if self.window < 3 || self.window % 2 == 0 {
            return Err(MotionError::InvalidParams(format!(
                "window must be odd and at least 3, got {}",
                self.window
            )));
        }
        if self.poly_order >= self.window {
            return Err(MotionError::InvalidParams(format!(
                "poly_order {} must be below window {}",
                self.poly_order, self.window
            )));
        }
        Ok(())
    }
}

/// Savitzky-Golay smoothing. Interior points use the full centered window;
/// near the edges the window is truncated to what exists and the polynomial
/// is refit, so polynomials up to `poly_order` are reproduced exactly
/// everywhere, edges included.
pub fn savitzky_golay(series: &[f64], params: &SgParams) -> Result<Vec<f64>, MotionError> {
    params.validate()?;
    if series.is_empty() {
        return Err(MotionError::EmptySeries);
    }
    let n = series.len();
    let half = params.window / 2;
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        let lo = i.saturating_sub(half);
        let hi = (i + half).min(n - 1);
        out.push(fit_poly_at(&series[lo..=hi], i - lo, params.poly_order));
    }
    Ok(out)
}

// Least-squares polynomial fit over `window` evaluated at local index `at`.
// The effective order is capped so the system stays overdetermined or square.
fn fit_poly_at(window: &[f64], at: usize, poly_order: usize) -> f64 {
    let m = window.len();
    let order = poly_order.min(m - 1);
    if order == 0 {
        return window.iter().sum::<f64>() / m as f64;
    }
    // Centered abscissa keeps the normal equations well conditioned.
    let x = |j: usize| j as f64 - at as f64;
    let design = DMatrix::from_fn(m, order + 1, |r, c| x(r).powi(c as i32));
    let y = DVector::from_fn(m, |r, _| window[r]);
    let xtx = design.transpose() * &design;
    let xty = design.transpose() * y;
    let beta = xtx.lu().solve(&xty).expect("normal equations are nonsingular");
    beta[0]
}

/// Roughness of a series: mean absolute residual against its Savitzky-Golay
/// smoothing.
pub fn vse(series: &[f64], params: &SgParams) -> Result<f64, MotionError> {
    let smooth = savitzky_golay(series, params)?;
    let sum: f64 = series.iter().zip(&smooth).map(|(a, b)| (a - b).abs()).sum();
    Ok(sum / series.len() as f64)
}

/// Indices of strict interior maxima: s[i-1] < s[i] > s[i+1].
pub fn detect_peaks(series: &[f64]) -> Vec<usize> {
    (1..series.len().saturating_sub(1))
        .filter(|&i| series[i - 1] < series[i] && series[i] > series[i + 1])
        .collect()
}

/// Peak-delay search parameters: the comparison window length and the
/// largest forward shift tried.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct VdeParams {
    pub window: usize,
    pub max_shift: usize,
}

impl Default for VdeParams {
    fn default() -> Self {
        VdeParams { window: 10, max_shift: 10 }
    }
}

/// Mean peak delay of `estimated` behind `gt`, in frames.
///
/// For each strict peak of `gt` at index t, a window of length `window`
/// starting at `t - window/2` is compared against the estimate shifted by
/// tau in 0..=max_shift; the tau minimizing mean + standard deviation of the
/// absolute differences wins (first minimum on ties). Peaks without margin
/// for the full window and shift range are skipped.
pub fn vde(gt: &[f64], estimated: &[f64], params: &VdeParams) -> Result<f64, MotionError> {
    let delays = vde_per_peak(gt, estimated, params)?;
    Ok(delays.iter().map(|&(_, d)| d as f64).sum::<f64>() / delays.len() as f64)
}

/// Per-peak delays as (peak index, delay in frames).
pub fn vde_per_peak(
    gt: &[f64],
    estimated: &[f64],
    params: &VdeParams,
) -> Result<Vec<(usize, usize)>, MotionError> {
    if params.window == 0 {
        return Err(MotionError::InvalidParams("window must be positive".into()));
    }
    if gt.len() != estimated.len() {
        return Err(MotionError::InvalidParams(format!(
            "series lengths differ: {} vs {}",
            gt.len(),
            estimated.len()
        )));
    }
    if gt.is_empty() {
        return Err(MotionError::EmptySeries);
    }
    let w = params.window;
    let peaks = detect_peaks(gt);
    if peaks.is_empty() {
        return Err(MotionError::NoPeaks);
    }
    let mut delays = Vec::new();
    for t in peaks {
        let Some(start) = t.checked_sub(w / 2) else { continue };
        if start + w + params.max_shift > gt.len() {
            continue;
        }
        let mut best: Option<(f64, usize)> = None;
        for tau in 0..=params.max_shift {
            let diffs: Vec<f64> =
                (0..w).map(|j| (gt[start + j] - estimated[start + j + tau]).abs()).collect();
            let mean = diffs.iter().sum::<f64>() / w as f64;
            let var = diffs.iter().map(|d| (d - mean) * (d - mean)).sum::<f64>() / w as f64;
            let score = mean + var.sqrt();
            if best.map_or(true, |(b, _)| score < b) {
                best = Some((score, tau));
            }
        }
        delays.push((t, best.expect("at least one shift tried").1));
    }
    if delays.is_empty() {
        return Err(MotionError::NoPeaks);
    }
    Ok(delays)
}

/// Finite-difference velocity estimate: v[i] = (p[i] - p[i-1]) / dt, with the
/// first sample copying the second.
pub fn estimate_velocity_differentiation(
    positions: &[[f64; 2]],
    frame_period: f64,
) -> Vec<[f64; 2]> {
    let n = positions.len();
    if n == 0 {
        return Vec::new();
    }
    let mut v = vec![[0.0; 2]; n];
    for (i, pair) in positions.windows(2).enumerate() {
        v[i + 1] = [
            (pair[1][0] - pair[0][0]) / frame_period,
            (pair[1][1] - pair[0][1]) / frame_period,
        ];
    }
    if n > 1 {
        v[0] = v[1];
    }
    v
}

/// Local-fit velocity estimate: the least-squares slope over the trailing
/// three samples (two where only two exist; the first sample copies the
/// second).
pub fn estimate_velocity_curvefit(positions: &[[f64; 2]], frame_period: f64) -> Vec<[f64; 2]> {
    let n = positions.len();
    if n == 0 {
        return Vec::new();
    }
    let mut v = vec![[0.0; 2]; n];
    for (i, vi) in v.iter_mut().enumerate().skip(1) {
        let lo = i.saturating_sub(2);
        for axis in 0..2 {
            let pts: Vec<(f64, f64)> =
                (lo..=i).map(|j| (j as f64 * frame_period, positions[j][axis])).collect();
            vi[axis] = ls_slope(&pts);
        }
    }
    if n > 1 {
        v[0] = v[1];
    }
    v
}

fn ls_slope(pts: &[(f64, f64)]) -> f64 {
    let n = pts.len() as f64;
    let sx: f64 = pts.iter().map(|p| p.0).sum();
    let sy: f64 = pts.iter().map(|p| p.1).sum();
    let sxx: f64 = pts.iter().map(|p| p.0 * p.0).sum();
    let sxy: f64 = pts.iter().map(|p| p.0 * p.1).sum();
    (n * sxy - sx * sy) / (n * sxx - sx * sx)
}

/// Settings for `evaluate_motion`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MotionEvalConfig {
    /// Center-distance gate (meters) for matching tracked boxes to ground
    /// truth, per category.
    pub match_distance: PerCategory<f64>,
    /// Ground-truth samples slower than this (m/s) are excluded from the
    /// angle metrics; direction is meaningless at a standstill.
    pub min_speed: f64,
    pub sg: SgParams,
    pub vde: VdeParams,
    /// Average per trajectory first instead of pooling samples.
    pub trajectory_weighted: bool,
}

impl Default for MotionEvalConfig {
    fn default() -> Self {
        MotionEvalConfig {
            match_distance: PerCategory::uniform(2.0)
                .with_override(crate::baseversion::Category::Pedestrian, 1.0),
            min_speed: 0.2,
            sg: SgParams::default(),
            vde: VdeParams::default(),
            trajectory_weighted: false,
        }
    }
}

/// Aggregated motion metrics. Angle metrics are reported in degrees, speed
/// metrics in m/s, the peak delay in frames and in seconds.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct MotionReport {
    /// Matched (ground truth, tracked) samples.
    pub tp: usize,
    /// Samples passing the speed gate, i.e. the angle-metric population.
    pub n_angle_samples: usize,
    pub vae_deg: f64,
    pub vne_mps: f64,
    pub vaie_deg: Option<f64>,
    pub vir: f64,
    pub vse_mps: f64,
    pub vde_frames: Option<f64>,
    pub vde_seconds: Option<f64>,
}

// Mean over groups: pooled when sample-weighted, mean-of-means when
// trajectory-weighted. None when every group is empty.
fn aggregate(groups: &[Vec<f64>], trajectory_weighted: bool) -> Option<f64> {
    if trajectory_weighted {
        let means: Vec<f64> = groups
            .iter()
            .filter(|g| !g.is_empty())
            .map(|g| g.iter().sum::<f64>() / g.len() as f64)
            .collect();
        (!means.is_empty()).then(|| means.iter().sum::<f64>() / means.len() as f64)
    } else {
        let count: usize = groups.iter().map(Vec::len).sum();
        (count > 0).then(|| groups.iter().flatten().sum::<f64>() / count as f64)
    }
}

/// Matches tracking output against ground truth and evaluates the metric
/// suite per ground-truth identity.
///
/// Ground-truth identity is positional: object k of a scene is detection k
/// of every frame (frames where it is absent must truncate the roster from
/// the end, never reorder it).
pub fn evaluate_motion(
    gt: &SceneRecord,
    tracked: &[OutputFrame],
    cfg: &MotionEvalConfig,
) -> Result<MotionReport, MotionError> {
    cfg.sg.validate()?;
    let by_index: HashMap<u64, &OutputFrame> =
        tracked.iter().map(|f| (f.frame_index, f)).collect();

    let n_objects = gt.frames.iter().map(|f| f.detections.len()).max().unwrap_or(0);
    let mut angle_errors: Vec<Vec<f64>> = vec![Vec::new(); n_objects];
    let mut norm_errors: Vec<Vec<f64>> = vec![Vec::new(); n_objects];
    let mut gt_speeds: Vec<Vec<f64>> = vec![Vec::new(); n_objects];
    let mut est_speeds: Vec<Vec<f64>> = vec![Vec::new(); n_objects];
    let mut tp = 0usize;

    for frame in &gt.frames {
        let Some(out) = by_index.get(&frame.frame_index) else { continue };
        // Greedy nearest-center matching within the per-category gate.
        let mut candidates: Vec<(f64, usize, usize)> = Vec::new();
        for (gi, det) in frame.detections.iter().enumerate() {
            for (bi, b) in out.boxes.iter().enumerate() {
                if b.category != det.category {
                    continue;
                }
                let dx = det.global_xyz[0] - b.global_xyz[0];
                let dy = det.global_xyz[1] - b.global_xyz[1];
                let dist = dx.hypot(dy);
                if dist <= *cfg.match_distance.get(det.category) {
                    candidates.push((dist, gi, bi));
                }
            }
        }
        candidates.sort_by(|a, b| a.partial_cmp(b).unwrap());
        let mut gt_used = vec![false; frame.detections.len()];
        let mut box_used = vec![false; out.boxes.len()];
        for (_, gi, bi) in candidates {
            if gt_used[gi] || box_used[bi] {
                continue;
            }
            gt_used[gi] = true;
            box_used[bi] = true;
            tp += 1;
            let det = &frame.detections[gi];
            let b = &out.boxes[bi];
            let gs = det.speed();
            let es = b.velocity[0].hypot(b.velocity[1]);
            gt_speeds[gi].push(gs);
            est_speeds[gi].push(es);
            norm_errors[gi].push(vne(gs, es));
            if gs >= cfg.min_speed {
                let gt_dir = det.global_velocity[1].atan2(det.global_velocity[0]);
                let est_dir = b.velocity[1].atan2(b.velocity[0]);
                angle_errors[gi].push(vae(gt_dir, est_dir));
            }
        }
    }

    let abs_angle: Vec<Vec<f64>> =
        angle_errors.iter().map(|g| g.iter().map(|e| e.abs()).collect()).collect();
    let n_angle_samples = angle_errors.iter().map(Vec::len).sum();

    let exceedances: Vec<Vec<f64>> = abs_angle
        .iter()
        .map(|g| g.iter().copied().filter(|a| *a > FRAC_PI_2).collect())
        .collect();
    let vir = if cfg.trajectory_weighted {
        let ratios: Vec<f64> = angle_errors
            .iter()
            .zip(&exceedances)
            .filter(|(g, _)| !g.is_empty())
            .map(|(g, e)| e.len() as f64 / g.len() as f64)
            .collect();
        if ratios.is_empty() { 0.0 } else { ratios.iter().sum::<f64>() / ratios.len() as f64 }
    } else if n_angle_samples == 0 {
        0.0
    } else {
        exceedances.iter().map(Vec::len).sum::<usize>() as f64 / n_angle_samples as f64
    };

    let smooth_residuals: Vec<Vec<f64>> = est_speeds
        .iter()
        .map(|s| {
            if s.is_empty() {
                return Vec::new();
            }
            let smooth = savitzky_golay(s, &cfg.sg).expect("non-empty series");
            s.iter().zip(&smooth).map(|(a, b)| (a - b).abs()).collect()
        })
        .collect();

    let peak_delays: Vec<Vec<f64>> = gt_speeds
        .iter()
        .zip(&est_speeds)
        .map(|(g, e)| match vde_per_peak(g, e, &cfg.vde) {
            Ok(delays) => delays.into_iter().map(|(_, d)| d as f64).collect(),
            Err(_) => Vec::new(),
        })
        .collect();

    let frame_period = mean_frame_period(gt);
    let vde_frames = aggregate(&peak_delays, cfg.trajectory_weighted);
    Ok(MotionReport {
        tp,
        n_angle_samples,
        vae_deg: aggregate(&abs_angle, cfg.trajectory_weighted).map_or(0.0, f64::to_degrees),
        vne_mps: aggregate(&norm_errors, cfg.trajectory_weighted).unwrap_or(0.0),
        vaie_deg: aggregate(&exceedances, cfg.trajectory_weighted).map(f64::to_degrees),
        vir,
        vse_mps: aggregate(&smooth_residuals, cfg.trajectory_weighted).unwrap_or(0.0),
        vde_frames,
        vde_seconds: vde_frames.and_then(|f| (frame_period > 0.0).then_some(f * frame_period)),
    })
}

fn mean_frame_period(scene: &SceneRecord) -> f64 {
    let ts: Vec<f64> = scene.frames.iter().map(|f| f.timestamp).collect();
    if ts.len() < 2 {
        return 0.0;
    }
    (ts[ts.len() - 1] - ts[0]) / (ts.len() - 1) as f64
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn angular_error_wraps_across_the_seam() {
        let e = vae(359.0_f64.to_radians(), 1.0_f64.to_radians());
        assert!((e.to_degrees() - (-2.0)).abs() < 1e-12, "got {}", e.to_degrees());
    }

    #[test]
    fn angular_error_branch_point_maps_to_plus_pi() {
        assert_eq!(vae(PI, 0.0), PI);
        assert_eq!(vae(0.0, PI), PI);
    }

    #[test]
    fn norm_error_compares_magnitudes() {
        assert_eq!(vne(5.0, 3.0), 2.0);
        assert_eq!(vne(-5.0, 3.0), 2.0);
        assert_eq!(vne(4.0, 4.0), 0.0);
    }

    #[test]
    fn inversion_stats_split_at_half_pi() {
        let (vaie, vir) = vaie_vir(&[0.1, 2.0, -3.0]);
        assert!((vaie.unwrap() - 2.5).abs() < 1e-12);
        assert!((vir - 2.0 / 3.0).abs() < 1e-12);
        let (none, zero) = vaie_vir(&[0.1, -0.4]);
        assert_eq!(none, None);
        assert_eq!(zero, 0.0);
    }

    #[test]
    fn sg_impulse_center_weight() {
        let out = savitzky_golay(&[0.0, 0.0, 1.0, 0.0, 0.0], &SgParams::default()).unwrap();
        assert!((out[2] - 17.0 / 35.0).abs() < 1e-12);
        // Symmetry of the response.
        assert!((out[1] - out[3]).abs() < 1e-12);
    }

    #[test]
    fn sg_reproduces_quadratics_exactly_including_edges() {
        let series: Vec<f64> =
            (0..9).map(|i| { let t = i as f64; 2.0 * t * t - 3.0 * t + 1.0 }).collect();
        let out = savitzky_golay(&series, &SgParams::default()).unwrap();
        for (a, b) in series.iter().zip(&out) {
            assert!((a - b).abs() < 1e-9, "{a} vs {b}");
        }
    }

    #[test]
    fn sg_rejects_even_windows_and_rich_polynomials() {
        assert!(savitzky_golay(&[1.0; 8], &SgParams { window: 4, poly_order: 2 }).is_err());
        assert!(savitzky_golay(&[1.0; 8], &SgParams { window: 5, poly_order: 5 }).is_err());
        assert_eq!(
            savitzky_golay(&[], &SgParams::default()),
            Err(MotionError::EmptySeries)
        );
    }

    #[test]
    fn vse_is_zero_for_smooth_series_and_positive_for_noise() {
        let smooth: Vec<f64> = (0..20).map(|i| 0.5 * i as f64).collect();
        assert!(vse(&smooth, &SgParams::default()).unwrap() < 1e-9);
        let noisy: Vec<f64> =
            (0..20).map(|i| 0.5 * i as f64 + if i % 2 == 0 { 0.3 } else { -0.3 }).collect();
        assert!(vse(&noisy, &SgParams::default()).unwrap() > 0.1);
    }

    #[test]
    fn peaks_are_strict_interior_maxima() {
        assert_eq!(detect_peaks(&[0.0, 1.0, 0.0, 2.0, 5.0, 2.0]), vec![1, 4]);
        assert!(detect_peaks(&[1.0, 1.0, 1.0]).is_empty());
        assert!(detect_peaks(&[0.0, 1.0]).is_empty());
    }

    fn bump(len: usize, center: f64) -> Vec<f64> {
        (0..len)
            .map(|i| {
                let d = (i as f64 - center) / 4.0;
                10.0 + 5.0 * (-d * d).exp()
            })
            .collect()
    }

    #[test]
    fn peak_delay_recovers_pure_shifts_exactly() {
        let gt = bump(60, 30.0);
        for k in 0..=10usize {
            // Estimate delayed by k frames: est[i] = gt[i - k].
            let est: Vec<f64> =
                (0..60).map(|i| if i >= k { gt[i - k] } else { gt[0] }).collect();
            let d = vde(&gt, &est, &VdeParams::default()).unwrap();
            assert_eq!(d, k as f64, "shift {k}");
        }
    }

    #[test]
    fn peak_delay_requires_peaks_and_margin() {
        let rising: Vec<f64> = (0..40).map(|i| i as f64).collect();
        assert_eq!(vde(&rising, &rising, &VdeParams::default()), Err(MotionError::NoPeaks));
        // A peak too close to the end has no room for the shift search.
        let late = bump(20, 18.0);
        assert_eq!(vde(&late, &late, &VdeParams::default()), Err(MotionError::NoPeaks));
    }

    #[test]
    fn differentiation_is_exact_for_linear_motion() {
        let pos: Vec<[f64; 2]> = (0..10).map(|i| [3.0 * 0.1 * i as f64, -1.0]).collect();
        let v = estimate_velocity_differentiation(&pos, 0.1);
        for vi in v {
            assert!((vi[0] - 3.0).abs() < 1e-9);
            assert!(vi[1].abs() < 1e-9);
        }
    }

    #[test]
    fn curvefit_is_exact_for_linear_motion() {
        let pos: Vec<[f64; 2]> = (0..10).map(|i| [2.0 * 0.5 * i as f64, 0.5 * i as f64]).collect();
        let v = estimate_velocity_curvefit(&pos, 0.5);
        for vi in v {
            assert!((vi[0] - 2.0).abs() < 1e-9);
            assert!((vi[1] - 1.0).abs() < 1e-9);
        }
    }

    #[test]
    fn aggregation_modes_differ_on_unbalanced_groups() {
        let groups = vec![vec![1.0, 1.0, 1.0, 1.0], vec![5.0]];
        assert!((aggregate(&groups, false).unwrap() - 9.0 / 5.0).abs() < 1e-12);
        assert!((aggregate(&groups, true).unwrap() - 3.0).abs() < 1e-12);
        assert_eq!(aggregate(&[Vec::new()], false), None);
    }

    #[test]
    fn perfect_tracking_scores_zero_errors() {
        use crate::baseversion::{
            identity_pose, Category, DetectionBox, FrameRecord, LifecycleState, TrackedBox,
        };
        let mut frames = Vec::new();
        let mut outputs = Vec::new();
        for i in 0..12u64 {
            let t = i as f64 * 0.1;
            let det = DetectionBox {
                score: 1.0,
                category: Category::Car,
                global_xyz: [8.0 * t, 0.0, 0.8],
                lwh: [4.0, 2.0, 1.6],
                global_orientation: DetectionBox::orientation_from_yaw(0.0),
                global_yaw: 0.0,
                global_velocity: [8.0, 0.0],
                global_acceleration: [0.0, 0.0],
                velocity_measured: true,
                acceleration_measured: true,
            };
            frames.push(FrameRecord {
                frame_index: i,
                timestamp: t,
                token: format!("t{i}"),
                detections: vec![det],
                ego_to_global: identity_pose(),
                camera_calibrations: Vec::new(),
            });
            outputs.push(OutputFrame {
                scene_id: "s".into(),
                frame_index: i,
                timestamp: t,
                boxes: vec![TrackedBox {
                    track_id: 1,
                    category: Category::Car,
                    global_xyz: [8.0 * t, 0.0, 0.8],
                    lwh: [4.0, 2.0, 1.6],
                    global_yaw: 0.0,
                    score: 1.0,
                    velocity: [8.0, 0.0],
                    acceleration: [0.0, 0.0],
                    state: LifecycleState::Confirmed,
                }],
            });
        }
        let scene = SceneRecord { scene_id: "s".into(), frames };
        let report = evaluate_motion(&scene, &outputs, &MotionEvalConfig::default()).unwrap();
        assert_eq!(report.tp, 12);
        assert_eq!(report.n_angle_samples, 12);
        assert!(report.vae_deg.abs() < 1e-9);
        assert!(report.vne_mps.abs() < 1e-9);
        assert_eq!(report.vaie_deg, None);
        assert_eq!(report.vir, 0.0);
        assert!(report.vse_mps < 1e-9);
        // Constant speed has no peaks to delay.
        assert_eq!(report.vde_frames, None);
    }
}
