//! Configuration grid sweeps: every BEV cost function with the image-plane
//! rescue stage off and on, scored against ground truth.

use serde::{Deserialize, Serialize};

use bevtrack_core::association::CostKind;
use bevtrack_core::baseversion::SceneRecord;
use bevtrack_core::motion::{evaluate_motion, MotionEvalConfig, MotionReport};
use bevtrack_core::tracker::{run_scene, TrackError, TrackerConfig};

use crate::clear::{clear_counts, ClearCounts};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AblationRow {
    pub cost_kind: CostKind,
    pub rv_enabled: bool,
    pub counts: ClearCounts,
    pub motion: MotionReport,
}

/// Runs the 3x2 grid of cost kind and rescue-stage settings over one
/// detected scene, scoring each against the ground truth.
pub fn run_ablation(
    gt: &SceneRecord,
    detections: &SceneRecord,
    base: &TrackerConfig,
    eval: &MotionEvalConfig,
) -> Result<Vec<AblationRow>, TrackError> {
    let mut rows = Vec::with_capacity(6);
    for cost_kind in [CostKind::RoGdiou, CostKind::Giou, CostKind::Diou] {
        for rv_enabled in [false, true] {
            let mut config = base.clone();
            config.association.cost_kind = cost_kind;
            config.runtime.rv_enabled = rv_enabled;
            let output = run_scene(detections, &config)?;
            let counts = clear_counts(gt, &output, &eval.match_distance);
            let motion = evaluate_motion(gt, &output, eval)
                .map_err(|e| TrackError::InvalidConfig(e.to_string()))?;
            rows.push(AblationRow { cost_kind, rv_enabled, counts, motion });
        }
    }
    Ok(rows)
}

/// Fixed-width text table of ablation rows, one line per configuration.
pub fn format_table(rows: &[AblationRow]) -> String {
    let mut out = String::from(
        "cost      rv    mota    idsw  fp    fn    vae_deg  vne_mps  vse_mps\n",
    );
    for r in rows {
        out.push_str(&format!(
            "{:<9} {:<5} {:>6.3} {:>6} {:>5} {:>5} {:>8.3} {:>8.3} {:>8.3}\n",
            r.cost_kind.to_string(),
            r.rv_enabled,
            r.counts.mota,
            r.counts.idsw,
            r.counts.fp,
            r.counts.fn_,
            r.motion.vae_deg,
            r.motion.vne_mps,
            r.motion.vse_mps,
        ));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scenario::{generate_scenario, MotionModel, ObjectSpec, ScenarioSpec};
    use bevtrack_core::baseversion::Category;

    #[test]
    fn grid_covers_all_six_configurations() {
        let spec = ScenarioSpec {
            scene_id: "ablate".into(),
            duration: 1.0,
            frame_rate: 10.0,
            objects: vec![ObjectSpec {
                category: Category::Car,
                start_xy: [10.0, 0.0],
                heading: 0.0,
                motion: MotionModel::ConstantVelocity { speed: 8.0 },
                lwh: [4.5, 2.0, 1.6],
            }],
            pos_noise_sigma: 0.05,
            yaw_noise_sigma: 0.01,
            vel_noise_sigma: 0.05,
            dropout_prob: 0.0,
            fp_rate: 0.0,
            fp_placement: Default::default(),
            depth_error_injections: vec![],
            camera: true,
            seed: 3,
        };
        let g = generate_scenario(&spec).unwrap();
        let rows = run_ablation(
            &g.ground_truth,
            &g.detections,
            &TrackerConfig::default(),
            &MotionEvalConfig::default(),
        )
        .unwrap();
        assert_eq!(rows.len(), 6);
        let mut seen: Vec<(String, bool)> =
            rows.iter().map(|r| (r.cost_kind.to_string(), r.rv_enabled)).collect();
        seen.dedup();
        assert_eq!(seen.len(), 6);
        for r in &rows {
            assert!(r.counts.mota > 0.5, "degenerate run: {r:?}");
        }
        let table = format_table(&rows);
        assert_eq!(table.lines().count(), 7);
    }
}
