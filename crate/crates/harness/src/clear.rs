//! CLEAR-style tracking quality counts over a scene.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use bevtrack_core::baseversion::{OutputFrame, SceneRecord};
use bevtrack_core::config::PerCategory;

/// Frame-level tracking counts. Ground-truth identity is positional: object k
/// is detection k of every ground-truth frame.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClearCounts {
    /// Ground-truth boxes over all frames.
    pub gt: usize,
    pub tp: usize,
    pub fp: usize,
    #[serde(rename = "fn")]
    pub fn_: usize,
    /// A ground-truth identity matched to a different track id than the last
    /// time it was matched, gaps included.
    pub idsw: usize,
    pub mota: f64,
}

/// Matches tracker output to ground truth per frame (same category, greedy
/// nearest center within `match_distance`) and accumulates CLEAR counts.
pub fn clear_counts(
    gt: &SceneRecord,
    tracked: &[OutputFrame],
    match_distance: &PerCategory<f64>,
) -> ClearCounts {
    let by_index: HashMap<u64, &OutputFrame> =
        tracked.iter().map(|f| (f.frame_index, f)).collect();
    let mut counts = ClearCounts { gt: 0, tp: 0, fp: 0, fn_: 0, idsw: 0, mota: 0.0 };
    let mut last_id: HashMap<usize, u64> = HashMap::new();

    for frame in &gt.frames {
        counts.gt += frame.detections.len();
        let boxes: &[bevtrack_core::baseversion::TrackedBox] =
            by_index.get(&frame.frame_index).map_or(&[], |f| f.boxes.as_slice());

        let mut candidates: Vec<(f64, usize, usize)> = Vec::new();
        for (gi, det) in frame.detections.iter().enumerate() {
            for (bi, b) in boxes.iter().enumerate() {
                if b.category != det.category {
                    continue;
                }
                let dist = (det.global_xyz[0] - b.global_xyz[0])
                    .hypot(det.global_xyz[1] - b.global_xyz[1]);
                if dist <= *match_distance.get(det.category) {
                    candidates.push((dist, gi, bi));
                }
            }
        }
        candidates.sort_by(|a, b| a.partial_cmp(b).unwrap());
        let mut gt_used = vec![false; frame.detections.len()];
        let mut box_used = vec![false; boxes.len()];
        for (_, gi, bi) in candidates {
            if gt_used[gi] || box_used[bi] {
                continue;
            }
            gt_used[gi] = true;
            box_used[bi] = true;
            counts.tp += 1;
            let id = boxes[bi].track_id;
            if let Some(prev) = last_id.insert(gi, id) {
                if prev != id {
                    counts.idsw += 1;
                }
            }
        }
        counts.fn_ += gt_used.iter().filter(|u| !**u).count();
        counts.fp += box_used.iter().filter(|u| !**u).count();
    }

    counts.mota = if counts.gt == 0 {
        1.0
    } else {
        1.0 - (counts.fp + counts.fn_ + counts.idsw) as f64 / counts.gt as f64
    };
    counts
}
