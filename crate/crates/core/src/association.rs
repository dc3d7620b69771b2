//! Detection-to-track association.
//!
//! Stage 1 scores every same-category pair on the BEV plane with a
//! bidirectional similarity: the track is pushed forward one frame under a
//! constant-velocity model, the detection is pulled backward, and the two
//! rotated-IoU similarities are blended. Stage 2 re-examines the leftovers on
//! the image plane, where a detection with a large depth error still lands on
//! top of its track.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::baseversion::{CameraCalib, Category, DetectionBox};
use crate::config::PerCategory;
use crate::geometry::{
    diou_bev, giou_bev, project_box_to_image, ro_gdiou, sdiou_rv, Box7, GeometryError, IouWeights,
};

/// BEV similarity used for stage-1 matching.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CostKind {
    RoGdiou,
    Giou,
    Diou,
}

impl std::fmt::Display for CostKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            CostKind::RoGdiou => "ro_gdiou",
            CostKind::Giou => "giou",
            CostKind::Diou => "diou",
        })
    }
}

/// Association settings. Thresholds are expressed in similarity units
/// (higher = more alike) and negated internally where costs are needed.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AssocConfig {
    /// Blend between the current-frame term (alpha) and the backward term
    /// (1 - alpha). Must lie in [0, 1].
    pub alpha: f64,
    pub weights: IouWeights,
    pub cost_kind: CostKind,
    /// Minimum BEV similarity for a stage-1 pair to survive.
    pub threshold_bev: PerCategory<f64>,
    /// Minimum image-plane SDIoU for a stage-2 pair to survive.
    pub threshold_rv: PerCategory<f64>,
}

impl Default for AssocConfig {
    fn default() -> Self {
        AssocConfig {
            alpha: 0.5,
            weights: IouWeights::default(),
            cost_kind: CostKind::RoGdiou,
            threshold_bev: PerCategory::uniform(-0.5),
            threshold_rv: PerCategory::uniform(0.1),
        }
    }
}

impl AssocConfig {
    pub fn validate(&self) -> Result<(), String> {
        if !(0.0..=1.0).contains(&self.alpha) {
            return Err(format!("alpha must lie in [0, 1], got {}", self.alpha));
        }
        IouWeights::new(self.weights.omega1, self.weights.omega2)
            .map_err(|e| e.to_string())?;
        Ok(())
    }
}

/// The association-facing view of a live track: its last filtered box and
/// planar velocity, one frame behind the detections being matched.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TrackState {
    pub id: u64,
    pub category: Category,
    pub box7: Box7,
    pub velocity: [f64; 2],
}

/// Detection displaced back to the previous frame under constant velocity.
pub fn backward_predict(det: &DetectionBox, dt: f64) -> Box7 {
    let mut b = det.box7();
    b.x -= det.global_velocity[0] * dt;
    b.y -= det.global_velocity[1] * dt;
    b
}

/// Track box advanced to the current frame under constant velocity
/// (deliberately simpler than the track's own constant-acceleration filter).
pub fn forward_predict(track: &TrackState, dt: f64) -> Box7 {
    let mut b = track.box7;
    b.x += track.velocity[0] * dt;
    b.y += track.velocity[1] * dt;
    b
}

fn bev_similarity(a: &Box7, b: &Box7, cfg: &AssocConfig) -> Result<f64, GeometryError> {
    match cfg.cost_kind {
        CostKind::RoGdiou => ro_gdiou(a, b, &cfg.weights),
        CostKind::Giou => giou_bev(a, b),
        CostKind::Diou => diou_bev(a, b),
    }
}

/// Dense cost matrix with stable row/column identifiers (detection indices
/// and track ids). All entries are finite; lower cost = better match.
#[derive(Debug, Clone, PartialEq)]
pub struct CostMatrix {
    values: Vec<f64>,
    pub row_ids: Vec<usize>,
    pub col_ids: Vec<u64>,
}

impl CostMatrix {
    pub fn new(row_ids: Vec<usize>, col_ids: Vec<u64>, values: Vec<f64>) -> Self {
        assert_eq!(values.len(), row_ids.len() * col_ids.len());
        debug_assert!(values.iter().all(|v| v.is_finite()), "cost entries must be finite");
        CostMatrix { values, row_ids, col_ids }
    }

    pub fn rows(&self) -> usize {
        self.row_ids.len()
    }

    pub fn cols(&self) -> usize {
        self.col_ids.len()
    }

    pub fn get(&self, r: usize, c: usize) -> f64 {
        self.values[r * self.col_ids.len() + c]
    }
}

/// Bidirectional association cost between detections at the current frame and
/// tracks one frame behind:
/// `-(alpha * sim(det, forward(track)) + (1 - alpha) * sim(backward(det), track))`.
pub fn bidirectional_cost(
    dets: &[DetectionBox],
    tracks: &[TrackState],
    dt: f64,
    cfg: &AssocConfig,
) -> Result<CostMatrix, GeometryError> {
    let mut values = Vec::with_capacity(dets.len() * tracks.len());
    let forwards: Vec<Box7> = tracks.iter().map(|t| forward_predict(t, dt)).collect();
    for det in dets {
        let det_now = det.box7();
        let det_back = backward_predict(det, dt);
        for (track, fwd) in tracks.iter().zip(&forwards) {
            let now = bev_similarity(&det_now, fwd, cfg)?;
            let back = bev_similarity(&det_back, &track.box7, cfg)?;
            values.push(-(cfg.alpha * now + (1.0 - cfg.alpha) * back));
        }
    }
    Ok(CostMatrix::new(
        (0..dets.len()).collect(),
        tracks.iter().map(|t| t.id).collect(),
        values,
    ))
}

/// Pairs plus the leftovers on both sides. Every row id and column id of the
/// source matrix appears exactly once, either in a pair or as unmatched.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct MatchSet {
    pub pairs: Vec<(usize, u64)>,
    pub unmatched_detections: Vec<usize>,
    pub unmatched_tracks: Vec<u64>,
}

impl MatchSet {
    fn from_assignment(cost: &CostMatrix, assigned: &[Option<usize>], threshold: f64) -> MatchSet {
        let mut pairs = Vec::new();
        let mut used_cols = vec![false; cost.cols()];
        let mut unmatched_detections = Vec::new();
        for (r, col) in assigned.iter().enumerate() {
            match col {
                Some(c) if cost.get(r, *c) <= threshold => {
                    pairs.push((cost.row_ids[r], cost.col_ids[*c]));
                    used_cols[*c] = true;
                }
                _ => unmatched_detections.push(cost.row_ids[r]),
            }
        }
        let unmatched_tracks = (0..cost.cols())
            .filter(|c| !used_cols[*c])
            .map(|c| cost.col_ids[c])
            .collect();
        MatchSet { pairs, unmatched_detections, unmatched_tracks }
    }
}

/// Minimum-total-cost assignment (Hungarian method with potentials), then a
/// gate: solved pairs whose cost exceeds `threshold` are demoted to
/// unmatched. Solve-then-gate, not gate-then-solve.
pub fn hungarian(cost: &CostMatrix, threshold: f64) -> MatchSet {
    let assigned = solve_assignment(cost);
    MatchSet::from_assignment(cost, &assigned, threshold)
}

// Row -> column assignment minimizing total cost; all of the smaller side is
// assigned. O(n^2 m) shortest augmenting paths over reduced costs.
#[allow(clippy::needless_range_loop)]
fn solve_assignment(cost: &CostMatrix) -> Vec<Option<usize>> {
    let (n, m) = (cost.rows(), cost.cols());
    if n == 0 || m == 0 {
        return vec![None; n];
    }
    let transposed = n > m;
    let (rows, cols) = if transposed { (m, n) } else { (n, m) };
    let at = |r: usize, c: usize| if transposed { cost.get(c, r) } else { cost.get(r, c) };

    const INF: f64 = f64::INFINITY;
    let mut u = vec![0.0; rows + 1];
    let mut v = vec![0.0; cols + 1];
    let mut p = vec![0usize; cols + 1]; // p[j] = row (1-based) assigned to column j
    let mut way = vec![0usize; cols + 1];
    for i in 1..=rows {
        p[0] = i;
        let mut j0 = 0usize;
        let mut minv = vec![INF; cols + 1];
        let mut used = vec![false; cols + 1];
        loop {
            used[j0] = true;
            let i0 = p[j0];
            let mut delta = INF;
            let mut j1 = 0usize;
            for j in 1..=cols {
                if used[j] {
                    continue;
                }
                let cur = at(i0 - 1, j - 1) - u[i0] - v[j];
                if cur < minv[j] {
                    minv[j] = cur;
                    way[j] = j0;
                }
                if minv[j] < delta {
                    delta = minv[j];
                    j1 = j;
                }
            }
            for j in 0..=cols {
                if used[j] {
                    u[p[j]] += delta;
                    v[j] -= delta;
                } else {
                    minv[j] -= delta;
                }
            }
            j0 = j1;
            if p[j0] == 0 {
                break;
            }
        }
        loop {
            let j1 = way[j0];
            p[j0] = p[j1];
            j0 = j1;
            if j0 == 0 {
                break;
            }
        }
    }

    let mut assigned = vec![None; n];
    for j in 1..=cols {
        if p[j] > 0 {
            let (row, col) = if transposed { (j - 1, p[j] - 1) } else { (p[j] - 1, j - 1) };
            assigned[row] = Some(col);
        }
    }
    assigned
}

/// Greedy matching: repeatedly take the globally cheapest remaining entry at
/// or under `threshold`; ties break toward the smaller row, then column.
#[allow(clippy::needless_range_loop)]
pub fn greedy(cost: &CostMatrix, threshold: f64) -> MatchSet {
    let (n, m) = (cost.rows(), cost.cols());
    let mut row_free = vec![true; n];
    let mut col_free = vec![true; m];
    let mut assigned: Vec<Option<usize>> = vec![None; n];
    loop {
        let mut best: Option<(f64, usize, usize)> = None;
        for r in 0..n {
            if !row_free[r] {
                continue;
            }
            for c in 0..m {
                if !col_free[c] {
                    continue;
                }
                let v = cost.get(r, c);
                if v <= threshold && best.map_or(true, |(bv, _, _)| v < bv) {
                    best = Some((v, r, c));
                }
            }
        }
        match best {
            Some((_, r, c)) => {
                assigned[r] = Some(c);
                row_free[r] = false;
                col_free[c] = false;
            }
            None => break,
        }
    }
    MatchSet::from_assignment(cost, &assigned, threshold)
}

/// Two-stage matching. Stage 1: per-category bidirectional BEV costs solved
/// with the Hungarian method. Stage 2: the leftovers are projected into the
/// first camera that sees them ("front" cameras preferred) and matched
/// greedily by SDIoU; pairs must share a camera. With no cameras, stage 2 is
/// a no-op and the result equals stage 1.
pub fn two_stage_match(
    dets: &[DetectionBox],
    tracks: &[TrackState],
    cameras: &[CameraCalib],
    dt: f64,
    cfg: &AssocConfig,
) -> Result<MatchSet, GeometryError> {
    let mut result = MatchSet::default();
    let mut residual_dets: Vec<usize> = Vec::new();
    let mut residual_tracks: Vec<usize> = Vec::new();

    let categories: BTreeSet<Category> = dets
        .iter()
        .map(|d| d.category)
        .chain(tracks.iter().map(|t| t.category))
        .collect();

    for cat in categories {
        let det_idx: Vec<usize> =
            (0..dets.len()).filter(|&i| dets[i].category == cat).collect();
        let trk_idx: Vec<usize> =
            (0..tracks.len()).filter(|&i| tracks[i].category == cat).collect();
        let sub_dets: Vec<DetectionBox> = det_idx.iter().map(|&i| dets[i].clone()).collect();
        let sub_tracks: Vec<TrackState> = trk_idx.iter().map(|&i| tracks[i]).collect();
        let mut cost = bidirectional_cost(&sub_dets, &sub_tracks, dt, cfg)?;
        // Remap local row indices to positions in the caller's slice.
        cost.row_ids = det_idx.clone();
        let matched = hungarian(&cost, -cfg.threshold_bev.get(cat));
        residual_dets.extend(matched.unmatched_detections.iter().copied());
        residual_tracks.extend(
            matched
                .unmatched_tracks
                .iter()
                .map(|id| tracks.iter().position(|t| t.id == *id).expect("known track id")),
        );
        result.pairs.extend(matched.pairs);
    }

    if cameras.is_empty() || (residual_dets.is_empty() || residual_tracks.is_empty()) {
        result.unmatched_detections = residual_dets;
        result.unmatched_tracks = residual_tracks.iter().map(|&i| tracks[i].id).collect();
        sort_match_set(&mut result);
        return Ok(result);
    }

    // "front" cameras first, otherwise document order.
    let mut cam_order: Vec<usize> = (0..cameras.len()).collect();
    cam_order.sort_by_key(|&i| !cameras[i].camera_id.to_ascii_lowercase().contains("front"));
    let project = |b: &Box7| -> Option<(usize, crate::geometry::Rect2D)> {
        cam_order
            .iter()
            .find_map(|&ci| project_box_to_image(b, &cameras[ci]).ok().map(|r| (ci, r)))
    };

    let det_rects: Vec<Option<(usize, crate::geometry::Rect2D)>> =
        residual_dets.iter().map(|&i| project(&dets[i].box7())).collect();
    let track_rects: Vec<Option<(usize, crate::geometry::Rect2D)>> =
        residual_tracks.iter().map(|&i| project(&forward_predict(&tracks[i], dt))).collect();

    let mut matched_d = vec![false; residual_dets.len()];
    let mut matched_t = vec![false; residual_tracks.len()];
    let rv_categories: BTreeSet<Category> = residual_dets
        .iter()
        .map(|&i| dets[i].category)
        .chain(residual_tracks.iter().map(|&i| tracks[i].category))
        .collect();
    for cat in rv_categories {
        for cam in 0..cameras.len() {
            let d_local: Vec<usize> = (0..residual_dets.len())
                .filter(|&k| {
                    dets[residual_dets[k]].category == cat
                        && det_rects[k].is_some_and(|(ci, _)| ci == cam)
                })
                .collect();
            let t_local: Vec<usize> = (0..residual_tracks.len())
                .filter(|&k| {
                    tracks[residual_tracks[k]].category == cat
                        && track_rects[k].is_some_and(|(ci, _)| ci == cam)
                })
                .collect();
            if d_local.is_empty() || t_local.is_empty() {
                continue;
            }
            let mut values = Vec::with_capacity(d_local.len() * t_local.len());
            for &dk in &d_local {
                for &tk in &t_local {
                    let (_, rd) = det_rects[dk].expect("projected detection");
                    let (_, rt) = track_rects[tk].expect("projected track");
                    values.push(-sdiou_rv(&rd, &rt));
                }
            }
            let cost = CostMatrix::new(
                d_local.iter().map(|&k| residual_dets[k]).collect(),
                t_local.iter().map(|&k| tracks[residual_tracks[k]].id).collect(),
                values,
            );
            let rv = greedy(&cost, -cfg.threshold_rv.get(cat));
            for (det_id, track_id) in &rv.pairs {
                let dk = residual_dets.iter().position(|&i| i == *det_id).unwrap();
                let tk = residual_tracks
                    .iter()
                    .position(|&i| tracks[i].id == *track_id)
                    .unwrap();
                matched_d[dk] = true;
                matched_t[tk] = true;
            }
            result.pairs.extend(rv.pairs);
        }
    }

    result.unmatched_detections = residual_dets
        .iter()
        .enumerate()
        .filter(|(k, _)| !matched_d[*k])
        .map(|(_, &i)| i)
        .collect();
    result.unmatched_tracks = residual_tracks
        .iter()
        .enumerate()
        .filter(|(k, _)| !matched_t[*k])
        .map(|(_, &i)| tracks[i].id)
        .collect();
    sort_match_set(&mut result);
    Ok(result)
}

fn sort_match_set(m: &mut MatchSet) {
    m.pairs.sort_unstable();
    m.unmatched_detections.sort_unstable();
    m.unmatched_tracks.sort_unstable();
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::baseversion::DetectionBox;

    fn det_at(x: f64, y: f64, vel: [f64; 2]) -> DetectionBox {
        DetectionBox {
            score: 0.9,
            category: Category::Car,
            global_xyz: [x, y, 0.8],
            lwh: [4.0, 2.0, 1.6],
            global_orientation: DetectionBox::orientation_from_yaw(0.0),
            global_yaw: 0.0,
            global_velocity: vel,
            global_acceleration: [0.0, 0.0],
            velocity_measured: true,
            acceleration_measured: true,
        }
    }

    fn track_at(id: u64, x: f64, y: f64, vel: [f64; 2]) -> TrackState {
        TrackState {
            id,
            category: Category::Car,
            box7: Box7::new(x, y, 0.8, 4.0, 2.0, 1.6, 0.0),
            velocity: vel,
        }
    }

    fn matrix(rows: usize, cols: usize, vals: &[f64]) -> CostMatrix {
        CostMatrix::new(
            (0..rows).collect(),
            (0..cols as u64).collect(),
            vals.to_vec(),
        )
    }

    #[test]
    fn backward_predict_rewinds_by_velocity() {
        let d = det_at(10.0, 0.0, [5.0, -2.0]);
        let b = backward_predict(&d, 0.5);
        assert_eq!([b.x, b.y], [7.5, 1.0]);
        assert_eq!(b.z, 0.8);
    }

    #[test]
    fn forward_predict_advances_by_velocity() {
        let t = track_at(0, 0.0, 0.0, [10.0, 0.0]);
        let b = forward_predict(&t, 0.1);
        assert_eq!([b.x, b.y], [1.0, 0.0]);
    }

    #[test]
    fn pure_current_frame_cost_when_alpha_is_one() {
        let cfg = AssocConfig { alpha: 1.0, ..AssocConfig::default() };
        cfg.validate().unwrap();
        let dets = [det_at(1.0, 0.0, [10.0, 0.0])];
        let tracks = [track_at(0, 0.0, 0.0, [10.0, 0.0])];
        let dt = 0.1;
        let cost = bidirectional_cost(&dets, &tracks, dt, &cfg).unwrap();
        let fwd = forward_predict(&tracks[0], dt);
        let expect = -ro_gdiou(&dets[0].box7(), &fwd, &cfg.weights).unwrap();
        assert_eq!(cost.get(0, 0), expect);
    }

    #[test]
    fn static_scene_cost_is_alpha_invariant() {
        let dets = [det_at(0.3, 0.1, [0.0, 0.0])];
        let tracks = [track_at(0, 0.0, 0.0, [0.0, 0.0])];
        let base = -ro_gdiou(&dets[0].box7(), &tracks[0].box7, &IouWeights::default()).unwrap();
        for alpha in [0.0, 0.3, 0.5, 1.0] {
            let cfg = AssocConfig { alpha, ..AssocConfig::default() };
            let cost = bidirectional_cost(&dets, &tracks, 0.1, &cfg).unwrap();
            assert!((cost.get(0, 0) - base).abs() < 1e-12);
        }
    }

    #[test]
    fn cost_entries_compose_both_terms() {
        let cfg = AssocConfig::default();
        let dt = 0.1;
        let dets = [det_at(2.0, 0.0, [10.0, 0.0]), det_at(20.0, 5.0, [0.0, 0.0])];
        let tracks = [track_at(0, 1.0, 0.0, [10.0, 0.0]), track_at(1, 19.0, 5.0, [0.0, 0.0])];
        let cost = bidirectional_cost(&dets, &tracks, dt, &cfg).unwrap();
        for (i, det) in dets.iter().enumerate() {
            for (j, track) in tracks.iter().enumerate() {
                let now =
                    ro_gdiou(&det.box7(), &forward_predict(track, dt), &cfg.weights).unwrap();
                let back =
                    ro_gdiou(&backward_predict(det, dt), &track.box7, &cfg.weights).unwrap();
                let expect = -(0.5 * now + 0.5 * back);
                assert!((cost.get(i, j) - expect).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn hungarian_picks_the_diagonal() {
        let m = matrix(2, 2, &[1.0, 2.0, 2.0, 1.0]);
        let res = hungarian(&m, f64::INFINITY);
        assert_eq!(res.pairs, vec![(0, 0), (1, 1)]);
        assert!(res.unmatched_detections.is_empty());
        assert!(res.unmatched_tracks.is_empty());
    }

    #[test]
    fn hungarian_gates_after_solving() {
        // Optimal assignment is (0,1)+(1,0) with costs 2 and 3; the gate then
        // drops (1,0). Gate-then-solve would instead have kept (0,0).
        let m = matrix(2, 2, &[1.0, 2.0, 3.0, 100.0]);
        let res = hungarian(&m, 2.5);
        assert_eq!(res.pairs, vec![(0, 1)]);
        assert_eq!(res.unmatched_detections, vec![1]);
        assert_eq!(res.unmatched_tracks, vec![0]);
    }

    #[test]
    fn hungarian_with_everything_above_threshold() {
        let m = matrix(2, 2, &[1.0, 2.0, 2.0, 1.0]);
        let res = hungarian(&m, 0.5);
        assert!(res.pairs.is_empty());
        assert_eq!(res.unmatched_detections, vec![0, 1]);
        assert_eq!(res.unmatched_tracks, vec![0, 1]);
    }

    #[test]
    fn hungarian_matches_brute_force_on_random_matrices() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(17);
        for _ in 0..60 {
            let n = rng.random_range(1..=5);
            let m = rng.random_range(1..=5);
            let vals: Vec<f64> = (0..n * m).map(|_| rng.random_range(-5.0..5.0)).collect();
            let cost = matrix(n, m, &vals);
            let res = hungarian(&cost, f64::INFINITY);
            let total: f64 = res.pairs.iter().map(|(r, c)| cost.get(*r, *c as usize)).sum();
            assert!((total - brute_force_min(&cost)).abs() < 1e-9);
        }
    }

    fn brute_force_min(cost: &CostMatrix) -> f64 {
        fn rec(cost: &CostMatrix, row: usize, used: &mut Vec<bool>, k: usize) -> f64 {
            if k == 0 || row == cost.rows() {
                return 0.0;
            }
            let mut best = f64::INFINITY;
            // Skipping this row is only allowed if enough columns remain.
            if cost.rows() - row > k {
                best = rec(cost, row + 1, used, k);
            }
            for c in 0..cost.cols() {
                if !used[c] {
                    used[c] = true;
                    best = best.min(cost.get(row, c) + rec(cost, row + 1, used, k - 1));
                    used[c] = false;
                }
            }
            best
        }
        let k = cost.rows().min(cost.cols());
        rec(cost, 0, &mut vec![false; cost.cols()], k)
    }

    #[test]
    fn greedy_differs_from_hungarian_on_the_classic_trap() {
        let m = matrix(2, 2, &[1.0, 1.5, 1.2, 9.0]);
        let g = greedy(&m, 5.0);
        assert_eq!(g.pairs, vec![(0, 0)]);
        assert_eq!(g.unmatched_detections, vec![1]);
        assert_eq!(g.unmatched_tracks, vec![1]);
        let h = hungarian(&m, 5.0);
        assert_eq!(h.pairs, vec![(0, 1), (1, 0)]);
    }

    #[test]
    fn greedy_breaks_ties_toward_smaller_indices() {
        let m = matrix(2, 2, &[1.0, 1.0, 1.0, 1.0]);
        let g = greedy(&m, f64::INFINITY);
        assert_eq!(g.pairs, vec![(0, 0), (1, 1)]);
    }

    #[test]
    fn empty_inputs_yield_empty_match_set() {
        let cfg = AssocConfig::default();
        let res = two_stage_match(&[], &[], &[], 0.1, &cfg).unwrap();
        assert_eq!(res, MatchSet::default());
    }

    #[test]
    fn categories_never_cross_match() {
        let cfg = AssocConfig::default();
        let mut ped = det_at(0.0, 0.0, [0.0, 0.0]);
        ped.category = Category::Pedestrian;
        ped.lwh = [0.6, 0.6, 1.7];
        let tracks = [track_at(0, 0.0, 0.0, [0.0, 0.0])];
        let res = two_stage_match(&[ped], &tracks, &[], 0.1, &cfg).unwrap();
        assert!(res.pairs.is_empty());
        assert_eq!(res.unmatched_detections, vec![0]);
        assert_eq!(res.unmatched_tracks, vec![0]);
    }

    #[test]
    fn overlapping_pair_matches_in_stage_one() {
        let cfg = AssocConfig::default();
        let dets = [det_at(5.1, 0.05, [5.0, 0.0])];
        let tracks = [track_at(3, 4.6, 0.0, [5.0, 0.0])];
        let res = two_stage_match(&dets, &tracks, &[], 0.1, &cfg).unwrap();
        assert_eq!(res.pairs, vec![(0, 3)]);
    }

    #[test]
    fn no_cameras_equals_stage_one_exactly() {
        let cfg = AssocConfig::default();
        let dets = [det_at(5.0, 0.0, [5.0, 0.0]), det_at(40.0, 8.0, [0.0, 0.0])];
        let tracks = [track_at(0, 4.5, 0.0, [5.0, 0.0]), track_at(1, 100.0, 0.0, [0.0, 0.0])];
        let with_no_cams = two_stage_match(&dets, &tracks, &[], 0.1, &cfg).unwrap();
        let cost = bidirectional_cost(&dets, &tracks, 0.1, &cfg).unwrap();
        let mut stage1 = hungarian(&cost, -cfg.threshold_bev.default);
        sort_match_set(&mut stage1);
        assert_eq!(with_no_cams, stage1);
    }
}
