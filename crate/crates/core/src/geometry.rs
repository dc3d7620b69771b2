//! Rotated-box geometry on the BEV (bird's-eye-view) plane.
//!
//! Boxes are 7-DOF (center, dimensions, yaw). Overlap is computed exactly by
//! half-plane clipping of the rotated footprints; the combined similarity
//! `ro_gdiou` augments rotated IoU with an enclosing-region penalty and a
//! normalized center-distance penalty.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::baseversion::CameraCalib;

#[derive(Debug, Error, PartialEq)]
pub enum GeometryError {
    #[error("degenerate box: BEV footprint has zero area")]
    DegenerateBox,
    #[error("box is not visible in the camera image")]
    NotVisible,
    #[error("invalid IoU weights: {0}")]
    InvalidWeights(String),
}

/// 7-DOF box: center, dimensions, yaw about the vertical axis.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Box7 {
    pub x: f64,
    pub y: f64,
    pub z: f64,
    pub l: f64,
    pub w: f64,
    pub h: f64,
    /// Yaw in radians, kept in (-pi, pi].
    pub theta: f64,
}

impl Box7 {
    pub fn new(x: f64, y: f64, z: f64, l: f64, w: f64, h: f64, theta: f64) -> Self {
        Box7 { x, y, z, l, w, h, theta: wrap_angle(theta) }
    }

    pub fn center_xy(&self) -> [f64; 2] {
        [self.x, self.y]
    }
}

/// Wraps an angle to (-pi, pi]. The branch point maps to +pi.
pub fn wrap_angle(a: f64) -> f64 {
    let two_pi = 2.0 * std::f64::consts::PI;
    let mut r = (a + std::f64::consts::PI).rem_euclid(two_pi) - std::f64::consts::PI;
    if r == -std::f64::consts::PI {
        r = std::f64::consts::PI;
    }
    r
}

/// The eight box corners, `R * P + T`.
///
/// Columns of the half-extent matrix `P` follow the fixed ordering
/// x: [+,+,+,+,-,-,-,-] * l/2, y: [+,-,-,+,+,-,-,+] * w/2,
/// z: [+,+,-,-,+,+,-,-] * h/2, so corners 2,3,7,6 are the bottom face.
pub fn corners_3d(b: &Box7) -> [[f64; 3]; 8] {
    const SX: [f64; 8] = [1.0, 1.0, 1.0, 1.0, -1.0, -1.0, -1.0, -1.0];
    const SY: [f64; 8] = [1.0, -1.0, -1.0, 1.0, 1.0, -1.0, -1.0, 1.0];
    const SZ: [f64; 8] = [1.0, 1.0, -1.0, -1.0, 1.0, 1.0, -1.0, -1.0];
    let (sin, cos) = b.theta.sin_cos();
    let mut out = [[0.0; 3]; 8];
    for i in 0..8 {
        let px = SX[i] * b.l / 2.0;
        let py = SY[i] * b.w / 2.0;
        let pz = SZ[i] * b.h / 2.0;
        out[i] = [
            cos * px - sin * py + b.x,
            sin * px + cos * py + b.y,
            pz + b.z,
        ];
    }
    out
}

/// Convex quadrilateral footprint, counter-clockwise.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BevPolygon(pub [[f64; 2]; 4]);

/// BEV footprint of a box: the bottom-face corners (indices 2, 3, 7, 6)
/// projected to the plane and ordered counter-clockwise.
pub fn bev_polygon(b: &Box7) -> BevPolygon {
    let c = corners_3d(b);
    // Index order 2, 3, 7, 6 traverses that corner set counter-clockwise.
    let mut pts = [
        [c[2][0], c[2][1]],
        [c[3][0], c[3][1]],
        [c[7][0], c[7][1]],
        [c[6][0], c[6][1]],
    ];
    if signed_area_x2(&pts) < 0.0 {
        pts.reverse();
    }
    BevPolygon(pts)
}

fn signed_area_x2(pts: &[[f64; 2]]) -> f64 {
    let n = pts.len();
    let mut s = 0.0;
    for i in 0..n {
        let p = pts[i];
        let q = pts[(i + 1) % n];
        s += p[0] * q[1] - q[0] * p[1];
    }
    s
}

/// Shoelace area with a canonical starting vertex, so that polygons with the
/// same cyclic vertex sequence produce bit-identical sums regardless of which
/// rotation of the sequence the caller holds.
pub fn polygon_area(pts: &[[f64; 2]]) -> f64 {
    let n = pts.len();
    if n < 3 {
        return 0.0;
    }
    let start = lexicographic_min_index(pts);
    let mut s = 0.0;
    for k in 0..n {
        let p = pts[(start + k) % n];
        let q = pts[(start + k + 1) % n];
        s += p[0] * q[1] - q[0] * p[1];
    }
    s.abs() / 2.0
}

fn lexicographic_min_index(pts: &[[f64; 2]]) -> usize {
    let mut best = 0;
    for (i, p) in pts.iter().enumerate().skip(1) {
        if (p[0], p[1]) < (pts[best][0], pts[best][1]) {
            best = i;
        }
    }
    best
}

/// Area of intersection of two convex CCW polygons via iterative half-plane
/// clipping. Symmetric in its arguments and exact for coincident inputs.
pub fn convex_overlap_area(a: &BevPolygon, b: &BevPolygon) -> f64 {
    // Canonical argument order makes the floating-point result symmetric.
    let (subject, clip) = if a.0 <= b.0 { (a, b) } else { (b, a) };
    let mut poly: Vec<[f64; 2]> = subject.0.to_vec();
    let mut next: Vec<[f64; 2]> = Vec::with_capacity(8);
    for i in 0..4 {
        if poly.len() < 3 {
            return 0.0;
        }
        let e0 = clip.0[i];
        let e1 = clip.0[(i + 1) % 4];
        clip_halfplane(&poly, e0, e1, &mut next);
        std::mem::swap(&mut poly, &mut next);
    }
    polygon_area(&poly)
}

// Keeps the side of the directed edge e0->e1 that lies to its left
// (the interior, for a CCW clip polygon). Points on the edge count as inside.
fn clip_halfplane(poly: &[[f64; 2]], e0: [f64; 2], e1: [f64; 2], out: &mut Vec<[f64; 2]>) {
    out.clear();
    let ex = e1[0] - e0[0];
    let ey = e1[1] - e0[1];
    let dist = |p: [f64; 2]| ex * (p[1] - e0[1]) - ey * (p[0] - e0[0]);
    let n = poly.len();
    for i in 0..n {
        let s = poly[i];
        let e = poly[(i + 1) % n];
        let ds = dist(s);
        let de = dist(e);
        match (ds >= 0.0, de >= 0.0) {
            (true, true) => out.push(e),
            (true, false) => out.push(intersect(s, e, ds, de)),
            (false, true) => {
                out.push(intersect(s, e, ds, de));
                out.push(e);
            }
            (false, false) => {}
        }
    }
}

fn intersect(s: [f64; 2], e: [f64; 2], ds: f64, de: f64) -> [f64; 2] {
    let t = ds / (ds - de);
    [s[0] + t * (e[0] - s[0]), s[1] + t * (e[1] - s[1])]
}

/// Convex hull (monotone chain) of a point set, CCW. Duplicate and collinear
/// points are dropped.
fn convex_hull(points: &[[f64; 2]]) -> Vec<[f64; 2]> {
    let mut pts: Vec<[f64; 2]> = points.to_vec();
    pts.sort_by(|p, q| (p[0], p[1]).partial_cmp(&(q[0], q[1])).unwrap());
    pts.dedup();
    let n = pts.len();
    if n < 3 {
        return pts;
    }
    let cross = |o: [f64; 2], a: [f64; 2], b: [f64; 2]| {
        (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])
    };
    let mut hull: Vec<[f64; 2]> = Vec::with_capacity(2 * n);
    for &p in pts.iter() {
        while hull.len() >= 2 && cross(hull[hull.len() - 2], hull[hull.len() - 1], p) <= 0.0 {
            hull.pop();
        }
        hull.push(p);
    }
    let lower_len = hull.len() + 1;
    for &p in pts.iter().rev() {
        while hull.len() >= lower_len && cross(hull[hull.len() - 2], hull[hull.len() - 1], p) <= 0.0 {
            hull.pop();
        }
        hull.push(p);
    }
    hull.pop();
    hull
}

/// Weights of the two Ro_GDIoU penalty terms. Their sum must be 2 so the
/// similarity spans [-2, 1].
#[derive(Debug, Clone, Copy, Serialize, Deserialize, PartialEq)]
pub struct IouWeights {
    pub omega1: f64,
    pub omega2: f64,
}

impl IouWeights {
    pub fn new(omega1: f64, omega2: f64) -> Result<Self, GeometryError> {
        if !(omega1 >= 0.0 && omega2 >= 0.0) {
            return Err(GeometryError::InvalidWeights(format!(
                "weights must be non-negative, got ({omega1}, {omega2})"
            )));
        }
        if (omega1 + omega2 - 2.0).abs() > 1e-9 {
            return Err(GeometryError::InvalidWeights(format!(
                "weights must sum to 2, got ({omega1}, {omega2})"
            )));
        }
        Ok(IouWeights { omega1, omega2 })
    }
}

impl Default for IouWeights {
    fn default() -> Self {
        IouWeights { omega1: 1.0, omega2: 1.0 }
    }
}

struct PairTerms {
    iou: f64,
    /// (C - U) / C with C the area of the enclosing convex region.
    enclosure_term: f64,
    /// c^2 / d^2: squared center distance over squared extent of the pair.
    center_term: f64,
}

fn bev_pair_terms(a: &Box7, b: &Box7) -> Result<PairTerms, GeometryError> {
    let pa = bev_polygon(a);
    let pb = bev_polygon(b);
    let area_a = polygon_area(&pa.0);
    let area_b = polygon_area(&pb.0);
    if area_a <= 0.0 || area_b <= 0.0 {
        return Err(GeometryError::DegenerateBox);
    }
    let inter = convex_overlap_area(&pa, &pb);
    let union = area_a + area_b - inter;
    let iou = inter / union;

    let mut points = [[0.0; 2]; 8];
    points[..4].copy_from_slice(&pa.0);
    points[4..].copy_from_slice(&pb.0);
    let hull = convex_hull(&points);
    let enclosing = polygon_area(&hull);
    let enclosure_term = ((enclosing - union) / enclosing).max(0.0);

    // Extent of the pair: largest vertex-to-vertex distance. Both box centers
    // lie inside the hull, so the center distance never exceeds it.
    let mut d2: f64 = 0.0;
    for i in 0..8 {
        for j in (i + 1)..8 {
            let dx = points[i][0] - points[j][0];
            let dy = points[i][1] - points[j][1];
            d2 = d2.max(dx * dx + dy * dy);
        }
    }
    let cx = a.x - b.x;
    let cy = a.y - b.y;
    let center_term = (cx * cx + cy * cy) / d2;

    Ok(PairTerms { iou, enclosure_term, center_term })
}

/// Rotated IoU of the BEV footprints.
pub fn ro_iou(a: &Box7, b: &Box7) -> Result<f64, GeometryError> {
    Ok(bev_pair_terms(a, b)?.iou)
}

/// Rotated generalized-distance IoU:
/// `Ro_IoU - omega1 * (C - U) / C - omega2 * c^2 / d^2`.
///
/// Ranges over [-2, 1]; coincident boxes score exactly 1, and the similarity
/// falls toward -2 as the boxes separate.
pub fn ro_gdiou(a: &Box7, b: &Box7, weights: &IouWeights) -> Result<f64, GeometryError> {
    let t = bev_pair_terms(a, b)?;
    Ok(t.iou - weights.omega1 * t.enclosure_term - weights.omega2 * t.center_term)
}

/// Generalized IoU on the BEV plane (enclosure penalty only). Reduces to
/// plain IoU when one footprint contains the other.
pub fn giou_bev(a: &Box7, b: &Box7) -> Result<f64, GeometryError> {
    let t = bev_pair_terms(a, b)?;
    Ok(t.iou - t.enclosure_term)
}

/// Distance IoU on the BEV plane (center-distance penalty only).
pub fn diou_bev(a: &Box7, b: &Box7) -> Result<f64, GeometryError> {
    let t = bev_pair_terms(a, b)?;
    Ok(t.iou - t.center_term)
}

/// Axis-aligned image-plane rectangle, pixels.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Rect2D {
    pub x_min: f64,
    pub y_min: f64,
    pub x_max: f64,
    pub y_max: f64,
}

impl Rect2D {
    pub fn width(&self) -> f64 {
        self.x_max - self.x_min
    }

    pub fn height(&self) -> f64 {
        self.y_max - self.y_min
    }

    pub fn area(&self) -> f64 {
        self.width() * self.height()
    }

    pub fn center(&self) -> [f64; 2] {
        [(self.x_min + self.x_max) / 2.0, (self.y_min + self.y_max) / 2.0]
    }
}

/// SDIoU similarity of two image rectangles: IoU minus a normalized
/// center-distance penalty minus a normalized shape (width/height) penalty.
/// Identical rectangles score 1.
pub fn sdiou_rv(a: &Rect2D, b: &Rect2D) -> f64 {
    let ix = (a.x_max.min(b.x_max) - a.x_min.max(b.x_min)).max(0.0);
    let iy = (a.y_max.min(b.y_max) - a.y_min.max(b.y_min)).max(0.0);
    let inter = ix * iy;
    let union = a.area() + b.area() - inter;
    let iou = inter / union;

    let wc = a.x_max.max(b.x_max) - a.x_min.min(b.x_min);
    let hc = a.y_max.max(b.y_max) - a.y_min.min(b.y_min);
    let d2 = wc * wc + hc * hc;
    let ca = a.center();
    let cb = b.center();
    let c2 = (ca[0] - cb[0]).powi(2) + (ca[1] - cb[1]).powi(2);

    let dw = a.width() - b.width();
    let dh = a.height() - b.height();
    let shape = (dw * dw + dh * dh) / d2;

    iou - c2 / d2 - shape
}

/// Projects a box into a camera image: pinhole projection of the eight
/// corners, bounds clamped to the image. Boxes whose center sits at
/// non-positive camera-frame depth, or whose projection misses the image
/// entirely, are `NotVisible`.
pub fn project_box_to_image(b: &Box7, calib: &CameraCalib) -> Result<Rect2D, GeometryError> {
    let center_cam = calib.global_to_camera_point([b.x, b.y, b.z]);
    if center_cam[2] <= 0.0 {
        return Err(GeometryError::NotVisible);
    }
    let (fx, fy, cx, cy) = (calib.fx(), calib.fy(), calib.cx(), calib.cy());
    let mut u_min = f64::INFINITY;
    let mut u_max = f64::NEG_INFINITY;
    let mut v_min = f64::INFINITY;
    let mut v_max = f64::NEG_INFINITY;
    for corner in corners_3d(b) {
        let p = calib.global_to_camera_point(corner);
        // Corners that dip behind the image plane are pushed to a tiny
        // positive depth; the subsequent image clamp bounds the blow-up.
        let z = p[2].max(1e-6);
        let u = fx * p[0] / z + cx;
        let v = fy * p[1] / z + cy;
        u_min = u_min.min(u);
        u_max = u_max.max(u);
        v_min = v_min.min(v);
        v_max = v_max.max(v);
    }
    let w = calib.image_size[0] as f64;
    let h = calib.image_size[1] as f64;
    let rect = Rect2D {
        x_min: u_min.max(0.0),
        y_min: v_min.max(0.0),
        x_max: u_max.min(w),
        y_max: v_max.min(h),
    };
    if rect.x_min >= rect.x_max || rect.y_min >= rect.y_max {
        return Err(GeometryError::NotVisible);
    }
    Ok(rect)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn unit_square_at(x: f64, y: f64) -> Box7 {
        Box7::new(x, y, 0.0, 1.0, 1.0, 1.0, 0.0)
    }

    #[test]
    fn corner_layout_axis_aligned() {
        let b = Box7::new(0.0, 0.0, 0.0, 2.0, 1.0, 1.0, 0.0);
        let c = corners_3d(&b);
        assert_eq!(c[2], [1.0, -0.5, -0.5]);
        assert_eq!(c[0], [1.0, 0.5, 0.5]);
    }

    #[test]
    fn corner_layout_quarter_turn() {
        let b = Box7::new(0.0, 0.0, 0.0, 2.0, 1.0, 1.0, std::f64::consts::FRAC_PI_2);
        let c = corners_3d(&b);
        assert!((c[2][0] - 0.5).abs() < 1e-12);
        assert!((c[2][1] - 1.0).abs() < 1e-12);
        assert!((c[2][2] + 0.5).abs() < 1e-12);
    }

    #[test]
    fn footprint_is_ccw_rectangle() {
        let b = Box7::new(0.0, 0.0, 0.0, 2.0, 1.0, 1.0, 0.0);
        let poly = bev_polygon(&b);
        assert!(signed_area_x2(&poly.0) > 0.0);
        let mut got: Vec<[f64; 2]> = poly.0.to_vec();
        got.sort_by(|p, q| (p[0], p[1]).partial_cmp(&(q[0], q[1])).unwrap());
        assert_eq!(got, vec![[-1.0, -0.5], [-1.0, 0.5], [1.0, -0.5], [1.0, 0.5]]);
        assert!((polygon_area(&poly.0) - 2.0).abs() < 1e-12);
    }

    #[test]
    fn overlap_identical_and_disjoint() {
        let a = bev_polygon(&unit_square_at(0.0, 0.0));
        assert_eq!(convex_overlap_area(&a, &a), 1.0);
        let far = bev_polygon(&unit_square_at(10.0, 0.0));
        assert_eq!(convex_overlap_area(&a, &far), 0.0);
    }

    #[test]
    fn overlap_half_shifted_square() {
        let a = bev_polygon(&unit_square_at(0.0, 0.0));
        let b = bev_polygon(&unit_square_at(0.5, 0.0));
        assert!((convex_overlap_area(&a, &b) - 0.5).abs() < 1e-12);
    }

    #[test]
    fn ro_gdiou_identical_is_exactly_one() {
        let w = IouWeights::default();
        for theta in [0.0, 0.3, -1.2, std::f64::consts::FRAC_PI_3] {
            let b = Box7::new(3.0, -2.0, 0.0, 4.2, 1.9, 1.6, theta);
            assert_eq!(ro_gdiou(&b, &b, &w).unwrap(), 1.0);
        }
    }

    #[test]
    fn ro_gdiou_touching_unit_squares() {
        // Hand-derived: I = 0, U = 2, C = 2 so the enclosure term vanishes;
        // c^2 = 1, d^2 = 2^2 + 1^2 = 5, giving 0 - 0 - 1/5 = -0.2.
        let v = ro_gdiou(&unit_square_at(0.0, 0.0), &unit_square_at(1.0, 0.0), &IouWeights::default())
            .unwrap();
        assert!((v - (-0.2)).abs() < 1e-12);
    }

    #[test]
    fn ro_gdiou_far_apart_approaches_lower_bound() {
        let v = ro_gdiou(
            &unit_square_at(0.0, 0.0),
            &unit_square_at(1.0e6, 0.0),
            &IouWeights::default(),
        )
        .unwrap();
        assert!(v >= -2.0);
        assert!(v < -1.99);
    }

    #[test]
    fn degenerate_box_is_rejected() {
        let flat = Box7 { x: 0.0, y: 0.0, z: 0.0, l: 0.0, w: 1.0, h: 1.0, theta: 0.0 };
        assert_eq!(
            ro_gdiou(&flat, &unit_square_at(0.0, 0.0), &IouWeights::default()),
            Err(GeometryError::DegenerateBox)
        );
    }

    #[test]
    fn giou_reduces_to_iou_under_containment() {
        // Rotated inner box fully inside the outer one.
        let outer = Box7::new(0.0, 0.0, 0.0, 6.0, 4.0, 2.0, 0.7);
        let inner = Box7::new(0.2, -0.1, 0.0, 1.5, 1.0, 1.0, -0.4);
        let giou = giou_bev(&outer, &inner).unwrap();
        let iou = ro_iou(&outer, &inner).unwrap();
        assert!((giou - iou).abs() < 1e-9);
    }

    #[test]
    fn diou_cannot_separate_equal_center_distance_pairs() {
        // Both pairs: disjoint, center distance 6, extent dominated by the
        // large box's own diagonal, but the partner shapes differ.
        let big = Box7::new(0.0, 0.0, 0.0, 10.0, 8.0, 2.0, 0.0);
        let partner_a = Box7::new(6.0, 0.0, 0.0, 1.0, 1.0, 1.5, 0.0);
        let partner_b = Box7::new(6.0, 0.0, 0.0, 1.0, 0.2, 1.5, 0.0);
        let da = diou_bev(&big, &partner_a).unwrap();
        let db = diou_bev(&big, &partner_b).unwrap();
        assert!((da - db).abs() < 1e-12);
        let w = IouWeights::default();
        let ga = ro_gdiou(&big, &partner_a, &w).unwrap();
        let gb = ro_gdiou(&big, &partner_b, &w).unwrap();
        assert!((ga - gb).abs() > 1e-3);
    }

    #[test]
    fn weights_must_sum_to_two() {
        assert!(IouWeights::new(1.5, 0.5).is_ok());
        assert!(IouWeights::new(1.0, 0.5).is_err());
        assert!(IouWeights::new(-0.5, 2.5).is_err());
    }

    #[test]
    fn sdiou_identical_rects() {
        let r = Rect2D { x_min: 10.0, y_min: 20.0, x_max: 110.0, y_max: 80.0 };
        assert_eq!(sdiou_rv(&r, &r), 1.0);
    }

    #[test]
    fn sdiou_offset_squares_golden() {
        // 10x10 rects offset by 5: IoU = 1/3, c^2/d^2 = 25/325, no shape term.
        let a = Rect2D { x_min: 0.0, y_min: 0.0, x_max: 10.0, y_max: 10.0 };
        let b = Rect2D { x_min: 5.0, y_min: 0.0, x_max: 15.0, y_max: 10.0 };
        let expect = 1.0 / 3.0 - 25.0 / 325.0;
        assert!((sdiou_rv(&a, &b) - expect).abs() < 1e-12);
    }

    #[test]
    fn sdiou_decreases_with_separation() {
        let a = Rect2D { x_min: 0.0, y_min: 0.0, x_max: 10.0, y_max: 10.0 };
        let mut prev = f64::INFINITY;
        for k in 0..20 {
            let off = k as f64;
            let b = Rect2D { x_min: off, y_min: 0.0, x_max: off + 10.0, y_max: 10.0 };
            let v = sdiou_rv(&a, &b);
            assert!(v < prev);
            prev = v;
        }
    }

    fn straight_ahead_camera() -> CameraCalib {
        CameraCalib {
            camera_id: "front".to_string(),
            intrinsics: [[500.0, 0.0, 320.0], [0.0, 500.0, 320.0], [0.0, 0.0, 1.0]],
            global_to_camera: [
                [1.0, 0.0, 0.0, 0.0],
                [0.0, 1.0, 0.0, 0.0],
                [0.0, 0.0, 1.0, 0.0],
                [0.0, 0.0, 0.0, 1.0],
            ],
            image_size: [640, 640],
        }
    }

    #[test]
    fn projection_of_point_sized_box() {
        let cam = straight_ahead_camera();
        let b = Box7::new(0.0, 0.0, 10.0, 1e-9, 1e-9, 1e-9, 0.0);
        let r = project_box_to_image(&b, &cam).unwrap();
        let c = r.center();
        assert!((c[0] - 320.0).abs() < 1e-6);
        assert!((c[1] - 320.0).abs() < 1e-6);
    }

    #[test]
    fn projection_behind_camera_is_not_visible() {
        let cam = straight_ahead_camera();
        let b = Box7::new(0.0, 0.0, -5.0, 1.0, 1.0, 1.0, 0.0);
        assert_eq!(project_box_to_image(&b, &cam), Err(GeometryError::NotVisible));
    }

    #[test]
    fn projection_width_scales_inversely_with_depth() {
        let cam = straight_ahead_camera();
        let near = Box7::new(0.0, 0.0, 10.0, 2.0, 2.0, 2.0, 0.0);
        let far = Box7::new(0.0, 0.0, 20.0, 2.0, 2.0, 2.0, 0.0);
        let rn = project_box_to_image(&near, &cam).unwrap();
        let rf = project_box_to_image(&far, &cam).unwrap();
        // Similar triangles; the tolerance absorbs the box's own depth extent.
        assert!((rn.width() / rf.width() - 2.0).abs() < 0.25);
    }

    #[test]
    fn angle_wrap_convention() {
        let pi = std::f64::consts::PI;
        assert_eq!(wrap_angle(pi), pi);
        assert_eq!(wrap_angle(-pi), pi);
        assert!((wrap_angle(3.3) - (3.3 - 2.0 * pi)).abs() < 1e-12);
        assert!((wrap_angle(3.3 + 2.0 * pi) - (3.3 - 2.0 * pi)).abs() < 1e-9);
        assert_eq!(wrap_angle(0.5), 0.5);
    }
}
