//! Property tests: similarity-function invariants over random boxes and
//! matcher bookkeeping over random cost matrices.

use bevtrack_core::association::{greedy, hungarian, CostMatrix, MatchSet};
use bevtrack_core::geometry::{giou_bev, ro_gdiou, ro_iou, wrap_angle, Box7, IouWeights};
use proptest::prelude::*;

fn arb_box() -> impl Strategy<Value = Box7> {
    (
        -50.0..50.0f64,
        -50.0..50.0f64,
        0.3..8.0f64,
        0.3..4.0f64,
        -std::f64::consts::PI..std::f64::consts::PI,
    )
        .prop_map(|(x, y, l, w, theta)| Box7::new(x, y, 0.8, l, w, 1.6, theta))
}

proptest! {
    #[test]
    fn ro_gdiou_stays_in_range(a in arb_box(), b in arb_box()) {
        let s = ro_gdiou(&a, &b, &IouWeights::default()).unwrap();
        prop_assert!((-2.0..=1.0).contains(&s), "out of range: {s}");
    }

    #[test]
    fn ro_gdiou_is_bit_exact_symmetric(a in arb_box(), b in arb_box()) {
        let ab = ro_gdiou(&a, &b, &IouWeights::default()).unwrap();
        let ba = ro_gdiou(&b, &a, &IouWeights::default()).unwrap();
        prop_assert_eq!(ab.to_bits(), ba.to_bits());
    }

    #[test]
    fn self_similarity_is_exactly_one(a in arb_box()) {
        prop_assert_eq!(ro_gdiou(&a, &a, &IouWeights::default()).unwrap(), 1.0);
        prop_assert_eq!(ro_iou(&a, &a).unwrap(), 1.0);
        prop_assert_eq!(giou_bev(&a, &a).unwrap(), 1.0);
    }

    #[test]
    fn similarity_is_rigid_motion_invariant(
        a in arb_box(),
        b in arb_box(),
        tx in -30.0..30.0f64,
        ty in -30.0..30.0f64,
        phi in -3.0..3.0f64,
    ) {
        let moved = |bx: &Box7| {
            let (s, c) = phi.sin_cos();
            Box7::new(
                c * bx.x - s * bx.y + tx,
                s * bx.x + c * bx.y + ty,
                bx.z,
                bx.l,
                bx.w,
                bx.h,
                wrap_angle(bx.theta + phi),
            )
        };
        let before = ro_gdiou(&a, &b, &IouWeights::default()).unwrap();
        let after = ro_gdiou(&moved(&a), &moved(&b), &IouWeights::default()).unwrap();
        prop_assert!((before - after).abs() < 1e-9, "{before} vs {after}");
    }

    #[test]
    fn giou_never_exceeds_iou(a in arb_box(), b in arb_box()) {
        let g = giou_bev(&a, &b).unwrap();
        let i = ro_iou(&a, &b).unwrap();
        prop_assert!(g <= i + 1e-12);
        prop_assert!((-1.0..=1.0).contains(&g));
    }

    #[test]
    fn matchers_produce_exact_partitions(
        rows in 0usize..6,
        cols in 0usize..6,
        seed in any::<u64>(),
        threshold in -2.0..2.0f64,
    ) {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let values: Vec<f64> = (0..rows * cols).map(|_| rng.random_range(-2.0..2.0)).collect();
        // Offset ids so bookkeeping bugs that conflate indices and ids show up.
        let row_ids: Vec<usize> = (0..rows).map(|r| r + 10).collect();
        let col_ids: Vec<u64> = (0..cols as u64).map(|c| c + 100).collect();
        let cost = CostMatrix::new(row_ids.clone(), col_ids.clone(), values);
        for result in [hungarian(&cost, threshold), greedy(&cost, threshold)] {
            prop_assert!(is_exact_partition(&result, &row_ids, &col_ids));
            for (r, c) in &result.pairs {
                let ri = row_ids.iter().position(|x| x == r).unwrap();
                let ci = col_ids.iter().position(|x| x == c).unwrap();
                prop_assert!(cost.get(ri, ci) <= threshold, "pair above threshold");
            }
        }
    }
}

fn is_exact_partition(m: &MatchSet, row_ids: &[usize], col_ids: &[u64]) -> bool {
    let mut rows: Vec<usize> =
        m.pairs.iter().map(|(r, _)| *r).chain(m.unmatched_detections.iter().copied()).collect();
    let mut cols: Vec<u64> =
        m.pairs.iter().map(|(_, c)| *c).chain(m.unmatched_tracks.iter().copied()).collect();
    rows.sort_unstable();
    cols.sort_unstable();
    let mut want_rows = row_ids.to_vec();
    want_rows.sort_unstable();
    let mut want_cols = col_ids.to_vec();
    want_cols.sort_unstable();
    rows == want_rows && cols == want_cols
}
