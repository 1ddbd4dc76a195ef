mod common;

use std::f64::consts::PI;

use common::{random_affine, random_multi, rel, unit_square_at};
use mcshape::*;
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn a_of<R: Region>(r: &R) -> f64 {
    affine_invariant(&normalized_from_central(&r.central_moments().unwrap()))
}

fn four_squares(d: f64) -> MultiComponentShape<PolygonSet> {
    MultiComponentShape::new(vec![
        unit_square_at(-d, -d),
        unit_square_at(d, -d),
        unit_square_at(-d, d),
        unit_square_at(d, d),
    ])
    .unwrap()
}

/// M for four unit squares centred at (±d, ±d), from the parallel-axis
/// theorem by hand: union M20 = M02 = 4 (1/12 + d^2), M11 = 0, area 4.
fn four_squares_closed_form(d: f64) -> f64 {
    let m20 = 4.0 * (1.0 / 12.0 + d * d);
    m20 * m20 / 256.0 - 4.0 * (1.0 / 144.0) / 256.0
}

#[test]
fn closed_form_invariants() {
    assert!(
        rel(
            a_of(&PolygonSet::rectangle(-3.0, 2.0, 0.5, 7.0).unwrap()),
            1.0 / 144.0
        ) <= 1e-9
    );
    let tri = PolygonSet::new(vec![vec![[0.0, 0.0], [1.0, 0.0], [0.0, 1.0]]]).unwrap();
    assert!(rel(a_of(&tri), 1.0 / 108.0) <= 1e-9);
    let disk = PolygonSet::regular([0.0, 0.0], 3.0, 4096).unwrap();
    assert!(rel(a_of(&disk), 1.0 / (16.0 * PI * PI)) <= 1e-9);
}

#[test]
fn two_and_four_squares() {
    let two = MultiComponentShape::new(vec![unit_square_at(-1.0, 0.0), unit_square_at(1.0, 0.0)])
        .unwrap();
    assert!((measure(&two).unwrap().m - 25.0 / 1152.0).abs() <= 1e-10);
    assert!((four_squares_closed_form(1.0) - 675.0 / 9216.0).abs() < 1e-15);
    assert!((measure(&four_squares(1.0)).unwrap().m - 675.0 / 9216.0).abs() <= 1e-10);
}

#[test]
fn raster_oracle_matches_polygon_path() {
    let two = MultiComponentShape::new(vec![unit_square_at(-1.0, 0.0), unit_square_at(1.0, 0.0)])
        .unwrap();
    assert!((highres_raster_oracle(&two, 64).unwrap().m - 25.0 / 1152.0).abs() <= 1e-6);
    assert!(
        (highres_raster_oracle(&four_squares(1.0), 64).unwrap().m - 675.0 / 9216.0).abs() <= 1e-6
    );
}

#[test]
fn triangle_pair_raster_converges() {
    let a = PolygonSet::new(vec![vec![[0.0, 0.0], [1.0, 0.2], [0.3, 1.1]]]).unwrap();
    let b = PolygonSet::new(vec![vec![[2.0, 0.5], [3.1, 0.0], [2.7, 1.3]]]).unwrap();
    let s = MultiComponentShape::new(vec![a, b]).unwrap();
    let exact = measure(&s).unwrap().m;
    let e128 = (highres_raster_oracle(&s, 128).unwrap().m - exact).abs();
    let e256 = (highres_raster_oracle(&s, 256).unwrap().m - exact).abs();
    assert!(e256 < e128, "{e128} -> {e256}");
}

#[test]
fn report_is_self_consistent() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let s = random_multi(&mut rng, 5);
    let r = measure(&s).unwrap();
    let sum: f64 = r.components.iter().map(|c| c.area).sum();
    assert!(rel(r.area_total, sum) <= 1e-12);
    let sub: f64 = r
        .components
        .iter()
        .map(|c| (c.area / r.area_total).powi(4) * c.a)
        .sum();
    assert!((r.m - (r.a_union - sub)).abs() <= 1e-14);
    for (c, p) in r.components.iter().zip(s.components()) {
        assert!(rel(c.a, a_of(p)) <= 1e-12);
    }
}

#[test]
fn affine_invariance_of_m() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for &n in &[2usize, 3, 5] {
        let s = random_multi(&mut rng, n);
        let base = measure(&s).unwrap().m;
        for _ in 0..100 {
            let t = random_affine(&mut rng);
            let mapped: Vec<PolygonSet> = s
                .components()
                .iter()
                .map(|p| apply_affine_polygon(p, &t).unwrap())
                .collect();
            let m = measure(&MultiComponentShape::new(mapped).unwrap())
                .unwrap()
                .m;
            assert!(
                (m - base).abs() <= 1e-10 * base.max(1.0),
                "n={n} {base} vs {m}"
            );
        }
    }
}

#[test]
fn merged_components_measure_zero() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let s = random_multi(&mut rng, 4);
    let merged = format::merge_components(&s).unwrap();
    assert_eq!(
        measure(&MultiComponentShape::new(vec![merged]).unwrap())
            .unwrap()
            .m,
        0.0
    );
}

#[test]
fn spreading_squares_increases_m() {
    let ds = [0.5, 1.0, 2.0, 4.0];
    let ms: Vec<f64> = ds
        .iter()
        .map(|&d| measure(&four_squares(d)).unwrap().m)
        .collect();
    for (m, &d) in ms.iter().zip(&ds) {
        assert!(rel(*m, four_squares_closed_form(d)) <= 1e-10);
    }
    assert!(ms.windows(2).all(|w| w[1] > w[0]), "{ms:?}");
}

#[test]
fn splitting_components_does_not_decrease_m() {
    for d in [0.5, 1.0, 2.0, 4.0] {
        let whole = measure(&four_squares(d)).unwrap();
        let halves: Vec<PolygonSet> = [(-d, -d), (d, -d), (-d, d), (d, d)]
            .iter()
            .flat_map(|&(cx, cy)| {
                [
                    PolygonSet::rectangle(cx - 0.5, cy - 0.5, 0.5, 1.0).unwrap(),
                    PolygonSet::rectangle(cx, cy - 0.5, 0.5, 1.0).unwrap(),
                ]
            })
            .collect();
        let split = measure(&MultiComponentShape::new(halves).unwrap()).unwrap();
        assert!((split.a_union - whole.a_union).abs() <= 1e-12 * whole.a_union);
        assert!(split.m >= whole.m);
    }
}

#[test]
fn single_components_are_zero_on_both_backends() {
    let tri = PolygonSet::new(vec![vec![[0.0, 0.0], [4.0, 1.0], [1.0, 3.0]]]).unwrap();
    assert_eq!(
        measure(&MultiComponentShape::new(vec![tri]).unwrap())
            .unwrap()
            .m,
        0.0
    );
    let blob = RasterMask::from_fn(9, 9, |i, j| {
        (i as i32 - 4).pow(2) + (j as i32 - 3).pow(2) < 12
    });
    assert_eq!(
        measure(&MultiComponentShape::new(vec![blob]).unwrap())
            .unwrap()
            .m,
        0.0
    );
}

#[test]
fn raster_overlap_detection() {
    let a = RasterMask::from_fn(3, 3, |_, _| true);
    let b = RasterMask::with_origin(2, 2, vec![true; 4], [2.0, 2.0]).unwrap();
    let s = MultiComponentShape::new(vec![a.clone(), b]).unwrap();
    let opts = MeasureOptions {
        overlap_resolution: Some(1.0),
    };
    assert!(matches!(
        measure_with(&s, &opts),
        Err(Error::OverlappingComponents { .. })
    ));
    let c = RasterMask::with_origin(2, 2, vec![true; 4], [3.0, 0.0]).unwrap();
    assert!(measure_with(&MultiComponentShape::new(vec![a, c]).unwrap(), &opts).is_ok());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn permutation_invariance(seed in any::<u64>(), n in 2usize..7) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let s = random_multi(&mut rng, n);
        let mut comps = s.components().to_vec();
        comps.shuffle(&mut rng);
        let a = measure(&s).unwrap().m;
        let b = measure(&MultiComponentShape::new(comps).unwrap()).unwrap().m;
        prop_assert_eq!(a.to_bits(), b.to_bits());
    }
}
