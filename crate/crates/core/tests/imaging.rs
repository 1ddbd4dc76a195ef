use std::collections::VecDeque;

use mcshape::imaging::{encode_pgm, PgmEncoding};
use mcshape::*;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal};

/// Vertical bands of equal width with Gaussian noise; returns the image and
/// the band index of every pixel.
fn banded(
    width: usize,
    height: usize,
    means: &[f64],
    sigma: f64,
    seed: u64,
) -> (GrayImage, Vec<u32>) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let noise = Normal::new(0.0, sigma).unwrap();
    let mut truth = Vec::with_capacity(width * height);
    let img = GrayImage::from_fn(width, height, |x, _| {
        let band = x * means.len() / width;
        truth.push(band as u32);
        (means[band] + noise.sample(&mut rng))
            .round()
            .clamp(0.0, 255.0) as u8
    })
    .unwrap();
    (img, truth)
}

#[test]
fn four_band_segmentation_agrees_with_truth() {
    let (img, truth) = banded(512, 512, &[40.0, 115.0, 190.0, 250.0], 8.0, 17);
    let r = multi_otsu(&img, 4).unwrap();
    let t = &r.thresholds;
    assert!(
        t[0] > 40 && t[0] < 115 && t[1] > 115 && t[1] < 190 && t[2] > 190 && t[2] < 250,
        "{t:?}"
    );
    let agree = r
        .labels
        .labels()
        .iter()
        .zip(&truth)
        .filter(|(a, b)| a == b)
        .count();
    assert!(agree as f64 >= 0.99 * truth.len() as f64);
    assert_eq!(r.class_counts.iter().sum::<u64>(), truth.len() as u64);
}

#[test]
fn otsu_classes_partition_intensity_ranges() {
    let (img, _) = banded(64, 64, &[30.0, 100.0, 220.0], 20.0, 5);
    let r = multi_otsu(&img, 3).unwrap();
    let mut ranges = vec![(u8::MAX, u8::MIN); 3];
    for (&v, &c) in img.pixels().iter().zip(r.labels.labels()) {
        let e = &mut ranges[c as usize];
        *e = (e.0.min(v), e.1.max(v));
    }
    for w in ranges.windows(2) {
        assert!(w[0].1 < w[1].0, "{ranges:?}");
    }
}

#[test]
fn median_keeps_large_constant_blocks() {
    let g = GrayImage::from_fn(40, 30, |x, y| {
        if x < 20 {
            50
        } else if y < 15 {
            200
        } else {
            120
        }
    })
    .unwrap();
    let once = median_filter(&g, 5).unwrap();
    // pixels whose window stays inside one block are untouched
    for y in 0..30usize {
        for x in 0..40 {
            let inside = |a: usize, b: usize, c: usize| a.abs_diff(b) > 2 && a.abs_diff(c) > 2;
            if inside(x, 19, 20) && (x < 20 || (y.abs_diff(14) > 2 && y.abs_diff(15) > 2)) {
                assert_eq!(once.get(x, y), g.get(x, y), "({x},{y})");
            }
        }
    }
    let halves = GrayImage::from_fn(40, 30, |x, _| if x < 20 { 50 } else { 200 }).unwrap();
    assert_eq!(median_filter(&halves, 5).unwrap(), halves);
    let flat = GrayImage::from_fn(7, 5, |_, _| 9).unwrap();
    assert_eq!(median_filter(&flat, 7).unwrap(), flat);
}

#[test]
fn pipeline_is_deterministic() {
    let (img, _) = banded(96, 64, &[40.0, 115.0, 190.0, 250.0], 8.0, 99);
    let run = || {
        let f = median_filter(&img, 3).unwrap();
        let r = multi_otsu(&f, 4).unwrap();
        let px: Vec<u8> = r.labels.labels().iter().map(|&l| l as u8).collect();
        encode_pgm(&GrayImage::new(96, 64, px).unwrap(), PgmEncoding::Binary)
    };
    assert_eq!(run(), run());
}

#[test]
fn segmented_foreground_measures() {
    let (img, _) = banded(128, 32, &[40.0, 115.0, 190.0, 250.0], 8.0, 7);
    let r = multi_otsu(&median_filter(&img, 3).unwrap(), 4).unwrap();
    let comps = label_to_components(&r.labels).unwrap();
    assert_eq!(comps.len(), 3);
    let rep = measure(&comps).unwrap();
    assert!(rep.m.is_finite() && rep.m > 0.0);
}

/// Flood fill reference for connected components.
fn flood_count(mask: &RasterMask, eight: bool) -> usize {
    let (w, h) = (mask.width(), mask.height());
    let mut seen = vec![false; w * h];
    let mut count = 0;
    for start in 0..w * h {
        if !mask.grid()[start] || seen[start] {
            continue;
        }
        count += 1;
        seen[start] = true;
        let mut q = VecDeque::from([start]);
        while let Some(k) = q.pop_front() {
            let (x, y) = ((k % w) as i64, (k / w) as i64);
            for dy in -1..=1i64 {
                for dx in -1..=1i64 {
                    if (dx == 0 && dy == 0) || (!eight && dx != 0 && dy != 0) {
                        continue;
                    }
                    let (nx, ny) = (x + dx, y + dy);
                    if nx < 0 || ny < 0 || nx >= w as i64 || ny >= h as i64 {
                        continue;
                    }
                    let nk = ny as usize * w + nx as usize;
                    if mask.grid()[nk] && !seen[nk] {
                        seen[nk] = true;
                        q.push_back(nk);
                    }
                }
            }
        }
    }
    count
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn labelling_matches_flood_fill(bits in proptest::collection::vec(any::<bool>(), 12 * 10), eight in any::<bool>()) {
        let mask = RasterMask::new(12, 10, bits).unwrap();
        let conn = if eight { Connectivity::Eight } else { Connectivity::Four };
        let li = connected_components(&mask, conn);
        let n = li.foreground_labels().len();
        prop_assert_eq!(n, flood_count(&mask, eight));
        prop_assert_eq!(li.foreground_labels(), (1..=n as u32).collect::<Vec<_>>());
        // background exactly where the mask is empty
        for (l, &b) in li.labels().iter().zip(mask.grid()) {
            prop_assert_eq!(*l == 0, !b);
        }
    }

    #[test]
    fn labelling_is_translation_invariant(bits in proptest::collection::vec(any::<bool>(), 8 * 8), dx in 0usize..5, dy in 0usize..5) {
        let small = RasterMask::new(8, 8, bits).unwrap();
        let big = RasterMask::from_fn(13, 13, |i, j| {
            i >= dx && j >= dy && small.get(i - dx, j - dy)
        });
        let a = connected_components(&small, Connectivity::Eight);
        let b = connected_components(&big, Connectivity::Eight);
        for j in 0..8 {
            for i in 0..8 {
                prop_assert_eq!(a.get(i, j), b.get(i + dx, j + dy));
            }
        }
    }
}
