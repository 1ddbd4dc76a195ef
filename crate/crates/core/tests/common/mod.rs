#![allow(dead_code)]

use mcshape::{AffineMap, MultiComponentShape, PolygonSet};
use rand::Rng;

/// Star-shaped polygon around `center`: strictly increasing angles and
/// positive radii make it simple and counter-clockwise.
pub fn star_polygon<R: Rng>(rng: &mut R, center: [f64; 2], radius: f64, n: usize) -> PolygonSet {
    let mut angles: Vec<f64> = (0..n)
        .map(|k| (k as f64 + rng.random_range(0.1..0.9)) * std::f64::consts::TAU / n as f64)
        .collect();
    angles.sort_by(f64::total_cmp);
    let ring = angles
        .iter()
        .map(|&t| {
            let r = radius * rng.random_range(0.3..1.0);
            [center[0] + r * t.cos(), center[1] + r * t.sin()]
        })
        .collect();
    PolygonSet::new(vec![ring]).expect("star polygons are simple")
}

/// `n` star polygons in separate cells of a row-major grid.
pub fn random_multi<R: Rng>(rng: &mut R, n: usize) -> MultiComponentShape<PolygonSet> {
    let cols = (n as f64).sqrt().ceil() as usize;
    let comps = (0..n)
        .map(|k| {
            let c = [(k % cols) as f64 * 2.5, (k / cols) as f64 * 2.5];
            let verts = rng.random_range(3..12);
            star_polygon(rng, c, 1.0, verts)
        })
        .collect();
    MultiComponentShape::new(comps).unwrap()
}

/// Nonsingular map with entries in [-3, 3], |det| >= 0.1.
pub fn random_affine<R: Rng>(rng: &mut R) -> AffineMap {
    loop {
        let j: Vec<f64> = (0..4).map(|_| rng.random_range(-3.0..3.0)).collect();
        if (j[0] * j[3] - j[1] * j[2]).abs() >= 0.1 {
            return AffineMap::new(
                j[0],
                j[1],
                j[2],
                j[3],
                rng.random_range(-10.0..10.0),
                rng.random_range(-10.0..10.0),
            )
            .unwrap();
        }
    }
}

pub fn unit_square_at(cx: f64, cy: f64) -> PolygonSet {
    PolygonSet::rectangle(cx - 0.5, cy - 0.5, 1.0, 1.0).unwrap()
}

pub fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs().max(f64::MIN_POSITIVE)
}
