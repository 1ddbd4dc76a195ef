#![allow(dead_code)]

use std::io::Write;
use std::path::Path;
use std::process::{Command, Output, Stdio};

use mcshape::{GrayImage, MultiComponentShape, PolygonSet};
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal};

pub fn mcshape() -> Command {
    Command::new(env!("CARGO_BIN_EXE_mcshape"))
}

pub fn run(args: &[&str]) -> Output {
    mcshape().args(args).output().expect("spawn mcshape")
}

pub fn run_with_stdin(args: &[&str], stdin: &str) -> Output {
    let mut child = mcshape()
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("spawn mcshape");
    child
        .stdin
        .take()
        .unwrap()
        .write_all(stdin.as_bytes())
        .unwrap();
    child.wait_with_output().unwrap()
}

pub fn code(o: &Output) -> i32 {
    o.status.code().expect("exited normally")
}

pub fn json(o: &Output) -> serde_json::Value {
    serde_json::from_slice(&o.stdout)
        .unwrap_or_else(|e| panic!("bad JSON ({e}): {}", String::from_utf8_lossy(&o.stdout)))
}

pub fn path_str(p: &Path) -> &str {
    p.to_str().expect("utf-8 temp path")
}

/// Star-shaped polygon: one jittered angle per sector of the full turn and
/// radii in [0.3, 1] * radius, so it is simple and counter-clockwise.
pub fn star_polygon(rng: &mut ChaCha8Rng, center: [f64; 2], radius: f64, n: usize) -> PolygonSet {
    let angles: Vec<f64> = (0..n)
        .map(|k| (k as f64 + rng.random_range(0.1..0.9)) * std::f64::consts::TAU / n as f64)
        .collect();
    let ring = angles
        .iter()
        .map(|&t| {
            let r = radius * rng.random_range(0.3..1.0);
            [center[0] + r * t.cos(), center[1] + r * t.sin()]
        })
        .collect();
    PolygonSet::new(vec![ring]).expect("star polygons are simple")
}

/// `n` star polygons on a grid with spacing 2.5, so they never overlap.
pub fn random_multi(rng: &mut ChaCha8Rng, n: usize) -> MultiComponentShape<PolygonSet> {
    let comps = (0..n)
        .map(|k| {
            let center = [2.5 * (k % 3) as f64, 2.5 * (k / 3) as f64];
            let verts = rng.random_range(3..12);
            star_polygon(rng, center, 1.0, verts)
        })
        .collect();
    MultiComponentShape::new(comps).unwrap()
}

pub fn polygons_json(s: &MultiComponentShape<PolygonSet>) -> String {
    mcshape::format::polygons_to_json(s)
}

/// Vertical bands of equal width with Gaussian noise, plus the band index
/// of every pixel.
pub fn banded(
    width: usize,
    height: usize,
    means: &[f64],
    sigma: f64,
    rng: &mut ChaCha8Rng,
) -> (GrayImage, Vec<u32>) {
    let noise = Normal::new(0.0, sigma).unwrap();
    let mut truth = Vec::with_capacity(width * height);
    let img = GrayImage::from_fn(width, height, |x, _| {
        let band = x * means.len() / width;
        truth.push(band as u32);
        (means[band] + noise.sample(rng)).round().clamp(0.0, 255.0) as u8
    })
    .unwrap();
    (img, truth)
}

pub fn two_squares_json() -> &'static str {
    r#"{"components":[{"rings":[[[-1.5,-0.5],[-0.5,-0.5],[-0.5,0.5],[-1.5,0.5]]]},{"rings":[[[0.5,-0.5],[1.5,-0.5],[1.5,0.5],[0.5,0.5]]]}]}"#
}
