//! Independent checks of the squared-triangle-area identities behind `A`.
//!
//! For a region of area `a`, three independent uniform points span a triangle
//! whose expected squared area is `(3/2) a^2 A`. [`mc_expected_sq_area`]
//! estimates it by sampling; [`discrete_tuple_sum`] enumerates the discrete
//! analogue exactly; [`highres_raster_oracle`] recomputes `M` from rendered
//! polygons.
//!
//! Sampling uses ChaCha8. Samples are drawn in fixed shards of
//! [`SHARD_SIZE`]; shard `k` uses `ChaCha8Rng::seed_from_u64(seed)` with
//! stream `k`, and shard statistics are merged in shard order. The estimate
//! therefore depends only on `(shape, n, seed)`, never on the thread count.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::geometry::{CentralMoments, PolygonSet, RasterMask, Region};
use crate::invariants::{component_term, measure, MeasureReport, MultiComponentShape};

pub const SHARD_SIZE: u64 = 1 << 16;

/// Monte Carlo estimate of the mean squared triangle area.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct McEstimate {
    pub mean: f64,
    pub std_error: f64,
    pub n_samples: u64,
    pub seed: u64,
    /// Accepted proposals over total proposals (1 for masks).
    pub acceptance_ratio: f64,
}

impl McEstimate {
    pub fn z_score(&self, expected: f64) -> f64 {
        (self.mean - expected) / self.std_error
    }
}

/// Where uniform points come from.
pub enum SamplingDomain<'a> {
    /// Rejection sampling in the bounding box.
    Polygon {
        shape: &'a PolygonSet,
        lo: [f64; 2],
        hi: [f64; 2],
    },
    /// Uniform occupied pixel, then uniform point inside it. Holds pixel
    /// lower-left corners.
    Pixels(Vec<[f64; 2]>),
}

impl SamplingDomain<'_> {
    /// One uniform point and the number of proposals it took.
    pub fn draw<R: Rng + ?Sized>(&self, rng: &mut R) -> ([f64; 2], u64) {
        match self {
            SamplingDomain::Polygon { shape, lo, hi } => {
                let mut tries = 0;
                loop {
                    tries += 1;
                    let p = [
                        lo[0] + rng.random::<f64>() * (hi[0] - lo[0]),
                        lo[1] + rng.random::<f64>() * (hi[1] - lo[1]),
                    ];
                    if shape.contains(p) {
                        return (p, tries);
                    }
                }
            }
            SamplingDomain::Pixels(corners) => {
                let c = corners[rng.random_range(0..corners.len())];
                ([c[0] + rng.random::<f64>(), c[1] + rng.random::<f64>()], 1)
            }
        }
    }
}

/// Shapes that can be sampled uniformly.
pub trait UniformSampler: Region {
    fn domain(&self) -> Result<SamplingDomain<'_>>;
}

impl UniformSampler for PolygonSet {
    fn domain(&self) -> Result<SamplingDomain<'_>> {
        let (lo, hi) = self.bounds();
        if !(self.signed_area() > 0.0) {
            return Err(Error::DegenerateShape("polygon has no area".into()));
        }
        Ok(SamplingDomain::Polygon {
            shape: self,
            lo,
            hi,
        })
    }
}

impl UniformSampler for RasterMask {
    fn domain(&self) -> Result<SamplingDomain<'_>> {
        let o = self.origin();
        let corners: Vec<[f64; 2]> = self
            .occupied()
            .map(|(i, j)| [o[0] + i as f64, o[1] + j as f64])
            .collect();
        if corners.is_empty() {
            return Err(Error::DegenerateShape("empty mask".into()));
        }
        Ok(SamplingDomain::Pixels(corners))
    }
}

/// Squared area of the triangle `(p, q, r)`.
pub fn triangle_sq_area(p: [f64; 2], q: [f64; 2], r: [f64; 2]) -> f64 {
    let d = (p[0] - r[0]) * (q[1] - r[1]) - (p[1] - r[1]) * (q[0] - r[0]);
    d * d / 4.0
}

/// `(3/2) a^2 A`, the expected squared area of a triangle with uniform
/// vertices in a region with the given central moments.
pub fn theoretical_sq_area(c: &CentralMoments) -> f64 {
    1.5 * component_term(c) / (c.area * c.area)
}

#[derive(Clone, Copy)]
struct ShardStats {
    count: u64,
    mean: f64,
    m2: f64,
    proposals: u64,
}

impl ShardStats {
    const EMPTY: ShardStats = ShardStats {
        count: 0,
        mean: 0.0,
        m2: 0.0,
        proposals: 0,
    };

    fn merge(self, o: ShardStats) -> ShardStats {
        if self.count == 0 {
            return o;
        }
        let count = self.count + o.count;
        let delta = o.mean - self.mean;
        let (na, nb, n) = (self.count as f64, o.count as f64, count as f64);
        ShardStats {
            count,
            mean: self.mean + delta * nb / n,
            m2: self.m2 + o.m2 + delta * delta * na * nb / n,
            proposals: self.proposals + o.proposals,
        }
    }
}

fn run_shard(domain: &SamplingDomain<'_>, seed: u64, shard: u64, count: u64) -> ShardStats {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(shard);
    let mut s = ShardStats::EMPTY;
    for _ in 0..count {
        let (a, ta) = domain.draw(&mut rng);
        let (b, tb) = domain.draw(&mut rng);
        let (c, tc) = domain.draw(&mut rng);
        let v = triangle_sq_area(a, b, c);
        s.count += 1;
        s.proposals += ta + tb + tc;
        let delta = v - s.mean;
        s.mean += delta / s.count as f64;
        s.m2 += delta * (v - s.mean);
    }
    s
}

/// Estimates `E[Area(ABC)^2]` for `A, B, C` independent and uniform in the
/// shape, from `n` triples.
pub fn mc_expected_sq_area<S: UniformSampler + Sync>(
    shape: &S,
    n: u64,
    seed: u64,
) -> Result<McEstimate> {
    if n < 2 {
        return Err(Error::InvalidArgument(format!(
            "need at least 2 samples, got {n}"
        )));
    }
    let domain = shape.domain()?;
    let shards = n.div_ceil(SHARD_SIZE);
    let stats: Vec<ShardStats> = (0..shards)
        .into_par_iter()
        .map(|k| run_shard(&domain, seed, k, SHARD_SIZE.min(n - k * SHARD_SIZE)))
        .collect();
    let total = stats.into_iter().fold(ShardStats::EMPTY, ShardStats::merge);
    let variance = total.m2 / (total.count - 1) as f64;
    Ok(McEstimate {
        mean: total.mean,
        std_error: (variance / total.count as f64).sqrt(),
        n_samples: total.count,
        seed,
        acceptance_ratio: (3 * total.count) as f64 / total.proposals as f64,
    })
}

/// Which ordered tuples [`discrete_tuple_sum`] enumerates.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TupleOrder {
    /// Ordered pairs `(P, Q)`: squared area of `(0, P, Q)` in centroid-centred
    /// coordinates.
    Pairs,
    /// Ordered triples `(P, Q, R)`: squared area of the triangle.
    Triples,
}

impl TupleOrder {
    pub fn from_order(order: u32) -> Result<TupleOrder> {
        match order {
            2 => Ok(TupleOrder::Pairs),
            3 => Ok(TupleOrder::Triples),
            o => Err(Error::InvalidArgument(format!(
                "tuple order must be 2 or 3, got {o}"
            ))),
        }
    }
}

fn centered(points: &[[f64; 2]]) -> Result<Vec<[f64; 2]>> {
    if points.is_empty() {
        return Err(Error::InvalidArgument("empty point set".into()));
    }
    let n = points.len() as f64;
    let cx = points.iter().map(|p| p[0]).sum::<f64>() / n;
    let cy = points.iter().map(|p| p[1]).sum::<f64>() / n;
    Ok(points.iter().map(|p| [p[0] - cx, p[1] - cy]).collect())
}

/// Brute-force sum of squared triangle areas over all `N^2` ordered pairs or
/// `N^3` ordered triples.
pub fn discrete_tuple_sum(points: &[[f64; 2]], order: TupleOrder) -> Result<f64> {
    let pts = centered(points)?;
    let mut sum = 0.0;
    match order {
        TupleOrder::Pairs => {
            for p in &pts {
                for q in &pts {
                    sum += triangle_sq_area(*p, *q, [0.0, 0.0]);
                }
            }
        }
        TupleOrder::Triples => {
            for p in &pts {
                for q in &pts {
                    for r in &pts {
                        sum += triangle_sq_area(*p, *q, *r);
                    }
                }
            }
        }
    }
    Ok(sum)
}

/// Closed form of [`discrete_tuple_sum`] from discrete central moments
/// `Mpq = Σ (x - x̄)^p (y - ȳ)^q`: `(M20 M02 - M11^2) / 2` for pairs and
/// `(3N/2)(M20 M02 - M11^2)` for triples.
pub fn discrete_identity_value(points: &[[f64; 2]], order: TupleOrder) -> Result<f64> {
    let pts = centered(points)?;
    let (mut m20, mut m11, mut m02) = (0.0, 0.0, 0.0);
    for p in &pts {
        m20 += p[0] * p[0];
        m11 += p[0] * p[1];
        m02 += p[1] * p[1];
    }
    let d = m20 * m02 - m11 * m11;
    Ok(match order {
        TupleOrder::Pairs => d / 2.0,
        TupleOrder::Triples => 1.5 * pts.len() as f64 * d,
    })
}

/// Renders every component at `resolution` pixels per unit on a shared
/// lattice (pixel occupied iff its center is inside) and measures the
/// result on the raster path.
pub fn highres_raster_oracle(
    s: &MultiComponentShape<PolygonSet>,
    resolution: u32,
) -> Result<MeasureReport> {
    if resolution < 4 {
        return Err(Error::InvalidArgument(format!(
            "resolution {resolution} is below 4"
        )));
    }
    let masks: Vec<RasterMask> = s
        .components()
        .par_iter()
        .map(|p| p.rasterize(resolution as f64))
        .collect();
    if let Some(index) = masks.iter().position(RasterMask::is_empty) {
        return Err(Error::DegenerateComponent { index });
    }
    measure(&MultiComponentShape::new(masks)?)
}
