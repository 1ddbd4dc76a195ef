use crate::error::{Error, Result};
use crate::geometry::dd::Dd;
use crate::geometry::moments::{DdMoments, RawMoments};
use crate::geometry::raster::RasterMask;

/// A planar region bounded by one or more closed polygonal rings.
///
/// Rings are closed implicitly. Outer boundaries have positive shoelace
/// area, holes negative; moments are signed sums over rings.
#[derive(Debug, Clone, PartialEq)]
pub struct PolygonSet {
    rings: Vec<Vec<[f64; 2]>>,
}

impl PolygonSet {
    /// Validates and builds a polygon set.
    ///
    /// A repeated closing vertex is dropped. Each ring must keep at least
    /// three distinct vertices, enclose nonzero area and must not touch or
    /// cross itself, and the net signed area must be strictly positive.
    pub fn new(rings: Vec<Vec<[f64; 2]>>) -> Result<PolygonSet> {
        if rings.is_empty() {
            return Err(Error::InvalidPolygon("no rings".into()));
        }
        let mut cleaned = Vec::with_capacity(rings.len());
        for (r, mut ring) in rings.into_iter().enumerate() {
            if ring.len() > 1 && ring.first() == ring.last() {
                ring.pop();
            }
            if ring.len() < 3 {
                return Err(Error::InvalidPolygon(format!(
                    "ring {r} has fewer than 3 vertices"
                )));
            }
            if ring.iter().flatten().any(|c| !c.is_finite()) {
                return Err(Error::InvalidPolygon(format!(
                    "ring {r} has a non-finite coordinate"
                )));
            }
            if ring_signed_area(&ring) == 0.0 {
                return Err(Error::DegenerateShape(format!("ring {r} has zero area")));
            }
            if let Some(reason) = self_intersection(&ring) {
                return Err(Error::InvalidPolygon(format!(
                    "ring {r} is not simple: {reason}"
                )));
            }
            cleaned.push(ring);
        }
        let set = PolygonSet { rings: cleaned };
        let area = set.signed_area();
        if !(area > 0.0) {
            return Err(Error::DegenerateShape(format!(
                "net signed area {area} is not positive"
            )));
        }
        Ok(set)
    }

    /// Builds without validation. Callers guarantee the invariants hold,
    /// e.g. when mapping an already valid set through a nonsingular map.
    pub(crate) fn from_rings_unchecked(rings: Vec<Vec<[f64; 2]>>) -> PolygonSet {
        PolygonSet { rings }
    }

    /// Axis-aligned rectangle `[x0, x0 + w] x [y0, y0 + h]`.
    pub fn rectangle(x0: f64, y0: f64, w: f64, h: f64) -> Result<PolygonSet> {
        PolygonSet::new(vec![vec![
            [x0, y0],
            [x0 + w, y0],
            [x0 + w, y0 + h],
            [x0, y0 + h],
        ]])
    }

    /// Regular `n`-gon inscribed in the circle of radius `r` around `center`.
    pub fn regular(center: [f64; 2], r: f64, n: usize) -> Result<PolygonSet> {
        let ring = (0..n)
            .map(|k| {
                let t = std::f64::consts::TAU * k as f64 / n as f64;
                [center[0] + r * t.cos(), center[1] + r * t.sin()]
            })
            .collect();
        PolygonSet::new(vec![ring])
    }

    pub fn rings(&self) -> &[Vec<[f64; 2]>] {
        &self.rings
    }

    pub fn into_rings(self) -> Vec<Vec<[f64; 2]>> {
        self.rings
    }

    pub fn signed_area(&self) -> f64 {
        self.rings.iter().map(|r| ring_signed_area(r)).sum()
    }

    /// `(min, max)` corners of the bounding box.
    pub fn bounds(&self) -> ([f64; 2], [f64; 2]) {
        let mut lo = [f64::INFINITY; 2];
        let mut hi = [f64::NEG_INFINITY; 2];
        for p in self.rings.iter().flatten() {
            for k in 0..2 {
                lo[k] = lo[k].min(p[k]);
                hi[k] = hi[k].max(p[k]);
            }
        }
        (lo, hi)
    }

    /// Moments in coordinates relative to `reference`, by Green's theorem
    /// applied edge by edge.
    pub fn moments_about(&self, reference: [f64; 2]) -> RawMoments {
        self.dd_moments_about(reference).to_raw()
    }

    /// Edge-wise Green sums with exact products and double-double
    /// accumulation; thin shapes cancel heavily in plain `f64`.
    pub(crate) fn dd_moments_about(&self, reference: [f64; 2]) -> DdMoments {
        let mut m = DdMoments::default();
        for ring in &self.rings {
            let n = ring.len();
            for i in 0..n {
                let (x0, y0) = (ring[i][0] - reference[0], ring[i][1] - reference[1]);
                let j = (i + 1) % n;
                let (x1, y1) = (ring[j][0] - reference[0], ring[j][1] - reference[1]);
                let cross = Dd::prod(x0, y1) - Dd::prod(x1, y0);
                let sx = Dd::from_f64(x0) + Dd::from_f64(x1);
                let sy = Dd::from_f64(y0) + Dd::from_f64(y1);
                let qx = Dd::prod(x0, x0) + Dd::prod(x0, x1) + Dd::prod(x1, x1);
                let qy = Dd::prod(y0, y0) + Dd::prod(y0, y1) + Dd::prod(y1, y1);
                let qxy = Dd::prod(x0, y1)
                    + Dd::prod(2.0 * x0, y0)
                    + Dd::prod(2.0 * x1, y1)
                    + Dd::prod(x1, y0);
                m.m00 = m.m00 + cross;
                m.m10 = m.m10 + cross * sx;
                m.m01 = m.m01 + cross * sy;
                m.m20 = m.m20 + cross * qx;
                m.m02 = m.m02 + cross * qy;
                m.m11 = m.m11 + cross * qxy;
            }
        }
        let div = |v: Dd, d: f64| v / Dd::from_f64(d);
        DdMoments {
            m00: div(m.m00, 2.0),
            m10: div(m.m10, 6.0),
            m01: div(m.m01, 6.0),
            m20: div(m.m20, 12.0),
            m11: div(m.m11, 24.0),
            m02: div(m.m02, 12.0),
        }
    }

    /// Nonzero winding rule; boundary points follow the half-open crossing
    /// convention used by [`PolygonSet::rasterize`].
    pub fn contains(&self, p: [f64; 2]) -> bool {
        let mut winding = 0i32;
        for ring in &self.rings {
            let n = ring.len();
            for i in 0..n {
                let a = ring[i];
                let b = ring[(i + 1) % n];
                if let Some((x, dir)) = crossing(a, b, p[1]) {
                    if x > p[0] {
                        winding += dir;
                    }
                }
            }
        }
        winding != 0
    }

    /// Renders the set at `pixels_per_unit` onto the global integer lattice:
    /// pixel `(gx, gy)` covers `[gx, gx + 1] x [gy, gy + 1]` in scaled
    /// coordinates and is occupied iff its center lies inside. The returned
    /// mask is cropped to the bounding box and its origin is in scaled units,
    /// so masks of different sets rendered at the same scale share a lattice.
    pub fn rasterize(&self, pixels_per_unit: f64) -> RasterMask {
        let s = pixels_per_unit;
        let rings: Vec<Vec<[f64; 2]>> = self
            .rings
            .iter()
            .map(|r| r.iter().map(|p| [p[0] * s, p[1] * s]).collect())
            .collect();
        let (lo, hi) = self.bounds();
        let gx0 = (lo[0] * s).floor();
        let gy0 = (lo[1] * s).floor();
        let width = ((hi[0] * s).ceil() - gx0).max(1.0) as usize;
        let height = ((hi[1] * s).ceil() - gy0).max(1.0) as usize;
        let mut grid = vec![false; width * height];
        let mut xs: Vec<(f64, i32)> = Vec::new();
        for j in 0..height {
            let yc = gy0 + j as f64 + 0.5;
            xs.clear();
            for ring in &rings {
                let n = ring.len();
                for i in 0..n {
                    if let Some(c) = crossing(ring[i], ring[(i + 1) % n], yc) {
                        xs.push(c);
                    }
                }
            }
            xs.sort_by(|a, b| a.0.total_cmp(&b.0));
            let mut winding = 0;
            for k in 0..xs.len() {
                winding += xs[k].1;
                if winding == 0 || k + 1 == xs.len() {
                    continue;
                }
                // centers gx0 + i + 0.5 in [xs[k], xs[k + 1])
                let start = (xs[k].0 - gx0 - 0.5).ceil().max(0.0) as usize;
                let end = ((xs[k + 1].0 - gx0 - 0.5).ceil().max(0.0) as usize).min(width);
                for cell in &mut grid[j * width + start.min(end)..j * width + end] {
                    *cell = true;
                }
            }
        }
        RasterMask::with_origin(width, height, grid, [gx0, gy0])
            .expect("grid length matches dimensions")
    }
}

/// Intersection of edge `a -> b` with the horizontal line at `y`, using the
/// half-open rule `min(ay, by) <= y < max(ay, by)`. Returns the crossing x and
/// the winding contribution.
fn crossing(a: [f64; 2], b: [f64; 2], y: f64) -> Option<(f64, i32)> {
    let (dir, lo, hi) = if a[1] < b[1] { (1, a, b) } else { (-1, b, a) };
    if lo[1] == hi[1] || y < lo[1] || y >= hi[1] {
        return None;
    }
    let x = lo[0] + (y - lo[1]) * (hi[0] - lo[0]) / (hi[1] - lo[1]);
    Some((x, dir))
}

pub(crate) fn ring_signed_area(ring: &[[f64; 2]]) -> f64 {
    let n = ring.len();
    let (ox, oy) = (ring[0][0], ring[0][1]);
    let mut s = 0.0;
    for i in 0..n {
        let a = ring[i];
        let b = ring[(i + 1) % n];
        s += (a[0] - ox) * (b[1] - oy) - (b[0] - ox) * (a[1] - oy);
    }
    s / 2.0
}

fn orient(a: [f64; 2], b: [f64; 2], c: [f64; 2]) -> f64 {
    (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0])
}

fn on_segment(a: [f64; 2], b: [f64; 2], p: [f64; 2]) -> bool {
    orient(a, b, p) == 0.0
        && p[0] >= a[0].min(b[0])
        && p[0] <= a[0].max(b[0])
        && p[1] >= a[1].min(b[1])
        && p[1] <= a[1].max(b[1])
}

fn segments_touch(a: [f64; 2], b: [f64; 2], c: [f64; 2], d: [f64; 2]) -> bool {
    let d1 = orient(c, d, a);
    let d2 = orient(c, d, b);
    let d3 = orient(a, b, c);
    let d4 = orient(a, b, d);
    if ((d1 > 0.0 && d2 < 0.0) || (d1 < 0.0 && d2 > 0.0))
        && ((d3 > 0.0 && d4 < 0.0) || (d3 < 0.0 && d4 > 0.0))
    {
        return true;
    }
    on_segment(c, d, a) || on_segment(c, d, b) || on_segment(a, b, c) || on_segment(a, b, d)
}

fn self_intersection(ring: &[[f64; 2]]) -> Option<String> {
    let n = ring.len();
    for i in 0..n {
        if ring[i] == ring[(i + 1) % n] {
            return Some(format!("repeated vertex at {i}"));
        }
    }
    for i in 0..n {
        let (a, b) = (ring[i], ring[(i + 1) % n]);
        for j in i + 1..n {
            let (c, d) = (ring[j], ring[(j + 1) % n]);
            let adjacent_next = j == i + 1;
            let adjacent_wrap = i == 0 && j == n - 1;
            let hit = if adjacent_next {
                // shared vertex b == c; fold-back if a or d lies on the other edge
                on_segment(c, d, a) || on_segment(a, b, d)
            } else if adjacent_wrap {
                // shared vertex a == d
                on_segment(a, b, c) || on_segment(c, d, b)
            } else {
                segments_touch(a, b, c, d)
            };
            if hit {
                return Some(format!("edges {i} and {j} intersect"));
            }
        }
    }
    None
}
