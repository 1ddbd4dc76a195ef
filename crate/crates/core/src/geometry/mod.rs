//! Shape representations and their moments up to order two.

mod affine;
mod dd;
mod moments;
mod polygon;
mod raster;

pub use affine::{apply_affine_polygon, apply_affine_raster, AffineMap};
pub(crate) use dd::Dd;
pub(crate) use moments::compose_central;
pub use moments::{
    central_from_raw, normalized_from_central, CentralMoments, NormalizedMoments, RawMoments,
};
pub use polygon::PolygonSet;
pub use raster::RasterMask;

use crate::error::{Error, Result};

/// A region with exactly computable moments.
pub trait Region {
    /// A point near the region used as the accumulation reference.
    fn anchor(&self) -> [f64; 2];

    /// Moments in coordinates relative to `reference`.
    fn moments_about(&self, reference: [f64; 2]) -> RawMoments;

    /// Global cells, on a lattice of spacing `1 / resolution`, that the
    /// region claims. Used for overlap detection.
    fn overlap_cells(&self, resolution: f64) -> Vec<(i64, i64)>;

    /// Moments about the coordinate origin.
    fn raw_moments(&self) -> Result<RawMoments> {
        let a = self.anchor();
        let m = self.moments_about(a);
        if !(m.m00 > 0.0) {
            return Err(Error::DegenerateShape(format!(
                "area {} is not positive",
                m.m00
            )));
        }
        Ok(m.translated(a[0], a[1]))
    }

    /// Area, centroid and central second moments.
    fn central_moments(&self) -> Result<CentralMoments>;
}

impl Region for PolygonSet {
    fn anchor(&self) -> [f64; 2] {
        self.bounds().0
    }

    fn moments_about(&self, reference: [f64; 2]) -> RawMoments {
        PolygonSet::moments_about(self, reference)
    }

    fn central_moments(&self) -> Result<CentralMoments> {
        let a = self.anchor();
        self.dd_moments_about(a).central(a)
    }

    fn overlap_cells(&self, resolution: f64) -> Vec<(i64, i64)> {
        let r = self.rasterize(resolution);
        let o = r.origin();
        r.occupied()
            .map(|(i, j)| (o[0] as i64 + i as i64, o[1] as i64 + j as i64))
            .collect()
    }
}

/// Raster masks ignore `resolution` in [`Region::overlap_cells`] and report
/// their own pixels.
impl Region for RasterMask {
    fn anchor(&self) -> [f64; 2] {
        RasterMask::anchor(self)
    }

    fn moments_about(&self, reference: [f64; 2]) -> RawMoments {
        RasterMask::moments_about(self, reference)
    }

    fn central_moments(&self) -> Result<CentralMoments> {
        let (corner, m) = self
            .local_moments()
            .ok_or_else(|| Error::DegenerateShape("empty mask".into()))?;
        m.central(corner)
    }

    fn overlap_cells(&self, _resolution: f64) -> Vec<(i64, i64)> {
        let o = self.origin();
        self.occupied()
            .map(|(i, j)| {
                (
                    (o[0] + i as f64).floor() as i64,
                    (o[1] + j as f64).floor() as i64,
                )
            })
            .collect()
    }
}

/// Moments of a polygon set about the origin, accumulated in coordinates
/// shifted to its bounding-box corner.
pub fn polygon_raw_moments(p: &PolygonSet) -> Result<RawMoments> {
    p.raw_moments()
}

/// Exact moments of the union of occupied pixel squares about the origin.
pub fn raster_raw_moments(r: &RasterMask) -> Result<RawMoments> {
    if r.is_empty() {
        return Err(Error::DegenerateShape("empty mask".into()));
    }
    r.raw_moments()
}
