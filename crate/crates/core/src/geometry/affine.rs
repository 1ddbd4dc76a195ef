use crate::error::{Error, Result};
use crate::geometry::polygon::PolygonSet;
use crate::geometry::raster::RasterMask;

/// `p -> J p + t` with a nonsingular linear part.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AffineMap {
    pub j11: f64,
    pub j12: f64,
    pub j21: f64,
    pub j22: f64,
    pub tx: f64,
    pub ty: f64,
}

const MIN_ABS_DET: f64 = 1e-12;

impl AffineMap {
    pub fn new(j11: f64, j12: f64, j21: f64, j22: f64, tx: f64, ty: f64) -> Result<AffineMap> {
        let m = AffineMap {
            j11,
            j12,
            j21,
            j22,
            tx,
            ty,
        };
        let det = m.det();
        if !(det.abs() > MIN_ABS_DET) || [j11, j12, j21, j22, tx, ty].iter().any(|v| !v.is_finite())
        {
            return Err(Error::SingularMap { det });
        }
        Ok(m)
    }

    pub fn identity() -> AffineMap {
        AffineMap {
            j11: 1.0,
            j12: 0.0,
            j21: 0.0,
            j22: 1.0,
            tx: 0.0,
            ty: 0.0,
        }
    }

    pub fn translation(tx: f64, ty: f64) -> AffineMap {
        AffineMap {
            tx,
            ty,
            ..AffineMap::identity()
        }
    }

    pub fn scaling(s: f64) -> Result<AffineMap> {
        AffineMap::new(s, 0.0, 0.0, s, 0.0, 0.0)
    }

    pub fn det(&self) -> f64 {
        self.j11 * self.j22 - self.j12 * self.j21
    }

    pub fn apply(&self, p: [f64; 2]) -> [f64; 2] {
        [
            self.j11 * p[0] + self.j12 * p[1] + self.tx,
            self.j21 * p[0] + self.j22 * p[1] + self.ty,
        ]
    }

    pub fn inverse(&self) -> Result<AffineMap> {
        let d = self.det();
        if !(d.abs() > MIN_ABS_DET) {
            return Err(Error::SingularMap { det: d });
        }
        let (i11, i12, i21, i22) = (self.j22 / d, -self.j12 / d, -self.j21 / d, self.j11 / d);
        Ok(AffineMap {
            j11: i11,
            j12: i12,
            j21: i21,
            j22: i22,
            tx: -(i11 * self.tx + i12 * self.ty),
            ty: -(i21 * self.tx + i22 * self.ty),
        })
    }
}

/// Maps every vertex. Orientation-reversing maps also reverse each ring so
/// outer boundaries stay positively oriented.
pub fn apply_affine_polygon(p: &PolygonSet, t: &AffineMap) -> Result<PolygonSet> {
    let det = t.det();
    if !(det.abs() > MIN_ABS_DET) {
        return Err(Error::SingularMap { det });
    }
    let rings = p
        .rings()
        .iter()
        .map(|ring| {
            let mut mapped: Vec<[f64; 2]> = ring.iter().map(|&v| t.apply(v)).collect();
            if det < 0.0 {
                mapped.reverse();
            }
            mapped
        })
        .collect();
    Ok(PolygonSet::from_rings_unchecked(rings))
}

/// Nearest-neighbour inverse mapping onto an `out_width x out_height` grid
/// with origin `(0, 0)`: an output pixel is occupied iff the preimage of its
/// center falls in an occupied input pixel. Approximate by nature.
pub fn apply_affine_raster(
    r: &RasterMask,
    t: &AffineMap,
    out_width: usize,
    out_height: usize,
) -> Result<RasterMask> {
    let inv = t.inverse()?;
    let o = r.origin();
    let out = RasterMask::from_fn(out_width, out_height, |i, j| {
        let p = inv.apply([i as f64 + 0.5, j as f64 + 0.5]);
        let (u, v) = ((p[0] - o[0]).floor(), (p[1] - o[1]).floor());
        u >= 0.0 && v >= 0.0 && r.get(u as usize, v as usize)
    });
    if out.is_empty() {
        return Err(Error::DegenerateShape(
            "affine image of mask is empty".into(),
        ));
    }
    Ok(out)
}
