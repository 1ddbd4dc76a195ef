use crate::error::{Error, Result};
use crate::geometry::dd::Dd;
use crate::geometry::moments::{DdMoments, RawMoments};

/// Boolean occupancy grid, row-major. Pixel `(i, j)` is the closed unit
/// square `[x0 + i, x0 + i + 1] x [y0 + j, y0 + j + 1]`.
#[derive(Debug, Clone, PartialEq)]
pub struct RasterMask {
    width: usize,
    height: usize,
    grid: Vec<bool>,
    origin: [f64; 2],
}

impl RasterMask {
    pub fn new(width: usize, height: usize, grid: Vec<bool>) -> Result<RasterMask> {
        RasterMask::with_origin(width, height, grid, [0.0, 0.0])
    }

    pub fn with_origin(
        width: usize,
        height: usize,
        grid: Vec<bool>,
        origin: [f64; 2],
    ) -> Result<RasterMask> {
        if grid.len() != width * height {
            return Err(Error::InvalidArgument(format!(
                "grid has {} cells, expected {width}x{height}",
                grid.len()
            )));
        }
        if !origin[0].is_finite() || !origin[1].is_finite() {
            return Err(Error::InvalidArgument("origin must be finite".into()));
        }
        Ok(RasterMask {
            width,
            height,
            grid,
            origin,
        })
    }

    pub fn from_fn(width: usize, height: usize, mut f: impl FnMut(usize, usize) -> bool) -> Self {
        let mut grid = Vec::with_capacity(width * height);
        for j in 0..height {
            for i in 0..width {
                grid.push(f(i, j));
            }
        }
        RasterMask {
            width,
            height,
            grid,
            origin: [0.0, 0.0],
        }
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn origin(&self) -> [f64; 2] {
        self.origin
    }

    pub fn grid(&self) -> &[bool] {
        &self.grid
    }

    pub fn get(&self, i: usize, j: usize) -> bool {
        i < self.width && j < self.height && self.grid[j * self.width + i]
    }

    pub fn count(&self) -> usize {
        self.grid.iter().filter(|&&b| b).count()
    }

    pub fn is_empty(&self) -> bool {
        !self.grid.iter().any(|&b| b)
    }

    /// Occupied pixel indices in row-major order.
    pub fn occupied(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        let w = self.width;
        self.grid
            .iter()
            .enumerate()
            .filter(|(_, &b)| b)
            .map(move |(k, _)| (k % w, k / w))
    }

    /// Index bounding box `(imin, jmin, imax, jmax)` of occupied pixels.
    pub fn occupied_bounds(&self) -> Option<(usize, usize, usize, usize)> {
        let mut b: Option<(usize, usize, usize, usize)> = None;
        for (i, j) in self.occupied() {
            b = Some(match b {
                None => (i, j, i, j),
                Some((a, c, d, e)) => (a.min(i), c.min(j), d.max(i), e.max(j)),
            });
        }
        b
    }

    /// Bottom-left corner of the occupied pixels, in length units.
    pub fn anchor(&self) -> [f64; 2] {
        match self.occupied_bounds() {
            Some((i, j, _, _)) => [self.origin[0] + i as f64, self.origin[1] + j as f64],
            None => self.origin,
        }
    }

    /// Exact pixel-square integrals of `x^p y^q`, relative to `reference`.
    pub fn moments_about(&self, reference: [f64; 2]) -> RawMoments {
        match self.local_moments() {
            None => RawMoments::default(),
            Some((corner, m)) => m
                .to_raw()
                .translated(corner[0] - reference[0], corner[1] - reference[1]),
        }
    }

    /// Moments about the corner of the occupied bounding box. Index sums are
    /// accumulated in integers, so the values are exact up to the final
    /// double-double rounding.
    pub(crate) fn local_moments(&self) -> Option<([f64; 2], DdMoments)> {
        let (imin, jmin, _, _) = self.occupied_bounds()?;
        let (mut n, mut sa, mut sb, mut saa, mut sbb, mut sab) =
            (0u128, 0u128, 0u128, 0u128, 0u128, 0u128);
        for j in jmin..self.height {
            let row = &self.grid[j * self.width..(j + 1) * self.width];
            let (mut c, mut ra, mut raa) = (0u128, 0u128, 0u128);
            for (i, _) in row.iter().enumerate().skip(imin).filter(|(_, &b)| b) {
                let a = (i - imin) as u128;
                c += 1;
                ra += a;
                raa += a * a;
            }
            let b = (j - jmin) as u128;
            n += c;
            sa += ra;
            saa += raa;
            sb += c * b;
            sbb += c * b * b;
            sab += ra * b;
        }
        // per-pixel integrals over [a, a+1] x [b, b+1]
        let q = |num: u128, den: f64| Dd::from_u128(num) / Dd::from_f64(den);
        let m = DdMoments {
            m00: Dd::from_u128(n),
            m10: q(2 * sa + n, 2.0),
            m01: q(2 * sb + n, 2.0),
            m20: q(3 * saa + 3 * sa + n, 3.0),
            m11: q(4 * sab + 2 * sa + 2 * sb + n, 4.0),
            m02: q(3 * sbb + 3 * sb + n, 3.0),
        };
        let corner = [self.origin[0] + imin as f64, self.origin[1] + jmin as f64];
        Some((corner, m))
    }

    /// Pixel centers of occupied pixels, in length units.
    pub fn pixel_centers(&self) -> Vec<[f64; 2]> {
        self.occupied()
            .map(|(i, j)| {
                [
                    self.origin[0] + i as f64 + 0.5,
                    self.origin[1] + j as f64 + 0.5,
                ]
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_pixel_is_unit_square() {
        let r = RasterMask::new(1, 1, vec![true]).unwrap();
        let m = r.moments_about([0.0, 0.0]);
        assert_eq!(m.m00, 1.0);
        assert_eq!(m.m10, 0.5);
        assert_eq!(m.m01, 0.5);
        assert_eq!(m.m20, 1.0 / 3.0);
        assert_eq!(m.m11, 0.25);
        assert_eq!(m.m02, 1.0 / 3.0);
    }

    #[test]
    fn full_two_by_two() {
        let r = RasterMask::from_fn(2, 2, |_, _| true);
        let m = r.moments_about([0.0, 0.0]);
        assert_eq!((m.m00, m.m10, m.m01), (4.0, 4.0, 4.0));
        assert_eq!(m.m20, 16.0 / 3.0);
    }

    #[test]
    fn offset_origin_shifts_moments() {
        let r = RasterMask::with_origin(3, 1, vec![false, true, false], [10.0, 20.0]).unwrap();
        assert_eq!(r.anchor(), [11.0, 20.0]);
        let m = r.moments_about([0.0, 0.0]);
        assert_eq!(m.m10, 11.5);
        assert_eq!(m.m01, 20.5);
    }

    #[test]
    fn rejects_size_mismatch() {
        assert!(RasterMask::new(2, 2, vec![true; 3]).is_err());
    }

    #[test]
    fn empty_mask_has_zero_moments() {
        let r = RasterMask::new(2, 2, vec![false; 4]).unwrap();
        assert!(r.is_empty());
        assert_eq!(r.moments_about([0.0, 0.0]), RawMoments::default());
    }
}
