use std::ops::{Add, AddAssign};

use crate::error::{Error, Result};
use crate::geometry::dd::Dd;

/// Geometric moments `m_pq = ∫∫ x^p y^q dx dy` up to order two.
///
/// A value may be taken about any reference point; [`RawMoments::translated`]
/// moves it to another one.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct RawMoments {
    pub m00: f64,
    pub m10: f64,
    pub m01: f64,
    pub m20: f64,
    pub m11: f64,
    pub m02: f64,
}

impl RawMoments {
    /// Moments of the same region after substituting `x -> x + dx`, `y -> y + dy`.
    pub fn translated(&self, dx: f64, dy: f64) -> RawMoments {
        RawMoments {
            m00: self.m00,
            m10: self.m10 + dx * self.m00,
            m01: self.m01 + dy * self.m00,
            m20: self.m20 + 2.0 * dx * self.m10 + dx * dx * self.m00,
            m11: self.m11 + dx * self.m01 + dy * self.m10 + dx * dy * self.m00,
            m02: self.m02 + 2.0 * dy * self.m01 + dy * dy * self.m00,
        }
    }
}

impl Add for RawMoments {
    type Output = RawMoments;

    fn add(self, rhs: RawMoments) -> RawMoments {
        RawMoments {
            m00: self.m00 + rhs.m00,
            m10: self.m10 + rhs.m10,
            m01: self.m01 + rhs.m01,
            m20: self.m20 + rhs.m20,
            m11: self.m11 + rhs.m11,
            m02: self.m02 + rhs.m02,
        }
    }
}

impl AddAssign for RawMoments {
    fn add_assign(&mut self, rhs: RawMoments) {
        *self = *self + rhs;
    }
}

/// Area, centroid and second-order central moments of one shape.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CentralMoments {
    pub area: f64,
    pub xc: f64,
    pub yc: f64,
    /// `∫∫ (x - xc)^2`
    pub m20: f64,
    /// `∫∫ (x - xc)(y - yc)`
    pub m11: f64,
    /// `∫∫ (y - yc)^2`
    pub m02: f64,
}

impl CentralMoments {
    /// Central moments from raw moments taken about `reference`.
    ///
    /// Taking `reference` near the shape keeps the parallel-axis subtraction
    /// well conditioned.
    pub fn from_moments_about(m: &RawMoments, reference: [f64; 2]) -> Result<CentralMoments> {
        if !(m.m00 > 0.0) || !m.m00.is_finite() {
            return Err(Error::DegenerateShape(format!(
                "area {} is not positive",
                m.m00
            )));
        }
        let cx = m.m10 / m.m00;
        let cy = m.m01 / m.m00;
        Ok(CentralMoments {
            area: m.m00,
            xc: reference[0] + cx,
            yc: reference[1] + cy,
            m20: m.m20 - m.m10 * cx,
            m11: m.m11 - m.m10 * cy,
            m02: m.m02 - m.m01 * cy,
        })
    }

    /// `M20*M02 - M11^2`, unclamped. The products are formed exactly, so
    /// the only error is the final rounding of the stored moments' determinant.
    pub fn det(&self) -> f64 {
        (Dd::prod(self.m20, self.m02) - Dd::prod(self.m11, self.m11)).to_f64()
    }
}

/// Raw moments in double-double precision.
#[derive(Debug, Clone, Copy, Default)]
pub(crate) struct DdMoments {
    pub m00: Dd,
    pub m10: Dd,
    pub m01: Dd,
    pub m20: Dd,
    pub m11: Dd,
    pub m02: Dd,
}

impl DdMoments {
    pub fn to_raw(self) -> RawMoments {
        RawMoments {
            m00: self.m00.to_f64(),
            m10: self.m10.to_f64(),
            m01: self.m01.to_f64(),
            m20: self.m20.to_f64(),
            m11: self.m11.to_f64(),
            m02: self.m02.to_f64(),
        }
    }

    /// Central moments, with the parallel-axis subtraction done in
    /// double-double. `self` is taken about `reference`.
    pub fn central(self, reference: [f64; 2]) -> Result<CentralMoments> {
        let area = self.m00.to_f64();
        if !(area > 0.0) || !area.is_finite() {
            return Err(Error::DegenerateShape(format!(
                "area {area} is not positive"
            )));
        }
        let cx = self.m10 / self.m00;
        let cy = self.m01 / self.m00;
        Ok(CentralMoments {
            area,
            xc: reference[0] + cx.to_f64(),
            yc: reference[1] + cy.to_f64(),
            m20: (self.m20 - self.m10 * cx).to_f64(),
            m11: (self.m11 - self.m10 * cy).to_f64(),
            m02: (self.m02 - self.m01 * cy).to_f64(),
        })
    }
}

/// Central moments of a union of area-disjoint parts, composed with the
/// parallel-axis rule in double-double.
pub(crate) fn compose_central<'a>(
    parts: impl IntoIterator<Item = &'a CentralMoments> + Clone,
) -> Result<CentralMoments> {
    let mut a = Dd::default();
    let (mut sx, mut sy) = (Dd::default(), Dd::default());
    for c in parts.clone() {
        a = a + Dd::from_f64(c.area);
        sx = sx + Dd::prod(c.area, c.xc);
        sy = sy + Dd::prod(c.area, c.yc);
    }
    let area = a.to_f64();
    if !(area > 0.0) || !area.is_finite() {
        return Err(Error::DegenerateShape(format!(
            "area {area} is not positive"
        )));
    }
    let (xu, yu) = (sx / a, sy / a);
    let (mut m20, mut m11, mut m02) = (Dd::default(), Dd::default(), Dd::default());
    for c in parts {
        let w = Dd::from_f64(c.area);
        let dx = Dd::from_f64(c.xc) - xu;
        let dy = Dd::from_f64(c.yc) - yu;
        m20 = m20 + Dd::from_f64(c.m20) + w * dx * dx;
        m11 = m11 + Dd::from_f64(c.m11) + w * dx * dy;
        m02 = m02 + Dd::from_f64(c.m02) + w * dy * dy;
    }
    Ok(CentralMoments {
        area,
        xc: xu.to_f64(),
        yc: yu.to_f64(),
        m20: m20.to_f64(),
        m11: m11.to_f64(),
        m02: m02.to_f64(),
    })
}

/// Translation and scale invariant second-order moments, `mu_pq = M_pq / a^2`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NormalizedMoments {
    pub mu20: f64,
    pub mu11: f64,
    pub mu02: f64,
}

/// Centroid and central moments from raw moments about the origin.
pub fn central_from_raw(m: &RawMoments) -> Result<CentralMoments> {
    CentralMoments::from_moments_about(m, [0.0, 0.0])
}

/// Divides each order-2 central moment by `a^((p+q+2)/2) = a^2`.
pub fn normalized_from_central(c: &CentralMoments) -> NormalizedMoments {
    let a2 = c.area * c.area;
    NormalizedMoments {
        mu20: c.m20 / a2,
        mu11: c.m11 / a2,
        mu02: c.m02 / a2,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn unit_square() -> RawMoments {
        RawMoments {
            m00: 1.0,
            m10: 0.5,
            m01: 0.5,
            m20: 1.0 / 3.0,
            m11: 0.25,
            m02: 1.0 / 3.0,
        }
    }

    #[test]
    fn unit_square_central() {
        let c = central_from_raw(&unit_square()).unwrap();
        assert_eq!(c.area, 1.0);
        assert_eq!((c.xc, c.yc), (0.5, 0.5));
        assert_relative_eq!(c.m20, 1.0 / 12.0, max_relative = 1e-15);
        assert_relative_eq!(c.m02, 1.0 / 12.0, max_relative = 1e-15);
        assert!(c.m11.abs() < 1e-16);
    }

    #[test]
    fn translation_cancels() {
        let a = central_from_raw(&unit_square()).unwrap();
        let b = central_from_raw(&unit_square().translated(10.0, 10.0)).unwrap();
        assert_relative_eq!(a.m20, b.m20, max_relative = 1e-12);
        assert_relative_eq!(a.m02, b.m02, max_relative = 1e-12);
        assert!((a.m11 - b.m11).abs() < 1e-12);
        assert_relative_eq!(b.xc, 10.5);
    }

    #[test]
    fn triangle_central_and_normalized() {
        let t = RawMoments {
            m00: 0.5,
            m10: 1.0 / 6.0,
            m01: 1.0 / 6.0,
            m20: 1.0 / 12.0,
            m11: 1.0 / 24.0,
            m02: 1.0 / 12.0,
        };
        let c = central_from_raw(&t).unwrap();
        assert_relative_eq!(c.m20, 1.0 / 36.0, max_relative = 1e-14);
        assert_relative_eq!(c.m11, -1.0 / 72.0, max_relative = 1e-14);
        assert_relative_eq!(c.m02, 1.0 / 36.0, max_relative = 1e-14);
        let mu = normalized_from_central(&c);
        assert_relative_eq!(mu.mu20, 1.0 / 9.0, max_relative = 1e-14);
    }

    #[test]
    fn side_three_square_is_scale_free() {
        let c = CentralMoments {
            area: 9.0,
            xc: 1.5,
            yc: 1.5,
            m20: 6.75,
            m11: 0.0,
            m02: 6.75,
        };
        assert_relative_eq!(
            normalized_from_central(&c).mu20,
            1.0 / 12.0,
            max_relative = 1e-15
        );
    }

    #[test]
    fn zero_area_is_degenerate() {
        assert!(matches!(
            central_from_raw(&RawMoments::default()),
            Err(Error::DegenerateShape(_))
        ));
    }
}
