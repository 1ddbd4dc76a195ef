//! The affine invariant `A` and the multi-component measure `M`.
//!
//! For a shape `S = S_1 ∪ … ∪ S_n` with area-disjoint components,
//!
//! ```text
//! M(S) = A(S) - Σ_i (a_i / a)^4 · A(S_i)
//! ```
//!
//! where `a_i` is the area of `S_i` and `a` the total area. `M` is zero for a
//! single component and is invariant under nonsingular affine maps.

use std::cmp::Ordering;
use std::collections::HashMap;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::geometry::{
    compose_central, normalized_from_central, CentralMoments, Dd, NormalizedMoments, Region,
};

/// Slack below zero tolerated on `mu20*mu02 - mu11^2` before reporting as-is.
const A_SLACK: f64 = 1e-15;

/// `mu20*mu02 - mu11^2`. Values within `1e-15` below zero are rounding noise
/// on a positive semidefinite form and are clamped to zero.
pub fn affine_invariant(mu: &NormalizedMoments) -> f64 {
    let v = (Dd::prod(mu.mu20, mu.mu02) - Dd::prod(mu.mu11, mu.mu11)).to_f64();
    if (-A_SLACK..0.0).contains(&v) {
        0.0
    } else {
        v
    }
}

/// `M20*M02 - M11^2 = a^4 · A`, with the same clamping as
/// [`affine_invariant`] scaled to the magnitude of the moments.
pub fn component_term(c: &CentralMoments) -> f64 {
    let v = c.det();
    let slack = 1e-12 * (c.m20 * c.m02).max(1.0);
    if v < 0.0 && v >= -slack {
        0.0
    } else {
        v
    }
}

/// An ordered list of area-disjoint components of one kind.
#[derive(Debug, Clone, PartialEq)]
pub struct MultiComponentShape<S> {
    components: Vec<S>,
}

impl<S> MultiComponentShape<S> {
    pub fn new(components: Vec<S>) -> Result<Self> {
        if components.is_empty() {
            return Err(Error::NoComponents);
        }
        Ok(MultiComponentShape { components })
    }

    pub fn components(&self) -> &[S] {
        &self.components
    }

    pub fn into_components(self) -> Vec<S> {
        self.components
    }

    pub fn len(&self) -> usize {
        self.components.len()
    }

    pub fn is_empty(&self) -> bool {
        self.components.is_empty()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct MeasureOptions {
    /// When set, components are rendered at this many cells per unit length
    /// and any shared cell is reported as an overlap.
    pub overlap_resolution: Option<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ComponentReport {
    pub area: f64,
    pub a: f64,
}

/// Per-component areas and invariants, the union invariant and `M`.
#[derive(Debug, Clone, PartialEq)]
pub struct MeasureReport {
    pub n: usize,
    pub area_total: f64,
    pub components: Vec<ComponentReport>,
    pub a_union: f64,
    pub m: f64,
}

pub fn measure<S: Region + Sync>(s: &MultiComponentShape<S>) -> Result<MeasureReport> {
    measure_with(s, &MeasureOptions::default())
}

/// Computes `M`. Union moments come from the per-component central moments
/// by the parallel-axis rule, which equals summing raw moments for
/// area-disjoint parts.
///
/// Components are reduced in a canonical order derived from their moments,
/// so the result is bitwise identical under any permutation of the input.
pub fn measure_with<S: Region + Sync>(
    s: &MultiComponentShape<S>,
    opts: &MeasureOptions,
) -> Result<MeasureReport> {
    let comps = s.components();
    if let Some(res) = opts.overlap_resolution {
        if !(res > 0.0) || !res.is_finite() {
            return Err(Error::InvalidArgument(format!(
                "overlap resolution {res} must be positive"
            )));
        }
        check_overlap(comps, res)?;
    }

    let central: Vec<CentralMoments> = comps
        .par_iter()
        .enumerate()
        .map(|(index, c)| {
            c.central_moments().map_err(|e| match e {
                Error::DegenerateShape(_) => Error::DegenerateComponent { index },
                e => e,
            })
        })
        .collect::<Result<_>>()?;
    let per_component: Vec<ComponentReport> = central
        .iter()
        .map(|c| ComponentReport {
            area: c.area,
            a: affine_invariant(&normalized_from_central(c)),
        })
        .collect();

    let mut order: Vec<usize> = (0..central.len()).collect();
    order.sort_by(|&i, &j| canonical_cmp(&central[i], &central[j]));

    let union = if central.len() == 1 {
        central[0]
    } else {
        compose_central(order.iter().map(|&i| &central[i]))?
    };
    let a_union = affine_invariant(&normalized_from_central(&union));
    let area_total = union.area;

    let subtracted: f64 = order
        .iter()
        .map(|&i| {
            let w = per_component[i].area / area_total;
            let w2 = w * w;
            w2 * w2 * per_component[i].a
        })
        .sum();

    Ok(MeasureReport {
        n: comps.len(),
        area_total,
        components: per_component,
        a_union,
        m: a_union - subtracted,
    })
}

fn canonical_cmp(a: &CentralMoments, b: &CentralMoments) -> Ordering {
    let key = |c: &CentralMoments| [c.area, c.xc, c.yc, c.m20, c.m11, c.m02];
    key(a)
        .iter()
        .zip(key(b).iter())
        .map(|(x, y)| x.total_cmp(y))
        .find(|o| o.is_ne())
        .unwrap_or(Ordering::Equal)
}

fn check_overlap<S: Region + Sync>(comps: &[S], resolution: f64) -> Result<()> {
    let cells: Vec<Vec<(i64, i64)>> = comps
        .par_iter()
        .map(|c| c.overlap_cells(resolution))
        .collect();
    let mut owner: HashMap<(i64, i64), usize> = HashMap::new();
    for (index, cs) in cells.into_iter().enumerate() {
        for cell in cs {
            if let Some(&first) = owner.get(&cell) {
                if first != index {
                    return Err(Error::OverlappingComponents {
                        first,
                        second: index,
                    });
                }
            } else {
                owner.insert(cell, index);
            }
        }
    }
    Ok(())
}
