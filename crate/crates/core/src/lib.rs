//! Affine moment invariants for single shapes and a measure for shapes made
//! of several area-disjoint components.
//!
//! The crate is organised bottom-up:
//!
//! * [`geometry`]: polygon sets and raster masks, exact moments up to order
//!   two, affine maps.
//! * [`invariants`]: the affine invariant `A = mu20*mu02 - mu11^2` and the
//!   multi-component measure `M`.
//! * [`oracles`]: Monte Carlo and enumeration checks of the squared triangle
//!   area identities, and a rasterisation cross-check for `M`.
//! * [`imaging`]: grayscale/label image IO, median filter, multi-level Otsu,
//!   connected components.
//! * [`format`]: polygon JSON files and report serialisation.
//!
//! Coordinates follow image convention: x to the right, y downward, origin
//! at the grid corner.

// `!(x > 0.0)` is used on purpose: it also rejects NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod error;
pub mod format;
pub mod geometry;
pub mod imaging;
pub mod invariants;
pub mod oracles;

pub use error::{Error, Result};
pub use geometry::{
    apply_affine_polygon, apply_affine_raster, central_from_raw, normalized_from_central,
    polygon_raw_moments, raster_raw_moments, AffineMap, CentralMoments, NormalizedMoments,
    PolygonSet, RasterMask, RawMoments, Region,
};
pub use imaging::{
    connected_components, label_to_components, median_filter, multi_otsu, Connectivity, GrayImage,
    LabelImage, OtsuResult,
};
pub use invariants::{
    affine_invariant, component_term, measure, measure_with, ComponentReport, MeasureOptions,
    MeasureReport, MultiComponentShape,
};
pub use oracles::{
    discrete_identity_value, discrete_tuple_sum, highres_raster_oracle, mc_expected_sq_area,
    theoretical_sq_area, McEstimate, TupleOrder, UniformSampler,
};
