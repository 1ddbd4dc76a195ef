//! Polygon files and report serialisation.
//!
//! Polygon file:
//!
//! ```json
//! {"components": [{"rings": [[[x, y], ...], ...]}, ...]}
//! ```
//!
//! Floats in reports are printed with 17 significant digits so that the
//! output is reproducible byte for byte and round-trips to the same `f64`.

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::PolygonSet;
use crate::invariants::{MeasureReport, MultiComponentShape};

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ComponentRecord {
    rings: Vec<Vec<[f64; 2]>>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct PolygonFile {
    components: Vec<ComponentRecord>,
}

pub fn parse_polygons(text: &str) -> Result<MultiComponentShape<PolygonSet>> {
    let file: PolygonFile = serde_json::from_str(text)?;
    let comps = file
        .components
        .into_iter()
        .map(|c| PolygonSet::new(c.rings))
        .collect::<Result<Vec<_>>>()?;
    MultiComponentShape::new(comps)
}

pub fn read_polygons(path: impl AsRef<Path>) -> Result<MultiComponentShape<PolygonSet>> {
    parse_polygons(&std::fs::read_to_string(path)?)
}

pub fn polygons_to_json(s: &MultiComponentShape<PolygonSet>) -> String {
    let file = PolygonFile {
        components: s
            .components()
            .iter()
            .map(|p| ComponentRecord {
                rings: p.rings().to_vec(),
            })
            .collect(),
    };
    serde_json::to_string(&file).expect("plain data serialises")
}

/// All rings of all components as one polygon set.
pub fn merge_components(s: &MultiComponentShape<PolygonSet>) -> Result<PolygonSet> {
    let rings: Vec<Vec<[f64; 2]>> = s
        .components()
        .iter()
        .flat_map(|p| p.rings().iter().cloned())
        .collect();
    if rings.is_empty() {
        return Err(Error::NoComponents);
    }
    PolygonSet::new(rings)
}

/// 17 significant digits; positional notation for exponents in `-5..17`,
/// otherwise `d.ddde±x`. Non-finite values become `null`.
pub fn fmt_f64(v: f64) -> String {
    if !v.is_finite() {
        return "null".into();
    }
    if v == 0.0 {
        return "0".into();
    }
    let sci = format!("{:.16e}", v);
    let (mantissa, exp) = sci.split_once('e').expect("exponent present");
    let exp: i32 = exp.parse().expect("integer exponent");
    if !(-5..17).contains(&exp) {
        return sci;
    }
    let (sign, digits) = match mantissa.strip_prefix('-') {
        Some(m) => ("-", m.replace('.', "")),
        None => ("", mantissa.replace('.', "")),
    };
    if exp < 0 {
        format!("{sign}0.{}{digits}", "0".repeat((-exp - 1) as usize))
    } else {
        let point = exp as usize + 1;
        if point >= digits.len() {
            format!("{sign}{digits}")
        } else {
            format!("{sign}{}.{}", &digits[..point], &digits[point..])
        }
    }
}

impl MeasureReport {
    /// `{"n":…,"area_total":…,"components":[{"area":…,"A":…},…],"A_union":…,"M":…}`
    pub fn to_json(&self) -> String {
        let comps: Vec<String> = self
            .components
            .iter()
            .map(|c| format!("{{\"area\":{},\"A\":{}}}", fmt_f64(c.area), fmt_f64(c.a)))
            .collect();
        format!(
            "{{\"n\":{},\"area_total\":{},\"components\":[{}],\"A_union\":{},\"M\":{}}}",
            self.n,
            fmt_f64(self.area_total),
            comps.join(","),
            fmt_f64(self.a_union),
            fmt_f64(self.m)
        )
    }

    pub const CSV_HEADER: &'static str = "source,n,area_total,A_union,M";

    /// One row matching [`MeasureReport::CSV_HEADER`]. Commas and quotes in
    /// `source` are quoted.
    pub fn to_csv_row(&self, source: &str) -> String {
        let src = if source.contains([',', '"', '\n']) {
            format!("\"{}\"", source.replace('"', "\"\""))
        } else {
            source.to_string()
        };
        format!(
            "{src},{},{},{},{}",
            self.n,
            fmt_f64(self.area_total),
            fmt_f64(self.a_union),
            fmt_f64(self.m)
        )
    }
}
