use std::fmt;
use std::io::{BufRead, Write};
use std::path::Path;

use mcshape::format::{fmt_f64, merge_components, parse_polygons, read_polygons};
use mcshape::imaging::{decode_image, read_gray, read_labels, write_label};
use mcshape::oracles::SHARD_SIZE;
use mcshape::{
    affine_invariant, apply_affine_polygon, connected_components, discrete_identity_value,
    discrete_tuple_sum, label_to_components, mc_expected_sq_area, measure, measure_with,
    median_filter, multi_otsu, normalized_from_central, theoretical_sq_area, AffineMap,
    Connectivity, Error, LabelImage, MeasureOptions, MeasureReport, MultiComponentShape,
    PolygonSet, RasterMask, Region, TupleOrder,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::json::{array, Obj};
use crate::{Format, InvarianceArgs, Layout, MeasureArgs, OracleArgs, SegmentArgs, SynthesizeArgs};

/// Largest mask accepted by `oracle --discrete`; the triple sum is cubic.
const DISCRETE_MAX_PIXELS: usize = 400;
/// Largest side of a synthesized image.
const MAX_SIDE: f64 = 16384.0;

#[derive(Debug)]
pub enum Failure {
    Usage(String),
    Lib(Error),
    Invariance(String),
    /// Failure while handling the named input; keeps the inner exit code.
    At(String, Box<Failure>),
}

impl Failure {
    pub fn code(&self) -> u8 {
        match self {
            Failure::Usage(_) => 2,
            Failure::Invariance(_) => 5,
            Failure::At(_, inner) => inner.code(),
            Failure::Lib(e) => match e {
                Error::DegenerateShape(_)
                | Error::DegenerateComponent { .. }
                | Error::NoComponents
                | Error::OverlappingComponents { .. }
                | Error::SingularMap { .. } => 3,
                Error::DegenerateHistogram { .. } => 4,
                _ => 2,
            },
        }
    }
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Failure::Usage(m) | Failure::Invariance(m) => f.write_str(m),
            Failure::Lib(e) => write!(f, "{e}"),
            Failure::At(path, inner) => write!(f, "{path}: {inner}"),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Failure {
        Failure::Lib(e)
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Failure {
        Failure::Lib(e.into())
    }
}

fn with_path<T>(path: &Path, r: mcshape::Result<T>) -> Result<T, Failure> {
    r.map_err(|e| Failure::At(path.display().to_string(), Box::new(Failure::Lib(e))))
}

// ---------------------------------------------------------------- measure

pub fn cmd_measure(a: &MeasureArgs, out: &mut dyn Write) -> Result<(), Failure> {
    let connectivity = Connectivity::from_neighbours(a.connectivity.parse().unwrap_or(0))?;
    if a.validate_overlap && !(a.overlap_resolution > 0.0 && a.overlap_resolution.is_finite()) {
        return Err(Failure::Usage(
            "--overlap-resolution must be positive".into(),
        ));
    }
    if a.mask.is_some() && a.background > 255 {
        return Err(Failure::Usage(
            "--background must be a gray value (0..=255) with --mask".into(),
        ));
    }

    let (source, report) = if let Some(p) = &a.polygons {
        let shape = with_path(p, read_polygons(p))?;
        let opts = MeasureOptions {
            overlap_resolution: a.validate_overlap.then_some(a.overlap_resolution),
        };
        (p, measure_with(&shape, &opts)?)
    } else if let Some(p) = &a.labels {
        (p, measure_labels(p, a.background)?)
    } else if let Some(p) = &a.mask {
        let g = with_path(p, read_gray(p))?;
        let li = connected_components(&g.to_mask(a.background as u8), connectivity);
        (p, measure(&label_to_components(&li)?)?)
    } else {
        if a.format != Format::Csv {
            return Err(Failure::Usage(
                "give --labels, --polygons or --mask (or --format csv to read label-image paths from stdin)"
                    .into(),
            ));
        }
        return measure_batch(a.background, out);
    };

    match a.format {
        Format::Json => writeln!(out, "{}", report.to_json())?,
        Format::Csv => {
            writeln!(out, "{}", MeasureReport::CSV_HEADER)?;
            writeln!(out, "{}", report.to_csv_row(&source.display().to_string()))?;
        }
    }
    Ok(())
}

fn measure_labels(path: &Path, background: u32) -> Result<MeasureReport, Failure> {
    let li = with_path(path, read_labels(path))?.with_background(background);
    Ok(measure(&label_to_components(&li)?)?)
}

/// One label-image path per stdin line, one CSV row per path, flushed as
/// it is produced. Stops at the first failing file.
fn measure_batch(background: u32, out: &mut dyn Write) -> Result<(), Failure> {
    writeln!(out, "{}", MeasureReport::CSV_HEADER)?;
    for line in std::io::stdin().lock().lines() {
        let line = line?;
        let path = line.trim();
        if path.is_empty() {
            continue;
        }
        let report = measure_labels(Path::new(path), background)
            .map_err(|f| Failure::At(path.to_string(), Box::new(f)))?;
        writeln!(out, "{}", report.to_csv_row(path))?;
        out.flush()?;
    }
    Ok(())
}

// ---------------------------------------------------------------- segment

pub fn cmd_segment(a: &SegmentArgs, out: &mut dyn Write) -> Result<(), Failure> {
    if a.median != 1 && (a.median < 3 || a.median % 2 == 0) {
        return Err(Failure::Usage(format!(
            "--median must be 1 or an odd number >= 3, got {}",
            a.median
        )));
    }
    if a.background_class >= a.classes {
        return Err(Failure::Usage(format!(
            "--background-class {} must be below --classes {}",
            a.background_class, a.classes
        )));
    }
    let g = with_path(&a.input, read_gray(&a.input))?;
    let filtered = if a.median == 1 {
        g
    } else {
        median_filter(&g, a.median)?
    };
    let r = multi_otsu(&filtered, a.classes as usize)?;
    let li = r.with_background_class(a.background_class)?;
    write_label(&a.output, &li)?;

    let class_labels = (0..a.classes).map(|c| match c.cmp(&a.background_class) {
        std::cmp::Ordering::Equal => 0,
        std::cmp::Ordering::Less => c + 1,
        std::cmp::Ordering::Greater => c,
    });
    let report = Obj::new()
        .int("width", li.width() as u64)
        .int("height", li.height() as u64)
        .int("median", a.median as u64)
        .int("classes", a.classes)
        .raw(
            "thresholds",
            array(r.thresholds.iter().map(|t| t.to_string())),
        )
        .raw(
            "class_counts",
            array(r.class_counts.iter().map(|c| c.to_string())),
        )
        .int("background_class", a.background_class)
        .raw("class_labels", array(class_labels.map(|l| l.to_string())))
        .finish();
    writeln!(out, "{report}")?;
    Ok(())
}

// ---------------------------------------------------------------- synthesize

/// Label image of the 2x2 layout and the square centres in pixel units.
fn grid2x2(
    side: f64,
    spacing: f64,
    resolution: u32,
) -> Result<(LabelImage, Vec<[f64; 2]>), Failure> {
    let r = resolution as f64;
    let c = (side + spacing) / 2.0;
    let half = side / 2.0;
    let extent = c + half;
    let n = (2.0 * extent * r).ceil();
    if n > MAX_SIDE {
        return Err(Failure::Usage(format!(
            "image would be {n} pixels wide (limit {MAX_SIDE})"
        )));
    }
    let n = n as usize;
    let centres = [[-c, -c], [c, -c], [-c, c], [c, c]];
    let mut labels = vec![0u32; n * n];
    for j in 0..n {
        let y = (j as f64 + 0.5) / r - extent;
        for i in 0..n {
            let x = (i as f64 + 0.5) / r - extent;
            // half-open squares so touching squares stay disjoint
            if let Some(k) = centres.iter().position(|q| {
                x >= q[0] - half && x < q[0] + half && y >= q[1] - half && y < q[1] + half
            }) {
                labels[j * n + i] = k as u32 + 1;
            }
        }
    }
    let px = centres
        .iter()
        .map(|q| [(q[0] + extent) * r, (q[1] + extent) * r])
        .collect();
    Ok((LabelImage::new(n, n, labels, 0)?, px))
}

pub fn cmd_synthesize(a: &SynthesizeArgs, out: &mut dyn Write) -> Result<(), Failure> {
    if !(a.side > 0.0 && a.side.is_finite()) {
        return Err(Failure::Usage(format!(
            "--side must be positive, got {}",
            a.side
        )));
    }
    if !(a.spacing >= 0.0 && a.spacing.is_finite()) {
        return Err(Failure::Usage(format!(
            "--spacing must be >= 0 (squares would overlap), got {}",
            a.spacing
        )));
    }
    let (li, centres) = match a.layout {
        Layout::Grid2x2 => grid2x2(a.side, a.spacing, a.resolution)?,
    };
    write_label(&a.output, &li)?;
    let counts = li
        .foreground_labels()
        .into_iter()
        .map(|l| li.labels().iter().filter(|&&v| v == l).count().to_string());
    let report = Obj::new()
        .str("layout", "grid2x2")
        .num("side", a.side)
        .num("spacing", a.spacing)
        .int("resolution", a.resolution)
        .int("width", li.width() as u64)
        .int("height", li.height() as u64)
        .raw(
            "centres",
            array(
                centres
                    .iter()
                    .map(|p| format!("[{},{}]", fmt_f64(p[0]), fmt_f64(p[1]))),
            ),
        )
        .raw("pixels", array(counts))
        .finish();
    writeln!(out, "{report}")?;
    Ok(())
}

// ---------------------------------------------------------------- invariance

/// Random map with entries in [-3, 3], |det| >= 0.1 and translation in
/// [-10, 10]; about half of them are reflections.
fn random_map(rng: &mut ChaCha8Rng) -> AffineMap {
    loop {
        let j: [f64; 4] = std::array::from_fn(|_| rng.random_range(-3.0..=3.0));
        let det = j[0] * j[3] - j[1] * j[2];
        if det.abs() >= 0.1 {
            let (tx, ty) = (
                rng.random_range(-10.0..=10.0),
                rng.random_range(-10.0..=10.0),
            );
            return AffineMap::new(j[0], j[1], j[2], j[3], tx, ty)
                .expect("det bounded away from 0");
        }
    }
}

fn transform(
    s: &MultiComponentShape<PolygonSet>,
    t: &AffineMap,
) -> mcshape::Result<MultiComponentShape<PolygonSet>> {
    let comps = s
        .components()
        .iter()
        .map(|p| apply_affine_polygon(p, t))
        .collect::<mcshape::Result<_>>()?;
    MultiComponentShape::new(comps)
}

pub fn cmd_invariance(a: &InvarianceArgs, out: &mut dyn Write) -> Result<(), Failure> {
    if a.labels.is_some() {
        return Err(Failure::Usage(
            "raster input is refused: raster M is only approximately affine invariant; \
             describe the shape as polygons and use --polygons"
                .into(),
        ));
    }
    if a.tolerance.is_nan() || a.tolerance < 0.0 {
        return Err(Failure::Usage("--tolerance must be >= 0".into()));
    }
    let path = a.polygons.as_ref().expect("clap requires an input");
    let shape = with_path(path, read_polygons(path))?;
    let m0 = measure(&shape)?.m;

    // trial 0 is the identity and must reproduce M bit for bit
    let mut rng = ChaCha8Rng::seed_from_u64(a.seed);
    let mut maps = vec![AffineMap::identity()];
    maps.extend((0..a.trials).map(|_| random_map(&mut rng)));

    let mut rows = Vec::with_capacity(maps.len());
    let (mut max_abs, mut max_rel) = (0.0f64, 0.0f64);
    for (trial, t) in maps.iter().enumerate() {
        let m = measure(&transform(&shape, t)?)?.m;
        let abs = (m - m0).abs();
        let rel = if m0 != 0.0 { abs / m0.abs() } else { abs };
        max_abs = max_abs.max(abs);
        max_rel = max_rel.max(rel);
        rows.push((trial, t.det(), m, abs, rel));
    }
    let pass = max_rel <= a.tolerance;

    match a.format {
        Format::Json => {
            let rows = rows.iter().map(|&(trial, det, m, abs, rel)| {
                Obj::new()
                    .int("trial", trial as u64)
                    .num("det", det)
                    .num("M", m)
                    .num("abs_delta", abs)
                    .num("rel_delta", rel)
                    .finish()
            });
            let report = Obj::new()
                .int("trials", a.trials)
                .int("seed", a.seed)
                .num("M", m0)
                .num("max_abs_delta", max_abs)
                .num("max_rel_delta", max_rel)
                .num("tolerance", a.tolerance)
                .boolean("pass", pass)
                .raw("rows", array(rows))
                .finish();
            writeln!(out, "{report}")?;
        }
        Format::Csv => {
            writeln!(out, "trial,det,M,abs_delta,rel_delta")?;
            for (trial, det, m, abs, rel) in rows {
                writeln!(
                    out,
                    "{trial},{},{},{},{}",
                    fmt_f64(det),
                    fmt_f64(m),
                    fmt_f64(abs),
                    fmt_f64(rel)
                )?;
            }
        }
    }
    if pass {
        Ok(())
    } else {
        Err(Failure::Invariance(format!(
            "max relative deviation {} exceeds tolerance {}",
            fmt_f64(max_rel),
            fmt_f64(a.tolerance)
        )))
    }
}

// ---------------------------------------------------------------- oracle

enum OracleShape {
    Polygon(PolygonSet),
    Mask(RasterMask),
}

fn read_shape(path: &Path, background: u8) -> Result<OracleShape, Failure> {
    let bytes = with_path(path, std::fs::read(path).map_err(Error::from))?;
    let first = bytes.iter().find(|b| !b.is_ascii_whitespace()).copied();
    if matches!(first, Some(b'{') | Some(b'[')) {
        let text = String::from_utf8_lossy(&bytes);
        let shape = with_path(path, parse_polygons(&text))?;
        Ok(OracleShape::Polygon(merge_components(&shape)?))
    } else {
        let mask = with_path(path, decode_image(&bytes))?.to_mask(background);
        if mask.is_empty() {
            return Err(Error::DegenerateShape("mask has no foreground pixels".into()).into());
        }
        Ok(OracleShape::Mask(mask))
    }
}

pub fn cmd_oracle(a: &OracleArgs, out: &mut dyn Write) -> Result<(), Failure> {
    let shape = read_shape(&a.shape, a.background)?;
    if a.discrete {
        let OracleShape::Mask(mask) = shape else {
            return Err(Failure::Usage(
                "--discrete needs an image mask, not polygons".into(),
            ));
        };
        return oracle_discrete(&mask, out);
    }

    let (central, est) = match &shape {
        OracleShape::Polygon(p) => (
            p.central_moments()?,
            mc_expected_sq_area(p, a.samples, a.seed)?,
        ),
        OracleShape::Mask(m) => (
            m.central_moments()?,
            mc_expected_sq_area(m, a.samples, a.seed)?,
        ),
    };
    let theoretical = theoretical_sq_area(&central);
    let report = Obj::new()
        .str("mode", "monte_carlo")
        .num("area", central.area)
        .num("A", affine_invariant(&normalized_from_central(&central)))
        .int("samples", est.n_samples)
        .int("seed", a.seed)
        .int("shard_size", SHARD_SIZE)
        .num("estimate", est.mean)
        .num("std_error", est.std_error)
        .num("theoretical", theoretical)
        .num("z_score", est.z_score(theoretical))
        .num("acceptance_ratio", est.acceptance_ratio)
        .finish();
    writeln!(out, "{report}")?;
    Ok(())
}

fn oracle_discrete(mask: &RasterMask, out: &mut dyn Write) -> Result<(), Failure> {
    let n = mask.count();
    if n > DISCRETE_MAX_PIXELS {
        return Err(Failure::Usage(format!(
            "--discrete is limited to {DISCRETE_MAX_PIXELS} pixels (the triple sum is cubic), mask has {n}"
        )));
    }
    let pts = mask.pixel_centers();
    let mut parts = Vec::new();
    let mut max_rel = 0.0f64;
    for (key, order) in [
        ("pairs", TupleOrder::Pairs),
        ("triples", TupleOrder::Triples),
    ] {
        let sum = discrete_tuple_sum(&pts, order)?;
        let identity = discrete_identity_value(&pts, order)?;
        let scale = sum.abs().max(identity.abs());
        if scale > 0.0 {
            max_rel = max_rel.max((sum - identity).abs() / scale);
        }
        parts.push((
            key,
            Obj::new()
                .num("sum", sum)
                .num("identity", identity)
                .finish(),
        ));
    }
    let mut report = Obj::new().str("mode", "discrete").int("points", n as u64);
    for (key, v) in parts {
        report = report.raw(key, v);
    }
    writeln!(out, "{}", report.num("max_rel_error", max_rel).finish())?;
    Ok(())
}
