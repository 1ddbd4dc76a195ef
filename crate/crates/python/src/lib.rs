//! Python bindings: shapes, moments, the measure `M`, the oracles and the
//! image pipeline. Long computations release the GIL.

use mcshape::format::{parse_polygons as parse_polygon_file, polygons_to_json};
use mcshape::imaging::{self, PgmEncoding};
use mcshape::{
    AffineMap, CentralMoments, Connectivity, Error, GrayImage, LabelImage, McEstimate,
    MeasureOptions, MeasureReport, MultiComponentShape, PolygonSet, RasterMask, Region, TupleOrder,
};
use pyo3::create_exception;
use pyo3::exceptions::{PyOSError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::PyBytes;

create_exception!(
    pymcshape,
    McShapeError,
    PyValueError,
    "Base class for mcshape errors."
);
create_exception!(
    pymcshape,
    DegenerateShapeError,
    McShapeError,
    "Zero-area, empty or overlapping shape."
);
create_exception!(
    pymcshape,
    DegenerateHistogramError,
    McShapeError,
    "Too few gray levels for the class count."
);

fn to_py(e: Error) -> PyErr {
    match e {
        Error::DegenerateShape(_)
        | Error::DegenerateComponent { .. }
        | Error::NoComponents
        | Error::OverlappingComponents { .. }
        | Error::SingularMap { .. } => DegenerateShapeError::new_err(e.to_string()),
        Error::DegenerateHistogram { .. } => DegenerateHistogramError::new_err(e.to_string()),
        Error::Io(io) => PyOSError::new_err(io.to_string()),
        e => McShapeError::new_err(e.to_string()),
    }
}

trait IntoPyResult<T> {
    fn py(self) -> PyResult<T>;
}

impl<T> IntoPyResult<T> for mcshape::Result<T> {
    fn py(self) -> PyResult<T> {
        self.map_err(to_py)
    }
}

/// Area, centroid and second central moments of a region.
#[pyclass(
    name = "CentralMoments",
    module = "pymcshape",
    frozen,
    get_all,
    skip_from_py_object
)]
#[derive(Clone)]
struct PyCentralMoments {
    area: f64,
    xc: f64,
    yc: f64,
    m20: f64,
    m11: f64,
    m02: f64,
}

impl From<CentralMoments> for PyCentralMoments {
    fn from(c: CentralMoments) -> Self {
        PyCentralMoments {
            area: c.area,
            xc: c.xc,
            yc: c.yc,
            m20: c.m20,
            m11: c.m11,
            m02: c.m02,
        }
    }
}

#[pymethods]
impl PyCentralMoments {
    fn __repr__(&self) -> String {
        format!(
            "CentralMoments(area={}, xc={}, yc={}, m20={}, m11={}, m02={})",
            self.area, self.xc, self.yc, self.m20, self.m11, self.m02
        )
    }
}

fn invariant_of<R: Region>(r: &R) -> PyResult<f64> {
    let c = r.central_moments().py()?;
    Ok(mcshape::affine_invariant(
        &mcshape::normalized_from_central(&c),
    ))
}

/// Nonsingular map `p -> J p + t`.
#[pyclass(name = "AffineMap", module = "pymcshape", frozen, skip_from_py_object)]
#[derive(Clone)]
struct PyAffineMap {
    inner: AffineMap,
}

#[pymethods]
impl PyAffineMap {
    #[new]
    #[pyo3(signature = (j11, j12, j21, j22, tx=0.0, ty=0.0))]
    fn new(j11: f64, j12: f64, j21: f64, j22: f64, tx: f64, ty: f64) -> PyResult<Self> {
        Ok(PyAffineMap {
            inner: AffineMap::new(j11, j12, j21, j22, tx, ty).py()?,
        })
    }

    #[staticmethod]
    fn identity() -> Self {
        PyAffineMap {
            inner: AffineMap::identity(),
        }
    }

    #[staticmethod]
    fn translation(tx: f64, ty: f64) -> Self {
        PyAffineMap {
            inner: AffineMap::translation(tx, ty),
        }
    }

    #[staticmethod]
    fn scaling(s: f64) -> PyResult<Self> {
        Ok(PyAffineMap {
            inner: AffineMap::scaling(s).py()?,
        })
    }

    fn det(&self) -> f64 {
        self.inner.det()
    }

    fn apply(&self, x: f64, y: f64) -> (f64, f64) {
        let p = self.inner.apply([x, y]);
        (p[0], p[1])
    }

    fn inverse(&self) -> PyResult<Self> {
        Ok(PyAffineMap {
            inner: self.inner.inverse().py()?,
        })
    }

    fn __repr__(&self) -> String {
        let m = &self.inner;
        format!(
            "AffineMap({}, {}, {}, {}, tx={}, ty={})",
            m.j11, m.j12, m.j21, m.j22, m.tx, m.ty
        )
    }
}

/// Polygon with holes: counter-clockwise outer rings, clockwise holes.
#[pyclass(name = "Polygon", module = "pymcshape", frozen, skip_from_py_object)]
#[derive(Clone)]
struct PyPolygon {
    inner: PolygonSet,
}

#[pymethods]
impl PyPolygon {
    #[new]
    fn new(rings: Vec<Vec<[f64; 2]>>) -> PyResult<Self> {
        Ok(PyPolygon {
            inner: PolygonSet::new(rings).py()?,
        })
    }

    #[staticmethod]
    fn rectangle(x0: f64, y0: f64, width: f64, height: f64) -> PyResult<Self> {
        Ok(PyPolygon {
            inner: PolygonSet::rectangle(x0, y0, width, height).py()?,
        })
    }

    /// Regular `n`-gon inscribed in the circle of radius `r`.
    #[staticmethod]
    fn regular(center: [f64; 2], r: f64, n: usize) -> PyResult<Self> {
        Ok(PyPolygon {
            inner: PolygonSet::regular(center, r, n).py()?,
        })
    }

    #[getter]
    fn rings(&self) -> Vec<Vec<[f64; 2]>> {
        self.inner.rings().to_vec()
    }

    #[getter]
    fn area(&self) -> f64 {
        self.inner.signed_area()
    }

    #[getter]
    fn bounds(&self) -> ([f64; 2], [f64; 2]) {
        self.inner.bounds()
    }

    fn contains(&self, x: f64, y: f64) -> bool {
        self.inner.contains([x, y])
    }

    fn central_moments(&self) -> PyResult<PyCentralMoments> {
        Ok(self.inner.central_moments().py()?.into())
    }

    /// `A = mu20 mu02 - mu11^2`.
    fn affine_invariant(&self) -> PyResult<f64> {
        invariant_of(&self.inner)
    }

    fn transform(&self, map: &PyAffineMap) -> PyResult<Self> {
        Ok(PyPolygon {
            inner: mcshape::apply_affine_polygon(&self.inner, &map.inner).py()?,
        })
    }

    fn rasterize(&self, pixels_per_unit: f64) -> PyMask {
        PyMask {
            inner: self.inner.rasterize(pixels_per_unit),
        }
    }

    fn __repr__(&self) -> String {
        format!(
            "Polygon(rings={}, area={})",
            self.inner.rings().len(),
            self.inner.signed_area()
        )
    }
}

/// Binary raster; pixel `(i, j)` covers `[i, i+1) x [j, j+1)` shifted by
/// `origin`.
#[pyclass(name = "Mask", module = "pymcshape", frozen, skip_from_py_object)]
#[derive(Clone)]
struct PyMask {
    inner: RasterMask,
}

#[pymethods]
impl PyMask {
    #[new]
    #[pyo3(signature = (width, height, cells, origin=[0.0, 0.0]))]
    fn new(width: usize, height: usize, cells: Vec<bool>, origin: [f64; 2]) -> PyResult<Self> {
        Ok(PyMask {
            inner: RasterMask::with_origin(width, height, cells, origin).py()?,
        })
    }

    /// Builds from a list of rows of truthy values.
    #[staticmethod]
    fn from_rows(rows: Vec<Vec<bool>>) -> PyResult<Self> {
        let width = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != width) {
            return Err(McShapeError::new_err("rows have different lengths"));
        }
        let height = rows.len();
        Ok(PyMask {
            inner: RasterMask::new(width, height, rows.concat()).py()?,
        })
    }

    #[getter]
    fn width(&self) -> usize {
        self.inner.width()
    }

    #[getter]
    fn height(&self) -> usize {
        self.inner.height()
    }

    #[getter]
    fn origin(&self) -> [f64; 2] {
        self.inner.origin()
    }

    fn count(&self) -> usize {
        self.inner.count()
    }

    fn get(&self, i: usize, j: usize) -> PyResult<bool> {
        if i >= self.inner.width() || j >= self.inner.height() {
            return Err(pyo3::exceptions::PyIndexError::new_err(
                "pixel out of range",
            ));
        }
        Ok(self.inner.get(i, j))
    }

    fn to_rows(&self) -> Vec<Vec<bool>> {
        self.inner
            .grid()
            .chunks(self.inner.width().max(1))
            .map(<[bool]>::to_vec)
            .collect()
    }

    fn pixel_centers(&self) -> Vec<[f64; 2]> {
        self.inner.pixel_centers()
    }

    fn central_moments(&self) -> PyResult<PyCentralMoments> {
        Ok(self.inner.central_moments().py()?.into())
    }

    fn affine_invariant(&self) -> PyResult<f64> {
        invariant_of(&self.inner)
    }

    fn __repr__(&self) -> String {
        format!(
            "Mask({}x{}, count={})",
            self.inner.width(),
            self.inner.height(),
            self.inner.count()
        )
    }
}

#[pyclass(name = "MeasureReport", module = "pymcshape", frozen)]
struct PyMeasureReport {
    inner: MeasureReport,
}

#[pymethods]
impl PyMeasureReport {
    #[classattr]
    const CSV_HEADER: &'static str = MeasureReport::CSV_HEADER;

    #[getter]
    fn n(&self) -> usize {
        self.inner.n
    }

    #[getter]
    fn area_total(&self) -> f64 {
        self.inner.area_total
    }

    /// `(area, A)` per component in input order.
    #[getter]
    fn components(&self) -> Vec<(f64, f64)> {
        self.inner
            .components
            .iter()
            .map(|c| (c.area, c.a))
            .collect()
    }

    #[getter(A_union)]
    fn a_union(&self) -> f64 {
        self.inner.a_union
    }

    #[getter(M)]
    fn m(&self) -> f64 {
        self.inner.m
    }

    fn to_json(&self) -> String {
        self.inner.to_json()
    }

    fn to_csv_row(&self, source: &str) -> String {
        self.inner.to_csv_row(source)
    }

    fn __repr__(&self) -> String {
        format!(
            "MeasureReport(n={}, A_union={}, M={})",
            self.inner.n, self.inner.a_union, self.inner.m
        )
    }
}

#[pyclass(name = "McEstimate", module = "pymcshape", frozen, get_all)]
struct PyMcEstimate {
    mean: f64,
    std_error: f64,
    n_samples: u64,
    seed: u64,
    acceptance_ratio: f64,
}

impl From<McEstimate> for PyMcEstimate {
    fn from(e: McEstimate) -> Self {
        PyMcEstimate {
            mean: e.mean,
            std_error: e.std_error,
            n_samples: e.n_samples,
            seed: e.seed,
            acceptance_ratio: e.acceptance_ratio,
        }
    }
}

#[pymethods]
impl PyMcEstimate {
    fn z_score(&self, expected: f64) -> f64 {
        (self.mean - expected) / self.std_error
    }

    fn __repr__(&self) -> String {
        format!(
            "McEstimate(mean={}, std_error={}, n_samples={})",
            self.mean, self.std_error, self.n_samples
        )
    }
}

#[pyclass(name = "GrayImage", module = "pymcshape", frozen, skip_from_py_object)]
#[derive(Clone)]
struct PyGrayImage {
    inner: GrayImage,
}

#[pymethods]
impl PyGrayImage {
    #[new]
    fn new(width: usize, height: usize, pixels: Vec<u8>) -> PyResult<Self> {
        Ok(PyGrayImage {
            inner: GrayImage::new(width, height, pixels).py()?,
        })
    }

    #[getter]
    fn width(&self) -> usize {
        self.inner.width()
    }

    #[getter]
    fn height(&self) -> usize {
        self.inner.height()
    }

    /// Row-major pixel bytes.
    #[getter]
    fn pixels<'py>(&self, py: Python<'py>) -> Bound<'py, PyBytes> {
        PyBytes::new(py, self.inner.pixels())
    }

    fn get(&self, x: usize, y: usize) -> PyResult<u8> {
        if x >= self.inner.width() || y >= self.inner.height() {
            return Err(pyo3::exceptions::PyIndexError::new_err(
                "pixel out of range",
            ));
        }
        Ok(self.inner.get(x, y))
    }

    #[pyo3(signature = (background=0))]
    fn to_mask(&self, background: u8) -> PyMask {
        PyMask {
            inner: self.inner.to_mask(background),
        }
    }

    fn __repr__(&self) -> String {
        format!("GrayImage({}x{})", self.inner.width(), self.inner.height())
    }
}

#[pyclass(name = "LabelImage", module = "pymcshape", frozen, skip_from_py_object)]
#[derive(Clone)]
struct PyLabelImage {
    inner: LabelImage,
}

#[pymethods]
impl PyLabelImage {
    #[new]
    #[pyo3(signature = (width, height, labels, background=0))]
    fn new(width: usize, height: usize, labels: Vec<u32>, background: u32) -> PyResult<Self> {
        Ok(PyLabelImage {
            inner: LabelImage::new(width, height, labels, background).py()?,
        })
    }

    #[getter]
    fn width(&self) -> usize {
        self.inner.width()
    }

    #[getter]
    fn height(&self) -> usize {
        self.inner.height()
    }

    #[getter]
    fn labels(&self) -> Vec<u32> {
        self.inner.labels().to_vec()
    }

    #[getter]
    fn background(&self) -> u32 {
        self.inner.background()
    }

    fn with_background(&self, background: u32) -> Self {
        PyLabelImage {
            inner: self.inner.clone().with_background(background),
        }
    }

    fn get(&self, x: usize, y: usize) -> PyResult<u32> {
        if x >= self.inner.width() || y >= self.inner.height() {
            return Err(pyo3::exceptions::PyIndexError::new_err(
                "pixel out of range",
            ));
        }
        Ok(self.inner.get(x, y))
    }

    fn foreground_labels(&self) -> Vec<u32> {
        self.inner.foreground_labels()
    }

    /// One cropped mask per foreground label, ascending.
    fn components(&self) -> PyResult<Vec<PyMask>> {
        let s = mcshape::label_to_components(&self.inner).py()?;
        Ok(s.into_components()
            .into_iter()
            .map(|inner| PyMask { inner })
            .collect())
    }

    fn __repr__(&self) -> String {
        format!(
            "LabelImage({}x{}, labels={:?})",
            self.inner.width(),
            self.inner.height(),
            self.inner.foreground_labels()
        )
    }
}

#[pyclass(name = "OtsuResult", module = "pymcshape", frozen)]
struct PyOtsuResult {
    inner: mcshape::OtsuResult,
}

#[pymethods]
impl PyOtsuResult {
    #[getter]
    fn thresholds(&self) -> Vec<u8> {
        self.inner.thresholds.clone()
    }

    #[getter]
    fn class_counts(&self) -> Vec<u64> {
        self.inner.class_counts.clone()
    }

    /// Class index per pixel, darkest class 0.
    #[getter]
    fn labels(&self) -> PyLabelImage {
        PyLabelImage {
            inner: self.inner.labels.clone(),
        }
    }

    fn with_background_class(&self, class: u32) -> PyResult<PyLabelImage> {
        Ok(PyLabelImage {
            inner: self.inner.with_background_class(class).py()?,
        })
    }
}

/// Either kind of region accepted by the single-shape functions.
#[derive(FromPyObject)]
enum ShapeArg<'py> {
    Polygon(PyRef<'py, PyPolygon>),
    Mask(PyRef<'py, PyMask>),
}

/// A homogeneous list of components.
#[derive(FromPyObject)]
enum ComponentsArg<'py> {
    Polygons(Vec<PyRef<'py, PyPolygon>>),
    Masks(Vec<PyRef<'py, PyMask>>),
}

fn polygon_shape(ps: &[PyRef<'_, PyPolygon>]) -> PyResult<MultiComponentShape<PolygonSet>> {
    MultiComponentShape::new(ps.iter().map(|p| p.inner.clone()).collect()).py()
}

/// `M` of a list of area-disjoint components (all polygons or all masks).
#[pyfunction]
#[pyo3(signature = (components, overlap_resolution=None))]
fn measure(
    py: Python<'_>,
    components: ComponentsArg<'_>,
    overlap_resolution: Option<f64>,
) -> PyResult<PyMeasureReport> {
    let opts = MeasureOptions { overlap_resolution };
    let inner = match components {
        ComponentsArg::Polygons(ps) => {
            let s = polygon_shape(&ps)?;
            py.detach(|| mcshape::measure_with(&s, &opts)).py()?
        }
        ComponentsArg::Masks(ms) => {
            let s = MultiComponentShape::new(ms.iter().map(|m| m.inner.clone()).collect()).py()?;
            py.detach(|| mcshape::measure_with(&s, &opts)).py()?
        }
    };
    Ok(PyMeasureReport { inner })
}

/// `M` of a label image; every foreground label is a component.
#[pyfunction]
fn measure_labels(py: Python<'_>, labels: &PyLabelImage) -> PyResult<PyMeasureReport> {
    let li = &labels.inner;
    let inner = py
        .detach(|| mcshape::label_to_components(li).and_then(|s| mcshape::measure(&s)))
        .py()?;
    Ok(PyMeasureReport { inner })
}

#[pyfunction]
fn affine_invariant(shape: ShapeArg<'_>) -> PyResult<f64> {
    match shape {
        ShapeArg::Polygon(p) => invariant_of(&p.inner),
        ShapeArg::Mask(m) => invariant_of(&m.inner),
    }
}

/// `(3/2) a^2 A`, the expected squared area of a random triangle.
#[pyfunction]
fn theoretical_sq_area(shape: ShapeArg<'_>) -> PyResult<f64> {
    let c = match shape {
        ShapeArg::Polygon(p) => p.inner.central_moments(),
        ShapeArg::Mask(m) => m.inner.central_moments(),
    }
    .py()?;
    Ok(mcshape::theoretical_sq_area(&c))
}

/// Monte Carlo estimate of the mean squared triangle area from `n` triples.
#[pyfunction]
#[pyo3(signature = (shape, n, seed=0))]
fn mc_expected_sq_area(
    py: Python<'_>,
    shape: ShapeArg<'_>,
    n: u64,
    seed: u64,
) -> PyResult<PyMcEstimate> {
    let est = match shape {
        ShapeArg::Polygon(p) => {
            let s = &p.inner;
            py.detach(|| mcshape::mc_expected_sq_area(s, n, seed))
        }
        ShapeArg::Mask(m) => {
            let s = &m.inner;
            py.detach(|| mcshape::mc_expected_sq_area(s, n, seed))
        }
    }
    .py()?;
    Ok(est.into())
}

/// Sum of squared areas over ordered tuples; `order` is 2 or 3.
#[pyfunction]
fn discrete_tuple_sum(points: Vec<[f64; 2]>, order: u32) -> PyResult<f64> {
    mcshape::discrete_tuple_sum(&points, TupleOrder::from_order(order).py()?).py()
}

/// Closed form of `discrete_tuple_sum` from discrete central moments.
#[pyfunction]
fn discrete_identity_value(points: Vec<[f64; 2]>, order: u32) -> PyResult<f64> {
    mcshape::discrete_identity_value(&points, TupleOrder::from_order(order).py()?).py()
}

/// `M` of the polygons rendered at `resolution` pixels per unit.
#[pyfunction]
fn highres_raster_oracle(
    py: Python<'_>,
    components: Vec<PyRef<'_, PyPolygon>>,
    resolution: u32,
) -> PyResult<PyMeasureReport> {
    let s = polygon_shape(&components)?;
    let inner = py
        .detach(|| mcshape::highres_raster_oracle(&s, resolution))
        .py()?;
    Ok(PyMeasureReport { inner })
}

/// Components from the polygon JSON format.
#[pyfunction]
fn parse_polygons(text: &str) -> PyResult<Vec<PyPolygon>> {
    let s = parse_polygon_file(text).py()?;
    Ok(s.into_components()
        .into_iter()
        .map(|inner| PyPolygon { inner })
        .collect())
}

#[pyfunction]
fn read_polygons(path: std::path::PathBuf) -> PyResult<Vec<PyPolygon>> {
    let s = mcshape::format::read_polygons(path).py()?;
    Ok(s.into_components()
        .into_iter()
        .map(|inner| PyPolygon { inner })
        .collect())
}

#[pyfunction]
fn polygons_json(components: Vec<PyRef<'_, PyPolygon>>) -> PyResult<String> {
    Ok(polygons_to_json(&polygon_shape(&components)?))
}

/// PGM (P2/P5) or 8-bit PNG; color PNGs are converted to luma.
#[pyfunction]
fn read_image(path: std::path::PathBuf) -> PyResult<PyGrayImage> {
    Ok(PyGrayImage {
        inner: imaging::read_gray(path).py()?,
    })
}

/// Label image stored as gray values; background 0.
#[pyfunction]
fn read_labels(path: std::path::PathBuf) -> PyResult<PyLabelImage> {
    Ok(PyLabelImage {
        inner: imaging::read_labels(path).py()?,
    })
}

#[pyfunction]
#[pyo3(signature = (path, image, ascii=false))]
fn write_gray(path: std::path::PathBuf, image: &PyGrayImage, ascii: bool) -> PyResult<()> {
    let enc = if ascii {
        PgmEncoding::Ascii
    } else {
        PgmEncoding::Binary
    };
    imaging::write_gray(path, &image.inner, enc).py()
}

#[pyfunction]
fn write_label(path: std::path::PathBuf, labels: &PyLabelImage) -> PyResult<()> {
    imaging::write_label(path, &labels.inner).py()
}

#[pyfunction]
#[pyo3(signature = (image, window=3))]
fn median_filter(py: Python<'_>, image: &PyGrayImage, window: usize) -> PyResult<PyGrayImage> {
    let g = &image.inner;
    Ok(PyGrayImage {
        inner: py.detach(|| mcshape::median_filter(g, window)).py()?,
    })
}

#[pyfunction]
#[pyo3(signature = (image, classes=4))]
fn multi_otsu(py: Python<'_>, image: &PyGrayImage, classes: usize) -> PyResult<PyOtsuResult> {
    let g = &image.inner;
    Ok(PyOtsuResult {
        inner: py.detach(|| mcshape::multi_otsu(g, classes)).py()?,
    })
}

#[pyfunction]
#[pyo3(signature = (mask, connectivity=8))]
fn connected_components(mask: &PyMask, connectivity: u32) -> PyResult<PyLabelImage> {
    let conn = Connectivity::from_neighbours(connectivity).py()?;
    Ok(PyLabelImage {
        inner: mcshape::connected_components(&mask.inner, conn),
    })
}

#[pymodule]
pub fn pymcshape(m: &Bound<'_, PyModule>) -> PyResult<()> {
    let py = m.py();
    m.add("__version__", env!("CARGO_PKG_VERSION"))?;
    m.add("McShapeError", py.get_type::<McShapeError>())?;
    m.add(
        "DegenerateShapeError",
        py.get_type::<DegenerateShapeError>(),
    )?;
    m.add(
        "DegenerateHistogramError",
        py.get_type::<DegenerateHistogramError>(),
    )?;
    m.add_class::<PyCentralMoments>()?;
    m.add_class::<PyAffineMap>()?;
    m.add_class::<PyPolygon>()?;
    m.add_class::<PyMask>()?;
    m.add_class::<PyMeasureReport>()?;
    m.add_class::<PyMcEstimate>()?;
    m.add_class::<PyGrayImage>()?;
    m.add_class::<PyLabelImage>()?;
    m.add_class::<PyOtsuResult>()?;
    m.add_function(wrap_pyfunction!(measure, m)?)?;
    m.add_function(wrap_pyfunction!(measure_labels, m)?)?;
    m.add_function(wrap_pyfunction!(affine_invariant, m)?)?;
    m.add_function(wrap_pyfunction!(theoretical_sq_area, m)?)?;
    m.add_function(wrap_pyfunction!(mc_expected_sq_area, m)?)?;
    m.add_function(wrap_pyfunction!(discrete_tuple_sum, m)?)?;
    m.add_function(wrap_pyfunction!(discrete_identity_value, m)?)?;
    m.add_function(wrap_pyfunction!(highres_raster_oracle, m)?)?;
    m.add_function(wrap_pyfunction!(parse_polygons, m)?)?;
    m.add_function(wrap_pyfunction!(read_polygons, m)?)?;
    m.add_function(wrap_pyfunction!(polygons_json, m)?)?;
    m.add_function(wrap_pyfunction!(read_image, m)?)?;
    m.add_function(wrap_pyfunction!(read_labels, m)?)?;
    m.add_function(wrap_pyfunction!(write_gray, m)?)?;
    m.add_function(wrap_pyfunction!(write_label, m)?)?;
    m.add_function(wrap_pyfunction!(median_filter, m)?)?;
    m.add_function(wrap_pyfunction!(multi_otsu, m)?)?;
    m.add_function(wrap_pyfunction!(connected_components, m)?)?;
    Ok(())
}
