"""Smoke test for the pymcshape extension.

Uses an installed pymcshape if there is one (``maturin develop`` in
crates/python); otherwise builds the cdylib with cargo and loads it from a
temporary directory.
"""

import json
import os
import shutil
import subprocess
import sys
import tempfile
from pathlib import Path

ROOT = Path(__file__).resolve().parent.parent


def load():
    try:
        import pymcshape
        return pymcshape
    except ImportError:
        pass
    env = dict(os.environ, PYO3_BUILD_EXTENSION_MODULE="1")
    subprocess.run(
        ["cargo", "build", "--release", "-p", "mcshape-py"],
        cwd=ROOT, env=env, check=True,
    )
    lib = ROOT / "target" / "release" / "libpymcshape.so"
    tmp = Path(tempfile.mkdtemp(prefix="pymcshape-"))
    shutil.copy(lib, tmp / "pymcshape.so")
    sys.path.insert(0, str(tmp))
    import pymcshape
    return pymcshape


def close(a, b, rel=1e-12):
    return abs(a - b) <= rel * max(abs(a), abs(b))


def main():
    m = load()

    # two unit squares: A = 1/144 each, M = 25/1152
    sq = [m.Polygon.rectangle(0, 0, 1, 1), m.Polygon.rectangle(2, 0, 1, 1)]
    r = m.measure(sq)
    assert r.n == 2 and r.area_total == 2.0
    assert close(r.M, 25 / 1152), r.M
    assert close(sq[0].affine_invariant(), 1 / 144)
    report = json.loads(r.to_json())
    assert set(report) >= {"n", "area_total", "components", "A_union", "M"}, report
    assert r.to_csv_row("x").startswith("x,2,")

    try:
        import jsonschema
    except ImportError:
        jsonschema = None
    if jsonschema is not None:
        schema = json.loads((ROOT / "schemas" / "measure_report.schema.json").read_text())
        jsonschema.validate(report, schema)

    # M is unchanged by an affine map
    t = m.AffineMap(1.3, -0.4, 0.7, 0.2, 5.0, -2.0)
    moved = m.measure([p.transform(t) for p in sq]).M
    assert close(moved, r.M, 1e-11), (moved, r.M)

    # Monte Carlo mean squared triangle area against (3/2) a^2 A
    tri = m.Polygon([[[0, 0], [1, 0], [0, 1]]])
    est = m.mc_expected_sq_area(tri, 400_000, seed=7)
    z = est.z_score(m.theoretical_sq_area(tri))
    assert abs(z) < 4.5, z

    # discrete identity on a 2x2 block of pixel centres
    block = m.Mask.from_rows([[True, True], [True, True]])
    pts = block.pixel_centers()
    for order in (2, 3):
        assert close(m.discrete_tuple_sum(pts, order), m.discrete_identity_value(pts, order))

    # segmentation of a two-level image and measurement of the result
    w, h = 64, 32
    pix = bytes(40 if x < 32 else 200 for y in range(h) for x in range(w))
    img = m.GrayImage(w, h, pix)
    otsu = m.multi_otsu(m.median_filter(img, 3), classes=2)
    assert list(otsu.class_counts) == [w * h // 2, w * h // 2], otsu.class_counts
    labels = m.connected_components(img.to_mask(40), connectivity=4)
    assert labels.foreground_labels() == [1]
    assert m.measure_labels(labels).n == 1

    # errors surface as typed exceptions
    for bad, exc in (
        (lambda: m.measure([]), m.DegenerateShapeError),
        (lambda: m.multi_otsu(m.GrayImage(2, 2, bytes(4)), classes=3), m.DegenerateHistogramError),
        (lambda: m.parse_polygons("not json"), m.McShapeError),
    ):
        try:
            bad()
        except exc:
            pass
        else:
            raise AssertionError(f"expected {exc.__name__}")

    print(f"pymcshape {m.__version__}: smoke test passed (M = {r.M!r}, z = {z:.2f})")


if __name__ == "__main__":
    main()
