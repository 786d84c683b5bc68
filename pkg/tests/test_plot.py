import xml.etree.ElementTree as ET

import numpy as np
import pytest

from roughideal.geometry import GeometryError, Grid, GridRegion
from roughideal.plot import emit_plot_data, region_svg

SVG = "{http://www.w3.org/2000/svg}"


def segment_region():
    g = Grid((-420,), (841,), 1 / 200)
    x = g.axis(0)
    lab = np.where(np.abs(x) <= 2, 1, 0)
    return GridRegion(g, lab).banded()


def test_segment_svg_has_fill_and_hatched_ends(tmp_path):
    csv_path, svg_path = emit_plot_data(segment_region(), tmp_path / "seg")
    root = ET.parse(svg_path).getroot()
    rects = root.findall(f"{SVG}rect")
    assert sum(r.get("fill") == "url(#hatch)" for r in rects) == 3  # two ends plus legend swatch
    assert csv_path.read_text().splitlines()[0] == "x0,label"


def test_svg_bytes_are_deterministic():
    assert region_svg(segment_region()) == region_svg(segment_region())


def test_empty_region_is_valid_svg_with_legend():
    g = Grid((0, 0), (5, 5), 0.1)
    text = region_svg(GridRegion(g, np.zeros(25, dtype=int)))
    root = ET.fromstring(text)
    labels = [t.text for t in root.iter(f"{SVG}text")]
    assert "empty region" in labels and "in" in labels and "uncertain" in labels


def test_triangle_core_polygon():
    g = Grid((0, 0), (21, 21), 0.05)
    c = g.centers()
    lab = (c[:, 0] + c[:, 1] <= 1).astype(int)
    tri = np.array([[0, 0], [1, 0], [0, 1]], dtype=float)
    root = ET.fromstring(region_svg(GridRegion(g, lab), polygon=tri, gamma=tri))
    poly = root.findall(f"{SVG}polygon")
    assert len(poly) == 1 and len(poly[0].get("points").split()) == 3
    assert len(root.findall(f"{SVG}circle")) == 4  # three points plus legend


def test_three_dimensional_regions_rejected(tmp_path):
    g = Grid((0, 0, 0), (2, 2, 2), 1.0)
    with pytest.raises(GeometryError):
        emit_plot_data(GridRegion(g, np.zeros(8, dtype=int)), tmp_path / "x")
