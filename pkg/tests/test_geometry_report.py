import csv
import io
import json
import math
from fractions import Fraction

import pytest

from ratcurve.certificates import CurveSample, sample_curve
from ratcurve.errors import TooFewSamples
from ratcurve.geometry import circle_fit_residual, count_self_intersections, is_closed
from ratcurve.numfield import get_field
from ratcurve.ratfunc import INF, RationalFunction
from ratcurve.report import canonical, emit_plot, make_report, samples_csv, samples_svg


def circle_points(n=200, r=2.0):
    return [(r * math.cos(2 * math.pi * k / n), r * math.sin(2 * math.pi * k / n)) for k in range(n)]


def test_circle_fit_on_exact_circle():
    (cx, cy), R, resid = circle_fit_residual(circle_points())
    assert abs(cx) < 1e-12 and abs(cy) < 1e-12 and abs(R - 2) < 1e-12 and resid < 1e-12


def test_ellipse_residual_is_large():
    pts = [(2 * math.cos(t), math.sin(t)) for t in (2 * math.pi * k / 300 for k in range(300))]
    assert circle_fit_residual(pts)[2] > 0.2


def test_self_intersections():
    assert count_self_intersections(circle_points()) == 0
    # a figure eight crosses itself once
    eight = [(math.sin(2 * t), math.sin(t)) for t in (2 * math.pi * k / 400 for k in range(400))]
    assert count_self_intersections(eight) == 1
    assert is_closed(eight)


def test_real_line_image_is_a_circle():
    # (z - i)/(z + i) maps the real line onto the unit circle
    samples = sample_curve(RationalFunction.parse("(z-t)/(z+t)", get_field("gaussian")), n=400)
    pts = [s.point() for s in samples]
    assert circle_fit_residual(pts)[2] < 1e-9


def _samples():
    K = get_field("rationals")
    return [CurveSample(INF, None, True, "PoleAtSample"),
            CurveSample(Fraction(0), K(0).embed(64)),
            CurveSample(Fraction(1), K(1).embed(64)),
            CurveSample(Fraction(2), K(3).embed(64))]


def test_csv_and_svg():
    rows = list(csv.reader(io.StringIO(samples_csv(_samples()))))
    assert rows[0] == ["param", "re", "im", "skipped"]
    assert rows[1] == ["oo", "", "", "1"] and rows[3][1] == "1"
    svg = samples_svg(_samples())
    assert svg.startswith("<?xml") and "<path" in svg and " Z" not in svg


def test_svg_needs_points():
    with pytest.raises(TooFewSamples):
        samples_svg(_samples()[:2])


def test_emit_plot(tmp_path):
    svg, csv_path = emit_plot(_samples(), str(tmp_path / "c.svg"))
    assert csv_path.endswith("c.csv")
    assert (tmp_path / "c.svg").read_text().endswith("</svg>\n")


def test_report_canonical_ignores_timing():
    a = make_report("circle", {"g": "z"}, {"verdict": "Circle"}, seconds=0.1)
    b = make_report("circle", {"g": "z"}, {"verdict": "Circle"}, seconds=9.0)
    assert canonical(a) == canonical(b)
    assert json.loads(canonical(a))["schema_version"] == 1


def test_figures_module(tmp_path):
    pytest.importorskip("matplotlib")
    from ratcurve.figures import render_curve

    out = render_curve(_samples(), str(tmp_path / "c.png"), title="test")
    assert (tmp_path / "c.png").stat().st_size > 0 and out.endswith("c.png")


def test_two_samples_give_one_two_point_path():
    K = get_field("rationals")
    two = [CurveSample(Fraction(0), K(0).embed(64)), CurveSample(Fraction(1), K(1).embed(64))]
    svg = samples_svg(two)
    assert svg.count("<path") == 1
    d = svg.split('d="')[1].split('"')[0]
    assert d.count("M") == 1 and d.count("L") == 1


def test_svg_and_csv_are_deterministic(tmp_path):
    K = get_field("eisenstein")
    g = RationalFunction.parse("(2*z^3+(t+1)*z)/(z^2-t)", K)
    outs = []
    for i in range(2):
        svg, csv_path = emit_plot(sample_curve(g, n=200), str(tmp_path / f"c{i}.svg"))
        outs.append((open(svg).read(), open(csv_path).read()))
    assert outs[0] == outs[1]
