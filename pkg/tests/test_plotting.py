"""The envelope curve and its SVG."""

import math

import numpy as np
import pytest

from src.utils.plotting import MARKED_POINTS, envelope, envelope_samples, plot_envelope


class TestEnvelope:
    @pytest.mark.parametrize("x, expected", [
        (math.exp(-2.0), 2.0 * math.exp(-2.0)),
        (math.exp(-1.0), math.exp(-1.0)),
        (1.0, 1.0),
        (1.5, 1.5),
    ])
    def test_values(self, x, expected):
        assert float(envelope(x)) == pytest.approx(expected, rel=1e-12)

    def test_value_at_e_minus_two(self):
        assert float(envelope(math.exp(-2.0))) == pytest.approx(0.2706706, abs=1e-7)

    def test_continuous_at_the_switch(self):
        left, right = envelope([math.exp(-1.0) - 1e-9, math.exp(-1.0) + 1e-9])
        assert left == pytest.approx(right, abs=1e-8)

    @pytest.mark.parametrize("x", [0.0, -1.0])
    def test_rejects_nonpositive_x(self, x):
        with pytest.raises(ValueError):
            envelope(x)

    def test_samples_include_marked_points(self):
        x, y = envelope_samples()
        for point in MARKED_POINTS:
            assert np.any(x == point)
        assert np.all(np.diff(x) > 0)
        np.testing.assert_allclose(y, envelope(x))


class TestSvg:
    def test_svg_is_byte_stable(self, tmp_path):
        first = plot_envelope(tmp_path / "a.svg", scatter=[(0.1, 0.2), (0.3, 0.35)], constant=1.3)
        second = plot_envelope(tmp_path / "b.svg", scatter=[(0.1, 0.2), (0.3, 0.35)], constant=1.3)
        assert first.read_bytes() == second.read_bytes()
        text = first.read_text()
        assert text.startswith("<?xml")
        assert "<dc:date>" not in text

    def test_plain_curve(self, tmp_path):
        path = plot_envelope(tmp_path / "plain.svg")
        assert path.stat().st_size > 0

    def test_missing_directory(self, tmp_path):
        with pytest.raises(OSError):
            plot_envelope(tmp_path / "absent" / "e.svg")
