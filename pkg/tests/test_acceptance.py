"""The acceptance suite behind `verify`."""

import pytest

from src.pipeline.acceptance import AcceptanceSuite, CriterionResult, verify

from .conftest import FAST


def test_closed_form_oracles_pass():
    (result,) = verify(FAST, only=[1])
    assert result.passed, result.detail
    assert result.title == "closed-form oracles"


def test_sweep_determinism_passes():
    (result,) = AcceptanceSuite(FAST).run(only=[12])
    assert result.passed, result.detail


def test_results_follow_criterion_order():
    results = AcceptanceSuite(FAST).run(only=[12, 1])
    assert [r.number for r in results] == [1, 12]


def test_unknown_criterion():
    with pytest.raises(ValueError, match="no acceptance criterion"):
        AcceptanceSuite(FAST).run(only=[99])


def test_crashing_criterion_is_a_failure(monkeypatch):
    def boom(self):
        raise RuntimeError("grid exploded")

    monkeypatch.setattr(AcceptanceSuite, "_criterion_4", boom)
    (result,) = AcceptanceSuite(FAST).run(only=[4])
    assert not result.passed
    assert result.detail == "RuntimeError: grid exploded"


def test_progress_callback():
    seen = []
    AcceptanceSuite(FAST, progress_callback=lambda m, p: seen.append((m, p))).run(only=[1])
    assert seen[0] == ("criterion 1: closed-form oracles", 0.0)
    assert seen[-1][1] == 100.0


def test_format_line():
    line = CriterionResult(3, "reversed-bound constants", False, "tv-bl not tight").format_line()
    assert line.startswith("[FAIL]  3. reversed-bound constants")
    assert line.endswith("tv-bl not tight")


@pytest.mark.slow
@pytest.mark.parametrize("number", [2, 4, 5, 6, 7, 8, 9, 10])
def test_criterion_passes(number):
    (result,) = AcceptanceSuite(FAST).run(only=[number])
    assert result.passed, result.detail


@pytest.mark.slow
def test_reversed_fits_and_envelope():
    suite = AcceptanceSuite(FAST)
    results = suite.run(only=[3, 11])
    assert all(r.passed for r in results), [r.detail for r in results]
