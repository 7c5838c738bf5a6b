import math

import numpy as np
import pytest

from twistguide import quadrature as q


@pytest.mark.parametrize("order", [2, 4, 16, 64])
def test_gauss_legendre_exact_for_polynomials(order):
    x, w = q.gauss_legendre(order)
    for k in range(2 * order):
        exact = 0.0 if k % 2 else 2.0 / (k + 1)
        assert np.dot(w, x**k) == pytest.approx(exact, abs=1e-13)


def test_rule_on_maps_interval():
    x, w = q.rule_on(1.0, 3.0, 8)
    assert w.sum() == pytest.approx(2.0, abs=1e-15)
    assert np.all((x > 1.0) & (x < 3.0))


def test_panel_nodes_cover_edges():
    x, w = q.panel_nodes(np.array([0.0, 0.5, 2.0]), 6)
    assert w.sum() == pytest.approx(2.0, abs=1e-14)
    assert x.shape == w.shape == (2, 6)
    assert np.sum(w * x**3) == pytest.approx(4.0, abs=1e-13)


def test_pairwise_sum_matches_fsum():
    rng = np.random.default_rng(3)
    v = rng.standard_normal(10001) * 1e6
    assert q.pairwise_sum(v) == pytest.approx(math.fsum(v), rel=1e-12)


def test_composite_gaussian():
    val = q.composite(lambda x: np.exp(-x * x), -8.0, 8.0)
    assert val == pytest.approx(math.sqrt(math.pi), abs=1e-14)


def test_adaptive_sech_squared():
    val, info = q.adaptive(lambda x: 1.0 / np.cosh(x) ** 2, -20.0, 20.0)
    assert val == pytest.approx(2.0 * math.tanh(20.0), abs=1e-13)
    assert isinstance(info, dict)
