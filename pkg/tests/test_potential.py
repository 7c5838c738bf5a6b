import math

import numpy as np
import pytest

from twistguide import assembly, cross_section as cs, eigen, potential as pt, quadrature, twist as tw

PI = math.pi
# 30-digit reference values (beta = 1.5, alpha = 0.5 tanh x + pi/2, square section)
V0_REF = -1.08626042334411849237456737081
INT_V_REF = -2.8252338276025799694860113762


def test_potential_at_origin(make_spec):
    assert pt.potential(make_spec(), 0.0) == pytest.approx(V0_REF, abs=1e-14)


def test_integral_reference(make_spec):
    rep = pt.integral_V(make_spec())
    assert rep.integral_V == pytest.approx(INT_V_REF, abs=1e-11)
    assert rep.integral_V == pytest.approx(pt.tanh_integral_square(1.5, 0.5), abs=1e-11)
    assert rep.integrable and rep.hypothesis_met


@pytest.mark.parametrize("beta,c", [(0.5, 0.25), (1.5, 1.0), (2.0, 2.0)])
def test_integral_matches_closed_form(make_spec, beta, c):
    rep = pt.integral_V(make_spec(beta, c))
    assert rep.integral_V == pytest.approx(pt.tanh_integral_square(beta, c), abs=1e-10)


def test_untwisted_potential_is_zero(make_spec):
    spec = make_spec(1.5, 0.0)
    assert np.all(pt.potential(spec, np.linspace(-5, 5, 11)) == 0.0)
    assert not pt.integral_V(spec).hypothesis_met


def test_zero_shear_never_meets_hypothesis(make_spec):
    for c in (0.1, 0.5, 2.0):
        rep = pt.integral_V(make_spec(0.0, c))
        assert rep.integral_V >= 0 and not rep.hypothesis_met


def test_nonintegrable_profile_flagged(square_moments):
    ramp = tw.Tabulated(tuple(np.linspace(-30, 30, 61)), tuple(np.linspace(-9, 9, 61)), tuple(np.full(61, 0.3)))
    rep = pt.integral_V(pt.PotentialSpec(square_moments, 1.5, ramp))
    assert not rep.integrable and not rep.hypothesis_met


def test_potential_is_quadratic_form_of_ground_mode(square):
    """V = int |a d1 chi - b d2 chi|^2 + |grad chi|^2 - E1, by 2D quadrature."""
    beta, prof = 1.5, tw.Tanh(0.5)
    e1, chi = cs.first_eigenpair(square, beta)
    spec = pt.PotentialSpec(cs.moments(square, chi), beta, prof)
    y, w = quadrature.rule_on(0.0, PI, 48)
    Y1, Y2 = np.meshgrid(y, y, indexing="ij")
    W = np.outer(w, w)
    d1, d2 = chi.gradient(Y1, Y2)
    for x in np.linspace(-4, 4, 17):
        al, ap = prof.evaluate(x)
        a = ap * Y2 - beta * math.sin(al)
        b = ap * Y1 + beta * math.cos(al)
        form = np.sum(W * ((a * d1 - b * d2) ** 2 + d1 * d1 + d2 * d2)) - e1
        assert pt.potential(spec, x) == pytest.approx(form, abs=1e-8)


def test_closed_form_square(make_spec):
    x = np.linspace(-20, 20, 1000)
    for beta in (0.5, 1.5):
        for c in (0.25, 0.5, 1.0):
            spec = make_spec(beta, c)
            ref = pt.square_closed_form(beta, spec.twist, x)
            assert np.max(np.abs(pt.potential(spec, x) - ref)) <= 1e-12


def test_cutoff_shape():
    x = np.array([-3.0, -2.0, -1.0, 0.0, 1.0, 1.5, 2.0])
    w = pt.cutoff(x)
    assert w[0] == 0 and w[1] == 0 and w[2] == 1 and w[3] == 1 and w[4] == 1
    assert w[5] == pytest.approx(0.5)
    xs = np.linspace(1.01, 1.99, 50)
    fd = (pt.cutoff(xs + 1e-6) - pt.cutoff(xs - 1e-6)) / 2e-6
    assert np.max(np.abs(fd - pt.cutoff_prime(xs))) < 1e-6


def test_witness_kinetic_scaling(make_spec):
    spec = make_spec(1.5, 0.0)  # V = 0: only the kinetic part survives
    for n in (1, 2, 4):
        assert pt.witness_energy(spec, n=n) == pytest.approx(pt.cutoff_energy() / n, rel=1e-12)


def test_witness_sequence(make_spec):
    tab = pt.witness_sequence(make_spec(), n_max=32)
    assert tab.first_negative is not None
    assert tab.q[tab.first_negative - 1] < 0
    gaps = [abs(tab.q[n - 1] - tab.integral_V) for n in (4, 8, 16, 32)]
    assert all(g0 / g1 >= 1.8 for g0, g1 in zip(gaps, gaps[1:]))


def test_witness_bounds_lowest_effective_eigenvalue(make_spec):
    """Trial states are upper bounds for the effective problem's ground energy."""
    spec = make_spec()
    grid = assembly.Grid1D(20.0, 3999)
    pencil = assembly.assemble_effective_1d(grid, spec, 4.25)
    lam = eigen.eigs_below(pencil, 4.25).eigenvalues_below[0]
    norm1 = quadrature.composite(lambda x: pt.cutoff(x) ** 2, -2.0, 2.0)
    for n in (1, 2, 4, 8):
        rq = pt.witness_energy(spec, n=n) / (n * norm1)
        assert lam - 4.25 <= rq + 1e-6


def test_sample_table_columns(make_spec):
    tab = pt.sample_table(make_spec(), count=5)
    assert tab.shape == (5, 4)
    assert tab[2, 0] == 0.0 and tab[2, 3] == pytest.approx(V0_REF, abs=1e-14)


def test_spec_validation(square_moments):
    with pytest.raises(ValueError):
        pt.PotentialSpec(square_moments, -1.0, tw.Tanh())
    with pytest.raises(ValueError):
        pt.integral_V(pt.PotentialSpec(square_moments, 1.0, tw.Tanh()), X=0.0)
