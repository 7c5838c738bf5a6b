import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from twistguide import cross_section as cs
from twistguide.errors import CapacityError, InvalidDomainError

PI = math.pi


def test_square_ground_energy_exact(square):
    e, chi = cs.first_eigenpair(square, 1.5)
    assert e == 4.25
    assert chi.mn == (1, 1)
    assert chi(PI / 2, PI / 2) == pytest.approx(2.0 / PI, abs=1e-15)


def test_rectangle_energy_formula():
    R = cs.Rectangle(2.0, 1.0)
    e, _ = cs.first_eigenpair(R, 0.7)
    assert e == pytest.approx((PI / 2.0) ** 2 + (1 + 0.49) * PI**2, abs=1e-13)


def test_mode_order_ties_lexicographic(square):
    basis = cs.mode_basis(square, 0.0, 3)
    assert [m.mn for m in basis] == [(1, 1), (1, 2), (2, 1)]
    assert [m.eigenvalue for m in basis] == pytest.approx([2.0, 5.0, 5.0])


def test_mode_order_sheared(square):
    basis = cs.mode_basis(square, 1.5, 4)
    assert [m.mn for m in basis] == [(1, 1), (2, 1), (3, 1), (1, 2)]
    assert np.all(np.diff([m.eigenvalue for m in basis]) >= 0)


def test_rectangle_gram_is_identity(square):
    basis = cs.mode_basis(square, 1.5, 16)
    assert np.max(np.abs(cs.gram_matrix(basis) - np.eye(16))) < 1e-13


def test_square_moments_analytic(square_moments):
    m = square_moments
    exact = dict(A1=(2 * PI**2 - 3) / 6, B1=(2 * PI**2 - 3) / 6, A2=PI / 2, B2=PI / 2,
                 A3=1.0, B3=1.0, C1=0.25, C2=0.0, C3=0.0, C4=0.0)
    for k, v in exact.items():
        assert getattr(m, k) == pytest.approx(v, abs=1e-12), k


def test_moments_by_tensor_quadrature(square):
    from twistguide.quadrature import rule_on

    _, chi = cs.first_eigenpair(square, 1.5)
    x, w = rule_on(0.0, PI, 64)
    Y1, Y2 = np.meshgrid(x, x, indexing="ij")
    W = np.outer(w, w)
    d1, d2 = chi.gradient(Y1, Y2)
    I = lambda f: float(np.sum(W * f))
    m = cs.moments(square, chi)
    assert I(Y2 * Y2 * d1 * d1) == pytest.approx(m.A1, abs=1e-12)
    assert I(Y1 * d2 * d2) == pytest.approx(m.B2, abs=1e-12)
    assert I(Y1 * Y2 * d1 * d2) == pytest.approx(m.C1, abs=1e-12)


def test_rotation_defect_identity(square, square_moments):
    _, chi = cs.first_eigenpair(square, 1.5)
    assert cs.rotation_defect(square, chi) == pytest.approx(square_moments.twist_coefficient, abs=1e-10)


def test_shifted_rectangle_moments_translate():
    R = cs.Rectangle(PI, PI, origin=(-PI / 2, -PI / 2))
    _, chi = cs.first_eigenpair(R, 1.0)
    m = cs.moments(R, chi)
    # centred square: first moments vanish
    assert m.A2 == pytest.approx(0.0, abs=1e-12)
    assert m.B2 == pytest.approx(0.0, abs=1e-12)
    assert m.twist_coefficient == pytest.approx(cs.rotation_defect(R, chi), abs=1e-10)


def test_vectorized_table_matches_pairwise(square):
    basis = cs.mode_basis(square, 1.5, 9)
    T = cs.coupling_table(square, basis)
    for i in range(9):
        for j in range(9):
            cm = cs.coupling_moments(square, basis, i, j)
            assert np.allclose(T[:, i, j], [getattr(cm, f) for f in cs.COUPLING_FIELDS], atol=1e-13)


def test_coupling_antisymmetry(square):
    basis = cs.mode_basis(square, 1.5, 9)
    t = dict(zip(cs.COUPLING_FIELDS, cs.coupling_table(square, basis)))
    for key in ("f1_1", "f2_1"):
        assert np.allclose(t[key], -t[key].T, atol=1e-13)


def test_grid_ground_energy_square():
    S = cs.MaskedGrid.from_rectangle(PI, PI, PI / 200)
    e, chi = cs.first_eigenpair(S, 1.5)
    assert abs(e - 4.25) < 1e-3
    assert np.sum(chi.values**2) * S.h**2 == pytest.approx(1.0, abs=1e-12)


def test_grid_convergence_order():
    errs = []
    for n in (25, 50, 100):
        S = cs.MaskedGrid.from_rectangle(PI, PI, PI / n)
        errs.append(abs(cs.first_eigenpair(S, 1.5)[0] - 4.25))
    orders = np.log2(np.array(errs[:-1]) / np.array(errs[1:]))
    assert np.all(orders >= 1.9)


def test_grid_moments_second_order():
    errs = []
    for n in (50, 100):
        S = cs.MaskedGrid.from_rectangle(PI, PI, PI / n)
        _, chi = cs.first_eigenpair(S, 1.5)
        errs.append(abs(cs.moments(S, chi).A3 - 1.0))
    assert math.log2(errs[0] / errs[1]) >= 1.8


def test_grid_basis_matches_rectangle():
    S = cs.MaskedGrid.from_rectangle(PI, PI, PI / 60)
    grid = cs.mode_basis(S, 1.5, 4)
    exact = cs.mode_basis(cs.Rectangle(), 1.5, 4)
    assert [m.eigenvalue for m in grid] == pytest.approx([m.eigenvalue for m in exact], rel=2e-3)
    assert np.max(np.abs(cs.gram_matrix(grid) - np.eye(4))) < 1e-8


@settings(max_examples=20, deadline=None)
@given(st.floats(0.0, 3.0), st.floats(0.0, 3.0))
def test_ground_energy_monotone_in_beta(b1, b2):
    lo, hi = sorted((b1, b2))
    S = cs.Rectangle(PI, 2.0)
    assert cs.first_eigenpair(S, lo)[0] <= cs.first_eigenpair(S, hi)[0]


def test_ground_energy_simple(square):
    for beta in (0.0, 0.9, 1.5, 3.0):
        e = [m.eigenvalue for m in cs.mode_basis(square, beta, 2)]
        assert e[1] - e[0] > 1e-6


def test_grid_monotone_in_beta():
    S = cs.MaskedGrid.from_rectangle(2.0, 1.5, 0.1)
    es = [cs.first_eigenpair(S, b)[0] for b in (0.0, 0.5, 1.0, 1.5)]
    assert np.all(np.diff(es) > 0)


def test_mask_loader_and_errors(tmp_path):
    p = tmp_path / "mask.txt"
    p.write_text("h 0.25\n0110\n1111\n0110\n")
    S = cs.load_mask(p)
    assert S.dof == 8 and S.h == 0.25
    bad = tmp_path / "bad.txt"
    bad.write_text("h 0.25\n0120\n")
    with pytest.raises(InvalidDomainError):
        cs.load_mask(bad)
    split = tmp_path / "split.txt"
    split.write_text("h 0.25\n101\n")
    with pytest.raises(InvalidDomainError):
        cs.load_mask(split)


def test_rectangle_validation():
    with pytest.raises((ValueError, InvalidDomainError)):
        cs.Rectangle(0.0, 1.0)


def test_capacity_error():
    S = cs.MaskedGrid.from_rectangle(1.0, 1.0, 0.25)
    with pytest.raises(CapacityError):
        cs.mode_basis(S, 0.5, S.dof + 1)


def test_fiber_threshold_untwisted_angle(square):
    # at angle 0 the straight sheared guide has threshold E1
    assert cs.fiber_threshold(square, 1.5, 0.0, modes=36) == pytest.approx(4.25, abs=1e-10)
    assert cs.fiber_threshold(square, 1.5, PI / 2, modes=36) == pytest.approx(4.25, abs=1e-10)


def test_fiber_threshold_oblique_angle_below_e1(square):
    # rotated sheared section: the orthogonal cross-section is smaller in
    # energy than E1 once the angle is not a multiple of pi/2
    lo = cs.fiber_threshold(square, 1.5, PI / 2 + 1.0, modes=144)
    assert lo < 4.25 - 0.1
