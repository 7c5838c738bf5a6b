"""End-to-end spectral analysis of one (section, beta, twist) configuration."""

from math import pi

import numpy as np

from . import assembly, cross_section as cs, eigen

# cross-section modes used for the converged fiber threshold on rectangles
TAIL_MODES = 144


def tail_threshold(section, beta, twist, basis=None, modes=TAIL_MODES):
    """Bottom of the continuous spectrum contributed by the straight ends.

    The section approaches fixed angles ``alpha(+-inf)``; each end behaves like
    a straight sheared guide at that angle. Returns the minimum over both ends.
    With ``basis`` given, the computation is restricted to that basis.
    """
    angles = sorted(set(float(a) for a in twist.limits()))
    if basis is not None:
        return min(_fiber_min(section, beta, a, basis) for a in angles)
    return min(cs.fiber_threshold(section, beta, a, modes=modes) for a in angles)


def _fiber_min(section, beta, angle, basis):
    from scipy.optimize import minimize_scalar

    H0, P = cs.fiber_operator(section, beta, angle, basis)
    eye = np.eye(len(basis))
    f = lambda k: float(np.linalg.eigvalsh(H0 + 2.0 * k * P + k * k * eye)[0])
    res = minimize_scalar(f, bounds=(0.0, 4.0), method="bounded", options={"xatol": 1e-8})
    return min(f(0.0), float(res.fun))


def build_pencil(section, beta, twist, L=20.0, nx=2000, modes=9):
    basis = cs.mode_basis(section, beta, modes)
    grid = assembly.Grid1D(L, nx)
    return assembly.assemble_coupled(grid, section, basis, twist, beta), basis


def discretization_error(section, beta, twist, L, nx, modes, fine, tol=1e-8, threshold=None):
    """Richardson estimate ``|lambda_h - lambda_2h| / 3`` per located eigenvalue."""
    coarse_nx = (nx + 1) // 2 - 1
    pencil, _ = build_pencil(section, beta, twist, L, coarse_nx, modes)
    coarse = eigen.eigs_below(pencil, threshold, tol).eigenvalues_below
    out = []
    for k, lam in enumerate(fine):
        out.append(abs(coarse[k] - lam) / 3.0 if k < len(coarse) else float("inf"))
    return out


def analyze(section, beta, twist, L=20.0, nx=2000, modes=9, tol=1e-8, estimate_error=False,
            tail=True, threshold=None):
    """Eigenvalues of the truncated Galerkin problem below ``E1(beta)``.

    Diagnostics also carry the end-region threshold (``tail_threshold``) and
    how many eigenvalues lie below it (``count_below_tail``): only those are
    separated from the continuum of the straight ends.
    """
    pencil, basis = build_pencil(section, beta, twist, L, nx, modes)
    E1 = basis[0].eigenvalue if isinstance(section, cs.Rectangle) else cs.first_eigenpair(section, beta)[0]
    cut = E1 if threshold is None else threshold
    margin = (pi / (2.0 * L)) ** 2
    result = eigen.eigs_below(pencil, cut, tol, margin=margin)
    d = result.diagnostics
    d.update(E1=E1, truncation_margin=margin, beta=beta)
    if tail:
        d["tail_threshold_basis"] = tail_threshold(section, beta, twist, basis=basis)
        if isinstance(section, cs.Rectangle):
            d["tail_threshold"] = tail_threshold(section, beta, twist)
        else:
            d["tail_threshold"] = d["tail_threshold_basis"]
        d["count_below_tail"] = sum(v < d["tail_threshold"] for v in result.eigenvalues_below)
    if estimate_error and result.count:
        err = discretization_error(section, beta, twist, L, nx, modes, result.eigenvalues_below, tol, cut)
        d["discretization_error"] = err
    return result
