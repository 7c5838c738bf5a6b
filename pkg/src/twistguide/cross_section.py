"""Cross-sections, eigenmodes of the anisotropic transverse operator, and moments.

The transverse operator is ``T(beta) = -d^2/dy1^2 - (1 + beta^2) d^2/dy2^2``
with Dirichlet conditions on the boundary of the section.
"""

from dataclasses import dataclass, field, fields
from math import comb, pi, sqrt

import numpy as np
import scipy.sparse as sp
from scipy import ndimage
from scipy.sparse.linalg import splu

from .errors import CapacityError, ConvergenceError, InvalidDomainError


@dataclass(frozen=True)
class Rectangle:
    """``(o1, o1 + a) x (o2, o2 + b)``; the default is the corner-at-origin box."""

    a: float = pi
    b: float = pi
    origin: tuple = (0.0, 0.0)

    def __post_init__(self):
        if not (self.a > 0 and self.b > 0):
            raise InvalidDomainError("rectangle sides must be positive")

    @property
    def centroid(self):
        return self.origin[0] + 0.5 * self.a, self.origin[1] + 0.5 * self.b


@dataclass(frozen=True, eq=False)
class MaskedGrid:
    """Interior lattice points of a general section.

    ``mask[i, j]`` marks the point ``origin + ((i + 1) h, (j + 1) h)``; every
    lattice point outside the mask carries the Dirichlet value 0.
    """

    h: float
    mask: np.ndarray
    origin: tuple = (0.0, 0.0)

    def __post_init__(self):
        mask = np.asarray(self.mask, dtype=bool)
        if not self.h > 0:
            raise InvalidDomainError("grid spacing must be positive")
        if mask.ndim != 2 or not mask.any():
            raise InvalidDomainError("mask must be a nonempty 2-D boolean array")
        _, ncomp = ndimage.label(mask)
        if ncomp != 1:
            raise InvalidDomainError(f"mask must be connected, found {ncomp} components")
        mask = mask.copy()
        mask.setflags(write=False)
        object.__setattr__(self, "mask", mask)

    @classmethod
    def from_rectangle(cls, a, b, h, origin=(0.0, 0.0)):
        n1 = int(round(a / h)) - 1
        n2 = int(round(b / h)) - 1
        if n1 < 1 or n2 < 1:
            raise InvalidDomainError("grid too coarse for the rectangle")
        return cls(h, np.ones((n1, n2), dtype=bool), origin)

    @property
    def shape(self):
        return self.mask.shape

    @property
    def dof(self):
        return int(self.mask.sum())

    def coordinates(self):
        n1, n2 = self.mask.shape
        y1 = self.origin[0] + self.h * np.arange(1, n1 + 1)
        y2 = self.origin[1] + self.h * np.arange(1, n2 + 1)
        return np.meshgrid(y1, y2, indexing="ij")

    @property
    def centroid(self):
        Y1, Y2 = self.coordinates()
        return float(Y1[self.mask].mean()), float(Y2[self.mask].mean())


def load_mask(path):
    """Read a ``h <spacing>`` header followed by rows of 0/1 (row index = y1 index)."""
    with open(path) as fh:
        lines = [ln.strip() for ln in fh if ln.strip() and not ln.lstrip().startswith("#")]
    if not lines:
        raise InvalidDomainError(f"{path}: empty mask file")
    head = lines[0].split()
    if len(head) != 2 or head[0] != "h":
        raise InvalidDomainError(f"{path}: first line must be 'h <spacing>'")
    h = float(head[1])
    rows = []
    for k, ln in enumerate(lines[1:], start=2):
        tokens = ln.split() if " " in ln else list(ln)
        if any(t not in ("0", "1") for t in tokens):
            raise InvalidDomainError(f"{path}: line {k}: mask rows contain only 0/1")
        rows.append([t == "1" for t in tokens])
    if len({len(r) for r in rows}) != 1:
        raise InvalidDomainError(f"{path}: ragged mask rows")
    return MaskedGrid(h, np.array(rows, dtype=bool))


@dataclass(frozen=True, eq=False)
class Mode:
    """An L2-normalized Dirichlet eigenfunction of the transverse operator.

    Rectangle modes carry the integer pair ``(m, n)``; grid modes carry the
    sampled values on the full lattice (zero outside the mask).
    """

    index: int
    eigenvalue: float
    section: object
    mn: tuple = None
    values: np.ndarray = field(default=None, repr=False)

    def __call__(self, y1, y2):
        if self.mn is None:
            raise TypeError("grid modes are only defined on their lattice")
        S = self.section
        m, n = self.mn
        t1 = (np.asarray(y1) - S.origin[0]) * (pi / S.a)
        t2 = (np.asarray(y2) - S.origin[1]) * (pi / S.b)
        return 2.0 / sqrt(S.a * S.b) * np.sin(m * t1) * np.sin(n * t2)

    def gradient(self, y1, y2):
        S = self.section
        m, n = self.mn
        t1 = (np.asarray(y1) - S.origin[0]) * (pi / S.a)
        t2 = (np.asarray(y2) - S.origin[1]) * (pi / S.b)
        c = 2.0 / sqrt(S.a * S.b)
        d1 = c * (m * pi / S.a) * np.cos(m * t1) * np.sin(n * t2)
        d2 = c * (n * pi / S.b) * np.sin(m * t1) * np.cos(n * t2)
        return d1, d2


@dataclass(frozen=True)
class Moments:
    A1: float
    A2: float
    A3: float
    B1: float
    B2: float
    B3: float
    C1: float
    C2: float
    C3: float
    C4: float

    @property
    def twist_coefficient(self):
        """A1 + B1 - 2 C1, the coefficient of alpha'^2 in the potential."""
        return self.A1 + self.B1 - 2.0 * self.C1

    def as_dict(self):
        return {f.name: getattr(self, f.name) for f in fields(self)}


@dataclass(frozen=True)
class CouplingMoments:
    """Weighted overlap integrals between two modes ``phi_i`` and ``phi_j``.

    ``d11_*``: int w d1(phi_i) d1(phi_j); ``d22_*``: int w d2(phi_i) d2(phi_j);
    ``d12_*``: int w d1(phi_i) d2(phi_j); ``f1_*``: int w phi_i d1(phi_j);
    ``f2_*``: int w phi_i d2(phi_j).
    """

    d11_y2y2: float
    d11_y2: float
    d11_1: float
    d22_y1y1: float
    d22_y1: float
    d22_1: float
    d12_y1y2: float
    d12_y2: float
    d12_y1: float
    d12_1: float
    f1_y2: float
    f1_1: float
    f2_y1: float
    f2_1: float

    def as_moments(self):
        return Moments(
            self.d11_y2y2, self.d11_y2, self.d11_1,
            self.d22_y1y1, self.d22_y1, self.d22_1,
            self.d12_y1y2, self.d12_y2, self.d12_y1, self.d12_1,
        )


COUPLING_FIELDS = tuple(f.name for f in fields(CouplingMoments))


# --------------------------------------------------------------------------
# closed-form sine integrals on an interval (o, o + ell)


def _trig_moment(q, j, ell, kind):
    """``int_0^ell t^q cos(k t) dt`` (kind 'c') or ``... sin(k t)`` (kind 's'), k = j pi / ell."""
    if j == 0:
        return ell ** (q + 1) / (q + 1) if kind == "c" else 0.0
    sign = -1.0 if j < 0 else 1.0
    k = abs(j) * pi / ell
    cs = -1.0 if abs(j) % 2 else 1.0  # cos(k ell); sin(k ell) = 0
    if kind == "c":
        val = (0.0, (cs - 1.0) / k**2, 2.0 * ell * cs / k**2)[q]
        return val
    val = (
        (1.0 - cs) / k,
        -ell * cs / k,
        -(ell**2) * cs / k + 2.0 * (cs - 1.0) / k**3,
    )[q]
    return sign * val


def _shifted(p, o, ell, j, kind):
    """``int_0^ell (o + t)^p trig(k t) dt``."""
    return sum(comb(p, q) * o ** (p - q) * _trig_moment(q, j, ell, kind) for q in range(p + 1))


def _ss(p, m, n, o, ell):
    """int y^p s_m s_n with s_m = sqrt(2/ell) sin(m pi (y-o)/ell)."""
    return (1.0 / ell) * (_shifted(p, o, ell, m - n, "c") - _shifted(p, o, ell, m + n, "c"))


def _dd(p, m, n, o, ell):
    """int y^p s_m' s_n'."""
    f = (m * pi / ell) * (n * pi / ell) / ell
    return f * (_shifted(p, o, ell, m - n, "c") + _shifted(p, o, ell, m + n, "c"))


def _sd(p, m, n, o, ell):
    """int y^p s_m s_n'."""
    f = (n * pi / ell) / ell
    return f * (_shifted(p, o, ell, m + n, "s") + _shifted(p, o, ell, m - n, "s"))


def _rect_coupling(S, mi, mj):
    (m1, n1), (m2, n2) = mi, mj
    a, b = S.a, S.b
    o1, o2 = S.origin
    ss1 = lambda p: _ss(p, m1, m2, o1, a)
    ss2 = lambda p: _ss(p, n1, n2, o2, b)
    dd1 = _dd(0, m1, m2, o1, a)
    dd2 = _dd(0, n1, n2, o2, b)
    # d1 phi_i d2 phi_j = s'_{m1}(y1) s_{m2}(y1) * s_{n1}(y2) s'_{n2}(y2)
    sd1 = lambda p: _sd(p, m2, m1, o1, a)
    sd2 = lambda p: _sd(p, n1, n2, o2, b)
    return CouplingMoments(
        d11_y2y2=dd1 * ss2(2), d11_y2=dd1 * ss2(1), d11_1=dd1 * ss2(0),
        d22_y1y1=ss1(2) * dd2, d22_y1=ss1(1) * dd2, d22_1=ss1(0) * dd2,
        d12_y1y2=sd1(1) * sd2(1), d12_y2=sd1(0) * sd2(1),
        d12_y1=sd1(1) * sd2(0), d12_1=sd1(0) * sd2(0),
        f1_y2=_sd(0, m1, m2, o1, a) * ss2(1), f1_1=_sd(0, m1, m2, o1, a) * ss2(0),
        f2_y1=ss1(1) * _sd(0, n1, n2, o2, b), f2_1=ss1(0) * _sd(0, n1, n2, o2, b),
    )


# --------------------------------------------------------------------------
# grid discretization


def _grid_operator(S, beta):
    """5-point discretization of T(beta) on the masked lattice (CSR, SPD)."""
    return _grid_anisotropic(S, 1.0, 1.0 + beta * beta, 0.0)


def _index_map(S):
    idx = -np.ones(S.mask.shape, dtype=np.int64)
    idx[S.mask] = np.arange(S.dof)
    return idx


def _grid_anisotropic(S, a11, a22, a12):
    """Discretize ``-div(A grad u)`` with constant symmetric ``A``.

    Diagonal terms use the compact 3-point stencil; the mixed term uses
    centered differences so the matrix stays symmetric.
    """
    idx = _index_map(S)
    h2 = S.h * S.h
    n = S.dof
    rows, cols, vals = [], [], []
    I, J = np.nonzero(S.mask)
    me = idx[I, J]
    rows.append(me)
    cols.append(me)
    vals.append(np.full(n, 2.0 * (a11 + a22) / h2))
    pad = np.pad(idx, 1, constant_values=-1)
    for di, dj, coef in ((1, 0, a11), (-1, 0, a11), (0, 1, a22), (0, -1, a22)):
        nb = pad[I + 1 + di, J + 1 + dj]
        ok = nb >= 0
        rows.append(me[ok])
        cols.append(nb[ok])
        vals.append(np.full(ok.sum(), -coef / h2))
    if a12 != 0.0:
        # -2 a12 d1 d2 with centered differences: (u_{++} + u_{--} - u_{+-} - u_{-+}) / (4 h^2)
        for di, dj, s in ((1, 1, 1.0), (-1, -1, 1.0), (1, -1, -1.0), (-1, 1, -1.0)):
            nb = pad[I + 1 + di, J + 1 + dj]
            ok = nb >= 0
            rows.append(me[ok])
            cols.append(nb[ok])
            vals.append(np.full(ok.sum(), -2.0 * a12 * s / (4.0 * h2)))
    A = sp.coo_matrix(
        (np.concatenate(vals), (np.concatenate(rows), np.concatenate(cols))), shape=(n, n)
    ).tocsr()
    return A


def _scatter(S, vec):
    full = np.zeros(S.mask.shape)
    full[S.mask] = vec
    return full


def _grid_normalize(S, full):
    norm = sqrt(float(np.sum(full * full)) * S.h * S.h)
    full = full / norm
    # orientation: positive at the centroid-nearest lattice point, else at the largest entry
    Y1, Y2 = S.coordinates()
    c1, c2 = S.centroid
    d = (Y1 - c1) ** 2 + (Y2 - c2) ** 2
    d = np.where(S.mask, d, np.inf)
    k = np.unravel_index(np.argmin(d), d.shape)
    ref = full[k]
    if abs(ref) < 1e-8 * np.max(np.abs(full)):
        ref = full.flat[np.argmax(np.abs(full))]
    return full if ref > 0 else -full


def _grid_first(S, beta, tol=1e-10, maxiter=2000):
    A = _grid_operator(S, beta)
    lu = splu(A.tocsc())
    v = np.ones(S.dof)
    v /= np.linalg.norm(v)
    rq_old = np.inf
    for it in range(maxiter):
        w = lu.solve(v)
        v = w / np.linalg.norm(w)
        rq = float(v @ (A @ v))
        if abs(rq - rq_old) <= tol:
            return rq, v, it + 1
        rq_old = rq
    raise ConvergenceError(f"inverse iteration did not converge in {maxiter} steps")


def _grid_block(S, beta, N, tol=1e-10, maxiter=5000):
    A = _grid_operator(S, beta)
    n = S.dof
    p = min(n, N + max(2, N // 2 + 1))
    # deterministic start block: box sine modes restricted to the mask
    n1, n2 = S.mask.shape
    i = np.arange(1, n1 + 1)[:, None]
    j = np.arange(1, n2 + 1)[None, :]
    cand = sorted(
        ((m / (n1 + 1)) ** 2 + (1 + beta * beta) * (k / (n2 + 1)) ** 2, m, k)
        for m in range(1, n1 + 1) for k in range(1, n2 + 1)
        if m <= p + 1 and k <= p + 1
    )[:p]
    V = np.column_stack(
        [(np.sin(pi * m * i / (n1 + 1)) * np.sin(pi * k * j / (n2 + 1)))[S.mask] for _, m, k in cand]
    )
    lu = splu(A.tocsc())
    theta_old = None
    for _ in range(maxiter):
        W = np.column_stack([lu.solve(V[:, c]) for c in range(V.shape[1])])
        Q, _ = np.linalg.qr(W)
        H = Q.T @ (A @ Q)
        theta, Y = np.linalg.eigh(0.5 * (H + H.T))
        V = Q @ Y
        if theta_old is not None and np.max(np.abs(theta[:N] - theta_old[:N])) <= tol * max(1.0, theta[N - 1]):
            return theta[:N], V[:, :N]
        theta_old = theta
    raise ConvergenceError("block inverse iteration did not converge")


def _cell_fields(S, full):
    """Values and centered-difference gradients at lattice cell centers.

    The lattice is padded with its Dirichlet frame, so the cells tile the
    section's bounding box; returns ``(value, d1, d2, Y1, Y2)``.
    """
    u = np.pad(full, 1)
    h = S.h
    a, b = u[:-1, :-1], u[1:, :-1]
    c, d = u[:-1, 1:], u[1:, 1:]
    val = 0.25 * (a + b + c + d)
    d1 = ((b - a) + (d - c)) / (2.0 * h)
    d2 = ((c - a) + (d - b)) / (2.0 * h)
    n1, n2 = val.shape
    y1 = S.origin[0] + h * (np.arange(n1) + 0.5)
    y2 = S.origin[1] + h * (np.arange(n2) + 0.5)
    Y1, Y2 = np.meshgrid(y1, y2, indexing="ij")
    return val, d1, d2, Y1, Y2


# --------------------------------------------------------------------------
# public operations


def rectangle_spectrum(S, beta, count):
    """Lowest ``count`` (energy, m, n) triples for a rectangle, ties broken by m."""
    kmax = count + 1
    c = 1.0 + beta * beta
    cand = []
    for m in range(1, kmax + 1):
        for n in range(1, kmax + 1):
            e = (m * pi / S.a) ** 2 + c * (n * pi / S.b) ** 2
            cand.append((e, m, n))
    scale = max(e for e, _, _ in cand)
    cand.sort(key=lambda t: (round(t[0] / scale, 12), t[1], t[2]))
    return cand[:count]


def first_eigenpair(S, beta):
    """Ground energy ``E1(beta)`` and normalized ground mode."""
    if not beta >= 0:
        raise ValueError("beta must be >= 0")
    if isinstance(S, Rectangle):
        e, m, n = rectangle_spectrum(S, beta, 1)[0]
        return e, Mode(0, e, S, mn=(m, n))
    if isinstance(S, MaskedGrid):
        e, v, _ = _grid_first(S, beta)
        return e, Mode(0, e, S, values=_grid_normalize(S, _scatter(S, v)))
    raise InvalidDomainError(f"unsupported cross-section {type(S).__name__}")


def mode_basis(S, beta, N):
    """The ``N`` lowest L2-orthonormal eigenmodes, ascending."""
    if N < 1:
        raise ValueError("N must be >= 1")
    if isinstance(S, Rectangle):
        return [Mode(k, e, S, mn=(m, n)) for k, (e, m, n) in enumerate(rectangle_spectrum(S, beta, N))]
    if isinstance(S, MaskedGrid):
        if N > S.dof:
            raise CapacityError(f"{N} modes requested but the grid has {S.dof} unknowns")
        if N == 1:
            return [first_eigenpair(S, beta)[1]]
        theta, V = _grid_block(S, beta, N)
        modes = []
        for k in range(N):
            modes.append(Mode(k, float(theta[k]), S, values=_grid_normalize(S, _scatter(S, V[:, k]))))
        return modes
    raise InvalidDomainError(f"unsupported cross-section {type(S).__name__}")


def gram_matrix(basis):
    S = basis[0].section
    if isinstance(S, Rectangle):
        return np.array([[_ss(0, p.mn[0], q.mn[0], S.origin[0], S.a) * _ss(0, p.mn[1], q.mn[1], S.origin[1], S.b)
                          for q in basis] for p in basis])
    V = np.stack([m.values.ravel() for m in basis])
    return V @ V.T * S.h * S.h


def _grid_coupling(S, phi_i, phi_j):
    h2 = S.h * S.h
    pi_, a1, a2, Y1, Y2 = _cell_fields(S, phi_i)
    _, b1, b2, _, _ = _cell_fields(S, phi_j)
    I = lambda f: float(np.sum(f)) * h2
    return CouplingMoments(
        d11_y2y2=I(Y2 * Y2 * a1 * b1), d11_y2=I(Y2 * a1 * b1), d11_1=I(a1 * b1),
        d22_y1y1=I(Y1 * Y1 * a2 * b2), d22_y1=I(Y1 * a2 * b2), d22_1=I(a2 * b2),
        d12_y1y2=I(Y1 * Y2 * a1 * b2), d12_y2=I(Y2 * a1 * b2), d12_y1=I(Y1 * a1 * b2), d12_1=I(a1 * b2),
        f1_y2=I(Y2 * pi_ * b1), f1_1=I(pi_ * b1),
        f2_y1=I(Y1 * pi_ * b2), f2_1=I(pi_ * b2),
    )


def coupling_moments(S, basis, i, j):
    """All fourteen weighted overlap integrals for the mode pair ``(i, j)``."""
    mi, mj = basis[i], basis[j]
    if isinstance(S, Rectangle):
        return _rect_coupling(S, mi.mn, mj.mn)
    return _grid_coupling(S, mi.values, mj.values)


def _rect_table(S, basis):
    m = np.array([b.mn[0] for b in basis])
    n = np.array([b.mn[1] for b in basis])
    o1, o2 = S.origin

    def mat(fun, p, top, o, ell):
        return np.array([[fun(p, i, j, o, ell) for j in range(1, top + 1)] for i in range(1, top + 1)])

    m1, n1 = m - 1, n - 1
    M1, N1 = m.max(), n.max()
    ss1 = [mat(_ss, p, M1, o1, S.a)[np.ix_(m1, m1)] for p in range(3)]
    ss2 = [mat(_ss, p, N1, o2, S.b)[np.ix_(n1, n1)] for p in range(3)]
    dd1 = mat(_dd, 0, M1, o1, S.a)[np.ix_(m1, m1)]
    dd2 = mat(_dd, 0, N1, o2, S.b)[np.ix_(n1, n1)]
    sd1 = [mat(_sd, p, M1, o1, S.a) for p in range(2)]
    sd2 = [mat(_sd, p, N1, o2, S.b)[np.ix_(n1, n1)] for p in range(2)]
    # int y1^p s'_{m_i} s_{m_j} = sd1[p][m_j, m_i]
    sdT = [A[np.ix_(m1, m1)].T for A in sd1]
    sd1 = [A[np.ix_(m1, m1)] for A in sd1]
    cols = dict(
        d11_y2y2=dd1 * ss2[2], d11_y2=dd1 * ss2[1], d11_1=dd1 * ss2[0],
        d22_y1y1=ss1[2] * dd2, d22_y1=ss1[1] * dd2, d22_1=ss1[0] * dd2,
        d12_y1y2=sdT[1] * sd2[1], d12_y2=sdT[0] * sd2[1], d12_y1=sdT[1] * sd2[0], d12_1=sdT[0] * sd2[0],
        f1_y2=sd1[0] * ss2[1], f1_1=sd1[0] * ss2[0],
        f2_y1=ss1[1] * sd2[0], f2_1=ss1[0] * sd2[0],
    )
    return np.stack([cols[f] for f in COUPLING_FIELDS])


def coupling_table(S, basis):
    """Array ``(14, N, N)`` of coupling moments in ``COUPLING_FIELDS`` order."""
    if isinstance(S, Rectangle):
        return _rect_table(S, basis)
    N = len(basis)
    out = np.empty((len(COUPLING_FIELDS), N, N))
    for i in range(N):
        for j in range(N):
            cm = coupling_moments(S, basis, i, j)
            out[:, i, j] = [getattr(cm, f) for f in COUPLING_FIELDS]
    return out


def moments(S, chi):
    """The ten ground-mode moments A1..C4."""
    if isinstance(S, Rectangle):
        return _rect_coupling(S, chi.mn, chi.mn).as_moments()
    return _grid_coupling(S, chi.values, chi.values).as_moments()


def rotation_defect(S, chi):
    """``int (y2 d1 chi - y1 d2 chi)^2``, computed directly."""
    if isinstance(S, Rectangle):
        from .quadrature import rule_on

        x1, w1 = rule_on(S.origin[0], S.origin[0] + S.a, 64)
        x2, w2 = rule_on(S.origin[1], S.origin[1] + S.b, 64)
        Y1, Y2 = np.meshgrid(x1, x2, indexing="ij")
        d1, d2 = chi.gradient(Y1, Y2)
        return float(np.einsum("i,j,ij->", w1, w2, (Y2 * d1 - Y1 * d2) ** 2))
    _, d1, d2, Y1, Y2 = _cell_fields(S, chi.values)
    return float(np.sum((Y2 * d1 - Y1 * d2) ** 2)) * S.h * S.h


# --------------------------------------------------------------------------
# straight-guide fiber energies at a fixed rotation angle


def fiber_operator(S, beta, angle, basis):
    """Galerkin matrices of the straight sheared guide with the section held at ``angle``.

    Returns ``(H0, P)`` so that the energy at axial wavenumber ``k`` is the
    lowest eigenvalue of ``H0 + 2 k P + k^2 I`` (``P`` Hermitian).
    """
    T = coupling_table(S, basis)
    get = dict(zip(COUPLING_FIELDS, T))
    v1, v2 = beta * np.sin(angle), beta * np.cos(angle)
    a11, a22, a12 = 1.0 + v1 * v1, 1.0 + v2 * v2, v1 * v2
    H0 = a11 * get["d11_1"] + a22 * get["d22_1"] + a12 * (get["d12_1"] + get["d12_1"].T)
    F = v1 * get["f1_1"] + v2 * get["f2_1"]
    return 0.5 * (H0 + H0.T), 0.5j * (F - F.T)


def fiber_energy(S, beta, angle, k=0.0, modes=144):
    basis = modes if isinstance(modes, list) else mode_basis(S, beta, modes)
    H0, P = fiber_operator(S, beta, angle, basis)
    return float(np.linalg.eigvalsh(H0 + 2.0 * k * P + k * k * np.eye(len(basis)))[0])


def fiber_threshold(S, beta, angle, modes=144, kmax=4.0):
    """Bottom of the spectrum of the straight sheared guide whose section sits at ``angle``.

    Minimizes the fiber energy over the axial wavenumber. At ``angle = 0``
    this is ``E1(beta)``.
    """
    from scipy.optimize import minimize_scalar

    basis = mode_basis(S, beta, modes)
    H0, P = fiber_operator(S, beta, angle, basis)
    eye = np.eye(len(basis))
    f = lambda k: float(np.linalg.eigvalsh(H0 + 2.0 * k * P + k * k * eye)[0])
    best = f(0.0)
    res = minimize_scalar(f, bounds=(0.0, kmax), method="bounded", options={"xatol": 1e-8})
    return min(best, float(res.fun))
