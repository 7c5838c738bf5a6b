"""Inertia counting, bisection and inverse iteration for banded symmetric pencils."""

from dataclasses import dataclass, field

import numpy as np
import scipy.linalg as sla

from . import _backend
from .errors import CapacityError, ConvergenceError, SingularShiftError

PIVOT_RTOL = 1e-13
MAX_BELOW = 10_000
DENSE_LIMIT = 2000


def _as_bands(pencil):
    return np.ascontiguousarray(pencil.K), np.ascontiguousarray(pencil.M)


def inertia(pencil, sigma, kernel=None):
    """Number of pencil eigenvalues below ``sigma`` (negative pivots of K - sigma M).

    Raises ``SingularShiftError`` when a pivot drops below ``1e-13 * scale``.
    """
    kernel = kernel or _backend.band_inertia
    K, M = _as_bands(pencil)
    scale = max(float(np.max(np.abs(K))), abs(sigma) * float(np.max(np.abs(M))), 1e-300)
    neg, minpiv, stop = kernel(K, M, float(sigma), PIVOT_RTOL * scale)
    if stop >= 0:
        raise SingularShiftError(sigma, minpiv, scale)
    return int(neg)


def safe_inertia(pencil, sigma, kernel=None, retries=8):
    """``inertia`` with the jitter-retry policy; returns ``(count, sigma_used)``."""
    scale = pencil.scale()
    s = float(sigma)
    for k in range(retries + 1):
        try:
            return inertia(pencil, s, kernel), s
        except SingularShiftError:
            s = sigma + (k + 1) * 1e-10 * scale
    raise ConvergenceError(f"could not factor K - sigma M near sigma={sigma}")


def gershgorin_lower(pencil):
    """A rigorous lower bound for the smallest pencil eigenvalue."""
    def disc_bounds(ab):
        n, bw = ab.shape[1], ab.shape[0] - 1
        radius = np.zeros(n)
        for d in range(1, bw + 1):
            v = np.abs(ab[d, : n - d])
            radius[: n - d] += v
            radius[d:] += v
        return ab[0] - radius, ab[0] + radius

    klo, _ = disc_bounds(pencil.K)
    mlo, mhi = disc_bounds(pencil.M)
    k_min = float(klo.min())
    if k_min >= 0:
        return k_min / float(mhi.max())
    m_min = float(mlo.min())
    if m_min > 0:
        return k_min / m_min
    return k_min * 1e3  # indefinite Gershgorin mass bound: fall back to a wide guess


@dataclass
class SpectralResult:
    threshold: float
    eigenvalues_below: list
    count: int
    diagnostics: dict = field(default_factory=dict)

    def record(self):
        """Flat key-value text."""
        lines = [
            f"threshold = {self.threshold:.12g}",
            f"count = {self.count}",
            "eigenvalues = " + " ".join(f"{v:.12g}" for v in self.eigenvalues_below),
        ]
        for k in sorted(self.diagnostics):
            v = self.diagnostics[k]
            if isinstance(v, (list, tuple)):
                v = " ".join(f"{t:.12g}" if isinstance(t, float) else str(t) for t in v)
            elif isinstance(v, float):
                v = f"{v:.12g}"
            lines.append(f"{k} = {v}")
        return "\n".join(lines) + "\n"


def eigs_below(pencil, threshold=None, tol=1e-8, kernel=None, margin=None):
    """All pencil eigenvalues below ``threshold - tol`` by inertia bisection.

    Eigenvalues within ``margin`` (default ``tol``) of the threshold are only
    reported in the diagnostics as ``near_threshold``.
    """
    if not tol > 0:
        raise ValueError("tol must be positive")
    threshold = pencil.threshold if threshold is None else float(threshold)
    margin = tol if margin is None else max(margin, tol)
    factorizations = 0

    def count(s):
        nonlocal factorizations
        factorizations += 1
        return safe_inertia(pencil, s, kernel)

    top_count, top = count(threshold - tol)
    full_count, _ = count(threshold)
    if top_count > MAX_BELOW:
        raise CapacityError(f"{top_count} eigenvalues below threshold; threshold mis-set?")
    found = []
    if top_count:
        lo = gershgorin_lower(pencil)
        lo_count, lo = count(lo)
        while lo_count > 0:
            lo = lo - max(1.0, abs(lo))
            lo_count, lo = count(lo)
        # interval slicing: each stack item holds an interval with its end counts
        stack = [(lo, top, 0, top_count)]
        while stack:
            a, b, ca, cb = stack.pop()
            if cb == ca:
                continue
            if b - a <= 0.5 * tol:
                mid = 0.5 * (a + b)
                found.extend([mid] * (cb - ca))
                continue
            mid = 0.5 * (a + b)
            cm, mid = count(mid)
            stack.append((mid, b, cm, cb))
            stack.append((a, mid, ca, cm))
        found.sort()
    near = []
    if full_count > top_count:
        near = [f"{full_count - top_count} eigenvalue(s) within tol of threshold"]
    diag = dict(pencil.meta)
    diag.update(factorizations=factorizations, tol=tol, backend=_backend.BACKEND)
    if margin > tol:
        flagged = [v for v in found if threshold - v < margin]
        diag["near_threshold"] = flagged
    if near:
        diag["unresolved"] = near
    return SpectralResult(threshold, found, len(found), diag)


def eigenvector(pencil, lam, maxiter=100, rtol=1e-8):
    """Inverse iteration at ``lam``; returns ``(vector, rayleigh_quotient)``.

    The vector is M-normalized and has a positive largest-magnitude entry.
    """
    Ks, Ms = pencil.sparse()
    n, bw = pencil.n, pencil.bandwidth
    scale = pencil.scale()
    shift = lam
    A = (Ks - shift * Ms).todia()
    ab = np.zeros((2 * bw + 1, n))
    for off, row in zip(A.offsets, A.data):
        ab[bw - off] = row
    v = np.ones(n) / np.sqrt(n)
    rq = lam
    for it in range(maxiter):
        try:
            w = sla.solve_banded((bw, bw), ab, Ms @ v, check_finite=False)
        except (np.linalg.LinAlgError, ValueError):
            shift = lam + 1e-10 * scale
            ab[bw] -= 1e-10 * scale * np.r_[Ms.diagonal()]
            continue
        v = w / np.sqrt(w @ (Ms @ w))
        Kv = Ks @ v
        rq = float(v @ Kv)
        res = np.linalg.norm(Kv - rq * (Ms @ v))
        if res <= rtol * np.linalg.norm(Kv):
            k = int(np.argmax(np.abs(v)))
            return (v if v[k] > 0 else -v), rq
    raise ConvergenceError(f"inverse iteration did not converge in {maxiter} steps (residual {res:.2e})")


def dense_oracle(pencil):
    """All eigenvalues via Cholesky reduction and a dense symmetric solver."""
    if pencil.n > DENSE_LIMIT:
        raise CapacityError(f"dense oracle limited to n <= {DENSE_LIMIT}")
    K, M = pencil.dense()
    Lc = np.linalg.cholesky(M)
    X = sla.solve_triangular(Lc, K, lower=True)
    C = sla.solve_triangular(Lc, X.T, lower=True)
    return np.sort(np.linalg.eigvalsh(0.5 * (C + C.T)))


def mode_weights(vec, modes):
    """Fraction of the M-norm carried by each cross-section mode (node-major layout)."""
    U = vec.reshape(-1, modes)
    w = np.sum(U * U, axis=0)
    return w / w.sum()
