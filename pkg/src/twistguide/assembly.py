"""Banded stiffness/mass pencils for the transformed quadratic form on (-L, L) x S.

Unknowns are ordered node-major: ``(node - 1) * modes + mode`` for interior
nodes 1..nx, which gives half-bandwidth ``2 * modes - 1``.
"""

from dataclasses import dataclass, field

import numpy as np
import scipy.sparse as sp

from . import cross_section as cs
from .errors import BasisError
from .potential import potential
from .quadrature import gauss_legendre

ELEMENT_ORDER = 4


@dataclass(frozen=True)
class Grid1D:
    L: float
    nx: int

    def __post_init__(self):
        if not self.L > 0:
            raise ValueError("L must be positive")
        if self.nx < 3:
            raise ValueError("nx must be >= 3")

    @property
    def h(self):
        return 2.0 * self.L / (self.nx + 1)

    @property
    def nodes(self):
        """All nodes including the two Dirichlet ends."""
        return np.linspace(-self.L, self.L, self.nx + 2)

    @property
    def interior(self):
        return self.nodes[1:-1]

    def element_quadrature(self, order=ELEMENT_ORDER):
        """Points ``(ne, q)``, weights ``(q,)`` and shape values ``(q, 2)``."""
        t, w = gauss_legendre(order)
        xi = 0.5 * (t + 1.0)
        left = self.nodes[:-1, None]
        x = left + self.h * xi[None, :]
        shape = np.stack([1.0 - xi, xi], axis=1)
        return x, 0.5 * self.h * w, shape


@dataclass
class BandedPencil:
    """Symmetric pair (K, M) in lower band storage: ``K[d, j] = K_full[j + d, j]``."""

    K: np.ndarray
    M: np.ndarray
    threshold: float
    meta: dict = field(default_factory=dict)

    @property
    def n(self):
        return self.K.shape[1]

    @property
    def bandwidth(self):
        return self.K.shape[0] - 1

    def _full(self, ab):
        n, bw = self.n, self.bandwidth
        offsets = list(range(-bw, bw + 1))
        diags = [ab[abs(o), : n - abs(o)] for o in offsets]
        return sp.diags(diags, offsets, shape=(n, n), format="csr")

    def sparse(self):
        return self._full(self.K), self._full(self.M)

    def dense(self):
        K, M = self.sparse()
        return K.toarray(), M.toarray()

    def scale(self):
        return max(float(np.max(np.abs(self.K))), float(np.max(np.abs(self.M))))

    def dump(self, path):
        """Text dump: ``n bandwidth`` header, then K rows and M rows of band entries."""
        with open(path, "w", newline="\n") as fh:
            fh.write(f"{self.n} {self.bandwidth}\n")
            for name, ab in (("K", self.K), ("M", self.M)):
                fh.write(f"# {name}\n")
                for j in range(self.n):
                    fh.write(" ".join(f"{v:.17g}" for v in ab[:, j]) + "\n")


def load_pencil(path, threshold=float("nan")):
    with open(path) as fh:
        n, bw = (int(t) for t in fh.readline().split())
        rows = [ln for ln in fh if not ln.startswith("#")]
    data = np.array([[float(t) for t in ln.split()] for ln in rows])
    if data.shape != (2 * n, bw + 1):
        raise ValueError(f"{path}: expected {2 * n} rows of {bw + 1} entries")
    return BandedPencil(data[:n].T.copy(), data[n:].T.copy(), threshold)


def _scatter(grid, Ke, Me, N):
    """Add element blocks ``(ne, 2, N, 2, N)`` into lower band arrays."""
    nx = grid.nx
    n = nx * N
    bw = 2 * N - 1
    ne = nx + 1
    e = np.arange(ne)[:, None, None, None, None]
    a = np.arange(2)[None, :, None, None, None]
    i = np.arange(N)[None, None, :, None, None]
    b = np.arange(2)[None, None, None, :, None]
    j = np.arange(N)[None, None, None, None, :]
    shape = (ne, 2, N, 2, N)
    r = np.broadcast_to((e + a - 1) * N + i, shape)
    c = np.broadcast_to((e + b - 1) * N + j, shape)
    ok = (r >= 0) & (r < n) & (c >= 0) & (c < n) & (r >= c)
    r, c = r[ok], c[ok]
    K = np.zeros((bw + 1, n))
    M = np.zeros((bw + 1, n))
    np.add.at(K, (r - c, c), Ke[ok])
    np.add.at(M, (r - c, c), Me[ok])
    return K, M


def _element_blocks(grid, F, G, shape, wq):
    """Element stiffness and mass from coefficient samples ``F, G`` of shape ``(ne, q, N, N)``."""
    N = G.shape[-1]
    h = grid.h
    dN = np.array([-1.0 / h, 1.0 / h])
    eye = np.eye(N)
    kin = np.einsum("a,b,ij->abij", dN, dN, eye) * wq.sum()
    Ke = kin[None] + np.einsum("q,eqji,b,qa->eabij", wq, F, dN, shape)
    Ke += np.einsum("q,eqij,a,qb->eabij", wq, F, dN, shape)
    Ke += np.einsum("q,eqij,qa,qb->eabij", wq, G, shape, shape)
    mass = np.einsum("q,qa,qb->ab", wq, shape, shape)
    Me = np.broadcast_to(np.einsum("ab,ij->abij", mass, eye)[None], Ke.shape)
    # (e, a, b, i, j) -> (e, a, i, b, j)
    return Ke.transpose(0, 1, 3, 2, 4), Me.transpose(0, 1, 3, 2, 4)


def assemble_effective_1d(grid, spec, E1):
    """P1 discretization of ``int |u'|^2 + (E1 + V) |u|^2`` with Dirichlet ends.

    ``spec`` is a ``PotentialSpec`` or any vectorized callable ``V(x)``.
    """
    xq, wq, shape = grid.element_quadrature()
    V = spec(xq) if callable(spec) else potential(spec, xq)
    coef = E1 + V
    ne = xq.shape[0]
    F = np.zeros((ne, xq.shape[1], 1, 1))
    G = coef[:, :, None, None]
    Ke, Me = _element_blocks(grid, F, G, shape, wq)
    K, M = _scatter(grid, Ke, Me, 1)
    return BandedPencil(K, M, E1, {"L": grid.L, "nx": grid.nx, "modes": 1, "kind": "effective"})


def coefficient_fields(table, alpha, alpha_prime, beta):
    """Mode-coupling coefficients ``(F, G)`` at angle samples, shape ``(..., N, N)``.

    ``F_ij = int phi_i D phi_j`` and ``G_ij = int D phi_i D phi_j + grad phi_i . grad phi_j``
    with ``D = (a' y2 - beta sin a) d1 - (a' y1 + beta cos a) d2``.
    """
    t = dict(zip(cs.COUPLING_FIELDS, table))
    sym = lambda A: A + np.swapaxes(A, -1, -2)
    ap = np.asarray(alpha_prime)[..., None, None]
    s = np.sin(alpha)[..., None, None]
    c = np.cos(alpha)[..., None, None]
    b = beta
    G = (
        ap * ap * (t["d11_y2y2"] + t["d22_y1y1"] - sym(t["d12_y1y2"]))
        + ap * b * (-2.0 * s * t["d11_y2"] + 2.0 * c * t["d22_y1"] - c * sym(t["d12_y2"]) + s * sym(t["d12_y1"]))
        + b * b * (s * s * t["d11_1"] + c * c * t["d22_1"] + s * c * sym(t["d12_1"]))
        + (t["d11_1"] + t["d22_1"])
    )
    G = 0.5 * (G + np.swapaxes(G, -1, -2))
    F = ap * t["f1_y2"] - b * s * t["f1_1"] - ap * t["f2_y1"] - b * c * t["f2_1"]
    return F, G


def check_basis(basis, tol=1e-8):
    gram = cs.gram_matrix(basis)
    dev = float(np.max(np.abs(gram - np.eye(len(basis)))))
    if dev > tol:
        raise BasisError(f"basis is not orthonormal (Gram deviation {dev:.2e})")
    return dev


def assemble_coupled(grid, S, basis, twist, beta):
    """Galerkin restriction of the full quadratic form to ``span{u_i(x) phi_i(y)}``."""
    check_basis(basis)
    table = cs.coupling_table(S, basis)
    xq, wq, shape = grid.element_quadrature()
    alpha, ap = twist.evaluate(xq)
    F, G = coefficient_fields(table, alpha, ap, beta)
    Ke, Me = _element_blocks(grid, F, G, shape, wq)
    N = len(basis)
    K, M = _scatter(grid, Ke, Me, N)
    meta = {"L": grid.L, "nx": grid.nx, "modes": N, "kind": "coupled", "beta": beta}
    return BandedPencil(K, M, basis[0].eigenvalue, meta)
