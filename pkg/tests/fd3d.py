"""Independent 3-D finite-difference discretization of the transformed form.

Used only as a test oracle. Second-order terms use compact stencils with
midpoint coefficients; mixed terms use centered differences so the matrix
stays symmetric.
"""

import numpy as np
import scipy.sparse as sp
from scipy.sparse.linalg import eigsh


def _forward(n, h):
    # interior values (n) -> differences on the n+1 cell edges, zero Dirichlet ends
    return sp.diags([-np.ones(n), np.ones(n)], [0, -1], shape=(n + 1, n)) / h


def _centered(n, h):
    return sp.diags([np.ones(n - 1), -np.ones(n - 1)], [1, -1], shape=(n, n)) / (2 * h)


def fd3d_operator(twist, beta, Lx=10.0, points=(41, 21, 21), side=np.pi):
    """Sparse matrix of the form on (-Lx, Lx) x (0, side)^2 with Dirichlet walls."""
    px, p1, p2 = points
    nx, n1, n2 = px - 2, p1 - 2, p2 - 2
    hx, h1, h2 = 2 * Lx / (px - 1), side / (p1 - 1), side / (p2 - 1)
    x = -Lx + hx * np.arange(1, px - 1)
    y1 = h1 * np.arange(1, p1 - 1)
    y2 = h2 * np.arange(1, p2 - 1)
    Ix, I1, I2 = sp.identity(nx), sp.identity(n1), sp.identity(n2)
    kron3 = lambda A, B, C: sp.kron(sp.kron(A, B), C, format="csr")

    def coeffs(xs, Y1, Y2):
        al, ap = twist.evaluate(xs)
        a = ap * Y2 - beta * np.sin(al)
        b = ap * Y1 + beta * np.cos(al)
        return a, b

    # d/dx: edges in x, nodes in y
    xe = -Lx + hx * (np.arange(nx + 1) + 0.5)
    Fx = kron3(_forward(nx, hx), I1, I2)
    H = Fx.T @ Fx
    # d/dy1 with weight 1 + a^2 at y1-edges
    X, Y1e, Y2 = np.meshgrid(x, h1 * (np.arange(n1 + 1) + 0.5), y2, indexing="ij")
    a, _ = coeffs(X, Y1e, Y2)
    F1 = kron3(Ix, _forward(n1, h1), I2)
    H = H + F1.T @ sp.diags((1 + a * a).ravel()) @ F1
    X, Y1, Y2e = np.meshgrid(x, y1, h2 * (np.arange(n2 + 1) + 0.5), indexing="ij")
    _, b = coeffs(X, Y1, Y2e)
    F2 = kron3(Ix, I1, _forward(n2, h2))
    H = H + F2.T @ sp.diags((1 + b * b).ravel()) @ F2
    # mixed terms at nodes
    X, Y1, Y2 = np.meshgrid(x, y1, y2, indexing="ij")
    a, b = coeffs(X, Y1, Y2)
    Cx = kron3(_centered(nx, hx), I1, I2)
    C1 = kron3(Ix, _centered(n1, h1), I2)
    C2 = kron3(Ix, I1, _centered(n2, h2))
    sym = lambda P, w, Q: P.T @ sp.diags(w.ravel()) @ Q + Q.T @ sp.diags(w.ravel()) @ P
    H = H + sym(Cx, a, C1) - sym(Cx, b, C2) - sym(C1, a * b, C2)
    return H.tocsc()


def fd3d_lowest(twist, beta, k=1, sigma=0.0, **kw):
    H = fd3d_operator(twist, beta, **kw)
    vals = eigsh(H, k=k, sigma=sigma, which="LM", return_eigenvectors=False)
    return np.sort(vals)
