"""Embedding of the twisted, sheared tube and its induced metric."""

from dataclasses import dataclass, field
import math

import numpy as np

from .errors import UnsupportedShapeError
from .twist import Tanh


@dataclass(frozen=True)
class WaveguideParams:
    beta: float = 0.0
    twist: object = field(default_factory=Tanh)

    def __post_init__(self):
        if not self.beta >= 0:
            raise ValueError(f"beta must be >= 0, got {self.beta}")


def map_point(x, y1, y2, p):
    """Image of ``(x, y1, y2)`` under the tube map; broadcasts over arrays.

    The reference line is ``(x, 0, beta x)``; the cross-section is rotated by
    ``alpha(x)`` in the (e2, e3) plane.
    """
    alpha, _ = p.twist.evaluate(x)
    ca, sa = np.cos(alpha), np.sin(alpha)
    x, y1, y2 = np.broadcast_arrays(np.asarray(x, float), np.asarray(y1, float), np.asarray(y2, float))
    out = np.stack(
        [x, y1 * ca - y2 * sa, p.beta * x + y1 * sa + y2 * ca],
        axis=-1,
    )
    return out


def metric_terms(x, y1, y2, p):
    """The scalars K, L, M, N entering the metric (L also plays the role of P)."""
    alpha, ap = p.twist.evaluate(x)
    ca, sa = np.cos(alpha), np.sin(alpha)
    K = -ap * y1 * sa - ap * y2 * ca
    L = ap * y1 * ca - ap * y2 * sa + p.beta
    M = K * ca + L * sa
    N = -K * sa + L * ca
    return K, L, M, N


def metric(x, y1, y2, p):
    """3x3 metric ``G = J J^T`` of the tube map at a single point."""
    K, L, M, N = (float(t) for t in metric_terms(x, y1, y2, p))
    return np.array(
        [
            [1.0 + K * K + L * L, M, N],
            [M, 1.0, 0.0],
            [N, 0.0, 1.0],
        ]
    )


def jacobian(x, y1, y2, p):
    """Rows are d/dx, d/dy1, d/dy2 of the map (used as a cross-check)."""
    alpha, ap = (float(t) for t in p.twist.evaluate(x))
    ca, sa = math.cos(alpha), math.sin(alpha)
    return np.array(
        [
            [1.0, -ap * (y1 * sa + y2 * ca), p.beta + ap * (y1 * ca - y2 * sa)],
            [0.0, ca, sa],
            [0.0, -sa, ca],
        ]
    )


@dataclass
class QuadMesh:
    vertices: np.ndarray  # (nv, 3)
    faces: np.ndarray  # (nf, 4), 0-based
    params: dict = field(default_factory=dict)

    def to_text(self):
        lines = [f"# twistguide surface mesh {self.params}"] if self.params else []
        lines += [f"v {x:.12g} {y:.12g} {z:.12g}" for x, y, z in self.vertices]
        lines += ["f " + " ".join(str(int(i) + 1) for i in f) for f in self.faces]
        return "\n".join(lines) + "\n"

    def write(self, path):
        with open(path, "w", newline="\n") as fh:
            fh.write(self.to_text())


def _rectangle_loop(section, per_side):
    """Closed boundary loop of a rectangle, ``per_side`` points per edge, counter-clockwise."""
    o1, o2 = section.origin
    a, b = section.a, section.b
    t = np.linspace(0.0, 1.0, per_side, endpoint=False)
    edges = [
        (o1 + a * t, np.full_like(t, o2)),
        (np.full_like(t, o1 + a), o2 + b * t),
        (o1 + a * (1 - t), np.full_like(t, o2 + b)),
        (np.full_like(t, o1), o2 + b * (1 - t)),
    ]
    return np.concatenate([e[0] for e in edges]), np.concatenate([e[1] for e in edges])


def surface_mesh(p, section, x_range=(-5.0, 5.0), resolution=(50, 20)):
    """Quad mesh of the lateral boundary over ``x_range``.

    ``resolution = (nx, per_side)`` gives ``nx`` cross-sections, each with
    ``4 * per_side`` boundary vertices.
    """
    from .cross_section import Rectangle

    if not isinstance(section, Rectangle):
        raise UnsupportedShapeError("surface mesh export supports rectangular cross-sections only")
    nx, per_side = resolution
    if nx < 2 or per_side < 2:
        raise ValueError("resolution must be >= 2 in each direction")
    xs = np.linspace(x_range[0], x_range[1], nx)
    b1, b2 = _rectangle_loop(section, per_side)
    nloop = b1.size
    X = np.repeat(xs, nloop)
    Y1 = np.tile(b1, nx)
    Y2 = np.tile(b2, nx)
    verts = map_point(X, Y1, Y2, p)
    k = np.arange(nx - 1)[:, None] * nloop
    j = np.arange(nloop)[None, :]
    jn = (j + 1) % nloop
    faces = np.stack([k + j, k + jn, k + nloop + jn, k + nloop + j], axis=-1).reshape(-1, 4)
    return QuadMesh(verts, faces, {"beta": p.beta, "nx": nx, "per_side": per_side})
