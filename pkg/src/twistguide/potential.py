"""Effective one-dimensional potential, its integral, and trial-state energies."""

from dataclasses import dataclass, field
import math

import numpy as np

from . import quadrature
from .cross_section import Moments


@dataclass(frozen=True)
class PotentialSpec:
    moments: Moments
    beta: float
    twist: object

    def __post_init__(self):
        if not self.beta >= 0:
            raise ValueError("beta must be >= 0")
        if self.moments.twist_coefficient < -1e-12:
            raise ValueError("moments violate A1 + B1 - 2 C1 >= 0")


def potential(spec, x):
    """V(x), vectorized over ``x``."""
    m, b = spec.moments, spec.beta
    alpha, ap = spec.twist.evaluate(x)
    s, c = np.sin(alpha), np.cos(alpha)
    v = (
        m.twist_coefficient * ap * ap
        + 2.0 * (m.C3 - m.A2) * b * ap * s
        + 2.0 * (m.B2 - m.C2) * b * ap * c
        + (m.A3 - m.B3) * b * b * s * s
        + 2.0 * m.C4 * b * b * s * c
    )
    return float(v) if np.ndim(v) == 0 else v


@dataclass
class Theorem2Report:
    """Numerical check of the sufficient condition for a bound state.

    ``hypothesis_met`` requires beta > 0, numerically certified integrability
    and a negative integral.
    """

    integral_V: float
    integrable: bool
    hypothesis_met: bool
    window: float
    tail_values: tuple
    diagnostics: dict = field(default_factory=dict)


def integral_V(spec, X=20.0, order=16, panel_width=0.5, tol=1e-13):
    """Adaptive composite Gauss-Legendre integral of V over [-X, X]."""
    if not X > 0:
        raise ValueError("X must be positive")
    f = lambda x: potential(spec, x)
    value, info = quadrature.adaptive(f, -X, X, panel_width=panel_width, order=order, tol=tol)
    tails = (abs(potential(spec, -X)), abs(potential(spec, X)))
    inner = (abs(potential(spec, -X / 2)), abs(potential(spec, X / 2)))
    decaying = tails[0] <= inner[0] and tails[1] <= inner[1]
    integrable = max(tails) < 1e-10 and decaying
    met = integrable and value < 0 and spec.beta > 0
    info.update(order=order, panel_width=panel_width, tail_decreasing=decaying)
    return Theorem2Report(value, integrable, met, X, tails, info)


# --------------------------------------------------------------------------
# plateau cutoff used for the trial states psi_n = w(x/n) chi(y)


def _smooth_step(t):
    """C-infinity step: 0 for t <= 0, 1 for t >= 1."""
    t = np.asarray(t, dtype=float)
    f = lambda s: np.where(s > 0, np.exp(-1.0 / np.where(s > 0, s, 1.0)), 0.0)
    a, b = f(t), f(1.0 - t)
    return a / (a + b)


def _smooth_step_prime(t):
    t = np.asarray(t, dtype=float)
    inside = (t > 0) & (t < 1)
    ts = np.where(inside, t, 0.5)
    a, b = np.exp(-1.0 / ts), np.exp(-1.0 / (1.0 - ts))
    da, db = a / ts**2, -b / (1.0 - ts) ** 2
    d = (da * (a + b) - a * (da + db)) / (a + b) ** 2
    return np.where(inside, d, 0.0)


def cutoff(x):
    """Plateau function: 1 on [-1, 1], 0 outside (-2, 2), smooth in between."""
    return _smooth_step(2.0 - np.abs(np.asarray(x, dtype=float)))


def cutoff_prime(x):
    x = np.asarray(x, dtype=float)
    return -np.sign(x) * _smooth_step_prime(2.0 - np.abs(x))


def cutoff_energy(order=64):
    """``int |w'|^2`` over the two transition layers."""
    total = 0.0
    for a, b in ((-2.0, -1.0), (1.0, 2.0)):
        x, w = quadrature.rule_on(a, b, order)
        total += float(np.dot(cutoff_prime(x) ** 2, w))
    return total


def witness_energy(spec, E1=None, n=1, order=16, panel_width=0.5):
    """Energy ``q(psi_n) = Q(psi_n) - E1 ||psi_n||^2`` of the scaled cutoff trial state.

    Equals ``(1/n) int |w'|^2 + int V(x) w(x/n)^2 dx``. ``E1`` is accepted
    for interface symmetry; the reduction to the potential absorbs it.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    kinetic = cutoff_energy() / n
    f = lambda x: potential(spec, x) * cutoff(x / n) ** 2
    pot = quadrature.composite(f, -2.0 * n, 2.0 * n, panel_width=panel_width, order=order)
    return kinetic + pot


@dataclass
class WitnessTable:
    n: list
    q: list
    integral_V: float
    first_negative: int = None


def witness_sequence(spec, n_max=32, E1=None):
    """q(psi_n) for n = 1..n_max and the first n with a negative value."""
    ns = list(range(1, n_max + 1))
    qs = [witness_energy(spec, E1, n) for n in ns]
    first = next((n for n, q in zip(ns, qs) if q < 0), None)
    return WitnessTable(ns, qs, integral_V(spec).integral_V, first)


def square_closed_form(beta, twist, x):
    """V for the (0, pi)^2 section written out in closed form."""
    alpha, ap = twist.evaluate(x)
    return (2.0 * math.pi**2 / 3.0 - 1.5) * ap * ap + math.pi * beta * ap * (np.cos(alpha) - np.sin(alpha))


def tanh_integral_square(beta, c):
    """Exact int V for the square with alpha = c tanh x + offset (offset pi/2)."""
    return (2.0 * math.pi**2 / 3.0 - 1.5) * 4.0 * c * c / 3.0 - 2.0 * math.pi * beta * math.sin(c)


def sample_table(spec, x_range=(-10.0, 10.0), count=401):
    """Rows ``(x, alpha, alpha', V)`` on a uniform grid."""
    x = np.linspace(x_range[0], x_range[1], count)
    alpha, ap = spec.twist.evaluate(x)
    return np.column_stack([x, alpha, ap, potential(spec, x)])
