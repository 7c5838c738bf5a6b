"""Rotation-angle profiles alpha(x) and their derivatives."""

from dataclasses import dataclass, field
import math

import numpy as np
from scipy.interpolate import PchipInterpolator


@dataclass(frozen=True)
class Tanh:
    """alpha(x) = c tanh(x) + offset."""

    c: float = 0.5
    offset: float = math.pi / 2

    def evaluate(self, x):
        x = np.asarray(x, dtype=float)
        # sech^2 via exp(-2|x|): no cancellation in the tails, no overflow
        e = np.exp(-2.0 * np.abs(x))
        alpha = self.c * np.tanh(x) + self.offset
        alpha_prime = self.c * 4.0 * e / (1.0 + e) ** 2
        if alpha.ndim == 0:
            return float(alpha), float(alpha_prime)
        return alpha, alpha_prime

    def limits(self):
        return self.offset - self.c, self.offset + self.c


@dataclass(frozen=True)
class Bump:
    """alpha(x) = offset + c exp(1 - R^2 / (R^2 - x^2)) on |x| < R, offset outside."""

    c: float = 1.0
    R: float = 2.0
    offset: float = math.pi / 2

    def __post_init__(self):
        if self.R <= 0:
            raise ValueError("Bump radius R must be positive")

    def evaluate(self, x):
        x = np.asarray(x, dtype=float)
        R2 = self.R * self.R
        inside = np.abs(x) < self.R
        d = np.where(inside, R2 - x * x, 1.0)
        b = np.where(inside, np.exp(1.0 - R2 / d), 0.0)
        db = np.where(inside, -2.0 * R2 * x / (d * d) * b, 0.0)
        alpha = self.offset + self.c * b
        alpha_prime = self.c * db
        if alpha.ndim == 0:
            return float(alpha), float(alpha_prime)
        return alpha, alpha_prime

    def limits(self):
        return self.offset, self.offset


@dataclass(frozen=True)
class Tabulated:
    """Samples of alpha and alpha' on a strictly increasing grid.

    Both are interpolated with monotone cubics; alpha' is never obtained by
    differentiating the alpha samples.
    """

    x: tuple
    alpha: tuple
    alpha_prime: tuple
    _interp: tuple = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        x = np.asarray(self.x, dtype=float)
        a = np.asarray(self.alpha, dtype=float)
        ap = np.asarray(self.alpha_prime, dtype=float)
        if x.ndim != 1 or x.size < 2 or a.shape != x.shape or ap.shape != x.shape:
            raise ValueError("tabulated profile needs matching 1-D arrays with >= 2 samples")
        if np.any(np.diff(x) <= 0):
            raise ValueError("tabulated x must be strictly increasing")
        if not (np.all(np.isfinite(a)) and np.all(np.isfinite(ap))):
            raise ValueError("tabulated samples must be finite")
        object.__setattr__(self, "x", tuple(x))
        object.__setattr__(self, "alpha", tuple(a))
        object.__setattr__(self, "alpha_prime", tuple(ap))
        object.__setattr__(self, "_interp", (PchipInterpolator(x, a), PchipInterpolator(x, ap)))

    def evaluate(self, x):
        xa = np.asarray(x, dtype=float)
        lo, hi = self.x[0], self.x[-1]
        if np.any(xa < lo) or np.any(xa > hi):
            raise RangeError(f"x outside tabulated range [{lo}, {hi}]")
        fa, fap = self._interp
        alpha, alpha_prime = fa(xa), fap(xa)
        if alpha.ndim == 0:
            return float(alpha), float(alpha_prime)
        return alpha, alpha_prime

    def limits(self):
        return self.alpha[0], self.alpha[-1]

    @property
    def support(self):
        return self.x[0], self.x[-1]


class RangeError(ValueError):
    pass


def constant(angle=math.pi / 2):
    """Untwisted profile alpha = angle."""
    return Tanh(c=0.0, offset=angle)


def evaluate(profile, x):
    """Return ``(alpha(x), alpha'(x))``; accepts scalars or arrays."""
    alpha, alpha_prime = profile.evaluate(x)
    if np.ndim(alpha) == 0:
        return float(alpha), float(alpha_prime)
    return alpha, alpha_prime


def sup_alpha_prime(profile, x_range=(-20.0, 20.0), samples=4001):
    lo, hi = x_range
    if isinstance(profile, Tabulated):
        lo, hi = max(lo, profile.x[0]), min(hi, profile.x[-1])
    _, ap = profile.evaluate(np.linspace(lo, hi, samples))
    return float(np.max(np.abs(ap)))


@dataclass
class AsymptoticReport:
    straight: bool
    tol: float
    X: float
    tail_minus: float
    tail_plus: float
    decreasing: bool
    note: str = ""

    def __bool__(self):
        return bool(self.straight)


def verify_asymptotic(profile, tol=1e-6, X=10.0, samples=64):
    """Check that |alpha'| is below ``tol`` at +-X and decays on [X/2, X]."""
    if tol <= 0:
        raise ValueError("tol must be positive")
    try:
        _, (am, ap) = profile.evaluate(np.array([-X, X]))
        grid = np.linspace(X / 2, X, samples)
        _, right = profile.evaluate(grid)
        _, left = profile.evaluate(-grid)
    except RangeError as exc:
        return AsymptoticReport(False, tol, X, math.nan, math.nan, False, note=str(exc))
    # sign of the tail is irrelevant; allow roundoff-level wiggle
    slack = 1e-15
    decreasing = bool(
        np.all(np.diff(np.abs(right)) <= slack) and np.all(np.diff(np.abs(left)) <= slack)
    )
    small = abs(am) <= tol and abs(ap) <= tol
    return AsymptoticReport(small and decreasing, tol, X, float(abs(am)), float(abs(ap)), decreasing)


def load_tabulated(path):
    """Read whitespace-separated ``x alpha alpha'`` rows (``#`` comments allowed)."""
    data = np.loadtxt(path, comments="#", ndmin=2)
    if data.shape[1] != 3:
        raise ValueError(f"{path}: expected 3 columns (x, alpha, alpha'), got {data.shape[1]}")
    return Tabulated(tuple(data[:, 0]), tuple(data[:, 1]), tuple(data[:, 2]))
